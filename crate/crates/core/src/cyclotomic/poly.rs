//! Dense univariate polynomials, coefficients stored low degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient `a / b` for monic `b` dividing `a`.
fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

fn mobius(mut n: usize) -> i32 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// The `r`-th cyclotomic polynomial, as `prod_{d | r} (x^d - 1)^{mu(r/d)}`.
pub fn cyclotomic_polynomial(r: usize) -> Vec<BigInt> {
    assert!(r >= 1, "cyclotomic polynomial needs r >= 1");
    let x_d_minus_1 = |d: usize| {
        let mut v = vec![BigInt::zero(); d + 1];
        v[0] = -BigInt::one();
        v[d] = BigInt::one();
        v
    };
    let divisors: Vec<usize> = (1..=r).filter(|d| r % d == 0).collect();
    let mut num = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(r / d) == 1 {
            num = mul_int(&num, &x_d_minus_1(d));
        }
    }
    for &d in &divisors {
        if mobius(r / d) == -1 {
            num = div_exact_monic(&num, &x_d_minus_1(d));
        }
    }
    num
}

pub fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

type QPoly = Vec<BigRational>;

fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quo[k] = c;
    }
    (trim(quo), trim(rem))
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm over `Q[x]`,
/// or `None` if `gcd(a, m)` is not a constant.
pub fn inverse_mod(a: &[BigInt], m: &[BigInt]) -> Option<QPoly> {
    let lift = |p: &[BigInt]| trim(p.iter().map(|c| BigRational::from_integer(c.clone())).collect::<QPoly>());
    let (mut r0, mut r1) = (lift(m), lift(a));
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![], vec![BigRational::one()]);
    if r1.is_empty() {
        return None;
    }
    while r1.len() > 1 {
        let (quo, rem) = qdivrem(&r0, &r1);
        if rem.is_empty() {
            return None;
        }
        let s2 = qsub(&s0, &qmul(&quo, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let c = r1[0].recip();
    Some(s1.into_iter().map(|x| x * &c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(15), ints(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
        for p in [5usize, 7, 11, 13] {
            assert_eq!(cyclotomic_polynomial(p), vec![BigInt::one(); p]);
        }
    }

    #[test]
    fn degree_is_phi() {
        for r in 1..60 {
            assert_eq!(cyclotomic_polynomial(r).len() - 1, euler_phi(r), "r = {r}");
        }
    }

    #[test]
    fn product_over_divisors_is_x_r_minus_1() {
        for r in [12usize, 15, 21, 25] {
            let mut prod = vec![BigInt::one()];
            for d in (1..=r).filter(|d| r % d == 0) {
                prod = mul_int(&prod, &cyclotomic_polynomial(d));
            }
            let mut expect = vec![BigInt::zero(); r + 1];
            expect[0] = -BigInt::one();
            expect[r] = BigInt::one();
            assert_eq!(prod, expect);
        }
    }

    #[test]
    fn inverse_mod_small() {
        // (x + 1)^{-1} mod x^2 + x + 1 is -x
        let inv = inverse_mod(&ints(&[1, 1]), &ints(&[1, 1, 1])).unwrap();
        assert_eq!(inv, vec![BigRational::zero(), BigRational::from_integer(BigInt::from(-1))]);
        // x - 1 and x^2 - 1 share a factor
        assert!(inverse_mod(&ints(&[-1, 1]), &ints(&[-1, 0, 1])).is_none());
    }
}
