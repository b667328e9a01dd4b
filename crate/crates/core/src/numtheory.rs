//! Elementary exact number theory: modular inverses, Jacobi symbols,
//! Dedekind sums and the "good" negative continued-fraction expansions
//! that describe the legs of a Seifert plumbing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Least non-negative residue of `a` modulo `m`.
pub fn residue(a: &BigInt, m: usize) -> usize {
    a.mod_floor(&BigInt::from(m))
        .to_usize()
        .expect("residue fits in usize")
}

/// Inverse of `a` modulo `m`, returned in `[1, m-1]` (or `0` when `m = 1`
/// is passed through [`mod_inverse_usize`]).
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if *m < BigInt::from(2) {
        return Err(Error::InvalidModulus(m.clone()));
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::NonInvertible { a: a.clone(), m: m.clone() });
    }
    Ok(e.x.mod_floor(m))
}

/// Residue-level inverse. `m = 1` is allowed and yields `0`.
pub fn mod_inverse_usize(a: i64, m: usize) -> Result<usize> {
    if m == 1 {
        return Ok(0);
    }
    mod_inverse(&BigInt::from(a), &BigInt::from(m)).map(|x| x.to_usize().unwrap())
}

/// Jacobi symbol `(a/b)` for odd `b >= 1`.
pub fn jacobi(a: &BigInt, b: &BigInt) -> Result<i8> {
    if !b.is_positive() || b.is_even() {
        return Err(Error::InvalidModulus(b.clone()));
    }
    let mut a = a.mod_floor(b);
    let mut n = b.clone();
    let mut t = 1i8;
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == BigInt::from(3) || r == BigInt::from(5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == BigInt::from(3) && n.mod_floor(&four) == BigInt::from(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { t } else { 0 })
}

/// Dedekind sum `s(q, p)`.
///
/// For `p > 0` this is `sum_{i=1}^{p-1} ((i/p)) ((q i/p))`, evaluated through
/// the reciprocity law in `O(log p)` steps. For `p < 0` the convention
/// `s(q, p) = s(q sign(p), |p|)` is used, which gives `s(1, -2) = 0`.
pub fn dedekind_sum(q: &BigInt, p: &BigInt) -> Result<BigRational> {
    if p.is_zero() {
        return Err(Error::ZeroNumerator);
    }
    if !q.gcd(p).is_one() {
        return Err(Error::NotCoprime { a: q.clone(), b: p.clone() });
    }
    let (mut q, mut p) = if p.is_negative() { (-q, -p) } else { (q.clone(), p.clone()) };
    let mut acc = BigRational::zero();
    let mut flip = false;
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let twelve = BigInt::from(12);
    loop {
        q = q.mod_floor(&p);
        if q.is_zero() {
            // p == 1 here by coprimality
            return Ok(acc);
        }
        // s(q,p) + s(p,q) = -1/4 + (p/q + q/p + 1/(pq)) / 12
        let pq = &p * &q;
        let rhs = BigRational::new(&p * &p + &q * &q + BigInt::one(), &pq * &twelve) - &quarter;
        if flip {
            acc -= rhs;
        } else {
            acc += rhs;
        }
        flip = !flip;
        let next_q = p.mod_floor(&q);
        p = q;
        q = next_q;
    }
}

/// A pair with `a_star * a + b_star * b = 1` for some context `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutPair {
    pub a_star: BigInt,
    pub b_star: BigInt,
}

impl BezoutPair {
    pub fn verifies(&self, a: &BigInt, b: &BigInt) -> bool {
        (&self.a_star * a + &self.b_star * b).is_one()
    }
}

/// Bezout coefficients `(x, y)` with `x a + y b = 1` and `0 <= x < |b|`. For `b = 1` returns
/// `(0, 1)`, the degenerate choice needed when `r | p`.
pub fn bezout(a: &BigInt, b: &BigInt) -> Result<BezoutPair> {
    if b.is_one() {
        return Ok(BezoutPair { a_star: BigInt::zero(), b_star: BigInt::one() });
    }
    let e = a.extended_gcd(b);
    if !e.gcd.abs().is_one() {
        return Err(Error::NotCoprime { a: a.clone(), b: b.clone() });
    }
    let x = if e.gcd.is_one() { e.x } else { -e.x };
    let a_star = x.mod_floor(&b.abs());
    let b_star = (BigInt::one() - &a_star * a) / b;
    Ok(BezoutPair { a_star, b_star })
}

/// Negative continued fraction `p/q = m_l - 1/(m_{l-1} - 1/(... - 1/m_1))`
/// with `m_l = floor(p/q) + 1` and every later entry `>= 2`; an integer
/// `p/q` expands as `<p+1, 1>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodExpansion {
    p: BigInt,
    q: BigInt,
    /// `m_l, ..., m_1`
    ms: Vec<BigInt>,
}

pub fn good_expansion(p: &BigInt, q: &BigInt) -> Result<GoodExpansion> {
    if p.is_zero() {
        return Err(Error::ZeroNumerator);
    }
    if !q.is_positive() {
        return Err(Error::HypothesisViolated(format!("denominator {q} must be positive")));
    }
    if !p.gcd(q).is_one() {
        return Err(Error::NotCoprime { a: p.clone(), b: q.clone() });
    }
    let top = p.div_floor(q) + BigInt::one();
    let mut ms = vec![top.clone()];
    // remainder 1/(m_l - p/q) = q / (m_l q - p), a rational >= 1
    let (mut a, mut b) = (q.clone(), &top * q - p);
    loop {
        let (d, rem) = a.div_rem(&b);
        if rem.is_zero() {
            ms.push(d);
            break;
        }
        let m = d + BigInt::one();
        let nb = &m * &b - &a;
        ms.push(m);
        a = b;
        b = nb;
    }
    Ok(GoodExpansion { p: p.clone(), q: q.clone(), ms })
}

impl GoodExpansion {
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Length `l >= 2`.
    pub fn len(&self) -> usize {
        self.ms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entries high index first: `m_l, ..., m_1`.
    pub fn entries(&self) -> &[BigInt] {
        &self.ms
    }

    /// `m_i`, 1-based (`m_1` is the free end of the chain).
    pub fn m(&self, i: usize) -> &BigInt {
        &self.ms[self.ms.len() - i]
    }

    /// Framings `m_1, ..., m_l` from the free end toward the center.
    pub fn framings_leaf_first(&self) -> Vec<BigInt> {
        self.ms.iter().rev().cloned().collect()
    }

    pub fn sum_m(&self) -> BigInt {
        self.ms.iter().sum()
    }

    /// Exact value of the continued fraction.
    pub fn value(&self) -> BigRational {
        let mut it = self.ms.iter().rev();
        let mut v = BigRational::from_integer(it.next().unwrap().clone());
        for m in it {
            v = BigRational::from_integer(m.clone()) - v.recip();
        }
        v
    }

    /// Numerator `N_{j,i}` of `<m_j, ..., m_i>` with the conventions
    /// `N_{i-1,i} = 1` and `N_{i,i} = m_i`.
    pub fn numerator(&self, j: usize, i: usize) -> Result<BigInt> {
        let l = self.len();
        if i == 0 || j + 1 < i || j > l {
            return Err(Error::IndexOutOfRange { j, i, len: l });
        }
        let (mut prev2, mut prev) = (BigInt::zero(), BigInt::one());
        for t in i..=j {
            let cur = self.m(t) * &prev - &prev2;
            prev2 = prev;
            prev = cur;
        }
        Ok(prev)
    }

    /// `(q*, p*) = (N_{l,2}, -N_{l-1,2})`, satisfying `q* q + p* p = 1`.
    /// Returned as a [`BezoutPair`] with `a_star = q*`, `b_star = p*`.
    pub fn qstar_pstar(&self) -> BezoutPair {
        let l = self.len();
        BezoutPair {
            a_star: self.numerator(l, 2).unwrap(),
            b_star: -self.numerator(l - 1, 2).unwrap(),
        }
    }

    /// The integer `3(l - 1 + sign p) - sum m`, equal to
    /// `-12 s(q,p) + (q + q*)/p`.
    pub fn framing_correction(&self) -> BigInt {
        BigInt::from(3 * (self.len() as i64 - 1 + sign(&self.p) as i64)) - self.sum_m()
    }
}

fn check_level(r: usize) -> Result<()> {
    if r < 3 || r % 2 == 0 {
        return Err(Error::InvalidLevel(r));
    }
    Ok(())
}

/// Class of `-12 s^v(q, p)` modulo `r`, computed from the good expansion as
/// `3(l - 1 + sign p) - sum m - p' q* - p' q` with `p' p = 1 (mod r)`.
pub fn s_surd_residue(p: &BigInt, q: &BigInt, r: usize) -> Result<usize> {
    check_level(r)?;
    let e = good_expansion(p, q)?;
    let rb = BigInt::from(r);
    let p_inv = mod_inverse(p, &rb)?;
    let qstar = e.qstar_pstar().a_star;
    let v = e.framing_correction() - &p_inv * (&qstar + q);
    Ok(residue(&v, r))
}

/// The same class via the Dedekind sum: `-(12 p s(q,p)) p' (mod r)`.
pub fn s_surd_residue_dedekind(p: &BigInt, q: &BigInt, r: usize) -> Result<usize> {
    check_level(r)?;
    let rb = BigInt::from(r);
    let p_inv = mod_inverse(p, &rb)?;
    let s = dedekind_sum(q, p)?;
    let twelve_ps = s * BigRational::from_integer(BigInt::from(12) * p);
    debug_assert!(twelve_ps.is_integer());
    let v = -twelve_ps.to_integer() * p_inv;
    Ok(residue(&v, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(b(n), b(d))
    }

    fn sawtooth(x: &BigRational) -> BigRational {
        if x.is_integer() {
            BigRational::zero()
        } else {
            x - x.floor() - q(1, 2)
        }
    }

    fn dedekind_brute(qq: i64, p: i64) -> BigRational {
        (1..p)
            .map(|i| sawtooth(&q(i, p)) * sawtooth(&q(qq * i, p)))
            .fold(BigRational::zero(), |a, x| a + x)
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(&b(4), &b(7)).unwrap(), b(2));
        assert_eq!(mod_inverse(&b(3), &b(5)).unwrap(), b(2));
        assert!(matches!(mod_inverse(&b(2), &b(4)), Err(Error::NonInvertible { .. })));
        assert_eq!(mod_inverse(&b(-1), &b(5)).unwrap(), b(4));
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(&b(17), &b(1)).unwrap(), 1);
        assert_eq!(jacobi(&b(6), &b(9)).unwrap(), 0);
        assert_eq!(jacobi(&b(3), &b(7)).unwrap(), -1);
        assert!(jacobi(&b(3), &b(8)).is_err());
        assert!(jacobi(&b(3), &b(-3)).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion_for_primes() {
        for p in [3i64, 5, 7, 11, 13, 17, 19, 23] {
            for a in -30i64..30 {
                let e = b(a).modpow(&b((p - 1) / 2), &b(p));
                let expect = if e.is_zero() { 0 } else if e.is_one() { 1 } else { -1 };
                assert_eq!(jacobi(&b(a), &b(p)).unwrap(), expect, "({a}/{p})");
            }
        }
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(&b(1), &b(3)).unwrap(), q(1, 18));
        assert_eq!(dedekind_sum(&b(1), &b(6)).unwrap(), q(5, 18));
        assert_eq!(dedekind_sum(&b(1), &b(-2)).unwrap(), BigRational::zero());
        assert!(matches!(dedekind_sum(&b(2), &b(4)), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn dedekind_matches_sawtooth_sum() {
        for p in 1..40i64 {
            for qq in -45..45i64 {
                if b(qq).gcd(&b(p)).is_one() {
                    assert_eq!(dedekind_sum(&b(qq), &b(p)).unwrap(), dedekind_brute(qq, p), "s({qq},{p})");
                }
            }
        }
    }

    #[test]
    fn good_expansion_examples() {
        assert_eq!(good_expansion(&b(3), &b(1)).unwrap().entries(), &[b(4), b(1)]);
        assert_eq!(good_expansion(&b(-2), &b(1)).unwrap().entries(), &[b(-1), b(1)]);
        assert_eq!(good_expansion(&b(5), &b(2)).unwrap().entries(), &[b(3), b(2)]);
        assert!(matches!(good_expansion(&b(0), &b(1)), Err(Error::ZeroNumerator)));
        assert!(matches!(good_expansion(&b(4), &b(2)), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn good_expansion_invariants() {
        for p in -30i64..=30 {
            for qq in 1..=12i64 {
                if p == 0 || !b(p).gcd(&b(qq)).is_one() {
                    continue;
                }
                let e = good_expansion(&b(p), &b(qq)).unwrap();
                assert!(e.len() >= 2);
                assert_eq!(e.value(), q(p, qq));
                assert_eq!(e.entries()[0], b(p).div_floor(&b(qq)) + 1);
                if qq > 1 {
                    assert!(e.entries()[1..].iter().all(|m| *m >= b(2)));
                } else {
                    assert_eq!(e.entries(), &[b(p + 1), b(1)]);
                }
                let l = e.len();
                assert_eq!(e.numerator(l, 1).unwrap(), b(p));
                assert_eq!(e.numerator(l - 1, 1).unwrap(), b(qq));
            }
        }
    }

    #[test]
    fn numerators() {
        let e = good_expansion(&b(5), &b(2)).unwrap();
        assert_eq!(e.numerator(2, 1).unwrap(), b(5));
        assert_eq!(e.numerator(1, 1).unwrap(), b(2));
        assert_eq!(e.numerator(0, 1).unwrap(), b(1));
        assert_eq!(e.numerator(1, 2).unwrap(), b(1));
        assert!(e.numerator(3, 1).is_err());
        assert!(e.numerator(0, 2).is_err());
    }

    #[test]
    fn qstar_pstar_examples() {
        for (p, qq, qs, ps) in [(3, 1, 4, -1), (5, 2, 3, -1), (6, 1, 7, -1)] {
            let e = good_expansion(&b(p), &b(qq)).unwrap();
            let bz = e.qstar_pstar();
            assert_eq!((bz.a_star.clone(), bz.b_star.clone()), (b(qs), b(ps)));
            assert!(bz.verifies(&b(qq), &b(p)));
        }
    }

    #[test]
    fn s_surd_examples() {
        assert_eq!(s_surd_residue(&b(3), &b(1), 5).unwrap(), 1);
        // <-1, 1>: 3(2-1-1) - 0 - p'(q* + q) with q* = -1
        assert_eq!(s_surd_residue(&b(-2), &b(1), 5).unwrap(), 0);
        assert_eq!(s_surd_residue_dedekind(&b(-2), &b(1), 5).unwrap(), 0);
        assert!(matches!(s_surd_residue(&b(2), &b(4), 5), Err(Error::NotCoprime { .. })));
        assert!(matches!(s_surd_residue(&b(5), &b(1), 5), Err(Error::NonInvertible { .. })));
    }

    #[test]
    fn bezout_degenerate_modulus_one() {
        let bz = bezout(&b(1), &b(1)).unwrap();
        assert_eq!((bz.a_star.clone(), bz.b_star.clone()), (b(0), b(1)));
        let bz = bezout(&b(2), &b(3)).unwrap();
        assert!(bz.verifies(&b(2), &b(3)));
        let bz = bezout(&b(-2), &b(3)).unwrap();
        assert!(bz.verifies(&b(-2), &b(3)));
    }
}
