//! Closed-form evaluation of `xi_r(M, zeta^t)` and `tau'_r(M)` for Seifert
//! manifolds, plus the all-coprime shortcut, Rozansky's numeric formula and
//! the `X(-2/1,3/1,6/1)` closed form.
//!
//! Square roots and `eps(c)` never appear on their own: every occurrence is
//! grouped as the quadratic Gauss sum `g(c) = sqrt(c) eps(c)`, which lies in
//! `Q(zeta_r)`. The summand `j = 0 (mod r)` of every `j`-sum is taken to be 0;
//! all leg factors vanish there while the central factor is singular for
//! `n >= 3`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{gauss_sum, gauss_sum_at, ComplexApprox, CyclotomicNumber, Level, Precision, RootSum};
use crate::error::{Error, Result};
use crate::numtheory::{bezout, good_expansion, jacobi, mod_inverse_usize, residue, s_surd_residue, GoodExpansion};
use crate::seifert::{linking_matrix, plumbing, top_invariants, SeifertData, TopInvariants};

pub(crate) fn check_level(r: usize) -> Result<Level> {
    Level::new(r)
}

pub(crate) fn check_unit(t: i64, r: usize) -> Result<()> {
    if (t.rem_euclid(r as i64) as usize).gcd(&r) != 1 {
        return Err(Error::NotCoprime { a: t.into(), b: r.into() });
    }
    Ok(())
}

/// `4^{-1} mod r`: the exponent `t` with `A = zeta_r^t`.
pub fn quarter(r: usize) -> i64 {
    mod_inverse_usize(4, r).expect("r is odd") as i64
}

fn parity_sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Per-leg residue data at level `r`.
#[derive(Debug, Clone)]
pub struct LegData {
    pub p: BigInt,
    pub q: BigInt,
    pub r: usize,
    /// `gcd(r, p)`
    pub c: usize,
    /// `pc_prime (p/c) + rc_prime (r/c) = 1`
    pub pc_prime: BigInt,
    pub rc_prime: BigInt,
    /// `q_star q + p_star p = 1`
    pub q_star: BigInt,
    pub p_star: BigInt,
    /// `p^{-1} mod r` when `c = 1`
    pub p_prime: Option<usize>,
    /// `((p/c) / (r/c)) (q / c)`
    pub jacobi_factor: i8,
    /// `(-1)^{((r-1)/2)((c-1)/2)}`
    pub sign_factor: i8,
    /// `g(c)`
    pub gauss_factor: CyclotomicNumber,
    pub expansion: GoodExpansion,
}

pub fn leg_data(p: &BigInt, q: &BigInt, r: usize) -> Result<LegData> {
    check_level(r)?;
    let expansion = good_expansion(p, q)?;
    let rb = BigInt::from(r);
    let c = p.gcd(&rb).to_usize().unwrap();
    let cb = BigInt::from(c);
    let (p_c, r_c) = (p / &cb, &rb / &cb);
    let bz = bezout(&p_c, &r_c)?;
    let star = expansion.qstar_pstar();
    let jacobi_factor = jacobi(&p_c, &r_c)? * jacobi(q, &cb)?;
    let sign_factor = parity_sign(((r - 1) / 2) * ((c - 1) / 2)) as i8;
    Ok(LegData {
        p: p.clone(),
        q: q.clone(),
        r,
        c,
        pc_prime: bz.a_star,
        rc_prime: bz.b_star,
        q_star: star.a_star,
        p_star: star.b_star,
        p_prime: (c == 1).then(|| mod_inverse_usize(residue(p, r) as i64, r).unwrap()),
        jacobi_factor,
        sign_factor,
        gauss_factor: gauss_sum(r, c)?,
        expansion,
    })
}

impl LegData {
    /// Replace `(q*, p*)` by `(q* + m p, p* - m q)`.
    pub fn with_shifted_bezout(&self, m: i64) -> LegData {
        let m = BigInt::from(m);
        LegData { q_star: &self.q_star + &m * &self.p, p_star: &self.p_star - &m * &self.q, ..self.clone() }
    }

    /// `chi^{k,+}(j)` for `plus`, `chi^{k,-}(j)` otherwise.
    pub fn chi(&self, plus: bool, j: i64) -> i8 {
        let (s, v) = if plus { (1, BigInt::from(j) - &self.q_star) } else { (-1, BigInt::from(j) + &self.q_star) };
        if v.is_multiple_of(&BigInt::from(self.c)) {
            s
        } else {
            0
        }
    }

    /// `-(p/c)' (q/c) (j -/+ q*)^2 - p*(q* -/+ 2j) mod r`, defined when the
    /// matching `chi` is nonzero.
    pub fn exponent(&self, plus: bool, j: i64) -> usize {
        let jb = BigInt::from(j);
        let cb = BigInt::from(self.c);
        let (shift, lin) = if plus {
            (&jb - &self.q_star, &self.q_star - 2 * &jb)
        } else {
            (&jb + &self.q_star, &self.q_star + 2 * &jb)
        };
        let sq = &shift * &shift;
        debug_assert!(sq.is_multiple_of(&cb));
        let e = -(&self.pc_prime * &self.q * (sq / cb)) - &self.p_star * lin;
        residue(&e, self.r)
    }

    /// `sum_{+/-} chi(j) zeta^{t exponent}` as a root sum.
    pub fn phase_sum(&self, t: i64, j: i64) -> RootSum<i64> {
        let mut s = RootSum::zero(self.r);
        for plus in [true, false] {
            let chi = self.chi(plus, j);
            if chi != 0 {
                s.add_term(t * self.exponent(plus, j) as i64, &(chi as i64));
            }
        }
        s
    }

    /// `-12 s(q,p) + (q + q*)/p` for the current `q*`, an integer.
    pub fn framing_term(&self) -> BigInt {
        let base = self.expansion.qstar_pstar().a_star;
        self.expansion.framing_correction() + (&self.q_star - base) / &self.p
    }

    /// `sign_factor * jacobi_factor * g(c)` under `zeta -> zeta^t`.
    pub fn leg_constant(&self, level: &Level, t: i64) -> Result<CyclotomicNumber> {
        let g = gauss_sum_at(level, self.c, t)?;
        Ok(g.scale_int(&BigInt::from(self.sign_factor as i64 * self.jacobi_factor as i64)))
    }
}

/// Inverses of `zeta^a - zeta^{-a}` keyed by `a mod r`.
pub(crate) struct SineInverses {
    level: Level,
    cache: HashMap<usize, CyclotomicNumber>,
}

impl SineInverses {
    pub(crate) fn new(level: &Level) -> Self {
        SineInverses { level: level.clone(), cache: HashMap::new() }
    }

    pub(crate) fn get(&mut self, a: i64) -> Result<CyclotomicNumber> {
        let k = self.level.exp(a);
        if let Some(v) = self.cache.get(&k) {
            return Ok(v.clone());
        }
        let v = CyclotomicNumber::root_sine(&self.level, k as i64).inverse()?;
        self.cache.insert(k, v.clone());
        Ok(v)
    }

    /// `(zeta^a - zeta^{-a})^e`
    pub(crate) fn power(&mut self, a: i64, e: i64) -> Result<CyclotomicNumber> {
        if e >= 0 {
            CyclotomicNumber::root_sine(&self.level, a).pow(e)
        } else {
            self.get(a)?.pow(-e)
        }
    }
}

/// `sum_{j=1}^{r-1} (zeta^{2tj} - zeta^{-2tj})^{2-n} * body(j)`.
pub(crate) fn central_sum<F>(level: &Level, t: i64, n: usize, mut body: F) -> Result<CyclotomicNumber>
where
    F: FnMut(i64) -> Option<RootSum<BigInt>>,
{
    let r = level.r();
    let mut sines = SineInverses::new(level);
    let mut poly_acc = RootSum::<BigInt>::zero(r);
    let mut field_acc = CyclotomicNumber::zero(level);
    for j in 1..r as i64 {
        let Some(v) = body(j) else { continue };
        if v.is_zero() {
            continue;
        }
        match n {
            1 => poly_acc.add_sine_multiple(&v, 2 * t * j),
            2 => poly_acc.add_shifted(&v, 0),
            _ => {
                let c = sines.get(2 * t * j)?.pow(n as i64 - 2)?;
                field_acc = field_acc + c * v.reduce(level);
            }
        }
    }
    Ok(poly_acc.reduce(level) + field_acc)
}

/// Multiply a root sum by an `i64` root sum with few terms.
pub(crate) fn mul_sparse(acc: &RootSum<BigInt>, f: &RootSum<i64>) -> RootSum<BigInt> {
    let mut out = RootSum::zero(acc.r());
    for (k, c) in f.coeffs().iter().enumerate() {
        match *c {
            0 => {}
            1 => out.add_shifted(acc, k as i64),
            -1 => out.sub_shifted(acc, k as i64),
            c => {
                let mut scaled = acc.clone();
                for _ in 1..c.unsigned_abs() {
                    scaled.add_shifted(acc, 0);
                }
                if c > 0 {
                    out.add_shifted(&scaled, k as i64)
                } else {
                    out.sub_shifted(&scaled, k as i64)
                }
            }
        }
    }
    out
}

/// The `(-1)^{b_- (r+1)/2}` sign in its closed form
/// `(sign P (-sign(H/P) + 1 - sign|H|))^{(r+1)/2}`.
fn prefactor_sign(inv: &TopInvariants, r: usize) -> i64 {
    let base = inv.sign_p * (-inv.sign_h_over_p + 1 - inv.sign_h_abs);
    debug_assert!(base == 1 || base == -1);
    if (r + 1) / 2 % 2 == 0 {
        1
    } else {
        base as i64
    }
}

/// `xi_r(M, zeta^t)` from explicit leg data, so that the Bezout choice can be
/// varied.
pub fn xi_theorem1_with_legs(m: &SeifertData, legs: &[LegData], r: usize, t: i64) -> Result<CyclotomicNumber> {
    let level = check_level(r)?;
    check_unit(t, r)?;
    let inv = top_invariants(m);
    let n = m.n();
    let s_h = inv.sign_h_abs as i64;

    let g1 = central_sum(&level, t, n, |j| {
        let mut acc = RootSum::<BigInt>::monomial(r, 0);
        for leg in legs {
            let f = leg.phase_sum(t, j);
            if f.is_zero() {
                return None;
            }
            acc = mul_sparse(&acc, &f);
        }
        Some(acc)
    })?;
    if g1.is_zero() {
        return Ok(g1);
    }

    let mut exponent = BigInt::from(-3 * inv.sign_h_over_p);
    let mut constant = CyclotomicNumber::one(&level);
    for leg in legs {
        exponent += leg.framing_term();
        constant = constant * leg.leg_constant(&level, t)?;
    }
    let mut sines = SineInverses::new(&level);
    let mut g2 = CyclotomicNumber::root_power(&level, t * residue(&exponent, r) as i64)
        * sines.power(2 * t, s_h - 2)?
        * constant;
    if s_h == 1 {
        let g = gauss_sum_at(&level, r, t)?.scale_int(&BigInt::from(-2));
        g2 = g2 * g.inverse()?;
    }
    let g2 = g2.scale_int(&BigInt::from(prefactor_sign(&inv, r)));
    Ok(g1 * g2)
}

/// `xi_r(M, zeta^t)` by the general closed formula.
pub fn xi_theorem1_at(m: &SeifertData, r: usize, t: i64) -> Result<CyclotomicNumber> {
    let legs = m.legs().iter().map(|l| leg_data(&l.p, &l.q, r)).collect::<Result<Vec<_>>>()?;
    xi_theorem1_with_legs(m, &legs, r, t)
}

/// `xi_r(M, A)` by the shortcut valid when `gcd(r, p_k) = 1` for every leg.
pub fn xi_corollary_at(m: &SeifertData, r: usize, t: i64) -> Result<CyclotomicNumber> {
    let level = check_level(r)?;
    check_unit(t, r)?;
    let rb = BigInt::from(r);
    if let Some(l) = m.legs().iter().find(|l| !l.p.gcd(&rb).is_one()) {
        return Err(Error::HypothesisViolated(format!("gcd({r}, {}) > 1", l.p)));
    }
    let inv = top_invariants(m);
    let n = m.n();
    let s_h = inv.sign_h_abs as i64;
    let p_inv = mod_inverse_usize(residue(&inv.p_prod, r) as i64, r)? as i64;
    let ph = (p_inv * residue(&inv.h, r) as i64).rem_euclid(r as i64);
    let primes: Vec<i64> = m
        .legs()
        .iter()
        .map(|l| mod_inverse_usize(residue(&l.p, r) as i64, r).map(|x| x as i64))
        .collect::<Result<_>>()?;

    let sum = central_sum(&level, t, n, |j| {
        let mut acc = RootSum::<BigInt>::monomial(r, -t * ph * (j * j % r as i64));
        for &pp in &primes {
            let mut next = RootSum::zero(r);
            next.add_sine_multiple(&acc, 2 * t * pp * j);
            acc = next;
        }
        Some(acc)
    })?;
    if sum.is_zero() {
        return Ok(sum);
    }

    let mut exponent = -3 * inv.sign_h_over_p as i64 + ph;
    for l in m.legs() {
        exponent += s_surd_residue(&l.p, &l.q, r)? as i64;
    }
    let base_sign = -inv.sign_h_over_p + 1 - inv.sign_h_abs;
    let sign = if (r + 1) / 2 % 2 == 0 { 1 } else { base_sign as i64 };
    let sign = sign * jacobi(&inv.p_prod.abs(), &rb)? as i64 * inv.sign_p as i64;
    let mut sines = SineInverses::new(&level);
    let mut pre = CyclotomicNumber::root_power(&level, t * exponent.rem_euclid(r as i64)) * sines.power(2 * t, s_h - 2)?;
    if s_h == 1 {
        let g = gauss_sum_at(&level, r, t)?.scale_int(&BigInt::from(-2));
        pre = pre * g.inverse()?;
    }
    Ok((pre * sum).scale_int(&BigInt::from(sign)))
}

pub fn xi_corollary(m: &SeifertData, r: usize) -> Result<CyclotomicNumber> {
    xi_corollary_at(m, r, quarter(r))
}

/// Evaluated invariant at `A = zeta^{4^{-1}}` with its normalizations.
#[derive(Debug, Clone)]
pub struct InvariantResult {
    pub r: usize,
    pub t: i64,
    /// `xi_r(M, A)`
    pub xi_exact: CyclotomicNumber,
    pub nu: u32,
    pub b_plus: usize,
    pub b_minus: usize,
    /// `(sqrt(1/r) sin(pi/r))^nu * xi`
    pub tau: ComplexApprox,
    pub xi_is_integral: bool,
    /// Integrality of `Theta = 2^{-nu} xi`.
    pub theta_is_integral: bool,
}

impl InvariantResult {
    fn assemble(r: usize, t: i64, xi: CyclotomicNumber, nu: u32, b: (usize, usize), precision: Precision) -> Self {
        let emb = xi.to_complex(precision);
        let scale = if nu == 1 { (1.0 / r as f64).sqrt() * (std::f64::consts::PI / r as f64).sin() } else { 1.0 };
        let tau = ComplexApprox { re: emb.re * scale, im: emb.im * scale, error_bound: emb.error_bound * scale };
        let theta = xi.scale(&BigRational::new(BigInt::one(), BigInt::one() << nu));
        InvariantResult {
            r,
            t,
            xi_is_integral: xi.is_algebraic_integer(),
            theta_is_integral: theta.is_algebraic_integer(),
            xi_exact: xi,
            nu,
            b_plus: b.0,
            b_minus: b.1,
            tau,
        }
    }

    pub fn tau_value(&self) -> Complex64 {
        self.tau.value()
    }

    /// `Theta = xi / 2^nu`
    pub fn theta(&self) -> CyclotomicNumber {
        self.xi_exact.scale(&BigRational::new(BigInt::one(), BigInt::one() << self.nu))
    }
}

pub fn tau_prime(m: &SeifertData, r: usize) -> Result<InvariantResult> {
    tau_prime_with_precision(m, r, Precision::DOUBLE)
}

pub fn tau_prime_with_precision(m: &SeifertData, r: usize, precision: Precision) -> Result<InvariantResult> {
    evaluate(m, r, quarter(r), precision)
}

/// Invariants with `xi` taken at `zeta^t` instead of `A`; `t = 4^{-1}` gives
/// [`tau_prime`], other units give its Galois conjugates.
pub fn evaluate(m: &SeifertData, r: usize, t: i64, precision: Precision) -> Result<InvariantResult> {
    let xi = xi_theorem1_at(m, r, t)?;
    let inv = top_invariants(m);
    let lm = linking_matrix(&plumbing(m)?);
    Ok(InvariantResult::assemble(r, t, xi, inv.nu, (lm.b_plus, lm.b_minus), precision))
}

/// Hypothesis of the integrality theorem: `r` is coprime to at least `n - 2`
/// of the `p_k`.
pub fn integrality_applies(m: &SeifertData, r: usize) -> bool {
    let rb = BigInt::from(r);
    let coprime = m.legs().iter().filter(|l| l.p.gcd(&rb).is_one()).count();
    coprime + 2 >= m.n()
}

fn is_prime(r: usize) -> bool {
    r >= 2 && (2..).take_while(|d| d * d <= r).all(|d| r % d != 0)
}

/// Rozansky's formula for `tau'_r`, evaluated literally in double precision.
/// Requires `r` prime, `H != 0` and `p_k, q_k != 0 (mod r)`.
pub fn tau_rozansky_numeric(m: &SeifertData, r: usize) -> Result<Complex64> {
    check_level(r)?;
    if !is_prime(r) {
        return Err(Error::HypothesisViolated(format!("r = {r} is not prime")));
    }
    let inv = top_invariants(m);
    if inv.h.is_zero() {
        return Err(Error::HypothesisViolated("H = 0".into()));
    }
    for l in m.legs() {
        if residue(&l.p, r) == 0 {
            return Err(Error::HypothesisViolated(format!("r = {r} divides p = {}", l.p)));
        }
        if residue(&l.q, r) == 0 {
            return Err(Error::HypothesisViolated(format!("r = {r} divides q = {}", l.q)));
        }
    }
    let ri = r as i64;
    let e = |k: i64| Complex64::from_polar(1.0, std::f64::consts::TAU * k.rem_euclid(ri) as f64 / r as f64);
    let sine = |k: i64| e(k) - e(-k);
    let two_inv = mod_inverse_usize(2, r)? as i64;
    let four_inv = quarter(r);
    let p_inv = mod_inverse_usize(residue(&inv.p_prod, r) as i64, r)? as i64;
    let h = residue(&inv.h, r) as i64;
    let s_hp = inv.sign_h_over_p as f64;
    let eps_sq = if r % 4 == 1 { 1.0 } else { -1.0 };

    // e_r^{-3 s^v} = e_r^{4' (-12 s^v)}
    let mut exponent = four_inv * p_inv % ri * h;
    for l in m.legs() {
        exponent += four_inv * s_surd_residue(&l.p, &l.q, r)? as i64;
    }
    let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * s_hp * (eps_sq + 3.0 * (r as f64 - 2.0) / r as f64));
    let sign = jacobi(&inv.p_prod.abs(), &BigInt::from(r))? as f64 * inv.sign_p as f64;
    let pre = Complex64::i() / (2.0 * (r as f64).sqrt()) * phase * sign * e(exponent) / sine(two_inv);

    let primes: Vec<i64> = m
        .legs()
        .iter()
        .map(|l| mod_inverse_usize(residue(&l.p, r) as i64, r).map(|x| x as i64))
        .collect::<Result<_>>()?;
    let n = m.n() as i32;
    let mut sum = Complex64::zero();
    for beta in (1..2 * ri).step_by(2) {
        let b = beta % ri;
        if two_inv * b % ri == 0 {
            continue;
        }
        let mut term = e(-four_inv * p_inv % ri * h % ri * (b * b % ri)) * sine(two_inv * b).powi(2 - n);
        for &pp in &primes {
            term *= sine(two_inv * pp % ri * b);
        }
        sum += term;
    }
    Ok(pre * sum)
}

/// `X(-2/1, 3/1, 6/1)`, the 0-surgery on the trefoil.
pub fn tref_manifold() -> SeifertData {
    SeifertData::parse_normalize([(-2, 1), (3, 1), (6, 1)]).unwrap()
}

/// Closed form of `xi_r(X_tref(0), zeta^t)` for `3 ∤ r`: zero when
/// `r = 1 (mod 3)`, else `zeta^{-4t} 2r / (zeta^{2t} - zeta^{-2t})^2`.
pub fn tref_xi_closed_at(r: usize, t: i64) -> Result<CyclotomicNumber> {
    let level = check_level(r)?;
    check_unit(t, r)?;
    if r < 5 || r % 3 == 0 {
        return Err(Error::HypothesisViolated(format!("closed form needs r >= 5 with 3 not dividing r, got {r}")));
    }
    if r % 3 == 1 {
        return Ok(CyclotomicNumber::zero(&level));
    }
    let mut sines = SineInverses::new(&level);
    let v = CyclotomicNumber::root_power(&level, -4 * t) * sines.power(2 * t, -2)?;
    Ok(v.scale_int(&BigInt::from(2 * r as i64)))
}

/// Closed form of `tau'_r(X_tref(0))`: 0, or `-sqrt(r) / (2 sin(pi/r)) e_r^{-1}`.
pub fn tref_tau_closed(r: usize) -> Result<Complex64> {
    tref_xi_closed_at(r, 1)?;
    if r % 3 == 1 {
        return Ok(Complex64::zero());
    }
    let rf = r as f64;
    let modulus = -rf.sqrt() / (2.0 * (std::f64::consts::PI / rf).sin());
    Ok(Complex64::from_polar(1.0, -std::f64::consts::TAU / rf) * modulus)
}

pub fn tref_closed_form(r: usize) -> Result<InvariantResult> {
    let xi = tref_xi_closed_at(r, quarter(r))?;
    let m = tref_manifold();
    let inv = top_invariants(&m);
    let lm = linking_matrix(&plumbing(&m)?);
    Ok(InvariantResult::assemble(r, quarter(r), xi, inv.nu, (lm.b_plus, lm.b_minus), Precision::DOUBLE))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> SeifertData {
        s.parse().unwrap()
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn leg_data_examples() {
        let d = leg_data(&b(3), &b(1), 5).unwrap();
        assert_eq!((d.c, d.p_prime, d.q_star.clone(), d.p_star.clone()), (1, Some(2), b(4), b(-1)));
        for j in 0..10 {
            assert_eq!((d.chi(true, j), d.chi(false, j)), (1, -1));
        }

        let d = leg_data(&b(6), &b(1), 9).unwrap();
        assert_eq!(d.c, 3);
        assert_eq!((d.pc_prime.clone(), d.rc_prime.clone()), (b(2), b(-1)));
        assert_eq!(d.q_star, b(7));
        for j in 0..9 {
            assert_eq!(d.chi(true, j) != 0, j % 3 == 1, "j = {j}");
        }

        let d = leg_data(&b(5), &b(1), 5).unwrap();
        assert_eq!((d.c, d.pc_prime.clone(), d.rc_prime.clone()), (5, b(0), b(1)));
    }

    #[test]
    fn tref_matches_closed_form() {
        let m = tref_manifold();
        let l5 = Level::new(5).unwrap();
        let expect = CyclotomicNumber::root_power(&l5, -4)
            * CyclotomicNumber::root_sine(&l5, 2).pow(-2).unwrap().scale_int(&b(10));
        assert_eq!(xi_theorem1_at(&m, 5, 1).unwrap(), expect);
        assert!(xi_theorem1_at(&m, 7, 1).unwrap().is_zero());
        assert!(tau_prime(&m, 7).unwrap().xi_exact.is_zero());
        let t5 = tau_prime(&m, 5).unwrap();
        let closed = tref_tau_closed(5).unwrap();
        assert!((t5.tau_value() - closed).norm() < 1e-12);
    }

    #[test]
    fn tref_closed_form_hypotheses() {
        assert!(tref_closed_form(7).unwrap().xi_exact.is_zero());
        assert!(!tref_closed_form(5).unwrap().xi_exact.is_zero());
        assert!(matches!(tref_closed_form(9), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn corollary_agrees_on_examples() {
        let m = tref_manifold();
        assert_eq!(xi_corollary(&m, 5).unwrap(), xi_theorem1_at(&m, 5, quarter(5)).unwrap());
        let m = x("X(2/1,3/1,5/1)");
        assert_eq!(xi_corollary(&m, 7).unwrap(), xi_theorem1_at(&m, 7, quarter(7)).unwrap());
        assert!(matches!(xi_corollary(&x("X(6/1,5/2)"), 9), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn rozansky_examples() {
        let m = x("X(2/1,3/1,5/1)");
        let roz = tau_rozansky_numeric(&m, 7).unwrap();
        let tau = tau_prime(&m, 7).unwrap().tau_value();
        assert!((roz - tau).norm() <= 1e-9 * tau.norm().max(1.0), "{roz} vs {tau}");
        assert!(matches!(tau_rozansky_numeric(&tref_manifold(), 5), Err(Error::HypothesisViolated(_))));
        assert!(matches!(tau_rozansky_numeric(&x("X(5/1,3/1,2/1)"), 5), Err(Error::HypothesisViolated(_))));
        assert!(matches!(tau_rozansky_numeric(&m, 9), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn invalid_levels() {
        let m = x("X(3/1)");
        assert!(matches!(xi_theorem1_at(&m, 4, 1), Err(Error::InvalidLevel(4))));
        assert!(matches!(xi_theorem1_at(&m, 1, 1), Err(Error::InvalidLevel(1))));
        assert!(matches!(xi_theorem1_at(&m, 9, 3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn bezout_shift_keeps_value() {
        let m = x("X(6/1,5/2,-2/1)");
        for r in [5usize, 9, 15] {
            let legs: Vec<_> = m.legs().iter().map(|l| leg_data(&l.p, &l.q, r).unwrap()).collect();
            let base = xi_theorem1_with_legs(&m, &legs, r, 1).unwrap();
            for shift in -2..=2 {
                let moved: Vec<_> = legs.iter().map(|l| l.with_shifted_bezout(shift)).collect();
                assert_eq!(xi_theorem1_with_legs(&m, &moved, r, 1).unwrap(), base, "r = {r}, m = {shift}");
            }
        }
    }
}
