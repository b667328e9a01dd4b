//! Exact arithmetic in the cyclotomic field `Q(zeta_r)` for odd `r >= 3`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^{phi(r)-1}`
//! after reduction modulo the `r`-th cyclotomic polynomial, as integer
//! numerators over one positive common denominator. The representation is
//! canonical, so structural equality is field equality, and an element is an
//! algebraic integer exactly when its denominator is 1 (the ring of integers
//! of `Q(zeta_r)` is `Z[zeta_r]`).

mod embed;
mod poly;
mod rootsum;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use embed::{ComplexApprox, Precision};
pub use poly::{cyclotomic_polynomial, euler_phi};
pub use rootsum::{RootCoeff, RootSum};

struct LevelData {
    r: usize,
    phi: usize,
    phi_poly: Vec<BigInt>,
    /// `x^k mod Phi_r` for `k in 0..r`, each of length `phi`
    powers: Vec<Vec<BigInt>>,
}

/// Handle to the precomputed data of `Q(zeta_r)`. Cheap to clone.
#[derive(Clone)]
pub struct Level(Arc<LevelData>);

static LEVELS: OnceLock<RwLock<HashMap<usize, Level>>> = OnceLock::new();

impl Level {
    /// Level data for odd `r >= 3`, shared through a process-wide cache.
    pub fn new(r: usize) -> Result<Level> {
        if r < 3 || r % 2 == 0 {
            return Err(Error::InvalidLevel(r));
        }
        let cache = LEVELS.get_or_init(Default::default);
        if let Some(l) = cache.read().unwrap().get(&r) {
            return Ok(l.clone());
        }
        let level = Level::build(r);
        Ok(cache.write().unwrap().entry(r).or_insert(level).clone())
    }

    fn build(r: usize) -> Level {
        let phi_poly = cyclotomic_polynomial(r);
        let phi = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(r);
        for k in 0..phi.min(r) {
            let mut v = vec![BigInt::zero(); phi];
            v[k] = BigInt::one();
            powers.push(v);
        }
        while powers.len() < r {
            // x * x^{k-1}, folding the x^phi overflow with the monic relation
            let prev = powers.last().unwrap();
            let top = prev[phi - 1].clone();
            let mut v = vec![BigInt::zero(); phi];
            for i in (1..phi).rev() {
                v[i] = prev[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, c) in phi_poly[..phi].iter().enumerate() {
                    v[i] -= &top * c;
                }
            }
            powers.push(v);
        }
        Level(Arc::new(LevelData { r, phi, phi_poly, powers }))
    }

    pub fn r(&self) -> usize {
        self.0.r
    }

    pub fn phi(&self) -> usize {
        self.0.phi
    }

    pub fn cyclotomic_polynomial(&self) -> &[BigInt] {
        &self.0.phi_poly
    }

    /// Reduce an exponent into `0..r`.
    pub fn exp(&self, k: i64) -> usize {
        k.rem_euclid(self.0.r as i64) as usize
    }
}

impl PartialEq for Level {
    fn eq(&self, other: &Self) -> bool {
        self.0.r == other.0.r
    }
}

impl Eq for Level {}

impl fmt::Debug for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Level({})", self.0.r)
    }
}

/// An exact element of `Q(zeta_r)` in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    level: Level,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn from_parts(level: &Level, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), level.phi());
        let mut x = CyclotomicNumber { level: level.clone(), num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.abs();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// Reduce integer coefficients indexed by exponent mod `r`.
    pub(crate) fn from_wide_integers(level: &Level, wide: &[BigInt]) -> Self {
        let phi = level.phi();
        let mut num = vec![BigInt::zero(); phi];
        for (k, c) in wide.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                num[k] += c;
            } else {
                for (slot, p) in num.iter_mut().zip(&level.0.powers[k]) {
                    if !p.is_zero() {
                        *slot += c * p;
                    }
                }
            }
        }
        Self::from_parts(level, num, BigInt::one())
    }

    pub fn zero(level: &Level) -> Self {
        Self::from_parts(level, vec![BigInt::zero(); level.phi()], BigInt::one())
    }

    pub fn one(level: &Level) -> Self {
        Self::from_integer(level, BigInt::one())
    }

    pub fn from_integer(level: &Level, n: BigInt) -> Self {
        Self::from_rational(level, &BigRational::from_integer(n))
    }

    pub fn from_rational(level: &Level, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); level.phi()];
        num[0] = q.numer().clone();
        Self::from_parts(level, num, q.denom().clone())
    }

    /// `zeta^k`, with `k` taken modulo `r`.
    pub fn root_power(level: &Level, k: i64) -> Self {
        let mut wide = vec![BigInt::zero(); level.r()];
        wide[level.exp(k)] = BigInt::one();
        Self::from_wide_integers(level, &wide)
    }

    /// `zeta^a - zeta^{-a}`
    pub fn root_sine(level: &Level, a: i64) -> Self {
        let mut wide = vec![BigInt::zero(); level.r()];
        wide[level.exp(a)] += 1;
        wide[level.exp(-a)] -= 1;
        Self::from_wide_integers(level, &wide)
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn r(&self) -> usize {
        self.level.r()
    }

    /// Canonical coordinates in the power basis.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Whether the element lies in `Z[zeta_r]`.
    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch { left: self.r(), right: other.r() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(self.combine(other, true))
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| if subtract { a * &fa - b * &fb } else { a * &fa + b * &fb })
            .collect();
        Self::from_parts(&self.level, num, den)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let r = self.r();
        let mut wide = vec![BigInt::zero(); r];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % r;
                    wide[k] += a * b;
                }
            }
        }
        let mut out = Self::from_wide_integers(&self.level, &wide);
        out.den = &self.den * &other.den;
        out.normalize();
        Ok(out)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = poly::inverse_mod(&self.num, self.level.cyclotomic_polynomial()).ok_or(Error::DivisionByZero)?;
        let den = inv.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); self.level.phi()];
        for (slot, c) in num.iter_mut().zip(&inv) {
            *slot = c.numer() * (&den / c.denom()) * &self.den;
        }
        Ok(Self::from_parts(&self.level, num, den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(&self.level);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(&self.level, num, &self.den * q.denom())
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        let num = self.num.iter().map(|c| c * n).collect();
        Self::from_parts(&self.level, num, self.den.clone())
    }

    /// The automorphism `zeta -> zeta^t`, `gcd(t, r) = 1`.
    pub fn galois(&self, t: i64) -> Result<Self> {
        let r = self.r();
        if !(t.rem_euclid(r as i64) as usize).gcd(&r).is_one() {
            return Err(Error::NotCoprime { a: t.into(), b: r.into() });
        }
        let mut wide = vec![BigInt::zero(); r];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                wide[self.level.exp(t * i as i64)] += c;
            }
        }
        let mut out = Self::from_wide_integers(&self.level, &wide);
        out.den = self.den.clone();
        out.normalize();
        Ok(out)
    }

    /// Complex conjugation, `galois(-1)`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    pub fn to_complex(&self, precision: Precision) -> ComplexApprox {
        embed::to_complex(self, precision)
    }
}

/// `zeta_r^k` as a standalone constructor.
pub fn root_power(r: usize, k: i64) -> Result<CyclotomicNumber> {
    Ok(CyclotomicNumber::root_power(&Level::new(r)?, k))
}

/// Quadratic Gauss sum `sum_{x=1}^{c} zeta_r^{(r/c) x^2}` for `c | r`,
/// which is `sqrt(c) eps(c)` in the field.
pub fn gauss_sum(r: usize, c: usize) -> Result<CyclotomicNumber> {
    gauss_sum_at(&Level::new(r)?, c, 1)
}

/// Image of [`gauss_sum`] under `zeta -> zeta^t`.
pub fn gauss_sum_at(level: &Level, c: usize, t: i64) -> Result<CyclotomicNumber> {
    let r = level.r();
    if c == 0 || r % c != 0 {
        return Err(Error::NotADivisor { c, r });
    }
    let step = (r / c) as i64;
    let mut sum = RootSum::<i64>::zero(r);
    for x in 1..=c as i64 {
        sum.add_term(t * step * x * x, &1);
    }
    Ok(sum.reduce(level))
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})[", self.r())?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = if first {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{sep}{a}")?,
                _ if a.is_one() => write!(f, "{sep}z^{i}")?,
                _ => write!(f, "{sep}{a}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).expect("operands must share a level")
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { level: self.level.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}
