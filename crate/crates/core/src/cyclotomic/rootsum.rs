use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CyclotomicNumber, Level};

/// Integer combination of `r`-th roots of unity kept modulo `x^r - 1`.
///
/// Adding a monomial is O(1) and adding a rotated copy is O(r), so state sums
/// accumulate here and are reduced modulo the cyclotomic polynomial once.
/// Representatives are not unique: compare only after [`RootSum::reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSum<T = BigInt> {
    coeffs: Vec<T>,
}

pub trait RootCoeff: Clone + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> + Into<BigInt> {}

impl<T> RootCoeff for T where T: Clone + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T> + Into<BigInt> {}

impl<T: RootCoeff> RootSum<T> {
    pub fn zero(r: usize) -> Self {
        RootSum { coeffs: vec![T::zero(); r] }
    }

    pub fn monomial(r: usize, k: i64) -> Self
    where
        T: num_traits::One,
    {
        let mut s = Self::zero(r);
        s.coeffs[k.rem_euclid(r as i64) as usize] = T::one();
        s
    }

    pub fn r(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn idx(&self, k: i64) -> usize {
        k.rem_euclid(self.coeffs.len() as i64) as usize
    }

    pub fn add_term(&mut self, k: i64, c: &T) {
        let i = self.idx(k);
        self.coeffs[i] += c;
    }

    pub fn sub_term(&mut self, k: i64, c: &T) {
        let i = self.idx(k);
        self.coeffs[i] -= c;
    }

    /// `self += zeta^shift * other`
    pub fn add_shifted(&mut self, other: &Self, shift: i64) {
        let r = self.coeffs.len();
        let s = self.idx(shift);
        for (i, c) in other.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let k = if i + s >= r { i + s - r } else { i + s };
                self.coeffs[k] += c;
            }
        }
    }

    /// `self -= zeta^shift * other`
    pub fn sub_shifted(&mut self, other: &Self, shift: i64) {
        let r = self.coeffs.len();
        let s = self.idx(shift);
        for (i, c) in other.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let k = if i + s >= r { i + s - r } else { i + s };
                self.coeffs[k] -= c;
            }
        }
    }

    /// `self += (zeta^a - zeta^{-a}) * other`
    pub fn add_sine_multiple(&mut self, other: &Self, a: i64) {
        self.add_shifted(other, a);
        self.sub_shifted(other, -a);
    }

    /// Product of two root sums, by cyclic convolution.
    pub fn mul(&self, other: &Self) -> Self
    where
        T: for<'a> std::ops::Mul<&'a T, Output = T>,
    {
        let r = self.coeffs.len();
        let mut out = Self::zero(r);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % r;
                    let prod = a.clone() * b;
                    out.coeffs[k] += &prod;
                }
            }
        }
        out
    }

    /// Canonical field element represented by this sum.
    pub fn reduce(&self, level: &Level) -> CyclotomicNumber {
        assert_eq!(level.r(), self.coeffs.len(), "root sum level mismatch");
        let wide: Vec<BigInt> = self.coeffs.iter().cloned().map(Into::into).collect();
        CyclotomicNumber::from_wide_integers(level, &wide)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_all_roots_reduces_to_zero() {
        let level = Level::new(9).unwrap();
        let mut s = RootSum::<i64>::zero(9);
        for k in 0..9 {
            s.add_term(k, &1);
        }
        assert!(s.reduce(&level).is_zero());
    }

    #[test]
    fn sine_multiple_vanishes_at_zero() {
        let mut s = RootSum::<i64>::zero(7);
        s.add_sine_multiple(&RootSum::monomial(7, 3), 14);
        assert!(s.is_zero());
    }

    #[test]
    fn convolution_matches_field_product() {
        let level = Level::new(15).unwrap();
        let mut a = RootSum::<BigInt>::zero(15);
        a.add_term(1, &BigInt::from(2));
        a.add_term(7, &BigInt::from(-3));
        let mut b = RootSum::<BigInt>::zero(15);
        b.add_term(11, &BigInt::from(5));
        b.add_term(4, &BigInt::from(1));
        assert_eq!(a.mul(&b).reduce(&level), &a.reduce(&level) * &b.reduce(&level));
    }
}
