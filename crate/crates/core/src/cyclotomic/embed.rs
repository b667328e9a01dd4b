//! Numeric embedding `zeta_r -> exp(2 pi i / r)`.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::CyclotomicNumber;

/// Working precision in decimal digits. Up to 15 digits the embedding runs in
/// `f64`; beyond that it uses a multiprecision float and rounds the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision(pub u32);

impl Precision {
    pub const DOUBLE: Precision = Precision(15);

    fn bits(self) -> usize {
        // 3.33 bits per digit plus guard bits, rounded to whole words
        let b = (self.0 as usize * 10).div_ceil(3) + 64;
        b.div_ceil(64) * 64
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DOUBLE
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    /// A priori bound on `|computed - exact|`.
    pub error_bound: f64,
}

impl ComplexApprox {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

pub(super) fn to_complex(x: &CyclotomicNumber, precision: Precision) -> ComplexApprox {
    let coeffs = x.coeffs();
    let abs_sum: f64 = coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum();
    let terms = (x.level().phi() + 3) as f64;
    if precision.0 <= 15 {
        let r = x.r() as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_f64().unwrap_or(f64::NAN);
            let theta = std::f64::consts::TAU * k as f64 / r;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        return ComplexApprox { re, im, error_bound: abs_sum * terms * f64::EPSILON };
    }
    let (re, im) = multiprecision(&coeffs, x.r(), precision.bits());
    let rounding = (re.abs() + im.abs()) * f64::EPSILON;
    let bound = abs_sum * terms * 2f64.powi(-(precision.bits() as i32 - 8)) + rounding;
    ComplexApprox { re, im, error_bound: bound }
}

fn multiprecision(coeffs: &[BigRational], r: usize, p: usize) -> (f64, f64) {
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().expect("multiprecision constants");
    let parse = |s: String, cc: &mut Consts| BigFloat::parse(&s, Radix::Dec, p, rm, cc);
    let two_pi_over_r = cc.pi(p, rm).mul(&BigFloat::from_i64(2, p), p, rm).div(&BigFloat::from_u64(r as u64, p), p, rm);
    let mut re = BigFloat::from_i64(0, p);
    let mut im = BigFloat::from_i64(0, p);
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = parse(c.numer().to_string(), &mut cc).div(&parse(c.denom().to_string(), &mut cc), p, rm);
        let theta = two_pi_over_r.mul(&BigFloat::from_u64(k as u64, p), p, rm);
        re = re.add(&c.mul(&theta.cos(p, rm, &mut cc), p, rm), p, rm);
        im = im.add(&c.mul(&theta.sin(p, rm, &mut cc), p, rm), p, rm);
    }
    let out = |v: &BigFloat, cc: &mut Consts| {
        if v.is_zero() {
            return 0.0;
        }
        v.format(Radix::Dec, rm, cc).ok().and_then(|s| s.parse::<f64>().ok()).unwrap_or(f64::NAN)
    };
    (out(&re, &mut cc), out(&im, &mut cc))
}
