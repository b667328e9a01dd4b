//! Independent evaluation of `xi_r(M, zeta^t) = I / II` from the state sum of
//! the star-shaped plumbing, with no use of the closed leg formula.
//!
//! Leg sums `S(j)` are computed by transfer contraction along each chain, from
//! the free end toward the center. A nested enumeration is kept for
//! certifying the contraction on small instances.

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::{gauss_sum_at, CyclotomicNumber, Level, RootCoeff, RootSum};
use crate::error::{Error, Result};
use crate::numtheory::residue;
use crate::seifert::{linking_matrix, plumbing, SeifertData};
use crate::wrt::{check_level, check_unit, LegData, SineInverses};

/// Default cap on the number of enumerated terms in brute-force leg sums.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// `S(j)` for `j = 1..=r` at `zeta -> zeta^t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegSumTable {
    pub r: usize,
    pub t: i64,
    values: Vec<CyclotomicNumber>,
}

impl LegSumTable {
    /// `S(j)`, with `j` taken modulo `r` (`S(0) = S(r)`).
    pub fn get(&self, j: i64) -> &CyclotomicNumber {
        let k = j.rem_euclid(self.r as i64) as usize;
        &self.values[if k == 0 { self.r - 1 } else { k - 1 }]
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }
}

/// Transfer contraction with coefficients in `T`.
fn contract<T: RootCoeff + One>(framings: &[i64], r: usize, t: i64) -> Vec<RootSum<T>> {
    let ri = r as i64;
    let colors = 1..=ri;
    // seed: zeta^{t m_1 a^2} (zeta^{2ta} - zeta^{-2ta})
    let mut state: Vec<RootSum<T>> = colors
        .clone()
        .map(|a| {
            let mut s = RootSum::zero(r);
            s.add_sine_multiple(&RootSum::monomial(r, t * framings[0] * (a * a % ri)), 2 * t * a);
            s
        })
        .collect();
    for &m in &framings[1..] {
        state = colors
            .clone()
            .map(|b| {
                let mut acc = RootSum::zero(r);
                for (a, s) in colors.clone().zip(&state) {
                    acc.add_sine_multiple(s, 2 * t * (a * b % ri));
                }
                let mut out = RootSum::zero(r);
                out.add_shifted(&acc, t * m * (b * b % ri));
                out
            })
            .collect();
    }
    colors
        .clone()
        .map(|j| {
            let mut acc = RootSum::zero(r);
            for (a, s) in colors.clone().zip(&state) {
                acc.add_sine_multiple(s, 2 * t * (a * j % ri));
            }
            acc
        })
        .collect()
}

fn framing_residues(framings: &[BigInt], r: usize) -> Vec<i64> {
    framings.iter().map(|m| residue(m, r) as i64).collect()
}

/// Leg sums by transfer contraction, `O(l r^3)` integer operations.
///
/// `framings` runs from the free end `m_1` to the vertex `m_l` that links the
/// center.
pub fn leg_sum_dp(framings: &[BigInt], r: usize, t: i64) -> Result<LegSumTable> {
    let level = check_level(r)?;
    check_unit(t, r)?;
    if framings.is_empty() {
        return Err(Error::HypothesisViolated("empty chain".into()));
    }
    let fr = framing_residues(framings, r);
    // each contraction grows the l1 norm by at most 2r
    let log2_bound = 1.0 + (fr.len() + 1) as f64 * (2.0 * r as f64).log2();
    let values = if log2_bound < 120.0 {
        contract::<i128>(&fr, r, t).iter().map(|s| s.reduce(&level)).collect()
    } else {
        contract::<BigInt>(&fr, r, t).iter().map(|s| s.reduce(&level)).collect()
    };
    Ok(LegSumTable { r, t, values })
}

fn enumeration_size(r: usize, l: usize) -> u128 {
    (r as u128).saturating_pow(l as u32).saturating_mul(r as u128)
}

/// Leg sums by nested enumeration over all `r^l` colorings of the chain.
pub fn leg_sum_brute(framings: &[BigInt], r: usize, t: i64, budget: u128) -> Result<LegSumTable> {
    let level = check_level(r)?;
    check_unit(t, r)?;
    let l = framings.len();
    let needed = enumeration_size(r, l);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let fr = framing_residues(framings, r);
    let ri = r as i64;
    let mut tables = vec![RootSum::<i64>::zero(r); r];
    let mut colors = vec![1i64; l];
    loop {
        // j-independent part: framings, free-end factor, chain edges
        let exp: i64 = fr.iter().zip(&colors).map(|(m, c)| m * (c * c % ri)).sum();
        let mut term = RootSum::<i64>::monomial(r, t * exp);
        let mut factors = vec![2 * t * colors[0]];
        factors.extend(colors.windows(2).map(|w| 2 * t * (w[0] * w[1] % ri)));
        for a in factors {
            let mut next = RootSum::zero(r);
            next.add_sine_multiple(&term, a);
            term = next;
        }
        let last = colors[l - 1];
        for (j, table) in (1..=ri).zip(tables.iter_mut()) {
            table.add_sine_multiple(&term, 2 * t * (last * j % ri));
        }
        // odometer over 1..=r
        let mut k = 0;
        loop {
            if k == l {
                let values = tables.iter().map(|s| s.reduce(&level)).collect();
                return Ok(LegSumTable { r, t, values });
            }
            colors[k] += 1;
            if colors[k] <= ri {
                break;
            }
            colors[k] = 1;
            k += 1;
        }
    }
}

/// Closed leg sum: `(-2 g(r))^l * sign * jacobi * g(c) * sum_{+/-} chi(j) zeta^{t exponent}`,
/// all Gauss sums taken under `zeta -> zeta^t`.
pub fn leg_sum_closed(leg: &LegData, t: i64, j: i64) -> Result<CyclotomicNumber> {
    let level = check_level(leg.r)?;
    check_unit(t, leg.r)?;
    let phases = leg.phase_sum(t, j).reduce(&level);
    let g = gauss_sum_at(&level, leg.r, t)?.scale_int(&BigInt::from(-2));
    let l = leg.expansion.len() as i64;
    Ok(g.pow(l)? * leg.leg_constant(&level, t)? * phases)
}

fn assemble(m: &SeifertData, level: &Level, t: i64, tables: &[LegSumTable]) -> Result<CyclotomicNumber> {
    let r = level.r();
    let pres = plumbing(m)?;
    let lm = linking_matrix(&pres);
    let n_comp = pres.components() as i64;

    let mut sines = SineInverses::new(level);
    let mut sum = CyclotomicNumber::zero(level);
    for j in 1..r as i64 {
        let mut v = CyclotomicNumber::one(level);
        for tab in tables {
            v = v * tab.get(j);
        }
        if v.is_zero() {
            continue;
        }
        sum = sum + v * sines.power(2 * t * j, 2 - m.n() as i64)?;
    }
    let total = residue(&pres.total_framing(), r) as i64;
    let i_part = sines.power(2 * t, -(n_comp + 1))? * CyclotomicNumber::root_power(level, -t * total) * sum;

    // s_+ = -2 zeta^{-3t} g / (zeta^{2t} - zeta^{-2t}), s_- its conjugate
    let g = gauss_sum_at(level, r, t)?;
    let s_plus = CyclotomicNumber::root_power(level, -3 * t) * sines.get(2 * t)? * g.scale_int(&BigInt::from(-2));
    let s_minus = s_plus.conj();
    let ii = s_plus.pow(lm.b_plus as i64)? * s_minus.pow(lm.b_minus as i64)?;
    i_part.checked_div(&ii)
}

/// `xi_r(M, zeta^t)` from the plumbing state sum with transfer-contracted
/// leg sums.
pub fn xi_statesum(m: &SeifertData, r: usize, t: i64) -> Result<CyclotomicNumber> {
    let level = check_level(r)?;
    check_unit(t, r)?;
    let pres = plumbing(m)?;
    let tables = pres
        .chains()
        .iter()
        .map(|c| leg_sum_dp(&c.framings_leaf_first(), r, t))
        .collect::<Result<Vec<_>>>()?;
    assemble(m, &level, t, &tables)
}

/// As [`xi_statesum`] but with leg sums by nested enumeration. The budget is
/// checked against `r^N`, the size of the unfactored sum over all colorings.
pub fn xi_statesum_brute(m: &SeifertData, r: usize, t: i64, budget: u128) -> Result<CyclotomicNumber> {
    let level = check_level(r)?;
    check_unit(t, r)?;
    let pres = plumbing(m)?;
    let needed = enumeration_size(r, pres.components() - 1);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let tables = pres
        .chains()
        .iter()
        .map(|c| leg_sum_brute(&c.framings_leaf_first(), r, t, budget))
        .collect::<Result<Vec<_>>>()?;
    assemble(m, &level, t, &tables)
}
