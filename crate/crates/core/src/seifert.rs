//! Seifert data `X(p1/q1, ..., pn/qn)`, its star-shaped plumbing and the
//! signature of the plumbing's linking matrix.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{good_expansion, sign, GoodExpansion};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leg {
    pub p: BigInt,
    pub q: BigInt,
}

/// Surgery description with every `q_k > 0` and `gcd(p_k, q_k) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertData {
    legs: Vec<Leg>,
}

impl SeifertData {
    /// Validate the pairs, flipping `(p, q) -> (-p, -q)` when `q < 0`.
    pub fn parse_normalize<I, P, Q>(pairs: I) -> Result<SeifertData>
    where
        I: IntoIterator<Item = (P, Q)>,
        P: Into<BigInt>,
        Q: Into<BigInt>,
    {
        let mut legs = Vec::new();
        for (p, q) in pairs {
            let (mut p, mut q) = (p.into(), q.into());
            if p.is_zero() || q.is_zero() {
                return Err(Error::ZeroEntry { p, q });
            }
            if !p.gcd(&q).is_one() {
                return Err(Error::NotCoprime { a: p, b: q });
            }
            if q.is_negative() {
                p = -p;
                q = -q;
            }
            legs.push(Leg { p, q });
        }
        if legs.is_empty() {
            return Err(Error::Parse("at least one leg is required".into()));
        }
        Ok(SeifertData { legs })
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn n(&self) -> usize {
        self.legs.len()
    }

    pub fn permuted(&self, order: &[usize]) -> SeifertData {
        SeifertData { legs: order.iter().map(|&i| self.legs[i].clone()).collect() }
    }
}

impl FromStr for SeifertData {
    type Err = Error;

    /// Grammar: `X(p1/q1,...,pn/qn)` with signed integers; whitespace is ignored.
    fn from_str(s: &str) -> Result<SeifertData> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("X(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected X(p1/q1,...), got {s:?}")))?;
        let mut pairs = Vec::new();
        for item in body.split(',') {
            let (p, q) = item.split_once('/').ok_or_else(|| Error::Parse(format!("expected p/q, got {item:?}")))?;
            let p: BigInt = p.parse().map_err(|_| Error::Parse(format!("bad integer {p:?}")))?;
            let q: BigInt = q.parse().map_err(|_| Error::Parse(format!("bad integer {q:?}")))?;
            pairs.push((p, q));
        }
        SeifertData::parse_normalize(pairs)
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X(")?;
        for (i, l) in self.legs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}/{}", l.p, l.q)?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopInvariants {
    /// `P = prod p_k`
    pub p_prod: BigInt,
    /// `H = P sum q_k / p_k`
    pub h: BigInt,
    /// First Betti number: 1 iff `H = 0`.
    pub nu: u32,
    pub sign_h_abs: i32,
    pub sign_h_over_p: i32,
    pub sign_p: i32,
}

pub fn top_invariants(m: &SeifertData) -> TopInvariants {
    let p_prod: BigInt = m.legs.iter().map(|l| &l.p).product();
    let h: BigInt = m.legs.iter().map(|l| &l.q * (&p_prod / &l.p)).sum();
    let sign_p = sign(&p_prod);
    TopInvariants {
        nu: u32::from(h.is_zero()),
        sign_h_abs: i32::from(!h.is_zero()),
        sign_h_over_p: sign(&h) * sign_p,
        sign_p,
        p_prod,
        h,
    }
}

/// Star-shaped plumbing: a central 0-framed unknot with one linear chain per
/// leg, framed by the good expansion of `p_k/q_k`. The `m_{k,l_k}` vertex of
/// each chain links the center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingPresentation {
    chains: Vec<GoodExpansion>,
}

impl PlumbingPresentation {
    pub fn chains(&self) -> &[GoodExpansion] {
        &self.chains
    }

    /// Number of link components, `sum l_k + 1`.
    pub fn components(&self) -> usize {
        1 + self.chains.iter().map(GoodExpansion::len).sum::<usize>()
    }

    /// Sum of all framings.
    pub fn total_framing(&self) -> BigInt {
        self.chains.iter().map(GoodExpansion::sum_m).sum()
    }
}

pub fn plumbing(m: &SeifertData) -> Result<PlumbingPresentation> {
    let chains = m.legs.iter().map(|l| good_expansion(&l.p, &l.q)).collect::<Result<_>>()?;
    Ok(PlumbingPresentation { chains })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix {
    /// Vertex 0 is the center; each chain follows, free end first.
    pub entries: Vec<Vec<BigInt>>,
    pub b_plus: usize,
    pub b_minus: usize,
    pub b_zero: usize,
}

pub fn linking_matrix(pres: &PlumbingPresentation) -> LinkingMatrix {
    let n = pres.components();
    let mut a = vec![vec![BigInt::zero(); n]; n];
    let mut next = 1;
    for chain in &pres.chains {
        let fr = chain.framings_leaf_first();
        let ids: Vec<usize> = (next..next + fr.len()).collect();
        for (i, m) in ids.iter().zip(&fr) {
            a[*i][*i] = m.clone();
        }
        for w in ids.windows(2) {
            a[w[0]][w[1]] = BigInt::one();
            a[w[1]][w[0]] = BigInt::one();
        }
        let last = *ids.last().unwrap();
        a[0][last] = BigInt::one();
        a[last][0] = BigInt::one();
        next += fr.len();
    }
    let (b_plus, b_minus, b_zero) = signature(&a);
    LinkingMatrix { entries: a, b_plus, b_minus, b_zero }
}

/// Inertia `(positive, negative, zero)` of a symmetric integer matrix, by
/// exact congruence diagonalization over the rationals. A zero diagonal with
/// a nonzero off-diagonal entry is repaired by adding one row/column to
/// another, which keeps the form congruent.
pub fn signature(m: &[Vec<BigInt>]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut active: Vec<usize> = (0..a.len()).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(k) => k,
            None => {
                let pair = active
                    .iter()
                    .enumerate()
                    .find_map(|(ki, &i)| active.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (ki, i, j)));
                let Some((ki, i, j)) = pair else { break };
                // row_i += row_j, col_i += col_j
                for &k in &active {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for &k in &active {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                ki
            }
        };
        let i = active.swap_remove(pivot);
        let d = a[i][i].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for &j in &active {
            if a[j][i].is_zero() {
                continue;
            }
            let f = &a[j][i] / &d;
            for &k in &active {
                let delta = &f * &a[i][k];
                a[j][k] -= delta;
            }
        }
    }
    (pos, neg, active.len())
}

/// `(b_plus, b_minus)` from the plumbing identities: `b_+ + b_- = N - 1 + sign|H|`
/// and `b_-` counts the negatives among `p_1, ..., p_n, -H/P`.
pub fn b_counts_closed_form(m: &SeifertData, inv: &TopInvariants) -> (usize, usize) {
    let l_total: usize = m
        .legs
        .iter()
        .map(|l| good_expansion(&l.p, &l.q).expect("validated leg").len())
        .sum();
    let total = l_total + inv.sign_h_abs as usize;
    let b_minus = m.legs.iter().filter(|l| l.p.is_negative()).count() + usize::from(inv.sign_h_over_p > 0);
    (total - b_minus, b_minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> SeifertData {
        s.parse().unwrap()
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn parse_and_normalize() {
        let m = x("X(-2/1, 3/1, 6/1)");
        assert_eq!(m.to_string(), "X(-2/1,3/1,6/1)");
        assert_eq!(x("X(2/-1)").to_string(), "X(-2/1)");
        assert!(matches!("X(4/2)".parse::<SeifertData>(), Err(Error::NotCoprime { .. })));
        assert!(matches!("X(0/1)".parse::<SeifertData>(), Err(Error::ZeroEntry { .. })));
        assert!(matches!("X(3/0)".parse::<SeifertData>(), Err(Error::ZeroEntry { .. })));
        assert!(matches!("Y(3/1)".parse::<SeifertData>(), Err(Error::Parse(_))));
        assert!(matches!("X(3)".parse::<SeifertData>(), Err(Error::Parse(_))));
        assert!(matches!("X()".parse::<SeifertData>(), Err(Error::Parse(_))));
    }

    #[test]
    fn top_invariant_examples() {
        let t = top_invariants(&x("X(-2/1,3/1,6/1)"));
        assert_eq!((t.p_prod, t.h, t.nu), (BigInt::from(-36), BigInt::zero(), 1));
        assert_eq!((t.sign_h_abs, t.sign_h_over_p), (0, 0));
        let t = top_invariants(&x("X(2/1,3/1,5/1)"));
        assert_eq!((t.p_prod, t.h, t.nu), (BigInt::from(30), BigInt::from(31), 0));
        let t = top_invariants(&x("X(3/1)"));
        assert_eq!((t.p_prod, t.h), (BigInt::from(3), BigInt::from(1)));
    }

    #[test]
    fn plumbing_examples() {
        let p = plumbing(&x("X(3/1)")).unwrap();
        assert_eq!(p.chains()[0].framings_leaf_first(), vec![BigInt::from(1), BigInt::from(4)]);
        assert_eq!(p.components(), 3);
        assert_eq!(plumbing(&x("X(-2/1,3/1,6/1)")).unwrap().components(), 7);
        let p = plumbing(&x("X(5/2)")).unwrap();
        assert_eq!(p.chains()[0].framings_leaf_first(), vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(p.components(), 3);
    }

    #[test]
    fn linking_matrix_of_single_leg() {
        let lm = linking_matrix(&plumbing(&x("X(3/1)")).unwrap());
        // vertices: center, m1 = 1, m2 = 4
        assert_eq!(lm.entries, ints(&[&[0, 0, 1], &[0, 1, 1], &[1, 1, 4]]));
        assert_eq!((lm.b_plus, lm.b_minus, lm.b_zero), (2, 1, 0));
    }

    #[test]
    fn signature_small_matrices() {
        assert_eq!(signature(&ints(&[&[2, 0], &[0, 2]])), (2, 0, 0));
        assert_eq!(signature(&ints(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(signature(&ints(&[&[0, 0], &[0, 0]])), (0, 0, 2));
        assert_eq!(signature(&ints(&[&[1, 1], &[1, 1]])), (1, 0, 1));
        assert_eq!(signature(&ints(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]])), (1, 1, 1));
    }

    #[test]
    fn closed_form_b_counts() {
        for (s, expect) in [("X(3/1)", (2, 1)), ("X(-2/1,3/1,6/1)", (5, 1))] {
            let m = x(s);
            assert_eq!(b_counts_closed_form(&m, &top_invariants(&m)), expect, "{s}");
            let lm = linking_matrix(&plumbing(&m).unwrap());
            assert_eq!((lm.b_plus, lm.b_minus), expect);
            assert_eq!(lm.b_zero as u32, top_invariants(&m).nu);
        }
        let m = x("X(2/1,3/1,5/1)");
        assert_eq!(b_counts_closed_form(&m, &top_invariants(&m)).1, 1);
    }

    #[test]
    fn chains_reproduce_coefficients() {
        let m = x("X(7/3,-4/3,5/2,2/1,-1/5)");
        let p = plumbing(&m).unwrap();
        for (leg, chain) in m.legs().iter().zip(p.chains()) {
            assert_eq!(chain.value(), BigRational::new(leg.p.clone(), leg.q.clone()));
        }
    }
}
