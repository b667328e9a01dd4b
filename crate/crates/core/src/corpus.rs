//! Test manifolds: a fixed list covering the interesting cases, and a seeded
//! random generator.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::seifert::SeifertData;

const FIXED: &[&str] = &[
    "X(3/1)",
    "X(5/2)",
    "X(-7/3)",
    "X(6/5)",
    "X(-4/1)",
    "X(2/1,-3/1)",
    "X(5/3,-7/2)",
    "X(4/3,6/1)",
    "X(2/1,-2/1)",
    "X(3/2,-3/2)",
    "X(7/4,3/1)",
    "X(-5/1,5/4)",
    "X(2/1,3/1,5/1)",
    "X(-2/1,3/1,6/1)",
    "X(3/1,3/1,-3/2)",
    "X(2/1,4/1,-4/3)",
    "X(2/1,3/1,-6/5)",
    "X(-1/1,2/1,2/1)",
    "X(4/1,4/1,-2/1)",
    "X(2/1,3/1,7/1)",
    "X(2/1,-3/2,5/1)",
    "X(3/1,5/2,-7/3)",
    "X(6/1,5/2,-2/1)",
    "X(3/1,6/5,-5/4)",
    "X(7/2,7/3,7/5)",
    "X(5/1,5/3,-5/2)",
    "X(6/5,4/3,-7/4)",
    "X(2/1,2/1,-7/5)",
    "X(3/2,5/3,7/4)",
    "X(-6/1,3/2,5/4)",
    "X(1/1,-7/2,4/1)",
    "X(2/1,2/1,-2/1,-2/1)",
    "X(2/1,3/1,5/1,-7/2)",
    "X(3/1,3/1,3/2,-5/1)",
    "X(2/1,-2/1,3/1,-3/2)",
    "X(5/2,7/3,-4/1,6/5)",
    "X(2/1,2/1,2/1,3/1)",
    "X(-3/1,5/1,7/1,-2/1)",
    "X(7/5,7/4,-6/5,5/3)",
    "X(4/1,-6/5,7/2,3/1)",
    "X(3/1,-3/1,5/2,-5/2)",
    "X(6/1,-3/1,-2/1)",
    "X(5/4,-5/3,7/1)",
    "X(-7/5,3/1,6/1,2/1)",
];

/// The fixed test corpus: 1 to 4 legs, `|p| <= 7`, `q <= 5`, with several
/// `H = 0` entries and plenty of `p_k` sharing factors with small odd `r`.
pub fn fixed_corpus() -> Vec<SeifertData> {
    FIXED.iter().map(|s| s.parse().expect("corpus entry")).collect()
}

/// `size` random manifolds with legs drawn like [`fixed_corpus`].
pub fn random_corpus(seed: u64, size: usize) -> Vec<SeifertData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            let legs: Vec<(i64, i64)> = (0..n)
                .map(|_| loop {
                    let p: i64 = rng.gen_range(-7..=7);
                    let q: i64 = rng.gen_range(1..=5);
                    if p != 0 && p.gcd(&q) == 1 {
                        break (p, q);
                    }
                })
                .collect();
            SeifertData::parse_normalize(legs).expect("coprime legs")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::top_invariants;
    use num_traits::Zero;

    #[test]
    fn fixed_corpus_shape() {
        let c = fixed_corpus();
        assert!(c.len() >= 40);
        assert!(c.iter().filter(|m| top_invariants(m).h.is_zero()).count() >= 8);
        for n in 1..=4 {
            assert!(c.iter().any(|m| m.n() == n));
        }
    }

    #[test]
    fn random_corpus_is_reproducible() {
        assert_eq!(random_corpus(7, 20), random_corpus(7, 20));
        assert_ne!(random_corpus(7, 20), random_corpus(8, 20));
        assert!(random_corpus(1, 0).is_empty());
    }
}
