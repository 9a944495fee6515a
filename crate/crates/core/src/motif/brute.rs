use super::{check_k, MotifCount, MotifKind};
use crate::error::{Error, Result};
use crate::model::Graph;
use itertools::Itertools;
use num_bigint::BigUint;

pub const DEFAULT_BRUTE_BUDGET: u64 = 10_000_000;

pub(crate) fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    let k = k.min(n - k.min(n));
    (0..k).try_fold(1u128, |acc, i| {
        acc.checked_mul((n - i) as u128)
            .map(|x| x / (i as u128 + 1))
    })
}

/// Subset (and permutation) enumeration; independent of the fast counters.
pub fn brute_force_motifs(g: impl AsRef<Graph>, k: usize, kind: MotifKind) -> Result<MotifCount> {
    brute_force_motifs_with_budget(g, k, kind, DEFAULT_BRUTE_BUDGET)
}

/// `budget` bounds the number of `k`-subsets examined.
pub fn brute_force_motifs_with_budget(
    g: impl AsRef<Graph>,
    k: usize,
    kind: MotifKind,
    budget: u64,
) -> Result<MotifCount> {
    let g = g.as_ref();
    if let Some(zero) = check_k(kind, k, g.n())? {
        return Ok(zero);
    }
    let subsets = binomial_u128(g.n(), k);
    if subsets.is_none_or(|s| s > budget as u128) {
        return Err(Error::Resource(format!(
            "C({}, {k}) subsets exceed the brute-force budget of {budget}",
            g.n()
        )));
    }
    let mut total = 0u64;
    for set in (0..g.n()).combinations(k) {
        match kind {
            MotifKind::Clique => {
                if set
                    .iter()
                    .tuple_combinations()
                    .all(|(&a, &b)| g.has_edge(a, b))
                {
                    total += 1;
                }
            }
            MotifKind::Cycle => {
                // cycles through set[0]; the reflection is removed by ordering the ends
                for perm in set[1..].iter().permutations(k - 1) {
                    if perm[0] > perm[k - 2] {
                        continue;
                    }
                    let closed = g.has_edge(set[0], *perm[0])
                        && g.has_edge(set[0], *perm[k - 2])
                        && perm.windows(2).all(|w| g.has_edge(*w[0], *w[1]));
                    if closed {
                        total += 1;
                    }
                }
            }
        }
    }
    Ok(MotifCount::new(kind, k, BigUint::from(total)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k5 = Graph::complete(5);
        assert_eq!(
            brute_force_motifs(&k5, 3, MotifKind::Clique).unwrap().count,
            10u32.into()
        );
        assert_eq!(
            brute_force_motifs(&k5, 5, MotifKind::Cycle).unwrap().count,
            12u32.into()
        );
        for k in 3..=6 {
            for kind in [MotifKind::Clique, MotifKind::Cycle] {
                let c = brute_force_motifs(Graph::empty(8), k, kind).unwrap();
                assert_eq!(c.count, 0u32.into());
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::empty(100);
        let r = brute_force_motifs_with_budget(&g, 5, MotifKind::Clique, 1000);
        assert!(matches!(r, Err(Error::Resource(_))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_u128(16, 6), Some(8008));
        assert_eq!(binomial_u128(5, 5), Some(1));
        assert_eq!(
            binomial_u128(100, 50),
            Some(100_891_344_545_564_193_334_812_497_256)
        );
    }
}
