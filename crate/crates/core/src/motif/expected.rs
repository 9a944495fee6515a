use super::brute::binomial_u128;
use crate::error::{param, Error, Result};
use crate::model::ProbabilityMatrix;

/// Budget on subsets (cliques, `k >= 4`) or rooted paths (cycles, `k >= 5`).
pub const DEFAULT_EXPECTATION_BUDGET: u64 = 100_000_000;

/// `sum_{i,j,l} p_ij p_jl p_li`, i.e. `tr P^3`.
fn trace_cube(pm: &ProbabilityMatrix) -> f64 {
    let n = pm.n();
    let mut total = 0.0;
    for i in 0..n {
        let ri = pm.row(i);
        for j in 0..n {
            let pij = ri[j];
            if pij == 0.0 {
                continue;
            }
            let rj = pm.row(j);
            let s: f64 = rj.iter().zip(ri).map(|(a, b)| a * b).sum();
            total += pij * s;
        }
    }
    total
}

/// Expected number of `k`-cliques when each edge `{i,j}` is present with probability `p_ij`.
///
/// For `k = 3` this is `tr(P^3)/6`; larger `k` sums over all `k`-subsets.
pub fn expected_cliques_given_weights(pm: &ProbabilityMatrix, k: usize) -> Result<f64> {
    expected_cliques_with_budget(pm, k, DEFAULT_EXPECTATION_BUDGET)
}

pub fn expected_cliques_with_budget(pm: &ProbabilityMatrix, k: usize, budget: u64) -> Result<f64> {
    if k < 3 {
        return param(format!("motif size must be at least 3, got {k}"));
    }
    let n = pm.n();
    if k > n {
        return Ok(0.0);
    }
    if k == 3 {
        return Ok(trace_cube(pm) / 6.0);
    }
    if binomial_u128(n, k).is_none_or(|s| s > budget as u128) {
        return Err(Error::Resource(format!(
            "C({n}, {k}) subsets exceed the budget of {budget}"
        )));
    }
    // prod: product over edges among the chosen vertices; w[v]: product of p_uv over chosen u
    fn grow(
        pm: &ProbabilityMatrix,
        prod: f64,
        w: &[f64],
        start: usize,
        remaining: usize,
        scratch: &mut [Vec<f64>],
    ) -> f64 {
        if remaining == 1 {
            return prod * w[start..].iter().sum::<f64>();
        }
        let n = pm.n();
        let (next, rest) = scratch.split_first_mut().expect("scratch depth");
        let mut total = 0.0;
        for v in start..n + 1 - remaining {
            if w[v] == 0.0 {
                continue;
            }
            let row = pm.row(v);
            next.clear();
            next.resize(v + 1, 0.0);
            next.extend(w[v + 1..].iter().zip(&row[v + 1..]).map(|(a, b)| a * b));
            let buf = std::mem::take(next);
            total += grow(pm, prod * w[v], &buf, v + 1, remaining - 1, rest);
            *next = buf;
        }
        total
    }
    let mut scratch = vec![Vec::with_capacity(n); k];
    Ok(grow(pm, 1.0, &vec![1.0; n], 0, k, &mut scratch))
}

/// Expected number of `k`-cycles given the edge probabilities.
///
/// `k = 3` and `k = 4` use trace identities; `k = 4` subtracts the degenerate
/// closed walks from `tr P^4`:
/// `(tr P^4 - 2 sum_a (sum_b p_ab^2)^2 + sum_{a,b} p_ab^4) / 8`.
/// Larger `k` walks distinct-vertex paths rooted at their minimum vertex.
pub fn expected_cycles_given_weights(pm: &ProbabilityMatrix, k: usize) -> Result<f64> {
    if k < 3 {
        return param(format!("motif size must be at least 3, got {k}"));
    }
    let n = pm.n();
    if k > n {
        return Ok(0.0);
    }
    match k {
        3 => Ok(trace_cube(pm) / 6.0),
        4 => {
            let mut p2 = vec![0.0; n * n];
            for i in 0..n {
                let ri = pm.row(i);
                for j in i..n {
                    let s: f64 = ri.iter().zip(pm.row(j)).map(|(a, b)| a * b).sum();
                    p2[i * n + j] = s;
                    p2[j * n + i] = s;
                }
            }
            let tr4: f64 = p2.iter().map(|x| x * x).sum();
            let deg: f64 = (0..n).map(|a| p2[a * n + a] * p2[a * n + a]).sum();
            let quart: f64 = (0..n)
                .flat_map(|a| pm.row(a).iter().map(|p| p.powi(4)))
                .sum();
            Ok(((tr4 - 2.0 * deg + quart) / 8.0).max(0.0))
        }
        _ => {
            let budget_ok = n <= 14
                || (n as f64).powi(k as i32) / (2.0 * k as f64)
                    <= DEFAULT_EXPECTATION_BUDGET as f64;
            if !budget_ok {
                return Err(Error::Resource(format!(
                    "n^k/(2k) paths for n = {n}, k = {k} exceed the budget of {DEFAULT_EXPECTATION_BUDGET}"
                )));
            }
            Ok(expected_cycles_by_paths(pm, k))
        }
    }
}

/// `(1/2) sum` over paths `r -> v_1 -> ... -> v_{k-1} -> r` with all `v_i > r` distinct.
pub fn expected_cycles_by_paths(pm: &ProbabilityMatrix, k: usize) -> f64 {
    let n = pm.n();
    fn walk(
        pm: &ProbabilityMatrix,
        root: usize,
        v: usize,
        len: usize,
        k: usize,
        on: &mut [bool],
        prod: f64,
    ) -> f64 {
        if len == k {
            return prod * pm.get(v, root);
        }
        let mut total = 0.0;
        for w in root + 1..pm.n() {
            let p = pm.get(v, w);
            if on[w] || p == 0.0 {
                continue;
            }
            on[w] = true;
            total += walk(pm, root, w, len + 1, k, on, prod * p);
            on[w] = false;
        }
        total
    }
    let mut on = vec![false; n];
    let mut total = 0.0;
    for r in 0..n {
        on[r] = true;
        total += walk(pm, r, r, 1, k, &mut on, 1.0);
        on[r] = false;
    }
    total / 2.0
}

/// `(1/(2k)) sum` over all ordered tuples of distinct vertices of the cyclic product.
pub fn ordered_tuple_cycle_sum(pm: &ProbabilityMatrix, k: usize) -> f64 {
    fn rec(pm: &ProbabilityMatrix, tuple: &mut Vec<usize>, k: usize, prod: f64) -> f64 {
        if tuple.len() == k {
            return prod * pm.get(tuple[k - 1], tuple[0]);
        }
        let mut total = 0.0;
        for v in 0..pm.n() {
            if tuple.contains(&v) {
                continue;
            }
            let p = tuple.last().map_or(1.0, |&u| pm.get(u, v));
            tuple.push(v);
            total += rec(pm, tuple, k, prod * p);
            tuple.pop();
        }
        total
    }
    rec(pm, &mut Vec::new(), k, 1.0) / (2 * k) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{probability_matrix, sample_weights, Kernel, ModelParams, Tau};

    fn random_pm(n: usize, seed: u64) -> ProbabilityMatrix {
        let params = ModelParams::new(n, 2.5, Kernel::MinOne, seed).unwrap();
        let w = sample_weights(&params, 0).unwrap();
        probability_matrix(&w, n, Tau::new(2.5).unwrap(), Kernel::MinOne).unwrap()
    }

    #[test]
    fn constant_matrices() {
        let q = 1.0 / 9.0;
        let pm = ProbabilityMatrix::constant(3, q).unwrap();
        assert!((expected_cliques_given_weights(&pm, 3).unwrap() - q.powi(3)).abs() < 1e-18);
        assert!((expected_cycles_given_weights(&pm, 3).unwrap() - q.powi(3)).abs() < 1e-18);
        let pm = ProbabilityMatrix::constant(4, 0.3).unwrap();
        let want = 3.0 * 0.3f64.powi(4);
        assert!((expected_cycles_given_weights(&pm, 4).unwrap() - want).abs() < 1e-15);
        assert!((expected_cycles_by_paths(&pm, 4) - want).abs() < 1e-15);
    }

    #[test]
    fn zero_in_every_triple() {
        // bipartite probabilities: no triangle can form
        let n = 6;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i % 2 != j % 2 {
                    data[i * n + j] = 0.7;
                }
            }
        }
        let pm = ProbabilityMatrix::from_dense(n, data).unwrap();
        assert_eq!(expected_cliques_given_weights(&pm, 3).unwrap(), 0.0);
        assert_eq!(expected_cliques_given_weights(&pm, 4).unwrap(), 0.0);
    }

    #[test]
    fn triangle_trace_equals_subset_sum() {
        let pm = random_pm(50, 3);
        let trace = expected_cliques_given_weights(&pm, 3).unwrap();
        let mut direct = 0.0;
        for i in 0..50 {
            for j in i + 1..50 {
                for l in j + 1..50 {
                    direct += pm.get(i, j) * pm.get(j, l) * pm.get(i, l);
                }
            }
        }
        assert!(((trace - direct) / direct).abs() < 1e-10);
    }

    #[test]
    fn cycle_forms_agree() {
        let pm = random_pm(10, 11);
        for k in 3..=6 {
            let raw = ordered_tuple_cycle_sum(&pm, k);
            let dfs = expected_cycles_by_paths(&pm, k);
            let main = expected_cycles_given_weights(&pm, k).unwrap();
            assert!(((dfs - raw) / raw).abs() < 1e-10, "k={k}");
            assert!(((main - raw) / raw).abs() < 1e-10, "k={k}");
        }
        let pm = random_pm(40, 5);
        let a = expected_cycles_given_weights(&pm, 4).unwrap();
        let b = expected_cycles_by_paths(&pm, 4);
        assert!(((a - b) / b).abs() < 1e-10);
    }

    #[test]
    fn clique_subsets_agree_with_trace_and_budget() {
        let pm = random_pm(12, 2);
        let mut direct = 0.0;
        for i in 0..12 {
            for j in i + 1..12 {
                for l in j + 1..12 {
                    for m in l + 1..12 {
                        direct += [(i, j), (i, l), (i, m), (j, l), (j, m), (l, m)]
                            .iter()
                            .map(|&(a, b)| pm.get(a, b))
                            .product::<f64>();
                    }
                }
            }
        }
        let got = expected_cliques_given_weights(&pm, 4).unwrap();
        assert!(((got - direct) / direct).abs() < 1e-12);
        assert!(matches!(
            expected_cliques_with_budget(&pm, 4, 10),
            Err(Error::Resource(_))
        ));
        let pm = random_pm(14, 9);
        for k in [4, 5, 6] {
            let direct: f64 = itertools::Itertools::combinations(0..14usize, k)
                .map(|s| {
                    itertools::Itertools::tuple_combinations::<(_, _)>(s.iter())
                        .map(|(&a, &b)| pm.get(a, b))
                        .product::<f64>()
                })
                .sum();
            let got = expected_cliques_given_weights(&pm, k).unwrap();
            assert!(((got - direct) / direct).abs() < 1e-12, "k={k}");
        }
        let big = random_pm(200, 1);
        assert!(matches!(
            expected_cycles_given_weights(&big, 5),
            Err(Error::Resource(_))
        ));
    }
}
