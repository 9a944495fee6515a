use super::{check_k, MotifCount, MotifKind};
use crate::error::{Error, Result};
use crate::model::Graph;
use num_bigint::BigUint;
use std::time::Instant;

/// Degeneracy order via bucket peeling; returns `position[v]`.
pub(crate) fn degeneracy_positions(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_deg + 1];
    for (v, &d) in deg.iter().enumerate() {
        buckets[d].push(v as u32);
    }
    let mut removed = vec![false; n];
    let mut position = vec![0u32; n];
    let mut next = 0u32;
    let mut d = 0usize;
    while (next as usize) < n {
        // stale bucket entries are skipped lazily
        let v = loop {
            match buckets[d].pop() {
                Some(v) if !removed[v as usize] && deg[v as usize] == d => break v as usize,
                Some(_) => continue,
                None => d += 1,
            }
        };
        removed[v] = true;
        position[v] = next;
        next += 1;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !removed[w] {
                deg[w] -= 1;
                buckets[deg[w]].push(w as u32);
            }
        }
        d = d.saturating_sub(1);
    }
    position
}

fn intersect_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

struct Search<'a> {
    out: &'a [Vec<u32>],
    deadline: Option<Instant>,
    started: Instant,
    ticks: u32,
}

impl Search<'_> {
    fn extend(&mut self, cand: &[u32], remaining: usize, scratch: &mut [Vec<u32>]) -> Result<u128> {
        if remaining == 1 {
            return Ok(cand.len() as u128);
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 4096 == 0 {
            if let Some(d) = self.deadline {
                let now = Instant::now();
                if now > d {
                    return Err(Error::Timeout((now - self.started).as_secs_f64()));
                }
            }
        }
        let (head, tail) = scratch.split_first_mut().expect("scratch depth");
        let mut total = 0u128;
        for &w in cand {
            intersect_into(cand, &self.out[w as usize], head);
            if head.len() + 1 >= remaining {
                let next = std::mem::take(head);
                let r = self.extend(&next, remaining - 1, tail);
                *head = next;
                total += r?;
            }
        }
        Ok(total)
    }
}

/// Number of `k`-vertex complete subgraphs.
///
/// Vertices are processed in degeneracy order and every clique is grown only
/// through later vertices, so each is found exactly once.
pub fn count_cliques(g: impl AsRef<Graph>, k: usize) -> Result<MotifCount> {
    count_cliques_until(g, k, None)
}

/// As [`count_cliques`], aborting with [`Error::Timeout`] once `deadline` passes.
pub fn count_cliques_until(
    g: impl AsRef<Graph>,
    k: usize,
    deadline: Option<Instant>,
) -> Result<MotifCount> {
    let g = g.as_ref();
    if let Some(zero) = check_k(MotifKind::Clique, k, g.n())? {
        return Ok(zero);
    }
    let pos = degeneracy_positions(g);
    let n = g.n();
    let mut out: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 0..n {
        let pv = pos[v];
        let list = &mut out[pv as usize];
        list.extend(
            g.neighbors(v)
                .iter()
                .map(|&w| pos[w as usize])
                .filter(|&pw| pw > pv),
        );
        list.sort_unstable();
    }
    let mut scratch = vec![Vec::new(); k];
    let mut search = Search {
        out: &out,
        deadline,
        started: Instant::now(),
        ticks: 0,
    };
    let mut total = BigUint::default();
    for v in 0..n {
        if out[v].len() + 1 >= k {
            let c = search.extend(&out[v], k - 1, &mut scratch)?;
            if c > 0 {
                total += c;
            }
        }
    }
    Ok(MotifCount::new(MotifKind::Clique, k, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_examples() {
        assert_eq!(
            count_cliques(Graph::complete(6), 4).unwrap().count,
            15u32.into()
        );
        assert_eq!(
            count_cliques(Graph::cycle(5), 3).unwrap().count,
            0u32.into()
        );
        assert!(count_cliques(Graph::complete(4), 2).is_err());
        let r = count_cliques(Graph::complete(4), 5).unwrap();
        assert!(r.k_exceeds_n);
        assert_eq!(r.count, 0u32.into());
    }

    #[test]
    fn complete_graphs() {
        for n in 3..=9 {
            for k in 3..=n {
                let c = count_cliques(Graph::complete(n), k).unwrap();
                assert_eq!(c.count, binom(n as u64, k as u64).into(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn deadline_in_the_past_times_out() {
        let r = count_cliques_until(Graph::complete(60), 6, Some(Instant::now()));
        assert!(matches!(r, Err(Error::Timeout(_))));
    }

    #[test]
    fn degeneracy_order_is_a_permutation() {
        let g = Graph::petersen();
        let mut p = degeneracy_positions(&g);
        p.sort_unstable();
        assert_eq!(p, (0..10).collect::<Vec<u32>>());
    }
}
