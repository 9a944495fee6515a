use super::{check_k, MotifCount, MotifKind};
use crate::error::{Error, Result};
use crate::model::Graph;
use num_bigint::BigUint;
use std::time::Instant;

/// Rank vertices by decreasing degree (ties by index); `rank[v] = 0` is the largest hub.
pub(crate) fn degree_ranks(g: &Graph) -> Vec<u32> {
    let mut order: Vec<u32> = (0..g.n() as u32).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v as usize)), v));
    let mut rank = vec![0u32; g.n()];
    for (r, &v) in order.iter().enumerate() {
        rank[v as usize] = r as u32;
    }
    rank
}

/// Relabels by rank so that "minimum index" below means "minimum rank".
fn ranked_graph(g: &Graph) -> Graph {
    g.relabeled(&degree_ranks(g))
}

struct Deadline {
    until: Option<Instant>,
    started: Instant,
    ticks: u32,
}

impl Deadline {
    fn check(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 4096 == 0 {
            if let Some(t) = self.until {
                let now = Instant::now();
                if now > t {
                    return Err(Error::Timeout((now - self.started).as_secs_f64()));
                }
            }
        }
        Ok(())
    }
}

struct Dfs<'a> {
    g: &'a Graph,
    root: u32,
    k: usize,
    on_path: Vec<bool>,
    closes: Vec<bool>,
    deadline: Deadline,
}

impl Dfs<'_> {
    /// Paths root -> ... -> v with `len` vertices so far; counts closures back to root.
    fn walk(&mut self, v: u32, len: usize) -> Result<u128> {
        self.deadline.check()?;
        let g = self.g;
        let mut total = 0u128;
        if len == self.k - 1 {
            for &w in g.neighbors(v as usize) {
                if w > self.root && !self.on_path[w as usize] && self.closes[w as usize] {
                    total += 1;
                }
            }
            return Ok(total);
        }
        for &w in g.neighbors(v as usize) {
            if w > self.root && !self.on_path[w as usize] {
                self.on_path[w as usize] = true;
                total += self.walk(w, len + 1)?;
                self.on_path[w as usize] = false;
            }
        }
        Ok(total)
    }
}

/// Four-cycles by wedge counting: each cycle is charged to its top-ranked vertex `u`
/// and its opposite corner `w`, with both middle vertices ranked below `u`.
fn count_four_cycles(g: &Graph) -> BigUint {
    let n = g.n();
    let mut cnt = vec![0u64; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut total = BigUint::default();
    for u in 0..n as u32 {
        let mut local = 0u128;
        for &v in g.neighbors(u as usize) {
            if v >= u {
                continue;
            }
            for &w in g.neighbors(v as usize) {
                if w >= u {
                    break;
                }
                if cnt[w as usize] == 0 {
                    touched.push(w);
                }
                cnt[w as usize] += 1;
            }
        }
        for &w in &touched {
            let c = cnt[w as usize] as u128;
            local += c * (c - 1) / 2;
            cnt[w as usize] = 0;
        }
        touched.clear();
        total += local;
    }
    total
}

/// Number of `k`-cycles (as subgraphs; chords allowed).
pub fn count_cycles(g: impl AsRef<Graph>, k: usize) -> Result<MotifCount> {
    count_cycles_until(g, k, None)
}

/// As [`count_cycles`], aborting with [`Error::Timeout`] once `deadline` passes.
///
/// Each cycle is rooted at its vertex of least rank (vertices ranked by decreasing
/// degree) and walked in both directions, hence the final halving.
pub fn count_cycles_until(
    g: impl AsRef<Graph>,
    k: usize,
    deadline: Option<Instant>,
) -> Result<MotifCount> {
    let g = g.as_ref();
    if let Some(zero) = check_k(MotifKind::Cycle, k, g.n())? {
        return Ok(zero);
    }
    let h = ranked_graph(g);
    if k == 4 {
        return Ok(MotifCount::new(MotifKind::Cycle, 4, count_four_cycles(&h)));
    }
    let n = h.n();
    let mut dfs = Dfs {
        g: &h,
        root: 0,
        k,
        on_path: vec![false; n],
        closes: vec![false; n],
        deadline: Deadline {
            until: deadline,
            started: Instant::now(),
            ticks: 0,
        },
    };
    let mut total = BigUint::default();
    for r in 0..n as u32 {
        dfs.root = r;
        for &w in h.neighbors(r as usize) {
            if w > r {
                dfs.closes[w as usize] = true;
            }
        }
        dfs.on_path[r as usize] = true;
        let c = dfs.walk(r, 1)?;
        dfs.on_path[r as usize] = false;
        for &w in h.neighbors(r as usize) {
            dfs.closes[w as usize] = false;
        }
        if c > 0 {
            total += c;
        }
    }
    Ok(MotifCount::new(MotifKind::Cycle, k, total / 2u32))
}
