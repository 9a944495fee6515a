use super::kernel::Kernel;
use super::params::{EdgeSampler, ModelParams};
use super::rng::{SeedLineage, StreamPurpose};
use super::weights::WeightVector;
use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Simple undirected graph in compressed sparse row form.
///
/// Neighbor lists are strictly increasing, symmetric and loop-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges may be given in either orientation;
    /// self-loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::Parameter(format!(
                "at most {} vertices supported",
                u32::MAX
            )));
        }
        let mut degree = vec![0usize; n];
        for &(a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(Error::Parameter(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            if a == b {
                return Err(Error::Parameter(format!("self-loop at vertex {a}")));
            }
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; offsets[n]];
        for &(a, b) in edges {
            neighbors[fill[a as usize]] = b;
            fill[a as usize] += 1;
            neighbors[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        for v in 0..n {
            let list = &mut neighbors[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Parameter(format!("duplicate edge ({v}, {})", w[0])));
            }
        }
        let g = Graph { offsets, neighbors };
        debug_assert!(g.check_invariants().is_ok());
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n as u32)
            .flat_map(|i| (i + 1..n as u32).map(move |j| (i, j)))
            .collect();
        Graph::from_edges(n, &edges).expect("complete graph is simple")
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle graph needs n >= 3");
        let edges: Vec<_> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Graph::from_edges(n, &edges).expect("cycle graph is simple")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("Petersen graph is simple")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n()).flat_map(move |v| {
            self.neighbors(v)
                .iter()
                .filter(move |&&w| w as usize > v)
                .map(move |&w| (v as u32, w))
        })
    }

    /// Returns a copy with one more edge. Fails if the edge exists or is a loop.
    pub fn with_edge(&self, a: u32, b: u32) -> Result<Self> {
        let mut edges: Vec<_> = self.edges().collect();
        edges.push((a, b));
        Graph::from_edges(self.n(), &edges)
    }

    /// Vertices relabeled so that `new_label[v]` replaces `v`.
    pub fn relabeled(&self, new_label: &[u32]) -> Self {
        let edges: Vec<_> = self
            .edges()
            .map(|(a, b)| (new_label[a as usize], new_label[b as usize]))
            .collect();
        Graph::from_edges(self.n(), &edges).expect("relabeling preserves simplicity")
    }

    pub fn check_invariants(&self) -> Result<()> {
        for v in 0..self.n() {
            let list = self.neighbors(v);
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::Domain(format!(
                        "neighbor list of {v} not strictly sorted"
                    )));
                }
            }
            for &w in list {
                if w as usize == v {
                    return Err(Error::Domain(format!("self-loop at {v}")));
                }
                if !self.has_edge(w as usize, v) {
                    return Err(Error::Domain(format!("edge ({v}, {w}) not symmetric")));
                }
            }
        }
        Ok(())
    }
}

/// A sampled graph with the weights and seeds that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSample {
    pub graph: Graph,
    pub weights: WeightVector,
    pub lineage: SeedLineage,
    pub tau: f64,
    pub kernel: Kernel,
}

impl AsRef<Graph> for Graph {
    fn as_ref(&self) -> &Graph {
        self
    }
}

impl AsRef<Graph> for GraphSample {
    fn as_ref(&self) -> &Graph {
        &self.graph
    }
}

#[derive(Serialize, Deserialize)]
struct GraphSampleJson {
    n: usize,
    #[serde(default)]
    tau: Option<f64>,
    #[serde(default)]
    kernel: Option<Kernel>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    replication: Option<u64>,
    #[serde(default)]
    weights: Vec<f64>,
    edges: Vec<[u32; 2]>,
}

impl GraphSample {
    pub fn to_json(&self) -> Result<String> {
        let dto = GraphSampleJson {
            n: self.graph.n(),
            tau: Some(self.tau),
            kernel: Some(self.kernel),
            seed: Some(self.lineage.seed),
            replication: Some(self.lineage.replication),
            weights: self.weights.weights.clone(),
            edges: self.graph.edges().map(|(a, b)| [a, b]).collect(),
        };
        Ok(serde_json::to_string(&dto)?)
    }

    /// Parses the JSON form. Only `n` and `edges` are mandatory so that hand-written
    /// graphs can be loaded; missing weights become unit weights.
    pub fn from_json(s: &str) -> Result<Self> {
        let dto: GraphSampleJson = serde_json::from_str(s)?;
        let edges: Vec<_> = dto.edges.iter().map(|e| (e[0], e[1])).collect();
        let graph = Graph::from_edges(dto.n, &edges)?;
        let tau = dto.tau.unwrap_or(2.5);
        let tau_v = super::tau::Tau::new(tau)?;
        let weights = if dto.weights.is_empty() {
            WeightVector::unit(dto.n, tau_v)
        } else if dto.weights.len() == dto.n {
            WeightVector {
                weights: dto.weights,
                mu: tau_v.mean_weight(),
            }
        } else {
            return Err(Error::Parameter(format!(
                "weights has length {} but n = {}",
                dto.weights.len(),
                dto.n
            )));
        };
        Ok(GraphSample {
            graph,
            weights,
            lineage: SeedLineage::new(dto.seed.unwrap_or(0), dto.replication.unwrap_or(0)),
            tau,
            kernel: dto.kernel.unwrap_or(Kernel::MinOne),
        })
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Edge probability `f(h_i h_j / (n mu))` for an explicit mean `mu`.
#[inline]
pub fn edge_probability(h_i: f64, h_j: f64, n: usize, mu: f64, kernel: Kernel) -> f64 {
    kernel.eval(h_i * h_j / (n as f64 * mu))
}

/// Draws the edges of one replication given the weights.
pub fn sample_graph(
    params: &ModelParams,
    weights: &WeightVector,
    replication: u64,
) -> Result<GraphSample> {
    params.validate()?;
    let n = params.n;
    if weights.len() != n {
        return Err(Error::Parameter(format!(
            "weight vector has length {} but n = {n}",
            weights.len()
        )));
    }
    let lineage = SeedLineage::new(params.seed, replication);
    let mut rng = lineage.rng(StreamPurpose::Edges);
    let w = &weights.weights;
    let scale = 1.0 / (n as f64 * weights.mu);
    let f = params.kernel;
    let mut edges = Vec::new();
    match params.sampler {
        EdgeSampler::Pairwise => {
            for i in 0..n {
                for j in i + 1..n {
                    let p = f.eval(w[i] * w[j] * scale);
                    if rng.random::<f64>() < p {
                        edges.push((i as u32, j as u32));
                    }
                }
            }
        }
        EdgeSampler::Skip => {
            let mut order: Vec<u32> = (0..n as u32).collect();
            order.sort_by(|&a, &b| w[b as usize].total_cmp(&w[a as usize]).then(a.cmp(&b)));
            let sorted: Vec<f64> = order.iter().map(|&v| w[v as usize]).collect();
            for u in 0..n.saturating_sub(1) {
                let hu = sorted[u] * scale;
                let mut v = u + 1;
                let mut p = f.eval(hu * sorted[v]);
                while v < n && p > 0.0 {
                    if p < 1.0 {
                        let r = 1.0 - rng.random::<f64>();
                        let skip = (r.ln() / (-p).ln_1p()).floor();
                        if skip >= (n - v) as f64 {
                            break;
                        }
                        v += skip as usize;
                    }
                    let q = f.eval(hu * sorted[v]);
                    if rng.random::<f64>() * p < q {
                        let (a, b) = (order[u], order[v]);
                        edges.push((a.min(b), a.max(b)));
                    }
                    p = q;
                    v += 1;
                }
            }
            edges.sort_unstable();
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    Ok(GraphSample {
        graph,
        weights: weights.clone(),
        lineage,
        tau: params.tau.value(),
        kernel: params.kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample_weights, Tau};

    #[test]
    fn constructors() {
        let k5 = Graph::complete(5);
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(Graph::cycle(7).edge_count(), 7);
        let p = Graph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn saturated_weights_give_complete_graph() {
        let params = ModelParams::new(12, 2.5, Kernel::MinOne, 3).unwrap();
        let w = WeightVector {
            weights: vec![1e3; 12],
            mu: 3.0,
        };
        for sampler in [EdgeSampler::Pairwise, EdgeSampler::Skip] {
            let g = sample_graph(&params.clone().with_sampler(sampler), &w, 0).unwrap();
            assert_eq!(g.graph, Graph::complete(12));
        }
    }

    #[test]
    fn smallest_probability_positive() {
        for k in Kernel::ALL {
            assert!(edge_probability(1.0, 1.0, 100_000, 3.0, k) > 0.0);
        }
    }

    #[test]
    fn reproducible_samples() {
        let params = ModelParams::new(500, 2.5, Kernel::MinOne, 42).unwrap();
        let w = sample_weights(&params, 1).unwrap();
        let a = sample_graph(&params, &w, 1).unwrap();
        let b = sample_graph(&params, &w, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        a.graph.check_invariants().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let params = ModelParams::new(60, 2.3, Kernel::Ratio, 9).unwrap();
        let w = sample_weights(&params, 2).unwrap();
        let g = sample_graph(&params, &w, 2).unwrap();
        let js = g.to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        for key in [
            "n",
            "tau",
            "kernel",
            "seed",
            "replication",
            "weights",
            "edges",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        let back = GraphSample::from_json(&js).unwrap();
        assert_eq!(back.graph, g.graph);
        assert_eq!(back.weights.weights, g.weights.weights);
        assert_eq!(back.lineage, g.lineage);
        assert_eq!(back.kernel, Kernel::Ratio);
    }

    #[test]
    fn edge_count_matches_expectation_both_samplers() {
        // fixed weights, 1000 replications: mean edge count within 3 sigma of sum p_ij
        let n = 200;
        for sampler in [EdgeSampler::Pairwise, EdgeSampler::Skip] {
            let params = ModelParams::new(n, 2.5, Kernel::MinOne, 77)
                .unwrap()
                .with_sampler(sampler);
            let w = sample_weights(&params, 0).unwrap();
            let tau = Tau::new(2.5).unwrap();
            let pm = crate::model::probability_matrix(&w, n, tau, Kernel::MinOne).unwrap();
            let (mut mean_p, mut var_p) = (0.0, 0.0);
            for i in 0..n {
                for j in i + 1..n {
                    let p = pm.get(i, j);
                    mean_p += p;
                    var_p += p * (1.0 - p);
                }
            }
            let reps = 1000;
            let total: usize = (0..reps)
                .map(|r| sample_graph(&params, &w, r).unwrap().graph.edge_count())
                .sum();
            let mean = total as f64 / reps as f64;
            let sigma = (var_p / reps as f64).sqrt();
            assert!(
                (mean - mean_p).abs() <= 3.0 * sigma,
                "{sampler:?}: mean {mean}, expected {mean_p} +- {sigma}"
            );
        }
    }
}
