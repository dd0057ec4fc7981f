//! The binomial random k-uniform hypergraph: every k-subset of `0..n` is an
//! edge independently with probability p. Also houses the model's derived
//! statistics and two deterministic constructions relating hypergraph
//! pursuit to the 2-graph game:
//!
//! * **blow-up** — replace each vertex of a 2-graph by a block of `k_half`
//!   fresh vertices and each edge by the union of its two blocks, giving a
//!   `2·k_half`-uniform hypergraph with the same cop number (for connected
//!   inputs with at least one edge);
//! * **clique expansion** — replace every hyperedge by a clique, giving the
//!   2-graph with the same adjacency relation and hence the same game.
//!
//! Randomness comes from the ChaCha8 stream cipher (`rand_chacha`), a named
//! counter-based generator: one 64-bit seed fully determines the sample on
//! every platform. Sampling enumerates and flips all C(n,k) candidate
//! k-sets when there are at most 2²⁶ of them; beyond that it draws the edge
//! count from the exact Binomial(C(n,k), p) law (switching to its Poisson
//! limit only where C(n,k) overflows u64, far past any materializable m)
//! and then draws that many distinct k-sets by rejection. Either way, a
//! sample materializing more than 2²⁶ edges is refused with a resource
//! error rather than exhausting memory.

use crate::hypergraph::{Hypergraph, Vertex};
use crate::numeric::{binom_f64, binom_u128, ln_binom};
use crate::{Error, Result};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Hard cap on enumerated candidates and on materialized edges: 2²⁶.
pub const EDGE_BUDGET: u64 = 1 << 26;

/// Parameters of the binomial model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub n: usize,
    pub k: usize,
    /// Probability that any fixed k-set is an edge.
    pub p: f64,
    pub seed: u64,
}

impl ModelParams {
    pub fn new(n: usize, k: usize, p: f64, seed: u64) -> Result<Self> {
        if k < 2 || k > n {
            return Err(Error::domain(format!(
                "uniformity must satisfy 2 ≤ k ≤ n, got k = {k}, n = {n}"
            )));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("edge probability {p} not in [0, 1]")));
        }
        Ok(ModelParams { n, k, p, seed })
    }

    /// Solves for the probability realizing a target degree parameter
    /// d̂ = p·k·C(n−1, k−1).
    pub fn from_target_degree(n: usize, k: usize, d_hat: f64, seed: u64) -> Result<Self> {
        if k < 2 || k > n {
            return Err(Error::domain(format!(
                "uniformity must satisfy 2 ≤ k ≤ n, got k = {k}, n = {n}"
            )));
        }
        if !d_hat.is_finite() || d_hat < 0.0 {
            return Err(Error::domain(format!("target degree {d_hat} must be ≥ 0")));
        }
        let denom = k as f64 * binom_f64(n as u64 - 1, k as u64 - 1);
        let p = d_hat / denom;
        if p > 1.0 {
            return Err(Error::domain(format!(
                "target degree {d_hat} unattainable: needs p = {p:.6} > 1"
            )));
        }
        ModelParams::new(n, k, p, seed)
    }
}

/// Closed-form statistics of the model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedStats {
    /// Degree parameter d̂ = p·k·C(n−1, k−1): the expected number of
    /// (edge, member) incidences at a fixed vertex.
    pub d_hat: f64,
    /// Expected open neighborhood size of a fixed vertex,
    /// (n−1)·(1 − (1−p)^C(n−2, k−2)).
    pub expected_degree: f64,
    /// Expected number of edges, p·C(n, k).
    pub expected_edge_count: f64,
    /// Concentration half-width parameter √(ln ln n)/ln n; only defined
    /// for n ≥ 16 (where the inner logarithm is positive).
    pub delta: Option<f64>,
}

/// Evaluates the model's closed-form statistics. Binomials are computed
/// exactly in 128-bit arithmetic where they fit and in log space beyond,
/// so no n ≤ 10⁶ input overflows.
pub fn derived_stats(params: &ModelParams) -> DerivedStats {
    let (n, k, p) = (params.n as u64, params.k as u64, params.p);
    let d_hat = p * k as f64 * binom_f64(n - 1, k - 1);
    let c_pair = binom_f64(n - 2, k - 2);
    // (1−p)^C in log space; ln_1p-accurate near p = 0.
    let survive = if p >= 1.0 {
        if c_pair == 0.0 { 1.0 } else { 0.0 }
    } else {
        (c_pair * (-p).ln_1p()).exp()
    };
    let expected_degree = (n as f64 - 1.0) * (1.0 - survive);
    let expected_edge_count = p * binom_f64(n, k);
    let delta = (params.n >= 16).then(|| {
        let ln_n = (params.n as f64).ln();
        ln_n.ln().sqrt() / ln_n
    });
    DerivedStats {
        d_hat,
        expected_degree,
        expected_edge_count,
        delta,
    }
}

/// Draws one sample of the model. Deterministic in `params` (seed
/// included): equal parameters give bit-identical edge lists.
pub fn sample_gknp(params: &ModelParams) -> Result<Hypergraph> {
    let (n, k, p) = (params.n, params.k, params.p);
    ModelParams::new(n, k, p, params.seed)?; // re-validate
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    // None = overflows u128 (certainly beyond every budget below)
    let total = binom_u128(n as u64, k as u64);

    let edges: Vec<Vec<Vertex>> = if total.is_some_and(|t| t <= EDGE_BUDGET as u128) {
        // Enumerate every candidate k-set in lexicographic order and flip.
        let mut edges = Vec::new();
        let mut cur: Vec<Vertex> = (0..k as Vertex).collect();
        'all: loop {
            if rng.gen::<f64>() < p {
                edges.push(cur.clone());
            }
            // advance to the next k-combination of 0..n
            for i in (0..k).rev() {
                if cur[i] < (n - k + i) as Vertex {
                    cur[i] += 1;
                    for j in i + 1..k {
                        cur[j] = cur[j - 1] + 1;
                    }
                    continue 'all;
                }
            }
            break; // highest combination processed
        }
        edges
    } else {
        // Draw the edge count from its exact law, then the edges.
        let m = draw_edge_count(n as u64, k as u64, total, p, &mut rng)?;
        if m > EDGE_BUDGET {
            return Err(Error::resource(format!(
                "sample has {m} edges, over the 2^26 = {EDGE_BUDGET} edge budget"
            )));
        }
        let mut chosen = std::collections::HashSet::with_capacity(m as usize);
        let mut edges = Vec::with_capacity(m as usize);
        while (edges.len() as u64) < m {
            let mut pick: Vec<Vertex> =
                rand::seq::index::sample(&mut rng, n, k).iter().map(|v| v as Vertex).collect();
            pick.sort_unstable();
            if chosen.insert(pick.clone()) {
                edges.push(pick);
            }
        }
        edges
    };
    finalize(n, k, edges)
}

fn finalize(n: usize, k: usize, edges: Vec<Vec<Vertex>>) -> Result<Hypergraph> {
    if edges.len() as u64 > EDGE_BUDGET {
        return Err(Error::resource(format!(
            "sample has {} edges, over the 2^26 = {EDGE_BUDGET} edge budget",
            edges.len()
        )));
    }
    Hypergraph::new(n, k, edges)
}

/// Edge count distribution: Binomial(C(n,k), p) exactly while the candidate
/// count fits u64; beyond that the Poisson(p·C(n,k)) limit, with the rate
/// computed in log space (the Binomial–Poisson total-variation distance is
/// at most λ·p, far below f64 resolution at any p small enough for the
/// count to be materializable at that scale).
fn draw_edge_count(
    n: u64,
    k: u64,
    total: Option<u128>,
    p: f64,
    rng: &mut ChaCha8Rng,
) -> Result<u64> {
    if p == 0.0 {
        return Ok(0);
    }
    if let Some(t64) = total.and_then(|t| u64::try_from(t).ok()) {
        if p == 1.0 {
            return Ok(t64);
        }
        let bin = rand_distr::Binomial::new(t64, p)
            .map_err(|e| Error::domain(format!("binomial draw: {e}")))?;
        Ok(bin.sample(rng))
    } else {
        let lambda = (ln_binom(n, k) + p.ln()).exp();
        if !lambda.is_finite() || lambda > 2.0 * EDGE_BUDGET as f64 {
            return Err(Error::resource(format!(
                "expected edge count {lambda:e} far exceeds the 2^26 = {EDGE_BUDGET} edge budget"
            )));
        }
        let poi = rand_distr::Poisson::new(lambda)
            .map_err(|e| Error::domain(format!("poisson draw: {e}")))?;
        Ok(poi.sample(rng) as u64)
    }
}

/// A blown-up 2-graph: the hypergraph plus the contiguous id block of each
/// original vertex (`blocks[v] = v·k_half .. (v+1)·k_half`).
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub hypergraph: Hypergraph,
    pub blocks: Vec<std::ops::Range<Vertex>>,
}

/// Replaces each vertex of a 2-graph by a block of `k_half` fresh vertices
/// and each edge {u, v} by the 2·k_half-set block(u) ∪ block(v).
pub fn blow_up(g2: &Hypergraph, k_half: usize) -> Result<BlowUp> {
    if g2.k() != 2 {
        return Err(Error::domain(format!(
            "blow-up input must be 2-uniform, got k = {}",
            g2.k()
        )));
    }
    if k_half < 1 {
        return Err(Error::domain("block size k_half must be ≥ 1"));
    }
    let n = g2.n() * k_half;
    let block = |v: Vertex| (v * k_half as Vertex)..((v + 1) * k_half as Vertex);
    let edges = g2
        .edges()
        .map(|(_, e)| block(e[0]).chain(block(e[1])).collect())
        .collect();
    Ok(BlowUp {
        hypergraph: Hypergraph::new(n, 2 * k_half, edges)?,
        blocks: (0..g2.n() as Vertex).map(block).collect(),
    })
}

/// The 2-graph on the same vertex set whose edges are all pairs that
/// co-occur in some hyperedge. Two vertices are adjacent here exactly when
/// their hypergraph distance is 1, so the pursuit game is unchanged.
pub fn clique_expansion(g: &Hypergraph) -> Result<Hypergraph> {
    let mut pairs = Vec::new();
    for (_, e) in g.edges() {
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                pairs.push(vec![e[i], e[j]]);
            }
        }
    }
    Hypergraph::new(g.n(), 2, pairs)
}
