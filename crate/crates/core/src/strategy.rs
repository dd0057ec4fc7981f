//! Cop-set synthesis: sample a random cop placement at a regime-specific
//! density, then verify Hall's condition for every possible robber start.
//!
//! The surrounding construction places cops on a random vertex set (each
//! vertex independently with probability q). For a robber starting at v the
//! cops must cover a *target family*:
//!
//! * vertex mode: the targets are the vertices of N_V^{j−1}(v), each needing
//!   its own cop within distance j (the cop reaches the target vertex by
//!   move j, one move before the robber can leave the ball);
//! * edge mode: the targets are the edges of N_E^{j}(v), each needing its
//!   own cop within distance j of the edge (the cop stands inside the edge
//!   by move j and captures on move j+1).
//!
//! A cover that assigns distinct cops to all targets is an injection, i.e. a
//! matching in the bipartite graph between targets and cop starts that
//! saturates the target side; Hall's theorem governs when one exists. The
//! synthesis retries with fresh samples (the probabilistic argument only
//! succeeds with constant probability) and, when every retry fails, reports
//! per-start deficiencies with explicit Hall-violating target sets.

use crate::bits::Bits;
use crate::bounds::{regime_interval, Regime};
use crate::expansion::DegreeBaseline;
use crate::hypergraph::{DistanceTable, Hypergraph, Vertex};
use crate::matching::{maximum_matching, Matching};
use crate::{Error, Result};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub use crate::matching::{hall_violating_set, has_augmenting_path};

/// Which side of the game tree the cop set surrounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Surround N_V^{j−1}(v): one cop per vertex of the ball.
    Vertex,
    /// Surround N_E^{j}(v): one cop per edge of the ball.
    Edge,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Vertex => "vertex",
            Mode::Edge => "edge",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(Mode::Vertex),
            "edge" => Ok(Mode::Edge),
            _ => Err(Error::domain(format!(
                "unknown mode {s:?}; expected \"vertex\" or \"edge\""
            ))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Placement density produced by [`default_density`].
#[derive(Clone, Copy, Debug)]
pub struct Density {
    pub q: f64,
    /// True when the formula exceeded 1 and was clamped.
    pub clamped: bool,
    /// True when d lies inside the regime's admissible interval (advisory:
    /// off-interval parameters are allowed for experimentation).
    pub in_interval: bool,
}

/// The regime-specific cop-placement density:
///
/// * (d) vertex mode: q = 10·ξ⁻¹·d⁻ʲ·ln n
/// * (a) vertex mode: q = 10·ξ⁻²·(d^{j−1}/n)·⌈(n/d^{2j−1})·ln n⌉
/// * (b) edge mode:   q = 10·ln n/(ξ·k·dʲ)
/// * (c) edge mode:   q = 10·ξ⁻²·(dʲ/(nk))·⌈(n/d^{2j})·ln n⌉²
///
/// Regimes (a)/(d) demand vertex mode and (b)/(c) edge mode; j here is the
/// surrounding depth of the construction (for regime (a) that is one more
/// than the exponent regime the bound is quoted at).
pub fn default_density(
    n: usize,
    k: usize,
    d: f64,
    j: u32,
    mode: Mode,
    regime: Regime,
    xi: f64,
) -> Result<Density> {
    if n < 2 || k < 2 {
        return Err(Error::domain("need n ≥ 2 and k ≥ 2"));
    }
    if !(d > 0.0) {
        return Err(Error::domain(format!("degree must be > 0, got {d}")));
    }
    if j == 0 {
        return Err(Error::domain("surrounding depth j must be ≥ 1"));
    }
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::domain(format!(
            "expansion constant must lie in (0, 1], got {xi}"
        )));
    }
    let wants = match regime {
        Regime::A | Regime::D => Mode::Vertex,
        Regime::B | Regime::C => Mode::Edge,
    };
    if mode != wants {
        return Err(Error::domain(format!(
            "regime ({}) synthesizes in {} mode, not {} mode",
            regime.letter(),
            wants,
            mode
        )));
    }
    let ln_n = (n as f64).ln();
    let nf = n as f64;
    let kf = k as f64;
    let raw = match regime {
        Regime::D => 10.0 / xi * d.powi(-(j as i32)) * ln_n,
        Regime::A => {
            let lambda = (nf / d.powi(2 * j as i32 - 1) * ln_n).ceil().max(1.0);
            10.0 / (xi * xi) * d.powi(j as i32 - 1) / nf * lambda
        }
        Regime::B => 10.0 * ln_n / (xi * kf * d.powi(j as i32)),
        Regime::C => {
            let lambda = (nf / d.powi(2 * j as i32) * ln_n).ceil().max(1.0);
            10.0 / (xi * xi) * d.powi(j as i32) / (nf * kf) * lambda * lambda
        }
    };
    // Advisory interval check. The construction's depth-j interval for (a)
    // sits one exponent step above the quoted regime interval; (b)/(c)/(d)
    // coincide with theirs.
    let in_interval = match regime {
        Regime::A => {
            if j < 2 {
                false
            } else {
                let (lo, hi, collapsed) = regime_interval(n, k, j - 1, Regime::A);
                !collapsed && lo <= d && d <= hi
            }
        }
        r => {
            let (lo, hi, collapsed) = regime_interval(n, k, j, r);
            !collapsed && lo <= d && d <= hi
        }
    };
    Ok(Density {
        q: raw.min(1.0),
        clamped: raw > 1.0,
        in_interval,
    })
}

/// Configuration for [`synthesize`].
#[derive(Clone, Debug)]
pub struct SynthesisConfig {
    pub mode: Mode,
    /// Surrounding depth (≥ 1). Vertex mode with j = 1 surrounds
    /// N_V^0(v) = {v}: degenerate but legal.
    pub j: u32,
    /// Cop-placement density, 0 < q ≤ 1.
    pub q: f64,
    /// Fresh samples drawn after a failed one (total attempts = 1 + retries).
    pub max_retries: u32,
    /// Which degree the density was derived from (metadata for reports).
    pub degree_baseline: DegreeBaseline,
    /// The ξ used inside q (metadata for reports).
    pub xi: f64,
}

impl SynthesisConfig {
    pub fn new(mode: Mode, j: u32, q: f64) -> Self {
        SynthesisConfig {
            mode,
            j,
            q,
            max_retries: 20,
            degree_baseline: DegreeBaseline::Measured,
            xi: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.j == 0 {
            return Err(Error::domain("surrounding depth j must be ≥ 1"));
        }
        if !(self.q > 0.0 && self.q <= 1.0) {
            return Err(Error::domain(format!(
                "placement density must lie in (0, 1], got {}",
                self.q
            )));
        }
        Ok(())
    }
}

/// One target assignment: for robber start `v`, the cop starting at `cop`
/// covers `target` (a vertex id in vertex mode, an edge id in edge mode)
/// along `path` — a shortest loose-path itinerary from the cop's start to
/// the target vertex (vertex mode) or into the target edge (edge mode).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentLine {
    pub v: Vertex,
    pub target: u32,
    pub cop: Vertex,
    pub path: Vec<Vertex>,
}

/// A synthesized surrounding strategy.
#[derive(Clone, Debug, Default)]
pub struct CopStrategy {
    pub mode_edge: bool,
    pub j: u32,
    pub cop_starts: Vec<Vertex>,
    /// Grouped by robber start v (ascending), one line per target.
    pub assignments: Vec<AssignmentLine>,
    /// Sample attempts consumed (1 = first sample worked).
    pub attempts: u32,
    /// Whether the input hypergraph was connected (advisory).
    pub connected: bool,
}

impl CopStrategy {
    pub fn mode(&self) -> Mode {
        if self.mode_edge {
            Mode::Edge
        } else {
            Mode::Vertex
        }
    }
}

/// Number of cops the strategy places.
pub fn strategy_size(s: &CopStrategy) -> usize {
    s.cop_starts.len()
}

/// Hall failure at one robber start.
#[derive(Clone, Debug)]
pub struct HallFailure {
    pub v: Vertex,
    /// Unmatched targets under a maximum matching.
    pub deficiency: usize,
    /// A target set X with fewer than |X| cops within distance j.
    pub violating_targets: Vec<u32>,
}

/// Returned when every sample failed.
#[derive(Clone, Debug)]
pub struct FailureReport {
    pub attempts: u32,
    /// Cop count of the final sample.
    pub cop_count: usize,
    /// Every deficient robber start of the final sample.
    pub failures: Vec<HallFailure>,
    pub connected: bool,
}

/// Outcome of [`synthesize`].
#[derive(Clone, Debug)]
pub enum SynthesisResult {
    Success(CopStrategy),
    Failure(FailureReport),
}

impl SynthesisResult {
    pub fn strategy(&self) -> Option<&CopStrategy> {
        match self {
            SynthesisResult::Success(s) => Some(s),
            SynthesisResult::Failure(_) => None,
        }
    }
}

/// Target family for robber start v: ball vertices (vertex mode) or ball
/// edges (edge mode).
fn targets_of(g: &Hypergraph, mode: Mode, j: u32, v: Vertex) -> Result<Vec<u32>> {
    match mode {
        Mode::Vertex => g.vertex_neighborhood(&[v], j - 1),
        Mode::Edge => g.edge_neighborhood(&[v], j),
    }
}

/// N_V^j ball per cop, as bitsets (the adjacency oracle of the bipartite
/// Hall checks; the bipartite graph itself is never materialized).
fn cop_balls(g: &Hypergraph, cops: &[Vertex], j: u32) -> Vec<Bits> {
    cops.iter()
        .map(|&c| {
            let scan = g.bfs(&[c], j).expect("cop start in range");
            let mut b = Bits::new(g.n());
            for (w, &dw) in scan.dist.iter().enumerate() {
                if dw <= j {
                    b.set(w);
                }
            }
            b
        })
        .collect()
}

/// True iff target `t` can be served by cop index `c` (distance ≤ j).
fn adjacent(g: &Hypergraph, mode: Mode, balls: &[Bits], t: u32, c: usize) -> bool {
    match mode {
        Mode::Vertex => balls[c].get(t as usize),
        Mode::Edge => g.edge(t).iter().any(|&w| balls[c].get(w as usize)),
    }
}

struct VertexCheck {
    targets: Vec<u32>,
    matching: Matching,
}

/// Maximum matching between v's targets and the cop set.
fn match_vertex(
    g: &Hypergraph,
    mode: Mode,
    j: u32,
    balls: &[Bits],
    n_cops: usize,
    v: Vertex,
) -> Result<VertexCheck> {
    let targets = targets_of(g, mode, j, v)?;
    let matching = maximum_matching(targets.len(), n_cops, |i| {
        let t = targets[i];
        (0..n_cops).filter(move |&c| adjacent(g, mode, balls, t, c))
    });
    Ok(VertexCheck { targets, matching })
}

/// Checks whether `cops` saturates every robber start's target family.
/// `fail_fast` stops at the first deficient start; otherwise all deficient
/// starts are reported with Hall-violating sets.
pub fn verify_cop_set(
    g: &Hypergraph,
    mode: Mode,
    j: u32,
    cops: &[Vertex],
    fail_fast: bool,
) -> Result<Vec<HallFailure>> {
    if j == 0 {
        return Err(Error::domain("surrounding depth j must be ≥ 1"));
    }
    let balls = cop_balls(g, cops, j);
    let mut failures = Vec::new();
    for v in 0..g.n() as Vertex {
        // A target family larger than the cop set can never be saturated;
        // the matching is still computed so the report is exact.
        let check = match_vertex(g, mode, j, &balls, cops.len(), v)?;
        let deficiency = check.matching.deficiency();
        if deficiency > 0 {
            let balls_ref: &[Bits] = &balls;
            let witness = hall_violating_set(&check.matching, |i| {
                let t = check.targets[i];
                (0..cops.len()).filter(move |&c| adjacent(g, mode, balls_ref, t, c))
            })
            .expect("deficient matching has a violating set");
            failures.push(HallFailure {
                v,
                deficiency,
                violating_targets: witness.iter().map(|&i| check.targets[i]).collect(),
            });
            if fail_fast {
                return Ok(failures);
            }
        }
    }
    Ok(failures)
}

/// Builds the full strategy (assignments + itineraries) for a cop set known
/// to saturate every start.
fn build_strategy(
    g: &Hypergraph,
    cfg: &SynthesisConfig,
    cops: Vec<Vertex>,
    attempts: u32,
    connected: bool,
) -> Result<CopStrategy> {
    let balls = cop_balls(g, &cops, cfg.j);
    let mut tables: Vec<Option<DistanceTable>> = vec![None; cops.len()];
    let mut assignments = Vec::new();
    for v in 0..g.n() as Vertex {
        let check = match_vertex(g, cfg.mode, cfg.j, &balls, cops.len(), v)?;
        if check.matching.deficiency() > 0 {
            return Err(Error::domain(
                "internal: cop set no longer saturates a start it passed",
            ));
        }
        for (i, &t) in check.targets.iter().enumerate() {
            let c = check.matching.left_match[i] as usize;
            if tables[c].is_none() {
                tables[c] = Some(g.distances_from(&[cops[c]])?);
            }
            let table = tables[c].as_ref().unwrap();
            // Vertex mode: walk to the target vertex. Edge mode: walk to
            // the member of the target edge nearest the cop.
            let end = match cfg.mode {
                Mode::Vertex => t,
                Mode::Edge => *g
                    .edge(t)
                    .iter()
                    .min_by_key(|&&w| table.dist(w))
                    .expect("edges are nonempty"),
            };
            let path = table
                .path_to(end)
                .expect("matched targets are within distance j");
            assignments.push(AssignmentLine {
                v,
                target: t,
                cop: cops[c],
                path,
            });
        }
    }
    Ok(CopStrategy {
        mode_edge: cfg.mode == Mode::Edge,
        j: cfg.j,
        cop_starts: cops,
        assignments,
        attempts,
        connected,
    })
}

/// Samples cop sets at density q until one saturates every robber start
/// (up to `max_retries` fresh samples), then materializes assignments and
/// shortest-path itineraries. On exhaustion returns the final sample's
/// failure report.
pub fn synthesize(g: &Hypergraph, cfg: &SynthesisConfig, seed: u64) -> Result<SynthesisResult> {
    cfg.validate()?;
    let connected = g.is_connected();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts_max = cfg.max_retries + 1;
    let mut last_failures = Vec::new();
    let mut last_cops = Vec::new();
    for attempt in 1..=attempts_max {
        let cops: Vec<Vertex> =
            (0..g.n() as Vertex).filter(|_| rng.gen::<f64>() < cfg.q).collect();
        let final_attempt = attempt == attempts_max;
        let failures = verify_cop_set(g, cfg.mode, cfg.j, &cops, !final_attempt)?;
        if failures.is_empty() {
            return Ok(SynthesisResult::Success(build_strategy(
                g, cfg, cops, attempt, connected,
            )?));
        }
        last_failures = failures;
        last_cops = cops;
    }
    Ok(SynthesisResult::Failure(FailureReport {
        attempts: attempts_max,
        cop_count: last_cops.len(),
        failures: last_failures,
        connected,
    }))
}

/// Structural audit of a strategy against its hypergraph: every start's
/// target family is covered injectively, every itinerary is a legal move
/// sequence of length ≤ j from the assigned cop's start to its target.
pub fn validate_strategy(g: &Hypergraph, s: &CopStrategy) -> Result<()> {
    let mode = s.mode();
    let fail = |msg: String| Err(Error::domain(msg));
    let cop_set: std::collections::HashSet<Vertex> = s.cop_starts.iter().copied().collect();
    let mut by_v: std::collections::BTreeMap<Vertex, Vec<&AssignmentLine>> =
        std::collections::BTreeMap::new();
    for line in &s.assignments {
        by_v.entry(line.v).or_default().push(line);
    }
    for v in 0..g.n() as Vertex {
        let targets = targets_of(g, mode, s.j, v)?;
        let lines = by_v.remove(&v).unwrap_or_default();
        if lines.len() != targets.len() {
            return fail(format!(
                "start {v}: {} assignment lines for {} targets",
                lines.len(),
                targets.len()
            ));
        }
        let mut covered: Vec<u32> = lines.iter().map(|l| l.target).collect();
        covered.sort_unstable();
        if covered != targets {
            return fail(format!("start {v}: assigned targets differ from the ball"));
        }
        let mut used = std::collections::HashSet::new();
        for line in lines {
            if !cop_set.contains(&line.cop) {
                return fail(format!("start {v}: cop {} is not a cop start", line.cop));
            }
            if !used.insert(line.cop) {
                return fail(format!(
                    "start {v}: cop {} assigned to two targets",
                    line.cop
                ));
            }
            let path = &line.path;
            if let Some(&w) = path.iter().find(|&&w| w as usize >= g.n()) {
                return fail(format!("start {v}: itinerary vertex {w} is out of range"));
            }
            if path.is_empty() || path[0] != line.cop {
                return fail(format!("start {v}: itinerary does not begin at the cop"));
            }
            if path.len() as u32 - 1 > s.j {
                return fail(format!(
                    "start {v}: itinerary takes {} moves, over the {} allowed",
                    path.len() - 1,
                    s.j
                ));
            }
            for w in path.windows(2) {
                let step_ok = w[0] == w[1]
                    || g.incident(w[0])
                        .iter()
                        .any(|&e| g.edge(e).contains(&w[1]));
                if !step_ok {
                    return fail(format!(
                        "start {v}: itinerary step {}→{} crosses no edge",
                        w[0], w[1]
                    ));
                }
            }
            let last = *path.last().unwrap();
            let ends_ok = match mode {
                Mode::Vertex => last == line.target,
                Mode::Edge => g.edge(line.target).contains(&last),
            };
            if !ends_ok {
                return fail(format!("start {v}: itinerary misses its target"));
            }
        }
    }
    if !by_v.is_empty() {
        return fail("assignment lines name an out-of-range start".to_string());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// strategy files

/// Renders a strategy as text: a `mode j` header, the cop starts, then one
/// `v target cop path…` line per assignment.
pub fn strategy_to_text(s: &CopStrategy) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", s.mode(), s.j);
    let starts: Vec<String> = s.cop_starts.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "{}", starts.join(" "));
    for line in &s.assignments {
        let _ = write!(out, "{} {} {}", line.v, line.target, line.cop);
        for p in &line.path {
            let _ = write!(out, " {p}");
        }
        let _ = writeln!(out);
    }
    out
}

/// Parses [`strategy_to_text`] output.
pub fn strategy_from_text(text: &str) -> Result<CopStrategy> {
    let mut lines = text.lines().enumerate();
    let perr = |ln: usize, msg: String| Error::Parse {
        line: ln + 1,
        msg,
    };
    let (ln, header) = lines
        .next()
        .ok_or_else(|| perr(0, "empty strategy file".into()))?;
    let mut it = header.split_whitespace();
    let mode: Mode = it
        .next()
        .ok_or_else(|| perr(ln, "missing mode".into()))?
        .parse()
        .map_err(|e| perr(ln, format!("{e}")))?;
    let j: u32 = it
        .next()
        .ok_or_else(|| perr(ln, "missing depth j".into()))?
        .parse()
        .map_err(|e| perr(ln, format!("bad depth: {e}")))?;
    if it.next().is_some() {
        return Err(perr(ln, "trailing tokens after header".into()));
    }
    let (ln, cops_line) = lines
        .next()
        .ok_or_else(|| perr(1, "missing cop-starts line".into()))?;
    let cop_starts: Vec<Vertex> = cops_line
        .split_whitespace()
        .map(|t| t.parse().map_err(|e| perr(ln, format!("bad cop start: {e}"))))
        .collect::<Result<_>>()?;
    let mut assignments = Vec::new();
    for (ln, raw) in lines {
        if raw.trim().is_empty() {
            continue;
        }
        let nums: Vec<u32> = raw
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| perr(ln, format!("bad token: {e}"))))
            .collect::<Result<_>>()?;
        if nums.len() < 4 {
            return Err(perr(
                ln,
                "assignment line needs v, target, cop and a path".into(),
            ));
        }
        assignments.push(AssignmentLine {
            v: nums[0],
            target: nums[1],
            cop: nums[2],
            path: nums[3..].to_vec(),
        });
    }
    Ok(CopStrategy {
        mode_edge: mode == Mode::Edge,
        j,
        cop_starts,
        assignments,
        attempts: 0,
        connected: true,
    })
}

pub fn write_strategy_file(s: &CopStrategy, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, strategy_to_text(s))?;
    Ok(())
}

pub fn read_strategy_file(path: &std::path::Path) -> Result<CopStrategy> {
    strategy_from_text(&std::fs::read_to_string(path)?)
}
