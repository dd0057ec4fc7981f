//! Plan-file driven experiment sweeps: sample → synthesize → play → report.
//!
//! A campaign runs a grid of model/strategy configurations, one CSV row per
//! (grid point, trial), and is deterministic end to end: replaying the same
//! plan yields byte-identical CSV regardless of thread count.
//!
//! # Plan file grammar
//!
//! Flat, line-oriented `key = value` pairs; blank lines and lines starting
//! with `#` are ignored. Keys:
//!
//! ```text
//! seed = <u64>                     master seed (default 0)
//! output = <path>                  suggested CSV path (the caller writes it)
//! threshold.success_rate = <f64>   per-point gate on successes/trials
//! threshold.bound_rate  = <f64>    per-point gate on bound_ok among successes
//! threshold.capture_rate = <f64>   per-point gate on capture_ok among successes
//! point.<i>.n = <usize>            vertices (points must be numbered 0,1,2,…)
//! point.<i>.k = <usize>            uniformity, XOR:
//! point.<i>.beta = <f64>           k = max(2, round(n^beta))
//! point.<i>.p = <f64>              edge probability, XOR:
//! point.<i>.alpha = <f64>          d̂ = n^alpha, XOR:
//! point.<i>.dhat = <f64>           d̂ directly (p = d̂/(k·C(n−1,k−1)))
//! point.<i>.mode = vertex|edge
//! point.<i>.j = <u32>              capture index
//! point.<i>.regime = a|b|c|d       density/bound regime
//! point.<i>.xi = <f64>             expansion constant for q and bound (default 1)
//! point.<i>.trials = <usize>       rows for this point (default 1)
//! point.<i>.connected = true|false resample (≤ 64 tries) until connected
//! ```
//!
//! Thresholds are only ever what the plan states — absent thresholds gate
//! nothing. `connected = true` conditions the sample on connectivity, the
//! desk-scale analogue of the almost-sure hypotheses behind the capture
//! guarantees; the resample attempt index is folded into the seed.
//!
//! # Seed derivation
//!
//! Every random stream is derived by SHA-256:
//! `seed64(plan_seed, point, trial, purpose, attempt)` = the first 8 bytes,
//! little-endian, of `SHA-256("campaign-seed-v1" ‖ plan_seed ‖ point ‖
//! trial ‖ purpose ‖ attempt)` with all integers little-endian fixed-width
//! (u64, u32, u32, u8, u32). Purposes: 0 = graph sampling, 1 = strategy
//! synthesis, 2 = robber play.
//!
//! # Row schema
//!
//! `point,trial,n,k,p,dhat,mode,j,regime,xi,q,seed,edges,connected,success,`
//! `attempts,size,bound,bound_ok,capture_round,capture_ok`
//!
//! `q` is the (clamped) density actually sampled; `seed` the graph seed;
//! `bound` the regime's cop-count bound at the point's `xi` (regime a is
//! indexed one below its claim, matching its statement); `size` the cop
//! count of a successful synthesis (empty on failure); `capture_round` the
//! worst capture round against the greedy, uniform-random, and stay robbers
//! (empty if any escaped); `capture_ok` whether all three were captured by
//! round j (vertex mode) / j+1 (edge mode). `bound_ok` = size ≤ bound, so
//! the flag recomputes from the row's own columns.

use crate::bounds::{regime_bound_value, Regime};
use crate::engine::{play, RobberPolicy};
use crate::generator::{derived_stats, sample_gknp, ModelParams};
use crate::hypergraph::Hypergraph;
use crate::strategy::{
    default_density, strategy_size, synthesize, validate_strategy, Mode, SynthesisConfig,
    SynthesisResult,
};
use crate::{Error, Result};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

/// Seed purpose tag: graph sampling.
pub const PURPOSE_GRAPH: u8 = 0;
/// Seed purpose tag: strategy synthesis.
pub const PURPOSE_SYNTH: u8 = 1;
/// Seed purpose tag: robber play.
pub const PURPOSE_ROBBER: u8 = 2;

/// Maximum resampling attempts under `connected = true`.
const CONNECT_ATTEMPTS: u32 = 64;

/// SHA-256 based seed derivation; see the module docs for the exact
/// byte layout.
pub fn derive_seed(plan_seed: u64, point: u32, trial: u32, purpose: u8, attempt: u32) -> u64 {
    let mut h = Sha256::new();
    h.update(b"campaign-seed-v1");
    h.update(plan_seed.to_le_bytes());
    h.update(point.to_le_bytes());
    h.update(trial.to_le_bytes());
    h.update([purpose]);
    h.update(attempt.to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

/// How a grid point pins the edge probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DegreeSpec {
    /// Edge probability given directly.
    P(f64),
    /// Degree parameter d̂; p = d̂/(k·C(n−1,k−1)).
    DHat(f64),
}

/// One grid point of an experiment plan.
#[derive(Clone, Debug)]
pub struct GridPoint {
    pub n: usize,
    pub k: usize,
    pub degree: DegreeSpec,
    pub mode: Mode,
    pub j: u32,
    pub regime: Regime,
    pub xi: f64,
    pub trials: usize,
    pub require_connected: bool,
}

impl GridPoint {
    fn params(&self, seed: u64) -> Result<ModelParams> {
        match self.degree {
            DegreeSpec::P(p) => ModelParams::new(self.n, self.k, p, seed),
            DegreeSpec::DHat(d) => ModelParams::from_target_degree(self.n, self.k, d, seed),
        }
    }
}

/// Per-metric acceptance cut-offs; `None` gates nothing.
#[derive(Clone, Copy, Debug, Default)]
pub struct Thresholds {
    pub success_rate: Option<f64>,
    pub bound_rate: Option<f64>,
    pub capture_rate: Option<f64>,
}

/// A parsed experiment plan.
#[derive(Clone, Debug)]
pub struct ExperimentPlan {
    pub seed: u64,
    pub output: Option<String>,
    pub points: Vec<GridPoint>,
    pub thresholds: Thresholds,
}

fn parse_num<T: std::str::FromStr>(value: &str, line: usize, what: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse {what} from {value:?}"),
    })
}

/// Accumulates `point.<i>.*` keys before validation.
#[derive(Default, Clone)]
struct RawPoint {
    n: Option<usize>,
    k: Option<usize>,
    beta: Option<f64>,
    p: Option<f64>,
    alpha: Option<f64>,
    dhat: Option<f64>,
    mode: Option<Mode>,
    j: Option<u32>,
    regime: Option<Regime>,
    xi: Option<f64>,
    trials: Option<usize>,
    connected: Option<bool>,
    line: usize,
}

impl ExperimentPlan {
    /// Parses the documented `key = value` grammar.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut seed = 0u64;
        let mut output = None;
        let mut thresholds = Thresholds::default();
        let mut raw: Vec<RawPoint> = Vec::new();
        for (i, raw_line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected key = value, got {line:?}"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "seed" => seed = parse_num(value, lineno, "seed")?,
                "output" => output = Some(value.to_string()),
                "threshold.success_rate" => {
                    thresholds.success_rate = Some(parse_num(value, lineno, "threshold")?)
                }
                "threshold.bound_rate" => {
                    thresholds.bound_rate = Some(parse_num(value, lineno, "threshold")?)
                }
                "threshold.capture_rate" => {
                    thresholds.capture_rate = Some(parse_num(value, lineno, "threshold")?)
                }
                _ => {
                    let Some(rest) = key.strip_prefix("point.") else {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("unknown key {key:?}"),
                        });
                    };
                    let Some((idx, field)) = rest.split_once('.') else {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("point key must look like point.<i>.<field>, got {key:?}"),
                        });
                    };
                    let idx: usize = parse_num(idx, lineno, "point index")?;
                    if idx >= raw.len() {
                        raw.resize(idx + 1, RawPoint::default());
                    }
                    let pt = &mut raw[idx];
                    pt.line = lineno;
                    match field {
                        "n" => pt.n = Some(parse_num(value, lineno, "n")?),
                        "k" => pt.k = Some(parse_num(value, lineno, "k")?),
                        "beta" => pt.beta = Some(parse_num(value, lineno, "beta")?),
                        "p" => pt.p = Some(parse_num(value, lineno, "p")?),
                        "alpha" => pt.alpha = Some(parse_num(value, lineno, "alpha")?),
                        "dhat" => pt.dhat = Some(parse_num(value, lineno, "dhat")?),
                        "mode" => {
                            pt.mode = Some(value.parse().map_err(|e: Error| Error::Parse {
                                line: lineno,
                                msg: e.to_string(),
                            })?)
                        }
                        "j" => pt.j = Some(parse_num(value, lineno, "j")?),
                        "regime" => {
                            pt.regime = Some(value.parse().map_err(|e: Error| Error::Parse {
                                line: lineno,
                                msg: e.to_string(),
                            })?)
                        }
                        "xi" => pt.xi = Some(parse_num(value, lineno, "xi")?),
                        "trials" => pt.trials = Some(parse_num(value, lineno, "trials")?),
                        "connected" => {
                            pt.connected = Some(match value {
                                "true" => true,
                                "false" => false,
                                other => {
                                    return Err(Error::Parse {
                                        line: lineno,
                                        msg: format!("connected must be true or false, got {other:?}"),
                                    })
                                }
                            })
                        }
                        other => {
                            return Err(Error::Parse {
                                line: lineno,
                                msg: format!("unknown point field {other:?}"),
                            })
                        }
                    }
                }
            }
        }

        let mut points = Vec::with_capacity(raw.len());
        for (idx, pt) in raw.into_iter().enumerate() {
            let line = pt.line;
            let fail = |msg: String| Error::Parse { line, msg };
            if pt.line == 0 {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("point indices must be contiguous from 0; point.{idx} is missing"),
                });
            }
            let n = pt.n.ok_or_else(|| fail(format!("point.{idx} lacks n")))?;
            let k = match (pt.k, pt.beta) {
                (Some(k), None) => k,
                (None, Some(beta)) => ((n as f64).powf(beta).round() as usize).max(2),
                (Some(_), Some(_)) => {
                    return Err(fail(format!("point.{idx} sets both k and beta")))
                }
                (None, None) => return Err(fail(format!("point.{idx} lacks k or beta"))),
            };
            let degree = match (pt.p, pt.alpha, pt.dhat) {
                (Some(p), None, None) => DegreeSpec::P(p),
                (None, Some(alpha), None) => DegreeSpec::DHat((n as f64).powf(alpha)),
                (None, None, Some(d)) => DegreeSpec::DHat(d),
                (None, None, None) => {
                    return Err(fail(format!("point.{idx} lacks p, alpha, or dhat")))
                }
                _ => {
                    return Err(fail(format!(
                        "point.{idx} must set exactly one of p, alpha, dhat"
                    )))
                }
            };
            points.push(GridPoint {
                n,
                k,
                degree,
                mode: pt.mode.ok_or_else(|| fail(format!("point.{idx} lacks mode")))?,
                j: pt.j.ok_or_else(|| fail(format!("point.{idx} lacks j")))?,
                regime: pt
                    .regime
                    .ok_or_else(|| fail(format!("point.{idx} lacks regime")))?,
                xi: pt.xi.unwrap_or(1.0),
                trials: pt.trials.unwrap_or(1),
                require_connected: pt.connected.unwrap_or(false),
            });
        }
        Ok(ExperimentPlan {
            seed,
            output,
            points,
            thresholds,
        })
    }
}

/// Reads and parses a plan file.
pub fn plan_from_file(path: &std::path::Path) -> Result<ExperimentPlan> {
    ExperimentPlan::from_text(&std::fs::read_to_string(path)?)
}

/// The cop-count bound of the claim `(regime, j)` at these parameters;
/// regime a's bound is indexed one below its claim.
pub fn claim_bound(n: usize, k: usize, d: f64, xi: f64, j: u32, regime: Regime) -> f64 {
    let theorem_j = if regime == Regime::A { j.saturating_sub(1) } else { j };
    regime_bound_value(n, k, d, xi, theorem_j, regime).1
}

/// One campaign CSV row.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRow {
    pub point: usize,
    pub trial: usize,
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub dhat: f64,
    pub mode: Mode,
    pub j: u32,
    pub regime: Regime,
    pub xi: f64,
    pub q: f64,
    pub seed: u64,
    pub edges: usize,
    pub connected: bool,
    pub success: bool,
    pub attempts: u32,
    pub size: Option<usize>,
    pub bound: f64,
    pub bound_ok: Option<bool>,
    pub capture_round: Option<u32>,
    pub capture_ok: Option<bool>,
}

/// The CSV header shared by every campaign report.
pub const CSV_HEADER: &str = "point,trial,n,k,p,dhat,mode,j,regime,xi,q,seed,edges,\
connected,success,attempts,size,bound,bound_ok,capture_round,capture_ok";

fn opt_num<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn opt_flag(v: &Option<bool>) -> String {
    v.map(|b| if b { "1" } else { "0" }.to_string())
        .unwrap_or_default()
}

impl TrialRow {
    fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{:e},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.point,
            self.trial,
            self.n,
            self.k,
            self.p,
            self.dhat,
            self.mode,
            self.j,
            self.regime,
            self.xi,
            self.q,
            self.seed,
            self.edges,
            self.connected as u8,
            self.success as u8,
            self.attempts,
            opt_num(&self.size),
            self.bound,
            opt_flag(&self.bound_ok),
            opt_num(&self.capture_round),
            opt_flag(&self.capture_ok),
        )
    }
}

/// Per-point aggregates and threshold verdicts.
#[derive(Clone, Debug)]
pub struct PointSummary {
    pub point: usize,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// Fraction of successful rows with size ≤ bound (1.0 when no row
    /// succeeded: an empty conjunction holds).
    pub bound_rate: f64,
    /// Fraction of successful rows whose robbers were all captured on
    /// schedule (1.0 when no row succeeded).
    pub capture_rate: f64,
    pub mean_size: Option<f64>,
    pub max_size: Option<usize>,
}

/// Everything a campaign run produces.
#[derive(Clone, Debug)]
pub struct CampaignReport {
    pub csv: String,
    pub rows: Vec<TrialRow>,
    pub summaries: Vec<PointSummary>,
    /// True iff every stated threshold held at every point.
    pub passed: bool,
}

fn with_context(e: Error, point: usize, trial: usize) -> Error {
    let ctx = format!("grid point {point} trial {trial}");
    match e {
        Error::Domain(m) => Error::Domain(format!("{ctx}: {m}")),
        Error::Format(m) => Error::Format(format!("{ctx}: {m}")),
        Error::Resource(m) => Error::Resource(format!("{ctx}: {m}")),
        Error::Parse { line, msg } => Error::Parse {
            line,
            msg: format!("{ctx}: {msg}"),
        },
        Error::Protocol {
            offender,
            round,
            msg,
        } => Error::Protocol {
            offender,
            round,
            msg: format!("{ctx}: {msg}"),
        },
        Error::Io(e) => Error::Format(format!("{ctx}: io error: {e}")),
    }
}

/// Samples the trial's graph, resampling up to [`CONNECT_ATTEMPTS`] times
/// when the point conditions on connectivity.
fn sample_trial_graph(
    plan_seed: u64,
    point: &GridPoint,
    pi: usize,
    ti: usize,
) -> Result<(Hypergraph, ModelParams)> {
    let attempts = if point.require_connected {
        CONNECT_ATTEMPTS
    } else {
        1
    };
    let mut last = None;
    for a in 0..attempts {
        let seed = derive_seed(plan_seed, pi as u32, ti as u32, PURPOSE_GRAPH, a);
        let params = point.params(seed)?;
        let g = sample_gknp(&params)?;
        if !point.require_connected || g.is_connected() {
            return Ok((g, params));
        }
        last = Some((g, params));
    }
    let _ = last;
    Err(Error::resource(format!(
        "no connected sample in {CONNECT_ATTEMPTS} attempts"
    )))
}

fn run_trial(plan: &ExperimentPlan, pi: usize, ti: usize) -> Result<TrialRow> {
    let point = &plan.points[pi];
    let (g, params) = sample_trial_graph(plan.seed, point, pi, ti)?;
    let stats = derived_stats(&params);
    let density = default_density(
        point.n,
        point.k,
        stats.d_hat,
        point.j,
        point.mode,
        point.regime,
        point.xi,
    )?;
    let mut cfg = SynthesisConfig::new(point.mode, point.j, density.q);
    cfg.max_retries = 20;
    cfg.xi = point.xi;
    let synth_seed = derive_seed(plan.seed, pi as u32, ti as u32, PURPOSE_SYNTH, 0);
    let result = synthesize(&g, &cfg, synth_seed)?;
    let bound = claim_bound(point.n, point.k, stats.d_hat, point.xi, point.j, point.regime);

    let mut row = TrialRow {
        point: pi,
        trial: ti,
        n: point.n,
        k: point.k,
        p: params.p,
        dhat: stats.d_hat,
        mode: point.mode,
        j: point.j,
        regime: point.regime,
        xi: point.xi,
        q: density.q,
        seed: params.seed,
        edges: g.m(),
        connected: g.is_connected(),
        success: false,
        attempts: 0,
        size: None,
        bound,
        bound_ok: None,
        capture_round: None,
        capture_ok: None,
    };

    match result {
        SynthesisResult::Failure(report) => {
            row.attempts = report.attempts;
        }
        SynthesisResult::Success(s) => {
            validate_strategy(&g, &s)?;
            row.success = true;
            row.attempts = s.attempts;
            let size = strategy_size(&s);
            row.size = Some(size);
            row.bound_ok = Some(size as f64 <= bound);
            let schedule = point.j + if point.mode == Mode::Edge { 1 } else { 0 };
            let robber_seed = derive_seed(plan.seed, pi as u32, ti as u32, PURPOSE_ROBBER, 0);
            let mut worst: Option<u32> = Some(0);
            for policy in [
                RobberPolicy::Greedy,
                RobberPolicy::Random { seed: robber_seed },
                RobberPolicy::Stay,
            ] {
                let out = play(&g, &s, &policy, schedule + 2)?;
                worst = match (worst, out.captured_at) {
                    (Some(w), Some(r)) => Some(w.max(r)),
                    _ => None,
                };
            }
            row.capture_round = worst;
            row.capture_ok = Some(worst.is_some_and(|w| w <= schedule));
        }
    }
    Ok(row)
}

/// Runs every (point, trial) job — in parallel on the global thread pool —
/// and assembles the CSV in point-major, trial-minor order.
pub fn run_campaign(plan: &ExperimentPlan) -> Result<CampaignReport> {
    let jobs: Vec<(usize, usize)> = plan
        .points
        .iter()
        .enumerate()
        .flat_map(|(pi, pt)| (0..pt.trials).map(move |ti| (pi, ti)))
        .collect();
    let mut rows: Vec<TrialRow> = jobs
        .into_par_iter()
        .map(|(pi, ti)| run_trial(plan, pi, ti).map_err(|e| with_context(e, pi, ti)))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.point, r.trial));

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.to_csv());
        csv.push('\n');
    }

    let mut summaries = Vec::new();
    for (pi, pt) in plan.points.iter().enumerate() {
        let point_rows: Vec<&TrialRow> = rows.iter().filter(|r| r.point == pi).collect();
        let successes: Vec<&&TrialRow> = point_rows.iter().filter(|r| r.success).collect();
        let rate = |num: usize, den: usize| {
            if den == 0 {
                1.0
            } else {
                num as f64 / den as f64
            }
        };
        let sizes: Vec<usize> = successes.iter().filter_map(|r| r.size).collect();
        summaries.push(PointSummary {
            point: pi,
            trials: pt.trials,
            successes: successes.len(),
            success_rate: rate(successes.len(), point_rows.len()),
            bound_rate: rate(
                successes.iter().filter(|r| r.bound_ok == Some(true)).count(),
                successes.len(),
            ),
            capture_rate: rate(
                successes
                    .iter()
                    .filter(|r| r.capture_ok == Some(true))
                    .count(),
                successes.len(),
            ),
            mean_size: if sizes.is_empty() {
                None
            } else {
                Some(sizes.iter().sum::<usize>() as f64 / sizes.len() as f64)
            },
            max_size: sizes.iter().max().copied(),
        });
    }

    let t = &plan.thresholds;
    let passed = summaries.iter().all(|s| {
        t.success_rate.is_none_or(|x| s.success_rate >= x)
            && t.bound_rate.is_none_or(|x| s.bound_rate >= x)
            && t.capture_rate.is_none_or(|x| s.capture_rate >= x)
    });

    Ok(CampaignReport {
        csv,
        rows,
        summaries,
        passed,
    })
}

/// The header of [`summarize`] output.
pub const SUMMARY_HEADER: &str =
    "point n k mode j trials successes success_rate mean_size max_size bound_rate capture_hist";

/// Aggregates a campaign CSV into a per-point text table: mean/max
/// strategy size over successes, bound-satisfaction rate, and a capture
/// round histogram (`round:count`, `esc` for escapes, `|`-joined).
/// Malformed rows fail with their line number.
pub fn summarize(csv: &str) -> Result<String> {
    let mut lines = csv.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(Error::Parse {
            line: 1,
            msg: "empty report: missing header".into(),
        });
    };
    let columns: Vec<&str> = header.split(',').collect();
    let col = |name: &str| -> Result<usize> {
        columns.iter().position(|c| *c == name).ok_or(Error::Parse {
            line: 1,
            msg: format!("header lacks column {name:?}"),
        })
    };
    let (c_point, c_n, c_k, c_mode, c_j) = (col("point")?, col("n")?, col("k")?, col("mode")?, col("j")?);
    let (c_success, c_size, c_bound_ok, c_round) = (
        col("success")?,
        col("size")?,
        col("bound_ok")?,
        col("capture_round")?,
    );

    struct Acc {
        n: String,
        k: String,
        mode: String,
        j: String,
        trials: usize,
        successes: usize,
        sizes: Vec<usize>,
        bound_ok: usize,
        hist: std::collections::BTreeMap<u32, usize>,
        escapes: usize,
    }
    let mut accs: std::collections::BTreeMap<usize, Acc> = Default::default();

    for (i, line) in lines {
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(Error::Parse {
                line: lineno,
                msg: format!(
                    "row has {} fields, header has {}",
                    fields.len(),
                    columns.len()
                ),
            });
        }
        let point: usize = parse_num(fields[c_point], lineno, "point")?;
        let success: u8 = parse_num(fields[c_success], lineno, "success")?;
        let acc = accs.entry(point).or_insert_with(|| Acc {
            n: fields[c_n].to_string(),
            k: fields[c_k].to_string(),
            mode: fields[c_mode].to_string(),
            j: fields[c_j].to_string(),
            trials: 0,
            successes: 0,
            sizes: Vec::new(),
            bound_ok: 0,
            hist: Default::default(),
            escapes: 0,
        });
        acc.trials += 1;
        if success == 1 {
            acc.successes += 1;
            acc.sizes.push(parse_num(fields[c_size], lineno, "size")?);
            let ok: u8 = parse_num(fields[c_bound_ok], lineno, "bound_ok")?;
            acc.bound_ok += ok as usize;
            if fields[c_round].is_empty() {
                acc.escapes += 1;
            } else {
                let r: u32 = parse_num(fields[c_round], lineno, "capture_round")?;
                *acc.hist.entry(r).or_insert(0) += 1;
            }
        }
    }

    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for (point, acc) in accs {
        let (mean, max, bound_rate) = if acc.sizes.is_empty() {
            ("-".to_string(), "-".to_string(), "-".to_string())
        } else {
            (
                format!(
                    "{:.1}",
                    acc.sizes.iter().sum::<usize>() as f64 / acc.sizes.len() as f64
                ),
                acc.sizes.iter().max().unwrap().to_string(),
                format!("{:.3}", acc.bound_ok as f64 / acc.successes as f64),
            )
        };
        let mut hist: Vec<String> = acc
            .hist
            .iter()
            .map(|(r, c)| format!("{r}:{c}"))
            .collect();
        if acc.escapes > 0 {
            hist.push(format!("esc:{}", acc.escapes));
        }
        let hist = if hist.is_empty() {
            "-".to_string()
        } else {
            hist.join("|")
        };
        out.push_str(&format!(
            "{point} {} {} {} {} {} {} {:.3} {mean} {max} {bound_rate} {hist}\n",
            acc.n,
            acc.k,
            acc.mode,
            acc.j,
            acc.trials,
            acc.successes,
            acc.successes as f64 / acc.trials as f64,
        ));
    }
    Ok(out)
}
