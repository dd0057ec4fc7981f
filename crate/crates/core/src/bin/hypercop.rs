//! Command-line front end: sampling, bounds, expansion certification,
//! strategy synthesis, game play, exact solving, campaigns, and report
//! summaries.
//!
//! Exit codes: 0 on success, 1 when a stated acceptance threshold fails
//! (campaign thresholds, a failed certification or synthesis, a
//! `--min-pass` miss), 2 on usage or input errors.

use clap::{Args, Parser, Subcommand};
use hypercop::bounds::{classify_regime, meyniel_bound, zigzag_curves, Regime};
use hypercop::campaign::{plan_from_file, run_campaign, summarize};
use hypercop::engine::{play, transcript_to_csv, RobberPolicy};
use hypercop::expansion::{
    empirical_lemma_check, measure_expansion, DegreeBaseline, LemmaTag,
};
use hypercop::generator::{derived_stats, sample_gknp, ModelParams};
use hypercop::hypergraph::Hypergraph;
use hypercop::oracle::{cop_number_within, state_count, DEFAULT_STATE_BUDGET};
use hypercop::strategy::{
    default_density, read_strategy_file, strategy_size, strategy_to_text, synthesize,
    validate_strategy, Mode, SynthesisConfig, SynthesisResult,
};
use hypercop::{Error, Result};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hypercop",
    version,
    about = "Cops-and-robber pursuit on k-uniform hypergraphs: \
             random models, cop-strategy synthesis, game play, exact \
             solving, bounds, and experiment campaigns"
)]
struct Cli {
    /// Seed for any randomized subcommand (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel campaign execution (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the primary artifact here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample one hypergraph from the binomial model and emit its text form.
    Gen(GenArgs),
    /// Cop-count bounds: degree-regime classification and zigzag curves.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Expansion certification and concentration spot-checks.
    #[command(subcommand)]
    Expansion(ExpansionCmd),
    /// Cop-strategy synthesis.
    #[command(subcommand)]
    Strategy(StrategyCmd),
    /// Play out a strategy against a robber policy.
    #[command(subcommand)]
    Engine(EngineCmd),
    /// Exact small-instance solving.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Run an experiment plan file; emits one CSV row per (point, trial).
    Campaign(CampaignArgs),
    /// Aggregate a campaign CSV into a per-point table.
    Summarize(SummarizeArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Edge probability (exclusive with --dhat).
    #[arg(long)]
    p: Option<f64>,
    /// Degree parameter; solves p = dhat/(k·C(n−1,k−1)).
    #[arg(long)]
    dhat: Option<f64>,
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Classify degree d into its regimes; CSV (regime, j, lambda, bound, collapsed).
    Regime {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: f64,
        /// Expansion constant (default 1).
        #[arg(long)]
        xi: Option<f64>,
    },
    /// Strategy-size exponent curves; CSV (alpha, f_vertex, f_edge, f).
    Zigzag {
        #[arg(long)]
        beta: f64,
        #[arg(long, value_name = "A")]
        alpha_min: f64,
        #[arg(long, value_name = "A")]
        alpha_max: f64,
        #[arg(long)]
        step: f64,
    },
}

#[derive(Subcommand)]
enum ExpansionCmd {
    /// Measure the expansion constants of a hypergraph and certify a target ξ.
    Certify {
        /// Hypergraph file (text format: `n k m` header, one edge per line).
        #[arg(long)]
        input: PathBuf,
        /// ξ to certify; exit 1 if the measured constant falls below it.
        #[arg(long)]
        xi: f64,
        /// Sampled subsets per size class (default 2000).
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        /// Degree parameter override (default: measured average degree).
        #[arg(long)]
        d: Option<f64>,
    },
    /// Monte Carlo concentration checks on the binomial model.
    Lemma {
        /// Property tag: edge-count-small, edge-count-floor,
        /// edge-union-small, edge-union-floor, vertex-count.
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        dhat: Option<f64>,
        /// Random sets tested per trial (default 200).
        #[arg(long, default_value_t = 200)]
        sets: usize,
        /// Union-bound shrink factor in (0, 1/2] (default 1/2).
        #[arg(long)]
        epsilon: Option<f64>,
        /// Exit 1 if pass_fraction lands below this.
        #[arg(long)]
        min_pass: Option<f64>,
    },
}

#[derive(Subcommand)]
enum StrategyCmd {
    /// Sample cop sets at a density until one surrounds every robber start.
    Synth {
        #[arg(long)]
        input: PathBuf,
        /// vertex | edge
        #[arg(long)]
        mode: String,
        /// Surrounding depth (capture by round j, edge mode j+1).
        #[arg(long)]
        j: u32,
        /// Cop density (exclusive with --regime).
        #[arg(long)]
        q: Option<f64>,
        /// Derive the density from this regime: a | b | c | d.
        #[arg(long)]
        regime: Option<String>,
        /// Expansion constant for the density formulas (default 1).
        #[arg(long, default_value_t = 1.0)]
        xi: f64,
        /// Fresh samples after the first (default 20).
        #[arg(long, default_value_t = 20)]
        retries: u32,
        /// Degree parameter override (default: measured average degree).
        #[arg(long)]
        d: Option<f64>,
    },
}

#[derive(Subcommand)]
enum EngineCmd {
    /// Play a strategy against a robber; emits the transcript CSV.
    Play {
        #[arg(long)]
        input: PathBuf,
        /// Strategy file from `strategy synth`.
        #[arg(long)]
        strategy: PathBuf,
        /// greedy | random | stay | script
        #[arg(long)]
        robber: String,
        /// Robber script file (whitespace-separated vertex ids;
        /// first is the placement), for --robber script.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Round horizon (default: the strategy's capture schedule + 2).
        #[arg(long)]
        max_rounds: Option<u32>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exact cop number by backward induction over multiset positions.
    Copnum {
        #[arg(long)]
        input: PathBuf,
        /// Try cop counts 1..=M only; prints ">M" if all fail.
        #[arg(long)]
        max_m: Option<usize>,
        /// State budget (positions); default 100000000.
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args)]
struct CampaignArgs {
    /// Plan file (key = value grammar; see the library docs).
    #[arg(long)]
    plan: PathBuf,
}

#[derive(Args)]
struct SummarizeArgs {
    /// Campaign CSV to aggregate.
    #[arg(long)]
    input: PathBuf,
}

/// Whether every stated threshold held; `main` turns `Failed` into exit 1.
enum Outcome {
    Passed,
    Failed,
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn model_params(n: usize, k: usize, p: Option<f64>, dhat: Option<f64>, seed: u64) -> Result<ModelParams> {
    match (p, dhat) {
        (Some(p), None) => ModelParams::new(n, k, p, seed),
        (None, Some(d)) => ModelParams::from_target_degree(n, k, d, seed),
        _ => Err(Error::Domain("give exactly one of --p and --dhat".into())),
    }
}

fn read_graph(path: &Path) -> Result<Hypergraph> {
    Hypergraph::read_file(path).map_err(|e| match e {
        Error::Io(io) => Error::Format(format!("cannot read {}: {io}", path.display())),
        other => other,
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed.unwrap_or(0);
    match &cli.cmd {
        Cmd::Gen(a) => {
            let params = model_params(a.n, a.k, a.p, a.dhat, seed)?;
            let g = sample_gknp(&params)?;
            let stats = derived_stats(&params);
            emit(&cli.output, &g.to_text())?;
            eprintln!(
                "sampled n={} k={} m={} (p={:e}, dhat={:.4}, connected={})",
                g.n(),
                g.k(),
                g.m(),
                params.p,
                stats.d_hat,
                g.is_connected()
            );
            Ok(Outcome::Passed)
        }
        Cmd::Bounds(BoundsCmd::Regime { n, k, d, xi }) => {
            let xi = xi.unwrap_or(1.0);
            let rows = classify_regime(*n, *k, *d, xi)?;
            let mut out = String::from("regime,j,lambda,bound,collapsed\n");
            for b in &rows {
                let bound = b.bound.map(|v| v.to_string()).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    b.regime.letter(),
                    b.j,
                    b.lambda,
                    bound,
                    b.collapsed as u8
                )
                .expect("string write");
            }
            emit(&cli.output, &out)?;
            eprintln!(
                "{} regime entries; square-root benchmark {:.4}",
                rows.len(),
                meyniel_bound(*n, *k, xi)?
            );
            Ok(Outcome::Passed)
        }
        Cmd::Bounds(BoundsCmd::Zigzag {
            beta,
            alpha_min,
            alpha_max,
            step,
        }) => {
            if !(*step > 0.0) {
                return Err(Error::Domain(format!("step must be > 0, got {step}")));
            }
            if alpha_max < alpha_min {
                return Err(Error::Domain("alpha-max must be ≥ alpha-min".into()));
            }
            let count = ((alpha_max - alpha_min) / step + 1e-9).floor() as usize + 1;
            let alphas: Vec<f64> = (0..count).map(|i| alpha_min + i as f64 * step).collect();
            let points = zigzag_curves(*beta, &alphas)?;
            let mut out = String::from("alpha,f_vertex,f_edge,f\n");
            for p in &points {
                writeln!(out, "{},{},{},{}", p.alpha, p.f_vertex, p.f_edge, p.f)
                    .expect("string write");
            }
            emit(&cli.output, &out)?;
            Ok(Outcome::Passed)
        }
        Cmd::Expansion(ExpansionCmd::Certify {
            input,
            xi,
            budget,
            d,
        }) => {
            let g = read_graph(input)?;
            let (baseline, degree) = match d {
                Some(d) => (DegreeBaseline::Model, *d),
                None => (DegreeBaseline::Measured, g.average_vertex_degree()),
            };
            let report = measure_expansion(&g, baseline, degree, *budget, seed)?;
            let pass = report.xi() >= *xi;
            let mut out = String::from("property,parameter,value\n");
            for (name, max_xi, tested) in [
                ("a1", report.xi_a1, report.tested_a1),
                ("a2", report.xi_a2, report.tested_a2),
                ("a3", report.xi_a3, report.tested_a3),
            ] {
                writeln!(out, "{name},max_xi,{max_xi}").expect("string write");
                writeln!(out, "{name},tested,{tested}").expect("string write");
            }
            writeln!(out, "overall,max_xi,{}", report.xi()).expect("string write");
            writeln!(out, "overall,degree,{degree}").expect("string write");
            writeln!(out, "overall,max_radius,{}", report.max_radius).expect("string write");
            writeln!(out, "overall,requested_xi,{xi}").expect("string write");
            writeln!(out, "overall,pass,{}", pass as u8).expect("string write");
            emit(&cli.output, &out)?;
            eprintln!(
                "measured xi {:.4} (a1 {:.4}, a2 {:.4}, a3 {:.4}) over {} tests, \
                 radius ≤ {}, degree {degree:.4} ({baseline}): {} at xi = {xi}",
                report.xi(),
                report.xi_a1,
                report.xi_a2,
                report.xi_a3,
                report.tested_a1 + report.tested_a2 + report.tested_a3,
                report.max_radius,
                if pass { "PASS" } else { "FAIL" },
            );
            Ok(if pass { Outcome::Passed } else { Outcome::Failed })
        }
        Cmd::Expansion(ExpansionCmd::Lemma {
            which,
            trials,
            n,
            k,
            p,
            dhat,
            sets,
            epsilon,
            min_pass,
        }) => {
            let tag: LemmaTag = which.parse()?;
            let params = model_params(*n, *k, *p, *dhat, seed)?;
            let r = empirical_lemma_check(&params, tag, *trials, *sets, *epsilon)?;
            let mut out = String::from("property,parameter,value\n");
            let name = tag.name();
            writeln!(out, "{name},n,{}", r.n).expect("string write");
            writeln!(out, "{name},k,{}", r.k).expect("string write");
            writeln!(out, "{name},p,{:e}", r.p).expect("string write");
            writeln!(out, "{name},trials,{}", r.trials).expect("string write");
            writeln!(out, "{name},passes,{}", r.passes).expect("string write");
            writeln!(out, "{name},vacuous_trials,{}", r.vacuous_trials).expect("string write");
            writeln!(out, "{name},pass_fraction,{}", r.pass_fraction).expect("string write");
            writeln!(out, "{name},delta,{}", r.delta).expect("string write");
            writeln!(out, "{name},epsilon,{}", r.epsilon).expect("string write");
            writeln!(out, "{name},range_fallback,{}", r.range_fallback as u8)
                .expect("string write");
            for (hyp, value) in &r.hypothesis {
                writeln!(out, "{name},hyp:{hyp},{value}").expect("string write");
            }
            emit(&cli.output, &out)?;
            let pass = min_pass.is_none_or(|m| r.pass_fraction >= m);
            eprintln!(
                "{name}: {}/{} trials passed ({} vacuous), pass_fraction {:.4}{}",
                r.passes,
                r.trials,
                r.vacuous_trials,
                r.pass_fraction,
                match min_pass {
                    Some(m) => format!(
                        ", {} at min-pass {m}",
                        if pass { "PASS" } else { "FAIL" }
                    ),
                    None => String::new(),
                }
            );
            Ok(if pass { Outcome::Passed } else { Outcome::Failed })
        }
        Cmd::Strategy(StrategyCmd::Synth {
            input,
            mode,
            j,
            q,
            regime,
            xi,
            retries,
            d,
        }) => {
            let g = read_graph(input)?;
            let mode: Mode = mode.parse()?;
            let q = match (q, regime) {
                (Some(q), None) => *q,
                (None, Some(r)) => {
                    let regime: Regime = r.parse()?;
                    let degree = d.unwrap_or_else(|| g.average_vertex_degree());
                    let density =
                        default_density(g.n(), g.k(), degree, *j, mode, regime, *xi)?;
                    eprintln!(
                        "regime ({}) density q = {:.6} at degree {degree:.4}{}{}",
                        regime.letter(),
                        density.q,
                        if density.clamped { " (clamped)" } else { "" },
                        if density.in_interval {
                            ""
                        } else {
                            " (degree outside the regime interval)"
                        },
                    );
                    density.q
                }
                _ => return Err(Error::Domain("give exactly one of --q and --regime".into())),
            };
            let mut cfg = SynthesisConfig::new(mode, *j, q);
            cfg.max_retries = *retries;
            cfg.xi = *xi;
            match synthesize(&g, &cfg, seed)? {
                SynthesisResult::Success(s) => {
                    validate_strategy(&g, &s)?;
                    emit(&cli.output, &strategy_to_text(&s))?;
                    eprintln!(
                        "success: {} cops after {} attempt(s); capture by round {}",
                        strategy_size(&s),
                        s.attempts,
                        s.j + if s.mode() == Mode::Edge { 1 } else { 0 },
                    );
                    Ok(Outcome::Passed)
                }
                SynthesisResult::Failure(f) => {
                    eprintln!(
                        "failure: no saturating cop set in {} attempt(s); final sample \
                         had {} cops and {} deficient start(s) (first: start {}, \
                         deficiency {})",
                        f.attempts,
                        f.cop_count,
                        f.failures.len(),
                        f.failures.first().map(|h| h.v).unwrap_or_default(),
                        f.failures.first().map(|h| h.deficiency).unwrap_or_default(),
                    );
                    Ok(Outcome::Failed)
                }
            }
        }
        Cmd::Engine(EngineCmd::Play {
            input,
            strategy,
            robber,
            script,
            max_rounds,
        }) => {
            let g = read_graph(input)?;
            let s = read_strategy_file(strategy)?;
            let policy = match robber.as_str() {
                "greedy" => RobberPolicy::Greedy,
                "random" => RobberPolicy::Random { seed },
                "stay" => RobberPolicy::Stay,
                "script" => {
                    let path = script.as_ref().ok_or_else(|| {
                        Error::Domain("--robber script needs --script <file>".into())
                    })?;
                    let text = std::fs::read_to_string(path)?;
                    let mut moves = Vec::new();
                    for tok in text.split_whitespace() {
                        moves.push(tok.parse().map_err(|_| {
                            Error::Format(format!("bad vertex id {tok:?} in script"))
                        })?);
                    }
                    RobberPolicy::Scripted { script: moves }
                }
                other => {
                    return Err(Error::Domain(format!(
                        "unknown robber policy {other:?}; expected greedy, random, \
                         stay, or script"
                    )))
                }
            };
            let schedule = s.j + if s.mode() == Mode::Edge { 1 } else { 0 };
            let horizon = max_rounds.unwrap_or(schedule + 2);
            let out = play(&g, &s, &policy, horizon)?;
            emit(&cli.output, &transcript_to_csv(&out.transcript))?;
            match out.captured_at {
                Some(r) => eprintln!("captured in round {r} (schedule {schedule})"),
                None => eprintln!("escaped for all {} round(s)", out.rounds_played),
            }
            Ok(Outcome::Passed)
        }
        Cmd::Oracle(OracleCmd::Copnum {
            input,
            max_m,
            budget,
        }) => {
            let g = read_graph(input)?;
            let budget = budget.unwrap_or(DEFAULT_STATE_BUDGET);
            // Unbounded search still honors --budget; n cops always win on
            // a connected graph, so the inner search cannot come back empty.
            let answer = cop_number_within(&g, max_m.unwrap_or(g.n()), budget)?;
            match answer {
                Some(c) => {
                    emit(&cli.output, &format!("{c}\n"))?;
                    eprintln!(
                        "cop number {c} (n={}, m={}, {} positions at that count)",
                        g.n(),
                        g.m(),
                        state_count(g.n(), c),
                    );
                }
                None => {
                    let m = max_m.expect("None only under --max-m");
                    emit(&cli.output, &format!(">{m}\n"))?;
                    eprintln!("no winning placement with up to {m} cop(s)");
                }
            }
            Ok(Outcome::Passed)
        }
        Cmd::Campaign(a) => {
            let plan = plan_from_file(&a.plan)?;
            let report = run_campaign(&plan)?;
            let out_path = cli
                .output
                .clone()
                .or_else(|| plan.output.as_ref().map(PathBuf::from));
            emit(&out_path, &report.csv)?;
            eprint!("{}", summarize(&report.csv)?);
            for s in &report.summaries {
                eprintln!(
                    "point {}: success {}/{} ({:.0}%), bound_rate {:.3}, capture_rate {:.3}",
                    s.point,
                    s.successes,
                    s.trials,
                    100.0 * s.success_rate,
                    s.bound_rate,
                    s.capture_rate,
                );
            }
            if report.passed {
                eprintln!("thresholds: PASS");
                Ok(Outcome::Passed)
            } else {
                eprintln!("thresholds: FAIL");
                Ok(Outcome::Failed)
            }
        }
        Cmd::Summarize(a) => {
            let csv = std::fs::read_to_string(&a.input)?;
            emit(&cli.output, &summarize(&csv)?)?;
            Ok(Outcome::Passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: cannot size the worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
