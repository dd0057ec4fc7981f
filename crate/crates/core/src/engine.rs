//! Game referee: executes Cops-and-Robber on a hypergraph.
//!
//! Protocol: the cops place first, then the robber places with full
//! knowledge of the cop positions; play then alternates with the cops
//! moving first. A piece may stay put or move to any vertex sharing an
//! edge with its current one. More than one cop may occupy a vertex. The
//! game ends the moment a cop and the robber coincide — after either
//! phase — and `round` counts completed cop moves (a capture at placement
//! is round 0).
//!
//! Cops follow a [`CopStrategy`]: the assignment lines for the robber's
//! start tell each assigned cop its itinerary (one step per round, waiting
//! at the end); unassigned cops stay put. In edge mode a cop that has
//! finished its itinerary pounces: whenever the robber stands inside the
//! cop's assigned edge, the cop moves onto the robber's vertex.

use crate::hypergraph::{Hypergraph, Vertex, INF};
use crate::strategy::{CopStrategy, Mode};
use crate::{Error, Result};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Game phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    CopsToPlace,
    RobberToPlace,
    CopsToMove,
    RobberToMove,
    Captured,
}

/// Full game position.
#[derive(Clone, Debug)]
pub struct GameState {
    /// Cop positions (a multiset: stacking is allowed).
    pub cop_positions: Vec<Vertex>,
    /// Robber position once placed.
    pub robber: Option<Vertex>,
    /// Completed cop moves.
    pub round: u32,
    pub phase: Phase,
}

/// How the robber plays. Placement always has full knowledge of the cop
/// positions; the greedy (and stay) policies place at a vertex maximizing
/// the minimum distance to any cop, ties broken toward the smallest id.
#[derive(Clone, Debug)]
pub enum RobberPolicy {
    /// Each move maximizes the minimum distance to any cop (ties: smallest
    /// vertex id).
    Greedy,
    /// Uniform random placement and moves.
    Random { seed: u64 },
    /// Scripted positions: `script[0]` is the placement, `script[t]` the
    /// position after the robber's t-th move (staying once exhausted).
    Scripted { script: Vec<Vertex> },
    /// Places like greedy, then never moves.
    Stay,
}

/// One transcript row; placements have `from = None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptRow {
    pub round: u32,
    pub phase: &'static str,
    pub piece: String,
    pub from: Option<Vertex>,
    pub to: Vertex,
}

/// Outcome of one full game.
#[derive(Clone, Debug)]
pub struct PlayOutcome {
    /// Round of capture (0 = at placement); `None` when the robber
    /// survived `max_rounds`.
    pub captured_at: Option<u32>,
    pub rounds_played: u32,
    pub transcript: Vec<TranscriptRow>,
    pub final_state: GameState,
}

/// Legal destinations for a piece at `v`: the closed neighborhood
/// {v} ∪ N_V^1(v) — staying put is always legal.
pub fn legal_moves(g: &Hypergraph, v: Vertex) -> Vec<Vertex> {
    g.closed_neighborhood(v)
}

/// Minimum loose-path distance from every vertex to the cop set
/// (`INF` everywhere when there are no cops).
fn cop_distances(g: &Hypergraph, cops: &[Vertex]) -> Vec<u32> {
    if cops.is_empty() {
        return vec![INF; g.n()];
    }
    g.distances_from(cops)
        .expect("cop positions are valid vertices")
        .dist
}

/// Argmax of cop distance over `candidates` (assumed sorted ascending):
/// prefers larger distance, ties broken toward the smallest vertex id.
fn furthest(candidates: &[Vertex], dist: &[u32]) -> Vertex {
    let mut best = candidates[0];
    let mut best_d = dist[best as usize];
    for &c in &candidates[1..] {
        if dist[c as usize] > best_d {
            best = c;
            best_d = dist[c as usize];
        }
    }
    best
}

/// The greedy robber's placement: maximize the minimum distance to any
/// cop over all vertices (ties: smallest id).
fn greedy_placement(g: &Hypergraph, cops: &[Vertex]) -> Vertex {
    let dist = cop_distances(g, cops);
    let all: Vec<Vertex> = (0..g.n() as Vertex).collect();
    furthest(&all, &dist)
}

/// The greedy robber move: among the legal moves, maximize the minimum
/// distance to any cop (ties: smallest vertex id). Errors if the robber
/// is not yet placed.
pub fn greedy_robber_move(g: &Hypergraph, state: &GameState) -> Result<Vertex> {
    let r = state
        .robber
        .ok_or_else(|| Error::domain("greedy move before the robber was placed"))?;
    let dist = cop_distances(g, &state.cop_positions);
    let candidates = legal_moves(g, r);
    Ok(furthest(&candidates, &dist))
}

/// The robber policy's placement choice.
fn place_robber(
    g: &Hypergraph,
    policy: &RobberPolicy,
    cops: &[Vertex],
    rng: &mut ChaCha8Rng,
) -> Result<Vertex> {
    match policy {
        RobberPolicy::Greedy | RobberPolicy::Stay => Ok(greedy_placement(g, cops)),
        RobberPolicy::Random { .. } => Ok(rng.gen_range(0..g.n() as Vertex)),
        RobberPolicy::Scripted { script } => {
            let v = *script.first().ok_or(Error::Protocol {
                offender: "robber".into(),
                round: 0,
                msg: "script has no placement".into(),
            })?;
            if v >= g.n() as Vertex {
                return Err(Error::Protocol {
                    offender: "robber".into(),
                    round: 0,
                    msg: format!("scripted placement {v} is out of range"),
                });
            }
            Ok(v)
        }
    }
}

/// The robber policy's move for robber-move number `t` (1-based).
fn robber_move(
    g: &Hypergraph,
    policy: &RobberPolicy,
    state: &GameState,
    t: u32,
    rng: &mut ChaCha8Rng,
) -> Result<Vertex> {
    let r = state.robber.expect("robber placed before moving");
    match policy {
        RobberPolicy::Greedy => greedy_robber_move(g, state),
        RobberPolicy::Stay => Ok(r),
        RobberPolicy::Random { .. } => {
            let moves = legal_moves(g, r);
            Ok(moves[rng.gen_range(0..moves.len())])
        }
        RobberPolicy::Scripted { script } => {
            let Some(&v) = script.get(t as usize) else {
                return Ok(r); // script exhausted: stay
            };
            if !legal_moves(g, r).contains(&v) {
                return Err(Error::Protocol {
                    offender: "robber".into(),
                    round: t,
                    msg: format!("scripted move {r}→{v} crosses no edge"),
                });
            }
            Ok(v)
        }
    }
}

/// Itinerary state for one cop.
struct CopPlan {
    /// Path to walk (empty for unassigned cops).
    path: Vec<Vertex>,
    /// Steps already taken along `path`.
    step: usize,
    /// Edge to pounce on once the path is finished (edge mode only).
    pounce_edge: Option<u32>,
}

/// Runs one game. Cops place at the strategy's starts; the robber places
/// by policy; each round the cops advance their itineraries (with the
/// edge-mode pounce) and the robber responds, until capture or
/// `max_rounds` completed rounds.
pub fn play(
    g: &Hypergraph,
    s: &CopStrategy,
    policy: &RobberPolicy,
    max_rounds: u32,
) -> Result<PlayOutcome> {
    for &c in &s.cop_starts {
        if c >= g.n() as Vertex {
            return Err(Error::Protocol {
                offender: "cops".into(),
                round: 0,
                msg: format!("cop start {c} is out of range"),
            });
        }
    }
    let seed = match policy {
        RobberPolicy::Random { seed } => *seed,
        _ => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transcript = Vec::new();
    let mut state = GameState {
        cop_positions: s.cop_starts.clone(),
        robber: None,
        round: 0,
        phase: Phase::CopsToPlace,
    };
    for (i, &c) in s.cop_starts.iter().enumerate() {
        transcript.push(TranscriptRow {
            round: 0,
            phase: "place-cops",
            piece: format!("cop{i}"),
            from: None,
            to: c,
        });
    }
    state.phase = Phase::RobberToPlace;
    let start = place_robber(g, policy, &state.cop_positions, &mut rng)?;
    state.robber = Some(start);
    transcript.push(TranscriptRow {
        round: 0,
        phase: "place-robber",
        piece: "robber".into(),
        from: None,
        to: start,
    });

    // Bind each assignment line for this robber start to a distinct cop
    // index whose start vertex matches.
    let mut plans: Vec<CopPlan> = s
        .cop_starts
        .iter()
        .map(|_| CopPlan {
            path: Vec::new(),
            step: 0,
            pounce_edge: None,
        })
        .collect();
    let mut taken = vec![false; s.cop_starts.len()];
    for line in s.assignments.iter().filter(|l| l.v == start) {
        let idx = s
            .cop_starts
            .iter()
            .enumerate()
            .position(|(i, &c)| !taken[i] && c == line.cop)
            .ok_or_else(|| Error::Protocol {
                offender: "cops".into(),
                round: 0,
                msg: format!("assignment names cop start {} more often than it exists", line.cop),
            })?;
        taken[idx] = true;
        plans[idx].path = line.path.clone();
        plans[idx].pounce_edge = if s.mode() == Mode::Edge {
            Some(line.target)
        } else {
            None
        };
    }

    let captured = |state: &GameState| -> bool {
        let r = state.robber.expect("robber placed");
        state.cop_positions.contains(&r)
    };

    if captured(&state) {
        state.phase = Phase::Captured;
        return Ok(PlayOutcome {
            captured_at: Some(0),
            rounds_played: 0,
            transcript,
            final_state: state,
        });
    }

    for round in 1..=max_rounds {
        state.phase = Phase::CopsToMove;
        state.round = round;
        let robber_now = state.robber.expect("robber placed");
        for (i, plan) in plans.iter_mut().enumerate() {
            let here = state.cop_positions[i];
            let next = if plan.step + 1 < plan.path.len() {
                plan.step += 1;
                plan.path[plan.step]
            } else if let Some(e) = plan.pounce_edge {
                // Itinerary finished: pounce if the robber stands in the
                // assigned edge.
                if g.edge(e).contains(&robber_now) {
                    robber_now
                } else {
                    here
                }
            } else {
                here
            };
            if next != here {
                if !legal_moves(g, here).contains(&next) {
                    return Err(Error::Protocol {
                        offender: "cops".into(),
                        round,
                        msg: format!("cop{i} move {here}→{next} crosses no edge"),
                    });
                }
                transcript.push(TranscriptRow {
                    round,
                    phase: "cops-move",
                    piece: format!("cop{i}"),
                    from: Some(here),
                    to: next,
                });
                state.cop_positions[i] = next;
            }
        }
        if captured(&state) {
            state.phase = Phase::Captured;
            return Ok(PlayOutcome {
                captured_at: Some(round),
                rounds_played: round,
                transcript,
                final_state: state,
            });
        }

        state.phase = Phase::RobberToMove;
        let here = state.robber.expect("robber placed");
        let next = robber_move(g, policy, &state, round, &mut rng)?;
        if next != here {
            transcript.push(TranscriptRow {
                round,
                phase: "robber-move",
                piece: "robber".into(),
                from: Some(here),
                to: next,
            });
            state.robber = Some(next);
        }
        if captured(&state) {
            state.phase = Phase::Captured;
            return Ok(PlayOutcome {
                captured_at: Some(round),
                rounds_played: round,
                transcript,
                final_state: state,
            });
        }
    }
    state.phase = Phase::CopsToMove;
    Ok(PlayOutcome {
        captured_at: None,
        rounds_played: max_rounds,
        transcript,
        final_state: state,
    })
}

/// Renders a transcript as CSV with header `round,phase,piece,from,to`
/// (empty `from` on placement rows).
pub fn transcript_to_csv(rows: &[TranscriptRow]) -> String {
    let mut out = String::from("round,phase,piece,from,to\n");
    for r in rows {
        let from = r.from.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.round, r.phase, r.piece, from, r.to
        ));
    }
    out
}

/// Replays a transcript against the hypergraph: every move row must go to
/// a legal destination of its `from` vertex and rows must be in
/// chronological order.
pub fn verify_transcript(g: &Hypergraph, rows: &[TranscriptRow]) -> Result<()> {
    let mut last_round = 0;
    for (i, r) in rows.iter().enumerate() {
        if r.round < last_round {
            return Err(Error::format(format!(
                "transcript row {i} goes back in time (round {} after {})",
                r.round, last_round
            )));
        }
        last_round = r.round;
        if r.to >= g.n() as Vertex {
            return Err(Error::format(format!(
                "transcript row {i} moves to out-of-range vertex {}",
                r.to
            )));
        }
        if let Some(from) = r.from {
            if !legal_moves(g, from).contains(&r.to) {
                return Err(Error::format(format!(
                    "transcript row {i}: {}→{} crosses no edge",
                    from, r.to
                )));
            }
        }
    }
    Ok(())
}
