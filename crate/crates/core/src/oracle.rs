//! Exact game solving on small instances by backward induction.
//!
//! A game position is a sorted cop multiset, a robber vertex, and whose
//! turn it is; sorting the multiset identifies positions that differ only
//! by permuting the (interchangeable) cops. The solver labels the winning
//! positions as a least fixed point, seeded with every capture position
//! (robber sharing a vertex with a cop): a cops-to-move position wins if
//! some simultaneous cop move reaches a winning robber-to-move position,
//! and a robber-to-move position wins (for the cops) if every legal robber
//! move — staying included — lands on a winning cops-to-move position.
//! Iteration is run to stability; it terminates because the winning set
//! only grows, and the fixed point is unique regardless of sweep order.
//! Placement follows the game's order: the cops pick a start multiset
//! first, then the robber picks any vertex knowing it, so m cops win iff
//! some multiset beats every robber reply (placing onto a cop is an
//! immediate round-0 capture).
//!
//! Two routes compute the same decision: [`cops_win`] replaces every edge
//! by a clique (the 2-section) and solves the resulting 2-graph, while
//! [`direct_hypergraph_cops_win`] solves on the hypergraph itself. Since a
//! piece may move to exactly the vertices sharing an edge with it, the two
//! games coincide; keeping both routes makes that equivalence a testable
//! fact rather than an assumption.
//!
//! The state space has C(n+m−1, m)·n positions per turn; calls are
//! rejected with a resource error when that count exceeds the budget
//! (default 10⁸).

use crate::generator::clique_expansion;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::{Error, Result};

/// Default cap on C(n+m−1, m)·n, the per-turn position count.
pub const DEFAULT_STATE_BUDGET: u64 = 100_000_000;

/// A canonical game position: cops as a sorted multiset, the robber's
/// vertex, and the side to move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GamePosition {
    /// Sorted multiset of cop vertices.
    pub cops: Vec<Vertex>,
    pub robber: Vertex,
    /// True when the cops are to move.
    pub cops_turn: bool,
}

/// Pascal triangle up to C(rows−1, cols−1), saturating at u128::MAX.
fn binom_table(rows: usize, cols: usize) -> Vec<Vec<u128>> {
    let mut t = vec![vec![0u128; cols]; rows];
    for row in t.iter_mut() {
        row[0] = 1;
    }
    for d in 1..rows {
        for i in 1..cols {
            let (a, b) = (t[d - 1][i - 1], t[d - 1][i]);
            t[d][i] = a.saturating_add(b);
        }
    }
    t
}

/// Number of positions per turn: C(n+m−1, m)·n.
pub fn state_count(n: usize, m: usize) -> u128 {
    let t = binom_table(n + m, m + 1);
    t[n + m - 1][m].saturating_mul(n as u128)
}

/// Indexes sorted cop multisets of size m over n vertices by their
/// colexicographic rank.
struct MultisetIndex {
    m: usize,
    binom: Vec<Vec<u128>>,
}

impl MultisetIndex {
    fn new(n: usize, m: usize) -> Self {
        MultisetIndex {
            m,
            binom: binom_table(n + m, m + 1),
        }
    }

    /// Colex rank of a sorted multiset: Σᵢ C(cᵢ + i, i + 1).
    fn rank(&self, sorted: &[Vertex]) -> usize {
        debug_assert_eq!(sorted.len(), self.m);
        let mut r = 0u128;
        for (i, &c) in sorted.iter().enumerate() {
            r += self.binom[c as usize + i][i + 1];
        }
        r as usize
    }

    /// All sorted multisets in colex order (index == rank).
    fn enumerate(&self, n: usize) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        let mut cur = vec![0 as Vertex; self.m];
        loop {
            out.push(cur.clone());
            // colex successor: bump the least position that can grow,
            // resetting everything below it to zero
            let mut i = 0;
            loop {
                if i == self.m {
                    return out;
                }
                let cap = if i + 1 < self.m {
                    cur[i + 1]
                } else {
                    (n - 1) as Vertex
                };
                if cur[i] < cap {
                    cur[i] += 1;
                    for c in cur.iter_mut().take(i) {
                        *c = 0;
                    }
                    break;
                }
                i += 1;
            }
        }
    }
}

/// The fixed-point solver over one hypergraph's move structure.
fn solve(g: &Hypergraph, m: usize, budget: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::domain("at least one cop is required"));
    }
    if !g.is_connected() {
        return Err(Error::domain(
            "the exact solver requires a connected input",
        ));
    }
    let n = g.n();
    let states = state_count(n, m);
    if states > budget as u128 {
        return Err(Error::resource(format!(
            "solving needs {states} positions per turn, over the budget of {budget}"
        )));
    }
    let nbhd: Vec<Vec<Vertex>> = (0..n as Vertex)
        .map(|v| g.closed_neighborhood(v))
        .collect();
    let index = MultisetIndex::new(n, m);
    let multisets = index.enumerate(n);
    let m_count = multisets.len();
    let mut win_cop = vec![false; m_count * n];
    let mut win_rob = vec![false; m_count * n];
    for (ms_idx, ms) in multisets.iter().enumerate() {
        for &c in ms {
            win_cop[ms_idx * n + c as usize] = true;
            win_rob[ms_idx * n + c as usize] = true;
        }
    }

    // Reused buffers for the simultaneous-cop-move product.
    let mut odometer = vec![0usize; m];
    let mut tuple = vec![0 as Vertex; m];
    let mut succs: Vec<usize> = Vec::new();

    loop {
        let mut changed = false;
        for (ms_idx, ms) in multisets.iter().enumerate() {
            // Successor multisets of one simultaneous cop move: the
            // cartesian product of each cop's closed neighborhood,
            // canonicalized by sorting.
            succs.clear();
            odometer.iter_mut().for_each(|x| *x = 0);
            'product: loop {
                for (i, &c) in ms.iter().enumerate() {
                    tuple[i] = nbhd[c as usize][odometer[i]];
                }
                tuple.sort_unstable();
                succs.push(index.rank(&tuple));
                let mut i = 0;
                loop {
                    if i == m {
                        break 'product;
                    }
                    odometer[i] += 1;
                    if odometer[i] < nbhd[ms[i] as usize].len() {
                        break;
                    }
                    odometer[i] = 0;
                    i += 1;
                }
            }
            succs.sort_unstable();
            succs.dedup();

            for r in 0..n {
                let i = ms_idx * n + r;
                if !win_cop[i] && succs.iter().any(|&s| win_rob[s * n + r]) {
                    win_cop[i] = true;
                    changed = true;
                }
                if !win_rob[i]
                    && nbhd[r].iter().all(|&r2| win_cop[ms_idx * n + r2 as usize])
                {
                    win_rob[i] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // Placement: some cop multiset beats every robber reply.
    Ok((0..m_count).any(|ms_idx| (0..n).all(|r| win_cop[ms_idx * n + r])))
}

/// Decides whether m cops win on G, solving the game on the clique
/// expansion (every edge replaced by a clique).
pub fn cops_win(g: &Hypergraph, m: usize) -> Result<bool> {
    cops_win_budgeted(g, m, DEFAULT_STATE_BUDGET)
}

/// [`cops_win`] with an explicit state budget.
pub fn cops_win_budgeted(g: &Hypergraph, m: usize, budget: u64) -> Result<bool> {
    let expanded = clique_expansion(g)?;
    solve(&expanded, m, budget)
}

/// Decides whether m cops win, playing directly on the hypergraph without
/// the clique expansion; exists to make the expansion equivalence testable.
pub fn direct_hypergraph_cops_win(g: &Hypergraph, m: usize) -> Result<bool> {
    direct_hypergraph_cops_win_budgeted(g, m, DEFAULT_STATE_BUDGET)
}

/// [`direct_hypergraph_cops_win`] with an explicit state budget.
pub fn direct_hypergraph_cops_win_budgeted(
    g: &Hypergraph,
    m: usize,
    budget: u64,
) -> Result<bool> {
    solve(g, m, budget)
}

/// Least m ≤ max_m with [`cops_win`] true, or `None` if every such m
/// fails. A connected graph always falls to n cops (one per vertex), so
/// `max_m = n` makes the search total.
pub fn cop_number_within(g: &Hypergraph, max_m: usize, budget: u64) -> Result<Option<usize>> {
    for m in 1..=max_m {
        if cops_win_budgeted(g, m, budget)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// The cop number: least m such that m cops win on G.
pub fn cop_number(g: &Hypergraph) -> Result<usize> {
    Ok(cop_number_within(g, g.n(), DEFAULT_STATE_BUDGET)?
        .expect("n cops on a connected graph always win"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::blow_up;
    use crate::strategy::{strategy_size, synthesize, Mode, SynthesisConfig};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn graph2(n: usize, edges: &[(u32, u32)]) -> Hypergraph {
        Hypergraph::new(n, 2, edges.iter().map(|&(a, b)| vec![a, b]).collect()).unwrap()
    }

    fn c4() -> Hypergraph {
        graph2(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    fn petersen() -> Hypergraph {
        graph2(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
    }

    #[test]
    fn multiset_rank_matches_enumeration_order() {
        for (n, m) in [(3, 2), (5, 3), (8, 2), (4, 4)] {
            let idx = MultisetIndex::new(n, m);
            let all = idx.enumerate(n);
            assert_eq!(all.len() as u128, state_count(n, m) / n as u128);
            for (i, ms) in all.iter().enumerate() {
                assert_eq!(idx.rank(ms), i, "n={n} m={m} ms={ms:?}");
                assert!(ms.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn trees_are_one_cop_graphs() {
        let path5 = graph2(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let star7 = graph2(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6)]);
        let caterpillar = graph2(7, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (5, 6)]);
        for t in [path5, star7, caterpillar] {
            assert!(cops_win(&t, 1).unwrap());
            assert_eq!(cop_number(&t).unwrap(), 1);
        }
    }

    #[test]
    fn four_cycle_needs_two_cops() {
        let g = c4();
        assert!(!cops_win(&g, 1).unwrap());
        assert!(cops_win(&g, 2).unwrap());
        assert_eq!(cop_number(&g).unwrap(), 2);
    }

    #[test]
    fn single_hyperedge_is_one_cop() {
        let g = Hypergraph::new(4, 4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert!(cops_win(&g, 1).unwrap());
        assert!(direct_hypergraph_cops_win(&g, 1).unwrap());
        assert_eq!(cop_number(&g).unwrap(), 1);
    }

    #[test]
    fn complete_graphs_are_one_cop() {
        for n in 2..=6 {
            let edges: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|a| ((a + 1)..n as u32).map(move |b| (a, b)))
                .collect();
            assert_eq!(cop_number(&graph2(n, &edges)).unwrap(), 1);
        }
    }

    #[test]
    fn petersen_needs_three_cops() {
        let g = petersen();
        assert!(!cops_win(&g, 2).unwrap());
        assert!(cops_win(&g, 3).unwrap());
        assert_eq!(cop_number(&g).unwrap(), 3);
    }

    #[test]
    fn figure_blow_up_of_c4_has_cop_number_two() {
        let g = blow_up(&c4(), 5).unwrap().hypergraph;
        assert_eq!((g.n(), g.k()), (20, 10));
        assert_eq!(cop_number(&g).unwrap(), 2);
    }

    #[test]
    fn blow_up_preserves_the_cop_number() {
        let p4 = graph2(4, &[(0, 1), (1, 2), (2, 3)]);
        let k4 = graph2(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let c5 = graph2(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        for base in [p4, k4, c4(), c5] {
            let want = cop_number(&base).unwrap();
            for k_half in [2, 3] {
                let g = blow_up(&base, k_half).unwrap().hypergraph;
                assert_eq!(
                    cop_number(&g).unwrap(),
                    want,
                    "blow-up by {k_half} moved the cop number"
                );
            }
        }
    }

    #[test]
    fn expansion_and_direct_routes_agree_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0AC1E);
        let mut tested = 0;
        while tested < 200 {
            let k = rng.gen_range(2..=4usize);
            let n = rng.gen_range(k.max(3)..=8usize);
            let edge_count = rng.gen_range(1..=6usize);
            let mut edges: Vec<Vec<Vertex>> = Vec::new();
            for _ in 0..edge_count {
                let mut verts: Vec<Vertex> = (0..n as Vertex).collect();
                verts.shuffle(&mut rng);
                let mut e: Vec<Vertex> = verts[..k].to_vec();
                e.sort_unstable();
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
            let Ok(g) = Hypergraph::new(n, k, edges) else {
                continue;
            };
            if !g.is_connected() {
                continue;
            }
            let w1 = cops_win(&g, 1).unwrap();
            let w2 = cops_win(&g, 2).unwrap();
            assert_eq!(w1, direct_hypergraph_cops_win(&g, 1).unwrap());
            assert_eq!(w2, direct_hypergraph_cops_win(&g, 2).unwrap());
            // monotonicity in the number of cops
            assert!(!w1 || w2, "1 cop wins but 2 cops lose");
            tested += 1;
        }
    }

    #[test]
    fn synthesized_strategies_bound_the_cop_number() {
        let g = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let cfg = SynthesisConfig::new(Mode::Vertex, 1, 1.0);
        let s = synthesize(&g, &cfg, 1).unwrap().strategy().cloned().unwrap();
        assert!(cop_number(&g).unwrap() <= strategy_size(&s));

        let g = blow_up(&c4(), 3).unwrap().hypergraph;
        let mut cfg = SynthesisConfig::new(Mode::Edge, 1, 0.4);
        cfg.max_retries = 30;
        let s = synthesize(&g, &cfg, 7).unwrap().strategy().cloned().unwrap();
        assert!(cop_number(&g).unwrap() <= strategy_size(&s));
    }

    #[test]
    fn budget_violations_report_the_state_count() {
        let g = blow_up(&c4(), 5).unwrap().hypergraph; // n = 20
        let err = cops_win(&g, 10).unwrap_err();
        match err {
            Error::Resource(msg) => {
                assert!(msg.contains("400600200"), "{msg}");
            }
            other => panic!("wrong error {other:?}"),
        }
    }

    #[test]
    fn disconnected_inputs_are_rejected() {
        let g = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(matches!(cops_win(&g, 1), Err(Error::Domain(_))));
        assert!(matches!(
            direct_hypergraph_cops_win(&g, 2),
            Err(Error::Domain(_))
        ));
        assert!(matches!(cop_number(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_cops_is_a_domain_error() {
        let g = c4();
        assert!(matches!(cops_win(&g, 0), Err(Error::Domain(_))));
    }
}
