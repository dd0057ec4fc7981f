//! Cops-and-robber pursuit games on k-uniform hypergraphs.
//!
//! A k-uniform hypergraph has edges of exactly k distinct vertices; pieces
//! (cops, one robber) sit on vertices and move along edges: in one move a
//! piece may stay put or jump to any vertex sharing an edge with its current
//! vertex. Cops are placed first, the robber places with full knowledge of
//! the cop positions, and the sides then alternate, cops first, every piece
//! free to move or stay each turn. The cops win when some cop occupies the
//! robber's vertex; the cop number of a hypergraph is the least number of
//! cops that can force this against every robber.
//!
//! The crate provides:
//!
//! * [`hypergraph`] — the incidence structure, the loose-path metric
//!   (distance = fewest edges in a connecting chain), neighborhood operators
//!   and a plain-text interchange format;
//! * [`generator`] — the binomial random model (every k-set an edge
//!   independently with probability p), degree statistics, the block blow-up
//!   of a 2-graph and the clique expansion (2-section) of a hypergraph;
//! * [`expansion`] — certification of neighborhood-growth (expansion)
//!   constants on concrete samples, and empirical concentration checks for
//!   the neighborhood-size inequalities the synthesis analysis relies on;
//! * [`bounds`] — closed-form cop-number bounds by degree regime, the
//!   square-root bound, binomial tail bounds, and the two-curve exponent
//!   envelope over the (degree, uniformity) exponent plane;
//! * [`matching`] — maximum bipartite matching over lazily streamed
//!   adjacency plus Hall-violator extraction;
//! * [`strategy`] — randomized synthesis of cop strategies whose saturating
//!   assignments guarantee capture on a fixed schedule;
//! * [`engine`] — the referee: plays a synthesized strategy against robber
//!   policies, validating every move and recording a transcript;
//! * [`oracle`] — exact game solving by backward induction, used to
//!   calibrate everything else on small instances;
//! * [`campaign`] — plan-file driven experiment sweeps with deterministic,
//!   replayable CSV output.

mod bits;
pub mod bounds;
pub mod campaign;
pub mod engine;
pub mod expansion;
pub mod generator;
pub mod hypergraph;
pub mod matching;
mod numeric;
pub mod oracle;
pub mod strategy;

/// Unified error type for the crate.
///
/// Variants follow the failure taxonomy used throughout: `Domain` for
/// arguments outside an operation's contract, `Format` for malformed
/// structured input, `Parse` for line-oriented files (carries the line),
/// `Resource` for exceeded budgets (carries what the budget was),
/// `Protocol` for illegal game moves (carries offender and round).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("protocol error ({offender}, round {round}): {msg}")]
    Protocol {
        offender: String,
        round: u32,
        msg: String,
    },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
