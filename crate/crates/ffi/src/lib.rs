//! C ABI over the hypercop library.
//!
//! Conventions:
//!
//! * Handles (`HypercopGraph`, `HypercopStrategy`) are opaque; create them
//!   through this API and release them with the matching `*_free` call.
//! * Every fallible call returns a [`HypercopStatus`]; `HYPERCOP_STATUS_OK`
//!   is 0. On failure, [`hypercop_last_error`] returns a message that stays
//!   valid until the next hypercop call on the same thread.
//! * Returned strings are NUL-terminated, owned by the caller, and must be
//!   released with [`hypercop_string_free`].
//! * Out-parameters are written only on `HYPERCOP_STATUS_OK` (except where
//!   documented). Null pointers are rejected, never dereferenced.
//! * Panics never unwind across the boundary; they surface as
//!   `HYPERCOP_STATUS_PANIC`.

use hypercop::engine::{play, transcript_to_csv, RobberPolicy};
use hypercop::generator::{sample_gknp, ModelParams};
use hypercop::hypergraph::Hypergraph;
use hypercop::oracle::{cop_number_within, DEFAULT_STATE_BUDGET};
use hypercop::strategy::{
    strategy_from_text, strategy_size, strategy_to_text, synthesize, CopStrategy, Mode,
    SynthesisConfig, SynthesisResult,
};
use hypercop::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code of every fallible call; 0 is success.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HypercopStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// Mathematically invalid input (see `hypercop_last_error`).
    Domain = 3,
    /// Malformed input text.
    Format = 4,
    /// Malformed input text, with a line number in the message.
    Parse = 5,
    /// A stated resource budget would be exceeded.
    Resource = 6,
    /// An illegal game move.
    Protocol = 7,
    /// Operating-system I/O failure.
    Io = 8,
    /// Strategy synthesis exhausted its retries without success.
    SynthExhausted = 9,
    /// Internal invariant failure caught at the boundary.
    Panic = 10,
}

/// Robber policy selectors for `hypercop_play`.
pub const HYPERCOP_ROBBER_GREEDY: u32 = 0;
/// Uniform random placement and moves (seeded).
pub const HYPERCOP_ROBBER_RANDOM: u32 = 1;
/// Greedy placement, then never moves.
pub const HYPERCOP_ROBBER_STAY: u32 = 2;

/// Opaque hypergraph handle.
pub struct HypercopGraph {
    inner: Hypergraph,
}

/// Opaque cop-strategy handle.
pub struct HypercopStrategy {
    inner: CopStrategy,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean: String = msg.chars().map(|c| if c == '\0' { ' ' } else { c }).collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).expect("NULs removed"));
}

fn fail(e: &Error) -> HypercopStatus {
    set_error(&e.to_string());
    match e {
        Error::Domain(_) => HypercopStatus::Domain,
        Error::Format(_) => HypercopStatus::Format,
        Error::Parse { .. } => HypercopStatus::Parse,
        Error::Resource(_) => HypercopStatus::Resource,
        Error::Protocol { .. } => HypercopStatus::Protocol,
        Error::Io(_) => HypercopStatus::Io,
    }
}

fn guard<F: FnOnce() -> HypercopStatus>(f: F) -> HypercopStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            HypercopStatus::Panic
        }
    }
}

fn null_arg(which: &str) -> HypercopStatus {
    set_error(&format!("{which} must not be null"));
    HypercopStatus::NullArgument
}

/// # Safety: `p` is a caller pointer; validity is the caller's contract.
unsafe fn utf8_in<'a>(p: *const c_char, which: &str) -> Result<&'a str, HypercopStatus> {
    if p.is_null() {
        return Err(null_arg(which));
    }
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| {
        set_error(&format!("{which} is not valid UTF-8"));
        HypercopStatus::Utf8
    })
}

fn string_out(s: String) -> *mut c_char {
    let clean: String = s.chars().map(|c| if c == '\0' { ' ' } else { c }).collect();
    CString::new(clean).expect("NULs removed").into_raw()
}

/// Message of the most recent failure on this thread (empty if none).
/// The pointer stays valid until the next hypercop call on this thread.
#[no_mangle]
pub extern "C" fn hypercop_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string; never freed.
#[no_mangle]
pub extern "C" fn hypercop_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must come from a hypercop call and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hypercop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

// ---------------------------------------------------------------------------
// graphs

/// Parses the canonical text format (`n k m` header, one edge per line).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hypercop_graph_parse(
    text: *const c_char,
    out: *mut *mut HypercopGraph,
) -> HypercopStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let text = match unsafe { utf8_in(text, "text") } {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Hypergraph::parse(text) {
            Ok(g) => {
                unsafe { *out = Box::into_raw(Box::new(HypercopGraph { inner: g })) };
                HypercopStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

fn sample_into(params: ModelParams, out: *mut *mut HypercopGraph) -> HypercopStatus {
    match sample_gknp(&params) {
        Ok(g) => {
            unsafe { *out = Box::into_raw(Box::new(HypercopGraph { inner: g })) };
            HypercopStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Samples the binomial model: every k-subset of `0..n` is an edge
/// independently with probability `p`, deterministically in `seed`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hypercop_graph_sample(
    n: usize,
    k: usize,
    p: f64,
    seed: u64,
    out: *mut *mut HypercopGraph,
) -> HypercopStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match ModelParams::new(n, k, p, seed) {
            Ok(params) => sample_into(params, out),
            Err(e) => fail(&e),
        }
    })
}

/// Samples the binomial model with `p` solved from the degree parameter:
/// p = dhat / (k·C(n−1, k−1)).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hypercop_graph_sample_degree(
    n: usize,
    k: usize,
    dhat: f64,
    seed: u64,
    out: *mut *mut HypercopGraph,
) -> HypercopStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match ModelParams::from_target_degree(n, k, dhat, seed) {
            Ok(params) => sample_into(params, out),
            Err(e) => fail(&e),
        }
    })
}

/// Releases a graph handle. Null is a no-op.
///
/// # Safety
/// `g` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hypercop_graph_free(g: *mut HypercopGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Vertex count (0 for a null handle).
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hypercop_graph_n(g: *const HypercopGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.inner.n())
}

/// Edge size (0 for a null handle).
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hypercop_graph_k(g: *const HypercopGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.inner.k())
}

/// Edge count (0 for a null handle).
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hypercop_graph_m(g: *const HypercopGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.inner.m())
}

/// Writes 1 to `out` iff the graph is connected.
///
/// # Safety
/// `g` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hypercop_graph_is_connected(
    g: *const HypercopGraph,
    out: *mut bool,
) -> HypercopStatus {
    guard(|| {
        let (Some(g), false) = (unsafe { g.as_ref() }, out.is_null()) else {
            return null_arg("g and out");
        };
        unsafe { *out = g.inner.is_connected() };
        HypercopStatus::Ok
    })
}

/// Renders the canonical text format; release with `hypercop_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hypercop_graph_to_text(
    g: *const HypercopGraph,
    out: *mut *mut c_char,
) -> HypercopStatus {
    guard(|| {
        let (Some(g), false) = (unsafe { g.as_ref() }, out.is_null()) else {
            return null_arg("g and out");
        };
        unsafe { *out = string_out(g.inner.to_text()) };
        HypercopStatus::Ok
    })
}

// ---------------------------------------------------------------------------
// exact solving

/// Exact cop number by backward induction. `budget` caps the position count
/// (0 selects the default of 100000000); exceeding it fails with
/// `HYPERCOP_STATUS_RESOURCE`.
///
/// # Safety
/// `g` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hypercop_cop_number(
    g: *const HypercopGraph,
    budget: u64,
    out: *mut usize,
) -> HypercopStatus {
    guard(|| {
        let (Some(g), false) = (unsafe { g.as_ref() }, out.is_null()) else {
            return null_arg("g and out");
        };
        let budget = if budget == 0 { DEFAULT_STATE_BUDGET } else { budget };
        match cop_number_within(&g.inner, g.inner.n(), budget) {
            Ok(Some(c)) => {
                unsafe { *out = c };
                HypercopStatus::Ok
            }
            Ok(None) => {
                set_error("no cop count up to n wins; the graph has no vertices");
                HypercopStatus::Domain
            }
            Err(e) => fail(&e),
        }
    })
}

/// Least winning cop count among 1..=max_m, or −1 when every count fails.
///
/// # Safety
/// `g` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hypercop_cop_number_within(
    g: *const HypercopGraph,
    max_m: usize,
    budget: u64,
    out: *mut i64,
) -> HypercopStatus {
    guard(|| {
        let (Some(g), false) = (unsafe { g.as_ref() }, out.is_null()) else {
            return null_arg("g and out");
        };
        let budget = if budget == 0 { DEFAULT_STATE_BUDGET } else { budget };
        match cop_number_within(&g.inner, max_m, budget) {
            Ok(answer) => {
                unsafe { *out = answer.map_or(-1, |c| c as i64) };
                HypercopStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

// ---------------------------------------------------------------------------
// strategies

/// Samples cop sets at density `q` until one surrounds every robber start
/// (`retries` fresh samples after the first). `mode_edge` selects the
/// edge-surrounding construction (capture by round j+1) over the
/// vertex-surrounding one (round j). Exhaustion returns
/// `HYPERCOP_STATUS_SYNTH_EXHAUSTED` with details in the error string.
///
/// # Safety
/// `g` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hypercop_synthesize(
    g: *const HypercopGraph,
    mode_edge: bool,
    j: u32,
    q: f64,
    retries: u32,
    seed: u64,
    out: *mut *mut HypercopStrategy,
) -> HypercopStatus {
    guard(|| {
        let (Some(g), false) = (unsafe { g.as_ref() }, out.is_null()) else {
            return null_arg("g and out");
        };
        let mode = if mode_edge { Mode::Edge } else { Mode::Vertex };
        let mut cfg = SynthesisConfig::new(mode, j, q);
        cfg.max_retries = retries;
        match synthesize(&g.inner, &cfg, seed) {
            Ok(SynthesisResult::Success(s)) => {
                unsafe { *out = Box::into_raw(Box::new(HypercopStrategy { inner: s })) };
                HypercopStatus::Ok
            }
            Ok(SynthesisResult::Failure(f)) => {
                set_error(&format!(
                    "no saturating cop set in {} attempt(s); final sample had {} \
                     cops and {} deficient start(s)",
                    f.attempts,
                    f.cop_count,
                    f.failures.len()
                ));
                HypercopStatus::SynthExhausted
            }
            Err(e) => fail(&e),
        }
    })
}

/// Parses a strategy file produced by `hypercop_strategy_to_text` (or the
/// CLI): `mode j` header, cop starts, one `v target cop path…` line each.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hypercop_strategy_parse(
    text: *const c_char,
    out: *mut *mut HypercopStrategy,
) -> HypercopStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let text = match unsafe { utf8_in(text, "text") } {
            Ok(t) => t,
            Err(s) => return s,
        };
        match strategy_from_text(text) {
            Ok(s) => {
                unsafe { *out = Box::into_raw(Box::new(HypercopStrategy { inner: s })) };
                HypercopStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Renders the strategy file text; release with `hypercop_string_free`.
///
/// # Safety
/// `s` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hypercop_strategy_to_text(
    s: *const HypercopStrategy,
    out: *mut *mut c_char,
) -> HypercopStatus {
    guard(|| {
        let (Some(s), false) = (unsafe { s.as_ref() }, out.is_null()) else {
            return null_arg("s and out");
        };
        unsafe { *out = string_out(strategy_to_text(&s.inner)) };
        HypercopStatus::Ok
    })
}

/// Number of cops the strategy places (0 for a null handle).
///
/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hypercop_strategy_size(s: *const HypercopStrategy) -> usize {
    unsafe { s.as_ref() }.map_or(0, |s| strategy_size(&s.inner))
}

/// Surrounding depth j (0 for a null handle).
///
/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hypercop_strategy_j(s: *const HypercopStrategy) -> u32 {
    unsafe { s.as_ref() }.map_or(0, |s| s.inner.j)
}

/// 1 iff the strategy is edge-surrounding (capture schedule j+1).
///
/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hypercop_strategy_mode_edge(s: *const HypercopStrategy) -> bool {
    unsafe { s.as_ref() }.is_some_and(|s| s.inner.mode() == Mode::Edge)
}

/// Releases a strategy handle. Null is a no-op.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hypercop_strategy_free(s: *mut HypercopStrategy) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

// ---------------------------------------------------------------------------
// play

fn play_into(
    g: &Hypergraph,
    s: &CopStrategy,
    policy: &RobberPolicy,
    max_rounds: u32,
    out_captured_round: *mut i64,
    out_transcript_csv: *mut *mut c_char,
) -> HypercopStatus {
    match play(g, s, policy, max_rounds) {
        Ok(outcome) => {
            unsafe { *out_captured_round = outcome.captured_at.map_or(-1, |r| r as i64) };
            if !out_transcript_csv.is_null() {
                unsafe {
                    *out_transcript_csv = string_out(transcript_to_csv(&outcome.transcript))
                };
            }
            HypercopStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Plays the strategy against a built-in robber policy
/// (`HYPERCOP_ROBBER_GREEDY` / `_RANDOM` / `_STAY`; `seed` feeds the random
/// one). Writes the capture round to `out_captured_round` (−1 if the robber
/// survived all `max_rounds`). `out_transcript_csv` may be null; otherwise
/// it receives the transcript (release with `hypercop_string_free`).
///
/// # Safety
/// `g` and `s` must be live handles; out-pointers valid (transcript may be
/// null).
#[no_mangle]
pub unsafe extern "C" fn hypercop_play(
    g: *const HypercopGraph,
    s: *const HypercopStrategy,
    robber: u32,
    seed: u64,
    max_rounds: u32,
    out_captured_round: *mut i64,
    out_transcript_csv: *mut *mut c_char,
) -> HypercopStatus {
    guard(|| {
        let (Some(g), Some(s), false) = (
            unsafe { g.as_ref() },
            unsafe { s.as_ref() },
            out_captured_round.is_null(),
        ) else {
            return null_arg("g, s and out_captured_round");
        };
        let policy = match robber {
            HYPERCOP_ROBBER_GREEDY => RobberPolicy::Greedy,
            HYPERCOP_ROBBER_RANDOM => RobberPolicy::Random { seed },
            HYPERCOP_ROBBER_STAY => RobberPolicy::Stay,
            other => {
                set_error(&format!("unknown robber policy selector {other}"));
                return HypercopStatus::Domain;
            }
        };
        play_into(
            &g.inner,
            &s.inner,
            &policy,
            max_rounds,
            out_captured_round,
            out_transcript_csv,
        )
    })
}

/// Plays the strategy against a scripted robber: `script[0]` is the
/// placement, `script[t]` the t-th move (staying put once exhausted).
/// Illegal scripted moves fail with `HYPERCOP_STATUS_PROTOCOL`.
///
/// # Safety
/// `g` and `s` must be live handles; `script` must point to `script_len`
/// readable u32s; out-pointers as in `hypercop_play`.
#[no_mangle]
pub unsafe extern "C" fn hypercop_play_scripted(
    g: *const HypercopGraph,
    s: *const HypercopStrategy,
    script: *const u32,
    script_len: usize,
    max_rounds: u32,
    out_captured_round: *mut i64,
    out_transcript_csv: *mut *mut c_char,
) -> HypercopStatus {
    guard(|| {
        let (Some(g), Some(s), false) = (
            unsafe { g.as_ref() },
            unsafe { s.as_ref() },
            out_captured_round.is_null(),
        ) else {
            return null_arg("g, s and out_captured_round");
        };
        if script.is_null() && script_len > 0 {
            return null_arg("script");
        }
        let script = if script_len == 0 {
            Vec::new()
        } else {
            unsafe { std::slice::from_raw_parts(script, script_len) }.to_vec()
        };
        play_into(
            &g.inner,
            &s.inner,
            &RobberPolicy::Scripted { script },
            max_rounds,
            out_captured_round,
            out_transcript_csv,
        )
    })
}
