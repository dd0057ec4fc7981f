//! Closed-form cop-number bounds for ξ-expanding k-uniform hypergraphs.
//!
//! Four degree regimes, indexed by the piece index j ≥ 1, tile the range
//! k ≤ d ≤ n of average vertex degrees (natural log throughout, Λ-factors
//! exact ceilings):
//!
//! | regime | interval of d                      | cop bound                       |
//! |--------|------------------------------------|---------------------------------|
//! | a      | n^{1/(2j+1)} … (n/k)^{1/(2j)}      | 20·ξ⁻²·dʲ·⌈(n/d^{2j+1})·ln n⌉  |
//! | b      | (n/k)^{1/(2j)} … n^{1/(2j)}        | 20·ξ⁻¹·(n/(k·dʲ))·ln n          |
//! | c      | n^{1/(2j)} … (nk)^{1/(2j)}         | 20·ξ⁻²·(dʲ/k)·Λ, Λ = max of two ceilings |
//! | d      | (nk)^{1/(2j)} … n^{1/(2j−1)}       | 20·ξ⁻¹·(n/dʲ)·ln n              |
//!
//! A regime *collapses* at index j when its left border exceeds its right
//! border: regime a iff k > n^{1/(2j+1)}, regime d iff k > n^{1/(2j−1)}
//! (never under the standing assumption d ≥ k, since both inverted gaps
//! then lie wholly below k). Boundary degrees belong to both adjacent
//! regimes.
//!
//! On the exponent scale (d = n^α, k = n^β, constants and logs dropped)
//! the same bounds become two piecewise-linear curves over α — one from
//! the vertex-protecting strategies (regimes a, d), one from the
//! edge-protecting strategies (b, c) — whose lower envelope zigzags
//! between them and touches (1−β)/2 at every crossing. [`zigzag_curves`]
//! evaluates those exponents.

use crate::{Error, Result};

/// The four degree regimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    A,
    B,
    C,
    D,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::A, Regime::B, Regime::C, Regime::D];

    pub fn letter(self) -> char {
        match self {
            Regime::A => 'a',
            Regime::B => 'b',
            Regime::C => 'c',
            Regime::D => 'd',
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Regime::A),
            "b" | "B" => Ok(Regime::B),
            "c" | "C" => Ok(Regime::C),
            "d" | "D" => Ok(Regime::D),
            other => Err(Error::domain(format!(
                "regime must be one of a, b, c, d; got {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// One (regime, j) entry produced by [`classify_regime`].
#[derive(Clone, Copy, Debug)]
pub struct RegimeBound {
    pub regime: Regime,
    pub j: u32,
    /// The ceiling factor Λ; 1 for regimes without one (b, d).
    pub lambda: u64,
    /// The numeric cop-count bound; absent exactly when the regime is
    /// collapsed at these parameters.
    pub bound: Option<f64>,
    /// True when the regime's left border exceeds its right border at this
    /// index (the entry then reports the inverted gap containing d).
    pub collapsed: bool,
}

/// The degree interval `[lo, hi]` of `regime` at index `j`, plus whether
/// the regime is collapsed there (`lo > hi`).
pub fn regime_interval(n: usize, k: usize, j: u32, regime: Regime) -> (f64, f64, bool) {
    let (nf, kf) = (n as f64, k as f64);
    let root = |base: f64, inv: f64| base.powf(inv);
    let (lo, hi) = match regime {
        Regime::A => (
            root(nf, 1.0 / (2.0 * j as f64 + 1.0)),
            root(nf / kf, 1.0 / (2.0 * j as f64)),
        ),
        Regime::B => (
            root(nf / kf, 1.0 / (2.0 * j as f64)),
            root(nf, 1.0 / (2.0 * j as f64)),
        ),
        Regime::C => (
            root(nf, 1.0 / (2.0 * j as f64)),
            root(nf * kf, 1.0 / (2.0 * j as f64)),
        ),
        Regime::D => (
            root(nf * kf, 1.0 / (2.0 * j as f64)),
            root(nf, 1.0 / (2.0 * j as f64 - 1.0)),
        ),
    };
    (lo, hi, lo > hi)
}

/// The Λ factor and bound of `regime` at index `j`, evaluated at degree
/// `d` with expansion constant `xi` (no interval membership check).
pub fn regime_bound_value(
    n: usize,
    k: usize,
    d: f64,
    xi: f64,
    j: u32,
    regime: Regime,
) -> (u64, f64) {
    let (nf, kf) = (n as f64, k as f64);
    let ln_n = nf.ln();
    let dj = d.powi(j as i32);
    match regime {
        Regime::A => {
            let lambda = ((nf / d.powi(2 * j as i32 + 1)) * ln_n).ceil().max(1.0);
            (lambda as u64, 20.0 * xi.powi(-2) * dj * lambda)
        }
        Regime::B => (1, 20.0 / xi * (nf / (kf * dj)) * ln_n),
        Regime::C => {
            let lambda = (((nf / d.powi(2 * j as i32)) * ln_n).ceil())
                .max(((kf / dj) * ln_n).ceil())
                .max(1.0);
            (lambda as u64, 20.0 * xi.powi(-2) * (dj / kf) * lambda)
        }
        Regime::D => (1, 20.0 / xi * (nf / dj) * ln_n),
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::domain(format!(
            "need 2 ≤ k ≤ n, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

fn check_xi(xi: f64) -> Result<()> {
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::domain(format!(
            "expansion constant must lie in (0, 1], got {xi}"
        )));
    }
    Ok(())
}

/// Every (regime, j) whose degree interval contains `d`, with Λ and bound
/// evaluated at expansion constant `xi`. Boundary degrees land in both
/// adjacent regimes. A collapsed regime (left border above right border)
/// is reported, without a bound, when `d` lies in its inverted gap — under
/// the enforced assumption d ≥ k this cannot happen (both gaps lie below
/// k), but the reporting keeps the classification faithful if the
/// assumption is ever relaxed.
pub fn classify_regime(n: usize, k: usize, d: f64, xi: f64) -> Result<Vec<RegimeBound>> {
    check_nk(n, k)?;
    check_xi(xi)?;
    if !(d >= k as f64) {
        return Err(Error::domain(format!(
            "connectivity assumption requires k ≤ d, got d = {d}, k = {k}"
        )));
    }
    if d > n as f64 {
        return Err(Error::domain(format!(
            "average degree d = {d} cannot exceed n = {n}"
        )));
    }
    // Interval borders are n^{1/(2j±1)}-style roots; beyond this index
    // every border is below 2 ≤ k ≤ d, so nothing more can match.
    let j_max = ((n as f64).log2() / 2.0).ceil() as u32 + 1;
    // Tolerance so that a d sitting exactly on a shared border (often
    // computed through powf by the caller) lands in both regimes.
    let eps = 1e-12;
    let mut out = Vec::new();
    for j in 1..=j_max {
        for regime in Regime::ALL {
            let (lo, hi, collapsed) = regime_interval(n, k, j, regime);
            let (lo_m, hi_m) = (lo.min(hi), lo.max(hi));
            let contains = d >= lo_m * (1.0 - eps) && d <= hi_m * (1.0 + eps);
            if !contains {
                continue;
            }
            if collapsed {
                out.push(RegimeBound {
                    regime,
                    j,
                    lambda: 1,
                    bound: None,
                    collapsed: true,
                });
            } else {
                let (lambda, bound) = regime_bound_value(n, k, d, xi, j, regime);
                out.push(RegimeBound {
                    regime,
                    j,
                    lambda,
                    bound: Some(bound),
                    collapsed: false,
                });
            }
        }
    }
    Ok(out)
}

/// The square-root cop-number bound for a ξ-expanding k-graph:
/// 20·ξ⁻²·√(n/k)·ln n.
pub fn meyniel_bound(n: usize, k: usize, xi: f64) -> Result<f64> {
    check_nk(n, k)?;
    check_xi(xi)?;
    Ok(20.0 * xi.powi(-2) * (n as f64 / k as f64).sqrt() * (n as f64).ln())
}

/// One evaluation of the two exponent curves at α (degree exponent) for a
/// fixed β (uniformity exponent).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZigzagPoint {
    pub alpha: f64,
    pub beta: f64,
    /// Exponent of the vertex-protecting bound (regimes a and d).
    pub f_vertex: f64,
    /// Exponent of the edge-protecting bound (regimes b and c).
    pub f_edge: f64,
    /// min(f_vertex, f_edge): the exponent of the best bound at α.
    pub f: f64,
}

/// Evaluates one α. The piece index comes from t = 1/α: ⌊t⌋ = 2j selects
/// the rising half-interval (1/(2j+1), 1/(2j)] where the vertex curve is
/// jα and the edge curve 1−jα−β; ⌊t⌋ = 2j−1 selects the falling
/// half-interval (1/(2j), 1/(2j−1)] where they are 1−jα and jα−β. The two
/// halves agree at shared borders, so floating-point jitter in ⌊1/α⌋ is
/// harmless.
pub fn zigzag_point(beta: f64, alpha: f64) -> Result<ZigzagPoint> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::domain(format!(
            "uniformity exponent beta must lie in (0, 1), got {beta}"
        )));
    }
    if !(alpha > beta && alpha < 1.0) {
        return Err(Error::domain(format!(
            "degree exponent alpha must lie in (beta, 1) = ({beta}, 1), got {alpha}"
        )));
    }
    let m = (1.0 / alpha).floor() as u64;
    let (f_vertex, f_edge) = if m.is_multiple_of(2) {
        let j = (m / 2) as f64;
        (j * alpha, 1.0 - j * alpha - beta)
    } else {
        let j = m.div_ceil(2) as f64;
        (1.0 - j * alpha, j * alpha - beta)
    };
    Ok(ZigzagPoint {
        alpha,
        beta,
        f_vertex,
        f_edge,
        f: f_vertex.min(f_edge),
    })
}

/// [`zigzag_point`] over a list of α values.
pub fn zigzag_curves(beta: f64, alphas: &[f64]) -> Result<Vec<ZigzagPoint>> {
    alphas.iter().map(|&a| zigzag_point(beta, a)).collect()
}

/// Which binomial tail bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    /// P(|X − EX| ≥ t) ≤ 2·exp(−t²/(2(EX + t/3)))
    TwoSided,
    /// P(X ≤ EX − t) ≤ exp(−t²/(2·EX))
    Lower,
    /// P(X ≤ a) ≤ exp(−4a), stated for a ≤ 10·EX (`t` is read as a).
    /// The derivation via the lower tail needs 10a ≤ EX; callers who want
    /// a true bound should stay in that range (the stated precondition is
    /// wider and is enforced as given).
    SmallA,
}

/// Upper bound on the requested binomial tail probability.
pub fn chernoff_tail(ex: f64, t: f64, which: TailKind) -> Result<f64> {
    if !(ex >= 0.0) {
        return Err(Error::domain(format!("mean must be ≥ 0, got {ex}")));
    }
    if !(t >= 0.0) {
        return Err(Error::domain(format!("deviation must be ≥ 0, got {t}")));
    }
    Ok(match which {
        TailKind::TwoSided => {
            if t == 0.0 {
                2.0
            } else {
                2.0 * (-t * t / (2.0 * (ex + t / 3.0))).exp()
            }
        }
        TailKind::Lower => {
            if t == 0.0 {
                1.0
            } else if ex == 0.0 {
                0.0
            } else {
                (-t * t / (2.0 * ex)).exp()
            }
        }
        TailKind::SmallA => {
            if t > 10.0 * ex {
                return Err(Error::domain(format!(
                    "small-count tail stated only for a ≤ 10·mean, got a = {t}, mean = {ex}"
                )));
            }
            (-4.0 * t).exp()
        }
    })
}
