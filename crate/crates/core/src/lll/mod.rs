//! Analytic side of the local-lemma bound for (1,j)-sets and its resampling
//! constructor.
//!
//! With `f(α) = (1+α)ln(1+α) - α`, `s(α) = min{1, f(α)}` and
//! `g(Δ) = ln(2e(Δ²+1))`, a graph with degree ratio `Γ = Δ/δ` has a
//! (1,j)-set of size at most `n·g(Δ)/(δ·s(α))` whenever
//! `j + 1 >= (1+α)·Γ·g(Δ)/s(α)` for some `α > 0`.

mod mt;

use std::f64::consts::E;

use serde::Serialize;
use thiserror::Error;

pub use mt::{mt_construct, mt_trials, summarize_trials, ClauseChoice, MtConfig, MtRun, TrialRecord, TrialSummary};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LllError {
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("j must be at least 1")]
    InvalidJ,
    #[error("premise infeasible: need j + 1 >= {threshold:.6}, got j = {j}")]
    PremiseInfeasible { j: usize, threshold: f64 },
    #[error("selection probability {p:.6} is not below 1")]
    InfeasibleProbability { p: f64 },
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error(
        "no (1,j)-set after {resamples} resamplings: {undominated} undominated, {overdominated} overdominated"
    )]
    DidNotTerminate { resamples: usize, undominated: usize, overdominated: usize },
}

fn f_raw(alpha: f64) -> f64 {
    (1.0 + alpha) * (1.0 + alpha).ln() - alpha
}

fn s_raw(alpha: f64) -> f64 {
    f_raw(alpha).min(1.0)
}

fn g_raw(delta: f64) -> f64 {
    (2.0 * E * (delta * delta + 1.0)).ln()
}

fn non_negative(alpha: f64) -> Result<(), LllError> {
    if alpha >= 0.0 {
        Ok(())
    } else {
        Err(LllError::Domain(format!("alpha = {alpha} is negative")))
    }
}

pub fn f_alpha(alpha: f64) -> Result<f64, LllError> {
    non_negative(alpha)?;
    Ok(f_raw(alpha))
}

pub fn s_alpha(alpha: f64) -> Result<f64, LllError> {
    non_negative(alpha)?;
    Ok(s_raw(alpha))
}

pub fn g_delta(delta: usize) -> Result<f64, LllError> {
    if delta == 0 {
        return Err(LllError::Domain("degree must be at least 1".into()));
    }
    Ok(g_raw(delta as f64))
}

fn check_degrees(delta_max: usize, delta_min: usize) -> Result<(), LllError> {
    if delta_min == 0 || delta_min > delta_max {
        return Err(LllError::Domain(format!("need 1 <= δ <= Δ, got δ = {delta_min}, Δ = {delta_max}")));
    }
    Ok(())
}

fn ratio(delta_max: usize, delta_min: usize) -> f64 {
    delta_max as f64 / delta_min as f64
}

/// Smallest `j + 1` for which some `α` satisfies the premise: `e·Γ·g(Δ)`.
pub fn premise_threshold(delta_max: usize, delta_min: usize) -> f64 {
    E * ratio(delta_max, delta_min) * g_raw(delta_max as f64)
}

/// Right-hand side of the premise, `(1+α)·Γ·g(Δ)/s(α)`.
fn premise_rhs(alpha: f64, delta_max: usize, delta_min: usize) -> f64 {
    (1.0 + alpha) * ratio(delta_max, delta_min) * g_raw(delta_max as f64) / s_raw(alpha)
}

/// Whether `α` satisfies the premise, up to `1e-9` relative slack.
pub fn premise_holds(j: usize, delta_max: usize, delta_min: usize, alpha: f64) -> bool {
    alpha > 0.0 && premise_rhs(alpha, delta_max, delta_min) <= (j + 1) as f64 * (1.0 + 1e-9)
}

/// Largest `α` satisfying the premise, or `None` when none does.
pub fn compute_alpha(j: usize, delta_max: usize, delta_min: usize) -> Result<Option<f64>, LllError> {
    if j == 0 {
        return Err(LllError::InvalidJ);
    }
    check_degrees(delta_max, delta_min)?;
    if ((j + 1) as f64) < premise_threshold(delta_max, delta_min) {
        return Ok(None);
    }
    Ok(Some((j + 1) as f64 / (ratio(delta_max, delta_min) * g_raw(delta_max as f64)) - 1.0))
}

/// Numerical counterpart of [`compute_alpha`] that does not rely on the
/// shape of the premise: locate the minimum of the right-hand side by a grid
/// scan, then bisect on the branch to its right.
pub fn compute_alpha_bisection(j: usize, delta_max: usize, delta_min: usize) -> Result<Option<f64>, LllError> {
    if j == 0 {
        return Err(LllError::InvalidJ);
    }
    check_degrees(delta_max, delta_min)?;
    let target = (j + 1) as f64;
    let rhs = |a: f64| premise_rhs(a, delta_max, delta_min);

    let steps = 20_000;
    let (mut lo, mut best) = (f64::NAN, f64::INFINITY);
    for k in 1..=steps {
        let a = 10.0 * k as f64 / steps as f64;
        let r = rhs(a);
        if r < best {
            (lo, best) = (a, r);
        }
    }
    if best > target {
        return Ok(None);
    }
    let mut hi = lo.max(1.0);
    while rhs(hi) <= target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if rhs(mid) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok(Some(lo))
}

/// Per-vertex selection probability `g(Δ)/(δ·s(α))`.
pub fn selection_probability(delta_max: usize, delta_min: usize, alpha: f64) -> Result<f64, LllError> {
    check_degrees(delta_max, delta_min)?;
    non_negative(alpha)?;
    let p = g_raw(delta_max as f64) / (delta_min as f64 * s_raw(alpha));
    if p >= 1.0 {
        return Err(LllError::InfeasibleProbability { p });
    }
    Ok(p)
}

/// Expected-size bound `n·p`.
pub fn predicted_bound(n: usize, delta_max: usize, delta_min: usize, alpha: f64) -> Result<f64, LllError> {
    Ok(n as f64 * selection_probability(delta_max, delta_min, alpha)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularBound {
    /// `e·g(d)`: the premise needs `j + 1` at least this large.
    pub premise_j_threshold: f64,
    /// Leading term `2·n·ln d / d` of the asymptotic bound.
    pub reference_bound: f64,
}

pub fn corollary_regular_bound(n: usize, d: usize) -> Result<RegularBound, LllError> {
    if d < 2 {
        return Err(LllError::Domain("degree must be at least 2".into()));
    }
    let d = d as f64;
    Ok(RegularBound {
        premise_j_threshold: E * g_raw(d),
        reference_bound: 2.0 * n as f64 * d.ln() / d,
    })
}

/// All derived quantities for one `(n, j, Δ, δ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LllParams {
    pub j: usize,
    pub delta_max: usize,
    pub delta_min: usize,
    pub gamma_ratio: f64,
    pub alpha: f64,
    pub p: f64,
    pub size_bound: f64,
    /// Concentration slack `sqrt(c·δ)/Δ`.
    pub epsilon: f64,
    pub c: f64,
}

impl LllParams {
    pub fn new(n: usize, j: usize, delta_max: usize, delta_min: usize, c: f64) -> Result<Self, LllError> {
        if c <= 0.0 {
            return Err(LllError::Domain(format!("c = {c} must be positive")));
        }
        let alpha = compute_alpha(j, delta_max, delta_min)?.ok_or(LllError::PremiseInfeasible {
            j,
            threshold: premise_threshold(delta_max, delta_min),
        })?;
        let p = selection_probability(delta_max, delta_min, alpha)?;
        Ok(Self {
            j,
            delta_max,
            delta_min,
            gamma_ratio: ratio(delta_max, delta_min),
            alpha,
            p,
            size_bound: n as f64 * p,
            epsilon: (c * delta_min as f64).sqrt() / delta_max as f64,
            c,
        })
    }
}
