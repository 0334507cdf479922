//! Numeric checkers for the hypotheses placed on the mean profile `p(λ)`
//! and on the space parameters by the convergence theorems.
//!
//! Two condition sets exist. The integrable/smooth set (`T1`) asks for
//! `∫ |p(λ)| λ^{(N-α0-1)/m} dλ < ∞`, `|p^{(j)}(λ)| <= C_j (1+λ)^{-j}` for
//! `j <= l`, `l > N(1/2 - 1/p0)`, `α0 = N/p0`, `2 <= p <= p0 < ∞` and
//! `β >= α0 + α + ε` with `ε = N(1/p - 1/p0)`. The bounded/continuous set
//! (`T2`) asks for `p` bounded and continuous on `[0, τ]`, `α0 > N/p0`,
//! `1 < p <= p0 <= 2` (or `p = p0 = 1`) and the same `β` bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means::{finite_difference, MeanFunction};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegrabilityCheck {
    pub finite: bool,
    /// Quadrature of the weighted profile on `[0, Λ]`.
    pub value: f64,
    /// Power of `λ` in the weight.
    pub exponent: f64,
    /// Empirical decay exponent of `|p|` on `[Λ, 4Λ]`; infinite when `p`
    /// vanishes there.
    pub decay_exponent: f64,
    pub reason: String,
}

pub const INTEGRABILITY_HORIZON: f64 = 1e3;
const DECAY_MARGIN: f64 = 0.1;

pub fn check_integrability(p: &MeanFunction, dim: usize, alpha0: f64, m: f64) -> Result<IntegrabilityCheck> {
    if dim < 1 || !(m >= 1.0) || !alpha0.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "integrability check needs N >= 1 and m >= 1 (N={dim}, m={m}, alpha0={alpha0})"
        )));
    }
    let exponent = (dim as f64 - alpha0 - 1.0) / m;
    let decay_exponent = tail_decay_exponent(p, INTEGRABILITY_HORIZON);
    if exponent <= -1.0 && p.evaluate(0.0).abs() > 0.0 {
        return Ok(IntegrabilityCheck {
            finite: false,
            value: f64::INFINITY,
            exponent,
            decay_exponent,
            reason: "divergence at 0".into(),
        });
    }
    let integrand = |l: f64| {
        if l <= 0.0 {
            0.0
        } else {
            p.evaluate(l).abs() * l.powf(exponent)
        }
    };
    let mut breaks = vec![0.0, 1e-3, 1e-2, 1e-1, 0.5, 1.0, 2.0, 10.0, 100.0];
    breaks.push(INTEGRABILITY_HORIZON);
    let value: f64 = breaks
        .windows(2)
        .map(|w| quadrature::double_exponential::integrate(integrand, w[0], w[1], 1e-12).integral)
        .sum();
    let threshold = exponent + 1.0 + DECAY_MARGIN;
    let finite = decay_exponent > threshold && value.is_finite();
    let reason = if !value.is_finite() {
        "quadrature diverged".into()
    } else if finite {
        format!("tail decay {decay_exponent:.3} exceeds {threshold:.3}")
    } else {
        format!("divergent tail: decay {decay_exponent:.3} <= {threshold:.3}")
    };
    Ok(IntegrabilityCheck {
        finite,
        value,
        exponent,
        decay_exponent,
        reason,
    })
}

/// Slope of the log-envelope of `|p|` over `[Λ, 4Λ]`, negated.
fn tail_decay_exponent(p: &MeanFunction, horizon: f64) -> f64 {
    const BINS: usize = 8;
    const PER_BIN: usize = 8;
    let total = BINS * PER_BIN;
    let span = 4f64.ln();
    let mut env = Vec::with_capacity(BINS);
    for b in 0..BINS {
        let mut best = 0.0f64;
        let mut at = horizon;
        for i in 0..PER_BIN {
            let l = horizon * (span * (b * PER_BIN + i) as f64 / (total - 1) as f64).exp();
            let v = p.evaluate(l).abs();
            if v > best || i == 0 {
                best = best.max(v);
                at = l;
            }
        }
        env.push((at, best));
    }
    if env.last().map(|e| e.1) == Some(0.0) {
        return f64::INFINITY;
    }
    let pts: Vec<(f64, f64)> = env
        .iter()
        .filter(|e| e.1 > 0.0)
        .map(|e| (e.0.ln(), e.1.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::INFINITY;
    }
    -least_squares_slope(&pts)
}

pub(crate) fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivativeDecayCheck {
    /// `C_j = sup |p^{(j)}(λ)| (1+λ)^j`, `j = 0..=l`.
    pub constants: Vec<f64>,
    pub pass: bool,
    /// Orders evaluated (anywhere) by finite differences.
    pub finite_difference_orders: Vec<usize>,
    pub diagnostics: Vec<String>,
}

const FD_STEP: f64 = 1e-3;
const DECADES: (i32, i32) = (-3, 4);
const PER_DECADE: usize = 200;
/// Extent of the dense scan used to detect breaks in smoothness.
const SMOOTHNESS_SCAN: f64 = 64.0;

fn decay_grid() -> Vec<f64> {
    let mut g = vec![0.0];
    let count = (DECADES.1 - DECADES.0) as usize * PER_DECADE;
    for i in 0..=count {
        g.push(10f64.powf(DECADES.0 as f64 + i as f64 / PER_DECADE as f64));
    }
    g
}

/// Checks `p ∈ C^l` together with `|p^{(j)}(λ)| <= C_j (1+λ)^{-j}`.
///
/// The constants are suprema over a log grid on `[10^-3, 10^4]` plus `λ = 0`.
/// A constant passes when it is finite and does not grow from the decade
/// `[10^2, 10^3]` to `[10^3, 10^4]`. Smoothness is probed on `[0, 64]`: where
/// finite differences are used for orders `1..=l+1`, the scan supremum is
/// recomputed with a quarter step; a break in `p^{(i)}` with `i <= l` makes
/// the order-`(i+1)` supremum grow by `4` or more, flagged above a factor 3.
pub fn check_derivative_decay(p: &MeanFunction, l: usize) -> DerivativeDecayCheck {
    let grid = decay_grid();
    let mut constants = Vec::with_capacity(l + 1);
    let mut diagnostics = Vec::new();
    let mut fd_orders = Vec::new();
    let mut pass = true;
    for j in 0..=l {
        let mut used_fd = false;
        let mut sup_all = 0.0f64;
        let mut sup_prev = 0.0f64;
        let mut sup_last = 0.0f64;
        let mut finite = true;
        for &lam in &grid {
            let (d, fd) = p.derivative_or_fd(j, lam, FD_STEP);
            used_fd |= fd;
            if !d.is_finite() {
                finite = false;
                break;
            }
            let w = d.abs() * (1.0 + lam).powi(j as i32);
            sup_all = sup_all.max(w);
            if (1e2..1e3).contains(&lam) {
                sup_prev = sup_prev.max(w);
            } else if lam >= 1e3 {
                sup_last = sup_last.max(w);
            }
        }
        if used_fd {
            fd_orders.push(j);
        }
        if !finite {
            pass = false;
            diagnostics.push(format!("order {j}: derivative evaluation failed (non-finite)"));
            constants.push(f64::INFINITY);
            continue;
        }
        if sup_last > sup_prev * 1.01 + 1e-12 {
            pass = false;
            diagnostics.push(format!(
                "order {j}: weighted derivative grows across the last decades ({sup_prev:.3e} -> {sup_last:.3e})"
            ));
        }
        constants.push(sup_all);
    }
    for j in 1..=l + 1 {
        if let Some(ratio) = smoothness_blowup(p, j) {
            pass = false;
            diagnostics.push(format!(
                "order {j}: finite-difference supremum grows by {ratio:.2} under step refinement; p is not C^{}",
                j - 1
            ));
        }
    }
    DerivativeDecayCheck {
        constants,
        pass,
        finite_difference_orders: fd_orders,
        diagnostics,
    }
}

/// Growth factor of the FD supremum of order `j` when the step shrinks
/// fourfold, if it indicates a break in smoothness.
fn smoothness_blowup(p: &MeanFunction, j: usize) -> Option<f64> {
    let coarse = FD_STEP;
    let fine = FD_STEP / 4.0;
    let mut lam = 0.0;
    let mut sup_c = 0.0f64;
    let mut sup_f = 0.0f64;
    let mut any_fd = false;
    let mut max_p = 0.0f64;
    while lam <= SMOOTHNESS_SCAN {
        if p.derivative(j, lam).is_none() {
            any_fd = true;
            let f = |x: f64| p.evaluate(x);
            let hc = coarse * (1.0 + lam);
            let hf = fine * (1.0 + lam);
            sup_c = sup_c.max(finite_difference(f, j, lam, hc).abs());
            sup_f = sup_f.max(finite_difference(f, j, lam, hf).abs());
        }
        max_p = max_p.max(p.evaluate(lam).abs());
        lam += fine * (1.0 + lam) / 8.0;
    }
    if !any_fd {
        return None;
    }
    // roundoff in the fine stencil, well above machine noise
    let noise = 1e4 * f64::EPSILON * max_p.max(1.0) / fine.powi(j as i32);
    if !sup_f.is_finite() || !sup_c.is_finite() {
        return Some(f64::INFINITY);
    }
    if sup_f > noise && sup_f > 3.0 * sup_c {
        Some(sup_f / sup_c)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem2Check {
    pub p_at_zero: f64,
    pub bounded: bool,
    pub sup_abs: f64,
    pub continuous: bool,
    pub max_jump: f64,
    pub pass: bool,
    pub note: String,
}

const CONTINUITY_POINTS: usize = 10_000;
const CONTINUITY_TOL: f64 = 1e-6;

/// `p(0) = 1`, `p ∈ L_∞`, `p ∈ C([0, τ])`.
///
/// Continuity is judged on a `10^4`-interval grid by the trend-corrected
/// jump `|Δ_i - Δ_{i-1}|` of adjacent differences, which is `O(h²)` for
/// smooth profiles and the jump height at a discontinuity.
pub fn check_theorem2(p: &MeanFunction, tau: f64) -> Result<Theorem2Check> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidParameter(format!("tau must be > 0, got {tau}")));
    }
    let p0 = p.evaluate(0.0);

    let sample_sup = |per_decade: usize| -> f64 {
        let mut sup = p.evaluate(0.0).abs();
        let count = 14 * per_decade;
        for i in 0..=count {
            let l = 10f64.powf(-6.0 + i as f64 / per_decade as f64);
            let v = p.evaluate(l).abs();
            if !v.is_finite() {
                return f64::INFINITY;
            }
            sup = sup.max(v);
        }
        sup
    };
    let sup_coarse = sample_sup(100);
    let sup_fine = sample_sup(400);
    let bounded = sup_coarse.is_finite() && sup_fine.is_finite() && sup_fine <= 1.5 * sup_coarse + 1e-12;

    let h = tau / CONTINUITY_POINTS as f64;
    let vals: Vec<f64> = (0..=CONTINUITY_POINTS).map(|i| p.evaluate(i as f64 * h)).collect();
    let diffs: Vec<f64> = vals.windows(2).map(|w| w[1] - w[0]).collect();
    let mut max_jump = diffs.first().map(|d| d.abs()).unwrap_or(0.0).min(f64::INFINITY);
    max_jump = diffs
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(if diffs.len() < 2 { max_jump } else { 0.0 }, f64::max);
    let continuous = vals.iter().all(|v| v.is_finite()) && max_jump < CONTINUITY_TOL;
    let pass = p0 == 1.0 && bounded && continuous;
    Ok(Theorem2Check {
        p_at_zero: p0,
        bounded,
        sup_abs: sup_fine,
        continuous,
        max_jump,
        pass,
        note: "continuity checked on the closed interval [0, tau]; the distribution form of this \
               condition uses the half-open [0, tau)"
            .into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremId {
    T1,
    T2,
}

/// Which norm family the conclusion is stated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    #[default]
    Liouville,
    Besov,
    Distribution,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisParameters {
    #[serde(rename = "N")]
    pub dim: usize,
    pub m: f64,
    pub p: f64,
    pub p0: f64,
    pub alpha: f64,
    pub alpha0: f64,
    /// Must equal `N(1/p - 1/p0)` when given.
    #[serde(default)]
    pub epsilon: Option<f64>,
    pub beta: f64,
    #[serde(default)]
    pub l: usize,
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default)]
    pub tau: Option<f64>,
    #[serde(default)]
    pub target: Target,
}

impl HypothesisParameters {
    pub fn epsilon(&self) -> f64 {
        self.dim as f64 * (recip(self.p) - recip(self.p0))
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if !(1..=3).contains(&self.dim) {
            return bad("N must be 1, 2 or 3");
        }
        if !(self.m >= 1.0) {
            return bad("m must be >= 1");
        }
        for (name, v) in [("p", self.p), ("p0", self.p0)] {
            if v.is_nan() || v < 1.0 {
                return Err(Error::InvalidParameter(format!("{name} must be >= 1, got {v}")));
            }
        }
        for (name, v) in [("alpha", self.alpha), ("alpha0", self.alpha0), ("beta", self.beta)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        if let Some(q) = self.q {
            if q.is_nan() || q < 1.0 {
                return bad("q must be >= 1");
            }
        }
        if let Some(e) = self.epsilon {
            if (e - self.epsilon()).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "epsilon {e} inconsistent with N(1/p - 1/p0) = {}",
                    self.epsilon()
                )));
            }
        }
        Ok(())
    }
}

fn recip(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub condition: String,
    pub formula: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisReport {
    pub theorem_id: TheoremId,
    pub mean: String,
    pub parameters: HypothesisParameters,
    pub alpha0_derived: f64,
    pub epsilon: f64,
    pub checks: Vec<ConditionCheck>,
    pub notes: Vec<String>,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&ConditionCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is serializable")
    }
}

fn check(condition: &str, formula: &str, lhs: f64, rhs: f64, pass: bool) -> ConditionCheck {
    ConditionCheck {
        condition: condition.into(),
        formula: formula.into(),
        lhs,
        rhs,
        pass,
    }
}

/// Evaluates every inequality of the selected condition set, together with
/// the numeric profile checks, one line each.
pub fn assemble_hypothesis_report(
    theorem: TheoremId,
    params: &HypothesisParameters,
    p: &MeanFunction,
) -> Result<HypothesisReport> {
    params.validate()?;
    let n = params.dim as f64;
    let eps = params.epsilon();
    let a0_derived = n / params.p0;
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    let besov = params.target == Target::Besov;
    let distribution = params.target == Target::Distribution;

    match theorem {
        TheoremId::T1 => {
            let p0v = p.evaluate(0.0);
            checks.push(check("p(0) = 1", "p(0) = 1", p0v, 1.0, p0v == 1.0));
            let integ = check_integrability(p, params.dim, params.alpha0, params.m)?;
            checks.push(check(
                "integrability",
                "int_0^inf |p(l)| l^((N-alpha0-1)/m) dl < inf",
                integ.value,
                f64::INFINITY,
                integ.finite,
            ));
            notes.push(format!("integrability: {}", integ.reason));
            let decay = check_derivative_decay(p, params.l);
            let cmax = decay.constants.iter().cloned().fold(0.0, f64::max);
            checks.push(check(
                "derivative decay",
                "|p^(j)(l)| <= C_j (1+l)^(-j), j = 0..l",
                cmax,
                f64::INFINITY,
                decay.pass,
            ));
            notes.extend(decay.diagnostics.iter().map(|d| format!("derivative decay: {d}")));
            let lbound = n * (0.5 - recip(params.p0));
            checks.push(check("l > N(1/2 - 1/p0)", "l > N(1/2 - 1/p0)", params.l as f64, lbound, params.l as f64 > lbound));
            checks.push(check(
                "alpha0 = N/p0",
                "alpha0 = N/p0",
                params.alpha0,
                a0_derived,
                (params.alpha0 - a0_derived).abs() <= 1e-12,
            ));
            checks.push(check("2 <= p", "2 <= p", params.p, 2.0, params.p >= 2.0));
            checks.push(check("p <= p0", "p <= p0", params.p, params.p0, params.p <= params.p0));
            checks.push(check("p0 < inf", "p0 < inf", params.p0, f64::INFINITY, params.p0.is_finite()));
        }
        TheoremId::T2 => {
            let tau = params.tau.unwrap_or(1.0);
            let t2 = check_theorem2(p, tau)?;
            checks.push(check("p(0) = 1", "p(0) = 1", t2.p_at_zero, 1.0, t2.p_at_zero == 1.0));
            checks.push(check("p bounded", "p in L_inf[0, inf)", t2.sup_abs, f64::INFINITY, t2.bounded));
            checks.push(check(
                "p continuous on [0, tau]",
                "p in C([0, tau])",
                t2.max_jump,
                CONTINUITY_TOL,
                t2.continuous,
            ));
            notes.push(t2.note.clone());
            checks.push(check(
                "alpha0 > N/p0",
                "alpha0 > N/p0",
                params.alpha0,
                a0_derived,
                params.alpha0 > a0_derived,
            ));
            let range_ok = (1.0 < params.p && params.p <= params.p0 && params.p0 <= 2.0)
                || (params.p == 1.0 && params.p0 == 1.0);
            checks.push(check(
                "1 < p <= p0 <= 2 or p = p0 = 1",
                "1 < p <= p0 <= 2 (or p = p0 = 1)",
                params.p,
                params.p0,
                range_ok,
            ));
        }
    }

    if besov {
        checks.push(check("alpha > 0", "alpha > 0", params.alpha, 0.0, params.alpha > 0.0));
        let q = params.q.unwrap_or(f64::INFINITY);
        checks.push(check("1 <= q < inf", "1 <= q < inf", q, f64::INFINITY, q >= 1.0 && q.is_finite()));
    } else {
        checks.push(check("alpha >= 0", "alpha >= 0", params.alpha, 0.0, params.alpha >= 0.0));
    }

    let beta_rhs = params.alpha0 + params.alpha + eps;
    if distribution && theorem == TheoremId::T1 {
        let rhs = params.alpha - params.alpha0 - eps;
        checks.push(check(
            "beta <= alpha - alpha0 - eps",
            "beta <= alpha - alpha0 - eps",
            params.beta,
            rhs,
            params.beta <= rhs + 1e-12,
        ));
        notes.push(format!(
            "function form beta >= alpha0 + alpha + eps: {} >= {} is {}",
            params.beta,
            beta_rhs,
            params.beta >= beta_rhs - 1e-12
        ));
    } else {
        checks.push(check(
            "beta >= alpha0 + alpha + eps",
            "beta >= alpha0 + alpha + eps",
            params.beta,
            beta_rhs,
            params.beta >= beta_rhs - 1e-12,
        ));
    }

    Ok(HypothesisReport {
        theorem_id: theorem,
        mean: p.label().to_string(),
        parameters: params.clone(),
        alpha0_derived: a0_derived,
        epsilon: eps,
        checks,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::means::{make_gaussian_mean, make_riesz_mean, make_smooth_cutoff_mean};

    #[test]
    fn integrability_examples() {
        let r = check_integrability(&make_riesz_mean(1.0).unwrap(), 1, 0.5, 2.0).unwrap();
        assert!(r.finite, "{r:?}");
        assert!(r.decay_exponent.is_infinite());
        let unit = MeanFunction::unit();
        let r = check_integrability(&unit, 3, 1.0, 2.0).unwrap();
        assert!(!r.finite);
        assert!(r.decay_exponent.abs() < 1e-9);
        // exponent (1 - 3 - 1)/1 = -3 <= -1
        let r = check_integrability(&make_gaussian_mean(), 1, 3.0, 1.0).unwrap();
        assert!(!r.finite);
        assert_eq!(r.reason, "divergence at 0");
        assert!(check_integrability(&unit, 1, 0.0, 0.5).is_err());
    }

    #[test]
    fn decay_exponent_of_power_law() {
        let p = MeanFunction::custom("power", |l| (1.0 + l).powf(-2.5));
        let r = check_integrability(&p, 1, 0.5, 2.0).unwrap();
        assert!((r.decay_exponent - 2.5).abs() < 0.01, "{r:?}");
        assert!(r.finite);
    }

    #[test]
    fn derivative_decay_examples() {
        let g = check_derivative_decay(&make_gaussian_mean(), 2);
        assert!(g.pass, "{g:?}");
        assert!((g.constants[0] - 1.0).abs() < 1e-15);
        let ind = check_derivative_decay(&make_riesz_mean(0.0).unwrap(), 1);
        assert!(!ind.pass, "{ind:?}");
        let cut = check_derivative_decay(&make_smooth_cutoff_mean(1.0).unwrap(), 3);
        assert!(cut.pass, "{cut:?}");
        assert!(cut.finite_difference_orders.is_empty());
    }

    #[test]
    fn derivative_decay_sees_kinks_and_growth() {
        // Riesz s=1 has a kink at 1: C^0 but not C^1
        assert!(check_derivative_decay(&make_riesz_mean(1.0).unwrap(), 0).pass);
        assert!(!check_derivative_decay(&make_riesz_mean(1.0).unwrap(), 1).pass);
        // s = 2.5 is C^2
        assert!(check_derivative_decay(&make_riesz_mean(2.5).unwrap(), 2).pass);
        let grow = MeanFunction::custom("grow", |l| 1.0 + l);
        assert!(!check_derivative_decay(&grow, 0).pass);
        // bounded, but p' ~ l^{-1/2} only
        let osc = MeanFunction::custom("osc", |l: f64| l.sqrt().cos());
        assert!(!check_derivative_decay(&osc, 1).pass);
    }

    #[test]
    fn theorem2_examples() {
        let r = check_theorem2(&make_riesz_mean(0.0).unwrap(), 0.5).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(check_theorem2(&make_gaussian_mean(), 1.0).unwrap().pass);
        let bad = MeanFunction::custom("pole", |l| 1.0 / (l - 1.0));
        let r = check_theorem2(&bad, 0.5).unwrap();
        assert!(!r.bounded);
        assert!(!r.pass);
        let r = check_theorem2(&make_riesz_mean(0.0).unwrap(), 2.0).unwrap();
        assert!(!r.continuous);
    }

    fn t1_params() -> HypothesisParameters {
        HypothesisParameters {
            dim: 1,
            m: 2.0,
            p: 2.0,
            p0: 2.0,
            alpha: 0.5,
            alpha0: 0.5,
            epsilon: Some(0.0),
            beta: 1.0,
            l: 1,
            q: None,
            tau: None,
            target: Target::Liouville,
        }
    }

    #[test]
    fn t1_report_passes_and_fails_on_beta() {
        let r = assemble_hypothesis_report(TheoremId::T1, &t1_params(), &make_gaussian_mean()).unwrap();
        assert!(r.all_pass(), "{:?}", r.failed());
        let mut p = t1_params();
        p.beta = 0.9;
        let r = assemble_hypothesis_report(TheoremId::T1, &p, &make_gaussian_mean()).unwrap();
        let failed = r.failed();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].condition, "beta >= alpha0 + alpha + eps");
    }

    #[test]
    fn t2_report() {
        let mut p = t1_params();
        p.alpha0 = 0.6;
        p.beta = 1.1;
        p.tau = Some(0.5);
        let r = assemble_hypothesis_report(TheoremId::T2, &p, &make_riesz_mean(0.0).unwrap()).unwrap();
        assert!(r.all_pass(), "{:?}", r.failed());
        p.alpha0 = 0.5;
        let r = assemble_hypothesis_report(TheoremId::T2, &p, &make_riesz_mean(0.0).unwrap()).unwrap();
        assert_eq!(r.failed()[0].condition, "alpha0 > N/p0");
    }

    #[test]
    fn inconsistent_records_rejected() {
        let mut p = t1_params();
        p.epsilon = Some(0.3);
        assert!(assemble_hypothesis_report(TheoremId::T1, &p, &make_gaussian_mean()).is_err());
        let mut p = t1_params();
        p.p = 0.5;
        assert!(assemble_hypothesis_report(TheoremId::T1, &p, &make_gaussian_mean()).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = assemble_hypothesis_report(TheoremId::T1, &t1_params(), &make_gaussian_mean()).unwrap();
        let v = r.to_json();
        let first = &v["checks"][0];
        for key in ["condition", "formula", "lhs", "rhs", "pass"] {
            assert!(first.get(key).is_some(), "missing {key}");
        }
    }
}
