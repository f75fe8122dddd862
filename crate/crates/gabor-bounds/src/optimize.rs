//! Critical lattice shapes for each window family and density.
//!
//! Every optimum handled here is a simple sign change of an analytic
//! derivative inside a proven bracket, so plain bisection is exact in
//! spirit: the derivative expressions are closed-form, the brackets come
//! from the per-family analysis, and a missing sign change is reported as
//! an error rather than papered over.

use crate::bounds::{cutoff_m2_bounds, cutoff_m2_kappa, sech_bounds_with_eps, twosided_bounds};
use crate::hyperbolic::{coth, csch, csch_exp_neg, csch_exp_pos, sech, tanh};
use crate::series::{eval_h_a, eval_h_b, DEFAULT_EPS};
use crate::window::{LatticeShape, WindowFamily, WindowSpec};
use crate::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;
use std::str::FromStr;

/// Which frame quantity an optimum refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    LowerBound,
    UpperBound,
    ConditionNumber,
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lower" | "a" => Ok(Quantity::LowerBound),
            "upper" | "b" => Ok(Quantity::UpperBound),
            "kappa" | "cond" | "condition" => Ok(Quantity::ConditionNumber),
            other => Err(Error::Domain(format!("unknown quantity `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

/// A located critical point of one quantity in the shape parameter (or, for
/// the cut-off family, in the decay parameter).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriticalPoint {
    pub quantity: Quantity,
    /// Location of the optimum (physical units, after undoing any dilation).
    pub eta_star: f64,
    /// Bracket the bisection started from.
    pub bracket: (f64, f64),
    /// |derivative| at the returned point, in the reduced chart.
    pub residual: f64,
    pub kind: ExtremumKind,
}

/// Interval guaranteed to contain all two-sided optimizers at density `n`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SearchWindow {
    pub n: u32,
    pub lo: f64,
    pub hi: f64,
}

/// The proven two-sided search interval: `(2.38, 4.2)` for n = 2,
/// `(3.3, 4.8)` for n = 3, `(max{3.08, acosh n}, min{4n/3, 4 acosh n})` for
/// 4 <= n <= 10 and `(acosh n, 4 acosh n)` from n = 11 on.
pub fn search_window_two_sided(n: u32) -> Result<SearchWindow> {
    if n < 2 {
        return Err(Error::InvalidDensity { family: WindowFamily::TwoSided, n, min: 2 });
    }
    let half_eta_n = (n as f64).acosh(); // eta_n / 2 with eta_n = 2 acosh n
    let (lo, hi) = match n {
        2 => (2.38, 4.2),
        3 => (3.3, 4.8),
        4..=10 => (half_eta_n.max(3.08), (4.0 * n as f64 / 3.0).min(4.0 * half_eta_n)),
        _ => (half_eta_n, 4.0 * half_eta_n),
    };
    Ok(SearchWindow { n, lo, hi })
}

/// Analytic derivative in `eta` of the chosen quantity, reduced chart
/// (unit decay).  Cut-off families vary in the decay parameter instead; see
/// [`cutoff_m2_gamma_derivative`].
pub fn derivative_of_bound(
    window: &WindowSpec,
    quantity: Quantity,
    n: u32,
    eta: f64,
) -> Result<f64> {
    if !(eta > 0.0) {
        return Err(Error::Domain(format!("eta must be positive, got {eta}")));
    }
    match window.family {
        WindowFamily::Sech => sech_derivative(quantity, n, eta, DEFAULT_EPS),
        WindowFamily::OneSided => Ok(onesided_derivative(quantity, n, eta)),
        WindowFamily::TwoSided => twosided_derivative(quantity, n, eta),
        WindowFamily::CutoffM1 | WindowFamily::CutoffM2 => Err(Error::Domain(
            "cut-off families vary in gamma; use cutoff_m2_gamma_derivative".into(),
        )),
    }
}

fn sech_derivative(quantity: Quantity, n: u32, eta: f64, eps: f64) -> Result<f64> {
    let nf = n as f64;
    let scale = nf * PI / eta;
    match quantity {
        Quantity::LowerBound => {
            let d = eval_h_a(eta / nf, eps)?.value - eval_h_a(1.0 / eta, eps)?.value;
            Ok(scale * d)
        }
        Quantity::UpperBound => {
            let d = eval_h_b(eta, eps)?.value - eval_h_b(nf / eta, eps)?.value;
            Ok(scale * d)
        }
        Quantity::ConditionNumber => {
            if n < 2 {
                return Err(Error::InvalidDensity { family: WindowFamily::Sech, n, min: 2 });
            }
            let b = sech_bounds_with_eps(&LatticeShape::new(n, eta)?, eps)?;
            let da = sech_derivative(Quantity::LowerBound, n, eta, eps)?;
            let db = sech_derivative(Quantity::UpperBound, n, eta, eps)?;
            Ok(b.kappa * (db / b.upper - da / b.lower))
        }
    }
}

fn onesided_derivative(quantity: Quantity, n: u32, eta: f64) -> f64 {
    let nf = n as f64;
    let t = eta / nf;
    match quantity {
        Quantity::LowerBound => {
            let bracket = 1.0 + eta * csch(eta) - t - t * coth(t);
            csch_exp_neg(t) * tanh(eta / 2.0) * bracket
        }
        Quantity::UpperBound => {
            let bracket = 1.0 + t - t * coth(t) - eta * csch(eta);
            csch_exp_pos(t) * coth(eta / 2.0) * bracket
        }
        Quantity::ConditionNumber => {
            let c = csch(eta / 2.0);
            (1.0 / nf) * coth(eta / 2.0) * c * c * (2.0 * t).exp() * (eta.sinh() - nf)
        }
    }
}

fn twosided_derivative(quantity: Quantity, n: u32, eta: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidDensity { family: WindowFamily::TwoSided, n, min: 2 });
    }
    let nf = n as f64;
    let t = eta / nf;
    // f(t) = t csch t, f'(t) = csch(t) (1 - t coth t)
    let fp = |x: f64| csch(x) * (1.0 - x * coth(x));
    match quantity {
        Quantity::LowerBound => {
            let psi = t * csch(t) - eta * csch(eta);
            let psi_p = fp(t) / nf - fp(eta);
            let s = sech(eta / 2.0);
            Ok(nf * (0.5 * s * s * psi + tanh(eta / 2.0) * psi_p))
        }
        Quantity::UpperBound => {
            let h = t * coth(t) + eta * csch(eta);
            let ct = csch(t);
            let ce = csch(eta);
            let hp = coth(t) / nf + ce - eta * (ct * ct / (nf * nf) + ce * coth(eta));
            let c2 = csch(eta / 2.0);
            Ok(nf * (-0.5 * c2 * c2 * h + coth(eta / 2.0) * hp))
        }
        Quantity::ConditionNumber => {
            let b = twosided_bounds(&LatticeShape::new(n, eta)?)?;
            let da = twosided_derivative(Quantity::LowerBound, n, eta)?;
            let db = twosided_derivative(Quantity::UpperBound, n, eta)?;
            Ok(b.kappa * (db / b.upper - da / b.lower))
        }
    }
}

/// d/dgamma of the chosen quantity for the support-`2/b` cut-off family at
/// fixed `(n, a)`.
pub fn cutoff_m2_gamma_derivative(
    quantity: Quantity,
    n: u32,
    a: f64,
    gamma: f64,
) -> Result<f64> {
    if !(gamma > 0.0) || !(a > 0.0) || n == 0 {
        return Err(Error::Domain(format!(
            "need gamma > 0, a > 0, n >= 1; got gamma = {gamma}, a = {a}, n = {n}"
        )));
    }
    let nf = n as f64;
    let x = gamma * a;
    let y = gamma * nf * a;
    match quantity {
        Quantity::LowerBound => {
            let log_d = a * (1.0 / x - 1.0 - coth(x) + nf * coth(y / 2.0) * sech(y));
            Ok(cutoff_m2_bounds(n, a, gamma)?.lower * log_d)
        }
        Quantity::UpperBound => {
            let log_d = a * (1.0 + 1.0 / x - coth(x) - nf * sech(y) * tanh(y / 2.0));
            Ok(cutoff_m2_bounds(n, a, gamma)?.upper * log_d)
        }
        Quantity::ConditionNumber => {
            let log_d = 2.0 * a * (1.0 - nf * csch(y));
            Ok(cutoff_m2_kappa(n, a, gamma)? * log_d)
        }
    }
}

/// Bisection on a bracketed sign change, to an interval of width 1e-12.
fn bisect(
    mut f: impl FnMut(f64) -> Result<f64>,
    bracket: (f64, f64),
    what: &str,
) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = bracket;
    let flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok((lo, 0.0));
    }
    if fhi == 0.0 {
        return Ok((hi, 0.0));
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoSignChange { what: what.into(), lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-12 || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok((mid, 0.0));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    Ok((root, f(root)?.abs()))
}

/// Locate the unique optimum of `quantity` in the shape parameter for the
/// eta-parametrized families.  The result is mapped back to physical units
/// when the window has non-unit decay.
pub fn find_critical_point(
    window: &WindowSpec,
    quantity: Quantity,
    n: u32,
) -> Result<CriticalPoint> {
    let (bracket, kind) = eta_bracket(window.family, quantity, n)?;
    let label = format!("{} {:?} at n = {n}", window.family, quantity);
    let (root, residual) =
        bisect(|eta| derivative_of_bound(window, quantity, n, eta), bracket, &label)?;
    // undo the dilation reduction: exponentials scale eta by 1/gamma,
    // the sech window by gamma
    let chart = match window.family {
        WindowFamily::Sech => window.gamma,
        _ => 1.0 / window.gamma,
    };
    Ok(CriticalPoint {
        quantity,
        eta_star: root * chart,
        bracket: (bracket.0 * chart, bracket.1 * chart),
        residual,
        kind,
    })
}

fn eta_bracket(
    family: WindowFamily,
    quantity: Quantity,
    n: u32,
) -> Result<((f64, f64), ExtremumKind)> {
    let nf = n as f64;
    match family {
        WindowFamily::Sech => {
            let min_n = if quantity == Quantity::UpperBound { 1 } else { 2 };
            if n < min_n {
                return Err(Error::InvalidDensity { family, n, min: min_n });
            }
            let s = nf.sqrt();
            let kind = if quantity == Quantity::LowerBound {
                ExtremumKind::Max
            } else {
                ExtremumKind::Min
            };
            Ok(((0.55 * s, 1.8 * s), kind))
        }
        WindowFamily::OneSided => {
            let c = nf.asinh();
            match quantity {
                Quantity::LowerBound => Ok(((0.5, c), ExtremumKind::Max)),
                Quantity::UpperBound => Ok(((c, 2.0 * nf), ExtremumKind::Min)),
                Quantity::ConditionNumber => Ok(((0.5 * c, c + 1.0), ExtremumKind::Min)),
            }
        }
        WindowFamily::TwoSided => {
            let w = search_window_two_sided(n)?;
            let kind = if quantity == Quantity::LowerBound {
                ExtremumKind::Max
            } else {
                ExtremumKind::Min
            };
            Ok(((w.lo, w.hi), kind))
        }
        WindowFamily::CutoffM1 => Err(Error::NoOptimizer(
            "the support-1/b cut-off degenerates: the box limit gamma -> 0 is optimal".into(),
        )),
        WindowFamily::CutoffM2 => Err(Error::Domain(
            "the support-2/b cut-off optimizes in gamma; use find_critical_gamma_cutoff_m2".into(),
        )),
    }
}

/// Critical decay parameter of the support-`2/b` cut-off family at fixed
/// `(n, a)`.  The upper bound has no optimum for n in {1, 2}; for n >= 3 the
/// returned point is the local (candidate global) minimum.
pub fn find_critical_gamma_cutoff_m2(
    quantity: Quantity,
    n: u32,
    a: f64,
) -> Result<CriticalPoint> {
    if n == 0 || !(a > 0.0) {
        return Err(Error::Domain(format!("need n >= 1, a > 0; got n = {n}, a = {a}")));
    }
    let na = n as f64 * a;
    let (bracket, kind) = match quantity {
        Quantity::LowerBound => ((1e-3 / na, 1e3 / na), ExtremumKind::Max),
        Quantity::UpperBound => {
            if n < 3 {
                return Err(Error::NoOptimizer(format!(
                    "upper bound strictly increasing in gamma for n = {n}; the box limit is optimal"
                )));
            }
            let golden = ((1.0 + 5f64.sqrt()) / 2.0).acosh();
            ((golden / na, 50.0 / na), ExtremumKind::Min)
        }
        Quantity::ConditionNumber => {
            let g = (n as f64).asinh() / na;
            ((0.5 * g, 2.0 * g), ExtremumKind::Min)
        }
    };
    let label = format!("cutoff2 {:?} in gamma at n = {n}, a = {a}", quantity);
    let (root, residual) =
        bisect(|g| cutoff_m2_gamma_derivative(quantity, n, a, g), bracket, &label)?;
    Ok(CriticalPoint { quantity, eta_star: root, bracket, residual, kind })
}

/// The relative positions of the three optima for one family and density.
#[derive(Debug, Clone, Serialize)]
pub struct OrderingReport {
    pub family: WindowFamily,
    pub n: u32,
    /// Maximizer of the lower bound.
    pub eta_lower: f64,
    /// Minimizer of the upper bound.
    pub eta_upper: f64,
    /// Minimizer of the condition number.
    pub eta_kappa: f64,
    /// The separating reference point: `arcsinh n` for the one-sided family,
    /// `2 acosh n` for the two-sided one.
    pub reference: f64,
    /// Whether the reference point separates the bound optima
    /// (`eta_lower < ref < eta_upper`, resp. `eta_upper < ref < eta_lower`).
    pub reference_separates: bool,
    /// The strict ordering the proofs guarantee for this family/density.
    pub ordering_holds: bool,
}

/// Check the proved orderings of the three optima.
///
/// One-sided: `eta_A < arcsinh n < eta_B`, with the condition number minimal
/// exactly at `arcsinh n`.  Two-sided: `eta_B < eta_kappa < eta_A`, and for
/// n >= 4 the reference `2 acosh n` separates `eta_B` from `eta_A` as well.
pub fn verify_ordering(window: &WindowSpec, n: u32) -> Result<OrderingReport> {
    match window.family {
        WindowFamily::OneSided | WindowFamily::TwoSided => {}
        _ => {
            return Err(Error::Domain(format!(
                "ordering report applies to the one- and two-sided families, not {}",
                window.family
            )))
        }
    }
    let chart = 1.0 / window.gamma;
    let lower = find_critical_point(window, Quantity::LowerBound, n)?;
    let upper = find_critical_point(window, Quantity::UpperBound, n)?;
    let kappa = find_critical_point(window, Quantity::ConditionNumber, n)?;
    let (reference, reference_separates, ordering_holds) = match window.family {
        WindowFamily::OneSided => {
            let r = (n as f64).asinh() * chart;
            let sep = lower.eta_star < r && r < upper.eta_star;
            (r, sep, sep && (kappa.eta_star - r).abs() < 1e-9 * r.max(1.0))
        }
        WindowFamily::TwoSided => {
            let r = 2.0 * (n as f64).acosh() * chart;
            let sep = upper.eta_star < r && r < lower.eta_star;
            let holds = upper.eta_star < kappa.eta_star && kappa.eta_star < lower.eta_star;
            (r, sep, holds && (n < 4 || sep))
        }
        _ => unreachable!(),
    };
    Ok(OrderingReport {
        family: window.family,
        n,
        eta_lower: lower.eta_star,
        eta_upper: upper.eta_star,
        eta_kappa: kappa.eta_star,
        reference,
        reference_separates,
        ordering_holds,
    })
}
