//! Independent validation of the closed-form bounds through a finite
//! discrete Gabor frame operator.
//!
//! The continuous window is periodized over `T = L * dt`, sampled on the
//! integer grid `t_j = j dt`, scaled by `sqrt(dt)` so the discrete energy
//! matches the continuous one, and the extreme eigenvalues of the discrete
//! frame operator with steps `(a_d, b_d)` then estimate the continuous
//! bounds directly: the box window comes out exactly tight with `A = B = n`,
//! which pins the scaling once and for all.
//!
//! The lattice embeds exactly for any real shape parameter: with
//! `a_d = m`, `b_d = L / (n m)` and `dt = eta / (n m)`, the continuous steps
//! are `a = a_d dt` and `b = b_d / T` with no rounding, so the tested shape
//! equals the requested one.
//!
//! The operator couples only indices that agree modulo `L / b_d`, so it
//! splits into `L / b_d` real symmetric blocks of size `b_d`, each solved
//! densely.
//!
//! Windows with a jump are sampled twice, once with each one-sided closure
//! of the support interval; the two runs agree up to `O(dt)` and each grid
//! aligns exactly with one of the two spectral extremes, so the report takes
//! the lower bound from the left-closure run and the upper bound from the
//! right-closure one.

use crate::window::{LatticeShape, WindowFamily, WindowSpec};
use crate::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;
use std::f64::consts::PI;

/// Which closure of the support interval the jump samples take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpRule {
    /// Support closed on the right: zero at the left edge.
    LeftClosure,
    /// Support closed on the left: zero at the right edge.
    RightClosure,
}

/// Discretization of one continuous Gabor system.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiscreteGaborConfig {
    /// Signal length L; both steps divide it.
    pub signal_len: usize,
    /// Discrete time step a_d.
    pub time_step: usize,
    /// Discrete frequency step b_d.
    pub freq_step: usize,
    /// Period of the continuous model, T = L * sample_dt.
    pub period: f64,
    /// Sample spacing.
    pub sample_dt: f64,
}

impl DiscreteGaborConfig {
    /// Lattice density n = L / (a_d b_d).
    pub fn density(&self) -> usize {
        self.signal_len / (self.time_step * self.freq_step)
    }
}

/// Periodized, sampled, energy-normalized window.
#[derive(Debug, Clone)]
pub struct SampledWindow {
    /// `sqrt(dt) * sum_m g(t_j + m T)` for j = 0..L.
    pub samples: Vec<f64>,
    /// Discrete l2 norm of `samples` (close to 1 by construction).
    pub norm: f64,
    /// l2 norm of everything beyond the dominant periodization branch;
    /// bounds the energy the wrap-around added.
    pub alias_budget: f64,
}

/// Extreme eigenvalues of the discrete frame operator.
#[derive(Debug, Clone, Copy)]
pub struct FrameOperatorBounds {
    pub lower: f64,
    pub upper: f64,
    /// Set when the smallest eigenvalue sits below 1e-12 (near non-frame).
    pub degenerate_warning: bool,
}

/// Closed-form versus discrete bounds for one configuration.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub family: WindowFamily,
    pub gamma: f64,
    pub n: u32,
    pub eta_requested: f64,
    /// Equal to `eta_requested`: the embedding is exact.
    pub eta_tested: f64,
    #[serde(rename = "L")]
    pub signal_len: usize,
    #[serde(rename = "A")]
    pub closed_lower: f64,
    #[serde(rename = "B")]
    pub closed_upper: f64,
    #[serde(rename = "A_d")]
    pub discrete_lower: f64,
    #[serde(rename = "B_d")]
    pub discrete_upper: f64,
    #[serde(rename = "rel_err_A")]
    pub rel_err_lower: f64,
    #[serde(rename = "rel_err_B")]
    pub rel_err_upper: f64,
    pub alias_budget: f64,
    pub degenerate_warning: bool,
}

/// Acceptance tolerance on the relative errors, by family.
pub fn family_tolerance(family: WindowFamily) -> f64 {
    if family.is_discontinuous() {
        1e-2
    } else {
        1e-3
    }
}

fn round_even(x: f64) -> usize {
    let e = 2 * ((x / 2.0).round() as isize);
    e.max(2) as usize
}

fn even_floor(x: usize) -> usize {
    (x & !1usize).max(2)
}

/// Pick `(a_d, b_d)` for the requested budget `l_max`.
fn choose_grid(window: &WindowSpec, shape: &LatticeShape, l_max: usize) -> Result<(usize, usize)> {
    let n = shape.n() as usize;
    let eta = shape.eta();
    if n * 4 > l_max {
        return Err(Error::IncommensurableLattice(format!(
            "budget L = {l_max} too small for density n = {}",
            shape.n()
        )));
    }
    match window.family {
        WindowFamily::Sech | WindowFamily::TwoSided => {
            // balanced even steps; the grid then contains the symmetry points
            // of the frame-operator symbol and the discrete extremes agree
            // with the continuous ones up to the periodization tail
            let t_needed = match window.family {
                WindowFamily::Sech => 12.0 * window.gamma,
                _ => 36.0 / window.gamma,
            };
            let mut m = round_even((l_max as f64 / n as f64).sqrt());
            loop {
                if n * m * 2 > l_max {
                    if m > 2 {
                        m -= 2;
                        continue;
                    }
                    return Err(Error::IncommensurableLattice(format!(
                        "no even grid fits density {n} in L = {l_max}"
                    )));
                }
                let b_d = even_floor(l_max / (n * m));
                if (b_d as f64) * eta < t_needed && m > 2 {
                    m -= 2;
                    continue;
                }
                return Ok((m, b_d));
            }
        }
        WindowFamily::OneSided => {
            let t_needed = 30.0 / window.gamma;
            let b_d = ((t_needed / eta).ceil() as usize).clamp(4, l_max / n);
            let m = l_max / (n * b_d);
            if m == 0 {
                return Err(Error::IncommensurableLattice(format!(
                    "period floor {t_needed:.1} needs more than L = {l_max} samples"
                )));
            }
            Ok((m, b_d))
        }
        WindowFamily::CutoffM1 | WindowFamily::CutoffM2 => {
            let support_steps = if window.family == WindowFamily::CutoffM1 { 1 } else { 2 };
            let b_d = (support_steps + 2).max(3);
            let m = l_max / (n * b_d);
            if m == 0 {
                return Err(Error::IncommensurableLattice(format!(
                    "support needs {b_d} frequency steps, more than L = {l_max} allows"
                )));
            }
            Ok((m, b_d))
        }
    }
}

/// Window value at integer sample index `idx` (time `idx * dt`), observing
/// the jump rule at the support edges.  `edge` is the support width in
/// samples for the compactly supported families.
fn window_value(
    window: &WindowSpec,
    eta: f64,
    dt: f64,
    idx: i64,
    edge: i64,
    rule: JumpRule,
) -> f64 {
    let g = window.gamma;
    let t = idx as f64 * dt;
    match window.family {
        WindowFamily::Sech => {
            let x = PI * t.abs() / g;
            let e = (-x).exp();
            (PI / (2.0 * g)).sqrt() * 2.0 * e / (1.0 + e * e)
        }
        WindowFamily::TwoSided => g.sqrt() * (-g * t.abs()).exp(),
        WindowFamily::OneSided => {
            if idx < 0 || (idx == 0 && rule == JumpRule::LeftClosure) {
                0.0
            } else {
                (2.0 * g).sqrt() * (-g * t).exp()
            }
        }
        WindowFamily::CutoffM1 | WindowFamily::CutoffM2 => {
            let inside = match rule {
                JumpRule::LeftClosure => idx > 0 && idx <= edge,
                JumpRule::RightClosure => idx >= 0 && idx < edge,
            };
            if !inside {
                return 0.0;
            }
            let q = if window.family == WindowFamily::CutoffM1 { 1.0 } else { 2.0 };
            let w = q * eta;
            let c = if g == 0.0 {
                (1.0 / w).sqrt()
            } else {
                (2.0 * g / (-(-2.0 * g * w).exp_m1())).sqrt()
            };
            c * (-g * t).exp()
        }
    }
}

/// Periodize and sample the window for the given shape; the budget `l_max`
/// caps the signal length, and the actual length is the largest compatible
/// `n * a_d * b_d`.
pub fn sample_window(
    window: &WindowSpec,
    shape: &LatticeShape,
    l_max: usize,
    rule: JumpRule,
) -> Result<(SampledWindow, DiscreteGaborConfig)> {
    let (m, b_d) = choose_grid(window, shape, l_max)?;
    let n = shape.n() as usize;
    let len = n * m * b_d;
    let dt = shape.eta() / (n as f64 * m as f64);
    let config = DiscreteGaborConfig {
        signal_len: len,
        time_step: m,
        freq_step: b_d,
        period: len as f64 * dt,
        sample_dt: dt,
    };
    let support_steps = match window.family {
        WindowFamily::CutoffM1 => 1,
        WindowFamily::CutoffM2 => 2,
        _ => 0,
    };
    let edge = (support_steps * n * m) as i64;
    let mut samples = vec![0.0; len];
    let mut alias_sq = 0.0;
    let root_dt = dt.sqrt();
    for (j, s) in samples.iter_mut().enumerate() {
        let mut total = 0.0;
        let mut largest = 0.0f64;
        for wrap in -16i64..=16 {
            let idx = j as i64 + wrap * len as i64;
            let v = window_value(window, shape.eta(), dt, idx, edge, rule);
            total += v;
            if v.abs() > largest.abs() {
                largest = v;
            }
        }
        *s = root_dt * total;
        let excess = root_dt * (total - largest);
        alias_sq += excess * excess;
    }
    let norm = samples.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok((SampledWindow { samples, norm, alias_budget: alias_sq.sqrt() }, config))
}

/// Smallest and largest eigenvalue of the discrete frame operator, computed
/// blockwise over the residue classes modulo `L / b_d`.
pub fn frame_operator_bounds(
    window: &SampledWindow,
    config: &DiscreteGaborConfig,
) -> Result<FrameOperatorBounds> {
    let len = config.signal_len;
    if window.samples.len() != len {
        return Err(Error::Domain(format!(
            "sampled window has {} samples, config expects {len}",
            window.samples.len()
        )));
    }
    if len % config.time_step != 0 || len % config.freq_step != 0 {
        return Err(Error::Domain("lattice steps must divide the signal length".into()));
    }
    let block_count = len / config.freq_step; // residue classes mod L / b_d
    let block_size = config.freq_step;
    let shifts = len / config.time_step;
    let g = &window.samples;
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for class in 0..block_count {
        let w = DMatrix::from_fn(shifts, block_size, |k, r| {
            let idx = (class + r * block_count) as i64 - (k * config.time_step) as i64;
            g[idx.rem_euclid(len as i64) as usize]
        });
        let block = w.transpose() * &w * block_count as f64;
        let eig = SymmetricEigen::new(block);
        for ev in eig.eigenvalues.iter() {
            lower = lower.min(*ev);
            upper = upper.max(*ev);
        }
    }
    Ok(FrameOperatorBounds { lower, upper, degenerate_warning: lower < 1e-12 })
}

/// Run the discrete model against the closed form.
pub fn compare(window: &WindowSpec, shape: &LatticeShape, l_max: usize) -> Result<ComparisonReport> {
    compare_with_eps(window, shape, l_max, crate::series::DEFAULT_EPS)
}

/// [`compare`] with an explicit series tolerance for the closed form.
pub fn compare_with_eps(
    window: &WindowSpec,
    shape: &LatticeShape,
    l_max: usize,
    eps: f64,
) -> Result<ComparisonReport> {
    let closed = crate::bounds::bounds_for_with_eps(window, shape, eps)?;
    let (left_win, config) = sample_window(window, shape, l_max, JumpRule::LeftClosure)?;
    let left = frame_operator_bounds(&left_win, &config)?;
    let (discrete_lower, discrete_upper, alias_budget, warn) = if window.family.is_discontinuous()
    {
        let (right_win, right_cfg) = sample_window(window, shape, l_max, JumpRule::RightClosure)?;
        let right = frame_operator_bounds(&right_win, &right_cfg)?;
        (
            left.lower,
            right.upper,
            left_win.alias_budget.max(right_win.alias_budget),
            left.degenerate_warning || right.degenerate_warning,
        )
    } else {
        (left.lower, left.upper, left_win.alias_budget, left.degenerate_warning)
    };
    let rel = |discrete: f64, exact: f64| {
        if exact > 0.0 {
            (discrete - exact).abs() / exact
        } else {
            discrete.abs()
        }
    };
    Ok(ComparisonReport {
        family: window.family,
        gamma: window.gamma,
        n: shape.n(),
        eta_requested: shape.eta(),
        eta_tested: shape.eta(),
        signal_len: config.signal_len,
        closed_lower: closed.lower,
        closed_upper: closed.upper,
        discrete_lower,
        discrete_upper,
        rel_err_lower: rel(discrete_lower, closed.lower),
        rel_err_upper: rel(discrete_upper, closed.upper),
        alias_budget,
        degenerate_warning: warn,
    })
}
