//! Closed-form sharp frame bounds for the five window families on
//! rectangular lattices of integer density, in the `(eta, n)` chart.
//!
//! All formulas are stated for decay parameter 1; arbitrary decay reduces to
//! that case by a unitary dilation which maps the shape parameter to
//! `eta / gamma` for the sech window and `gamma * eta` for the exponential
//! families.  The constants here were cross-checked against the discrete
//! frame-operator model in [`crate::oracle`], which is exact for the box
//! window and agrees with these expressions to machine precision for the
//! smooth families.

use crate::hyperbolic::{coth, csch, csch_exp_neg, csch_exp_pos, tanh, x_over_one_minus_exp_neg};
use crate::series::{eval_f_a, eval_f_b, DEFAULT_EPS};
use crate::window::{BoundsValue, LatticeShape, WindowFamily, WindowSpec};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Sharp bounds for the normalized hyperbolic secant window at unit decay.
///
/// `A = n pi (f_A(eta/n) + f_A(1/eta)) - n` and
/// `B = n pi (f_B(n/eta) + f_B(eta)) + n`.  At critical density the lower
/// bound vanishes identically and the result carries the degeneracy flag.
pub fn sech_bounds(shape: &LatticeShape) -> Result<BoundsValue> {
    sech_bounds_with_eps(shape, DEFAULT_EPS)
}

/// [`sech_bounds`] with an explicit series tolerance.
pub fn sech_bounds_with_eps(shape: &LatticeShape, eps: f64) -> Result<BoundsValue> {
    let n = shape.n() as f64;
    let eta = shape.eta();
    let b1 = eval_f_b(n / eta, eps)?;
    let b2 = eval_f_b(eta, eps)?;
    let upper = n * PI * (b1.value + b2.value) + n;
    let tail_b = n * PI * (b1.tail_bound + b2.tail_bound);
    if shape.n() == 1 {
        // Balian-Low: A = 0 identically at critical density.
        return Ok(BoundsValue::degenerate(upper, tail_b));
    }
    let a1 = eval_f_a(eta / n, eps)?;
    let a2 = eval_f_a(1.0 / eta, eps)?;
    let lower = (n * PI * (a1.value + a2.value) - n).max(0.0);
    let tail_a = n * PI * (a1.tail_bound + a2.tail_bound);
    Ok(BoundsValue::framed(lower, upper, tail_a.max(tail_b)))
}

/// Cut-off exponential with support `1/b`:
/// `A = n r e^{-2 gamma a}` and `B = n r` with `r = 2 gamma a / (1 - e^{-2 gamma a})`.
///
/// At `gamma = 0` this is the box window and the frame is tight, `A = B = n`.
pub fn cutoff_m1_bounds(n: u32, a: f64, gamma: f64) -> Result<BoundsValue> {
    check_cutoff_args(n, a, gamma)?;
    let nf = n as f64;
    let x = 2.0 * gamma * a;
    let r = x_over_one_minus_exp_neg(x);
    Ok(BoundsValue::framed(nf * r * (-x).exp(), nf * r, 0.0))
}

/// Cut-off exponential with support `2/b`:
/// `A = n x (coth x - 1)(1 - sech y)` and `B = n x (coth x + 1)(1 + sech y)`
/// with `x = gamma a`, `y = gamma n a`.
///
/// At `gamma = 0` the lower bound degenerates to 0 and `B = 2n`.
pub fn cutoff_m2_bounds(n: u32, a: f64, gamma: f64) -> Result<BoundsValue> {
    check_cutoff_args(n, a, gamma)?;
    let nf = n as f64;
    if gamma == 0.0 {
        return Ok(BoundsValue::degenerate(2.0 * nf, 0.0));
    }
    let x = gamma * a;
    let y = gamma * nf * a;
    // x (coth x - 1) = 2 x e^{-2x} / (1 - e^{-2x}), stable at both ends
    let x_cm1 = x * csch_exp_neg(x);
    let x_cp1 = x * csch_exp_pos(x);
    let ey = (-y).exp();
    let sech_y = 2.0 * ey / (1.0 + ey * ey);
    // 1 - sech y = (1 - e^{-y})^2 / (1 + e^{-2y})
    let one_m = {
        let d = -(-y).exp_m1();
        d * d / (1.0 + ey * ey)
    };
    Ok(BoundsValue::framed(nf * x_cm1 * one_m, nf * x_cp1 * (1.0 + sech_y), 0.0))
}

/// Condition number of the support-`2/b` cut-off family,
/// `kappa = e^{2 gamma a} coth(gamma n a / 2)^2`.
pub fn cutoff_m2_kappa(n: u32, a: f64, gamma: f64) -> Result<f64> {
    check_cutoff_args(n, a, gamma)?;
    if gamma == 0.0 {
        return Ok(f64::INFINITY);
    }
    let c = coth(gamma * n as f64 * a / 2.0);
    Ok((2.0 * gamma * a).exp() * c * c)
}

/// One-sided exponential at unit decay:
/// `A = eta tanh(eta/2) csch(eta/n) e^{-eta/n}` and
/// `B = eta coth(eta/2) csch(eta/n) e^{eta/n}`.
///
/// The frame holds down to the critical density `n = 1`.
pub fn onesided_bounds(shape: &LatticeShape) -> Result<BoundsValue> {
    let eta = shape.eta();
    let t = eta / shape.n() as f64;
    let lower = eta * tanh(eta / 2.0) * csch_exp_neg(t);
    let upper = eta * coth(eta / 2.0) * csch_exp_pos(t);
    Ok(BoundsValue::framed(lower, upper, 0.0))
}

/// Condition number of the one-sided exponential,
/// `kappa = (coth(eta/2) e^{eta/n})^2`.
pub fn onesided_kappa(shape: &LatticeShape) -> f64 {
    let eta = shape.eta();
    let c = coth(eta / 2.0) * (eta / shape.n() as f64).exp();
    c * c
}

/// Two-sided exponential at unit decay, density at least 2:
/// `A = n tanh(eta/2) ((eta/n) csch(eta/n) - eta csch(eta))` and
/// `B = n coth(eta/2) ((eta/n) coth(eta/n) + eta csch(eta))`.
pub fn twosided_bounds(shape: &LatticeShape) -> Result<BoundsValue> {
    if shape.n() < 2 {
        return Err(Error::InvalidDensity {
            family: WindowFamily::TwoSided,
            n: shape.n(),
            min: 2,
        });
    }
    let n = shape.n() as f64;
    let eta = shape.eta();
    let t = eta / n;
    let lower = n * tanh(eta / 2.0) * (t * csch(t) - eta * csch(eta));
    let upper = n * coth(eta / 2.0) * (t * coth(t) + eta * csch(eta));
    Ok(BoundsValue::framed(lower, upper, 0.0))
}

/// Shape parameter minimizing the one-sided condition number: `arcsinh(n)`.
pub fn eta_kappa_onesided(n: u32) -> f64 {
    (n as f64).asinh()
}

/// Decay parameter minimizing the support-`2/b` cut-off condition number at
/// fixed lattice: `arcsinh(n) / (a n)`, i.e. the unique positive root of
/// `e^{2y} - 2 n e^{y} - 1` in `y = gamma n a`.
pub fn gamma_kappa_cutoff_m2(n: u32, a: f64) -> Result<f64> {
    if n == 0 || !(a > 0.0) {
        return Err(Error::Domain(format!("need n >= 1 and a > 0, got n = {n}, a = {a}")));
    }
    Ok((n as f64).asinh() / (a * n as f64))
}

/// Evaluate any family/lattice combination, applying the dilation reduction
/// for non-unit decay.  Cut-off families read the decay from the spec and the
/// time step from the shape.
pub fn bounds_for(window: &WindowSpec, shape: &LatticeShape) -> Result<BoundsValue> {
    bounds_for_with_eps(window, shape, DEFAULT_EPS)
}

/// [`bounds_for`] with an explicit series tolerance (only the sech family
/// consumes it).
pub fn bounds_for_with_eps(
    window: &WindowSpec,
    shape: &LatticeShape,
    eps: f64,
) -> Result<BoundsValue> {
    match window.family {
        WindowFamily::Sech => sech_bounds_with_eps(&shape.scaled(1.0 / window.gamma)?, eps),
        WindowFamily::OneSided => onesided_bounds(&shape.scaled(window.gamma)?),
        WindowFamily::TwoSided => twosided_bounds(&shape.scaled(window.gamma)?),
        WindowFamily::CutoffM1 => cutoff_m1_bounds(shape.n(), shape.a(), window.gamma),
        WindowFamily::CutoffM2 => cutoff_m2_bounds(shape.n(), shape.a(), window.gamma),
    }
}

fn check_cutoff_args(n: u32, a: f64, gamma: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("density n must be a positive integer".into()));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("lattice parameter a must be positive, got {a}")));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain(format!("gamma must be finite and nonnegative, got {gamma}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::window::LatticeShape;

    fn shape(n: u32, eta: f64) -> LatticeShape {
        LatticeShape::new(n, eta).unwrap()
    }

    #[test]
    fn sech_critical_density_degenerates() {
        for &eta in &[0.7, 1.0, 2.3] {
            let b = sech_bounds(&shape(1, eta)).unwrap();
            assert_eq!(b.lower, 0.0);
            assert!(b.degenerate);
            assert!(b.kappa.is_infinite());
            assert!(b.upper.is_finite() && b.upper > 0.0);
        }
    }

    #[test]
    fn sech_square_lattice_is_extremal_pointwise() {
        let opt = sech_bounds(&shape(2, 2f64.sqrt())).unwrap();
        for &eta in &[1.1, 1.9] {
            let off = sech_bounds(&shape(2, eta)).unwrap();
            assert!(opt.lower > off.lower);
            assert!(opt.upper < off.upper);
        }
    }

    #[test]
    fn sech_symmetry_under_lattice_transpose() {
        // eta <-> n / eta swaps a and b and leaves both bounds invariant
        let x = sech_bounds(&shape(3, 1.2)).unwrap();
        let y = sech_bounds(&shape(3, 3.0 / 1.2)).unwrap();
        assert!((x.lower - y.lower).abs() < 1e-10);
        assert!((x.upper - y.upper).abs() < 1e-10);
    }

    #[test]
    fn cutoff_m1_box_is_tight() {
        let b = cutoff_m1_bounds(3, 1.0, 0.0).unwrap();
        assert_eq!((b.lower, b.upper), (3.0, 3.0));
        assert!((b.kappa - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cutoff_m1_condition_number_is_exp() {
        for n in [1u32, 2, 5] {
            let b = cutoff_m1_bounds(n, 1.0, 1.0).unwrap();
            assert!((b.kappa - (2.0f64).exp()).abs() < 1e-12);
        }
        let b = cutoff_m1_bounds(2, 0.4, 1.7).unwrap();
        assert!((b.kappa - (2.0 * 0.4 * 1.7f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn cutoff_m1_monotone_in_gamma() {
        let lo = cutoff_m1_bounds(2, 1.0, 0.5).unwrap();
        let hi = cutoff_m1_bounds(2, 1.0, 1.0).unwrap();
        assert!(lo.lower > hi.lower);
        assert!(lo.upper < hi.upper);
    }

    #[test]
    fn cutoff_m2_limits_and_identity() {
        // gamma -> 0+: A -> 0 and B -> 2n
        let b = cutoff_m2_bounds(2, 1.0, 1e-6).unwrap();
        assert!(b.lower < 1e-5);
        assert!((b.upper - 4.0).abs() < 2e-4);
        let c = cutoff_m2_bounds(1, 1.0, 1e-6).unwrap();
        assert!((c.upper - 2.0).abs() < 1e-4);

        // kappa formula agrees with B / A
        let b = cutoff_m2_bounds(2, 0.7, 1.3).unwrap();
        let k = cutoff_m2_kappa(2, 0.7, 1.3).unwrap();
        assert!((k - b.kappa).abs() / k < 1e-12);
    }

    #[test]
    fn cutoff_m2_kappa_is_critical_at_arcsinh_point() {
        // central difference of kappa vanishes at gamma* = arcsinh(n)/(a n),
        // and does not at the golden-ratio point log((n+sqrt(n^2+4))/2)/(a n)
        for (n, a) in [(1u32, 1.0), (3, 1.0), (4, 0.5)] {
            let g = gamma_kappa_cutoff_m2(n, a).unwrap();
            let h = 5e-6 * g;
            let k = |g: f64| cutoff_m2_kappa(n, a, g).unwrap();
            let d = (k(g + h) - k(g - h)) / (2.0 * h);
            assert!(d.abs() < 1e-8, "kappa'({g}) = {d} for n = {n}, a = {a}");
            assert!(k(g) < k(g * 1.1) && k(g) < k(g * 0.9));

            let nf = n as f64;
            let golden = ((nf + (nf * nf + 4.0).sqrt()) / 2.0).ln() / (a * nf);
            let dg = (k(golden + h) - k(golden - h)) / (2.0 * h);
            assert!(dg.abs() > 1e-3, "golden-ratio point unexpectedly critical for n = {n}");
        }
    }

    #[test]
    fn gamma_kappa_scaling_in_a() {
        let g1 = gamma_kappa_cutoff_m2(3, 1.0).unwrap();
        let g2 = gamma_kappa_cutoff_m2(3, 2.0).unwrap();
        assert!((g1 / 2.0 - g2).abs() < 1e-15);
    }

    #[test]
    fn onesided_kappa_identity_and_min() {
        let s = shape(2, 1.0);
        let b = onesided_bounds(&s).unwrap();
        assert!((onesided_kappa(&s) - b.kappa).abs() / b.kappa < 1e-12);

        for n in [1u32, 2, 3] {
            let e = eta_kappa_onesided(n);
            let k0 = onesided_bounds(&shape(n, e)).unwrap().kappa;
            let kl = onesided_bounds(&shape(n, e - 0.1)).unwrap().kappa;
            let kr = onesided_bounds(&shape(n, e + 0.1)).unwrap().kappa;
            assert!(k0 < kl && k0 < kr);
        }
        assert!((eta_kappa_onesided(1) - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-15);
        assert!((eta_kappa_onesided(2) - (2.0 + 5f64.sqrt()).ln()).abs() < 1e-15);
    }

    #[test]
    fn onesided_exact_zak_values_at_critical_density() {
        // Independent closed form from the Zak transform at n = 1, eta = 1:
        // A = 2 e^{-2} / (1 + 1/e)^2, B = 2 / (1 - 1/e)^2.
        let b = onesided_bounds(&shape(1, 1.0)).unwrap();
        let e = std::f64::consts::E;
        assert!((b.lower - 2.0 * (-2.0f64).exp() / (1.0 + 1.0 / e).powi(2)).abs() < 1e-14);
        assert!((b.upper - 2.0 / (1.0 - 1.0 / e).powi(2)).abs() < 1e-13);
    }

    #[test]
    fn twosided_rejects_critical_density() {
        assert!(matches!(
            twosided_bounds(&shape(1, 2.0)),
            Err(Error::InvalidDensity { n: 1, .. })
        ));
    }

    #[test]
    fn twosided_positivity_and_blowup() {
        let b = twosided_bounds(&shape(2, 3.5)).unwrap();
        assert!(b.lower > 0.0 && b.upper > b.lower);
        assert!(twosided_bounds(&shape(2, 0.01)).unwrap().upper > 100.0);
        assert!(twosided_bounds(&shape(2, 50.0)).unwrap().upper > 10.0);
    }

    #[test]
    fn twosided_upper_bound_convex() {
        for &eta in &[2.0, 4.0, 8.0] {
            let h = 1e-3;
            let f = |e: f64| twosided_bounds(&shape(3, e)).unwrap().upper;
            let second = f(eta + h) - 2.0 * f(eta) + f(eta - h);
            assert!(second > 0.0, "second difference not positive at eta = {eta}");
        }
    }

    #[test]
    fn all_families_satisfy_lower_le_upper() {
        for n in 1..=8u32 {
            for i in 0..30 {
                let eta = 0.3 + 0.5 * i as f64;
                if n >= 2 {
                    let b = twosided_bounds(&shape(n, eta)).unwrap();
                    assert!(b.lower > 0.0 && b.lower <= b.upper);
                    let s = sech_bounds(&shape(n, eta)).unwrap();
                    assert!(s.lower >= 0.0 && s.lower <= s.upper);
                }
                let o = onesided_bounds(&shape(n, eta)).unwrap();
                assert!(o.lower > 0.0 && o.lower <= o.upper);
                let g = 0.1 + 0.2 * (i % 5) as f64;
                let c1 = cutoff_m1_bounds(n, eta / n as f64, g).unwrap();
                assert!(c1.lower > 0.0 && c1.lower <= c1.upper);
                let c2 = cutoff_m2_bounds(n, eta / n as f64, g).unwrap();
                assert!(c2.lower > 0.0 && c2.lower <= c2.upper);
            }
        }
    }

    #[test]
    fn dilation_chart_for_nonunit_gamma() {
        // exponential families: (gamma, eta) ~ (1, gamma * eta)
        let w = WindowSpec::new(WindowFamily::OneSided, 2.0).unwrap();
        let b = bounds_for(&w, &shape(2, 0.5)).unwrap();
        let r = onesided_bounds(&shape(2, 1.0)).unwrap();
        assert!((b.lower - r.lower).abs() < 1e-14);
        assert!((b.upper - r.upper).abs() < 1e-13);

        // sech: (gamma, eta) ~ (1, eta / gamma)
        let w = WindowSpec::new(WindowFamily::Sech, 2.0).unwrap();
        let b = bounds_for(&w, &shape(2, 2.0 * 2f64.sqrt())).unwrap();
        let r = sech_bounds(&shape(2, 2f64.sqrt())).unwrap();
        assert!((b.lower - r.lower).abs() < 1e-13);
    }
}
