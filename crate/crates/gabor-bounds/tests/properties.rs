//! Property tests: enclosure soundness of the interval DSL and the
//! structural invariants of the closed-form bounds.

use gabor_bounds::bounds::{
    bounds_for, cutoff_m1_bounds, cutoff_m2_bounds, cutoff_m2_kappa, onesided_bounds,
    onesided_kappa, sech_bounds,
};
use gabor_bounds::expr::Expr;
use gabor_bounds::interval::Interval;
use gabor_bounds::{LatticeShape, WindowFamily, WindowSpec};
use proptest::prelude::*;

/// Random expressions built from total nodes only, so every evaluation
/// succeeds on any domain.
fn total_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Var),
        (-3.0..3.0f64).prop_map(Expr::Const),
        Just(Expr::Pi),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(a.into(), b.into())),
            inner.clone().prop_map(|a| Expr::Neg(a.into())),
            (inner.clone(), 1..3i32).prop_map(|(a, k)| Expr::Powi(a.into(), k)),
            inner.clone().prop_map(|a| Expr::Tanh(a.into())),
            inner.clone().prop_map(|a| Expr::Sech(a.into())),
            inner.clone().prop_map(|a| Expr::Asinh(a.into())),
            // keep exp/sinh/cosh shallow in the tree to avoid overflow
            inner.prop_map(|a| Expr::Cosh(Box::new(Expr::Tanh(a.into())))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn enclosures_contain_point_evaluations(
        e in total_expr(),
        lo in -2.0..2.0f64,
        width in 0.01..2.0f64,
        frac in 0.0..1.0f64,
    ) {
        let x = Interval::new(lo, lo + width).unwrap();
        let enc = e.eval(x).unwrap();
        let t = lo + frac * width;
        let v = e.eval_point(t);
        prop_assert!(v.is_nan() || enc.contains(v), "{} not in [{}, {}]", v, enc.lo(), enc.hi());
    }

    #[test]
    fn enclosures_are_inclusion_monotone(
        e in total_expr(),
        lo in -2.0..2.0f64,
        width in 0.01..2.0f64,
        cut_lo in 0.0..0.49f64,
        cut_hi in 0.51..1.0f64,
    ) {
        let outer = Interval::new(lo, lo + width).unwrap();
        let inner = Interval::new(lo + cut_lo * width, lo + cut_hi * width).unwrap();
        let enc_outer = e.eval(outer).unwrap();
        let enc_inner = e.eval(inner).unwrap();
        prop_assert!(enc_inner.is_subset_of(&enc_outer));
    }

    #[test]
    fn bounds_are_ordered_for_every_family(
        n in 1u32..9,
        eta in 0.2..8.0f64,
        gamma in 0.2..3.0f64,
    ) {
        let shape = LatticeShape::new(n, eta).unwrap();
        for family in [
            WindowFamily::Sech,
            WindowFamily::CutoffM1,
            WindowFamily::CutoffM2,
            WindowFamily::OneSided,
            WindowFamily::TwoSided,
        ] {
            if family == WindowFamily::TwoSided && n < 2 {
                continue;
            }
            let w = WindowSpec::new(family, gamma).unwrap();
            let b = bounds_for(&w, &shape).unwrap();
            prop_assert!(b.lower >= 0.0, "{family}: negative lower bound");
            prop_assert!(b.lower <= b.upper, "{family}: A > B at n={n} eta={eta}");
            if b.lower > 0.0 {
                prop_assert!((b.kappa - b.upper / b.lower).abs() <= 1e-12 * b.kappa);
            }
            let positive_needs = family.min_frame_density();
            if n >= positive_needs && !(family == WindowFamily::CutoffM2 && gamma == 0.0) {
                prop_assert!(b.lower > 0.0, "{family}: frame claimed but A = 0");
            }
        }
    }

    #[test]
    fn sech_bounds_invariant_under_lattice_transpose(n in 2u32..8, eta in 0.3..6.0f64) {
        let x = sech_bounds(&LatticeShape::new(n, eta).unwrap()).unwrap();
        let y = sech_bounds(&LatticeShape::new(n, n as f64 / eta).unwrap()).unwrap();
        prop_assert!((x.lower - y.lower).abs() <= 1e-10 * x.lower.max(1.0));
        prop_assert!((x.upper - y.upper).abs() <= 1e-10 * x.upper);
    }

    #[test]
    fn closed_form_condition_numbers_match_ratios(
        n in 1u32..8,
        eta in 0.3..6.0f64,
        a in 0.2..2.0f64,
        gamma in 0.1..2.5f64,
    ) {
        let shape = LatticeShape::new(n, eta).unwrap();
        let os = onesided_bounds(&shape).unwrap();
        prop_assert!((onesided_kappa(&shape) - os.kappa).abs() <= 1e-12 * os.kappa);

        let m1 = cutoff_m1_bounds(n, a, gamma).unwrap();
        prop_assert!((m1.kappa - (2.0 * a * gamma).exp()).abs() <= 1e-12 * m1.kappa);

        let m2 = cutoff_m2_bounds(n, a, gamma).unwrap();
        let k2 = cutoff_m2_kappa(n, a, gamma).unwrap();
        prop_assert!((m2.kappa - k2).abs() <= 1e-11 * k2);
    }
}
