//! Machine-checked sign certificates for the inequalities the bound
//! analysis rests on.
//!
//! A certificate names an expression, a domain and a claimed sign; the
//! checker subdivides the domain adaptively and accepts a leaf once the
//! outward-rounded enclosure settles the sign.  For the monotonicity
//! claims, `expr` holds the hand-coded sign witness (a derivative or an
//! equivalent positive form), so every claim reduces to strict positivity
//! or negativity of one expression.
//!
//! Statuses merge with precedence `Failed > DepthExceeded > Proved`.

use crate::expr::{acosh, c, cosh, coth, csch, exp, pi, powi, sech, sinh, tanh, var, Expr};
use crate::interval::Interval;
use crate::Result;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Positive,
    Negative,
    MonotoneIncreasing,
    MonotoneDecreasing,
}

impl Claim {
    /// All claims are checked as strict positivity of the stored expression,
    /// except `Negative`, which is checked as strict negativity.
    fn target_positive(self) -> bool {
        !matches!(self, Claim::Negative)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proved,
    Failed,
    DepthExceeded,
}

/// Default subdivision depth cap.
pub const DEFAULT_MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone)]
pub struct Certificate {
    pub name: String,
    pub expr: Expr,
    pub domain: Interval,
    pub claim: Claim,
    pub max_depth: u32,
    /// Documented assumption accompanying the check (endpoint shrinks and
    /// the argument covering the excluded region).
    pub note: String,
}

impl Certificate {
    fn new(name: &str, expr: Expr, lo: f64, hi: f64, claim: Claim, note: &str) -> Self {
        Certificate {
            name: name.to_string(),
            expr,
            domain: Interval::new(lo, hi).expect("certificate domain"),
            claim,
            max_depth: DEFAULT_MAX_DEPTH,
            note: note.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateResult {
    pub name: String,
    pub status: Status,
    pub leaves_checked: u64,
    /// A subinterval on which the claim is provably violated.
    pub witness: Option<(f64, f64)>,
}

/// Full JSON record: the certificate specification plus its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateRecord {
    pub name: String,
    pub expression: String,
    pub domain: (f64, f64),
    pub claim: Claim,
    pub max_depth: u32,
    pub note: String,
    pub status: Status,
    pub leaves_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(f64, f64)>,
}

pub fn record(cert: &Certificate, result: &CertificateResult) -> CertificateRecord {
    CertificateRecord {
        name: cert.name.clone(),
        expression: cert.expr.to_prefix(),
        domain: (cert.domain.lo(), cert.domain.hi()),
        claim: cert.claim,
        max_depth: cert.max_depth,
        note: cert.note.clone(),
        status: result.status,
        leaves_checked: result.leaves_checked,
        witness: result.witness,
    }
}

/// Adaptive bisection proof of one certificate.
pub fn prove(cert: &Certificate) -> Result<CertificateResult> {
    let positive = cert.claim.target_positive();
    let mut stack: Vec<(Interval, u32)> = vec![(cert.domain, 0)];
    let mut leaves = 0u64;
    let mut witness = None;
    let mut depth_exceeded = false;
    while let Some((iv, depth)) = stack.pop() {
        let enc = cert.expr.eval(iv)?;
        let settled = if positive { enc.lo() > 0.0 } else { enc.hi() < 0.0 };
        if settled {
            leaves += 1;
            continue;
        }
        let refuted = if positive { enc.hi() < 0.0 } else { enc.lo() > 0.0 };
        if refuted {
            leaves += 1;
            witness = Some((iv.lo(), iv.hi()));
            break;
        }
        if depth >= cert.max_depth {
            leaves += 1;
            depth_exceeded = true;
            continue;
        }
        let (left, right) = iv.split();
        stack.push((right, depth + 1));
        stack.push((left, depth + 1));
    }
    let status = if witness.is_some() {
        Status::Failed
    } else if depth_exceeded {
        Status::DepthExceeded
    } else {
        Status::Proved
    };
    Ok(CertificateResult { name: cert.name.clone(), status, leaves_checked: leaves, witness })
}

/// The built-in corpus.  Each entry proves one sign fact used by the
/// monotonicity and convexity analysis of the closed-form bounds.
pub fn builtin_certificates() -> Vec<Certificate> {
    let x = var;
    let mut corpus = Vec::new();

    // 1 - 2x^2 sech(x)^2 stays above 0.1 on the positive axis (the interior
    // minimum sits near the fixed point of coth).
    corpus.push(Certificate::new(
        "sech_amplitude_margin",
        c(1.0) - c(2.0) * powi(x(), 2) * powi(sech(x()), 2) - c(0.1),
        0.05,
        30.0,
        Claim::Positive,
        "limits at 0 and infinity are 0.9; outside [0.05, 30] the expression exceeds any interior value",
    ));

    // psi(x) = 1 - 2x^2 + 6x^2 coth(x)^2 - 6x coth(x) > 0: makes h_B strictly
    // increasing.  Two overlapping regions cover (0, infinity) up to the
    // documented endpoint shrink.
    let psi = || {
        c(1.0) - c(2.0) * powi(x(), 2) + c(6.0) * powi(x(), 2) * powi(coth(x()), 2)
            - c(6.0) * x() * coth(x())
    };
    corpus.push(Certificate::new(
        "psi_positive",
        psi(),
        0.05,
        1.6,
        Claim::Positive,
        "left endpoint shrunk from 0; the expression tends to 1 as x -> 0+",
    ));
    corpus.push(Certificate::new(
        "h_b_prime_tail_region",
        psi(),
        1.53,
        30.0,
        Claim::Positive,
        "for x > 30 the quadratic growth 4x^2 - 6.6x + 1 dominates",
    ));

    // Lower estimate of the second derivative of h_A on [1, 1.04]:
    // 3 csch(pi t) - 16.14 e^{-1.04 pi} csch(0.52 pi) + 1.44 sech(0.52 pi)^2 p(1.52)
    // with p(s) = -2s^2 + 5s - 2.
    let p152 = c(-2.0) * c(1.52) * c(1.52) + c(5.0) * c(1.52) - c(2.0);
    corpus.push(Certificate::new(
        "h_a_second_derivative_floor",
        c(3.0) * csch(pi() * x())
            - c(16.14) * exp(-(c(1.04) * pi())) * csch(c(0.52) * pi())
            + c(1.44) * powi(sech(c(0.52) * pi()), 2) * p152,
        1.0,
        1.04,
        Claim::Positive,
        "grouped lower estimate of h_A'' / 2 near the symmetry point",
    ));

    // x coth(x) is strictly increasing: its derivative equals
    // csch(x)^2 (sinh(2x)/2 - x) > 0.
    corpus.push(Certificate::new(
        "x_coth_x_increasing",
        powi(csch(x()), 2) * (c(0.5) * sinh(c(2.0) * x()) - x()),
        0.05,
        10.0,
        Claim::MonotoneIncreasing,
        "expression is the derivative of x coth(x); positivity extends to all x > 0 termwise",
    ));

    // rho(x) = 2 acosh(x) / x is strictly decreasing on [2, 50]:
    // equivalent to acosh(x)^2 > 1 + 1/(x^2 - 1).
    corpus.push(Certificate::new(
        "rho_decreasing",
        powi(acosh(x()), 2) - c(1.0) - c(1.0) / (powi(x(), 2) - c(1.0)),
        2.0,
        50.0,
        Claim::MonotoneDecreasing,
        "positive expression is minus the sign of rho'; both factors grow with x beyond 50",
    ));

    // Sign pattern of the curvature kernel of t csch(t):
    // tanh(t)^2/2 + tanh(t)/t - 1 is positive left of the crossing in
    // (1.6, 1.61) and negative to its right.
    let kernel = || c(0.5) * powi(tanh(x()), 2) + tanh(x()) / x() - c(1.0);
    corpus.push(Certificate::new(
        "exp_kernel_curvature_left",
        kernel(),
        0.05,
        1.6,
        Claim::Positive,
        "limit at 0+ is 0 from above; crossing isolated between 1.6 and 1.61",
    ));
    corpus.push(Certificate::new(
        "exp_kernel_curvature_right",
        kernel(),
        1.61,
        30.0,
        Claim::Negative,
        "expression decreases towards -1/2 for large x",
    ));

    // Convexity kernel of the two-sided upper bound: the part independent of
    // the density reduces to x cosh(x) + 2x - 2 sinh(x) > 0.
    corpus.push(Certificate::new(
        "upper_kernel_positive",
        x() * cosh(x()) + c(2.0) * x() - c(2.0) * sinh(x()),
        0.1,
        30.0,
        Claim::Positive,
        "series has only positive terms; checked window covers the bound search region",
    ));
    // Grouped positive factors of the density-dependent part.
    corpus.push(Certificate::new(
        "half_arg_coth_factor",
        c(0.5) * x() * coth(c(0.5) * x()) - c(1.0),
        0.1,
        30.0,
        Claim::Positive,
        "instance of x coth(x) > 1 at half argument",
    ));
    corpus.push(Certificate::new(
        "x_coth_x_above_one",
        x() * coth(x()) - c(1.0),
        0.01,
        30.0,
        Claim::Positive,
        "covers the scaled arguments eta/n of the grouped factors; limit at 0+ is 0 from above",
    ));

    // Concavity surrogate: 3 coth(t) - 3t coth(t)^2 + t < 0, i.e. the second
    // derivative of coth(t) - t coth(t)^2 + 3t/7 stays negative.
    corpus.push(Certificate::new(
        "concavity_surrogate_negative",
        c(3.0) * coth(x()) - c(3.0) * x() * powi(coth(x()), 2) + x(),
        0.3,
        5.0,
        Claim::Negative,
        "on (0, 0.3) the expression equals -4t^3/15 + O(t^5), a negative-term series; \
         plain interval arithmetic cannot settle that flat region, so the left endpoint \
         is shrunk to 0.3",
    ));

    // Log-convexity estimates for the two-sided condition number.
    corpus.push(Certificate::new(
        "sinh_minus_x2_coth_negative",
        sinh(x()) - powi(x(), 2) * coth(x()),
        0.05,
        8.0 / 3.0,
        Claim::Negative,
        "limit at 0+ is 0 from below; right endpoint is the doubled search cap 2 * 4/3",
    ));
    let coth43 = || coth(c(4.0) / c(3.0));
    corpus.push(Certificate::new(
        "log_convexity_eta_term",
        x() - (c(8.0) / c(3.0)) * coth43() * coth(x()),
        3.08,
        30.0,
        Claim::Positive,
        "worst-case constant (8/3) coth(4/3) for the scaled argument; grows linearly beyond 30",
    ));
    corpus.push(Certificate::new(
        "log_convexity_cosh_term",
        cosh(x()) - cosh(x()) / powi(x(), 2),
        3.08,
        30.0,
        Claim::Positive,
        "encodes cosh(eta) > n / eta^2 via n <= cosh(eta) on the search window and eta > 1",
    ));
    corpus.push(Certificate::new(
        "log_convexity_coth_balance",
        c(0.5) * x() * coth(x()) - (c(4.0) / c(3.0)) * coth43(),
        3.08,
        30.0,
        Claim::Positive,
        "1.54-versus-1.53 margin at the left endpoint; left side increases",
    ));

    corpus
}

/// A deliberately false certificate used to exercise the failure path.
pub fn sanity_negative_certificate() -> Certificate {
    Certificate::new(
        "sanity_negative_constant",
        c(-1.0),
        0.0,
        1.0,
        Claim::Positive,
        "intentionally false; must fail with a witness",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_fully_proved() {
        for cert in builtin_certificates() {
            let r = prove(&cert).unwrap();
            assert_eq!(r.status, Status::Proved, "{} not proved: {:?}", cert.name, r);
            assert!(r.leaves_checked >= 1);
        }
    }

    #[test]
    fn psi_filter_matches_one_entry() {
        let hits: Vec<_> = builtin_certificates()
            .into_iter()
            .filter(|cert| cert.name.contains("psi"))
            .collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(prove(&hits[0]).unwrap().status, Status::Proved);
    }

    #[test]
    fn polynomial_margin_example() {
        // p(x) + 3x^2 with p(x) = -2x^2 + 5x - 2 is x^2 + 5x - 2 > 0 on [1, 50]
        let cert = Certificate::new(
            "poly_margin",
            powi(var(), 2) + c(5.0) * var() - c(2.0),
            1.0,
            50.0,
            Claim::Positive,
            "",
        );
        assert_eq!(prove(&cert).unwrap().status, Status::Proved);
    }

    #[test]
    fn negative_constant_fails_with_witness() {
        let r = prove(&sanity_negative_certificate()).unwrap();
        assert_eq!(r.status, Status::Failed);
        let (lo, hi) = r.witness.expect("witness");
        let mid = 0.5 * (lo + hi);
        assert!(sanity_negative_certificate().expr.eval_point(mid) <= 0.0);
    }

    #[test]
    fn touching_zero_exceeds_depth_instead_of_lying() {
        // x^2 >= 0 touches zero, so strict positivity must come back inconclusive
        let cert = Certificate {
            name: "touches_zero".into(),
            expr: powi(var(), 2),
            domain: Interval::new(-1.0, 1.0).unwrap(),
            claim: Claim::Positive,
            max_depth: 12,
            note: String::new(),
        };
        let r = prove(&cert).unwrap();
        assert_eq!(r.status, Status::DepthExceeded);
    }

    #[test]
    fn proofs_stable_under_deeper_caps() {
        for mut cert in builtin_certificates() {
            cert.max_depth += 5;
            assert_eq!(prove(&cert).unwrap().status, Status::Proved, "{}", cert.name);
        }
    }

    #[test]
    fn records_serialize_with_prefix_expressions() {
        let cert = sanity_negative_certificate();
        let res = prove(&cert).unwrap();
        let rec = record(&cert, &res);
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"expression\":\"-1\""));
        assert!(json.contains("\"status\":\"failed\""));
        assert!(json.contains("\"witness\""));
    }
}
