//! Window families, lattice shapes and the bound record they produce.

use crate::{Error, Result};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// The five window families with explicit sharp frame bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowFamily {
    /// Normalized Fourier-invariant hyperbolic secant.
    Sech,
    /// Exponential cut off to one reciprocal frequency step, support 1/b.
    #[serde(rename = "cutoff1")]
    CutoffM1,
    /// Exponential cut off to two reciprocal frequency steps, support 2/b.
    #[serde(rename = "cutoff2")]
    CutoffM2,
    /// One-sided exponential on the positive half-axis.
    #[serde(rename = "onesided")]
    OneSided,
    /// Two-sided exponential.
    #[serde(rename = "twosided")]
    TwoSided,
}

impl WindowFamily {
    /// True for the families with a jump discontinuity.
    pub fn is_discontinuous(self) -> bool {
        matches!(self, WindowFamily::CutoffM1 | WindowFamily::CutoffM2 | WindowFamily::OneSided)
    }

    /// Smallest density at which the lower frame bound is positive.
    pub fn min_frame_density(self) -> u32 {
        match self {
            WindowFamily::Sech | WindowFamily::TwoSided => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for WindowFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WindowFamily::Sech => "sech",
            WindowFamily::CutoffM1 => "cutoff1",
            WindowFamily::CutoffM2 => "cutoff2",
            WindowFamily::OneSided => "onesided",
            WindowFamily::TwoSided => "twosided",
        };
        f.write_str(s)
    }
}

impl FromStr for WindowFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sech" => Ok(WindowFamily::Sech),
            "cutoff1" | "cutoff-m1" => Ok(WindowFamily::CutoffM1),
            "cutoff2" | "cutoff-m2" => Ok(WindowFamily::CutoffM2),
            "onesided" | "one-sided" => Ok(WindowFamily::OneSided),
            "twosided" | "two-sided" => Ok(WindowFamily::TwoSided),
            other => Err(Error::Domain(format!("unknown window family `{other}`"))),
        }
    }
}

/// A window family together with its decay parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowSpec {
    pub family: WindowFamily,
    pub gamma: f64,
}

impl WindowSpec {
    /// `gamma` must be positive; the cut-off families also accept 0 (the box
    /// limit).
    pub fn new(family: WindowFamily, gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::Domain(format!("gamma must be finite and nonnegative, got {gamma}")));
        }
        let box_ok =
            matches!(family, WindowFamily::CutoffM1 | WindowFamily::CutoffM2);
        if gamma == 0.0 && !box_ok {
            return Err(Error::Domain(format!("gamma = 0 is only valid for the cut-off families, not {family}")));
        }
        Ok(WindowSpec { family, gamma })
    }
}

/// Rectangular lattice of integer density `n` in the shape chart
/// `(a, b) = (eta / n, 1 / eta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeShape {
    n: u32,
    eta: f64,
}

impl LatticeShape {
    pub fn new(n: u32, eta: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("density n must be a positive integer".into()));
        }
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(Error::Domain(format!("shape parameter eta must be positive, got {eta}")));
        }
        Ok(LatticeShape { n, eta })
    }

    /// Construct from density and time step `a` (so `eta = n a`).
    pub fn from_time_step(n: u32, a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Domain(format!("lattice parameter a must be positive, got {a}")));
        }
        Self::new(n, n as f64 * a)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Time step a = eta / n.
    pub fn a(&self) -> f64 {
        self.eta / self.n as f64
    }

    /// Frequency step b = 1 / eta.
    pub fn b(&self) -> f64 {
        1.0 / self.eta
    }

    /// Same density, shape parameter scaled by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.n, self.eta * c)
    }
}

/// Sharp lower and upper frame bound plus derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsValue {
    /// Sharp lower frame bound A (0 when the system is not a frame).
    #[serde(rename = "A")]
    pub lower: f64,
    /// Sharp upper frame bound B.
    #[serde(rename = "B")]
    pub upper: f64,
    /// Condition number B / A; infinite when A = 0.
    #[serde(serialize_with = "serialize_kappa")]
    pub kappa: f64,
    /// Aggregated certified series-truncation error of the reported bounds;
    /// 0 for the families with finite closed forms.
    pub trunc_bound: f64,
    /// True when A vanishes identically (no frame at this density).
    pub degenerate: bool,
}

fn serialize_kappa<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str("inf")
    }
}

impl BoundsValue {
    pub(crate) fn framed(lower: f64, upper: f64, trunc_bound: f64) -> Self {
        BoundsValue { lower, upper, kappa: upper / lower, trunc_bound, degenerate: false }
    }

    pub(crate) fn degenerate(upper: f64, trunc_bound: f64) -> Self {
        BoundsValue { lower: 0.0, upper, kappa: f64::INFINITY, trunc_bound, degenerate: true }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_chart_roundtrip() {
        let s = LatticeShape::new(3, 1.2).unwrap();
        assert!((s.a() - 0.4).abs() < 1e-15);
        assert_eq!(s.b(), 1.0 / 1.2);
        assert!((s.a() * s.b() * 3.0 - 1.0).abs() < 1e-15);
        let t = LatticeShape::from_time_step(3, 0.4).unwrap();
        assert!((t.eta() - 1.2).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(LatticeShape::new(0, 1.0).is_err());
        assert!(LatticeShape::new(2, 0.0).is_err());
        assert!(LatticeShape::new(2, f64::INFINITY).is_err());
        assert!(WindowSpec::new(WindowFamily::Sech, 0.0).is_err());
        assert!(WindowSpec::new(WindowFamily::CutoffM1, 0.0).is_ok());
        assert!(WindowSpec::new(WindowFamily::OneSided, -1.0).is_err());
    }

    #[test]
    fn kappa_serializes_inf_as_string() {
        let b = BoundsValue::degenerate(2.0, 0.0);
        let j = serde_json::to_string(&b).unwrap();
        assert!(j.contains("\"kappa\":\"inf\""));
        let f = BoundsValue::framed(1.0, 2.0, 0.0);
        assert!(serde_json::to_string(&f).unwrap().contains("\"kappa\":2.0"));
    }

    #[test]
    fn family_names_roundtrip() {
        for f in [
            WindowFamily::Sech,
            WindowFamily::CutoffM1,
            WindowFamily::CutoffM2,
            WindowFamily::OneSided,
            WindowFamily::TwoSided,
        ] {
            assert_eq!(f.to_string().parse::<WindowFamily>().unwrap(), f);
        }
        assert!("gauss".parse::<WindowFamily>().is_err());
    }
}
