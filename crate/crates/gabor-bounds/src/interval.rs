//! Outward-rounded interval arithmetic over `f64`.
//!
//! Endpoints are evaluated in the default rounding mode and then inflated by
//! two ulps outward per operation.  The elementary functions used here are
//! monotone on their guarded domains (or piecewise monotone with an interior
//! extremum handled explicitly), so endpoint evaluation plus inflation yields
//! a true enclosure as long as the underlying libm calls stay within two
//! ulps, which holds for the functions involved.

use crate::{Error, Result};

/// Number of ulps added outward on each side after every operation.
const ULPS: u32 = 2;

/// A closed interval `[lo, hi]` with finite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn nudge_down(mut x: f64, ulps: u32) -> f64 {
    for _ in 0..ulps {
        x = x.next_down();
    }
    x
}

fn nudge_up(mut x: f64, ulps: u32) -> f64 {
    for _ in 0..ulps {
        x = x.next_up();
    }
    x
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::DomainViolation(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn split(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { lo: self.lo, hi: m }, Interval { lo: m, hi: self.hi })
    }

    fn outward(lo: f64, hi: f64) -> Interval {
        Interval { lo: nudge_down(lo, ULPS), hi: nudge_up(hi, ULPS) }
    }

    // -- arithmetic -------------------------------------------------------

    pub fn add(&self, rhs: &Interval) -> Interval {
        Interval::outward(self.lo + rhs.lo, self.hi + rhs.hi)
    }

    pub fn sub(&self, rhs: &Interval) -> Interval {
        Interval::outward(self.lo - rhs.hi, self.hi - rhs.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn mul(&self, rhs: &Interval) -> Interval {
        let c = [self.lo * rhs.lo, self.lo * rhs.hi, self.hi * rhs.lo, self.hi * rhs.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::outward(lo, hi)
    }

    pub fn div(&self, rhs: &Interval) -> Result<Interval> {
        if rhs.contains(0.0) {
            return Err(Error::DomainViolation(format!(
                "division by interval containing zero: [{}, {}]",
                rhs.lo, rhs.hi
            )));
        }
        let c = [self.lo / rhs.lo, self.lo / rhs.hi, self.hi / rhs.lo, self.hi / rhs.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(Interval::outward(lo, hi))
    }

    pub fn powi(&self, k: i32) -> Result<Interval> {
        if k < 0 {
            return self.powi(-k)?.recip();
        }
        if k == 0 {
            return Ok(Interval::point(1.0));
        }
        let (plo, phi) = (self.lo.powi(k), self.hi.powi(k));
        let r = if k % 2 == 1 {
            Interval::outward(plo, phi)
        } else if self.lo >= 0.0 {
            Interval::outward(plo, phi)
        } else if self.hi <= 0.0 {
            Interval::outward(phi, plo)
        } else {
            Interval::outward(0.0, plo.max(phi))
        };
        Ok(r)
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::point(1.0).div(self)
    }

    // -- elementary functions ---------------------------------------------

    pub fn exp(&self) -> Interval {
        Interval::outward(self.lo.exp(), self.hi.exp())
    }

    pub fn ln(&self) -> Result<Interval> {
        if self.lo <= 0.0 {
            return Err(Error::DomainViolation(format!("log over [{}, {}]", self.lo, self.hi)));
        }
        Ok(Interval::outward(self.lo.ln(), self.hi.ln()))
    }

    pub fn sinh(&self) -> Interval {
        Interval::outward(self.lo.sinh(), self.hi.sinh())
    }

    pub fn cosh(&self) -> Interval {
        let (alo, ahi) = (self.lo.abs(), self.hi.abs());
        if self.contains(0.0) {
            Interval::outward(1.0, alo.max(ahi).cosh())
        } else {
            Interval::outward(alo.min(ahi).cosh(), alo.max(ahi).cosh())
        }
    }

    pub fn tanh(&self) -> Interval {
        Interval::outward(self.lo.tanh(), self.hi.tanh())
    }

    /// Decreasing on the required domain `lo > 0`.
    pub fn coth(&self) -> Result<Interval> {
        if self.lo <= 0.0 {
            return Err(Error::DomainViolation(format!("coth over [{}, {}]", self.lo, self.hi)));
        }
        Ok(Interval::outward(1.0 / self.hi.tanh(), 1.0 / self.lo.tanh()))
    }

    /// Even with maximum 1 at 0, decreasing in |x|.
    pub fn sech(&self) -> Interval {
        let (alo, ahi) = (self.lo.abs(), self.hi.abs());
        if self.contains(0.0) {
            Interval::outward(1.0 / alo.max(ahi).cosh(), 1.0)
        } else {
            Interval::outward(1.0 / alo.max(ahi).cosh(), 1.0 / alo.min(ahi).cosh())
        }
    }

    /// Decreasing on the required domain `lo > 0`.
    pub fn csch(&self) -> Result<Interval> {
        if self.lo <= 0.0 {
            return Err(Error::DomainViolation(format!("csch over [{}, {}]", self.lo, self.hi)));
        }
        Ok(Interval::outward(1.0 / self.hi.sinh(), 1.0 / self.lo.sinh()))
    }

    pub fn asinh(&self) -> Interval {
        Interval::outward(self.lo.asinh(), self.hi.asinh())
    }

    pub fn acosh(&self) -> Result<Interval> {
        if self.lo < 1.0 {
            return Err(Error::DomainViolation(format!("acosh over [{}, {}]", self.lo, self.hi)));
        }
        Ok(Interval::outward(self.lo.acosh(), self.hi.acosh()))
    }

    /// Outward enclosure of pi.
    pub fn pi() -> Interval {
        Interval::outward(std::f64::consts::PI, std::f64::consts::PI)
    }
}
