//! A small univariate expression tree evaluated over intervals.
//!
//! The certificate corpus in [`crate::certify`] is written in this DSL; the
//! prefix printer is what lands in the JSON reports.

use crate::interval::Interval;
use crate::Result;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Pi,
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Powi(Box<Expr>, i32),
    Exp(Box<Expr>),
    Log(Box<Expr>),
    Sinh(Box<Expr>),
    Cosh(Box<Expr>),
    Tanh(Box<Expr>),
    Coth(Box<Expr>),
    Sech(Box<Expr>),
    Csch(Box<Expr>),
    Acosh(Box<Expr>),
    Asinh(Box<Expr>),
}

impl Expr {
    /// Enclosure of the range of the expression over `x`.
    pub fn eval(&self, x: Interval) -> Result<Interval> {
        Ok(match self {
            Expr::Const(c) => Interval::point(*c),
            Expr::Pi => Interval::pi(),
            Expr::Var => x,
            Expr::Add(a, b) => a.eval(x)?.add(&b.eval(x)?),
            Expr::Sub(a, b) => a.eval(x)?.sub(&b.eval(x)?),
            Expr::Mul(a, b) => a.eval(x)?.mul(&b.eval(x)?),
            Expr::Div(a, b) => a.eval(x)?.div(&b.eval(x)?)?,
            Expr::Neg(a) => a.eval(x)?.neg(),
            Expr::Powi(a, k) => a.eval(x)?.powi(*k)?,
            Expr::Exp(a) => a.eval(x)?.exp(),
            Expr::Log(a) => a.eval(x)?.ln()?,
            Expr::Sinh(a) => a.eval(x)?.sinh(),
            Expr::Cosh(a) => a.eval(x)?.cosh(),
            Expr::Tanh(a) => a.eval(x)?.tanh(),
            Expr::Coth(a) => a.eval(x)?.coth()?,
            Expr::Sech(a) => a.eval(x)?.sech(),
            Expr::Csch(a) => a.eval(x)?.csch()?,
            Expr::Acosh(a) => a.eval(x)?.acosh()?,
            Expr::Asinh(a) => a.eval(x)?.asinh(),
        })
    }

    /// Evaluate at a point using plain `f64` arithmetic (for soundness
    /// spot-checks against the interval enclosure).
    pub fn eval_point(&self, t: f64) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Pi => std::f64::consts::PI,
            Expr::Var => t,
            Expr::Add(a, b) => a.eval_point(t) + b.eval_point(t),
            Expr::Sub(a, b) => a.eval_point(t) - b.eval_point(t),
            Expr::Mul(a, b) => a.eval_point(t) * b.eval_point(t),
            Expr::Div(a, b) => a.eval_point(t) / b.eval_point(t),
            Expr::Neg(a) => -a.eval_point(t),
            Expr::Powi(a, k) => a.eval_point(t).powi(*k),
            Expr::Exp(a) => a.eval_point(t).exp(),
            Expr::Log(a) => a.eval_point(t).ln(),
            Expr::Sinh(a) => a.eval_point(t).sinh(),
            Expr::Cosh(a) => a.eval_point(t).cosh(),
            Expr::Tanh(a) => a.eval_point(t).tanh(),
            Expr::Coth(a) => 1.0 / a.eval_point(t).tanh(),
            Expr::Sech(a) => 1.0 / a.eval_point(t).cosh(),
            Expr::Csch(a) => 1.0 / a.eval_point(t).sinh(),
            Expr::Acosh(a) => a.eval_point(t).acosh(),
            Expr::Asinh(a) => a.eval_point(t).asinh(),
        }
    }

    /// Prefix (s-expression) rendering, e.g. `(- 1 (* 2 (pow x 2)))`.
    pub fn to_prefix(&self) -> String {
        let mut s = String::new();
        self.write_prefix(&mut s);
        s
    }

    fn write_prefix(&self, out: &mut String) {
        match self {
            Expr::Const(c) => {
                let _ = write!(out, "{c}");
            }
            Expr::Pi => out.push_str("pi"),
            Expr::Var => out.push('x'),
            Expr::Add(a, b) => Self::binary(out, "+", a, b),
            Expr::Sub(a, b) => Self::binary(out, "-", a, b),
            Expr::Mul(a, b) => Self::binary(out, "*", a, b),
            Expr::Div(a, b) => Self::binary(out, "/", a, b),
            Expr::Neg(a) => Self::unary(out, "neg", a),
            Expr::Powi(a, k) => {
                out.push_str("(pow ");
                a.write_prefix(out);
                let _ = write!(out, " {k})");
            }
            Expr::Exp(a) => Self::unary(out, "exp", a),
            Expr::Log(a) => Self::unary(out, "log", a),
            Expr::Sinh(a) => Self::unary(out, "sinh", a),
            Expr::Cosh(a) => Self::unary(out, "cosh", a),
            Expr::Tanh(a) => Self::unary(out, "tanh", a),
            Expr::Coth(a) => Self::unary(out, "coth", a),
            Expr::Sech(a) => Self::unary(out, "sech", a),
            Expr::Csch(a) => Self::unary(out, "csch", a),
            Expr::Acosh(a) => Self::unary(out, "acosh", a),
            Expr::Asinh(a) => Self::unary(out, "asinh", a),
        }
    }

    fn binary(out: &mut String, op: &str, a: &Expr, b: &Expr) {
        out.push('(');
        out.push_str(op);
        out.push(' ');
        a.write_prefix(out);
        out.push(' ');
        b.write_prefix(out);
        out.push(')');
    }

    fn unary(out: &mut String, op: &str, a: &Expr) {
        out.push('(');
        out.push_str(op);
        out.push(' ');
        a.write_prefix(out);
        out.push(')');
    }
}

// Builder helpers keep the corpus definitions readable.
pub fn var() -> Expr {
    Expr::Var
}

pub fn c(v: f64) -> Expr {
    Expr::Const(v)
}

pub fn pi() -> Expr {
    Expr::Pi
}

pub fn powi(e: Expr, k: i32) -> Expr {
    Expr::Powi(Box::new(e), k)
}

macro_rules! unary_builder {
    ($($name:ident => $variant:ident),* $(,)?) => {
        $(pub fn $name(e: Expr) -> Expr { Expr::$variant(Box::new(e)) })*
    };
}

unary_builder!(
    exp => Exp, log => Log, sinh => Sinh, cosh => Cosh, tanh => Tanh,
    coth => Coth, sech => Sech, csch => Csch, acosh => Acosh, asinh => Asinh,
);

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_node_is_a_point() {
        let e = c(1.0);
        let v = e.eval(Interval::new(-3.0, 7.0).unwrap()).unwrap();
        assert_eq!((v.lo(), v.hi()), (1.0, 1.0));
    }

    #[test]
    fn interval_estimate_example() {
        // tanh(t) (csch(t) - csch(2t)) on (2, 5): the enclosure's upper end
        // must not exceed tanh(5) (csch(2) - csch(10)) by more than rounding.
        let e = tanh(var()) * (csch(var()) - csch(c(2.0) * var()));
        let v = e.eval(Interval::new(2.0, 5.0).unwrap()).unwrap();
        let exact_hi = 5.0f64.tanh() * (1.0 / 2.0f64.sinh() - 1.0 / 10.0f64.sinh());
        assert!(v.hi() <= exact_hi * (1.0 + 1e-13));
        assert!(v.lo() <= 2.0f64.tanh() * (1.0 / 5.0f64.sinh() - 1.0 / 4.0f64.sinh()));
    }

    #[test]
    fn point_containment_random_samples() {
        let e = (c(1.0) - c(2.0) * powi(var(), 2) * powi(sech(var()), 2))
            + exp(-var()) * coth(var());
        let x = Interval::new(0.4, 2.6).unwrap();
        let enc = e.eval(x).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            let t = 0.4 + u * (2.6 - 0.4);
            assert!(enc.contains(e.eval_point(t)));
        }
    }

    #[test]
    fn prefix_rendering() {
        let e = c(1.0) - c(2.0) * powi(var(), 2);
        assert_eq!(e.to_prefix(), "(- 1 (* 2 (pow x 2)))");
        assert_eq!(sech(pi() * var()).to_prefix(), "(sech (* pi x))");
    }

    #[test]
    fn domain_guard_propagates() {
        let e = csch(var());
        assert!(e.eval(Interval::new(-1.0, 1.0).unwrap()).is_err());
    }
}
