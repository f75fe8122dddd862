//! Sharp frame bounds of Gabor systems over rectangular lattices of integer
//! density, for five explicit window families: the hyperbolic secant, two
//! cut-off exponentials, and the one- and two-sided exponentials.
//!
//! The crate provides
//!
//! * certified evaluation of the hyperbolic series behind the sech bounds
//!   ([`series`]),
//! * closed-form lower/upper bounds and condition numbers per family
//!   ([`bounds`]),
//! * bracketed search for the lattice shapes optimizing each quantity,
//!   with the orderings between them ([`optimize`]),
//! * an outward-rounded interval checker that proves the sign inequalities
//!   the bound analysis rests on ([`interval`], [`expr`], [`certify`]),
//! * an independent discrete Gabor frame-operator model whose extreme
//!   eigenvalues corroborate every closed form ([`oracle`]),
//! * a command-line front end ([`cli`]) with `eval`, `sweep`, `optimize`,
//!   `certify` and `oracle` subcommands.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod bounds;
pub mod certify;
pub mod cli;
pub mod expr;
pub mod hyperbolic;
pub mod interval;
pub mod optimize;
pub mod oracle;
pub mod series;
pub mod window;

pub use window::{BoundsValue, LatticeShape, WindowFamily, WindowSpec};

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    /// A parameter is outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested density admits no frame for this family.
    #[error("{family} window has no frame at density {n} (needs n >= {min})")]
    InvalidDensity { family: WindowFamily, n: u32, min: u32 },

    /// The family/quantity pair has no optimal lattice (degenerate optimum).
    #[error("no optimal lattice exists: {0}")]
    NoOptimizer(String),

    /// A bracketing interval failed to enclose a sign change.
    #[error("derivative of {what} has no sign change on [{lo}, {hi}]")]
    NoSignChange { what: String, lo: f64, hi: f64 },

    /// No discrete grid reproduces the requested lattice within limits.
    #[error("lattice not representable on a discrete grid: {0}")]
    IncommensurableLattice(String),

    /// Interval evaluation hit a domain guard.
    #[error("interval domain violation: {0}")]
    DomainViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
