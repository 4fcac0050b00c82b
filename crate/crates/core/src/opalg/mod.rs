//! Exact operator algebra for 2D quantum systems with a radial direction.
//!
//! Operators are represented in a normal-ordered canonical form: every term
//! is `coeff * x1^a * x2^b * rho^-s * r^t * p1^c * p2^d` with positions and
//! radial factors to the left of momenta, `rho = x1^2 + x2^2`, `t ∈ {0, 1}`
//! (even radial powers fold into `rho`), and `a ≤ 1` whenever `s ≥ 1` (the
//! relation `x1^2 = rho - x2^2` is applied until exponents are reduced).
//! Coefficients are rational functions over Gaussian rationals in the four
//! model parameters. On this basis equality of operators is literal equality
//! of term maps, so identity checking is exact.

mod build;
mod coeff;
mod expr;
mod gauss;
mod radial;
mod sample;
mod text;

pub use build::{
    a1_operator, c1_operator, coeff_a3, coeff_c3, generator, generator_names, hamiltonian,
    identities, Identity, IdentityCheck, IdentityTag, OpWord, WordTerm,
};
pub use coeff::{Coeff, Param, ParamPoly, ParamVals};
pub use expr::{ExprTree, OperatorExpr, TermKey};
pub use gauss::GaussRat;
pub use radial::{RadMono, RadialFunction};
pub use sample::{sample_coeff, sample_expr_tree, sample_radial_function, SampleCfg};
pub use text::{parse_expr, ParseError};

use thiserror::Error;

/// Outcome of an exact identity check.
#[derive(Clone, Debug)]
pub struct Residual {
    /// `canonicalize(lhs - rhs)`; empty exactly when the identity holds.
    pub expr: OperatorExpr,
    pub is_zero: bool,
}

/// Exact check of `lhs = rhs`: equality of canonical forms, no numerics.
pub fn verify_identity(lhs: &OperatorExpr, rhs: &OperatorExpr) -> Residual {
    let expr = lhs.sub(rhs);
    let is_zero = expr.is_zero();
    Residual { expr, is_zero }
}

/// Failures of the symbolic layer.
#[derive(Debug, Error)]
pub enum OpalgError {
    /// Scalar division where the divisor is the zero rational function.
    #[error("division by a zero coefficient")]
    DivisionByZero,
    /// Radial or parameter exponent outside the supported range.
    #[error("exponent {0} outside supported range")]
    UnsupportedPower(i64),
    /// A named generator was requested for a system that does not define it.
    #[error("unknown generator `{0}` for this system")]
    UnknownGenerator(String),
}
