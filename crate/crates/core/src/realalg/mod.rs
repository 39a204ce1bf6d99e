//! Exact real algebra: univariate and bivariate rational polynomials,
//! resultants, real root isolation and real algebraic numbers.

pub mod algebraic;
pub mod bivar;
pub mod field;
pub mod roots;
pub mod upoly;

pub use algebraic::{simplest_between, AlgebraicNumber, RealCoord};
pub use bivar::{discriminant_y, resultant_x, resultant_y, BivarPoly};
pub use field::{roots_over, sign_at, AlgebraicField};
pub use roots::{isolate_real_roots, sturm_count, RootInterval};
pub use upoly::{rat, ratio, Rational, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("polynomial degree too low")]
    DegreeTooLow,
}
