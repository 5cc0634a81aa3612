//! The exact coefficient field Q(i) and polynomial arithmetic.

mod monomial;
mod poly;
mod scalar;

pub use monomial::{monomials_in_box, Monomial, MonomialOrder};
pub use poly::{box_basis, univariate_from_roots, MultiPoly};
pub use scalar::GaussianRational;
