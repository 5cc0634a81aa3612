//! Exact symbolic computation of Grothendieck residues, residue quadratic
//! forms, and Lagrange interpolators for zero-dimensional polynomial
//! systems over the Gaussian rationals, together with solvers for two
//! non-standard multipoint interpolation problems.
//!
//! Everything is computed in exact arithmetic over Q(i): results are
//! identities, not approximations, and all checks in the test suite are
//! zero-tolerance equalities.
//!
//! The main pipeline:
//! 1. present an ideal by exactly `n` generators in `n` variables
//!    ([`ideal::IdealPresentation`]);
//! 2. compute a reduced Groebner basis with cofactor tracking
//!    ([`ideal::buchberger`]) and the separating data `q = A * p`
//!    ([`ideal::GroebnerData::transformation_data`]);
//! 3. evaluate global and local residues ([`residue`]);
//! 4. build the residue quadratic form and interpolators, and solve the
//!    interpolation problems ([`interp`]).

pub mod algebra;
pub mod error;
pub mod ideal;
pub mod interp;
pub mod matrix;
pub mod parse;
pub mod residue;

pub use error::Error;
