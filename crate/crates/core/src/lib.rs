//! Exact computation of the degree of equidimensional polynomial ideals.
//!
//! The degree of an ideal of dimension `m` is the dimension of the quotient
//! after cutting with `m` generic affine hyperplanes. This crate computes it
//! by substituting random integer coefficients for the generic ones, cutting
//! to a zero-dimensional ideal, counting standard monomials of a Gröbner
//! basis, and taking a majority vote over independent trials. A Hilbert
//! series computation on the homogenized ideal provides an independent
//! cross-check, and the `bezout` module certifies secant and regular
//! sequences and checks Bézout-type degree inequalities.

pub mod bezout;
pub mod corpus;
pub mod degree;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use error::PolyError;
pub use field::{CoefficientField, Field, PrimeField, Rationals};
pub use groebner::{buchberger, GroebnerBasis, QuotientDimension, Staircase};
pub use ideal::{IdealFile, IdealPresentation};
pub use monomial::{ExponentVector, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
