//! Largest-root estimation for real-rooted polynomials from their leading
//! coefficients, together with certified constructions showing how much those
//! coefficients can hide.
//!
//! All coefficient arithmetic is exact over [`rational::Rational`]. Irrational
//! quantities (roots, logarithms, cosines) are carried as rational enclosures
//! that are refined on demand, so every comparison the crate reports is
//! decided exactly.

pub mod bounds;
pub mod chebyshev;
pub mod error;
pub mod graphs;
pub mod interlacing;
pub mod lowerbounds;
pub mod maxroot;
pub mod poly;
pub mod rational;
pub mod selftest;
pub mod symfuncs;

pub use error::{Error, Result};
pub use poly::{ExactPolynomial, SquareMatrixQ};
pub use rational::Rational;
