//! Elliptic curves induced by rational Diophantine triples.
//!
//! A rational Diophantine triple `{a, b, c}` (each `xy + 1` a rational square)
//! induces `y^2 = (ax+1)(bx+1)(cx+1)`. This crate validates triples, builds the
//! induced curve, classifies its torsion, generates the classical families with
//! prescribed torsion, and runs the search for all-positive triples whose curve
//! has torsion Z/2 x Z/8. All arithmetic is exact.

pub mod cli;
pub mod ec;
pub mod error;
pub mod families;
pub mod qarith;
pub mod search;
pub mod torsion;
pub mod triples;

pub use ec::{Curve, Order, Point};
pub use error::{Error, Result};
pub use qarith::{int_isqrt, is_perfect_square, rat, sqrt_exact, Rat};
pub use torsion::TorsionClass;
pub use triples::Triple;
