//! Exact symbolic engine for deformation quantization of the local surfaces
//! `Z_k = Tot(O_{P^1}(-k))`: star products, line and rank-2 bundles over the
//! quantized surface, first-order moduli and instanton invariants.
//!
//! All arithmetic is over the rationals; nothing in this crate touches
//! floating point.

pub mod algebra;
pub mod bundles;
pub mod cohomology;
pub mod error;
pub mod expr;
pub mod invariants;
pub mod linalg;
pub mod moduli;
pub mod poisson;
pub mod star;

pub use algebra::{ChartId, HbarSeries, LaurentPoly, Monomial, Rational};
pub use error::{Error, Result};
