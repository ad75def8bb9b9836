//! Line bundles and rank-2 bundles over the quantized surface.
//!
//! Transition functions act as `s_V = T s_U`. With this convention `O(n)` has
//! transition function `z^{-n}`, and the canonical matrix
//! `(z^j, p; 0, z^{-j})` is an extension of `O(j)` by `O(-j)`.

mod ext;
mod filtration;
mod line;
mod split;
mod splitting_type;
mod witness;

pub use ext::{ext_reduce, ext_window, in_window, ExtClass};
pub use filtration::filtration_reduce;
pub use line::{line_bundle_normalize, LineBundleRep};
pub use split::{split_h1, Split};
pub use splitting_type::{h0_restricted, restriction_splitting_type};
pub use witness::GaugeWitness;
