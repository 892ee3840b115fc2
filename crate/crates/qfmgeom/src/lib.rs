//! Riemannian geometry induced on the codomain of Hamiltonian quantum
//! feature maps `U(p) = exp(sum_k f_k(p) L_k)`.
//!
//! The crate is organized around the pipeline a feature-map analysis runs
//! through:
//!
//! - [`pauli`]: exact symbolic algebra of Pauli strings: products with phase
//!   tracking, commutators of skew-Hermitian Pauli sums, Lie closure, and
//!   dense rendering.
//! - [`linalg`]: dense complex kernels: Hermitian eigendecomposition (cyclic
//!   Jacobi), exponential of skew-Hermitian operators, principal logarithm of
//!   unitaries, and the `SU` distance `||log(U1^dag U2)||_F`.
//! - [`expr`]: parser, evaluator, and symbolic differentiator for the smooth
//!   pre-processing functions `f_k`.
//! - [`feature_map`]: the map itself: `L(p)`, `U(p)`, commutativity and
//!   dequantizability checks, and tangent vectors via the truncated
//!   `ad`-series of the exponential derivative.
//! - [`geometry`]: metric, orthonormal frames, Levi-Civita connection,
//!   curvature tensor, sectional/Ricci/scalar curvature, adjoint and Killing
//!   forms, and the nearest-operator-to-geodesic search.
//! - [`manifold`]: base data manifolds (Poincare half-plane patch, Euclidean
//!   box), grid generation, and pulled-back path lengths.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so the whole crate is safe to drive from parallel grid sweeps.

pub mod error;
pub mod expr;
pub mod feature_map;
pub mod geometry;
pub mod linalg;
pub mod manifold;
pub mod pauli;

pub use error::{Error, Result};
