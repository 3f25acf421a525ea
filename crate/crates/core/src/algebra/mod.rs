//! Exact arithmetic kernels: rationals, sparse Laurent polynomials in (z, u),
//! dense rational linear algebra, incremental sparse spans, and field towers
//! with dynamic evaluation.

pub mod laurent;
pub mod matrix;
pub mod rat;
pub mod span;
pub mod tower;

pub use laurent::{zu_multiply, LaurentZU};
pub use matrix::{rref_rank_kernel, QMatrix};
pub use rat::{frac, rat, Rat};
pub use span::{KernelTracker, SparseVec, Span};
pub use tower::{tower_invert, univariate_squarefree_gcd, Elem, Inversion, SplitEvent, TPoly, Tower};
