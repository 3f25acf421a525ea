//! Instanton numbers of rank-2 holomorphic bundles on the blown-up plane.
//!
//! A bundle with vanishing first Chern class is encoded by a pair `(j, p)`:
//! the splitting type `j` over the exceptional divisor and an extension class
//! `p`, a polynomial in `z`, `z^-1`, `u`. This crate computes the two local
//! holomorphic invariants of such a bundle — the width `w` (length of the
//! double-dual quotient of the direct image) and the height `h` (length of the
//! first derived direct image) — whose sum is the local jump of the second
//! Chern class. It also computes the classical invariants of a plane-curve
//! germ at the origin (multiplicity, Milnor and Tjurina numbers, delta, branch
//! count), and converts curves to bundle data through `x -> u`, `y -> z*u`, so
//! the instanton pair can be used as a curve invariant.
//!
//! Everything is exact: coefficients live in Q or in finite extension towers
//! handled by dynamic evaluation.

pub mod algebra;
pub mod bundle;
pub mod census;
pub mod curve;
pub mod direct_image;
pub mod error;

pub use bundle::{canonicalize, embed_next, from_curve, splits_on_neighborhood, CanonicalBundle, RawExtensionData};
pub use census::{census, census_exhaustive, sample_polynomials, verify_stratification_bounds, CensusReport};
pub use curve::{curve_invariants, delta_and_branches, jet_colength, milnor_tjurina, multiplicity, reducedness_check, CurveInvariants, CurvePoly, ResolutionTree};
pub use direct_image::{charge_report, height, module_presentation, section_space_dim, width, Bounds, InstantonNumbers, Presentation};
pub use error::{Error, Result};
