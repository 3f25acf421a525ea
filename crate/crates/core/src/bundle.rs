//! Rank-2 bundles on the blown-up plane as pairs `(j, p)`.
//!
//! In the fixed charts `(z, u)` and `(xi, v) = (z^-1, z*u)` a bundle with
//! vanishing first Chern class and splitting type `j` has transition matrix
//! `[[z^j, p], [0, z^-j]]`, where the extension class `p` can be reduced to
//! the canonical coefficient window `1 <= i <= 2j-2`, `i-j+1 <= l <= j-1`
//! (monomials `z^l u^i`). Monomials outside the window are coboundaries, so
//! canonicalization simply deletes them.

use num::Zero;

use crate::algebra::laurent::LaurentZU;
use crate::curve::CurvePoly;
use crate::error::{Error, Result};

/// Pair `(j, p)` with `p` inside the canonical window. For `j = 1` the window
/// is empty, forcing `p = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBundle {
    j: u32,
    p: LaurentZU,
}

impl CanonicalBundle {
    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn p(&self) -> &LaurentZU {
        &self.p
    }

    /// Number of window monomials: J = (j-1)(2j-1).
    pub fn coefficient_budget(j: u32) -> u64 {
        let j = j as u64;
        (j - 1) * (2 * j - 1)
    }

    /// Window monomials for splitting type `j`, in lexicographic order
    /// (u-exponent ascending, then z-exponent ascending).
    pub fn window(j: u32) -> Vec<(i64, i64)> {
        let j = j as i64;
        let mut w = Vec::new();
        for i in 1..=(2 * j - 2) {
            for l in (i - j + 1)..=(j - 1) {
                w.push((i, l));
            }
        }
        w
    }

    pub fn in_window(j: u32, u_exp: i64, z_exp: i64) -> bool {
        let j = j as i64;
        u_exp >= 1 && u_exp <= 2 * j - 2 && z_exp >= u_exp - j + 1 && z_exp <= j - 1
    }
}

/// Unreduced extension data: `j` plus any `p` with all u-exponents >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawExtensionData {
    pub j: u32,
    pub p: LaurentZU,
}

impl RawExtensionData {
    pub fn new(j: u32, p: LaurentZU) -> Result<Self> {
        assert!(j >= 1, "splitting type must be positive");
        p.require_positive_u_degrees()?;
        Ok(RawExtensionData { j, p })
    }
}

/// Delete every monomial outside the canonical window. This is a complete
/// reduction: the removable monomials span exactly the coboundaries
/// `p - z^j a + z^-j b` with `a` holomorphic on one chart and `b` on the
/// other.
pub fn canonicalize(raw: &RawExtensionData) -> CanonicalBundle {
    let mut p = LaurentZU::zero();
    for (u, z, c) in raw.p.terms() {
        if CanonicalBundle::in_window(raw.j, u, z) {
            p.add_term(u, z, c.clone());
        }
    }
    CanonicalBundle { j: raw.j, p }
}

/// Build a canonical bundle directly from window data; terms outside the
/// window are rejected rather than dropped.
pub fn canonical_from_parts(j: u32, p: LaurentZU) -> Result<CanonicalBundle> {
    p.require_positive_u_degrees()?;
    for (u, z, _) in p.terms() {
        if !CanonicalBundle::in_window(j, u, z) {
            return Err(Error::InvariantViolation(format!(
                "monomial z^{z}*u^{u} outside the canonical window for j={j}"
            )));
        }
    }
    Ok(CanonicalBundle { j, p })
}

/// The bundle E(j, p) of a plane curve through the origin: substitute
/// `x -> u`, `y -> z*u` and canonicalize.
pub fn from_curve(curve: &CurvePoly, j: u32) -> Result<CanonicalBundle> {
    if curve.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !curve.constant_term().is_zero() {
        return Err(Error::CurveNotThroughOrigin);
    }
    Ok(canonicalize(&RawExtensionData::new(j, curve_substitution(curve))?))
}

/// The raw extension class `p(u, z*u)` before window reduction.
pub fn curve_substitution(curve: &CurvePoly) -> LaurentZU {
    let mut p = LaurentZU::zero();
    for (a, b, c) in curve.terms() {
        p.add_term((a + b) as i64, b as i64, c.clone());
    }
    p
}

/// The embedding of moduli `(j, p) -> (j+1, z*u^2*p)`. The image always lies
/// inside the window for `j+1` and splits on the second formal neighborhood.
pub fn embed_next(b: &CanonicalBundle) -> CanonicalBundle {
    let shift = LaurentZU::monomial(2, 1, crate::algebra::rat::rat(1));
    let p = crate::algebra::laurent::zu_multiply(&shift, b.p());
    debug_assert!(p
        .terms()
        .all(|(u, z, _)| CanonicalBundle::in_window(b.j() + 1, u, z)));
    CanonicalBundle { j: b.j() + 1, p }
}

/// True iff the bundle restricted to the n-th formal neighborhood of the
/// exceptional divisor splits, i.e. `p` has no monomial with u-exponent <= n.
pub fn splits_on_neighborhood(b: &CanonicalBundle, n: u32) -> bool {
    match b.p().min_u_degree() {
        None => true,
        Some(min_u) => min_u > n as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn zu(terms: &[(i64, i64, i64)]) -> LaurentZU {
        let mut p = LaurentZU::zero();
        for &(u, z, c) in terms {
            p.add_term(u, z, rat(c));
        }
        p
    }

    fn xy(terms: &[(u32, u32, i64)]) -> CurvePoly {
        let mut p = CurvePoly::zero();
        for &(a, b, c) in terms {
            p.add_term(a, b, rat(c));
        }
        p
    }

    #[test]
    fn canonicalize_drops_coboundaries() {
        // (4, z*u^6 - z^4*u^4) -> (4, 0)
        let raw = RawExtensionData::new(4, zu(&[(6, 1, 1), (4, 4, -1)])).unwrap();
        assert!(canonicalize(&raw).p().is_zero());

        // (4, u^8 - z^2 u^7 - z^2 u^5 + z^4 u^4) -> (4, -z^2 u^5)
        let raw = RawExtensionData::new(4, zu(&[(8, 0, 1), (7, 2, -1), (5, 2, -1), (4, 4, 1)])).unwrap();
        assert_eq!(canonicalize(&raw).p(), &zu(&[(5, 2, -1)]));

        // (j, 0) -> (j, 0)
        let raw = RawExtensionData::new(3, LaurentZU::zero()).unwrap();
        assert!(canonicalize(&raw).p().is_zero());

        // (2, z u^2 + z^2 u^2) -> (2, z u^2)
        let raw = RawExtensionData::new(2, zu(&[(2, 1, 1), (2, 2, 1)])).unwrap();
        assert_eq!(canonicalize(&raw).p(), &zu(&[(2, 1, 1)]));
    }

    #[test]
    fn u_degree_zero_is_rejected() {
        let err = RawExtensionData::new(2, zu(&[(0, 1, 1)])).unwrap_err();
        assert_eq!(err, Error::UDegreeZeroTerm);
    }

    #[test]
    fn from_curve_examples() {
        // (x^2 - y^7, 4) -> (4, u^2)
        let b = from_curve(&xy(&[(2, 0, 1), (0, 7, -1)]), 4).unwrap();
        assert_eq!(b.p(), &zu(&[(2, 0, 1)]));

        // (x^3 - y^4, 4) -> (4, u^3)
        let b = from_curve(&xy(&[(3, 0, 1), (0, 4, -1)]), 4).unwrap();
        assert_eq!(b.p(), &zu(&[(3, 0, 1)]));

        // (x^5 y - y^4, 4) -> (4, 0)
        let b = from_curve(&xy(&[(5, 1, 1), (0, 4, -1)]), 4).unwrap();
        assert!(b.p().is_zero());

        let err = from_curve(&xy(&[(0, 0, 1), (1, 0, 1)]), 4).unwrap_err();
        assert_eq!(err, Error::CurveNotThroughOrigin);
    }

    #[test]
    fn embed_next_examples() {
        // (2, z u^2) -> (3, z^2 u^4)
        let b = canonical_from_parts(2, zu(&[(2, 1, 1)])).unwrap();
        assert_eq!(embed_next(&b).p(), &zu(&[(4, 2, 1)]));
        assert_eq!(embed_next(&b).j(), 3);

        // (j, 0) -> (j+1, 0)
        let b = canonical_from_parts(5, LaurentZU::zero()).unwrap();
        assert!(embed_next(&b).p().is_zero());

        // (3, u^2 + z^2 u^4) -> (4, z u^4 + z^3 u^6)
        let b = canonical_from_parts(3, zu(&[(2, 0, 1), (4, 2, 1)])).unwrap();
        assert_eq!(embed_next(&b).p(), &zu(&[(4, 1, 1), (6, 3, 1)]));
    }

    #[test]
    fn splitting_neighborhoods() {
        let b = canonical_from_parts(4, zu(&[(2, 0, 1)])).unwrap();
        assert!(splits_on_neighborhood(&b, 1));
        assert!(!splits_on_neighborhood(&b, 2));

        let split = canonical_from_parts(4, LaurentZU::zero()).unwrap();
        for n in 0..10 {
            assert!(splits_on_neighborhood(&split, n));
        }

        let a = canonical_from_parts(2, zu(&[(2, 1, 1)])).unwrap();
        assert!(splits_on_neighborhood(&a, 1));
        assert!(!splits_on_neighborhood(&a, 2));
    }

    #[test]
    fn window_size_matches_budget() {
        for j in 1..=6 {
            assert_eq!(
                CanonicalBundle::window(j).len() as u64,
                CanonicalBundle::coefficient_budget(j)
            );
        }
    }
}
