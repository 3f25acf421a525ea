//! Instanton numbers: height via the two-chart cohomology windows, width via
//! the certified presentation of the section module, charge as their sum.

mod groebner;
mod height;
mod presentation;
mod sections;

pub use height::{height, HeightProblem};
pub use presentation::{module_presentation, Bounds, Presentation, XyPoly};
pub use sections::{section_space_dim, SecKey, Section, SectionSpace};

use crate::algebra::LaurentZU;
use crate::error::{Error, Result};

/// The pair (width, height) and the local second Chern class jump w + h.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstantonNumbers {
    pub width: u64,
    pub height: u64,
    pub charge: u64,
}

impl InstantonNumbers {
    /// Assemble and assert the structural bounds: w >= 1, h >= j-1,
    /// j <= w + h <= j^2.
    pub fn checked(j: u32, width: u64, height: u64) -> Result<InstantonNumbers> {
        let charge = width + height;
        let j64 = j as u64;
        if width < 1 || height < j64 - 1 || charge < j64 || charge > j64 * j64 {
            return Err(Error::InvariantViolation(format!(
                "(w, h) = ({width}, {height}) violates the bounds for j = {j}"
            )));
        }
        Ok(InstantonNumbers {
            width,
            height,
            charge,
        })
    }
}

/// Width: the length of the double-dual quotient of the direct image,
/// computed as the length of Ext^1 of the section module.
pub fn width(j: u32, p: &LaurentZU, bounds: &Bounds) -> Result<u64> {
    let space = sections::SectionSpace::new(j, p)?;
    let pres = presentation::presentation_for_space(&space, bounds)?;
    presentation::width_from_presentation(j, &pres, bounds)
}

/// Width and height together, with the structural bounds asserted.
pub fn charge_report(j: u32, p: &LaurentZU, bounds: &Bounds) -> Result<InstantonNumbers> {
    let h = height(j, p)?;
    let w = width(j, p, bounds)?;
    InstantonNumbers::checked(j, w, h)
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

    #[test]
    fn charge_of_split_bundles() {
        // (j, 0) -> (j(j+1)/2, j(j-1)/2), charge j^2
        for j in 1..=4u32 {
            let n = charge_report(j, &LaurentZU::zero(), &Bounds::for_j(j)).unwrap();
            let j64 = j as u64;
            assert_eq!(n.width, j64 * (j64 + 1) / 2);
            assert_eq!(n.height, j64 * (j64 - 1) / 2);
            assert_eq!(n.charge, j64 * j64);
        }
    }

    #[test]
    fn j1_is_generic() {
        let n = charge_report(1, &LaurentZU::zero(), &Bounds::for_j(1)).unwrap();
        assert_eq!((n.width, n.height, n.charge), (1, 0, 1));
    }

    #[test]
    fn generic_j2_point() {
        let n = charge_report(2, &zu(&[(1, 1, 1)]), &Bounds::for_j(2)).unwrap();
        assert_eq!((n.width, n.height, n.charge), (1, 1, 2));
    }
}
