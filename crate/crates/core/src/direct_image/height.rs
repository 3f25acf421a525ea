//! Height: the length of the first derived direct image.
//!
//! Over the two charts, the obstruction space decomposes into windows
//! `W_m = span{ z^k u^m : m-j+1 <= k <= -1 }` for `0 <= m <= j-2` (total
//! dimension j(j-1)/2). The only coboundaries that can land there come from
//! source monomials `d_{m',k'}` with `0 <= m' <= j-3`, `-j <= k' <= m'`
//! (these are the chart-two monomials whose second-row contribution can be
//! cancelled exactly, leaving `p * d` in the first row). The height is the
//! window dimension minus the rank of that single joint matrix.

use crate::algebra::laurent::LaurentZU;
use crate::algebra::matrix::QMatrix;
use crate::error::Result;

/// The assembled window/source data for one `(j, p)`.
#[derive(Clone, Debug)]
pub struct HeightProblem {
    pub window_dim: usize,
    pub matrix: QMatrix,
}

impl HeightProblem {
    pub fn build(j: u32, p: &LaurentZU) -> Result<HeightProblem> {
        p.require_positive_u_degrees()?;
        let j = j as i64;

        // window slots (m, k), row-major in (m, k) order
        let mut row_index = std::collections::BTreeMap::new();
        for m in 0..=(j - 2) {
            for k in (m - j + 1)..=-1 {
                let idx = row_index.len();
                row_index.insert((m, k), idx);
            }
        }
        let window_dim = row_index.len();

        // source columns (m', k')
        let mut cols = Vec::new();
        for mp in 0..=(j - 3) {
            for kp in -j..=mp {
                cols.push((mp, kp));
            }
        }

        let mut matrix = QMatrix::zero(window_dim, cols.len());
        for (ci, &(mp, kp)) in cols.iter().enumerate() {
            for (i, l, coeff) in p.terms() {
                let m = mp + i;
                let k = kp + l;
                if let Some(&ri) = row_index.get(&(m, k)) {
                    let v = matrix.at(ri, ci) + coeff;
                    matrix.set(ri, ci, v);
                }
            }
        }
        Ok(HeightProblem { window_dim, matrix })
    }
}

/// h = dim(windows) - rank(Psi). Accepts raw or canonical `p`; monomials
/// outside the canonical window contribute nothing structurally.
pub fn height(j: u32, p: &LaurentZU) -> Result<u64> {
    if j <= 1 {
        p.require_positive_u_degrees()?;
        return Ok(0);
    }
    let prob = HeightProblem::build(j, p)?;
    Ok((prob.window_dim - prob.matrix.rank()) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;
    use crate::error::Error;

    fn zu(terms: &[(i64, i64, i64)]) -> LaurentZU {
        let mut p = LaurentZU::zero();
        for &(u, z, c) in terms {
            p.add_term(u, z, rat(c));
        }
        p
    }

    #[test]
    fn split_bundle_heights() {
        // h(j, 0) = j(j-1)/2
        for j in 1..=6u32 {
            assert_eq!(
                height(j, &LaurentZU::zero()).unwrap(),
                (j as u64) * (j as u64 - 1) / 2
            );
        }
        assert_eq!(height(4, &LaurentZU::zero()).unwrap(), 6);
        assert_eq!(height(1, &LaurentZU::zero()).unwrap(), 0);
    }

    #[test]
    fn table_heights() {
        assert_eq!(height(4, &zu(&[(2, 0, 1)])).unwrap(), 5);
        assert_eq!(height(4, &zu(&[(5, 2, 1)])).unwrap(), 6);
        assert_eq!(height(4, &zu(&[(5, 2, -1)])).unwrap(), 6);
        assert_eq!(height(4, &zu(&[(3, 0, 1)])).unwrap(), 6);
    }

    #[test]
    fn j2_height_is_always_one() {
        // the single window receives no columns
        for p in [
            LaurentZU::zero(),
            zu(&[(1, 0, 1)]),
            zu(&[(1, 1, 2), (2, 1, -3)]),
        ] {
            assert_eq!(height(2, &p).unwrap(), 1);
        }
    }

    #[test]
    fn u_degree_zero_is_rejected() {
        assert_eq!(
            height(3, &zu(&[(0, 2, 1)])).unwrap_err(),
            Error::UDegreeZeroTerm
        );
    }
}
