//! The section module of the direct image.
//!
//! A section is a pair (a, b) of polynomials in (z, u), subject to transition
//! holomorphy in the second chart:
//!   (C1) the u-degree-m slice of b has z-degree <= m + j,
//!   (C2) the u-degree-m slice of z^j a + p b has z-degree <= m,
//!   (C3) a and b are polynomials (no negative z powers).
//! The module structure is x.(a,b) = (u a, u b), y.(a,b) = (z u a, z u b).
//!
//! For a truncation at u-degree D the constraints reduce to a small linear
//! system on the b-coefficients alone: for m < j the slice of p b must vanish
//! in z-degrees (m, j) outright, while for j <= m <= D the a-slice absorbs
//! everything above degree m; slices above D have no a-slice at all, so there
//! p b must vanish above z-degree m. The a-freedom contributes
//! max(0, m - j + 1) extra dimensions per slice.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num::Zero;

use crate::algebra::laurent::LaurentZU;
use crate::algebra::matrix::{rref_rank_kernel, QMatrix};
use crate::algebra::rat::Rat;
use crate::algebra::span::{SparseVec, Span};
use crate::error::Result;

/// Coordinate of a section coefficient: (component 0=a 1=b, u-degree,
/// z-degree).
pub type SecKey = (u8, i64, i64);

pub type Section = SparseVec<SecKey>;

#[derive(Clone, Debug)]
pub struct SectionSpace {
    j: i64,
    /// u-degree -> [(z-degree, coeff)] slices of p
    p_slices: BTreeMap<i64, Vec<(i64, Rat)>>,
    /// max u-degree of p (0 when p = 0)
    du: i64,
    dim_cache: RefCell<BTreeMap<i64, usize>>,
}

impl SectionSpace {
    pub fn new(j: u32, p: &LaurentZU) -> Result<SectionSpace> {
        p.require_positive_u_degrees()?;
        let mut p_slices: BTreeMap<i64, Vec<(i64, Rat)>> = BTreeMap::new();
        for (u, z, c) in p.terms() {
            p_slices.entry(u).or_default().push((z, c.clone()));
        }
        let du = p.max_u_degree().unwrap_or(0);
        Ok(SectionSpace {
            j: j as i64,
            p_slices,
            du,
            dim_cache: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    fn b_vars(&self, d: i64) -> Vec<(i64, i64)> {
        let mut v = Vec::new();
        for m in 0..=d {
            for t in 0..=(m + self.j) {
                v.push((m, t));
            }
        }
        v
    }

    /// One constraint row: coefficient of z^k in the u-degree-m' slice of
    /// p b, as a sparse functional on the b-variables.
    fn constraint_row(
        &self,
        mp: i64,
        k: i64,
        d: i64,
        index: &BTreeMap<(i64, i64), usize>,
    ) -> Vec<(usize, Rat)> {
        let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
        for (&i, slice) in &self.p_slices {
            let s = mp - i;
            if s < 0 || s > d {
                continue;
            }
            for (l, c) in slice {
                let t = k - l;
                if t < 0 || t > s + self.j {
                    continue;
                }
                let vi = index[&(s, t)];
                let e = row.entry(vi).or_insert_with(Rat::zero);
                *e += c;
            }
        }
        row.retain(|_, v| !v.is_zero());
        row.into_iter().collect()
    }

    /// All constraint rows for truncation degree `d`, sparse over b-vars.
    fn eq_rows(&self, d: i64) -> (usize, Vec<Vec<(usize, Rat)>>) {
        let vars = self.b_vars(d);
        let index: BTreeMap<(i64, i64), usize> =
            vars.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut rows = Vec::new();
        // slices <= d with m < j: the z-degrees in (m, j) of p b cannot be
        // cancelled by z^j a_m and must vanish
        for mp in 0..=d.min(self.j - 1) {
            for k in (mp + 1)..self.j {
                let row = self.constraint_row(mp, k, d, &index);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        // slices above the truncation have no a-slice at all
        for mp in (d + 1)..=(d + self.du) {
            let kmax = self
                .p_slices
                .iter()
                .filter(|(&i, _)| mp - i >= 0 && mp - i <= d)
                .flat_map(|(&i, slice)| slice.iter().map(move |(l, _)| l + (mp - i) + self.j))
                .max();
            if let Some(kmax) = kmax {
                for k in (mp + 1)..=kmax {
                    let row = self.constraint_row(mp, k, d, &index);
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        (vars.len(), rows)
    }

    fn eq_rank(&self, d: i64) -> usize {
        let (_, rows) = self.eq_rows(d);
        let mut span: Span<usize> = Span::new();
        for r in rows {
            span.insert(SparseVec { terms: r });
        }
        span.dim()
    }

    fn a_free_count(&self, d: i64) -> usize {
        (self.j..=d).map(|m| (m - self.j + 1) as usize).sum()
    }

    /// Dimension of the space of sections with u-degree <= d.
    pub fn dim(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        if let Some(&v) = self.dim_cache.borrow().get(&d) {
            return v;
        }
        let bc = self.b_vars(d).len();
        let v = bc + self.a_free_count(d) - self.eq_rank(d);
        self.dim_cache.borrow_mut().insert(d, v);
        v
    }

    /// Deterministic basis of the space of sections with u-degree <= d:
    /// kernel-basis sections (with canonically completed a-parts) followed by
    /// the pure a-sections (z^t u^m, 0), j <= m <= d, 0 <= t <= m-j.
    pub fn basis(&self, d: i64) -> Vec<Section> {
        if d < 0 {
            return Vec::new();
        }
        let vars = self.b_vars(d);
        let (ncols, rows) = self.eq_rows(d);
        let mut dense = QMatrix::zero(rows.len(), ncols);
        for (ri, row) in rows.iter().enumerate() {
            for (ci, c) in row {
                dense.set(ri, *ci, c.clone());
            }
        }
        let (_, kernel) = rref_rank_kernel(&dense);
        let mut out = Vec::with_capacity(kernel.len() + self.a_free_count(d));
        for kv in kernel {
            out.push(self.assemble(&vars, &kv, d));
        }
        for m in self.j..=d {
            for t in 0..=(m - self.j) {
                out.push(Section::unit((0, m, t)));
            }
        }
        out
    }

    /// Build the full section from a b-coefficient assignment, choosing the
    /// zero free part for every a-slice.
    fn assemble(&self, vars: &[(i64, i64)], coeffs: &[Rat], d: i64) -> Section {
        let mut b: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for (k, c) in vars.iter().zip(coeffs) {
            if !c.is_zero() {
                b.insert(*k, c.clone());
            }
        }
        let mut terms: Vec<(SecKey, Rat)> = Vec::new();
        for (&(m, t), c) in &b {
            terms.push(((1, m, t), c.clone()));
        }
        // c_m = (p b)_m; the a-slice kills its inadmissible high part
        for m in 0..=(d + self.du) {
            let mut c_m: BTreeMap<i64, Rat> = BTreeMap::new();
            for (&i, slice) in &self.p_slices {
                let s = m - i;
                if s < 0 || s > d {
                    continue;
                }
                for (l, pc) in slice {
                    for t in 0..=(s + self.j) {
                        if let Some(bc) = b.get(&(s, t)) {
                            let e = c_m.entry(l + t).or_insert_with(Rat::zero);
                            *e += pc * bc;
                        }
                    }
                }
            }
            c_m.retain(|_, v| !v.is_zero());
            if m <= d {
                let cut = if m < self.j { self.j } else { m + 1 };
                for (&k, v) in &c_m {
                    if k >= cut {
                        debug_assert!(k - self.j >= 0);
                        terms.push(((0, m, k - self.j), -v.clone()));
                    }
                }
            } else {
                debug_assert!(
                    c_m.keys().all(|&k| k <= m),
                    "truncation constraints violated"
                );
            }
        }
        Section::collect(terms)
    }

    /// Per-u-degree dimensions (successive filtration quotients) up to `d`.
    pub fn slice_dims(&self, d: i64) -> Vec<usize> {
        let mut out = Vec::new();
        let mut prev = 0;
        for m in 0..=d {
            let cur = self.dim(m);
            out.push(cur - prev);
            prev = cur;
        }
        out
    }
}

/// Per-u-degree dimensions of the truncated section module.
pub fn section_space_dim(j: u32, p: &LaurentZU, d: u32) -> Result<Vec<usize>> {
    Ok(SectionSpace::new(j, p)?.slice_dims(d as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn split_j2_dims() {
        let p = LaurentZU::zero();
        assert_eq!(section_space_dim(2, &p, 0).unwrap(), vec![3]);
        assert_eq!(section_space_dim(2, &p, 1).unwrap(), vec![3, 4]);
    }

    #[test]
    fn split_j1_free_growth() {
        let p = LaurentZU::zero();
        assert_eq!(section_space_dim(1, &p, 1).unwrap(), vec![2, 4]);
        // rank-2 free growth 2(m+1)
        assert_eq!(section_space_dim(1, &p, 4).unwrap(), vec![2, 4, 6, 8, 10]);
    }

    #[test]
    fn generic_j2_dims() {
        // p = z*u: M_0 is one-dimensional, spanned by (0, 1)
        let p = LaurentZU::monomial(1, 1, rat(1));
        let space = SectionSpace::new(2, &p).unwrap();
        assert_eq!(space.dim(0), 1);
        assert_eq!(space.dim(1), 5);
        assert_eq!(space.dim(2), 11);
        let basis = space.basis(0);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].terms, vec![((1, 0, 0), rat(1))]);
    }

    #[test]
    fn sections_satisfy_constraints() {
        // every basis section of (3, u + z*u^2) honors (C1)-(C3)
        let mut p = LaurentZU::monomial(1, 0, rat(1));
        p.add_term(2, 1, rat(1));
        let space = SectionSpace::new(3, &p).unwrap();
        for d in 0..=5 {
            for s in space.basis(d) {
                check_section(3, &p, &s, d);
            }
            assert_eq!(space.basis(d).len(), space.dim(d));
        }
    }

    fn check_section(j: i64, p: &LaurentZU, s: &Section, d: i64) {
        use std::collections::BTreeMap;
        let mut a = LaurentZU::zero();
        let mut b = LaurentZU::zero();
        for ((comp, m, t), c) in &s.terms {
            assert!(*t >= 0, "(C3) violated");
            assert!(*m <= d, "truncation violated");
            if *comp == 0 {
                a.add_term(*m, *t, c.clone());
            } else {
                assert!(*t <= m + j, "(C1) violated");
                b.add_term(*m, *t, c.clone());
            }
        }
        // z^j a + p b must have z-degree <= m in every u-slice
        let zj = LaurentZU::monomial(0, j, rat(1));
        let lhs = &crate::algebra::laurent::zu_multiply(&zj, &a)
            + &crate::algebra::laurent::zu_multiply(p, &b);
        let mut max_by_slice: BTreeMap<i64, i64> = BTreeMap::new();
        for (u, z, _) in lhs.terms() {
            let e = max_by_slice.entry(u).or_insert(i64::MIN);
            *e = (*e).max(z);
        }
        for (u, z) in max_by_slice {
            assert!(z <= u, "(C2) violated at u-degree {u}");
        }
    }
}
