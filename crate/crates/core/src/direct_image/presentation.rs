//! Filtered presentation of the section module and the width.
//!
//! Generators are the new section classes per u-degree not already generated
//! by lower degrees (filtered Nakayama); relations are minimal kernel
//! generators of the induced surjection, discovered as exact dependencies
//! while the generated span is row-reduced degree by degree. A presentation
//! is accepted only under certification: the relation count must equal
//! generator count minus two, the Hilbert function of F0/im(phi) must match
//! the section-space dimensions through the relation bound, and phi must have
//! full column rank over the fraction field. The width is then the length of
//! coker(phi^T), read off the lead-term staircase of its row module.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::algebra::rat::{rat, Rat};
use crate::algebra::span::{KernelTracker, SparseVec, Span};
use crate::algebra::QMatrix;
use crate::direct_image::groebner::{
    buchberger, free_count_upto, lead_count_upto, lead_staircases, std_count_at_degree,
    GroebnerCtx, ModKey, ModPoly,
};
use crate::direct_image::sections::{SecKey, Section, SectionSpace};
use crate::error::{Error, Result};

/// Truncation bounds for presentation extraction and certification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub gen_bound: i64,
    pub rel_bound: i64,
    pub coker_cap: i64,
}

impl Bounds {
    pub fn for_j(j: u32) -> Bounds {
        Self::with_gen_bound(j, 2 * j as i64 + 2)
    }

    /// Bounds with an overridden generator bound (the `--max-degree` knob).
    pub fn with_gen_bound(j: u32, gen_bound: i64) -> Bounds {
        let j = j as i64;
        let rel_bound = gen_bound + 2 * j + 2;
        Bounds {
            gen_bound,
            rel_bound,
            coker_cap: rel_bound + j * j + 2,
        }
    }
}

/// Polynomial in x, y over Q, used for the entries of phi.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct XyPoly {
    pub terms: BTreeMap<(u32, u32), Rat>,
}

impl XyPoly {
    pub fn zero() -> Self {
        XyPoly::default()
    }

    pub fn monomial(x_exp: u32, y_exp: u32, c: Rat) -> Self {
        let mut p = XyPoly::zero();
        if !c.is_zero() {
            p.terms.insert((x_exp, y_exp), c);
        }
        p
    }

    pub fn var_x() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    pub fn var_y() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    pub fn neg(&self) -> Self {
        XyPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..a {
                t *= x;
            }
            for _ in 0..b {
                t *= y;
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for XyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(a, b), c)) in self.terms.iter().enumerate() {
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !c.abs().is_one() || (a == 0 && b == 0) {
                factors.push(c.abs().to_string());
            }
            if a == 1 {
                factors.push("x".into());
            } else if a > 1 {
                factors.push(format!("x^{a}"));
            }
            if b == 1 {
                factors.push("y".into());
            } else if b > 1 {
                factors.push(format!("y^{b}"));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Coordinate in the free cover F0: (generator index, x-exp, y-exp).
pub type F0Key = ModKey;

#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<Section>,
    pub gen_degrees: Vec<i64>,
    pub relations: Vec<SparseVec<F0Key>>,
    pub rel_degrees: Vec<i64>,
    /// phi[gen][rel]: the relation matrix, columns are minimal relations.
    pub phi: Vec<Vec<XyPoly>>,
}

/// Multiply a section by x^alpha y^beta: u-degree rises by alpha+beta,
/// z-degree by beta. Uniform shifts preserve the key order.
fn shift_section(s: &Section, total: i64, z_shift: i64) -> Section {
    SparseVec {
        terms: s
            .terms
            .iter()
            .map(|((c, u, z), v)| ((*c, u + total, z + z_shift), v.clone()))
            .collect(),
    }
}

fn shift_f0(r: &SparseVec<F0Key>, dx: u32, dy: u32) -> SparseVec<F0Key> {
    SparseVec {
        terms: r
            .terms
            .iter()
            .map(|((g, a, b), v)| ((*g, a + dx, b + dy), v.clone()))
            .collect(),
    }
}

/// Filtered Nakayama generator extraction through `gen_bound`.
fn extract_generators(space: &SectionSpace, gen_bound: i64) -> (Vec<Section>, Vec<i64>) {
    let mut gens: Vec<Section> = Vec::new();
    let mut degrees: Vec<i64> = Vec::new();
    let mut span: Span<SecKey> = Span::new();
    for m in 0..=gen_bound {
        for (g, &dg) in gens.iter().zip(&degrees) {
            if m > dg {
                let k = m - dg;
                for beta in 0..=k {
                    span.insert(shift_section(g, k, beta));
                }
            }
        }
        for v in space.basis(m) {
            let mut r = span.reduce(v);
            if !r.is_zero() {
                r.normalize();
                span.insert(r.clone());
                gens.push(r);
                degrees.push(m);
            }
        }
    }
    (gens, degrees)
}

/// Minimal relations through filtration degree `cap`: row-reduce the
/// monomial multiples of the generators in degree order; every dependency is
/// a kernel element, kept when not generated by earlier relations.
fn extract_relations(
    gens: &[Section],
    gen_degrees: &[i64],
    cap: i64,
) -> (Vec<SparseVec<F0Key>>, Vec<i64>) {
    let mut tracker: KernelTracker<SecKey> = KernelTracker::new();
    let mut relspan: Span<F0Key> = Span::new();
    let mut relations: Vec<SparseVec<F0Key>> = Vec::new();
    let mut rel_degrees: Vec<i64> = Vec::new();
    let mut tags: Vec<F0Key> = Vec::new();

    for d in 0..=cap {
        for (r, &dr) in relations.clone().iter().zip(rel_degrees.clone().iter()) {
            if d > dr {
                let k = (d - dr) as u32;
                for beta in 0..=k {
                    relspan.insert(shift_f0(r, k - beta, beta));
                }
            }
        }
        for (gi, (g, &dg)) in gens.iter().zip(gen_degrees).enumerate() {
            if d < dg {
                continue;
            }
            let k = (d - dg) as u32;
            for beta in 0..=k {
                let alpha = k - beta;
                let row = shift_section(g, k as i64, beta as i64);
                let tag_id = tags.len();
                tags.push((gi, alpha, beta));
                let Some(hist) = tracker.push(row, tag_id) else {
                    continue;
                };
                let kappa: SparseVec<F0Key> = SparseVec::collect(
                    hist.terms
                        .iter()
                        .map(|(t, c)| (tags[*t], c.clone()))
                        .collect(),
                );
                let mut r = relspan.reduce(kappa);
                if !r.is_zero() {
                    r.normalize();
                    relspan.insert(r.clone());
                    relations.push(r);
                    rel_degrees.push(d);
                }
            }
        }
    }
    (relations, rel_degrees)
}

fn relations_to_modpolys(ctx: &GroebnerCtx, relations: &[SparseVec<F0Key>]) -> Vec<ModPoly> {
    relations
        .iter()
        .map(|r| ctx.sort(r.terms.clone()))
        .collect()
}

/// Hilbert certification: dim(F0 / <relations>)_{<=m} must equal the section
/// space dimension for every m through `rel_bound`. By the staircase count
/// this simultaneously certifies that the generators surject and the
/// relations exhaust the kernel through that bound.
fn certify_hilbert(
    space: &SectionSpace,
    gen_degrees: &[i64],
    relations: &[SparseVec<F0Key>],
    rel_bound: i64,
) -> bool {
    let ctx = GroebnerCtx::new(gen_degrees.to_vec());
    let gb = buchberger(&ctx, relations_to_modpolys(&ctx, relations));
    let staircases = lead_staircases(&gb, gen_degrees.len());
    for m in 0..=rel_bound {
        let free = free_count_upto(gen_degrees, m);
        let ideal = lead_count_upto(&staircases, gen_degrees, m);
        if free - ideal != space.dim(m) as u64 {
            return false;
        }
    }
    true
}

fn build_phi(n_gens: usize, relations: &[SparseVec<F0Key>]) -> Vec<Vec<XyPoly>> {
    let mut phi = vec![vec![XyPoly::zero(); relations.len()]; n_gens];
    for (ri, r) in relations.iter().enumerate() {
        for ((g, a, b), c) in &r.terms {
            phi[*g][ri].terms.insert((*a, *b), c.clone());
        }
    }
    phi
}

/// Full column rank of phi over the fraction field, certified by evaluation
/// at fixed rational points.
fn phi_full_column_rank(phi: &[Vec<XyPoly>]) -> bool {
    let n_rels = phi.first().map_or(0, |r| r.len());
    if n_rels == 0 {
        return true;
    }
    for (x0, y0) in [(2i64, 3i64), (5, 7), (11, 13)] {
        let x = rat(x0);
        let y = rat(y0);
        let rows: Vec<Vec<Rat>> = phi
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&x, &y)).collect())
            .collect();
        if QMatrix::from_rows(rows).rank() == n_rels {
            return true;
        }
    }
    false
}

/// Extract and certify a presentation of the section module of `(j, p)`.
pub fn module_presentation(
    j: u32,
    p: &crate::algebra::LaurentZU,
    bounds: &Bounds,
) -> Result<Presentation> {
    let space = SectionSpace::new(j, p)?;
    presentation_for_space(&space, bounds)
}

pub(crate) fn presentation_for_space(
    space: &SectionSpace,
    bounds: &Bounds,
) -> Result<Presentation> {
    let (generators, gen_degrees) = extract_generators(space, bounds.gen_bound);
    let max_gen_degree = gen_degrees.iter().copied().max().unwrap_or(0);
    let first_cap = (max_gen_degree + space.j() + 2).min(bounds.rel_bound);

    let mut attempt = extract_relations(&generators, &gen_degrees, first_cap);
    if !certify_hilbert(space, &gen_degrees, &attempt.0, bounds.rel_bound) {
        if first_cap < bounds.rel_bound {
            attempt = extract_relations(&generators, &gen_degrees, bounds.rel_bound);
        }
        if !certify_hilbert(space, &gen_degrees, &attempt.0, bounds.rel_bound) {
            return Err(Error::BoundsTooSmall);
        }
    }
    let (relations, rel_degrees) = attempt;
    if relations.len() + 2 != generators.len() {
        return Err(Error::BoundsTooSmall);
    }
    let phi = build_phi(generators.len(), &relations);
    if !phi_full_column_rank(&phi) {
        return Err(Error::BoundsTooSmall);
    }
    Ok(Presentation {
        generators,
        gen_degrees,
        relations,
        rel_degrees,
        phi,
    })
}

/// Width: length of coker(phi^T), summed degree by degree off the lead-term
/// staircase of the row module of phi, with the stopping rule that two
/// consecutive zero increments past 2j+2 end the sum and reaching the hard
/// cap with mass remaining is a certification failure.
pub(crate) fn width_from_presentation(
    j: u32,
    pres: &Presentation,
    bounds: &Bounds,
) -> Result<u64> {
    let n_rels = pres.relations.len();
    if n_rels == 0 {
        return Ok(0);
    }
    let ctx = GroebnerCtx::unshifted(n_rels);
    let mut rows: Vec<ModPoly> = Vec::new();
    for gi in 0..pres.generators.len() {
        let mut terms: Vec<(ModKey, Rat)> = Vec::new();
        for (ri, r) in pres.relations.iter().enumerate() {
            for ((g, a, b), c) in &r.terms {
                if *g == gi {
                    terms.push(((ri, *a, *b), c.clone()));
                }
            }
        }
        let p = ctx.sort(terms);
        if !p.is_zero() {
            rows.push(p);
        }
    }
    let gb = buchberger(&ctx, rows);
    let staircases = lead_staircases(&gb, n_rels);
    let threshold = 2 * j as i64 + 2;
    let mut acc = 0u64;
    let mut prev_zero = false;
    for d in 0..=bounds.coker_cap {
        let c = std_count_at_degree(&staircases, d);
        if c == 0 {
            if prev_zero && d >= threshold {
                return Ok(acc);
            }
            prev_zero = true;
        } else {
            acc += c;
            prev_zero = false;
        }
    }
    Err(Error::WidthCertification)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LaurentZU;

    fn zu(terms: &[(i64, i64, i64)]) -> LaurentZU {
        let mut p = LaurentZU::zero();
        for &(u, z, c) in terms {
            p.add_term(u, z, rat(c));
        }
        p
    }

    #[test]
    fn split_j2_presentation_matches_worked_form() {
        let pres = module_presentation(2, &LaurentZU::zero(), &Bounds::for_j(2)).unwrap();
        assert_eq!(pres.gen_degrees, vec![0, 0, 0, 2]);
        assert_eq!(pres.relations.len(), 2);
        // phi = [[y, 0], [-x, y], [0, -x], [0, 0]]
        let x = XyPoly::var_x();
        let y = XyPoly::var_y();
        let expected = vec![
            vec![y.clone(), XyPoly::zero()],
            vec![x.neg(), y.clone()],
            vec![XyPoly::zero(), x.neg()],
            vec![XyPoly::zero(), XyPoly::zero()],
        ];
        assert_eq!(pres.phi, expected);
    }

    #[test]
    fn split_j1_presentation() {
        let pres = module_presentation(1, &LaurentZU::zero(), &Bounds::for_j(1)).unwrap();
        assert_eq!(pres.gen_degrees, vec![0, 0, 1]);
        assert_eq!(pres.relations.len(), 1);
    }

    #[test]
    fn split_bundle_generator_counts() {
        // j+2 generators (j+1 at degree 0, one at degree j), j relations
        for j in 1..=4u32 {
            let pres = module_presentation(j, &LaurentZU::zero(), &Bounds::for_j(j)).unwrap();
            assert_eq!(pres.generators.len() as u32, j + 2, "j={j}");
            let at_zero = pres.gen_degrees.iter().filter(|&&d| d == 0).count() as u32;
            assert_eq!(at_zero, j + 1);
            assert!(pres.gen_degrees.contains(&(j as i64)));
            assert_eq!(pres.relations.len() as u32, j);
        }
    }

    #[test]
    fn generic_j2_width_is_one() {
        let pres = module_presentation(2, &zu(&[(1, 1, 1)]), &Bounds::for_j(2)).unwrap();
        assert_eq!(pres.generators.len(), 3);
        let w = width_from_presentation(2, &pres, &Bounds::for_j(2)).unwrap();
        assert_eq!(w, 1);
    }

    #[test]
    fn first_neighborhood_split_j2_width_is_two() {
        let pres = module_presentation(2, &zu(&[(2, 1, 1)]), &Bounds::for_j(2)).unwrap();
        let w = width_from_presentation(2, &pres, &Bounds::for_j(2)).unwrap();
        assert_eq!(w, 2);
    }

    #[test]
    fn split_widths_match_closed_form() {
        for j in 1..=4u32 {
            let b = Bounds::for_j(j);
            let pres = module_presentation(j, &LaurentZU::zero(), &b).unwrap();
            let w = width_from_presentation(j, &pres, &b).unwrap();
            assert_eq!(w, (j as u64) * (j as u64 + 1) / 2, "j={j}");
        }
    }

    #[test]
    fn tiny_gen_bound_fails_certification() {
        let err = module_presentation(4, &zu(&[(2, 0, 1)]), &Bounds::with_gen_bound(4, 1))
            .unwrap_err();
        assert_eq!(err, Error::BoundsTooSmall);
    }
}
