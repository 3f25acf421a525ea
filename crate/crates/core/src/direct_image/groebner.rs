//! Buchberger's algorithm for submodules of free modules over Q[x, y],
//! with staircase counting of lead-term modules.
//!
//! Positions carry degree shifts so the term order is compatible with the
//! filtration degree `x_exp + y_exp + shift[pos]`. With such an order, the
//! number of elements of the submodule with filtration degree <= t equals the
//! number of lead monomials of degree <= t, which turns Hilbert-function
//! checks and length computations into staircase counting.

use std::cmp::Ordering;

use num::{One, Zero};

use crate::algebra::rat::Rat;

/// (position, x-exponent, y-exponent)
pub type ModKey = (usize, u32, u32);

/// Terms sorted descending in the context order; lead term first.
#[derive(Clone, Debug, PartialEq)]
pub struct ModPoly {
    pub terms: Vec<(ModKey, Rat)>,
}

#[derive(Clone, Debug)]
pub struct GroebnerCtx {
    pub shifts: Vec<i64>,
}

impl GroebnerCtx {
    pub fn new(shifts: Vec<i64>) -> Self {
        GroebnerCtx { shifts }
    }

    pub fn unshifted(positions: usize) -> Self {
        GroebnerCtx {
            shifts: vec![0; positions],
        }
    }

    pub fn degree(&self, k: &ModKey) -> i64 {
        k.1 as i64 + k.2 as i64 + self.shifts[k.0]
    }

    /// Degree-compatible total order: shifted degree, then position, then
    /// x-exponent.
    pub fn cmp_keys(&self, a: &ModKey, b: &ModKey) -> Ordering {
        self.degree(a)
            .cmp(&self.degree(b))
            .then(a.0.cmp(&b.0))
            .then(a.1.cmp(&b.1))
    }

    pub fn sort(&self, mut terms: Vec<(ModKey, Rat)>) -> ModPoly {
        terms.sort_by(|x, y| self.cmp_keys(&y.0, &x.0));
        // merge duplicates
        let mut out: Vec<(ModKey, Rat)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        ModPoly { terms: out }
    }
}

impl ModPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &(ModKey, Rat) {
        &self.terms[0]
    }

    fn monic(mut self) -> ModPoly {
        if let Some((_, lead)) = self.terms.first() {
            let inv = Rat::one() / lead;
            for (_, c) in &mut self.terms {
                *c *= &inv;
            }
        }
        self
    }

    /// self - c * x^dx y^dy * other (same position pattern shift)
    fn sub_shifted(&self, ctx: &GroebnerCtx, c: &Rat, dx: u32, dy: u32, other: &ModPoly) -> ModPoly {
        let mut terms = self.terms.clone();
        for ((pos, a, b), oc) in &other.terms {
            terms.push(((*pos, a + dx, b + dy), -(c * oc)));
        }
        ctx.sort(terms)
    }
}

fn divides(lead: &ModKey, k: &ModKey) -> bool {
    lead.0 == k.0 && lead.1 <= k.1 && lead.2 <= k.2
}

/// Full normal form: reduce every term of `f` against the basis.
pub fn normal_form(ctx: &GroebnerCtx, mut f: ModPoly, basis: &[ModPoly]) -> ModPoly {
    let mut done: Vec<(ModKey, Rat)> = Vec::new();
    'outer: while !f.is_zero() {
        let (k, c) = f.lead().clone();
        for g in basis {
            let lg = &g.lead().0;
            if divides(lg, &k) {
                f = f.sub_shifted(ctx, &c, k.1 - lg.1, k.2 - lg.2, g);
                continue 'outer;
            }
        }
        done.push((k, c));
        f.terms.remove(0);
    }
    ModPoly { terms: done }
}

/// Buchberger with same-position S-pairs; returns a basis with monic leads.
pub fn buchberger(ctx: &GroebnerCtx, gens: Vec<ModPoly>) -> Vec<ModPoly> {
    let mut basis: Vec<ModPoly> = Vec::new();
    for g in gens {
        let r = normal_form(ctx, g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (ki, _) = basis[i].lead().clone();
        let (kj, _) = basis[j].lead().clone();
        if ki.0 != kj.0 {
            continue;
        }
        let lx = ki.1.max(kj.1);
        let ly = ki.2.max(kj.2);
        let one = Rat::one();
        let spair = ModPoly { terms: Vec::new() }
            .sub_shifted(ctx, &(-&one), lx - ki.1, ly - ki.2, &basis[i])
            .sub_shifted(ctx, &one, lx - kj.1, ly - kj.2, &basis[j]);
        let r = normal_form(ctx, spair, &basis);
        if !r.is_zero() {
            let new_idx = basis.len();
            basis.push(r.monic());
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
        }
    }
    basis
}

/// Minimal corners of the lead-term staircase, per position.
pub fn lead_staircases(basis: &[ModPoly], positions: usize) -> Vec<Vec<(u32, u32)>> {
    let mut per: Vec<Vec<(u32, u32)>> = vec![Vec::new(); positions];
    for g in basis {
        let (pos, a, b) = g.lead().0;
        per[pos].push((a, b));
    }
    for corners in &mut per {
        corners.sort();
        let snapshot = corners.clone();
        corners.retain(|&(a, b)| {
            !snapshot
                .iter()
                .any(|&(a2, b2)| (a2, b2) != (a, b) && a2 <= a && b2 <= b)
        });
        corners.dedup();
    }
    per
}

fn tri(s: i64) -> u64 {
    if s < 0 {
        0
    } else {
        ((s + 1) * (s + 2) / 2) as u64
    }
}

/// Number of monomials in the staircase ideal with plain degree <= t.
/// Corners must be minimal; sorted by x ascending means y descending.
pub fn staircase_count_upto(corners: &[(u32, u32)], t: i64) -> u64 {
    let mut total = 0u64;
    for &(a, b) in corners {
        total += tri(t - a as i64 - b as i64);
    }
    for w in corners.windows(2) {
        let (_a1, b1) = w[0];
        let (a2, _b2) = w[1];
        // lcm of adjacent corners: (max x, max y) = (a2, b1)
        total -= tri(t - a2 as i64 - b1 as i64);
    }
    total
}

/// Monomials of the full module `R^positions` (with shifts) of filtration
/// degree <= t.
pub fn free_count_upto(shifts: &[i64], t: i64) -> u64 {
    shifts.iter().map(|&s| tri(t - s)).sum()
}

/// Lead monomials of shifted degree <= t over all positions.
pub fn lead_count_upto(staircases: &[Vec<(u32, u32)>], shifts: &[i64], t: i64) -> u64 {
    staircases
        .iter()
        .zip(shifts)
        .map(|(c, &s)| staircase_count_upto(c, t - s))
        .sum()
}

/// Standard monomials (complement of the staircases) of plain degree exactly
/// `d`, over all positions, shifts zero.
pub fn std_count_at_degree(staircases: &[Vec<(u32, u32)>], d: i64) -> u64 {
    let positions = staircases.len() as u64;
    let total_d = positions * (d as u64 + 1);
    let ideal_d: u64 = staircases
        .iter()
        .map(|c| staircase_count_upto(c, d) - staircase_count_upto(c, d - 1))
        .sum();
    total_d - ideal_d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn ctx1() -> GroebnerCtx {
        GroebnerCtx::unshifted(1)
    }

    fn ideal(ctx: &GroebnerCtx, gens: &[Vec<((usize, u32, u32), i64)>]) -> Vec<ModPoly> {
        buchberger(
            ctx,
            gens.iter()
                .map(|g| ctx.sort(g.iter().map(|&(k, c)| (k, rat(c))).collect()))
                .collect(),
        )
    }

    #[test]
    fn colength_of_maximal_ideal() {
        // <x, y> in R^1: one standard monomial
        let ctx = ctx1();
        let basis = ideal(&ctx, &[vec![((0, 1, 0), 1)], vec![((0, 0, 1), 1)]]);
        let st = lead_staircases(&basis, 1);
        assert_eq!(std_count_at_degree(&st, 0), 1);
        assert_eq!(std_count_at_degree(&st, 1), 0);
    }

    #[test]
    fn buchberger_finds_hidden_lead() {
        // <x^2, x*y + y^3>: S-pair forces y^4 (lead module <x^2, x*y, y^4>)
        let ctx = ctx1();
        let basis = ideal(
            &ctx,
            &[
                vec![((0, 2, 0), 1)],
                vec![((0, 1, 1), 1), ((0, 0, 3), 1)],
            ],
        );
        let st = lead_staircases(&basis, 1);
        // standard monomials: 1, x, y, y^2, y^3, y^4 -> colength 6
        let total: u64 = (0..10).map(|d| std_count_at_degree(&st, d)).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn staircase_counting_matches_enumeration() {
        let corners = vec![(0u32, 3u32), (2, 1), (4, 0)];
        // minimal & sorted by x ascending
        for t in 0..12i64 {
            let mut brute = 0u64;
            for a in 0..=t {
                for b in 0..=(t - a) {
                    if corners
                        .iter()
                        .any(|&(ca, cb)| a >= ca as i64 && b >= cb as i64)
                    {
                        brute += 1;
                    }
                }
            }
            assert_eq!(staircase_count_upto(&corners, t), brute, "t={t}");
        }
    }
}
