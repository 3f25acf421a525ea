//! Delta and branch count by recursive blow-up over field towers.
//!
//! At each infinitely-near point the germ contributes
//! orbit_degree * m(m-1)/2 to delta. Children are the tangent directions:
//! finite roots of the lowest form go through chart 1 (y = x y'), and the
//! vertical direction goes through the chart-2 origin (x = x' y) exactly when
//! the lowest form vanishes on it. Non-rational directions are adjoined as
//! one orbit with the squarefree direction polynomial as modulus; dynamic
//! evaluation splits the orbit whenever two roots start behaving differently.
//! Recursion stops at smooth germs, which are the branches.

use std::collections::BTreeMap;

use num::Zero;

use crate::algebra::rat::Rat;
use crate::algebra::tower::{Elem, SplitEvent, TPoly, Tower, TowerError};
use crate::curve::{reduced, CurvePoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct ResolutionConfig {
    pub max_depth: u32,
    pub max_tower_nesting: usize,
}

impl Default for ResolutionConfig {
    fn default() -> Self {
        ResolutionConfig {
            max_depth: 64,
            max_tower_nesting: crate::algebra::tower::DEFAULT_TOWER_DEPTH,
        }
    }
}

/// One infinitely-near point (or orbit of conjugate points).
#[derive(Clone, Debug)]
pub struct ResolutionNode {
    pub depth: u32,
    pub orbit_degree: u64,
    pub multiplicity: u32,
    pub smooth: bool,
    pub children: Vec<ResolutionNode>,
}

#[derive(Clone, Debug)]
pub struct ResolutionTree {
    /// Roots can be plural: an orbit at the origin may split immediately.
    pub roots: Vec<ResolutionNode>,
}

impl ResolutionTree {
    pub fn delta(&self) -> u64 {
        fn walk(n: &ResolutionNode) -> u64 {
            let m = n.multiplicity as u64;
            n.orbit_degree * m * (m - 1) / 2 + n.children.iter().map(walk).sum::<u64>()
        }
        self.roots.iter().map(walk).sum()
    }

    pub fn branches(&self) -> u64 {
        fn walk(n: &ResolutionNode) -> u64 {
            if n.smooth {
                n.orbit_degree
            } else {
                n.children.iter().map(walk).sum()
            }
        }
        self.roots.iter().map(walk).sum()
    }

    /// Multiplicities along a depth-first walk, smooth points included.
    pub fn multiplicity_sequence(&self) -> Vec<u32> {
        fn walk(n: &ResolutionNode, out: &mut Vec<u32>) {
            out.push(n.multiplicity);
            for c in &n.children {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        for r in &self.roots {
            walk(r, &mut out);
        }
        out
    }
}

/// Bivariate germ with coefficients at the top level of a tower.
#[derive(Clone, Debug)]
struct Germ {
    terms: BTreeMap<(u32, u32), Elem>,
}

impl Germ {
    fn from_curve(g: &CurvePoly) -> Germ {
        let mut terms = BTreeMap::new();
        for (a, b, c) in g.terms() {
            terms.insert((a, b), Elem::Q(c.clone()));
        }
        Germ { terms }
    }

    fn promote(&self) -> Germ {
        Germ {
            terms: self
                .terms
                .iter()
                .map(|(k, e)| (*k, e.clone().promote()))
                .collect(),
        }
    }

    fn insert_add(&mut self, tower: &Tower, key: (u32, u32), v: Elem) {
        if v.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, v);
            }
            Some(old) => {
                let s = tower.add(&old, &v);
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }
}

enum Step {
    Split(SplitEvent),
    Fatal(Error),
}

impl From<TowerError> for Step {
    fn from(e: TowerError) -> Step {
        match e {
            TowerError::Split(ev) => Step::Split(ev),
            TowerError::DivisionByZero => Step::Fatal(Error::DivisionByZero),
            TowerError::DepthExceeded => Step::Fatal(Error::UnsupportedFieldTower),
        }
    }
}

/// delta, branch count, and the resolution tree of a reduced germ.
pub fn delta_and_branches(
    g: &CurvePoly,
    config: &ResolutionConfig,
) -> Result<(u64, u64, ResolutionTree)> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !g.constant_term().is_zero() {
        return Err(Error::CurveNotThroughOrigin);
    }
    if !crate::curve::reducedness_check(g) {
        return Err(Error::NotReduced);
    }
    let _ = &reduced::gcd_bivariate; // reducedness above uses the same gcd
    let tower = Tower::with_depth(config.max_tower_nesting);
    let roots = resolve(&tower, &Germ::from_curve(g), 0, config)?;
    let tree = ResolutionTree { roots };
    Ok((tree.delta(), tree.branches(), tree))
}

/// Split-catching wrapper: a split event forks the tower, remaps the germ
/// into each branch, and reruns. Everything below this node is recomputed
/// per branch, which keeps the accounting exact.
fn resolve(
    tower: &Tower,
    germ: &Germ,
    depth: u32,
    cfg: &ResolutionConfig,
) -> Result<Vec<ResolutionNode>> {
    match try_resolve(tower, germ, depth, cfg) {
        Ok(nodes) => Ok(nodes),
        Err(Step::Split(ev)) => {
            let (ta, tb) = tower.branch(&ev);
            let level = tower.level();
            let mut out = Vec::new();
            for bt in [ta, tb] {
                let mut terms = BTreeMap::new();
                for (k, e) in &germ.terms {
                    let mapped = bt.reduce_into(e, level, ev.modulus_index);
                    if !mapped.is_zero() {
                        terms.insert(*k, mapped);
                    }
                }
                out.extend(resolve(&bt, &Germ { terms }, depth, cfg)?);
            }
            Ok(out)
        }
        Err(Step::Fatal(e)) => Err(e),
    }
}

fn try_resolve(
    tower: &Tower,
    germ: &Germ,
    depth: u32,
    cfg: &ResolutionConfig,
) -> std::result::Result<Vec<ResolutionNode>, Step> {
    if depth >= cfg.max_depth {
        return Err(Step::Fatal(Error::DepthCapExceeded));
    }
    let level = tower.level();
    let (m, lowest) = multiplicity_and_lowest(tower, germ, level)?;
    let orbit_degree = tower.absolute_degree().max(1);
    if m == 1 {
        return Ok(vec![ResolutionNode {
            depth,
            orbit_degree,
            multiplicity: 1,
            smooth: true,
            children: Vec::new(),
        }]);
    }

    let mut children: Vec<ResolutionNode> = Vec::new();

    // direction polynomial phi(t) = sum_b c_{m-b,b} t^b
    let phi = TPoly::new(
        (0..=m)
            .map(|b| {
                lowest
                    .get(&(m - b, b))
                    .cloned()
                    .unwrap_or_else(|| Elem::zero(level))
            })
            .collect(),
    );
    let phi_degree = phi.degree().expect("lowest form is nonzero") as u32;

    if phi_degree >= 1 {
        let psi = tower.squarefree_part(&phi, level)?;
        match psi.degree() {
            Some(1) => {
                // rational (over the current level) direction: substitute
                let root = tower.neg(&psi.coeffs[0]);
                let child = chart1_transform(tower, germ, &root, m, level)?;
                children.extend(resolve(tower, &child, depth + 1, cfg).map_err(Step::Fatal)?);
            }
            Some(_) => {
                // one orbit of conjugate directions
                let ext = tower.extend(psi)?;
                let root = Elem::Poly(vec![Elem::zero(level), Elem::one(level)]);
                let up = germ.promote();
                let child = chart1_transform(&ext, &up, &root, m, level + 1)?;
                children.extend(resolve(&ext, &child, depth + 1, cfg).map_err(Step::Fatal)?);
            }
            None => unreachable!("squarefree part of a nonzero polynomial"),
        }
    }

    // the direction (0:1) lives at the chart-2 origin exactly when the
    // lowest form has no y^m term
    if phi_degree < m {
        let child = chart2_transform(germ, m);
        children.extend(resolve(tower, &child, depth + 1, cfg).map_err(Step::Fatal)?);
    }

    Ok(vec![ResolutionNode {
        depth,
        orbit_degree,
        multiplicity: m,
        smooth: false,
        children,
    }])
}

/// Minimal total degree with every coefficient there decided nonzero;
/// zero-divisor coefficients trigger a split.
fn multiplicity_and_lowest(
    tower: &Tower,
    germ: &Germ,
    level: usize,
) -> std::result::Result<(u32, BTreeMap<(u32, u32), Elem>), Step> {
    let mut by_degree: BTreeMap<u32, Vec<((u32, u32), &Elem)>> = BTreeMap::new();
    for (k, e) in &germ.terms {
        by_degree.entry(k.0 + k.1).or_default().push((*k, e));
    }
    for (d, entries) in by_degree {
        let mut nonzero = BTreeMap::new();
        for (k, e) in entries {
            if tower.is_unit(e, level).map_err(Step::from)? {
                nonzero.insert(k, e.clone());
            }
        }
        if !nonzero.is_empty() {
            return Ok((d, nonzero));
        }
    }
    Err(Step::Fatal(Error::ZeroPolynomial))
}

/// Strict transform in chart 1 at direction y = root * x: substitute
/// y -> x (y' + root), divide by x^m.
fn chart1_transform(
    tower: &Tower,
    germ: &Germ,
    root: &Elem,
    m: u32,
    level: usize,
) -> std::result::Result<Germ, Step> {
    let max_b = germ.terms.keys().map(|&(_, b)| b).max().unwrap_or(0);
    // powers of the root
    let mut root_pow = vec![Elem::one(level)];
    for _ in 0..max_b {
        let next = tower.mul(root_pow.last().unwrap(), root, level);
        root_pow.push(next);
    }
    let mut out = Germ {
        terms: BTreeMap::new(),
    };
    for (&(a, b), c) in &germ.terms {
        for k in 0..=b {
            let binom = binomial(b, k);
            let scaled = tower.mul(
                c,
                &Elem::from_rat(binom, level),
                level,
            );
            let term = tower.mul(&scaled, &root_pow[(b - k) as usize], level);
            debug_assert!(a + b >= m, "strict transform divides exactly");
            let new_x = a + b - m;
            out.insert_add(tower, (new_x, k), term);
        }
    }
    Ok(out)
}

/// Strict transform at the chart-2 origin: substitute x -> x' y, divide by
/// y^m. Pure exponent bookkeeping, no field operations.
fn chart2_transform(germ: &Germ, m: u32) -> Germ {
    let mut out = Germ {
        terms: BTreeMap::new(),
    };
    for (&(a, b), c) in &germ.terms {
        debug_assert!(a + b >= m);
        let key = (a, a + b - m);
        out.terms.insert(key, c.clone());
    }
    out
}

fn binomial(n: u32, k: u32) -> Rat {
    let mut num = Rat::from_integer(1.into());
    for i in 0..k {
        num *= Rat::from_integer(((n - i) as i64).into());
        num /= Rat::from_integer(((i + 1) as i64).into());
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn poly(terms: &[(u32, u32, i64)]) -> CurvePoly {
        let mut p = CurvePoly::zero();
        for &(a, b, c) in terms {
            p.add_term(a, b, rat(c));
        }
        p
    }

    fn dr(p: &CurvePoly) -> (u64, u64) {
        let (d, r, _) = delta_and_branches(p, &ResolutionConfig::default()).unwrap();
        (d, r)
    }

    #[test]
    fn node_xy() {
        assert_eq!(dr(&poly(&[(1, 1, 1)])), (1, 2));
    }

    #[test]
    fn cusp_and_higher_cusps() {
        // x^2 - y^3, x^2 - y^5, x^2 - y^7
        assert_eq!(dr(&poly(&[(2, 0, 1), (0, 3, -1)])), (1, 1));
        assert_eq!(dr(&poly(&[(2, 0, 1), (0, 5, -1)])), (2, 1));
        assert_eq!(dr(&poly(&[(2, 0, 1), (0, 7, -1)])), (3, 1));
    }

    #[test]
    fn e6_and_hartshorne_examples() {
        // x^3 - y^4
        assert_eq!(dr(&poly(&[(3, 0, 1), (0, 4, -1)])), (3, 1));
        // x^5 y - y^4: m=4 at the origin, then m=3, then smooth
        let (d, r, tree) =
            delta_and_branches(&poly(&[(5, 1, 1), (0, 4, -1)]), &ResolutionConfig::default())
                .unwrap();
        assert_eq!((d, r), (9, 2));
        let seq = tree.multiplicity_sequence();
        assert_eq!(seq[0], 4);
        assert!(seq.contains(&3));
    }

    #[test]
    fn table_one_second_row() {
        // x^8 - x^5 y^2 - x^3 y^2 + y^4
        let p = poly(&[(8, 0, 1), (5, 2, -1), (3, 2, -1), (0, 4, 1)]);
        assert_eq!(dr(&p), (9, 2));
    }

    #[test]
    fn tacnode() {
        // x^2 - y^4 = (x - y^2)(x + y^2)
        assert_eq!(dr(&poly(&[(2, 0, 1), (0, 4, -1)])), (2, 2));
    }

    #[test]
    fn irrational_tangent_directions() {
        // x^2 - 2y^2: one orbit of two conjugate lines
        assert_eq!(dr(&poly(&[(2, 0, 1), (0, 2, -2)])), (1, 2));
    }

    #[test]
    fn orbit_that_must_split() {
        // y(y-x)(y-2x) + x^4: three rational directions found as one cubic
        // orbit that dynamic evaluation pulls apart
        let cubic = poly(&[(0, 3, 1), (1, 2, -3), (2, 1, 2)]);
        let p = cubic.add(&poly(&[(4, 0, 1)]));
        let (d, r) = dr(&p);
        assert_eq!((d, r), (3, 3));
    }

    #[test]
    fn non_reduced_is_rejected() {
        let sq = poly(&[(2, 0, 1), (0, 3, -1)]).pow(2);
        assert_eq!(
            delta_and_branches(&sq, &ResolutionConfig::default()).unwrap_err(),
            Error::NotReduced
        );
    }

    #[test]
    fn swap_invariance() {
        for p in [
            poly(&[(2, 0, 1), (0, 7, -1)]),
            poly(&[(5, 1, 1), (0, 4, -1)]),
            poly(&[(3, 0, 1), (0, 4, -1)]),
        ] {
            assert_eq!(dr(&p), dr(&p.swap_xy()));
        }
    }
}
