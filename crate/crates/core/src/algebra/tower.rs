//! Field towers over the rationals with dynamic evaluation.
//!
//! A tower is a stack of extensions, each given by a monic squarefree
//! univariate modulus over the level below. Elements are residue-class
//! polynomials. Inverting a zero divisor does not fail: it produces a
//! certified factorization of one of the moduli (a split event), and the
//! caller re-runs its computation on each factor branch. No irreducible
//! factorization is ever needed.

use num::{One, Zero};

use crate::algebra::rat::Rat;
use crate::error::Error;

/// Element at some tower level. Level 0 is a plain rational; level `k` is a
/// polynomial in the `k`-th tower variable with level `k-1` coefficients,
/// reduced mod the level's modulus, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub enum Elem {
    Q(Rat),
    Poly(Vec<Elem>),
}

impl Elem {
    pub fn zero(level: usize) -> Elem {
        if level == 0 {
            Elem::Q(Rat::zero())
        } else {
            Elem::Poly(Vec::new())
        }
    }

    pub fn from_rat(r: Rat, level: usize) -> Elem {
        let mut e = Elem::Q(r);
        for _ in 0..level {
            e = e.promote();
        }
        e
    }

    pub fn one(level: usize) -> Elem {
        Elem::from_rat(Rat::one(), level)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Q(r) => r.is_zero(),
            Elem::Poly(v) => v.iter().all(Elem::is_zero),
        }
    }

    /// Wrap as a constant one level up.
    pub fn promote(self) -> Elem {
        if self.is_zero() {
            Elem::Poly(Vec::new())
        } else {
            Elem::Poly(vec![self])
        }
    }

    fn trim(mut v: Vec<Elem>) -> Elem {
        while v.last().is_some_and(Elem::is_zero) {
            v.pop();
        }
        Elem::Poly(v)
    }
}

/// Univariate polynomial over one tower level; `coeffs[i]` multiplies t^i,
/// trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly {
    pub coeffs: Vec<Elem>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> TPoly {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn zero() -> TPoly {
        TPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn from_rats(rs: &[i64], level: usize) -> TPoly {
        TPoly::new(
            rs.iter()
                .map(|&n| Elem::from_rat(crate::algebra::rat::rat(n), level))
                .collect(),
        )
    }

    pub fn lead(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        match self.lead() {
            Some(Elem::Q(r)) => r.is_one(),
            Some(Elem::Poly(v)) => {
                v.len() == 1 && matches!(&v[0], e if is_one_elem(e))
            }
            None => false,
        }
    }
}

fn is_one_elem(e: &Elem) -> bool {
    match e {
        Elem::Q(r) => r.is_one(),
        Elem::Poly(v) => v.len() == 1 && is_one_elem(&v[0]),
    }
}

/// Certified factorization of the modulus at `modulus_index` into two
/// nontrivial coprime monic factors.
#[derive(Clone, Debug)]
pub struct SplitEvent {
    pub modulus_index: usize,
    pub factors: (TPoly, TPoly),
}

#[derive(Clone, Debug)]
pub enum TowerError {
    Split(SplitEvent),
    DivisionByZero,
    DepthExceeded,
}

impl From<TowerError> for Error {
    fn from(e: TowerError) -> Error {
        match e {
            TowerError::Split(_) => Error::UnsupportedFieldTower,
            TowerError::DivisionByZero => Error::DivisionByZero,
            TowerError::DepthExceeded => Error::UnsupportedFieldTower,
        }
    }
}

pub type TResult<T> = std::result::Result<T, TowerError>;

/// Outcome of inverting a nonzero element: either the inverse or a split.
#[derive(Clone, Debug)]
pub enum Inversion {
    Inverse(Elem),
    Split(SplitEvent),
}

/// Base field Q plus a stack of monic squarefree extension moduli.
/// `moduli[k]` has coefficients at level `k` and defines level `k+1`.
#[derive(Clone, Debug, Default)]
pub struct Tower {
    pub moduli: Vec<TPoly>,
    pub max_depth: usize,
}

pub const DEFAULT_TOWER_DEPTH: usize = 4;

impl Tower {
    pub fn rationals() -> Tower {
        Tower {
            moduli: Vec::new(),
            max_depth: DEFAULT_TOWER_DEPTH,
        }
    }

    pub fn with_depth(max_depth: usize) -> Tower {
        Tower {
            moduli: Vec::new(),
            max_depth,
        }
    }

    pub fn level(&self) -> usize {
        self.moduli.len()
    }

    /// Degree over Q: product of the moduli degrees.
    pub fn absolute_degree(&self) -> u64 {
        self.moduli
            .iter()
            .map(|m| m.degree().unwrap_or(0) as u64)
            .product()
    }

    /// Push a new monic modulus (coefficients at the current top level).
    pub fn extend(&self, modulus: TPoly) -> TResult<Tower> {
        if self.moduli.len() >= self.max_depth {
            return Err(TowerError::DepthExceeded);
        }
        debug_assert!(modulus.is_monic());
        debug_assert!(modulus.degree().unwrap_or(0) >= 1);
        let mut t = self.clone();
        t.moduli.push(modulus);
        Ok(t)
    }

    // ----- element arithmetic (level-directed recursion) -----

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            (Elem::Poly(x), Elem::Poly(y)) => {
                let n = x.len().max(y.len());
                let mut v = Vec::with_capacity(n);
                for i in 0..n {
                    let xi = x.get(i);
                    let yi = y.get(i);
                    v.push(match (xi, yi) {
                        (Some(p), Some(q)) => self.add(p, q),
                        (Some(p), None) => p.clone(),
                        (None, Some(q)) => q.clone(),
                        (None, None) => unreachable!(),
                    });
                }
                Elem::trim(v)
            }
            _ => panic!("tower elements at mismatched levels"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Q(x) => Elem::Q(-x.clone()),
            Elem::Poly(v) => Elem::Poly(v.iter().map(|e| self.neg(e)).collect()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    /// Multiply at the given level, reducing mod the level's modulus.
    pub fn mul(&self, a: &Elem, b: &Elem, level: usize) -> Elem {
        match (a, b) {
            (Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (Elem::Poly(x), Elem::Poly(y)) => {
                if x.is_empty() || y.is_empty() {
                    return Elem::Poly(Vec::new());
                }
                let mut prod = vec![Elem::zero(level - 1); x.len() + y.len() - 1];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate() {
                        let t = self.mul(xi, yj, level - 1);
                        prod[i + j] = self.add(&prod[i + j], &t);
                    }
                }
                let p = TPoly::new(prod);
                let r = self.rem_monic(&p, &self.moduli[level - 1], level - 1);
                Elem::trim(r.coeffs)
            }
            _ => panic!("tower elements at mismatched levels"),
        }
    }

    /// Invert at the given level. A zero divisor yields a split event.
    pub fn inv(&self, a: &Elem, level: usize) -> TResult<Elem> {
        if a.is_zero() {
            return Err(TowerError::DivisionByZero);
        }
        match a {
            Elem::Q(x) => Ok(Elem::Q(Rat::one() / x)),
            Elem::Poly(coeffs) => {
                let modulus = &self.moduli[level - 1];
                let below = level - 1;
                // extended Euclid for gcd(a, modulus) with Bezout coefficient on a
                let mut r0 = modulus.clone();
                let mut r1 = TPoly::new(coeffs.clone());
                let mut s0 = TPoly::zero();
                let mut s1 = TPoly::new(vec![Elem::one(below)]);
                while !r1.is_zero() {
                    let (q, r) = self.divrem(&r0, &r1, below)?;
                    let qs1 = self.poly_mul(&q, &s1, below);
                    let s_new = self.poly_sub(&s0, &qs1);
                    r0 = std::mem::replace(&mut r1, r);
                    s0 = std::mem::replace(&mut s1, s_new);
                }
                let gcd = r0;
                if gcd.degree() == Some(0) {
                    let c_inv = self.inv(&gcd.coeffs[0], below)?;
                    let s = self.poly_scale(&s0, &c_inv, below);
                    let s = self.rem_monic(&s, modulus, below);
                    Ok(Elem::trim(s.coeffs))
                } else {
                    // nonzero non-unit: gcd is a proper factor of the modulus
                    let g = self.monicize(&gcd, below)?;
                    let (cof, rem) = self.divrem(modulus, &g, below)?;
                    debug_assert!(rem.is_zero());
                    Err(TowerError::Split(SplitEvent {
                        modulus_index: level - 1,
                        factors: (g, cof),
                    }))
                }
            }
        }
    }

    /// zero => Ok(false), unit => Ok(true), zero divisor => split.
    pub fn is_unit(&self, a: &Elem, level: usize) -> TResult<bool> {
        if a.is_zero() {
            return Ok(false);
        }
        self.inv(a, level).map(|_| true)
    }

    // ----- polynomial arithmetic over a level -----

    pub fn poly_add(&self, a: &TPoly, b: &TPoly) -> TPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.coeffs.get(i);
            let y = b.coeffs.get(i);
            v.push(match (x, y) {
                (Some(p), Some(q)) => self.add(p, q),
                (Some(p), None) => p.clone(),
                (None, Some(q)) => q.clone(),
                (None, None) => unreachable!(),
            });
        }
        TPoly::new(v)
    }

    pub fn poly_sub(&self, a: &TPoly, b: &TPoly) -> TPoly {
        let nb = TPoly {
            coeffs: b.coeffs.iter().map(|e| self.neg(e)).collect(),
        };
        self.poly_add(a, &nb)
    }

    pub fn poly_mul(&self, a: &TPoly, b: &TPoly, level: usize) -> TPoly {
        if a.is_zero() || b.is_zero() {
            return TPoly::zero();
        }
        let mut v = vec![Elem::zero(level); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.mul(x, y, level);
                v[i + j] = self.add(&v[i + j], &t);
            }
        }
        TPoly::new(v)
    }

    pub fn poly_scale(&self, a: &TPoly, c: &Elem, level: usize) -> TPoly {
        TPoly::new(a.coeffs.iter().map(|e| self.mul(e, c, level)).collect())
    }

    /// Remainder by a monic divisor; needs no inversions, so it never splits.
    pub fn rem_monic(&self, a: &TPoly, m: &TPoly, level: usize) -> TPoly {
        let dm = m.degree().expect("monic divisor is nonzero");
        let mut r = a.coeffs.clone();
        while r.len() > dm {
            let lead = r.last().unwrap().clone();
            let shift = r.len() - 1 - dm;
            if !lead.is_zero() {
                for (i, mc) in m.coeffs.iter().enumerate() {
                    let t = self.mul(&lead, mc, level);
                    r[shift + i] = self.sub(&r[shift + i], &t);
                }
            }
            r.pop();
        }
        TPoly::new(r)
    }

    /// General division with remainder; inverts the divisor's lead.
    pub fn divrem(&self, a: &TPoly, b: &TPoly, level: usize) -> TResult<(TPoly, TPoly)> {
        let db = b.degree().ok_or(TowerError::DivisionByZero)?;
        let lead_inv = self.inv(b.lead().unwrap(), level)?;
        let mut r = a.coeffs.clone();
        let mut q = vec![Elem::zero(level); a.coeffs.len().saturating_sub(db)];
        while r.len() > db {
            let lead = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            if !lead.is_zero() {
                let factor = self.mul(&lead, &lead_inv, level);
                for (i, bc) in b.coeffs.iter().enumerate() {
                    let t = self.mul(&factor, bc, level);
                    r[shift + i] = self.sub(&r[shift + i], &t);
                }
                q[shift] = factor;
            }
            r.pop();
        }
        Ok((TPoly::new(q), TPoly::new(r)))
    }

    pub fn monicize(&self, a: &TPoly, level: usize) -> TResult<TPoly> {
        let lead = a.lead().ok_or(TowerError::DivisionByZero)?;
        let inv = self.inv(lead, level)?;
        Ok(self.poly_scale(a, &inv, level))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn poly_gcd(&self, a: &TPoly, b: &TPoly, level: usize) -> TResult<TPoly> {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        while !r1.is_zero() {
            let (_, r) = self.divrem(&r0, &r1, level)?;
            r0 = std::mem::replace(&mut r1, r);
        }
        if r0.is_zero() {
            Ok(r0)
        } else {
            self.monicize(&r0, level)
        }
    }

    pub fn poly_derivative(&self, a: &TPoly, level: usize) -> TPoly {
        if a.coeffs.len() <= 1 {
            return TPoly::zero();
        }
        let mut v = Vec::with_capacity(a.coeffs.len() - 1);
        for (i, c) in a.coeffs.iter().enumerate().skip(1) {
            let n = Elem::from_rat(crate::algebra::rat::rat(i as i64), level);
            v.push(self.mul(c, &n, level));
        }
        TPoly::new(v)
    }

    /// Monic squarefree part f / gcd(f, f').
    pub fn squarefree_part(&self, f: &TPoly, level: usize) -> TResult<TPoly> {
        let d = self.poly_derivative(f, level);
        let g = self.poly_gcd(f, &d, level)?;
        if g.is_zero() || g.degree() == Some(0) {
            return self.monicize(f, level);
        }
        let (q, r) = self.divrem(f, &g, level)?;
        debug_assert!(r.is_zero());
        self.monicize(&q, level)
    }

    // ----- branching on a split -----

    /// The two towers obtained by replacing the split modulus by each factor
    /// (all higher moduli reduced accordingly).
    pub fn branch(&self, ev: &SplitEvent) -> (Tower, Tower) {
        (
            self.branch_one(ev.modulus_index, &ev.factors.0),
            self.branch_one(ev.modulus_index, &ev.factors.1),
        )
    }

    fn branch_one(&self, idx: usize, factor: &TPoly) -> Tower {
        let mut t = Tower {
            moduli: self.moduli[..idx].to_vec(),
            max_depth: self.max_depth,
        };
        t.moduli.push(factor.clone());
        for k in idx + 1..self.moduli.len() {
            let mapped = TPoly::new(
                self.moduli[k]
                    .coeffs
                    .iter()
                    .map(|e| t.reduce_into(e, k, idx))
                    .collect(),
            );
            t.moduli.push(mapped);
        }
        t
    }

    /// Map an element represented over the old tower into the branch tower by
    /// reducing its residue polynomial at `idx` mod the new modulus there.
    /// `level` is the element's level in both towers.
    pub fn reduce_into(&self, e: &Elem, level: usize, idx: usize) -> Elem {
        if level <= idx {
            return e.clone();
        }
        match e {
            Elem::Poly(v) => {
                let mapped: Vec<Elem> = v.iter().map(|c| self.reduce_into(c, level - 1, idx)).collect();
                if level == idx + 1 {
                    // reduce in the split variable mod the branch modulus
                    let r = self.rem_with(&TPoly::new(mapped), &self.moduli_at(idx), idx);
                    Elem::trim(r.coeffs)
                } else {
                    Elem::trim(mapped)
                }
            }
            Elem::Q(_) => e.clone(),
        }
    }

    fn moduli_at(&self, idx: usize) -> TPoly {
        self.moduli[idx].clone()
    }

    fn rem_with(&self, a: &TPoly, m: &TPoly, level: usize) -> TPoly {
        self.rem_monic(a, m, level)
    }
}

/// Monic gcd of two univariate polynomials over one tower level; a zero
/// divisor encountered along the way surfaces as a split event.
pub fn univariate_squarefree_gcd(tower: &Tower, f: &TPoly, g: &TPoly) -> TResult<TPoly> {
    tower.poly_gcd(f, g, tower.level())
}

/// Invert a top-level tower element. Zero input is an error; a zero divisor
/// reports the certified modulus factorization instead of an inverse.
pub fn tower_invert(tower: &Tower, e: &Elem) -> crate::error::Result<Inversion> {
    if e.is_zero() {
        return Err(Error::DivisionByZero);
    }
    match tower.inv(e, tower.level()) {
        Ok(inv) => Ok(Inversion::Inverse(inv)),
        Err(TowerError::Split(ev)) => Ok(Inversion::Split(ev)),
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{frac, rat};

    #[test]
    fn invert_rational() {
        let t = Tower::rationals();
        match tower_invert(&t, &Elem::Q(rat(2))).unwrap() {
            Inversion::Inverse(Elem::Q(r)) => assert_eq!(r, frac(1, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invert_sqrt2() {
        // t in Q[t]/(t^2-2) has inverse t/2
        let q = Tower::rationals();
        let modulus = TPoly::from_rats(&[-2, 0, 1], 0);
        let tower = q.extend(modulus).unwrap();
        let t_elem = Elem::Poly(vec![Elem::Q(rat(0)), Elem::Q(rat(1))]);
        match tower_invert(&tower, &t_elem).unwrap() {
            Inversion::Inverse(inv) => {
                let expect = Elem::Poly(vec![Elem::Q(rat(0)), Elem::Q(frac(1, 2))]);
                assert_eq!(inv, expect);
                // product is exactly 1
                let prod = tower.mul(&t_elem, &inv, 1);
                assert_eq!(prod, Elem::one(1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_divisor_splits() {
        // t-1 in Q[t]/(t^2-t): gcd(t-1, t^2-t) = t-1, cofactor t
        let q = Tower::rationals();
        let tower = q.extend(TPoly::from_rats(&[0, -1, 1], 0)).unwrap();
        let e = Elem::Poly(vec![Elem::Q(rat(-1)), Elem::Q(rat(1))]);
        match tower_invert(&tower, &e).unwrap() {
            Inversion::Split(ev) => {
                assert_eq!(ev.modulus_index, 0);
                let mut degs = vec![
                    ev.factors.0.degree().unwrap(),
                    ev.factors.1.degree().unwrap(),
                ];
                degs.sort();
                assert_eq!(degs, vec![1, 1]);
                let fs = [ev.factors.0.clone(), ev.factors.1.clone()];
                let expect_a = TPoly::from_rats(&[-1, 1], 0); // t-1
                let expect_b = TPoly::from_rats(&[0, 1], 0); // t
                assert!(fs.contains(&expect_a) && fs.contains(&expect_b));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invert_zero_is_error() {
        let t = Tower::rationals();
        assert_eq!(
            tower_invert(&t, &Elem::Q(rat(0))).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn gcd_examples() {
        let q = Tower::rationals();
        // gcd(t^2, t^3) = t^2
        let a = TPoly::from_rats(&[0, 0, 1], 0);
        let b = TPoly::from_rats(&[0, 0, 0, 1], 0);
        assert_eq!(univariate_squarefree_gcd(&q, &a, &b).unwrap(), a);
        // gcd(t^2-1, t-1) = t-1
        let c = TPoly::from_rats(&[-1, 0, 1], 0);
        let d = TPoly::from_rats(&[-1, 1], 0);
        assert_eq!(univariate_squarefree_gcd(&q, &c, &d).unwrap(), d);
    }

    #[test]
    fn squarefree_part_of_cubic() {
        // t^3(t-1) -> t(t-1) = t^2 - t
        let q = Tower::rationals();
        let f = TPoly::from_rats(&[0, 0, 0, -1, 1], 0);
        let sf = q.squarefree_part(&f, 0).unwrap();
        assert_eq!(sf, TPoly::from_rats(&[0, -1, 1], 0));
    }

    #[test]
    fn inverse_times_input_is_one_in_branch_tower() {
        // after branching Q[t]/(t^2-t) at t, the image of t-1 is invertible
        let q = Tower::rationals();
        let tower = q.extend(TPoly::from_rats(&[0, -1, 1], 0)).unwrap();
        let e = Elem::Poly(vec![Elem::Q(rat(-1)), Elem::Q(rat(1))]);
        let Inversion::Split(ev) = tower_invert(&tower, &e).unwrap() else {
            panic!("expected split");
        };
        let (ta, tb) = tower.branch(&ev);
        for t in [ta, tb] {
            let img = t.reduce_into(&e, 1, ev.modulus_index);
            if img.is_zero() {
                continue;
            }
            let inv = t.inv(&img, 1).expect("invertible after split");
            assert_eq!(t.mul(&img, &inv, 1), Elem::one(1));
        }
    }
}
