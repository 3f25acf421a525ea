//! Sparse bivariate Laurent polynomials in `z` and `u`.
//!
//! Terms are coefficients on monomials `z^l * u^i` with `i >= 0` and `l` any
//! integer. The term map never stores zero coefficients, and iteration order
//! is fixed: u-degree ascending, then z-degree ascending.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::algebra::rat::Rat;
use crate::error::{Error, Result};

/// Key is `(u_exponent, z_exponent)` so that the natural map order is the
/// canonical display order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentZU {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl LaurentZU {
    pub fn zero() -> Self {
        LaurentZU {
            terms: BTreeMap::new(),
        }
    }

    /// Single term `c * z^l * u^i`. Panics if `u_exp < 0`.
    pub fn monomial(u_exp: i64, z_exp: i64, coeff: Rat) -> Self {
        assert!(u_exp >= 0, "u-exponents must be nonnegative");
        let mut p = LaurentZU::zero();
        p.add_term(u_exp, z_exp, coeff);
        p
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, u_exp: i64, z_exp: i64, coeff: Rat) {
        assert!(u_exp >= 0, "u-exponents must be nonnegative");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((u_exp, z_exp)).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(u_exp, z_exp));
        }
    }

    /// Iterate terms as `((u_exp, z_exp), coeff)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Rat)> {
        self.terms.iter().map(|(&(u, z), c)| (u, z, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, u_exp: i64, z_exp: i64) -> Rat {
        self.terms
            .get(&(u_exp, z_exp))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Smallest u-exponent with a nonzero term.
    pub fn min_u_degree(&self) -> Option<i64> {
        self.terms.keys().next().map(|&(u, _)| u)
    }

    pub fn max_u_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().map(|&(u, _)| u)
    }

    /// z-degree range over all terms of the given u-degree.
    pub fn z_range_at(&self, u_exp: i64) -> Option<(i64, i64)> {
        let mut r: Option<(i64, i64)> = None;
        for (u, z, _) in self.terms() {
            if u == u_exp {
                r = Some(match r {
                    None => (z, z),
                    Some((lo, hi)) => (lo.min(z), hi.max(z)),
                });
            }
        }
        r
    }

    /// Coefficients of the u-degree slice, as `(z_exp, coeff)` pairs.
    pub fn u_slice(&self, u_exp: i64) -> Vec<(i64, Rat)> {
        self.terms()
            .filter(|&(u, _, _)| u == u_exp)
            .map(|(_, z, c)| (z, c.clone()))
            .collect()
    }

    pub fn has_u_degree_zero_term(&self) -> bool {
        self.min_u_degree() == Some(0)
    }

    /// Fails when a term with u-exponent 0 is present; extension classes must
    /// start at u-degree 1.
    pub fn require_positive_u_degrees(&self) -> Result<()> {
        if self.has_u_degree_zero_term() {
            Err(Error::UDegreeZeroTerm)
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentZU {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

pub fn zu_multiply(a: &LaurentZU, b: &LaurentZU) -> LaurentZU {
    let mut out = LaurentZU::zero();
    for (ua, za, ca) in a.terms() {
        for (ub, zb, cb) in b.terms() {
            out.add_term(ua + ub, za + zb, ca * cb);
        }
    }
    out
}

impl Add for &LaurentZU {
    type Output = LaurentZU;
    fn add(self, rhs: &LaurentZU) -> LaurentZU {
        let mut out = self.clone();
        for (u, z, c) in rhs.terms() {
            out.add_term(u, z, c.clone());
        }
        out
    }
}

impl Sub for &LaurentZU {
    type Output = LaurentZU;
    fn sub(self, rhs: &LaurentZU) -> LaurentZU {
        let mut out = self.clone();
        for (u, z, c) in rhs.terms() {
            out.add_term(u, z, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentZU {
    type Output = LaurentZU;
    fn neg(self) -> LaurentZU {
        LaurentZU {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

impl Mul for &LaurentZU {
    type Output = LaurentZU;
    fn mul(self, rhs: &LaurentZU) -> LaurentZU {
        zu_multiply(self, rhs)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, c: &Rat, u: i64, z: i64) -> fmt::Result {
    let mut factors: Vec<String> = Vec::new();
    if !c.abs().is_one() || (u == 0 && z == 0) {
        factors.push(c.abs().to_string());
    }
    if z != 0 {
        if z == 1 {
            factors.push("z".into());
        } else if z > 0 {
            factors.push(format!("z^{z}"));
        } else {
            factors.push(format!("z^({z})"));
        }
    }
    if u != 0 {
        if u == 1 {
            factors.push("u".into());
        } else {
            factors.push(format!("u^{u}"));
        }
    }
    write!(f, "{}", factors.join("*"))
}

impl fmt::Display for LaurentZU {
    /// Canonical form: terms ordered by u-degree then z-degree ascending,
    /// explicit `*` between factors, negative z-exponents parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (u, z, c)) in self.terms().enumerate() {
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_monomial(f, c, u, z)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn multiply_adds_exponents() {
        // (z*u) * (z^-1 * u) = u^2
        let a = LaurentZU::monomial(1, 1, rat(1));
        let b = LaurentZU::monomial(1, -1, rat(1));
        assert_eq!(zu_multiply(&a, &b), LaurentZU::monomial(2, 0, rat(1)));
    }

    #[test]
    fn multiply_by_negative_power() {
        // (u + z*u^2) * z^-1 = z^-1*u + u^2
        let mut a = LaurentZU::monomial(1, 0, rat(1));
        a.add_term(2, 1, rat(1));
        let b = LaurentZU::monomial(0, -1, rat(1));
        let mut expect = LaurentZU::monomial(1, -1, rat(1));
        expect.add_term(2, 0, rat(1));
        assert_eq!(zu_multiply(&a, &b), expect);
    }

    #[test]
    fn multiply_monomials() {
        // z^2*u^5 * z^-3 = z^-1*u^5
        let a = LaurentZU::monomial(5, 2, rat(1));
        let b = LaurentZU::monomial(0, -3, rat(1));
        assert_eq!(zu_multiply(&a, &b), LaurentZU::monomial(5, -1, rat(1)));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = LaurentZU::monomial(1, 0, rat(2));
        let b = LaurentZU::monomial(1, 0, rat(-2));
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn display_canonical_order() {
        let mut p = LaurentZU::monomial(5, 2, rat(-1));
        p.add_term(2, 0, rat(1));
        p.add_term(2, -1, frac_half());
        assert_eq!(p.to_string(), "1/2*z^(-1)*u^2 + u^2 - z^2*u^5");
    }

    fn frac_half() -> Rat {
        crate::algebra::rat::frac(1, 2)
    }
}
