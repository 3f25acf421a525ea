//! Plane-curve germs at the origin and their classical invariants:
//! multiplicity, Milnor number, Tjurina number, delta, branch count.

mod jets;
mod reduced;
mod resolution;

pub use jets::jet_colength;
pub use resolution::{delta_and_branches, ResolutionConfig, ResolutionNode, ResolutionTree};

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::algebra::rat::Rat;
use crate::error::{Error, Result};

/// Polynomial in x, y over Q; key is `(x_exponent, y_exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CurvePoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl CurvePoly {
    pub fn zero() -> Self {
        CurvePoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(x_exp: u32, y_exp: u32, coeff: Rat) -> Self {
        let mut p = CurvePoly::zero();
        p.add_term(x_exp, y_exp, coeff);
        p
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rat::one())
    }

    pub fn add_term(&mut self, x_exp: u32, y_exp: u32, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry((x_exp, y_exp)).or_insert_with(Rat::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&(x_exp, y_exp));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rat)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&(0, 0))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms().map(|(a, b, _)| a + b).max()
    }

    pub fn derivative_x(&self) -> CurvePoly {
        let mut out = CurvePoly::zero();
        for (a, b, c) in self.terms() {
            if a > 0 {
                out.add_term(a - 1, b, c * Rat::from_integer((a as i64).into()));
            }
        }
        out
    }

    pub fn derivative_y(&self) -> CurvePoly {
        let mut out = CurvePoly::zero();
        for (a, b, c) in self.terms() {
            if b > 0 {
                out.add_term(a, b - 1, c * Rat::from_integer((b as i64).into()));
            }
        }
        out
    }

    /// Swap the roles of x and y.
    pub fn swap_xy(&self) -> CurvePoly {
        let mut out = CurvePoly::zero();
        for (a, b, c) in self.terms() {
            out.add_term(b, a, c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &CurvePoly) -> CurvePoly {
        let mut out = CurvePoly::zero();
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in rhs.terms() {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn add(&self, rhs: &CurvePoly) -> CurvePoly {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &CurvePoly) -> CurvePoly {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(a, b, -c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> CurvePoly {
        let mut acc = CurvePoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for CurvePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (a, b, c)) in self.terms().enumerate() {
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

/// Minimal total degree of a monomial; errors on the zero polynomial.
pub fn multiplicity(g: &CurvePoly) -> Result<u32> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !g.constant_term().is_zero() {
        return Err(Error::CurveNotThroughOrigin);
    }
    Ok(g.terms().map(|(a, b, _)| a + b).min().unwrap())
}

/// True iff the polynomial is squarefree; checked via
/// gcd(g, dg/dx, dg/dy) being a nonzero constant.
pub fn reducedness_check(g: &CurvePoly) -> bool {
    if g.is_zero() {
        return false;
    }
    let gx = g.derivative_x();
    let gy = g.derivative_y();
    let d = reduced::gcd_bivariate(&reduced::gcd_bivariate(g, &gx), &gy);
    d.total_degree() == Some(0)
}

/// Milnor and Tjurina numbers as jet-truncation colengths.
pub fn milnor_tjurina(g: &CurvePoly) -> Result<(u64, u64)> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let gx = g.derivative_x();
    let gy = g.derivative_y();
    let cap = default_cap(&[g.clone(), gx.clone(), gy.clone()]);
    let mu = jet_colength(&[gx.clone(), gy.clone()], cap)?;
    let tau = jet_colength(&[g.clone(), gx, gy], cap)?;
    debug_assert!(tau <= mu);
    Ok((mu, tau))
}

fn default_cap(gens: &[CurvePoly]) -> u32 {
    let d = gens
        .iter()
        .filter_map(|g| g.total_degree())
        .max()
        .unwrap_or(1);
    2 * d * d + 10
}

/// All classical invariants of a reduced germ, cross-checked by the exact
/// relation 2*delta = milnor + branches - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub multiplicity: u32,
    pub milnor: u64,
    pub tjurina: u64,
    pub delta: u64,
    pub branches: u64,
    pub consistent: bool,
}

pub fn curve_invariants(g: &CurvePoly) -> Result<CurveInvariants> {
    let m = multiplicity(g)?;
    if !reducedness_check(g) {
        return Err(Error::NotReduced);
    }
    let (mu, tau) = milnor_tjurina(g)?;
    let (delta, branches, _tree) = delta_and_branches(g, &ResolutionConfig::default())?;
    if 2 * delta != mu + branches - 1 {
        return Err(Error::Consistency(format!(
            "2*delta = {} but milnor + branches - 1 = {}",
            2 * delta,
            mu + branches - 1
        )));
    }
    if tau > mu {
        return Err(Error::Consistency(format!("tjurina {tau} exceeds milnor {mu}")));
    }
    Ok(CurveInvariants {
        multiplicity: m,
        milnor: mu,
        tjurina: tau,
        delta,
        branches,
        consistent: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    pub(crate) fn poly(terms: &[(u32, u32, i64)]) -> CurvePoly {
        let mut p = CurvePoly::zero();
        for &(a, b, c) in terms {
            p.add_term(a, b, rat(c));
        }
        p
    }

    #[test]
    fn multiplicity_examples() {
        // x^2 - y^7 -> 2
        assert_eq!(multiplicity(&poly(&[(2, 0, 1), (0, 7, -1)])).unwrap(), 2);
        // x^5 y - y^4 -> 4
        assert_eq!(multiplicity(&poly(&[(5, 1, 1), (0, 4, -1)])).unwrap(), 4);
        // xy -> 2
        assert_eq!(multiplicity(&poly(&[(1, 1, 1)])).unwrap(), 2);
        assert_eq!(
            multiplicity(&CurvePoly::zero()).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn reducedness_examples() {
        // x^2 y has the repeated factor x
        assert!(!reducedness_check(&poly(&[(2, 1, 1)])));
        assert!(reducedness_check(&poly(&[(1, 1, 1)])));
        // (x^2 - y^3)^2 expanded
        let cusp = poly(&[(2, 0, 1), (0, 3, -1)]);
        assert!(!reducedness_check(&cusp.pow(2)));
        assert!(reducedness_check(&cusp));
    }
}
