//! Ideal colengths by jet truncation with a Nakayama certificate.
//!
//! For increasing K, compute d_K = dim of (monomials of degree <= K) modulo
//! the span of degree-<=K truncations of all monomial multiples x^a y^b g
//! with a + b + ord(g) <= K. Two equal consecutive values certify that the
//! next power of the maximal ideal lies inside the ideal, so d_K is the
//! colength.

use num::Zero;

use crate::algebra::span::{SparseVec, Span};
use crate::curve::CurvePoly;
use crate::error::{Error, Result};

/// Colength of the ideal generated by `gens` in the local ring at the
/// origin. A unit generator gives 0; failure to stabilize by `hard_cap`
/// signals a non-isolated singularity (or a cap chosen too small).
pub fn jet_colength(gens: &[CurvePoly], hard_cap: u32) -> Result<u64> {
    let gens: Vec<&CurvePoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.iter().any(|g| !g.constant_term().is_zero()) {
        return Ok(0);
    }
    if gens.is_empty() {
        return Err(Error::NonIsolated);
    }
    let mut prev: Option<u64> = None;
    for k in 0..=hard_cap {
        let d = truncated_quotient_dim(&gens, k);
        if prev == Some(d) {
            return Ok(d);
        }
        prev = Some(d);
    }
    Err(Error::NonIsolated)
}

fn truncated_quotient_dim(gens: &[&CurvePoly], k: u32) -> u64 {
    let total = ((k as u64 + 1) * (k as u64 + 2)) / 2;
    let mut span: Span<(u32, u32)> = Span::new();
    for g in gens {
        let ord = g.terms().map(|(a, b, _)| a + b).min().unwrap();
        if ord > k {
            continue;
        }
        for a in 0..=(k - ord) {
            for b in 0..=(k - ord - a) {
                let truncated: Vec<((u32, u32), crate::algebra::rat::Rat)> = g
                    .terms()
                    .filter(|(ga, gb, _)| a + ga + b + gb <= k)
                    .map(|(ga, gb, c)| ((a + ga, b + gb), c.clone()))
                    .collect();
                span.insert(SparseVec::collect(truncated));
            }
        }
    }
    total - span.dim() as u64
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

    #[test]
    fn jacobian_of_a2_cusp_like() {
        // <2x, -7y^6>: quotient basis {1, y, ..., y^5}
        let gens = [poly(&[(1, 0, 2)]), poly(&[(0, 6, -7)])];
        assert_eq!(jet_colength(&gens, 100).unwrap(), 6);
    }

    #[test]
    fn maximal_ideal() {
        let gens = [poly(&[(1, 0, 1)]), poly(&[(0, 1, 1)])];
        assert_eq!(jet_colength(&gens, 100).unwrap(), 1);
    }

    #[test]
    fn unit_ideal() {
        let gens = [poly(&[(0, 0, 1)])];
        assert_eq!(jet_colength(&gens, 100).unwrap(), 0);
    }

    #[test]
    fn non_isolated_errors() {
        // <x> alone: infinite colength
        let gens = [poly(&[(1, 0, 1)])];
        assert_eq!(jet_colength(&gens, 30).unwrap_err(), Error::NonIsolated);
    }
}
