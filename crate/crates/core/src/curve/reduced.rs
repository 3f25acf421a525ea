//! Bivariate gcd over Q via the primitive polynomial remainder sequence in
//! (Q[x])[y]. Used only for squarefreeness tests, so normalization of the
//! result is immaterial.

use num::{One, Zero};

use crate::algebra::rat::Rat;
use crate::curve::CurvePoly;

/// Dense univariate polynomial in x, ascending degree, trailing zeros
/// trimmed.
type UniX = Vec<Rat>;

fn trim(mut v: UniX) -> UniX {
    while v.last().is_some_and(Rat::is_zero) {
        v.pop();
    }
    v
}

fn ux_is_zero(v: &UniX) -> bool {
    v.is_empty()
}

fn ux_mul(a: &UniX, b: &UniX) -> UniX {
    if ux_is_zero(a) || ux_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn ux_sub(a: &UniX, b: &UniX) -> UniX {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Exact division; panics if not exact (callers divide by known factors).
fn ux_div_exact(a: &UniX, b: &UniX) -> UniX {
    assert!(!ux_is_zero(b));
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    if rem.len() < b.len() {
        assert!(ux_is_zero(&rem));
        return Vec::new();
    }
    let mut q = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db {
        let c = rem.last().unwrap() / &lead;
        let shift = rem.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            let v = &rem[shift + i] - &c * bc;
            rem[shift + i] = v;
        }
        q[shift] = c;
        rem = trim(rem);
        if ux_is_zero(&rem) {
            break;
        }
    }
    assert!(ux_is_zero(&trim(rem)), "inexact division");
    trim(q)
}

/// Monic gcd over Q[x].
fn ux_gcd(a: &UniX, b: &UniX) -> UniX {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !ux_is_zero(&r1) {
        // remainder of r0 by r1
        let db = r1.len() - 1;
        let lead = r1.last().unwrap().clone();
        let mut rem = r0.clone();
        while rem.len() > db {
            let c = rem.last().unwrap() / &lead;
            let shift = rem.len() - 1 - db;
            for (i, bc) in r1.iter().enumerate() {
                let v = &rem[shift + i] - &c * bc;
                rem[shift + i] = v;
            }
            rem = trim(rem);
        }
        r0 = std::mem::replace(&mut r1, rem);
    }
    if ux_is_zero(&r0) {
        return r0;
    }
    let lead = r0.last().unwrap().clone();
    trim(r0.iter().map(|c| c / &lead).collect())
}

/// Coefficient vector in y with Q[x] entries.
fn to_yx(g: &CurvePoly) -> Vec<UniX> {
    let dy = g.terms().map(|(_, b, _)| b).max().unwrap_or(0) as usize;
    let mut out = vec![Vec::new(); dy + 1];
    for (a, b, c) in g.terms() {
        let coeff = &mut out[b as usize];
        if coeff.len() <= a as usize {
            coeff.resize(a as usize + 1, Rat::zero());
        }
        coeff[a as usize] += c;
    }
    let mut out: Vec<UniX> = out.into_iter().map(trim).collect();
    while out.last().is_some_and(|c| ux_is_zero(c)) {
        out.pop();
    }
    out
}

fn from_yx(f: &[UniX]) -> CurvePoly {
    let mut out = CurvePoly::zero();
    for (b, coeff) in f.iter().enumerate() {
        for (a, c) in coeff.iter().enumerate() {
            out.add_term(a as u32, b as u32, c.clone());
        }
    }
    out
}

fn content_y(f: &[UniX]) -> UniX {
    let mut c: UniX = Vec::new();
    for coeff in f {
        c = ux_gcd(&c, coeff);
        if c.len() == 1 {
            break;
        }
    }
    c
}

fn primitive_part(f: &[UniX]) -> Vec<UniX> {
    let c = content_y(f);
    if ux_is_zero(&c) {
        return f.to_vec();
    }
    f.iter().map(|coeff| ux_div_exact(coeff, &c)).collect()
}

/// Pseudo-remainder of f by g in (Q[x])[y], then primitive part.
fn prem_primitive(f: &[UniX], g: &[UniX]) -> Vec<UniX> {
    let dg = g.len() - 1;
    let lead = g.last().unwrap().clone();
    let mut rem: Vec<UniX> = f.to_vec();
    while rem.len() > dg {
        let top = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - dg;
        // rem = lead*rem - top*y^shift*g
        let mut next: Vec<UniX> = rem.iter().map(|c| ux_mul(c, &lead)).collect();
        for (i, gc) in g.iter().enumerate() {
            next[shift + i] = ux_sub(&next[shift + i], &ux_mul(&top, gc));
        }
        while next.last().is_some_and(|c| ux_is_zero(c)) {
            next.pop();
        }
        rem = next;
        if rem.is_empty() {
            break;
        }
    }
    primitive_part(&rem)
}

/// gcd of two bivariate polynomials over Q, up to a rational unit.
pub fn gcd_bivariate(f: &CurvePoly, g: &CurvePoly) -> CurvePoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let fy = to_yx(f);
    let gy = to_yx(g);
    if fy.len() == 1 && gy.len() == 1 {
        return from_yx(&[ux_gcd(&fy[0], &gy[0])]);
    }
    if fy.len() == 1 {
        return from_yx(&[ux_gcd(&fy[0], &content_y(&gy))]);
    }
    if gy.len() == 1 {
        return from_yx(&[ux_gcd(&gy[0], &content_y(&fy))]);
    }
    let content = ux_gcd(&content_y(&fy), &content_y(&gy));
    let mut r0 = primitive_part(&fy);
    let mut r1 = primitive_part(&gy);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_empty() {
        let r = prem_primitive(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
    }
    let one_poly = vec![vec![Rat::one()]];
    let pp = if r0.is_empty() { one_poly } else { r0 };
    // multiply primitive-part gcd by the content gcd
    let result: Vec<UniX> = pp.iter().map(|c| ux_mul(c, &content)).collect();
    from_yx(&result)
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
    fn gcd_of_coprime_is_constant() {
        let f = poly(&[(2, 0, 1), (0, 3, -1)]); // x^2 - y^3
        let g = poly(&[(1, 0, 2)]); // 2x
        let d = gcd_bivariate(&f, &g);
        assert_eq!(d.total_degree(), Some(0));
    }

    #[test]
    fn gcd_detects_common_factor() {
        // gcd(x^2 y, 2xy) is xy up to a unit
        let f = poly(&[(2, 1, 1)]);
        let g = poly(&[(1, 1, 2)]);
        let d = gcd_bivariate(&f, &g);
        assert_eq!(d.total_degree(), Some(2));
    }

    #[test]
    fn gcd_of_square_with_derivative() {
        let cusp = poly(&[(2, 0, 1), (0, 3, -1)]);
        let sq = cusp.pow(2);
        let d = gcd_bivariate(&gcd_bivariate(&sq, &sq.derivative_x()), &sq.derivative_y());
        // the repeated factor survives
        assert_eq!(d.total_degree(), Some(3));
    }

    #[test]
    fn gcd_with_pure_x_and_pure_y_factors() {
        // f = x*y: squarefree; gcd(f, f_x, f_y) = gcd(xy, y, x) constant
        let f = poly(&[(1, 1, 1)]);
        let d = gcd_bivariate(&gcd_bivariate(&f, &f.derivative_x()), &f.derivative_y());
        assert_eq!(d.total_degree(), Some(0));
    }
}
