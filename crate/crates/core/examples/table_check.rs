use instanton_core::*;
use instanton_core::curve::CurvePoly;
use instanton_core::algebra::rat::rat;
use instanton_core::algebra::LaurentZU;

fn poly(terms: &[(u32, u32, i64)]) -> CurvePoly {
    let mut p = CurvePoly::zero();
    for &(a, b, c) in terms {
        p.add_term(a, b, rat(c));
    }
    p
}

fn main() {
    // y^3 - x^4 across j, canonical and raw
    let c = poly(&[(0,3,1),(4,0,-1)]);
    for j in 4..=8u32 {
        let bu = from_curve(&c, j).unwrap();
        let b = Bounds::for_j(j);
        let w = width(j, bu.p(), &b).unwrap();
        let h = height(j, bu.p()).unwrap();
        // raw (un-canonicalized) class must agree
        let raw = instanton_core::bundle::curve_substitution(&c);
        let wr = width(j, &raw, &b).unwrap();
        let hr = height(j, &raw).unwrap();
        // doubled bounds must agree
        let big = Bounds::with_gen_bound(j, 2 * (2 * j as i64 + 2));
        let wbig = width(j, bu.p(), &big).unwrap();
        println!("j={j}: canonical_p={}  (w,h)=({w},{h})  raw=({wr},{hr})  big-bounds w={wbig}", bu.p());
    }
    // scalar invariance on the suspicious cell
    let bu = from_curve(&c, 5).unwrap();
    for lam in [2i64, -1, 7] {
        let ps = bu.p().scale(&rat(lam));
        let w = width(5, &ps, &Bounds::for_j(5)).unwrap();
        println!("w(5, {lam}*p) = {w}");
    }
    // y^3 - x^m for larger m at j=5,6 for contrast
    for m in [5u32, 6, 7] {
        let c2 = poly(&[(0,3,1),(m,0,-1)]);
        for j in [5u32, 6] {
            let bu = from_curve(&c2, j).unwrap();
            let w = width(j, bu.p(), &Bounds::for_j(j)).unwrap();
            println!("w({j}, y^3-x^{m}) = {w}  (canonical {})", bu.p());
        }
    }
    // and the bare class z^3u^3 - u^4 handed directly at j=5..7
    let mut p = LaurentZU::monomial(3, 3, rat(1));
    p.add_term(4, 0, rat(-1));
    for j in 5..=7u32 {
        let w = width(j, &p, &Bounds::for_j(j)).unwrap();
        println!("w({j}, z^3u^3 - u^4) = {w}");
    }
}
