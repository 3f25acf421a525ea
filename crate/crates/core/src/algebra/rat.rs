//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational, always stored in lowest terms
//! with positive denominator. All arithmetic is exact; nothing here ever
//! rounds.

use num::bigint::BigInt;
use num::rational::BigRational;

pub type Rat = BigRational;

/// Integer as a `Rat`.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Fraction `n/d` as a `Rat`. Panics on zero denominator.
pub fn frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{One, Signed, Zero};

    #[test]
    fn lowest_terms_positive_denominator() {
        let x = frac(4, -6);
        assert_eq!(x, frac(-2, 3));
        assert!(x.denom().is_positive());
        assert_eq!(*x.numer(), BigInt::from(-2));
        assert_eq!(*x.denom(), BigInt::from(3));
    }

    #[test]
    fn exact_arithmetic() {
        let a = frac(1, 3);
        let b = frac(1, 6);
        assert_eq!(&a + &b, frac(1, 2));
        assert_eq!(&a - &a, Rat::zero());
        assert_eq!(&a * &frac(3, 1), Rat::one());
    }
}
