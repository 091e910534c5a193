//! Integer helpers shared by the exact number types.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Splits a positive integer as `n = f² · r` with `r` squarefree.
///
/// Trial division up to `√n`; values that fit in a `u64` take a
/// machine-word path.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "squarefree_split needs n > 0");
    if let Some(small) = n.to_u64() {
        let (f, r) = squarefree_split_u64(small);
        return (BigInt::from(f), BigInt::from(r));
    }
    let mut rest = n.clone();
    let mut f = BigInt::one();
    let mut r = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= &p;
        }
        if e % 2 == 1 {
            r *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    (f, r * rest)
}

fn squarefree_split_u64(mut n: u64) -> (u64, u64) {
    let mut f = 1u64;
    let mut r = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0u32;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= p;
        }
        if e % 2 == 1 {
            r *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (f, r * n)
}

/// `Some(√n)` when `n ≥ 0` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

pub(crate) fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}

pub(crate) fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rational {
    Rational::new(n.into(), d.into())
}

pub(crate) fn int_to_rational(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(n: i64) -> (i64, i64) {
        let (f, r) = squarefree_split(&BigInt::from(n));
        (f.to_i64().unwrap(), r.to_i64().unwrap())
    }

    #[test]
    fn splits_square_factors() {
        assert_eq!(split(8), (2, 2));
        assert_eq!(split(2), (1, 2));
        assert_eq!(split(4), (2, 1));
        assert_eq!(split(1), (1, 1));
        assert_eq!(split(72), (6, 2));
        assert_eq!(split(97), (1, 97));
        assert_eq!(split(9 * 49 * 11), (21, 11));
    }

    #[test]
    fn big_path_matches_small_path() {
        let n = BigInt::from(u64::MAX) * 4 * 9;
        let (f, r) = squarefree_split(&n);
        assert_eq!(&f * &f * &r, n);
        // u64::MAX = 3 · 5 · 17 · 257 · 641 · 65537 · 6700417, squarefree
        assert_eq!(f, BigInt::from(6));
        assert_eq!(r, BigInt::from(u64::MAX));
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(exact_sqrt(&BigInt::from(50)), None);
        assert_eq!(exact_sqrt(&BigInt::from(-4)), None);
        assert_eq!(exact_sqrt(&BigInt::zero()), Some(BigInt::zero()));
    }
}
