//! Indefinite binary quadratic forms and hyperbolic lattice operators.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::is_perfect_square;
use crate::error::{Error, Result};
use crate::matrix::UnimodularMatrix;
use crate::surd::QuadraticSurd;

/// The form `f(x, y) = c·x² + 2b·xy + a·y²` attached to the polynomial
/// `a·t² + 2b·t + c`, so that `f(1, t) = 0` exactly at the roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let f = QuadraticForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        };
        let disc = f.discriminant();
        if !disc.is_positive() || is_perfect_square(&disc) {
            return Err(Error::PreconditionViolated(format!(
                "b² − ac = {disc} must be positive and not a square"
            )));
        }
        Ok(f)
    }

    /// Form of `A·t² + B·t + C`; doubled first when `B` is odd.
    pub fn from_polynomial(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Self> {
        if b.is_even() {
            Self::new(a.clone(), b / 2, c.clone())
        } else {
            Self::new(a * 2, b.clone(), c * 2)
        }
    }

    /// `b² − ac`.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - &self.a * &self.c
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.c * x * x + BigInt::from(2) * &self.b * x * y + &self.a * y * y
    }

    /// `f∘M`, i.e. `(x, y) ↦ f(M·(x, y))`.
    pub fn compose(&self, m: &UnimodularMatrix) -> QuadraticForm {
        let [p, q, r, s] = m.entries();
        let two = BigInt::from(2);
        let xx = &self.c * p * p + &two * &self.b * p * r + &self.a * r * r;
        let xy = &self.c * p * q + &self.b * (p * s + q * r) + &self.a * r * s;
        let yy = &self.c * q * q + &two * &self.b * q * s + &self.a * s * s;
        QuadraticForm {
            a: yy,
            b: xy,
            c: xx,
        }
    }

    /// Roots of `a·t² + 2b·t + c` as `(larger, smaller)`.
    pub fn roots(&self) -> Result<(QuadraticSurd, QuadraticSurd)> {
        let two_b = &self.b * 2;
        Ok((
            QuadraticSurd::polynomial_root(&self.a, &two_b, &self.c, true)?,
            QuadraticSurd::polynomial_root(&self.a, &two_b, &self.c, false)?,
        ))
    }
}

/// A nontrivial automorphism of `f` with nonnegative entries, found by
/// iterating `(x, y) → (x, x + y)` and `(x, y) → (x + y, y)` until the
/// coefficient triple recurs.
pub fn lagrange_automorphism(form: &QuadraticForm) -> Result<UnimodularMatrix> {
    if !(&form.a * &form.c).is_negative() {
        return Err(Error::PreconditionViolated(format!(
            "ac = {} must be negative",
            &form.a * &form.c
        )));
    }
    let disc = form.discriminant();
    if is_perfect_square(&disc) {
        return Err(Error::PreconditionViolated(format!("b² − ac = {disc} is a square")));
    }
    // |a|, |c| ≤ Δ and |b| ≤ √Δ throughout, since ac < 0 is preserved
    let root = disc.sqrt();
    let cap = (BigInt::from(2) * &disc * (BigInt::from(2) * &root + 1u32))
        .to_usize()
        .unwrap_or(usize::MAX);

    let lower = UnimodularMatrix::new(1, 0, 1, 1).expect("unimodular");
    let upper = UnimodularMatrix::new(1, 1, 0, 1).expect("unimodular");
    let start = (form.a.clone(), form.b.clone(), form.c.clone());
    let (mut a, mut b, mut c) = start.clone();
    let mut acc = UnimodularMatrix::identity();
    let mut seen = HashSet::new();
    for step in 1..=cap {
        let f11 = &a + &b * 2u32 + &c;
        if (&f11 * &a).is_negative() {
            (b, c) = (&a + &b, f11);
            acc = &acc * &lower;
        } else {
            debug_assert!((&f11 * &c).is_negative());
            (a, b) = (f11, &b + &c);
            acc = &acc * &upper;
        }
        if (a.clone(), b.clone(), c.clone()) == start {
            return Ok(acc);
        }
        if !seen.insert((a.clone(), b.clone(), c.clone())) {
            // a repeat before the start returns would contradict invertibility
            return Err(Error::NonConvergence(step));
        }
    }
    Err(Error::NonConvergence(cap))
}

/// Slopes of the two invariant lines of a hyperbolic `M`, as
/// `(expanding, contracting)`.
///
/// The line through `(1, σ)` is invariant iff `q·σ² + (p − s)·σ − r = 0`;
/// its eigenvalue is `p + q·σ`.
pub fn fixed_line_surds(m: &UnimodularMatrix) -> Result<(QuadraticSurd, QuadraticSurd)> {
    let [p, q, r, s] = m.entries();
    let tr = m.trace();
    let char_disc = &tr * &tr - m.det() * 4u32;
    if q.is_zero() || !char_disc.is_positive() || is_perfect_square(&char_disc) {
        return Err(Error::NotHyperbolic(m.to_string()));
    }
    let (qa, qb, qc) = (q.clone(), p - s, -r.clone());
    let g = qa.gcd(&qb).gcd(&qc);
    let (qa, qb, qc) = (&qa / &g, &qb / &g, &qc / &g);
    let hi = QuadraticSurd::polynomial_root(&qa, &qb, &qc, true)?;
    let lo = QuadraticSurd::polynomial_root(&qa, &qb, &qc, false)?;
    // λ_hi − λ_lo = q·(σ_hi − σ_lo), and the eigenvalue of larger modulus
    // has the sign of the trace (λ_hi·λ_lo = ±1, λ_hi + λ_lo = tr)
    let expanding_is_hi = q.is_positive() == tr.is_positive();
    Ok(if expanding_is_hi { (hi, lo) } else { (lo, hi) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn m(p: i64, q: i64, r: i64, s: i64) -> UnimodularMatrix {
        UnimodularMatrix::new(p, q, r, s).unwrap()
    }

    fn s(a: i64, b: i64, c: i64, d: i64) -> QuadraticSurd {
        QuadraticSurd::new(a, b, c, d).unwrap()
    }

    fn check_automorphism(f: &QuadraticForm, a: &UnimodularMatrix) {
        assert!(a.det().is_one());
        assert!(a.entries().iter().all(|e| !e.is_negative()));
        assert_ne!(*a, UnimodularMatrix::identity());
        assert_eq!(f.compose(a), *f);
        let (root, _) = f.roots().unwrap();
        let (e, c) = fixed_line_surds(a).unwrap();
        assert!(e == root || c == root);
    }

    #[test]
    fn sqrt2_form() {
        let f = QuadraticForm::new(1, 0, -2).unwrap();
        let a = lagrange_automorphism(&f).unwrap();
        check_automorphism(&f, &a);
        assert_eq!(f.compose(&m(3, 2, 4, 3)), f);
        check_automorphism(&f, &(&a * &a));
    }

    #[test]
    fn golden_form_is_doubled() {
        let f = QuadraticForm::from_polynomial(&1.into(), &(-1).into(), &(-1).into()).unwrap();
        assert_eq!(f, QuadraticForm::new(2, -1, -2).unwrap());
        let a = lagrange_automorphism(&f).unwrap();
        check_automorphism(&f, &a);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            lagrange_automorphism(&QuadraticForm::new(1, 3, 2).unwrap()),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(QuadraticForm::new(1, 0, -4).is_err());
        assert!(QuadraticForm::new(1, 0, 2).is_err());
    }

    #[test]
    fn fixed_lines() {
        assert_eq!(
            fixed_line_surds(&m(3, 2, 4, 3)).unwrap(),
            (s(0, 1, 1, 2), s(0, -1, 1, 2))
        );
        assert_eq!(
            fixed_line_surds(&m(1, 1, 1, 2)).unwrap(),
            (s(1, 1, 2, 5), s(1, -1, 2, 5))
        );
        assert_eq!(
            fixed_line_surds(&m(2, 1, 1, 1)).unwrap(),
            (s(-1, 1, 2, 5), s(-1, -1, 2, 5))
        );
        // det −1: characteristic discriminant tr² + 4
        let (e, c) = fixed_line_surds(&m(1, 1, 1, 0)).unwrap();
        assert_eq!((e.clone(), c.clone()), (s(-1, 1, 2, 5), s(-1, -1, 2, 5)));
        assert!(matches!(
            fixed_line_surds(&m(1, 1, 0, 1)),
            Err(Error::NotHyperbolic(_))
        ));
        assert!(matches!(
            fixed_line_surds(&m(0, -1, 1, 0)),
            Err(Error::NotHyperbolic(_))
        ));
    }

    #[test]
    fn expanding_line_carries_growth() {
        for mat in [m(3, 2, 4, 3), m(1, 1, 1, 2), m(2, 1, 1, 1), m(5, 7, 2, 3)] {
            let (e, _) = fixed_line_surds(&mat).unwrap();
            // iterate a vector and watch its slope approach the expanding line
            let (mut x, mut y) = (BigInt::one(), BigInt::zero());
            for _ in 0..30 {
                (x, y) = mat.apply(&x, &y);
            }
            let slope = crate::arith::Rational::new(y, x);
            let gap = (e.approx_f64() - slope.to_f64().unwrap()).abs();
            assert!(gap < 1e-9, "{mat}: {e} vs {slope}");
        }
    }
}
