//! Exact elements `(a + b·√d)/c` of real quadratic fields.
//!
//! A [`QuadraticSurd`] is always irrational and stored in canonical form:
//! `c > 0`, `gcd(a, b, c) = 1`, `d > 1` squarefree and `b ≠ 0`. Canonical
//! form makes equality of values a field-by-field comparison.
//!
//! Ordering questions are settled by integer sign analysis only. Floating
//! point never enters the library.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd3, int_to_rational, squarefree_split, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Either side of a field operation in `Q(√d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElement {
    Rational(Rational),
    Surd(QuadraticSurd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl QuadraticSurd {
    /// Builds the canonical form of `(a + b·√d)/c`.
    ///
    /// Square factors of `d` move into `b`, the sign moves into the
    /// numerator and the triple is gcd-reduced.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if b.is_zero() || d.is_zero() {
            return Err(Error::RationalValue);
        }
        if d.is_negative() {
            return Err(Error::InvalidInput(format!(
                "negative radicand {d} (complex values are not supported)"
            )));
        }
        let (f, rad) = squarefree_split(&d);
        if rad.is_one() {
            return Err(Error::RationalValue);
        }
        Ok(Self::from_squarefree(a, b * f, c, rad))
    }

    /// Canonicalizes sign and common factors. `d` must already be
    /// squarefree and greater than one, `b` and `c` nonzero.
    pub(crate) fn from_squarefree(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!(!b.is_zero() && !c.is_zero() && d > BigInt::one());
        let (mut a, mut b, mut c) = (a, b, c);
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = gcd3(&a, &b, &c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        QuadraticSurd { a, b, c, d }
    }

    /// `√r` for a positive rational that is not a rational square.
    pub fn sqrt(r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidInput(format!("sqrt of non-positive {r}")));
        }
        // √(p/q) = √(p·q)/q
        Self::new(0, 1, r.denom().clone(), r.numer() * r.denom())
    }

    /// The larger (`larger = true`) or smaller root of `A·x² + B·x + C`.
    pub fn polynomial_root(a: &BigInt, b: &BigInt, c: &BigInt, larger: bool) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidInput("leading coefficient is zero".into()));
        }
        let disc = b * b - BigInt::from(4) * a * c;
        if !disc.is_positive() {
            return Err(Error::InvalidInput(format!(
                "discriminant {disc} is not positive"
            )));
        }
        // (−B ± √Δ)/(2A); the + root is the larger one when A > 0.
        let sign = if larger == a.is_positive() { 1 } else { -1 };
        Self::new(-b, sign, a * 2, disc)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// Squarefree radicand.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// `α + ᾱ = 2a/c`.
    pub fn trace(&self) -> Rational {
        Rational::new(&self.a * 2, self.c.clone())
    }

    /// `α·ᾱ = (a² − b²d)/c²`.
    pub fn norm(&self) -> Rational {
        Rational::new(
            &self.a * &self.a - &self.b * &self.b * &self.d,
            &self.c * &self.c,
        )
    }

    pub fn trace_norm(&self) -> (Rational, Rational) {
        (self.trace(), self.norm())
    }

    /// Exact three-way comparison `self` vs `x`.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        // (a + b√d)/c  ?  n/m   ⇔   b·m·√d  ?  c·n − a·m    (c, m > 0)
        let (n, m) = (x.numer(), x.denom());
        let lhs_coeff = &self.b * m;
        let rhs = &self.c * n - &self.a * m;
        cmp_sqrt_term(&lhs_coeff, &self.d, &rhs)
    }

    pub fn cmp_int(&self, n: &BigInt) -> Ordering {
        let rhs = &self.c * n - &self.a;
        cmp_sqrt_term(&self.b, &self.d, &rhs)
    }

    /// The unique integer `n` with `n ≤ α < n + 1`.
    pub fn floor(&self) -> BigInt {
        // b√d = ±√(b²d) lies strictly between consecutive integers around
        // isqrt(b²d); that pins the candidate, compare confirms it.
        let s = (&self.b * &self.b * &self.d).sqrt();
        let mut n = if self.b.is_positive() {
            (&self.a + &s).div_floor(&self.c)
        } else {
            (&self.a - &s - 1u32).div_floor(&self.c)
        };
        while self.cmp_int(&n) == Ordering::Less {
            n -= 1;
        }
        while self.cmp_int(&(&n + 1)) != Ordering::Less {
            n += 1;
        }
        n
    }

    /// Galois-reduced: `α > 1` and `−1 < ᾱ < 0`.
    pub fn is_reduced(&self) -> bool {
        let conj = self.conjugate();
        self.cmp_int(&BigInt::one()) == Ordering::Greater
            && conj.cmp_int(&BigInt::zero()) == Ordering::Less
            && conj.cmp_int(&-BigInt::one()) == Ordering::Greater
    }

    /// Primitive integer triple `(A, B, C)` with `A > 0` and `Aα² + Bα + C = 0`.
    pub fn minimal_polynomial(&self) -> (BigInt, BigInt, BigInt) {
        // (c·x − a)² = b²·d
        let qa = &self.c * &self.c;
        let qb = -(&self.a * &self.c * 2u32);
        let qc = &self.a * &self.a - &self.b * &self.b * &self.d;
        let g = gcd3(&qa, &qb, &qc);
        (qa / &g, qb / &g, qc / &g)
    }

    /// Discriminant `B² − 4AC` of the primitive minimal polynomial.
    pub fn discriminant(&self) -> BigInt {
        let (a, b, c) = self.minimal_polynomial();
        &b * &b - BigInt::from(4) * a * c
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// `α + n`.
    pub fn add_int(&self, n: &BigInt) -> Self {
        // c stays coprime to (a + n·c, b, c) so no reduction is needed
        QuadraticSurd {
            a: &self.a + n * &self.c,
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// `1/α`; never divides by zero since `α` is irrational.
    pub fn recip(&self) -> Self {
        // c/(a + b√d) = c(a − b√d)/(a² − b²d)
        let den = &self.a * &self.a - &self.b * &self.b * &self.d;
        Self::from_squarefree(&self.c * &self.a, -(&self.c * &self.b), den, self.d.clone())
    }

    pub fn arith(&self, rhs: &FieldElement, op: Op) -> Result<FieldElement> {
        FieldElement::Surd(self.clone()).arith(rhs, op)
    }

    /// Coarse floating approximation, for diagrams only.
    pub(crate) fn approx_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (a + b * d.sqrt()) / c
    }
}

/// Sign of `k·√d − r` for `k ≠ 0` and squarefree `d > 1`. Never `Equal`.
fn cmp_sqrt_term(k: &BigInt, d: &BigInt, r: &BigInt) -> Ordering {
    let squares = || (k * k * d).cmp(&(r * r));
    if k.is_positive() {
        if !r.is_positive() {
            Ordering::Greater
        } else {
            squares()
        }
    } else if !r.is_negative() {
        Ordering::Less
    } else {
        // both negative: k√d < r ⇔ |k|√d > |r|
        squares().reverse()
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by value. Surds over different radicands compare exactly too.
impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        // (a1 + b1√d1)/c1 − (a2 + b2√d2)/c2 has the sign of
        // (a1c2 − a2c1) + b1c2√d1 − b2c1√d2.
        let r = &self.a * &other.c - &other.a * &self.c;
        let k1 = &self.b * &other.c;
        let k2 = -(&other.b * &self.c);
        sign_of_two_roots(&r, &k1, &self.d, &k2, &other.d)
    }
}

/// Sign of `r + k1√d1 + k2√d2`, all integers, `d1, d2` squarefree.
fn sign_of_two_roots(r: &BigInt, k1: &BigInt, d1: &BigInt, k2: &BigInt, d2: &BigInt) -> Ordering {
    if d1 == d2 {
        let k = k1 + k2;
        if k.is_zero() {
            return r.cmp(&BigInt::zero());
        }
        return cmp_sqrt_term(&k, d1, &-r);
    }
    // r + k1√d1 + k2√d2 ? 0  ⇔  k1√d1 ? −r − k2√d2; square carefully by cases
    let sign_x = cmp_sqrt_term(k1, d1, &BigInt::zero()); // sign of k1√d1
    let sign_y = sign_with_sqrt(&-r, &-k2, d2); // sign of −r − k2√d2
    match (sign_x, sign_y) {
        (Ordering::Greater, Ordering::Less) | (Ordering::Greater, Ordering::Equal) => {
            Ordering::Greater
        }
        (Ordering::Less, Ordering::Greater) | (Ordering::Less, Ordering::Equal) => Ordering::Less,
        _ => {
            // same sign s: compare squares k1²d1 vs (r + k2√d2)² = r² + k2²d2 + 2rk2√d2
            let lhs = k1 * k1 * d1 - r * r - k2 * k2 * d2;
            let t = r * k2 * 2u32;
            // lhs ? t√d2
            let ord = sign_with_sqrt(&lhs, &-t, d2);
            if sign_x == Ordering::Greater {
                ord
            } else {
                ord.reverse()
            }
        }
    }
}

/// Sign of `r + k√d` (with `d` squarefree > 1).
fn sign_with_sqrt(r: &BigInt, k: &BigInt, d: &BigInt) -> Ordering {
    if k.is_zero() {
        return r.cmp(&BigInt::zero());
    }
    cmp_sqrt_term(k, d, &-r)
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt({})", self.d);
        let radical = if self.b.is_one() {
            root
        } else if self.b == -BigInt::one() {
            format!("-{root}")
        } else {
            format!("{}*{root}", self.b)
        };
        let numerator = if self.a.is_zero() {
            radical
        } else if self.b.is_positive() {
            format!("{}+{radical}", self.a)
        } else {
            format!("{}{radical}", self.a)
        };
        if self.c.is_one() {
            write!(f, "{numerator}")
        } else if self.a.is_zero() {
            write!(f, "{numerator}/{}", self.c)
        } else {
            write!(f, "({numerator})/{}", self.c)
        }
    }
}

/// Working representation `(a + b√d)/c` where `b` may be zero.
struct Parts {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl FieldElement {
    pub fn from_int(n: impl Into<BigInt>) -> Self {
        FieldElement::Rational(Rational::from_integer(n.into()))
    }

    pub fn radicand(&self) -> Option<&BigInt> {
        match self {
            FieldElement::Rational(_) => None,
            FieldElement::Surd(s) => Some(&s.d),
        }
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd> {
        match self {
            FieldElement::Surd(s) => Some(s),
            FieldElement::Rational(_) => None,
        }
    }

    pub fn conjugate(&self) -> Self {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.clone()),
            FieldElement::Surd(s) => FieldElement::Surd(s.conjugate()),
        }
    }

    fn parts(&self) -> Parts {
        match self {
            FieldElement::Rational(r) => Parts {
                a: r.numer().clone(),
                b: BigInt::zero(),
                c: r.denom().clone(),
            },
            FieldElement::Surd(s) => Parts {
                a: s.a.clone(),
                b: s.b.clone(),
                c: s.c.clone(),
            },
        }
    }

    fn from_parts(p: Parts, d: Option<&BigInt>) -> Result<Self> {
        if p.c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match d {
            Some(d) if !p.b.is_zero() => Ok(FieldElement::Surd(QuadraticSurd::from_squarefree(
                p.a,
                p.b,
                p.c,
                d.clone(),
            ))),
            _ => Ok(FieldElement::Rational(Rational::new(p.a, p.c))),
        }
    }

    /// Exact field arithmetic in `Q(√d)`. A result whose `√d` part cancels
    /// comes back as a rational.
    pub fn arith(&self, rhs: &FieldElement, op: Op) -> Result<FieldElement> {
        let d = match (self.radicand(), rhs.radicand()) {
            (Some(x), Some(y)) if x != y => {
                return Err(Error::RadicandMismatch(x.to_string(), y.to_string()))
            }
            (Some(x), _) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        };
        let zero = BigInt::zero();
        let dv = d.as_ref().unwrap_or(&zero);
        let (x, y) = (self.parts(), rhs.parts());
        let out = match op {
            Op::Add => Parts {
                a: &x.a * &y.c + &y.a * &x.c,
                b: &x.b * &y.c + &y.b * &x.c,
                c: &x.c * &y.c,
            },
            Op::Sub => Parts {
                a: &x.a * &y.c - &y.a * &x.c,
                b: &x.b * &y.c - &y.b * &x.c,
                c: &x.c * &y.c,
            },
            Op::Mul => Parts {
                a: &x.a * &y.a + &x.b * &y.b * dv,
                b: &x.a * &y.b + &x.b * &y.a,
                c: &x.c * &y.c,
            },
            Op::Div => {
                if y.a.is_zero() && y.b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                // x / y = x · c_y (a_y − b_y√d) / (a_y² − b_y²d)
                let n = &y.a * &y.a - &y.b * &y.b * dv;
                let (ra, rb) = (&y.c * &y.a, -(&y.c * &y.b));
                Parts {
                    a: &x.a * &ra + &x.b * &rb * dv,
                    b: &x.a * &rb + &x.b * &ra,
                    c: &x.c * n,
                }
            }
        };
        Self::from_parts(out, d.as_ref())
    }
}

impl From<QuadraticSurd> for FieldElement {
    fn from(s: QuadraticSurd) -> Self {
        FieldElement::Surd(s)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::Rational(r)
    }
}

impl From<&BigInt> for FieldElement {
    fn from(n: &BigInt) -> Self {
        FieldElement::Rational(int_to_rational(n))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => write!(f, "{r}"),
            FieldElement::Surd(s) => write!(f, "{s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn s(a: i64, b: i64, c: i64, d: i64) -> QuadraticSurd {
        QuadraticSurd::new(a, b, c, d).unwrap()
    }

    fn parts(x: &QuadraticSurd) -> (i64, i64, i64, i64) {
        use num_traits::ToPrimitive;
        (
            x.a.to_i64().unwrap(),
            x.b.to_i64().unwrap(),
            x.c.to_i64().unwrap(),
            x.d.to_i64().unwrap(),
        )
    }

    fn phi() -> QuadraticSurd {
        s(1, 1, 2, 5)
    }

    #[test]
    fn canonicalizes() {
        assert_eq!(parts(&s(2, 2, 2, 8)), (1, 2, 1, 2));
        assert_eq!(parts(&s(0, 1, 1, 2)), (0, 1, 1, 2));
        assert_eq!(parts(&s(3, 1, -6, 12)), (-3, -2, 6, 3));
        assert_eq!(parts(&s(3, 3, -6, 3)), (-1, -1, 2, 3));
        assert_eq!(QuadraticSurd::new(0, 1, 1, 4), Err(Error::RationalValue));
        assert_eq!(QuadraticSurd::new(1, 0, 1, 2), Err(Error::RationalValue));
        assert_eq!(QuadraticSurd::new(1, 1, 0, 2), Err(Error::ZeroDenominator));
        assert_eq!(QuadraticSurd::new(0, 3, 1, 1), Err(Error::RationalValue));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for x in [s(2, 2, 2, 8), phi(), s(-7, 3, 11, 19)] {
            let again = QuadraticSurd::new(x.a.clone(), x.b.clone(), x.c.clone(), x.d.clone());
            assert_eq!(again.unwrap(), x);
        }
    }

    #[test]
    fn conjugates() {
        assert_eq!(phi().conjugate(), s(1, -1, 2, 5));
        assert_eq!(s(0, 1, 1, 2).conjugate(), s(0, -1, 1, 2));
        assert_eq!(s(3, 2, 5, 7).conjugate(), s(3, -2, 5, 7));
        assert_eq!(phi().conjugate().conjugate(), phi());
    }

    #[test]
    fn trace_and_norm() {
        assert_eq!(phi().trace_norm(), (rational(1, 1), rational(-1, 1)));
        assert_eq!(s(0, 1, 1, 2).trace_norm(), (rational(0, 1), rational(-2, 1)));
        assert_eq!(s(1, 1, 1, 2).trace_norm(), (rational(2, 1), rational(-1, 1)));
    }

    #[test]
    fn compares_exactly() {
        let r2 = s(0, 1, 1, 2);
        assert_eq!(r2.cmp_rational(&rational(3, 2)), Ordering::Less);
        assert_eq!(r2.cmp_rational(&rational(1, 1)), Ordering::Greater);
        assert_eq!(phi().cmp_rational(&rational(2, 1)), Ordering::Less);
        assert_eq!(r2.cmp_rational(&rational(-5, 1)), Ordering::Greater);
        assert_eq!(r2.neg().cmp_rational(&rational(-141, 100)), Ordering::Less);
        assert_eq!(r2.neg().cmp_rational(&rational(-142, 100)), Ordering::Greater);
    }

    #[test]
    fn floors() {
        assert_eq!(s(0, 1, 1, 2).floor(), BigInt::from(1));
        assert_eq!(s(3, 1, 5, 19).floor(), BigInt::from(1));
        assert_eq!(s(0, -1, 1, 2).floor(), BigInt::from(-2));
        assert_eq!(s(-7, 1, 3, 2).floor(), BigInt::from(-2));
    }

    #[test]
    fn field_arithmetic() {
        let x = FieldElement::Surd(s(1, 1, 1, 2));
        let y = FieldElement::Surd(s(-1, 1, 1, 2));
        assert_eq!(x.arith(&y, Op::Mul).unwrap(), FieldElement::from_int(1));
        let r2 = FieldElement::Surd(s(0, 1, 1, 2));
        assert_eq!(
            r2.arith(&r2, Op::Add).unwrap(),
            FieldElement::Surd(s(0, 2, 1, 2))
        );
        assert_eq!(
            FieldElement::from_int(1).arith(&x, Op::Div).unwrap(),
            FieldElement::Surd(s(-1, 1, 1, 2))
        );
        assert_eq!(r2.arith(&r2, Op::Sub).unwrap(), FieldElement::from_int(0));
        assert!(matches!(
            r2.arith(&FieldElement::Surd(s(0, 1, 1, 3)), Op::Add),
            Err(Error::RadicandMismatch(_, _))
        ));
        assert_eq!(
            r2.arith(&FieldElement::from_int(0), Op::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn reciprocal_matches_division() {
        let x = s(3, -2, 7, 13);
        let one = FieldElement::from_int(1);
        assert_eq!(
            one.arith(&FieldElement::Surd(x.clone()), Op::Div).unwrap(),
            FieldElement::Surd(x.recip())
        );
    }

    #[test]
    fn reducedness() {
        assert!(phi().is_reduced());
        assert!(s(1, 1, 1, 2).is_reduced());
        assert!(!s(0, 1, 1, 2).is_reduced());
        assert!(!phi().conjugate().is_reduced());
    }

    #[test]
    fn minimal_polynomials() {
        let big = |v: [i64; 3]| (BigInt::from(v[0]), BigInt::from(v[1]), BigInt::from(v[2]));
        assert_eq!(phi().minimal_polynomial(), big([1, -1, -1]));
        assert_eq!(s(0, 1, 1, 2).minimal_polynomial(), big([1, 0, -2]));
        assert_eq!(s(3, 1, 5, 19).minimal_polynomial(), big([5, -6, -2]));
    }

    #[test]
    fn polynomial_roots() {
        let (one, m1) = (BigInt::one(), -BigInt::one());
        assert_eq!(QuadraticSurd::polynomial_root(&one, &m1, &m1, true).unwrap(), phi());
        assert_eq!(
            QuadraticSurd::polynomial_root(&one, &m1, &m1, false).unwrap(),
            phi().conjugate()
        );
        let neg = -BigInt::one();
        assert_eq!(
            QuadraticSurd::polynomial_root(&neg, &one, &one, true).unwrap(),
            phi()
        );
    }

    #[test]
    fn displays() {
        assert_eq!(s(0, 1, 1, 2).to_string(), "sqrt(2)");
        assert_eq!(phi().to_string(), "(1+sqrt(5))/2");
        assert_eq!(s(3, -2, 5, 7).to_string(), "(3-2*sqrt(7))/5");
        assert_eq!(s(0, -1, 2, 3).to_string(), "-sqrt(3)/2");
        assert_eq!(s(1, 1, 1, 2).to_string(), "1+sqrt(2)");
    }

    #[test]
    fn cross_field_order() {
        let (r2, r3) = (s(0, 1, 1, 2), s(0, 1, 1, 3));
        assert!(r2 < r3);
        assert!(s(1, 1, 1, 2) > r3); // 2.414 > 1.732
        assert!(s(0, 1, 1, 2) < s(1, 1, 2, 5)); // 1.414 < 1.618
        assert!(s(7, -5, 1, 2) < s(0, 1, 10, 3)); // -0.0711 < 0.1732
        assert!(s(-7, 5, 1, 2) < s(0, 1, 10, 3)); // 0.0711 < 0.1732
        assert!(s(-7, 5, 1, 2) > s(0, 1, 30, 3)); // 0.0711 > 0.0577
    }
}
