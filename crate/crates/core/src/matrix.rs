use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::surd::QuadraticSurd;

/// A 2×2 integer matrix `[[p, q], [r, s]]` with determinant ±1.
///
/// As a Möbius map it sends `x` to `(p·x + q)/(r·x + s)`; as a linear map
/// it acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    s: BigInt,
}

impl UnimodularMatrix {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        s: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = UnimodularMatrix {
            p: p.into(),
            q: q.into(),
            r: r.into(),
            s: s.into(),
        };
        let det = m.det();
        if det.abs().is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular(det.to_string()))
        }
    }

    /// Skips the determinant check; callers guarantee det ±1.
    pub(crate) fn new_unchecked(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Self {
        let m = UnimodularMatrix { p, q, r, s };
        debug_assert!(m.det().abs().is_one(), "det {} for {m}", m.det());
        m
    }

    pub fn identity() -> Self {
        Self::new_unchecked(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// `[[a, 1], [1, 0]]`: the Möbius map `x ↦ a + 1/x`.
    pub fn partial_quotient(a: &BigInt) -> Self {
        Self::new_unchecked(a.clone(), BigInt::one(), BigInt::one(), BigInt::zero())
    }

    /// `[[1, n], [0, 1]]`: translation by `n`.
    pub fn translation(n: &BigInt) -> Self {
        Self::new_unchecked(BigInt::one(), n.clone(), BigInt::zero(), BigInt::one())
    }

    /// Matrix with the given columns; errors unless they form a lattice basis.
    pub fn from_columns(c0: (&BigInt, &BigInt), c1: (&BigInt, &BigInt)) -> Result<Self> {
        Self::new(c0.0.clone(), c1.0.clone(), c0.1.clone(), c1.1.clone())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    pub fn det(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }

    pub fn trace(&self) -> BigInt {
        &self.p + &self.s
    }

    pub fn inverse(&self) -> Self {
        // det ∈ {±1} so the adjugate times det is the inverse
        let det = self.det();
        Self::new_unchecked(
            &self.s * &det,
            -(&self.q * &det),
            -(&self.r * &det),
            &self.p * &det,
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new_unchecked(self.p.clone(), self.r.clone(), self.q.clone(), self.s.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new_unchecked(-&self.p, -&self.q, -&self.r, -&self.s)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sum of absolute values of the entries.
    pub fn weight(&self) -> BigInt {
        self.p.abs() + self.q.abs() + self.r.abs() + self.s.abs()
    }

    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.p * x + &self.q * y, &self.r * x + &self.s * y)
    }

    /// Möbius action `(p·α + q)/(r·α + s)`.
    pub fn mobius(&self, alpha: &QuadraticSurd) -> QuadraticSurd {
        let (a, b, c, d) = (alpha.a(), alpha.b(), alpha.c(), alpha.d());
        // numerator (p·a + q·c + p·b√d)/c, denominator (r·a + s·c + r·b√d)/c
        let (n0, n1) = (&self.p * a + &self.q * c, &self.p * b);
        let (m0, m1) = (&self.r * a + &self.s * c, &self.r * b);
        // (n0 + n1√d)/(m0 + m1√d) = (n0 + n1√d)(m0 − m1√d)/(m0² − m1²d)
        let den = &m0 * &m0 - &m1 * &m1 * d;
        debug_assert!(!den.is_zero());
        let num0 = &n0 * &m0 - &n1 * &m1 * d;
        let num1 = &n1 * &m0 - &n0 * &m1;
        QuadraticSurd::from_squarefree(num0, num1, den, d.clone())
    }

    /// The Möbius matrix describing how this linear map moves lines through
    /// the origin: the line of slope `σ` (through `(1, σ)`) goes to the line
    /// of slope `slope_action().mobius(σ)`.
    pub fn slope_action(&self) -> Self {
        // (1, σ) ↦ (p + qσ, r + sσ), slope (sσ + r)/(qσ + p)
        Self::new_unchecked(self.s.clone(), self.r.clone(), self.q.clone(), self.p.clone())
    }
}

impl Mul for &UnimodularMatrix {
    type Output = UnimodularMatrix;

    fn mul(self, o: &UnimodularMatrix) -> UnimodularMatrix {
        UnimodularMatrix::new_unchecked(
            &self.p * &o.p + &self.q * &o.r,
            &self.p * &o.q + &self.q * &o.s,
            &self.r * &o.p + &self.s * &o.r,
            &self.r * &o.q + &self.s * &o.s,
        )
    }
}

impl Mul for UnimodularMatrix {
    type Output = UnimodularMatrix;

    fn mul(self, o: UnimodularMatrix) -> UnimodularMatrix {
        &self * &o
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}
