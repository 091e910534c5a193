//! Points of `Z²`, integer lengths and angles, vertex sprouts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticePoint {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        LatticePoint {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn origin() -> Self {
        Self::new(0, 0)
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `det(self, other)`, the signed area of the spanned parallelogram.
    pub fn det(&self, other: &LatticePoint) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    /// gcd of the coordinates; zero only at the origin.
    pub fn content(&self) -> BigInt {
        self.x.gcd(&self.y)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The primitive vector in the same direction. Panics at the origin.
    pub fn primitive(&self) -> LatticePoint {
        let g = self.content();
        assert!(!g.is_zero(), "the origin has no direction");
        LatticePoint::new(&self.x / &g, &self.y / &g)
    }

    /// `self / k` when the division is exact in both coordinates.
    pub fn div_exact(&self, k: &BigInt) -> Option<LatticePoint> {
        if k.is_zero() {
            return None;
        }
        let (qx, rx) = self.x.div_rem(k);
        let (qy, ry) = self.y.div_rem(k);
        (rx.is_zero() && ry.is_zero()).then(|| LatticePoint::new(qx, qy))
    }

    /// Positive rational `λ` with `self = λ·v`, as an integer when exact.
    pub(crate) fn multiple_of(&self, v: &LatticePoint) -> Option<BigInt> {
        if !self.det(v).is_zero() {
            return None;
        }
        let (num, den) = if v.x.is_zero() { (&self.y, &v.y) } else { (&self.x, &v.x) };
        let (q, r) = num.div_rem(den);
        r.is_zero().then_some(q)
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: &LatticePoint) -> LatticePoint {
        LatticePoint::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: &LatticePoint) -> LatticePoint {
        LatticePoint::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-&self.x, -&self.y)
    }
}

impl Mul<&LatticePoint> for &BigInt {
    type Output = LatticePoint;
    fn mul(self, p: &LatticePoint) -> LatticePoint {
        LatticePoint::new(self * &p.x, self * &p.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A closed lattice segment `[from, to]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub from: LatticePoint,
    pub to: LatticePoint,
}

impl Segment {
    pub fn new(from: LatticePoint, to: LatticePoint) -> Self {
        Segment { from, to }
    }

    pub fn direction(&self) -> LatticePoint {
        &self.to - &self.from
    }

    pub fn integer_length(&self) -> Result<BigInt> {
        integer_length(&self.from, &self.to)
    }

    pub fn is_parallel_to(&self, other: &Segment) -> bool {
        self.direction().det(&other.direction()).is_zero()
    }

    /// Same endpoints, either orientation.
    pub fn same_as(&self, other: &Segment) -> bool {
        (self.from == other.from && self.to == other.to)
            || (self.from == other.to && self.to == other.from)
    }

    pub fn translated(&self, by: &LatticePoint) -> Segment {
        Segment::new(&self.from + by, &self.to + by)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.from, self.to)
    }
}

/// Number of empty subsegments of `[p, q]`, i.e. `gcd(|Δx|, |Δy|)`.
pub fn integer_length(p: &LatticePoint, q: &LatticePoint) -> Result<BigInt> {
    if p == q {
        return Err(Error::DegenerateSegment);
    }
    Ok((q - p).content())
}

/// Integer angle at `v` between the segments `[v, u]` and `[v, w]`.
pub fn integer_angle(u: &LatticePoint, v: &LatticePoint, w: &LatticePoint) -> Result<BigInt> {
    let (e1, e2) = (u - v, w - v);
    if e1.is_origin() || e2.is_origin() || e1.det(&e2).is_zero() {
        return Err(Error::DegenerateAngle);
    }
    Ok(e1.primitive().det(&e2.primitive()).abs())
}

/// The vertex sprout `[v, u + w − v]`.
///
/// `{v, u}` and `{v, w}` must be lattice bases with `u`, `w` on opposite
/// sides of the line through `v`; then `u + w = (λ + 1)·v` and the sprout
/// top is `λ·v` with `λ ≥ 2`.
pub fn sprout(v: &LatticePoint, u: &LatticePoint, w: &LatticePoint) -> Result<Segment> {
    let (du, dw) = (v.det(u), v.det(w));
    if !du.abs().is_one() || !dw.abs().is_one() || du == dw {
        return Err(Error::NotUnimodularArms);
    }
    let (e1, e2) = (u - v, w - v);
    if e1.is_origin() || e2.is_origin() || e1.det(&e2).is_zero() {
        return Err(Error::DegenerateAngle);
    }
    let top = &(u + w) - v;
    let lambda = top.multiple_of(v).expect("u + w is a multiple of v");
    if !lambda.is_positive() {
        return Err(Error::OriginSprout);
    }
    Ok(Segment::new(v.clone(), top))
}
