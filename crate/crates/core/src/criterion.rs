//! Classification of a surd's period symmetry.
//!
//! Each reflection axis of the periodic letter sequence yields an
//! equivalent `ω` whose cone lines are exchanged by a fixed lattice
//! symmetry:
//!
//! | flag | axis         | equation  | symmetry            |
//! |------|--------------|-----------|---------------------|
//! | a    | even letter  | `ω + ω̄ = 0` | `diag(1, −1)`       |
//! | b    | odd letter   | `ω + ω̄ = 1` | `[[1, 0], [1, −1]]` |
//! | c    | odd letter   | `ω·ω̄ = 1`   | `[[0, 1], [1, 0]]`  |
//! | d    | gap          | `ω·ω̄ = −1`  | `[[0, −1], [1, 0]]` |
//!
//! The witness is built from seed points placed symmetrically about the
//! axis: the chain through them is extended by the letters, and `ω` is the
//! expanding eigenslope of the period map `v_k ↦ v_{k+2t}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde_json::{json, Map, Value};

use crate::arith::{rational, Rational};
use crate::cfrac::{expand, primitive_root, serret_equivalent};
use crate::error::{Error, Result};
use crate::geometry::{fixed_line_surds, korkina_construct, LatticePoint};
use crate::json;
use crate::matrix::UnimodularMatrix;
use crate::surd::QuadraticSurd;
use crate::symmetry::{centers, is_regular_palindrome, shape_decompose, Center, CenterKind, CyclicWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    A,
    B,
    C,
    D,
}

impl Flag {
    pub const ALL: [Flag; 4] = [Flag::A, Flag::B, Flag::C, Flag::D];

    pub fn letter(self) -> char {
        match self {
            Flag::A => 'a',
            Flag::B => 'b',
            Flag::C => 'c',
            Flag::D => 'd',
        }
    }

    /// The axis kind this flag is read from.
    pub fn center_kind(self) -> CenterKind {
        match self {
            Flag::A => CenterKind::EvenElement,
            Flag::B | Flag::C => CenterKind::OddElement,
            Flag::D => CenterKind::Gap,
        }
    }

    /// The symmetry exchanging `L_ω` and `L_ω̄`, as a linear map.
    pub fn certificate(self) -> UnimodularMatrix {
        let m = match self {
            Flag::A => UnimodularMatrix::new(1, 0, 0, -1),
            Flag::B => UnimodularMatrix::new(1, 0, 1, -1),
            Flag::C => UnimodularMatrix::new(0, 1, 1, 0),
            Flag::D => UnimodularMatrix::new(0, -1, 1, 0),
        };
        m.expect("certificates are unimodular")
    }

    /// Whether `ω` satisfies this flag's trace or norm equation.
    pub fn holds_for(self, omega: &QuadraticSurd) -> bool {
        let (trace, norm) = omega.trace_norm();
        match self {
            Flag::A => trace == rational(0, 1),
            Flag::B => trace == rational(1, 1),
            Flag::C => norm == rational(1, 1),
            Flag::D => norm == rational(-1, 1),
        }
    }

    /// `("trace", ω + ω̄)` or `("norm", ω·ω̄)`, whichever the flag constrains.
    pub fn invariant(self, omega: &QuadraticSurd) -> (&'static str, Rational) {
        match self {
            Flag::A | Flag::B => ("trace", omega.trace()),
            Flag::C | Flag::D => ("norm", omega.norm()),
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub omega: QuadraticSurd,
    /// Linear map exchanging the lines of slope `ω` and `ω̄`.
    pub certificate: UnimodularMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub surd: QuadraticSurd,
    pub period: Vec<BigInt>,
    pub flags: BTreeSet<Flag>,
    pub centers: Vec<Center>,
    pub witnesses: BTreeMap<Flag, Witness>,
}

impl Classification {
    /// `{"surd":…,"period":[…],"flags":[…],"centers":[…],"witnesses":{…}}`
    pub fn to_json(&self) -> Value {
        let mut witnesses = Map::new();
        for (flag, w) in &self.witnesses {
            let (name, value) = flag.invariant(&w.omega);
            witnesses.insert(
                flag.to_string(),
                json!({
                    "omega": w.omega.to_string(),
                    name: value.to_string(),
                    "certificate": w.certificate.to_string(),
                }),
            );
        }
        json!({
            "surd": self.surd.to_string(),
            "period": json::ints(&self.period),
            "flags": self.flags.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "centers": self.centers.iter().map(Center::to_json).collect::<Vec<_>>(),
            "witnesses": witnesses,
        })
    }
}

fn period_word(alpha: &QuadraticSurd) -> CyclicWord {
    CyclicWord::new(expand(alpha).period().to_vec()).expect("periods are primitive and positive")
}

/// Flags of `α` with one verified witness each.
pub fn classify(alpha: &QuadraticSurd) -> Result<Classification> {
    let word = period_word(alpha);
    let found = centers(&word);
    let mut witnesses = BTreeMap::new();
    for flag in Flag::ALL {
        if let Some(c) = found.iter().find(|c| c.kind == flag.center_kind()) {
            witnesses.insert(flag, witness_for_word(alpha, &word, flag, *c)?);
        }
    }
    Ok(Classification {
        surd: alpha.clone(),
        period: word.letters().to_vec(),
        flags: witnesses.keys().copied().collect(),
        centers: found,
        witnesses,
    })
}

/// An `ω ∼ α` satisfying `flag`'s equation, built around `center`.
pub fn witness(alpha: &QuadraticSurd, flag: Flag, center: Center) -> Result<Witness> {
    witness_for_word(alpha, &period_word(alpha), flag, center)
}

fn witness_for_word(
    alpha: &QuadraticSurd,
    word: &CyclicWord,
    flag: Flag,
    center: Center,
) -> Result<Witness> {
    if center.kind != flag.center_kind() || !centers(word).contains(&center) {
        return Err(Error::IncompatibleCenter {
            flag: flag.to_string(),
            center: center.to_string(),
        });
    }
    let fail = |what: &str| Error::Invariant(format!("{flag}-witness for {alpha} at {center}: {what}"));

    // a_0 sits on the axis; for a gap axis, between a_{−1} and a_0
    let origin = match center.kind {
        CenterKind::Gap => center.position as i64 + 1,
        _ => center.position as i64,
    };
    let letter = |k: i64| word.at(origin + k).clone();
    let a0 = letter(0);
    let halves_ok = match flag {
        Flag::A => a0.is_even(),
        Flag::B | Flag::C => a0.is_odd(),
        Flag::D => true,
    };
    if !halves_ok {
        return Err(fail("letter on the axis has the wrong parity"));
    }
    let half = |n: BigInt| n / 2;
    let (v_m2, v_0) = match flag {
        Flag::A => (
            LatticePoint::new(1, half(-&a0)),
            LatticePoint::new(1, half(a0.clone())),
        ),
        Flag::B => (
            LatticePoint::new(1, half(1 - &a0)),
            LatticePoint::new(1, half(1 + &a0)),
        ),
        Flag::C => (
            LatticePoint::new(half(1 + &a0), half(1 - &a0)),
            LatticePoint::new(half(1 - &a0), half(1 + &a0)),
        ),
        Flag::D => (LatticePoint::new(1, 0), LatticePoint::new(1, a0.clone())),
    };

    let t = word.len() as i64;
    let forward: Vec<BigInt> = (1..=2 * t + 1).map(letter).collect();
    let chain = korkina_construct(&v_m2, &v_0, &a0, &forward, &[])?;
    let column = |k: i64| chain.vertex(k).expect("chain covers the period");
    let basis = |k: i64| {
        let (p, q) = (column(k), column(k + 1));
        UnimodularMatrix::from_columns((&p.x, &p.y), (&q.x, &q.y))
    };
    let period_map = &basis(2 * t)? * &basis(0)?.inverse();
    let (omega, contracting) = fixed_line_surds(&period_map)?;
    if contracting != omega.conjugate() {
        return Err(fail("invariant lines are not conjugate"));
    }
    if !flag.holds_for(&omega) {
        return Err(fail(&format!("ω = {omega} misses its equation")));
    }
    let certificate = flag.certificate();
    if certificate.slope_action().mobius(&omega) != omega.conjugate() {
        return Err(fail(&format!("{certificate} does not exchange the cone lines")));
    }
    if !serret_equivalent(alpha, &omega) {
        return Err(fail(&format!("ω = {omega} is not equivalent")));
    }
    Ok(Witness { omega, certificate })
}

/// Flags predicted by the rotation shapes of the period: a palindrome
/// gives `d`, a palindrome plus an even letter `a`, plus an odd letter `b`.
pub fn shape_oracle(alpha: &QuadraticSurd) -> BTreeSet<Flag> {
    let shape = shape_decompose(&period_word(alpha));
    [
        (shape.even_extra, Flag::A),
        (shape.odd_extra, Flag::B),
        (shape.regular_rotation, Flag::D),
    ]
    .into_iter()
    .filter_map(|(rot, flag)| rot.map(|_| flag))
    .collect()
}

/// Checks that `√r = [a_0; (a_1, …, a_1, 2a_0)]` with a palindromic
/// block before `2a_0`.
pub fn sqrt_shape_check(r: &Rational) -> Result<bool> {
    if *r <= Rational::one() {
        return Err(Error::PreconditionViolated(format!("r = {r} must exceed 1")));
    }
    let x = QuadraticSurd::sqrt(r).map_err(|_| {
        Error::PreconditionViolated(format!("r = {r} is the square of a rational"))
    })?;
    let cf = expand(&x);
    let violation = |why: &str| Err(Error::ShapeViolation(format!("sqrt({r}) = {cf}: {why}")));
    let [a0] = cf.preperiod() else {
        return violation("preperiod is not a single letter");
    };
    let (body, last) = cf.period().split_at(cf.period().len() - 1);
    if last[0] != a0 * 2 {
        return violation("period does not end in 2·a_0");
    }
    if !is_regular_palindrome(body) {
        return violation("period body is not a palindrome");
    }
    Ok(true)
}

/// The larger root of `x² − qx − 1` is `[(q)]`, and the larger root of
/// `x² − (q+2)x + 1`, minus one, is `[(q, 1)]`.
pub fn unit_period_check(q: &BigInt) -> Result<bool> {
    if !q.is_positive() {
        return Err(Error::PreconditionViolated(format!("q = {q} must be positive")));
    }
    let one = BigInt::one();
    let first = QuadraticSurd::polynomial_root(&one, &-q, &-&one, true)?;
    let first_ok = expand(&first).is_purely_periodic() && expand(&first).period() == [q.clone()];

    let second = QuadraticSurd::polynomial_root(&one, &-(q + 2u32), &one, true)?.add_int(&-&one);
    let word = [q.clone(), one];
    let cf = expand(&second);
    let second_ok = cf.is_purely_periodic() && cf.period() == primitive_root(&word);
    Ok(first_ok && second_ok)
}
