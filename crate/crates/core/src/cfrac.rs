//! Periodic continued fractions of quadratic surds.
//!
//! Expansion iterates the complete-quotient map `α ↦ 1/(α − ⌊α⌋)` and stops
//! at the first complete quotient that repeats exactly. Every complete
//! quotient of `α = (a + b√d)/c` can be written over one common radical as
//! `(P + f√d)/Q` with `Q | f²d − P²`; with `f` and `d` fixed, the pair
//! `(P, Q)` determines the value, so exact equality of complete quotients
//! is equality of pairs.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::matrix::UnimodularMatrix;
use crate::surd::QuadraticSurd;

/// Complete-quotient steps after which expansion is declared broken.
pub const ITERATION_CAP: usize = 1_000_000;

/// `[a_0; a_1, …, a_{s−1}, (b_0, …, b_{t−1})]`: a preperiod followed by an
/// endlessly repeated period.
///
/// The period is primitive and the preperiod minimal, so two values are
/// equal exactly when their `PeriodicCF`s are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicCF {
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

/// Numerator and denominator of a convergent `p/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
}

impl PeriodicCF {
    /// Validates the letters and brings the word to normal form: the period
    /// is replaced by its primitive root and the preperiod trimmed from the
    /// right while its last letter matches the period's last letter.
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidPeriod("period is empty".into()));
        }
        if let Some(bad) = period.iter().find(|a| !a.is_positive()) {
            return Err(Error::InvalidPeriod(format!(
                "period letter {bad} is not positive"
            )));
        }
        if let Some(bad) = preperiod.iter().skip(1).find(|a| !a.is_positive()) {
            return Err(Error::InvalidPeriod(format!(
                "partial quotient {bad} after the first is not positive"
            )));
        }
        let mut cf = PeriodicCF {
            preperiod,
            period: primitive_root(&period).to_vec(),
        };
        while let Some(last) = cf.preperiod.last() {
            if last != cf.period.last().unwrap() {
                break;
            }
            cf.preperiod.pop();
            cf.period.rotate_right(1);
        }
        Ok(cf)
    }

    pub fn from_i64(preperiod: &[i64], period: &[i64]) -> Result<Self> {
        Self::new(
            preperiod.iter().map(|&a| BigInt::from(a)).collect(),
            period.iter().map(|&a| BigInt::from(a)).collect(),
        )
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// Partial quotient `a_k`.
    pub fn letter(&self, k: usize) -> &BigInt {
        let s = self.preperiod.len();
        if k < s {
            &self.preperiod[k]
        } else {
            &self.period[(k - s) % self.period.len()]
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "preperiod": json::ints(&self.preperiod),
            "period": json::ints(&self.period),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Self::new(
            json::to_ints(json::field(v, "preperiod")?)?,
            json::to_ints(json::field(v, "period")?)?,
        )
    }
}

impl fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[BigInt]| {
            xs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "[")?;
        if let Some((a0, rest)) = self.preperiod.split_first() {
            write!(f, "{a0}; ")?;
            for a in rest {
                write!(f, "{a}, ")?;
            }
        }
        write!(f, "({})]", join(&self.period))
    }
}

/// Shortest word whose repetition gives `word`.
pub fn primitive_root<T: PartialEq>(word: &[T]) -> &[T] {
    let n = word.len();
    (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (p..n).all(|i| word[i] == word[i - p]))
        .map_or(word, |p| &word[..p])
}

/// Full record of an expansion: letters, complete quotients and where the
/// cycle starts.
#[derive(Clone, Debug)]
pub struct Expansion {
    letters: Vec<BigInt>,
    /// `(P_k, Q_k)` with `α_k = (P_k + f√d)/Q_k`.
    states: Vec<(BigInt, BigInt)>,
    cycle_start: usize,
    f: BigInt,
    d: BigInt,
}

impl Expansion {
    pub fn of(alpha: &QuadraticSurd) -> Self {
        let d = alpha.d().clone();
        let (mut p, mut f, mut q) = if alpha.b().is_positive() {
            (alpha.a().clone(), alpha.b().clone(), alpha.c().clone())
        } else {
            (-alpha.a(), -alpha.b(), -alpha.c())
        };
        let mut disc = &f * &f * &d;
        if !((&disc - &p * &p) % &q).is_zero() {
            let scale = q.abs();
            p *= &scale;
            f *= &scale;
            q *= &scale;
            disc = &f * &f * &d;
        }
        let root = disc.sqrt();

        let run = small_run(&p, &q, &disc, &root).unwrap_or_else(|| run_loop(p, q, disc, root));
        let (letters, states, cycle_start) =
            run.unwrap_or_else(|| panic!("expansion of {alpha} exceeded {ITERATION_CAP} steps"));
        Expansion {
            letters,
            states,
            cycle_start,
            f,
            d,
        }
    }

    pub fn cf(&self) -> PeriodicCF {
        PeriodicCF::new(
            self.letters[..self.cycle_start].to_vec(),
            self.letters[self.cycle_start..].to_vec(),
        )
        .expect("expansion letters are valid")
    }

    /// Length `s` of the preperiod.
    pub fn preperiod_len(&self) -> usize {
        self.cycle_start
    }

    pub fn period_len(&self) -> usize {
        self.letters.len() - self.cycle_start
    }

    pub fn letters(&self) -> &[BigInt] {
        &self.letters
    }

    /// Complete quotient `α_k` for `k` inside the recorded window
    /// (`k < s + t`).
    pub fn complete_quotient(&self, k: usize) -> QuadraticSurd {
        let (p, q) = &self.states[k];
        QuadraticSurd::from_squarefree(p.clone(), self.f.clone(), q.clone(), self.d.clone())
    }

    /// The cycle `α_s, …, α_{s+t−1}`.
    pub fn cycle(&self) -> Vec<QuadraticSurd> {
        (self.cycle_start..self.letters.len())
            .map(|k| self.complete_quotient(k))
            .collect()
    }

    /// Möbius matrix of `x ↦ [a_0; a_1, …, a_{k−1}, x]`.
    pub fn prefix_matrix(&self, k: usize) -> UnimodularMatrix {
        let t = self.period_len();
        let s = self.cycle_start;
        (0..k).fold(UnimodularMatrix::identity(), |acc, i| {
            let a = if i < s + t {
                &self.letters[i]
            } else {
                &self.letters[s + (i - s) % t]
            };
            &acc * &UnimodularMatrix::partial_quotient(a)
        })
    }
}

type Run<T> = Option<(Vec<T>, Vec<(T, T)>, usize)>;

/// Machine-word attempt; `None` when an intermediate would overflow.
fn small_run(p: &BigInt, q: &BigInt, disc: &BigInt, root: &BigInt) -> Option<Run<BigInt>> {
    const LIMIT: i128 = 1 << 60;
    let fit = |x: &BigInt| x.to_i128().filter(|v| v.abs() < LIMIT);
    let (p, q, disc, root) = (fit(p)?, fit(q)?, fit(disc)?, fit(root)?);
    let out = expand_generic::<i128>(p, q, disc, root)?;
    Some(out.map(|(letters, states, start)| {
        (
            letters.into_iter().map(BigInt::from).collect(),
            states
                .into_iter()
                .map(|(p, q)| (BigInt::from(p), BigInt::from(q)))
                .collect(),
            start,
        )
    }))
}

fn run_loop(p: BigInt, q: BigInt, disc: BigInt, root: BigInt) -> Run<BigInt> {
    expand_generic::<BigInt>(p, q, disc, root).expect("bignum arithmetic cannot overflow")
}

/// Outer `None`: arithmetic overflow. Inner `None`: iteration cap reached.
fn expand_generic<T>(mut p: T, mut q: T, disc: T, root: T) -> Option<Run<T>>
where
    T: Integer + Signed + Clone + Hash + CheckedAdd + CheckedMul + CheckedSub,
{
    let mut seen: HashMap<(T, T), usize> = HashMap::new();
    let mut letters = Vec::new();
    let mut states = Vec::new();
    for k in 0..ITERATION_CAP {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            return Some(Some((letters, states, start)));
        }
        seen.insert((p.clone(), q.clone()), k);
        states.push((p.clone(), q.clone()));
        // ⌊(P + √D)/Q⌋ from ⌊√D⌋, using that √D is irrational
        let top = p.checked_add(&root)?;
        let a = if q.is_positive() {
            top.div_floor(&q)
        } else {
            top.checked_add(&T::one())?.div_floor(&q)
        };
        let next_p = a.checked_mul(&q)?.checked_sub(&p)?;
        let (next_q, rem) = disc
            .checked_sub(&next_p.checked_mul(&next_p)?)?
            .div_rem(&q);
        debug_assert!(rem.is_zero());
        letters.push(a);
        p = next_p;
        q = next_q;
    }
    Some(None)
}

/// Periodic continued fraction of `α`; `value(&expand(α)) == α`.
pub fn expand(alpha: &QuadraticSurd) -> PeriodicCF {
    Expansion::of(alpha).cf()
}

/// Reconstructs the exact value of a periodic continued fraction.
pub fn value(cf: &PeriodicCF) -> QuadraticSurd {
    let omega = purely_periodic_value(cf.period());
    cf.preperiod
        .iter()
        .fold(UnimodularMatrix::identity(), |acc, a| {
            &acc * &UnimodularMatrix::partial_quotient(a)
        })
        .mobius(&omega)
}

/// Value of `[(b_0, …, b_{t−1})]`: the reduced fixed point of the period
/// matrix.
fn purely_periodic_value(period: &[BigInt]) -> QuadraticSurd {
    let m = period_matrix(period);
    let [p, q, r, s] = m.entries();
    // x = (p·x + q)/(r·x + s)  ⇔  r·x² + (s − p)·x − q = 0
    let (qa, qb, qc) = (r.clone(), s - p, -q.clone());
    let g = qa.gcd(&qb).gcd(&qc);
    let (qa, qb, qc) = (&qa / &g, &qb / &g, &qc / &g);
    let roots = [true, false].map(|larger| {
        QuadraticSurd::polynomial_root(&qa, &qb, &qc, larger)
            .expect("hyperbolic period matrix has irrational fixed points")
    });
    let mut reduced = roots.iter().filter(|x| x.is_reduced());
    let omega = reduced
        .next()
        .expect("a purely periodic word has a reduced fixed point")
        .clone();
    assert!(
        reduced.next().is_none(),
        "both fixed points of period {period:?} are reduced"
    );
    omega
}

/// Product of `[[b, 1], [1, 0]]` over the word.
pub fn period_matrix(word: &[BigInt]) -> UnimodularMatrix {
    word.iter().fold(UnimodularMatrix::identity(), |acc, a| {
        &acc * &UnimodularMatrix::partial_quotient(a)
    })
}

/// First `n` convergents `p_k/q_k`.
pub fn convergents(cf: &PeriodicCF, n: usize) -> Vec<Convergent> {
    let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    (0..n)
        .map(|k| {
            let a = cf.letter(k);
            let p = a * &p1 + &p2;
            let q = a * &q1 + &q2;
            (p2, p1) = (p1.clone(), p.clone());
            (q2, q1) = (q1.clone(), q.clone());
            Convergent { p, q }
        })
        .collect()
}

/// The reduced complete quotients of `α` in cyclic order.
pub fn complete_quotient_cycle(alpha: &QuadraticSurd) -> Vec<QuadraticSurd> {
    Expansion::of(alpha).cycle()
}

/// Expansions of a reduced `α` and of `−1/ᾱ`, checked to be exact reversals.
pub fn galois_reverse(alpha: &QuadraticSurd) -> Result<(PeriodicCF, PeriodicCF)> {
    let forward = expand(alpha);
    if !forward.is_purely_periodic() {
        return Err(Error::NotPurelyPeriodic(alpha.to_string()));
    }
    let partner = alpha.conjugate().recip().neg();
    let backward = expand(&partner);
    let reversed: Vec<BigInt> = forward.period().iter().rev().cloned().collect();
    if !backward.is_purely_periodic() || backward.period() != reversed.as_slice() {
        return Err(Error::Invariant(format!(
            "-1/conj({alpha}) = {partner} expands to {backward}, expected reversal of {forward}"
        )));
    }
    Ok((forward, backward))
}

/// `α ∼ ω`: the two expansions share a tail.
pub fn serret_equivalent(alpha: &QuadraticSurd, omega: &QuadraticSurd) -> bool {
    if alpha.d() != omega.d() {
        return false;
    }
    let (ea, eo) = (Expansion::of(alpha), Expansion::of(omega));
    shared_index(&ea, &eo).is_some()
}

/// Index `m` in `eo`'s cycle window where `ea`'s first cycle element recurs.
fn shared_index(ea: &Expansion, eo: &Expansion) -> Option<usize> {
    if ea.period_len() != eo.period_len() {
        return None;
    }
    let xi = ea.complete_quotient(ea.preperiod_len());
    (eo.preperiod_len()..eo.preperiod_len() + eo.period_len())
        .find(|&m| eo.complete_quotient(m) == xi)
}

/// A matrix `A` with `det A = ±1` and `A(ω) = α`.
///
/// Both expansions are run down to a shared complete quotient `ξ`, giving
/// `α = P(ξ)` and `ω = R(ξ)`, so `A₀ = P·R⁻¹`. Every other solution is
/// `A₀·G^k` where `G` generates the stabilizer of `ω`; among `k ∈ [−2, 2]`
/// the result prefers determinant `+1`, then the smallest entries.
pub fn serret_matrix(alpha: &QuadraticSurd, omega: &QuadraticSurd) -> Result<UnimodularMatrix> {
    let not_equiv = || Error::NotEquivalent(alpha.to_string(), omega.to_string());
    if alpha.d() != omega.d() {
        return Err(not_equiv());
    }
    let (ea, eo) = (Expansion::of(alpha), Expansion::of(omega));
    let m = shared_index(&ea, &eo).ok_or_else(not_equiv)?;
    let p = ea.prefix_matrix(ea.preperiod_len());
    let r = eo.prefix_matrix(m);
    let base = &p * &r.inverse();
    let cycle: Vec<BigInt> = (m..m + eo.period_len())
        .map(|i| eo.letters()[eo.preperiod_len() + (i - eo.preperiod_len()) % eo.period_len()].clone())
        .collect();
    let stab = &(&r * &period_matrix(&cycle)) * &r.inverse();
    let stab_inv = stab.inverse();
    let mut candidates = vec![base.clone()];
    let (mut up, mut down) = (base.clone(), base);
    for _ in 0..2 {
        up = &up * &stab;
        down = &down * &stab_inv;
        candidates.push(up.clone());
        candidates.push(down.clone());
    }
    let best = candidates
        .into_iter()
        .map(sign_normalized)
        .min_by(|x, y| certificate_key(x).cmp(&certificate_key(y)))
        .expect("candidate list is nonempty");
    if best.mobius(omega) != *alpha {
        return Err(Error::Invariant(format!(
            "serret matrix {best} maps {omega} to {}, not {alpha}",
            best.mobius(omega)
        )));
    }
    Ok(best)
}

fn sign_normalized(m: UnimodularMatrix) -> UnimodularMatrix {
    let first = m
        .entries()
        .into_iter()
        .find(|e| !e.is_zero())
        .cloned()
        .unwrap_or_default();
    if first.is_negative() {
        m.neg()
    } else {
        m
    }
}

fn certificate_key(m: &UnimodularMatrix) -> (bool, BigInt, Vec<BigInt>) {
    (
        !m.det().is_one(),
        m.weight(),
        m.entries().into_iter().cloned().collect(),
    )
}
