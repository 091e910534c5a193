//! Vertex chains of adjacent Klein polygons.
//!
//! A chain `(v_k)` satisfies `v_k = v_{k−2} + a_k·v_{k−1}` with all
//! `a_k ≥ 1`. Even-indexed vertices span one polygon, odd-indexed ones the
//! adjacent polygon across `L_α`, and `a_k` is at once the integer length
//! of the edge `[v_{k−2}, v_k]` and the integer angle at `v_{k−1}`.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::lattice::{integer_length, sprout, LatticePoint, Segment};
use crate::cfrac::Expansion;
use crate::error::{Error, Result};
use crate::json;
use crate::matrix::UnimodularMatrix;
use crate::surd::QuadraticSurd;

/// A finite window of a labeled vertex chain.
///
/// May hold both parities (a full chain) or one parity (a single Klein
/// polygon); labels always cover the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sail {
    vertices: BTreeMap<i64, LatticePoint>,
    labels: BTreeMap<i64, BigInt>,
    cone: Option<(QuadraticSurd, QuadraticSurd)>,
}

impl Sail {
    pub fn vertices(&self) -> impl Iterator<Item = (i64, &LatticePoint)> + '_ {
        self.vertices.iter().map(|(&k, v)| (k, v))
    }

    pub fn labels(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.labels.iter().map(|(&k, a)| (k, a))
    }

    pub fn vertex(&self, k: i64) -> Option<&LatticePoint> {
        self.vertices.get(&k)
    }

    pub fn letter(&self, k: i64) -> Option<&BigInt> {
        self.labels.get(&k)
    }

    /// Slopes `(α, β)` of the cone lines, `k` increasing toward `L_α`.
    pub fn cone(&self) -> Option<&(QuadraticSurd, QuadraticSurd)> {
        self.cone.as_ref()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `(even, odd)` vertices: the two adjacent polygons.
    pub fn split(&self) -> (Sail, Sail) {
        let part = |parity: i64| Sail {
            vertices: self
                .vertices
                .iter()
                .filter(|(k, _)| k.rem_euclid(2) == parity)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
            labels: self.labels.clone(),
            cone: self.cone.clone(),
        };
        (part(0), part(1))
    }

    /// Union of two windows of the same chain.
    pub fn merge(&self, other: &Sail) -> Result<Sail> {
        let mut out = self.clone();
        for (k, v) in &other.vertices {
            if out.vertices.insert(*k, v.clone()).is_some_and(|old| old != *v) {
                return Err(Error::InvalidInput(format!("vertex {k} differs between sails")));
            }
        }
        for (k, a) in &other.labels {
            if out.labels.insert(*k, a.clone()).is_some_and(|old| old != *a) {
                return Err(Error::InvalidInput(format!("label {k} differs between sails")));
            }
        }
        Ok(out)
    }

    /// Sign `δ` with `det(v_{k−1}, v_k) = δ·(−1)^{k−1}`, read off the first
    /// consecutive pair.
    fn orientation(&self) -> Option<BigInt> {
        self.vertices.iter().find_map(|(&k, v)| {
            let prev = self.vertices.get(&(k - 1))?;
            let d = prev.det(v);
            Some(if (k - 1).rem_euclid(2) == 0 { d } else { -d })
        })
    }

    /// Checks the recurrence, the determinant laws and local convexity
    /// wherever the window holds the vertices involved.
    pub fn check_laws(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        for (&k, v) in &self.vertices {
            if !v.is_primitive() {
                return fail(format!("v_{k} = {v} is not primitive"));
            }
        }
        for (&k, a) in &self.labels {
            if !a.is_positive() {
                return fail(format!("a_{k} = {a} is not positive"));
            }
        }
        let Some(delta) = self.orientation() else {
            return Ok(());
        };
        if !delta.abs().is_one() {
            return fail(format!("consecutive vertices are not a basis (det {delta})"));
        }
        let sign = |k: i64| if k.rem_euclid(2) == 0 { delta.clone() } else { -&delta };
        let v = |k: i64| self.vertices.get(&k);
        let a = |k: i64| self.labels.get(&k);
        for &k in self.vertices.keys() {
            if let Some(prev) = v(k - 1) {
                if prev.det(&self.vertices[&k]) != sign(k - 1) {
                    return fail(format!("det(v_{}, v_{k}) has the wrong sign", k - 1));
                }
            }
            if let (Some(p2), Some(p1), Some(ak)) = (v(k - 2), v(k - 1), a(k)) {
                let vk = &self.vertices[&k];
                if *vk != p2 + &(ak * p1) {
                    return fail(format!("v_{k} = {vk} breaks the recurrence with a_{k} = {ak}"));
                }
                if p2.det(vk) != ak * sign(k) {
                    return fail(format!("det(v_{}, v_{k}) ≠ ±a_{k}", k - 2));
                }
            }
            if let (Some(p2), Some(n2), Some(a0), Some(a1), Some(a2)) =
                (v(k - 2), v(k + 2), a(k), a(k + 1), a(k + 2))
            {
                let vk = &self.vertices[&k];
                let turn = (p2 - vk).det(&(n2 - vk));
                if turn != a0 * a1 * a2 * sign(k) {
                    return fail(format!("chain is not convex at v_{k}"));
                }
            }
        }
        Ok(())
    }

    /// The operator `A ∈ GL₂(Z)` with `A·v_k = v′_k` on every common index.
    pub fn isomorphism_to(&self, other: &Sail) -> Result<UnimodularMatrix> {
        let k = self
            .vertices
            .keys()
            .copied()
            .find(|k| {
                [k, &(k + 1)]
                    .iter()
                    .all(|j| self.vertices.contains_key(j) && other.vertices.contains_key(j))
            })
            .ok_or_else(|| Error::InvalidInput("sails share no consecutive vertices".into()))?;
        // A·[v_k v_{k+1}] = [v′_k v′_{k+1}]
        let basis = |s: &Sail| {
            let (p, q) = (&s.vertices[&k], &s.vertices[&(k + 1)]);
            UnimodularMatrix::from_columns((&p.x, &p.y), (&q.x, &q.y))
        };
        let a = &basis(other)? * &basis(self)?.inverse();
        for (j, v) in &self.vertices {
            if let Some(w) = other.vertices.get(j) {
                let (x, y) = a.apply(&v.x, &v.y);
                if LatticePoint::new(x, y) != *w {
                    return Err(Error::Invariant(format!("{a} does not map v_{j} to v′_{j}")));
                }
            }
        }
        Ok(a)
    }

    /// `{"vertices":[[k,x,y]…],"labels":[[k,a]…]}`
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|(k, v)| json!([k, json::int(&v.x), json::int(&v.y)]))
            .collect();
        let labels: Vec<Value> = self
            .labels
            .iter()
            .map(|(k, a)| json!([k, json::int(a)]))
            .collect();
        json!({ "vertices": vertices, "labels": labels })
    }

    /// Sprout at `v_k` from its neighbours within this polygon.
    pub(crate) fn sprout_at(&self, k: i64) -> Option<Segment> {
        let v = self.vertices.get(&k)?;
        let (_, prev) = self.vertices.range(..k).next_back()?;
        let (_, next) = self.vertices.range(k + 1..).next()?;
        let u = v + &(next - v).primitive();
        let w = v + &(prev - v).primitive();
        sprout(v, &u, &w).ok()
    }

    fn edges(&self) -> Vec<(i64, i64)> {
        let keys: Vec<i64> = self.vertices.keys().copied().collect();
        keys.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// Vertices `v_k` for `k` in `lo..=hi` from the seeds `v_{−2}`, `v_{−1}`.
fn build_chain(
    v_m2: LatticePoint,
    v_m1: LatticePoint,
    letter: impl Fn(i64) -> BigInt,
    lo: i64,
    hi: i64,
) -> BTreeMap<i64, LatticePoint> {
    let mut v = BTreeMap::new();
    v.insert(-2, v_m2);
    v.insert(-1, v_m1);
    for k in 0..=hi {
        let next = &v[&(k - 2)] + &(&letter(k) * &v[&(k - 1)]);
        v.insert(k, next);
    }
    let mut k = -1;
    while k - 2 >= lo {
        let prev = &v[&k] - &(&letter(k) * &v[&(k - 1)]);
        v.insert(k - 2, prev);
        k -= 1;
    }
    v.into_iter().filter(|(k, _)| (lo..=hi).contains(k)).collect()
}

/// The adjacent sails of `L_α` and `L_ᾱ` over the window `range`, as
/// `(even, odd)` polygons.
///
/// The chain is seeded at the first reduced complete quotient `ω = α_s`
/// with `v_{−2} = (1, 0)`, `v_{−1} = (0, 1)`, extended in both directions
/// by the period of `ω`, and carried back to `α` by the prefix map. Indices
/// are shifted by `s`, so `v_k = (q_k, p_k)` for every `k ≥ s − 2`.
pub fn sail_from_surd(alpha: &QuadraticSurd, range: RangeInclusive<i64>) -> (Sail, Sail) {
    let e = Expansion::of(alpha);
    let s = e.preperiod_len() as i64;
    let t = e.period_len() as i64;
    let period = &e.letters()[e.preperiod_len()..];
    let letter = |k: i64| period[(k - s).rem_euclid(t) as usize].clone();
    // (1, ω) ↦ (1, α) up to scale
    let frame = e.prefix_matrix(e.preperiod_len()).slope_action();

    let (lo, hi) = (*range.start(), *range.end());
    let chain = build_chain(
        LatticePoint::new(1, 0),
        LatticePoint::new(0, 1),
        |j| letter(j + s),
        lo - s,
        hi - s,
    );
    let vertices = chain
        .into_iter()
        .map(|(j, v)| {
            let (x, y) = frame.apply(&v.x, &v.y);
            (j + s, LatticePoint::new(x, y))
        })
        .collect();
    let full = Sail {
        vertices,
        labels: range.map(|k| (k, letter(k))).collect(),
        cone: Some((alpha.clone(), alpha.conjugate())),
    };
    full.split()
}

/// The chain through `v_{−2}` and `v_0` with `a_0`, forward letters
/// `a_1, a_2, …` and backward letters `a_{−1}, a_{−2}, …`.
///
/// The even vertices form the unique Klein polygon with these edge lengths
/// and angles; the odd ones form the adjacent polygon.
pub fn korkina_construct(
    v_m2: &LatticePoint,
    v_0: &LatticePoint,
    a_0: &BigInt,
    forward: &[BigInt],
    backward: &[BigInt],
) -> Result<Sail> {
    if !a_0.is_positive() || forward.iter().chain(backward).any(|a| !a.is_positive()) {
        return Err(Error::BadSeed("letters must be positive".into()));
    }
    let len = integer_length(v_m2, v_0).map_err(|_| Error::BadSeed("v_-2 = v_0".into()))?;
    if len != *a_0 {
        return Err(Error::BadSeed(format!(
            "[{v_m2}, {v_0}] has integer length {len}, not {a_0}"
        )));
    }
    let v_m1 = (v_0 - v_m2).div_exact(a_0).expect("length divides the difference");
    if !v_m2.det(&v_m1).abs().is_one() {
        return Err(Error::BadSeed(format!(
            "{v_m2} and {v_m1} do not form a lattice basis"
        )));
    }
    let (m, n) = (backward.len() as i64, forward.len() as i64);
    let letter = |k: i64| match k {
        0 => a_0.clone(),
        k if k > 0 => forward[(k - 1) as usize].clone(),
        k => backward[(-k - 1) as usize].clone(),
    };
    let sail = Sail {
        vertices: build_chain(v_m2.clone(), v_m1, letter, -2 - m, n),
        labels: (-m..=n).map(|k| (k, letter(k))).collect(),
        cone: None,
    };
    sail.check_laws()?;
    Ok(sail)
}

/// Which polygon a sprout grows from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

/// A sprout of one polygon and the parallel edge of the other polygon with
/// the same integer length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SproutEdge {
    pub side: Side,
    /// Index of the sprout's root vertex.
    pub vertex: i64,
    pub sprout: Segment,
    /// Endpoint indices of the matched edge in the other polygon.
    pub edge: (i64, i64),
    pub length: BigInt,
}

/// Matches every sprout inside the window of either sail with the edge of
/// the other sail obtained by translating the sprout by `−w`, and checks
/// that the correspondence is a length-preserving, parallel,
/// incidence-preserving bijection between sprouts and edges.
///
/// Both sails must cover the same index window, as produced by
/// [`sail_from_surd`] or [`Sail::split`].
pub fn edge_sprout_bijection(sail1: &Sail, sail2: &Sail) -> Result<Vec<SproutEdge>> {
    let mut out = Vec::new();
    for (side, own, other) in [(Side::First, sail1, sail2), (Side::Second, sail2, sail1)] {
        let edges = other.edges();
        for (&k, v) in &own.vertices {
            let Some(spr) = own.sprout_at(k) else {
                continue;
            };
            let (_, prev) = own.vertices.range(..k).next_back().expect("interior vertex");
            let (_, next) = own.vertices.range(k + 1..).next().expect("interior vertex");
            let u = v + &(next - v).primitive();
            let w = v + &(prev - v).primitive();
            let candidates = [
                Segment::new(v - &w, &u - v),
                Segment::new(v - &u, &w - v),
            ];
            let found = edges.iter().find_map(|&(i, j)| {
                let e = Segment::new(other.vertices[&i].clone(), other.vertices[&j].clone());
                candidates.iter().any(|c| c.same_as(&e)).then_some(((i, j), e))
            });
            let Some((edge, seg)) = found else {
                return Err(Error::NotAdjacent(format!("no edge matches the sprout {spr}")));
            };
            let length = spr.integer_length()?;
            if seg.integer_length()? != length || !seg.is_parallel_to(&spr) {
                return Err(Error::Invariant(format!(
                    "sprout {spr} and edge {seg} differ in length or direction"
                )));
            }
            out.push(SproutEdge {
                side,
                vertex: k,
                sprout: spr,
                edge,
                length,
            });
        }
    }
    check_incidence(&out)?;
    Ok(out)
}

fn check_incidence(pairs: &[SproutEdge]) -> Result<()> {
    let mut sprout_image: HashMap<(Side, i64), (i64, i64)> = HashMap::new();
    let mut edge_image: HashMap<(Side, (i64, i64)), i64> = HashMap::new();
    for p in pairs {
        let target = match p.side {
            Side::First => Side::Second,
            Side::Second => Side::First,
        };
        if edge_image.insert((target, p.edge), p.vertex).is_some() {
            return Err(Error::Invariant(format!("edge {:?} is hit twice", p.edge)));
        }
        sprout_image.insert((p.side, p.vertex), p.edge);
    }
    for (&(side, k), &(i, j)) in &sprout_image {
        for (&(eside, (a, b)), &root) in &edge_image {
            if eside != side {
                continue;
            }
            let before = k == a || k == b;
            let after = root == i || root == j;
            if before != after {
                return Err(Error::Invariant(format!(
                    "incidence of sprout at v_{k} and edge [v_{a}, v_{b}] is not preserved"
                )));
            }
        }
    }
    Ok(())
}
