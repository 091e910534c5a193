//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Every check here recomputes its expected side independently of the
//! library path under test (brute force, direct algebra, or a second
//! construction).

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use surd_sails::cfrac::{convergents, expand, galois_reverse, serret_equivalent, value};
use surd_sails::criterion::{classify, shape_oracle, sqrt_shape_check, unit_period_check, Flag};
use surd_sails::geometry::{
    edge_sprout_bijection, integer_angle, integer_length, korkina_construct,
    lagrange_automorphism, sail_from_surd, sprout, LatticePoint, QuadraticForm,
};
use surd_sails::survey::reduced_surds;
use surd_sails::symmetry::{centers, shape_decompose, CenterKind, CyclicWord};
use surd_sails::{QuadraticSurd, Rational, UnimodularMatrix};

struct Outcome {
    failures: Vec<String>,
    summary: String,
    budget: Option<Duration>,
}

impl Outcome {
    fn new(summary: String, failures: Vec<String>) -> Self {
        Outcome {
            failures,
            summary,
            budget: None,
        }
    }

    fn within(mut self, budget: Duration) -> Self {
        self.budget = Some(budget);
        self
    }
}

fn squarefree(n: i64) -> bool {
    (2..).take_while(|p| p * p <= n).all(|p| n % (p * p) != 0)
}

fn pt(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

fn first<T: std::fmt::Display>(v: &[T]) -> String {
    v.first().map(|x| format!("; first: {x}")).unwrap_or_default()
}

/// The surd box shared by criteria 1 and 4: canonical `(a + b√d)/c` with
/// `|a| ≤ 20`, `0 < |b| ≤ 10`, `1 ≤ c ≤ 20`, squarefree `2 ≤ d ≤ 100`.
fn surd_box() -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for d in (2..=100).filter(|&d| squarefree(d)) {
        for c in 1..=20i64 {
            for b in (-10..=10i64).filter(|&b| b != 0) {
                for a in -20..=20i64 {
                    if a.gcd(&b).gcd(&c) == 1 {
                        out.push((a, b, c, d));
                    }
                }
            }
        }
    }
    out
}

struct BoxSweep {
    count: usize,
    roundtrip_failures: Vec<String>,
    galois_failures: Vec<String>,
    reduced: usize,
}

fn sweep_box() -> BoxSweep {
    let tuples = surd_box();
    let results: Vec<(Option<String>, Option<String>, bool)> = tuples
        .par_iter()
        .map(|&(a, b, c, d)| {
            let x = QuadraticSurd::new(a, b, c, d).expect("canonical tuple");
            assert_eq!(
                (x.a(), x.b(), x.c(), x.d()),
                (&a.into(), &b.into(), &c.into(), &d.into())
            );
            let cf = expand(&x);
            let back = value(&cf);
            let roundtrip = (back != x).then(|| format!("{x} -> {cf} -> {back}"));
            let reduced = x.is_reduced();
            let galois = if cf.is_purely_periodic() != reduced {
                Some(format!("{x}: purely periodic {} but reduced {reduced}", cf.is_purely_periodic()))
            } else if reduced {
                match galois_reverse(&x) {
                    Ok((fwd, back)) => {
                        // −1/ᾱ recomputed by field arithmetic
                        let partner = QuadraticSurd::new(
                            -(x.a() * x.c()),
                            -(x.b() * x.c()),
                            x.a() * x.a() - x.b() * x.b() * x.d(),
                            x.d().clone(),
                        )
                        .expect("irrational");
                        let rev: Vec<BigInt> = fwd.period().iter().rev().cloned().collect();
                        let direct = expand(&partner);
                        (direct != back || !direct.is_purely_periodic() || direct.period() != rev)
                            .then(|| format!("{x}: -1/conj expands to {direct}"))
                    }
                    Err(e) => Some(format!("{x}: {e}")),
                }
            } else {
                None
            };
            (roundtrip, galois, reduced)
        })
        .collect();
    BoxSweep {
        count: results.len(),
        roundtrip_failures: results.iter().filter_map(|r| r.0.clone()).collect(),
        galois_failures: results.iter().filter_map(|r| r.1.clone()).collect(),
        reduced: results.iter().filter(|r| r.2).count(),
    }
}

fn criterion_1(sweep: &BoxSweep) -> Outcome {
    Outcome::new(
        format!(
            "roundtrip value(expand(x)) = x on {} canonical surds, {} failures{}",
            sweep.count,
            sweep.roundtrip_failures.len(),
            first(&sweep.roundtrip_failures)
        ),
        sweep.roundtrip_failures.clone(),
    )
}

fn criterion_2() -> Outcome {
    let mut inputs: Vec<Rational> = (2..=500)
        .filter(|&r: &i64| r.sqrt() * r.sqrt() != r)
        .map(|r| Rational::from_integer(r.into()))
        .collect();
    for p in 1..=30i64 {
        for q in 1..=30i64 {
            let r = Rational::new(p.into(), q.into());
            let square = |n: &BigInt| {
                let s = n.sqrt();
                &s * &s == *n
            };
            if p > q && !(square(r.numer()) && square(r.denom())) {
                inputs.push(r);
            }
        }
    }
    let failures: Vec<String> = inputs
        .par_iter()
        .filter_map(|r| match sqrt_shape_check(r) {
            Ok(true) => None,
            Ok(false) => Some(format!("sqrt({r}) returned false")),
            Err(e) => Some(format!("sqrt({r}): {e}")),
        })
        .collect();
    Outcome::new(
        format!(
            "sqrt shape [a0; (palindrome, 2a0)] on {} radicands, {} violations{}",
            inputs.len(),
            failures.len(),
            first(&failures)
        ),
        failures,
    )
}

fn criterion_3() -> Outcome {
    let failures: Vec<String> = (1..=200u32)
        .filter_map(|q| {
            let q = BigInt::from(q);
            // independent: expand the two roots directly
            let one = BigInt::one();
            let x = QuadraticSurd::polynomial_root(&one, &-&q, &-&one, true).ok()?;
            let y = QuadraticSurd::polynomial_root(&one, &-(&q + 2u32), &one, true)
                .ok()?
                .add_int(&-&one);
            let (ex, ey) = (expand(&x), expand(&y));
            let want_y: Vec<BigInt> = if q.is_one() { vec![one.clone()] } else { vec![q.clone(), one] };
            let direct = ex.preperiod().is_empty()
                && ex.period() == [q.clone()]
                && ey.preperiod().is_empty()
                && ey.period() == want_y.as_slice();
            let lib = unit_period_check(&q).unwrap_or(false);
            (!(direct && lib)).then(|| format!("q = {q}: {ex}, {ey}"))
        })
        .collect();
    Outcome::new(
        format!("unit periods for 1 <= q <= 200, {} failures{}", failures.len(), first(&failures)),
        failures,
    )
}

fn criterion_4(sweep: &BoxSweep) -> Outcome {
    Outcome::new(
        format!(
            "purely periodic <=> reduced on {} surds ({} reduced, reversal confirmed), {} failures{}",
            sweep.count,
            sweep.reduced,
            sweep.galois_failures.len(),
            first(&sweep.galois_failures)
        ),
        sweep.galois_failures.clone(),
    )
}

/// Rotation brute force: some rotation equals the reversal.
fn brute_cyclic_palindrome<T: PartialEq + Clone>(w: &[T]) -> bool {
    let rev: Vec<T> = w.iter().rev().cloned().collect();
    (0..w.len()).any(|r| w[r..].iter().chain(&w[..r]).eq(rev.iter()))
}

fn criterion_5(survey: &[(u64, QuadraticSurd)]) -> Outcome {
    let failures: Vec<String> = survey
        .par_iter()
        .filter_map(|(_, x)| {
            let c = match classify(x) {
                Ok(c) => c,
                Err(e) => return Some(format!("{x}: {e}")),
            };
            let mut bad = Vec::new();
            if c.flags.is_empty() == brute_cyclic_palindrome(&c.period) {
                bad.push("flags vs cyclic palindrome");
            }
            for (flag, w) in &c.witnesses {
                let (tr, nm) = (w.omega.trace(), w.omega.norm());
                let eq = match flag {
                    Flag::A => tr.is_zero(),
                    Flag::B => tr.is_one(),
                    Flag::C => nm.is_one(),
                    Flag::D => nm == -Rational::one(),
                };
                if !eq {
                    bad.push("witness equation");
                }
                if !serret_equivalent(x, &w.omega) {
                    bad.push("witness not equivalent");
                }
                if w.certificate.slope_action().mobius(&w.omega) != w.omega.conjugate() {
                    bad.push("certificate");
                }
            }
            if c.flags.contains(&Flag::B) != c.flags.contains(&Flag::C) {
                bad.push("b <=> c");
            }
            let restricted: BTreeSet<Flag> =
                c.flags.iter().copied().filter(|f| *f != Flag::C).collect();
            if shape_oracle(x) != restricted {
                bad.push("shape oracle");
            }
            // quadratic integers: monic minimal polynomial
            if x.minimal_polynomial().0.is_one() && c.flags.is_empty() {
                bad.push("quadratic integer without flags");
            }
            (!bad.is_empty()).then(|| format!("{x}: {}", bad.join(", ")))
        })
        .collect();
    Outcome::new(
        format!(
            "classification of {} reduced surds with discriminant <= 3000, {} failures{}",
            survey.len(),
            failures.len(),
            first(&failures)
        ),
        failures,
    )
    .within(Duration::from_secs(120))
}

fn criterion_6(survey: &[(u64, QuadraticSurd)]) -> Outcome {
    let step = (survey.len() / 100).max(1);
    let sample: Vec<&QuadraticSurd> = survey.iter().step_by(step).take(100).map(|p| &p.1).collect();
    let failures: Vec<String> = sample
        .par_iter()
        .enumerate()
        .filter_map(|(i, x)| {
            let mut bad = Vec::new();
            let (k1, k2) = sail_from_surd(x, -6..=20);
            let full = k1.merge(&k2).ok()?;
            let conv = convergents(&expand(x), 21);
            for k in 0..=20i64 {
                let c = &conv[k as usize];
                if full.vertex(k) != Some(&LatticePoint::new(c.q.clone(), c.p.clone())) {
                    bad.push(format!("v_{k} is not (q_{k}, p_{k})"));
                    break;
                }
            }
            for k in -4..=20i64 {
                let v = |j: i64| full.vertex(j).unwrap();
                let a = full.letter(k).unwrap();
                let sign = if k.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
                if v(k - 1).det(v(k)) != -&sign || v(k - 2).det(v(k)) != &sign * a {
                    bad.push(format!("determinant law at k = {k}"));
                    break;
                }
            }
            match edge_sprout_bijection(&k1, &k2) {
                Ok(pairs) => {
                    let mut edges = HashSet::new();
                    for p in &pairs {
                        let other = if p.side == surd_sails::geometry::Side::First { &k2 } else { &k1 };
                        let e0 = other.vertex(p.edge.0).unwrap();
                        let e1 = other.vertex(p.edge.1).unwrap();
                        let el = integer_length(e0, e1).unwrap();
                        let sl = integer_length(&p.sprout.from, &p.sprout.to).unwrap();
                        let dir = &p.sprout.to - &p.sprout.from;
                        if el != sl || !(e1 - e0).det(&dir).is_zero() || !edges.insert((p.side, p.edge)) {
                            bad.push(format!("sprout at v_{} vs edge {:?}", p.vertex, p.edge));
                        }
                    }
                    if pairs.is_empty() {
                        bad.push("no sprouts matched".into());
                    }
                }
                Err(e) => bad.push(format!("bijection: {e}")),
            }
            // rebuild from the letters around a random basis
            let mut rng = StdRng::seed_from_u64(i as u64);
            let (p, q) = (rng.gen_range(-9..=9i64), rng.gen_range(-9..=9i64));
            let (e1, e2) = (pt(1, p), pt(q, p * q + 1));
            let letter = |k: i64| full.letter(k).unwrap().clone();
            let fwd: Vec<BigInt> = (1..=20).map(letter).collect();
            let back: Vec<BigInt> = (1..=4).map(|j| letter(-j)).collect();
            let v0 = &e1 + &(&letter(0) * &e2);
            match korkina_construct(&e1, &v0, &letter(0), &fwd, &back) {
                Ok(rebuilt) => match full.isomorphism_to(&rebuilt) {
                    Ok(m) => {
                        let maps_all = full.vertices().all(|(k, v)| {
                            let (x, y) = m.apply(&v.x, &v.y);
                            rebuilt.vertex(k) == Some(&LatticePoint::new(x, y))
                        });
                        if !maps_all || !m.det().abs().is_one() {
                            bad.push("reconstruction map".into());
                        }
                    }
                    Err(e) => bad.push(format!("reconstruction: {e}")),
                },
                Err(e) => bad.push(format!("korkina: {e}")),
            }
            (!bad.is_empty()).then(|| format!("{x}: {}", bad.join(", ")))
        })
        .collect();
    Outcome::new(
        format!(
            "sails of {} reduced surds: convergents, determinant laws, edge-sprout bijection, reconstruction; {} failures{}",
            sample.len(),
            failures.len(),
            first(&failures)
        ),
        failures,
    )
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut forms = Vec::new();
    while forms.len() < 500 {
        let a = rng.gen_range(-200..=200i64);
        let c = rng.gen_range(-200..=200i64);
        let b = rng.gen_range(-100..=100i64);
        let disc = b * b - a * c;
        if a * c >= 0 || disc > 10_000 {
            continue;
        }
        let s = (disc as f64).sqrt() as i64;
        if (s - 1..=s + 1).any(|r| r * r == disc) {
            continue;
        }
        forms.push((a, b, c));
    }
    let failures: Vec<String> = forms
        .par_iter()
        .filter_map(|&(a, b, c)| {
            let f = QuadraticForm::new(a, b, c).ok()?;
            let m = match lagrange_automorphism(&f) {
                Ok(m) => m,
                Err(e) => return Some(format!("({a}, {b}, {c}): {e}")),
            };
            let [p, q, r, s] = m.entries().map(|e| e.clone());
            let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
            // f(px + qy, rx + sy) expanded by hand
            let xx = &c * &p * &p + &b * 2 * &p * &r + &a * &r * &r;
            let xy2 = &c * 2 * &p * &q + &b * 2 * (&p * &s + &q * &r) + &a * 2 * &r * &s;
            let yy = &c * &q * &q + &b * 2 * &q * &s + &a * &s * &s;
            let preserved = xx == c && xy2 == &b * 2 && yy == a;
            let nonneg = [&p, &q, &r, &s].iter().all(|e| !e.is_negative());
            let alpha = QuadraticSurd::polynomial_root(&a, &(&b * 2), &c, true).ok()?;
            let fixes = m.slope_action().mobius(&alpha) == alpha;
            (!(m.det().is_one() && nonneg && preserved && fixes && m != UnimodularMatrix::identity()))
                .then(|| format!("({a}, {b}, {c}) -> {m}"))
        })
        .collect();
    Outcome::new(
        format!(
            "automorphisms of {} random forms: det 1, nonnegative, f∘A = f, fixes slope; {} failures{}",
            forms.len(),
            failures.len(),
            first(&failures)
        ),
        failures,
    )
}

/// All `(kind, position)` axes by checking a long window of the sequence.
fn brute_axes(w: &[u8]) -> Vec<(char, usize)> {
    let t = w.len() as i64;
    let at = |k: i64| w[k.rem_euclid(t) as usize];
    let mut out = Vec::new();
    for i in 0..t {
        if (0..3 * t).all(|j| at(i + j) == at(i - j)) {
            out.push((if at(i) % 2 == 0 { 'e' } else { 'o' }, i as usize));
        }
        if (0..3 * t).all(|j| at(i + 1 + j) == at(i - j)) {
            out.push(('g', i as usize));
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut words: Vec<Vec<u8>> = Vec::new();
    for len in 1..=10u32 {
        for code in 0..3usize.pow(len) {
            let w: Vec<u8> = (0..len).map(|i| (code / 3usize.pow(i) % 3) as u8 + 1).collect();
            let primitive = (1..w.len()).all(|p| w.len() % p != 0 || (p..w.len()).any(|i| w[i] != w[i - p]));
            if primitive {
                words.push(w);
            }
        }
    }
    let failures: Vec<String> = words
        .par_iter()
        .filter_map(|w| {
            let word = CyclicWord::from_i64(&w.iter().map(|&a| a as i64).collect::<Vec<_>>()).ok()?;
            let found = centers(&word);
            let mut got: Vec<(char, usize)> = found
                .iter()
                .map(|c| {
                    let k = match c.kind {
                        CenterKind::EvenElement => 'e',
                        CenterKind::OddElement => 'o',
                        CenterKind::Gap => 'g',
                    };
                    (k, c.position)
                })
                .collect();
            let mut want = brute_axes(w);
            got.sort();
            want.sort();
            let pal = brute_cyclic_palindrome(w);
            let shape = shape_decompose(&word);
            let has = |k: char| want.iter().any(|a| a.0 == k);
            let ok = got == want
                && found.is_empty() != pal
                && (!pal || want.len() == 2)
                && shape.regular_rotation.is_some() == has('g')
                && shape.even_extra.is_some() == has('e')
                && shape.odd_extra.is_some() == has('o');
            (!ok).then(|| format!("{w:?}: got {got:?}, want {want:?}"))
        })
        .collect();
    Outcome::new(
        format!(
            "{} primitive words over {{1,2,3}} of length <= 10: axes, two-axis count, shapes; {} failures{}",
            words.len(),
            failures.len(),
            first(&failures)
        ),
        failures,
    )
    .within(Duration::from_secs(30))
}

fn brute_points_on(p: &(i64, i64), q: &(i64, i64)) -> i64 {
    let mut n = 0;
    for x in p.0.min(q.0)..=p.0.max(q.0) {
        for y in p.1.min(q.1)..=p.1.max(q.1) {
            if (x - p.0) * (q.1 - p.1) == (y - p.1) * (q.0 - p.0) {
                n += 1;
            }
        }
    }
    n
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut failures = Vec::new();
    let mut lengths = 0;
    while lengths < 200 {
        let p = (rng.gen_range(-100..=100i64), rng.gen_range(-100..=100i64));
        let q = (rng.gen_range(-100..=100i64), rng.gen_range(-100..=100i64));
        if p == q {
            continue;
        }
        lengths += 1;
        let got = integer_length(&pt(p.0, p.1), &pt(q.0, q.1)).unwrap();
        if got != BigInt::from(brute_points_on(&p, &q) - 1) {
            failures.push(format!("length {p:?}-{q:?} = {got}"));
        }
    }
    let mut sprouts = 0;
    while sprouts < 200 {
        let v = (rng.gen_range(-60..=60i64), rng.gen_range(-60..=60i64));
        let g = v.0.extended_gcd(&v.1);
        if g.gcd != 1 {
            continue;
        }
        // det(v, e) = v.0·e.1 − v.1·e.0 = 1
        let e = (-g.y, g.x);
        let (x, y) = (rng.gen_range(-3..=5i64), rng.gen_range(-3..=5i64));
        if x + y - 1 < 2 {
            continue;
        }
        let u = (x * v.0 + e.0, x * v.1 + e.1);
        let w = (y * v.0 - e.0, y * v.1 - e.1);
        if [u, w].iter().any(|p| p.0.abs() > 100 || p.1.abs() > 100) {
            continue;
        }
        sprouts += 1;
        let (vp, up, wp) = (pt(v.0, v.1), pt(u.0, u.1), pt(w.0, w.1));
        let s = match sprout(&vp, &up, &wp) {
            Ok(s) => s,
            Err(err) => {
                failures.push(format!("sprout {v:?} {u:?} {w:?}: {err}"));
                continue;
            }
        };
        let top = (u.0 + w.0 - v.0, u.1 + w.1 - v.1);
        // parallelogram v, u, top, w: inside iff both edge coordinates in [0, 1]
        let (e1, e2) = ((u.0 - v.0, u.1 - v.1), (w.0 - v.0, w.1 - v.1));
        let area = e1.0 * e2.1 - e1.1 * e2.0;
        let xs = [v.0, u.0, w.0, top.0];
        let ys = [v.1, u.1, w.1, top.1];
        let mut interior_ok = true;
        for px in *xs.iter().min().unwrap()..=*xs.iter().max().unwrap() {
            for py in *ys.iter().min().unwrap()..=*ys.iter().max().unwrap() {
                let d = (px - v.0, py - v.1);
                // d = s·e1 + t·e2 with s, t ∈ [0, 1]
                let s_num = d.0 * e2.1 - d.1 * e2.0;
                let t_num = e1.0 * d.1 - e1.1 * d.0;
                let inside = |n: i64| if area > 0 { (0..=area).contains(&n) } else { (area..=0).contains(&n) };
                if !(inside(s_num) && inside(t_num)) || (px, py) == u || (px, py) == w {
                    continue;
                }
                let multiple = (1..=x + y).any(|k| (px, py) == (k * v.0, k * v.1));
                if !multiple {
                    interior_ok = false;
                }
            }
        }
        let len = integer_length(&s.from, &s.to).unwrap();
        let angle = integer_angle(&up, &vp, &wp).unwrap();
        if !interior_ok || len != angle || s.to != pt(top.0, top.1) {
            failures.push(format!("sprout {v:?} {u:?} {w:?}"));
        }
    }
    Outcome::new(
        format!(
            "{lengths} random segments and {sprouts} random sprouts against lattice enumeration, {} failures{}",
            failures.len(),
            first(&failures)
        ),
        failures,
    )
}

fn main() {
    let mut all_pass = true;
    let mut report = |id: u32, outcome: Outcome, elapsed: Duration| {
        let over = outcome.budget.is_some_and(|b| elapsed > b);
        let pass = outcome.failures.is_empty() && !over;
        all_pass &= pass;
        let budget = outcome
            .budget
            .map(|b| format!(", budget {} s", b.as_secs()))
            .unwrap_or_default();
        println!(
            "criterion {id} [{}] {} ({:.1} s{budget})",
            if pass { "PASS" } else { "FAIL" },
            outcome.summary,
            elapsed.as_secs_f64()
        );
    };

    let start = Instant::now();
    let sweep = sweep_box();
    let sweep_time = start.elapsed();
    report(1, criterion_1(&sweep).within(Duration::from_secs(60)), sweep_time);

    let timed = |f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        (o, t.elapsed())
    };
    let (o, t) = timed(&criterion_2);
    report(2, o, t);
    let (o, t) = timed(&criterion_3);
    report(3, o, t);
    report(4, criterion_4(&sweep), sweep_time);

    let t0 = Instant::now();
    let survey = reduced_surds(3000);
    let (o, t) = timed(&|| criterion_5(&survey));
    report(5, o, t + t0.elapsed() - t);
    let (o, t) = timed(&|| criterion_6(&survey));
    report(6, o, t);
    let (o, t) = timed(&criterion_7);
    report(7, o, t);
    let (o, t) = timed(&criterion_8);
    report(8, o, t);
    let (o, t) = timed(&criterion_9);
    report(9, o, t);

    if !all_pass {
        std::process::exit(1);
    }
}
