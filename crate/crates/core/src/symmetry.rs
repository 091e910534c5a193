//! Palindromic structure of cyclic words.
//!
//! A cyclic word `s_0 … s_{t−1}` stands for the bi-infinite sequence with
//! `s_{k+t} = s_k`. A reflection axis through letter `i` fixes it when
//! `s_{i+j} = s_{i−j}` for all `j`; an axis through gap `i` (between
//! letters `i` and `i+1`) when `s_{i+1+j} = s_{i−j}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::cfrac::primitive_root;
use crate::error::{Error, Result};
use crate::json;

/// A primitive word of positive letters, read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    letters: Vec<BigInt>,
}

impl CyclicWord {
    pub fn new(letters: Vec<BigInt>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidInput("empty word".into()));
        }
        if letters.iter().any(|a| !a.is_positive()) {
            return Err(Error::InvalidInput("letters must be positive".into()));
        }
        if primitive_root(&letters).len() != letters.len() {
            return Err(Error::InvalidInput(format!(
                "word {} is a proper power",
                show(&letters)
            )));
        }
        Ok(CyclicWord { letters })
    }

    pub fn from_i64(letters: &[i64]) -> Result<Self> {
        Self::new(letters.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn letters(&self) -> &[BigInt] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter `s_k` of the periodic sequence, any `k`.
    pub fn at(&self, k: i64) -> &BigInt {
        &self.letters[k.rem_euclid(self.len() as i64) as usize]
    }

    /// The word read from position `r`.
    pub fn rotated(&self, r: usize) -> Vec<BigInt> {
        let mut out = self.letters[r..].to_vec();
        out.extend_from_slice(&self.letters[..r]);
        out
    }

    pub fn reversed(&self) -> CyclicWord {
        CyclicWord {
            letters: self.letters.iter().rev().cloned().collect(),
        }
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&show(&self.letters))
    }
}

fn show(letters: &[BigInt]) -> String {
    let parts: Vec<String> = letters.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CenterKind {
    EvenElement,
    OddElement,
    Gap,
}

impl CenterKind {
    pub fn name(self) -> &'static str {
        match self {
            CenterKind::EvenElement => "even",
            CenterKind::OddElement => "odd",
            CenterKind::Gap => "gap",
        }
    }
}

/// A reflection axis of the periodic sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Center {
    pub kind: CenterKind,
    /// Letter index, or `i` for the gap between letters `i` and `i + 1`.
    pub position: usize,
}

impl Center {
    pub fn to_json(&self) -> Value {
        json!({ "kind": self.kind.name(), "pos": self.position })
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind.name(), self.position)
    }
}

pub fn is_regular_palindrome<T: PartialEq>(word: &[T]) -> bool {
    word.iter().eq(word.iter().rev())
}

/// Some rotation equals the reversal: the reversed word occurs in the
/// doubled word.
pub fn is_cyclic_palindrome(word: &CyclicWord) -> bool {
    let rev: Vec<&BigInt> = word.letters.iter().rev().collect();
    let doubled: Vec<&BigInt> = word.letters.iter().chain(&word.letters).collect();
    kmp_find(&doubled[..doubled.len() - 1], &rev).is_some()
}

/// First occurrence of `needle` in `hay`.
fn kmp_find<T: PartialEq>(hay: &[T], needle: &[T]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    let mut fail = vec![0usize; needle.len()];
    let mut k = 0;
    for i in 1..needle.len() {
        while k > 0 && needle[i] != needle[k] {
            k = fail[k - 1];
        }
        if needle[i] == needle[k] {
            k += 1;
        }
        fail[i] = k;
    }
    k = 0;
    for (i, x) in hay.iter().enumerate() {
        while k > 0 && *x != needle[k] {
            k = fail[k - 1];
        }
        if *x == needle[k] {
            k += 1;
        }
        if k == needle.len() {
            return Some(i + 1 - k);
        }
    }
    None
}

/// All axes fixing the periodic sequence: element axes by index, then gap
/// axes by index.
pub fn centers(word: &CyclicWord) -> Vec<Center> {
    let t = word.len() as i64;
    let mut out = Vec::new();
    for i in 0..t {
        if (1..=t / 2).all(|j| word.at(i + j) == word.at(i - j)) {
            let kind = if word.at(i).is_even() {
                CenterKind::EvenElement
            } else {
                CenterKind::OddElement
            };
            out.push(Center {
                kind,
                position: i as usize,
            });
        }
    }
    for i in 0..t {
        if (0..(t + 1) / 2).all(|j| word.at(i + 1 + j) == word.at(i - j)) {
            out.push(Center {
                kind: CenterKind::Gap,
                position: i as usize,
            });
        }
    }
    out
}

/// Image of an axis of `word` as an axis of the reversed word.
pub fn mirror_center(c: Center, t: usize) -> Center {
    let position = match c.kind {
        CenterKind::Gap => (2 * t - 2 - c.position) % t,
        _ => t - 1 - c.position,
    };
    Center { position, ..c }
}

/// Rotations under which the word reads as a palindrome, a palindrome plus
/// one even letter, or a palindrome plus one odd letter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Shape {
    pub regular_rotation: Option<usize>,
    pub even_extra: Option<usize>,
    pub odd_extra: Option<usize>,
}

pub fn shape_decompose(word: &CyclicWord) -> Shape {
    let mut shape = Shape::default();
    for r in 0..word.len() {
        let w = word.rotated(r);
        if shape.regular_rotation.is_none() && is_regular_palindrome(&w) {
            shape.regular_rotation = Some(r);
        }
        let (body, last) = w.split_at(w.len() - 1);
        if is_regular_palindrome(body) {
            let slot = if last[0].is_even() {
                &mut shape.even_extra
            } else {
                &mut shape.odd_extra
            };
            slot.get_or_insert(r);
        }
    }
    shape
}

/// Lexicographically least rotation.
pub fn canonical_rotation(word: &CyclicWord) -> Vec<BigInt> {
    (0..word.len())
        .map(|r| word.rotated(r))
        .min()
        .expect("word is nonempty")
}

/// `{"word":[…],"centers":[{"kind":"gap","pos":1},…]}`
pub fn centers_json(word: &CyclicWord) -> Value {
    json!({
        "word": json::ints(word.letters()),
        "centers": centers(word).iter().map(Center::to_json).collect::<Vec<_>>(),
    })
}
