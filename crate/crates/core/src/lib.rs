//! Exact continued fractions of real quadratic irrationalities, their
//! Klein sails, and the symmetry of their periods.
//!
//! The crate is organised bottom-up:
//!
//! * [`surd`], [`matrix`]: exact arithmetic in `Q(√d)` and the `GL₂(Z)`
//!   Möbius action;
//! * [`cfrac`]: periodic expansions, convergents, equivalence of tails;
//! * [`geometry`]: integer lengths and angles, sails, sprouts, quadratic
//!   form automorphisms, SVG output;
//! * [`symmetry`]: palindromic cyclic words and their reflection axes;
//! * [`criterion`]: classification of a surd's period symmetry together
//!   with explicit algebraic witnesses;
//! * [`survey`]: enumeration of reduced surds for batch runs.

pub mod arith;
pub mod cfrac;
pub mod criterion;
pub mod error;
pub mod geometry;
pub mod json;
pub mod matrix;
pub mod surd;
pub mod survey;
pub mod symmetry;

pub use arith::Rational;
pub use cfrac::{Convergent, PeriodicCF};
pub use criterion::{Classification, Flag, Witness};
pub use error::{Error, Result};
pub use geometry::{LatticePoint, QuadraticForm, Sail};
pub use matrix::UnimodularMatrix;
pub use surd::{FieldElement, Op, QuadraticSurd};
pub use symmetry::{Center, CenterKind, CyclicWord};
