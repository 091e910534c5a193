//! Lattice geometry of quadratic irrationalities: integer lengths and
//! angles, Klein sails, sprouts, form automorphisms and SVG output.

mod form;
mod lattice;
mod sail;
mod svg;

pub use form::{fixed_line_surds, lagrange_automorphism, QuadraticForm};
pub use lattice::{integer_angle, integer_length, sprout, LatticePoint, Segment};
pub use sail::{edge_sprout_bijection, korkina_construct, sail_from_surd, Sail, Side, SproutEdge};
pub use svg::{emit_svg, Viewport};
