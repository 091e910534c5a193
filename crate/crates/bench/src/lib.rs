//! Shared inputs for the benchmarks.

use surd_sails::QuadraticSurd;

/// `√n` for the non-square `n` in `2..=limit`.
pub fn square_roots(limit: i64) -> Vec<QuadraticSurd> {
    (2..=limit)
        .filter_map(|n| QuadraticSurd::new(0, 1, 1, n).ok())
        .collect()
}
