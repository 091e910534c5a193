//! Enumeration of reduced surds by discriminant.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};

use crate::arith::is_perfect_square;
use crate::surd::QuadraticSurd;

/// Every reduced surd (`α > 1`, `−1 < ᾱ < 0`) whose primitive minimal
/// polynomial `A·x² + B·x + C` has discriminant `B² − 4AC ≤ dmax`, sorted
/// by discriminant and then by text.
///
/// A reduced root has `αᾱ = C/A < 0` and `α + ᾱ = −B/A > 0`, so with
/// `A > 0` both `B` and `C` are negative and `α` is the larger root.
pub fn reduced_surds(dmax: u64) -> Vec<(u64, QuadraticSurd)> {
    let mut out = Vec::new();
    let bmax = dmax.sqrt();
    for nb in 1..=bmax {
        let room = (dmax - nb * nb) / 4;
        for a in 1..=room {
            for nc in 1..=room / a {
                if a.gcd(&nb).gcd(&nc) != 1 {
                    continue;
                }
                let disc = nb * nb + 4 * a * nc;
                if is_perfect_square(&BigInt::from(disc)) {
                    continue;
                }
                let alpha = QuadraticSurd::polynomial_root(
                    &BigInt::from(a),
                    &-BigInt::from(nb),
                    &-BigInt::from(nc),
                    true,
                )
                .expect("nonsquare discriminant");
                if alpha.is_reduced() {
                    out.push((disc, alpha));
                }
            }
        }
    }
    let mut keyed: Vec<(u64, String, QuadraticSurd)> =
        out.into_iter().map(|(d, x)| (d, x.to_string(), x)).collect();
    keyed.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    keyed.into_iter().map(|(d, _, x)| (d, x)).collect()
}
