//! Quasi-random rational sample points (Halton sequences). The points are
//! exact rationals, so sign predicates and zero tests on polynomial data
//! can be decided exactly at each sample.

use crate::rat::{rat_int, Rat};
use num_bigint::BigInt;
use num_traits::Zero;

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// The index-th element of the base-b Halton sequence, in [0, 1).
fn halton(mut index: u64, base: u64) -> Rat {
    let mut num = BigInt::zero();
    let mut den = BigInt::from(1u64);
    while index > 0 {
        num = num * BigInt::from(base) + BigInt::from(index % base);
        den *= BigInt::from(base);
        index /= base;
    }
    Rat::new(num, den)
}

/// Quasi-random point in the box `center_j +- radius`, with coordinates in
/// variable order. Index 0 is skipped upstream (it maps to the center).
pub(crate) fn halton_point(index: u64, dims: usize, radius: &Rat, center: &[Rat]) -> Vec<Rat> {
    (0..dims)
        .map(|d| {
            let h = halton(index + 1, PRIMES[d % PRIMES.len()]);
            let offset = (h * rat_int(2) - rat_int(1)) * radius.clone();
            center.get(d).cloned().unwrap_or_else(Rat::zero) + offset
        })
        .collect()
}
