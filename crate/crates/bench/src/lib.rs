//! Shared fixtures for the benchmarks.

use ecsym_core::RationalEC;
use num_bigint::BigInt;

/// A handful of curves of increasing height.
pub fn sample_curves() -> Vec<RationalEC> {
    let raw: [[&str; 5]; 4] = [
        ["0", "-1", "1", "-10", "-20"],
        ["1", "0", "1", "4", "-6"],
        ["0", "0", "1", "-7", "6"],
        ["0", "-1", "1", "-74988699621831", "238006866237979285299"],
    ];
    raw.iter()
        .map(|a| RationalEC::new(a.map(|s| s.parse::<BigInt>().unwrap())).unwrap())
        .collect()
}
