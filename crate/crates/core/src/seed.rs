//! Stable seed derivation.

/// Stream tag for final measurement shots.
pub const MEASUREMENT: u64 = 0x6D65_6173;
/// Stream tag for target selection.
pub const TARGET: u64 = 0x7461_7267;

/// SplitMix64 finaliser.
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds `parts` into one seed. Depends only on the values and their order,
/// never on platform or execution order.
pub fn derive(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0x5EED_u64, |acc, &p| splitmix(acc ^ splitmix(p)))
}
