use super::{GroverError, Result};
use std::f64::consts::FRAC_PI_4;

/// Rotation angle `ω = arcsin(1/√M)` of one Grover iterate over `M` states
/// with a single marked element.
pub fn grover_angle(search_dim: u64) -> Result<f64> {
    if search_dim < 2 {
        return Err(GroverError::DimensionTooSmall(search_dim));
    }
    Ok((1.0 / (search_dim as f64).sqrt()).asin())
}

/// `π/(4ω) − 1/2` before rounding.
pub fn optimal_iterations_real(search_dim: u64) -> Result<f64> {
    Ok(FRAC_PI_4 / grover_angle(search_dim)? - 0.5)
}

/// Iteration count maximising the marked-state probability:
/// `round(π/(4ω) − 1/2)`, at least 1.
pub fn optimal_iterations(search_dim: u64) -> Result<u64> {
    Ok(optimal_iterations_real(search_dim)?.round().max(1.0) as u64)
}

/// `sin²((2t + 1)ω)`, the marked-state probability after `t` iterates.
pub fn success_probability(search_dim: u64, iterations: u64) -> Result<f64> {
    let w = grover_angle(search_dim)?;
    Ok(((2 * iterations + 1) as f64 * w).sin().powi(2))
}
