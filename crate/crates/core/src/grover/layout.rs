//! Segment schedules for the layered searches.

use super::SegmentRange;

/// MSB-to-LSB segments of width `k` covering all `r` positions; the last may
/// be narrower.
pub fn depth_first_segments(r: u32, k: u32) -> Vec<SegmentRange> {
    assert!(k >= 1, "segment width must be positive");
    (0..r)
        .step_by(k as usize)
        .map(|j| SegmentRange::new(j, (j + k - 1).min(r - 1)))
        .collect()
}

/// Forward pass: positions `0 .. ⌊r/2⌋ − 1` from the MSB side.
pub fn forward_segments(r: u32, k: u32) -> Vec<SegmentRange> {
    assert!(k >= 1, "segment width must be positive");
    let half = r / 2;
    (0..half)
        .step_by(k as usize)
        .map(|j| SegmentRange::new(j, (j + k - 1).min(half - 1)))
        .collect()
}

/// Backward pass: positions `r − 1` down to `⌊r/2⌋`, nearest the LSB first.
pub fn backward_segments(r: u32, k: u32) -> Vec<SegmentRange> {
    assert!(k >= 1, "segment width must be positive");
    let half = r / 2;
    let mut out = Vec::new();
    let mut j = r as i64 - 1;
    while j >= half as i64 {
        let lo = (j - k as i64 + 1).max(half as i64);
        out.push(SegmentRange::new(lo as u32, j as u32));
        j -= k as i64;
    }
    out
}
