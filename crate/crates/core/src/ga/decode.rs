use crate::error::{GaError, Result};
use crate::scalar::Scalar;

/// Maps an MSB-first bit field linearly onto `[lo, hi]`.
///
/// The integer value `k` of the field maps to `lo + k (hi - lo) / (2^len - 1)`,
/// so the all-zeros field decodes to `lo` and the all-ones field to `hi`.
pub fn decode_variable<T: Scalar>(bits: &[bool], lo: T, hi: T) -> Result<T> {
    decode_bits(bits, lo, hi)
}

pub(crate) fn decode_bits<T: Scalar>(bits: &[bool], lo: T, hi: T) -> Result<T> {
    if bits.is_empty() {
        return Err(GaError::InvalidEncoding("zero-length bit field".into()));
    }
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(GaError::InvalidBounds {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    if bits.iter().all(|&b| b) {
        return Ok(hi);
    }
    let two = T::lit(2.0);
    let value = bits.iter().fold(T::zero(), |acc, &b| {
        acc * two + if b { T::one() } else { T::zero() }
    });
    let levels = two.powi(bits.len() as i32) - T::one();
    let x = lo + value * (hi - lo) / levels;
    Ok(x.max(lo).min(hi))
}
