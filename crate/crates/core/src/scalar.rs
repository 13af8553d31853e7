use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{Float, FromPrimitive, Signed, ToPrimitive};
use rustfft::FftNum;

/// Floating-point scalar used for envelope and approximate correlation work.
pub trait Real: Float + FftNum + FromPrimitive + ToPrimitive + Debug + Send + Sync {}

impl<T> Real for T where T: Float + FftNum + FromPrimitive + ToPrimitive + Debug + Send + Sync {}

/// Integer coordinate type of an exact cyclotomic integer.
pub trait ExactInt:
    Clone + Debug + Display + PartialEq + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
}

impl ExactInt for i64 {}
impl ExactInt for i128 {}
impl ExactInt for BigInt {}

/// Formats `x` with `digits` significant digits in plain decimal notation.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mut magnitude = x.abs().log10().floor() as i64;
    let rounded = format!("{:.*}", (digits as i64 - 1 - magnitude).max(0) as usize, x);
    // Rounding can carry into a new leading digit, e.g. 9.9999999996.
    if rounded.trim_start_matches('-').parse::<f64>().unwrap_or(0.0) >= 10f64.powi(magnitude as i32 + 1) {
        magnitude += 1;
    }
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}
