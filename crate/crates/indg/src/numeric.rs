//! Tolerant floating-point comparisons.
//!
//! Benefit tables are low-precision decimals, so sums like `0.8 + 6.0 * 0.7`
//! land a few ulps away from their mathematical value. All tie detection in
//! searches, radius inequalities, and cost classification goes through these
//! helpers with a single relative epsilon.

/// Relative tolerance for tie detection.
pub const REL_EPS: f64 = 1e-9;

fn scale(a: f64, b: f64) -> f64 {
    1.0_f64.max(a.abs()).max(b.abs())
}

/// `a <= b` up to relative tolerance.
pub fn approx_le(a: f64, b: f64) -> bool {
    a <= b + REL_EPS * scale(a, b)
}

/// `a >= b` up to relative tolerance.
pub fn approx_ge(a: f64, b: f64) -> bool {
    a >= b - REL_EPS * scale(a, b)
}

/// `a > b` by more than the tolerance, i.e. a strict improvement rather
/// than a floating-point tie.
pub fn strictly_greater(a: f64, b: f64) -> bool {
    a - b > REL_EPS * scale(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_sums_compare_as_ties() {
        // 0.9 - 1.0 + 6*0.8 vs 0.8 + 6*0.7-style sums differ by a few ulps.
        let lhs = 1.2 - 1.0 + 6.0 * 0.8; // 5.000000000000001
        let rhs = 0.8 + 6.0 * 4.2 / 6.0; // 4.999999999999999...
        assert!(approx_le(lhs, rhs));
        assert!(approx_ge(rhs, lhs));
        assert!(!strictly_greater(lhs, rhs));
    }

    #[test]
    fn strict_improvements_are_detected() {
        assert!(strictly_greater(1.1, 1.0));
        assert!(!strictly_greater(1.0, 1.0));
        assert!(strictly_greater(2e9 + 10.0, 2e9));
    }
}
