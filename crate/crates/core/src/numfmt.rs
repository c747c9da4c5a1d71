//! Locale-independent number formatting for result tables.

/// Significant digits written for every real-valued output field.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with 12 significant digits, trailing zeros trimmed.
///
/// Values with a decimal exponent in `-5..15` are written positionally
/// (`0.25`, `-0.707106781187`, `1200`); others use `1.5e-20` notation.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".to_owned()
        } else if x > 0.0 {
            "inf".to_owned()
        } else {
            "-inf".to_owned()
        };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_owned()))
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_owned();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positional() {
        assert_eq!(format_sig(0.25), "0.25");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(
            format_sig(-std::f64::consts::FRAC_1_SQRT_2),
            "-0.707106781187"
        );
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(1200.0), "1200");
        assert_eq!(format_sig(123456.7890123456), "123456.789012");
        assert_eq!(format_sig(0.1 + 0.2), "0.3");
        assert_eq!(format_sig(9.9999999999996), "10");
    }

    #[test]
    fn scientific() {
        assert_eq!(format_sig(1.5e-20), "1.5e-20");
        assert_eq!(format_sig(-2.0e16), "-2e16");
        assert_eq!(format_sig(1.23456789012345e-7), "1.23456789012e-7");
    }

    #[test]
    fn zero_and_tiny_negative() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(-1e-300), "-1e-300");
    }

    #[test]
    fn round_trips_to_twelve_digits() {
        for &x in &[0.123456789012345, 98765.4321, -3.3e-3, 7.0e-6] {
            let back: f64 = format_sig(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-11, "{x}");
        }
    }
}
