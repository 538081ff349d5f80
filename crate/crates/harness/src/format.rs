//! Text rendering shared by the CSV writers.

/// Significant digits used for every float in CSV output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats like C's `%.12g`: fixed notation for moderate exponents, scientific
/// otherwise, with trailing zeros removed.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let precision = SIGNIFICANT_DIGITS - 1;
    // Round first so the exponent reflects the rounded value (9.99…9 → 10).
    let sci = format!("{:.*e}", precision, x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if exponent < -4 || exponent >= SIGNIFICANT_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exponent.abs())
    } else {
        let decimals = (precision as i32 - exponent).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn format_opt_float(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

pub fn format_opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333333"),
            (2.0 / 3.0, "0.666666666667"),
            (123456.789, "123456.789"),
            (1e-5, "1e-05"),
            (1.5e-6, "1.5e-06"),
            (0.0001234, "0.0001234"),
            (999999999999.9, "1e+12"),
            (123456789012.0, "123456789012"),
            (f64::NEG_INFINITY, "-inf"),
            (std::f64::consts::PI, "3.14159265359"),
        ];
        for (x, expected) in cases {
            assert_eq!(format_float(x), expected, "{x}");
        }
    }
}
