use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reads `"3"`, `"-0.25"`, `"1.5e-3"` or `"7/3"` as an exact rational.
/// Decimal input is never rounded through binary.
pub fn parse_decimal_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal_rational(n)?;
        let d = parse_decimal_rational(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut v = BigRational::from(digits.parse::<BigInt>().ok()?);
    let shift = exp - frac_part.len() as i32;
    let ten = BigRational::from(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        v *= scale;
    } else {
        v /= scale;
    }
    Some(if neg { -v } else { v })
}

/// `p/q` rendered without redundant parts: `3`, `-1/2`.
pub fn rational_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::ratio;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal_rational("0.3"), Some(ratio(3, 10)));
        assert_eq!(parse_decimal_rational("-1.25e-3"), Some(ratio(-1, 800)));
        assert_eq!(parse_decimal_rational("7/3"), Some(ratio(7, 3)));
        assert_eq!(parse_decimal_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_decimal_rational("2e2"), Some(ratio(200, 1)));
    }

    #[test]
    fn junk_rejected() {
        for s in ["", "abc", "1/0", "1.2.3", "--1", "e5"] {
            assert_eq!(parse_decimal_rational(s), None, "{s}");
        }
    }
}
