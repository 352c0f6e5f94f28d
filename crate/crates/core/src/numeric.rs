//! Helpers around [`BigRational`]: exact parsing from user input and
//! fixed-significance decimal rendering.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn pow(base: &BigRational, exp: usize) -> BigRational {
    num_traits::pow(base.clone(), exp)
}

/// Parses `"a/b"`, an integer, or a plain decimal such as `"-0.125"`.
/// Decimals are converted by place value, so `"0.1"` is exactly `1/10`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    let (neg, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let value = BigRational::new(num, den);
    Ok(if neg { -value } else { value })
}

/// Renders `x` with `sig` significant digits (round half away from zero).
/// Plain notation is used for decimal exponents in `[-6, 12)`, scientific otherwise.
pub fn to_decimal(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let neg = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();

    // exponent e with 10^e <= |x| < 10^(e+1)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ten = BigInt::from(10);
    let ge_pow = |e: i64| -> bool {
        if e >= 0 {
            num >= &den * num_traits::pow(ten.clone(), e as usize)
        } else {
            &num * num_traits::pow(ten.clone(), (-e) as usize) >= den
        }
    };
    while !ge_pow(e) {
        e -= 1;
    }
    while ge_pow(e + 1) {
        e += 1;
    }

    // scaled = round(|x| * 10^(sig-1-e))
    let shift = sig as i64 - 1 - e;
    let (n2, d2) = if shift >= 0 {
        (&num * num_traits::pow(ten.clone(), shift as usize), den.clone())
    } else {
        (num.clone(), &den * num_traits::pow(ten.clone(), (-shift) as usize))
    };
    let (mut q, r) = n2.div_rem(&d2);
    if &r * 2 >= d2 {
        q += 1;
    }
    let mut digits = q.to_string();
    if digits.len() > sig {
        // rounding carried into a new leading digit
        digits.truncate(sig);
        e += 1;
    }

    let body = if (-6..12).contains(&e) {
        plain(&digits, e)
    } else {
        let mut m = digits[..1].to_string();
        let rest = digits[1..].trim_end_matches('0');
        if !rest.is_empty() {
            m.push('.');
            m.push_str(rest);
        }
        format!("{m}e{e}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn plain(digits: &str, e: i64) -> String {
    let int_len = e + 1;
    let s = if int_len <= 0 {
        format!("0.{}{}", "0".repeat((-int_len) as usize), digits)
    } else if int_len as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(int_len as usize - digits.len()))
    } else {
        let (a, b) = digits.split_at(int_len as usize);
        format!("{a}.{b}")
    };
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

pub fn sign_of(x: &BigRational) -> Sign {
    x.numer().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(4, 7), 12), "0.571428571429");
        assert_eq!(to_decimal(&rat(-2, 3), 12), "-0.666666666667");
        assert_eq!(to_decimal(&int(272844), 12), "272844");
        assert_eq!(to_decimal(&rat(1, 2), 12), "0.5");
        assert_eq!(to_decimal(&int(0), 12), "0");
        assert_eq!(to_decimal(&rat(999999, 1000000), 3), "1");
        assert_eq!(to_decimal(&rat(1, 1_000_000_000), 12), "1e-9");
        assert_eq!(to_decimal(&pow(&int(10), 15), 12), "1e15");
        assert_eq!(to_decimal(&rat(123456, 100_000_000), 4), "0.001235");
    }
}
