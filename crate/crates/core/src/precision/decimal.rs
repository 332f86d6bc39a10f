//! Positional decimal text for [`HpReal`].
//!
//! Output carries `ceil(precision * log10(2)) + 2` significant digits, enough
//! for [`HpReal::parse_decimal`] at the same precision to recover the exact
//! bits. Trailing fractional zeros are trimmed, so `0.5` prints as `0.5`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use super::real::HpReal;
use crate::error::{Error, Result};

/// Significant digits needed to round-trip `precision` bits.
pub fn round_trip_digits(precision: u32) -> usize {
    // 301030 / 10^6 is a slight overestimate of log10(2).
    (u64::from(precision) * 301_030).div_ceil(1_000_000) as usize + 2
}

impl HpReal {
    pub fn to_decimal_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let e = self.exponent();
        // value = digits * 10^-frac
        let (digits, mut frac): (BigUint, i64) = if e >= 0 {
            (self.mantissa() << (e as u64), 0)
        } else {
            let k = (-e) as u64;
            (self.mantissa() * BigUint::from(5u32).pow(k), k as i64)
        };
        let mut text = digits.to_str_radix(10);
        let keep = round_trip_digits(self.precision());
        if text.len() > keep {
            let dropped = text.len() - keep;
            let unit = BigUint::from(10u32).pow(dropped as u32);
            let (mut q, r) = digits.div_rem(&unit);
            let twice = r * 2u32;
            if twice > unit || (twice == unit && q.is_odd()) {
                q += 1u32;
            }
            text = q.to_str_radix(10);
            frac -= dropped as i64;
        }
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        if frac <= 0 {
            out.push_str(&text);
            out.extend(std::iter::repeat_n('0', (-frac) as usize));
            return out;
        }
        let frac = frac as usize;
        let (int_part, frac_part) = if text.len() > frac {
            let split = text.len() - frac;
            (text[..split].to_string(), text[split..].to_string())
        } else {
            ("0".to_string(), "0".repeat(frac - text.len()) + &text)
        };
        out.push_str(&int_part);
        let frac_part = frac_part.trim_end_matches('0');
        if !frac_part.is_empty() {
            out.push('.');
            out.push_str(frac_part);
        }
        out
    }

    /// Parses `[-+]digits[.digits][e[-+]digits]`, correctly rounded.
    pub fn parse_decimal(text: &str, precision: u32) -> Result<HpReal> {
        let bad = || Error::Parse(text.to_string());
        let s = text.trim();
        let (negative, s) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mantissa, exp10) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let all: String = [int_part, frac_part].concat();
        let digits = BigUint::parse_bytes(all.as_bytes(), 10).ok_or_else(bad)?;
        if digits.is_zero() {
            return Ok(HpReal::zero(precision));
        }
        let scale = frac_part.len() as i64 - exp10;
        if scale.unsigned_abs() > 1_000_000 {
            return Err(bad());
        }
        let ten = BigUint::from(10u32);
        Ok(if scale <= 0 {
            let n = digits * ten.pow((-scale) as u32);
            HpReal::from_big_ratio(negative, &n, &BigUint::from(1u32), precision)
        } else {
            HpReal::from_big_ratio(negative, &digits, &ten.pow(scale as u32), precision)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn simple_values() {
        let p = 128;
        assert_eq!(HpReal::from_ratio(1, 2, p).unwrap().to_decimal_string(), "0.5");
        assert_eq!(HpReal::from_i64(-3, p).to_decimal_string(), "-3");
        assert_eq!(HpReal::zero(p).to_decimal_string(), "0");
        assert_eq!(HpReal::from_i64(1 << 40, 32).to_decimal_string(), "1099511627780");
        assert_eq!(HpReal::pow2(-3, p).to_decimal_string(), "0.125");
    }

    #[test]
    fn third_has_round_trip_length() {
        let s = HpReal::from_ratio(1, 3, 64).unwrap().to_decimal_string();
        assert_eq!(s.len(), 2 + round_trip_digits(64));
        assert!(s.starts_with("0.3333333333333333333"));
    }

    #[test]
    fn parse_forms() {
        let p = 64;
        assert_eq!(HpReal::parse_decimal("2.5", p).unwrap(), HpReal::from_ratio(5, 2, p).unwrap());
        assert_eq!(HpReal::parse_decimal("-.25", p).unwrap(), HpReal::from_ratio(-1, 4, p).unwrap());
        assert_eq!(HpReal::parse_decimal("15e-1", p).unwrap(), HpReal::from_ratio(3, 2, p).unwrap());
        assert_eq!(HpReal::parse_decimal("+7.", p).unwrap(), HpReal::from_i64(7, p));
        assert_eq!(HpReal::parse_decimal("-0.000", p).unwrap().to_decimal_string(), "0");
        for bad in ["", ".", "1.2.3", "abc", "1e", "--1", "1,5"] {
            assert!(matches!(HpReal::parse_decimal(bad, p), Err(Error::Parse(_))), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn round_trips_exact_bits(
            mant in any::<u64>(),
            exp in -300i64..300,
            neg in any::<bool>(),
            prec in prop::sample::select(vec![32u32, 53, 64, 128, 200]),
        ) {
            let x = HpReal::from_u64(mant, prec).mul_pow2(exp);
            let x = if neg { -x } else { x };
            let back = HpReal::parse_decimal(&x.to_decimal_string(), prec).unwrap();
            prop_assert!(back.same_bits(&x), "{} -> {:?}", x, back);
        }
    }
}
