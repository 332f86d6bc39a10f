use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::isqrt::isqrt;
use super::MIN_PRECISION;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// Arbitrary-precision binary floating point number.
///
/// The value is `sign * mantissa * 2^exponent`. Nonzero values keep a
/// normalized mantissa of exactly `precision` bits; every operation rounds its
/// exact result to nearest, ties to even. Zero has no sign.
#[derive(Clone)]
pub struct HpReal {
    sign: Sign,
    mantissa: BigUint,
    exponent: i64,
    precision: u32,
}

/// The four basic operations, as accepted by [`hp_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies one of the four basic operations. Only division can fail.
pub fn hp_arith(a: &HpReal, b: &HpReal, op: ArithOp) -> Result<HpReal> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// Square root, correctly rounded at the precision of `x`.
pub fn hp_sqrt(x: &HpReal) -> Result<HpReal> {
    x.sqrt()
}

fn check(precision: u32) {
    assert!(
        precision >= MIN_PRECISION,
        "precision {precision} below minimum {MIN_PRECISION}"
    );
}

/// True if any of the lowest `k` bits of `m` is set.
fn has_low_bits(m: &BigUint, k: u64) -> bool {
    match m.trailing_zeros() {
        Some(tz) => tz < k,
        None => false,
    }
}

impl HpReal {
    /// Rounds `(-1)^negative * m * 2^e` to `precision` bits. `sticky` marks
    /// nonzero bits below the last bit of `m`; it requires `m` to carry at
    /// least one bit beyond the target precision.
    pub(crate) fn round_from(
        negative: bool,
        mut m: BigUint,
        mut e: i64,
        sticky: bool,
        precision: u32,
    ) -> HpReal {
        check(precision);
        if m.is_zero() {
            debug_assert!(!sticky);
            return HpReal::zero(precision);
        }
        let p = u64::from(precision);
        let len = m.bits();
        if len > p {
            let drop = len - p;
            let half = m.bit(drop - 1);
            let rest = sticky || has_low_bits(&m, drop - 1);
            m >>= drop;
            e += drop as i64;
            if half && (rest || m.bit(0)) {
                m += 1u32;
                if m.bits() > p {
                    m >>= 1u32;
                    e += 1;
                }
            }
        } else {
            debug_assert!(!sticky, "sticky rounding without guard bits");
            if len < p {
                m <<= p - len;
                e -= (p - len) as i64;
            }
        }
        HpReal {
            sign: if negative { Sign::Negative } else { Sign::Positive },
            mantissa: m,
            exponent: e,
            precision,
        }
    }

    /// [`HpReal::round_from`] for results that fit in 128 bits and targets of
    /// at most 64 bits, without intermediate big-integer allocations.
    fn round_small(negative: bool, m: u128, mut e: i64, precision: u32) -> HpReal {
        debug_assert!(precision <= 64 && m != 0);
        let p = precision;
        let len = 128 - m.leading_zeros();
        let q = if len > p {
            let drop = len - p;
            let half = (m >> (drop - 1)) & 1 == 1;
            let rest = drop > 1 && m & ((1u128 << (drop - 1)) - 1) != 0;
            let mut q = m >> drop;
            e += i64::from(drop);
            if half && (rest || q & 1 == 1) {
                q += 1;
                if q >> p != 0 {
                    q >>= 1;
                    e += 1;
                }
            }
            q
        } else {
            e -= i64::from(p - len);
            m << (p - len)
        };
        HpReal {
            sign: if negative { Sign::Negative } else { Sign::Positive },
            mantissa: BigUint::from(q as u64),
            exponent: e,
            precision,
        }
    }

    fn small_mantissa(&self) -> Option<u64> {
        if self.precision > 64 {
            return None;
        }
        let mut digits = self.mantissa.iter_u64_digits();
        match (digits.next(), digits.next()) {
            (Some(d), None) => Some(d),
            _ => None,
        }
    }

    pub fn zero(precision: u32) -> HpReal {
        check(precision);
        HpReal {
            sign: Sign::Zero,
            mantissa: BigUint::zero(),
            exponent: 0,
            precision,
        }
    }

    pub fn one(precision: u32) -> HpReal {
        HpReal::from_i64(1, precision)
    }

    pub fn from_i64(v: i64, precision: u32) -> HpReal {
        HpReal::round_from(v < 0, BigUint::from(v.unsigned_abs()), 0, false, precision)
    }

    pub fn from_u64(v: u64, precision: u32) -> HpReal {
        HpReal::round_from(false, BigUint::from(v), 0, false, precision)
    }

    /// `2^k` exactly.
    pub fn pow2(k: i64, precision: u32) -> HpReal {
        HpReal::round_from(false, BigUint::one(), k, false, precision)
    }

    /// `num / den`, correctly rounded.
    pub fn from_ratio(num: i64, den: i64, precision: u32) -> Result<HpReal> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(HpReal::from_big_ratio(
            (num < 0) != (den < 0),
            &BigUint::from(num.unsigned_abs()),
            &BigUint::from(den.unsigned_abs()),
            precision,
        ))
    }

    /// `±num / den` with `den > 0`, correctly rounded.
    pub(crate) fn from_big_ratio(
        negative: bool,
        num: &BigUint,
        den: &BigUint,
        precision: u32,
    ) -> HpReal {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return HpReal::zero(precision);
        }
        let p = u64::from(precision);
        let shift = (p + 2 + den.bits()).saturating_sub(num.bits());
        let (q, r) = (num << shift).div_rem(den);
        HpReal::round_from(negative, q, -(shift as i64), !r.is_zero(), precision)
    }

    /// Exact conversion from a finite double, then rounded to `precision`.
    pub fn from_f64(x: f64, precision: u32) -> HpReal {
        assert!(x.is_finite(), "non-finite input");
        if x == 0.0 {
            return HpReal::zero(precision);
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        HpReal::round_from(negative, BigUint::from(m), e, false, precision)
    }

    /// Nearest double (truncating beyond 64 mantissa bits). Diagnostics only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = self.mantissa.bits();
        let (m, e) = if len > 64 {
            (&self.mantissa >> (len - 64), self.exponent + (len - 64) as i64)
        } else {
            (self.mantissa.clone(), self.exponent)
        };
        let e = e.clamp(-4000, 4000) as i32;
        let mag = m.to_u64().unwrap_or(u64::MAX) as f64 * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        match self.sign {
            Sign::Negative => -mag,
            _ => mag,
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Negative
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive
    }

    /// Smallest `t` with `|self| < 2^t`; `None` for zero.
    pub fn magnitude_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exponent + self.mantissa.bits() as i64)
    }

    /// Bit-for-bit identity, including precision. `==` compares values only.
    pub fn same_bits(&self, other: &HpReal) -> bool {
        self.sign == other.sign
            && self.precision == other.precision
            && self.exponent == other.exponent
            && self.mantissa == other.mantissa
    }

    pub fn with_precision(&self, precision: u32) -> HpReal {
        if self.is_zero() {
            return HpReal::zero(precision);
        }
        HpReal::round_from(
            self.is_negative(),
            self.mantissa.clone(),
            self.exponent,
            false,
            precision,
        )
    }

    /// `self * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> HpReal {
        let mut out = self.clone();
        if !out.is_zero() {
            out.exponent += k;
        }
        out
    }

    pub fn abs(&self) -> HpReal {
        let mut out = self.clone();
        if out.sign == Sign::Negative {
            out.sign = Sign::Positive;
        }
        out
    }

    /// `self^k` by binary exponentiation.
    pub fn pow_u64(&self, mut k: u64) -> HpReal {
        let mut acc = HpReal::one(self.precision());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn square(&self) -> HpReal {
        self * self
    }

    /// `|self - other| <= tol`.
    pub fn approx_eq(&self, other: &HpReal, tol: &HpReal) -> bool {
        (self - other).abs() <= *tol
    }

    fn add_signed(a: &HpReal, b: &HpReal, negate_b: bool) -> HpReal {
        let precision = a.precision.max(b.precision);
        let b_sign = if negate_b { b.sign.flip() } else { b.sign };
        if b.is_zero() {
            return a.with_precision(precision);
        }
        if a.is_zero() {
            let mut out = b.with_precision(precision);
            out.sign = b_sign;
            return out;
        }
        let a_top = a.exponent + a.mantissa.bits() as i64;
        let b_top = b.exponent + b.mantissa.bits() as i64;
        let ((big, big_sign), (small, small_sign)) = if a_top >= b_top {
            ((a, a.sign), (b, b_sign))
        } else {
            ((b, b_sign), (a, a.sign))
        };
        let same = big_sign == small_sign;
        let guard = i64::from(precision) + 3;
        let small_top = small.exponent + small.mantissa.bits() as i64;
        if small_top <= big.exponent - guard {
            // The small operand sits strictly below one unit of the widened
            // big mantissa, so only its sign matters for rounding.
            let widened = &big.mantissa << (guard as u64 + 1);
            let m = if same { widened + 1u32 } else { widened - 1u32 };
            return HpReal::round_from(
                big_sign == Sign::Negative,
                m,
                big.exponent - guard - 1,
                false,
                precision,
            );
        }
        if let (Some(mb), Some(ms)) = (big.small_mantissa(), small.small_mantissa()) {
            let (eb, es) = (big.exponent, small.exponent);
            if precision <= 64 && (eb - es).abs() < 64 {
                let e = eb.min(es);
                let mb = u128::from(mb) << (eb - e);
                let ms = u128::from(ms) << (es - e);
                let (neg, m) = if same {
                    (big_sign == Sign::Negative, mb + ms)
                } else if mb >= ms {
                    (big_sign == Sign::Negative, mb - ms)
                } else {
                    (small_sign == Sign::Negative, ms - mb)
                };
                if m == 0 {
                    return HpReal::zero(precision);
                }
                return HpReal::round_small(neg, m, e, precision);
            }
        }
        let e = big.exponent.min(small.exponent);
        let mb = &big.mantissa << ((big.exponent - e) as u64);
        let ms = &small.mantissa << ((small.exponent - e) as u64);
        if same {
            return HpReal::round_from(big_sign == Sign::Negative, mb + ms, e, false, precision);
        }
        match mb.cmp(&ms) {
            Ordering::Equal => HpReal::zero(precision),
            Ordering::Greater => {
                HpReal::round_from(big_sign == Sign::Negative, mb - ms, e, false, precision)
            }
            Ordering::Less => {
                HpReal::round_from(small_sign == Sign::Negative, ms - mb, e, false, precision)
            }
        }
    }

    fn mul_impl(a: &HpReal, b: &HpReal) -> HpReal {
        let precision = a.precision.max(b.precision);
        let sign = a.sign.times(b.sign);
        if sign == Sign::Zero {
            return HpReal::zero(precision);
        }
        if let (Some(ma), Some(mb)) = (a.small_mantissa(), b.small_mantissa()) {
            return HpReal::round_small(
                sign == Sign::Negative,
                u128::from(ma) * u128::from(mb),
                a.exponent + b.exponent,
                precision,
            );
        }
        HpReal::round_from(
            sign == Sign::Negative,
            &a.mantissa * &b.mantissa,
            a.exponent + b.exponent,
            false,
            precision,
        )
    }

    pub fn checked_div(&self, rhs: &HpReal) -> Result<HpReal> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let precision = self.precision.max(rhs.precision);
        if self.is_zero() {
            return Ok(HpReal::zero(precision));
        }
        let q = HpReal::from_big_ratio(
            self.sign != rhs.sign,
            &self.mantissa,
            &rhs.mantissa,
            precision,
        );
        Ok(q.mul_pow2(self.exponent - rhs.exponent))
    }

    /// Correctly rounded square root via integer Newton iteration.
    pub fn sqrt(&self) -> Result<HpReal> {
        match self.sign {
            Sign::Negative => return Err(Error::NegativeSqrt),
            Sign::Zero => return Ok(self.clone()),
            Sign::Positive => {}
        }
        let p = u64::from(self.precision);
        let mut shift = (2 * p + 4).saturating_sub(self.mantissa.bits());
        if (self.exponent - shift as i64).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled = &self.mantissa << shift;
        let root = isqrt(&scaled);
        let sticky = &root * &root != scaled;
        Ok(HpReal::round_from(
            false,
            root,
            (self.exponent - shift as i64) / 2,
            sticky,
            self.precision,
        ))
    }

    fn cmp_abs(&self, other: &HpReal) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let ta = self.exponent + self.mantissa.bits() as i64;
        let tb = other.exponent + other.mantissa.bits() as i64;
        if ta != tb {
            return ta.cmp(&tb);
        }
        let e = self.exponent.min(other.exponent);
        let ma = &self.mantissa << ((self.exponent - e) as u64);
        let mb = &other.mantissa << ((other.exponent - e) as u64);
        ma.cmp(&mb)
    }
}

impl PartialEq for HpReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HpReal {}

impl PartialOrd for HpReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HpReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |s: Sign| match s {
            Sign::Negative => 0,
            Sign::Zero => 1,
            Sign::Positive => 2,
        };
        match rank(self.sign).cmp(&rank(other.sign)) {
            Ordering::Equal => match self.sign {
                Sign::Zero => Ordering::Equal,
                Sign::Positive => self.cmp_abs(other),
                Sign::Negative => other.cmp_abs(self),
            },
            ord => ord,
        }
    }
}

impl fmt::Debug for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HpReal({}, p={})", self.to_decimal_string(), self.precision)
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl Neg for &HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        let mut out = self.clone();
        out.sign = out.sign.flip();
        out
    }
}

impl Neg for HpReal {
    type Output = HpReal;
    fn neg(mut self) -> HpReal {
        self.sign = self.sign.flip();
        self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&HpReal> for &HpReal {
            type Output = HpReal;
            fn $method(self, rhs: &HpReal) -> HpReal {
                $body(self, rhs)
            }
        }
        impl $trait<HpReal> for HpReal {
            type Output = HpReal;
            fn $method(self, rhs: HpReal) -> HpReal {
                $body(&self, &rhs)
            }
        }
        impl $trait<&HpReal> for HpReal {
            type Output = HpReal;
            fn $method(self, rhs: &HpReal) -> HpReal {
                $body(&self, rhs)
            }
        }
        impl $trait<HpReal> for &HpReal {
            type Output = HpReal;
            fn $method(self, rhs: HpReal) -> HpReal {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| HpReal::add_signed(a, b, false));
forward_binop!(Sub, sub, |a, b| HpReal::add_signed(a, b, true));
forward_binop!(Mul, mul, HpReal::mul_impl);
// Panics on a zero divisor; use `checked_div` where that can happen.
forward_binop!(Div, div, |a: &HpReal, b: &HpReal| a
    .checked_div(b)
    .expect("division by zero"));

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn r(v: i64) -> HpReal {
        HpReal::from_i64(v, 64)
    }

    #[test]
    fn basic_ops() {
        assert_eq!(hp_arith(&r(1), &r(1), ArithOp::Add).unwrap(), r(2));
        assert_eq!(hp_arith(&r(7), &r(0), ArithOp::Mul).unwrap(), r(0));
        assert_eq!(hp_arith(&r(-7), &r(0), ArithOp::Mul).unwrap().sign(), Sign::Zero);
        assert_eq!(r(3) - r(3), r(0));
        assert_eq!((r(3) - r(3)).sign(), Sign::Zero);
        assert_eq!(r(-6) / r(4), HpReal::from_ratio(-3, 2, 64).unwrap());
        assert_eq!(
            hp_arith(&r(1), &r(0), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn one_third_at_64_bits() {
        let third = hp_arith(&r(1), &r(3), ArithOp::Div).unwrap();
        // |third - 1/3| * 3 * 2^64 == |3 * m * 2^(e+64) - 2^64|
        let m = third.mantissa().clone();
        let e = third.exponent();
        assert!(e < 0);
        let scaled = BigUint::from(3u32) * m;
        let target = BigUint::one() << (-e) as u64;
        let diff = if scaled > target {
            &scaled - &target
        } else {
            &target - &scaled
        };
        // relative error = diff / target < 2^-63
        assert!(diff * (BigUint::one() << 63u32) < target);
    }

    #[test]
    fn ties_round_to_even() {
        // 2^33 + 1 at 32 bits: exactly halfway, round down to even.
        let x = HpReal::from_u64((1 << 33) + 1, 32);
        assert_eq!(x, HpReal::from_u64(1 << 33, 32));
        // 2^33 + 3: halfway, round up to even.
        let y = HpReal::from_u64((1 << 33) + 3, 32);
        assert_eq!(y, HpReal::from_u64((1 << 33) + 4, 32));
    }

    #[test]
    fn tiny_addend_rounds_by_sign() {
        let one = HpReal::one(32);
        let tiny = HpReal::pow2(-200, 32);
        assert_eq!(&one + &tiny, one);
        assert_eq!(&one - &tiny, one);
        assert!(&one - &tiny < HpReal::from_f64(1.0 + 1e-12, 64));
        // An exact tie rounds to even; a sticky bit past the tie rounds up.
        let tie = BigUint::from((1u64 << 32) + 1);
        assert_eq!(HpReal::round_from(false, tie.clone(), -32, false, 32), one);
        assert!(HpReal::round_from(false, tie, -32, true, 32) > one);
    }

    #[test]
    fn sqrt_exact_and_errors() {
        assert_eq!(r(0).sqrt().unwrap(), r(0));
        assert!(r(4).sqrt().unwrap().same_bits(&r(2)));
        assert_eq!(HpReal::from_ratio(9, 16, 64).unwrap().sqrt().unwrap(), HpReal::from_ratio(3, 4, 64).unwrap());
        assert_eq!(r(-1).sqrt(), Err(Error::NegativeSqrt));
    }

    #[test]
    fn sqrt_two_against_integer_sqrt() {
        let p = 128u32;
        let s = HpReal::from_i64(2, p).sqrt().unwrap();
        // Reference: floor(sqrt(2 * 2^256)) from num-bigint's own routine.
        let expected = (BigUint::from(2u32) << 256u32).sqrt();
        let expected = HpReal::round_from(false, expected, -128, true, p);
        assert!(s.same_bits(&expected));
        let err = (&s * &s - HpReal::from_i64(2, p)).abs();
        assert!(err < HpReal::pow2(-126, p));
    }

    #[test]
    fn ordering_across_precisions() {
        let a = HpReal::from_ratio(1, 3, 64).unwrap();
        let b = HpReal::from_ratio(1, 3, 128).unwrap();
        assert!(a > b);
        assert!(-&a < -&b);
        assert!(r(-1) < r(0));
        assert!(r(0) < HpReal::pow2(-1000, 32));
        assert_eq!(a.with_precision(128), a);
    }

    #[test]
    fn f64_round_trip() {
        for x in [0.1, -2.5, 1e-300, 123456.789, 5e-324] {
            assert_eq!(HpReal::from_f64(x, 64).to_f64(), x);
        }
    }

    mod small_path {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn matches_general_rounding(m in 1u128.., e in -200i64..200, p in 32u32..=64, neg in any::<bool>()) {
                let fast = HpReal::round_small(neg, m, e, p);
                let slow = HpReal::round_from(neg, BigUint::from(m), e, false, p);
                prop_assert!(fast.same_bits(&slow));
            }

            #[test]
            fn ops_are_correctly_rounded(a in any::<i64>(), b in any::<i64>(), ea in -70i64..70, eb in -70i64..70) {
                let x = HpReal::from_i64(a, 64).mul_pow2(ea);
                let y = HpReal::from_i64(b, 64).mul_pow2(eb);
                // At 400 bits these are exact; one rounding to 64 must agree.
                let wide = |v: &HpReal| v.with_precision(400);
                prop_assert!((&x + &y).same_bits(&(wide(&x) + wide(&y)).with_precision(64)));
                prop_assert!((&x - &y).same_bits(&(wide(&x) - wide(&y)).with_precision(64)));
                prop_assert!((&x * &y).same_bits(&(wide(&x) * wide(&y)).with_precision(64)));
            }
        }
    }
}
