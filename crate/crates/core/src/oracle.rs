//! Trigonometric ground truth for verification: `e^(2πik/n)` from power
//! series. Nothing on the construction path depends on this module.

use crate::error::{Error, Result};
use crate::precision::{check_precision, HpComplex, HpReal};
use crate::zeta::construct_zeta;

/// Extra working bits carried through the series.
const GUARD_BITS: u32 = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRoot {
    pub n: usize,
    pub k: i64,
    pub value: HpComplex,
}

/// `atan(1/m)` for an integer `m >= 2`.
fn atan_inv(m: i64, wp: u32) -> Result<HpReal> {
    let m2 = HpReal::from_i64(m * m, wp);
    let stop = HpReal::pow2(-i64::from(wp) - 8, wp);
    let mut power = HpReal::from_ratio(1, m, wp)?;
    let mut sum = HpReal::zero(wp);
    let mut j = 0i64;
    while power > stop {
        let term = power.checked_div(&HpReal::from_i64(2 * j + 1, wp))?;
        sum = if j % 2 == 0 { &sum + &term } else { &sum - &term };
        power = power.checked_div(&m2)?;
        j += 1;
    }
    Ok(sum)
}

/// π by Machin's formula `16·atan(1/5) - 4·atan(1/239)`.
pub fn pi(precision: u32) -> Result<HpReal> {
    check_precision(precision)?;
    let wp = precision + GUARD_BITS;
    let pi = atan_inv(5, wp)?.mul_pow2(4) - atan_inv(239, wp)?.mul_pow2(2);
    Ok(pi.with_precision(precision))
}

/// `(cos t, sin t)` for `|t| <= π/4` by Taylor series.
fn cos_sin_small(t: &HpReal, wp: u32) -> Result<(HpReal, HpReal)> {
    let t2 = t.square();
    let stop = HpReal::pow2(-i64::from(wp) - 8, wp);
    let mut cos = HpReal::zero(wp);
    let mut sin = HpReal::zero(wp);
    // term = t^m / m!
    let mut term = HpReal::one(wp);
    let mut m = 0i64;
    loop {
        let c_term = if m % 4 == 0 { term.clone() } else { -&term };
        cos = &cos + &c_term;
        let s_term = (&term * t).checked_div(&HpReal::from_i64(m + 1, wp))?;
        sin = if m % 4 == 0 { &sin + &s_term } else { &sin - &s_term };
        if s_term.abs() < stop {
            break;
        }
        term = (&term * &t2).checked_div(&HpReal::from_i64((m + 1) * (m + 2), wp))?;
        m += 2;
    }
    Ok((cos, sin))
}

/// `e^(2πik/n)`. The angle is reduced exactly to the nearest quarter turn, so
/// the series only ever sees `|t| <= π/4`.
pub fn trig_root(n: usize, k: i64, precision: u32) -> Result<OracleRoot> {
    check_precision(precision)?;
    if n == 0 {
        return Err(Error::InvalidN(0));
    }
    let wp = precision + GUARD_BITS;
    let n_i = n as i64;
    let t = k.rem_euclid(n_i);
    // 2πt/n = q·(π/2) + 2π·rest/(4n)
    let q = (8 * t + n_i).div_euclid(2 * n_i);
    let rest = 4 * t - q * n_i;
    let angle = (&pi(wp)?.mul_pow2(1) * &HpReal::from_i64(rest, wp))
        .checked_div(&HpReal::from_i64(4 * n_i, wp))?;
    let (c, s) = cos_sin_small(&angle, wp)?;
    let (re, im) = match q % 4 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    };
    Ok(OracleRoot {
        n,
        k,
        value: HpComplex::new(re.with_precision(precision), im.with_precision(precision)),
    })
}

/// Agreement bound `2^-(precision/2 - 4)` between ζ(n) and `e^(2πi/n)`.
pub fn agreement_tolerance(precision: u32) -> HpReal {
    HpReal::pow2(-(i64::from(precision / 2) - 4), precision)
}

/// `|ζ(n) - e^(2πi/n)|`.
pub fn zeta_deviation(n: usize, precision: u32) -> Result<HpReal> {
    let zeta = construct_zeta(n, precision)?.value();
    Ok(zeta.distance(&trig_root(n, 1, precision)?.value))
}

/// Whether ζ(n) agrees with `e^(2πi/n)` to [`agreement_tolerance`].
pub fn agrees_with_trig(n: usize, precision: u32) -> bool {
    zeta_deviation(n, precision).is_ok_and(|d| d < agreement_tolerance(precision))
}
