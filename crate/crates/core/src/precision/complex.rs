use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::real::HpReal;
use crate::error::Result;

/// `re + i·im` with both parts at one precision.
#[derive(Clone, PartialEq, Eq)]
pub struct HpComplex {
    pub re: HpReal,
    pub im: HpReal,
}

impl HpComplex {
    /// Builds a complex number, lifting the lower-precision part if they differ.
    pub fn new(re: HpReal, im: HpReal) -> HpComplex {
        let p = re.precision().max(im.precision());
        let re = if re.precision() == p { re } else { re.with_precision(p) };
        let im = if im.precision() == p { im } else { im.with_precision(p) };
        HpComplex { re, im }
    }

    pub fn zero(precision: u32) -> HpComplex {
        HpComplex::new(HpReal::zero(precision), HpReal::zero(precision))
    }

    pub fn one(precision: u32) -> HpComplex {
        HpComplex::new(HpReal::one(precision), HpReal::zero(precision))
    }

    pub fn i(precision: u32) -> HpComplex {
        HpComplex::new(HpReal::zero(precision), HpReal::one(precision))
    }

    pub fn from_real(re: HpReal) -> HpComplex {
        let p = re.precision();
        HpComplex::new(re, HpReal::zero(p))
    }

    pub fn from_i64(re: i64, im: i64, precision: u32) -> HpComplex {
        HpComplex::new(HpReal::from_i64(re, precision), HpReal::from_i64(im, precision))
    }

    pub fn from_f64(re: f64, im: f64, precision: u32) -> HpComplex {
        HpComplex::new(HpReal::from_f64(re, precision), HpReal::from_f64(im, precision))
    }

    pub fn precision(&self) -> u32 {
        self.re.precision()
    }

    pub fn with_precision(&self, precision: u32) -> HpComplex {
        HpComplex::new(self.re.with_precision(precision), self.im.with_precision(precision))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn same_bits(&self, other: &HpComplex) -> bool {
        self.re.same_bits(&other.re) && self.im.same_bits(&other.im)
    }

    pub fn conj(&self) -> HpComplex {
        HpComplex::new(self.re.clone(), -&self.im)
    }

    /// `x² + y²`.
    pub fn norm_sqr(&self) -> HpReal {
        self.re.square() + self.im.square()
    }

    /// `sqrt(x² + y²)`.
    pub fn abs(&self) -> HpReal {
        self.norm_sqr()
            .sqrt()
            .expect("sum of squares is nonnegative")
    }

    pub fn scale(&self, k: &HpReal) -> HpComplex {
        HpComplex::new(&self.re * k, &self.im * k)
    }

    pub fn mul_pow2(&self, k: i64) -> HpComplex {
        HpComplex::new(self.re.mul_pow2(k), self.im.mul_pow2(k))
    }

    /// `self / rhs` as `self * conj(rhs) / |rhs|²`.
    pub fn checked_div(&self, rhs: &HpComplex) -> Result<HpComplex> {
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Ok(HpComplex::new(num.re.checked_div(&den)?, num.im.checked_div(&den)?))
    }

    /// `self^k` by binary exponentiation; `z^0 = 1`.
    pub fn pow(&self, mut k: u64) -> HpComplex {
        let mut acc = HpComplex::one(self.precision());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `[self^0, self^1, …, self^(count-1)]` by repeated multiplication,
    /// re-anchored to a fresh binary power every `anchor_every` entries so the
    /// rounding drift stays bounded by that many steps.
    pub fn powers(&self, count: usize, anchor_every: usize) -> Vec<HpComplex> {
        let mut out: Vec<HpComplex> = Vec::with_capacity(count);
        for k in 0..count {
            let next = match k {
                0 => HpComplex::one(self.precision()),
                k if anchor_every > 0 && k % anchor_every == 0 => self.pow(k as u64),
                k => &out[k - 1] * self,
            };
            out.push(next);
        }
        out
    }

    /// `|self - other|`.
    pub fn distance(&self, other: &HpComplex) -> HpReal {
        (self - other).abs()
    }
}

pub fn complex_mul(z: &HpComplex, w: &HpComplex) -> HpComplex {
    z * w
}

pub fn complex_conj(z: &HpComplex) -> HpComplex {
    z.conj()
}

pub fn complex_abs(z: &HpComplex) -> HpReal {
    z.abs()
}

pub fn complex_pow(z: &HpComplex, k: u64) -> HpComplex {
    z.pow(k)
}

impl fmt::Debug for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl Add<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: &HpComplex) -> HpComplex {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        HpComplex::new(re, im)
    }
}

impl Neg for &HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        HpComplex::new(-&self.re, -&self.im)
    }
}

impl Add for HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: HpComplex) -> HpComplex {
        &self + &rhs
    }
}

impl Sub for HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: HpComplex) -> HpComplex {
        &self - &rhs
    }
}

impl Mul for HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: HpComplex) -> HpComplex {
        &self * &rhs
    }
}
