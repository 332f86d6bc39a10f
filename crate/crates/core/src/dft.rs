//! Twiddle factors from ζ and a reference O(n²) discrete Fourier transform.
//!
//! The forward kernel is `conj(ζ)^k`, so `X[j] = Σ x[k]·e^(-2πijk/n)`.

use crate::error::{Error, Result};
use crate::precision::{check_precision, HpComplex, HpReal};
use crate::zeta::construct_zeta;

/// Drift is reset by recomputing `ζ^k` from scratch every this many entries.
pub const ANCHOR_EVERY: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct TwiddleTable {
    pub n: usize,
    /// `conj(ζ)^k`.
    pub forward: Vec<HpComplex>,
    /// `ζ^k`.
    pub inverse: Vec<HpComplex>,
    pub precision: u32,
}

pub fn twiddle_table(n: usize, precision: u32) -> Result<TwiddleTable> {
    check_precision(precision)?;
    let zeta = construct_zeta(n, precision)?.value();
    let inverse = zeta.powers(n, ANCHOR_EVERY);
    let forward = inverse.iter().map(HpComplex::conj).collect();
    Ok(TwiddleTable {
        n,
        forward,
        inverse,
        precision,
    })
}

impl TwiddleTable {
    fn check_len(&self, x: &[HpComplex]) -> Result<()> {
        if x.len() == self.n {
            Ok(())
        } else {
            Err(Error::InvalidN(x.len()))
        }
    }

    fn apply(&self, kernel: &[HpComplex], x: &[HpComplex]) -> Vec<HpComplex> {
        let n = self.n;
        (0..n)
            .map(|j| {
                x.iter().enumerate().fold(HpComplex::zero(self.precision), |acc, (k, xk)| {
                    &acc + &(xk * &kernel[(j * k) % n])
                })
            })
            .collect()
    }

    pub fn forward_dft(&self, x: &[HpComplex]) -> Result<Vec<HpComplex>> {
        self.check_len(x)?;
        Ok(self.apply(&self.forward, &lift(x, self.precision)))
    }

    pub fn inverse_dft(&self, big_x: &[HpComplex]) -> Result<Vec<HpComplex>> {
        self.check_len(big_x)?;
        let scale = HpReal::from_ratio(1, self.n as i64, self.precision)?;
        Ok(self
            .apply(&self.inverse, &lift(big_x, self.precision))
            .iter()
            .map(|v| v.scale(&scale))
            .collect())
    }
}

fn lift(x: &[HpComplex], precision: u32) -> Vec<HpComplex> {
    x.iter().map(|v| v.with_precision(precision)).collect()
}

fn input_precision(x: &[HpComplex]) -> Result<u32> {
    x.first().map(HpComplex::precision).ok_or(Error::InvalidN(0))
}

/// Forward transform at the precision of the input.
pub fn dft_forward(x: &[HpComplex]) -> Result<Vec<HpComplex>> {
    twiddle_table(x.len(), input_precision(x)?)?.forward_dft(x)
}

/// Inverse transform at the precision of the input, including the `1/n`.
pub fn dft_inverse(big_x: &[HpComplex]) -> Result<Vec<HpComplex>> {
    twiddle_table(big_x.len(), input_precision(big_x)?)?.inverse_dft(big_x)
}

/// `Σ|v|²`.
pub fn energy(v: &[HpComplex]) -> HpReal {
    let p = v.first().map_or(crate::precision::DEFAULT_PRECISION, HpComplex::precision);
    v.iter().fold(HpReal::zero(p), |acc, z| &acc + &z.norm_sqr())
}

/// Largest `|forward[k] - conj(ζ^k)|` with `ζ^k` by binary powering.
pub fn twiddle_drift(table: &TwiddleTable) -> Result<HpReal> {
    let zeta = construct_zeta(table.n, table.precision)?.value();
    Ok(table
        .forward
        .iter()
        .enumerate()
        .map(|(k, w)| w.distance(&zeta.pow(k as u64).conj()))
        .max()
        .unwrap_or_else(|| HpReal::zero(table.precision)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: u32 = 128;

    fn c(re: i64, im: i64) -> HpComplex {
        HpComplex::from_i64(re, im, P)
    }

    fn max_error(x: &[HpComplex], y: &[HpComplex]) -> HpReal {
        x.iter().zip(y).map(|(a, b)| a.distance(b)).max().unwrap()
    }

    #[test]
    fn small_tables() {
        assert_eq!(twiddle_table(1, P).unwrap().forward, vec![c(1, 0)]);
        let four = twiddle_table(4, P).unwrap();
        assert_eq!(four.forward, vec![c(1, 0), c(0, -1), c(-1, 0), c(0, 1)]);
        let six = twiddle_table(6, P).unwrap();
        assert!(six.forward[0].same_bits(&c(1, 0)));
        let want = HpComplex::new(
            HpReal::from_ratio(1, 2, P).unwrap(),
            -HpReal::from_i64(3, P).sqrt().unwrap().mul_pow2(-1),
        );
        assert!(six.forward[1].distance(&want) < HpReal::pow2(-120, P));
    }

    #[test]
    fn table_entries_are_inverse_pairs() {
        let tol = HpReal::pow2(-(i64::from(P) - 8), P);
        for n in [5, 12, 40, 64] {
            let t = twiddle_table(n, P).unwrap();
            for (f, i) in t.forward.iter().zip(&t.inverse) {
                assert!((f * i).distance(&c(1, 0)) < tol, "n={n}");
            }
            assert!(twiddle_drift(&t).unwrap() < HpReal::pow2(-(i64::from(P) - 16), P));
        }
    }

    #[test]
    fn delta_and_constant() {
        let delta = vec![c(1, 0), c(0, 0), c(0, 0), c(0, 0)];
        let ones = vec![c(1, 0); 4];
        assert_eq!(dft_forward(&delta).unwrap(), ones);
        assert_eq!(dft_forward(&ones).unwrap(), vec![c(4, 0), c(0, 0), c(0, 0), c(0, 0)]);
        assert_eq!(dft_inverse(&[c(4, 0), c(0, 0), c(0, 0), c(0, 0)]).unwrap(), ones);
        assert_eq!(dft_inverse(&dft_forward(&delta).unwrap()).unwrap(), delta);
    }

    #[test]
    fn length_mismatch_and_empty() {
        let t = twiddle_table(3, P).unwrap();
        assert_eq!(t.forward_dft(&[c(1, 0)]), Err(Error::InvalidN(1)));
        assert_eq!(dft_forward(&[]), Err(Error::InvalidN(0)));
    }

    fn vector(len: usize) -> impl Strategy<Value = Vec<HpComplex>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
            .prop_map(|v| v.into_iter().map(|(re, im)| HpComplex::from_f64(re, im, P)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn round_trip_and_parseval(x in vector(8)) {
            let tol = HpReal::pow2(-i64::from(P / 2), P);
            let big_x = dft_forward(&x).unwrap();
            let back = dft_inverse(&big_x).unwrap();
            prop_assert!(max_error(&x, &back) < tol);
            let spectral = energy(&big_x).checked_div(&HpReal::from_i64(8, P)).unwrap();
            prop_assert!(energy(&x).approx_eq(&spectral, &tol));
        }
    }
}
