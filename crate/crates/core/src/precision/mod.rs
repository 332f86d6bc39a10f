//! Binary big-float reals and complexes built on integer arithmetic.
//!
//! Everything downstream is written against [`HpReal`] and [`HpComplex`]:
//! the four basic operations plus a square root, and nothing transcendental.

mod complex;
mod decimal;
mod isqrt;
mod real;

pub use complex::{complex_abs, complex_conj, complex_mul, complex_pow, HpComplex};
pub use decimal::round_trip_digits;
pub use isqrt::isqrt;
pub use real::{hp_arith, hp_sqrt, ArithOp, HpReal, Sign};

pub const MIN_PRECISION: u32 = 32;
pub const DEFAULT_PRECISION: u32 = 128;

pub(crate) fn check_precision(precision: u32) -> crate::Result<()> {
    if precision < MIN_PRECISION {
        return Err(crate::Error::InvalidPrecision(precision));
    }
    Ok(())
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    const P: u32 = 128;

    fn real() -> impl Strategy<Value = HpReal> {
        (any::<i64>(), -64i64..64).prop_map(|(m, e)| HpReal::from_i64(m, P).mul_pow2(e - 63))
    }

    fn moderate() -> impl Strategy<Value = HpReal> {
        (1u64..u64::MAX, -10i64..10).prop_map(|(m, e)| HpReal::from_u64(m, P).mul_pow2(e - 64))
    }

    fn complex() -> impl Strategy<Value = HpComplex> {
        (real(), real()).prop_map(|(a, b)| HpComplex::new(a, b))
    }

    fn rel_close(x: &HpReal, y: &HpReal, bits: i64) -> bool {
        let scale = x.abs().max(y.abs());
        (x - y).abs() <= &scale * &HpReal::pow2(-bits, P)
    }

    proptest! {
        #[test]
        fn addition_is_associative_up_to_rounding(a in real(), b in real(), c in real()) {
            let lhs = &(&a + &b) + &c;
            let rhs = &a + &(&b + &c);
            let big = a.abs().max(b.abs()).max(c.abs());
            let bound = &big * &HpReal::pow2(-(P as i64 - 2) + 2, P);
            prop_assert!((&lhs - &rhs).abs() <= bound);
        }

        #[test]
        fn sqrt_squares_back(x in moderate()) {
            let s = x.sqrt().unwrap();
            let sq = &s * &s;
            let slack = &x * &HpReal::pow2(-(P as i64 - 3), P);
            prop_assert!(sq >= &x - &slack && sq <= &x + &slack);
        }

        #[test]
        fn modulus_is_multiplicative(z in complex(), w in complex()) {
            let lhs = (&z * &w).abs();
            let rhs = &z.abs() * &w.abs();
            prop_assert!(rel_close(&lhs, &rhs, P as i64 - 4));
        }

        #[test]
        fn powers_add_exponents(z in complex(), j in 0u64..12, k in 0u64..12) {
            let z = HpComplex::new(z.re.mul_pow2(-40), z.im.mul_pow2(-40));
            let lhs = z.pow(j + k);
            let rhs = &z.pow(j) * &z.pow(k);
            let scale = lhs.abs().max(rhs.abs());
            prop_assert!(lhs.distance(&rhs) <= &scale * &HpReal::pow2(-(P as i64 - 4), P));
        }
    }
}
