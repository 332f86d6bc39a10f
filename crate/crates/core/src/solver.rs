//! All `n` solutions of `z^n = c` by Durand–Kerner (Weierstrass) iteration.
//!
//! Every sweep updates all estimates from the previous sweep's values only
//! (Jacobi order), so the output depends on `(c, n, precision)` alone.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::precision::{check_precision, HpComplex, HpReal};

/// The `n` roots of `z^n = target`, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub n: usize,
    pub target: HpComplex,
    pub roots: Vec<HpComplex>,
    /// `max |z^n - target|` over the returned roots.
    pub residual_bound: HpReal,
    pub precision: u32,
}

impl RootSet {
    pub fn is_unity(&self) -> bool {
        self.target == HpComplex::one(self.precision)
    }

    /// Bit-for-bit equality of every stored number.
    pub fn same_bits(&self, other: &RootSet) -> bool {
        self.n == other.n
            && self.precision == other.precision
            && self.target.same_bits(&other.target)
            && self.residual_bound.same_bits(&other.residual_bound)
            && self.roots.len() == other.roots.len()
            && self.roots.iter().zip(&other.roots).all(|(a, b)| a.same_bits(b))
    }

    /// Smallest distance between two distinct entries.
    pub fn min_separation(&self) -> Option<HpReal> {
        min_pairwise_distance_sqr(&self.roots).map(|d| d.sqrt().expect("nonnegative"))
    }

    /// Index of an entry within `tol` of `z`.
    pub fn find(&self, z: &HpComplex, tol: &HpReal) -> Option<usize> {
        let tol2 = tol.square();
        self.roots
            .iter()
            .position(|w| (w - z).norm_sqr() <= tol2)
    }
}

/// Residual tolerance `2^-(precision/2)`, scaled by `|c|` when `|c| > 1`.
pub fn residual_tolerance(c_abs: &HpReal, precision: u32) -> HpReal {
    let base = HpReal::pow2(-i64::from(precision / 2), precision);
    if *c_abs > HpReal::one(precision) {
        &base * c_abs
    } else {
        base
    }
}

/// Roots closer than `2^-(precision/4)` are treated as a solver failure.
pub fn separation_floor(precision: u32) -> HpReal {
    HpReal::pow2(-i64::from(precision / 4), precision)
}

/// Working precision of the Weierstrass denominators. Their relative error
/// only slows the final sweeps from quadratic to fast-linear convergence; the
/// fixed point is set by the full-precision residual `z^n - c`.
const DENOMINATOR_BITS: u32 = 64;

/// Solves `z^n = 1`.
pub fn solve_unity(n: usize, precision: u32) -> Result<RootSet> {
    check_precision(precision)?;
    solve_binomial(&HpComplex::one(precision), n, precision)
}

/// Solves `z^n = c` for nonzero `c`.
pub fn solve_binomial(c: &HpComplex, n: usize, precision: u32) -> Result<RootSet> {
    check_precision(precision)?;
    if n == 0 {
        return Err(Error::InvalidN(n));
    }
    let c = c.with_precision(precision);
    if c.is_zero() {
        return Err(Error::ZeroTarget);
    }
    let c_abs = c.abs();
    let tol = residual_tolerance(&c_abs, precision);

    let mut roots = durand_kerner(&c, &c_abs, n, precision, &tol)?;
    for z in roots.iter_mut() {
        *z = newton_step(z, &c, n)?;
    }

    let residual_bound = roots
        .iter()
        .map(|z| (&z.pow(n as u64) - &c).abs())
        .max()
        .expect("n >= 1");
    if residual_bound > tol {
        return Err(Error::NoConvergence {
            n,
            reason: format!("residual {residual_bound} above tolerance {tol}"),
        });
    }
    if let Some(d2) = min_pairwise_distance_sqr(&roots) {
        if d2 <= separation_floor(precision).square() {
            return Err(Error::NoConvergence {
                n,
                reason: "two estimates converged to the same root".into(),
            });
        }
    }
    sort_canonical(&mut roots, &residual_bound);
    Ok(RootSet {
        n,
        target: c,
        roots,
        residual_bound,
        precision,
    })
}

/// Seeds `R·u^k`, `k = 1..n`, with `u = g/|g|` for `g = 0.4 + 0.9i` and `R` a
/// power of two near `|c|^(1/n)`.
fn unit_seed(precision: u32) -> Result<HpComplex> {
    let g = HpComplex::new(
        HpReal::from_ratio(2, 5, precision)?,
        HpReal::from_ratio(9, 10, precision)?,
    );
    let g_abs = g.abs();
    Ok(HpComplex::new(g.re.checked_div(&g_abs)?, g.im.checked_div(&g_abs)?))
}

/// `2^k` with `k = floor(log2|c| / n)`, within a factor two of `|c|^(1/n)`.
pub(crate) fn radius_guess(c_abs: &HpReal, n: usize) -> i64 {
    let top = c_abs.magnitude_exponent().expect("c is nonzero") - 1;
    top.div_euclid(n as i64)
}

fn seeds(c_abs: &HpReal, n: usize, precision: u32) -> Result<Vec<HpComplex>> {
    let u = unit_seed(precision)?;
    let radius_exp = radius_guess(c_abs, n);
    let mut out = Vec::with_capacity(n);
    let mut z = u.mul_pow2(radius_exp);
    for _ in 0..n {
        out.push(z.clone());
        z = &z * &u;
    }
    Ok(out)
}

fn durand_kerner(
    c: &HpComplex,
    c_abs: &HpReal,
    n: usize,
    precision: u32,
    tol: &HpReal,
) -> Result<Vec<HpComplex>> {
    let mut roots = seeds(c_abs, n, precision)?;
    let tol2 = tol.square();
    let scale = HpReal::one(precision).max(c_abs.clone());
    let step_floor = &HpReal::pow2(-i64::from(precision * 3 / 4), precision) * &scale;
    let step_floor2 = step_floor.square();
    let cap = 50 + 10 * n;
    let coarse_bits = precision.min(DENOMINATOR_BITS);

    for _ in 0..cap {
        let values: Vec<HpComplex> = roots.iter().map(|z| &z.pow(n as u64) - c).collect();
        if values.iter().all(|v| v.norm_sqr() <= tol2) {
            return Ok(roots);
        }
        let coarse: Vec<HpComplex> = roots.iter().map(|z| z.with_precision(coarse_bits)).collect();
        let mut next = Vec::with_capacity(n);
        let mut max_step2 = HpReal::zero(precision);
        for (i, zi) in coarse.iter().enumerate() {
            let mut den = HpComplex::one(coarse_bits);
            for (j, zj) in coarse.iter().enumerate() {
                if i != j {
                    den = &den * &(zi - zj);
                }
            }
            if den.is_zero() {
                return Err(Error::NoConvergence {
                    n,
                    reason: "coincident estimates".into(),
                });
            }
            let step = values[i].checked_div(&den)?;
            max_step2 = max_step2.max(step.norm_sqr());
            next.push(&roots[i] - &step);
        }
        roots = next;
        if max_step2 < step_floor2 {
            return Ok(roots);
        }
    }
    Err(Error::NoConvergence {
        n,
        reason: format!("iteration cap of {cap} sweeps reached"),
    })
}

/// One Newton step on `z^n - c`.
pub(crate) fn newton_step(z: &HpComplex, c: &HpComplex, n: usize) -> Result<HpComplex> {
    let p = z.precision();
    let lower = z.pow(n as u64 - 1);
    let value = &(&lower * z) - c;
    let slope = lower.scale(&HpReal::from_u64(n as u64, p));
    Ok(z - &value.checked_div(&slope)?)
}

pub(crate) fn min_pairwise_distance_sqr(roots: &[HpComplex]) -> Option<HpReal> {
    let mut best: Option<HpReal> = None;
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            let d = (a - b).norm_sqr();
            if best.as_ref().is_none_or(|m| d < *m) {
                best = Some(d);
            }
        }
    }
    best
}

/// Upper half first, then the real axis, then the lower half; real part
/// descending within each. `|Im| <= slack` counts as real.
pub(crate) fn sort_canonical(roots: &mut [HpComplex], slack: &HpReal) {
    let half = |z: &HpComplex| -> i8 {
        if z.im > *slack {
            1
        } else if z.im < -slack {
            -1
        } else {
            0
        }
    };
    roots.sort_by(|a, b| match half(b).cmp(&half(a)) {
        Ordering::Equal => b.re.cmp(&a.re),
        ord => ord,
    });
}

/// `Q(z) = sum_{j=0}^{n-1} z^(n-1-j) w^j`, by Horner accumulation in `z`.
pub fn cofactor_eval(z: &HpComplex, w: &HpComplex, n: usize) -> HpComplex {
    let p = z.precision().max(w.precision());
    let mut acc = HpComplex::one(p);
    let mut w_pow = HpComplex::one(p);
    for _ in 1..n {
        w_pow = &w_pow * w;
        acc = &(&acc * z) + &w_pow;
    }
    acc
}

/// Checks that every root is a simple zero: entries are pairwise separated
/// and `|Q(w)| >= (n/2)·|w|^(n-1)` where the exact value is `n·|w|^(n-1)`.
pub fn simple_zero_check(set: &RootSet) -> bool {
    if set.roots.len() != set.n {
        return false;
    }
    if let Some(d2) = min_pairwise_distance_sqr(&set.roots) {
        if d2 <= separation_floor(set.precision).square() {
            return false;
        }
    }
    let p = set.precision;
    let half_n = HpReal::from_u64(set.n as u64, p).mul_pow2(-1);
    set.roots.iter().all(|w| {
        let q = cofactor_eval(w, w, set.n).abs();
        let floor = &half_n * &w.abs().pow_u64(set.n as u64 - 1);
        q >= floor
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn close(z: &HpComplex, w: &HpComplex, bits: i64) -> bool {
        z.distance(w) < HpReal::pow2(-bits, P)
    }

    #[test]
    fn n_one_is_one() {
        let set = solve_unity(1, P).unwrap();
        assert_eq!(set.roots.len(), 1);
        assert!(close(&set.roots[0], &HpComplex::one(P), 120));
    }

    #[test]
    fn n_four_is_the_axes() {
        let set = solve_unity(4, P).unwrap();
        let expect = [
            HpComplex::i(P),
            HpComplex::one(P),
            HpComplex::from_i64(-1, 0, P),
            HpComplex::from_i64(0, -1, P),
        ];
        for (got, want) in set.roots.iter().zip(&expect) {
            assert!(close(got, want, 120), "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn n_three_matches_quadratic_formula() {
        // z^2 + z + 1 = 0  =>  z = (-1 ± sqrt(-3)) / 2
        let half_root3 = HpReal::from_i64(3, P).sqrt().unwrap().mul_pow2(-1);
        let minus_half = HpReal::from_ratio(-1, 2, P).unwrap();
        let set = solve_unity(3, P).unwrap();
        let expect = [
            HpComplex::new(minus_half.clone(), half_root3.clone()),
            HpComplex::one(P),
            HpComplex::new(minus_half, -half_root3),
        ];
        for (got, want) in set.roots.iter().zip(&expect) {
            assert!(close(got, want, 120), "{got:?} vs {want:?}");
        }
        assert!(set.residual_bound <= HpReal::pow2(-64, P));
    }

    #[test]
    fn binomial_examples() {
        let set = solve_binomial(&HpComplex::from_i64(16, 0, P), 4, P).unwrap();
        for want in [(0, 2), (2, 0), (-2, 0), (0, -2)] {
            let w = HpComplex::from_i64(want.0, want.1, P);
            assert!(set.find(&w, &HpReal::pow2(-110, P)).is_some(), "{want:?}");
        }

        let six = solve_binomial(&HpComplex::one(P), 6, P).unwrap();
        assert!(six.same_bits(&solve_unity(6, P).unwrap()));

        let half = HpReal::from_ratio(1, 2, P).unwrap().sqrt().unwrap();
        let set = solve_binomial(&HpComplex::i(P), 2, P).unwrap();
        let w = HpComplex::new(half.clone(), half);
        assert!(close(&set.roots[0], &w, 120));
        assert!(close(&set.roots[1], &(-&w), 120));

        assert_eq!(
            solve_binomial(&HpComplex::zero(P), 3, P),
            Err(Error::ZeroTarget)
        );
        assert_eq!(solve_unity(0, P), Err(Error::InvalidN(0)));
        assert_eq!(solve_unity(3, 16), Err(Error::InvalidPrecision(16)));
    }

    #[test]
    fn cofactor_examples() {
        let one = HpComplex::one(P);
        assert_eq!(cofactor_eval(&one, &one, 4), HpComplex::from_i64(4, 0, P));
        let i = HpComplex::i(P);
        assert_eq!(cofactor_eval(&i, &i, 4), HpComplex::from_i64(0, -4, P));
        for n in 1..6 {
            assert_eq!(cofactor_eval(&HpComplex::zero(P), &one, n), one);
        }
        // (z - w) Q(z) = z^n - w^n away from w as well.
        let z = HpComplex::from_f64(0.3, 0.8, P);
        let w = HpComplex::from_f64(-0.6, 0.2, P);
        let lhs = &(&z - &w) * &cofactor_eval(&z, &w, 7);
        let rhs = &z.pow(7) - &w.pow(7);
        assert!(close(&lhs, &rhs, 120));
    }

    #[test]
    fn simple_zeros() {
        assert!(simple_zero_check(&solve_unity(6, P).unwrap()));
        assert!(simple_zero_check(&solve_unity(1, P).unwrap()));
        let mut set = solve_unity(6, P).unwrap();
        set.roots[1] = set.roots[0].clone();
        assert!(!simple_zero_check(&set));
    }

    #[test]
    fn unit_modulus_and_closure() {
        for n in [5, 12, 17] {
            let set = solve_unity(n, P).unwrap();
            let tol = set.residual_bound.mul_pow2(1);
            for w in &set.roots {
                assert!((&w.abs() - &HpReal::one(P)).abs() <= set.residual_bound);
                assert!(set.find(&w.conj(), &tol).is_some());
                for k in [2, 3] {
                    assert!(set.find(&w.pow(k), &tol).is_some());
                }
            }
        }
    }

    #[test]
    fn repeated_solves_are_bit_identical() {
        let a = solve_unity(10, P).unwrap();
        let b = solve_unity(10, P).unwrap();
        assert!(a.same_bits(&b));
    }
}
