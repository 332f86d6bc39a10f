//! The distinguished root ζ(n): among the n-th roots of unity with positive
//! imaginary part, the one closest to 1.
//!
//! For even `n >= 6` it is read off the solver output directly. `n = 1, 2, 4`
//! are exact constants, and every other `n` goes through the doubling
//! reduction: ζ(n) = ζ(2n)², since the squares of a primitive `2n`-th root
//! run through all `n`-th roots.

use crate::error::{Error, Result};
use crate::precision::{check_precision, HpComplex, HpReal};
use crate::solver::{solve_unity, RootSet};

#[derive(Debug, Clone, PartialEq)]
pub struct Zeta {
    pub n: usize,
    /// Real part.
    pub a: HpReal,
    /// Imaginary part.
    pub b: HpReal,
    /// `|ζ - 1|`, evaluated as `sqrt(2 - 2a)`.
    pub r: HpReal,
    pub precision: u32,
}

impl Zeta {
    pub fn from_root(n: usize, w: &HpComplex) -> Zeta {
        let precision = w.precision();
        Zeta {
            n,
            a: w.re.clone(),
            b: w.im.clone(),
            r: chord(&w.re),
            precision,
        }
    }

    pub fn value(&self) -> HpComplex {
        HpComplex::new(self.a.clone(), self.b.clone())
    }

    /// `1/ζ = conj(ζ)` on the unit circle.
    pub fn inverse(&self) -> HpComplex {
        self.value().conj()
    }
}

/// `|w - 1| = sqrt(2 - 2·Re w)` for `w` on the unit circle. One rounding for
/// the square root, against several for `sqrt((a - 1)² + b²)`.
fn chord(re: &HpReal) -> HpReal {
    let p = re.precision();
    (&HpReal::from_i64(2, p) - &re.mul_pow2(1))
        .max(HpReal::zero(p))
        .sqrt()
        .expect("clamped at zero")
}

/// Relative tie tolerance between competing candidates.
pub fn tie_tolerance(precision: u32) -> HpReal {
    HpReal::pow2(-i64::from(precision / 4), precision)
}

/// The root with `Im > residual_bound` minimizing `|w - 1|`, as an index
/// into `set.roots` together with that distance. Works for any `n`.
pub fn nearest_upper_root(set: &RootSet) -> Result<(usize, HpReal)> {
    let one = HpComplex::one(set.precision);
    let candidates: Vec<(usize, HpReal)> = set
        .roots
        .iter()
        .enumerate()
        .filter(|(_, w)| w.im > set.residual_bound)
        .map(|(i, w)| (i, w.distance(&one)))
        .collect();
    let (best, r) = candidates
        .iter()
        .min_by(|x, y| x.1.cmp(&y.1))
        .cloned()
        .ok_or(Error::NoUpperRoot)?;
    let tie = tie_tolerance(set.precision);
    let ambiguous = candidates
        .iter()
        .any(|(i, d)| *i != best && (d - &r).abs() <= tie);
    if ambiguous {
        return Err(Error::AmbiguousMinimizer);
    }
    Ok((best, r))
}

/// Selects ζ from the roots of `z^n = 1` for even `n >= 6`, checking that it
/// lies strictly inside the open unit square of the first quadrant.
pub fn select_zeta(set: &RootSet) -> Result<Zeta> {
    if !set.is_unity() {
        return Err(Error::NotARoot(set.n));
    }
    if set.n < 3 || set.n % 2 == 1 {
        return Err(Error::InvalidN(set.n));
    }
    let (idx, _) = nearest_upper_root(set)?;
    let w = &set.roots[idx];
    let slack = &set.residual_bound;
    let upper = &HpReal::one(set.precision) - slack;
    let inside = |v: &HpReal| v > slack && *v < upper;
    if !(inside(&w.re) && inside(&w.im)) {
        return Err(Error::NotInFirstQuadrant {
            re: w.re.to_string(),
            im: w.im.to_string(),
        });
    }
    Ok(Zeta::from_root(set.n, w))
}

/// ζ(n) for any `n >= 1`.
pub fn construct_zeta(n: usize, precision: u32) -> Result<Zeta> {
    check_precision(precision)?;
    let exact = |re: i64, im: i64| Zeta::from_root(n, &HpComplex::from_i64(re, im, precision));
    match n {
        0 => Err(Error::InvalidN(0)),
        1 => Ok(exact(1, 0)),
        2 => Ok(exact(-1, 0)),
        4 => Ok(exact(0, 1)),
        n if n % 2 == 0 => select_zeta(&solve_unity(n, precision)?),
        n => {
            let doubled = select_zeta(&solve_unity(2 * n, precision)?)?;
            let v = doubled.value();
            Ok(Zeta::from_root(n, &(&v * &v)))
        }
    }
}

/// `r² = 2 - 2a` and `(a - 1)² + b² = r²`, both within `2^-(precision-8)`.
pub fn radius_identity_check(zeta: &Zeta) -> bool {
    let p = zeta.precision;
    let tol = HpReal::pow2(-(i64::from(p) - 8), p);
    let one = HpReal::one(p);
    let r2 = zeta.r.square();
    let chord = &HpReal::from_i64(2, p) - &zeta.a.mul_pow2(1);
    let pythagoras = (&zeta.a - &one).square() + zeta.b.square();
    r2.approx_eq(&chord, &tol) && pythagoras.approx_eq(&r2, &tol)
}
