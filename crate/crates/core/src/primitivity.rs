//! Multiplicative order of roots of unity and the criteria built on it.

use crate::error::{Error, Result};
use crate::precision::{check_precision, HpComplex, HpReal};
use crate::solver::{
    min_pairwise_distance_sqr, newton_step, radius_guess, residual_tolerance, separation_floor,
    sort_canonical, RootSet,
};
use crate::zeta::construct_zeta;

#[derive(Debug, Clone, PartialEq)]
pub struct PrimitivityReport {
    pub w: HpComplex,
    pub n: usize,
    /// Smallest `d >= 1` with `|w^d - 1| <= tol`.
    pub order: usize,
    pub is_primitive: bool,
    pub tol: HpReal,
}

/// `2^-(precision/2)`: "equal to 1" for order computations.
pub fn order_tolerance(precision: u32) -> HpReal {
    HpReal::pow2(-i64::from(precision / 2), precision)
}

fn is_unit(w: &HpComplex, tol: &HpReal) -> bool {
    (w - &HpComplex::one(w.precision())).abs() <= *tol
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            low.push(d);
            if d * d != n {
                high.push(n / d);
            }
        }
        d += 1;
    }
    low.extend(high.into_iter().rev());
    low
}

/// Order of an n-th root of unity `w`, scanning the divisors of `n`.
pub fn multiplicative_order(w: &HpComplex, n: usize, tol: &HpReal) -> Result<PrimitivityReport> {
    if n == 0 {
        return Err(Error::InvalidN(0));
    }
    if !is_unit(&w.pow(n as u64), tol) {
        return Err(Error::NotARoot(n));
    }
    let order = divisors(n)
        .into_iter()
        .find(|&d| is_unit(&w.pow(d as u64), tol))
        .unwrap_or(n);
    Ok(PrimitivityReport {
        w: w.clone(),
        n,
        order,
        is_primitive: order == n,
        tol: tol.clone(),
    })
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `ζ^m` is primitive exactly when `gcd(m, n) = 1`.
pub fn gcd_primitivity(m: usize, n: usize) -> bool {
    gcd(m, n) == 1
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// For prime `n`, every n-th root of unity other than 1 is primitive.
pub fn prime_shortcut(w: &HpComplex, n: usize, tol: &HpReal) -> Result<bool> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if !is_unit(&w.pow(n as u64), tol) {
        return Err(Error::NotARoot(n));
    }
    Ok(!is_unit(w, tol))
}

/// All n-th roots of `c` as `ζ^k·z`, `k = 0..n-1`, from a single root `z`
/// found by Newton's iteration.
pub fn roots_of(c: &HpComplex, n: usize, precision: u32) -> Result<RootSet> {
    check_precision(precision)?;
    if n == 0 {
        return Err(Error::InvalidN(0));
    }
    let c = c.with_precision(precision);
    if c.is_zero() {
        return Err(Error::ZeroTarget);
    }
    let c_abs = c.abs();
    let tol = residual_tolerance(&c_abs, precision);
    let z = single_root(&c, &c_abs, n, precision, &tol)?;

    let zeta = construct_zeta(n, precision)?.value();
    let mut roots: Vec<HpComplex> = zeta.powers(n, 16).iter().map(|w| w * &z).collect();
    let residual_bound = roots
        .iter()
        .map(|w| (&w.pow(n as u64) - &c).abs())
        .max()
        .expect("n >= 1");
    if residual_bound > tol {
        return Err(Error::NoConvergence {
            n,
            reason: format!("rotated roots have residual {residual_bound}"),
        });
    }
    if let Some(d2) = min_pairwise_distance_sqr(&roots) {
        if d2 <= separation_floor(precision).square() {
            return Err(Error::NoConvergence {
                n,
                reason: "rotated roots coincide".into(),
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

/// Principal square root of a point on the unit circle.
fn unit_sqrt(e: &HpComplex) -> Result<HpComplex> {
    let p = e.precision();
    let one = HpReal::one(p);
    let re = (&one + &e.re).mul_pow2(-1).max(HpReal::zero(p)).sqrt()?;
    let im = (&one - &e.re).mul_pow2(-1).max(HpReal::zero(p)).sqrt()?;
    Ok(HpComplex::new(re, if e.im.is_negative() { -im } else { im }))
}

/// A rough n-th root of the unit number `e`, from square roots and Newton's
/// iteration only. Halving the angle until `e` is within 1/4 of 1 puts the
/// seed `w = 1` inside the basin of the principal root of `w^n = e`; squaring
/// the result back `s` times undoes the halving.
fn unit_root_direction(e: &HpComplex, n: usize) -> Result<HpComplex> {
    let p = e.precision();
    let one = HpComplex::one(p);
    let quarter = HpReal::pow2(-2, p);
    let mut e = e.clone();
    let mut halvings = 0;
    while e.distance(&one) > quarter {
        e = unit_sqrt(&e)?;
        halvings += 1;
    }
    let settle = HpReal::pow2(-i64::from(p / 2), p);
    let mut w = one;
    for _ in 0..64 {
        let next = newton_step(&w, &e, n)?;
        let moved = next.distance(&w);
        w = next;
        if moved < settle {
            break;
        }
    }
    for _ in 0..halvings {
        w = &w * &w;
    }
    Ok(w)
}

/// Newton's iteration on `z^n - c`, seeded on an approximate root ray at
/// radius `2^(k+1) >= |c|^(1/n)`. Along that ray the iteration behaves like
/// the real one for `x^n = |c|` from above, which decreases monotonically.
fn single_root(
    c: &HpComplex,
    c_abs: &HpReal,
    n: usize,
    precision: u32,
    tol: &HpReal,
) -> Result<HpComplex> {
    let direction = HpComplex::new(c.re.checked_div(c_abs)?, c.im.checked_div(c_abs)?);
    let mut z = unit_root_direction(&direction, n)?.mul_pow2(radius_guess(c_abs, n) + 1);
    let floor = &HpReal::pow2(-i64::from(precision * 3 / 4), precision) * &z.abs();
    let cap = 50 + 10 * n;
    for _ in 0..cap {
        let next = newton_step(&z, c, n)?;
        let moved = next.distance(&z);
        z = next;
        if moved < floor || (&z.pow(n as u64) - c).abs() <= tol.mul_pow2(-i64::from(precision / 4)) {
            return newton_step(&z, c, n);
        }
    }
    Err(Error::NoConvergence {
        n,
        reason: format!("Newton iteration did not settle within {cap} steps"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phi::matches_as_sets;
    use crate::solver::{solve_binomial, solve_unity};

    const P: u32 = 128;

    fn tol() -> HpReal {
        order_tolerance(P)
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(divisors(13), vec![1, 13]);
    }

    #[test]
    fn order_of_one() {
        let one = HpComplex::one(P);
        for n in 1..8 {
            let rep = multiplicative_order(&one, n, &tol()).unwrap();
            assert_eq!(rep.order, 1);
            assert_eq!(rep.is_primitive, n == 1);
        }
    }

    #[test]
    fn order_of_zeta_six_and_its_square() {
        let z = construct_zeta(6, P).unwrap().value();
        let rep = multiplicative_order(&z, 6, &tol()).unwrap();
        assert_eq!((rep.order, rep.is_primitive), (6, true));
        let rep = multiplicative_order(&z.pow(2), 6, &tol()).unwrap();
        assert_eq!((rep.order, rep.is_primitive), (3, false));
        let off = HpComplex::from_f64(0.6, 0.8, P);
        assert_eq!(multiplicative_order(&off, 6, &tol()), Err(Error::NotARoot(6)));
    }

    #[test]
    fn gcd_cases() {
        assert!(gcd_primitivity(5, 6));
        assert!(!gcd_primitivity(2, 6));
        assert!(gcd_primitivity(1, 1));
        assert_eq!(gcd(84, 36), 12);
    }

    #[test]
    fn primes() {
        let primes: Vec<usize> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn prime_shortcut_cases() {
        let set = solve_unity(7, P).unwrap();
        for w in &set.roots {
            let is_one = w.distance(&HpComplex::one(P)) <= tol();
            let short = prime_shortcut(w, 7, &tol()).unwrap();
            assert_eq!(short, !is_one);
            assert_eq!(short, multiplicative_order(w, 7, &tol()).unwrap().order == 7);
        }
        assert_eq!(prime_shortcut(&HpComplex::one(P), 7, &tol()), Ok(false));
        assert_eq!(prime_shortcut(&HpComplex::one(P), 6, &tol()), Err(Error::NotPrime(6)));
    }

    #[test]
    fn roots_of_examples() {
        let close = HpReal::pow2(-100, P);
        let unity = roots_of(&HpComplex::one(P), 5, P).unwrap();
        assert!(matches_as_sets(&unity.roots, &solve_unity(5, P).unwrap().roots, &close));

        let sixteen = roots_of(&HpComplex::from_i64(16, 0, P), 4, P).unwrap();
        let want: Vec<HpComplex> = [(2, 0), (0, 2), (-2, 0), (0, -2)]
            .iter()
            .map(|&(a, b)| HpComplex::from_i64(a, b, P))
            .collect();
        assert!(matches_as_sets(&sixteen.roots, &want, &close));

        let root3 = HpReal::from_i64(3, P).sqrt().unwrap();
        let cube = roots_of(&HpComplex::from_i64(-8, 0, P), 3, P).unwrap();
        let want = vec![
            HpComplex::from_i64(-2, 0, P),
            HpComplex::new(HpReal::one(P), root3.clone()),
            HpComplex::new(HpReal::one(P), -root3),
        ];
        assert!(matches_as_sets(&cube.roots, &want, &close));
        let dk = solve_binomial(&HpComplex::from_i64(-8, 0, P), 3, P).unwrap();
        assert!(matches_as_sets(&cube.roots, &dk.roots, &close));

        assert_eq!(roots_of(&HpComplex::zero(P), 3, P), Err(Error::ZeroTarget));
    }

    #[test]
    fn negative_real_target_with_even_n() {
        // A seed on the ray through c would sit on a Newton basin boundary.
        for c in [-1, -8] {
            for n in [2, 4, 6, 12, 30] {
                let set = roots_of(&HpComplex::from_i64(c, 0, P), n, P).unwrap();
                assert_eq!(set.roots.len(), n);
            }
        }
    }

    #[test]
    fn roots_of_wide_sweep() {
        let targets = [(1, 0), (0, 1), (-8, 0), (16, 0), (3, 4), (0, -1_000_000), (-3, -1)];
        for (re, im) in targets {
            let c = HpComplex::from_i64(re, im, P);
            for n in (1..=24).chain([64]) {
                let set = roots_of(&c, n, P).unwrap_or_else(|e| panic!("c={re}{im:+}i n={n}: {e}"));
                let c_abs = c.abs();
                let tol = &HpReal::pow2(-50, P) * &c_abs.clone().max(HpReal::one(P));
                for w in &set.roots {
                    assert!(w.abs().pow_u64(n as u64).approx_eq(&c_abs, &tol), "c={re}{im:+}i n={n}");
                }
            }
        }
    }
}
