//! The rotation maps on real parts and the descent certificate for ζ.
//!
//! With `z_x = x + i·sqrt(1 - x²)` on the upper half circle, multiplying by ζ
//! advances the real part through `φ(x) = a·x - b·sqrt(1 - x²)` and dividing
//! by ζ undoes it through `ψ(y) = a·y + b·sqrt(1 - y²)`. Iterating φ from
//! `x_0 = 1` walks `Re(ζ^k)` down to `-1`; the certificate records that walk
//! and cross-checks it against an independently solved root set.

use crate::error::{Error, Result};
use crate::precision::{HpComplex, HpReal};
use crate::solver::RootSet;
use crate::zeta::Zeta;

/// Shared tolerance `2^-(precision/2)` for clamping and every check.
pub fn certificate_tolerance(precision: u32) -> HpReal {
    HpReal::pow2(-i64::from(precision / 2), precision)
}

/// Grid size used for the sampled root-exclusion scan.
pub const EXCLUSION_GRID_POINTS: usize = 1000;

/// `sqrt(1 - x²)` evaluated as `sqrt((1 - x)(1 + x))`.
pub fn unit_height(x: &HpReal) -> Result<HpReal> {
    let one = HpReal::one(x.precision());
    ((&one - x) * (&one + x)).sqrt()
}

fn clamp_to(x: &HpReal, lo: &HpReal, hi: &HpReal, tol: &HpReal) -> Result<HpReal> {
    if *x < lo - tol || *x > hi + tol {
        return Err(Error::DomainViolation {
            value: x.to_string(),
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    Ok(x.clone().clamp(lo.clone(), hi.clone()))
}

/// `φ(x) = a·x - b·sqrt(1 - x²)` on `[-a, 1]`.
pub fn phi(x: &HpReal, zeta: &Zeta) -> Result<HpReal> {
    let p = zeta.precision.max(x.precision());
    let x = x.with_precision(p);
    let tol = certificate_tolerance(p);
    let x = clamp_to(&x, &-&zeta.a, &HpReal::one(p), &tol)?;
    Ok(&zeta.a * &x - &zeta.b * &unit_height(&x)?)
}

/// `ψ(y) = a·y + b·sqrt(1 - y²)` on `[-1, a]`, the inverse of [`phi`].
pub fn psi(y: &HpReal, zeta: &Zeta) -> Result<HpReal> {
    let p = zeta.precision.max(y.precision());
    let y = y.with_precision(p);
    let tol = certificate_tolerance(p);
    let y = clamp_to(&y, &HpReal::from_i64(-1, p), &zeta.a, &tol)?;
    Ok(&zeta.a * &y + &zeta.b * &unit_height(&y)?)
}

/// `φ'(x) = a + b·x / sqrt(1 - x²)` on the open domain, staying at least
/// `2^-(precision/4)` away from the singularity at `x = 1`.
pub fn phi_derivative(x: &HpReal, zeta: &Zeta) -> Result<HpReal> {
    let p = zeta.precision.max(x.precision());
    let x = x.with_precision(p);
    let guard = &HpReal::one(p) - &HpReal::pow2(-i64::from(p / 4), p);
    let lo = -&zeta.a;
    if x <= lo || x.abs() > guard {
        return Err(Error::DomainViolation {
            value: x.to_string(),
            lo: lo.to_string(),
            hi: guard.to_string(),
        });
    }
    Ok(&zeta.a + &(&zeta.b * &x).checked_div(&unit_height(&x)?)?)
}

/// The descent `x_0 = 1 > x_1 > … > x_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Descent {
    pub xs: Vec<HpReal>,
    pub p: usize,
}

/// Iterates `x_k = φ(x_{k-1})` from `x_0 = 1` until the sequence leaves the
/// domain `[-a, 1]` of φ by more than the tolerance.
pub fn iterate_sequence(zeta: &Zeta, max_steps: usize) -> Result<Descent> {
    if zeta.n < 6 || zeta.n % 2 == 1 {
        return Err(Error::InvalidN(zeta.n));
    }
    let p = zeta.precision;
    let exit = &-&zeta.a - &certificate_tolerance(p);
    let mut xs = vec![HpReal::one(p)];
    loop {
        let last = xs.last().expect("nonempty");
        if *last < exit {
            break;
        }
        if xs.len() > max_steps {
            return Err(Error::StepLimit(max_steps));
        }
        let next = phi(last, zeta)?;
        if next >= *last {
            return Err(Error::NonDescent { step: xs.len() });
        }
        xs.push(next);
    }
    let p = xs.len() - 1;
    Ok(Descent { xs, p })
}

/// Outcome of each proof obligation recorded in a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CertificateChecks {
    pub strict_descent: bool,
    pub endpoint_minus_one: bool,
    pub p_equals_half_n: bool,
    pub partition_covers: bool,
    pub reconstruction_matches: bool,
    pub root_exclusion: bool,
}

impl CertificateChecks {
    pub fn entries(&self) -> [(&'static str, bool); 6] {
        [
            ("strict_descent", self.strict_descent),
            ("endpoint_minus_one", self.endpoint_minus_one),
            ("p_equals_half_n", self.p_equals_half_n),
            ("partition_covers", self.partition_covers),
            ("reconstruction_matches", self.reconstruction_matches),
            ("root_exclusion", self.root_exclusion),
        ]
    }

    pub fn all(&self) -> bool {
        self.entries().iter().all(|(_, ok)| *ok)
    }

    pub fn failed(&self) -> Vec<String> {
        self.entries()
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.to_string())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaCertificate {
    pub n: usize,
    pub zeta: Zeta,
    pub xs: Vec<HpReal>,
    pub p: usize,
    pub checks: CertificateChecks,
    pub tolerance: HpReal,
}

/// Smallest `|z^n - 1|` over a uniform interior grid of `[lo, hi]`, with
/// `z = x + i·sqrt(1 - x²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionScan {
    pub min_value: HpReal,
    pub argmin: HpReal,
    /// Grid spacing in `x`.
    pub spacing: HpReal,
}

pub fn exclusion_scan(n: usize, lo: &HpReal, hi: &HpReal, points: usize) -> Result<ExclusionScan> {
    let p = lo.precision().max(hi.precision());
    let spacing = (hi - lo).checked_div(&HpReal::from_u64(points as u64 + 1, p))?;
    let one = HpComplex::one(p);
    let mut best: Option<(HpReal, HpReal)> = None;
    for j in 1..=points {
        let x = lo + &(&spacing * &HpReal::from_u64(j as u64, p));
        let z = HpComplex::new(x.clone(), unit_height(&x)?);
        let v = (&z.pow(n as u64) - &one).abs();
        if best.as_ref().is_none_or(|(m, _)| v < *m) {
            best = Some((v, x));
        }
    }
    let (min_value, argmin) = best.ok_or(Error::InvalidN(points))?;
    Ok(ExclusionScan {
        min_value,
        argmin,
        spacing,
    })
}

/// The two outer intervals `(a, 1 - δ)` and `(-1 + δ, -a)` with
/// `δ = min(2^-20, (1 - a)/2)`.
pub fn outer_intervals(zeta: &Zeta) -> [(HpReal, HpReal); 2] {
    let p = zeta.precision;
    let one = HpReal::one(p);
    let gap = HpReal::pow2(-20, p).min((&one - &zeta.a).mul_pow2(-1));
    let hi = &one - &gap;
    [(zeta.a.clone(), hi.clone()), (-&hi, -&zeta.a)]
}

/// Sampled check that no `z_x` with `x` strictly inside an outer interval is
/// an n-th root of unity. Near a simple root `|z^n - 1|` grows like `n` times
/// the arc distance, so a grid point is flagged when its value drops below a
/// quarter of `n` times the grid spacing. A sample, not a proof.
fn exclusion_sampled(zeta: &Zeta) -> Result<bool> {
    for (lo, hi) in outer_intervals(zeta) {
        let scan = exclusion_scan(zeta.n, &lo, &hi, EXCLUSION_GRID_POINTS)?;
        let floor = (&scan.spacing * &HpReal::from_u64(zeta.n as u64, zeta.precision)).mul_pow2(-2);
        if scan.min_value <= floor {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs the descent for ζ and checks it against `set`, the solved roots of
/// `z^n = 1`. A failed check yields [`Error::CertificateFailure`], which
/// carries the full certificate.
pub fn build_certificate(zeta: &Zeta, set: &RootSet) -> Result<ZetaCertificate> {
    if set.n != zeta.n || !set.is_unity() {
        return Err(Error::NotARoot(zeta.n));
    }
    let n = zeta.n;
    let prec = zeta.precision;
    let tol = certificate_tolerance(prec);
    let descent = iterate_sequence(zeta, n.max(4))?;
    let xs = &descent.xs;
    let p = descent.p;
    let one = HpReal::one(prec);
    let minus_one = HpReal::from_i64(-1, prec);

    let strict_descent = xs[0].same_bits(&one)
        && xs.windows(2).all(|w| w[1] < w[0])
        && xs.get(1).is_some_and(|x1| x1.approx_eq(&zeta.a, &tol));

    let endpoint_minus_one = xs[p].approx_eq(&minus_one, &tol);
    let p_equals_half_n = 2 * p == n;

    // Every upper-hemisphere root sits at exactly one breakpoint x_k.
    let upper: Vec<&HpComplex> = set.roots.iter().filter(|w| w.im > -&tol).collect();
    let mut hit = vec![false; p + 1];
    let mut one_each = upper.len() == p + 1;
    for w in &upper {
        let ks: Vec<usize> = (0..=p).filter(|&k| w.re.approx_eq(&xs[k], &tol)).collect();
        match ks.as_slice() {
            [k] if !hit[*k] => hit[*k] = true,
            _ => one_each = false,
        }
    }
    let partition_covers = strict_descent && endpoint_minus_one && one_each && hit.iter().all(|h| *h);

    let zv = zeta.value();
    let mut powers = vec![HpComplex::one(prec)];
    for k in 1..=p {
        let next = &powers[k - 1] * &zv;
        powers.push(next);
    }
    let powers_track_xs = powers.iter().zip(xs).all(|(w, x)| w.re.approx_eq(x, &tol));
    let mut expected: Vec<HpComplex> = powers.clone();
    expected.extend(powers[1..p].iter().map(|w| w.conj()));
    let reconstruction_matches =
        powers_track_xs && expected.len() == n && matches_as_sets(&expected, &set.roots, &tol);

    let root_exclusion = exclusion_sampled(zeta)?;

    let checks = CertificateChecks {
        strict_descent,
        endpoint_minus_one,
        p_equals_half_n,
        partition_covers,
        reconstruction_matches,
        root_exclusion,
    };
    let certificate = ZetaCertificate {
        n,
        zeta: zeta.clone(),
        xs: descent.xs,
        p,
        checks,
        tolerance: tol,
    };
    if checks.all() {
        Ok(certificate)
    } else {
        Err(Error::CertificateFailure {
            failed: checks.failed(),
            certificate: Box::new(certificate),
        })
    }
}

/// Greedy one-to-one matching within `tol`.
pub fn matches_as_sets(left: &[HpComplex], right: &[HpComplex], tol: &HpReal) -> bool {
    if left.len() != right.len() {
        return false;
    }
    let tol2 = tol.square();
    let mut used = vec![false; right.len()];
    left.iter().all(|z| {
        let found = right
            .iter()
            .enumerate()
            .position(|(j, w)| !used[j] && (z - w).norm_sqr() <= tol2);
        match found {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}
