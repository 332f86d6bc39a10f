use std::collections::BTreeMap;
use std::path::Path;

use primroot_core::oracle::{agreement_tolerance, zeta_deviation};
use primroot_core::phi::{certificate_tolerance, ZetaCertificate};
use primroot_core::primitivity::{gcd, order_tolerance};
use primroot_core::zeta::radius_identity_check;
use primroot_core::{
    build_certificate, construct_zeta, multiplicative_order, roots_of, select_zeta, solve_unity,
    twiddle_table, Error, HpComplex, HpReal,
};
use serde::Deserialize;
use serde_json::Value;

use crate::report::{
    complexes, num, CertificateReport, DftReport, Failure, OrderReport, RootsReport, VerifyReport,
    ZetaReport, SCHEMA_VERSION,
};
use crate::Command;

/// A payload to print, plus a failure to report after printing it.
pub struct Done {
    pub payload: Value,
    pub failure: Option<Failure>,
}

impl Done {
    fn ok(payload: impl serde::Serialize) -> Result<Done, Failure> {
        Ok(Done {
            payload: serde_json::to_value(payload).expect("reports serialize"),
            failure: None,
        })
    }
}

pub fn run(command: &Command, precision: u32) -> Result<Done, Failure> {
    match command {
        Command::Roots { n } => Done::ok(RootsReport::new(&solve_unity(*n, precision)?, None)),
        Command::Zeta { n, certificate } => zeta(*n, *certificate, precision),
        Command::Verify { n } => verify(*n, precision),
        Command::Order { n, m } => order(*n, *m, precision),
        Command::RootsOf { n, c_re, c_im } => {
            let c = HpComplex::new(
                HpReal::parse_decimal(c_re, precision)?,
                HpReal::parse_decimal(c_im, precision)?,
            );
            Done::ok(RootsReport::new(&roots_of(&c, *n, precision)?, Some(&c)))
        }
        Command::Dft { n, input } => dft(*n, input, precision),
    }
}

fn require_certifiable(n: usize) -> Result<(), Failure> {
    if n < 6 || n % 2 == 1 {
        return Err(Error::InvalidN(n).into());
    }
    Ok(())
}

fn zeta(n: usize, with_certificate: bool, precision: u32) -> Result<Done, Failure> {
    if !with_certificate {
        return Done::ok(ZetaReport::new(&construct_zeta(n, precision)?, None));
    }
    require_certifiable(n)?;
    let set = solve_unity(n, precision)?;
    let zeta = select_zeta(&set)?;
    let cert = build_certificate(&zeta, &set)?;
    Done::ok(ZetaReport::new(&zeta, Some(CertificateReport::from(&cert))))
}

fn verify(n: usize, precision: u32) -> Result<Done, Failure> {
    require_certifiable(n)?;
    let set = solve_unity(n, precision)?;
    let zeta = select_zeta(&set)?;
    let cert: ZetaCertificate = match build_certificate(&zeta, &set) {
        Ok(cert) => cert,
        Err(Error::CertificateFailure { certificate, .. }) => *certificate,
        Err(other) => return Err(other.into()),
    };
    let deviation = zeta_deviation(n, precision)?;

    let mut checks: BTreeMap<&'static str, bool> = cert.checks.entries().into_iter().collect();
    checks.insert("solver_residual", set.residual_bound <= certificate_tolerance(precision));
    checks.insert("radius_identity", radius_identity_check(&zeta));
    checks.insert("trig_agreement", deviation < agreement_tolerance(precision));
    let failed: Vec<String> = checks
        .iter()
        .filter(|(_, ok)| !**ok)
        .map(|(name, _)| name.to_string())
        .collect();

    let report = VerifyReport {
        schema_version: SCHEMA_VERSION,
        n,
        precision,
        a: num(&zeta.a),
        b: num(&zeta.b),
        r: num(&zeta.r),
        residual_bound: num(&set.residual_bound),
        certificate: CertificateReport::from(&cert),
        trig_deviation: num(&deviation),
        checks,
        passed: failed.is_empty(),
    };
    let mut done = Done::ok(report)?;
    if !failed.is_empty() {
        done.failure = Some(Failure::checks(failed));
    }
    Ok(done)
}

fn order(n: usize, m: u64, precision: u32) -> Result<Done, Failure> {
    let w = construct_zeta(n, precision)?.value().pow(m);
    let report = multiplicative_order(&w, n, &order_tolerance(precision))?;
    let m_mod = usize::try_from(m % n as u64).expect("below n");
    Done::ok(OrderReport {
        schema_version: SCHEMA_VERSION,
        n,
        m,
        precision,
        order: report.order,
        is_primitive: report.is_primitive,
        gcd: gcd(m_mod, n),
    })
}

/// A number in the input file: a decimal string, or a plain JSON number.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Number {
    Text(String),
    Plain(serde_json::Number),
}

impl Number {
    fn parse(&self, precision: u32) -> Result<HpReal, Error> {
        match self {
            Number::Text(s) => HpReal::parse_decimal(s, precision),
            Number::Plain(x) => HpReal::parse_decimal(&x.to_string(), precision),
        }
    }
}

#[derive(Debug, Deserialize)]
struct InputValue {
    re: Number,
    im: Number,
}

#[derive(Debug, Deserialize)]
struct DftInput {
    n: usize,
    values: Vec<InputValue>,
}

fn dft(n: usize, path: &Path, precision: u32) -> Result<Done, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, &e))?;
    let input: DftInput = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    if input.n != n || input.values.len() != n {
        return Err(Failure::input(format!(
            "--n {n} does not match the file (n = {}, {} values)",
            input.n,
            input.values.len()
        )));
    }
    let values = input
        .values
        .iter()
        .map(|v| Ok(HpComplex::new(v.re.parse(precision)?, v.im.parse(precision)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let transform = twiddle_table(n, precision)?.forward_dft(&values)?;
    Done::ok(DftReport {
        schema_version: SCHEMA_VERSION,
        n,
        precision,
        values: complexes(&values),
        transform: complexes(&transform),
    })
}
