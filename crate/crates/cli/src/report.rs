use std::collections::BTreeMap;
use std::path::Path;

use primroot_core::phi::ZetaCertificate;
use primroot_core::{Error, HpComplex, HpReal, RootSet, Zeta};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Every number goes over the wire as a decimal string that parses back to
/// the same bits at the reported precision.
pub fn num(x: &HpReal) -> String {
    x.to_decimal_string()
}

#[derive(Debug, Serialize)]
pub struct Complex {
    pub re: String,
    pub im: String,
}

impl From<&HpComplex> for Complex {
    fn from(z: &HpComplex) -> Complex {
        Complex {
            re: num(&z.re),
            im: num(&z.im),
        }
    }
}

pub fn complexes(zs: &[HpComplex]) -> Vec<Complex> {
    zs.iter().map(Complex::from).collect()
}

#[derive(Debug, Serialize)]
pub struct RootsReport {
    pub schema_version: &'static str,
    pub n: usize,
    pub precision: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Complex>,
    pub residual_bound: String,
    pub roots: Vec<Complex>,
}

impl RootsReport {
    pub fn new(set: &RootSet, c: Option<&HpComplex>) -> RootsReport {
        RootsReport {
            schema_version: SCHEMA_VERSION,
            n: set.n,
            precision: set.precision,
            c: c.map(Complex::from),
            residual_bound: num(&set.residual_bound),
            roots: complexes(&set.roots),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CertificateReport {
    pub p: usize,
    pub xs: Vec<String>,
    pub checks: BTreeMap<&'static str, bool>,
    pub tolerance: String,
}

impl From<&ZetaCertificate> for CertificateReport {
    fn from(cert: &ZetaCertificate) -> CertificateReport {
        CertificateReport {
            p: cert.p,
            xs: cert.xs.iter().map(num).collect(),
            checks: cert.checks.entries().into_iter().collect(),
            tolerance: num(&cert.tolerance),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ZetaReport {
    pub schema_version: &'static str,
    pub n: usize,
    pub precision: u32,
    pub a: String,
    pub b: String,
    pub r: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
}

impl ZetaReport {
    pub fn new(zeta: &Zeta, certificate: Option<CertificateReport>) -> ZetaReport {
        ZetaReport {
            schema_version: SCHEMA_VERSION,
            n: zeta.n,
            precision: zeta.precision,
            a: num(&zeta.a),
            b: num(&zeta.b),
            r: num(&zeta.r),
            certificate,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: &'static str,
    pub n: usize,
    pub precision: u32,
    pub a: String,
    pub b: String,
    pub r: String,
    pub residual_bound: String,
    pub certificate: CertificateReport,
    pub trig_deviation: String,
    pub checks: BTreeMap<&'static str, bool>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct OrderReport {
    pub schema_version: &'static str,
    pub n: usize,
    pub m: u64,
    pub precision: u32,
    pub order: usize,
    pub is_primitive: bool,
    pub gcd: usize,
}

#[derive(Debug, Serialize)]
pub struct DftReport {
    pub schema_version: &'static str,
    pub n: usize,
    pub precision: u32,
    pub values: Vec<Complex>,
    pub transform: Vec<Complex>,
}

/// Why a command did not succeed, and which exit code that maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    pub failed_checks: Vec<String>,
    pub domain: bool,
}

impl Failure {
    pub fn io(path: &Path, err: &std::io::Error) -> Failure {
        Failure {
            kind: "Io",
            message: format!("{}: {err}", path.display()),
            failed_checks: Vec::new(),
            domain: true,
        }
    }

    pub fn input(message: String) -> Failure {
        Failure {
            kind: "Input",
            message,
            failed_checks: Vec::new(),
            domain: true,
        }
    }

    pub fn checks(failed: Vec<String>) -> Failure {
        Failure {
            kind: "CertificateFailure",
            message: format!("checks failed: {}", failed.join(", ")),
            failed_checks: failed,
            domain: false,
        }
    }

    pub fn payload(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "error": {
                "kind": self.kind,
                "message": self.message,
                "failed_checks": self.failed_checks,
            }
        })
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        let failed_checks = match &err {
            Error::CertificateFailure { failed, .. } => failed.clone(),
            _ => Vec::new(),
        };
        Failure {
            kind: kind(&err),
            message: err.to_string(),
            failed_checks,
            domain: err.is_domain_error(),
        }
    }
}

fn kind(err: &Error) -> &'static str {
    match err {
        Error::DivisionByZero => "DivisionByZero",
        Error::NegativeSqrt => "NegativeSqrt",
        Error::InvalidN(_) => "InvalidN",
        Error::InvalidPrecision(_) => "InvalidPrecision",
        Error::ZeroTarget => "ZeroTarget",
        Error::NoConvergence { .. } => "NoConvergence",
        Error::AmbiguousMinimizer => "AmbiguousMinimizer",
        Error::NoUpperRoot => "NoUpperRoot",
        Error::NotInFirstQuadrant { .. } => "NotInFirstQuadrant",
        Error::DomainViolation { .. } => "DomainViolation",
        Error::NonDescent { .. } => "NonDescent",
        Error::StepLimit(_) => "StepLimit",
        Error::CertificateFailure { .. } => "CertificateFailure",
        Error::NotARoot(_) => "NotARoot",
        Error::NotPrime(_) => "NotPrime",
        Error::Parse(_) => "Parse",
    }
}

/// `key: value` lines, with nested keys joined by dots and list entries
/// indexed, in the same order as the JSON form.
pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    flatten(value, "", &mut out);
    out
}

fn flatten(value: &Value, prefix: &str, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(v, &key(k), out)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(v, &format!("{prefix}[{i}]"), out)),
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}
