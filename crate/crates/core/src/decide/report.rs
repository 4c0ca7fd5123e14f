//! Versioned, self-contained run report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{verify_certificate, CertError, Certificate, DecideStats, Decision, UnknownReport, Verdict};
use crate::frontend::{parse_input, EquationSystem};
use crate::groups::{verify_witness, Assignment, ElementRecord, GroupElement};

pub const REPORT_FORMAT: &str = "metaeq-report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemInfo {
    pub hash: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub element: ElementRecord,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub format: String,
    pub tool: ToolInfo,
    pub system: SystemInfo,
    pub verdict: VerdictKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<BTreeMap<String, WitnessEntry>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unknown: Option<UnknownReport>,
    pub stats: DecideStats,
    pub timing: Timing,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported report format `{0}`")]
    Format(String),
    #[error("embedded system does not parse: {0}")]
    System(String),
    #[error("system hash mismatch")]
    Hash,
    #[error("report carries no {0}")]
    Missing(&'static str),
    #[error("witness is invalid: {0}")]
    Witness(String),
    #[error("certificate is invalid: {0}")]
    Certificate(#[from] CertError),
    #[error("an unknown verdict carries nothing to verify")]
    Unknown,
}

impl Report {
    pub fn new(system: &EquationSystem, decision: &Decision, elapsed_ms: u64) -> Self {
        let mut report = Report {
            format: REPORT_FORMAT.into(),
            tool: ToolInfo { name: "metaeq".into(), version: env!("CARGO_PKG_VERSION").into() },
            system: SystemInfo { hash: system.hash(), text: system.render() },
            verdict: decision.verdict.kind(),
            witness: None,
            certificate: None,
            unknown: None,
            stats: decision.stats.clone(),
            timing: Timing { elapsed_ms },
        };
        match &decision.verdict {
            Verdict::Sat(asg) => {
                report.witness = Some(
                    asg.iter()
                        .map(|(v, g)| (v.clone(), WitnessEntry { element: g.to_record(), text: g.to_string() }))
                        .collect(),
                )
            }
            Verdict::Unsat(cert) => report.certificate = Some(cert.clone()),
            Verdict::Unknown(u) => report.unknown = Some(u.clone()),
        }
        report
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    /// JSON with the timing fields zeroed, for reproducibility checks.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        r.timing.elapsed_ms = 0;
        r.to_json()
    }
}

/// Replays the witness or certificate of a report against its own system.
pub fn verify_report(report: &Report) -> Result<VerdictKind, ReportError> {
    if report.format != REPORT_FORMAT {
        return Err(ReportError::Format(report.format.clone()));
    }
    let system = parse_input(&report.system.text).map_err(|e| ReportError::System(e.to_string()))?;
    if system.hash() != report.system.hash {
        return Err(ReportError::Hash);
    }
    match report.verdict {
        VerdictKind::Sat => {
            let entries = report.witness.as_ref().ok_or(ReportError::Missing("witness"))?;
            let mut asg = Assignment::new();
            for (v, e) in entries {
                let g = GroupElement::from_record(&e.element, &system.spec)
                    .map_err(|err| ReportError::Witness(err.to_string()))?;
                asg.insert(v.clone(), g);
            }
            match verify_witness(&system, &asg) {
                Ok(true) => Ok(VerdictKind::Sat),
                Ok(false) => Err(ReportError::Witness("equations do not hold".into())),
                Err(err) => Err(ReportError::Witness(err.to_string())),
            }
        }
        VerdictKind::Unsat => {
            let cert = report.certificate.as_ref().ok_or(ReportError::Missing("certificate"))?;
            verify_certificate(cert, &system)?;
            Ok(VerdictKind::Unsat)
        }
        VerdictKind::Unknown => Err(ReportError::Unknown),
    }
}
