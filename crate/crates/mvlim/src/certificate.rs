//! Replayable verdict traces.
//!
//! A certificate is an ordered list of steps, each tagged with the device
//! that justified the move ("Thm1", "S3.Step4", ...) and an honesty status:
//! proved with exact arithmetic, checked numerically, or assumed. Every
//! conclusive verdict must carry at least one proved-exact step, and
//! assumptions are never silently dropped.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepStatus {
    #[serde(rename = "proved-exact")]
    ProvedExact,
    #[serde(rename = "checked-numerically")]
    CheckedNumerically,
    #[serde(rename = "assumed")]
    Assumed,
}

impl fmt::Display for StepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StepStatus::ProvedExact => "proved-exact",
            StepStatus::CheckedNumerically => "checked-numerically",
            StepStatus::Assumed => "assumed",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertStep {
    pub id: String,
    /// Which device justified the move, e.g. "Thm1" or "S3.Step5".
    pub tag: String,
    pub inputs: String,
    pub claim: String,
    pub status: StepStatus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub steps: Vec<CertStep>,
}

impl Certificate {
    pub fn new() -> Certificate {
        Certificate { steps: Vec::new() }
    }

    pub fn push(
        &mut self,
        tag: impl Into<String>,
        inputs: impl Into<String>,
        claim: impl Into<String>,
        status: StepStatus,
    ) {
        let id = format!("S{}", self.steps.len() + 1);
        self.steps.push(CertStep {
            id,
            tag: tag.into(),
            inputs: inputs.into(),
            claim: claim.into(),
            status,
        });
    }

    pub fn extend(&mut self, other: Certificate) {
        for mut s in other.steps {
            s.id = format!("S{}", self.steps.len() + 1);
            self.steps.push(s);
        }
    }

    pub fn has_proved_exact(&self) -> bool {
        self.steps
            .iter()
            .any(|s| s.status == StepStatus::ProvedExact)
    }

    pub fn assumptions(&self) -> impl Iterator<Item = &CertStep> {
        self.steps
            .iter()
            .filter(|s| s.status == StepStatus::Assumed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!(
                "{} [{}] ({}) {} -- inputs: {}\n",
                s.id, s.tag, s.status, s.claim, s.inputs
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_sequential_after_extend() {
        let mut a = Certificate::new();
        a.push("Thm1", "v=(1,0)", "transversal", StepStatus::ProvedExact);
        let mut b = Certificate::new();
        b.push("Thm1", "g", "nonvanishing", StepStatus::CheckedNumerically);
        a.extend(b);
        assert_eq!(a.steps[0].id, "S1");
        assert_eq!(a.steps[1].id, "S2");
        assert!(a.has_proved_exact());
        assert_eq!(a.assumptions().count(), 0);
    }
}
