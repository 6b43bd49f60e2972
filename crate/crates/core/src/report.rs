use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one verifier run on one instance. A failing report always
/// carries a certificate: the unmatched facet or violated condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub instance: Value,
    pub verdict: Verdict,
    pub matched_facets: usize,
    pub certificate: Option<Value>,
}

impl VerificationReport {
    pub fn pass(theorem: &str, instance: Value, matched_facets: usize) -> Self {
        VerificationReport {
            theorem: theorem.to_owned(),
            instance,
            verdict: Verdict::Pass,
            matched_facets,
            certificate: None,
        }
    }

    pub fn fail(theorem: &str, instance: Value, matched_facets: usize, certificate: Value) -> Self {
        VerificationReport {
            theorem: theorem.to_owned(),
            instance,
            verdict: Verdict::Fail,
            matched_facets,
            certificate: Some(certificate),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
