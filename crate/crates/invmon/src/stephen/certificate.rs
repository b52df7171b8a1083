//! Outcomes of bounded searches, with the evidence that backs them.

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Positive,
    Negative,
    Unknown,
}

impl Verdict {
    /// Process exit code used by the command line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 1,
            Verdict::Unknown => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Positive => "positive",
            Verdict::Negative => "negative",
            Verdict::Unknown => "unknown",
        }
    }
}

/// A word read along a path of a session graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub word: String,
    pub vertices: Vec<usize>,
}

/// Images under a relator-checked homomorphism that rule the query out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageWitness {
    pub target: String,
    pub images: Vec<(String, String)>,
}

/// One step of a lazy exploration: the letter read and the vertex reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub letter: String,
    pub vertex: String,
}

/// A failed reading in a witness graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefutationTrace {
    pub word: String,
    pub steps: Vec<TraceStep>,
    /// The letter with no transition, if the reading got stuck.
    pub missing: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthBound {
    pub rounds: usize,
    pub vertices: usize,
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Paths(Vec<PathWitness>),
    Image(ImageWitness),
    Refutation(RefutationTrace),
    DepthBound(DepthBound),
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::Paths(_) => "paths",
            Evidence::Image(_) => "homomorphic_image",
            Evidence::Refutation(_) => "witness_refutation",
            Evidence::DepthBound(_) => "depth_bound",
        }
    }

    fn to_value(&self) -> Value {
        match self {
            Evidence::Paths(p) => json!(p),
            Evidence::Image(i) => json!(i),
            Evidence::Refutation(r) => json!(r),
            Evidence::DepthBound(d) => json!(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub depth: usize,
    pub evidence: Evidence,
}

impl Certificate {
    pub fn positive(depth: usize, paths: Vec<PathWitness>) -> Certificate {
        Certificate { verdict: Verdict::Positive, depth, evidence: Evidence::Paths(paths) }
    }

    pub fn negative(depth: usize, evidence: Evidence) -> Certificate {
        Certificate { verdict: Verdict::Negative, depth, evidence }
    }

    pub fn unknown(bound: DepthBound) -> Certificate {
        Certificate { verdict: Verdict::Unknown, depth: bound.rounds, evidence: Evidence::DepthBound(bound) }
    }

    pub fn is_positive(&self) -> bool {
        self.verdict == Verdict::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.verdict == Verdict::Negative
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict,
            "depth": self.depth,
            "evidence_kind": self.evidence.kind(),
            "evidence": self.evidence.to_value(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let c = Certificate::positive(2, vec![PathWitness { word: "b".into(), vertices: vec![0, 1] }]);
        let v = c.to_json();
        assert_eq!(v["verdict"], "positive");
        assert_eq!(v["depth"], 2);
        assert_eq!(v["evidence_kind"], "paths");
        assert_eq!(v["evidence"][0]["vertices"], json!([0, 1]));

        let c = Certificate::unknown(DepthBound { rounds: 4, vertices: 9, saturated: false });
        assert_eq!(c.to_json()["evidence"]["saturated"], false);
        assert_eq!(c.verdict.exit_code(), 2);
    }
}
