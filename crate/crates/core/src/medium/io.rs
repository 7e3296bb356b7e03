use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FaultSpec, GateKind, GateSpec, Medium};
use crate::error::{Error, Result};
use crate::qmath::{ComplexMatrix, Observable};

/// A medium together with its collapse basis, as stored in circuit JSON files.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitDocument {
    pub medium: Medium,
    pub fault: FaultSpec,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitJson {
    n: usize,
    eta: f64,
    lifetimes: Vec<[usize; 2]>,
    result_qubits: Vec<usize>,
    fault: FaultJson,
    gates: Vec<GateJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaultJson {
    observable: ComplexMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateJson {
    kind: GateKind,
    time: usize,
    targets: Vec<usize>,
    matrix: ComplexMatrix,
}

impl CircuitDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CircuitJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let observable = Observable::new(raw.fault.observable)
            .map_err(|e| Error::Format(format!("field `fault.observable`: {e}")))?;
        let fault = FaultSpec::new(observable)
            .map_err(|e| Error::Format(format!("field `fault.observable`: {e}")))?;
        let medium = Medium {
            n: raw.n,
            eta: raw.eta,
            lifetimes: raw.lifetimes.into_iter().map(|[a, b]| (a, b)).collect(),
            result_qubits: raw.result_qubits,
            gates: raw
                .gates
                .into_iter()
                .map(|g| GateSpec::new(g.kind, g.matrix, g.targets, g.time))
                .collect(),
        };
        Ok(Self { medium, fault })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let m = &self.medium;
        let raw = CircuitJson {
            n: m.n,
            eta: m.eta,
            lifetimes: m.lifetimes.iter().map(|&(a, b)| [a, b]).collect(),
            result_qubits: m.result_qubits.clone(),
            fault: FaultJson {
                observable: self.fault.observable.matrix().clone(),
            },
            gates: m
                .gates
                .iter()
                .map(|g| GateJson {
                    kind: g.kind(),
                    time: g.time(),
                    targets: g.targets().to_vec(),
                    matrix: g.matrix().clone(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("circuit serializes");
        s.push('\n');
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_location_of_syntax_errors() {
        let err = CircuitDocument::from_json("{\n  \"n\": 1,\n  \"eta\": oops }").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn reports_missing_fields() {
        let err = CircuitDocument::from_json(r#"{"n": 1, "eta": 0.1}"#).unwrap_err();
        assert!(err.to_string().contains("lifetimes"), "{err}");
    }

    #[test]
    fn rejects_degenerate_fault() {
        let text = r#"{"n":1,"eta":0.1,"lifetimes":[[0,0]],"result_qubits":[0],
            "fault":{"observable":[[[1,0],[0,0]],[[0,0],[1,0]]]},"gates":[]}"#;
        let err = CircuitDocument::from_json(text).unwrap_err();
        assert!(err.to_string().contains("fault.observable"), "{err}");
    }
}
