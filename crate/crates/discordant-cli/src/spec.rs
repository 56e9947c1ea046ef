//! Experiment spec parsing and validation.
//!
//! One experiment per JSON file. The top level carries `command`, a
//! command-specific `params` record, and an optional `output` path prefix.
//! Validation is two-phase: a structural pass that collects every
//! violation with its JSON path, then a strict typed parse that rejects
//! unknown fields.

use serde::Deserialize;
use std::fmt;

#[derive(Debug)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug)]
pub enum SpecError {
    /// Malformed JSON, with serde's line/column diagnostics.
    Parse(serde_json::Error),
    /// Structurally well-formed JSON violating the schema.
    Validation(Vec<Violation>),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Parse(e) => write!(f, "JSON parse error: {e}"),
            SpecError::Validation(violations) => {
                writeln!(f, "spec validation failed with {} violation(s):", violations.len())?;
                for v in violations {
                    writeln!(f, "  - {v}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for SpecError {}

pub const COMMANDS: &[&str] = &[
    "density", "detect", "witness", "sl2", "symbolic", "rotate", "ena", "ie",
];

/// A validated experiment spec.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub command: String,
    pub params: serde_json::Value,
    #[serde(default)]
    pub output: Option<String>,
}

/// Parse and validate an experiment spec, reporting either the JSON
/// error (with position) or the full list of schema violations.
pub fn parse_spec(text: &str) -> Result<ExperimentSpec, SpecError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(SpecError::Parse)?;
    let mut violations = Vec::new();

    let obj = match value.as_object() {
        Some(o) => o,
        None => {
            return Err(SpecError::Validation(vec![Violation {
                path: "$".into(),
                message: "spec must be a JSON object".into(),
            }]))
        }
    };
    for key in obj.keys() {
        if !["command", "params", "output"].contains(&key.as_str()) {
            violations.push(Violation {
                path: format!("$.{key}"),
                message: "unknown field".into(),
            });
        }
    }
    match obj.get("command") {
        None => violations.push(Violation {
            path: "$.command".into(),
            message: "missing required field".into(),
        }),
        Some(serde_json::Value::String(cmd)) => {
            if !COMMANDS.contains(&cmd.as_str()) {
                violations.push(Violation {
                    path: "$.command".into(),
                    message: format!("unknown command '{cmd}' (expected one of {COMMANDS:?})"),
                });
            }
        }
        Some(_) => violations.push(Violation {
            path: "$.command".into(),
            message: "must be a string".into(),
        }),
    }
    match obj.get("params") {
        None => violations.push(Violation {
            path: "$.params".into(),
            message: "missing required field".into(),
        }),
        Some(v) if !v.is_object() => violations.push(Violation {
            path: "$.params".into(),
            message: "must be an object".into(),
        }),
        _ => {}
    }
    if let Some(out) = obj.get("output") {
        if !out.is_string() {
            violations.push(Violation {
                path: "$.output".into(),
                message: "must be a string".into(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(SpecError::Validation(violations));
    }
    let spec: ExperimentSpec =
        serde_json::from_value(value).expect("structure checked above");
    Ok(spec)
}

/// Typed parse of a command's params with unknown-field rejection; errors
/// are rendered as one violation rooted at $.params.
pub fn parse_params<T: serde::de::DeserializeOwned>(
    params: &serde_json::Value,
) -> Result<T, SpecError> {
    serde_json::from_value(params.clone()).map_err(|e| {
        SpecError::Validation(vec![Violation {
            path: "$.params".into(),
            message: e.to_string(),
        }])
    })
}

/// Named subsets of ℕ/ℤ/ℤᵈ/H₃(ℤ) buildable from a spec file.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Squarefree,
    Bfree {
        moduli: Vec<i64>,
    },
    Bufree {
        moduli: Vec<i64>,
        exponents: Vec<u32>,
    },
    Kfree {
        k: u32,
        primes: usize,
    },
    Evens,
    Multiples {
        m: i64,
    },
    Straus {
        #[serde(default)]
        moduli: Option<Vec<i64>>,
        #[serde(default)]
        pow2: Option<usize>,
        #[serde(default = "default_variant")]
        variant: String,
    },
    CoprimeTuples {
        dim: usize,
        prime_limit: i64,
    },
    HeisenbergBfree {
        moduli: Vec<i64>,
    },
    Ar {
        t: f64,
    },
    PseudorandomBits {
        seed: u64,
    },
}

fn default_variant() -> String {
    "single".into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_spec_parses() {
        let spec = parse_spec(
            r#"{"command":"density","params":{"set":{"kind":"squarefree"},"windows":[1000,10000,100000]}}"#,
        )
        .unwrap();
        assert_eq!(spec.command, "density");
        assert!(spec.output.is_none());
    }

    #[test]
    fn unknown_command_is_named() {
        let err = parse_spec(r#"{"command":"nope","params":{}}"#).unwrap_err();
        match err {
            SpecError::Validation(v) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].path, "$.command");
                assert!(v[0].message.contains("nope"));
            }
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn all_violations_are_collected() {
        let err = parse_spec(r#"{"comand":"density","params":3,"extra":1}"#).unwrap_err();
        match err {
            SpecError::Validation(v) => {
                // unknown 'comand', unknown 'extra', missing 'command',
                // params not an object
                assert_eq!(v.len(), 4, "{v:?}");
            }
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_spec("{\"command\":").unwrap_err();
        match err {
            SpecError::Parse(e) => {
                assert!(e.line() >= 1);
                assert!(e.column() >= 1);
            }
            other => panic!("expected parse error, got {other}"),
        }
    }
}
