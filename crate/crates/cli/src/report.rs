use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check: passes when `measured ≤ tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub tolerance: f64,
    pub reference: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        Self {
            command: command.to_owned(),
            seed,
            checks: Vec::new(),
            summary: Summary { total: 0, passed: 0, failed: 0 },
            data: None,
        }
    }

    /// Records `measured ≤ tolerance`. NaN always fails.
    pub fn check(&mut self, name: &str, measured: f64, tolerance: f64, reference: &str) -> bool {
        let pass = measured <= tolerance;
        self.checks.push(CheckRecord {
            name: name.to_owned(),
            status: if pass { Status::Pass } else { Status::Fail },
            measured,
            tolerance,
            reference: reference.to_owned(),
        });
        self.summary.total += 1;
        if pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        pass
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }
}

/// Named tolerances with defaults, overridable from the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances(BTreeMap<&'static str, f64>);

impl Tolerances {
    pub fn new(defaults: &[(&'static str, f64)]) -> Self {
        Self(defaults.iter().copied().collect())
    }

    pub fn get(&self, name: &str) -> f64 {
        *self.0.get(name).unwrap_or_else(|| panic!("tolerance `{name}` has no default"))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.keys().copied()
    }

    pub fn apply(&mut self, overrides: &[(String, f64)]) -> Result<(), CliError> {
        for (name, value) in overrides {
            match self.0.get_mut(name.as_str()) {
                Some(slot) => *slot = *value,
                None => {
                    let known: Vec<_> = self.names().collect();
                    return Err(CliError::Usage(format!("unknown tolerance `{name}` (known: {})", known.join(", "))));
                }
            }
        }
        Ok(())
    }
}

/// Parses `NAME=VALUE`.
pub fn parse_tolerance(arg: &str) -> Result<(String, f64), String> {
    let (name, value) = arg.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{arg}`"))?;
    let value: f64 = value.trim().parse().map_err(|e| format!("bad value in `{arg}`: {e}"))?;
    if !(value.is_finite() && value >= 0.0) {
        return Err(format!("tolerance must be finite and non-negative, got `{arg}`"));
    }
    Ok((name.trim().to_owned(), value))
}
