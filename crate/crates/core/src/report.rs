//! Experiment reports and their JSON/CSV encodings.
//!
//! JSON objects are written with sorted keys and polynomials in the wire
//! format, so a fixed configuration and seed always produce the same bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::ExperimentConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceVerdict {
    pub place: String,
    pub status: String,
    /// Witness for a solvable place, in the wire format.
    #[serde(default)]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Consistent,
    Vacuous,
    Untested,
    Candidate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: u64,
    /// Run seed; the trial generator is this seed forked by `index`.
    pub seed: u64,
    pub a: String,
    pub m: String,
    #[serde(default)]
    pub x0: Option<String>,
    pub verdicts: Vec<PlaceVerdict>,
    pub locally_solvable: bool,
    pub global_solutions: Vec<String>,
    #[serde(default)]
    pub degree_lambda: Option<u64>,
    #[serde(default)]
    pub degree_l: Option<u64>,
    #[serde(default)]
    pub splits_over_lambda: Option<bool>,
    #[serde(default)]
    pub sigma_size: Option<u64>,
    #[serde(default)]
    pub sigma_cap_m_trivial: Option<bool>,
    #[serde(default)]
    pub reconstruction: Option<String>,
    #[serde(default)]
    pub reconstruction_agrees: Option<bool>,
    /// Verdicts at degree `D + 2` for a trial that would otherwise be a candidate.
    #[serde(default)]
    pub recheck: Option<Vec<PlaceVerdict>>,
    pub classification: Classification,
    pub flags: Vec<String>,
    #[serde(default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: u64,
    pub locally_solvable_everywhere: u64,
    pub globally_solvable: u64,
    pub consistent: u64,
    pub vacuous: u64,
    pub untested: u64,
    /// Indices of counterexample candidates.
    pub candidates: Vec<u64>,
    /// Indices of trials carrying any flag.
    pub flagged: Vec<u64>,
    /// `1 − 1/(φ(ā)·q^{deg ā})` as an exact fraction.
    pub density_threshold: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GWReport {
    pub config: ExperimentConfig,
    pub places: Vec<String>,
    pub trials: Vec<TrialRecord>,
    pub summary: Summary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

pub const CSV_COLUMNS: [&str; 14] = [
    "index",
    "seed",
    "a",
    "m",
    "classification",
    "locally_solvable",
    "global_count",
    "degree_lambda",
    "degree_l",
    "splits_over_lambda",
    "sigma_size",
    "sigma_cap_m_trivial",
    "reconstruction_agrees",
    "flags",
];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

impl GWReport {
    /// 0 when clean, 2 when a candidate is present, otherwise 3 when some
    /// trial is untested.
    pub fn exit_code(&self) -> i32 {
        if !self.summary.candidates.is_empty() {
            2
        } else if self.summary.untested > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<GWReport> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record(CSV_COLUMNS).unwrap();
        for t in &self.trials {
            let class = serde_json::to_value(t.classification).unwrap();
            w.write_record([
                t.index.to_string(),
                t.seed.to_string(),
                t.a.clone(),
                t.m.clone(),
                class.as_str().unwrap().to_string(),
                t.locally_solvable.to_string(),
                t.global_solutions.len().to_string(),
                opt(&t.degree_lambda),
                opt(&t.degree_l),
                opt(&t.splits_over_lambda),
                opt(&t.sigma_size),
                opt(&t.sigma_cap_m_trivial),
                opt(&t.reconstruction_agrees),
                t.flags.join(";"),
            ])
            .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// Writes the report to `path`.
pub fn emit_report(report: &GWReport, format: Format, path: &Path) -> Result<()> {
    std::fs::write(path, report.render(format)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

pub fn parse_report(path: &Path) -> Result<GWReport> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    GWReport::from_json(&s)
}
