//! Flag values merged from the command line, an optional key=value file and
//! defaults, in that order of precedence.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;

#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Carlitz index a, in the wire format.
    #[arg(long)]
    pub a: Option<String>,
    /// Right-hand side m; several values may be separated by ';'.
    #[arg(long)]
    pub m: Option<String>,
    /// Evaluation point for `eval`.
    #[arg(long)]
    pub x: Option<String>,
    /// A single place (monic irreducible or `inf`) instead of all places up to the degree bound.
    #[arg(long)]
    pub place: Option<String>,
    #[arg(long)]
    pub max_place_degree: Option<usize>,
    #[arg(long)]
    pub include_infinity: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub precision_cap: Option<u32>,
    #[arg(long)]
    pub degree_cap: Option<usize>,
    /// a | b | free
    #[arg(long)]
    pub scenario: Option<String>,
    #[arg(long)]
    pub trials: Option<u64>,
    /// forward | random; an explicit --m overrides both.
    #[arg(long)]
    pub m_source: Option<String>,
    #[arg(long)]
    pub sample_degree: Option<usize>,
    /// Add the wall-clock runtime to the summary (breaks byte-stability).
    #[arg(long)]
    pub with_timing: bool,
    /// json | csv
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key=value file with the same keys as the long flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

const KEYS: [&str; 19] = [
    "p",
    "r",
    "n",
    "a",
    "m",
    "x",
    "place",
    "max-place-degree",
    "include-infinity",
    "seed",
    "precision-cap",
    "degree-cap",
    "scenario",
    "trials",
    "m-source",
    "sample-degree",
    "with-timing",
    "format",
    "out",
];

pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("{}:{}: expected key=value", path.display(), i + 1);
        };
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            bail!("{}:{}: unknown key {key:?}", path.display(), i + 1);
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => bail!("{key}: expected a boolean, got {v:?}"),
    }
}

impl Flags {
    /// Fills every unset flag from the config file named by `--config`.
    pub fn merged(mut self) -> Result<Flags> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let cfg = read_config(&path)?;
        fn fill<T: std::str::FromStr>(
            slot: &mut Option<T>,
            cfg: &BTreeMap<String, String>,
            key: &str,
        ) -> Result<()>
        where
            T::Err: std::fmt::Display,
        {
            if slot.is_none() {
                if let Some(v) = cfg.get(key) {
                    *slot = Some(v.parse().map_err(|e| anyhow::anyhow!("{key}: {e}"))?);
                }
            }
            Ok(())
        }
        fill(&mut self.p, &cfg, "p")?;
        fill(&mut self.r, &cfg, "r")?;
        fill(&mut self.n, &cfg, "n")?;
        fill(&mut self.a, &cfg, "a")?;
        fill(&mut self.m, &cfg, "m")?;
        fill(&mut self.x, &cfg, "x")?;
        fill(&mut self.place, &cfg, "place")?;
        fill(&mut self.max_place_degree, &cfg, "max-place-degree")?;
        fill(&mut self.seed, &cfg, "seed")?;
        fill(&mut self.precision_cap, &cfg, "precision-cap")?;
        fill(&mut self.degree_cap, &cfg, "degree-cap")?;
        fill(&mut self.scenario, &cfg, "scenario")?;
        fill(&mut self.trials, &cfg, "trials")?;
        fill(&mut self.m_source, &cfg, "m-source")?;
        fill(&mut self.sample_degree, &cfg, "sample-degree")?;
        fill(&mut self.format, &cfg, "format")?;
        fill(&mut self.out, &cfg, "out")?;
        if !self.include_infinity {
            if let Some(v) = cfg.get("include-infinity") {
                self.include_infinity = parse_bool("include-infinity", v)?;
            }
        }
        if !self.with_timing {
            if let Some(v) = cfg.get("with-timing") {
                self.with_timing = parse_bool("with-timing", v)?;
            }
        }
        Ok(self)
    }

    pub fn require<'a>(&self, v: &'a Option<String>, name: &str) -> Result<&'a str> {
        match v {
            Some(s) => Ok(s),
            None => bail!("--{name} is required"),
        }
    }
}
