//! End-to-end trials: sample `m`, decide local solvability at the tested
//! places, solve globally, build the tower and classify.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::RatFn;
use crate::carlitz::{carlitz_eval, torsion_points, Conductor};
use crate::error::{Error, Result};
use crate::field::{self, field_tower, FieldDescriptor, PolyT};
use crate::galois::{galois_image, is_group, sigma_cap_m_trivial};
use crate::global::{solution_coset_check, solve_global};
use crate::local::{enumerate_places, solve_local, LocalVerdict, Place};
use crate::report::{Classification, GWReport, PlaceVerdict, Summary, TrialRecord};
use crate::rng::SplitMix64;
use crate::tower::{
    build_splitting_tower, reconstruct_global_solution, verify_splitting_theorem, Hypothesis,
};
use crate::wire::{format_poly, format_ratfn, parse_poly, parse_ratfn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    /// K contains a generator of Λ_ā.
    A,
    /// Constant-field extension K = F_{q^n}(T); reconstruction is cross-checked.
    B,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MSource {
    /// One trial per listed value.
    Explicit { values: Vec<String> },
    /// `m = C_a(x₀)` for a random rational `x₀`.
    Forward,
    /// Random `num/den` with a monic denominator coprime to the numerator.
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub p: u32,
    pub r: u32,
    pub n: u32,
    pub a: String,
    pub m_source: MSource,
    /// Degree bound for sampled numerators and denominators.
    pub sample_degree: usize,
    pub max_place_degree: usize,
    pub include_infinite: bool,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub precision_cap: Option<u32>,
    pub degree_cap: usize,
    pub scenario: Scenario,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            p: 2,
            r: 1,
            n: 1,
            a: "0,1".into(),
            m_source: MSource::Forward,
            sample_degree: 4,
            max_place_degree: 3,
            include_infinite: false,
            trials: 10,
            seed: 0,
            precision_cap: None,
            degree_cap: 24,
            scenario: Scenario::Free,
        }
    }
}

/// A validated configuration with its field and places.
pub struct Experiment {
    pub config: ExperimentConfig,
    pub fd: FieldDescriptor,
    pub a: PolyT,
    pub cond: Conductor,
    pub places: Vec<Place>,
}

impl ExperimentConfig {
    pub fn prepare(&self) -> Result<Experiment> {
        let fd = field_tower(self.p, self.r, self.n)?;
        let a = parse_poly(&fd.ext, &self.a)?;
        let cond = Conductor::new(&fd, &a)?;
        if self.max_place_degree < cond.deg {
            return Err(Error::Config(format!(
                "max place degree {} is below deg a = {}",
                self.max_place_degree, cond.deg
            )));
        }
        if let MSource::Explicit { values } = &self.m_source {
            if values.is_empty() {
                return Err(Error::Config("no explicit m given".into()));
            }
        }
        if self.scenario == Scenario::A
            && torsion_points(&fd, &a, self.degree_cap)?
                .generator
                .is_none()
        {
            return Err(Error::Config(
                "scenario A needs a generator of the a-torsion in K".into(),
            ));
        }
        let mut places = enumerate_places(&fd, self.max_place_degree, self.include_infinite);
        for (pi, _) in field::factor(&fd.k_ring(), &cond.monic)?.factors {
            places.push(Place::Finite(pi));
        }
        places.sort();
        places.dedup();
        Ok(Experiment {
            config: self.clone(),
            fd,
            a,
            cond,
            places,
        })
    }

    pub fn trial_count(&self) -> u64 {
        match &self.m_source {
            MSource::Explicit { values } => values.len() as u64,
            _ => self.trials,
        }
    }
}

fn random_poly(fd: &FieldDescriptor, rng: &mut SplitMix64, max_deg: usize) -> PolyT {
    let size = fd.ext.size() as u64;
    let ring = fd.k_ring();
    ring.normalized(
        (0..=max_deg)
            .map(|_| fd.ext.elem(rng.below(size) as u32))
            .collect(),
    )
}

fn random_monic(fd: &FieldDescriptor, rng: &mut SplitMix64, max_deg: usize) -> PolyT {
    let d = rng.below(max_deg as u64 + 1) as usize;
    let mut f = if d == 0 {
        vec![]
    } else {
        random_poly(fd, rng, d - 1)
    };
    f.resize(d, fd.ext.elem(0));
    f.push(fd.ext.elem(1));
    f
}

/// A random element of K with numerator and denominator degree `≤ max_deg`.
pub fn random_ratfn(fd: &FieldDescriptor, rng: &mut SplitMix64, max_deg: usize) -> RatFn {
    let ring = fd.k_ring();
    loop {
        let num = random_poly(fd, rng, max_deg);
        let den = random_monic(fd, rng, max_deg);
        if num.is_empty() || ring.gcd(&num, &den).len() == 1 {
            return fd.k_field().frac(&num, &den);
        }
    }
}

fn local_verdicts(
    ex: &Experiment,
    m: &RatFn,
    places: &[Place],
) -> Result<Vec<(Place, LocalVerdict)>> {
    places
        .iter()
        .map(|pl| {
            Ok((
                pl.clone(),
                solve_local(&ex.fd, &ex.a, m, pl, ex.config.precision_cap)?,
            ))
        })
        .collect()
}

fn verdict_records(ex: &Experiment, verdicts: &[(Place, LocalVerdict)]) -> Vec<PlaceVerdict> {
    let k = ex.fd.k_field();
    verdicts
        .iter()
        .map(|(pl, v)| PlaceVerdict {
            place: pl.label(ex.fd.p),
            status: v.status().into(),
            witness: match v {
                LocalVerdict::Solvable { witness, .. } => {
                    Some(format_ratfn(ex.fd.p, &witness.to_ratfn(&k)))
                }
                _ => None,
            },
        })
        .collect()
}

/// Runs one trial; errors from the solvers are recorded, never swallowed.
pub fn run_trial(ex: &Experiment, index: u64) -> TrialRecord {
    let cfg = &ex.config;
    let fd = &ex.fd;
    let k = fd.k_field();
    let ring = fd.k_ring();
    let mut rng = SplitMix64::new(cfg.seed).fork(index);
    let mut rec = TrialRecord {
        index,
        seed: cfg.seed,
        a: format_poly(fd.p, &ex.a),
        m: String::new(),
        x0: None,
        verdicts: vec![],
        locally_solvable: false,
        global_solutions: vec![],
        degree_lambda: None,
        degree_l: None,
        splits_over_lambda: None,
        sigma_size: None,
        sigma_cap_m_trivial: None,
        reconstruction: None,
        reconstruction_agrees: None,
        recheck: None,
        classification: Classification::Untested,
        flags: vec![],
        error: None,
    };
    let m = match &cfg.m_source {
        MSource::Explicit { values } => match parse_ratfn(&k, &values[index as usize]) {
            Ok(m) => m,
            Err(e) => {
                rec.m = values[index as usize].clone();
                rec.error = Some(e.to_string());
                return rec;
            }
        },
        MSource::Forward => {
            let x0 = random_ratfn(fd, &mut rng, cfg.sample_degree);
            rec.x0 = Some(format_ratfn(fd.p, &x0));
            carlitz_eval(&k, &ring, &ex.a, &x0)
        }
        MSource::Random => random_ratfn(fd, &mut rng, cfg.sample_degree),
    };
    rec.m = format_ratfn(fd.p, &m);
    if let Err(e) = classify(ex, &m, &mut rec) {
        rec.classification = Classification::Untested;
        rec.error = Some(e.to_string());
    }
    rec
}

fn classify(ex: &Experiment, m: &RatFn, rec: &mut TrialRecord) -> Result<()> {
    let cfg = &ex.config;
    let fd = &ex.fd;
    let verdicts = local_verdicts(ex, m, &ex.places)?;
    rec.verdicts = verdict_records(ex, &verdicts);
    rec.locally_solvable = verdicts.iter().all(|(_, v)| v.is_solvable());

    let global = solve_global(fd, &ex.a, m, cfg.degree_cap)?;
    rec.global_solutions = global.iter().map(|x| format_ratfn(fd.p, x)).collect();
    if !solution_coset_check(fd, &global, &ex.a, cfg.degree_cap)? {
        rec.flags.push("coset".into());
    }

    let tower = build_splitting_tower(fd, &ex.a, m, cfg.degree_cap)?;
    rec.degree_lambda = Some(tower.degree_lambda() as u64);
    rec.degree_l = Some(tower.degree() as u64);
    rec.splits_over_lambda = Some(tower.splits_over_lambda());
    let torsion = ex.cond.torsion_size(fd);
    if tower.degree_lambda() as u64 > ex.cond.phi || tower.degree() as u64 > ex.cond.phi * torsion {
        rec.flags.push("degree_bound".into());
    }
    match galois_image(fd, &tower) {
        Ok(sigma) => {
            rec.sigma_size = Some(sigma.len() as u64);
            rec.sigma_cap_m_trivial = Some(sigma_cap_m_trivial(&sigma));
            if sigma.len() != tower.degree() || !is_group(&sigma, &fd.k_ring(), &ex.cond.monic) {
                rec.flags.push("sigma_structure".into());
            }
        }
        Err(Error::EnumerationCap { .. }) => {}
        Err(e) => return Err(e),
    }

    if cfg.scenario == Scenario::B {
        let agrees = match reconstruct_global_solution(fd, &tower) {
            Ok(r) => {
                rec.reconstruction = Some(format_ratfn(fd.p, &r.x));
                global.contains(&r.x)
            }
            Err(Error::ReconstructionObstructed(_)) => global.is_empty(),
            Err(e) => return Err(e),
        };
        rec.reconstruction_agrees = Some(agrees);
        if !agrees {
            rec.flags.push("reconstruction_mismatch".into());
        }
    }

    let check = verify_splitting_theorem(&tower, &verdicts);
    if !global.is_empty() && check.hypothesis == Hypothesis::Failed {
        rec.flags.push("local_soundness".into());
    }
    if check.hypothesis == Hypothesis::Satisfied {
        if !check.conclusion {
            rec.flags.push("splitting_violation".into());
        }
        if rec.sigma_cap_m_trivial == Some(false) {
            rec.flags.push("sigma_violation".into());
        }
    }
    rec.classification = match check.hypothesis {
        Hypothesis::Failed => Classification::Vacuous,
        Hypothesis::Untested => Classification::Untested,
        Hypothesis::Satisfied if !global.is_empty() => Classification::Consistent,
        Hypothesis::Satisfied => {
            let wider = enumerate_places(fd, cfg.max_place_degree + 2, cfg.include_infinite);
            let again = local_verdicts(ex, m, &wider)?;
            rec.recheck = Some(verdict_records(ex, &again));
            if again
                .iter()
                .any(|(_, v)| matches!(v, LocalVerdict::Unsolvable(_)))
            {
                Classification::Vacuous
            } else if again.iter().any(|(_, v)| v.is_inconclusive()) {
                Classification::Untested
            } else {
                rec.flags.push("candidate".into());
                Classification::Candidate
            }
        }
    };
    Ok(())
}

/// `1 − 1/(φ(ā)·q^{deg ā})`.
pub fn density_threshold(fd: &FieldDescriptor, cond: &Conductor) -> Ratio<u64> {
    let n = cond.phi * cond.torsion_size(fd);
    Ratio::new(n - 1, n)
}

pub fn run_gw_experiment(config: &ExperimentConfig) -> Result<GWReport> {
    let ex = config.prepare()?;
    let trials: Vec<TrialRecord> = (0..config.trial_count())
        .map(|i| run_trial(&ex, i))
        .collect();
    let count = |c: Classification| trials.iter().filter(|t| t.classification == c).count() as u64;
    let threshold = density_threshold(&ex.fd, &ex.cond);
    let summary = Summary {
        trials: trials.len() as u64,
        locally_solvable_everywhere: trials.iter().filter(|t| t.locally_solvable).count() as u64,
        globally_solvable: trials
            .iter()
            .filter(|t| !t.global_solutions.is_empty())
            .count() as u64,
        consistent: count(Classification::Consistent),
        vacuous: count(Classification::Vacuous),
        untested: count(Classification::Untested),
        candidates: trials
            .iter()
            .filter(|t| t.classification == Classification::Candidate)
            .map(|t| t.index)
            .collect(),
        flagged: trials
            .iter()
            .filter(|t| !t.flags.is_empty())
            .map(|t| t.index)
            .collect(),
        density_threshold: format!("{}/{}", threshold.numer(), threshold.denom()),
        runtime_ms: None,
    };
    Ok(GWReport {
        config: config.clone(),
        places: ex.places.iter().map(|p| p.label(ex.fd.p)).collect(),
        trials,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_a_forward() {
        let cfg = ExperimentConfig {
            trials: 20,
            scenario: Scenario::A,
            ..Default::default()
        };
        let r = run_gw_experiment(&cfg).unwrap();
        assert_eq!(r.summary.consistent, 20);
        assert!(r.summary.flagged.is_empty());
        assert_eq!(r.summary.density_threshold, "1/2");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn explicit_vacuous() {
        let cfg = ExperimentConfig {
            m_source: MSource::Explicit {
                values: vec!["0,1".into(), "0,0,0,1".into()],
            },
            scenario: Scenario::A,
            ..Default::default()
        };
        let r = run_gw_experiment(&cfg).unwrap();
        assert!(r
            .trials
            .iter()
            .all(|t| t.classification == Classification::Vacuous));
        assert!(r.summary.candidates.is_empty());
    }

    #[test]
    fn scenario_a_rejects_missing_generator() {
        let cfg = ExperimentConfig {
            p: 3,
            scenario: Scenario::A,
            ..Default::default()
        };
        assert!(matches!(cfg.prepare(), Err(Error::Config(_))));
    }
}
