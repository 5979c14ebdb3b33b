//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use carlitz::algebra::{PolyRing, Ring};
use carlitz::carlitz::{
    carlitz_coeffs, carlitz_eval, cyclotomic_poly, is_generator, to_dense, torsion_from_generator,
    twisted_mul, Conductor,
};
use carlitz::experiment::{random_ratfn, run_gw_experiment, ExperimentConfig, MSource, Scenario};
use carlitz::field::{field_tower, monic_irreducibles, monic_polys, residues, PolyT};
use carlitz::galois::density_estimate;
use carlitz::global::solve_global;
use carlitz::local::{solve_local, Place};
use carlitz::report::{Classification, GWReport};
use carlitz::rng::SplitMix64;
use carlitz::tower::build_splitting_tower;
use carlitz::wire::{parse_poly, parse_ratfn};
use common::{local_oracle, p, phi_brute, witness_ok};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_poly(rng: &mut SplitMix64, q: u32, max_deg: usize) -> PolyT {
    p(&(0..=max_deg)
        .map(|_| rng.below(q as u64) as u32)
        .collect::<Vec<_>>())
}

fn homomorphism() -> Outcome {
    let mut rng = SplitMix64::new(2024);
    let mut pairs = 0;
    for pr in [2u32, 3] {
        let ring = field_tower(pr, 1, 1).unwrap().k_ring();
        for _ in 0..150 {
            let a = random_poly(&mut rng, pr, 4);
            let b = random_poly(&mut rng, pr, 4);
            let (ca, cb) = (carlitz_coeffs(&ring, &a), carlitz_coeffs(&ring, &b));
            let n = ca.coeffs.len().max(cb.coeffs.len());
            let mut sum: Vec<PolyT> = (0..n)
                .map(|i| {
                    ring.add(
                        ca.coeffs.get(i).unwrap_or(&vec![]),
                        cb.coeffs.get(i).unwrap_or(&vec![]),
                    )
                })
                .collect();
            while sum.last().is_some_and(|c| c.is_empty()) {
                sum.pop();
            }
            ensure(
                carlitz_coeffs(&ring, &ring.add(&a, &b)).coeffs == sum,
                || format!("C_(a+b) q={pr} a={a:?} b={b:?}"),
            )?;
            ensure(
                carlitz_coeffs(&ring, &ring.mul(&a, &b)) == twisted_mul(&ring, &ca, &cb),
                || format!("C_(ab) q={pr} a={a:?} b={b:?}"),
            )?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn all_monic(pr: u32, max: usize) -> Vec<PolyT> {
    let ring = field_tower(pr, 1, 1).unwrap().k_ring();
    (1..=max).flat_map(|d| monic_polys(&ring, d)).collect()
}

fn torsion_structure() -> Outcome {
    let mut n = 0;
    for (pr, max) in [(2u32, 2usize), (3, 1)] {
        let fd = field_tower(pr, 1, 1).unwrap();
        let ring = fd.k_ring();
        for a in all_monic(pr, max) {
            let cond = Conductor::new(&fd, &a).unwrap();
            let t = build_splitting_tower(&fd, &a, &fd.k_field().zero(), 24)
                .map_err(|e| e.to_string())?;
            let lambda = t.lambda();
            ensure(is_generator(&t.e, &fd, &lambda, &a).unwrap(), || {
                format!("λ is not a generator for a={a:?}")
            })?;
            let pts = torsion_from_generator(&t.e, &fd, &cond, &lambda);
            let mut distinct = pts.clone();
            distinct.sort();
            distinct.dedup();
            let want = fd.q.pow(cond.deg as u32) as usize;
            ensure(pts.len() == want && distinct.len() == want, || {
                format!("a={a:?}: {} distinct of {want}", distinct.len())
            })?;
            ensure(
                pts.iter()
                    .all(|x| t.e.is_zero(&carlitz_eval(&t.e, &ring, &a, x))),
                || format!("a={a:?}: non-torsion point"),
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} moduli"))
}

fn cyclotomic() -> Outcome {
    let mut checks = 0;
    for (pr, max) in [(2u32, 2usize), (3, 1)] {
        let fd = field_tower(pr, 1, 1).unwrap();
        let ring = fd.k_ring();
        let xr = PolyRing::new(ring.clone());
        for a in all_monic(pr, max) {
            let phi = cyclotomic_poly(&fd, &a).unwrap();
            ensure(phi.len() as u64 - 1 == phi_brute(&ring, &a), || {
                format!("deg Φ for a={a:?}")
            })?;
            let mut prod = xr.one();
            for d in residues(&ring, a.len())
                .into_iter()
                .filter(|d| ring.is_monic(d) && ring.divides(d, &a))
            {
                let pd = if d.len() == 1 {
                    vec![vec![], ring.one()]
                } else {
                    cyclotomic_poly(&fd, &d).unwrap()
                };
                prod = xr.mul(&prod, &pd);
            }
            ensure(prod == to_dense(&ring, &carlitz_coeffs(&ring, &a)), || {
                format!("divisor product for a={a:?}")
            })?;
            checks += 2;
        }
    }
    let fd = field_tower(2, 1, 1).unwrap();
    let ring = fd.k_ring();
    for d in 1..=3usize {
        for pi in monic_irreducibles(&ring, d) {
            for e in 1..=(3 / d) as u64 {
                let phi = cyclotomic_poly(&fd, &ring.pow(&pi, e)).unwrap();
                let eis = phi[..phi.len() - 1].iter().all(|c| ring.divides(&pi, c)) && phi[0] == pi;
                ensure(eis, || format!("Φ_(P^{e}) not Eisenstein for P={pi:?}"))?;
                checks += 1;
            }
        }
    }
    for pr in [2u32, 3] {
        let ring = field_tower(pr, 1, 1).unwrap().k_ring();
        for d in 1..=3usize {
            for pi in monic_irreducibles(&ring, d) {
                let c = carlitz_coeffs(&ring, &pi).coeffs;
                let ok = c.len() == d + 1
                    && c[..d].iter().all(|ci| ring.rem(ci, &pi).is_empty())
                    && c[d] == ring.one();
                ensure(ok, || {
                    format!("C_P ≢ x^(q^deg P) mod P for q={pr} P={pi:?}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} checks"))
}

fn local_oracle_cells() -> Outcome {
    let fd = field_tower(2, 1, 1).unwrap();
    let places = [
        Place::Finite(p(&[0, 1])),
        Place::Finite(p(&[1, 1])),
        Place::Finite(p(&[1, 1, 1])),
        Place::Infinite,
    ];
    let mut rng = SplitMix64::new(800);
    let (mut cells, mut solvable) = (0, 0);
    for a in [p(&[0, 1]), p(&[1, 1]), p(&[0, 0, 1]), p(&[0, 1, 1])] {
        for _ in 0..50 {
            let m = random_ratfn(&fd, &mut rng, 3);
            for place in &places {
                let v = solve_local(&fd, &a, &m, place, None).map_err(|e| e.to_string())?;
                ensure(!v.is_inconclusive(), || {
                    format!("inconclusive: a={a:?} m={m:?} at {place}")
                })?;
                let o = local_oracle(&fd, &a, &m, place);
                ensure(v.is_solvable() == o.solvable, || {
                    format!("mismatch: a={a:?} m={m:?} at {place}: {v:?}")
                })?;
                ensure(witness_ok(&fd, &a, &m, place, &v), || {
                    format!("bad witness: a={a:?} m={m:?} at {place}")
                })?;
                cells += 1;
                solvable += v.is_solvable() as u32;
            }
        }
    }
    Ok(format!(
        "{cells} cells, {solvable} solvable, 0 inconclusive"
    ))
}

fn forward_configs() -> Vec<ExperimentConfig> {
    let base = ExperimentConfig::default();
    vec![
        ExperimentConfig {
            scenario: Scenario::A,
            trials: 40,
            seed: 51,
            ..base.clone()
        },
        ExperimentConfig {
            scenario: Scenario::A,
            a: "0,1,1".into(),
            trials: 20,
            seed: 52,
            ..base.clone()
        },
        ExperimentConfig {
            scenario: Scenario::B,
            n: 2,
            a: "0,1,1".into(),
            trials: 30,
            seed: 53,
            ..base.clone()
        },
        ExperimentConfig {
            scenario: Scenario::B,
            n: 2,
            a: "0,1".into(),
            trials: 20,
            seed: 54,
            ..base.clone()
        },
        ExperimentConfig {
            a: "0,0,1".into(),
            trials: 20,
            seed: 55,
            ..base.clone()
        },
        ExperimentConfig {
            a: "1,1,1".into(),
            trials: 10,
            seed: 56,
            sample_degree: 3,
            ..base.clone()
        },
        ExperimentConfig {
            p: 3,
            a: "0,1".into(),
            trials: 20,
            seed: 57,
            ..base.clone()
        },
        ExperimentConfig {
            m_source: MSource::Random,
            a: "0,1".into(),
            trials: 30,
            seed: 58,
            ..base.clone()
        },
    ]
}

fn splitting_and_bounds() -> (Outcome, Outcome) {
    let (mut forward, mut hyp, mut towers) = (0, 0, 0);
    let mut violations = vec![];
    let mut bound_violations = vec![];
    for c in forward_configs() {
        let r = match run_gw_experiment(&c) {
            Ok(r) => r,
            Err(e) => return (Err(e.to_string()), Err(e.to_string())),
        };
        let fd = field_tower(c.p, c.r, c.n).unwrap();
        let cond = Conductor::new(&fd, &parse_poly(&fd.ext, &c.a).unwrap()).unwrap();
        for t in &r.trials {
            if c.m_source == MSource::Forward {
                forward += 1;
            }
            if t.classification == Classification::Untested {
                violations.push(format!("untested a={} m={}: {:?}", t.a, t.m, t.error));
                continue;
            }
            if let (Some(dl), Some(dll)) = (t.degree_lambda, t.degree_l) {
                towers += 1;
                if dl > cond.phi || dll > cond.phi * cond.torsion_size(&fd) {
                    bound_violations
                        .push(format!("a={} m={}: [K(λ):K]={dl} [L:K]={dll}", t.a, t.m));
                }
            }
            if t.locally_solvable {
                hyp += 1;
                let split = t.splits_over_lambda == Some(true) && t.degree_l == t.degree_lambda;
                if !split || t.sigma_cap_m_trivial != Some(true) {
                    violations.push(format!("a={} m={}", t.a, t.m));
                }
            }
        }
    }
    let c5 = if violations.is_empty() && forward >= 100 {
        Ok(format!(
            "{forward} forward instances, {hyp} with the hypothesis, 0 violations"
        ))
    } else {
        Err(format!(
            "{forward} forward instances; violations: {violations:?}"
        ))
    };
    let c6 = if bound_violations.is_empty() {
        Ok(format!("{towers} towers within bounds"))
    } else {
        Err(format!("{bound_violations:?}"))
    };
    (c5, c6)
}

fn harness_configs() -> [ExperimentConfig; 2] {
    let base = ExperimentConfig {
        max_place_degree: 3,
        seed: 7,
        ..ExperimentConfig::default()
    };
    [
        ExperimentConfig {
            scenario: Scenario::A,
            trials: 200,
            ..base.clone()
        },
        ExperimentConfig {
            scenario: Scenario::B,
            n: 2,
            a: "0,1,1".into(),
            trials: 100,
            ..base
        },
    ]
}

fn run_harness() -> Result<Vec<GWReport>, String> {
    harness_configs()
        .iter()
        .map(|c| run_gw_experiment(c).map_err(|e| e.to_string()))
        .collect()
}

fn harness() -> Outcome {
    let reports = run_harness()?;
    let mut checked = 0;
    for r in &reports {
        let c = &r.config;
        let fd = field_tower(c.p, c.r, c.n).unwrap();
        let (k, ring) = (fd.k_field(), fd.k_ring());
        let a = parse_poly(&fd.ext, &c.a).unwrap();
        ensure(r.summary.candidates.is_empty(), || {
            format!("candidates {:?}", r.summary.candidates)
        })?;
        ensure(r.summary.untested == 0, || {
            format!("{} untested", r.summary.untested)
        })?;
        for t in &r.trials {
            let m = parse_ratfn(&k, &t.m).unwrap();
            for x in t.global_solutions.iter().chain(&t.reconstruction) {
                let x = parse_ratfn(&k, x).unwrap();
                ensure(carlitz_eval(&k, &ring, &a, &x) == m, || {
                    format!("C_a(x) ≠ m for a={} m={}", t.a, t.m)
                })?;
                checked += 1;
            }
            if c.scenario == Scenario::B {
                ensure(
                    t.reconstruction.is_some() && t.reconstruction_agrees == Some(true),
                    || format!("reconstruction missing or disagreeing for m={}", t.m),
                )?;
            }
        }
    }
    Ok(format!(
        "{} + {} trials, 0 candidates, {checked} solutions substituted",
        reports[0].trials.len(),
        reports[1].trials.len()
    ))
}

fn negative_control() -> Outcome {
    let fd = field_tower(2, 1, 1).unwrap();
    let k = fd.k_field();
    let (a, m) = (p(&[0, 1]), k.from_poly(&p(&[0, 0, 0, 1])));
    let at_t = solve_local(&fd, &a, &m, &Place::Finite(p(&[0, 1])), None).unwrap();
    let at_t1 = solve_local(&fd, &a, &m, &Place::Finite(p(&[1, 1])), None).unwrap();
    ensure(at_t.is_solvable(), || "not solvable at T".into())?;
    ensure(!at_t1.is_solvable() && !at_t1.is_inconclusive(), || {
        format!("at T+1: {at_t1:?}")
    })?;
    ensure(solve_global(&fd, &a, &m, 24).unwrap().is_empty(), || {
        "globally solvable".into()
    })?;
    let c = ExperimentConfig {
        m_source: MSource::Explicit {
            values: vec!["0,0,0,1".into()],
        },
        ..ExperimentConfig::default()
    };
    let r = run_gw_experiment(&c).map_err(|e| e.to_string())?;
    ensure(
        r.trials[0].classification == Classification::Vacuous,
        || format!("{:?}", r.trials[0].classification),
    )?;
    Ok("vacuous".into())
}

fn density() -> Outcome {
    let fd = field_tower(2, 1, 1).unwrap();
    let mut worst: f64 = 0.0;
    for a in [p(&[0, 0, 1]), p(&[1, 1, 1])] {
        let est = density_estimate(&fd, &a, 8).map_err(|e| e.to_string())?;
        let phi = Conductor::new(&fd, &a).unwrap().phi as f64;
        for (class, f) in est.fractions() {
            let dev = (f - 1.0 / phi).abs();
            worst = worst.max(dev);
            ensure(dev <= 0.1, || format!("a={a:?} class {class:?}: {f:.4}"))?;
        }
    }
    Ok(format!("max deviation {worst:.4}"))
}

fn determinism() -> Outcome {
    let one: Vec<String> = run_harness()?.iter().map(|r| r.to_json()).collect();
    let two: Vec<String> = run_harness()?.iter().map(|r| r.to_json()).collect();
    ensure(one == two, || "reports differ".into())?;
    Ok(format!(
        "{} bytes identical",
        one.iter().map(String::len).sum::<usize>()
    ))
}

fn report(n: usize, limit: Duration, started: Instant, outcome: Outcome) -> bool {
    let took = started.elapsed();
    let outcome = outcome.and_then(|d| {
        if took < limit {
            Ok(d)
        } else {
            Err(format!("{d}; over the {limit:?} limit"))
        }
    });
    match &outcome {
        Ok(d) => println!("criterion {n}: PASS ({d}; {:.2}s)", took.as_secs_f64()),
        Err(d) => println!("criterion {n}: FAIL ({d}; {:.2}s)", took.as_secs_f64()),
    }
    outcome.is_ok()
}

fn main() {
    let mut ok = true;
    let s = |secs| Duration::from_secs(secs);
    let t = Instant::now();
    ok &= report(1, s(5), t, homomorphism());
    let t = Instant::now();
    ok &= report(2, s(10), t, torsion_structure());
    let t = Instant::now();
    ok &= report(3, s(10), t, cyclotomic());
    let t = Instant::now();
    ok &= report(4, s(60), t, local_oracle_cells());
    let t = Instant::now();
    let (c5, c6) = splitting_and_bounds();
    ok &= report(5, s(120), t, c5);
    ok &= report(6, s(120), t, c6);
    let t = Instant::now();
    ok &= report(7, s(120), t, harness());
    let t = Instant::now();
    ok &= report(8, s(1), t, negative_control());
    let t = Instant::now();
    ok &= report(9, s(10), t, density());
    let t = Instant::now();
    ok &= report(10, s(240), t, determinism());
    if !ok {
        std::process::exit(1);
    }
}
