mod settings;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use carlitz::carlitz::{carlitz_eval, cyclotomic_poly, torsion_points, Conductor};
use carlitz::experiment::{run_gw_experiment, ExperimentConfig, MSource, Scenario};
use carlitz::field::{field_tower, monic_irreducibles, FieldDescriptor, PolyT};
use carlitz::galois::{
    density_estimate, frobenius_splitting, galois_image, sigma_cap_m_trivial, unit_order,
};
use carlitz::global::{solution_coset_check, solve_global};
use carlitz::local::{enumerate_places, solve_local, LocalVerdict, Place};
use carlitz::report::Format;
use carlitz::tower::build_splitting_tower;
use carlitz::wire::{format_poly, format_ratfn, parse_poly, parse_ratfn};

use settings::Flags;

/// Local and global solvability of Carlitz-module equations C_a(x) = m over F_{q^n}(T).
///
/// Exit codes: 0 clean, 1 error, 2 counterexample candidate, 3 untested trials.
#[derive(Parser)]
#[command(name = "carlitz-gw", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// C_a(x)
    Eval(Flags),
    /// Φ_ā
    Cyclotomic(Flags),
    /// a-torsion points lying in K
    Torsion(Flags),
    /// Local verdicts at places of degree ≤ D (or at --place)
    SolveLocal(Flags),
    /// All roots of C_a(x) = m in K
    SolveGlobal(Flags),
    /// (e, f, g) of primes of F_q(T) in the a-th cyclotomic extension
    Splitting(Flags),
    /// Splitting tower of C_a(x) − m and the image Σ
    Galois(Flags),
    /// Primes of degree ≤ D by residue class mod ā
    Density(Flags),
    /// Run an experiment and report
    GwVerify(Flags),
}

struct Ctx {
    flags: Flags,
    fd: FieldDescriptor,
}

impl Ctx {
    fn new(flags: Flags) -> Result<Ctx> {
        let flags = flags.merged()?;
        let fd = field_tower(
            flags.p.unwrap_or(2),
            flags.r.unwrap_or(1),
            flags.n.unwrap_or(1),
        )?;
        Ok(Ctx { flags, fd })
    }

    fn a(&self) -> Result<PolyT> {
        Ok(parse_poly(
            &self.fd.ext,
            self.flags.require(&self.flags.a, "a")?,
        )?)
    }

    fn m(&self) -> Result<carlitz::algebra::RatFn> {
        Ok(parse_ratfn(
            &self.fd.k_field(),
            self.flags.require(&self.flags.m, "m")?,
        )?)
    }

    fn poly(&self, f: &[carlitz::algebra::Fe]) -> String {
        format_poly(self.fd.p, f)
    }

    fn max_degree(&self) -> usize {
        self.flags.max_place_degree.unwrap_or(3)
    }

    fn degree_cap(&self) -> usize {
        self.flags.degree_cap.unwrap_or(24)
    }

    fn places(&self) -> Result<Vec<Place>> {
        match &self.flags.place {
            Some(s) => Ok(vec![Place::parse(&self.fd.ext, s)?]),
            None => Ok(enumerate_places(
                &self.fd,
                self.max_degree(),
                self.flags.include_infinity,
            )),
        }
    }

    fn format(&self) -> Result<Format> {
        Ok(self.flags.format.as_deref().unwrap_or("json").parse()?)
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            xs.iter().map(cell).collect::<Vec<_>>().join(";")
        }
        other => other.to_string(),
    }
}

/// One CSV line per element of `rows` if present, otherwise one line of the top-level fields.
fn to_csv(v: &Value) -> Result<String> {
    let rows: Vec<Map<String, Value>> = match v.get("rows") {
        Some(Value::Array(rs)) => rs.iter().filter_map(|r| r.as_object().cloned()).collect(),
        _ => vec![v.as_object().cloned().unwrap_or_default()],
    };
    let mut w = csv::Writer::from_writer(vec![]);
    let header: Vec<String> = rows
        .first()
        .map(|r| r.keys().cloned().collect())
        .unwrap_or_default();
    w.write_record(&header)?;
    for r in &rows {
        w.write_record(
            header
                .iter()
                .map(|k| cell(r.get(k).unwrap_or(&Value::Null))),
        )?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn emit(ctx: &Ctx, text: String) -> Result<()> {
    match &ctx.flags.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_value(ctx: &Ctx, v: Value) -> Result<()> {
    let text = match ctx.format()? {
        Format::Json => serde_json::to_string_pretty(&v)? + "\n",
        Format::Csv => to_csv(&v)?,
    };
    emit(ctx, text)
}

fn eval(ctx: &Ctx) -> Result<Value> {
    let a = ctx.a()?;
    let k = ctx.fd.k_field();
    let x = parse_ratfn(&k, ctx.flags.require(&ctx.flags.x, "x")?)?;
    let y = carlitz_eval(&k, &ctx.fd.k_ring(), &a, &x);
    Ok(
        json!({ "a": ctx.poly(&a), "x": format_ratfn(ctx.fd.p, &x), "value": format_ratfn(ctx.fd.p, &y) }),
    )
}

fn cyclotomic(ctx: &Ctx) -> Result<Value> {
    let a = ctx.a()?;
    let cond = Conductor::new(&ctx.fd, &a)?;
    let phi = cyclotomic_poly(&ctx.fd, &a)?;
    Ok(json!({
        "a": ctx.poly(&a),
        "phi": cond.phi,
        "degree": phi.len() - 1,
        "coefficients": phi.iter().map(|c| ctx.poly(c)).collect::<Vec<_>>(),
    }))
}

fn torsion(ctx: &Ctx) -> Result<Value> {
    let a = ctx.a()?;
    let t = torsion_points(&ctx.fd, &a, ctx.degree_cap())?;
    let p = ctx.fd.p;
    Ok(json!({
        "a": ctx.poly(&a),
        "count": t.elements.len(),
        "full": t.full,
        "generator": t.generator.as_ref().map(|g| format_ratfn(p, g)),
        "points": t.elements.iter().map(|x| format_ratfn(p, x)).collect::<Vec<_>>(),
    }))
}

fn solve_local_cmd(ctx: &Ctx) -> Result<Value> {
    let a = ctx.a()?;
    let m = ctx.m()?;
    let k = ctx.fd.k_field();
    let mut rows = Vec::new();
    for place in ctx.places()? {
        let v = solve_local(&ctx.fd, &a, &m, &place, ctx.flags.precision_cap)?;
        let (witness, certified) = match &v {
            LocalVerdict::Solvable { witness, certified } => (
                Some(format_ratfn(ctx.fd.p, &witness.to_ratfn(&k))),
                json!(certified.map_or("exact".to_string(), |c| c.to_string())),
            ),
            LocalVerdict::Inconclusive { needed, cap } => {
                (None, json!(format!("needs {needed}, cap {cap}")))
            }
            _ => (None, Value::Null),
        };
        rows.push(json!({
            "place": place.label(ctx.fd.p),
            "status": v.status(),
            "witness": witness,
            "precision": certified,
        }));
    }
    Ok(json!({ "a": ctx.poly(&a), "m": format_ratfn(ctx.fd.p, &m), "rows": rows }))
}

fn solve_global_cmd(ctx: &Ctx) -> Result<Value> {
    let a = ctx.a()?;
    let m = ctx.m()?;
    let sols = solve_global(&ctx.fd, &a, &m, ctx.degree_cap())?;
    let coset = solution_coset_check(&ctx.fd, &sols, &a, ctx.degree_cap())?;
    Ok(json!({
        "a": ctx.poly(&a),
        "m": format_ratfn(ctx.fd.p, &m),
        "solutions": sols.iter().map(|x| format_ratfn(ctx.fd.p, x)).collect::<Vec<_>>(),
        "coset": coset,
    }))
}

fn splitting(ctx: &Ctx) -> Result<Value> {
    let a = ctx.a()?;
    let cond = Conductor::new(&ctx.fd, &a)?;
    let places: Vec<PolyT> = match &ctx.flags.place {
        Some(s) => vec![parse_poly(&ctx.fd.ext, s)?],
        None => (1..=ctx.max_degree())
            .flat_map(|d| monic_irreducibles(&ctx.fd.a_ring(), d))
            .map(|p| ctx.fd.embed_poly(&p))
            .collect(),
    };
    let ring = ctx.fd.k_ring();
    let mut rows = Vec::new();
    for p in places {
        let s = frobenius_splitting(&ctx.fd, &p, &a)?;
        rows.push(json!({
            "place": ctx.poly(&p),
            "e": s.e,
            "f": s.f,
            "g": s.g,
            "order": unit_order(&ring, &p, &cond.monic),
        }));
    }
    Ok(json!({ "a": ctx.poly(&a), "phi": cond.phi, "rows": rows }))
}

fn galois(ctx: &Ctx) -> Result<Value> {
    let a = ctx.a()?;
    let m = ctx.m()?;
    let p = ctx.fd.p;
    let tower = build_splitting_tower(&ctx.fd, &a, &m, ctx.degree_cap())?;
    let sigma = galois_image(&ctx.fd, &tower)?;
    Ok(json!({
        "a": ctx.poly(&a),
        "m": format_ratfn(p, &m),
        "g1": tower.g1.iter().map(|c| format_ratfn(p, c)).collect::<Vec<_>>(),
        "g2": tower.g2.iter().map(|c| c.iter().map(|x| format_ratfn(p, x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "degree_lambda": tower.degree_lambda(),
        "degree_l": tower.degree(),
        "roots_in_lambda_field": tower.roots_in_e.len(),
        "splits_over_lambda": tower.splits_over_lambda(),
        "sigma": sigma.iter().map(|g| json!({ "b": ctx.poly(&g.b), "u": ctx.poly(&g.u) })).collect::<Vec<_>>(),
        "sigma_cap_m_trivial": sigma_cap_m_trivial(&sigma),
    }))
}

fn density(ctx: &Ctx) -> Result<Value> {
    let a = ctx.a()?;
    let d = density_estimate(&ctx.fd, &a, ctx.max_degree())?;
    let rows: Vec<Value> = d
        .counts
        .iter()
        .zip(d.fractions())
        .map(|((c, n), (_, f))| json!({ "class": ctx.poly(c), "count": n, "fraction": f }))
        .collect();
    Ok(json!({ "a": ctx.poly(&a), "max_degree": ctx.max_degree(), "total": d.total, "rows": rows }))
}

fn experiment_config(ctx: &Ctx) -> Result<ExperimentConfig> {
    let f = &ctx.flags;
    let d = ExperimentConfig::default();
    let scenario = match f.scenario.as_deref().unwrap_or("free") {
        "a" | "A" => Scenario::A,
        "b" | "B" => Scenario::B,
        "free" => Scenario::Free,
        s => bail!("unknown scenario {s:?}"),
    };
    let m_source = match (&f.m, f.m_source.as_deref().unwrap_or("forward")) {
        (Some(ms), _) => MSource::Explicit {
            values: ms.split(';').map(|s| s.trim().to_string()).collect(),
        },
        (None, "forward") => MSource::Forward,
        (None, "random") => MSource::Random,
        (None, s) => bail!("unknown m source {s:?}"),
    };
    Ok(ExperimentConfig {
        p: ctx.fd.p,
        r: ctx.fd.r,
        n: ctx.fd.n,
        a: f.require(&f.a, "a")?.to_string(),
        m_source,
        sample_degree: f.sample_degree.unwrap_or(d.sample_degree),
        max_place_degree: ctx.max_degree(),
        include_infinite: f.include_infinity,
        trials: f.trials.unwrap_or(d.trials),
        seed: f.seed.unwrap_or(d.seed),
        precision_cap: f.precision_cap,
        degree_cap: ctx.degree_cap(),
        scenario,
    })
}

fn gw_verify(ctx: &Ctx) -> Result<u8> {
    let cfg = experiment_config(ctx)?;
    let start = Instant::now();
    let mut report = run_gw_experiment(&cfg)?;
    if ctx.flags.with_timing {
        report.summary.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    emit(ctx, report.render(ctx.format()?))?;
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8> {
    let (flags, f): (Flags, fn(&Ctx) -> Result<Value>) = match cli.cmd {
        Cmd::GwVerify(flags) => return gw_verify(&Ctx::new(flags)?),
        Cmd::Eval(fl) => (fl, eval),
        Cmd::Cyclotomic(fl) => (fl, cyclotomic),
        Cmd::Torsion(fl) => (fl, torsion),
        Cmd::SolveLocal(fl) => (fl, solve_local_cmd),
        Cmd::SolveGlobal(fl) => (fl, solve_global_cmd),
        Cmd::Splitting(fl) => (fl, splitting),
        Cmd::Galois(fl) => (fl, galois),
        Cmd::Density(fl) => (fl, density),
    };
    let ctx = Ctx::new(flags)?;
    let v = f(&ctx)?;
    emit_value(&ctx, v)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // Usage errors exit with 1 so that 2 stays reserved for candidates.
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
