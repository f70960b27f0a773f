//! CLI for the quartic Lucas congruence verifier.
//!
//! Exit codes: 0 when everything checked matches (or was skipped), 1 when
//! any mismatch was found, 2 on usage or configuration errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use quartic_lucas::harness::witness::verify_witness_tables;
use quartic_lucas::harness::{self, sweep, verify_one, ReportFormat, SweepSpec};
use quartic_lucas::modarith::PrimeField;
use quartic_lucas::quartic::{scale_representation, GeneralForm, QuarticError};
use std::collections::HashMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "quartic-lucas",
    version,
    about = "Predict and verify U_((p-1)/4)(b,-1), V_((p-1)/4)(b,-1) mod p from representations p = x^2+dy^2 = u^2+v^2"
)]
struct Cli {
    /// Optional key = value config file for default bounds and job count
    /// (keys: b_min, b_max, p_max, jobs, out, format, bound). Flags override.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the predicted (U, V) mod p for one pair
    Predict { b: i64, p: u64 },
    /// Compare prediction against direct Lucas evaluation for one pair
    Verify { b: i64, p: u64 },
    /// Print predicted and extracted eta for one pair
    Eta { b: i64, p: u64 },
    /// Print the verification case a pair falls in
    Classify { b: i64, p: u64 },
    /// Re-check the built-in witness tables and report errata
    Witness,
    /// Sweep all primes p = 1 (mod 4) below a bound against a b range
    Sweep {
        /// Statement family 1..4 (repeatable; default: all four)
        #[arg(long = "conjecture")]
        conjectures: Vec<u8>,
        #[arg(long)]
        b_min: Option<i64>,
        #[arg(long)]
        b_max: Option<i64>,
        #[arg(long)]
        p_max: Option<u64>,
        /// Worker count (default: rayon's choice)
        #[arg(long)]
        jobs: Option<usize>,
        /// Write per-pair records to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record format: jsonl or csv
        #[arg(long)]
        format: Option<String>,
    },
    /// Run the general-form construction a'p = X^2 + dY^2 = U^2 + V^2
    GeneralForm {
        a: i64,
        b: i64,
        c: i64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        /// Isotropic witness search bound
        #[arg(long)]
        bound: Option<i64>,
    },
}

fn parse_config(path: &PathBuf) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {} is not key = value: {line:?}", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn config_get<T: std::str::FromStr>(cfg: &HashMap<String, String>, key: &str) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    match cfg.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|e| anyhow!("config key {key}: {e}")),
    }
}

fn print_record(rec: &harness::VerifyRecord) {
    match &rec.detail {
        Some(d) => {
            println!(
                "b={} d={} p={}: x={} y={} u={} v={} case={} branch={}",
                rec.b,
                rec.d.unwrap_or(0),
                rec.p,
                d.x,
                d.y,
                d.u,
                d.v,
                d.case,
                d.branch
            );
            println!(
                "predicted (U, V) = ({}, {})  actual = ({}, {})  eta={} extracted={}",
                d.u_pred,
                d.v_pred,
                d.u_actual,
                d.v_actual,
                d.eta_pred,
                d.eta_extracted
                    .map(|e| e.to_string())
                    .unwrap_or_else(|| "?".into())
            );
            println!("status: {}", rec.status());
        }
        None => println!("{}", rec.status()),
    }
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = match &cli.config {
        Some(path) => parse_config(path)?,
        None => HashMap::new(),
    };
    match cli.command {
        Command::Predict { b, p } => {
            let rec = verify_one(b, p);
            match &rec.detail {
                Some(d) => {
                    println!(
                        "b={} d={} p={}: x={} y={} u={} v={} case={} branch={}",
                        b,
                        rec.d.unwrap_or(0),
                        p,
                        d.x,
                        d.y,
                        d.u,
                        d.v,
                        d.case,
                        d.branch
                    );
                    println!(
                        "predicted U_((p-1)/4) = {}, V_((p-1)/4) = {} (mod {})",
                        d.u_pred, d.v_pred, p
                    );
                    Ok(0)
                }
                None => {
                    println!("{}", rec.status());
                    Ok(0)
                }
            }
        }
        Command::Verify { b, p } => {
            let rec = verify_one(b, p);
            print_record(&rec);
            Ok(if rec.is_checked() && !rec.is_match() { 1 } else { 0 })
        }
        Command::Eta { b, p } => {
            let rec = verify_one(b, p);
            match &rec.detail {
                Some(d) => {
                    println!(
                        "b={} p={}: predicted eta = {}, extracted eta = {} ({})",
                        b,
                        p,
                        d.eta_pred,
                        d.eta_extracted
                            .map(|e| e.to_string())
                            .unwrap_or_else(|| "?".into()),
                        if d.eta_match { "agree" } else { "DISAGREE" }
                    );
                    Ok(if d.eta_match { 0 } else { 1 })
                }
                None => {
                    println!("{}", rec.status());
                    Ok(0)
                }
            }
        }
        Command::Classify { b, p } => {
            let rec = verify_one(b, p);
            match &rec.detail {
                Some(d) => {
                    println!("b={} p={}: case {}", b, p, d.case);
                    Ok(0)
                }
                None => {
                    println!("{}", rec.status());
                    Ok(0)
                }
            }
        }
        Command::Witness => {
            let report = verify_witness_tables();
            for o in &report.outcomes {
                println!(
                    "b={:>2} p={:>5}: case {} (expected subcase {}) {}",
                    o.b,
                    o.p_used,
                    o.case.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
                    o.expected_subcase,
                    if o.subcase_ok && o.verified { "ok" } else { "FAILED" }
                );
            }
            for e in &report.errata {
                println!("erratum: {e}");
            }
            println!(
                "coverage: {}/49 cases; {} errata",
                report.covered.len(),
                report.errata.len()
            );
            Ok(if report.all_ok() { 0 } else { 1 })
        }
        Command::Sweep {
            conjectures,
            b_min,
            b_max,
            p_max,
            jobs,
            out,
            format,
        } => {
            let conjectures = if conjectures.is_empty() {
                vec![1, 2, 3, 4]
            } else {
                conjectures
            };
            if conjectures.iter().any(|c| !(1..=4).contains(c)) {
                bail!("--conjecture must be 1, 2, 3 or 4");
            }
            let b_min = match b_min {
                Some(v) => v,
                None => config_get(&cfg, "b_min")?.unwrap_or(1),
            };
            let b_max = match b_max {
                Some(v) => v,
                None => config_get(&cfg, "b_max")?.unwrap_or(16),
            };
            let p_max = match p_max {
                Some(v) => v,
                None => config_get(&cfg, "p_max")?.unwrap_or(6000),
            };
            let jobs = match jobs {
                Some(v) => Some(v),
                None => config_get(&cfg, "jobs")?,
            };
            let out = match out {
                Some(v) => Some(v),
                None => config_get::<String>(&cfg, "out")?.map(PathBuf::from),
            };
            let format_str = match format {
                Some(v) => v,
                None => config_get::<String>(&cfg, "format")?.unwrap_or_else(|| "jsonl".into()),
            };
            let format: ReportFormat = format_str.parse().map_err(|e: String| anyhow!(e))?;

            let mut spec = SweepSpec::new(conjectures, b_min, b_max, p_max);
            spec.jobs = jobs;
            let report = sweep(&spec).map_err(|e| anyhow!("{e}"))?;
            if let Some(path) = out {
                let file = File::create(&path)
                    .with_context(|| format!("cannot create {}", path.display()))?;
                harness::write_records(&report.records, format, BufWriter::new(file))
                    .map_err(|e| anyhow!("{e}"))?;
                println!("wrote {} records to {}", report.records.len(), path.display());
            }
            println!(
                "checked={} matched={} mismatched={} skipped={} coverage={}/49 wall={:.2}s",
                report.checked,
                report.matched,
                report.mismatches.len(),
                report.skipped,
                report.coverage.len(),
                report.wall_time
            );
            for m in report.mismatches.iter().take(20) {
                println!("MISMATCH b={} p={} status={}", m.b, m.p, m.status());
            }
            Ok(if report.all_matched() { 0 } else { 1 })
        }
        Command::GeneralForm { a, b, c, p, d, bound } => {
            let bound = match bound {
                Some(v) => v,
                None => config_get(&cfg, "bound")?.unwrap_or(1000),
            };
            let field = PrimeField::new(p).map_err(|e| anyhow!("bad p: {e}"))?;
            let form = GeneralForm::new(a, b, c).map_err(|e| anyhow!("bad form: {e}"))?;
            if d == 0 || d_check(&form, d).is_none() {
                bail!(
                    "form discriminant {} is neither -d nor -4d for d = {d}",
                    form.disc()
                );
            }
            match scale_representation(&form, &field, d, bound) {
                Ok(out) => {
                    println!(
                        "f = {}x^2 + {}xy + {}y^2 (disc {}), p = {p}, d = {d}",
                        a,
                        b,
                        c,
                        form.disc()
                    );
                    println!(
                        "representation f({}, {}) = p; witness ({}, {}) with a' = {} = {}^2 + {}^2",
                        out.rep_x,
                        out.rep_y,
                        out.witness.x1,
                        out.witness.y1,
                        out.a_prime,
                        out.witness.u1,
                        out.witness.v1
                    );
                    println!(
                        "transform [[{}, {}], [{}, {}]] sends f to ({}, {}, {})",
                        out.transform[0][0],
                        out.transform[0][1],
                        out.transform[1][0],
                        out.transform[1][1],
                        out.g.0,
                        out.g.1,
                        out.g.2
                    );
                    let term = |n: i64| {
                        if n < 0 {
                            format!("({n})")
                        } else {
                            n.to_string()
                        }
                    };
                    println!(
                        "{} * {} = {}^2 + {} * {}^2 = {}^2 + {}^2 (exact)",
                        out.a_prime,
                        p,
                        term(out.x),
                        d,
                        term(out.y),
                        term(out.u),
                        term(out.v)
                    );
                    Ok(0)
                }
                Err(QuarticError::NotRepresented) => {
                    println!("p = {p} is not represented by this form");
                    Ok(0)
                }
                Err(e) => Err(anyhow!("{e}")),
            }
        }
    }
}

fn d_check(form: &GeneralForm, d: u64) -> Option<()> {
    let disc = form.disc();
    (disc == -(d as i64) || disc == -4 * d as i64).then_some(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
