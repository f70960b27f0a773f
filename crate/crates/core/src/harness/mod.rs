//! Sweep engine: gate each pair `(b, p)`, compare the predicted
//! `(U_{(p-1)/4}, V_{(p-1)/4})` against direct Lucas evaluation, check the
//! eta-level dictionary, aggregate coverage of the 49 cases, and emit
//! JSONL/CSV reports.

pub mod witness;

use crate::lucas::{lucas_uv_mod, LucasParams};
use crate::modarith::PrimeField;
use crate::oracle::{self, CaseId, Conjecture, Mu4};
use crate::quartic;
use crate::represent::{self, NormalizedRep, SkipReason};
use crate::sieve;
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Gates `(b, p)` and produces the normalized representation, or the first
/// failing hypothesis.
pub fn gated_rep(b: i64, p: u64) -> Result<(PrimeField, NormalizedRep), SkipReason> {
    let field = PrimeField::new(p).map_err(|_| SkipReason::NotPrime)?;
    let d = represent::gate(b, &field)?;
    let (x, y) = represent::cornacchia(&field, d).ok_or(SkipReason::NotRepresentable)?;
    let (u, v) = represent::two_squares(&field).expect("gate checked p = 1 mod 4");
    let rep = represent::Representation::new(p, d, x, y, u, v).expect("solvers are exact");
    Ok((field, represent::normalize(&rep)))
}

/// Everything computed for one gated pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedDetail {
    pub case: CaseId,
    pub x: i64,
    pub y: i64,
    pub u: i64,
    pub v: i64,
    pub branch: &'static str,
    pub eta_pred: Mu4,
    pub eta_extracted: Option<Mu4>,
    pub u_pred: u64,
    pub v_pred: u64,
    pub u_actual: u64,
    pub v_actual: u64,
    /// prediction equals direct Lucas evaluation
    pub uv_match: bool,
    /// predicted eta equals the residue-extracted eta
    pub eta_match: bool,
    /// eta_to_uv(predict_eta) equals predict
    pub dict_match: bool,
}

/// One verification record; skipped pairs carry the failed hypothesis
/// instead of a detail block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRecord {
    pub b: i64,
    pub p: u64,
    pub d: Option<u64>,
    pub detail: Option<CheckedDetail>,
    pub skip: Option<SkipReason>,
}

impl VerifyRecord {
    pub fn is_checked(&self) -> bool {
        self.detail.is_some()
    }

    pub fn is_match(&self) -> bool {
        self.detail
            .as_ref()
            .map(|d| d.uv_match && d.eta_match && d.dict_match)
            .unwrap_or(false)
    }

    pub fn status(&self) -> String {
        match (&self.detail, &self.skip) {
            (Some(d), _) => {
                if d.uv_match && d.eta_match && d.dict_match {
                    "match".to_string()
                } else if !d.uv_match {
                    "mismatch".to_string()
                } else if !d.eta_match {
                    "mismatch-eta".to_string()
                } else {
                    "mismatch-dict".to_string()
                }
            }
            (None, Some(reason)) => format!("skipped: {reason}"),
            (None, None) => "skipped".to_string(),
        }
    }

    /// One JSONL object with the fixed column set.
    pub fn to_json(&self) -> serde_json::Value {
        let d = self.detail.as_ref();
        json!({
            "b": self.b,
            "d": self.d,
            "p": self.p,
            "case": d.map(|d| d.case.to_string()),
            "x": d.map(|d| d.x),
            "y": d.map(|d| d.y),
            "u": d.map(|d| d.u),
            "v": d.map(|d| d.v),
            "eta": d.map(|d| d.eta_pred.to_string()),
            "u_pred": d.map(|d| d.u_pred),
            "v_pred": d.map(|d| d.v_pred),
            "u_actual": d.map(|d| d.u_actual),
            "v_actual": d.map(|d| d.v_actual),
            "status": self.status(),
        })
    }

    /// CSV header matching [`VerifyRecord::to_csv_row`].
    pub const CSV_HEADER: &'static str =
        "b,d,p,case,x,y,u,v,eta,u_pred,v_pred,u_actual,v_actual,status";

    pub fn to_csv_row(&self) -> String {
        fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
            v.map(|v| v.to_string()).unwrap_or_default()
        }
        let d = self.detail.as_ref();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.b,
            opt(self.d),
            self.p,
            opt(d.map(|d| d.case)),
            opt(d.map(|d| d.x)),
            opt(d.map(|d| d.y)),
            opt(d.map(|d| d.u)),
            opt(d.map(|d| d.v)),
            opt(d.map(|d| d.eta_pred)),
            opt(d.map(|d| d.u_pred)),
            opt(d.map(|d| d.v_pred)),
            opt(d.map(|d| d.u_actual)),
            opt(d.map(|d| d.v_actual)),
            self.status()
        )
    }
}

/// Runs the whole check for a single pair. All failures are data in the
/// record; this function does not error.
pub fn verify_one(b: i64, p: u64) -> VerifyRecord {
    let d = represent::d_for_b(b);
    match gated_rep(b, p) {
        Err(reason) => VerifyRecord {
            b,
            p,
            d,
            detail: None,
            skip: Some(reason),
        },
        Ok((field, rep)) => {
            let pred = oracle::predict(b, &rep, &field).expect("gated input");
            let actual = lucas_uv_mod(&LucasParams::new(b, -1), (p - 1) / 4, &field);
            let eta_pred = oracle::predict_eta(b, &rep).expect("gated input");
            let eta_extracted = quartic::extract_eta(b, &rep, &field).ok().map(|(e, _)| e);
            let dict = oracle::eta_to_uv(eta_pred, &rep, b, &field).expect("gated input");
            let case = oracle::classify(b, &rep).expect("gated input");
            VerifyRecord {
                b,
                p,
                d: Some(rep.d),
                detail: Some(CheckedDetail {
                    case,
                    x: rep.x,
                    y: rep.y,
                    u: rep.u,
                    v: rep.v,
                    branch: pred.branch,
                    eta_pred,
                    eta_extracted,
                    u_pred: pred.u,
                    v_pred: pred.v,
                    u_actual: actual.u,
                    v_actual: actual.v,
                    uv_match: pred.u == actual.u && pred.v == actual.v,
                    eta_match: eta_extracted == Some(eta_pred),
                    dict_match: dict.u == pred.u && dict.v == pred.v,
                }),
                skip: None,
            }
        }
    }
}

/// Output format for sweep report files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Jsonl,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(ReportFormat::Jsonl),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown format {other:?} (expected jsonl or csv)")),
        }
    }
}

/// What to sweep: which statement families, which `b` interval, and the
/// prime bound. `b = 0` and `b` outside the selected families are skipped
/// silently (they produce no record).
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub conjectures: Vec<u8>,
    pub b_min: i64,
    pub b_max: i64,
    pub p_max: u64,
    pub jobs: Option<usize>,
}

impl SweepSpec {
    pub fn new(conjectures: Vec<u8>, b_min: i64, b_max: i64, p_max: u64) -> SweepSpec {
        SweepSpec {
            conjectures,
            b_min,
            b_max,
            p_max,
            jobs: None,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.p_max < 5 {
            return Err(HarnessError::InvalidSpec("p_max must be >= 5".into()));
        }
        if self.conjectures.iter().any(|c| !(1..=4).contains(c)) {
            return Err(HarnessError::InvalidSpec(
                "conjecture selector must be in 1..=4".into(),
            ));
        }
        if self.b_values().is_empty() {
            return Err(HarnessError::InvalidSpec(
                "b range is empty after congruence filtering".into(),
            ));
        }
        Ok(())
    }

    /// The `b` values selected by the interval and family filter.
    pub fn b_values(&self) -> Vec<i64> {
        (self.b_min..=self.b_max)
            .filter(|&b| b != 0)
            .filter(|&b| {
                Conjecture::from_b(b)
                    .map(|c| self.conjectures.contains(&c.index()))
                    .unwrap_or(false)
            })
            .collect()
    }
}

/// Aggregated sweep outcome. `checked = matched + mismatches.len()`;
/// skipped pairs are counted separately.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub checked: u64,
    pub matched: u64,
    pub skipped: u64,
    pub mismatches: Vec<VerifyRecord>,
    pub coverage: BTreeMap<CaseId, u64>,
    pub records: Vec<VerifyRecord>,
    pub wall_time: f64,
}

impl SweepReport {
    pub fn all_matched(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Sweeps all primes `p = 1 (mod 4)` below `p_max` against the selected
/// `b` values. Work is partitioned over prime blocks; aggregation sorts by
/// `(b, p)`, so the outcome is identical for any worker count.
pub fn sweep(spec: &SweepSpec) -> Result<SweepReport, HarnessError> {
    spec.validate()?;
    let start = Instant::now();
    let primes = sieve::primes_one_mod_four_below(spec.p_max);
    let bs = spec.b_values();

    let run = || {
        primes
            .par_chunks(64)
            .flat_map_iter(|block| {
                let bs = &bs;
                block
                    .iter()
                    .flat_map(move |&p| bs.iter().map(move |&b| verify_one(b, p)))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    };
    let mut records = match spec.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    records.sort_by_key(|r| (r.b, r.p));

    let mut report = SweepReport {
        checked: 0,
        matched: 0,
        skipped: 0,
        mismatches: Vec::new(),
        coverage: BTreeMap::new(),
        records: Vec::new(),
        wall_time: 0.0,
    };
    for r in &records {
        match &r.detail {
            Some(detail) => {
                report.checked += 1;
                *report.coverage.entry(detail.case).or_insert(0) += 1;
                if r.is_match() {
                    report.matched += 1;
                } else {
                    report.mismatches.push(r.clone());
                }
            }
            None => report.skipped += 1,
        }
    }
    report.records = records;
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Writes records in the requested format: one JSON object per line, or
/// CSV with a header row.
pub fn write_records(
    records: &[VerifyRecord],
    format: ReportFormat,
    mut out: impl Write,
) -> Result<(), HarnessError> {
    match format {
        ReportFormat::Jsonl => {
            for r in records {
                serde_json::to_writer(&mut out, &r.to_json()).map_err(std::io::Error::from)?;
                out.write_all(b"\n")?;
            }
        }
        ReportFormat::Csv => {
            writeln!(out, "{}", VerifyRecord::CSV_HEADER)?;
            for r in records {
                writeln!(out, "{}", r.to_csv_row())?;
            }
        }
    }
    Ok(())
}
