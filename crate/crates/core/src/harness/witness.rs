//! Verification of the printed witness tables: for each family class a
//! short list of primes is supposed to land in subcases a, b, c, ... in
//! listed order, jointly covering all 49 cases. Every printed number is
//! machine-checked; discrepancies are recomputed and reported as errata,
//! never hard failures.

use super::{gated_rep, verify_one};
use crate::modarith::is_prime_u64;
use crate::oracle::{classify, CaseId};
use std::collections::BTreeSet;

/// One printed table entry: the prime from the "take p = ..." list, the
/// label used in the decomposition line when it differs, and the printed
/// decompositions when the table shows them.
#[derive(Debug, Clone, Copy)]
pub struct WitnessEntry {
    pub listed_p: u64,
    pub printed_label: Option<u64>,
    pub printed_xy: Option<(i64, i64)>,
    pub printed_uv: Option<(i64, i64)>,
}

#[derive(Debug, Clone, Copy)]
pub struct WitnessGroup {
    pub b: i64,
    pub d: u64,
    pub entries: &'static [WitnessEntry],
}

const fn e(
    listed_p: u64,
    printed_label: Option<u64>,
    printed_xy: Option<(i64, i64)>,
    printed_uv: Option<(i64, i64)>,
) -> WitnessEntry {
    WitnessEntry {
        listed_p,
        printed_label,
        printed_xy,
        printed_uv,
    }
}

/// The printed tables, transcribed digit for digit (including the typos
/// the checker is expected to catch).
pub fn witness_groups() -> Vec<WitnessGroup> {
    const B1: &[WitnessEntry] = &[
        e(281, Some(241), Some((-6, -7)), Some((5, 16))),
        e(41, None, Some((-6, 1)), Some((5, 4))),
        e(29, None, Some((-3, 2)), Some((5, 2))),
        e(109, None, Some((8, -3)), Some((-3, 10))),
        e(61, None, Some((4, -3)), None),
        e(521, None, Some((21, 4)), Some((-11, 20))),
        e(89, None, Some((-3, 4)), Some((5, 8))),
    ];
    const B3: &[WitnessEntry] = &[
        e(113, None, Some((10, 1)), Some((-7, 8))),
        e(17, None, Some((2, 1)), Some((1, 4))),
        e(53, None, Some((1, 2)), Some((-7, 2))),
        e(181, None, Some((8, -3)), None),
        e(29, None, Some((4, 1)), None),
        e(433, None, Some((-15, 4)), Some((17, -12))),
        e(233, None, Some((5, 4)), Some((13, 8))),
    ];
    // the same primes are reused for b = 4 (same d), without reprinting
    const B4: &[WitnessEntry] = &[
        e(281, None, None, None),
        e(41, None, None, None),
        e(29, None, None, None),
        e(109, None, None, None),
        e(61, None, None, None),
        e(521, None, None, None),
        e(89, None, None, None),
    ];
    const B2: &[WitnessEntry] = &[
        e(73, None, Some((-7, -6)), Some((-3, 8))),
        e(17, None, Some((-3, 2)), Some((1, 4))),
        e(113, None, Some((9, 4)), Some((-7, 8))),
        e(41, None, Some((-3, 4)), Some((5, 4))),
    ];
    const B6: &[WitnessEntry] = &[
        e(89, None, Some((-7, 2)), Some((5, 8))),
        e(41, None, Some((1, 2)), Some((5, 4))),
        e(281, None, Some((-11, 4)), Some((5, 16))),
        e(241, None, Some((9, 4)), Some((-15, 4))),
    ];
    const B10: &[WitnessEntry] = &[
        e(113, None, Some((-3, 2)), Some((-7, 8))),
        e(1297, None, Some((-19, -6)), Some((1, -36))),
        e(1889, None, Some((-15, 8)), Some((17, 40))),
        e(641, None, Some((-15, 4)), Some((25, 4))),
    ];
    const B14: &[WitnessEntry] = &[
        e(281, None, Some((-3, 2)), Some((5, 16))),
        e(641, None, Some((21, 2)), Some((25, 4))),
        e(881, None, Some((9, 4)), Some((25, 16))),
        e(809, None, Some((-3, 4)), Some((5, 28))),
    ];
    const B8: &[WitnessEntry] = &[
        e(53, None, Some((-6, 1)), Some((-7, 2))),
        e(141, None, Some((9, 2)), None),
        e(593, None, Some((-24, 1)), Some((-23, 8))),
        e(409, None, Some((16, -3)), Some((-3, 20))),
        e(1361, None, Some((-33, 4)), Some((-31, 20))),
        e(281, None, Some((-3, 4)), Some((5, 16))),
    ];
    const B16: &[WitnessEntry] = &[
        e(101, None, Some((-6, 1)), None),
        e(269, None, Some((-3, 2)), Some((13, 10))),
        e(1361, None, Some((36, 1)), Some((-31, 20))),
        e(601, None, Some((4, -3)), Some((5, 24))),
        e(5009, None, Some((-63, 4)), Some((65, -28))),
        e(1049, None, Some((-3, 4)), Some((5, 32))),
    ];
    vec![
        WitnessGroup { b: 1, d: 5, entries: B1 },
        WitnessGroup { b: 3, d: 13, entries: B3 },
        WitnessGroup { b: 4, d: 5, entries: B4 },
        WitnessGroup { b: 2, d: 2, entries: B2 },
        WitnessGroup { b: 6, d: 10, entries: B6 },
        WitnessGroup { b: 10, d: 26, entries: B10 },
        WitnessGroup { b: 14, d: 50, entries: B14 },
        WitnessGroup { b: 8, d: 17, entries: B8 },
        WitnessGroup { b: 16, d: 65, entries: B16 },
    ]
}

/// A machine-detected discrepancy between the printed table and exact
/// arithmetic, with the recomputed ground truth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Erratum {
    /// The listed prime is not prime; the printed decomposition pins the
    /// intended value.
    NonPrimeListed { b: i64, listed: u64, corrected: u64 },
    /// The decomposition line is labeled with a different number than the
    /// listed prime it decomposes.
    LabelMismatch { b: i64, printed: u64, listed: u64 },
    /// Printed (x, y) does not satisfy x^2 + d y^2 = p.
    BadXy {
        b: i64,
        p: u64,
        printed: (i64, i64),
        computed: (i64, i64),
    },
    /// Printed (u, v) does not satisfy u^2 + v^2 = p.
    BadUv {
        b: i64,
        p: u64,
        printed: (i64, i64),
        computed: (i64, i64),
    },
}

impl std::fmt::Display for Erratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Erratum::NonPrimeListed { b, listed, corrected } => write!(
                f,
                "b={b}: listed {listed} is not prime; printed decomposition gives {corrected}"
            ),
            Erratum::LabelMismatch { b, printed, listed } => write!(
                f,
                "b={b}: decomposition line labeled {printed} but belongs to listed prime {listed}"
            ),
            Erratum::BadXy { b, p, printed, computed } => write!(
                f,
                "b={b} p={p}: printed x={} y={} fails x^2+dy^2=p; recomputed x={} y={}",
                printed.0, printed.1, computed.0, computed.1
            ),
            Erratum::BadUv { b, p, printed, computed } => write!(
                f,
                "b={b} p={p}: printed u={} v={} fails u^2+v^2=p; recomputed u={} v={}",
                printed.0, printed.1, computed.0, computed.1
            ),
        }
    }
}

/// Result for one table entry after recomputation.
#[derive(Debug, Clone)]
pub struct WitnessOutcome {
    pub b: i64,
    pub listed_p: u64,
    /// listed prime, or the corrected one when the listed value is broken
    pub p_used: u64,
    pub case: Option<CaseId>,
    pub expected_subcase: char,
    /// entry landed in the intended subcase
    pub subcase_ok: bool,
    /// prediction, eta and dictionary all verified on this pair
    pub verified: bool,
}

#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub outcomes: Vec<WitnessOutcome>,
    pub errata: Vec<Erratum>,
    pub covered: BTreeSet<CaseId>,
}

impl WitnessReport {
    /// All entries in their intended subcase, verified, and the union of
    /// cases is the full set of 49.
    pub fn all_ok(&self) -> bool {
        self.outcomes.iter().all(|o| o.subcase_ok && o.verified) && self.covers_all_cases()
    }

    pub fn covers_all_cases(&self) -> bool {
        self.covered.len() == CaseId::all().len()
    }
}

fn eval_xy(d: u64, x: i64, y: i64) -> i128 {
    x as i128 * x as i128 + d as i128 * (y as i128) * (y as i128)
}

/// Recomputes every table entry, flags discrepancies, checks that each
/// prime lands in its intended subcase in listed order, and accumulates
/// case coverage.
pub fn verify_witness_tables() -> WitnessReport {
    let mut report = WitnessReport {
        outcomes: Vec::new(),
        errata: Vec::new(),
        covered: BTreeSet::new(),
    };
    for group in witness_groups() {
        for (idx, entry) in group.entries.iter().enumerate() {
            let expected_subcase = (b'a' + idx as u8) as char;
            let mut p = entry.listed_p;
            let mut corrected_from_xy = false;
            if !is_prime_u64(p) {
                // reconstruct the intended prime from the printed equation
                let cand = entry
                    .printed_xy
                    .map(|(x, y)| eval_xy(group.d, x, y))
                    .filter(|&c| c > 0 && c < i128::from(u64::MAX))
                    .map(|c| c as u64)
                    .filter(|&c| is_prime_u64(c));
                match cand {
                    Some(c) => {
                        report.errata.push(Erratum::NonPrimeListed {
                            b: group.b,
                            listed: p,
                            corrected: c,
                        });
                        p = c;
                        corrected_from_xy = true;
                    }
                    None => {
                        report.outcomes.push(WitnessOutcome {
                            b: group.b,
                            listed_p: entry.listed_p,
                            p_used: p,
                            case: None,
                            expected_subcase,
                            subcase_ok: false,
                            verified: false,
                        });
                        continue;
                    }
                }
            } else if let Some(label) = entry.printed_label {
                if label != p {
                    report.errata.push(Erratum::LabelMismatch {
                        b: group.b,
                        printed: label,
                        listed: p,
                    });
                }
            }

            let Ok((_field, rep)) = gated_rep(group.b, p) else {
                report.outcomes.push(WitnessOutcome {
                    b: group.b,
                    listed_p: entry.listed_p,
                    p_used: p,
                    case: None,
                    expected_subcase,
                    subcase_ok: false,
                    verified: false,
                });
                continue;
            };

            // printed decompositions are compared up to sign normalization
            if let Some((px, py)) = entry.printed_xy {
                let exact = eval_xy(group.d, px, py) == p as i128;
                let abs_match = px.abs() == rep.x.abs() && py.abs() == rep.y.abs();
                if !corrected_from_xy && (!exact || !abs_match) {
                    report.errata.push(Erratum::BadXy {
                        b: group.b,
                        p,
                        printed: (px, py),
                        computed: (rep.x, rep.y),
                    });
                }
            }
            if let Some((pu, pv)) = entry.printed_uv {
                let exact =
                    pu as i128 * pu as i128 + pv as i128 * pv as i128 == p as i128;
                let abs_match = pu.abs() == rep.u.abs() && pv.abs() == rep.v.abs();
                if !exact || !abs_match {
                    report.errata.push(Erratum::BadUv {
                        b: group.b,
                        p,
                        printed: (pu, pv),
                        computed: (rep.u, rep.v),
                    });
                }
            }

            let case = classify(group.b, &rep).expect("gated");
            let verified = verify_one(group.b, p).is_match();
            report.covered.insert(case);
            report.outcomes.push(WitnessOutcome {
                b: group.b,
                listed_p: entry.listed_p,
                p_used: p,
                case: Some(case),
                expected_subcase,
                subcase_ok: case.subcase == expected_subcase,
                verified,
            });
        }
    }
    report
}
