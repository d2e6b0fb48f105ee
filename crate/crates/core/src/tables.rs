//! Length table of damping-correcting codes built as `outer ⊗ dual rail`,
//! against a static reference listing of the shortest known lengths.
//!
//! An `[[m, k, t+1]]` outer code gives an `[[2m, k]]` t-code. Outer codes
//! come from the database closed under dual-rail concatenation and
//! logical-fixing subcodes, up to [`MAX_OUTER_LENGTH`] qubits.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::adverify::{verify_t_code, VerifyConfig};
use crate::concat::{concatenate, dual_rail};
use crate::error::{Error, Result};
use crate::stabcode::{database_names, distance, get_code, subcode_fix_logical, Distance, LogicalKind, StabilizerCode};

/// Longest outer code searched; keeps certification of every constructed
/// row within the default verifier budget.
pub const MAX_OUTER_LENGTH: usize = 10;

/// One reference entry: shortest known `n` for `(k, t)` and the distance
/// bounds of a general `[[n, k]]` stabilizer code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub d_min: usize,
    pub d_max: usize,
}

const fn ref_(n: usize, k: usize, t: usize, d_min: usize, d_max: usize) -> ReferenceRow {
    ReferenceRow { n, k, t, d_min, d_max }
}

#[rustfmt::skip]
const REFERENCE: [ReferenceRow; 60] = [
    ref_(8, 1, 1, 3, 3),
    ref_(10, 1, 2, 4, 4),
    ref_(20, 1, 3, 7, 7),
    ref_(22, 1, 4, 7, 8),
    ref_(32, 1, 5, 11, 11),
    ref_(34, 1, 6, 11, 12),
    ref_(48, 1, 7, 13, 17),
    ref_(50, 1, 8, 13, 17),
    ref_(56, 1, 9, 15, 19),
    ref_(58, 1, 10, 15, 20),
    ref_(8, 2, 1, 3, 3),
    ref_(16, 2, 2, 6, 6),
    ref_(20, 2, 3, 6, 7),
    ref_(28, 2, 4, 10, 10),
    ref_(32, 2, 5, 10, 11),
    ref_(46, 2, 6, 12, 16),
    ref_(52, 2, 7, 14, 18),
    ref_(54, 2, 8, 14, 18),
    ref_(56, 2, 9, 14, 19),
    ref_(82, 2, 10, 18, 28),
    ref_(12, 3, 1, 4, 4),
    ref_(16, 3, 2, 5, 5),
    ref_(24, 3, 3, 7, 8),
    ref_(30, 3, 4, 9, 10),
    ref_(40, 3, 5, 10, 13),
    ref_(48, 3, 6, 11, 16),
    ref_(52, 3, 7, 13, 17),
    ref_(54, 3, 8, 13, 18),
    ref_(72, 3, 9, 15, 24),
    ref_(82, 3, 10, 18, 27),
    ref_(12, 4, 1, 4, 4),
    ref_(20, 4, 2, 6, 6),
    ref_(24, 4, 3, 6, 8),
    ref_(32, 4, 4, 8, 10),
    ref_(40, 4, 5, 10, 13),
    ref_(50, 4, 6, 12, 16),
    ref_(52, 4, 7, 12, 17),
    ref_(70, 4, 8, 15, 23),
    ref_(80, 4, 9, 16, 26),
    ref_(96, 4, 10, 18, 31),
    ref_(16, 5, 1, 4, 5),
    ref_(22, 5, 2, 6, 7),
    ref_(28, 5, 3, 7, 9),
    ref_(36, 5, 4, 8, 11),
    ref_(42, 5, 5, 9, 13),
    ref_(50, 5, 6, 11, 16),
    ref_(60, 5, 7, 13, 19),
    ref_(78, 5, 8, 15, 25),
    ref_(86, 5, 9, 18, 28),
    ref_(98, 5, 10, 19, 32),
    ref_(16, 6, 1, 4, 4),
    ref_(24, 6, 2, 6, 7),
    ref_(28, 6, 3, 6, 8),
    ref_(36, 6, 4, 8, 11),
    ref_(48, 6, 5, 10, 15),
    ref_(58, 6, 6, 12, 19),
    ref_(64, 6, 7, 14, 21),
    ref_(84, 6, 8, 17, 27),
    ref_(92, 6, 9, 18, 29),
    ref_(104, 6, 10, 19, 33),
];

/// Static reference listing for `k ∈ 1..=6`, `t ∈ 1..=10`.
pub fn reference_rows() -> &'static [ReferenceRow] {
    &REFERENCE
}

pub fn reference_row(k: usize, t: usize) -> Option<ReferenceRow> {
    REFERENCE.iter().copied().find(|r| r.k == k && r.t == t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowSource {
    /// Built here and certified by the verifier.
    Constructed,
    /// Shipped static value; never asserted.
    ReferenceOnly,
}

/// A constructed row has `n = 2 · outer_length`; a reference-only row
/// carries the reference `n` and no outer code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub outer_code: Option<String>,
    pub outer_length: Option<usize>,
    pub source: RowSource,
    pub reference_n: Option<usize>,
}

impl TableRow {
    /// `None` unless the row is constructed and a reference value exists.
    pub fn matches_reference(&self) -> Option<bool> {
        match self.source {
            RowSource::Constructed => self.reference_n.map(|r| r == self.n),
            RowSource::ReferenceOnly => None,
        }
    }
}

fn subcodes(code: &StabilizerCode) -> Result<Vec<StabilizerCode>> {
    let k = code.k();
    let mut out = Vec::new();
    for kind in [LogicalKind::Z, LogicalKind::X] {
        // proper subsets only: k = 0 is never a table entry
        for size in 1..k {
            for fixed in (0..k).combinations(size) {
                let mut sub = code.clone();
                for &i in fixed.iter().rev() {
                    sub = subcode_fix_logical(&sub, i, kind)?;
                }
                out.push(sub);
            }
        }
    }
    Ok(out)
}

/// Database codes closed under dual-rail concatenation and subcodes, at
/// most [`MAX_OUTER_LENGTH`] qubits, shortest first and otherwise in
/// discovery order.
pub fn outer_pool() -> Result<Vec<StabilizerCode>> {
    let mut pool: Vec<StabilizerCode> = Vec::new();
    let mut frontier: Vec<StabilizerCode> = database_names().iter().map(|n| get_code(n)).collect::<Result<_>>()?;
    let inner = dual_rail();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for code in frontier {
            if code.n() > MAX_OUTER_LENGTH || pool.iter().any(|c| c.name() == code.name()) {
                continue;
            }
            if 2 * code.n() <= MAX_OUTER_LENGTH {
                next.push(concatenate(&code, &inner)?);
            }
            next.extend(subcodes(&code)?);
            pool.push(code);
        }
        frontier = next;
    }
    pool.sort_by_key(StabilizerCode::n);
    Ok(pool)
}

/// `d ≥ t + 1`, with the quantum Singleton bound `2(d-1) ≤ m - k` as a
/// cheap filter.
fn has_distance_above(code: &StabilizerCode, t: usize) -> Result<bool> {
    if code.k() == 0 || 2 * t > code.n() - code.k() {
        return Ok(false);
    }
    Ok(matches!(distance(code, t)?, Distance::AtLeast(_)))
}

/// Row for `(k, t)`: the shortest pool code with `d ≥ t+1` whose
/// concatenation passes the verifier. Candidates that exceed the budget
/// are skipped.
pub fn table_row(pool: &[StabilizerCode], k: usize, t: usize, config: &VerifyConfig) -> Result<TableRow> {
    if k == 0 || t == 0 {
        return Err(Error::Precondition("table rows need k >= 1 and t >= 1".into()));
    }
    let reference = reference_row(k, t);
    for outer in pool.iter().filter(|c| c.k() == k) {
        if !has_distance_above(outer, t)? {
            continue;
        }
        let code = concatenate(outer, &dual_rail())?;
        match verify_t_code(&code, t, config) {
            Ok(report) if report.passed() => {
                return Ok(TableRow {
                    n: code.n(),
                    k,
                    t,
                    outer_code: Some(outer.name().to_string()),
                    outer_length: Some(outer.n()),
                    source: RowSource::Constructed,
                    reference_n: reference.map(|r| r.n),
                });
            }
            Ok(_) | Err(Error::Budget { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(TableRow {
        n: reference.map_or(0, |r| r.n),
        k,
        t,
        outer_code: None,
        outer_length: None,
        source: RowSource::ReferenceOnly,
        reference_n: reference.map(|r| r.n),
    })
}

/// Rows for every `(k, t)` pair, `k` major.
pub fn table(ks: &[usize], ts: &[usize], config: &VerifyConfig) -> Result<Vec<TableRow>> {
    let pool = outer_pool()?;
    ks.iter().cartesian_product(ts).map(|(&k, &t)| table_row(&pool, k, t, config)).collect()
}
