//! Report records and the JSONL writer.
//!
//! One record per (instance, check), keys in fixed order, integers and
//! booleans only. Records are sorted by (id, check) before writing so the
//! bytes do not depend on execution order.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::harness::config::CheckKind;

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// One verification result row. For non-`main` checks the verdict fields
/// stay at their zero values and `status` carries the outcome.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ReportRecord {
    pub id: String,
    pub check: CheckKind,
    pub bound: u32,
    pub weight_count: u32,
    pub inequality: bool,
    pub equality: bool,
    pub case_i: bool,
    pub case_ii: bool,
    pub status: CheckStatus,
    pub us: u64,
}

impl ReportRecord {
    pub fn bare(id: &str, check: CheckKind, status: CheckStatus) -> Self {
        Self {
            id: id.to_owned(),
            check,
            bound: 0,
            weight_count: 0,
            inequality: false,
            equality: false,
            case_i: false,
            case_ii: false,
            status,
            us: 0,
        }
    }
}

/// Sort into canonical order and write as JSON Lines.
pub fn write_records<W: Write>(mut records: Vec<ReportRecord>, out: &mut W) -> Result<usize> {
    records.sort_by(|a, b| (&a.id, a.check.name()).cmp(&(&b.id, b.check.name())));
    for record in &records {
        serde_json::to_writer(&mut *out, record)?;
        out.write_all(b"\n")?;
    }
    Ok(records.len())
}
