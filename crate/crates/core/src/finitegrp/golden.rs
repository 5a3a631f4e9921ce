//! Golden records for small special linear groups, checked into the
//! repository as JSON and regenerated on demand.

use serde::{Deserialize, Serialize};

use super::characters::character_degrees;
use super::group::special_linear;
use super::normal::normal_subgroups;
use super::{GroupError, CLASS_CAP};

/// `(l, m)` pairs covered by the fixtures, all with `n = 2`.
pub const GOLDEN_GROUPS: &[(u64, u32)] = &[(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRecord {
    pub group: String,
    pub n: usize,
    pub l: u64,
    pub m: u32,
    pub order: usize,
    pub normal_subgroup_orders: Vec<usize>,
    pub character_degrees: Vec<u64>,
}

pub fn golden_record(l: u64, m: u32) -> Result<GoldenRecord, GroupError> {
    let g = special_linear(2, l, m, CLASS_CAP)?;
    let normals = normal_subgroups(&g)?;
    let degrees = character_degrees(&g)?;
    let modulus = if m == 1 { l.to_string() } else { format!("{l}^{m}") };
    Ok(GoldenRecord {
        group: format!("SL_2(Z/{modulus})"),
        n: 2,
        l,
        m,
        order: g.order(),
        normal_subgroup_orders: normals.iter().map(|s| s.order()).collect(),
        character_degrees: degrees.degrees,
    })
}

pub fn golden_records() -> Result<Vec<GoldenRecord>, GroupError> {
    GOLDEN_GROUPS.iter().map(|&(l, m)| golden_record(l, m)).collect()
}

/// Pretty JSON with a trailing newline.
pub fn to_json(records: &[GoldenRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialise");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> serde_json::Result<Vec<GoldenRecord>> {
    serde_json::from_str(text)
}
