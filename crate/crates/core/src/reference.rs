//! Published comparison values, embedded from `data/reference.csv`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const RAW: &str = include_str!("../data/reference.csv");

/// One row of the reference table. `z = 0` marks entries not tied to a charge.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub quantity: String,
    pub d: u32,
    pub z: u32,
    pub label: String,
    pub value: f64,
    /// Printed decimal text, kept for resolution-aware comparisons.
    pub text: String,
    pub provenance: String,
}

impl Reference {
    /// Smallest unit of the last printed digit.
    pub fn resolution(&self) -> f64 {
        let digits = self.text.split('.').nth(1).map_or(0, str::len);
        10f64.powi(-(digits as i32))
    }
}

fn parse(raw: &str) -> Result<Vec<Reference>> {
    let bad = |line: usize, what: &str| Error::Config(format!("reference line {line}: {what}"));
    let mut out = Vec::new();
    for (i, line) in raw.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(bad(i + 1, "expected 6 fields"));
        }
        out.push(Reference {
            quantity: f[0].to_string(),
            d: f[1].parse().map_err(|_| bad(i + 1, "d"))?,
            z: f[2].parse().map_err(|_| bad(i + 1, "z"))?,
            label: f[3].to_string(),
            value: f[4].parse().map_err(|_| bad(i + 1, "value"))?,
            text: f[4].to_string(),
            provenance: f[5].to_string(),
        });
    }
    Ok(out)
}

/// All reference rows in file order.
pub fn all() -> &'static [Reference] {
    static TABLE: OnceLock<Vec<Reference>> = OnceLock::new();
    TABLE.get_or_init(|| parse(RAW).expect("embedded reference data is well formed"))
}

pub fn find(quantity: &str, d: u32, z: u32, label: &str) -> Option<&'static Reference> {
    all()
        .iter()
        .find(|r| r.quantity == quantity && r.d == d && r.z == z && r.label == label)
}

/// Value lookup that reports a missing entry as an error.
pub fn value(quantity: &str, d: u32, z: u32, label: &str) -> Result<f64> {
    find(quantity, d, z, label)
        .map(|r| r.value)
        .ok_or_else(|| Error::Config(format!("no reference for {quantity} d={d} z={z} {label}")))
}
