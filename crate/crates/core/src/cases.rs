//! The four built-in 5-node PageRank experiments (`d = 0.85`).

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::{Error, PageRank, Result, SparseColumnMatrix};

pub const CASE_NAMES: [&str; 4] = ["case1", "case2", "case3", "case4"];

pub const DEFAULT_DAMPING: f64 = 0.85;

#[rustfmt::skip]
const CASE1: [f64; 25] = [
    0.0, 0.0, 0.0, 0.0, 0.5,
    1.0, 0.0, 0.0, 0.0, 0.5,
    0.0, 1.0, 0.0, 0.0, 0.0,
    0.0, 0.0, 1.0, 0.0, 0.0,
    0.0, 0.0, 0.0, 1.0, 0.0,
];

#[rustfmt::skip]
const CASE2: [f64; 25] = [
    0.0, 0.0, 0.5, 0.0, 0.5,
    1.0, 0.0, 0.0, 0.0, 0.5,
    0.0, 1.0, 0.0, 0.0, 0.0,
    0.0, 0.0, 0.5, 0.0, 0.0,
    0.0, 0.0, 0.0, 1.0, 0.0,
];

#[rustfmt::skip]
const CASE3: [f64; 25] = [
    0.0, 0.5, 0.5, 0.0, 0.5,
    1.0, 0.0, 0.0, 0.0, 0.5,
    0.0, 0.5, 0.0, 0.0, 0.0,
    0.0, 0.0, 0.5, 0.0, 0.0,
    0.0, 0.0, 0.0, 1.0, 0.0,
];

#[rustfmt::skip]
const CASE4: [f64; 25] = [
    0.0, 0.0, 0.0, 0.0, 0.01,
    1.0, 0.0, 0.0, 0.0, 0.0,
    0.0, 1.0, 0.0, 0.0, 0.0,
    0.0, 0.0, 1.0, 0.0, 0.0,
    0.0, 0.0, 0.0, 1.0, 0.99,
];

#[derive(Debug, Clone)]
pub struct CaseDefinition {
    pub name: &'static str,
    pub q: SparseColumnMatrix,
    pub damping: f64,
    pub description: &'static str,
}

impl CaseDefinition {
    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn pagerank(&self) -> Result<PageRank> {
        PageRank::new(self.q.clone(), self.damping)
    }
}

pub fn load_case(name: &str) -> Result<CaseDefinition> {
    let (name, dense, description) = match name {
        "case1" => ("case1", &CASE1, "ring 1→2→3→4→5 with node 5 linking back to 1 and 2"),
        "case2" => ("case2", &CASE2, "case 1 plus links 3→1 and 3→4"),
        "case3" => ("case3", &CASE3, "case 2 plus links 2→1 and 2→3"),
        "case4" => ("case4", &CASE4, "chain 1→2→3→4→5 with a 0.99 self loop on node 5"),
        other => return Err(Error::UnknownCase(other.to_string())),
    };
    let q = SparseColumnMatrix::from_dense(5, dense)?;
    debug_assert!(q.columns().all(|c| c.values().iter().sum::<f64>() == 1.0));
    Ok(CaseDefinition {
        name,
        q,
        damping: DEFAULT_DAMPING,
        description,
    })
}

pub fn builtin_cases() -> Vec<CaseDefinition> {
    CASE_NAMES
        .iter()
        .map(|n| load_case(n).expect("built-in case"))
        .collect()
}
