use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::Database;

/// One observed parent instantiation and the child-value tallies under it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountEntry {
    /// Parent values, in ascending parent-index order.
    pub instantiation: Vec<usize>,
    /// `N_ij`
    pub total: u64,
    /// `α_ijk` for every child value `k`.
    pub counts: Vec<u64>,
}

/// Sufficient statistics for one node and one parent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub node: usize,
    pub parents: Vec<usize>,
    /// Observed instantiations, in order of first occurrence in the database.
    pub entries: Vec<CountEntry>,
}

impl CountTable {
    /// `q_i`: the number of distinct parent instantiations observed.
    pub fn q(&self) -> usize {
        self.entries.len()
    }

    /// Total number of cases counted.
    pub fn cases(&self) -> u64 {
        self.entries.iter().map(|e| e.total).sum()
    }
}

pub(crate) fn check_parent_set(db: &Database, node: usize, parents: &[usize]) -> Result<()> {
    let n = db.num_variables();
    if node >= n {
        return Err(Error::InvalidStructure(format!("node {node} out of range")));
    }
    for (k, &p) in parents.iter().enumerate() {
        if p >= n {
            return Err(Error::InvalidStructure(format!("parent {p} out of range")));
        }
        if p == node {
            return Err(Error::InvalidStructure(format!(
                "node {node} listed as its own parent"
            )));
        }
        if parents[..k].contains(&p) {
            return Err(Error::InvalidStructure(format!("parent {p} listed twice")));
        }
    }
    Ok(())
}

/// Tallies `N_ij` and `α_ijk` for `node` under `parents` in one pass over
/// the cases. Only instantiations that occur in `db` get an entry.
pub fn tabulate_counts(db: &Database, node: usize, parents: &[usize]) -> Result<CountTable> {
    check_parent_set(db, node, parents)?;
    let mut parents = parents.to_vec();
    parents.sort_unstable();
    Ok(tabulate_sorted(db, node, parents))
}

pub(crate) fn tabulate_sorted(db: &Database, node: usize, parents: Vec<usize>) -> CountTable {
    let vars = db.variables();
    let r = vars[node].arity();
    let mut entries: Vec<CountEntry> = Vec::new();
    let push = |entries: &mut Vec<CountEntry>, case: &[usize]| {
        entries.push(CountEntry {
            instantiation: parents.iter().map(|&p| case[p]).collect(),
            total: 0,
            counts: vec![0; r],
        });
        entries.len() - 1
    };

    let radix_fits = parents
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(vars[p].arity() as u64))
        .is_some();
    if radix_fits {
        let mut index: HashMap<u64, usize> = HashMap::new();
        for case in db.cases() {
            let key = parents
                .iter()
                .fold(0u64, |k, &p| k * vars[p].arity() as u64 + case[p] as u64);
            let j = *index.entry(key).or_insert_with(|| push(&mut entries, case));
            let e = &mut entries[j];
            e.total += 1;
            e.counts[case[node]] += 1;
        }
    } else {
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        for case in db.cases() {
            let key: Vec<usize> = parents.iter().map(|&p| case[p]).collect();
            let j = *index.entry(key).or_insert_with(|| push(&mut entries, case));
            let e = &mut entries[j];
            e.total += 1;
            e.counts[case[node]] += 1;
        }
    }
    CountTable {
        node,
        parents,
        entries,
    }
}
