use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::model::{check_same_variables, Network, Structure};
use crate::real::Real;
use crate::search::{k2, SearchConfig};

use super::sample_cases;

/// Arc-level differences between a learned structure and a reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StructuralDiff {
    /// Reference arcs absent from the learned structure in either direction.
    pub missing: usize,
    /// Learned arcs absent from the reference in either direction.
    pub extra: usize,
    /// Reference arcs learned with the opposite direction.
    pub reversed: usize,
}

impl StructuralDiff {
    pub fn total(&self) -> usize {
        self.missing + self.extra + self.reversed
    }
}

pub fn structural_difference(reference: &Structure, learned: &Structure) -> StructuralDiff {
    let truth: HashSet<(usize, usize)> = reference.arcs().into_iter().collect();
    let found: HashSet<(usize, usize)> = learned.arcs().into_iter().collect();
    let mut diff = StructuralDiff::default();
    for &(p, c) in &truth {
        if found.contains(&(p, c)) {
            continue;
        }
        if found.contains(&(c, p)) {
            diff.reversed += 1;
        } else {
            diff.missing += 1;
        }
    }
    diff.extra = found
        .iter()
        .filter(|&&(p, c)| !truth.contains(&(p, c)) && !truth.contains(&(c, p)))
        .count();
    diff
}

#[derive(Debug, Clone)]
pub struct ReconstructionEntry<T> {
    pub cases: usize,
    pub learned: Structure,
    pub log_score: T,
    pub diff: StructuralDiff,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct ReconstructionReport<T> {
    pub seed: u64,
    pub entries: Vec<ReconstructionEntry<T>>,
}

/// Samples `max(m_schedule)` cases from `reference` once, runs K2 on each
/// requested prefix and compares the result with the reference structure.
pub fn reconstruction_experiment<T: Real>(
    reference: &Network<T>,
    m_schedule: &[usize],
    seed: u64,
    cfg: &SearchConfig,
) -> Result<ReconstructionReport<T>> {
    let &largest = m_schedule
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidConfig("case-count schedule is empty".into()))?;
    if !cfg.ordering.is_consistent_with(reference.structure()) {
        return Err(Error::InvalidOrdering(
            "ordering is not consistent with the reference structure".into(),
        ));
    }
    let db = sample_cases(reference, largest, seed)?;
    check_same_variables(db.variables(), reference.variables())?;
    let mut entries = Vec::with_capacity(m_schedule.len());
    for &m in m_schedule {
        let prefix = db.prefix(m);
        let start = Instant::now();
        let result = k2::<T>(&prefix, cfg)?;
        let elapsed = start.elapsed();
        entries.push(ReconstructionEntry {
            cases: m,
            diff: structural_difference(reference.structure(), &result.structure),
            log_score: result.total_log_score,
            learned: result.structure,
            elapsed,
        });
    }
    Ok(ReconstructionReport { seed, entries })
}
