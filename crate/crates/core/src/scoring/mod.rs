//! The K2 marginal likelihood of a structure, in log domain.
//!
//! For node `i` with parent set `π_i` the per-node factor is
//!
//! ```text
//! g(i, π_i) = ∏_j (r_i - 1)! / (N_ij + r_i - 1)! · ∏_k α_ijk!
//! ```
//!
//! taken over the parent instantiations `j` observed in the data, and the
//! joint `P(B_S, D)` is `P(B_S) · ∏_i g(i, π_i)`. Everything here works with
//! natural logs of these quantities.

mod counts;
mod log_factorial;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{check_same_variables, Database, Structure};
use crate::real::{log_sum_exp, Real};
use crate::search::{count_dags, ln_biguint};

pub use counts::{tabulate_counts, CountEntry, CountTable};
pub use log_factorial::{log_factorial_table, LogFactorialTable};

/// Convention for the structure prior `P(B_S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PriorMode {
    /// `P(B_S)` taken as 1; the score is the marginal likelihood.
    None,
    /// Uniform over every labeled DAG on `n` nodes.
    UniformAllDags(usize),
    /// Uniform over the `2^(n(n-1)/2)` structures consistent with an ordering.
    UniformOrdered(usize),
}

impl PriorMode {
    pub fn node_count(&self) -> Option<usize> {
        match *self {
            PriorMode::None => None,
            PriorMode::UniformAllDags(n) | PriorMode::UniformOrdered(n) => Some(n),
        }
    }

    /// `ln P(B_S)`.
    pub fn log_prior<T: Real>(&self) -> T {
        match *self {
            PriorMode::None => T::zero(),
            PriorMode::UniformAllDags(n) => T::of(-ln_biguint(&count_dags(n))),
            PriorMode::UniformOrdered(n) => {
                let pairs = (n * n.saturating_sub(1) / 2) as f64;
                T::of(-pairs * std::f64::consts::LN_2)
            }
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        match self.node_count() {
            Some(k) if k != n => Err(Error::VariableMismatch(format!(
                "prior is defined for {k} variables, database has {n}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PriorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PriorMode::None => write!(f, "none"),
            PriorMode::UniformAllDags(n) => write!(f, "uniform over all DAGs (n = {n})"),
            PriorMode::UniformOrdered(n) => write!(f, "uniform over ordered structures (n = {n})"),
        }
    }
}

/// A natural-log score together with the prior that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScore<T> {
    pub log_value: T,
    pub prior: PriorMode,
}

impl<T: Real> LogScore<T> {
    pub fn log10(&self) -> T {
        self.log_value / T::of(std::f64::consts::LN_10)
    }

    /// `exp(log_value)`; underflows to zero for very small scores.
    pub fn value(&self) -> T {
        self.log_value.exp()
    }
}

/// Scores structures against one database, sharing a log-factorial table.
#[derive(Debug, Clone)]
pub struct Scorer<'a, T> {
    db: &'a Database,
    table: LogFactorialTable<T>,
}

impl<'a, T: Real> Scorer<'a, T> {
    pub fn new(db: &'a Database) -> Result<Self> {
        if db.is_empty() {
            return Err(Error::EmptyDatabase);
        }
        let table = LogFactorialTable::new(db.len() + db.max_arity() - 1);
        Ok(Scorer { db, table })
    }

    pub fn database(&self) -> &'a Database {
        self.db
    }

    /// `ln g(node, parents)`.
    pub fn g_log(&self, node: usize, parents: &[usize]) -> Result<T> {
        Ok(self.g_log_of(&tabulate_counts(self.db, node, parents)?))
    }

    pub(crate) fn g_log_sorted(&self, node: usize, parents: Vec<usize>) -> T {
        self.g_log_of(&counts::tabulate_sorted(self.db, node, parents))
    }

    /// `ln g` from an existing count table. Terms are summed in instantiation
    /// order, so the result is bit-identical under any case permutation.
    pub fn g_log_of(&self, counts: &CountTable) -> T {
        let r = self.db.variables()[counts.node].arity();
        let lf = &self.table;
        let head = lf.get(r - 1);
        let mut entries: Vec<&CountEntry> = counts.entries.iter().collect();
        entries.sort_unstable_by(|a, b| a.instantiation.cmp(&b.instantiation));
        entries.into_iter().fold(T::zero(), |acc, e| {
            let tail = e
                .counts
                .iter()
                .fold(T::zero(), |s, &a| s + lf.get(a as usize));
            acc + head - lf.get(e.total as usize + r - 1) + tail
        })
    }

    /// `ln P(B_S, D) = ln P(B_S) + Σ_i ln g(i, π_i)`.
    pub fn structure_log_score(&self, s: &Structure, prior: PriorMode) -> Result<LogScore<T>> {
        check_same_variables(s.variables(), self.db.variables())?;
        prior.check(s.len())?;
        let likelihood = (0..s.len())
            .map(|i| self.g_log_sorted(i, s.parents(i).to_vec()))
            .fold(T::zero(), |a, b| a + b);
        Ok(LogScore {
            log_value: prior.log_prior::<T>() + likelihood,
            prior,
        })
    }

    /// Per-node `ln g` terms of `s`.
    pub fn node_terms(&self, s: &Structure) -> Result<Vec<T>> {
        check_same_variables(s.variables(), self.db.variables())?;
        Ok((0..s.len())
            .map(|i| self.g_log_sorted(i, s.parents(i).to_vec()))
            .collect())
    }
}

/// `ln g(node, parents)` against `db`.
pub fn g_log<T: Real>(node: usize, parents: &[usize], db: &Database) -> Result<T> {
    Scorer::new(db)?.g_log(node, parents)
}

/// `ln P(B_S, D)` under the given prior.
pub fn structure_log_score<T: Real>(
    s: &Structure,
    db: &Database,
    prior: PriorMode,
) -> Result<LogScore<T>> {
    Scorer::new(db)?.structure_log_score(s, prior)
}

/// Posterior ratio `P(B_S1 | D) / P(B_S2 | D)` under equal structure priors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison<T> {
    pub log_ratio: T,
    pub ratio: T,
}

pub fn compare<T: Real>(s1: &Structure, s2: &Structure, db: &Database) -> Result<Comparison<T>> {
    let scorer = Scorer::<T>::new(db)?;
    let a = scorer.structure_log_score(s1, PriorMode::None)?.log_value;
    let b = scorer.structure_log_score(s2, PriorMode::None)?.log_value;
    let log_ratio = a - b;
    Ok(Comparison {
        log_ratio,
        ratio: log_ratio.exp(),
    })
}

/// Posterior probabilities of `structures`, normalized over the list itself.
/// Exact when the list is the whole structure space, otherwise an
/// approximation restricted to the listed set.
pub fn normalized_posteriors<T: Real>(
    structures: &[Structure],
    db: &Database,
    prior: PriorMode,
) -> Result<Vec<T>> {
    if structures.is_empty() {
        return Err(Error::EmptyList);
    }
    let mut seen = HashSet::new();
    for (k, s) in structures.iter().enumerate() {
        if !seen.insert(s.parent_sets()) {
            return Err(Error::DuplicateStructure(k));
        }
    }
    let scorer = Scorer::<T>::new(db)?;
    let scores = structures
        .iter()
        .map(|s| Ok(scorer.structure_log_score(s, prior)?.log_value))
        .collect::<Result<Vec<T>>>()?;
    let total = log_sum_exp(&scores);
    Ok(scores.iter().map(|&v| (v - total).exp()).collect())
}
