use crate::error::{Error, Result};
use crate::model::Database;
use crate::real::Real;
use crate::scoring::Scorer;

use super::k2::{run_per_node, NodeTrace, SearchConfig, SearchResult};

/// Best parent set for `node` among all subsets of `candidates` with at most
/// `max_parents` members. Ties go to the smaller set, then to the
/// lexicographically smallest index vector.
pub fn best_parents_exhaustive<T: Real>(
    db: &Database,
    node: usize,
    candidates: &[usize],
    max_parents: usize,
) -> Result<(Vec<usize>, T)> {
    if candidates.contains(&node) {
        return Err(Error::InvalidStructure(format!(
            "node {node} cannot be its own candidate parent"
        )));
    }
    let scorer = Scorer::<T>::new(db)?;
    crate::scoring::tabulate_counts(db, node, candidates)?;
    Ok(best_subset(&scorer, node, candidates, max_parents))
}

pub(crate) fn best_subset<T: Real>(
    scorer: &Scorer<'_, T>,
    node: usize,
    candidates: &[usize],
    max_parents: usize,
) -> (Vec<usize>, T) {
    let mut pool = candidates.to_vec();
    pool.sort_unstable();
    pool.dedup();
    let mut best = (Vec::new(), scorer.g_log_sorted(node, Vec::new()));
    for size in 1..=max_parents.min(pool.len()) {
        // lexicographic k-combinations of pool
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let subset: Vec<usize> = idx.iter().map(|&k| pool[k]).collect();
            let g = scorer.g_log_sorted(node, subset.clone());
            if g > best.1 {
                best = (subset, g);
            }
            let Some(k) = (0..size).rev().find(|&k| idx[k] < pool.len() - size + k) else {
                break;
            };
            idx[k] += 1;
            for l in k + 1..size {
                idx[l] = idx[l - 1] + 1;
            }
        }
    }
    best
}

/// Optimal ordering-consistent structure with at most `u` parents per node,
/// found by maximizing each node's `g` independently over all subsets of its
/// predecessors. Trace entries carry no steps.
pub fn exhaustive_ordered_search<T: Real>(
    db: &Database,
    cfg: &SearchConfig,
) -> Result<SearchResult<T>> {
    cfg.validate()?;
    if cfg.ordering.len() != db.num_variables() {
        return Err(Error::VariableMismatch(format!(
            "ordering covers {} variables, database has {}",
            cfg.ordering.len(),
            db.num_variables()
        )));
    }
    let scorer = Scorer::<T>::new(db)?;
    let trace = run_per_node(cfg.threads, cfg.ordering.as_slice(), |i| {
        let (parents, g) = best_subset(&scorer, i, cfg.ordering.predecessors(i), cfg.max_parents);
        NodeTrace {
            node: i,
            initial_log_g: scorer.g_log_sorted(i, Vec::new()),
            steps: Vec::new(),
            parents,
            final_log_g: g,
        }
    })?;
    SearchResult::assemble(db, cfg.prior, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Ordering;
    use crate::testdata::table1;

    #[test]
    fn x3_prefers_x2_alone() {
        let (p, g) = best_parents_exhaustive::<f64>(&table1(), 2, &[0, 1], 2).unwrap();
        assert_eq!(p, vec![1]);
        assert!((g + 180f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn no_candidates() {
        let db = table1();
        let (p, g) = best_parents_exhaustive::<f64>(&db, 0, &[], 2).unwrap();
        assert!(p.is_empty());
        assert!((g + 2772f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn x2_takes_x1() {
        let (p, g) = best_parents_exhaustive::<f64>(&table1(), 1, &[0], 1).unwrap();
        assert_eq!(p, vec![0]);
        assert!((g + 900f64.ln()).abs() < 1e-12);
        assert!(best_parents_exhaustive::<f64>(&table1(), 1, &[1], 1).is_err());
    }

    #[test]
    fn ordered_search_on_table1() {
        let cfg = SearchConfig::new(Ordering::identity(3), 2).unwrap();
        let res = exhaustive_ordered_search::<f64>(&table1(), &cfg).unwrap();
        assert_eq!(res.structure.arcs(), vec![(0, 1), (1, 2)]);
        assert!(res.trace[0].parents.is_empty());
    }
}
