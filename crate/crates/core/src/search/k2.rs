use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Database, Ordering, Structure};
use crate::real::Real;
use crate::scoring::{PriorMode, Scorer};

/// Node ordering, parent bound and structure prior for a search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub ordering: Ordering,
    /// Maximum parents per node, `u`.
    pub max_parents: usize,
    pub prior: PriorMode,
    /// Worker threads for per-node searches; 1 runs inline.
    pub threads: usize,
}

impl SearchConfig {
    /// Uses the ordered-structure prior `1/t(n)` and a single thread.
    pub fn new(ordering: Ordering, max_parents: usize) -> Result<Self> {
        let n = ordering.len();
        let cfg = SearchConfig {
            prior: PriorMode::UniformOrdered(n),
            ordering,
            max_parents,
            threads: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `u = n - 1`, i.e. no effective bound.
    pub fn unbounded(ordering: Ordering) -> Result<Self> {
        let u = ordering.len().saturating_sub(1).max(1);
        Self::new(ordering, u)
    }

    pub fn with_prior(mut self, prior: PriorMode) -> Self {
        self.prior = prior;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.ordering.len();
        if self.max_parents == 0 {
            return Err(Error::InvalidConfig(
                "maximum parent count must be at least 1".into(),
            ));
        }
        if n > 1 && self.max_parents > n - 1 {
            return Err(Error::InvalidConfig(format!(
                "maximum parent count {} exceeds n - 1 = {}",
                self.max_parents,
                n - 1
            )));
        }
        Ok(())
    }

    fn check_against(&self, db: &Database) -> Result<()> {
        self.validate()?;
        if self.ordering.len() != db.num_variables() {
            return Err(Error::VariableMismatch(format!(
                "ordering covers {} variables, database has {}",
                self.ordering.len(),
                db.num_variables()
            )));
        }
        Ok(())
    }
}

/// One candidate evaluation inside a node's greedy search.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep<T> {
    /// Index of the growth round (0 for the first parent added).
    pub round: usize,
    pub candidate: usize,
    /// `ln g(i, π_i ∪ {candidate})`
    pub log_g: T,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeTrace<T> {
    pub node: usize,
    /// `ln g(i, ∅)`
    pub initial_log_g: T,
    pub steps: Vec<TraceStep<T>>,
    pub parents: Vec<usize>,
    pub final_log_g: T,
}

/// Learned structure with its score breakdown and search trace.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<T> {
    pub structure: Structure,
    /// `ln g(i, π_i)` indexed by node.
    pub per_node_log_g: Vec<T>,
    pub prior: PriorMode,
    /// `ln P(B_S) + Σ_i ln g(i, π_i)`
    pub total_log_score: T,
    /// One entry per node, in ordering order.
    pub trace: Vec<NodeTrace<T>>,
}

impl<T: Real> SearchResult<T> {
    pub(crate) fn assemble(
        db: &Database,
        prior: PriorMode,
        trace: Vec<NodeTrace<T>>,
    ) -> Result<Self> {
        let n = db.num_variables();
        let mut parents = vec![Vec::new(); n];
        let mut per_node_log_g = vec![T::zero(); n];
        for t in &trace {
            parents[t.node] = t.parents.clone();
            per_node_log_g[t.node] = t.final_log_g;
        }
        let structure = Structure::new(db.variables().to_vec(), parents)?;
        let total_log_score =
            prior.log_prior::<T>() + per_node_log_g.iter().fold(T::zero(), |a, &b| a + b);
        Ok(SearchResult {
            structure,
            per_node_log_g,
            prior,
            total_log_score,
            trace,
        })
    }
}

/// Greedy K2 search: each node starts parentless and repeatedly takes the
/// predecessor that most increases `g`, stopping when no addition strictly
/// improves it or the parent bound is reached. Ties go to the candidate
/// earliest in the ordering.
pub fn k2<T: Real>(db: &Database, cfg: &SearchConfig) -> Result<SearchResult<T>> {
    cfg.check_against(db)?;
    let scorer = Scorer::<T>::new(db)?;
    let nodes = cfg.ordering.as_slice();
    let trace = run_per_node(cfg.threads, nodes, |i| greedy_node(&scorer, cfg, i))?;
    SearchResult::assemble(db, cfg.prior, trace)
}

pub(crate) fn run_per_node<T, F>(threads: usize, nodes: &[usize], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if threads <= 1 {
        return Ok(nodes.iter().map(|&i| f(i)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    Ok(pool.install(|| nodes.par_iter().map(|&i| f(i)).collect()))
}

fn greedy_node<T: Real>(scorer: &Scorer<'_, T>, cfg: &SearchConfig, node: usize) -> NodeTrace<T> {
    let pred = cfg.ordering.predecessors(node);
    let mut parents: Vec<usize> = Vec::new();
    let initial = scorer.g_log_sorted(node, Vec::new());
    let mut p_old = initial;
    let mut steps = Vec::new();
    let mut round = 0;

    while parents.len() < cfg.max_parents {
        let first_step = steps.len();
        let mut best: Option<(usize, T)> = None;
        for &z in pred.iter().filter(|z| !parents.contains(z)) {
            let mut with_z = parents.clone();
            with_z.push(z);
            with_z.sort_unstable();
            let g = scorer.g_log_sorted(node, with_z);
            steps.push(TraceStep {
                round,
                candidate: z,
                log_g: g,
                accepted: false,
            });
            // strict: the earliest maximizer in ordering order wins ties
            if best.is_none_or(|(_, b)| g > b) {
                best = Some((z, g));
            }
        }
        let Some((z, p_new)) = best else { break };
        if p_new > p_old {
            p_old = p_new;
            parents.push(z);
            parents.sort_unstable();
            if let Some(step) = steps[first_step..].iter_mut().find(|s| s.candidate == z) {
                step.accepted = true;
            }
            round += 1;
        } else {
            break;
        }
    }

    NodeTrace {
        node,
        initial_log_g: initial,
        steps,
        parents,
        final_log_g: p_old,
    }
}
