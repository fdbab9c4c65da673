//! Forward sampling, parameter fitting and the sample-then-reconstruct
//! experiment.

mod experiment;
mod rng;

use crate::error::{Error, Result};
use crate::model::{
    check_same_variables, topological_order, validate_network, Database, Network, Structure,
};
use crate::real::Real;

pub use experiment::{
    reconstruction_experiment, structural_difference, ReconstructionEntry, ReconstructionReport,
    StructuralDiff,
};
pub use rng::RandomStream;

/// Draws `m` complete cases from `net` by logic sampling.
///
/// Every case visits the nodes in topological order and spends exactly one
/// uniform draw per node, so the stream for `m` cases is a prefix of the
/// stream for any larger `m`.
pub fn sample_cases<T: Real>(net: &Network<T>, m: usize, seed: u64) -> Result<Database> {
    let report = validate_network(net);
    if !report.is_empty() {
        return Err(Error::InvalidNetwork(report));
    }
    if m == 0 {
        return Err(Error::InvalidConfig("case count must be at least 1".into()));
    }
    let order = topological_order(net.structure())?;
    let mut rng = RandomStream::new(seed);
    let n = net.len();
    let mut cases = Vec::with_capacity(m);
    for _ in 0..m {
        let mut values = vec![0usize; n];
        for &i in order.as_slice() {
            let u = rng.next_uniform();
            values[i] = inverse_cdf(net.row_for(i, &values), u);
        }
        cases.push(values);
    }
    Database::new(net.variables().to_vec(), cases)
}

/// First index whose cumulative probability reaches `u`, skipping
/// zero-probability values. Falls back to the last positive entry when
/// rounding leaves the total just below `u`.
fn inverse_cdf<T: Real>(row: &[T], u: f64) -> usize {
    let mut cumulative = 0.0;
    let mut last_positive = 0;
    for (k, p) in row.iter().enumerate() {
        let p = p.as_f64();
        if p <= 0.0 {
            continue;
        }
        last_positive = k;
        cumulative += p;
        if cumulative >= u {
            return k;
        }
    }
    last_positive
}

/// Posterior-mean CPTs under a uniform prior on every distribution:
/// `(α_ijk + 1) / (N_ij + r_i)`. Parent instantiations that never occur get
/// the uniform row.
pub fn fit_parameters<T: Real>(s: &Structure, db: &Database) -> Result<Network<T>> {
    check_same_variables(s.variables(), db.variables())?;
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let cpts = (0..s.len())
        .map(|i| {
            let r = s.variable(i).arity();
            let mut counts = vec![vec![0u64; r]; s.parent_configurations(i)];
            for case in db.cases() {
                counts[s.parent_row_index(i, case)][case[i]] += 1;
            }
            counts
                .into_iter()
                .map(|row| {
                    let total: u64 = row.iter().sum();
                    let denom = T::of((total + r as u64) as f64);
                    row.iter().map(|&a| T::of((a + 1) as f64) / denom).collect()
                })
                .collect()
        })
        .collect();
    Network::new(s.clone(), cpts)
}
