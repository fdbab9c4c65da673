//! Exact inference by enumerating full assignments.

use super::Network;
use crate::error::{Error, Result};
use crate::real::Real;

/// Largest network `query` will enumerate.
pub const MAX_ENUMERATION_VARIABLES: usize = 20;

/// Product of the CPT entries selected by a full assignment.
pub fn joint_probability<T: Real>(net: &Network<T>, assignment: &[usize]) -> Result<T> {
    let vars = net.variables();
    if assignment.len() < vars.len() {
        return Err(Error::IncompleteAssignment(assignment.len()));
    }
    if assignment.len() > vars.len() {
        return Err(Error::InvalidQuery(format!(
            "{} values for {} variables",
            assignment.len(),
            vars.len()
        )));
    }
    for (i, (v, &x)) in vars.iter().zip(assignment).enumerate() {
        if x >= v.arity() {
            return Err(Error::InvalidQuery(format!(
                "value index {x} out of range for variable {i}"
            )));
        }
    }
    Ok(joint_unchecked(net, assignment))
}

fn joint_unchecked<T: Real>(net: &Network<T>, assignment: &[usize]) -> T {
    (0..assignment.len()).fold(T::one(), |acc, i| {
        acc * net.row_for(i, assignment)[assignment[i]]
    })
}

/// `P(targets | evidence)` by summing joint probabilities over every
/// completion of the evidence. Both arguments are `(variable, value)` pairs.
pub fn query<T: Real>(
    net: &Network<T>,
    targets: &[(usize, usize)],
    evidence: &[(usize, usize)],
) -> Result<T> {
    let n = net.len();
    if n > MAX_ENUMERATION_VARIABLES {
        return Err(Error::TooManyVariables {
            n,
            max: MAX_ENUMERATION_VARIABLES,
        });
    }
    if targets.is_empty() {
        return Err(Error::InvalidQuery("no target variables".into()));
    }
    let mut fixed: Vec<Option<usize>> = vec![None; n];
    let mut target_of: Vec<Option<usize>> = vec![None; n];
    for &(i, x) in evidence {
        check_pair(net, i, x)?;
        if fixed[i].replace(x).is_some_and(|old| old != x) {
            return Err(Error::InvalidQuery(format!(
                "conflicting evidence on variable {i}"
            )));
        }
    }
    for &(i, x) in targets {
        check_pair(net, i, x)?;
        if target_of[i].replace(x).is_some_and(|old| old != x) {
            return Err(Error::InvalidQuery(format!(
                "conflicting targets on variable {i}"
            )));
        }
    }

    let free: Vec<usize> = (0..n).filter(|&i| fixed[i].is_none()).collect();
    let mut values: Vec<usize> = fixed.iter().map(|x| x.unwrap_or(0)).collect();
    let arity: Vec<usize> = net.variables().iter().map(|v| v.arity()).collect();

    let mut evidence_mass = T::zero();
    let mut joint_mass = T::zero();
    loop {
        let p = joint_unchecked(net, &values);
        evidence_mass = evidence_mass + p;
        if targets.iter().all(|&(i, x)| values[i] == x) {
            joint_mass = joint_mass + p;
        }
        // odometer over the free variables, last one fastest
        let mut k = free.len();
        loop {
            if k == 0 {
                return finish(joint_mass, evidence_mass);
            }
            k -= 1;
            let i = free[k];
            values[i] += 1;
            if values[i] < arity[i] {
                break;
            }
            values[i] = 0;
        }
    }
}

fn finish<T: Real>(joint: T, evidence: T) -> Result<T> {
    if evidence <= T::zero() {
        Err(Error::ZeroProbabilityEvidence)
    } else {
        Ok(joint / evidence)
    }
}

fn check_pair<T: Real>(net: &Network<T>, i: usize, x: usize) -> Result<()> {
    let vars = net.variables();
    if i >= vars.len() {
        return Err(Error::InvalidQuery(format!("variable {i} out of range")));
    }
    if x >= vars[i].arity() {
        return Err(Error::InvalidQuery(format!(
            "value index {x} out of range for variable {}",
            vars[i].name()
        )));
    }
    Ok(())
}
