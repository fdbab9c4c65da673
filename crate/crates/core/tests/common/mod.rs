#![allow(dead_code)]

use std::collections::BTreeMap;

use k2net::{Database, RandomStream, Structure, Variable};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, x| acc * BigUint::from(x))
}

/// Exact per-node factor g, from a fresh tally of the cases.
pub fn exact_node_g(db: &Database, node: usize, parents: &[usize]) -> BigRational {
    let r = db.variables()[node].arity() as u64;
    let mut tally: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
    for case in db.cases() {
        let key: Vec<usize> = parents.iter().map(|&p| case[p]).collect();
        tally.entry(key).or_insert_with(|| vec![0; r as usize])[case[node]] += 1;
    }
    let mut g = BigRational::one();
    for counts in tally.values() {
        let n: u64 = counts.iter().sum();
        let num = counts
            .iter()
            .fold(factorial(r - 1), |acc, &a| acc * factorial(a));
        let den = factorial(n + r - 1);
        g *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    g
}

/// Marginal likelihood as an exact rational: the product of exact node factors.
pub fn exact_marginal_likelihood(db: &Database, s: &Structure) -> BigRational {
    (0..s.len()).fold(BigRational::one(), |acc, i| {
        acc * exact_node_g(db, i, s.parents(i))
    })
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("finite rational")
}

/// Variables with arities drawn from 2..=3.
pub fn random_variables(rng: &mut RandomStream, n: usize) -> Vec<Variable> {
    (0..n)
        .map(|i| {
            let r = 2 + (rng.next_u64() % 2) as usize;
            Variable::new(format!("v{i}"), (0..r).map(|k| format!("s{k}"))).unwrap()
        })
        .collect()
}

pub fn random_database(rng: &mut RandomStream, vars: &[Variable], m: usize) -> Database {
    let cases = (0..m)
        .map(|_| {
            vars.iter()
                .map(|v| (rng.next_u64() % v.arity() as u64) as usize)
                .collect()
        })
        .collect();
    Database::new(vars.to_vec(), cases).unwrap()
}

/// Random DAG: a random permutation, then each forward pair gets an arc
/// with probability 1/2.
pub fn random_structure(rng: &mut RandomStream, vars: &[Variable]) -> Structure {
    let n = vars.len();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        let j = (rng.next_u64() % (k as u64 + 1)) as usize;
        perm.swap(k, j);
    }
    let mut parents = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.next_u64() & 1 == 1 {
                parents[perm[b]].push(perm[a]);
            }
        }
    }
    Structure::new(vars.to_vec(), parents).unwrap()
}

pub fn relative_error(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Random CPTs on a random structure; entries bounded away from zero.
pub fn random_network(rng: &mut RandomStream, vars: &[Variable]) -> k2net::Network<f64> {
    let s = random_structure(rng, vars);
    let cpts = (0..s.len())
        .map(|i| {
            (0..s.parent_configurations(i))
                .map(|_| {
                    let w: Vec<f64> = (0..vars[i].arity())
                        .map(|_| 0.05 + rng.next_uniform())
                        .collect();
                    let total: f64 = w.iter().sum();
                    let mut row: Vec<f64> = w.iter().map(|x| x / total).collect();
                    let head: f64 = row[..row.len() - 1].iter().sum();
                    *row.last_mut().unwrap() = 1.0 - head;
                    row
                })
                .collect()
        })
        .collect();
    k2net::Network::new(s, cpts).unwrap()
}
