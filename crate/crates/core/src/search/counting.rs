//! Sizes of structure spaces and exhaustive DAG enumeration.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest node count [`enumerate_all_dags`] accepts.
pub const MAX_ENUMERATION_NODES: usize = 6;

/// Number of labeled DAGs on `n` nodes, by Robinson's recurrence
/// `R(n) = Σ_{k=1..n} (-1)^{k+1} C(n,k) 2^{k(n-k)} R(n-k)`.
pub fn count_dags(n: usize) -> BigUint {
    let mut r: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n {
        let mut total = BigInt::zero();
        let mut binom = BigInt::one();
        for k in 1..=m {
            // C(m, k) from C(m, k-1)
            binom = binom * BigInt::from(m - k + 1) / BigInt::from(k);
            let term = &binom * (BigInt::one() << (k * (m - k))) * &r[m - k];
            if k % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        r.push(total);
    }
    r.pop()
        .and_then(|x| x.to_biguint())
        .expect("labeled DAG counts are positive")
}

/// `t(n) = 2^(n(n-1)/2)`, the number of structures consistent with one
/// node ordering.
pub fn count_ordered(n: usize) -> BigUint {
    BigUint::one() << (n * n.saturating_sub(1) / 2)
}

/// Natural log of a big unsigned integer, accurate for values far beyond the
/// `f64` range.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Iterator over every labeled DAG on `n` nodes, each given as per-node
/// parent sets in ascending order.
#[derive(Debug, Clone)]
pub struct DagIter {
    n: usize,
    pairs: Vec<(usize, usize)>,
    // per pair: 0 no arc, 1 low -> high, 2 high -> low
    state: Vec<u8>,
    done: bool,
}

impl DagIter {
    fn parent_masks(&self) -> Vec<u64> {
        let mut masks = vec![0u64; self.n];
        for (&(a, b), &s) in self.pairs.iter().zip(&self.state) {
            match s {
                1 => masks[b] |= 1 << a,
                2 => masks[a] |= 1 << b,
                _ => {}
            }
        }
        masks
    }

    fn advance(&mut self) {
        for s in self.state.iter_mut() {
            *s += 1;
            if *s < 3 {
                return;
            }
            *s = 0;
        }
        self.done = true;
    }
}

fn acyclic(masks: &[u64]) -> bool {
    let full: u64 = if masks.len() == 64 {
        u64::MAX
    } else {
        (1u64 << masks.len()) - 1
    };
    let mut removed = 0u64;
    while removed != full {
        let mut progress = false;
        for (i, &m) in masks.iter().enumerate() {
            if removed & (1 << i) == 0 && m & !removed == 0 {
                removed |= 1 << i;
                progress = true;
            }
        }
        if !progress {
            return false;
        }
    }
    true
}

impl Iterator for DagIter {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            let masks = self.parent_masks();
            self.advance();
            if acyclic(&masks) {
                return Some(
                    masks
                        .iter()
                        .map(|&m| (0..self.n).filter(|&p| m & (1 << p) != 0).collect())
                        .collect(),
                );
            }
        }
        None
    }
}

/// All labeled DAGs on `n ≤ 6` nodes, each exactly once.
pub fn enumerate_all_dags(n: usize) -> Result<DagIter> {
    if n > MAX_ENUMERATION_NODES {
        return Err(Error::TooLarge {
            what: "DAG enumeration",
            n,
            max: MAX_ENUMERATION_NODES,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    Ok(DagIter {
        n,
        state: vec![0; pairs.len()],
        pairs,
        done: false,
    })
}
