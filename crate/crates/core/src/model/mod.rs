//! Variables, structures, networks, databases and node orderings.

mod inference;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::real::Real;

pub use inference::{joint_probability, query, MAX_ENUMERATION_VARIABLES};

/// Absolute tolerance on CPT row sums.
pub const ROW_SUM_TOLERANCE: f64 = 1e-9;

/// A named discrete variable with an ordered list of value labels.
///
/// Value indices used everywhere else in the crate are 0-based positions in
/// `values`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    name: String,
    values: Vec<String>,
}

impl Variable {
    pub fn new<S: Into<String>, V: Into<String>>(
        name: S,
        values: impl IntoIterator<Item = V>,
    ) -> Result<Self> {
        let var = Variable {
            name: name.into(),
            values: values.into_iter().map(Into::into).collect(),
        };
        match var.problem() {
            Some(reason) => Err(Error::InvalidVariable(reason)),
            None => Ok(var),
        }
    }

    /// Binary variable with labels `absent`, `present` (indices 0 and 1).
    pub fn binary<S: Into<String>>(name: S) -> Self {
        Variable {
            name: name.into(),
            values: vec!["absent".into(), "present".into()],
        }
    }

    fn problem(&self) -> Option<String> {
        if self.name.is_empty() {
            return Some("variable name is empty".into());
        }
        if self.values.len() < 2 {
            return Some(format!(
                "variable {} has {} value(s), at least 2 required",
                self.name,
                self.values.len()
            ));
        }
        let mut seen = HashSet::new();
        for v in &self.values {
            if !seen.insert(v.as_str()) {
                return Some(format!("variable {} repeats value label {v:?}", self.name));
            }
        }
        None
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    /// Number of values, `r_i`.
    pub fn arity(&self) -> usize {
        self.values.len()
    }

    pub fn value_index(&self, label: &str) -> Option<usize> {
        self.values.iter().position(|v| v == label)
    }
}

/// Checks that two variable lists agree by name, order and value labels.
pub fn check_same_variables(left: &[Variable], right: &[Variable]) -> Result<()> {
    if left.len() != right.len() {
        return Err(Error::VariableMismatch(format!(
            "{} variables vs {}",
            left.len(),
            right.len()
        )));
    }
    for (i, (a, b)) in left.iter().zip(right).enumerate() {
        if a.name != b.name {
            return Err(Error::VariableMismatch(format!(
                "variable {i} is {:?} on one side and {:?} on the other",
                a.name, b.name
            )));
        }
        if a.values != b.values {
            return Err(Error::VariableMismatch(format!(
                "variable {} has values {:?} vs {:?}",
                a.name, a.values, b.values
            )));
        }
    }
    Ok(())
}

/// An invariant violation found by [`validate_network`] or structure checks.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    BadVariable(String),
    DuplicateVariableName(String),
    ParentCountMismatch {
        expected: usize,
        found: usize,
    },
    ParentOutOfRange {
        node: usize,
        parent: usize,
    },
    SelfParent {
        node: usize,
    },
    DuplicateParent {
        node: usize,
        parent: usize,
    },
    Cycle,
    CptCountMismatch {
        expected: usize,
        found: usize,
    },
    CptRowCount {
        node: usize,
        expected: usize,
        found: usize,
    },
    CptRowWidth {
        node: usize,
        row: usize,
        expected: usize,
        found: usize,
    },
    BadEntry {
        node: usize,
        row: usize,
        value: f64,
    },
    RowSum {
        node: usize,
        row: usize,
        sum: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadVariable(s) => write!(f, "{s}"),
            Violation::DuplicateVariableName(n) => write!(f, "duplicate variable name {n:?}"),
            Violation::ParentCountMismatch { expected, found } => {
                write!(f, "{found} parent sets for {expected} variables")
            }
            Violation::ParentOutOfRange { node, parent } => {
                write!(f, "node {node} has out-of-range parent {parent}")
            }
            Violation::SelfParent { node } => write!(f, "node {node} is its own parent"),
            Violation::DuplicateParent { node, parent } => {
                write!(f, "node {node} lists parent {parent} twice")
            }
            Violation::Cycle => write!(f, "cycle"),
            Violation::CptCountMismatch { expected, found } => {
                write!(f, "{found} CPTs for {expected} variables")
            }
            Violation::CptRowCount {
                node,
                expected,
                found,
            } => {
                write!(
                    f,
                    "CPT of node {node} has {found} rows, expected {expected}"
                )
            }
            Violation::CptRowWidth {
                node,
                row,
                expected,
                found,
            } => write!(
                f,
                "CPT of node {node} row {row} has {found} entries, expected {expected}"
            ),
            Violation::BadEntry { node, row, value } => write!(
                f,
                "CPT of node {node} row {row} has entry {value} outside [0, 1]"
            ),
            Violation::RowSum { node, row, sum } => {
                write!(f, "row sum ≠ 1: node {node} row {row} sums to {sum}")
            }
        }
    }
}

/// A directed acyclic graph over variables, stored as per-node parent sets.
///
/// Parent sets are kept sorted by ascending node index; this is the order
/// used by the canonical CPT row layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    variables: Vec<Variable>,
    parents: Vec<Vec<usize>>,
}

impl Structure {
    pub fn new(variables: Vec<Variable>, parents: Vec<Vec<usize>>) -> Result<Self> {
        let s = Self::new_unchecked(variables, parents);
        let violations = s.violations();
        if violations.is_empty() {
            Ok(s)
        } else if violations == [Violation::Cycle] {
            Err(Error::CyclicStructure)
        } else {
            let text = violations.iter().map(|v| v.to_string()).collect::<Vec<_>>();
            Err(Error::InvalidStructure(text.join("; ")))
        }
    }

    /// Builds a structure without checking any invariant. Parent sets are
    /// still sorted. Use [`Structure::violations`] to audit the result.
    pub fn new_unchecked(variables: Vec<Variable>, mut parents: Vec<Vec<usize>>) -> Self {
        for p in &mut parents {
            p.sort_unstable();
        }
        Structure { variables, parents }
    }

    /// Structure with no arcs.
    pub fn empty(variables: Vec<Variable>) -> Result<Self> {
        let n = variables.len();
        Self::new(variables, vec![Vec::new(); n])
    }

    /// Builds a structure from `(parent, child)` arcs.
    pub fn from_arcs(variables: Vec<Variable>, arcs: &[(usize, usize)]) -> Result<Self> {
        let n = variables.len();
        let mut parents = vec![Vec::new(); n];
        for &(p, c) in arcs {
            if c >= n {
                return Err(Error::InvalidStructure(format!(
                    "arc target {c} out of range"
                )));
            }
            parents[c].push(p);
        }
        Self::new(variables, parents)
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable(&self, i: usize) -> &Variable {
        &self.variables[i]
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn parent_sets(&self) -> &[Vec<usize>] {
        &self.parents
    }

    /// All arcs as `(parent, child)`, ordered by child then parent.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.parents
            .iter()
            .enumerate()
            .flat_map(|(c, ps)| ps.iter().map(move |&p| (p, c)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.parents.iter().map(Vec::len).sum()
    }

    /// Returns a copy with node `i`'s parent set replaced.
    pub fn with_parents(&self, i: usize, parents: Vec<usize>) -> Result<Self> {
        let mut all = self.parents.clone();
        all[i] = parents;
        Self::new(self.variables.clone(), all)
    }

    /// Number of rows in node `i`'s CPT: the product of its parents' arities.
    pub fn parent_configurations(&self, i: usize) -> usize {
        self.parents[i]
            .iter()
            .map(|&p| self.variables[p].arity())
            .product()
    }

    /// Canonical CPT row of node `i` for the parent values found in `values`
    /// (a full assignment indexed by variable). The last parent varies
    /// fastest.
    pub fn parent_row_index(&self, i: usize, values: &[usize]) -> usize {
        self.parents[i]
            .iter()
            .fold(0, |row, &p| row * self.variables[p].arity() + values[p])
    }

    /// Parent values of canonical row `row` of node `i`, in parent order.
    pub fn parent_row_values(&self, i: usize, mut row: usize) -> Vec<usize> {
        let ps = &self.parents[i];
        let mut out = vec![0; ps.len()];
        for (slot, &p) in out.iter_mut().zip(ps).rev() {
            let r = self.variables[p].arity();
            *slot = row % r;
            row /= r;
        }
        out
    }

    /// Every violated structure invariant, empty if none.
    pub fn violations(&self) -> Vec<Violation> {
        let n = self.variables.len();
        let mut out = Vec::new();
        let mut names = HashSet::new();
        for v in &self.variables {
            if let Some(reason) = v.problem() {
                out.push(Violation::BadVariable(reason));
            }
            if !names.insert(v.name.as_str()) {
                out.push(Violation::DuplicateVariableName(v.name.clone()));
            }
        }
        if self.parents.len() != n {
            out.push(Violation::ParentCountMismatch {
                expected: n,
                found: self.parents.len(),
            });
            return out;
        }
        let mut graph_ok = true;
        for (node, ps) in self.parents.iter().enumerate() {
            for (k, &p) in ps.iter().enumerate() {
                if p >= n {
                    out.push(Violation::ParentOutOfRange { node, parent: p });
                    graph_ok = false;
                } else if p == node {
                    out.push(Violation::SelfParent { node });
                    graph_ok = false;
                }
                if k > 0 && ps[k - 1] == p {
                    out.push(Violation::DuplicateParent { node, parent: p });
                }
            }
        }
        if graph_ok && topological_order(self).is_err() {
            out.push(Violation::Cycle);
        }
        out
    }
}

/// A total order on variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl Ordering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (pos, &i) in order.iter().enumerate() {
            if i >= n {
                return Err(Error::InvalidOrdering(format!(
                    "index {i} out of range for {n} variables"
                )));
            }
            if position[i] != usize::MAX {
                return Err(Error::InvalidOrdering(format!("index {i} appears twice")));
            }
            position[i] = pos;
        }
        Ok(Ordering { order, position })
    }

    pub fn identity(n: usize) -> Self {
        Ordering {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// Ordering from variable names; must name every variable exactly once.
    pub fn from_names<S: AsRef<str>>(variables: &[Variable], names: &[S]) -> Result<Self> {
        if names.len() != variables.len() {
            return Err(Error::InvalidOrdering(format!(
                "{} names given for {} variables",
                names.len(),
                variables.len()
            )));
        }
        let order = names
            .iter()
            .map(|s| {
                let s = s.as_ref();
                variables
                    .iter()
                    .position(|v| v.name == s)
                    .ok_or_else(|| Error::InvalidOrdering(format!("unknown variable {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(order)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    /// `Pred(x_i)`: the nodes before `i`, in ordering order.
    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.order[..self.position[i]]
    }

    /// True when every parent in `s` precedes its child.
    pub fn is_consistent_with(&self, s: &Structure) -> bool {
        s.arcs()
            .iter()
            .all(|&(p, c)| self.position[p] < self.position[c])
    }
}

/// Topological order of `s`; among ready nodes the lowest index goes first.
pub fn topological_order(s: &Structure) -> Result<Ordering> {
    let n = s.len();
    let mut indegree = vec![0usize; n];
    let mut children = vec![Vec::new(); n];
    for (c, ps) in s.parents.iter().enumerate() {
        for &p in ps {
            if p >= n {
                return Err(Error::InvalidStructure(format!("parent {p} out of range")));
            }
            indegree[c] += 1;
            children[p].push(c);
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&i| indegree[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(i)) = ready.pop() {
        order.push(i);
        for &c in &children[i] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                ready.push(Reverse(c));
            }
        }
    }
    if order.len() < n {
        return Err(Error::CyclicStructure);
    }
    Ordering::new(order)
}

/// A structure plus one conditional probability table per node.
///
/// `cpts[i][row][k]` is `P(x_i = k | parents in canonical row)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Network<T> {
    structure: Structure,
    cpts: Vec<Vec<Vec<T>>>,
}

impl<T: Real> Network<T> {
    pub fn new(structure: Structure, cpts: Vec<Vec<Vec<T>>>) -> Result<Self> {
        let net = Self::new_unchecked(structure, cpts);
        let report = validate_network(&net);
        if report.is_empty() {
            Ok(net)
        } else {
            Err(Error::InvalidNetwork(report))
        }
    }

    pub fn new_unchecked(structure: Structure, cpts: Vec<Vec<Vec<T>>>) -> Self {
        Network { structure, cpts }
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn variables(&self) -> &[Variable] {
        self.structure.variables()
    }

    pub fn len(&self) -> usize {
        self.structure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structure.is_empty()
    }

    pub fn cpt(&self, i: usize) -> &[Vec<T>] {
        &self.cpts[i]
    }

    pub fn cpts(&self) -> &[Vec<Vec<T>>] {
        &self.cpts
    }

    /// Distribution of node `i` given the parent values in the full
    /// assignment `values`.
    pub fn row_for(&self, i: usize, values: &[usize]) -> &[T] {
        &self.cpts[i][self.structure.parent_row_index(i, values)]
    }

    /// Converts every probability to another scalar type.
    pub fn cast<U: Real>(&self) -> Network<U> {
        Network {
            structure: self.structure.clone(),
            cpts: self
                .cpts
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|r| r.iter().map(|&p| U::of(p.as_f64())).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// Every violated network or structure invariant; empty means valid.
pub fn validate_network<T: Real>(net: &Network<T>) -> Vec<Violation> {
    let s = &net.structure;
    let mut out = s.violations();
    let structural_ok = out.iter().all(|v| {
        !matches!(
            v,
            Violation::ParentCountMismatch { .. }
                | Violation::ParentOutOfRange { .. }
                | Violation::BadVariable(_)
        )
    });
    if net.cpts.len() != s.len() {
        out.push(Violation::CptCountMismatch {
            expected: s.len(),
            found: net.cpts.len(),
        });
        return out;
    }
    if !structural_ok {
        return out;
    }
    for (node, table) in net.cpts.iter().enumerate() {
        let expected = s.parent_configurations(node);
        if table.len() != expected {
            out.push(Violation::CptRowCount {
                node,
                expected,
                found: table.len(),
            });
        }
        let r = s.variables[node].arity();
        for (row, probs) in table.iter().enumerate() {
            if probs.len() != r {
                out.push(Violation::CptRowWidth {
                    node,
                    row,
                    expected: r,
                    found: probs.len(),
                });
                continue;
            }
            let mut entries_ok = true;
            for &p in probs {
                let x = p.as_f64();
                if !(0.0..=1.0).contains(&x) {
                    out.push(Violation::BadEntry {
                        node,
                        row,
                        value: x,
                    });
                    entries_ok = false;
                }
            }
            let sum: f64 = probs.iter().map(|p| p.as_f64()).sum();
            if entries_ok && (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                out.push(Violation::RowSum { node, row, sum });
            }
        }
    }
    out
}

/// A complete database of cases, each a value index per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Database {
    variables: Vec<Variable>,
    cases: Vec<Vec<usize>>,
}

impl Database {
    pub fn new(variables: Vec<Variable>, cases: Vec<Vec<usize>>) -> Result<Self> {
        let mut names = HashSet::new();
        for v in &variables {
            if let Some(reason) = v.problem() {
                return Err(Error::InvalidVariable(reason));
            }
            if !names.insert(v.name.as_str()) {
                return Err(Error::InvalidVariable(format!(
                    "duplicate variable name {:?}",
                    v.name
                )));
            }
        }
        for (j, case) in cases.iter().enumerate() {
            if case.len() != variables.len() {
                return Err(Error::IncompleteDatabase {
                    case: j,
                    reason: format!("{} values for {} variables", case.len(), variables.len()),
                });
            }
            for (v, &x) in variables.iter().zip(case) {
                if x >= v.arity() {
                    return Err(Error::IncompleteDatabase {
                        case: j,
                        reason: format!("value index {x} invalid for variable {}", v.name),
                    });
                }
            }
        }
        Ok(Database { variables, cases })
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn cases(&self) -> &[Vec<usize>] {
        &self.cases
    }

    /// Number of cases, `m`.
    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn max_arity(&self) -> usize {
        self.variables
            .iter()
            .map(Variable::arity)
            .max()
            .unwrap_or(0)
    }

    /// The first `m` cases.
    pub fn prefix(&self, m: usize) -> Database {
        Database {
            variables: self.variables.clone(),
            cases: self.cases[..m.min(self.cases.len())].to_vec(),
        }
    }

    /// Same cases in the order given by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Database {
        Database {
            variables: self.variables.clone(),
            cases: perm.iter().map(|&j| self.cases[j].clone()).collect(),
        }
    }
}
