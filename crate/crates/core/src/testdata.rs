//! Fixtures built directly in code, independent of the file parsers.

use crate::model::{Database, Network, Structure, Variable};

fn vars() -> Vec<Variable> {
    vec![
        Variable::binary("x1"),
        Variable::binary("x2"),
        Variable::binary("x3"),
    ]
}

/// x1 -> x2 -> x3
pub fn bs1() -> Structure {
    Structure::from_arcs(vars(), &[(0, 1), (1, 2)]).unwrap()
}

/// x1 -> x2, x1 -> x3
pub fn bs2() -> Structure {
    Structure::from_arcs(vars(), &[(0, 1), (0, 2)]).unwrap()
}

pub fn b1() -> Network<f64> {
    Network::new(
        bs1(),
        vec![
            vec![vec![0.4, 0.6]],
            vec![vec![0.7, 0.3], vec![0.2, 0.8]],
            vec![vec![0.85, 0.15], vec![0.1, 0.9]],
        ],
    )
    .unwrap()
}

/// The ten-case example database, 0 = absent, 1 = present.
pub fn table1() -> Database {
    let cases = [
        [1, 0, 0],
        [1, 1, 1],
        [0, 0, 1],
        [1, 1, 1],
        [0, 0, 0],
        [0, 1, 1],
        [1, 1, 1],
        [0, 0, 0],
        [1, 1, 1],
        [0, 0, 0],
    ];
    Database::new(vars(), cases.iter().map(|c| c.to_vec()).collect()).unwrap()
}

/// a -> b with b a copy of a and a always 1.
pub fn deterministic_pair() -> Network<f64> {
    let s = Structure::from_arcs(
        vec![Variable::binary("a"), Variable::binary("b")],
        &[(0, 1)],
    )
    .unwrap();
    Network::new(
        s,
        vec![vec![vec![0.0, 1.0]], vec![vec![1.0, 0.0], vec![0.0, 1.0]]],
    )
    .unwrap()
}
