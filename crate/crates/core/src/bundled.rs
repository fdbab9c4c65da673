//! Example files shipped with the crate.
//!
//! `b1` is the three-node network x1 -> x2 -> x3 with its textbook CPTs,
//! `bs1` and `bs2` are the two competing three-node structures (x1 -> x2 ->
//! x3, and x1 -> x2 plus x1 -> x3), `table1` is a ten-case database over the
//! same variables, and `reference10` is a synthetic ten-node network with
//! binary and ternary variables used for reconstruction experiments.
//!
//! `bs2` has the arcs {x1 -> x2, x1 -> x3}. That choice is inferred, not
//! given. Its score on `table1` is exactly one tenth of `bs1`'s, as is that of
//! {x2 -> x1, x1 -> x3}; of the two, `bs2` keeps the arc x1 -> x2.

use crate::io::{parse_network, parse_structure, read_cases};
use crate::model::{Database, Network, Structure};

pub const B1: &str = include_str!("../data/b1.toml");
pub const BS1: &str = include_str!("../data/bs1.toml");
pub const BS2: &str = include_str!("../data/bs2.toml");
pub const TABLE1: &str = include_str!("../data/table1.csv");
pub const REFERENCE10: &str = include_str!("../data/reference10.toml");

/// Looks a bundled file up by name.
pub fn lookup(name: &str) -> Option<&'static str> {
    Some(match name {
        "b1" => B1,
        "bs1" => BS1,
        "bs2" => BS2,
        "table1" => TABLE1,
        "reference10" => REFERENCE10,
        _ => return None,
    })
}

pub const NAMES: [&str; 5] = ["b1", "bs1", "bs2", "table1", "reference10"];

pub fn b1() -> Network<f64> {
    parse_network(B1).expect("bundled b1 parses")
}

pub fn bs1() -> Structure {
    parse_structure(BS1).expect("bundled bs1 parses")
}

pub fn bs2() -> Structure {
    parse_structure(BS2).expect("bundled bs2 parses")
}

pub fn table1() -> Database {
    read_cases(TABLE1, Some(bs1().variables())).expect("bundled table1 parses")
}

pub fn reference10() -> Network<f64> {
    parse_network(REFERENCE10).expect("bundled reference10 parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{write_cases, write_network, write_structure};
    use crate::testdata;

    #[test]
    fn bundled_files_match_fixtures() {
        assert_eq!(b1(), testdata::b1());
        assert_eq!(bs1(), testdata::bs1());
        assert_eq!(bs2(), testdata::bs2());
        assert_eq!(table1(), testdata::table1());
    }

    #[test]
    fn bundled_files_are_canonical() {
        assert_eq!(write_network(&b1()), B1);
        assert_eq!(write_structure(&bs1()), BS1);
        assert_eq!(write_structure(&bs2()), BS2);
        assert_eq!(write_cases(&table1()), TABLE1);
        assert_eq!(write_network(&reference10()), REFERENCE10);
    }

    #[test]
    fn reference_network_shape() {
        let net = reference10();
        assert_eq!(net.len(), 10);
        assert_eq!(net.structure().arc_count(), 12);
        assert!(net.variables().iter().all(|v| (2..=3).contains(&v.arity())));
    }

    #[test]
    fn lookup_names() {
        for name in NAMES {
            assert!(lookup(name).is_some());
        }
        assert!(lookup("alarm").is_none());
    }
}
