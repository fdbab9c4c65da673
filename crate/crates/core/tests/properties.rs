mod common;

use k2net::io::{read_cases, write_cases};
use k2net::{
    compare, joint_probability, query, sample_cases, structure_log_score, topological_order,
    Network, PriorMode, RandomStream, Structure, Variable,
};
use proptest::prelude::*;

use common::*;

fn all_assignments(arity: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in arity {
        out = out
            .into_iter()
            .flat_map(|a| (0..r).map(move |x| [a.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn topological_order_respects_arcs(seed in any::<u64>(), n in 1usize..8) {
        let mut rng = RandomStream::new(seed);
        let vars = random_variables(&mut rng, n);
        let s = random_structure(&mut rng, &vars);
        let order = topological_order(&s).unwrap();
        let mut sorted = order.as_slice().to_vec();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());
        for (p, c) in s.arcs() {
            prop_assert!(order.position(p) < order.position(c));
        }
    }

    #[test]
    fn joint_distribution_normalizes(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = RandomStream::new(seed);
        let vars = random_variables(&mut rng, n);
        let net = random_network(&mut rng, &vars);
        let arity: Vec<usize> = vars.iter().map(Variable::arity).collect();
        let total: f64 = all_assignments(&arity)
            .iter()
            .map(|a| joint_probability(&net, a).unwrap())
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn marginal_query_equals_brute_force(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = RandomStream::new(seed);
        let vars = random_variables(&mut rng, n);
        let net = random_network(&mut rng, &vars);
        let target = (rng.next_u64() % n as u64) as usize;
        let value = (rng.next_u64() % vars[target].arity() as u64) as usize;
        let arity: Vec<usize> = vars.iter().map(Variable::arity).collect();
        let brute: f64 = all_assignments(&arity)
            .iter()
            .filter(|a| a[target] == value)
            .map(|a| joint_probability(&net, a).unwrap())
            .sum();
        let total: f64 = all_assignments(&arity)
            .iter()
            .map(|a| joint_probability(&net, a).unwrap())
            .sum();
        let q = query(&net, &[(target, value)], &[]).unwrap();
        prop_assert!((q - brute / total).abs() < 1e-12);
    }

    #[test]
    fn relabeling_values_keeps_joint(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = RandomStream::new(seed);
        let vars = random_variables(&mut rng, n);
        let net = random_network(&mut rng, &vars);
        let renamed: Vec<Variable> = vars
            .iter()
            .map(|v| Variable::new(v.name(), v.values().iter().map(|x| format!("{x}_renamed"))).unwrap())
            .collect();
        let parents = net.structure().parent_sets().to_vec();
        let other = Network::new(Structure::new(renamed, parents).unwrap(), net.cpts().to_vec()).unwrap();
        let arity: Vec<usize> = vars.iter().map(Variable::arity).collect();
        for a in all_assignments(&arity) {
            prop_assert_eq!(joint_probability(&net, &a).unwrap(), joint_probability(&other, &a).unwrap());
        }
    }

    #[test]
    fn log_ratios_compose(seed in any::<u64>(), n in 2usize..5, m in 1usize..40) {
        let mut rng = RandomStream::new(seed);
        let vars = random_variables(&mut rng, n);
        let db = random_database(&mut rng, &vars, m);
        let s1 = random_structure(&mut rng, &vars);
        let s2 = random_structure(&mut rng, &vars);
        let s3 = random_structure(&mut rng, &vars);
        let a = compare::<f64>(&s1, &s2, &db).unwrap();
        let b = compare::<f64>(&s2, &s3, &db).unwrap();
        let c = compare::<f64>(&s1, &s3, &db).unwrap();
        prop_assert!(relative_error(a.ratio * b.ratio, c.ratio) < 1e-9);
    }

    #[test]
    fn changing_one_parent_set_changes_one_term(seed in any::<u64>(), n in 2usize..5, m in 1usize..40) {
        let mut rng = RandomStream::new(seed);
        let vars = random_variables(&mut rng, n);
        let db = random_database(&mut rng, &vars, m);
        let s = random_structure(&mut rng, &vars);
        let node = (rng.next_u64() % n as u64) as usize;
        let t = s.with_parents(node, Vec::new()).unwrap();
        let scorer = k2net::Scorer::<f64>::new(&db).unwrap();
        let a = scorer.node_terms(&s).unwrap();
        let b = scorer.node_terms(&t).unwrap();
        for i in 0..n {
            if i != node {
                prop_assert_eq!(a[i], b[i]);
            }
        }
        let total = |s: &Structure| structure_log_score::<f64>(s, &db, PriorMode::None).unwrap().log_value;
        prop_assert!((total(&s) - total(&t) - (a[node] - b[node])).abs() < 1e-9);
    }

    #[test]
    fn case_files_round_trip(seed in any::<u64>(), n in 1usize..6, m in 1usize..60) {
        let mut rng = RandomStream::new(seed);
        let vars = random_variables(&mut rng, n);
        let db = random_database(&mut rng, &vars, m);
        let text = write_cases(&db);
        let back = read_cases(&text, Some(&vars)).unwrap();
        prop_assert_eq!(&back, &db);
        prop_assert_eq!(write_cases(&back), text);
    }

    #[test]
    fn sampling_is_prefix_stable(seed in any::<u64>(), short in 1usize..200, extra in 1usize..200) {
        let mut rng = RandomStream::new(seed);
        let vars = random_variables(&mut rng, 4);
        let net = random_network(&mut rng, &vars);
        let long = sample_cases(&net, short + extra, seed).unwrap();
        prop_assert_eq!(sample_cases(&net, short, seed).unwrap(), long.prefix(short));
    }
}
