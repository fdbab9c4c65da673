use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use k2net::io::{self, ModelFile};
use k2net::search::{count_dags, count_ordered};
use k2net::simulate::reconstruction_experiment;
use k2net::{
    bundled, Database, Error, Network, Ordering, PriorMode, SearchConfig, SearchResult, Structure,
    Variable,
};

use crate::{CountMode, Prior};

/// Variable count above which `--max-parents` must be given explicitly.
const EXPLICIT_BOUND_ABOVE: usize = 15;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn format(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn guard(message: impl Into<String>) -> Self {
        CliError {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidOrdering(_) => 2,
            Error::TooLarge { .. } | Error::TooManyVariables { .. } => 4,
            _ => 3,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_input(source: &str) -> CliResult<String> {
    if let Some(name) = source.strip_prefix("bundled:") {
        return bundled::lookup(name).map(str::to_string).ok_or_else(|| {
            CliError::format(format!(
                "no bundled file {name:?}; available: {}",
                bundled::NAMES.join(", ")
            ))
        });
    }
    std::fs::read_to_string(source).map_err(|e| CliError::format(format!("{source}: {e}")))
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut String) -> CliResult<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::format(format!("{}: {e}", p.display())))
        }
        None => {
            stdout.push_str(text);
            Ok(())
        }
    }
}

fn load_model(source: &str) -> CliResult<ModelFile<f64>> {
    Ok(io::parse_model_file(&read_input(source)?)?)
}

fn load_structure(source: &str) -> CliResult<Structure> {
    Ok(load_model(source)?.structure().clone())
}

fn load_network(source: &str) -> CliResult<Network<f64>> {
    Ok(io::parse_network(&read_input(source)?)?)
}

fn load_cases(source: &str, variables: Option<&[Variable]>) -> CliResult<Database> {
    let db = io::read_cases(&read_input(source)?, variables)?;
    if db.is_empty() {
        return Err(CliError::format(format!("{source}: no cases")));
    }
    Ok(db)
}

fn prior_mode(prior: Prior, n: usize) -> PriorMode {
    match prior {
        Prior::None => PriorMode::None,
        Prior::AllDags => PriorMode::UniformAllDags(n),
        Prior::Ordered => PriorMode::UniformOrdered(n),
    }
}

fn log10(ln: f64) -> f64 {
    ln / std::f64::consts::LN_10
}

fn describe_arcs(s: &Structure) -> String {
    let arcs = s.arcs();
    if arcs.is_empty() {
        return "(no arcs)".into();
    }
    arcs.iter()
        .map(|&(p, c)| format!("{}→{}", s.variable(p).name(), s.variable(c).name()))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn score(model: &str, cases: &str, prior: Prior) -> CliResult<String> {
    let s = load_structure(model)?;
    let db = load_cases(cases, Some(s.variables()))?;
    let result = k2net::structure_log_score::<f64>(&s, &db, prior_mode(prior, s.len()))?;
    let mut out = String::new();
    let _ = writeln!(out, "prior: {}", result.prior);
    let _ = writeln!(out, "log10 P(B_S, D) = {:.6}", log10(result.log_value));
    let _ = writeln!(out, "ln P(B_S, D) = {:.6}", result.log_value);
    let value = result.value();
    if value >= 1e-300 {
        let _ = writeln!(out, "P(B_S, D) = {value:.4e}");
    }
    Ok(out)
}

pub struct LearnArgs {
    pub cases: String,
    pub ordering: Option<Vec<String>>,
    pub max_parents: Option<usize>,
    pub variables: Option<String>,
    pub prior: Prior,
    pub exhaustive: bool,
    pub dot: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub trace: bool,
    pub threads: usize,
}

fn resolve_ordering(vars: &[Variable], names: Option<Vec<String>>) -> CliResult<Ordering> {
    match names {
        Some(names) => Ok(Ordering::from_names(vars, &names)?),
        None => Ok(Ordering::identity(vars.len())),
    }
}

fn resolve_bound(n: usize, max_parents: Option<usize>) -> CliResult<usize> {
    match max_parents {
        Some(u) => Ok(u),
        None if n > EXPLICIT_BOUND_ABOVE => Err(CliError::guard(format!(
            "{n} variables: pass --max-parents explicitly above {EXPLICIT_BOUND_ABOVE} variables"
        ))),
        None => Ok(n.saturating_sub(1).max(1)),
    }
}

pub fn learn(args: LearnArgs) -> CliResult<String> {
    let declared = match &args.variables {
        Some(src) => Some(load_structure(src)?.variables().to_vec()),
        None => None,
    };
    let db = load_cases(&args.cases, declared.as_deref())?;
    let vars = db.variables();
    let n = vars.len();
    let ordering = resolve_ordering(vars, args.ordering)?;
    let cfg = SearchConfig::new(ordering, resolve_bound(n, args.max_parents)?)?
        .with_prior(prior_mode(args.prior, n))
        .with_threads(args.threads);
    let result: SearchResult<f64> = if args.exhaustive {
        k2net::exhaustive_ordered_search(&db, &cfg)?
    } else {
        k2net::k2(&db, &cfg)?
    };

    let s = &result.structure;
    let mut out = String::new();
    if args.trace {
        for t in &result.trace {
            let _ = writeln!(
                out,
                "node {}: ln g(∅) = {:.6}",
                s.variable(t.node).name(),
                t.initial_log_g
            );
            for step in &t.steps {
                let _ = writeln!(
                    out,
                    "  round {} try {}: ln g = {:.6}{}",
                    step.round,
                    s.variable(step.candidate).name(),
                    step.log_g,
                    if step.accepted { " accepted" } else { "" }
                );
            }
        }
    }
    for &i in cfg.ordering.as_slice() {
        let parents: Vec<&str> = s.parents(i).iter().map(|&p| s.variable(p).name()).collect();
        let _ = writeln!(out, "{} ← {{{}}}", s.variable(i).name(), parents.join(", "));
    }
    let _ = writeln!(out, "prior: {}", result.prior);
    let _ = writeln!(
        out,
        "log10 P(B_S, D) = {:.6}",
        log10(result.total_log_score)
    );

    if let Some(path) = &args.dot {
        write_output(Some(path), &io::to_dot(s, "learned"), &mut out)?;
    }
    if let Some(path) = &args.output {
        write_output(Some(path), &io::write_structure(s), &mut out)?;
    }
    Ok(out)
}

pub fn posteriors(
    cases: &str,
    all_dags: bool,
    structure_files: &[String],
    variables: Option<&str>,
    prior: Prior,
) -> CliResult<String> {
    let (structures, labels, db) = if all_dags {
        let declared = match variables {
            Some(src) => Some(load_structure(src)?.variables().to_vec()),
            None => None,
        };
        let db = load_cases(cases, declared.as_deref())?;
        let vars = db.variables().to_vec();
        let iter = k2net::enumerate_all_dags(vars.len()).map_err(|e| match e {
            Error::TooLarge { n, max, .. } => CliError::guard(format!(
                "enumeration guard exceeded: {n} variables, at most {max} supported"
            )),
            other => other.into(),
        })?;
        let structures = iter
            .map(|p| Structure::new(vars.clone(), p))
            .collect::<Result<Vec<_>, _>>()?;
        let labels = vec![String::new(); structures.len()];
        (structures, labels, db)
    } else {
        let structures = structure_files
            .iter()
            .map(|f| load_structure(f))
            .collect::<CliResult<Vec<_>>>()?;
        let first = structures
            .first()
            .ok_or_else(|| CliError::format("no structures given"))?;
        let db = load_cases(cases, Some(first.variables()))?;
        (structures, structure_files.to_vec(), db)
    };
    let n = db.num_variables();
    let post = k2net::normalized_posteriors::<f64>(&structures, &db, prior_mode(prior, n))?;
    let mut rows: Vec<usize> = (0..structures.len()).collect();
    // stable: equal posteriors keep enumeration order
    rows.sort_by(|&a, &b| post[b].total_cmp(&post[a]));

    let mut out = String::new();
    let _ = writeln!(out, "rank\tposterior\tstructure");
    for (rank, &k) in rows.iter().enumerate() {
        let label = if labels[k].is_empty() {
            String::new()
        } else {
            format!("{}: ", labels[k])
        };
        let _ = writeln!(
            out,
            "{}\t{:.6}\t{}{}",
            rank + 1,
            post[k],
            label,
            describe_arcs(&structures[k])
        );
    }
    Ok(out)
}

pub fn sample(network: &str, m: usize, seed: u64, out_path: Option<&Path>) -> CliResult<String> {
    let net = load_network(network)?;
    let db = k2net::sample_cases(&net, m, seed)?;
    let mut out = String::new();
    write_output(out_path, &io::write_cases(&db), &mut out)?;
    Ok(out)
}

pub fn fit(structure: &str, cases: &str, out_path: Option<&Path>) -> CliResult<String> {
    let s = load_structure(structure)?;
    let db = load_cases(cases, Some(s.variables()))?;
    let net = k2net::fit_parameters::<f64>(&s, &db)?;
    let mut out = String::new();
    write_output(out_path, &io::write_network(&net), &mut out)?;
    Ok(out)
}

fn parse_pairs(net: &Network<f64>, items: &[String]) -> CliResult<Vec<(usize, usize)>> {
    items
        .iter()
        .map(|item| {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::format(format!("expected name=value, got {item:?}")))?;
            let i = net
                .structure()
                .index_of(name.trim())
                .ok_or_else(|| CliError::format(format!("unknown variable {name:?}")))?;
            let x = net.variables()[i]
                .value_index(value.trim())
                .ok_or_else(|| CliError::format(format!("{value:?} is not a value of {name}")))?;
            Ok((i, x))
        })
        .collect()
}

pub fn infer(network: &str, target: &[String], given: &[String]) -> CliResult<String> {
    let net = load_network(network)?;
    let targets = parse_pairs(&net, target)?;
    let evidence = parse_pairs(&net, given)?;
    let p = k2net::query(&net, &targets, &evidence)?;
    let mut out = format!("P({}", target.join(", "));
    if !given.is_empty() {
        let _ = write!(out, " | {}", given.join(", "));
    }
    let _ = writeln!(out, ") = {p}");
    Ok(out)
}

pub fn compare(first: &str, second: &str, cases: &str, ln: bool) -> CliResult<String> {
    let s1 = load_structure(first)?;
    let s2 = load_structure(second)?;
    let db = load_cases(cases, Some(s1.variables()))?;
    let c = k2net::compare::<f64>(&s1, &s2, &db)?;
    let mut out = String::new();
    let _ = writeln!(out, "log10 ratio = {:.6}", log10(c.log_ratio));
    if ln {
        let _ = writeln!(out, "ln ratio = {:.6}", c.log_ratio);
    }
    let _ = writeln!(out, "ratio = {}", c.ratio);
    Ok(out)
}

pub fn count(n: usize, mode: CountMode) -> String {
    match mode {
        CountMode::Dags => format!("{}\n", count_dags(n)),
        CountMode::Ordered => format!("{}\n", count_ordered(n)),
    }
}

pub fn reconstruct(
    network: &str,
    m: &[usize],
    seed: u64,
    max_parents: Option<usize>,
    ordering: Option<Vec<String>>,
    threads: usize,
) -> CliResult<String> {
    let net = load_network(network)?;
    let ordering = match ordering {
        Some(names) => Ordering::from_names(net.variables(), &names)?,
        None => k2net::topological_order(net.structure())?,
    };
    let n = net.len();
    let cfg = SearchConfig::new(ordering, resolve_bound(n, max_parents)?)?.with_threads(threads);
    let report = reconstruction_experiment(&net, m, seed, &cfg)?;
    let mut out = String::new();
    let _ = writeln!(out, "cases\tmissing\textra\treversed\ttotal\tseconds");
    for e in &report.entries {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{:.3}",
            e.cases,
            e.diff.missing,
            e.diff.extra,
            e.diff.reversed,
            e.diff.total(),
            e.elapsed.max(Duration::ZERO).as_secs_f64()
        );
    }
    Ok(out)
}
