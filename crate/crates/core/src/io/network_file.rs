//! Versioned TOML documents describing a structure and, optionally, its CPTs.
//!
//! Canonical layout, which [`write_network`] and [`write_structure`] emit
//! byte for byte:
//!
//! ```toml
//! version = 1
//! arcs = [
//!   ["x1", "x2"],
//! ]
//!
//! [[variable]]
//! name = "x1"
//! values = ["absent", "present"]
//!
//! [[cpt]]
//! node = "x2"
//! rows = [
//!   [0.7, 0.3], # x1=absent
//!   [0.2, 0.8], # x1=present
//! ]
//! ```
//!
//! Arcs are `[parent, child]` pairs sorted by child, then parent. One `cpt`
//! table per variable in declaration order, with rows in canonical
//! parent-instantiation order (parents ascending by declaration index, last
//! parent varying fastest). A file without `cpt` tables describes a bare
//! structure.

use std::fmt::Write;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::{Network, Structure, Variable};
use crate::real::Real;

pub const FORMAT_VERSION: i64 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    version: i64,
    #[serde(default)]
    arcs: Vec<(String, String)>,
    #[serde(default)]
    variable: Vec<RawVariable>,
    #[serde(default)]
    cpt: Vec<RawCpt>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariable {
    name: String,
    values: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCpt {
    node: String,
    rows: Vec<Vec<f64>>,
}

/// Either a bare structure or a full network.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelFile<T> {
    Structure(Structure),
    Network(Network<T>),
}

impl<T: Real> ModelFile<T> {
    pub fn structure(&self) -> &Structure {
        match self {
            ModelFile::Structure(s) => s,
            ModelFile::Network(n) => n.structure(),
        }
    }
}

pub fn parse_model_file<T: Real>(text: &str) -> Result<ModelFile<T>> {
    let raw: RawFile = toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))?;
    if raw.version != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "unsupported format version {} (expected {FORMAT_VERSION})",
            raw.version
        )));
    }
    let variables = raw
        .variable
        .into_iter()
        .map(|v| Variable::new(v.name, v.values))
        .collect::<Result<Vec<_>>>()?;
    let index = |name: &str| {
        variables
            .iter()
            .position(|v| v.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))
    };
    let mut parents = vec![Vec::new(); variables.len()];
    for (p, c) in &raw.arcs {
        parents[index(c)?].push(index(p)?);
    }
    let cpts = if raw.cpt.is_empty() {
        None
    } else {
        if raw.cpt.len() != variables.len() {
            return Err(Error::Parse(format!(
                "{} cpt tables for {} variables",
                raw.cpt.len(),
                variables.len()
            )));
        }
        let mut tables = vec![None; variables.len()];
        for t in raw.cpt {
            let i = index(&t.node)?;
            let rows = t
                .rows
                .into_iter()
                .map(|r| r.into_iter().map(T::of).collect())
                .collect::<Vec<Vec<T>>>();
            if tables[i].replace(rows).is_some() {
                return Err(Error::Parse(format!("duplicate cpt for {:?}", t.node)));
            }
        }
        Some(tables.into_iter().map(Option::unwrap).collect::<Vec<_>>())
    };
    let structure = Structure::new(variables, parents)?;
    Ok(match cpts {
        None => ModelFile::Structure(structure),
        Some(cpts) => ModelFile::Network(Network::new(structure, cpts)?),
    })
}

/// Parses a file that must carry CPTs.
pub fn parse_network<T: Real>(text: &str) -> Result<Network<T>> {
    match parse_model_file(text)? {
        ModelFile::Network(n) => Ok(n),
        ModelFile::Structure(_) => Err(Error::Parse("file has no cpt tables".into())),
    }
}

/// Parses the structure part of a structure or network file.
pub fn parse_structure(text: &str) -> Result<Structure> {
    Ok(match parse_model_file::<f64>(text)? {
        ModelFile::Structure(s) => s,
        ModelFile::Network(n) => n.structure().clone(),
    })
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn write_header(s: &Structure, out: &mut String) {
    let _ = writeln!(out, "version = {FORMAT_VERSION}");
    let arcs = s.arcs();
    if arcs.is_empty() {
        out.push_str("arcs = []\n");
    } else {
        out.push_str("arcs = [\n");
        for (p, c) in arcs {
            let _ = writeln!(
                out,
                "  [{}, {}],",
                quote(s.variable(p).name()),
                quote(s.variable(c).name())
            );
        }
        out.push_str("]\n");
    }
    for v in s.variables() {
        let values: Vec<String> = v.values().iter().map(|x| quote(x)).collect();
        let _ = write!(
            out,
            "\n[[variable]]\nname = {}\nvalues = [{}]\n",
            quote(v.name()),
            values.join(", ")
        );
    }
}

pub fn write_structure(s: &Structure) -> String {
    let mut out = String::new();
    write_header(s, &mut out);
    out
}

pub fn write_network<T: Real>(net: &Network<T>) -> String {
    let s = net.structure();
    let mut out = String::new();
    write_header(s, &mut out);
    for (i, table) in net.cpts().iter().enumerate() {
        let _ = write!(
            out,
            "\n[[cpt]]\nnode = {}\nrows = [\n",
            quote(s.variable(i).name())
        );
        for (row, probs) in table.iter().enumerate() {
            let entries: Vec<String> = probs.iter().map(|p| format_probability(*p)).collect();
            let _ = write!(out, "  [{}],", entries.join(", "));
            if !s.parents(i).is_empty() {
                let labels: Vec<String> = s
                    .parents(i)
                    .iter()
                    .zip(s.parent_row_values(i, row))
                    .map(|(&p, w)| {
                        format!("{}={}", s.variable(p).name(), s.variable(p).values()[w])
                    })
                    .collect();
                let _ = write!(out, " # {}", labels.join(", ").replace('\n', " "));
            }
            out.push('\n');
        }
        out.push_str("]\n");
    }
    out
}

/// Shortest round-tripping decimal, always with a fractional part or
/// exponent so TOML reads it as a float.
fn format_probability<T: Real>(p: T) -> String {
    let s = format!("{p:?}");
    if s.contains(['.', 'e', 'E']) || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        format!("{s}.0")
    }
}
