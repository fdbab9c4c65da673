//! Comma-separated case tables: a header row of variable names, then one
//! row of value labels per case.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Database, Variable};

fn csv_error(e: csv::Error) -> Error {
    Error::Parse(format!("case file: {e}"))
}

/// Reads a case table. With `variables`, columns are matched by name and
/// labels must belong to each variable's value list; the result uses the
/// given variable order. Without, each variable's values are the distinct
/// labels of its column in sorted order.
pub fn read_cases(text: &str, variables: Option<&[Variable]>) -> Result<Database> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_string)
        .collect();
    if header.iter().all(String::is_empty) {
        return Err(Error::Parse("case file has no header row".into()));
    }
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (j, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        if record.len() != header.len() {
            return Err(Error::Parse(format!(
                "case {}: {} values for {} variables; every case must be complete, missing values are not supported",
                j + 1,
                record.len(),
                header.len()
            )));
        }
        if let Some(k) = record.iter().position(str::is_empty) {
            return Err(Error::Parse(format!(
                "case {}: missing value for {}; every case must be complete, missing values are not supported",
                j + 1,
                header[k]
            )));
        }
        rows.push(record.iter().map(str::to_string).collect());
    }

    let variables: Vec<Variable> = match variables {
        Some(v) => v.to_vec(),
        None => header
            .iter()
            .enumerate()
            .map(|(k, name)| {
                let labels: BTreeSet<&str> = rows.iter().map(|r| r[k].as_str()).collect();
                Variable::new(name.as_str(), labels)
            })
            .collect::<Result<_>>()?,
    };
    if header.len() != variables.len() {
        return Err(Error::VariableMismatch(format!(
            "case file has {} columns, expected {} variables",
            header.len(),
            variables.len()
        )));
    }
    let column_of = variables
        .iter()
        .map(|v| {
            header.iter().position(|h| h == v.name()).ok_or_else(|| {
                Error::VariableMismatch(format!("case file has no column for {:?}", v.name()))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let cases = rows
        .iter()
        .enumerate()
        .map(|(j, row)| {
            variables
                .iter()
                .zip(&column_of)
                .map(|(v, &k)| {
                    v.value_index(&row[k]).ok_or_else(|| {
                        Error::Parse(format!(
                            "case {}: {:?} is not a value of {}",
                            j + 1,
                            row[k],
                            v.name()
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Database::new(variables, cases)
}

pub fn write_cases(db: &Database) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer
        .write_record(db.variables().iter().map(Variable::name))
        .expect("in-memory write");
    for case in db.cases() {
        writer
            .write_record(
                db.variables()
                    .iter()
                    .zip(case)
                    .map(|(v, &x)| v.values()[x].as_str()),
            )
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 labels")
}
