//! Parsing of command-line instances. Every error names the offending flag.

use std::fmt;
use std::io::Read;

use bierkr::exactgeom::{parse_rational, Rational};
use bierkr::metricgraph::{GraphJson, WeightedGraph};
use bierkr::simplicial::{ComplexJson, SimplicialComplex};
use bierkr::threshold::{WeightVector, WeightsJson};
use serde::de::DeserializeOwned;

use crate::{ComplexArgs, GraphArgs, WeightArgs};

pub const DEFAULT_MAX_N: usize = 8;

#[derive(Debug)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for InputError {}

pub fn err(field: &str, message: impl ToString) -> InputError {
    InputError {
        field: field.to_owned(),
        message: message.to_string(),
    }
}

pub fn max_n() -> Result<usize, InputError> {
    match std::env::var("BIERKR_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| err("BIERKR_MAX_N", format!("not a size: {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

pub fn check_size(field: &str, n: usize) -> Result<(), InputError> {
    let cap = max_n()?;
    if n > cap {
        return Err(err(field, format!("n = {n} exceeds BIERKR_MAX_N = {cap}")));
    }
    Ok(())
}

fn read_source(field: &str, path: &str) -> Result<String, InputError> {
    let mut text = String::new();
    let result = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| err(field, format!("cannot read {path}: {e}")))?;
    Ok(text)
}

pub fn json<T: DeserializeOwned>(field: &str, text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| err(field, format!("invalid JSON: {e}")))
}

pub fn rational(field: &str, text: &str) -> Result<Rational, InputError> {
    parse_rational(text).map_err(|e| err(field, e))
}

pub fn complex(args: &ComplexArgs) -> Result<SimplicialComplex, InputError> {
    let (field, parsed) = match (&args.input, args.n, &args.facets) {
        (Some(path), _, _) => (
            "--input",
            json::<ComplexJson>("--input", &read_source("--input", path)?)?,
        ),
        (None, Some(n), Some(facets)) => (
            "--facets",
            ComplexJson {
                n,
                facets: json("--facets", facets)?,
            },
        ),
        _ => return Err(err("--n/--facets", "give --n with --facets, or --input")),
    };
    check_size(field, parsed.n)?;
    SimplicialComplex::from_json(&parsed).map_err(|e| err(field, e))
}

pub fn weights(args: &WeightArgs) -> Result<WeightVector, InputError> {
    let (field, l) = match (&args.input, &args.weights) {
        (Some(path), _) => {
            let parsed: WeightsJson = json("--input", &read_source("--input", path)?)?;
            ("--input", WeightVector::from_json(&parsed))
        }
        (None, Some(list)) => ("--weights", WeightVector::parse(list)),
        (None, None) => return Err(err("--weights", "missing; give --weights or --input")),
    };
    let l = l.map_err(|e| err(field, e))?;
    check_size(field, l.len())?;
    if args.normalize {
        Ok(l.normalize())
    } else if !l.is_normalized() {
        Err(err(
            field,
            "weights must sum to 1 (pass --normalize to rescale)",
        ))
    } else {
        Ok(l)
    }
}

pub fn graph(args: &GraphArgs) -> Result<WeightedGraph, InputError> {
    let (field, text) = match (&args.input, &args.graph) {
        (Some(path), _) => ("--input", read_source("--input", path)?),
        (None, Some(g)) => ("--graph", g.clone()),
        (None, None) => return Err(err("--graph", "missing; give --graph or --input")),
    };
    let parsed: GraphJson = json(field, &text)?;
    check_size(field, parsed.n)?;
    WeightedGraph::from_json(&parsed).map_err(|e| err(field, e))
}

pub fn matrix(field: &str, text: &str) -> Result<Vec<Vec<String>>, InputError> {
    let rows: Vec<Vec<String>> = json(field, text)?;
    check_size(field, rows.len())?;
    Ok(rows)
}
