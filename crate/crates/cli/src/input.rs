//! Resolving the network argument: a catalog name, a digraph file (JSON or
//! edge list) or a matrix file `{"matrix": [["3", "-1"], ...]}`.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use polydiag::catalog;
use polydiag::graph::{io, WeightedDigraph};
use polydiag::linalg::{parse_rational, RationalMatrix};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
}

/// What the argument named, before a matrix is chosen.
pub enum Network {
    Digraph(WeightedDigraph),
    Matrix(RationalMatrix),
}

fn json_entry(v: &Value) -> Result<polydiag::linalg::Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => bail!("matrix entries must be strings or numbers, got {other}"),
    };
    Ok(parse_rational(&text)?)
}

fn matrix_from_json(value: &Value) -> Result<RationalMatrix> {
    let rows = value
        .as_array()
        .ok_or_else(|| anyhow!("\"matrix\" must be an array of rows"))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| anyhow!("each matrix row must be an array"))?
                .iter()
                .map(json_entry)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_rows(rows)?)
}

fn parse_text(text: &str) -> Result<Network> {
    if text.trim_start().starts_with('{') {
        let value: Value = serde_json::from_str(text)?;
        if let Some(m) = value.get("matrix") {
            return Ok(Network::Matrix(matrix_from_json(m)?));
        }
    }
    Ok(Network::Digraph(io::parse_any(text)?))
}

impl Network {
    /// Files take precedence over catalog names.
    pub fn load(arg: &str) -> Result<Self> {
        let path = Path::new(arg);
        if path.is_file() {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
            return parse_text(&text).with_context(|| format!("parsing {arg}"));
        }
        catalog::example(arg).map(Network::Matrix).ok_or_else(|| {
            anyhow!(
                "{arg:?} is neither a readable file nor a catalog name ({})",
                catalog::EXAMPLE_NAMES.join(", ")
            )
        })
    }

    /// A matrix input is read as the adjacency matrix of a digraph (loops
    /// allowed) when its Laplacian is requested.
    pub fn digraph(&self) -> Result<WeightedDigraph> {
        match self {
            Network::Digraph(g) => Ok(g.clone()),
            Network::Matrix(m) => Ok(WeightedDigraph::from_adjacency(m)?),
        }
    }

    pub fn matrix(&self, kind: MatrixKind) -> Result<RationalMatrix> {
        match (self, kind) {
            (Network::Matrix(m), MatrixKind::Adjacency) => Ok(m.clone()),
            (Network::Digraph(g), MatrixKind::Adjacency) => Ok(g.adjacency_matrix()),
            (_, MatrixKind::Laplacian) => Ok(self.digraph()?.laplacian_matrix()),
        }
    }
}

/// `"1,0;0,2"` as rows; a single row of length `k` is a diagonal.
pub fn real_matrix(text: &str, k: usize) -> Result<polydiag::dynamics::RealMatrix> {
    use polydiag::dynamics::RealMatrix;
    let rows = text
        .split(';')
        .map(real_list)
        .collect::<Result<Vec<_>>>()?;
    if rows.len() == 1 && rows[0].len() == k && k > 1 {
        return Ok(RealMatrix::diagonal(&rows[0]));
    }
    let m = RealMatrix::from_rows(&rows)?;
    if m.rows() != k || m.cols() != k {
        bail!("expected a {k}x{k} matrix or {k} diagonal entries, got {text:?}");
    }
    Ok(m)
}

/// Comma separated reals; entries may be exact rationals such as `-1/2`.
pub fn real_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            match s.parse::<f64>() {
                Ok(v) => Ok(v),
                Err(_) => Ok(polydiag::linalg::to_f64(
                    &parse_rational(s).with_context(|| format!("bad number {s:?}"))?,
                )),
            }
        })
        .collect()
}
