//! Text formats for digraphs. All vertex numbers here are 1-based.
//!
//! * digraph JSON: `{"n": 3, "arrows": [[1, 2, "1"], [2, 3, "-1/2"]]}`
//! * undirected graph JSON: `{"n": 3, "edges": [[2, 3]]}`
//! * edge list: a header line `n=3`, then `tail head weight` per line
//!   (`#` starts a comment)

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{digraph_of_graph, GraphError, WeightedDigraph};
use crate::linalg::{format_rational, parse_rational, Rational};

#[derive(Serialize, Deserialize)]
struct DigraphDoc {
    n: usize,
    arrows: Vec<(usize, usize, Value)>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<(usize, usize)>,
}

fn parse_err(msg: impl Into<String>) -> GraphError {
    GraphError::Parse(msg.into())
}

fn weight_from_json(v: &Value) -> Result<Rational, GraphError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(e.to_string())),
        // serde_json prints the shortest decimal that round-trips, which is
        // then read exactly
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| parse_err(e.to_string())),
        other => Err(parse_err(format!("weight must be a string or number, got {other}"))),
    }
}

fn zero_based(v: usize, n: usize) -> Result<usize, GraphError> {
    if v == 0 || v > n {
        Err(GraphError::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(v - 1)
    }
}

/// Reads either the digraph or the undirected graph JSON form.
pub fn from_json(text: &str) -> Result<WeightedDigraph, GraphError> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    if value.get("edges").is_some() {
        let doc: GraphDoc = serde_json::from_value(value).map_err(|e| parse_err(e.to_string()))?;
        let edges = doc
            .edges
            .iter()
            .map(|&(i, j)| Ok((zero_based(i, doc.n)?, zero_based(j, doc.n)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        return digraph_of_graph(doc.n, &edges);
    }
    let doc: DigraphDoc = serde_json::from_value(value).map_err(|e| parse_err(e.to_string()))?;
    let mut g = WeightedDigraph::new(doc.n);
    for (t, h, w) in &doc.arrows {
        g.add_arrow(zero_based(*t, doc.n)?, zero_based(*h, doc.n)?, weight_from_json(w)?)?;
    }
    Ok(g)
}

pub fn to_json(g: &WeightedDigraph) -> String {
    let doc = DigraphDoc {
        n: g.n(),
        arrows: g
            .arrows()
            .map(|(t, h, w)| (t + 1, h + 1, Value::String(format_rational(w))))
            .collect(),
    };
    serde_json::to_string(&doc).expect("digraph serializes")
}

pub fn from_edge_list(text: &str) -> Result<WeightedDigraph, GraphError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| parse_err("missing `n=` header"))?;
    let n: usize = header
        .strip_prefix("n=")
        .or_else(|| header.strip_prefix("n ="))
        .ok_or_else(|| parse_err(format!("expected `n=<count>`, got {header:?}")))?
        .trim()
        .parse()
        .map_err(|_| parse_err(format!("bad vertex count in {header:?}")))?;
    let mut g = WeightedDigraph::new(n);
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [t, h, w] = fields[..] else {
            return Err(parse_err(format!("expected `tail head weight`, got {line:?}")));
        };
        let t: usize = t.parse().map_err(|_| parse_err(format!("bad tail in {line:?}")))?;
        let h: usize = h.parse().map_err(|_| parse_err(format!("bad head in {line:?}")))?;
        let w = parse_rational(w).map_err(|e| parse_err(e.to_string()))?;
        g.add_arrow(zero_based(t, n)?, zero_based(h, n)?, w)?;
    }
    Ok(g)
}

pub fn to_edge_list(g: &WeightedDigraph) -> String {
    let mut out = format!("n={}\n", g.n());
    for (t, h, w) in g.arrows() {
        out.push_str(&format!("{} {} {}\n", t + 1, h + 1, format_rational(w)));
    }
    out
}

/// Sniffs the format: JSON if the text starts with `{`, edge list otherwise.
pub fn parse_any(text: &str) -> Result<WeightedDigraph, GraphError> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_edge_list(text)
    }
}
