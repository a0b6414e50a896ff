//! JSON graph and gluing files.
//!
//! Graph file:
//! `{"vertices": [..], "edges": [{"src": .., "dst": .., "weight": number | "inf"}, ..]}`
//!
//! Gluing file:
//! `{"boundary": [..], "into_m": {x: vertex, ..}, "into_n": {x: vertex, ..}}`

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::GluingDiagram;
use crate::error::{Error, Result};
use crate::semiring::{SquareMatrix, Weight};

#[derive(Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
}

#[derive(Deserialize)]
struct EdgeRecord {
    src: String,
    dst: String,
    weight: RawWeight,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawWeight {
    Number(f64),
    Text(String),
}

#[derive(Serialize)]
struct GraphOut<'a> {
    vertices: &'a [String],
    edges: Vec<EdgeOut<'a>>,
}

#[derive(Serialize)]
struct EdgeOut<'a> {
    src: &'a str,
    dst: &'a str,
    weight: Weight,
}

/// Parses a graph file. Absent pairs are `+∞` (including the diagonal);
/// repeated edges keep the cheapest weight.
pub fn parse_graph(text: &str) -> Result<SquareMatrix> {
    let file: GraphFile = serde_json::from_str(text).map_err(Error::from_json)?;
    let mut m = SquareMatrix::infinite(file.vertices).map_err(|e| match e {
        Error::Input(msg) => Error::parse("vertices", msg),
        other => other,
    })?;
    for (idx, edge) in file.edges.iter().enumerate() {
        let field = |name: &str| format!("edges[{idx}].{name}");
        let i = m
            .index_of(&edge.src)
            .ok_or_else(|| Error::parse(field("src"), format!("unknown vertex `{}`", edge.src)))?;
        let j = m
            .index_of(&edge.dst)
            .ok_or_else(|| Error::parse(field("dst"), format!("unknown vertex `{}`", edge.dst)))?;
        let w = match &edge.weight {
            RawWeight::Number(v) => {
                Weight::new(*v).map_err(|e| Error::parse(field("weight"), e.to_string()))?
            }
            RawWeight::Text(s) if s == "inf" => Weight::INFINITY,
            RawWeight::Text(s) => {
                return Err(Error::parse(
                    field("weight"),
                    format!("expected a number or \"inf\", found \"{s}\""),
                ))
            }
        };
        let cur = m.get(i, j);
        m.set(i, j, cur.plus(w));
    }
    Ok(m)
}

/// Serialises a matrix as a graph file, listing every finite entry as an
/// edge in row-major order.
pub fn write_graph(m: &SquareMatrix) -> String {
    let labels = m.labels();
    let mut edges = Vec::new();
    for i in 0..m.len() {
        for (j, &w) in m.row(i).iter().enumerate() {
            if w.is_finite() {
                edges.push(EdgeOut {
                    src: &labels[i],
                    dst: &labels[j],
                    weight: w,
                });
            }
        }
    }
    let mut out = serde_json::to_string(&GraphOut {
        vertices: labels,
        edges,
    })
    .expect("graph serialisation cannot fail");
    out.push('\n');
    out
}

/// A parsed gluing file, not yet checked against the component graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingSpec {
    pub boundary: Vec<String>,
    pub into_m: BTreeMap<String, String>,
    pub into_n: BTreeMap<String, String>,
}

pub fn parse_gluing(text: &str) -> Result<GluingSpec> {
    serde_json::from_str(text).map_err(Error::from_json)
}

impl GluingSpec {
    pub fn into_diagram(&self, m: SquareMatrix, n: SquareMatrix) -> Result<GluingDiagram> {
        for (leg, map) in [("into_m", &self.into_m), ("into_n", &self.into_n)] {
            if let Some(extra) = map.keys().find(|x| !self.boundary.contains(x)) {
                return Err(Error::parse(
                    format!("{leg}.{extra}"),
                    "not a boundary name",
                ));
            }
            if let Some(missing) = self.boundary.iter().find(|x| !map.contains_key(*x)) {
                return Err(Error::parse(leg, format!("boundary name `{missing}` is not mapped")));
            }
        }
        GluingDiagram::from_names(
            m,
            n,
            self.boundary.clone(),
            self.into_m.iter().map(|(x, v)| (x.as_str(), v.as_str())),
            self.into_n.iter().map(|(x, v)| (x.as_str(), v.as_str())),
        )
    }
}
