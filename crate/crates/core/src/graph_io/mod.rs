//! Vertex maps, transport of weighted graphs along them, gluing of two
//! graphs along a shared boundary, and the on-disk formats.

mod cache;
mod format;
mod gluing;

pub use cache::{cache_from_str, cache_to_string, read_cache, write_cache, CACHE_FORMAT_VERSION};
pub use format::{parse_gluing, parse_graph, write_graph, GluingSpec};
pub use gluing::{build_glued_space, pushout, GluedSpace, GluingDiagram};

use crate::error::{Error, Result};
use crate::semiring::{SquareMatrix, Weight};

/// A total function between two ordered label sets, stored by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    source_labels: Vec<String>,
    target_labels: Vec<String>,
    mapping: Vec<usize>,
}

impl VertexMap {
    pub fn new(
        source_labels: Vec<String>,
        target_labels: Vec<String>,
        mapping: Vec<usize>,
    ) -> Result<Self> {
        if mapping.len() != source_labels.len() {
            return Err(Error::Input(format!(
                "vertex map covers {} of {} source labels",
                mapping.len(),
                source_labels.len()
            )));
        }
        if let Some(&bad) = mapping.iter().find(|&&t| t >= target_labels.len()) {
            return Err(Error::Input(format!(
                "vertex map target index {bad} out of range for {} labels",
                target_labels.len()
            )));
        }
        Ok(VertexMap {
            source_labels,
            target_labels,
            mapping,
        })
    }

    /// Builds a map from `(source, target)` label pairs; every source label
    /// must appear exactly once.
    pub fn from_pairs<'a>(
        source_labels: Vec<String>,
        target_labels: Vec<String>,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut mapping = vec![None; source_labels.len()];
        for (src, dst) in pairs {
            let i = source_labels
                .iter()
                .position(|l| l == src)
                .ok_or_else(|| Error::UnknownVertex(src.to_owned()))?;
            let j = target_labels
                .iter()
                .position(|l| l == dst)
                .ok_or_else(|| Error::UnknownVertex(dst.to_owned()))?;
            if mapping[i].replace(j).is_some() {
                return Err(Error::Input(format!("`{src}` is mapped twice")));
            }
        }
        let mapping = mapping
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| Error::Input(format!("`{}` is not mapped", source_labels[i])))
            })
            .collect::<Result<Vec<_>>>()?;
        VertexMap::new(source_labels, target_labels, mapping)
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let mapping = (0..labels.len()).collect();
        VertexMap {
            source_labels: labels.clone(),
            target_labels: labels,
            mapping,
        }
    }

    pub fn source_labels(&self) -> &[String] {
        &self.source_labels
    }

    pub fn target_labels(&self) -> &[String] {
        &self.target_labels
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    #[inline]
    pub fn apply(&self, source: usize) -> usize {
        self.mapping[source]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &VertexMap) -> Result<VertexMap> {
        if self.target_labels != then.source_labels {
            return Err(Error::Dimension(
                "composed maps do not share a middle label set".into(),
            ));
        }
        Ok(VertexMap {
            source_labels: self.source_labels.clone(),
            target_labels: then.target_labels.clone(),
            mapping: self.mapping.iter().map(|&i| then.mapping[i]).collect(),
        })
    }
}

/// Transports `m` along `f`: `f_*(M)(i,j) = min { M(a,b) : f(a)=i, f(b)=j }`,
/// `+∞` where the preimage is empty.
pub fn pushforward(m: &SquareMatrix, f: &VertexMap) -> Result<SquareMatrix> {
    if m.labels() != f.source_labels() {
        return Err(Error::Dimension(
            "vertex map source does not match the matrix labels".into(),
        ));
    }
    let mut out = SquareMatrix::infinite(f.target_labels().to_vec())?;
    for a in 0..m.len() {
        let i = f.apply(a);
        for (b, &w) in m.row(a).iter().enumerate() {
            if w.is_infinite() {
                continue;
            }
            let j = f.apply(b);
            let cur = out.get(i, j);
            out.set(i, j, cur.plus(w));
        }
    }
    Ok(out)
}

/// Whether `f` is a morphism of weighted graphs `m -> n`, i.e.
/// `f_*(m) ≥ n` entrywise.
pub fn is_morphism(f: &VertexMap, m: &SquareMatrix, n: &SquareMatrix) -> Result<bool> {
    if f.target_labels() != n.labels() {
        return Err(Error::Dimension(
            "vertex map target does not match the codomain labels".into(),
        ));
    }
    let pushed = pushforward(m, f)?;
    Ok(pushed
        .entries()
        .iter()
        .zip(n.entries())
        .all(|(p, q): (&Weight, &Weight)| p >= q))
}
