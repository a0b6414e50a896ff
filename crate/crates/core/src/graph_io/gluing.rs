use std::collections::HashSet;

use super::{pushforward, VertexMap};
use crate::error::{Error, Result};
use crate::semiring::SquareMatrix;

/// Two graphs `m` and `n` together with a boundary set `X` and maps
/// `X -> vertices(m)`, `X -> vertices(n)`: the data of a pushout square
/// whose apex is the discrete graph on `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct GluingDiagram {
    m: SquareMatrix,
    n: SquareMatrix,
    into_m: VertexMap,
    into_n: VertexMap,
}

impl GluingDiagram {
    pub fn new(
        m: SquareMatrix,
        n: SquareMatrix,
        into_m: VertexMap,
        into_n: VertexMap,
    ) -> Result<Self> {
        if into_m.source_labels() != into_n.source_labels() {
            return Err(Error::Input(
                "boundary maps have different domains".into(),
            ));
        }
        if into_m.target_labels() != m.labels() {
            return Err(Error::Dimension("into_m does not land in m".into()));
        }
        if into_n.target_labels() != n.labels() {
            return Err(Error::Dimension("into_n does not land in n".into()));
        }
        let mut seen = HashSet::new();
        for x in into_m.source_labels() {
            if !seen.insert(x.as_str()) {
                return Err(Error::Input(format!("duplicate boundary name `{x}`")));
            }
            // Reserved for the glued names of component-only vertices.
            if x.starts_with("m:") || x.starts_with("n:") {
                return Err(Error::Input(format!(
                    "boundary name `{x}` uses a reserved `m:`/`n:` prefix"
                )));
            }
        }
        Ok(GluingDiagram {
            m,
            n,
            into_m,
            into_n,
        })
    }

    /// Convenience constructor from boundary names and `(x, vertex)` pairs.
    pub fn from_names<'a>(
        m: SquareMatrix,
        n: SquareMatrix,
        boundary: Vec<String>,
        into_m: impl IntoIterator<Item = (&'a str, &'a str)>,
        into_n: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let into_m = VertexMap::from_pairs(boundary.clone(), m.labels().to_vec(), into_m)?;
        let into_n = VertexMap::from_pairs(boundary, n.labels().to_vec(), into_n)?;
        GluingDiagram::new(m, n, into_m, into_n)
    }

    pub fn m(&self) -> &SquareMatrix {
        &self.m
    }

    pub fn n(&self) -> &SquareMatrix {
        &self.n
    }

    pub fn boundary(&self) -> &[String] {
        self.into_m.source_labels()
    }

    pub fn into_m(&self) -> &VertexMap {
        &self.into_m
    }

    pub fn into_n(&self) -> &VertexMap {
        &self.into_n
    }

    /// The same gluing with the roles of the two components exchanged.
    pub fn swapped(&self) -> GluingDiagram {
        GluingDiagram {
            m: self.n.clone(),
            n: self.m.clone(),
            into_m: self.into_n.clone(),
            into_n: self.into_m.clone(),
        }
    }
}

/// Vertex set of the glued graph and the quotient maps into it.
///
/// Labels are ordered boundary classes first, then vertices only in `m`,
/// then vertices only in `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GluedSpace {
    labels: Vec<String>,
    from_m: VertexMap,
    from_n: VertexMap,
    k: usize,
    m_only: usize,
    split: usize,
}

impl GluedSpace {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn from_m(&self) -> &VertexMap {
        &self.from_m
    }

    pub fn from_n(&self) -> &VertexMap {
        &self.from_n
    }

    pub fn boundary_classes(&self) -> &[String] {
        &self.labels[..self.k]
    }

    /// Number of boundary classes after gluing.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m_only(&self) -> usize {
        self.m_only
    }

    pub fn n_only(&self) -> usize {
        self.labels.len() - self.k - self.m_only
    }

    /// Boundary classes that merge two or more vertices of the same
    /// component. A shortest path may switch sides twice at such a class.
    pub fn split_classes(&self) -> usize {
        self.split
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}

/// Quotients the disjoint union of the two vertex sets by
/// `into_m(x) ~ into_n(x)`.
pub fn build_glued_space(d: &GluingDiagram) -> GluedSpace {
    let m_len = d.m.len();
    let n_len = d.n.len();
    let mut uf = UnionFind::new(m_len + n_len);
    for x in 0..d.boundary().len() {
        uf.union(d.into_m.apply(x), m_len + d.into_n.apply(x));
    }

    let mut class_of_root = vec![None; m_len + n_len];
    let mut labels = Vec::new();
    for (x, name) in d.boundary().iter().enumerate() {
        let root = uf.find(d.into_m.apply(x));
        if class_of_root[root].is_none() {
            class_of_root[root] = Some(labels.len());
            labels.push(name.clone());
        }
    }
    let k = labels.len();

    let mut from_m = Vec::with_capacity(m_len);
    for (a, name) in d.m.labels().iter().enumerate() {
        let root = uf.find(a);
        let class = *class_of_root[root].get_or_insert_with(|| {
            labels.push(format!("m:{name}"));
            labels.len() - 1
        });
        from_m.push(class);
    }
    let m_only = labels.len() - k;

    let mut from_n = Vec::with_capacity(n_len);
    for (b, name) in d.n.labels().iter().enumerate() {
        let root = uf.find(m_len + b);
        let class = *class_of_root[root].get_or_insert_with(|| {
            labels.push(format!("n:{name}"));
            labels.len() - 1
        });
        from_n.push(class);
    }

    let mut preimages = vec![(0usize, 0usize); k];
    for &c in from_m.iter().filter(|&&c| c < k) {
        preimages[c].0 += 1;
    }
    for &c in from_n.iter().filter(|&&c| c < k) {
        preimages[c].1 += 1;
    }
    let split = preimages.iter().filter(|(a, b)| *a > 1 || *b > 1).count();

    let from_m = VertexMap::new(d.m.labels().to_vec(), labels.clone(), from_m)
        .expect("quotient map indices are in range");
    let from_n = VertexMap::new(d.n.labels().to_vec(), labels.clone(), from_n)
        .expect("quotient map indices are in range");
    GluedSpace {
        labels,
        from_m,
        from_n,
        k,
        m_only,
        split,
    }
}

/// The glued graph: pointwise minimum of the two pushforwards.
pub fn pushout(d: &GluingDiagram) -> SquareMatrix {
    let space = build_glued_space(d);
    pushout_on(d, &space)
}

pub(crate) fn pushout_on(d: &GluingDiagram, space: &GluedSpace) -> SquareMatrix {
    let pm = pushforward(&d.m, &space.from_m).expect("from_m starts at m");
    let pn = pushforward(&d.n, &space.from_n).expect("from_n starts at n");
    pm.plus(&pn).expect("both live on the glued labels")
}
