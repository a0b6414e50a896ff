//! Shortest paths on a glued graph from the closures of its two pieces.
//!
//! * [`precompile`] computes each component's closure once, transports it
//!   to the glued vertex set and slices it into blocks.
//! * [`compose_full`] sums the alternating products of the two transported
//!   closures over the whole glued graph.
//! * [`query`] answers a single source/target pair by evaluating the
//!   matching composition symbol on the blocks with vector-matrix products,
//!   so its cost depends on the boundary size rather than the graph size.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph_io::{build_glued_space, pushforward, GluedSpace, GluingDiagram};
use crate::semiring::{Block, SquareMatrix, Weight};
use crate::symbols::{max_factors_for, symbols_with_bound, BlockSymbol, Region, Side, SymbolWord};

/// Vertex order of a glued graph: `k` boundary classes, then M-only, then
/// N-only vertices. `split` counts the classes that merge vertices within
/// one component.
#[derive(Clone, Debug)]
pub struct BlockLayout {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    k: usize,
    m_only: usize,
    split: usize,
}

impl PartialEq for BlockLayout {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.k == other.k
            && self.m_only == other.m_only
            && self.split == other.split
    }
}

impl BlockLayout {
    pub fn new(labels: Vec<String>, k: usize, m_only: usize, split: usize) -> Result<Self> {
        if split > k {
            return Err(Error::Input(format!(
                "{split} split classes exceed {k} boundary classes"
            )));
        }
        if k + m_only > labels.len() {
            return Err(Error::Dimension(format!(
                "{k} boundary and {m_only} M-only vertices exceed {} labels",
                labels.len()
            )));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate glued label `{l}`")));
            }
        }
        Ok(BlockLayout {
            labels,
            index,
            k,
            m_only,
            split,
        })
    }

    pub fn of_space(space: &GluedSpace) -> Self {
        BlockLayout::new(
            space.labels().to_vec(),
            space.k(),
            space.m_only(),
            space.split_classes(),
        )
            .expect("glued spaces have distinct labels")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn boundary_classes(&self) -> &[String] {
        &self.labels[..self.k]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m_only(&self) -> usize {
        self.m_only
    }

    pub fn split_classes(&self) -> usize {
        self.split
    }

    /// Longest word needed: one side switch per boundary class on a simple
    /// path, plus one more at each split class, where the path may leave
    /// through a different preimage of the class than it arrived at.
    pub fn max_factors(&self) -> usize {
        max_factors_for(self.k) + self.split
    }

    pub fn n_only(&self) -> usize {
        self.labels.len() - self.k - self.m_only
    }

    pub fn range(&self, region: Region) -> Range<usize> {
        match region {
            Region::Boundary => 0..self.k,
            Region::MOnly => self.k..self.k + self.m_only,
            Region::NOnly => self.k + self.m_only..self.labels.len(),
        }
    }

    /// Region of a glued label and its offset within that region.
    pub fn locate(&self, label: &str) -> Result<(Region, usize)> {
        let i = *self
            .index
            .get(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_owned()))?;
        let region = if i < self.k {
            Region::Boundary
        } else if i < self.k + self.m_only {
            Region::MOnly
        } else {
            Region::NOnly
        };
        Ok((region, i - self.range(region).start))
    }

    fn block_shape(&self, b: BlockSymbol) -> (usize, usize) {
        (self.range(b.row()).len(), self.range(b.col()).len())
    }
}

/// A component's closure, transported to the glued vertices and cut into
/// its four nonzero blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecompiledComponent {
    layout: Arc<BlockLayout>,
    side: Side,
    blocks: [Block; 4],
}

impl PrecompiledComponent {
    /// `blocks` are in the order of [`Side::blocks`].
    pub fn new(layout: Arc<BlockLayout>, side: Side, blocks: [Block; 4]) -> Result<Self> {
        for (sym, block) in side.blocks().iter().zip(&blocks) {
            let (rows, cols) = layout.block_shape(*sym);
            if (block.rows(), block.cols()) != (rows, cols) {
                return Err(Error::Dimension(format!(
                    "block {sym} is {}x{}, expected {rows}x{cols}",
                    block.rows(),
                    block.cols()
                )));
            }
        }
        Ok(PrecompiledComponent {
            layout,
            side,
            blocks,
        })
    }

    /// Slices the four blocks of `side` out of a glued-size matrix.
    pub fn from_glued(layout: Arc<BlockLayout>, side: Side, full: &SquareMatrix) -> Self {
        let blocks = side
            .blocks()
            .map(|b| full.block(layout.range(b.row()), layout.range(b.col())));
        PrecompiledComponent {
            layout,
            side,
            blocks,
        }
    }

    pub fn layout(&self) -> &Arc<BlockLayout> {
        &self.layout
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn blocks(&self) -> &[Block; 4] {
        &self.blocks
    }

    /// The block for `symbol`, if it belongs to this side.
    pub fn block(&self, symbol: BlockSymbol) -> Option<&Block> {
        self.side
            .blocks()
            .iter()
            .position(|&b| b == symbol)
            .map(|i| &self.blocks[i])
    }

    /// Reassembles the glued-size matrix, `+∞` outside this side's blocks.
    pub fn assemble(&self) -> SquareMatrix {
        let mut full = SquareMatrix::infinite(self.layout.labels.clone())
            .expect("layout labels are distinct");
        for (sym, block) in self.side.blocks().iter().zip(&self.blocks) {
            let rows = self.layout.range(sym.row());
            let cols = self.layout.range(sym.col());
            for (bi, i) in rows.enumerate() {
                for (bj, j) in cols.clone().enumerate() {
                    full.set(i, j, block.get(bi, bj));
                }
            }
        }
        full
    }
}

/// Closure of each component pushed forward to the glued vertex set.
fn transported_closures(d: &GluingDiagram, space: &GluedSpace) -> (SquareMatrix, SquareMatrix) {
    let fm = pushforward(&d.m().closure(), space.from_m()).expect("from_m starts at m");
    let fnn = pushforward(&d.n().closure(), space.from_n()).expect("from_n starts at n");
    (fm, fnn)
}

/// Closes both components and slices them into blocks over the glued
/// vertex order.
pub fn precompile(d: &GluingDiagram) -> (PrecompiledComponent, PrecompiledComponent) {
    let space = build_glued_space(d);
    let layout = Arc::new(BlockLayout::of_space(&space));
    let (fm, fnn) = transported_closures(d, &space);
    (
        PrecompiledComponent::from_glued(Arc::clone(&layout), Side::M, &fm),
        PrecompiledComponent::from_glued(layout, Side::N, &fnn),
    )
}

/// Accumulated alternating sums after `1, 2, ..., max_factors` factors.
///
/// Entry `n - 1` is `Σ_{t=1..n} (F(M)F(N)F(M)··· + F(N)F(M)F(N)···)` with
/// `t` factors in each product.
pub fn partial_sums(d: &GluingDiagram, max_factors: usize) -> Vec<SquareMatrix> {
    let space = build_glued_space(d);
    let (fm, fnn) = transported_closures(d, &space);
    let mut sums = Vec::with_capacity(max_factors);
    if max_factors == 0 {
        return sums;
    }
    let mut from_m = fm.clone();
    let mut from_n = fnn.clone();
    let mut acc = fm.plus(&fnn).expect("same labels");
    sums.push(acc.clone());
    for step in 2..=max_factors {
        // Products starting with F(M) end in F(N) at even lengths.
        let (next_m, next_n) = if step % 2 == 0 { (&fnn, &fm) } else { (&fm, &fnn) };
        from_m = from_m.times(next_m).expect("same labels");
        from_n = from_n.times(next_n).expect("same labels");
        acc = acc
            .plus(&from_m)
            .and_then(|a| a.plus(&from_n))
            .expect("same labels");
        sums.push(acc.clone());
    }
    sums
}

/// The alternating sum truncated at `max_factors` factors.
pub fn compose_with_bound(d: &GluingDiagram, max_factors: usize) -> SquareMatrix {
    match partial_sums(d, max_factors).pop() {
        Some(m) => m,
        None => SquareMatrix::infinite(build_glued_space(d).labels().to_vec())
            .expect("glued labels are distinct"),
    }
}

/// All-pairs shortest paths of the glued graph, over the glued labels.
pub fn compose_full(d: &GluingDiagram) -> SquareMatrix {
    let layout = BlockLayout::of_space(&build_glued_space(d));
    compose_with_bound(d, layout.max_factors())
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryResult {
    pub distance: Weight,
    pub source: String,
    pub target: String,
    pub k_used: usize,
    pub words_evaluated: usize,
}

/// An M-side and N-side precompiled component over the same glued space.
#[derive(Clone, Debug)]
pub struct PrecompiledPair {
    m: PrecompiledComponent,
    n: PrecompiledComponent,
}

impl PrecompiledPair {
    pub fn new(m: PrecompiledComponent, n: PrecompiledComponent) -> Result<Self> {
        if m.side != Side::M || n.side != Side::N {
            return Err(Error::Input(
                "expected one M-side and one N-side component".into(),
            ));
        }
        if !Arc::ptr_eq(&m.layout, &n.layout) && m.layout != n.layout {
            return Err(Error::Dimension(
                "components were precompiled for different gluings".into(),
            ));
        }
        Ok(PrecompiledPair { m, n })
    }

    pub fn from_diagram(d: &GluingDiagram) -> Self {
        let (m, n) = precompile(d);
        PrecompiledPair { m, n }
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.m.layout
    }

    pub fn m(&self) -> &PrecompiledComponent {
        &self.m
    }

    pub fn n(&self) -> &PrecompiledComponent {
        &self.n
    }

    fn block(&self, symbol: BlockSymbol) -> &Block {
        let component = match symbol.side() {
            Side::M => &self.m,
            Side::N => &self.n,
        };
        component.block(symbol).expect("symbol belongs to its side")
    }

    /// Value of one word with its first factor restricted to row `s` and
    /// its last to column `t` (offsets within their regions).
    fn evaluate(&self, word: &SymbolWord, s: usize, t: usize) -> Weight {
        let factors = word.factors();
        let first = self.block(factors[0]);
        if factors.len() == 1 {
            return first.get(s, t);
        }
        let mut v = first.row(s).to_vec();
        for &mid in &factors[1..factors.len() - 1] {
            v = self.block(mid).left_multiply(&v);
        }
        self.block(factors[factors.len() - 1]).dot_column(&v, t)
    }

    /// Shortest distance between two glued labels.
    pub fn query(&self, source: &str, target: &str) -> Result<QueryResult> {
        let layout = self.layout();
        let (s_region, s) = layout.locate(source)?;
        let (t_region, t) = layout.locate(target)?;
        let symbols = symbols_with_bound(layout.k(), layout.max_factors());
        let expr = symbols.get(s_region, t_region);
        let distance = expr
            .words()
            .fold(Weight::INFINITY, |best, w| best.plus(self.evaluate(w, s, t)));
        Ok(QueryResult {
            distance,
            source: source.to_owned(),
            target: target.to_owned(),
            k_used: layout.k(),
            words_evaluated: expr.len(),
        })
    }
}

/// Answers one query against two precompiled components.
pub fn query(
    pm: &PrecompiledComponent,
    pn: &PrecompiledComponent,
    source: &str,
    target: &str,
) -> Result<QueryResult> {
    PrecompiledPair::new(pm.clone(), pn.clone())?.query(source, target)
}
