//! Composition symbols: the block-matrix expansion of the alternating sum
//! `Σ F(M)·F(N)·F(M)··· + F(N)·F(M)·F(N)···` over a gluing whose vertices
//! are split into three regions (M-only, boundary, N-only).
//!
//! The pushed-forward closure of each component occupies four of the nine
//! blocks:
//!
//! ```text
//!          | MM  MX   0  |            |  0   0    0 |
//!   F(M) = | XM  XXM  0  |     F(N) = |  0  XXN  XN |
//!          |  0   0   0  |            |  0  NX   NN |
//! ```
//!
//! A word is a product of blocks that chains through the regions, with
//! factors taken alternately from the two sides. Words are generated with
//! up to `k + 1` factors for `k` boundary classes: a shortest path switches
//! components only at boundary vertices and visits each at most once.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Which component a block (or a precompiled closure) comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    M,
    N,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::M => Side::N,
            Side::N => Side::M,
        }
    }

    pub fn blocks(self) -> [BlockSymbol; 4] {
        match self {
            Side::M => [BlockSymbol::MM, BlockSymbol::MX, BlockSymbol::XM, BlockSymbol::XXM],
            Side::N => [BlockSymbol::XXN, BlockSymbol::XN, BlockSymbol::NX, BlockSymbol::NN],
        }
    }
}

/// One of the three vertex groups of the glued graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    MOnly,
    Boundary,
    NOnly,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::MOnly, Region::Boundary, Region::NOnly];

    /// 1-based block position: M-only = 1, boundary = 2, N-only = 3.
    pub fn position(self) -> usize {
        match self {
            Region::MOnly => 1,
            Region::Boundary => 2,
            Region::NOnly => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockSymbol {
    MM,
    MX,
    XM,
    XXM,
    XXN,
    XN,
    NX,
    NN,
}

impl BlockSymbol {
    pub const ALL: [BlockSymbol; 8] = [
        BlockSymbol::MM,
        BlockSymbol::MX,
        BlockSymbol::XM,
        BlockSymbol::XXM,
        BlockSymbol::XXN,
        BlockSymbol::XN,
        BlockSymbol::NX,
        BlockSymbol::NN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BlockSymbol::MM => "MM",
            BlockSymbol::MX => "MX",
            BlockSymbol::XM => "XM",
            BlockSymbol::XXM => "XXM",
            BlockSymbol::XXN => "XXN",
            BlockSymbol::XN => "XN",
            BlockSymbol::NX => "NX",
            BlockSymbol::NN => "NN",
        }
    }

    pub fn from_name(name: &str) -> Option<BlockSymbol> {
        BlockSymbol::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn side(self) -> Side {
        match self {
            BlockSymbol::MM | BlockSymbol::MX | BlockSymbol::XM | BlockSymbol::XXM => Side::M,
            _ => Side::N,
        }
    }

    pub fn row(self) -> Region {
        match self {
            BlockSymbol::MM | BlockSymbol::MX => Region::MOnly,
            BlockSymbol::XM | BlockSymbol::XXM | BlockSymbol::XXN | BlockSymbol::XN => {
                Region::Boundary
            }
            BlockSymbol::NX | BlockSymbol::NN => Region::NOnly,
        }
    }

    pub fn col(self) -> Region {
        match self {
            BlockSymbol::MM | BlockSymbol::XM => Region::MOnly,
            BlockSymbol::MX | BlockSymbol::XXM | BlockSymbol::XXN | BlockSymbol::NX => {
                Region::Boundary
            }
            BlockSymbol::XN | BlockSymbol::NN => Region::NOnly,
        }
    }
}

impl fmt::Display for BlockSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A nonempty, composable, side-alternating product of blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolWord {
    factors: Vec<BlockSymbol>,
}

impl SymbolWord {
    /// Returns `None` unless the factors are nonempty, chain through the
    /// regions and alternate sides.
    pub fn new(factors: Vec<BlockSymbol>) -> Option<SymbolWord> {
        if factors.is_empty() {
            return None;
        }
        let well_formed = factors
            .windows(2)
            .all(|w| w[0].col() == w[1].row() && w[0].side() != w[1].side());
        well_formed.then_some(SymbolWord { factors })
    }

    pub fn factors(&self) -> &[BlockSymbol] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn row(&self) -> Region {
        self.factors[0].row()
    }

    pub fn col(&self) -> Region {
        self.factors[self.factors.len() - 1].col()
    }
}

impl Ord for SymbolWord {
    /// Shorter words first, then lexicographic on factor names.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            self.factors
                .iter()
                .map(|f| f.name())
                .cmp(other.factors.iter().map(|f| f.name()))
        })
    }
}

impl PartialOrd for SymbolWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymbolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(factor.name())?;
        }
        Ok(())
    }
}

/// A formal idempotent sum of words; the empty sum is the all-`+∞` block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolExpr {
    words: BTreeSet<SymbolWord>,
}

impl SymbolExpr {
    pub fn insert(&mut self, word: SymbolWord) -> bool {
        self.words.insert(word)
    }

    /// Words in rendering order.
    pub fn words(&self) -> impl Iterator<Item = &SymbolWord> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &SymbolWord) -> bool {
        self.words.contains(word)
    }
}

impl fmt::Display for SymbolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return f.write_str("0");
        }
        for (i, word) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{word}")?;
        }
        Ok(())
    }
}

/// `Symbol(k)`: one expression per (source region, target region).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolMatrix {
    k: usize,
    max_factors: usize,
    entries: [[SymbolExpr; 3]; 3],
}

impl SymbolMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Longest word length generated.
    pub fn max_factors(&self) -> usize {
        self.max_factors
    }

    pub fn get(&self, row: Region, col: Region) -> &SymbolExpr {
        &self.entries[row.position() - 1][col.position() - 1]
    }

    pub fn entries(&self) -> impl Iterator<Item = (Region, Region, &SymbolExpr)> {
        Region::ALL.into_iter().flat_map(move |r| {
            Region::ALL
                .into_iter()
                .map(move |c| (r, c, self.get(r, c)))
        })
    }
}

/// Word-length bound for `k` boundary classes: at most `k` side switches,
/// one per class a simple path passes through. Gluings that merge vertices
/// within a component need more; see `BlockLayout::max_factors`.
pub fn max_factors_for(k: usize) -> usize {
    k + 1
}

/// Generates `Symbol(k)` with words of up to `k + 1` factors.
pub fn generate_symbols(k: usize) -> SymbolMatrix {
    generate_symbols_with_bound(k, max_factors_for(k))
}

/// Generates all well-formed words with `1..=max_factors` factors, for
/// both starting sides.
pub fn generate_symbols_with_bound(k: usize, max_factors: usize) -> SymbolMatrix {
    let mut entries: [[SymbolExpr; 3]; 3] = Default::default();
    let mut stack = Vec::with_capacity(max_factors);
    for start in [Side::M, Side::N] {
        extend_words(start, None, max_factors, &mut stack, &mut entries);
    }
    SymbolMatrix {
        k,
        max_factors,
        entries,
    }
}

fn extend_words(
    side: Side,
    at: Option<Region>,
    remaining: usize,
    stack: &mut Vec<BlockSymbol>,
    entries: &mut [[SymbolExpr; 3]; 3],
) {
    if remaining == 0 {
        return;
    }
    for block in side.blocks() {
        if at.is_some_and(|r| r != block.row()) {
            continue;
        }
        stack.push(block);
        let word = SymbolWord::new(stack.clone()).expect("extension keeps words well formed");
        entries[word.row().position() - 1][word.col().position() - 1].insert(word);
        extend_words(side.other(), Some(block.col()), remaining - 1, stack, entries);
        stack.pop();
    }
}

/// Memoised [`generate_symbols`]; each `k` is generated once per process.
pub fn symbols_for(k: usize) -> Arc<SymbolMatrix> {
    symbols_with_bound(k, max_factors_for(k))
}

/// Memoised [`generate_symbols_with_bound`].
pub fn symbols_with_bound(k: usize, max_factors: usize) -> Arc<SymbolMatrix> {
    type Memo = Mutex<HashMap<(usize, usize), Arc<SymbolMatrix>>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = (k, max_factors);
    if let Some(hit) = memo.lock().expect("symbol memo poisoned").get(&key) {
        return Arc::clone(hit);
    }
    // Generated outside the lock; a racing fill produces an identical value.
    let fresh = Arc::new(generate_symbols_with_bound(k, max_factors));
    Arc::clone(
        memo.lock()
            .expect("symbol memo poisoned")
            .entry(key)
            .or_insert(fresh),
    )
}

/// One line per block pair: `Symbol(k,i,j) = W1 + W2 + ...`.
pub fn render_symbols(s: &SymbolMatrix) -> String {
    let mut out = String::new();
    for (row, col, expr) in s.entries() {
        out.push_str(&format!(
            "Symbol({},{},{}) = {}\n",
            s.k,
            row.position(),
            col.position(),
            expr
        ));
    }
    out
}
