//! The min-plus semiring `([0,∞], min, +)` and dense matrices over it.
//!
//! Semiring addition is `min` with identity `+∞`; semiring multiplication
//! is saturating `+` with identity `0`. A [`SquareMatrix`] over a labelled
//! vertex set is a weighted directed graph: entry `(i, j)` is the cost of
//! the edge `i -> j`, `+∞` meaning there is none.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A path cost in `[0, +∞]`.
///
/// Negative values and NaN cannot be constructed, so the type is totally
/// ordered and `+∞ + x` never produces NaN.
#[derive(Clone, Copy, PartialEq)]
#[repr(transparent)]
pub struct Weight(f64);

impl Weight {
    /// Semiring zero: no path.
    pub const INFINITY: Weight = Weight(f64::INFINITY);
    /// Semiring one: the empty path.
    pub const ZERO: Weight = Weight(0.0);

    pub fn new(value: f64) -> Result<Weight> {
        if value.is_nan() {
            return Err(Error::Input("weight is NaN".into()));
        }
        if value < 0.0 {
            return Err(Error::Input(format!("weight {value} is negative")));
        }
        // Normalise -0.0 so equal weights are bitwise equal.
        Ok(Weight(if value == 0.0 { 0.0 } else { value }))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.0 == f64::INFINITY
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    /// Semiring addition: the cheaper of two alternatives.
    #[inline]
    pub fn plus(self, other: Weight) -> Weight {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    /// Semiring multiplication: cost of following one path then the other.
    #[inline]
    pub fn times(self, other: Weight) -> Weight {
        if self.is_infinite() || other.is_infinite() {
            Weight::INFINITY
        } else {
            Weight(self.0 + other.0)
        }
    }

    /// `|self - other|`, with two infinities at distance zero.
    pub fn distance(self, other: Weight) -> f64 {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => 0.0,
            (false, false) => (self.0 - other.0).abs(),
            _ => f64::INFINITY,
        }
    }
}

impl Eq for Weight {}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::INFINITY
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl TryFrom<f64> for Weight {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Weight::new(value)
    }
}

// On the wire a weight is a JSON number, or the string "inf".
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct WeightVisitor;

        impl Visitor<'_> for WeightVisitor {
            type Value = Weight;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Weight, E> {
                Weight::new(v).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Weight, E> {
                self.visit_f64(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Weight, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Weight, E> {
                if v == "inf" {
                    Ok(Weight::INFINITY)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(WeightVisitor)
    }
}

/// `out[i][j] = min(out[i][j], min_k a[i][k] + b[k][j])` for row-major
/// `a: rows x inner` and `b: inner x cols`.
///
/// Rows of `a` are visited in order and each row of `out` only ever
/// receives candidates in increasing `k`, so results do not depend on how
/// the caller schedules rows.
pub(crate) fn min_plus_accumulate(
    a: &[Weight],
    b: &[Weight],
    rows: usize,
    inner: usize,
    cols: usize,
    out: &mut [Weight],
) {
    debug_assert_eq!(a.len(), rows * inner);
    debug_assert_eq!(b.len(), inner * cols);
    debug_assert_eq!(out.len(), rows * cols);
    if cols == 0 {
        return;
    }
    for (a_row, out_row) in a.chunks_exact(inner.max(1)).zip(out.chunks_exact_mut(cols)) {
        for (k, &a_ik) in a_row.iter().enumerate().take(inner) {
            if a_ik.is_infinite() {
                continue;
            }
            let a_ik = a_ik.0;
            let b_row = &b[k * cols..(k + 1) * cols];
            for (o, &b_kj) in out_row.iter_mut().zip(b_row) {
                // b_kj = +inf gives +inf, which never wins the min.
                let candidate = a_ik + b_kj.0;
                o.0 = if candidate < o.0 { candidate } else { o.0 };
            }
        }
    }
}

/// A min-plus matrix over an ordered set of distinct vertex labels.
///
/// Storage is dense and row-major.
#[derive(Clone)]
pub struct SquareMatrix {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    entries: Vec<Weight>,
}

impl PartialEq for SquareMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.entries == other.entries
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix {:?}", self.labels)?;
        for row in self.entries.chunks(self.len().max(1)) {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, label) in labels.iter().enumerate() {
        if index.insert(label.clone(), i).is_some() {
            return Err(Error::Input(format!("duplicate vertex label `{label}`")));
        }
    }
    Ok(index)
}

impl SquareMatrix {
    pub fn new(labels: Vec<String>, entries: Vec<Weight>) -> Result<Self> {
        let n = labels.len();
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "{} entries for {} labels, expected {}",
                entries.len(),
                n,
                n * n
            )));
        }
        let index = index_labels(&labels)?;
        Ok(SquareMatrix {
            labels,
            index,
            entries,
        })
    }

    pub fn filled(labels: Vec<String>, value: Weight) -> Result<Self> {
        let n = labels.len();
        SquareMatrix::new(labels, vec![value; n * n])
    }

    /// The graph with no edges, which is the additive identity.
    pub fn infinite(labels: Vec<String>) -> Result<Self> {
        SquareMatrix::filled(labels, Weight::INFINITY)
    }

    /// Zero on the diagonal, `+∞` elsewhere.
    pub fn identity(labels: Vec<String>) -> Result<Self> {
        let mut m = SquareMatrix::infinite(labels)?;
        for i in 0..m.len() {
            m.set(i, i, Weight::ZERO);
        }
        Ok(m)
    }

    /// Builds a matrix from nested rows of raw values; `f64::INFINITY` is
    /// the missing edge.
    pub fn from_rows<S: AsRef<str>>(labels: &[S], rows: &[Vec<f64>]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        if rows.len() != labels.len() || rows.iter().any(|r| r.len() != labels.len()) {
            return Err(Error::Dimension("rows do not form a square matrix".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| Weight::new(v))
            .collect::<Result<Vec<_>>>()?;
        SquareMatrix::new(labels, entries)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub(crate) fn require_index(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_owned()))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Weight {
        self.entries[i * self.len() + j]
    }

    pub fn get_by_label(&self, src: &str, dst: &str) -> Result<Weight> {
        Ok(self.get(self.require_index(src)?, self.require_index(dst)?))
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, w: Weight) {
        let n = self.len();
        self.entries[i * n + j] = w;
    }

    pub fn row(&self, i: usize) -> &[Weight] {
        let n = self.len();
        &self.entries[i * n..(i + 1) * n]
    }

    pub fn entries(&self) -> &[Weight] {
        &self.entries
    }

    fn check_same_labels(&self, other: &SquareMatrix) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::Dimension(format!(
                "label lists differ ({} vs {} vertices)",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// Entrywise minimum.
    pub fn plus(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        self.check_same_labels(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a.plus(b))
            .collect();
        Ok(SquareMatrix {
            labels: self.labels.clone(),
            index: self.index.clone(),
            entries,
        })
    }

    /// Min-plus product: `(A·B)(i,j) = min_k A(i,k) + B(k,j)`.
    pub fn times(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        self.check_same_labels(other)?;
        let n = self.len();
        let mut entries = vec![Weight::INFINITY; n * n];
        min_plus_accumulate(&self.entries, &other.entries, n, n, n, &mut entries);
        Ok(SquareMatrix {
            labels: self.labels.clone(),
            index: self.index.clone(),
            entries,
        })
    }

    /// All-pairs shortest path costs, `Σ_{n≥0} Mⁿ`.
    ///
    /// Squares `I ⊕ M` until a squaring changes nothing. With nonnegative
    /// weights a shortest path has fewer than `|V|` edges, so in exact
    /// arithmetic that takes at most `⌈log₂ |V|⌉` squarings. Rounding can
    /// still lower an entry by an ulp after that point; iterating to the
    /// fixpoint keeps `closure` exactly idempotent. Squaring never raises
    /// an entry once the diagonal is zero, so the loop terminates.
    pub fn closure(&self) -> SquareMatrix {
        let mut acc = self.clone();
        for i in 0..acc.len() {
            let d = acc.get(i, i).plus(Weight::ZERO);
            acc.set(i, i, d);
        }
        loop {
            let next = acc.times(&acc).expect("same labels");
            if next.entries == acc.entries {
                return acc;
            }
            acc = next;
        }
    }

    /// `self ≤ other` in every entry (shorter-or-equal costs).
    pub fn entrywise_le(&self, other: &SquareMatrix) -> bool {
        self.labels == other.labels
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// Largest entrywise [`Weight::distance`]; `+∞` if the labels differ.
    pub fn max_abs_diff(&self, other: &SquareMatrix) -> f64 {
        if self.labels != other.labels {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.distance(*b))
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &SquareMatrix, tolerance: f64) -> bool {
        self.max_abs_diff(other) <= tolerance
    }

    /// Copies out the sub-matrix on `rows x cols` (index ranges).
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> Block {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            entries.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        Block {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }
}

/// A rectangular min-plus matrix without labels, used for the blocks of a
/// precompiled component.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    rows: usize,
    cols: usize,
    entries: Vec<Weight>,
}

impl Block {
    pub fn new(rows: usize, cols: usize, entries: Vec<Weight>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} block",
                entries.len()
            )));
        }
        Ok(Block {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a block from nested rows; every row must have the same length.
    /// An empty row list gives a `0 x cols` block.
    pub fn from_rows(rows: Vec<Vec<Weight>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        Block::new(n, cols, rows.into_iter().flatten().collect())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Weight {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Weight] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Weight>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row vector times this block: `out[j] = min_i v[i] + B(i,j)`.
    pub fn left_multiply(&self, v: &[Weight]) -> Vec<Weight> {
        assert_eq!(v.len(), self.rows, "vector length must match block rows");
        let mut out = vec![Weight::INFINITY; self.cols];
        min_plus_accumulate(v, &self.entries, 1, self.rows, self.cols, &mut out);
        out
    }

    /// `min_i v[i] + B(i, col)`.
    pub fn dot_column(&self, v: &[Weight], col: usize) -> Weight {
        assert_eq!(v.len(), self.rows, "vector length must match block rows");
        v.iter()
            .enumerate()
            .fold(Weight::INFINITY, |acc, (i, &w)| acc.plus(w.times(self.get(i, col))))
    }
}
