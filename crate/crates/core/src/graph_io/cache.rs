//! Precompiled-component cache files.
//!
//! ```json
//! {"format_version": 1, "labels": [..], "boundary_classes": [..],
//!  "split_classes": 0,
//!  "blocks": {"MM": [[..]], "MX": [[..]], "XM": [[..]], "XXM": [[..]]}}
//! ```
//!
//! N-side files carry `XXN`, `XN`, `NX`, `NN` instead. Region sizes are
//! recovered from the boundary class count and the square `MM`/`NN` block.
//! `split_classes` may be omitted and defaults to 0.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::compose::{BlockLayout, PrecompiledComponent};
use crate::error::{Error, Result};
use crate::semiring::{Block, Weight};
use crate::symbols::{BlockSymbol, Side};

pub const CACHE_FORMAT_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u64,
    labels: Vec<String>,
    boundary_classes: Vec<String>,
    #[serde(default)]
    split_classes: usize,
    blocks: BTreeMap<String, Vec<Vec<Weight>>>,
}

fn to_cache_file(pc: &PrecompiledComponent) -> CacheFile {
    let blocks = pc
        .side()
        .blocks()
        .iter()
        .zip(pc.blocks())
        .map(|(sym, block)| (sym.name().to_owned(), block.to_rows()))
        .collect();
    CacheFile {
        format_version: CACHE_FORMAT_VERSION,
        labels: pc.layout().labels().to_vec(),
        boundary_classes: pc.layout().boundary_classes().to_vec(),
        split_classes: pc.layout().split_classes(),
        blocks,
    }
}

/// Serialises a precompiled component to the cache JSON format.
pub fn cache_to_string(pc: &PrecompiledComponent) -> String {
    serde_json::to_string(&to_cache_file(pc)).expect("cache serialisation cannot fail")
}

/// Parses and validates cache JSON.
pub fn cache_from_str(text: &str) -> Result<PrecompiledComponent> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(Error::from_json)?;
    let version = value
        .get("format_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| Error::CorruptCache("missing or invalid format_version".into()))?;
    if version != CACHE_FORMAT_VERSION {
        return Err(Error::CacheVersion {
            found: version,
            expected: CACHE_FORMAT_VERSION,
        });
    }
    let mut file: CacheFile =
        serde_json::from_value(value).map_err(|e| Error::CorruptCache(e.to_string()))?;

    let side = match (file.blocks.contains_key("MM"), file.blocks.contains_key("NN")) {
        (true, false) => Side::M,
        (false, true) => Side::N,
        _ => {
            return Err(Error::CorruptCache(
                "blocks must be exactly one side's MM/MX/XM/XXM or XXN/XN/NX/NN".into(),
            ))
        }
    };
    let expected: Vec<&str> = side.blocks().iter().map(|b| b.name()).collect();
    if file.blocks.len() != 4 || expected.iter().any(|n| !file.blocks.contains_key(*n)) {
        return Err(Error::CorruptCache(format!(
            "expected blocks {expected:?}, found {:?}",
            file.blocks.keys().collect::<Vec<_>>()
        )));
    }

    let k = file.boundary_classes.len();
    if file.labels.get(..k) != Some(file.boundary_classes.as_slice()) {
        return Err(Error::CorruptCache(
            "boundary classes must lead the label list".into(),
        ));
    }
    let own = match side {
        Side::M => "MM",
        Side::N => "NN",
    };
    let own_size = file.blocks[own].len();
    let Some(other_size) = file.labels.len().checked_sub(k + own_size) else {
        return Err(Error::CorruptCache(format!(
            "{own} block has {own_size} rows but only {} non-boundary labels",
            file.labels.len() - k
        )));
    };
    let m_only = match side {
        Side::M => own_size,
        Side::N => other_size,
    };
    let layout = Arc::new(
        BlockLayout::new(std::mem::take(&mut file.labels), k, m_only, file.split_classes)
            .map_err(|e| Error::CorruptCache(e.to_string()))?,
    );

    let blocks = side.blocks().map(|sym: BlockSymbol| {
        let rows = file.blocks.remove(sym.name()).expect("presence checked");
        let (want_rows, want_cols) = (
            layout.range(sym.row()).len(),
            layout.range(sym.col()).len(),
        );
        if rows.len() != want_rows {
            return Err(Error::CorruptCache(format!(
                "block {sym} has {} rows, expected {want_rows}",
                rows.len()
            )));
        }
        Block::from_rows(rows, want_cols)
            .map_err(|e| Error::CorruptCache(format!("block {sym}: {e}")))
    });
    let [a, b, c, d] = blocks;
    PrecompiledComponent::new(layout, side, [a?, b?, c?, d?])
        .map_err(|e| Error::CorruptCache(e.to_string()))
}

/// Writes the cache atomically (temporary file in the same directory,
/// then rename).
pub fn write_cache(pc: &PrecompiledComponent, path: &Path) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(cache_to_string(pc).as_bytes())
        .and_then(|_| tmp.flush())
        .map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn read_cache(path: &Path) -> Result<PrecompiledComponent> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    cache_from_str(&text)
}
