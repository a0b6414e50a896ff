//! Command-line front end.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::bench::{run_bench, write_csv, BenchConfig};
use crate::compose::{compose_full, precompile, PrecompiledPair};
use crate::error::{Error, Result};
use crate::graph_io::{parse_gluing, parse_graph, read_cache, write_cache, write_graph, GluingDiagram};
use crate::symbols::{render_symbols, symbols_for};

#[derive(Debug, Parser)]
#[command(name = "pathcompose", version, about = "Compositional shortest paths on glued graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All-pairs shortest paths of one graph file.
    Closure {
        /// Input graph file.
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All-pairs shortest paths of two graphs glued along a boundary.
    Compose {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
        #[arg(long)]
        glue: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the composition symbols for a boundary of size K.
    Symbols {
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance between two glued vertices.
    Query {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
        #[arg(long)]
        glue: PathBuf,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// Reuse (or create) precompiled components in this directory.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Time compositional queries against Dijkstra and write CSV.
    Bench {
        #[arg(long, default_value_t = 500)]
        nodes: usize,
        /// Comma-separated boundary sizes.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8,9,10")]
        boundaries: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = read(path)?;
    String::from_utf8(bytes).map_err(|_| Error::parse(path.display().to_string(), "not UTF-8"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn with_path(path: &Path, err: Error) -> Error {
    match err {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    }
}

/// Loads the two components and the gluing file into a diagram.
pub fn load_diagram(m: &Path, n: &Path, glue: &Path) -> Result<GluingDiagram> {
    let gm = parse_graph(&read_text(m)?).map_err(|e| with_path(m, e))?;
    let gn = parse_graph(&read_text(n)?).map_err(|e| with_path(n, e))?;
    let spec = parse_gluing(&read_text(glue)?).map_err(|e| with_path(glue, e))?;
    spec.into_diagram(gm, gn).map_err(|e| with_path(glue, e))
}

/// Cache files are keyed by a digest of the three input files, so edited
/// inputs never pick up a stale precompilation.
fn cache_paths(dir: &Path, m: &Path, n: &Path, glue: &Path) -> Result<(PathBuf, PathBuf)> {
    let mut hasher = Sha256::new();
    for path in [m, n, glue] {
        let bytes = read(path)?;
        hasher.update((bytes.len() as u64).to_le_bytes());
        hasher.update(&bytes);
    }
    let key = hex::encode(hasher.finalize());
    Ok((
        dir.join(format!("{key}.m.json")),
        dir.join(format!("{key}.n.json")),
    ))
}

fn precompiled_pair(
    m: &Path,
    n: &Path,
    glue: &Path,
    cache_dir: Option<&Path>,
) -> Result<PrecompiledPair> {
    let Some(dir) = cache_dir else {
        return Ok(PrecompiledPair::from_diagram(&load_diagram(m, n, glue)?));
    };
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let (m_cache, n_cache) = cache_paths(dir, m, n, glue)?;
    if m_cache.exists() && n_cache.exists() {
        return PrecompiledPair::new(read_cache(&m_cache)?, read_cache(&n_cache)?);
    }
    let (pm, pn) = precompile(&load_diagram(m, n, glue)?);
    write_cache(&pm, &m_cache)?;
    write_cache(&pn, &n_cache)?;
    PrecompiledPair::new(pm, pn)
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Closure { graph, out } => {
            let m = parse_graph(&read_text(&graph)?).map_err(|e| with_path(&graph, e))?;
            emit(out.as_deref(), &write_graph(&m.closure()))
        }
        Command::Compose { m, n, glue, out } => {
            let d = load_diagram(&m, &n, &glue)?;
            emit(out.as_deref(), &write_graph(&compose_full(&d)))
        }
        Command::Symbols { k, out } => emit(out.as_deref(), &render_symbols(&symbols_for(k))),
        Command::Query {
            m,
            n,
            glue,
            source,
            target,
            cache_dir,
        } => {
            let pair = precompiled_pair(&m, &n, &glue, cache_dir.as_deref())?;
            let result = pair.query(&source, &target)?;
            emit(None, &format!("{}\n", result.distance))
        }
        Command::Bench {
            nodes,
            boundaries,
            samples,
            seed,
            out,
        } => {
            let config = BenchConfig {
                nodes,
                boundaries,
                samples,
                seed,
            };
            let records = run_bench(&config)?;
            match out {
                Some(path) => {
                    let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
                    write_csv(&records, file)
                }
                None => write_csv(&records, io::stdout()),
            }
        }
    }
}
