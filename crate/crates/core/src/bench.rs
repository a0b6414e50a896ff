//! Timing harness: compositional queries against Dijkstra on the glued
//! graph, for two random dense components glued along growing boundaries.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::compose::PrecompiledPair;
use crate::error::{Error, Result};
use crate::graph_io::{pushout, GluingDiagram};
use crate::oracle;
use crate::semiring::{SquareMatrix, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    /// Vertices per component.
    pub nodes: usize,
    pub boundaries: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes == 0 {
            return Err(Error::Input("--nodes must be positive".into()));
        }
        if self.samples == 0 {
            return Err(Error::Input("--samples must be positive".into()));
        }
        if self.boundaries.is_empty() {
            return Err(Error::Input("at least one boundary size is required".into()));
        }
        if let Some(&k) = self.boundaries.iter().find(|&&k| k >= self.nodes) {
            return Err(Error::Input(format!(
                "boundary size {k} must be below the component size {}",
                self.nodes
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Compositional,
    Dijkstra,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub graph_size: usize,
    pub boundary_size: usize,
    pub algorithm: Algorithm,
    pub mean_seconds: f64,
    pub std_seconds: f64,
    pub samples: usize,
    /// Only set on compositional rows.
    pub precompile_seconds: Option<f64>,
}

/// The deterministic part of a benchmark run.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchInputs {
    pub m: SquareMatrix,
    pub n: SquareMatrix,
    /// Per boundary size, the sampled `(source, target)` glued labels.
    pub queries: Vec<(usize, Vec<(String, String)>)>,
}

/// Complete directed graph on `v0..v{n-1}` with independent uniform
/// `[0, 1)` weights and no self-loops.
pub fn random_complete_graph<R: Rng>(rng: &mut R, n: usize) -> SquareMatrix {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(if i == j {
                Weight::INFINITY
            } else {
                Weight::new(rng.gen::<f64>()).expect("uniform sample is in [0, 1)")
            });
        }
    }
    SquareMatrix::new(labels, entries).expect("generated labels are distinct")
}

/// Glues the first `k` vertices of `m` to the first `k` vertices of `n`,
/// boundary names `x0..x{k-1}`.
pub fn glue_first_vertices(m: &SquareMatrix, n: &SquareMatrix, k: usize) -> Result<GluingDiagram> {
    let boundary: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
    let pairs_m: Vec<(&str, &str)> = boundary
        .iter()
        .zip(m.labels())
        .map(|(x, v)| (x.as_str(), v.as_str()))
        .collect();
    let pairs_n: Vec<(&str, &str)> = boundary
        .iter()
        .zip(n.labels())
        .map(|(x, v)| (x.as_str(), v.as_str()))
        .collect();
    GluingDiagram::from_names(m.clone(), n.clone(), boundary.clone(), pairs_m, pairs_n)
}

fn query_rng(seed: u64, k: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn bench_inputs(config: &BenchConfig) -> Result<BenchInputs> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let m = random_complete_graph(&mut rng, config.nodes);
    let n = random_complete_graph(&mut rng, config.nodes);
    let mut queries = Vec::with_capacity(config.boundaries.len());
    for &k in &config.boundaries {
        let glued = crate::graph_io::build_glued_space(&glue_first_vertices(&m, &n, k)?);
        let labels = glued.labels();
        let mut rng = query_rng(config.seed, k);
        let pairs = (0..config.samples)
            .map(|_| {
                let s = &labels[rng.gen_range(0..labels.len())];
                let t = &labels[rng.gen_range(0..labels.len())];
                (s.clone(), t.clone())
            })
            .collect();
        queries.push((k, pairs));
    }
    Ok(BenchInputs { m, n, queries })
}

/// Sample mean and sample standard deviation (0 for a single sample).
pub fn mean_and_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs the benchmark single-threaded. Each boundary size yields a
/// compositional row (query time, precompilation reported separately) and
/// a Dijkstra row (one full run per query on the glued graph).
///
/// Every compositional answer is checked against the Dijkstra answer.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let inputs = bench_inputs(config)?;
    let mut records = Vec::with_capacity(2 * inputs.queries.len());
    for (k, pairs) in &inputs.queries {
        let d = glue_first_vertices(&inputs.m, &inputs.n, *k)?;

        let started = Instant::now();
        let pair = PrecompiledPair::from_diagram(&d);
        let precompile_seconds = started.elapsed().as_secs_f64();

        let mut composed = Vec::with_capacity(pairs.len());
        let mut times = Vec::with_capacity(pairs.len());
        for (s, t) in pairs {
            let started = Instant::now();
            let r = black_box(pair.query(black_box(s), black_box(t)))?;
            times.push(started.elapsed().as_secs_f64());
            composed.push(r.distance);
        }
        let (mean, std) = mean_and_std(&times);
        records.push(BenchRecord {
            graph_size: config.nodes,
            boundary_size: *k,
            algorithm: Algorithm::Compositional,
            mean_seconds: mean,
            std_seconds: std,
            samples: pairs.len(),
            precompile_seconds: Some(precompile_seconds),
        });

        let glued = pushout(&d);
        let mut times = Vec::with_capacity(pairs.len());
        for ((s, t), expected) in pairs.iter().zip(&composed) {
            let started = Instant::now();
            let dist = black_box(oracle::dijkstra(&glued, black_box(s), black_box(t)))?;
            times.push(started.elapsed().as_secs_f64());
            if dist.distance(*expected) > 1e-9 {
                return Err(Error::Input(format!(
                    "compositional answer {expected} disagrees with Dijkstra {dist} for {s} -> {t}"
                )));
            }
        }
        let (mean, std) = mean_and_std(&times);
        records.push(BenchRecord {
            graph_size: config.nodes,
            boundary_size: *k,
            algorithm: Algorithm::Dijkstra,
            mean_seconds: mean,
            std_seconds: std,
            samples: pairs.len(),
            precompile_seconds: None,
        });
    }
    Ok(records)
}

pub const CSV_HEADER: &str =
    "graph_size,boundary_size,algorithm,mean_seconds,std_seconds,samples,precompile_seconds";

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    // An empty record list still gets a header.
    if records.is_empty() {
        writer
            .write_record(CSV_HEADER.split(','))
            .map_err(|e| Error::Input(e.to_string()))?;
    }
    for r in records {
        writer.serialize(r).map_err(|e| Error::Input(e.to_string()))?;
    }
    writer
        .flush()
        .map_err(|e| Error::io("<csv output>", e))
}
