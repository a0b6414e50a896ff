//! Acceptance suite. Each test checks one criterion and prints a single
//! `[PASS]`/`[FAIL]` line; run with `--nocapture` to see them.

mod common;

use std::sync::OnceLock;

use common::{names, random_diagram, random_matrix, Shape};
use pathcompose::bench::{run_bench, Algorithm, BenchConfig, BenchRecord};
use pathcompose::compose::{compose_full, BlockLayout, partial_sums, PrecompiledPair};
use pathcompose::graph_io::{build_glued_space, parse_graph, pushforward, pushout, write_graph};
use pathcompose::oracle::{brute_force_paths, floyd_warshall};
use pathcompose::symbols::{generate_symbols, render_symbols};
use pathcompose::{GluingDiagram, SquareMatrix, VertexMap, Weight};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOLERANCE: f64 = 1e-9;
const INSTANCES: usize = 240;
const QUERIES_PER_INSTANCE: usize = 50;

fn report(criterion: u32, title: &str, ok: bool, detail: String) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {criterion}: {title} ({detail})");
    assert!(ok, "criterion {criterion} failed: {title} ({detail})");
}

/// The shared random gluing instances for criteria 1, 2 and 4.
fn instances() -> &'static Vec<GluingDiagram> {
    static CELL: OnceLock<Vec<GluingDiagram>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        (0..INSTANCES)
            .map(|i| random_diagram(&mut rng, Shape::CYCLE[i % Shape::CYCLE.len()], 20, 6))
            .collect()
    })
}

fn is_injective(f: &VertexMap) -> bool {
    let mut seen = std::collections::HashSet::new();
    f.mapping().iter().all(|t| seen.insert(*t))
}

#[test]
fn criterion_1_oracle_equivalence() {
    let mut worst = 0.0f64;
    let mut failures = 0;
    let (mut k0, mut k1, mut non_injective) = (0, 0, 0);
    for d in instances() {
        let space = build_glued_space(d);
        k0 += usize::from(space.k() == 0);
        k1 += usize::from(space.k() == 1);
        non_injective += usize::from(!is_injective(d.into_m()) || !is_injective(d.into_n()));
        let diff = compose_full(d).max_abs_diff(&floyd_warshall(&pushout(d)));
        worst = worst.max(diff);
        failures += usize::from(diff > TOLERANCE);
    }
    report(
        1,
        "compose_full equals Floyd-Warshall on the pushout",
        failures == 0 && k0 > 0 && k1 > 0 && non_injective > 0,
        format!(
            "{} instances, {failures} mismatches, max diff {worst:e}, k=0: {k0}, k=1: {k1}, non-injective: {non_injective}",
            instances().len()
        ),
    );
}

#[test]
fn criterion_2_query_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut checked = 0;
    let mut failures = 0;
    for d in instances() {
        let full = compose_full(d);
        let pair = PrecompiledPair::from_diagram(d);
        let labels = full.labels();
        for _ in 0..QUERIES_PER_INSTANCE {
            let s = labels.choose(&mut rng).unwrap();
            let t = labels.choose(&mut rng).unwrap();
            let got = pair.query(s, t).unwrap().distance;
            let want = full.get_by_label(s, t).unwrap();
            checked += 1;
            failures += usize::from(got.distance(want) > TOLERANCE);
        }
    }
    report(
        2,
        "query matches compose_full",
        failures == 0,
        format!("{checked} queries, {failures} mismatches"),
    );
}

#[test]
fn criterion_3_golden_symbol() {
    let rendered = render_symbols(&generate_symbols(4));
    let line = rendered
        .lines()
        .find(|l| l.starts_with("Symbol(4,1,3) ="))
        .unwrap_or_default()
        .to_owned();
    report(
        3,
        "Symbol(4,1,3) rendering",
        line == "Symbol(4,1,3) = MX*XN + MX*XXN*XXM*XN",
        format!("got `{line}`"),
    );
}

#[test]
fn criterion_4_crossing_bound_saturation() {
    let mut failures = 0;
    let mut worst = 0.0f64;
    for d in instances() {
        let n = BlockLayout::of_space(&build_glued_space(d)).max_factors();
        let sums = partial_sums(d, n + 2);
        // sums[n - 1] is the compose_full sum, sums[n + 1] two more alternations.
        if sums[n - 1] != sums[n + 1] {
            failures += 1;
            worst = worst.max(sums[n - 1].max_abs_diff(&sums[n + 1]));
        }
    }
    report(
        4,
        "two extra alternation terms change nothing",
        failures == 0,
        format!(
            "{} instances, {failures} changed, largest change {worst:e}",
            instances().len()
        ),
    );
}

#[test]
fn criterion_5_closure_validation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut fw_worst = 0.0f64;
    let mut fw_cases = 0;
    for i in 0..220 {
        let n = if i < 20 { 64 } else { rng.gen_range(0..=64) };
        let p_inf = rng.gen_range(0.0..0.95);
        let m = random_matrix(&mut rng, names("v", n), p_inf, 10.0);
        fw_worst = fw_worst.max(m.closure().max_abs_diff(&floyd_warshall(&m)));
        fw_cases += 1;
    }
    let mut bf_worst = 0.0f64;
    let mut bf_cases = 0;
    for n in 0..=9 {
        for _ in 0..25 {
            let p_inf = rng.gen_range(0.2..0.9);
            let m = random_matrix(&mut rng, names("v", n), p_inf, 10.0);
            bf_worst = bf_worst.max(m.closure().max_abs_diff(&brute_force_paths(&m).unwrap()));
            bf_cases += 1;
        }
    }
    report(
        5,
        "closure equals Floyd-Warshall and brute force",
        fw_worst <= TOLERANCE && bf_worst <= TOLERANCE,
        format!(
            "{fw_cases} matrices up to 64x64 max diff {fw_worst:e}; {bf_cases} matrices up to 9x9 max diff {bf_worst:e}"
        ),
    );
}

fn eighths<R: Rng>(rng: &mut R) -> Weight {
    match rng.gen_range(0..8) {
        0 => Weight::INFINITY,
        1 => Weight::ZERO,
        _ => Weight::new(rng.gen_range(0..1000) as f64 / 8.0).unwrap(),
    }
}

fn scalar_laws(a: Weight, b: Weight, c: Weight) -> bool {
    a.plus(b).plus(c) == a.plus(b.plus(c))
        && a.plus(b) == b.plus(a)
        && a.plus(a) == a
        && a.plus(Weight::INFINITY) == a
        && a.times(b).times(c) == a.times(b.times(c))
        && a.times(Weight::ZERO) == a
        && Weight::ZERO.times(a) == a
        && a.times(Weight::INFINITY).is_infinite()
        && Weight::INFINITY.times(a).is_infinite()
        && a.times(b.plus(c)) == a.times(b).plus(a.times(c))
        && b.plus(c).times(a) == b.times(a).plus(c.times(a))
}

fn matrix_laws(a: &SquareMatrix, b: &SquareMatrix, c: &SquareMatrix) -> bool {
    let assoc = a
        .times(b)
        .unwrap()
        .times(c)
        .unwrap()
        .approx_eq(&a.times(&b.times(c).unwrap()).unwrap(), TOLERANCE);
    assoc
        && a.plus(b).unwrap() == b.plus(a).unwrap()
        && a.plus(b).unwrap().plus(c).unwrap() == a.plus(&b.plus(c).unwrap()).unwrap()
        && a.plus(a).unwrap() == *a
}

fn closure_laws(m: &SquareMatrix) -> bool {
    let c = m.closure();
    let n = c.len();
    let mut ok = c.entrywise_le(m) && c.closure() == c;
    for i in 0..n {
        ok &= c.get(i, i) == Weight::ZERO;
        for j in 0..n {
            for k in 0..n {
                let via = c.get(i, k).times(c.get(k, j));
                ok &= via.is_infinite() || c.get(i, j).value() <= via.value() + TOLERANCE;
            }
        }
    }
    ok
}

fn random_map<R: Rng>(rng: &mut R, src: Vec<String>, dst: Vec<String>) -> VertexMap {
    let mapping = (0..src.len()).map(|_| rng.gen_range(0..dst.len())).collect();
    VertexMap::new(src, dst, mapping).unwrap()
}

fn relabel_swapped(label: &str) -> String {
    if let Some(rest) = label.strip_prefix("m:") {
        format!("n:{rest}")
    } else if let Some(rest) = label.strip_prefix("n:") {
        format!("m:{rest}")
    } else {
        label.to_owned()
    }
}

#[test]
fn criterion_6_semiring_and_graph_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut results: Vec<(&str, usize, usize)> = Vec::new();
    let mut run = |name: &'static str, cases: usize, check: &mut dyn FnMut(&mut ChaCha8Rng) -> bool| {
        let failed = (0..cases).filter(|_| !check(&mut rng)).count();
        results.push((name, cases, failed));
    };

    run("scalar semiring laws", 2000, &mut |rng| {
        let (a, b, c) = (eighths(rng), eighths(rng), eighths(rng));
        scalar_laws(a, b, c)
    });
    run("matrix laws", 300, &mut |rng| {
        let n = rng.gen_range(0..=8);
        let p = rng.gen_range(0.0..0.8);
        let a = random_matrix(rng, names("v", n), p, 10.0);
        let b = random_matrix(rng, names("v", n), p, 10.0);
        let c = random_matrix(rng, names("v", n), p, 10.0);
        matrix_laws(&a, &b, &c)
    });
    run("closure laws", 300, &mut |rng| {
        let n = rng.gen_range(0..=16);
        let p = rng.gen_range(0.0..0.9);
        closure_laws(&random_matrix(rng, names("v", n), p, 10.0))
    });
    run("pushforward functoriality", 300, &mut |rng| {
        let (a, b, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8), rng.gen_range(1..=8));
        let m = random_matrix(rng, names("s", a), 0.4, 10.0);
        let f = random_map(rng, names("s", a), names("t", b));
        let g = random_map(rng, names("t", b), names("u", c));
        pushforward(&m, &f.then(&g).unwrap()).unwrap()
            == pushforward(&pushforward(&m, &f).unwrap(), &g).unwrap()
    });
    run("pushforward monotonicity", 300, &mut |rng| {
        let (a, b) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let m = random_matrix(rng, names("s", a), 0.4, 10.0);
        let bumped: Vec<Weight> = m
            .entries()
            .iter()
            .map(|w| {
                if rng.gen_bool(0.2) {
                    Weight::INFINITY
                } else {
                    Weight::new(w.value() + rng.gen_range(0.0..5.0)).unwrap()
                }
            })
            .collect();
        let m2 = SquareMatrix::new(m.labels().to_vec(), bumped).unwrap();
        let f = random_map(rng, names("s", a), names("t", b));
        m.entrywise_le(&m2) && pushforward(&m, &f).unwrap().entrywise_le(&pushforward(&m2, &f).unwrap())
    });
    run("pushout symmetry", 300, &mut |rng| {
        let shape = Shape::CYCLE[rng.gen_range(0..6)];
        let d = random_diagram(rng, shape, 8, 4);
        let p = pushout(&d);
        let q = pushout(&d.swapped());
        p.len() == q.len()
            && p.labels().iter().all(|s| {
                p.labels().iter().all(|t| {
                    q.get_by_label(&relabel_swapped(s), &relabel_swapped(t)).ok()
                        == Some(p.get_by_label(s, t).unwrap())
                })
            })
    });
    run("closure commutes with injective pushforward", 300, &mut |rng| {
        let a = rng.gen_range(1..=8);
        let b = a + rng.gen_range(0..=4);
        let m = random_matrix(rng, names("s", a), 0.5, 10.0);
        let mut targets: Vec<usize> = (0..b).collect();
        targets.shuffle(rng);
        targets.truncate(a);
        let f = VertexMap::new(names("s", a), names("t", b), targets.clone()).unwrap();
        let pushed_closure = pushforward(&m.closure(), &f).unwrap();
        let closed_push = pushforward(&m, &f).unwrap().closure();
        (0..b).all(|i| {
            (0..b).all(|j| {
                let off_image_diagonal = i == j && !targets.contains(&i);
                off_image_diagonal
                    || pushed_closure.get(i, j).distance(closed_push.get(i, j)) <= TOLERANCE
            })
        })
    });
    run("graph file round trip", 300, &mut |rng| {
        let n = rng.gen_range(0..=10);
        let m = random_matrix(rng, names("v", n), 0.5, 1e3);
        parse_graph(&write_graph(&m)).unwrap() == m
    });

    let failed: Vec<_> = results.iter().filter(|r| r.2 > 0).collect();
    let detail = results
        .iter()
        .map(|(name, cases, bad)| format!("{name}: {}/{cases}", cases - bad))
        .collect::<Vec<_>>()
        .join("; ");
    report(6, "semiring and graph-io properties", failed.is_empty(), detail);
}

/// One full-size benchmark run shared by criteria 7 and 8.
fn figure_one_bench() -> &'static Vec<BenchRecord> {
    static CELL: OnceLock<Vec<BenchRecord>> = OnceLock::new();
    CELL.get_or_init(|| {
        run_bench(&BenchConfig {
            nodes: 500,
            boundaries: (1..=10).collect(),
            samples: 50,
            seed: 2024,
        })
        .expect("benchmark runs")
    })
}

fn record(k: usize, algorithm: Algorithm) -> &'static BenchRecord {
    figure_one_bench()
        .iter()
        .find(|r| r.boundary_size == k && r.algorithm == algorithm)
        .expect("every boundary size has both rows")
}

#[test]
fn criterion_7_qualitative_figure_one() {
    let comp1 = record(1, Algorithm::Compositional).mean_seconds;
    let dij1 = record(1, Algorithm::Dijkstra).mean_seconds;
    let comp10 = record(10, Algorithm::Compositional).mean_seconds;
    report(
        7,
        "compositional beats Dijkstra at k=1 and grows with k",
        comp1 < dij1 && comp10 > comp1,
        format!("compositional k=1 {comp1:.3e}s, k=10 {comp10:.3e}s; Dijkstra k=1 {dij1:.3e}s"),
    );
}

#[test]
fn criterion_8_precompile_amortization() {
    let comp = record(5, Algorithm::Compositional);
    let dij = record(5, Algorithm::Dijkstra);
    let precompile = comp.precompile_seconds.expect("compositional rows carry precompile time");
    let compositional_total = precompile + 50.0 * comp.mean_seconds;
    let baseline_total = 50.0 * dij.mean_seconds;
    report(
        8,
        "precompile plus 50 queries beats 50 Dijkstra runs at 500 nodes, k=5",
        compositional_total < baseline_total,
        format!(
            "precompile {precompile:.3}s + 50 x {:.3e}s = {compositional_total:.3}s vs 50 x {:.3e}s = {baseline_total:.3}s",
            comp.mean_seconds, dij.mean_seconds
        ),
    );
}
