//! Baseline shortest-path algorithms, kept independent of the min-plus
//! matrix code so they can check it.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::semiring::{SquareMatrix, Weight};

/// Largest graph [`brute_force_paths`] accepts.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 9;

fn rebuild(m: &SquareMatrix, dist: Vec<f64>) -> SquareMatrix {
    let entries = dist
        .into_iter()
        .map(|d| Weight::new(d).expect("path sums of valid weights are valid"))
        .collect();
    SquareMatrix::new(m.labels().to_vec(), entries).expect("same shape as the input")
}

/// Classic Floyd–Warshall over raw costs.
pub fn floyd_warshall(m: &SquareMatrix) -> SquareMatrix {
    let n = m.len();
    let mut dist: Vec<f64> = m.entries().iter().map(|w| w.value()).collect();
    for i in 0..n {
        dist[i * n + i] = 0.0;
    }
    for k in 0..n {
        for i in 0..n {
            let d_ik = dist[i * n + k];
            if d_ik == f64::INFINITY {
                continue;
            }
            for j in 0..n {
                let through = d_ik + dist[k * n + j];
                if through < dist[i * n + j] {
                    dist[i * n + j] = through;
                }
            }
        }
    }
    rebuild(m, dist)
}

/// Single-pair distance with a binary-heap Dijkstra; stops once `target`
/// is settled.
pub fn dijkstra(m: &SquareMatrix, source: &str, target: &str) -> Result<Weight> {
    let s = m
        .index_of(source)
        .ok_or_else(|| Error::UnknownVertex(source.to_owned()))?;
    let t = m
        .index_of(target)
        .ok_or_else(|| Error::UnknownVertex(target.to_owned()))?;
    Ok(dijkstra_by_index(m, s, t))
}

pub(crate) fn dijkstra_by_index(m: &SquareMatrix, s: usize, t: usize) -> Weight {
    let n = m.len();
    let mut dist = vec![Weight::INFINITY; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s] = Weight::ZERO;
    heap.push(Reverse((Weight::ZERO, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if settled[u] {
            continue;
        }
        if u == t {
            return d;
        }
        settled[u] = true;
        for (v, &w) in m.row(u).iter().enumerate() {
            if w.is_infinite() || settled[v] {
                continue;
            }
            let candidate = d.times(w);
            if candidate < dist[v] {
                dist[v] = candidate;
                heap.push(Reverse((candidate, v)));
            }
        }
    }
    Weight::INFINITY
}

/// Minimum over every simple path, by exhaustive search. Only for graphs
/// of at most [`BRUTE_FORCE_MAX_VERTICES`] vertices.
pub fn brute_force_paths(m: &SquareMatrix) -> Result<SquareMatrix> {
    let n = m.len();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::Input(format!(
            "brute force is limited to {BRUTE_FORCE_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let cost: Vec<f64> = m.entries().iter().map(|w| w.value()).collect();
    let mut best = vec![f64::INFINITY; n * n];
    let mut on_path = vec![false; n];
    for s in 0..n {
        on_path[s] = true;
        walk(&cost, n, s, s, 0.0, &mut on_path, &mut best);
        on_path[s] = false;
    }
    Ok(rebuild(m, best))
}

fn walk(
    cost: &[f64],
    n: usize,
    source: usize,
    at: usize,
    so_far: f64,
    on_path: &mut [bool],
    best: &mut [f64],
) {
    if so_far < best[source * n + at] {
        best[source * n + at] = so_far;
    }
    for next in 0..n {
        let c = cost[at * n + next];
        if on_path[next] || c == f64::INFINITY {
            continue;
        }
        on_path[next] = true;
        walk(cost, n, source, next, so_far + c, on_path, best);
        on_path[next] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const INF: f64 = f64::INFINITY;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> SquareMatrix {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let entries = (0..n * n)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    Weight::INFINITY
                } else {
                    Weight::new(rng.gen_range(1..=9) as f64).unwrap()
                }
            })
            .collect();
        SquareMatrix::new(labels, entries).unwrap()
    }

    #[test]
    fn empty_graph_gives_identity() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let m = SquareMatrix::infinite(labels.clone()).unwrap();
        let id = SquareMatrix::identity(labels).unwrap();
        assert_eq!(floyd_warshall(&m), id);
        assert_eq!(brute_force_paths(&m).unwrap(), id);
    }

    #[test]
    fn single_edge() {
        let m = SquareMatrix::from_rows(&["a", "b"], &[vec![INF, 4.0], vec![INF, INF]]).unwrap();
        let expected =
            SquareMatrix::from_rows(&["a", "b"], &[vec![0.0, 4.0], vec![INF, 0.0]]).unwrap();
        assert_eq!(floyd_warshall(&m), expected);
        assert_eq!(dijkstra(&m, "a", "b").unwrap().value(), 4.0);
    }

    #[test]
    fn two_hops_beat_direct_edge() {
        let m = SquareMatrix::from_rows(
            &["a", "b", "c"],
            &[vec![INF, 1.0, 3.0], vec![INF, INF, 1.0], vec![INF, INF, INF]],
        )
        .unwrap();
        assert_eq!(brute_force_paths(&m).unwrap().get_by_label("a", "c").unwrap().value(), 2.0);
        assert_eq!(floyd_warshall(&m).get_by_label("a", "c").unwrap().value(), 2.0);
        assert_eq!(dijkstra(&m, "a", "c").unwrap().value(), 2.0);
    }

    #[test]
    fn dijkstra_edge_cases() {
        let m = SquareMatrix::from_rows(&["a", "b"], &[vec![INF, INF], vec![1.0, INF]]).unwrap();
        assert_eq!(dijkstra(&m, "a", "a").unwrap(), Weight::ZERO);
        assert!(dijkstra(&m, "a", "b").unwrap().is_infinite());
        assert!(matches!(dijkstra(&m, "a", "q"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn brute_force_size_limit() {
        let labels: Vec<String> = (0..10).map(|i| format!("v{i}")).collect();
        let m = SquareMatrix::infinite(labels).unwrap();
        assert!(matches!(brute_force_paths(&m), Err(Error::Input(_))));
    }

    #[test]
    fn oracles_agree_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=8);
            let m = random_matrix(&mut rng, n);
            let fw = floyd_warshall(&m);
            assert!(fw.approx_eq(&brute_force_paths(&m).unwrap(), 1e-9));
            for s in 0..n {
                for t in 0..n {
                    assert!(dijkstra_by_index(&m, s, t).distance(fw.get(s, t)) <= 1e-9);
                }
            }
        }
    }
}
