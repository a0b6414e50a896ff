#![allow(dead_code)]

use pathcompose::{GluingDiagram, SquareMatrix, VertexMap, Weight};
use rand::seq::SliceRandom;
use rand::Rng;

/// Uniform `[0, max)` weights, `+∞` with probability `p_inf`.
pub fn random_matrix<R: Rng>(rng: &mut R, labels: Vec<String>, p_inf: f64, max: f64) -> SquareMatrix {
    let n = labels.len();
    let entries = (0..n * n)
        .map(|_| {
            if rng.gen_bool(p_inf) {
                Weight::INFINITY
            } else {
                Weight::new(rng.gen_range(0.0..max)).unwrap()
            }
        })
        .collect();
    SquareMatrix::new(labels, entries).unwrap()
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    EmptyBoundary,
    SingleBoundary,
    NonInjective,
    SingleVertexComponent,
    AllInfinite,
    Random,
}

impl Shape {
    pub const CYCLE: [Shape; 6] = [
        Shape::EmptyBoundary,
        Shape::SingleBoundary,
        Shape::NonInjective,
        Shape::SingleVertexComponent,
        Shape::AllInfinite,
        Shape::Random,
    ];
}

/// A random gluing: components of at most `max_size` vertices, at most
/// `max_boundary` declared boundary names, weights uniform on `[0, 10)`
/// with `+∞` at probability one half.
pub fn random_diagram<R: Rng>(rng: &mut R, shape: Shape, max_size: usize, max_boundary: usize) -> GluingDiagram {
    let mut m_size = rng.gen_range(1..=max_size);
    let mut n_size = rng.gen_range(1..=max_size);
    if shape == Shape::SingleVertexComponent {
        if rng.gen_bool(0.5) {
            m_size = 1;
        } else {
            n_size = 1;
        }
    }
    let boundary_len = match shape {
        Shape::EmptyBoundary => 0,
        Shape::SingleBoundary => 1,
        Shape::NonInjective => rng.gen_range(2..=max_boundary.max(2)),
        _ => rng.gen_range(0..=max_boundary),
    };
    let p_inf = if shape == Shape::AllInfinite { 1.0 } else { 0.5 };
    let m = random_matrix(rng, names("a", m_size), p_inf, 10.0);
    let n = random_matrix(rng, names("b", n_size), p_inf, 10.0);

    let leg = |rng: &mut R, size: usize| -> Vec<usize> {
        let injective = shape != Shape::NonInjective && boundary_len <= size && rng.gen_bool(0.6);
        if injective {
            let mut all: Vec<usize> = (0..size).collect();
            all.shuffle(rng);
            all.truncate(boundary_len);
            all
        } else {
            let mut v: Vec<usize> = (0..boundary_len).map(|_| rng.gen_range(0..size)).collect();
            if shape == Shape::NonInjective && boundary_len >= 2 {
                v[1] = v[0];
            }
            v
        }
    };
    let boundary = names("x", boundary_len);
    let into_m = VertexMap::new(boundary.clone(), m.labels().to_vec(), leg(rng, m_size)).unwrap();
    let into_n = VertexMap::new(boundary, n.labels().to_vec(), leg(rng, n_size)).unwrap();
    GluingDiagram::new(m, n, into_m, into_n).unwrap()
}
