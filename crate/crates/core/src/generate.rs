//! Seeded synthetic graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Recorded in reports so runs can be reproduced.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64 (rand_chacha 0.3)";

const GNP_RETRIES: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// Uniform random labelled tree, from a random Prüfer sequence.
    Tree { n: usize, seed: u64 },
    Path { n: usize },
    Cycle { n: usize },
    Grid { rows: usize, cols: usize },
    /// Path `0..p` with `p = ⌊3√n⌋` plus `n - p` leaves hung on vertex 0.
    StarPathTn { n: usize },
    /// `G(n, p)` redrawn until connected.
    GnpConnected { n: usize, p: f64, seed: u64 },
}

fn bad(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match *spec {
        GeneratorSpec::Tree { n, seed } => {
            need(n, 2, "tree")?;
            Graph::from_edges(n, &prufer_tree(n, &mut ChaCha8Rng::seed_from_u64(seed)))
        }
        GeneratorSpec::Path { n } => {
            need(n, 2, "path")?;
            Graph::from_edges(n, &(1..n).map(|v| (v - 1, v)).collect::<Vec<_>>())
        }
        GeneratorSpec::Cycle { n } => {
            need(n, 3, "cycle")?;
            Graph::from_edges(n, &(0..n).map(|v| (v, (v + 1) % n)).collect::<Vec<_>>())
        }
        GeneratorSpec::Grid { rows, cols } => {
            if rows == 0 || cols == 0 || rows * cols < 2 {
                return Err(bad(format!("grid {rows}x{cols} needs at least two vertices")));
            }
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < rows {
                        edges.push((v, v + cols));
                    }
                }
            }
            Graph::from_edges(rows * cols, &edges)
        }
        GeneratorSpec::StarPathTn { n } => {
            need(n, 2, "star-path")?;
            let p = tn_path_len(n);
            let mut edges: Vec<(Vertex, Vertex)> = (1..p).map(|v| (v - 1, v)).collect();
            edges.extend((p..n).map(|leaf| (0, leaf)));
            Graph::from_edges(n, &edges)
        }
        GeneratorSpec::GnpConnected { n, p, seed } => {
            need(n, 2, "gnp")?;
            if !(p > 0.0 && p <= 1.0) {
                return Err(bad(format!("edge probability {p} outside (0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..GNP_RETRIES {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(p) {
                            edges.push((u, v));
                        }
                    }
                }
                let g = Graph::from_edges(n, &edges)?;
                if g.is_connected() {
                    return Ok(g);
                }
            }
            Err(bad(format!("G({n}, {p}) stayed disconnected after {GNP_RETRIES} draws")))
        }
    }
}

/// Number of path vertices in the star-path graph on `n` vertices, `⌊3√n⌋`
/// capped at `n`.
pub fn tn_path_len(n: usize) -> usize {
    (9 * n).isqrt().min(n)
}

fn need(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(bad(format!("{what} needs n >= {min}, got {n}")));
    }
    Ok(())
}

fn prufer_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut leaves: std::collections::BTreeSet<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = leaves.pop_first().unwrap();
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let last: Vec<Vertex> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    edges
}
