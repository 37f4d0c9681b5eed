#![allow(dead_code)]

use hypcongest::generate::{generate, GeneratorSpec};
use hypcongest::{Ball, DistanceMatrix, Graph, Vertex};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITE_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Cycle,
    Grid,
    Tree,
    Gnp,
}

pub struct Case {
    pub name: String,
    pub kind: Kind,
    pub graph: Graph,
    pub dm: DistanceMatrix,
}

impl Case {
    fn new(name: String, kind: Kind, spec: GeneratorSpec) -> Case {
        let graph = generate(&spec).unwrap();
        let dm = DistanceMatrix::new(&graph).unwrap();
        Case { name, kind, graph, dm }
    }
}

/// 200 graphs: cycles C4..C20, grids up to 6x6, random trees and connected
/// G(n, p) with n ≤ 60.
pub fn suite() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let mut out = Vec::with_capacity(200);
    for n in 4..=20 {
        out.push(Case::new(format!("C{n}"), Kind::Cycle, GeneratorSpec::Cycle { n }));
    }
    for rows in 2..=6 {
        for cols in rows..=6 {
            out.push(Case::new(format!("grid{rows}x{cols}"), Kind::Grid, GeneratorSpec::Grid { rows, cols }));
        }
    }
    for i in 0..60 {
        let n = rng.gen_range(3..=60);
        let seed = rng.gen();
        out.push(Case::new(format!("tree{i}_n{n}"), Kind::Tree, GeneratorSpec::Tree { n, seed }));
    }
    let mut i = 0;
    while out.len() < 200 {
        let n: usize = rng.gen_range(6..=60);
        let c: f64 = rng.gen_range(1.2..2.5);
        let p = (c * (n as f64).ln() / n as f64).min(1.0);
        let seed = rng.gen();
        out.push(Case::new(format!("gnp{i}_n{n}"), Kind::Gnp, GeneratorSpec::GnpConnected { n, p, seed }));
        i += 1;
    }
    out
}

pub fn small_suite() -> Vec<Case> {
    suite().into_iter().filter(|c| c.graph.n() <= 12).collect()
}

/// Shortest paths found by listing every simple path, with no use of BFS.
///
/// From each source, simple paths are enumerated with a depth bound that
/// grows until every vertex has been reached; at that depth every geodesic
/// has been listed. Paths are stored as vertex bitmasks.
pub struct PathOracle {
    n: usize,
    dist: Vec<Vec<u32>>,
    paths: Vec<Vec<Vec<u64>>>,
}

impl PathOracle {
    pub fn new(g: &Graph) -> PathOracle {
        let n = g.n();
        assert!(n <= 64);
        let mut dist = Vec::with_capacity(n);
        let mut paths = Vec::with_capacity(n);
        for x in 0..n {
            let mut depth = 0;
            loop {
                let mut best = vec![u32::MAX; n];
                let mut found: Vec<Vec<u64>> = vec![Vec::new(); n];
                let mut stack = vec![x];
                walk(g, &mut stack, 1u64 << x, depth, &mut best, &mut found);
                if best.iter().all(|&d| d != u32::MAX) {
                    dist.push(best);
                    paths.push(found);
                    break;
                }
                depth += 1;
            }
        }
        PathOracle { n, dist, paths }
    }

    pub fn dist(&self, x: Vertex, y: Vertex) -> u32 {
        self.dist[x][y]
    }

    pub fn count(&self, x: Vertex, y: Vertex) -> BigUint {
        BigUint::from(self.paths[x][y].len())
    }

    pub fn interval(&self, x: Vertex, y: Vertex) -> Vec<Vertex> {
        let mask = self.paths[x][y].iter().fold(0u64, |a, &m| a | m);
        (0..self.n).filter(|&v| mask >> v & 1 == 1).collect()
    }

    /// Every geodesic between `x` and `y` passes through the ball.
    pub fn intercepts(&self, b: Ball, x: Vertex, y: Vertex) -> bool {
        let ball = (0..self.n)
            .filter(|&v| self.dist[b.center][v] <= b.radius)
            .fold(0u64, |a, v| a | 1 << v);
        self.paths[x][y].iter().all(|&m| m & ball != 0)
    }

    pub fn geodesics(&self, x: Vertex, y: Vertex) -> &[u64] {
        &self.paths[x][y]
    }
}

fn walk(g: &Graph, stack: &mut Vec<Vertex>, used: u64, left: u32, best: &mut [u32], found: &mut [Vec<u64>]) {
    let here = *stack.last().unwrap();
    let len = stack.len() as u32 - 1;
    if len < best[here] {
        best[here] = len;
        found[here].clear();
    }
    if len == best[here] {
        found[here].push(used);
    }
    if left == 0 {
        return;
    }
    for &w in g.neighbors(here) {
        if used >> w & 1 == 0 {
            stack.push(w);
            walk(g, stack, used | 1 << w, left - 1, best, found);
            stack.pop();
        }
    }
}
