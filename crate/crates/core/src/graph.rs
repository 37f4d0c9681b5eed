//! Graphs, all-pairs distances and the metric primitives everything else is
//! built on: intervals, balls, Gromov products, set distances and the
//! "does this ball cut every shortest path" test.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

pub type Vertex = usize;

/// Marker used by [`bfs_distances`] for vertices in another component.
pub const UNREACHABLE: u32 = u32::MAX;

/// Default cap on the vertex count for which a full distance matrix is built.
pub const DEFAULT_MAX_N: usize = 2000;

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
///
/// Construction rejects loops and repeated edges. Connectivity is not
/// enforced here; [`DistanceMatrix::new`] refuses disconnected inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: usize,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adj,
            edges: edges.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || bfs_from(self, 0, |_| true).iter().all(|&d| d != UNREACHABLE)
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }
}

fn bfs_from(g: &Graph, source: Vertex, allowed: impl Fn(Vertex) -> bool) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.n()];
    if !allowed(source) {
        return dist;
    }
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE && allowed(w) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Hop distances from `source`; unreachable vertices get [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, source: Vertex) -> Result<Vec<u32>> {
    g.check(source)?;
    Ok(bfs_from(g, source, |_| true))
}

/// Dense all-pairs hop distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Result<Self> {
        Self::with_cap(g, DEFAULT_MAX_N)
    }

    /// Builds the matrix with one BFS per source, refusing graphs above `cap`.
    pub fn with_cap(g: &Graph, cap: usize) -> Result<Self> {
        let n = g.n();
        if n > cap {
            return Err(Error::TooLarge { n, cap });
        }
        if n == 0 {
            return Err(Error::EmptySet("graph has no vertices"));
        }
        let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|s| bfs_from(g, s, |_| true)).collect();
        if let Some(v) = rows[0].iter().position(|&d| d == UNREACHABLE) {
            return Err(Error::Disconnected(0, v));
        }
        Ok(DistanceMatrix {
            n,
            d: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// Vertices on at least one shortest `u`-`v` path, ascending.
    pub fn interval(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let duv = self.get(u, v);
        let (ru, rv) = (self.row(u), self.row(v));
        (0..self.n).filter(|&x| ru[x] + rv[x] == duv).collect()
    }

    pub fn ball_members(&self, b: Ball) -> Vec<Vertex> {
        let row = self.row(b.center);
        (0..self.n).filter(|&x| row[x] <= b.radius).collect()
    }

    /// `(y|z)_w = (d(y,w) + d(z,w) - d(y,z)) / 2`.
    pub fn gromov_product(&self, y: Vertex, z: Vertex, w: Vertex) -> HalfInt {
        HalfInt::from_doubled(
            self.get(y, w) as i64 + self.get(z, w) as i64 - self.get(y, z) as i64,
        )
    }

    /// `min d(x, y)` over `x ∈ xs`, `y ∈ ys`.
    pub fn set_distance(&self, xs: &[Vertex], ys: &[Vertex]) -> Result<u32> {
        if xs.is_empty() || ys.is_empty() {
            return Err(Error::EmptySet("set_distance needs two nonempty sets"));
        }
        Ok(xs
            .iter()
            .map(|&x| {
                let row = self.row(x);
                ys.iter().map(|&y| row[y]).min().unwrap()
            })
            .min()
            .unwrap())
    }

    /// For every vertex, its distance to the nearest member of `set`.
    pub fn distances_to_set(&self, set: &[Vertex]) -> Vec<u32> {
        let mut out = vec![UNREACHABLE; self.n];
        for &s in set {
            for (o, &d) in out.iter_mut().zip(self.row(s)) {
                *o = (*o).min(d);
            }
        }
        out
    }

    /// `d(v, set)` for a single vertex.
    pub fn distance_to_set(&self, v: Vertex, set: &[Vertex]) -> u32 {
        let row = self.row(v);
        set.iter().map(|&s| row[s]).min().unwrap_or(UNREACHABLE)
    }

    /// Ecc, smallest-id furthest vertex.
    pub fn furthest(&self, x: Vertex) -> (u32, Vertex) {
        let row = self.row(x);
        let mut best = (0, x);
        for (v, &d) in row.iter().enumerate() {
            if d > best.0 {
                best = (d, v);
            }
        }
        best
    }

    /// Next vertex after `from` on the smallest-id shortest path towards `to`.
    pub fn step_toward(&self, g: &Graph, from: Vertex, to: Vertex) -> Vertex {
        let target = self.get(from, to) - 1;
        *g.neighbors(from)
            .iter()
            .find(|&&w| self.get(w, to) == target)
            .expect("distance matrix inconsistent with graph")
    }

    /// One shortest path from `from` to `to`, built by always stepping to the
    /// smallest-id neighbour that is one hop closer.
    pub fn geodesic(&self, g: &Graph, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            cur = self.step_toward(g, cur, to);
            path.push(cur);
        }
        path
    }
}

/// Closed ball `B(center, radius)`; radii are always integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Ball {
    pub center: Vertex,
    pub radius: u32,
}

impl Ball {
    pub fn new(center: Vertex, radius: u32) -> Self {
        Ball { center, radius }
    }

    pub fn contains(&self, dm: &DistanceMatrix, v: Vertex) -> bool {
        dm.get(self.center, v) <= self.radius
    }
}

/// True iff every shortest `x`-`y` path meets `b`.
///
/// Deletes the ball and checks whether `y` is still reachable from `x` within
/// `d(x, y)` steps. If `x` or `y` lies in the ball the pair counts as
/// intercepted.
pub fn intercepts_pair(g: &Graph, dm: &DistanceMatrix, b: Ball, x: Vertex, y: Vertex) -> bool {
    if b.contains(dm, x) || b.contains(dm, y) {
        return true;
    }
    if x == y {
        return false;
    }
    let limit = dm.get(x, y);
    let brow = dm.row(b.center);
    let mut dist = vec![UNREACHABLE; g.n()];
    dist[x] = 0;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        if dist[u] >= limit {
            break;
        }
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE && brow[w] > b.radius {
                if w == y {
                    return false;
                }
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    true
}

/// BFS in `g` with the vertices of `removed` deleted.
pub fn bfs_avoiding(g: &Graph, source: Vertex, removed: &[bool]) -> Vec<u32> {
    bfs_from(g, source, |v| !removed[v])
}
