//! 4-point hyperbolicity, interval thinness and eccentricity machinery.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, DistanceMatrix, Graph, Vertex};
use crate::halfint::HalfInt;

/// Above this many vertices [`four_point_delta`] samples instead of scanning.
pub const DEFAULT_EXACT_MAX_N: usize = 400;
const DEFAULT_SAMPLES: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaEstimate {
    pub delta: HalfInt,
    pub witness: [Vertex; 4],
    /// False when the value is a sampled lower bound.
    pub exact: bool,
}

/// Half the gap between the two largest of the three pair sums.
#[inline]
pub fn quadruple_gap(dm: &DistanceMatrix, q: [Vertex; 4]) -> HalfInt {
    let [a, b, c, d] = q;
    let mut s = [
        dm.get(a, b) + dm.get(c, d),
        dm.get(a, c) + dm.get(b, d),
        dm.get(a, d) + dm.get(b, c),
    ];
    s.sort_unstable();
    HalfInt::from_doubled((s[2] - s[1]) as i64)
}

/// Exact 4-point δ for graphs up to [`DEFAULT_EXACT_MAX_N`] vertices.
pub fn four_point_delta(dm: &DistanceMatrix) -> DeltaEstimate {
    four_point_delta_with(dm, DEFAULT_EXACT_MAX_N, DEFAULT_SAMPLES, 0)
}

/// Exhaustive O(n⁴) scan when `n <= exact_max_n`, otherwise the maximum over
/// `samples` random quadruples drawn from a ChaCha8 stream seeded by `seed`.
pub fn four_point_delta_with(
    dm: &DistanceMatrix,
    exact_max_n: usize,
    samples: u64,
    seed: u64,
) -> DeltaEstimate {
    let n = dm.n();
    if n < 4 {
        // quadruples with repeated points always give a zero gap
        return DeltaEstimate {
            delta: HalfInt::ZERO,
            witness: [0; 4],
            exact: true,
        };
    }
    if n <= exact_max_n {
        let (gap, witness) = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut best = (0u32, [a, a, a, a]);
                for b in a + 1..n {
                    let dab = dm.get(a, b);
                    for c in b + 1..n {
                        let (dac, dbc) = (dm.get(a, c), dm.get(b, c));
                        for d in c + 1..n {
                            let s1 = dab + dm.get(c, d);
                            let s2 = dac + dm.get(b, d);
                            let s3 = dm.get(a, d) + dbc;
                            let (hi, mid) = top_two(s1, s2, s3);
                            if hi - mid > best.0 {
                                best = (hi - mid, [a, b, c, d]);
                            }
                        }
                    }
                }
                best
            })
            .reduce(
                || (0, [0; 4]),
                |x, y| if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x },
            );
        return DeltaEstimate {
            delta: HalfInt::from_doubled(gap as i64),
            witness,
            exact: true,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = DeltaEstimate {
        delta: HalfInt::ZERO,
        witness: [0; 4],
        exact: false,
    };
    for _ in 0..samples {
        let q = [0; 4].map(|_| rng.gen_range(0..n));
        let gap = quadruple_gap(dm, q);
        if gap > best.delta {
            best.delta = gap;
            best.witness = q;
        }
    }
    best
}

#[inline]
fn top_two(a: u32, b: u32, c: u32) -> (u32, u32) {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if c >= hi {
        (c, hi)
    } else {
        (hi, lo.max(c))
    }
}

/// Largest `d(x, y)` over pairs `x, y ∈ I(u, v)` with `d(u, x) = d(u, y)`.
pub fn interval_thinness(dm: &DistanceMatrix) -> u32 {
    let n = dm.n();
    (0..n)
        .into_par_iter()
        .map(|u| {
            let ru = dm.row(u);
            let mut worst = 0;
            let mut layers: Vec<Vec<Vertex>> = Vec::new();
            for v in u + 1..n {
                let duv = ru[v];
                let rv = dm.row(v);
                layers.iter_mut().for_each(Vec::clear);
                layers.resize(duv as usize + 1, Vec::new());
                for x in 0..n {
                    if ru[x] + rv[x] == duv {
                        layers[ru[x] as usize].push(x);
                    }
                }
                for layer in &layers {
                    for (i, &x) in layer.iter().enumerate() {
                        let rx = dm.row(x);
                        for &y in &layer[i + 1..] {
                            worst = worst.max(rx[y]);
                        }
                    }
                }
            }
            worst
        })
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EccentricityProfile {
    pub ecc: Vec<u32>,
    pub diameter: u32,
    pub radius: u32,
    pub center: Vec<Vertex>,
}

pub fn eccentricity_profile(dm: &DistanceMatrix) -> EccentricityProfile {
    let ecc: Vec<u32> = (0..dm.n()).map(|x| dm.furthest(x).0).collect();
    let diameter = ecc.iter().copied().max().unwrap_or(0);
    let radius = ecc.iter().copied().min().unwrap_or(0);
    let center = (0..dm.n()).filter(|&v| ecc[v] == radius).collect();
    EccentricityProfile {
        ecc,
        diameter,
        radius,
        center,
    }
}

/// `P(x)`: all vertices at distance `ecc(x)` from `x`.
pub fn furthest_set(dm: &DistanceMatrix, x: Vertex) -> Vec<Vertex> {
    let (ecc, _) = dm.furthest(x);
    let row = dm.row(x);
    (0..dm.n()).filter(|&v| row[v] == ecc).collect()
}

/// Iterated furthest-vertex BFS from vertex 0 until the last two vertices
/// are each furthest from the other.
///
/// Returns the pair `(u, v)` with `v ∈ P(u)` and `u ∈ P(v)`. In a graph whose
/// 4-point constant is at most `delta` the walk visits at most `⌊2δ⌋ + 2`
/// vertices; needing more means `delta` was underestimated.
pub fn mutually_distant_pair(g: &Graph, delta: HalfInt) -> Result<(Vertex, Vertex)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptySet("graph has no vertices"));
    }
    let cap = ((2 * delta).floor().max(0) as usize + 2).min(n.max(2));
    let furthest = |x: Vertex| -> Result<(u32, Vertex)> {
        let row = bfs_distances(g, x)?;
        let mut best = (0, x);
        for (v, &d) in row.iter().enumerate() {
            if d == crate::graph::UNREACHABLE {
                return Err(Error::Disconnected(x, v));
            }
            if d > best.0 {
                best = (d, v);
            }
        }
        Ok(best)
    };
    let (_, mut prev) = furthest(0)?;
    let (mut dist, mut cur) = furthest(prev)?;
    let mut visited = 2;
    loop {
        let (ecc, next) = furthest(cur)?;
        if ecc == dist {
            return Ok((prev, cur));
        }
        visited += 1;
        if visited > cap {
            return Err(Error::IterationCap(cap));
        }
        prev = cur;
        cur = next;
        dist = ecc;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperbolicityReport {
    pub delta: HalfInt,
    pub witness: [Vertex; 4],
    pub delta_exact: bool,
    pub interval_thinness: u32,
    pub diameter: u32,
    pub radius: u32,
    pub center: Vec<Vertex>,
}

pub fn hyperbolicity_report(dm: &DistanceMatrix, exact_max_n: usize, seed: u64) -> HyperbolicityReport {
    let est = four_point_delta_with(dm, exact_max_n, DEFAULT_SAMPLES, seed);
    let prof = eccentricity_profile(dm);
    HyperbolicityReport {
        delta: est.delta,
        witness: est.witness,
        delta_exact: est.exact,
        interval_thinness: interval_thinness(dm),
        diameter: prof.diameter,
        radius: prof.radius,
        center: prof.center,
    }
}
