//! Geodesic counting, traffic load, minimum-radius cores, medians and
//! centroids.

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{intercepts_pair, Ball, DistanceMatrix, Graph, Vertex};

fn count_geodesics(g: &Graph, dm: &DistanceMatrix, s: Vertex, t: Vertex, blocked: Option<&[bool]>) -> BigUint {
    let is_blocked = |v: Vertex| blocked.is_some_and(|b| b[v]);
    if is_blocked(s) || is_blocked(t) {
        return BigUint::zero();
    }
    let mut layer_of = dm.interval(s, t);
    let rs = dm.row(s);
    layer_of.sort_by_key(|&v| rs[v]);
    let mut count = vec![BigUint::zero(); dm.n()];
    count[s] = BigUint::one();
    for &w in &layer_of[1..] {
        if is_blocked(w) {
            continue;
        }
        let mut c = BigUint::zero();
        for &p in g.neighbors(w) {
            if rs[p] + 1 == rs[w] && !count[p].is_zero() {
                c += &count[p];
            }
        }
        count[w] = c;
    }
    std::mem::take(&mut count[t])
}

/// Number of distinct shortest (s, t)-paths.
pub fn geodesic_count(g: &Graph, dm: &DistanceMatrix, s: Vertex, t: Vertex) -> BigUint {
    count_geodesics(g, dm, s, t, None)
}

/// Number of shortest (s, t)-paths that avoid every vertex flagged in `removed`.
pub fn geodesic_count_avoiding(
    g: &Graph,
    dm: &DistanceMatrix,
    s: Vertex,
    t: Vertex,
    removed: &[bool],
) -> BigUint {
    count_geodesics(g, dm, s, t, Some(removed))
}

/// Ordered unit-demand pairs; each pair's traffic is split evenly over its
/// geodesics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrafficDemand {
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl TrafficDemand {
    pub fn new(n: usize, pairs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        for &(s, t) in &pairs {
            for v in [s, t] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if s == t {
                return Err(Error::InvalidParameter(format!("demand pair ({s}, {s}) has equal endpoints")));
            }
        }
        Ok(TrafficDemand { pairs })
    }

    /// Every ordered pair of distinct vertices.
    pub fn uniform(n: usize) -> Self {
        let pairs = (0..n)
            .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
            .collect();
        TrafficDemand { pairs }
    }
}

/// `μ(S)`: summed over demand pairs, the fraction of geodesics meeting `S`.
pub fn traffic_load(g: &Graph, dm: &DistanceMatrix, demand: &TrafficDemand, set: &[Vertex]) -> Result<BigRational> {
    if set.is_empty() {
        return Err(Error::EmptySet("traffic load of an empty set"));
    }
    let mut removed = vec![false; dm.n()];
    for &v in set {
        removed[v] = true;
    }
    let total = demand
        .pairs
        .par_iter()
        .map(|&(s, t)| {
            let all = geodesic_count(g, dm, s, t);
            let avoiding = geodesic_count_avoiding(g, dm, s, t, &removed);
            BigRational::one() - BigRational::new(avoiding.into(), all.into())
        })
        .reduce(BigRational::zero, |a, b| a + b);
    Ok(total)
}

/// Pairs are unordered and drawn from `X` with repetition, so `{x, x}` is a
/// pair; it is intercepted exactly when `x` lies in the ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreResult {
    pub center: Vertex,
    pub radius: u32,
    pub intercepted_pairs: u64,
    /// `⌈α|X|²/2⌉`, the count the search had to reach.
    pub threshold: u64,
    /// Intercepted pairs of distinct vertices.
    pub distinct_intercepted: u64,
    /// `|X|(|X|-1)/2`.
    pub distinct_total: u64,
    /// Whether `distinct_intercepted > α|X|(|X|-1)/2`.
    pub exceeds_strict: bool,
}

impl CoreResult {
    pub fn ball(&self) -> Ball {
        Ball::new(self.center, self.radius)
    }

    /// Share of distinct pairs intercepted.
    pub fn fraction(&self) -> f64 {
        self.distinct_intercepted as f64 / self.distinct_total.max(1) as f64
    }
}

fn normalize_profile(n: usize, profile: &[Vertex]) -> Result<Vec<Vertex>> {
    let mut xs = profile.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if let Some(&v) = xs.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    if xs.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "core profile needs at least 2 distinct vertices, got {}",
            xs.len()
        )));
    }
    Ok(xs)
}

struct Targets {
    threshold: u64,
    distinct_total: u64,
    strict: Ratio<u64>,
}

fn targets(len: usize, alpha: Ratio<u64>) -> Result<Targets> {
    if alpha > Ratio::one() {
        return Err(Error::InvalidParameter(format!("alpha {alpha} exceeds 1")));
    }
    let k = len as u64;
    let distinct_total = k * (k - 1) / 2;
    Ok(Targets {
        threshold: (alpha * Ratio::from_integer(k * k) / 2).ceil().to_integer(),
        distinct_total,
        strict: alpha * Ratio::from_integer(distinct_total),
    })
}

fn build_result(dm: &DistanceMatrix, xs: &[Vertex], center: Vertex, radius: u32, count: u64, t: &Targets) -> CoreResult {
    let inside = xs.iter().filter(|&&x| dm.get(center, x) <= radius).count() as u64;
    let distinct = count - inside;
    CoreResult {
        center,
        radius,
        intercepted_pairs: count,
        threshold: t.threshold,
        distinct_intercepted: distinct,
        distinct_total: t.distinct_total,
        exceeds_strict: Ratio::from_integer(distinct) > t.strict,
    }
}

/// `reach[y]` becomes the radius at which a ball around the centre (whose
/// distance row is `rv`) starts to intercept `(x, y)`. `order` lists all
/// vertices by distance from `x`.
fn fill_reach(g: &Graph, rx: &[u32], rv: &[u32], order: &[Vertex], reach: &mut [u32]) {
    for &w in order {
        let via = g
            .neighbors(w)
            .iter()
            .filter(|&&p| rx[p] + 1 == rx[w])
            .map(|&p| reach[p])
            .max();
        reach[w] = match via {
            Some(m) => m.min(rv[w]),
            None => rv[w],
        };
    }
}

/// For each `y`, the least radius at which `Ball(center, ρ)` intercepts
/// `(x, y)`. Entry `x` is `d(center, x)`.
pub fn interception_radii(g: &Graph, dm: &DistanceMatrix, center: Vertex, x: Vertex) -> Vec<u32> {
    let rx = dm.row(x);
    let mut order: Vec<Vertex> = (0..dm.n()).collect();
    order.sort_by_key(|&w| rx[w]);
    let mut reach = vec![0; dm.n()];
    fill_reach(g, rx, dm.row(center), &order, &mut reach);
    reach
}

fn better(a: &CoreResult, b: &CoreResult) -> bool {
    (a.radius, std::cmp::Reverse(a.intercepted_pairs), a.center)
        < (b.radius, std::cmp::Reverse(b.intercepted_pairs), b.center)
}

/// Smallest ball intercepting at least `⌈α|X|²/2⌉` pairs of `X`.
///
/// For a fixed centre `v`, the radius at which a pair `(x, y)` becomes
/// intercepted is the largest, over `(x, y)`-geodesics, of the path's
/// closest approach to `v`. One pass over the shortest-path DAG from each
/// `x` yields that value for every `y`, so each centre costs `O(|X|·m)`.
/// Ties on radius go to the larger pair count, then the smaller id.
pub fn min_core(g: &Graph, dm: &DistanceMatrix, profile: &[Vertex], alpha: Ratio<u64>) -> Result<CoreResult> {
    let xs = normalize_profile(dm.n(), profile)?;
    let t = targets(xs.len(), alpha)?;
    let n = dm.n();
    let orders: Vec<Vec<Vertex>> = xs
        .iter()
        .map(|&x| {
            let rx = dm.row(x);
            let mut order: Vec<Vertex> = (0..n).collect();
            order.sort_by_key(|&w| rx[w]);
            order
        })
        .collect();
    let diam = dm.diameter() as usize;
    let best = (0..n)
        .into_par_iter()
        .map(|v| {
            let rv = dm.row(v);
            let mut hist = vec![0u64; diam + 1];
            let mut reach = vec![0u32; n];
            for (i, &x) in xs.iter().enumerate() {
                fill_reach(g, dm.row(x), rv, &orders[i], &mut reach);
                for &y in &xs[i..] {
                    hist[reach[y] as usize] += 1;
                }
            }
            let mut acc = 0;
            for (rho, &c) in hist.iter().enumerate() {
                acc += c;
                if acc >= t.threshold {
                    return Some(build_result(dm, &xs, v, rho as u32, acc, &t));
                }
            }
            None
        })
        .flatten()
        .reduce_with(|a, b| if better(&b, &a) { b } else { a });
    best.ok_or_else(|| Error::InvalidParameter("no ball reaches the pair threshold".into()))
}

/// Pairs of `profile` (repetition allowed) intercepted by `ball`, tested
/// one by one.
pub fn count_intercepted(g: &Graph, dm: &DistanceMatrix, ball: Ball, profile: &[Vertex]) -> u64 {
    let mut count = 0;
    for (i, &x) in profile.iter().enumerate() {
        for &y in &profile[i..] {
            if intercepts_pair(g, dm, ball, x, y) {
                count += 1;
            }
        }
    }
    count
}

/// The literal search: every centre, radii increasing from 0, each pair
/// checked by deleting the ball and re-running BFS. Slow; kept as a
/// reference for [`min_core`].
pub fn min_core_by_deletion(
    g: &Graph,
    dm: &DistanceMatrix,
    profile: &[Vertex],
    alpha: Ratio<u64>,
) -> Result<CoreResult> {
    let xs = normalize_profile(dm.n(), profile)?;
    let t = targets(xs.len(), alpha)?;
    let mut best: Option<CoreResult> = None;
    for v in 0..dm.n() {
        for rho in 0..=dm.diameter() {
            let c = count_intercepted(g, dm, Ball::new(v, rho), &xs);
            if c >= t.threshold {
                let cand = build_result(dm, &xs, v, rho, c, &t);
                if best.as_ref().is_none_or(|b| better(&cand, b)) {
                    best = Some(cand);
                }
                break;
            }
        }
    }
    best.ok_or_else(|| Error::InvalidParameter("no ball reaches the pair threshold".into()))
}

fn argmin_sum(dm: &DistanceMatrix, profile: &[Vertex], cost: impl Fn(u64) -> u64) -> Vertex {
    assert!(!profile.is_empty(), "empty profile");
    (0..dm.n())
        .min_by_key(|&v| {
            let row = dm.row(v);
            (profile.iter().map(|&x| cost(row[x] as u64)).sum::<u64>(), v)
        })
        .unwrap()
}

/// Minimiser of `Σ d(v, x)`, smallest id on ties.
pub fn median_vertex(dm: &DistanceMatrix, profile: &[Vertex]) -> Vertex {
    argmin_sum(dm, profile, |d| d)
}

/// Minimiser of `Σ d(v, x)²`, smallest id on ties.
pub fn centroid_vertex(dm: &DistanceMatrix, profile: &[Vertex]) -> Vertex {
    argmin_sum(dm, profile, |d| d * d)
}
