//! Quasiconvex vertex sets: measuring ε, neighbourhoods, the projection step,
//! the Helly centre of a 2r-close family and the greedy primal-dual
//! hitting/packing construction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Ball, DistanceMatrix, Graph, Vertex};
use crate::halfint::HalfInt;

/// A nonempty vertex set together with its measured quasiconvexity defect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSet {
    pub name: String,
    pub members: Vec<Vertex>,
    pub epsilon: u32,
}

impl QSet {
    /// Sorts and dedups `members`, then measures ε.
    pub fn new(dm: &DistanceMatrix, name: impl Into<String>, mut members: Vec<Vertex>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&v) = members.iter().find(|&&v| v >= dm.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: dm.n() });
        }
        let epsilon = measure_epsilon(dm, &members)?;
        Ok(QSet {
            name: name.into(),
            members,
            epsilon,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSetFamily {
    pub sets: Vec<QSet>,
    pub family_epsilon: u32,
}

impl QSetFamily {
    pub fn new(sets: Vec<QSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::EmptySet("family has no sets"));
        }
        let family_epsilon = sets.iter().map(|s| s.epsilon).max().unwrap();
        Ok(QSetFamily {
            sets,
            family_epsilon,
        })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Least ε such that every interval between two members of `set` stays
/// within distance ε of `set`.
pub fn measure_epsilon(dm: &DistanceMatrix, set: &[Vertex]) -> Result<u32> {
    if set.is_empty() {
        return Err(Error::EmptySet("quasiconvexity of an empty set"));
    }
    let to_set = dm.distances_to_set(set);
    let mut eps = 0;
    for (i, &x) in set.iter().enumerate() {
        let rx = dm.row(x);
        for &y in &set[i + 1..] {
            let (ry, dxy) = (dm.row(y), rx[y]);
            for z in 0..dm.n() {
                if rx[z] + ry[z] == dxy {
                    eps = eps.max(to_set[z]);
                }
            }
        }
    }
    Ok(eps)
}

/// `N_r(S)`, the union of radius-`r` balls around `S`.
pub fn neighborhood(dm: &DistanceMatrix, set: &[Vertex], r: u32) -> Vec<Vertex> {
    let to_set = dm.distances_to_set(set);
    (0..dm.n()).filter(|&v| to_set[v] <= r).collect()
}

/// `max{2ε + 5δ, r + ε + 3δ}`.
pub fn r_star(r: u32, epsilon: u32, delta: HalfInt) -> HalfInt {
    let eps = HalfInt::from(epsilon);
    (2 * eps + 5 * delta).max(HalfInt::from(r) + eps + 3 * delta)
}

/// `max{r + 3δ, 5δ}`, the radius that suffices when the sets are geodesics.
pub fn geodesic_r_star(r: u32, delta: HalfInt) -> HalfInt {
    (HalfInt::from(r) + 3 * delta).max(5 * delta)
}

/// Takes the member `x` of `set` closest to `z` (smallest id on ties) and
/// walks `min(r, d(x, z))` steps from `x` towards `z`.
pub fn project_toward(dm: &DistanceMatrix, g: &Graph, z: Vertex, set: &[Vertex], r: u32) -> Vertex {
    let zrow = dm.row(z);
    let x = *set
        .iter()
        .min_by_key(|&&v| (zrow[v], v))
        .expect("projection onto an empty set");
    let steps = r.min(zrow[x]);
    let mut cur = x;
    for _ in 0..steps {
        cur = dm.step_toward(g, cur, z);
    }
    cur
}

fn farthest_from(dm: &DistanceMatrix, z: Vertex, family: &QSetFamily, live: &[usize]) -> usize {
    *live
        .iter()
        .max_by_key(|&&i| (dm.distance_to_set(z, &family.sets[i].members), std::cmp::Reverse(i)))
        .unwrap()
}

/// A ball meeting every member of a pairwise 2r-close family.
///
/// With base vertex `z`, the member farthest from `z` is projected towards
/// `z` by `r` steps; the ball of radius `⌊r*⌋` around that point is
/// guaranteed to hit all members when the graph's triangles are δ-thin.
pub fn helly_center(
    dm: &DistanceMatrix,
    g: &Graph,
    family: &QSetFamily,
    r: u32,
    delta: HalfInt,
    z: Vertex,
) -> Result<Ball> {
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let d = dm.set_distance(&family.sets[i].members, &family.sets[j].members)?;
            if d > 2 * r {
                return Err(Error::NotClose(i, j, d, 2 * r));
            }
        }
    }
    let live: Vec<usize> = (0..family.len()).collect();
    let first = farthest_from(dm, z, family, &live);
    let c = project_toward(dm, g, z, &family.sets[first].members, r);
    Ok(Ball::new(c, r_star(r, family.family_epsilon, delta).radius()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HitPackResult {
    pub hitting_set: Vec<Vertex>,
    /// Indices into the family, in selection order.
    pub packing: Vec<usize>,
    pub hit_radius: u32,
    pub pack_gap: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HitPackCertificate {
    pub sizes_equal: bool,
    /// Every member lies within `hit_radius` of the hitting set.
    pub hits_all: bool,
    /// Packing members are pairwise more than `2 * pack_gap` apart.
    pub packing_apart: bool,
}

impl HitPackCertificate {
    pub fn ok(&self) -> bool {
        self.sizes_equal && self.hits_all && self.packing_apart
    }
}

impl HitPackResult {
    pub fn verify(&self, dm: &DistanceMatrix, family: &QSetFamily) -> HitPackCertificate {
        let hits_all = family.sets.iter().all(|q| {
            self.hitting_set
                .iter()
                .any(|&t| dm.distance_to_set(t, &q.members) <= self.hit_radius)
        });
        let packing_apart = self.packing.iter().enumerate().all(|(a, &i)| {
            self.packing[a + 1..].iter().all(|&j| {
                dm.set_distance(&family.sets[i].members, &family.sets[j].members).unwrap()
                    > 2 * self.pack_gap
            })
        });
        HitPackCertificate {
            sizes_equal: self.hitting_set.len() == self.packing.len(),
            hits_all,
            packing_apart,
        }
    }
}

/// Greedy primal-dual construction of an `r*`-hitting set `T` and an
/// `r`-packing `P` with `|T| = |P|`.
///
/// Repeatedly takes the remaining member `Q` farthest from `z`, puts the
/// projection of `z` onto `Q` (at depth `r`) into `T` and `Q` into `P`, then
/// discards `Q` together with every remaining member that is 2r-close to it.
pub fn greedy_hit_pack(
    dm: &DistanceMatrix,
    g: &Graph,
    family: &QSetFamily,
    r: u32,
    delta: HalfInt,
    z: Vertex,
) -> HitPackResult {
    let mut live: Vec<usize> = (0..family.len()).collect();
    let mut hitting_set = Vec::new();
    let mut packing = Vec::new();
    while !live.is_empty() {
        let pick = farthest_from(dm, z, family, &live);
        let members = &family.sets[pick].members;
        hitting_set.push(project_toward(dm, g, z, members, r));
        packing.push(pick);
        let to_pick = dm.distances_to_set(members);
        live.retain(|&i| {
            i != pick && family.sets[i].members.iter().all(|&v| to_pick[v] > 2 * r)
        });
    }
    HitPackResult {
        hitting_set,
        packing,
        hit_radius: r_star(r, family.family_epsilon, delta).radius(),
        pack_gap: r,
    }
}

/// Looks for a vertex in every ball inflated by `⌈δ⌉`.
///
/// The input balls must pairwise intersect. Returns the smallest-id vertex
/// of the inflated intersection, or `None` if it is empty.
pub fn helly_balls_check(dm: &DistanceMatrix, balls: &[Ball], delta: HalfInt) -> Result<Option<Vertex>> {
    for (i, a) in balls.iter().enumerate() {
        for (j, b) in balls.iter().enumerate().skip(i + 1) {
            if dm.get(a.center, b.center) > a.radius + b.radius {
                return Err(Error::BallsDisjoint(i, j));
            }
        }
    }
    let grow = delta.ceil().max(0) as u32;
    Ok((0..dm.n()).find(|&v| balls.iter().all(|b| dm.get(b.center, v) <= b.radius + grow)))
}

/// Endpoints `(u, v)` with `I(u, v) = set`, if the set is an interval.
pub fn interval_endpoints(dm: &DistanceMatrix, set: &[Vertex]) -> Option<(Vertex, Vertex)> {
    let diam = set
        .iter()
        .flat_map(|&x| set.iter().map(move |&y| (x, y)))
        .map(|(x, y)| dm.get(x, y))
        .max()?;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i..] {
            if dm.get(u, v) == diam && dm.interval(u, v) == set {
                return Some((u, v));
            }
        }
    }
    None
}
