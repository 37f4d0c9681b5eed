//! Beams, the total beam core and the diameter/radius/centre checks.

use rayon::prelude::*;
use serde::Serialize;

use crate::congestion::interception_radii;
use crate::error::Result;
use crate::graph::{intercepts_pair, Ball, DistanceMatrix, Graph, Vertex};
use crate::halfint::HalfInt;
use crate::hyperbolicity::{eccentricity_profile, mutually_distant_pair};

/// Ordered pairs `(x, y)` with `d(x, y) = ecc(x)`, sorted.
pub fn beam_pairs(dm: &DistanceMatrix) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for x in 0..dm.n() {
        let (ecc, _) = dm.furthest(x);
        if ecc == 0 {
            continue;
        }
        let row = dm.row(x);
        out.extend((0..dm.n()).filter(|&y| row[y] == ecc).map(|y| (x, y)));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BeamCoreResult {
    pub pair: (Vertex, Vertex),
    pub midpoint: Vertex,
    pub radius: u32,
    pub beam_count: usize,
    pub all_beams_intercepted: bool,
    /// Least radius around `midpoint` that intercepts every beam.
    pub required_radius: u32,
}

impl BeamCoreResult {
    pub fn ball(&self) -> Ball {
        Ball::new(self.midpoint, self.radius)
    }
}

/// Ball of radius `⌊2δ⌋` around the middle of a geodesic joining a mutually
/// distant pair, checked against every beam.
///
/// `delta` is a thin-triangle constant. On even-length geodesics the middle
/// vertex is exact; on odd ones the vertex nearer `u` is taken.
pub fn total_beam_core(g: &Graph, dm: &DistanceMatrix, delta: HalfInt) -> Result<BeamCoreResult> {
    let (u, v) = mutually_distant_pair(g, delta)?;
    let path = dm.geodesic(g, u, v);
    let midpoint = path[(path.len() - 1) / 2];
    let radius = (2 * delta).radius();
    let ball = Ball::new(midpoint, radius);
    let beams = beam_pairs(dm);
    let all_beams_intercepted = beams
        .par_iter()
        .all(|&(x, y)| intercepts_pair(g, dm, ball, x, y));
    let mut required_radius = 0;
    let mut last = usize::MAX;
    let mut radii = Vec::new();
    for &(x, y) in &beams {
        if x != last {
            radii = interception_radii(g, dm, midpoint, x);
            last = x;
        }
        required_radius = required_radius.max(radii[y]);
    }
    Ok(BeamCoreResult {
        pair: (u, v),
        midpoint,
        radius,
        beam_count: beams.len(),
        all_beams_intercepted,
        required_radius,
    })
}

/// Largest distance between the intervals of two beams.
pub fn beams_pairwise_close(dm: &DistanceMatrix) -> u32 {
    let mut spans: Vec<(Vertex, Vertex)> = beam_pairs(dm)
        .into_iter()
        .map(|(x, y)| (x.min(y), x.max(y)))
        .collect();
    spans.sort_unstable();
    spans.dedup();
    let intervals: Vec<Vec<Vertex>> = spans.iter().map(|&(x, y)| dm.interval(x, y)).collect();
    (0..intervals.len())
        .into_par_iter()
        .map(|i| {
            let near = dm.distances_to_set(&intervals[i]);
            intervals[i + 1..]
                .iter()
                .map(|other| other.iter().map(|&v| near[v]).min().unwrap())
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// `lhs ≤ rhs`, evaluated exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub lhs: HalfInt,
    pub rhs: HalfInt,
    pub holds: bool,
}

impl Inequality {
    fn new(lhs: HalfInt, rhs: HalfInt) -> Self {
        Inequality {
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub diameter: u32,
    pub radius: u32,
    pub delta4: HalfInt,
    /// `4·δ₄`, the constant the asserted checks use.
    pub delta_thin: HalfInt,
    /// `2·rad - 2δ - 1 ≤ diam`.
    pub diam_rad: Inequality,
    /// `max d(c, m) over central c ≤ 4δ + 1`.
    pub center_close: Inequality,
    /// `diam - 2δ ≤ d(u, v)` for the mutually distant pair.
    pub mutual_distance: Inequality,
    /// The three checks again with `δ₄` in place of `4·δ₄`; reported only.
    pub tight: [Inequality; 3],
}

impl StructuralReport {
    pub fn holds(&self) -> bool {
        self.diam_rad.holds && self.center_close.holds && self.mutual_distance.holds
    }
}

/// Evaluates the diameter/radius, centre and mutual-distance inequalities
/// for a beam core found with 4-point constant `delta4`.
pub fn structural_checks(dm: &DistanceMatrix, core: &BeamCoreResult, delta4: HalfInt) -> StructuralReport {
    let prof = eccentricity_profile(dm);
    let diam = HalfInt::from(prof.diameter);
    let rad = HalfInt::from(prof.radius);
    let one = HalfInt::from_int(1);
    let spread = prof.center.iter().map(|&c| dm.get(c, core.midpoint)).max().unwrap_or(0);
    let pair_dist = HalfInt::from(dm.get(core.pair.0, core.pair.1));
    let checks = |d: HalfInt| {
        [
            Inequality::new(2 * rad - 2 * d - one, diam),
            Inequality::new(HalfInt::from(spread), 4 * d + one),
            Inequality::new(diam - 2 * d, pair_dist),
        ]
    };
    let delta_thin = 4 * delta4;
    let [diam_rad, center_close, mutual_distance] = checks(delta_thin);
    StructuralReport {
        diameter: prof.diameter,
        radius: prof.radius,
        delta4,
        delta_thin,
        diam_rad,
        center_close,
        mutual_distance,
        tight: checks(delta4),
    }
}
