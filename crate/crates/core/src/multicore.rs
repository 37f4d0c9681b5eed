//! Total r-multi-cores of commodity graphs and brute-force σ, π, τ.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{intercepts_pair, Ball, DistanceMatrix, Graph, Vertex};
use crate::halfint::HalfInt;
use crate::quasiconvex::{greedy_hit_pack, QSet, QSetFamily};

/// Demand pairs `F` over a profile `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommodityGraph {
    pub profile: Vec<Vertex>,
    pub demands: Vec<(Vertex, Vertex)>,
}

impl CommodityGraph {
    pub fn new(n: usize, mut profile: Vec<Vertex>, demands: Vec<(Vertex, Vertex)>) -> Result<Self> {
        profile.sort_unstable();
        profile.dedup();
        if let Some(&v) = profile.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        for &(x, y) in &demands {
            if x == y {
                return Err(Error::InvalidParameter(format!("demand ({x}, {x}) is a loop")));
            }
            for v in [x, y] {
                if profile.binary_search(&v).is_err() {
                    return Err(Error::InvalidParameter(format!("demand endpoint {v} is not in the profile")));
                }
            }
        }
        Ok(CommodityGraph { profile, demands })
    }

    /// Profile taken to be the demand endpoints.
    pub fn from_demands(n: usize, demands: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let profile = demands.iter().flat_map(|&(x, y)| [x, y]).collect();
        Self::new(n, profile, demands)
    }
}

/// One interval `I(x, y)` per demand pair, duplicates kept.
pub fn interval_family(dm: &DistanceMatrix, r: &CommodityGraph) -> Result<QSetFamily> {
    if r.demands.is_empty() {
        return Err(Error::EmptySet("commodity graph has no demands"));
    }
    let sets = r
        .demands
        .iter()
        .map(|&(x, y)| QSet::new(dm, format!("{x}-{y}"), dm.interval(x, y)))
        .collect::<Result<Vec<_>>>()?;
    QSetFamily::new(sets)
}

/// `⌊r - k·δ⌋`, clamped at zero.
pub fn shrink(r: u32, k: i64, delta: HalfInt) -> u32 {
    (HalfInt::from(r) - k * delta).radius()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiCoreResult {
    pub centers: Vec<Vertex>,
    pub radius: u32,
    /// Packing parameter handed to the greedy hitting/packing step.
    pub gap: u32,
    /// Demand indices of the packing found alongside the centres.
    pub packing: Vec<usize>,
    /// Every demand pair is intercepted by one of the balls.
    pub covered: bool,
}

/// Builds centres for balls of radius `r` that jointly intercept every demand.
///
/// Runs [`greedy_hit_pack`] on the interval family with gap `⌊r - 5δ⌋`; its
/// hitting set becomes the centre list. Needs `r ≥ ⌊8δ⌋`.
pub fn multicore_construct(
    g: &Graph,
    dm: &DistanceMatrix,
    comm: &CommodityGraph,
    r: u32,
    delta: HalfInt,
) -> Result<MultiCoreResult> {
    let min = (8 * delta).radius();
    if r < min {
        return Err(Error::RadiusBelowThreshold {
            r,
            min,
            why: "multi-core construction needs r >= 8 delta",
        });
    }
    let family = interval_family(dm, comm)?;
    let gap = shrink(r, 5, delta);
    let hp = greedy_hit_pack(dm, g, &family, gap, delta, 0);
    let covered = comm.demands.iter().all(|&(x, y)| {
        hp.hitting_set
            .iter()
            .any(|&c| intercepts_pair(g, dm, Ball::new(c, r), x, y))
    });
    Ok(MultiCoreResult {
        centers: hp.hitting_set,
        radius: r,
        gap,
        packing: hp.packing,
        covered,
    })
}

/// Smallest number of masks whose union is `full`, or `None` above `k_max`.
fn min_cover(masks: &[u64], full: u64, k_max: usize, budget: u64) -> Result<Option<usize>> {
    if full == 0 {
        return Ok(Some(0));
    }
    let mut uniq: Vec<u64> = masks.iter().copied().filter(|&m| m != 0).collect();
    uniq.sort_unstable();
    uniq.dedup();
    // a mask contained in another never helps
    let kept: Vec<u64> = uniq
        .iter()
        .copied()
        .filter(|&m| !uniq.iter().any(|&o| o != m && o & m == m))
        .collect();
    if kept.iter().fold(0, |a, &m| a | m) != full {
        return Ok(None);
    }
    let mut spent = 0u64;
    for k in 1..=k_max.min(kept.len()) {
        spent = spent.saturating_add(binomial(kept.len() as u64, k as u64));
        if spent > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let found = (0..kept.len())
            .into_par_iter()
            .any(|first| covers_from(&kept, first + 1, k - 1, kept[first], full));
        if found {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn covers_from(masks: &[u64], start: usize, left: usize, acc: u64, full: u64) -> bool {
    if acc == full {
        return true;
    }
    if left == 0 {
        return false;
    }
    (start..masks.len()).any(|i| covers_from(masks, i + 1, left - 1, acc | masks[i], full))
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut c: u64 = 1;
    for i in 0..k.min(n - k) {
        c = c.saturating_mul(n - i) / (i + 1);
    }
    c
}

fn check_width(len: usize) -> Result<u64> {
    match len {
        0 => Err(Error::EmptySet("no sets to cover")),
        1..=64 => Ok(if len == 64 { u64::MAX } else { (1u64 << len) - 1 }),
        _ => Err(Error::InvalidParameter(format!("{len} sets exceed the brute-force limit of 64"))),
    }
}

/// `σ_r(R)` by exhaustive search over centre subsets.
///
/// `Ok(None)` means no cover with at most `k_max` balls exists;
/// [`Error::BudgetExceeded`] is returned once more than `budget` subsets
/// would have to be examined.
pub fn brute_sigma(
    g: &Graph,
    dm: &DistanceMatrix,
    comm: &CommodityGraph,
    r: u32,
    k_max: usize,
    budget: u64,
) -> Result<Option<usize>> {
    let full = check_width(comm.demands.len())?;
    let masks: Vec<u64> = (0..dm.n())
        .into_par_iter()
        .map(|c| {
            comm.demands
                .iter()
                .enumerate()
                .filter(|&(_, &(x, y))| intercepts_pair(g, dm, Ball::new(c, r), x, y))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    min_cover(&masks, full, k_max, budget)
}

/// `τ` of the r-inflation of `sets`: fewest vertices with every set within
/// distance `r` of one of them.
pub fn brute_tau(dm: &DistanceMatrix, sets: &[Vec<Vertex>], r: u32, k_max: usize, budget: u64) -> Result<Option<usize>> {
    let full = check_width(sets.len())?;
    let near: Vec<Vec<u32>> = sets.iter().map(|s| dm.distances_to_set(s)).collect();
    let masks: Vec<u64> = (0..dm.n())
        .map(|v| {
            near.iter()
                .enumerate()
                .filter(|(_, d)| d[v] <= r)
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    min_cover(&masks, full, k_max, budget)
}

/// `π` of the r-inflation of `sets`: the most sets pairwise more than `2r` apart.
pub fn brute_pi(dm: &DistanceMatrix, sets: &[Vec<Vertex>], r: u32) -> Result<usize> {
    let m = sets.len();
    if m > 24 {
        return Err(Error::InvalidParameter(format!("{m} sets exceed the packing brute-force limit of 24")));
    }
    let mut conflict = vec![0u32; m];
    for i in 0..m {
        for j in i + 1..m {
            if dm.set_distance(&sets[i], &sets[j])? <= 2 * r {
                conflict[i] |= 1 << j;
                conflict[j] |= 1 << i;
            }
        }
    }
    Ok((0u32..1 << m)
        .into_par_iter()
        .filter(|&s| (0..m).all(|i| s & (1 << i) == 0 || conflict[i] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// The six quantities of the multi-core inequality chain, in order:
/// `π(I_r) ≤ τ(I_r) ≤ σ_r ≤ τ(I_{r-δ}) ≤ π(I_{r-5δ}) ≤ σ_{r-5δ}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiCoreChain {
    pub r: u32,
    pub values: [usize; 6],
}

impl MultiCoreChain {
    pub fn holds(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

pub fn multicore_chain(
    g: &Graph,
    dm: &DistanceMatrix,
    comm: &CommodityGraph,
    r: u32,
    delta: HalfInt,
    budget: u64,
) -> Result<MultiCoreChain> {
    let sets: Vec<Vec<Vertex>> = comm.demands.iter().map(|&(x, y)| dm.interval(x, y)).collect();
    let k = sets.len();
    let need = |v: Option<usize>| v.ok_or_else(|| Error::InvalidParameter("cover larger than the family".into()));
    let (r1, r5) = (shrink(r, 1, delta), shrink(r, 5, delta));
    let values = [
        brute_pi(dm, &sets, r)?,
        need(brute_tau(dm, &sets, r, k, budget)?)?,
        need(brute_sigma(g, dm, comm, r, k, budget)?)?,
        need(brute_tau(dm, &sets, r1, k, budget)?)?,
        brute_pi(dm, &sets, r5)?,
        need(brute_sigma(g, dm, comm, r5, k, budget)?)?,
    ];
    Ok(MultiCoreChain { r, values })
}
