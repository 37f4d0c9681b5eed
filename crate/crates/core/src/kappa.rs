//! Hitting sets and packings for families whose members are unions of at
//! most κ quasiconvex sets, via the fractional LPs and their roundings.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, Vertex};
use crate::halfint::HalfInt;
use crate::lp::{rat, solve_lp, LPInstance, Relation, Sense};
use crate::quasiconvex::{greedy_hit_pack, QSet, QSetFamily};

/// A member of a κ-family: up to κ quasiconvex parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaQSet {
    pub name: String,
    pub parts: Vec<QSet>,
}

impl KappaQSet {
    pub fn new(name: impl Into<String>, parts: Vec<QSet>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptySet("member has no parts"));
        }
        Ok(KappaQSet {
            name: name.into(),
            parts,
        })
    }

    /// Union of all parts, sorted.
    pub fn union(&self) -> Vec<Vertex> {
        let mut u: Vec<Vertex> = self.parts.iter().flat_map(|p| p.members.iter().copied()).collect();
        u.sort_unstable();
        u.dedup();
        u
    }

    pub fn epsilon(&self) -> u32 {
        self.parts.iter().map(|p| p.epsilon).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaFamily {
    pub sets: Vec<KappaQSet>,
    /// Largest number of parts in any member.
    pub kappa: usize,
    /// Largest measured ε over all parts.
    pub epsilon: u32,
}

impl KappaFamily {
    pub fn new(sets: Vec<KappaQSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::EmptySet("family has no members"));
        }
        let kappa = sets.iter().map(|s| s.parts.len()).max().unwrap();
        let epsilon = sets.iter().map(KappaQSet::epsilon).max().unwrap();
        Ok(KappaFamily { sets, kappa, epsilon })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn reach(&self, dm: &DistanceMatrix) -> Vec<Vec<u32>> {
        self.sets.par_iter().map(|s| dm.distances_to_set(&s.union())).collect()
    }
}

/// `Γ[v]`: members within `r` of `v`. `Γ[i]`: members sharing such a vertex
/// with member `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaIndex {
    pub r: u32,
    pub gamma_v: Vec<Vec<usize>>,
    pub gamma_i: Vec<Vec<usize>>,
}

impl GammaIndex {
    pub fn is_symmetric(&self) -> bool {
        self.gamma_i.iter().enumerate().all(|(i, gi)| {
            gi.binary_search(&i).is_ok() && gi.iter().all(|&j| self.gamma_i[j].binary_search(&i).is_ok())
        })
    }
}

pub fn gamma_sets(dm: &DistanceMatrix, family: &KappaFamily, r: u32) -> GammaIndex {
    let reach = family.reach(dm);
    let m = family.len();
    let gamma_v: Vec<Vec<usize>> = (0..dm.n())
        .map(|v| (0..m).filter(|&i| reach[i][v] <= r).collect())
        .collect();
    let gamma_i = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut seen = vec![false; m];
            for v in (0..dm.n()).filter(|&v| reach[i][v] <= r) {
                for &j in &gamma_v[v] {
                    seen[j] = true;
                }
            }
            (0..m).filter(|&j| seen[j]).collect()
        })
        .collect();
    GammaIndex { r, gamma_v, gamma_i }
}

/// `max Σ x_i` subject to `Σ_{i ∈ Γ[v]} x_i ≤ 1` for every vertex.
pub fn build_packing_lp(gamma: &GammaIndex, m: usize) -> LPInstance {
    let mut lp = LPInstance::new(Sense::Maximize, vec![rat(1); m]);
    for gv in gamma.gamma_v.iter().filter(|g| !g.is_empty()) {
        lp.add_row(gv.iter().map(|&i| (i, rat(1))), Relation::Le, rat(1));
    }
    lp
}

/// `min Σ y_v` subject to `Σ_{v ∈ N_r(member i)} y_v ≥ 1` for every member.
pub fn build_hitting_lp(dm: &DistanceMatrix, family: &KappaFamily, r: u32) -> LPInstance {
    let mut lp = LPInstance::new(Sense::Minimize, vec![rat(1); dm.n()]);
    for reach in family.reach(dm) {
        lp.add_row(
            (0..dm.n()).filter(|&v| reach[v] <= r).map(|v| (v, rat(1))),
            Relation::Ge,
            rat(1),
        );
    }
    lp
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackingRounding {
    /// Selected members, in selection order.
    pub packing: Vec<usize>,
    /// Largest `Σ_{j ∈ Γ[i]} x_j` met at a selection; at most `2κ`.
    pub max_mass: BigRational,
}

/// Rounds a fractional packing to an integral one.
///
/// Repeatedly selects the remaining member `i` with the least remaining mass
/// `Σ_{j ∈ Γ[i]} x_j` (smallest index on ties), then removes all of `Γ[i]`.
/// Fails with [`Error::RoundingStuck`] if that mass ever exceeds `2κ`.
pub fn round_packing(x: &[BigRational], gamma: &GammaIndex, kappa: usize) -> Result<PackingRounding> {
    let m = gamma.gamma_i.len();
    let bound = rat(2 * kappa as i64);
    let mut alive = vec![true; m];
    let mut packing = Vec::new();
    let mut max_mass = BigRational::zero();
    while alive.iter().any(|&a| a) {
        let (i, mass) = (0..m)
            .filter(|&i| alive[i])
            .map(|i| {
                let mass: BigRational = gamma.gamma_i[i].iter().filter(|&&j| alive[j]).map(|&j| x[j].clone()).sum();
                (i, mass)
            })
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
            .unwrap();
        if mass > bound {
            return Err(Error::RoundingStuck { bound: 2 * kappa as u64 });
        }
        if mass > max_mass {
            max_mass = mass;
        }
        packing.push(i);
        for &j in &gamma.gamma_i[i] {
            alive[j] = false;
        }
    }
    Ok(PackingRounding { packing, max_mass })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HittingRounding {
    pub hitting_set: Vec<Vertex>,
    /// Index of the representative part chosen for each member.
    pub representatives: Vec<usize>,
    /// Packing of the representatives found by the greedy step.
    pub packing: Vec<usize>,
    pub hit_radius: u32,
}

/// Rounds a fractional hitting set `y` at radius `r`.
///
/// Each member is represented by the part carrying the most `y`-mass within
/// distance `r` (first part on ties). The greedy hitting/packing step on the
/// representatives then gives the hitting set.
pub fn round_hitting(
    y: &[BigRational],
    family: &KappaFamily,
    dm: &DistanceMatrix,
    g: &Graph,
    r: u32,
    delta: HalfInt,
) -> Result<HittingRounding> {
    let mut reps = Vec::with_capacity(family.len());
    let mut chosen = Vec::with_capacity(family.len());
    for member in &family.sets {
        let mut best: Option<(usize, BigRational)> = None;
        for (k, part) in member.parts.iter().enumerate() {
            let near = dm.distances_to_set(&part.members);
            let mass: BigRational = (0..dm.n()).filter(|&v| near[v] <= r).map(|v| y[v].clone()).sum();
            if best.as_ref().is_none_or(|(_, b)| mass > *b) {
                best = Some((k, mass));
            }
        }
        let k = best.unwrap().0;
        chosen.push(k);
        reps.push(member.parts[k].clone());
    }
    let reps = QSetFamily::new(reps)?;
    let hp = greedy_hit_pack(dm, g, &reps, r, delta, 0);
    Ok(HittingRounding {
        hitting_set: hp.hitting_set,
        representatives: chosen,
        packing: hp.packing,
        hit_radius: hp.hit_radius,
    })
}

pub(crate) fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KappaCertificates {
    /// Every member lies within `r′` of the hitting set.
    pub hits_all: bool,
    /// Packing members are pairwise more than `2r` apart.
    pub packing_apart: bool,
    /// `|T| ≤ 2κ²|P|`.
    pub size_bound: bool,
    /// The packing and hitting LP optima coincide.
    pub duality_gap_zero: bool,
    /// `|P| ≥ π′/(2κ)`.
    pub packing_lower_bound: bool,
    /// `|T| ≤ κ·τ′`.
    pub hitting_upper_bound: bool,
}

impl KappaCertificates {
    pub fn ok(&self) -> bool {
        self.hits_all
            && self.packing_apart
            && self.size_bound
            && self.duality_gap_zero
            && self.packing_lower_bound
            && self.hitting_upper_bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaResult {
    pub kappa: usize,
    pub epsilon: u32,
    pub r: u32,
    pub r_star: u32,
    pub r_prime: u32,
    pub hitting_set: Vec<Vertex>,
    pub packing: Vec<usize>,
    #[serde(serialize_with = "ser_rational")]
    pub fractional_packing: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub fractional_hitting: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub rounding_max_mass: BigRational,
    pub certificates: KappaCertificates,
}

/// Builds an r-packing `P` and an r′-hitting set `T` with `|T| ≤ 2κ²|P|`.
///
/// `r* = max{2ε + 5δ, r + ε + 3δ}` and `r′ = max{2ε + 5δ, r* + ε + 3δ}`,
/// floored. The packing LP at `r*` is rounded into `P` against the radius-r
/// conflicts; the hitting LP at `r*` is rounded into `T`. `epsilon` must be
/// at least the measured ε of every part, and `r ≥ ε + ⌊2δ⌋`.
pub fn kappa_hit_pack(
    g: &Graph,
    dm: &DistanceMatrix,
    family: &KappaFamily,
    r: u32,
    epsilon: u32,
    delta: HalfInt,
) -> Result<KappaResult> {
    if epsilon < family.epsilon {
        return Err(Error::InvalidParameter(format!(
            "epsilon {epsilon} is below the measured {}",
            family.epsilon
        )));
    }
    let min = epsilon + (2 * delta).radius();
    if r < min {
        return Err(Error::RadiusBelowThreshold {
            r,
            min,
            why: "hitting/packing for unions needs r >= epsilon + 2 delta",
        });
    }
    let eps = HalfInt::from(epsilon);
    let floor = 2 * eps + 5 * delta;
    let r_star_h = floor.max(HalfInt::from(r) + eps + 3 * delta);
    let r_prime_h = floor.max(r_star_h + eps + 3 * delta);
    let (r_star, r_prime) = (r_star_h.radius(), r_prime_h.radius());
    let m = family.len();

    let gamma_star = gamma_sets(dm, family, r_star);
    let pi = solve_lp(&build_packing_lp(&gamma_star, m))?;
    let tau = solve_lp(&build_hitting_lp(dm, family, r_star))?;
    let gamma_r = gamma_sets(dm, family, r);
    let packed = round_packing(&pi.x, &gamma_r, family.kappa)?;
    let hit = round_hitting(&tau.x, family, dm, g, r_star, delta)?;

    let reach = family.reach(dm);
    let hits_all = reach
        .iter()
        .all(|d| hit.hitting_set.iter().any(|&t| d[t] <= r_prime));
    let unions: Vec<Vec<Vertex>> = family.sets.iter().map(KappaQSet::union).collect();
    let packing_apart = packed.packing.iter().enumerate().all(|(a, &i)| {
        packed.packing[a + 1..]
            .iter()
            .all(|&j| unions[j].iter().all(|&v| reach[i][v] > 2 * r))
    });
    let (t, p, k) = (hit.hitting_set.len(), packed.packing.len(), family.kappa);
    let certificates = KappaCertificates {
        hits_all,
        packing_apart,
        size_bound: t <= 2 * k * k * p,
        duality_gap_zero: pi.objective == tau.objective,
        packing_lower_bound: rat(p as i64) * rat(2 * k as i64) >= pi.objective,
        hitting_upper_bound: rat(t as i64) <= rat(k as i64) * &tau.objective,
    };
    Ok(KappaResult {
        kappa: k,
        epsilon,
        r,
        r_star,
        r_prime,
        hitting_set: hit.hitting_set,
        packing: packed.packing,
        fractional_packing: pi.objective,
        fractional_hitting: tau.objective,
        rounding_max_mass: packed.max_mass,
        certificates,
    })
}

/// True if `x` is a feasible fractional packing for `gamma`.
pub fn packing_feasible(x: &[BigRational], gamma: &GammaIndex) -> bool {
    gamma
        .gamma_v
        .iter()
        .all(|gv| gv.iter().map(|&i| x[i].clone()).sum::<BigRational>() <= BigRational::one())
}
