mod common;

use common::PathOracle;
use hypcongest::beamcore::{beams_pairwise_close, structural_checks, total_beam_core};
use hypcongest::congestion::{count_intercepted, geodesic_count, min_core, min_core_by_deletion, traffic_load, TrafficDemand};
use hypcongest::generate::{generate, GeneratorSpec};
use hypcongest::graph::intercepts_pair;
use hypcongest::hyperbolicity::{four_point_delta, quadruple_gap};
use hypcongest::io::{parse_edge_list, write_edge_list, Labels};
use hypcongest::kappa::{gamma_sets, kappa_hit_pack, packing_feasible, KappaFamily, KappaQSet};
use hypcongest::lp::{rat, solve_lp, LPInstance, Relation, Sense};
use hypcongest::multicore::{multicore_construct, CommodityGraph};
use hypcongest::quasiconvex::{greedy_hit_pack, measure_epsilon, QSet, QSetFamily};
use hypcongest::{Ball, DistanceMatrix, Graph, HalfInt};
use num_rational::Ratio;
use proptest::prelude::*;

fn graph_spec() -> impl Strategy<Value = GeneratorSpec> {
    prop_oneof![
        (3usize..30, any::<u64>()).prop_map(|(n, seed)| GeneratorSpec::Tree { n, seed }),
        (3usize..20).prop_map(|n| GeneratorSpec::Cycle { n }),
        (2usize..6, 2usize..6).prop_map(|(rows, cols)| GeneratorSpec::Grid { rows, cols }),
        (4usize..25, 0.15f64..0.6, any::<u64>()).prop_map(|(n, p, seed)| GeneratorSpec::GnpConnected { n, p, seed }),
    ]
}

fn small_spec() -> impl Strategy<Value = GeneratorSpec> {
    prop_oneof![
        (3usize..11, any::<u64>()).prop_map(|(n, seed)| GeneratorSpec::Tree { n, seed }),
        (3usize..11).prop_map(|n| GeneratorSpec::Cycle { n }),
        (2usize..4, 2usize..4).prop_map(|(rows, cols)| GeneratorSpec::Grid { rows, cols }),
        (4usize..11, 0.25f64..0.7, any::<u64>()).prop_map(|(n, p, seed)| GeneratorSpec::GnpConnected { n, p, seed }),
    ]
}

fn build(spec: &GeneratorSpec) -> (Graph, DistanceMatrix) {
    let g = generate(spec).unwrap();
    let dm = DistanceMatrix::new(&g).unwrap();
    (g, dm)
}

/// A thin-triangle constant valid for the metric graph: its four-point
/// constant exceeds the vertex one by at most ½, except on trees.
fn thin_safe(g: &Graph, dm: &DistanceMatrix) -> HalfInt {
    let d4 = four_point_delta(dm).delta;
    if g.edge_count() + 1 == g.n() {
        4 * d4
    } else {
        4 * (d4 + HalfInt::HALF)
    }
}

fn pick(seed: u64, n: usize, k: usize) -> usize {
    ((seed >> (8 * k)) as usize ^ (seed as usize).rotate_left(k as u32 * 7)) % n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distances_form_a_metric(spec in graph_spec(), s in any::<u64>()) {
        let (_, dm) = build(&spec);
        let n = dm.n();
        let (x, y, z) = (pick(s, n, 0), pick(s, n, 1), pick(s, n, 2));
        prop_assert_eq!(dm.get(x, x), 0);
        prop_assert_eq!(dm.get(x, y), dm.get(y, x));
        prop_assert!(dm.get(x, z) <= dm.get(x, y) + dm.get(y, z));
    }

    #[test]
    fn interval_is_exactly_the_geodesic_vertices(spec in graph_spec(), s in any::<u64>()) {
        let (_, dm) = build(&spec);
        let n = dm.n();
        let (x, y) = (pick(s, n, 0), pick(s, n, 1));
        let iv = dm.interval(x, y);
        prop_assert!(iv.contains(&x) && iv.contains(&y));
        for v in 0..n {
            let on = dm.get(x, v) + dm.get(v, y) == dm.get(x, y);
            prop_assert_eq!(on, iv.binary_search(&v).is_ok());
        }
    }

    #[test]
    fn delta_is_half_integer_and_bounded(spec in graph_spec()) {
        let (g, dm) = build(&spec);
        let d = four_point_delta(&dm);
        prop_assert!(d.exact);
        prop_assert_eq!(quadruple_gap(&dm, d.witness), d.delta);
        prop_assert!(d.delta <= HalfInt::from(dm.diameter()));
        if g.edge_count() == g.n() - 1 {
            prop_assert_eq!(d.delta, HalfInt::ZERO);
        }
    }

    #[test]
    fn core_meets_its_threshold_and_agrees_with_recount(spec in graph_spec(), a in 1u64..=4) {
        let (g, dm) = build(&spec);
        let xs: Vec<_> = (0..g.n()).collect();
        let alpha = Ratio::new(a, 4);
        let core = min_core(&g, &dm, &xs, alpha).unwrap();
        prop_assert!(core.intercepted_pairs >= core.threshold);
        prop_assert_eq!(count_intercepted(&g, &dm, core.ball(), &xs), core.intercepted_pairs);
        if core.radius > 0 {
            let smaller = Ball::new(core.center, core.radius - 1);
            prop_assert!(count_intercepted(&g, &dm, smaller, &xs) < core.threshold);
        }
    }

    #[test]
    fn core_radius_within_four_delta(spec in graph_spec()) {
        let (g, dm) = build(&spec);
        let xs: Vec<_> = (0..g.n()).collect();
        let core = min_core(&g, &dm, &xs, Ratio::new(1, 2)).unwrap();
        let delta = four_point_delta(&dm).delta;
        prop_assert!(core.radius <= (4 * delta).radius());
        let n = g.n() as u64;
        prop_assert!(core.intercepted_pairs >= (n * n).div_ceil(4));
    }

    #[test]
    fn fast_core_matches_deletion_search(spec in small_spec(), a in 1u64..=4) {
        let (g, dm) = build(&spec);
        let xs: Vec<_> = (0..g.n()).collect();
        let alpha = Ratio::new(a, 4);
        prop_assert_eq!(min_core(&g, &dm, &xs, alpha).unwrap(), min_core_by_deletion(&g, &dm, &xs, alpha).unwrap());
    }

    #[test]
    fn interception_and_counts_match_path_enumeration(spec in small_spec(), s in any::<u64>()) {
        let (g, dm) = build(&spec);
        let oracle = PathOracle::new(&g);
        let n = g.n();
        let (x, y, c) = (pick(s, n, 0), pick(s, n, 1), pick(s, n, 2));
        prop_assert_eq!(geodesic_count(&g, &dm, x, y), oracle.count(x, y));
        prop_assert_eq!(dm.interval(x, y), oracle.interval(x, y));
        for radius in 0..=dm.diameter() {
            let b = Ball::new(c, radius);
            prop_assert_eq!(intercepts_pair(&g, &dm, b, x, y), oracle.intercepts(b, x, y));
        }
    }

    #[test]
    fn load_of_everything_is_the_demand_count(spec in small_spec(), s in any::<u64>()) {
        let (g, dm) = build(&spec);
        let n = g.n();
        let demand = TrafficDemand::uniform(n);
        let all: Vec<_> = (0..n).collect();
        let full = traffic_load(&g, &dm, &demand, &all).unwrap();
        prop_assert_eq!(full, rat(demand.pairs.len() as i64));
        let one = [pick(s, n, 0)];
        let part = traffic_load(&g, &dm, &demand, &one).unwrap();
        prop_assert!(part >= rat(2 * (n as i64 - 1)));
        prop_assert!(part <= rat(demand.pairs.len() as i64));
    }

    #[test]
    fn greedy_hit_pack_certifies_itself(spec in graph_spec(), s in any::<u64>(), r in 0u32..3) {
        let (g, dm) = build(&spec);
        let n = g.n();
        let sets: Vec<QSet> = (0..6)
            .map(|k| QSet::new(&dm, format!("I{k}"), dm.interval(pick(s, n, k), pick(s, n, k + 1))).unwrap())
            .collect();
        let family = QSetFamily::new(sets).unwrap();
        let delta = thin_safe(&g, &dm);
        let hp = greedy_hit_pack(&dm, &g, &family, r, delta, pick(s, n, 7));
        prop_assert!(hp.verify(&dm, &family).ok());
    }

    #[test]
    fn intervals_in_trees_are_convex(spec in (3usize..30, any::<u64>()).prop_map(|(n, seed)| GeneratorSpec::Tree { n, seed }), s in any::<u64>()) {
        let (_, dm) = build(&spec);
        let n = dm.n();
        let iv = dm.interval(pick(s, n, 0), pick(s, n, 1));
        prop_assert_eq!(measure_epsilon(&dm, &iv).unwrap(), 0);
    }

    #[test]
    fn multicore_covers_every_demand(spec in small_spec(), s in any::<u64>(), extra in 0u32..3) {
        let (g, dm) = build(&spec);
        let n = g.n();
        let demands: Vec<_> = (0..4)
            .map(|k| (pick(s, n, k), pick(s, n, k + 4)))
            .filter(|&(x, y)| x != y)
            .collect();
        prop_assume!(!demands.is_empty());
        let comm = CommodityGraph::from_demands(n, demands).unwrap();
        let delta = thin_safe(&g, &dm);
        let r = (8 * delta).radius() + extra;
        let res = multicore_construct(&g, &dm, &comm, r, delta).unwrap();
        prop_assert!(res.covered);
        prop_assert_eq!(res.centers.len(), res.packing.len());
    }

    #[test]
    fn beam_core_and_structure(spec in graph_spec()) {
        let (g, dm) = build(&spec);
        let d4 = four_point_delta(&dm).delta;
        let delta = thin_safe(&g, &dm);
        let core = total_beam_core(&g, &dm, delta).unwrap();
        prop_assert!(core.all_beams_intercepted);
        prop_assert!(core.required_radius <= core.radius);
        prop_assert!(structural_checks(&dm, &core, d4).holds());
        prop_assert!(beams_pairwise_close(&dm) <= (2 * delta).radius() + 1);
    }

    #[test]
    fn kappa_certificates_hold(spec in graph_spec(), s in any::<u64>(), kappa in 1usize..=3) {
        let (g, dm) = build(&spec);
        let n = g.n();
        let sets: Vec<KappaQSet> = (0..5)
            .map(|i| {
                let parts = (0..kappa)
                    .map(|j| {
                        let k = 2 * (i + j);
                        QSet::new(&dm, format!("Q{i}.{j}"), dm.interval(pick(s, n, k % 8), pick(s ^ 0x9e37, n, (k + 1) % 8))).unwrap()
                    })
                    .collect();
                KappaQSet::new(format!("Q{i}"), parts).unwrap()
            })
            .collect();
        let family = KappaFamily::new(sets).unwrap();
        let delta = thin_safe(&g, &dm);
        let r = family.epsilon + (2 * delta).radius();
        let res = kappa_hit_pack(&g, &dm, &family, r, family.epsilon, delta).unwrap();
        prop_assert!(res.certificates.ok(), "{:?}", res.certificates);
        prop_assert!(gamma_sets(&dm, &family, r).is_symmetric());
    }

    #[test]
    fn lp_optimum_is_feasible_and_dual_matches(costs in proptest::collection::vec(1i64..5, 2..6), seed in any::<u64>()) {
        // covering LP: min c·x with every consecutive pair covered
        let m = costs.len();
        let mut primal = LPInstance::new(Sense::Minimize, costs.iter().map(|&c| rat(c)).collect());
        for i in 0..m {
            let j = (i + 1 + (seed as usize >> i) % (m - 1)) % m;
            primal.add_row([(i, rat(1)), (j, rat(1))], Relation::Ge, rat(1));
        }
        let sol = solve_lp(&primal).unwrap();
        prop_assert!(primal.is_feasible(&sol.x));
        prop_assert_eq!(primal.value(&sol.x), sol.objective.clone());
        let mut dual = LPInstance::new(Sense::Maximize, vec![rat(1); m]);
        for (v, &cost) in costs.iter().enumerate() {
            let rows: Vec<_> = (0..m)
                .filter(|&i| i == v || (i + 1 + (seed as usize >> i) % (m - 1)) % m == v)
                .map(|i| (i, rat(1)))
                .collect();
            dual.add_row(rows, Relation::Le, rat(cost));
        }
        let dsol = solve_lp(&dual).unwrap();
        prop_assert_eq!(dsol.objective, sol.objective);
    }

    #[test]
    fn packing_lp_solution_is_feasible(spec in small_spec(), s in any::<u64>()) {
        let (_, dm) = build(&spec);
        let n = dm.n();
        let sets: Vec<KappaQSet> = (0..4)
            .map(|i| KappaQSet::new(format!("Q{i}"), vec![QSet::new(&dm, "p", dm.interval(pick(s, n, i), pick(s, n, i + 4))).unwrap()]).unwrap())
            .collect();
        let family = KappaFamily::new(sets).unwrap();
        let gamma = gamma_sets(&dm, &family, 0);
        let sol = solve_lp(&hypcongest::kappa::build_packing_lp(&gamma, family.len())).unwrap();
        prop_assert!(packing_feasible(&sol.x, &gamma));
        prop_assert!(sol.objective >= rat(1));
    }

    #[test]
    fn edge_lists_survive_writing(spec in graph_spec()) {
        let (g, _) = build(&spec);
        let text = write_edge_list(&g, &Labels::identity(g.n()));
        let (h, labels) = parse_edge_list(&text).unwrap();
        prop_assert_eq!(h.n(), g.n());
        let mut back: Vec<(usize, usize)> = h
            .edges()
            .map(|(u, v)| {
                let (a, b) = (labels.name(u).parse().unwrap(), labels.name(v).parse().unwrap());
                (usize::min(a, b), usize::max(a, b))
            })
            .collect();
        back.sort_unstable();
        let mut orig: Vec<_> = g.edges().collect();
        orig.sort_unstable();
        prop_assert_eq!(back, orig);
    }
}

#[test]
fn vertex_delta_is_not_thin_safe_on_triangles() {
    // K3 has four-point constant 0 on its vertices, but a radius-0 ball
    // cannot meet the beam between the two other corners
    let (g, dm) = build(&GeneratorSpec::Cycle { n: 3 });
    assert_eq!(four_point_delta(&dm).delta, HalfInt::ZERO);
    assert!(!total_beam_core(&g, &dm, HalfInt::ZERO).unwrap().all_beams_intercepted);
    assert!(total_beam_core(&g, &dm, thin_safe(&g, &dm)).unwrap().all_beams_intercepted);
}
