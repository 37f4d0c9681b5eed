//! Command-line driver: reads graphs and families, runs one analysis and
//! writes a JSON report.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypcongest::beamcore::{structural_checks, total_beam_core};
use hypcongest::congestion::{min_core, traffic_load, TrafficDemand};
use hypcongest::generate::{generate, GeneratorSpec, RNG_ALGORITHM};
use hypcongest::graph::DEFAULT_MAX_N;
use hypcongest::hyperbolicity::{four_point_delta_with, hyperbolicity_report, DEFAULT_EXACT_MAX_N};
use hypcongest::io::{
    family_from_named, kappa_family_from_named, parse_balls, parse_edge_list, parse_family_json,
    parse_kappa_family_json, parse_label_list, parse_pairs, resolve_pairs, write_edge_list, Labels,
};
use hypcongest::kappa::kappa_hit_pack;
use hypcongest::multicore::{multicore_construct, CommodityGraph};
use hypcongest::quasiconvex::{greedy_hit_pack, helly_balls_check, helly_center, r_star};
use hypcongest::{Ball, DistanceMatrix, Graph, HalfInt};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub const SCHEMA: &str = "hypcongest-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CERTIFICATE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hypcongest", version, about = "Congestion cores, Helly covers and packings in hyperbolic graphs")]
struct Cli {
    /// Seed for every random choice (sampled δ, generators).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Refuse graphs with more vertices than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Args)]
struct GraphArg {
    /// Edge list: two labels per line, '#' starts a comment line.
    #[arg(long)]
    edges: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Four-point δ, interval thinness, diameter, radius and centre.
    Hyperbolicity {
        #[command(flatten)]
        graph: GraphArg,
        /// Largest n for the exhaustive O(n⁴) scan; above it δ is sampled.
        #[arg(long, default_value_t = DEFAULT_EXACT_MAX_N)]
        exact_max_n: usize,
    },
    /// Smallest ball intercepting at least α|X|²/2 pairs of the profile.
    Core {
        #[command(flatten)]
        graph: GraphArg,
        /// `all`, or a file of whitespace/comma separated labels.
        #[arg(long, default_value = "all")]
        profile: String,
        #[arg(long, default_value = "1/2", value_parser = parse_alpha)]
        alpha: Ratio<u64>,
    },
    /// Exact geodesic load μ(S) of a vertex set.
    Traffic {
        #[command(flatten)]
        graph: GraphArg,
        /// `uniform`, or a file of `labelA labelB` lines.
        #[arg(long, default_value = "uniform")]
        demand: String,
        /// Comma separated labels of S.
        #[arg(long)]
        set: String,
    },
    /// Balls of radius r intercepting every commodity pair.
    Multicore {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        commodity: PathBuf,
        #[arg(long)]
        radius: u32,
    },
    /// Ball around the middle of a mutually distant pair meeting every beam.
    Beamcore {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// A ball meeting every member of a 2r-close family, or a common point of balls.
    Helly {
        #[command(flatten)]
        graph: GraphArg,
        /// Family JSON: `[{"name": .., "vertices": [..]}]`.
        #[arg(long, conflicts_with = "balls", required_unless_present = "balls")]
        family: Option<PathBuf>,
        /// Ball file: `label radius` per line.
        #[arg(long)]
        balls: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        r: u32,
        /// Base vertex label.
        #[arg(long)]
        base: Option<String>,
    },
    /// Greedy hitting set and packing of equal size.
    Hitpack {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long)]
        base: Option<String>,
    },
    /// LP-rounded hitting set and packing for unions of κ quasiconvex parts.
    Kappa {
        #[command(flatten)]
        graph: GraphArg,
        /// Kappa family JSON: `[{"name": .., "parts": [[..], ..]}]`.
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        r: u32,
        /// ε to use; defaults to the measured value.
        #[arg(long)]
        epsilon: Option<u32>,
    },
    /// Write a synthetic graph as an edge list.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Tree,
    Path,
    Cycle,
    Grid,
    StarPath,
    Gnp,
}

fn parse_alpha(s: &str) -> Result<Ratio<u64>, String> {
    Ratio::from_str(s.trim()).map_err(|_| format!("expected a fraction such as 1/2, got {s:?}"))
}

struct Failure(String);

impl From<hypcongest::Error> for Failure {
    fn from(e: hypcongest::Error) -> Self {
        Failure(e.to_string())
    }
}

struct Report {
    result: Value,
    labels: Option<Labels>,
    summary: String,
    /// Failed certificate checks; non-empty means exit code 2.
    failed: Vec<&'static str>,
    /// Replaces the JSON report (edge lists from `generate`).
    raw: Option<String>,
}

impl Report {
    fn new(result: Value, labels: &Labels, summary: String) -> Report {
        Report { result, labels: Some(labels.clone()), summary, failed: Vec::new(), raw: None }
    }

    fn check(mut self, ok: bool, what: &'static str) -> Report {
        if !ok {
            self.failed.push(what);
        }
        self
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: hypcongest::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure(format!("{}: {e}", path.display())))
}

struct Loaded {
    g: Graph,
    dm: DistanceMatrix,
    labels: Labels,
}

fn load(arg: &GraphArg, max_n: usize) -> Result<Loaded, Failure> {
    let (g, labels) = in_file(&arg.edges, parse_edge_list(&read(&arg.edges)?))?;
    let dm = DistanceMatrix::with_cap(&g, max_n)?;
    Ok(Loaded { g, dm, labels })
}

fn thin_delta(dm: &DistanceMatrix, seed: u64) -> (HalfInt, bool) {
    let est = four_point_delta_with(dm, DEFAULT_EXACT_MAX_N, 2_000_000, seed);
    (4 * est.delta, est.exact)
}

fn base_vertex(base: &Option<String>, labels: &Labels) -> Result<usize, Failure> {
    match base {
        None => Ok(0),
        Some(l) => Ok(parse_label_list(l, labels)?[0]),
    }
}

fn value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let seed = cli.seed;
    match &cli.cmd {
        Command::Hyperbolicity { graph, exact_max_n } => {
            let l = load(graph, cli.max_n)?;
            let rep = hyperbolicity_report(&l.dm, *exact_max_n, seed);
            let summary = format!(
                "delta {} ({}), interval thinness {}, diameter {}, radius {}, centre size {}",
                rep.delta,
                if rep.delta_exact { "exact" } else { "sampled lower bound" },
                rep.interval_thinness,
                rep.diameter,
                rep.radius,
                rep.center.len()
            );
            Ok(Report::new(value(&rep), &l.labels, summary))
        }
        Command::Core { graph, profile, alpha } => {
            let l = load(graph, cli.max_n)?;
            let xs = if profile == "all" {
                (0..l.g.n()).collect()
            } else {
                let path = Path::new(profile);
                in_file(path, parse_label_list(&read(path)?, &l.labels))?
            };
            let core = min_core(&l.g, &l.dm, &xs, *alpha)?;
            let summary = format!(
                "core B({}, {}) intercepts {} of the pairs (threshold {}), {} of {} distinct pairs",
                l.labels.name(core.center),
                core.radius,
                core.intercepted_pairs,
                core.threshold,
                core.distinct_intercepted,
                core.distinct_total
            );
            Ok(Report::new(value(&core), &l.labels, summary))
        }
        Command::Traffic { graph, demand, set } => {
            let l = load(graph, cli.max_n)?;
            let demand = if demand == "uniform" {
                TrafficDemand::uniform(l.g.n())
            } else {
                let path = Path::new(demand);
                let pairs = in_file(path, parse_pairs(&read(path)?).and_then(|p| resolve_pairs(&p, &l.labels)))?;
                TrafficDemand::new(l.g.n(), pairs)?
            };
            let s = parse_label_list(set, &l.labels)?;
            let mu = traffic_load(&l.g, &l.dm, &demand, &s)?;
            let decimal = mu.to_f64().unwrap_or(f64::NAN);
            let result = json!({
                "set": s,
                "demand_pairs": demand.pairs.len(),
                "mu": mu.to_string(),
                "mu_decimal": decimal,
            });
            Ok(Report::new(result, &l.labels, format!("mu = {mu} ~ {decimal:.6}")))
        }
        Command::Multicore { graph, commodity, radius } => {
            let l = load(graph, cli.max_n)?;
            let pairs = in_file(commodity, parse_pairs(&read(commodity)?).and_then(|p| resolve_pairs(&p, &l.labels)))?;
            let comm = CommodityGraph::from_demands(l.g.n(), pairs)?;
            let (delta, exact) = thin_delta(&l.dm, seed);
            let res = multicore_construct(&l.g, &l.dm, &comm, *radius, delta)?;
            let summary = format!(
                "{} balls of radius {} (delta {delta}), all pairs covered: {}",
                res.centers.len(),
                res.radius,
                res.covered
            );
            let result = json!({ "delta": delta, "delta_exact": exact, "multicore": value(&res) });
            Ok(Report::new(result, &l.labels, summary).check(res.covered, "covered"))
        }
        Command::Beamcore { graph } => {
            let l = load(graph, cli.max_n)?;
            let est = four_point_delta_with(&l.dm, DEFAULT_EXACT_MAX_N, 2_000_000, seed);
            let core = total_beam_core(&l.g, &l.dm, 4 * est.delta)?;
            let report = structural_checks(&l.dm, &core, est.delta);
            let summary = format!(
                "B({}, {}) intercepts {} beams: {}; structural checks hold: {}",
                l.labels.name(core.midpoint),
                core.radius,
                core.beam_count,
                core.all_beams_intercepted,
                report.holds()
            );
            let ok = core.all_beams_intercepted;
            let holds = report.holds();
            let result = json!({ "beam_core": value(&core), "structure": value(&report) });
            Ok(Report::new(result, &l.labels, summary)
                .check(ok, "all_beams_intercepted")
                .check(holds, "structural_checks"))
        }
        Command::Helly { graph, family, balls, r, base } => {
            let l = load(graph, cli.max_n)?;
            let (delta, _) = thin_delta(&l.dm, seed);
            if let Some(path) = family {
                let fam = in_file(path, parse_family_json(&read(path)?).and_then(|s| family_from_named(&s, &l.labels, &l.dm)))?;
                let z = base_vertex(base, &l.labels)?;
                let ball = helly_center(&l.dm, &l.g, &fam, *r, delta, z)?;
                let hits: Vec<bool> = fam
                    .sets
                    .iter()
                    .map(|q| q.members.iter().any(|&v| ball.contains(&l.dm, v)))
                    .collect();
                let all = hits.iter().all(|&h| h);
                let summary = format!("B({}, {}) meets every member: {all}", l.labels.name(ball.center), ball.radius);
                let result = json!({
                    "delta": delta,
                    "epsilon": fam.family_epsilon,
                    "r_star": r_star(*r, fam.family_epsilon, delta),
                    "ball": { "center": ball.center, "radius": ball.radius },
                    "meets": hits,
                });
                Ok(Report::new(result, &l.labels, summary).check(all, "meets_all"))
            } else {
                let path = balls.as_ref().expect("clap requires --family or --balls");
                let raw = in_file(path, parse_balls(&read(path)?))?;
                let list = raw
                    .iter()
                    .map(|(line, label, radius)| {
                        l.labels
                            .get(label)
                            .map(|c| Ball::new(c, *radius))
                            .ok_or_else(|| Failure(format!("{}: line {line}: unknown vertex {label:?}", path.display())))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let inflation = HalfInt::from_int(delta.ceil());
                let common = helly_balls_check(&l.dm, &list, inflation)?;
                let summary = match common {
                    Some(v) => format!("inflated balls share vertex {}", l.labels.name(v)),
                    None => "inflated balls have no common vertex".to_string(),
                };
                let result = json!({ "inflation": inflation, "common_vertex": common });
                Ok(Report::new(result, &l.labels, summary).check(common.is_some(), "common_vertex"))
            }
        }
        Command::Hitpack { graph, family, r, base } => {
            let l = load(graph, cli.max_n)?;
            let fam = in_file(family, parse_family_json(&read(family)?).and_then(|s| family_from_named(&s, &l.labels, &l.dm)))?;
            let (delta, _) = thin_delta(&l.dm, seed);
            let z = base_vertex(base, &l.labels)?;
            let hp = greedy_hit_pack(&l.dm, &l.g, &fam, *r, delta, z);
            let cert = hp.verify(&l.dm, &fam);
            let summary = format!(
                "|T| = {}, |P| = {}, hit radius {}, certificates hold: {}",
                hp.hitting_set.len(),
                hp.packing.len(),
                hp.hit_radius,
                cert.ok()
            );
            let result = json!({ "delta": delta, "epsilon": fam.family_epsilon, "hitpack": value(&hp), "certificate": value(&cert) });
            Ok(Report::new(result, &l.labels, summary).check(cert.ok(), "hitpack_certificate"))
        }
        Command::Kappa { graph, family, r, epsilon } => {
            let l = load(graph, cli.max_n)?;
            let fam = in_file(
                family,
                parse_kappa_family_json(&read(family)?).and_then(|s| kappa_family_from_named(&s, &l.labels, &l.dm)),
            )?;
            let (delta, _) = thin_delta(&l.dm, seed);
            let eps = epsilon.unwrap_or(fam.epsilon);
            let res = kappa_hit_pack(&l.g, &l.dm, &fam, *r, eps, delta)?;
            let summary = format!(
                "kappa {}, |T| = {} at r' = {}, |P| = {} at r = {}, |T| <= 2 kappa^2 |P|: {}",
                res.kappa,
                res.hitting_set.len(),
                res.r_prime,
                res.packing.len(),
                res.r,
                res.certificates.size_bound
            );
            let ok = res.certificates.ok();
            let result = json!({ "delta": delta, "kappa": value(&res) });
            Ok(Report::new(result, &l.labels, summary).check(ok, "kappa_certificates"))
        }
        Command::Generate { kind, n, rows, cols, p } => {
            let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure(format!("--{flag} is required for this kind")));
            let spec = match kind {
                Kind::Tree => GeneratorSpec::Tree { n: need(*n, "n")?, seed },
                Kind::Path => GeneratorSpec::Path { n: need(*n, "n")? },
                Kind::Cycle => GeneratorSpec::Cycle { n: need(*n, "n")? },
                Kind::Grid => GeneratorSpec::Grid { rows: need(*rows, "rows")?, cols: need(*cols, "cols")? },
                Kind::StarPath => GeneratorSpec::StarPathTn { n: need(*n, "n")? },
                Kind::Gnp => GeneratorSpec::GnpConnected {
                    n: need(*n, "n")?,
                    p: p.ok_or_else(|| Failure("--p is required for gnp".into()))?,
                    seed,
                },
            };
            let g = generate(&spec)?;
            if g.n() > cli.max_n {
                return Err(Failure(format!("{} vertices exceed --max-n {}", g.n(), cli.max_n)));
            }
            let spec_json = serde_json::to_string(&spec).expect("spec serializes");
            let text = format!(
                "# generator {spec_json}\n# rng {RNG_ALGORITHM}\n{}",
                write_edge_list(&g, &Labels::identity(g.n()))
            );
            Ok(Report {
                result: Value::Null,
                labels: None,
                summary: format!("generated {} vertices, {} edges", g.n(), g.edge_count()),
                failed: Vec::new(),
                raw: Some(text),
            })
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Hyperbolicity { .. } => "hyperbolicity",
        Command::Core { .. } => "core",
        Command::Traffic { .. } => "traffic",
        Command::Multicore { .. } => "multicore",
        Command::Beamcore { .. } => "beamcore",
        Command::Helly { .. } => "helly",
        Command::Hitpack { .. } => "hitpack",
        Command::Kappa { .. } => "kappa",
        Command::Generate { .. } => "generate",
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_INPUT;
        }
    };
    eprintln!("{}", report.summary);
    let text = match &report.raw {
        Some(raw) => raw.clone(),
        None => {
            let doc = json!({
                "schema": SCHEMA,
                "command": command_name(&cli.cmd),
                "seed": cli.seed,
                "rng": RNG_ALGORITHM,
                "labels": report.labels.as_ref().map(Labels::names),
                "certificates_failed": report.failed,
                "result": report.result,
            });
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
    };
    if let Err(msg) = emit(&cli.out, &text) {
        eprintln!("error: {msg}");
        return EXIT_INPUT;
    }
    exit_code(&report)
}

fn exit_code(report: &Report) -> i32 {
    if report.failed.is_empty() {
        EXIT_OK
    } else {
        eprintln!("certificate failure: {}", report.failed.join(", "));
        EXIT_CERTIFICATE
    }
}
