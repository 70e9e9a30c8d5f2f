//! `compat-tri`: generate, certify and inspect compatible triangulation instances.
//!
//! Every command prints JSON on stdout and a one-line summary on stderr. Exit status is
//! 0 for ok/yes verdicts, 1 for no/violation verdicts and 2 for bad input.

mod render;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use compat_tri::certificates::{
    build_certificate, build_graph_h, extract_assignment, steiner_lower_bound, CertificateError,
};
use compat_tri::reduction::{reduce, ReductionOutput, PRIMED};
use compat_tri::regions::{compatible, validate_region, LabelledPolygon, PolygonalRegion};
use compat_tri::satmodel::{validate_instance, Assignment, InstanceFile};
use compat_tri::triangulation::{steiner_count, verify_compatible_pair, CompatiblePair};
use compat_tri::zero_steiner::{
    brute_force_zero_steiner, decide_zero_steiner, ZeroSteinerVerdict, DEFAULT_BRUTE_FORCE_BOUND,
};

/// Overrides the vertex cap of the brute-force oracle.
const BRUTE_MAX_VAR: &str = "COMPAT_TRI_BRUTE_MAX";

#[derive(Parser)]
#[command(name = "compat-tri", version, about = "Compatible triangulations with few Steiner points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance, a region, or a pair of triangulations against their regions.
    Validate {
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long)]
        region: Option<PathBuf>,
        /// Checks both regions and their compatibility; with --triangulations, the pair as well.
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long, requires = "pair")]
        triangulations: Option<PathBuf>,
    },
    /// Build the two regions and the Steiner budget from a drawn 3-SAT instance.
    Generate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Triangulate a generated pair compatibly from a satisfying assignment.
    Certify {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        /// Write the triangulations here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read a truth assignment back from compatible triangulations of a generated pair.
    Extract {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        triangulations: PathBuf,
    },
    /// Peak covisibility graph of one clause with its matching, cover and Steiner bounds.
    Analyze {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        clause: usize,
    },
    /// Decide whether two labelled polygons have compatible triangulations without Steiner points.
    SolveZero {
        #[arg(long)]
        pair: PathBuf,
        /// Cross-check with the exhaustive oracle.
        #[arg(long)]
        brute: bool,
    },
    /// Draw both regions as layered SVG.
    Render {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        triangulations: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Skip the visibility regions of the peaks.
        #[arg(long)]
        no_visibility: bool,
    },
}

struct Report {
    ok: bool,
    json: Value,
    summary: String,
}

impl Report {
    fn new(ok: bool, json: Value, summary: impl Into<String>) -> Self {
        Report { ok, json, summary: summary.into() }
    }
}

/// Two regions, as found in a generated pair or written by hand.
#[derive(Deserialize)]
pub struct RegionPair {
    pub p1: PolygonalRegion,
    pub p2: PolygonalRegion,
    #[serde(default)]
    pub layout: Option<compat_tri::reduction::GadgetLayout>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Shape {
    Polygon(LabelledPolygon),
    Region(PolygonalRegion),
}

#[derive(Deserialize)]
struct PolygonPair {
    p1: Shape,
    p2: Shape,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn brute_bound() -> Result<usize, String> {
    match std::env::var(BRUTE_MAX_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| format!("{BRUTE_MAX_VAR}={s:?} is not a vertex count")),
        Err(_) => Ok(DEFAULT_BRUTE_FORCE_BOUND),
    }
}

fn polygon_of(s: Shape, which: &str) -> Result<LabelledPolygon, String> {
    match s {
        Shape::Polygon(p) => Ok(p),
        Shape::Region(r) if r.holes.is_empty() => Ok(r.outer),
        Shape::Region(_) => Err(format!("{which}: regions with holes are not supported here")),
    }
}

fn run(cmd: Command) -> Result<Report, String> {
    match cmd {
        Command::Validate { instance, region, pair, triangulations } => {
            let mut problems: BTreeMap<&str, Vec<String>> = BTreeMap::new();
            let mut checked = Vec::new();
            if let Some(path) = instance {
                let (i, d) = read_json::<InstanceFile>(&path)?.split();
                problems.insert("instance", validate_instance(&i, &d).err().unwrap_or_default());
                checked.push("instance");
            }
            if let Some(path) = region {
                let r: PolygonalRegion = read_json(&path)?;
                problems.insert("region", validate_region(&r).err().unwrap_or_default());
                checked.push("region");
            }
            if let Some(pp) = &pair {
                let rp: RegionPair = read_json(pp)?;
                let mut v: Vec<String> = Vec::new();
                for (name, r) in [("first", &rp.p1), ("second", &rp.p2)] {
                    if let Err(errs) = validate_region(r) {
                        v.extend(errs.iter().map(|e| format!("{name}: {e}")));
                    }
                }
                if !compatible(&rp.p1, &rp.p2) {
                    v.push("regions are not compatible".into());
                }
                problems.insert("pair", v);
                checked.push("pair");
            }
            if let (Some(pp), Some(tp)) = (pair, triangulations) {
                let rp: RegionPair = read_json(&pp)?;
                let t: CompatiblePair = read_json(&tp)?;
                let v = verify_compatible_pair(&rp.p1, &rp.p2, &t).err().unwrap_or_default();
                problems.insert("triangulations", v.iter().map(|x| format!("{:?}: {}", x.kind, x.detail)).collect());
                checked.push("triangulations");
            }
            if checked.is_empty() {
                return Err("nothing to validate: pass --instance, --region, or --pair with --triangulations".into());
            }
            let count: usize = problems.values().map(Vec::len).sum();
            let summary = if count == 0 {
                format!("valid: {}", checked.join(", "))
            } else {
                format!("{count} problem(s) in {}", checked.join(", "))
            };
            Ok(Report::new(count == 0, json!({ "valid": count == 0, "problems": problems }), summary))
        }
        Command::Generate { instance, out, svg } => {
            let (i, d) = read_json::<InstanceFile>(&instance)?.split();
            let r = reduce(&i, &d).map_err(|e| format!("{}: {e}", instance.display()))?;
            write_file(&out, &to_pretty(&r))?;
            if let Some(path) = &svg {
                let pair = RegionPair { p1: r.p1.clone(), p2: r.p2.clone(), layout: Some(r.layout.clone()) };
                write_file(path, &render::render(&pair, None, true))?;
            }
            let summary = format!(
                "{} clause(s), {} vertices per region, budget k = {}",
                r.instance.clauses.len(),
                r.p1.vertex_count(),
                r.k
            );
            let report = json!({
                "out": out,
                "svg": svg,
                "k": r.k,
                "clauses": r.instance.clauses.len(),
                "variables": r.instance.variables.len(),
                "vertices": r.p1.vertex_count(),
                "max_bit_length": r.max_bit_length(),
                "tau": compat_tri::geometry::format_rational(&r.params.tau),
            });
            Ok(Report::new(true, report, summary))
        }
        Command::Certify { pair, assignment, out } => {
            let r: ReductionOutput = read_json(&pair)?;
            let a: Assignment = read_json(&assignment)?;
            match build_certificate(&r, &a) {
                Ok(t) => {
                    let summary = format!("certificate with {} Steiner points (budget {})", steiner_count(&t), r.k);
                    let report = match &out {
                        Some(path) => {
                            write_file(path, &to_pretty(&t))?;
                            json!({ "out": path, "steiner": steiner_count(&t), "k": r.k, "verified": true })
                        }
                        None => serde_json::to_value(&t).expect("serializable"),
                    };
                    Ok(Report::new(true, report, summary))
                }
                Err(CertificateError::MissingVariable(v)) => {
                    Err(format!("{}: no value for variable {v}", assignment.display()))
                }
                Err(e) => Ok(Report::new(false, json!({ "error": e.to_string() }), e.to_string())),
            }
        }
        Command::Extract { pair, triangulations } => {
            let r: ReductionOutput = read_json(&pair)?;
            let t: CompatiblePair = read_json(&triangulations)?;
            if let Err(v) = verify_compatible_pair(&r.p1, &r.p2, &t) {
                let summary = format!("triangulations rejected with {} violation(s)", v.len());
                return Ok(Report::new(false, json!({ "violations": v }), summary));
            }
            match extract_assignment(&r, &t) {
                Ok(a) => {
                    let sat = r.instance.satisfied_by(&a);
                    let report = json!({
                        "assignment": a,
                        "satisfies": sat,
                        "steiner": steiner_count(&t),
                        "k": r.k,
                    });
                    let summary = if sat {
                        "assignment satisfies the instance"
                    } else {
                        "assignment does not satisfy the instance"
                    };
                    Ok(Report::new(sat, report, summary))
                }
                Err(e) => Ok(Report::new(false, json!({ "error": e.to_string() }), e.to_string())),
            }
        }
        Command::Analyze { pair, clause } => {
            let r: ReductionOutput = read_json(&pair)?;
            if clause >= r.layout.clauses.len() {
                return Err(format!("--clause {clause}: the pair has {} clause(s)", r.layout.clauses.len()));
            }
            let g = build_graph_h(&r, clause).map_err(|e| e.to_string())?;
            let mut bounds = BTreeMap::new();
            bounds.insert("none".to_string(), steiner_lower_bound(&g, &[]));
            for p in PRIMED {
                bounds.insert(p.to_string(), steiner_lower_bound(&g, &[p]));
            }
            let summary = format!(
                "clause {clause}: {} edges, matching {}, cover {{{}}}",
                g.edges.len(),
                g.matching.len(),
                g.cover.join(",")
            );
            let report = json!({
                "clause": clause,
                "nodes": g.nodes,
                "edges": g.edges,
                "bipartite": g.bipartite,
                "matching": g.matching,
                "cover": g.cover,
                "bounds": bounds,
            });
            Ok(Report::new(true, report, summary))
        }
        Command::SolveZero { pair, brute } => {
            let pp: PolygonPair = read_json(&pair)?;
            let p1 = polygon_of(pp.p1, "p1")?;
            let p2 = polygon_of(pp.p2, "p2")?;
            for (name, p) in [("p1", &p1), ("p2", &p2)] {
                let r = PolygonalRegion::new(p.clone(), vec![]);
                if let Err(e) = validate_region(&r) {
                    return Err(format!("{}: {name}: {}", pair.display(), e.join("; ")));
                }
            }
            let verdict = decide_zero_steiner(&p1, &p2).map_err(|e| format!("{}: {e}", pair.display()))?;
            let oracle = if brute {
                let bound = brute_bound()?;
                let b = brute_force_zero_steiner(&p1, &p2, bound).map_err(|e| format!("{}: {e}", pair.display()))?;
                Some(if b { "yes" } else { "no" })
            } else {
                None
            };
            let (ok, report) = match &verdict {
                ZeroSteinerVerdict::Yes(w) => (true, json!({ "verdict": "yes", "witness": w, "brute_force": oracle })),
                ZeroSteinerVerdict::No => (false, json!({ "verdict": "no", "brute_force": oracle })),
            };
            let summary = match oracle {
                Some(o) => format!("verdict {}, brute force {o}", if ok { "yes" } else { "no" }),
                None => format!("verdict {}", if ok { "yes" } else { "no" }),
            };
            Ok(Report::new(ok, report, summary))
        }
        Command::Render { pair, triangulations, out, no_visibility } => {
            let rp: RegionPair = read_json(&pair)?;
            let t: Option<CompatiblePair> = triangulations.as_deref().map(read_json).transpose()?;
            let svg = render::render(&rp, t.as_ref(), !no_visibility);
            write_file(&out, &svg)?;
            let report = json!({ "out": out, "bytes": svg.len() });
            Ok(Report::new(true, report, format!("wrote {}", out.display())))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(r) => {
            let text = serde_json::to_string_pretty(&r.json).expect("serializable");
            // A closed pipe downstream is not our error.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            eprintln!("{}", r.summary);
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
