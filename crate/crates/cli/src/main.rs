//! `strata`: command-line front end for the zero-residue strata toolkit.
//!
//! Exit codes: 0 on success, 1 when the mathematics says no (an F-curve
//! with negative intersection, a violated residue condition, a fixture that
//! does not reproduce), 2 on malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use strata::curves::{is_fnef, nef_certificate, CurveError};
use strata::flatgeom::{coordinate_count, ChartData, PoleKind};
use strata::hurwitz::{braid_orbits, reference_examples, Guard, HurwitzError, OrbitCache, OrbitReport};
use strata::picard::class_for_signature;
use strata::serial::ClassJson;
use strata::twisted::{solve_residues, zr_grc_check, TwistedConfig, TwistedError};
use strata::{fixtures, Class, PicardError, RamificationProfile, Signature};

#[derive(Parser)]
#[command(name = "strata", version, about = "Divisor classes, positivity and braid orbits for zero-residue strata")]
struct Cli {
    /// Report elapsed time on stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The class of a zero-residue stratum on M̄_{g,n}.
    Class {
        #[command(flatten)]
        sig: SignatureArgs,
        #[arg(long, conflicts_with = "latex")]
        json: bool,
        #[arg(long)]
        latex: bool,
    },
    /// Pairs a genus-zero class with every F-curve.
    Fnef {
        #[command(flatten)]
        sig: SignatureArgs,
        #[arg(long)]
        json: bool,
    },
    /// Builds an inductive nef certificate for a genus-zero class.
    Nef {
        #[command(flatten)]
        sig: SignatureArgs,
        /// Write the certificate as JSON to this file.
        #[arg(long, value_name = "FILE")]
        emit_certificate: Option<PathBuf>,
    },
    /// Residue forms and zero-residue rank of a flat chart.
    Residues {
        #[arg(long, value_name = "FILE")]
        chart: PathBuf,
        /// Signature the chart should have, checked by coordinate count.
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long)]
        json: bool,
    },
    /// Matching axioms and the global residue condition for a level graph.
    Grc {
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Monodromy tuples and braid orbits.
    Hurwitz {
        #[command(subcommand)]
        command: HurwitzCommand,
    },
    /// Recomputes every fixture in a directory.
    Selftest {
        /// Defaults to the fixtures bundled with the library.
        #[arg(long, value_name = "DIR")]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HurwitzCommand {
    /// Braid orbits on conjugacy classes of tuples with a given profile.
    Orbits {
        #[arg(long)]
        degree: u32,
        /// Partitions such as "[2,2,1],[3,1,1]"; short ones are padded.
        #[arg(long)]
        profile: String,
        #[arg(long)]
        threads: Option<usize>,
        /// Cache directory; STRATA_CACHE is used when absent.
        #[arg(long, value_name = "DIR")]
        cache: Option<PathBuf>,
        #[arg(long, default_value_t = Guard::default().max_degree)]
        max_degree: usize,
        #[arg(long, default_value_t = Guard::default().max_points)]
        max_points: usize,
    },
    /// The two worked tuples, checked under the left-first convention.
    Examples,
}

#[derive(Args)]
struct SignatureArgs {
    #[arg(long, default_value_t = 0)]
    g: u32,
    /// Retained markings; inferred from the trailing simple zeros if absent.
    #[arg(long)]
    n: Option<usize>,
    /// Full signature, e.g. -2,-2,4,1,1.
    #[arg(long, allow_hyphen_values = true)]
    kappa: String,
}

enum Failure {
    /// Exit 1.
    Math(String),
    /// Exit 2.
    Input(String),
}

type Outcome = Result<(), Failure>;

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn picard(e: PicardError) -> Failure {
    match e {
        PicardError::EmptyStratum => Failure::Math(e.to_string()),
        e => input(e),
    }
}

fn curve(e: CurveError) -> Failure {
    match e {
        CurveError::Picard(e) => picard(e),
        e @ CurveError::RecursionFailure { .. } => Failure::Math(e.to_string()),
        e => input(e),
    }
}

fn hurwitz(e: HurwitzError) -> Failure {
    match e {
        HurwitzError::Cache(_) => Failure::Math(e.to_string()),
        e => input(e),
    }
}

fn twisted(e: TwistedError) -> Failure {
    match e {
        TwistedError::Axioms(v) => Failure::Math(format!("axioms violated: {}", json(&v))),
        e => input(e),
    }
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serialisable report")
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

impl SignatureArgs {
    fn signature(&self) -> Result<Signature, Failure> {
        Signature::parse(self.g, &self.kappa).map_err(input)
    }

    /// The class, and the retained orders.
    fn class(&self) -> Result<(Class, Vec<i64>), Failure> {
        let sig = self.signature()?;
        let len = sig.len();
        let n = match self.n {
            Some(n) => n,
            None => (1..=len)
                .find(|&n| class_for_signature::<strata::Rational>(&sig, n).is_ok())
                .ok_or_else(|| {
                    let err = class_for_signature::<strata::Rational>(&sig, len).err();
                    err.map_or_else(|| input("no admissible number of markings"), picard)
                })?,
        };
        let class = class_for_signature(&sig, n).map_err(picard)?;
        Ok((class, sig.entries()[..n].to_vec()))
    }
}

fn class_cmd(sig: &SignatureArgs, as_json: bool, latex: bool) -> Outcome {
    let (c, _) = sig.class()?;
    if as_json {
        println!("{}", json(&ClassJson::from(&c)));
    } else if latex {
        println!("{}", c.to_latex());
    } else {
        println!("{c}");
    }
    Ok(())
}

fn fnef_cmd(sig: &SignatureArgs, as_json: bool) -> Outcome {
    let (c, _) = sig.class()?;
    let report = is_fnef(&c).map_err(curve)?;
    if as_json {
        let violations: Vec<[String; 2]> = report.violations.iter().map(|(f, v)| [f.to_string(), v.to_string()]).collect();
        println!("{}", json(&serde_json::json!({ "curves": report.curves, "violations": violations })));
    } else {
        for (f, v) in &report.violations {
            println!("{f}: {v}");
        }
        println!("{} F-curves, {} negative", report.curves, report.violations.len());
    }
    if report.is_fnef() {
        Ok(())
    } else {
        Err(Failure::Math("not F-nef".into()))
    }
}

fn nef_cmd(sig: &SignatureArgs, emit: Option<&Path>) -> Outcome {
    if sig.g != 0 {
        return Err(input("nef certificates are for genus zero"));
    }
    let (_, d) = sig.class()?;
    let cert = nef_certificate(&d).map_err(curve)?;
    let (leaves, nodes) = cert.size();
    if let Some(path) = emit {
        fs::write(path, json(&cert) + "\n").map_err(|e| input(format!("{}: {e}", path.display())))?;
    }
    println!("nef: {leaves} F-nef leaves, {nodes} boundary-effective nodes");
    Ok(())
}

fn load_chart(path: &Path) -> Result<ChartData, Failure> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(input)?;
    // a chart fixture carries the chart under "chart"
    let inner = value.get("chart").cloned().unwrap_or(value);
    serde_json::from_value(inner).map_err(input)
}

#[derive(Serialize)]
struct PoleResidue {
    pole: usize,
    kind: PoleKind,
    residue: String,
}

#[derive(Serialize)]
struct ResidueReport {
    poles: Vec<PoleResidue>,
    zero_residue_rank: usize,
}

fn residues_cmd(path: &Path, kappa: Option<&str>, genus: u32, as_json: bool) -> Outcome {
    let chart = load_chart(path)?;
    chart.validate().map_err(input)?;
    if let Some(k) = kappa {
        let sig = Signature::parse(genus, k).map_err(input)?;
        let want = coordinate_count(&sig);
        if want != chart.n {
            return Err(input(format!("chart has {} saddle connections, {sig} needs {want}", chart.n)));
        }
    }
    let forms = chart.residue_forms().map_err(input)?;
    let report = ResidueReport {
        poles: chart
            .poles()
            .into_iter()
            .zip(&forms)
            .enumerate()
            .map(|(k, (kind, f))| PoleResidue { pole: k + 1, kind, residue: f.to_string() })
            .collect(),
        zero_residue_rank: chart.zero_residue_rank().map_err(input)?,
    };
    if as_json {
        println!("{}", json(&report));
    } else {
        for p in &report.poles {
            let kind = match p.kind {
                PoleKind::NonSimple { order } => format!("order {order}"),
                PoleKind::Simple { upper: true } => "simple, upper".into(),
                PoleKind::Simple { upper: false } => "simple, lower".into(),
            };
            println!("pole {} ({kind}): {}", p.pole, p.residue);
        }
        println!("zero-residue rank: {}", report.zero_residue_rank);
    }
    Ok(())
}

#[derive(Serialize)]
struct GrcOutput {
    check: Option<strata::twisted::GrcReport>,
    solution: strata::twisted::ResidueSolution,
}

fn grc_cmd(path: &Path, as_json: bool) -> Outcome {
    let cfg: TwistedConfig = serde_json::from_str(&read(path)?).map_err(input)?;
    let violations = cfg.validate();
    if !violations.is_empty() {
        if as_json {
            println!("{}", json(&violations));
        }
        return Err(twisted(TwistedError::Axioms(violations)));
    }
    let check = if cfg.residues.is_empty() { None } else { Some(zr_grc_check(&cfg).map_err(twisted)?) };
    let solution = solve_residues(&cfg).map_err(twisted)?;
    let out = GrcOutput { check, solution };
    if as_json {
        println!("{}", json(&out));
    } else {
        println!("axioms: ok");
        if let Some(c) = &out.check {
            for v in &c.violations {
                println!("violated: {}", serde_json::to_string(v).expect("serialisable"));
            }
            println!("supplied residues: {}", if c.ok() { "ok" } else { "violate the residue conditions" });
        }
        let s = &out.solution;
        println!("solvable: {}", s.solvable);
        println!("free residue parameters: {}", s.freedom);
        println!("second kind: {}", s.second_kind);
        for p in s.solution.iter().filter(|p| !num_traits::Zero::is_zero(&p.value)) {
            println!("  {:?} = {}", p.at, p.value);
        }
        println!("note: {}", s.caveat);
    }
    if out.check.as_ref().is_some_and(|c| !c.ok()) {
        return Err(Failure::Math("supplied residues violate the residue conditions".into()));
    }
    if !out.solution.solvable {
        return Err(Failure::Math("no residue assignment is nonzero at every simple pole".into()));
    }
    Ok(())
}

fn orbits_cmd(degree: u32, profile: &str, threads: Option<usize>, cache: Option<PathBuf>, guard: Guard) -> Outcome {
    if guard.max_degree == 0 || guard.max_points == 0 {
        return Err(input("guards must be positive"));
    }
    let profile = RamificationProfile::parse_with_degree(profile, degree).map_err(input)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(input("--threads must be positive"));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(input)?;
    let cache = cache.map(OrbitCache::new).or_else(OrbitCache::from_env);
    let (report, hit) = pool.install(|| match &cache {
        Some(c) => c.orbits(&profile, guard),
        None => braid_orbits(&profile, guard).map(|r| (r, false)),
    }).map_err(hurwitz)?;
    if hit {
        eprintln!("cache hit in {}", cache.as_ref().expect("cache").dir().display());
    }
    println!("{}", json(&OrbitsOutput { orbit_count: report.orbit_count(), sizes: report.sizes(), report }));
    Ok(())
}

#[derive(Serialize)]
struct OrbitsOutput {
    orbit_count: usize,
    sizes: Vec<usize>,
    #[serde(flatten)]
    report: OrbitReport,
}

fn selftest_cmd(dir: Option<PathBuf>) -> Outcome {
    let dir = dir.unwrap_or_else(fixtures::bundled_dir);
    let outcomes = fixtures::check_dir(&dir).map_err(input)?;
    if outcomes.is_empty() {
        println!("no fixtures in {}", dir.display());
        return Ok(());
    }
    for o in &outcomes {
        println!("{} {} ({}): {}", if o.ok { "ok  " } else { "FAIL" }, o.name, o.file, o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.ok).count();
    println!("{} fixtures, {failed} failed", outcomes.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Math(format!("{failed} fixture(s) failed")))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Class { sig, json, latex } => class_cmd(&sig, json, latex),
        Command::Fnef { sig, json } => fnef_cmd(&sig, json),
        Command::Nef { sig, emit_certificate } => nef_cmd(&sig, emit_certificate.as_deref()),
        Command::Residues { chart, kappa, genus, json } => residues_cmd(&chart, kappa.as_deref(), genus, json),
        Command::Grc { graph, json } => grc_cmd(&graph, json),
        Command::Hurwitz { command } => match command {
            HurwitzCommand::Orbits { degree, profile, threads, cache, max_degree, max_points } => {
                orbits_cmd(degree, &profile, threads, cache, Guard { max_degree, max_points })
            }
            HurwitzCommand::Examples => {
                println!("{}", json(&reference_examples()));
                Ok(())
            }
        },
        Command::Selftest { fixtures } => selftest_cmd(fixtures),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let timing = cli.timing;
    let start = Instant::now();
    let result = run(cli);
    if timing {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(m)) => {
            eprintln!("strata: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("strata: {m}");
            ExitCode::from(2)
        }
    }
}
