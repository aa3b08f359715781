//! `fractopo` command line.
//!
//! Exit codes: 0 when every check passed, 1 when a check failed or an
//! analysis errored, 2 on usage errors, 3 when the cell budget ran out.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use fractopo::cellset::{iterate_grid, iterate_hull};
use fractopo::corpus::{self, find_check, run_check, scenario_names, Outcome};
use fractopo::exec::{Engine, Exec};
use fractopo::ifs::{build_corpus, load_system, NamedSystem};
use fractopo::numeric::Rational;
use fractopo::render::{render, Palette, RenderSpec};
use fractopo::topology::{classify, label_components, Adjacency, Verdict};
use fractopo::Error;

#[derive(Parser)]
#[command(name = "fractopo", version, about = "Topology of self-similar sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Corpus system name or alias.
    #[arg(long, conflicts_with = "config")]
    name: Option<String>,
    /// System description file (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Maximum number of cells a single construction may hold.
    #[arg(long)]
    budget: Option<u128>,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
    /// Write the result here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a grid system: exact connectedness, profile and wrap report.
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
    },
    /// Run a named certificate from the scenario corpus.
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        kmax: Option<u32>,
        /// Maximum word length.
        #[arg(long = "Lmax", alias = "lmax")]
        lmax: Option<u32>,
    },
    /// Level-k section or projection of a grid system, as a cell dump.
    Section {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        axis: usize,
        /// Section height; omit to project along the axis.
        #[arg(long)]
        z0: Option<Rational>,
    },
    /// Render a planar grid system as PGM or PPM.
    Render {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        ppc: u32,
        /// binary, per-component or complement-overlay.
        #[arg(long, default_value = "binary")]
        palette: String,
        /// Seed with the hull tile instead of the unit cube.
        #[arg(long)]
        hull: bool,
    },
    /// Run built-in scenarios; all of them unless `--name` is given.
    Corpus {
        #[command(flatten)]
        common: Common,
    },
}

/// Failure carrying its exit code.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => 3,
            Error::NotFound(_) | Error::Parse(_) | Error::InvalidArgument(_) => 2,
            Error::Unsupported(_) => 1,
        };
        Exit(code, e.to_string())
    }
}

fn io(e: std::io::Error) -> Exit {
    Exit(1, e.to_string())
}

impl Common {
    fn engine(&self) -> Engine {
        let exec = if self.sequential { Exec::Sequential } else { Exec::default() };
        let e = Engine::new(exec);
        match self.budget {
            Some(b) => e.with_max_cells(b),
            None => e,
        }
    }

    fn system(&self) -> Result<NamedSystem, Exit> {
        match (&self.name, &self.config) {
            (Some(n), _) => Ok(build_corpus(n)?),
            (None, Some(p)) => Ok(load_system(p)?),
            (None, None) => Err(Exit(2, "pass --name or --config".into())),
        }
    }
}

fn grid(sys: &NamedSystem) -> Result<&fractopo::ifs::GridIFS, Exit> {
    sys.as_grid()
        .ok_or_else(|| Exit(2, "this command needs a grid system".into()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Exit> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn verdict_line(v: &Verdict) -> String {
    let vec = |d: &[i64]| d.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    match v {
        Verdict::Connected { heuristic } => {
            format!("Connected{}", if *heuristic { " (heuristic)" } else { "" })
        }
        Verdict::SegmentsOrPoints { direction: Some(d) } => format!("SegmentsOrPoints ({})", vec(&d[..2])),
        Verdict::SegmentsOrPoints { direction: None } => "SegmentsOrPoints".into(),
        Verdict::FinitelyMany { count, heuristic } => {
            format!("FinitelyMany {count}{}", if *heuristic { " (heuristic)" } else { "" })
        }
        Verdict::Undetermined { level } => format!("Undetermined at level {level}"),
    }
}

fn analyze(common: &Common, kmax: u32) -> Result<u8, Exit> {
    let sys = common.system()?;
    let c = classify(grid(&sys)?, kmax, &common.engine())?;
    println!("{}", verdict_line(&c.verdict));
    if common.out.is_some() {
        emit(&common.out, &pretty(&serde_json::to_value(&c).expect("plain data")))?;
    }
    Ok(0)
}

fn certify(common: &Common, k: Option<u32>, kmax: Option<u32>, lmax: Option<u32>) -> Result<u8, Exit> {
    let name = common
        .name
        .as_deref()
        .ok_or_else(|| Exit(2, format!("pass --name, one of: {}", short_names())))?;
    let (s, mut check) = find_check(name)?;
    for (key, v) in [("k", k), ("kmax", kmax), ("lmax", lmax)] {
        if let Some(v) = v {
            check.params.insert(key.into(), (v as i64).into());
        }
    }
    let sys = s.system.build()?;
    let (report, _) = run_check(&check, &sys, &s.system.label(), &common.engine())?;
    let obs = &report.observed;
    let status = obs.get("status").and_then(|v| v.as_str()).unwrap_or("-");
    println!("{}/{}: {status} ({:?})", s.name, check.id, report.outcome);
    if let (Some(a), Some(b)) = (obs.get("first"), obs.get("second")) {
        println!("words {} and {} share the map", a.as_str().unwrap_or("?"), b.as_str().unwrap_or("?"));
    }
    if let Some(n) = &report.note {
        eprintln!("{n}");
    }
    if common.out.is_some() {
        emit(&common.out, &pretty(&serde_json::to_value(&report).expect("plain data")))?;
    }
    Ok(outcome_code(report.outcome))
}

fn short_names() -> String {
    corpus::CERTIFICATES.iter().map(|c| c.0).collect::<Vec<_>>().join(", ")
}

fn outcome_code(o: Outcome) -> u8 {
    match o {
        Outcome::Pass | Outcome::Info => 0,
        Outcome::Budget => 3,
        Outcome::Fail | Outcome::Undetermined | Outcome::Error => 1,
    }
}

fn section(common: &Common, k: u32, axis: usize, z0: &Option<Rational>) -> Result<u8, Exit> {
    let sys = common.system()?;
    let f = iterate_grid(grid(&sys)?, k, &common.engine())?;
    let cut = match z0 {
        Some(z) => f.slice_section(axis, z)?,
        None => f.project_cells(axis)?,
    };
    eprintln!("{} cells", cut.len());
    emit(&common.out, &cut.dump())?;
    Ok(0)
}

fn render_cmd(common: &Common, k: u32, ppc: u32, palette: &str, hull: bool) -> Result<u8, Exit> {
    let palette: Palette = serde_json::from_value(json!(palette))
        .map_err(|_| Exit(2, format!("unknown palette {palette:?}")))?;
    let out = common
        .out
        .as_ref()
        .ok_or_else(|| Exit(2, "render needs --out".into()))?;
    let engine = common.engine();
    let sys = common.system()?;
    let g = grid(&sys)?;
    let f = if hull { iterate_hull(g, k, &engine)? } else { iterate_grid(g, k, &engine)? };
    let mut spec = RenderSpec::new(&f, palette);
    spec.pixels_per_cell = ppc;
    let fg;
    let comp;
    match palette {
        Palette::PerComponent => {
            fg = label_components(&f, Adjacency::Foreground, &engine);
            spec.labels = Some(&fg.labels);
        }
        Palette::ComplementOverlay => {
            comp = fractopo::topology::complement_analysis(g, k, &engine)?;
            spec.overlay = Some((&comp.0, &comp.1.labels));
        }
        Palette::Binary => {}
        Palette::PathOverlay => return Err(Exit(2, "path overlays come from the corpus channel checks".into())),
    }
    let img = render(&spec)?;
    img.write(out).map_err(io)?;
    println!("{}x{} -> {}", img.width, img.height, out.display());
    Ok(0)
}

fn write_run(dir: &Path, run: &corpus::ScenarioRun) -> Result<(), Exit> {
    std::fs::create_dir_all(dir).map_err(io)?;
    std::fs::write(dir.join(format!("{}.json", run.report.scenario)), run.report.to_json()).map_err(io)?;
    for (name, bytes) in &run.images {
        std::fs::write(dir.join(name), bytes).map_err(io)?;
    }
    Ok(())
}

fn corpus_cmd(common: &Common) -> Result<u8, Exit> {
    let engine = common.engine();
    let names: Vec<String> = match &common.name {
        Some(n) => vec![n.clone()],
        None => scenario_names().into_iter().map(String::from).collect(),
    };
    let mut code = 0;
    for n in names {
        let run = corpus::run_scenario(&n, &engine)?;
        let r = &run.report;
        let tag = if r.informational { " (informational)" } else { "" };
        println!("{}: {} passed, {} failed{tag}", r.scenario, r.passed, r.failed);
        for c in r.checks.iter().filter(|c| !matches!(c.outcome, Outcome::Pass | Outcome::Info)) {
            println!("  {} {:?}", c.id, c.outcome);
        }
        if let Some(dir) = &common.out {
            write_run(dir, &run)?;
        }
        if r.partial {
            code = 3;
        } else if !r.informational && !r.ok() && code == 0 {
            code = 1;
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let res = match &cli.command {
        Command::Analyze { common, kmax } => analyze(common, *kmax),
        Command::Certify { common, k, kmax, lmax } => certify(common, *k, *kmax, *lmax),
        Command::Section { common, k, axis, z0 } => section(common, *k, *axis, z0),
        Command::Render {
            common,
            k,
            ppc,
            palette,
            hull,
        } => render_cmd(common, *k, *ppc, palette, *hull),
        Command::Corpus { common } => corpus_cmd(common),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
