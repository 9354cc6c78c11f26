//! Command-line front end: named scenarios in, line-delimited JSON out.

use clap::{Parser, Subcommand};
use liecheck::algebra::build_algebra;
use liecheck::cone::{enumerate_cone_with_budget, spanning_rank};
use liecheck::fp::Prime;
use liecheck::grading::{cochar_grading, Cocharacter};
use liecheck::report::Report;
use liecheck::roots::{build_root_system, RootKind};
use liecheck::scenario::{default_params, run_scenario, run_suite, Params, REGISTRY};
use liecheck::{LieError, Result};
use serde::Deserialize;
use std::io::Write as _;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "liecheck",
    version,
    about = "Exact checks on modular Lie algebras built from root data",
    propagate_version = true
)]
struct Cli {
    /// Root system type letter (A–G).
    #[arg(long = "type", value_name = "LETTER", global = true)]
    kind: Option<char>,

    /// Root system rank.
    #[arg(long, value_name = "N", global = true)]
    rank: Option<usize>,

    /// Field characteristic (a prime).
    #[arg(long, value_name = "P", global = true)]
    p: Option<u64>,

    /// RNG seed; falls back to $LIECHECK_SEED, then 0.
    #[arg(long, value_name = "S", global = true)]
    seed: Option<u64>,

    /// Sample count for randomized scenarios.
    #[arg(long, value_name = "K", global = true)]
    samples: Option<usize>,

    /// Enumeration budget (points / dimensions).
    #[arg(long, value_name = "B", global = true)]
    budget: Option<usize>,

    /// Also write the output to this file.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, value_name = "N", global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the root enumeration for the chosen system.
    DumpRoots,
    /// Print the structure constant table for the chosen algebra.
    DumpSc,
    /// Enumerate the long-root cone and report its spanning rank.
    Span,
    /// Print the grading induced by a named cocharacter.
    Grading {
        /// One of: highest-root, minus-two-eps2, trivial.
        #[arg(long, default_value = "highest-root")]
        cochar: String,
    },
    /// Run one named scenario and emit its JSON report line.
    Run {
        /// Scenario name from the registry (see `run-all` for the list).
        scenario: String,
    },
    /// Run a suite of scenarios (default: the whole registry).
    RunAll {
        /// Optional JSON-lines suite file; one scenario object per line.
        suite: Option<PathBuf>,
    },
}

/// One line of a suite file.  Omitted fields fall back to the scenario's
/// registry defaults.
#[derive(Deserialize)]
struct SuiteEntry {
    scenario: String,
    #[serde(rename = "type")]
    kind: Option<char>,
    rank: Option<usize>,
    p: Option<u64>,
    seed: Option<u64>,
    samples: Option<usize>,
    budget: Option<usize>,
}

fn seed_from_env() -> Result<Option<u64>> {
    match std::env::var("LIECHECK_SEED") {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| LieError::Usage(format!("LIECHECK_SEED is not an integer: {s:?}"))),
        Err(_) => Ok(None),
    }
}

impl Cli {
    /// Overlay the command-line flags on a scenario's defaults.
    fn apply(&self, mut params: Params, env_seed: Option<u64>) -> Result<Params> {
        if let Some(c) = self.kind {
            params.kind = RootKind::from_char(c)?;
        }
        if let Some(r) = self.rank {
            params.rank = r;
        }
        if let Some(p) = self.p {
            params.p = p;
        }
        if let Some(s) = self.seed.or(env_seed) {
            params.seed = s;
        }
        if let Some(k) = self.samples {
            params.samples = k;
        }
        if let Some(b) = self.budget {
            params.budget = b;
        }
        Ok(params)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            // Downstream closed the pipe (e.g. `liecheck ... | head`).
            std::process::exit(0);
        }
        return Err(e.into());
    }
    if let Some(path) = out {
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)?;
        writeln!(f, "{text}")?;
    }
    Ok(())
}

fn load_suite(path: &Path, cli: &Cli, env_seed: Option<u64>) -> Result<Vec<(String, Params)>> {
    let text = std::fs::read_to_string(path)?;
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let e: SuiteEntry = serde_json::from_str(line).map_err(|err| {
            LieError::Usage(format!(
                "suite file {}:{}: {err}",
                path.display(),
                lineno + 1
            ))
        })?;
        let mut params = default_params(&e.scenario)?;
        if let Some(c) = e.kind {
            params.kind = RootKind::from_char(c)?;
        }
        if let Some(r) = e.rank {
            params.rank = r;
        }
        if let Some(p) = e.p {
            params.p = p;
        }
        params.seed = e.seed.or(cli.seed).or(env_seed).unwrap_or(params.seed);
        if let Some(k) = e.samples {
            params.samples = k;
        }
        if let Some(b) = e.budget {
            params.budget = b;
        }
        entries.push((e.scenario, params));
    }
    if entries.is_empty() {
        return Err(LieError::Usage(format!(
            "suite file {} contains no scenarios",
            path.display()
        )));
    }
    Ok(entries)
}

/// Build (kind, rank, p) from flags with plain defaults for the
/// inspection subcommands.
fn inspect_params(cli: &Cli) -> Result<(RootKind, usize, u64)> {
    let kind = match cli.kind {
        Some(c) => RootKind::from_char(c)?,
        None => RootKind::C,
    };
    Ok((kind, cli.rank.unwrap_or(2), cli.p.unwrap_or(3)))
}

fn run(cli: &Cli) -> Result<bool> {
    let env_seed = seed_from_env()?;
    if let Some(path) = &cli.out {
        // Start fresh; `emit` appends line by line afterwards.
        std::fs::File::create(path)?;
    }
    match &cli.cmd {
        Cmd::DumpRoots => {
            let (kind, rank, _) = inspect_params(cli)?;
            let rs = build_root_system(kind, rank)?;
            emit(&cli.out, rs.dump().trim_end())?;
            Ok(true)
        }
        Cmd::DumpSc => {
            let (kind, rank, p) = inspect_params(cli)?;
            let a = build_algebra(kind, rank, Prime::new(p)?)?;
            emit(&cli.out, a.dump_sc().trim_end())?;
            Ok(true)
        }
        Cmd::Span => {
            let (kind, rank, p) = inspect_params(cli)?;
            let a = build_algebra(kind, rank, Prime::new(p)?)?;
            let budget = cli
                .budget
                .unwrap_or(liecheck::cone::DEFAULT_CONE_BUDGET);
            let cone = enumerate_cone_with_budget(&a, budget)?;
            let rank_found = spanning_rank(&a, &cone);
            let ok = rank_found == a.dim();
            emit(
                &cli.out,
                &format!(
                    "type {}{} p {}: cone points {}, spanning rank {} of dim {} -> {}",
                    kind.as_char(),
                    rank,
                    p,
                    cone.len(),
                    rank_found,
                    a.dim(),
                    if ok { "pass" } else { "fail" }
                ),
            )?;
            Ok(ok)
        }
        Cmd::Grading { cochar } => {
            let (kind, rank, p) = inspect_params(cli)?;
            let a = build_algebra(kind, rank, Prime::new(p)?)?;
            let rs = a.rs();
            let c = match cochar.as_str() {
                "highest-root" => Cocharacter::from_root(rs, rs.highest_root()),
                "minus-two-eps2" => Cocharacter::from_root(rs, rs.c_minus_two_eps2()?),
                "trivial" => Cocharacter::new(rs, vec![0; rs.ambient_dim()])?,
                other => {
                    return Err(LieError::Usage(format!(
                        "unknown cocharacter '{other}'; use highest-root, minus-two-eps2 or trivial"
                    )))
                }
            };
            let g = cochar_grading(&a, &c);
            let mut lines = vec![format!(
                "type {}{} p {}: cocharacter {} -> {} graded parts",
                kind.as_char(),
                rank,
                p,
                cochar,
                g.degrees().len()
            )];
            for d in g.degrees() {
                let members: Vec<String> = g
                    .component_basis(d)
                    .iter()
                    .map(|&k| a.basis_name(k))
                    .collect();
                lines.push(format!(
                    "  degree {:>3}: dim {:>3}  [{}]",
                    d,
                    g.dim(d),
                    members.join(", ")
                ));
            }
            emit(&cli.out, &lines.join("\n"))?;
            Ok(true)
        }
        Cmd::Run { scenario } => {
            let params = cli.apply(default_params(scenario)?, env_seed)?;
            let report = run_scenario(scenario, &params)?;
            emit(&cli.out, &report.to_json_line())?;
            Ok(report.passed())
        }
        Cmd::RunAll { suite } => {
            let entries = match suite {
                Some(path) => load_suite(path, cli, env_seed)?,
                None => REGISTRY
                    .iter()
                    .map(|&name| {
                        let params =
                            cli.apply(default_params(name).expect("registry name"), env_seed)?;
                        Ok((name.to_string(), params))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            let reports: Vec<Report> = run_suite(&entries)?;
            let mut all = true;
            for r in &reports {
                all &= r.passed();
                emit(&cli.out, &r.to_json_line())?;
            }
            Ok(all)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            std::process::exit(2);
        }
        // Ignore the error if a pool already exists; only the first
        // configuration of the process can win.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
