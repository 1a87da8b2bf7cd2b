mod table;

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use loopcell::config::{
    Configuration, ConfigurationJson, FiltrationIndex, TubularJson, TubularPoint,
};
use loopcell::gen;
use loopcell::homology::{
    config_complex, homology, orientable, smith_normal_form, thom_dims, ChainComplex,
    ChainComplexJson, IntMatrix, SparseMatrix, SparseMatrixJson,
};
use loopcell::rational::{format_rational, rat};
use loopcell::scanning::{collapse, eta, scan_homotopy, RelConfig, RelConfigJson};
use loopcell::spectral::{cell_report, e1_page, snaith_check};
use loopcell::verify::{self, Report, RunConfig, SUITES};

use table::{Format, Params};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn input(e: impl Display) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Outcome of a command that checks something: output plus pass/fail.
struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }

    fn json(value: &impl Serialize, passed: bool) -> Self {
        Output {
            text: serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
            passed,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "loopcell",
    version,
    about = "Exact little-cubes geometry and rank-filtration homology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Little cubes operad
    #[command(subcommand)]
    Operad(OperadCmd),
    /// Configurations, the fiberwise filtration and the tubular map
    #[command(subcommand)]
    Config(ConfigCmd),
    /// Scanning homotopy
    #[command(subcommand)]
    Scan(ScanCmd),
    /// Grid bar construction
    #[command(subcommand)]
    Bar(BarCmd),
    /// Chain complexes, Smith normal form, configuration and Thom spaces
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// First page, Snaith comparison and cell structures
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// Run every acceptance suite
    Verify(VerifyArgs),
    /// Print a table (e1, dl, thom, conf, snaith)
    Emit(EmitArgs),
}

#[derive(Subcommand)]
enum OperadCmd {
    /// Associativity, units and equivariance on random cube tuples
    Selftest {
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ConfigCmd {
    /// Largest number of points over a single x
    Multiplicity { file: PathBuf },
    /// Membership in the filtration stage F^[r]
    Filtration {
        #[arg(long)]
        r: usize,
        file: PathBuf,
    },
    /// Push a disk-bundle point into the configuration space
    Exp { file: PathBuf },
}

#[derive(Subcommand)]
enum ScanCmd {
    /// Trace the scanning homotopy on a random relative configuration
    Demo {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 6)]
        points: usize,
    },
}

#[derive(Subcommand)]
enum BarCmd {
    /// Simplicial identities, f∘g = id and the outward retraction
    Check {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum HomologyCmd {
    /// F₂-homology of the unordered configuration space C_n(ℝ^d)
    Conf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Reduced F₂-homology of Th(kφ_{m,r})
    Thom {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
    },
    /// Smith normal form of a dense or sparse integer matrix
    Snf { file: PathBuf },
    /// Homology of a chain complex
    Complex { file: PathBuf },
}

#[derive(Subcommand)]
enum SpectralCmd {
    E1 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    Snaith {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    Cells {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r_max: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    max_rank: Option<usize>,
    /// Case count for every randomized suite
    #[arg(long)]
    cases: Option<usize>,
    /// JSON run configuration; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct EmitArgs {
    table: String,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 5)]
    max_rank: usize,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("LOOPCELL_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Input(format!(
            "LOOPCELL_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(CliError::input)
}

fn dispatch(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Operad(OperadCmd::Selftest { cases, seed }) => {
            let cfg = RunConfig {
                seed,
                operad_cases: cases.max(1),
                ..RunConfig::default()
            };
            let r = verify::operad_suite(&cfg);
            Ok(Output::json(&r, r.passed))
        }
        Command::Config(c) => config_cmd(c),
        Command::Scan(ScanCmd::Demo {
            k,
            m,
            seed,
            steps,
            points,
        }) => scan_demo(k, m, seed, steps, points),
        Command::Bar(BarCmd::Check { k, cases, seed }) => {
            if k.is_some_and(|k| !(1..=2).contains(&k)) {
                return Err(CliError::Input("bar check supports k = 1 or 2".into()));
            }
            let cfg = RunConfig {
                seed,
                bar_cases: cases.max(1),
                ..RunConfig::default()
            };
            let r = verify::bar_suite_for(&cfg, k);
            Ok(Output::json(&r, r.passed))
        }
        Command::Homology(h) => homology_cmd(h),
        Command::Spectral(s) => spectral_cmd(s),
        Command::Verify(args) => verify_cmd(args),
        Command::Emit(a) => {
            let p = Params {
                k: a.k,
                m: a.m,
                n: a.n,
                d: a.d,
                r: a.r,
                max_rank: a.max_rank,
                max_degree: a.max_degree,
            };
            Ok(Output::ok(table::build(&a.table, &p)?.render(a.format)))
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn config_cmd(cmd: ConfigCmd) -> Result<Output, CliError> {
    match cmd {
        ConfigCmd::Multiplicity { file } => {
            let c = Configuration::try_from(read_json::<ConfigurationJson>(&file)?)
                .map_err(CliError::input)?;
            Ok(Output::json(
                &json!({"points": c.len(), "multiplicity": c.fiber_multiplicity()}),
                true,
            ))
        }
        ConfigCmd::Filtration { r, file } => {
            let c = Configuration::try_from(read_json::<ConfigurationJson>(&file)?)
                .map_err(CliError::input)?;
            let inside = c.in_filtration(FiltrationIndex(r));
            Ok(Output::json(
                &json!({"r": r, "multiplicity": c.fiber_multiplicity(), "in_filtration": inside}),
                true,
            ))
        }
        ConfigCmd::Exp { file } => {
            let p = TubularPoint::try_from(read_json::<TubularJson>(&file)?)
                .map_err(CliError::input)?;
            let c = p.exp_tubular().map_err(CliError::input)?;
            Ok(Output::json(
                &json!({
                    "membership": p.sphere_disk_membership(),
                    "multiplicity": c.fiber_multiplicity(),
                    "configuration": ConfigurationJson::from(c),
                }),
                true,
            ))
        }
    }
}

#[derive(Serialize)]
struct ScanStep {
    t: String,
    multiplicity: usize,
    points: RelConfigJson,
}

fn scan_demo(
    k: usize,
    m: usize,
    seed: u64,
    steps: usize,
    points: usize,
) -> Result<Output, CliError> {
    if k == 0 || m == 0 || steps == 0 {
        return Err(CliError::Input("k, m and steps must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // several points per y-fiber, so the push has something to separate
    let xs = gen::distinct_points(&mut rng, k, points, 16);
    let ys = gen::distinct_points(&mut rng, m, points.div_ceil(2).max(1), 16);
    let pts = xs
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x, ys[i % ys.len()].clone()))
        .collect();
    let xi = RelConfig::new(k, m, pts).map_err(CliError::input)?;
    let start = xi.fiber_multiplicity();
    let mut trace = Vec::with_capacity(steps + 1);
    let mut monotone = true;
    for i in 0..=steps {
        let t = rat(i as i64, steps as i64);
        let h = scan_homotopy(&t, &xi).map_err(|e| CliError::Failed(e.to_string()))?;
        monotone &= h.fiber_multiplicity() <= start;
        trace.push(ScanStep {
            t: format_rational(&t),
            multiplicity: h.fiber_multiplicity(),
            points: h.into(),
        });
    }
    let end = collapse(&xi).map_err(|e| CliError::Failed(e.to_string()))?;
    let out = json!({
        "k": k,
        "m": m,
        "seed": seed,
        "eta": eta(&xi).map(|e| format_rational(&e)),
        "monotone": monotone,
        "collapsed_points": end.len(),
        "steps": trace,
    });
    Ok(Output::json(&out, monotone))
}

/// Dense rows, or the sparse `{rows, cols, entries}` form.
#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Dense(Vec<Vec<i64>>),
    DenseObject { matrix: Vec<Vec<i64>> },
    Sparse(SparseMatrixJson),
}

fn homology_cmd(cmd: HomologyCmd) -> Result<Output, CliError> {
    match cmd {
        HomologyCmd::Conf { n, d } => {
            let c = config_complex(n, d).map_err(CliError::input)?;
            let cells: Vec<usize> = (0..c.len()).map(|i| c.rank(i)).collect();
            let h = homology(&c);
            Ok(Output::json(
                &json!({"n": n, "d": d, "coefficients": "F2", "cells": cells, "betti": h.betti}),
                true,
            ))
        }
        HomologyCmd::Thom {
            k,
            m,
            r,
            max_degree,
        } => {
            let t = thom_dims(k, m, r, max_degree).map_err(CliError::input)?;
            Ok(Output::json(
                &json!({
                    "k": k,
                    "m": m,
                    "r": r,
                    "max_degree": max_degree,
                    "orientable": orientable(k, m, r),
                    "dims": t.dims.iter().map(|(q, d)| json!({"degree": q, "dim": d})).collect::<Vec<_>>(),
                }),
                true,
            ))
        }
        HomologyCmd::Snf { file } => {
            let dense = match read_json::<MatrixInput>(&file)? {
                MatrixInput::Dense(rows) | MatrixInput::DenseObject { matrix: rows } => {
                    IntMatrix::from_rows(rows).map_err(CliError::input)?
                }
                MatrixInput::Sparse(j) => SparseMatrix::try_from(j)
                    .map_err(CliError::input)?
                    .to_dense(),
            };
            let f = smith_normal_form(&dense);
            let round_trip = f.u.mul(&dense).mul(&f.v) == f.s;
            let unimodular = f.u.is_unimodular() && f.v.is_unimodular();
            let out = json!({
                "rows": dense.rows(),
                "cols": dense.cols(),
                "rank": f.rank(),
                "invariant_factors": f.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "round_trip": round_trip,
                "unimodular": unimodular,
            });
            Ok(Output::json(&out, round_trip && unimodular))
        }
        HomologyCmd::Complex { file } => {
            let c = ChainComplex::from_json(read_json::<ChainComplexJson>(&file)?)
                .map_err(CliError::input)?;
            let h = homology(&c);
            let torsion: Vec<Vec<String>> = h
                .torsion
                .iter()
                .map(|t| t.iter().map(|d| d.to_string()).collect())
                .collect();
            Ok(Output::json(
                &json!({"coefficients": h.coefficients, "betti": h.betti, "torsion": torsion}),
                true,
            ))
        }
    }
}

fn spectral_cmd(cmd: SpectralCmd) -> Result<Output, CliError> {
    match cmd {
        SpectralCmd::E1 {
            k,
            m,
            max_rank,
            max_degree,
            format,
        } => {
            let page = e1_page(k, m, max_rank, max_degree).map_err(CliError::input)?;
            Ok(Output::ok(table::e1_table(&page).render(format)))
        }
        SpectralCmd::Snaith {
            k,
            m,
            max_degree,
            format,
        } => {
            let r = snaith_check(k, m, max_degree).map_err(CliError::input)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&r).expect("reports serialize") + "\n",
                Format::Tsv => table::snaith_table(&r).render(Format::Tsv),
            };
            Ok(Output {
                text,
                passed: r.passed,
            })
        }
        SpectralCmd::Cells { k, m, r_max } => {
            if k == 0 || m == 0 {
                return Err(CliError::Input("k and m must be positive".into()));
            }
            // top degree of Th(kφ_{m,r}) is (k + m - 1)(r - 1)
            let d_max = (k + m - 1) * r_max.saturating_sub(1);
            let c = cell_report(k, m, r_max, d_max).map_err(CliError::input)?;
            let single = c.single_cells();
            let passed = m != 1 || single;
            Ok(Output::json(
                &json!({"k": k, "m": m, "single_cells": single, "stages": c.stages}),
                passed,
            ))
        }
    }
}

fn verify_cmd(args: VerifyArgs) -> Result<Output, CliError> {
    let mut cfg = match &args.config {
        Some(path) => read_json::<RunConfig>(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(d) = args.max_degree {
        cfg.max_degree = d;
    }
    if let Some(r) = args.max_rank {
        cfg.max_rank = r;
    }
    if let Some(n) = args.cases {
        cfg.operad_cases = n;
        cfg.filtration_cases = n;
        cfg.tubular_cases = n;
        cfg.bar_cases = n;
        cfg.scan_cases = n;
        cfg.snf_cases = n;
    }
    let format = args.format.unwrap_or(match cfg.format {
        verify::Format::Json => Format::Json,
        verify::Format::Tsv => Format::Tsv,
    });
    cfg.validate().map_err(CliError::input)?;
    // suites run concurrently; collect keeps report order
    let suites = SUITES.par_iter().map(|(_, f)| f(&cfg)).collect();
    let report = Report {
        seed: cfg.seed,
        suites,
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Tsv => report.to_text(),
    };
    Ok(Output {
        text,
        passed: report.passed(),
    })
}
