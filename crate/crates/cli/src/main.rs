//! `optima`: plan a region, solve a TSPLIB instance, benchmark the solvers
//! or serve the planning API.
//!
//! Exit codes: 0 success, 1 domain or I/O error, 2 usage error.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand};
use optima_core::planner::{build_plan_with, PlanParams};
use optima_core::region::load_region;
use optima_core::tsp::{
    format_table, load_optima, parse_tsplib, percent_gap, run_benchmark, tsp_files_in, write_csv,
    BenchConfig, BenchInstance, LocalSearchOptions, SolverKind,
};
use optima_service::{Store, DEFAULT_BIND_ADDR, DEFAULT_DATA_DIR};

#[derive(Debug, Parser)]
#[command(name = "optima", version, about = "Relief-distribution planning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a distribution plan for a region file.
    Plan {
        region: PathBuf,
        /// Number of delivery trucks (territories).
        #[arg(long, value_parser = parse_positive)]
        trucks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "local_search", value_parser = parse_solver)]
        solver: SolverKind,
        /// Plan file to write; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Wall-clock cap per tour for local search, in seconds.
        #[arg(long, default_value_t = 10.0, value_parser = parse_budget)]
        budget_s: f64,
    },
    /// Solve one TSPLIB instance and print the tour.
    SolveTsp {
        instance: PathBuf,
        #[arg(long, default_value = "local_search", value_parser = parse_solver)]
        solver: SolverKind,
        /// Start node as a 1-based TSPLIB node id.
        #[arg(long, default_value_t = 1, value_parser = parse_positive)]
        start: usize,
        #[arg(long, default_value_t = 10.0, value_parser = parse_budget)]
        budget_s: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Known optimal tour length; adds a percent-gap line.
        #[arg(long)]
        optimum: Option<i64>,
    },
    /// Run every solver on every .tsp file in a directory.
    Bench {
        instances_dir: PathBuf,
        /// JSON object mapping instance name to optimal tour length.
        #[arg(long)]
        optima_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = parse_positive)]
        reps: usize,
        /// CSV report path.
        #[arg(long, default_value = "bench.csv")]
        out: PathBuf,
        #[arg(long, default_value_t = 10.0, value_parser = parse_budget)]
        budget_s: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Serve the planning API until interrupted.
    Serve {
        #[arg(long, env = "OPTIMA_BIND_ADDR", default_value = DEFAULT_BIND_ADDR)]
        bind: SocketAddr,
        #[arg(long, env = "OPTIMA_DATA_DIR", default_value = DEFAULT_DATA_DIR)]
        data_dir: PathBuf,
    },
}

fn parse_solver(s: &str) -> Result<SolverKind, String> {
    s.parse().map_err(|e: optima_core::Error| e.to_string())
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        Ok(_) => Err("must be at least 1".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_budget(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("{s:?} is not a positive number of seconds")),
    }
}

type CmdResult = Result<(), String>;

/// Writes to standard output; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> CmdResult {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
        _ => Ok(()),
    }
}

fn with_path(path: &Path) -> impl Fn(optima_core::Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn open(path: &Path) -> Result<File, String> {
    File::open(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_plan(
    region_path: &Path,
    params: PlanParams,
    out: Option<&Path>,
    budget: Duration,
) -> CmdResult {
    let region = load_region(open(region_path)?).map_err(with_path(region_path))?;
    let options = LocalSearchOptions {
        time_budget: budget,
        ..LocalSearchOptions::with_seed(params.seed)
    };
    let plan = build_plan_with(&region, &params, &options).map_err(|e| e.to_string())?;
    let doc = plan.to_json_pretty();

    match out {
        Some(path) => {
            std::fs::write(path, &doc).map_err(|e| format!("{}: {e}", path.display()))?;
            let mut summary = format!(
                "warehouses: {}\nservice cost: {:.1} m\n",
                plan.warehouses.len(),
                plan.service_cost_m
            );
            for c in &plan.clusters {
                let _ = writeln!(
                    summary,
                    "truck {}: {} warehouses, tour {:.1} m",
                    c.truck,
                    c.warehouses.len(),
                    c.tour_cost_m
                );
            }
            let _ = writeln!(summary, "plan written to {}", path.display());
            emit(&summary)?;
        }
        None => {
            emit(&doc)?;
            eprintln!(
                "warehouses: {}, service cost: {:.1} m, tours: {}",
                plan.warehouses.len(),
                plan.service_cost_m,
                plan.clusters
                    .iter()
                    .map(|c| format!("{:.1} m", c.tour_cost_m))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
    }
    Ok(())
}

fn cmd_solve_tsp(
    path: &Path,
    solver: SolverKind,
    start: usize,
    optimum: Option<i64>,
    options: &LocalSearchOptions,
) -> CmdResult {
    let mut inst = parse_tsplib(open(path)?).map_err(with_path(path))?;
    inst.known_optimum = optimum.or(inst.known_optimum);
    if start >= inst.n {
        return Err(format!("--start {} is outside 1..={}", start + 1, inst.n));
    }
    let t0 = std::time::Instant::now();
    let tour = solver
        .solve(&inst.matrix(), start, options)
        .map_err(|e| e.to_string())?;
    let elapsed = t0.elapsed().as_secs_f64();
    let ids: Vec<String> = tour.order.iter().map(|v| (v + 1).to_string()).collect();
    let mut out = format!(
        "instance: {} (n={})\nsolver: {solver}\ncost: {}\n",
        inst.name, inst.n, tour.cost
    );
    if let Some(opt) = inst.known_optimum {
        let gap = percent_gap(tour.cost as f64, opt as f64).map_err(|e| e.to_string())?;
        let _ = writeln!(out, "gap: {gap:.2}%");
    }
    let _ = writeln!(out, "runtime_s: {elapsed:.3}\ntour: {}", ids.join(" "));
    emit(&out)
}

fn cmd_bench(
    dir: &Path,
    optima_file: Option<&Path>,
    config: &BenchConfig,
    out: &Path,
) -> CmdResult {
    let optima = match optima_file {
        Some(p) => load_optima(open(p)?).map_err(with_path(p))?,
        None => Default::default(),
    };
    let instances: Vec<BenchInstance> = tsp_files_in(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .into_iter()
        .map(|path| {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            BenchInstance {
                known_optimum: optima.get(&stem).copied(),
                path,
            }
        })
        .collect();
    if instances.is_empty() {
        return Err(format!("no .tsp files in {}", dir.display()));
    }
    let report = run_benchmark(&instances, config);
    let file = File::create(out).map_err(|e| format!("{}: {e}", out.display()))?;
    write_csv(&report, BufWriter::new(file)).map_err(with_path(out))?;
    emit(&format!(
        "{}report written to {}\n",
        format_table(&report),
        out.display()
    ))?;
    if report.failures.is_empty() {
        Ok(())
    } else {
        Err(format!(
            "{} of {} instances failed",
            report.failures.len(),
            instances.len()
        ))
    }
}

fn cmd_serve(bind: SocketAddr, data_dir: &Path) -> CmdResult {
    let store = Store::open(data_dir).map_err(|e| format!("{}: {e}", data_dir.display()))?;
    let runtime = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(bind)
            .await
            .map_err(|e| format!("cannot bind {bind}: {e}"))?;
        let addr = listener.local_addr().map_err(|e| e.to_string())?;
        emit(&format!("listening on http://{addr}\n"))?;
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        optima_service::serve(listener, Arc::new(store), shutdown)
            .await
            .map_err(|e| e.to_string())
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Plan {
            region,
            trucks,
            seed,
            solver,
            out,
            budget_s,
        } => cmd_plan(
            &region,
            PlanParams {
                k_trucks: trucks,
                seed,
                solver,
            },
            out.as_deref(),
            Duration::from_secs_f64(budget_s),
        ),
        Command::SolveTsp {
            instance,
            solver,
            start,
            budget_s,
            seed,
            optimum,
        } => {
            let options = LocalSearchOptions {
                time_budget: Duration::from_secs_f64(budget_s),
                ..LocalSearchOptions::with_seed(seed)
            };
            cmd_solve_tsp(&instance, solver, start - 1, optimum, &options)
        }
        Command::Bench {
            instances_dir,
            optima_file,
            reps,
            out,
            budget_s,
            seed,
        } => {
            let config = BenchConfig {
                repetitions: reps,
                local_search: LocalSearchOptions {
                    time_budget: Duration::from_secs_f64(budget_s),
                    ..LocalSearchOptions::with_seed(seed)
                },
                ..BenchConfig::default()
            };
            cmd_bench(&instances_dir, optima_file.as_deref(), &config, &out)
        }
        Command::Serve { bind, data_dir } => {
            tracing_subscriber::fmt()
                .with_writer(std::io::stderr)
                .with_env_filter(
                    tracing_subscriber::EnvFilter::try_from_default_env()
                        .unwrap_or_else(|_| "info".into()),
                )
                .init();
            cmd_serve(bind, &data_dir)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
