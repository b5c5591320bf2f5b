use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use trotopt::rotations::to_rotation_form;
use trotopt::tgraph::{layered_circuit, Placement};
use trotopt::{optimize, Exec, GateCounts, OutputMode, TGraph};
use trotopt_cli::*;

#[derive(Parser)]
#[command(
    name = "trotopt",
    version,
    about = "T-count and T-depth optimizer for Clifford+T circuits in .qc format"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce the T-count of a circuit and print statistics as JSON.
    Optimize(OptimizeArgs),
    /// Print gate counts as JSON.
    Stats { input: PathBuf },
    /// Report the T-depth reachable by reordering commuting rotations.
    Tdepth(TdepthArgs),
    /// Check two circuits for equality up to global phase.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = trotopt::verify::DEFAULT_QUBIT_CAP)]
        max_qubits: usize,
    },
    /// Optimize every .qc file under a directory and report as CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Inplace,
    Resynth,
}

impl From<Mode> for OutputMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Inplace => OutputMode::InPlace,
            Mode::Resynth => OutputMode::Resynth,
        }
    }
}

#[derive(Args)]
struct OptimizeArgs {
    input: PathBuf,
    /// Where to write the optimized circuit; stdout if absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "inplace")]
    mode: Mode,
    /// Verify even above the qubit cap (up to the oracle's limit).
    #[arg(long, conflicts_with = "no_verify")]
    verify: bool,
    #[arg(long)]
    no_verify: bool,
    /// Widest circuit verified by default.
    #[arg(long, env = VERIFY_CAP_ENV, default_value_t = DEFAULT_VERIFY_CAP)]
    max_verify_qubits: usize,
}

#[derive(Args)]
struct TdepthArgs {
    input: PathBuf,
    /// Emit the layered circuit, using ancillas to make every layer one T-cycle.
    #[arg(long)]
    ancilla: bool,
    /// Schedule each rotation as late as possible instead of as early.
    #[arg(long)]
    alap: bool,
    /// Skip the T-count pass before layering.
    #[arg(long)]
    no_optimize: bool,
    /// Write the T-graph in Graphviz format.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Where to write the layered circuit; stdout if absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
}

#[derive(Args)]
struct BenchArgs {
    dir: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    report: ReportFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "inplace")]
    mode: Mode,
    /// Process files one at a time.
    #[arg(long)]
    sequential: bool,
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => match io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn print_json<T: Serialize>(value: &T, to_stderr: bool) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    if to_stderr {
        eprint!("{text}");
        Ok(())
    } else {
        emit(None, &text)
    }
}

fn run_optimize(args: OptimizeArgs) -> Result<u8> {
    let c = read_circuit(&args.input)?;
    let n = c.num_qubits();
    let cap = if args.no_verify {
        None
    } else if args.verify {
        Some(args.max_verify_qubits.max(trotopt::verify::DEFAULT_QUBIT_CAP))
    } else if n <= args.max_verify_qubits {
        Some(args.max_verify_qubits)
    } else {
        None
    };
    let (out, report) = optimize_report(&c, args.mode.into(), cap)?;
    if args.verify && report.verified.is_none() {
        eprintln!("warning: {n} qubits is too wide to verify");
    }
    emit(args.output.as_ref(), &out.circuit.to_qc())?;
    print_json(&report, args.output.is_none())?;
    if report.verified == Some(false) {
        eprintln!("error: optimized circuit is not equivalent to the input");
        return Ok(EXIT_VERIFY);
    }
    Ok(EXIT_OK)
}

fn run_stats(input: PathBuf) -> Result<u8> {
    let c = read_circuit(&input)?;
    let expanded = c.expand();
    #[derive(Serialize)]
    struct Stats {
        qubits: usize,
        t_depth: usize,
        input: GateCounts,
        expanded: GateCounts,
    }
    let stats = Stats {
        qubits: c.num_qubits(),
        t_depth: expanded.t_depth(),
        input: c.counts(),
        expanded: expanded.counts(),
    };
    print_json(&stats, false)?;
    Ok(EXIT_OK)
}

fn run_tdepth(args: TdepthArgs) -> Result<u8> {
    let c = read_circuit(&args.input)?.expand();
    let rf = to_rotation_form(&c)?;
    let rf = if args.no_optimize { rf } else { optimize(&rf).0 };
    let graph = TGraph::build(&rf);
    if let Some(p) = &args.dot {
        fs::write(p, graph.to_dot()).with_context(|| format!("writing {}", p.display()))?;
    }
    let placement = if args.alap { Placement::Alap } else { Placement::Asap };
    let layered = layered_circuit(&rf, placement, args.ancilla)?;
    #[derive(Serialize)]
    struct Depth {
        t_count: usize,
        edges: usize,
        t_depth_bound: usize,
        layer_sizes: Vec<usize>,
        ancillas: usize,
        circuit_t_depth: usize,
    }
    let report = Depth {
        t_count: rf.t_count(),
        edges: graph.num_edges(),
        t_depth_bound: layered.bound,
        layer_sizes: layered.schedule.layers.iter().map(Vec::len).collect(),
        ancillas: layered.schedule.ancilla_count,
        circuit_t_depth: layered.circuit.t_depth(),
    };
    if args.ancilla {
        emit(args.output.as_ref(), &layered.circuit.to_qc())?;
    }
    print_json(&report, args.ancilla && args.output.is_none())?;
    Ok(EXIT_OK)
}

fn run_verify(a: PathBuf, b: PathBuf, max_qubits: usize) -> Result<u8> {
    let ca = read_circuit(&a)?;
    let cb = read_circuit(&b)?;
    match check_equivalent(&ca, &cb, max_qubits)? {
        Some(true) => {
            emit(None, "equivalent\n")?;
            Ok(EXIT_OK)
        }
        Some(false) => {
            emit(None, "not equivalent\n")?;
            Ok(EXIT_VERIFY)
        }
        None => anyhow::bail!("{} qubits exceeds the oracle cap of {max_qubits}", ca.num_qubits()),
    }
}

fn run_bench(args: BenchArgs) -> Result<u8> {
    let ReportFormat::Csv = args.report;
    let exec = if args.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let report = bench_dir(&args.dir, args.mode.into(), exec)?;
    let mut buf = Vec::new();
    report.write_csv(&mut buf)?;
    emit(args.output.as_ref(), std::str::from_utf8(&buf)?)?;
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Optimize(args) => run_optimize(args),
        Command::Stats { input } => run_stats(input),
        Command::Tdepth(args) => run_tdepth(args),
        Command::Verify { a, b, max_qubits } => run_verify(a, b, max_qubits),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
