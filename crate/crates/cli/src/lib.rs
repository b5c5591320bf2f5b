//! Commands behind the `trotopt` binary.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use trotopt::par::{self, Exec};
use trotopt::verify::{self, equivalent_up_to_phase, unitary_of_circuit};
use trotopt::{optimize_circuit, parse_qc, t_count_reduction, Circuit, OptimizeStats, Optimized, OutputMode};
use walkdir::WalkDir;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;

pub const VERIFY_CAP_ENV: &str = "T_ROT_OPT_VERIFY_CAP";
/// Verification runs by default up to this many qubits.
pub const DEFAULT_VERIFY_CAP: usize = 6;

pub fn read_circuit(path: &Path) -> Result<Circuit> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_qc(&text).with_context(|| format!("parsing {}", path.display()))
}

/// `Some(equivalent)` if the oracle ran, `None` if the circuits are too wide.
pub fn check_equivalent(a: &Circuit, b: &Circuit, cap: usize) -> Result<Option<bool>> {
    if a.num_qubits() != b.num_qubits() {
        anyhow::bail!("circuits act on {} and {} qubits", a.num_qubits(), b.num_qubits());
    }
    if a.num_qubits() > cap {
        return Ok(None);
    }
    let ua = unitary_of_circuit(a, cap)?;
    let ub = unitary_of_circuit(b, cap)?;
    Ok(Some(equivalent_up_to_phase(&ua, &ub, verify::DEFAULT_TOLERANCE)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeReport {
    pub qubits: usize,
    pub mode: &'static str,
    pub t_before: usize,
    pub t_after: usize,
    pub cnot_before: usize,
    pub cnot_after: usize,
    pub reduction_percent: f64,
    /// `None` when verification was skipped.
    pub verified: Option<bool>,
    #[serde(flatten)]
    pub stats: OptimizeStats,
}

pub fn mode_name(mode: OutputMode) -> &'static str {
    match mode {
        OutputMode::InPlace => "inplace",
        OutputMode::Resynth => "resynth",
    }
}

pub fn optimize_report(
    c: &Circuit,
    mode: OutputMode,
    verify_cap: Option<usize>,
) -> Result<(Optimized, OptimizeReport)> {
    let out = optimize_circuit(c, mode)?;
    let before = out.expanded.counts();
    let after = out.circuit.counts();
    let verified = match verify_cap {
        Some(cap) => check_equivalent(c, &out.circuit, cap)?,
        None => None,
    };
    let report = OptimizeReport {
        qubits: c.num_qubits(),
        mode: mode_name(mode),
        t_before: before.t_count,
        t_after: after.t_count,
        cnot_before: before.cnot_count,
        cnot_after: after.cnot_count,
        reduction_percent: round2(t_count_reduction(&out.expanded, &out.circuit).percent),
        verified,
        stats: out.stats,
    };
    Ok((out, report))
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// One row of the bench CSV. Numeric cells are empty for files that failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub name: String,
    pub cnot_before: Option<usize>,
    pub t_before: Option<usize>,
    pub cnot_after: Option<usize>,
    pub t_after: Option<usize>,
    pub reduction_percent: Option<String>,
    pub wall_time_ms: Option<String>,
    pub status: String,
}

impl BenchRow {
    fn aggregate(name: &str, percent: f64) -> Self {
        BenchRow {
            name: name.to_string(),
            cnot_before: None,
            t_before: None,
            cnot_after: None,
            t_after: None,
            reduction_percent: Some(format!("{percent:.2}")),
            wall_time_ms: None,
            status: "aggregate".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    /// Per-file rows sorted by name.
    pub rows: Vec<BenchRow>,
    pub reductions: Vec<f64>,
}

impl BenchReport {
    pub fn average_reduction(&self) -> f64 {
        if self.reductions.is_empty() {
            return 0.0;
        }
        self.reductions.iter().sum::<f64>() / self.reductions.len() as f64
    }

    pub fn max_reduction(&self) -> f64 {
        self.reductions.iter().copied().fold(0.0, f64::max)
    }

    /// Columns: name, cnot_before, t_before, cnot_after, t_after,
    /// reduction_percent, wall_time_ms, status. The last two rows are
    /// `average` and `maximum`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.serialize(BenchRow::aggregate("average", self.average_reduction()))?;
        w.serialize(BenchRow::aggregate("maximum", self.max_reduction()))?;
        w.flush()?;
        Ok(())
    }
}

fn bench_file(root: &Path, path: &Path, mode: OutputMode) -> (BenchRow, Option<f64>) {
    let name = path.strip_prefix(root).unwrap_or(path).to_string_lossy().into_owned();
    let start = Instant::now();
    let result = read_circuit(path).and_then(|c| Ok(optimize_circuit(&c, mode)?));
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(out) => {
            let before = out.expanded.counts();
            let after = out.circuit.counts();
            let percent = t_count_reduction(&out.expanded, &out.circuit).percent;
            let row = BenchRow {
                name,
                cnot_before: Some(before.cnot_count),
                t_before: Some(before.t_count),
                cnot_after: Some(after.cnot_count),
                t_after: Some(after.t_count),
                reduction_percent: Some(format!("{percent:.2}")),
                wall_time_ms: Some(format!("{elapsed:.3}")),
                status: "ok".to_string(),
            };
            (row, Some(percent))
        }
        Err(e) => {
            let row = BenchRow {
                name,
                cnot_before: None,
                t_before: None,
                cnot_after: None,
                t_after: None,
                reduction_percent: None,
                wall_time_ms: None,
                status: format!("warning: {:#}", e),
            };
            (row, None)
        }
    }
}

/// Optimizes every `.qc` file under `dir`, one file per task.
pub fn bench_dir(dir: &Path, mode: OutputMode, exec: Exec) -> Result<BenchReport> {
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in WalkDir::new(dir) {
        let entry = entry.with_context(|| format!("walking {}", dir.display()))?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|e| e == "qc") {
            files.push(entry.into_path());
        }
    }
    files.sort();
    let results = par::map(exec, &files, |p| bench_file(dir, p, mode));
    let reductions = results.iter().filter_map(|(_, r)| *r).collect();
    let rows = results.into_iter().map(|(row, _)| row).collect();
    Ok(BenchReport { rows, reductions })
}
