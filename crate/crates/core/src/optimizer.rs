//! T-count reduction by cancelling and merging rotations that meet through
//! commuting neighbours.
//!
//! Rotations are inserted in application order. Each new axis is compared
//! against the processed list from the most recent entry backwards, stopping
//! at the first anticommuting axis. `R(P) R(-P) = I` deletes both gates;
//! `R(P) R(P) = R(P)^2` turns the earlier gate into S and deletes the later.
//! The Clifford `R(P)^2` left behind conjugates every later axis, so those are
//! mapped through a frame tableau before comparison.

use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::Result;
use crate::rotations::{self, Edit, EditPlan, Rotation, RotationForm};
use crate::tableau::CliffordTableau;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OptimizeStats {
    pub rotations_in: usize,
    pub rotations_out: usize,
    pub cancellations: usize,
    pub merges: usize,
    /// Pairwise axis comparisons made while scanning.
    pub comparisons: usize,
}

impl OptimizeStats {
    pub fn reductions(&self) -> usize {
        self.cancellations + self.merges
    }
}

/// Returns the surviving rotations with the merge Cliffords folded into the
/// tail, the in-place edits that realize the same reduction on the source
/// circuit, and counters.
pub fn optimize(rf: &RotationForm) -> (RotationForm, EditPlan, OptimizeStats) {
    let n = rf.num_qubits();
    let mut stats = OptimizeStats {
        rotations_in: rf.t_count(),
        ..Default::default()
    };
    let mut plan = EditPlan::new();
    let mut processed: Vec<Rotation> = Vec::with_capacity(rf.t_count());
    // Inverse of the accumulated merge Cliffords.
    let mut frame = CliffordTableau::identity(n);
    let mut record = |origin: Option<usize>, edit: Edit| {
        if let Some(i) = origin {
            plan.set(i, edit);
        }
    };

    for r in rf.rotations() {
        let p = frame.conjugate(&r.pauli).expect("rotation matches the form's size");
        let mut partner = None;
        for j in (0..processed.len()).rev() {
            stats.comparisons += 1;
            let q = &processed[j].pauli;
            if q.same_axis(&p) {
                partner = Some(j);
                break;
            }
            if !q.commutes_with(&p) {
                break;
            }
        }
        let Some(j) = partner else {
            processed.push(Rotation::new(p, r.origin));
            continue;
        };
        let earlier = processed.remove(j);
        if earlier.pauli.sign() != p.sign() {
            stats.cancellations += 1;
            record(earlier.origin, Edit::Delete);
            record(r.origin, Edit::Delete);
        } else {
            stats.merges += 1;
            record(earlier.origin, Edit::ReplaceWithS);
            record(r.origin, Edit::Delete);
            frame.apply_squared_rotation(&p, true);
        }
    }

    stats.rotations_out = processed.len();
    let tail = rf
        .tail()
        .compose(&frame.invert())
        .expect("frame matches the form's size");
    let out = RotationForm::new(processed, tail, rf.source().clone()).expect("sizes preserved");
    (out, plan, stats)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputMode {
    /// Delete or replace T gates where they stand.
    #[default]
    InPlace,
    /// Rebuild the circuit from the surviving rotations and tail.
    Resynth,
}

impl std::str::FromStr for OutputMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "inplace" | "in-place" => Ok(OutputMode::InPlace),
            "resynth" => Ok(OutputMode::Resynth),
            _ => Err(format!("unknown mode {s:?}, expected inplace or resynth")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Optimized {
    /// The expanded input the plan refers to.
    pub expanded: Circuit,
    pub circuit: Circuit,
    pub form: RotationForm,
    pub plan: EditPlan,
    pub stats: OptimizeStats,
}

/// Expands, optimizes and rebuilds a circuit.
pub fn optimize_circuit(c: &Circuit, mode: OutputMode) -> Result<Optimized> {
    let expanded = c.expand();
    let rf = rotations::to_rotation_form(&expanded)?;
    let (form, plan, stats) = optimize(&rf);
    let circuit = match mode {
        OutputMode::InPlace => rotations::apply_edit_plan(&expanded, &plan)?,
        OutputMode::Resynth => rotations::from_rotation_form_resynth(&form)?,
    };
    Ok(Optimized {
        expanded,
        circuit,
        form,
        plan,
        stats,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TCountReduction {
    pub t_before: usize,
    pub t_after: usize,
    /// Reduction as a percentage, 0 to 100.
    pub percent: f64,
}

pub fn t_count_reduction(before: &Circuit, after: &Circuit) -> TCountReduction {
    let t_before = before.counts().t_count;
    let t_after = after.counts().t_count;
    let percent = if t_before == 0 {
        0.0
    } else {
        100.0 * (t_before as f64 - t_after as f64) / t_before as f64
    };
    TCountReduction {
        t_before,
        t_after,
        percent,
    }
}
