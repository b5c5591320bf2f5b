//! T-count and T-depth optimization of Clifford+T circuits.
//!
//! Every T gate is rewritten as a π/4 rotation `R(P) = exp(-iπ/8 P)` about a
//! signed Pauli product `P` (up to phase), with all Clifford gates pushed to
//! the end of the circuit. Rotations about the same axis that meet through
//! commuting neighbours cancel or merge into a Clifford, and the
//! anticommutation DAG of the remaining rotations gives the T-depth.

pub mod circuit;
pub mod error;
pub mod gen;
pub mod optimizer;
pub mod par;
pub mod pauli;
pub mod rotations;
pub mod samples;
pub mod tableau;
pub mod tgraph;
pub mod verify;

pub use circuit::{parse_qc, write_qc, Circuit, Gate, GateCounts, GateKind};
pub use error::{Error, Result};
pub use optimizer::{optimize, optimize_circuit, t_count_reduction, OptimizeStats, Optimized, OutputMode};
pub use par::Exec;
pub use pauli::{Pauli, PauliProduct, Sign};
pub use rotations::{
    apply_edit_plan, from_rotation_form_resynth, to_rotation_form, Edit, EditPlan, Rotation, RotationForm,
};
pub use tableau::CliffordTableau;
pub use tgraph::{LayerSchedule, Placement, TGraph};
