//! Circuits as a product of π/4 Pauli rotations followed by one Clifford.
//!
//! Gates listed first act first. A T gate on qubit `q` preceded by the
//! Clifford prefix `C` is rewritten as `C · R(C† Z_q C)`, so every Clifford
//! drifts to the end of the circuit and `U = tail ∘ R(P_m) ∘ ... ∘ R(P_1)`
//! up to global phase.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::pauli::PauliProduct;
use crate::tableau::CliffordTableau;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    pub pauli: PauliProduct,
    /// Index of the T or T* gate this came from, if any.
    pub origin: Option<usize>,
}

impl Rotation {
    pub fn new(pauli: PauliProduct, origin: Option<usize>) -> Self {
        Rotation { pauli, origin }
    }

    pub fn synthetic(pauli: PauliProduct) -> Self {
        Rotation { pauli, origin: None }
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.origin {
            Some(i) => write!(f, "{} @{}", self.pauli, i),
            None => write!(f, "{} @-", self.pauli),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RotationForm {
    n: usize,
    rotations: Vec<Rotation>,
    tail: CliffordTableau,
    source: Arc<Circuit>,
}

impl RotationForm {
    pub fn new(rotations: Vec<Rotation>, tail: CliffordTableau, source: Arc<Circuit>) -> Result<Self> {
        let n = tail.num_qubits();
        if source.num_qubits() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: source.num_qubits(),
            });
        }
        if let Some(r) = rotations.iter().find(|r| r.pauli.num_qubits() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: r.pauli.num_qubits(),
            });
        }
        Ok(RotationForm {
            n,
            rotations,
            tail,
            source,
        })
    }

    /// Rotations only, with an identity tail and an empty source circuit.
    pub fn from_paulis(n: usize, paulis: impl IntoIterator<Item = PauliProduct>) -> Result<Self> {
        let rotations = paulis
            .into_iter()
            .enumerate()
            .map(|(i, p)| Rotation::new(p, Some(i)))
            .collect();
        Self::new(rotations, CliffordTableau::identity(n), Arc::new(Circuit::new(n)))
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rotations(&self) -> &[Rotation] {
        &self.rotations
    }

    pub fn paulis(&self) -> Vec<PauliProduct> {
        self.rotations.iter().map(|r| r.pauli.clone()).collect()
    }

    pub fn tail(&self) -> &CliffordTableau {
        &self.tail
    }

    pub fn source(&self) -> &Arc<Circuit> {
        &self.source
    }

    pub fn t_count(&self) -> usize {
        self.rotations.len()
    }

    /// One rotation per line, `±PAULI @gate_index`.
    pub fn dump(&self) -> String {
        self.rotations.iter().map(|r| format!("{r}\n")).collect()
    }
}

pub fn to_rotation_form(c: &Circuit) -> Result<RotationForm> {
    let n = c.num_qubits();
    // inverse of the Clifford prefix, and the prefix itself
    let mut d = CliffordTableau::identity(n);
    let mut tail = CliffordTableau::identity(n);
    let mut rotations = Vec::new();
    for (i, g) in c.gates().iter().enumerate() {
        match g.kind {
            GateKind::T | GateKind::Tdg => {
                let p = d.conjugate(&PauliProduct::z_on(n, g.qubits[0]))?;
                let p = if g.kind == GateKind::Tdg { p.negated() } else { p };
                rotations.push(Rotation::new(p, Some(i)));
            }
            GateKind::Ccz | GateKind::Toffoli => {
                return Err(Error::UnsupportedGate(format!(
                    "{} must be expanded before conversion",
                    g.kind.name()
                )));
            }
            _ => {
                d.prepend_gate(&g.adjoint())?;
                tail.apply_gate(g)?;
            }
        }
    }
    RotationForm::new(rotations, tail, Arc::new(c.clone()))
}

/// Gates realizing `R(p)`: diagonalize `|p|` onto qubit 0, apply T or T*, undo.
pub fn rotation_gates(p: &PauliProduct) -> Result<Vec<Gate>> {
    if p.is_identity() {
        return Ok(Vec::new());
    }
    let c = CliffordTableau::diagonalizing_gates(&[p.unsigned()])?;
    let kind = if p.sign().is_minus() {
        GateKind::Tdg
    } else {
        GateKind::T
    };
    let mut gates = c.clone();
    gates.push(Gate::one(kind, 0));
    gates.extend(c.iter().rev().map(Gate::adjoint));
    Ok(gates)
}

/// Rebuilds a circuit gate by gate from the rotations and the tail.
/// Correct, but free to change the Clifford part of the circuit.
pub fn from_rotation_form_resynth(rf: &RotationForm) -> Result<Circuit> {
    let mut gates = Vec::new();
    for r in &rf.rotations {
        gates.extend(rotation_gates(&r.pauli)?);
    }
    gates.extend(rf.tail.synthesize().gates().iter().cloned());
    rf.source.with_gates(gates)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Edit {
    Keep,
    Delete,
    /// T becomes S, T* becomes S*.
    ReplaceWithS,
}

/// Per-gate edits to the T and T* gates of a circuit. Unlisted gates are kept.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EditPlan {
    edits: BTreeMap<usize, Edit>,
}

impl EditPlan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, index: usize, edit: Edit) {
        self.edits.insert(index, edit);
    }

    pub fn get(&self, index: usize) -> Edit {
        self.edits.get(&index).copied().unwrap_or(Edit::Keep)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Edit)> + '_ {
        self.edits.iter().map(|(&i, &e)| (i, e))
    }

    pub fn count(&self, edit: Edit) -> usize {
        self.edits.values().filter(|&&e| e == edit).count()
    }

    pub fn is_noop(&self) -> bool {
        self.edits.values().all(|&e| e == Edit::Keep)
    }
}

/// Deletes or replaces T and T* gates in place; every other gate keeps its
/// position relative to the others.
pub fn apply_edit_plan(c: &Circuit, plan: &EditPlan) -> Result<Circuit> {
    for (i, _) in plan.iter() {
        match c.gates().get(i) {
            Some(g) if g.kind.is_t() => {}
            _ => return Err(Error::InvalidPlan(i)),
        }
    }
    let mut gates = Vec::with_capacity(c.len());
    for (i, g) in c.gates().iter().enumerate() {
        match plan.get(i) {
            Edit::Keep => gates.push(g.clone()),
            Edit::Delete => {}
            Edit::ReplaceWithS => {
                let kind = if g.kind == GateKind::T {
                    GateKind::S
                } else {
                    GateKind::Sdg
                };
                gates.push(Gate::new(kind, g.qubits.clone()));
            }
        }
    }
    c.with_gates(gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::verify::{equivalent_up_to_phase, unitary_of_circuit, unitary_of_rotation_form};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use GateKind::*;

    fn p(s: &str) -> PauliProduct {
        s.parse().unwrap()
    }

    fn circ(n: usize, gates: Vec<Gate>) -> Circuit {
        Circuit::from_gates(n, gates).unwrap()
    }

    #[test]
    fn single_t_is_z_rotation() {
        let rf = to_rotation_form(&circ(1, vec![Gate::one(T, 0)])).unwrap();
        assert_eq!(rf.paulis(), vec![p("Z")]);
        assert!(rf.tail().is_identity());
        assert_eq!(rf.dump(), "+Z @0\n");
    }

    #[test]
    fn hth_is_x_rotation() {
        let rf = to_rotation_form(&circ(1, vec![Gate::one(H, 0), Gate::one(T, 0), Gate::one(H, 0)])).unwrap();
        assert_eq!(rf.paulis(), vec![p("X")]);
        assert!(rf.tail().is_identity());
        assert_eq!(rf.rotations()[0].origin, Some(1));
    }

    #[test]
    fn tdg_flips_sign() {
        let rf = to_rotation_form(&circ(2, vec![Gate::two(Cnot, 1, 0), Gate::one(Tdg, 0)])).unwrap();
        assert_eq!(rf.paulis(), vec![p("-ZZ")]);
    }

    #[test]
    fn unexpanded_gates_rejected() {
        let c = circ(3, vec![Gate::new(Ccz, vec![0, 1, 2])]);
        assert!(matches!(to_rotation_form(&c), Err(Error::UnsupportedGate(_))));
    }

    #[test]
    fn rotation_count_equals_t_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let n = rng.gen_range(1..7);
            let c = gen::random_clifford_t_circuit(&mut rng, n, 60, Default::default()).expand();
            let rf = to_rotation_form(&c).unwrap();
            assert_eq!(rf.t_count(), c.counts().t_count);
        }
    }

    #[test]
    fn rotation_form_reproduces_circuit() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..6);
            let c = gen::random_clifford_t_circuit(&mut rng, n, 40, Default::default()).expand();
            let rf = to_rotation_form(&c).unwrap();
            let a = unitary_of_circuit(&c, 10).unwrap();
            let b = unitary_of_rotation_form(&rf, 10).unwrap();
            assert!(equivalent_up_to_phase(&a, &b, 1e-8).unwrap());
            let r = from_rotation_form_resynth(&rf).unwrap();
            let u = unitary_of_circuit(&r, 10).unwrap();
            assert!(equivalent_up_to_phase(&a, &u, 1e-8).unwrap());
            assert_eq!(r.counts().t_count, rf.t_count());
        }
    }

    #[test]
    fn resynth_examples() {
        let empty = RotationForm::from_paulis(2, []).unwrap();
        assert!(from_rotation_form_resynth(&empty).unwrap().is_empty());

        let rf = RotationForm::from_paulis(1, [p("Z")]).unwrap();
        let c = from_rotation_form_resynth(&rf).unwrap();
        assert_eq!(c.counts().t_count, 1);

        let rf = RotationForm::from_paulis(1, [p("-X")]).unwrap();
        let c = from_rotation_form_resynth(&rf).unwrap();
        let htdh = circ(1, vec![Gate::one(H, 0), Gate::one(Tdg, 0), Gate::one(H, 0)]);
        let a = unitary_of_circuit(&c, 10).unwrap();
        let b = unitary_of_circuit(&htdh, 10).unwrap();
        assert!(equivalent_up_to_phase(&a, &b, 1e-10).unwrap());
    }

    #[test]
    fn cz_in_disguise_gives_same_paulis() {
        // H b . CNOT a b . H b  ==  CZ a b
        let disguised = circ(
            2,
            vec![
                Gate::one(T, 0),
                Gate::one(H, 1),
                Gate::two(Cnot, 0, 1),
                Gate::one(H, 1),
                Gate::one(T, 1),
                Gate::one(H, 0),
                Gate::one(T, 0),
            ],
        );
        let plain = circ(
            2,
            vec![
                Gate::one(T, 0),
                Gate::two(Cz, 0, 1),
                Gate::one(T, 1),
                Gate::one(H, 0),
                Gate::one(T, 0),
            ],
        );
        let mut a = to_rotation_form(&disguised).unwrap().paulis();
        let mut b = to_rotation_form(&plain).unwrap().paulis();
        a.sort_by_key(|p| p.to_string());
        b.sort_by_key(|p| p.to_string());
        assert_eq!(a, b);
    }

    #[test]
    fn edit_plan_examples() {
        let c = circ(
            1,
            vec![Gate::one(T, 0), Gate::one(X, 0), Gate::one(T, 0), Gate::one(X, 0)],
        );
        assert_eq!(apply_edit_plan(&c, &EditPlan::new()).unwrap(), c);

        let mut plan = EditPlan::new();
        plan.set(0, Edit::Delete);
        plan.set(2, Edit::Delete);
        let out = apply_edit_plan(&c, &plan).unwrap();
        assert_eq!(out.gates(), &[Gate::one(X, 0), Gate::one(X, 0)]);
        let a = unitary_of_circuit(&c, 10).unwrap();
        let b = unitary_of_circuit(&out, 10).unwrap();
        assert!(equivalent_up_to_phase(&a, &b, 1e-10).unwrap());

        let mut bad = EditPlan::new();
        bad.set(1, Edit::Delete);
        assert_eq!(apply_edit_plan(&c, &bad), Err(Error::InvalidPlan(1)));
        bad = EditPlan::new();
        bad.set(9, Edit::Keep);
        assert_eq!(apply_edit_plan(&c, &bad), Err(Error::InvalidPlan(9)));

        let c = circ(1, vec![Gate::one(Tdg, 0), Gate::one(T, 0)]);
        let mut plan = EditPlan::new();
        plan.set(0, Edit::ReplaceWithS);
        plan.set(1, Edit::ReplaceWithS);
        let out = apply_edit_plan(&c, &plan).unwrap();
        assert_eq!(out.gates(), &[Gate::one(Sdg, 0), Gate::one(S, 0)]);
    }
}
