//! Random workloads: Paulis, Clifford tableaux and Clifford+T circuits.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::pauli::{Pauli, PauliProduct, Sign};
use crate::tableau::CliffordTableau;

const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

fn distinct<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, n, k).into_vec()
}

/// Uniform signed Pauli product; may be the identity.
pub fn random_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliProduct {
    let letters: Vec<Pauli> = (0..n).map(|_| LETTERS[rng.gen_range(0..4)]).collect();
    let sign = if rng.gen() { Sign::Minus } else { Sign::Plus };
    PauliProduct::from_letters(sign, &letters)
}

pub fn random_nontrivial_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliProduct {
    loop {
        let p = random_pauli(rng, n);
        if !p.is_identity() {
            return p;
        }
    }
}

pub fn random_clifford_gate<R: Rng>(rng: &mut R, n: usize) -> Gate {
    use GateKind::*;
    let singles = [H, S, Sdg, X, Y, Z];
    let doubles = [Cnot, Cz, Swap];
    if n >= 2 && rng.gen_bool(0.4) {
        let q = distinct(rng, n, 2);
        Gate::two(*doubles.choose(rng).unwrap(), q[0], q[1])
    } else {
        Gate::one(*singles.choose(rng).unwrap(), rng.gen_range(0..n))
    }
}

pub fn random_clifford_circuit<R: Rng>(rng: &mut R, n: usize, len: usize) -> Circuit {
    let gates = (0..len).map(|_| random_clifford_gate(rng, n)).collect();
    Circuit::from_gates(n, gates).expect("generated gates are valid")
}

pub fn random_tableau<R: Rng>(rng: &mut R, n: usize, len: usize) -> CliffordTableau {
    CliffordTableau::from_circuit(&random_clifford_circuit(rng, n, len)).expect("clifford circuit")
}

/// `m` pairwise commuting, independent signed Paulis on `n >= m` qubits.
pub fn random_commuting_independent_set<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<PauliProduct> {
    assert!(m <= n);
    let c = random_tableau(rng, n, 8 * n + 4);
    (0..m)
        .map(|j| {
            let p = c.conjugate(&PauliProduct::z_on(n, j)).expect("matching size");
            if rng.gen() {
                p.negated()
            } else {
                p
            }
        })
        .collect()
}

/// Gate mix for [`random_clifford_t_circuit`].
#[derive(Debug, Clone, Copy)]
pub struct CircuitMix {
    /// Probability of a T or T* gate.
    pub t: f64,
    /// Probability of an H gate.
    pub h: f64,
    /// Probability of a CCZ or Toffoli, when there are three qubits.
    pub three_qubit: f64,
}

impl Default for CircuitMix {
    fn default() -> Self {
        CircuitMix {
            t: 0.35,
            h: 0.1,
            three_qubit: 0.05,
        }
    }
}

pub fn random_clifford_t_circuit<R: Rng>(rng: &mut R, n: usize, len: usize, mix: CircuitMix) -> Circuit {
    let mut gates = Vec::with_capacity(len);
    for _ in 0..len {
        let r: f64 = rng.gen();
        let g = if r < mix.t {
            let kind = if rng.gen_bool(0.7) { GateKind::T } else { GateKind::Tdg };
            Gate::one(kind, rng.gen_range(0..n))
        } else if r < mix.t + mix.h {
            Gate::one(GateKind::H, rng.gen_range(0..n))
        } else if n >= 3 && r < mix.t + mix.h + mix.three_qubit {
            let q = distinct(rng, n, 3);
            let kind = if rng.gen() { GateKind::Ccz } else { GateKind::Toffoli };
            Gate::new(kind, q)
        } else {
            random_clifford_gate(rng, n)
        };
        gates.push(g);
    }
    Circuit::from_gates(n, gates).expect("generated gates are valid")
}

/// `m` non-identity signed Paulis.
pub fn random_rotation_axes<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<PauliProduct> {
    (0..m).map(|_| random_nontrivial_pauli(rng, n)).collect()
}
