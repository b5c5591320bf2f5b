//! Dependency DAG of rotations, T-depth scheduling and depth-one layers.
//!
//! Rotation `j` must follow rotation `i < j` exactly when their axes
//! anticommute; any topological order of that graph gives the same unitary.
//! The longest path is therefore the least T-depth reachable by commuting
//! rotations past one another.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::pauli::PauliProduct;
use crate::rotations::{Rotation, RotationForm};
use crate::tableau::{gf2_rank, CliffordTableau};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TGraph {
    rotations: Vec<Rotation>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl TGraph {
    pub fn build(rf: &RotationForm) -> TGraph {
        Self::from_rotations(rf.rotations().to_vec(), Exec::default())
    }

    pub fn from_paulis(paulis: Vec<PauliProduct>, exec: Exec) -> TGraph {
        Self::from_rotations(paulis.into_iter().map(Rotation::synthetic).collect(), exec)
    }

    /// Rows of the adjacency relation are computed independently, in parallel
    /// when `exec` allows.
    pub fn from_rotations(rotations: Vec<Rotation>, exec: Exec) -> TGraph {
        let m = rotations.len();
        let succ: Vec<Vec<usize>> = par::map_range(exec, m, |i| {
            let p = &rotations[i].pauli;
            (i + 1..m).filter(|&j| !p.commutes_with(&rotations[j].pauli)).collect()
        });
        let mut pred = vec![Vec::new(); m];
        for (i, out) in succ.iter().enumerate() {
            for &j in out {
                pred[j].push(i);
            }
        }
        TGraph { rotations, succ, pred }
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn rotations(&self) -> &[Rotation] {
        &self.rotations
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.succ.get(i).is_some_and(|s| s.binary_search(&j).is_ok())
    }

    /// All edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Whether `perm` (a list of vertices, first applied first) respects
    /// every edge.
    pub fn is_valid_reordering(&self, perm: &[usize]) -> Result<bool> {
        let m = self.num_vertices();
        let mut pos = vec![usize::MAX; m];
        if perm.len() != m {
            return Err(Error::NotAPermutation(m));
        }
        for (k, &v) in perm.iter().enumerate() {
            if v >= m || pos[v] != usize::MAX {
                return Err(Error::NotAPermutation(m));
            }
            pos[v] = k;
        }
        Ok(self.edges().iter().all(|&(i, j)| pos[i] < pos[j]))
    }

    /// Vertices on the longest path ending at each vertex.
    fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.num_vertices()];
        for v in 0..self.num_vertices() {
            depth[v] = 1 + self.pred[v].iter().map(|&u| depth[u]).max().unwrap_or(0);
        }
        depth
    }

    /// Vertices on the longest path starting at each vertex.
    fn heights(&self) -> Vec<usize> {
        let mut height = vec![0; self.num_vertices()];
        for v in (0..self.num_vertices()).rev() {
            height[v] = 1 + self.succ[v].iter().map(|&w| height[w]).max().unwrap_or(0);
        }
        height
    }

    /// Number of vertices on the longest path; 0 for an empty graph.
    pub fn t_depth_bound(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    pub fn layerize(&self, placement: Placement) -> Result<LayerSchedule> {
        let d = self.t_depth_bound();
        let layer_of: Vec<usize> = match placement {
            Placement::Asap => self.depths().into_iter().map(|x| x - 1).collect(),
            Placement::Alap => self.heights().into_iter().map(|h| d - h).collect(),
        };
        let mut layers = vec![Vec::new(); d];
        for (v, &l) in layer_of.iter().enumerate() {
            layers[l].push(v);
        }
        for layer in &layers {
            for (a, &i) in layer.iter().enumerate() {
                for &j in &layer[a + 1..] {
                    if !self.rotations[i].pauli.commutes_with(&self.rotations[j].pauli) {
                        return Err(Error::InvariantViolation(format!(
                            "rotations {i} and {j} share a layer but anticommute"
                        )));
                    }
                }
            }
        }
        Ok(LayerSchedule {
            layers,
            ancilla_count: 0,
        })
    }

    /// Graphviz rendering; vertex labels are the signed axis and source gate.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph tgraph {\n  node [shape=box, fontname=monospace];\n");
        for (v, r) in self.rotations.iter().enumerate() {
            let origin = r.origin.map_or("-".to_string(), |o| o.to_string());
            let _ = writeln!(s, "  v{v} [label=\"{} @{origin}\"];", r.pauli);
        }
        for (i, j) in self.edges() {
            let _ = writeln!(s, "  v{i} -> v{j};");
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Placement {
    /// Each rotation in the layer given by the longest path ending at it.
    #[default]
    Asap,
    /// Each rotation as late as the longest path starting at it allows.
    Alap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSchedule {
    pub layers: Vec<Vec<usize>>,
    pub ancilla_count: usize,
}

impl LayerSchedule {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn flatten(&self) -> Vec<usize> {
        self.layers.iter().flatten().copied().collect()
    }
}

/// Widens every rotation by `t` trailing ancillas and puts `Z` on ancilla `j`
/// for the `j`-th rotation (while ancillas last), which makes a commuting
/// layer independent.
pub fn extend_with_ancillas(layer: &[Rotation], t: usize) -> Result<Vec<Rotation>> {
    let out: Vec<Rotation> = layer
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let n = r.pauli.num_qubits();
            let mut p = r.pauli.extended(t);
            if j < t {
                p.set(n + j, crate::pauli::Pauli::Z);
            }
            Rotation::new(p, r.origin)
        })
        .collect();
    if t > 0 && t < layer.len() {
        let axes: Vec<PauliProduct> = out.iter().map(|r| r.pauli.clone()).collect();
        if gf2_rank(&axes) < axes.len() {
            return Err(Error::TooFewAncillas {
                needed: layer.len(),
                available: t,
            });
        }
    }
    Ok(out)
}

/// Depth-one circuit for a commuting, independent layer on `n` qubits:
/// `C`, then T or T* on qubit `j` for rotation `j`, then `C†`, where `C`
/// maps the unsigned axis `j` to `Z_j`.
pub fn synthesize_layer(layer: &[Rotation], n: usize) -> Result<Circuit> {
    if let Some(r) = layer.iter().find(|r| r.pauli.num_qubits() != n) {
        return Err(Error::DimensionMismatch {
            left: n,
            right: r.pauli.num_qubits(),
        });
    }
    let axes: Vec<PauliProduct> = layer.iter().map(|r| r.pauli.unsigned()).collect();
    let c = CliffordTableau::diagonalizing_gates(&axes)?;
    let mut gates = c.clone();
    for (j, r) in layer.iter().enumerate() {
        let kind = if r.pauli.sign().is_minus() {
            GateKind::Tdg
        } else {
            GateKind::T
        };
        gates.push(Gate::one(kind, j));
    }
    gates.extend(c.iter().rev().map(Gate::adjoint));
    Circuit::from_gates(n, gates)
}

/// True iff no rotation has an X or Y on any of the last `t` qubits, so
/// ancillas prepared in `|0>` stay there.
pub fn ancilla_safe(rf: &RotationForm, t: usize) -> Result<bool> {
    rotations_ancilla_safe(rf.rotations(), rf.num_qubits(), t)
}

pub fn rotations_ancilla_safe(rotations: &[Rotation], n: usize, t: usize) -> Result<bool> {
    if t > n {
        return Err(Error::OutOfRange {
            start: n.wrapping_sub(t),
            end: n,
            n,
        });
    }
    Ok(rotations.iter().all(|r| (n - t..n).all(|q| !r.pauli.x_bit(q))))
}

#[derive(Debug, Clone)]
pub struct Layered {
    /// Data qubits first, then `schedule.ancilla_count` ancillas.
    pub circuit: Circuit,
    pub schedule: LayerSchedule,
    /// Longest path of the T-graph.
    pub bound: usize,
}

/// Rebuilds a rotation form one T-graph layer at a time.
///
/// With `use_ancillas`, dependent layers are made independent with trailing
/// ancillas and every layer is one T-cycle. Without, a dependent layer is
/// split greedily into independent pieces.
pub fn layered_circuit(rf: &RotationForm, placement: Placement, use_ancillas: bool) -> Result<Layered> {
    let n = rf.num_qubits();
    let graph = TGraph::build(rf);
    let bound = graph.t_depth_bound();
    let mut schedule = graph.layerize(placement)?;
    let layer_rotations: Vec<Vec<Rotation>> = schedule
        .layers
        .iter()
        .map(|l| l.iter().map(|&v| graph.rotations()[v].clone()).collect())
        .collect();
    let dependent = |layer: &[Rotation]| {
        let axes: Vec<PauliProduct> = layer.iter().map(|r| r.pauli.clone()).collect();
        gf2_rank(&axes) < axes.len()
    };
    let t = if use_ancillas {
        layer_rotations
            .iter()
            .filter(|l| dependent(l))
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    } else {
        0
    };
    schedule.ancilla_count = t;

    let mut circuit = rf.source().with_gates(Vec::new())?;
    circuit.add_ancillas(t);
    for layer in &layer_rotations {
        let pieces = if t > 0 && dependent(layer) {
            vec![extend_with_ancillas(layer, t)?]
        } else {
            let widened: Vec<Rotation> = layer
                .iter()
                .map(|r| Rotation::new(r.pauli.extended(t), r.origin))
                .collect();
            split_independent(widened)
        };
        for piece in pieces {
            circuit.extend_gates(synthesize_layer(&piece, n + t)?.gates().iter().cloned())?;
        }
    }
    for g in rf.tail().synthesize().gates() {
        circuit.push(g.clone())?;
    }
    Ok(Layered {
        circuit,
        schedule,
        bound,
    })
}

fn split_independent(layer: Vec<Rotation>) -> Vec<Vec<Rotation>> {
    let mut pieces: Vec<Vec<Rotation>> = Vec::new();
    let mut axes: Vec<PauliProduct> = Vec::new();
    for r in layer {
        axes.push(r.pauli.clone());
        let fits = !pieces.is_empty() && gf2_rank(&axes) == axes.len();
        if !fits {
            axes = vec![r.pauli.clone()];
            pieces.push(Vec::new());
        }
        pieces.last_mut().expect("piece exists").push(r);
    }
    pieces
}
