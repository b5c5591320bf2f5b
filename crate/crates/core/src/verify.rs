//! Dense-matrix ground truth for small circuits.
//!
//! Qubit 0 is the most significant bit of a basis-state index, so the
//! product `X⊗I` acts on qubit 0. Matrices are stored column-major; gate
//! application is a left multiplication done column by column.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::pauli::{Pauli, PauliProduct, Sign};
use crate::rotations::RotationForm;
use crate::tableau::CliffordTableau;

pub const DEFAULT_QUBIT_CAP: usize = 10;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const BRUTE_FORCE_CAP: usize = 16;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

fn omega() -> C {
    C::from_polar(1.0, std::f64::consts::FRAC_PI_4)
}

#[derive(Clone, PartialEq)]
pub struct DenseUnitary {
    n: usize,
    dim: usize,
    data: Vec<C>,
}

impl std::fmt::Debug for DenseUnitary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "DenseUnitary({} qubits)", self.n)?;
        for r in 0..self.dim.min(16) {
            for c in 0..self.dim.min(16) {
                let v = self.get(r, c);
                write!(f, " {:+.3}{:+.3}i", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl DenseUnitary {
    pub fn identity(n: usize) -> Self {
        let dim = 1usize << n;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        DenseUnitary { n, dim, data }
    }

    /// From row-major entries.
    pub fn from_rows(n: usize, rows: &[C]) -> Self {
        let dim = 1usize << n;
        assert_eq!(rows.len(), dim * dim);
        let mut data = vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                data[c * dim + r] = rows[r * dim + c];
            }
        }
        DenseUnitary { n, dim, data }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C {
        self.data[col * self.dim + row]
    }

    pub fn scale(&self, s: C) -> Self {
        DenseUnitary {
            data: self.data.iter().map(|v| v * s).collect(),
            ..self.clone()
        }
    }

    /// `self · other`.
    pub fn matmul(&self, other: &DenseUnitary) -> DenseUnitary {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut data = vec![ZERO; d * d];
        for c in 0..d {
            for k in 0..d {
                let b = other.data[c * d + k];
                if b == ZERO {
                    continue;
                }
                for r in 0..d {
                    data[c * d + r] += self.data[k * d + r] * b;
                }
            }
        }
        DenseUnitary { data, ..self.clone() }
    }

    pub fn adjoint(&self) -> DenseUnitary {
        let d = self.dim;
        let mut data = vec![ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                data[r * d + c] = self.data[c * d + r].conj();
            }
        }
        DenseUnitary { data, ..self.clone() }
    }

    /// Frobenius distance of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint().matmul(self);
        let mut acc = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let target = if r == c { ONE } else { ZERO };
                acc += (p.get(r, c) - target).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    /// Left-multiplies by a `2^k x 2^k` row-major matrix acting on `qubits`
    /// (first listed qubit is the local most significant bit).
    pub fn apply_matrix(&mut self, qubits: &[usize], mat: &[C], exec: Exec) {
        let k = qubits.len();
        let local = 1usize << k;
        assert_eq!(mat.len(), local * local);
        let masks: Vec<usize> = qubits.iter().map(|&q| self.bit(q)).collect();
        let all: usize = masks.iter().sum();
        let offsets: Vec<usize> = (0..local)
            .map(|l| (0..k).filter(|&j| l >> (k - 1 - j) & 1 == 1).map(|j| masks[j]).sum())
            .collect();
        let dim = self.dim;
        par::for_each_chunk_mut(exec, &mut self.data, dim, |col| {
            let mut amps = vec![ZERO; local];
            for base in 0..dim {
                if base & all != 0 {
                    continue;
                }
                for (l, off) in offsets.iter().enumerate() {
                    amps[l] = col[base | off];
                }
                for (r, off) in offsets.iter().enumerate() {
                    let row = &mat[r * local..(r + 1) * local];
                    col[base | off] = row.iter().zip(&amps).map(|(m, a)| m * a).sum();
                }
            }
        });
    }

    /// Left-multiplies by `R(P) = (1+ω)/2 I + (1-ω)/2 P`.
    pub fn apply_rotation(&mut self, p: &PauliProduct, exec: Exec) {
        let w = omega();
        let a = (ONE + w) / 2.0;
        let b = (ONE - w) / 2.0;
        self.apply_affine_pauli(p, a, b, exec);
    }

    /// Left-multiplies by the Pauli matrix of `p`.
    pub fn apply_pauli(&mut self, p: &PauliProduct, exec: Exec) {
        self.apply_affine_pauli(p, ZERO, ONE, exec);
    }

    /// `M <- a M + b P M`.
    fn apply_affine_pauli(&mut self, p: &PauliProduct, a: C, b: C, exec: Exec) {
        assert_eq!(p.num_qubits(), self.n);
        let (mut xm, mut zm, mut ys) = (0usize, 0usize, 0u32);
        for q in 0..self.n {
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            if x {
                xm |= self.bit(q);
            }
            if z {
                zm |= self.bit(q);
            }
            if x && z {
                ys += 1;
            }
        }
        // P|k> = sign * i^{#Y} * (-1)^{z.k} |k ^ x>
        let mut front = I.powu(ys % 4);
        if p.sign().is_minus() {
            front = -front;
        }
        let dim = self.dim;
        par::for_each_chunk_mut(exec, &mut self.data, dim, |col| {
            let old = col.to_vec();
            for k in 0..dim {
                let parity = (k & zm).count_ones() & 1;
                let ph = if parity == 1 { -front } else { front };
                col[k ^ xm] = a * old[k ^ xm] + b * ph * old[k];
            }
        });
    }
}

/// Textbook matrix of a gate, row-major, controls as the high local bits.
pub fn gate_matrix(kind: GateKind) -> Vec<C> {
    use GateKind::*;
    let s = FRAC_1_SQRT_2;
    let r = |v: f64| C::new(v, 0.0);
    let diag = |d: &[C]| {
        let m = d.len();
        let mut out = vec![ZERO; m * m];
        for (i, v) in d.iter().enumerate() {
            out[i * m + i] = *v;
        }
        out
    };
    let perm = |p: &[usize]| {
        let m = p.len();
        let mut out = vec![ZERO; m * m];
        for (col, &row) in p.iter().enumerate() {
            out[row * m + col] = ONE;
        }
        out
    };
    match kind {
        H => vec![r(s), r(s), r(s), r(-s)],
        X => vec![ZERO, ONE, ONE, ZERO],
        Y => vec![ZERO, -I, I, ZERO],
        Z => diag(&[ONE, -ONE]),
        S => diag(&[ONE, I]),
        Sdg => diag(&[ONE, -I]),
        T => diag(&[ONE, omega()]),
        Tdg => diag(&[ONE, omega().conj()]),
        Cnot => perm(&[0, 1, 3, 2]),
        Cz => diag(&[ONE, ONE, ONE, -ONE]),
        Swap => perm(&[0, 2, 1, 3]),
        Ccz => diag(&[ONE, ONE, ONE, ONE, ONE, ONE, ONE, -ONE]),
        Toffoli => perm(&[0, 1, 2, 3, 4, 5, 7, 6]),
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::QubitCapExceeded { n, cap });
    }
    Ok(())
}

pub fn unitary_of_circuit(c: &Circuit, cap: usize) -> Result<DenseUnitary> {
    unitary_of_circuit_with(c, cap, Exec::default())
}

pub fn unitary_of_circuit_with(c: &Circuit, cap: usize, exec: Exec) -> Result<DenseUnitary> {
    check_cap(c.num_qubits(), cap)?;
    let mut u = DenseUnitary::identity(c.num_qubits());
    for g in c.gates() {
        u.apply_matrix(&g.qubits, &gate_matrix(g.kind), exec);
    }
    debug_assert!(c.num_qubits() > 6 || u.is_unitary(1e-9));
    Ok(u)
}

/// `U = tail ∘ R(P_m) ∘ ... ∘ R(P_1)`, rotations built directly from their
/// affine form. The tail Clifford goes through its synthesized circuit.
pub fn unitary_of_rotation_form(rf: &RotationForm, cap: usize) -> Result<DenseUnitary> {
    check_cap(rf.num_qubits(), cap)?;
    let exec = Exec::default();
    let mut u = DenseUnitary::identity(rf.num_qubits());
    for r in rf.rotations() {
        u.apply_rotation(&r.pauli, exec);
    }
    let tail = unitary_of_tableau(rf.tail(), cap)?;
    Ok(tail.matmul(&u))
}

pub fn unitary_of_rotations(axes: &[PauliProduct], n: usize, cap: usize) -> Result<DenseUnitary> {
    check_cap(n, cap)?;
    let mut u = DenseUnitary::identity(n);
    for p in axes {
        u.apply_rotation(p, Exec::default());
    }
    Ok(u)
}

pub fn unitary_of_tableau(t: &CliffordTableau, cap: usize) -> Result<DenseUnitary> {
    unitary_of_circuit(&t.synthesize(), cap)
}

/// Dense matrix of a signed Pauli product, as a Kronecker product of letters.
pub fn pauli_matrix(p: &PauliProduct) -> DenseUnitary {
    let mut rows = vec![if p.sign().is_minus() { -ONE } else { ONE }];
    let mut dim = 1;
    for q in 0..p.num_qubits() {
        let m = match p.get(q) {
            Pauli::I => [ONE, ZERO, ZERO, ONE],
            Pauli::X => [ZERO, ONE, ONE, ZERO],
            Pauli::Y => [ZERO, -I, I, ZERO],
            Pauli::Z => [ONE, ZERO, ZERO, -ONE],
        };
        let nd = dim * 2;
        let mut next = vec![ZERO; nd * nd];
        for r in 0..dim {
            for c in 0..dim {
                let v = rows[r * dim + c];
                for a in 0..2 {
                    for b in 0..2 {
                        next[(2 * r + a) * nd + 2 * c + b] = v * m[a * 2 + b];
                    }
                }
            }
        }
        rows = next;
        dim = nd;
    }
    DenseUnitary::from_rows(p.num_qubits(), &rows)
}

/// Recovers the signed Pauli a dense matrix equals exactly, if any.
pub fn dense_to_pauli(m: &DenseUnitary, tol: f64) -> Option<PauliProduct> {
    let n = m.num_qubits();
    let dim = m.dim();
    let x = (0..dim).find(|&r| m.get(r, 0).norm() > 0.5)?;
    let mut letters = Vec::with_capacity(n);
    let base = m.get(x, 0);
    for q in 0..n {
        let k = 1usize << (n - 1 - q);
        let ratio = m.get(k ^ x, k) / base;
        let z = ratio.re < 0.0;
        let xb = x & k != 0;
        letters.push(Pauli::from_bits(xb, z));
    }
    let ys = letters.iter().filter(|&&l| l == Pauli::Y).count() as u32;
    let s = base / I.powu(ys % 4);
    let sign = if (s - ONE).norm() < tol {
        Sign::Plus
    } else if (s + ONE).norm() < tol {
        Sign::Minus
    } else {
        return None;
    };
    let p = PauliProduct::from_letters(sign, &letters);
    max_abs_diff(&pauli_matrix(&p), m).ok().filter(|&d| d <= tol).map(|_| p)
}

fn max_abs_diff(a: &DenseUnitary, b: &DenseUnitary) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { left: a.n, right: b.n });
    }
    Ok(a.data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// Whether `a == λ b` for a unit scalar `λ`, fixed on the largest entry of `b`.
pub fn equivalent_up_to_phase(a: &DenseUnitary, b: &DenseUnitary, tol: f64) -> Result<bool> {
    Ok(phase_between(a, b, tol)?.is_some())
}

/// The unit scalar `λ` with `a == λ b`, if there is one.
pub fn phase_between(a: &DenseUnitary, b: &DenseUnitary, tol: f64) -> Result<Option<C>> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { left: a.n, right: b.n });
    }
    let (idx, _) = b.data.iter().enumerate().fold(
        (0, -1.0),
        |best, (i, v)| if v.norm() > best.1 { (i, v.norm()) } else { best },
    );
    if b.data[idx].norm() < tol {
        return Ok(None);
    }
    let lambda = a.data[idx] / b.data[idx];
    if (lambda.norm() - 1.0).abs() > tol {
        return Ok(None);
    }
    let ok = a.data.iter().zip(&b.data).all(|(x, y)| (x - lambda * y).norm() <= tol);
    Ok(ok.then_some(lambda))
}

/// Block of `u` acting on the leading `n_data` qubits with every trailing
/// ancilla held at `|0>`, plus the total probability leaked out of `|0>`.
pub fn ancilla_zero_block(u: &DenseUnitary, n_data: usize) -> (DenseUnitary, f64) {
    let t = u.n - n_data;
    let d = 1usize << n_data;
    let mut rows = vec![ZERO; d * d];
    let mut leak = 0.0;
    for c in 0..d {
        for r in 0..u.dim {
            let v = u.get(r, c << t);
            if r & ((1 << t) - 1) == 0 {
                rows[(r >> t) * d + c] = v;
            } else {
                leak += v.norm_sqr();
            }
        }
    }
    (DenseUnitary::from_rows(n_data, &rows), leak)
}

/// Longest path (in vertices) through the anticommutation DAG, found by
/// enumerating every path. Exponential; for cross-checking only.
pub fn brute_force_min_layers(paulis: &[PauliProduct]) -> Result<usize> {
    let m = paulis.len();
    if m > BRUTE_FORCE_CAP {
        return Err(Error::RotationCapExceeded {
            m,
            cap: BRUTE_FORCE_CAP,
        });
    }
    fn walk(v: usize, paulis: &[PauliProduct]) -> usize {
        let mut best = 0;
        for w in v + 1..paulis.len() {
            if !paulis[v].commutes_with(&paulis[w]) {
                best = best.max(walk(w, paulis));
            }
        }
        best + 1
    }
    Ok((0..m).map(|v| walk(v, paulis)).max().unwrap_or(0))
}
