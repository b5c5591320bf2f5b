//! Clifford operators as stabilizer tableaux.
//!
//! A tableau stores the images `C X_i C†` and `C Z_i C†` of the generators,
//! signs included. Global phase is not tracked.

use std::fmt;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::pauli::{hermitian_from_phase, PauliProduct};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    n: usize,
    x_images: Vec<PauliProduct>,
    z_images: Vec<PauliProduct>,
}

/// Conjugates `p` in place by a Clifford gate: `p <- g p g†`.
pub fn conjugate_by_gate(p: &mut PauliProduct, gate: &Gate) -> Result<()> {
    use GateKind::*;
    let q = &gate.qubits;
    match gate.kind {
        H => {
            let (x, z) = (p.x_bit(q[0]), p.z_bit(q[0]));
            p.flip_sign_if(x && z);
            p.set_bits(q[0], z, x);
        }
        S => {
            let (x, z) = (p.x_bit(q[0]), p.z_bit(q[0]));
            p.flip_sign_if(x && z);
            p.set_bits(q[0], x, z ^ x);
        }
        Sdg => {
            let (x, z) = (p.x_bit(q[0]), p.z_bit(q[0]));
            p.flip_sign_if(x && !z);
            p.set_bits(q[0], x, z ^ x);
        }
        X => p.flip_sign_if(p.z_bit(q[0])),
        Z => p.flip_sign_if(p.x_bit(q[0])),
        Y => p.flip_sign_if(p.x_bit(q[0]) ^ p.z_bit(q[0])),
        Cnot => {
            let (c, t) = (q[0], q[1]);
            let (xc, zc, xt, zt) = (p.x_bit(c), p.z_bit(c), p.x_bit(t), p.z_bit(t));
            p.flip_sign_if(xc && zt && !(xt ^ zc));
            p.set_bits(t, xt ^ xc, zt);
            p.set_bits(c, xc, zc ^ zt);
        }
        Cz => {
            let (a, b) = (q[0], q[1]);
            let (xa, za, xb, zb) = (p.x_bit(a), p.z_bit(a), p.x_bit(b), p.z_bit(b));
            p.flip_sign_if(xa && xb && (za ^ zb));
            p.set_bits(a, xa, za ^ xb);
            p.set_bits(b, xb, zb ^ xa);
        }
        Swap => {
            let (pa, pb) = (p.get(q[0]), p.get(q[1]));
            p.set(q[0], pb);
            p.set(q[1], pa);
        }
        T | Tdg | Ccz | Toffoli => return Err(Error::UnsupportedGate(gate.kind.name().into())),
    }
    Ok(())
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        CliffordTableau {
            n,
            x_images: (0..n).map(|i| PauliProduct::x_on(n, i)).collect(),
            z_images: (0..n).map(|i| PauliProduct::z_on(n, i)).collect(),
        }
    }

    /// Builds a tableau from explicit generator images, checking validity.
    pub fn from_images(x_images: Vec<PauliProduct>, z_images: Vec<PauliProduct>) -> Result<Self> {
        let n = x_images.len();
        if z_images.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: z_images.len(),
            });
        }
        for p in x_images.iter().chain(&z_images) {
            if p.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: p.num_qubits(),
                });
            }
        }
        let t = CliffordTableau { n, x_images, z_images };
        if !t.is_symplectic() {
            return Err(Error::InvariantViolation(
                "generator images do not satisfy the symplectic relations".into(),
            ));
        }
        Ok(t)
    }

    /// Tableau of a circuit made of Clifford gates.
    pub fn from_circuit(c: &Circuit) -> Result<Self> {
        let mut t = Self::identity(c.num_qubits());
        for g in c.gates() {
            t.apply_gate(g)?;
        }
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_image(&self, i: usize) -> &PauliProduct {
        &self.x_images[i]
    }

    pub fn z_image(&self, i: usize) -> &PauliProduct {
        &self.z_images[i]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let xz = self.x_images[i].commutes_with(&self.z_images[j]);
                if xz != (i != j) {
                    return false;
                }
                if i < j
                    && (!self.x_images[i].commutes_with(&self.x_images[j])
                        || !self.z_images[i].commutes_with(&self.z_images[j]))
                {
                    return false;
                }
            }
        }
        true
    }

    fn rows_mut(&mut self) -> impl Iterator<Item = &mut PauliProduct> {
        self.x_images.iter_mut().chain(self.z_images.iter_mut())
    }

    fn check_gate(&self, g: &Gate) -> Result<()> {
        if !g.kind.is_clifford() {
            return Err(Error::UnsupportedGate(g.kind.name().into()));
        }
        if let Some(&q) = g.qubits.iter().find(|&&q| q >= self.n) {
            return Err(Error::OutOfRange {
                start: q,
                end: q + 1,
                n: self.n,
            });
        }
        Ok(())
    }

    /// `self <- g ∘ self`: the gate acts after the current Clifford.
    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        self.check_gate(g)?;
        for row in self.rows_mut() {
            conjugate_by_gate(row, g)?;
        }
        Ok(())
    }

    /// `self <- self ∘ g`: the gate acts before the current Clifford.
    pub fn prepend_gate(&mut self, g: &Gate) -> Result<()> {
        self.check_gate(g)?;
        let mut updates = Vec::with_capacity(2 * g.qubits.len());
        for &q in &g.qubits {
            let mut gx = PauliProduct::x_on(self.n, q);
            conjugate_by_gate(&mut gx, g)?;
            let mut gz = PauliProduct::z_on(self.n, q);
            conjugate_by_gate(&mut gz, g)?;
            updates.push((q, self.conjugate(&gx)?, self.conjugate(&gz)?));
        }
        for (q, x, z) in updates {
            self.x_images[q] = x;
            self.z_images[q] = z;
        }
        Ok(())
    }

    /// `C p C†`, with exact sign.
    pub fn conjugate(&self, p: &PauliProduct) -> Result<PauliProduct> {
        if p.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: p.num_qubits(),
            });
        }
        // p = sign * prod_q i^{x_q z_q} X_q^{x_q} Z_q^{z_q}
        let mut acc = PauliProduct::identity(self.n);
        let mut k: u32 = if p.sign().is_minus() { 2 } else { 0 };
        for q in p.support() {
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            if x && z {
                k += 1;
            }
            if x {
                let (next, kk) = acc.mul_unchecked(&self.x_images[q]);
                acc = next;
                k += kk as u32;
            }
            if z {
                let (next, kk) = acc.mul_unchecked(&self.z_images[q]);
                acc = next;
                k += kk as u32;
            }
        }
        hermitian_from_phase(acc, (k % 4) as u8)
    }

    /// Tableau of `self ∘ other`; `other` acts first.
    pub fn compose(&self, other: &CliffordTableau) -> Result<CliffordTableau> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let x_images = other
            .x_images
            .iter()
            .map(|p| self.conjugate(p))
            .collect::<Result<Vec<_>>>()?;
        let z_images = other
            .z_images
            .iter()
            .map(|p| self.conjugate(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(CliffordTableau {
            n: self.n,
            x_images,
            z_images,
        })
    }

    pub fn invert(&self) -> CliffordTableau {
        let n = self.n;
        // Unsigned part via the symplectic inverse: the X_j (Z_j) component of
        // C†PC is read off from commutation of P with the images of Z_j (X_j).
        let mut x_images = Vec::with_capacity(n);
        let mut z_images = Vec::with_capacity(n);
        for i in 0..n {
            let mut xi = PauliProduct::identity(n);
            let mut zi = PauliProduct::identity(n);
            for j in 0..n {
                xi.set_bits(j, self.z_images[j].z_bit(i), self.x_images[j].z_bit(i));
                zi.set_bits(j, self.z_images[j].x_bit(i), self.x_images[j].x_bit(i));
            }
            x_images.push(xi);
            z_images.push(zi);
        }
        for (i, row) in x_images.iter_mut().enumerate() {
            let back = self.conjugate(row).expect("inverse images are Hermitian");
            debug_assert!(back.same_axis(&PauliProduct::x_on(n, i)));
            row.flip_sign_if(back.sign().is_minus());
        }
        for (i, row) in z_images.iter_mut().enumerate() {
            let back = self.conjugate(row).expect("inverse images are Hermitian");
            debug_assert!(back.same_axis(&PauliProduct::z_on(n, i)));
            row.flip_sign_if(back.sign().is_minus());
        }
        CliffordTableau { n, x_images, z_images }
    }

    /// Tableau of `R(Q)^2 = (1+i)/2 (1 - iQ)`: generators commuting with `Q`
    /// are fixed, anticommuting generators `S` map to `i S Q`.
    pub fn squared_rotation(q: &PauliProduct) -> CliffordTableau {
        let mut t = Self::identity(q.num_qubits());
        t.apply_squared_rotation(q, false);
        t
    }

    /// `self <- R(Q)^2 ∘ self`, or `R(Q)^-2 ∘ self` when `inverse` is set.
    ///
    /// Costs one commutation test per row instead of a full composition.
    pub fn apply_squared_rotation(&mut self, q: &PauliProduct, inverse: bool) {
        assert_eq!(q.num_qubits(), self.n, "rotation axis size mismatch");
        // R(Q)^2 S R(Q)^-2 = i S Q and R(Q)^-2 S R(Q)^2 = -i S Q for {S, Q} = 0.
        let extra = if inverse { 3 } else { 1 };
        for row in self.rows_mut() {
            if !row.commutes_with(q) {
                let (p, k) = row.mul_unchecked(q);
                *row = hermitian_from_phase(p, (k + extra) % 4).expect("i S Q is Hermitian for anticommuting S, Q");
            }
        }
    }

    /// Gate sequence `C` (first gate first) with `C P_j C† = +Z_j`.
    pub fn diagonalizing_gates(paulis: &[PauliProduct]) -> Result<Vec<Gate>> {
        let Some(first) = paulis.first() else {
            return Ok(Vec::new());
        };
        let n = first.num_qubits();
        for p in paulis {
            if p.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: p.num_qubits(),
                });
            }
        }
        for i in 0..paulis.len() {
            for j in i + 1..paulis.len() {
                if !paulis[i].commutes_with(&paulis[j]) {
                    return Err(Error::NonCommuting(i, j));
                }
            }
        }
        if gf2_rank(paulis) < paulis.len() {
            return Err(Error::DependentSet);
        }
        let mut rows = paulis.to_vec();
        let mut gates = Vec::new();
        eliminate_to_z(&mut rows, &mut [], &mut gates)?;
        for (j, row) in rows.iter_mut().enumerate() {
            if row.sign().is_minus() {
                let g = Gate::one(GateKind::X, j);
                conjugate_by_gate(row, &g)?;
                gates.push(g);
            }
        }
        Ok(gates)
    }

    /// A Clifford `C` with `C P_j C† = +Z_j` for every input, given that the
    /// inputs pairwise commute and are independent.
    pub fn diagonalize_commuting_set(paulis: &[PauliProduct]) -> Result<CliffordTableau> {
        let gates = Self::diagonalizing_gates(paulis)?;
        let n = paulis.first().map_or(0, PauliProduct::num_qubits);
        let mut t = Self::identity(n);
        for g in &gates {
            t.apply_gate(g)?;
        }
        Ok(t)
    }

    /// Gaussian-elimination synthesis into `{H, S, CNOT, X, Z}`.
    pub fn synthesize(&self) -> Circuit {
        let n = self.n;
        let mut zs = self.z_images.clone();
        let mut xs = self.x_images.clone();
        let mut gates: Vec<Gate> = Vec::new();
        let push = |g: Gate, zs: &mut [PauliProduct], xs: &mut [PauliProduct], gates: &mut Vec<Gate>| {
            for row in zs.iter_mut().chain(xs.iter_mut()) {
                conjugate_by_gate(row, &g).expect("clifford gate");
            }
            gates.push(g);
        };

        eliminate_to_z(&mut zs, &mut xs, &mut gates).expect("z images of a valid tableau are independent");

        // Each X image is now (X or Y)_j times Z's elsewhere, symmetric in (j, k).
        for j in 0..n {
            if xs[j].z_bit(j) {
                push(Gate::one(GateKind::Sdg, j), &mut zs, &mut xs, &mut gates);
            }
        }
        for j in 0..n {
            for k in j + 1..n {
                if xs[j].z_bit(k) {
                    push(Gate::two(GateKind::Cz, j, k), &mut zs, &mut xs, &mut gates);
                }
            }
        }
        for j in 0..n {
            if xs[j].sign().is_minus() {
                push(Gate::one(GateKind::Z, j), &mut zs, &mut xs, &mut gates);
            }
            if zs[j].sign().is_minus() {
                push(Gate::one(GateKind::X, j), &mut zs, &mut xs, &mut gates);
            }
        }
        debug_assert!(
            CliffordTableau {
                n,
                x_images: xs,
                z_images: zs
            }
            .is_identity(),
            "synthesis did not reach the identity"
        );

        // gates reduce self to the identity, so self is their inverse.
        let mut out = Circuit::new(n);
        for g in gates.iter().rev() {
            out.extend_gates(lower_to_basis(&g.adjoint()))
                .expect("synthesized gates are in range");
        }
        out
    }
}

/// Rewrites a Clifford gate over `{H, S, CNOT, X, Z}`, up to global phase.
fn lower_to_basis(g: &Gate) -> Vec<Gate> {
    use GateKind::*;
    let q = &g.qubits;
    match g.kind {
        Sdg => vec![Gate::one(Z, q[0]), Gate::one(S, q[0])],
        Y => vec![Gate::one(Z, q[0]), Gate::one(X, q[0])],
        Cz => vec![Gate::one(H, q[1]), Gate::two(Cnot, q[0], q[1]), Gate::one(H, q[1])],
        Swap => vec![
            Gate::two(Cnot, q[0], q[1]),
            Gate::two(Cnot, q[1], q[0]),
            Gate::two(Cnot, q[0], q[1]),
        ],
        _ => vec![g.clone()],
    }
}

/// Drives `rows[j]` to `±Z_j` for each `j`, applying every gate to `extra`
/// as well. Rows must pairwise commute.
fn eliminate_to_z(rows: &mut [PauliProduct], extra: &mut [PauliProduct], gates: &mut Vec<Gate>) -> Result<()> {
    fn apply(g: Gate, rows: &mut [PauliProduct], extra: &mut [PauliProduct], gates: &mut Vec<Gate>) {
        for r in rows.iter_mut().chain(extra.iter_mut()) {
            conjugate_by_gate(r, &g).expect("clifford gate");
        }
        gates.push(g);
    }

    let m = rows.len();
    let n = rows.first().map_or(0, PauliProduct::num_qubits);
    if m > n {
        return Err(Error::DependentSet);
    }
    for j in 0..m {
        if (0..j).any(|i| rows[j].x_bit(i)) {
            return Err(Error::InvariantViolation(format!(
                "row {j} does not commute with an eliminated row"
            )));
        }
        let support: Vec<usize> = (j..n).filter(|&q| rows[j].x_bit(q) || rows[j].z_bit(q)).collect();
        let Some(&pivot) = support.first() else {
            return Err(Error::DependentSet);
        };
        if support.iter().all(|&q| !rows[j].x_bit(q)) {
            // Already diagonal: gather the Z's onto j with CNOTs only.
            let pivot = if support.contains(&j) { j } else { pivot };
            if pivot != j {
                apply(Gate::two(GateKind::Swap, j, pivot), rows, extra, gates);
            }
            for q in j + 1..n {
                if rows[j].z_bit(q) {
                    apply(Gate::two(GateKind::Cnot, q, j), rows, extra, gates);
                }
            }
        } else {
            for &q in &support {
                match (rows[j].x_bit(q), rows[j].z_bit(q)) {
                    (false, true) => apply(Gate::one(GateKind::H, q), rows, extra, gates),
                    (true, true) => apply(Gate::one(GateKind::Sdg, q), rows, extra, gates),
                    _ => {}
                }
            }
            if pivot != j {
                apply(Gate::two(GateKind::Swap, j, pivot), rows, extra, gates);
            }
            for q in j + 1..n {
                if rows[j].x_bit(q) {
                    apply(Gate::two(GateKind::Cnot, j, q), rows, extra, gates);
                }
            }
            apply(Gate::one(GateKind::H, j), rows, extra, gates);
        }
        for i in 0..j {
            if rows[j].z_bit(i) {
                apply(Gate::two(GateKind::Cnot, i, j), rows, extra, gates);
            }
        }
        debug_assert!(rows[j].same_axis(&PauliProduct::z_on(n, j)));
    }
    Ok(())
}

/// Rank over GF(2) of the concatenated `x|z` bit vectors.
pub fn gf2_rank(paulis: &[PauliProduct]) -> usize {
    let mut rows: Vec<Vec<u64>> = paulis
        .iter()
        .map(|p| p.x_words().iter().chain(p.z_words()).copied().collect())
        .collect();
    let bits = rows.first().map_or(0, |r| r.len() * 64);
    let mut rank = 0;
    for col in 0..bits {
        let (w, b) = (col / 64, col % 64);
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] >> b & 1 == 1 {
                for (a, p) in row.iter_mut().zip(&pivot_row) {
                    *a ^= p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

impl fmt::Debug for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CliffordTableau({} qubits)", self.n)?;
        for i in 0..self.n {
            writeln!(f, "  X{i} -> {}   Z{i} -> {}", self.x_images[i], self.z_images[i])?;
        }
        Ok(())
    }
}
