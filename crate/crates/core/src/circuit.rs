//! Gate-level circuits over a named qubit register, plus the `.qc` text
//! format and expansion of doubly-controlled gates into Clifford+T.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Cnot,
    Cz,
    Swap,
    Ccz,
    Toffoli,
}

impl GateKind {
    pub fn arity(self) -> usize {
        use GateKind::*;
        match self {
            H | X | Y | Z | S | Sdg | T | Tdg => 1,
            Cnot | Cz | Swap => 2,
            Ccz | Toffoli => 3,
        }
    }

    pub fn is_clifford(self) -> bool {
        !matches!(self, GateKind::T | GateKind::Tdg | GateKind::Ccz | GateKind::Toffoli)
    }

    pub fn is_t(self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }

    /// Diagonal single-qubit phase gates: S, S*, T, T*, Z.
    pub fn is_phase(self) -> bool {
        use GateKind::*;
        matches!(self, S | Sdg | T | Tdg | Z)
    }

    pub fn adjoint(self) -> GateKind {
        use GateKind::*;
        match self {
            S => Sdg,
            Sdg => S,
            T => Tdg,
            Tdg => T,
            k => k,
        }
    }

    pub fn name(self) -> &'static str {
        use GateKind::*;
        match self {
            H => "H",
            X => "X",
            Y => "Y",
            Z => "Z",
            S => "S",
            Sdg => "S*",
            T => "T",
            Tdg => "T*",
            Cnot => "CNOT",
            Cz => "CZ",
            Swap => "SWAP",
            Ccz => "CCZ",
            Toffoli => "TOF",
        }
    }
}

/// A gate and the qubits it acts on, controls first and target last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Gate { kind, qubits }
    }

    pub fn one(kind: GateKind, q: usize) -> Self {
        Gate::new(kind, vec![q])
    }

    pub fn two(kind: GateKind, a: usize, b: usize) -> Self {
        Gate::new(kind, vec![a, b])
    }

    pub fn adjoint(&self) -> Gate {
        Gate::new(self.kind.adjoint(), self.qubits.clone())
    }

    fn validate(&self, n: usize) -> std::result::Result<(), String> {
        if self.qubits.len() != self.kind.arity() {
            return Err(format!(
                "{} expects {} qubits, got {}",
                self.kind.name(),
                self.kind.arity(),
                self.qubits.len()
            ));
        }
        for (i, &q) in self.qubits.iter().enumerate() {
            if q >= n {
                return Err(format!("qubit index {q} out of range for {n} qubits"));
            }
            if self.qubits[..i].contains(&q) {
                return Err(format!("{} repeats qubit {q}", self.kind.name()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    qubit_names: Vec<String>,
    inputs: Option<Vec<String>>,
    outputs: Option<Vec<String>>,
    gates: Vec<Gate>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub t_count: usize,
    pub cnot_count: usize,
    pub cz_count: usize,
    pub h_count: usize,
    pub gate_count: usize,
    pub per_kind: BTreeMap<GateKind, usize>,
}

impl Circuit {
    /// Empty circuit on qubits named `q0`, `q1`, ...
    pub fn new(n: usize) -> Self {
        Self::with_names((0..n).map(|i| format!("q{i}")).collect())
    }

    pub fn with_names(qubit_names: Vec<String>) -> Self {
        Circuit {
            qubit_names,
            inputs: None,
            outputs: None,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.qubit_names.len()
    }

    pub fn qubit_names(&self) -> &[String] {
        &self.qubit_names
    }

    pub fn inputs(&self) -> Option<&[String]> {
        self.inputs.as_deref()
    }

    pub fn outputs(&self) -> Option<&[String]> {
        self.outputs.as_deref()
    }

    pub fn set_inputs(&mut self, inputs: Option<Vec<String>>) {
        self.inputs = inputs;
    }

    pub fn set_outputs(&mut self, outputs: Option<Vec<String>>) {
        self.outputs = outputs;
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits()).map_err(Error::InvariantViolation)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend_gates(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Same register and header, different gate list.
    pub fn with_gates(&self, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit {
            gates: Vec::with_capacity(gates.len()),
            ..self.clone()
        };
        c.gates.clear();
        c.extend_gates(gates)?;
        Ok(c)
    }

    /// Appends `extra` fresh qubits named `anc0`, `anc1`, ...
    pub fn add_ancillas(&mut self, extra: usize) {
        let mut i = 0;
        let mut added = 0;
        while added < extra {
            let name = format!("anc{i}");
            if !self.qubit_names.contains(&name) {
                self.qubit_names.push(name);
                added += 1;
            }
            i += 1;
        }
    }

    /// The inverse circuit: gates reversed and adjointed.
    pub fn inverse(&self) -> Circuit {
        let gates = self.gates.iter().rev().map(Gate::adjoint).collect();
        Circuit { gates, ..self.clone() }
    }

    pub fn counts(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for g in &self.gates {
            *c.per_kind.entry(g.kind).or_default() += 1;
            match g.kind {
                GateKind::T | GateKind::Tdg => c.t_count += 1,
                GateKind::Cnot => c.cnot_count += 1,
                GateKind::Cz => c.cz_count += 1,
                GateKind::H => c.h_count += 1,
                _ => {}
            }
        }
        c.gate_count = self.gates.len();
        c
    }

    /// Number of T-cycles under as-soon-as-possible scheduling.
    ///
    /// Each T/T* occupies one cycle on its qubit; multi-qubit gates
    /// synchronize the cycle counters of the qubits they touch.
    pub fn t_depth(&self) -> usize {
        let mut depth = vec![0usize; self.num_qubits()];
        for g in &self.gates {
            if g.kind.is_t() {
                depth[g.qubits[0]] += 1;
            } else if g.qubits.len() > 1 {
                let m = g.qubits.iter().map(|&q| depth[q]).max().unwrap_or(0);
                for &q in &g.qubits {
                    depth[q] = m;
                }
            }
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Replaces every CCZ and Toffoli with its 7-T, 6-CNOT network.
    pub fn expand(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            match g.kind {
                GateKind::Ccz => gates.extend(ccz_network(g.qubits[0], g.qubits[1], g.qubits[2])),
                GateKind::Toffoli => {
                    let t = g.qubits[2];
                    gates.push(Gate::one(GateKind::H, t));
                    gates.extend(ccz_network(g.qubits[0], g.qubits[1], t));
                    gates.push(Gate::one(GateKind::H, t));
                }
                _ => gates.push(g.clone()),
            }
        }
        Circuit { gates, ..self.clone() }
    }

    pub fn to_qc(&self) -> String {
        write_qc(self)
    }
}

/// CCZ on `a`, `b`, `c` as CNOT+T. Symmetric in its three qubits.
pub fn ccz_network(a: usize, b: usize, c: usize) -> [Gate; 13] {
    use GateKind::*;
    [
        Gate::two(Cnot, b, c),
        Gate::one(Tdg, c),
        Gate::two(Cnot, a, c),
        Gate::one(T, c),
        Gate::two(Cnot, b, c),
        Gate::one(Tdg, c),
        Gate::two(Cnot, a, c),
        Gate::one(T, b),
        Gate::one(T, c),
        Gate::two(Cnot, a, b),
        Gate::one(T, a),
        Gate::one(Tdg, b),
        Gate::two(Cnot, a, b),
    ]
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the `.qc` format: `.v`/`.i`/`.o` headers, then a `BEGIN`/`END` body.
pub fn parse_qc(text: &str) -> Result<Circuit> {
    let mut names: Option<Vec<String>> = None;
    let mut inputs = None;
    let mut outputs = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut gates = Vec::new();
    let mut in_body = false;
    let mut ended = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        let args: Vec<&str> = tokens.collect();

        if ended {
            return Err(parse_err(line_no, "content after END"));
        }
        if !in_body {
            match head {
                ".v" => {
                    if names.is_some() {
                        return Err(parse_err(line_no, "duplicate .v header"));
                    }
                    for (i, a) in args.iter().enumerate() {
                        if index.insert(a.to_string(), i).is_some() {
                            return Err(parse_err(line_no, format!("qubit {a} declared twice")));
                        }
                    }
                    names = Some(args.iter().map(|s| s.to_string()).collect());
                }
                ".i" | ".o" => {
                    let list: Vec<String> = args.iter().map(|s| s.to_string()).collect();
                    for a in &list {
                        if !index.contains_key(a) {
                            return Err(parse_err(line_no, format!("undeclared qubit {a}")));
                        }
                    }
                    if head == ".i" {
                        inputs = Some(list);
                    } else {
                        outputs = Some(list);
                    }
                }
                "BEGIN" => {
                    if !args.is_empty() {
                        return Err(parse_err(line_no, "subcircuits are not supported"));
                    }
                    if names.is_none() {
                        return Err(parse_err(line_no, "BEGIN before .v header"));
                    }
                    in_body = true;
                }
                h if h.starts_with('.') => {
                    // Other header directives (e.g. `.c` constants) carry no gates.
                }
                _ => return Err(parse_err(line_no, format!("unexpected {head:?} outside BEGIN/END"))),
            }
            continue;
        }

        if head == "END" {
            in_body = false;
            ended = true;
            continue;
        }
        let qubits = args
            .iter()
            .map(|a| {
                index
                    .get(*a)
                    .copied()
                    .ok_or_else(|| parse_err(line_no, format!("undeclared qubit {a}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let kind = gate_kind_for(head, qubits.len()).map_err(|m| parse_err(line_no, m))?;
        let gate = Gate::new(kind, qubits);
        gate.validate(index.len()).map_err(|m| parse_err(line_no, m))?;
        gates.push(gate);
    }

    if in_body {
        return Err(parse_err(text.lines().count(), "missing END"));
    }
    if !ended {
        return Err(parse_err(text.lines().count().max(1), "missing BEGIN/END body"));
    }
    let names = names.ok_or_else(|| parse_err(1, "missing .v header"))?;
    Ok(Circuit {
        qubit_names: names,
        inputs,
        outputs,
        gates,
    })
}

fn gate_kind_for(mnemonic: &str, nargs: usize) -> std::result::Result<GateKind, String> {
    use GateKind::*;
    if nargs == 0 {
        return Err(format!("gate {mnemonic} has no qubits"));
    }
    let too_many = || format!("{mnemonic} with {} controls is not supported", nargs - 1);
    let single = |k: GateKind| {
        if nargs == 1 {
            Ok(k)
        } else {
            Err(format!("{mnemonic} takes one qubit, got {nargs}"))
        }
    };
    match mnemonic {
        "H" | "h" => single(H),
        "S" | "s" | "P" | "p" => single(S),
        "S*" | "s*" | "P*" | "p*" => single(Sdg),
        "T" | "t" => single(T),
        "T*" | "t*" => single(Tdg),
        "Y" | "y" => single(Y),
        "X" | "x" | "tof" | "TOF" | "not" | "NOT" => match nargs {
            1 => Ok(X),
            2 => Ok(Cnot),
            3 => Ok(Toffoli),
            _ => Err(too_many()),
        },
        "cnot" | "CNOT" => {
            if nargs == 2 {
                Ok(Cnot)
            } else {
                Err(format!("cnot takes two qubits, got {nargs}"))
            }
        }
        "Z" | "z" => match nargs {
            1 => Ok(Z),
            2 => Ok(Cz),
            3 => Ok(Ccz),
            _ => Err(too_many()),
        },
        "swap" | "SWAP" => {
            if nargs == 2 {
                Ok(Swap)
            } else {
                Err(format!("swap takes two qubits, got {nargs}"))
            }
        }
        _ => Err(format!("unsupported gate {mnemonic:?}")),
    }
}

fn qc_mnemonic(kind: GateKind) -> &'static str {
    use GateKind::*;
    match kind {
        H => "H",
        X => "X",
        Y => "Y",
        Z | Cz | Ccz => "Z",
        S => "S",
        Sdg => "S*",
        T => "T",
        Tdg => "T*",
        Cnot | Toffoli => "tof",
        Swap => "swap",
    }
}

pub fn write_qc(c: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, ".v {}", c.qubit_names.join(" "));
    if let Some(i) = &c.inputs {
        let _ = writeln!(out, ".i {}", i.join(" "));
    }
    if let Some(o) = &c.outputs {
        let _ = writeln!(out, ".o {}", o.join(" "));
    }
    out.push_str("\nBEGIN\n");
    for g in &c.gates {
        out.push_str(qc_mnemonic(g.kind));
        for &q in &g.qubits {
            out.push(' ');
            out.push_str(&c.qubit_names[q]);
        }
        out.push('\n');
    }
    out.push_str("END\n");
    out
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_qc(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::MOD5_4;

    #[test]
    fn parses_mod5_4() {
        let c = parse_qc(MOD5_4).unwrap();
        assert_eq!(c.num_qubits(), 5);
        let k = c.counts();
        assert_eq!(k.per_kind[&GateKind::Ccz], 4);
        assert_eq!(k.per_kind[&GateKind::Cnot], 4);
        assert_eq!(k.per_kind[&GateKind::X], 1);
        assert_eq!(k.h_count, 6);
        assert_eq!(c.inputs().unwrap(), ["b", "c", "d", "e"]);
        assert!(c.outputs().is_none());
        // `Z b e a`: controls b, e; target a.
        assert_eq!(c.gates()[2], Gate::new(GateKind::Ccz, vec![0, 3, 4]));
    }

    #[test]
    fn ccz_operand_order_from_listing() {
        let c = parse_qc(".v b c d e a\nBEGIN\nZ b e a\nEND\n").unwrap();
        assert_eq!(c.gates(), [Gate::new(GateKind::Ccz, vec![0, 3, 4])]);
    }

    #[test]
    fn parses_empty_body() {
        let c = parse_qc(".v a\nBEGIN\nEND").unwrap();
        assert_eq!(c.num_qubits(), 1);
        assert!(c.is_empty());
    }

    #[test]
    fn mnemonics() {
        let c =
            parse_qc(".v a b c\nBEGIN\nT* a\nS* b\ncnot a b\ntof a b c\ntof c\nZ a b\n# note\n\nT a # trailing\nEND\n")
                .unwrap();
        let kinds: Vec<_> = c.gates().iter().map(|g| g.kind).collect();
        use GateKind::*;
        assert_eq!(kinds, [Tdg, Sdg, Cnot, Toffoli, X, Cz, T]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            (".v a\nBEGIN\nRz a\nEND", 3),
            (".v a b\nBEGIN\nH q\nEND", 3),
            (".v a b c d\nBEGIN\nZ a b c d\nEND", 3),
            (".v a b c d\nBEGIN\ntof a b c d\nEND", 3),
            (".v a\nBEGIN\nH a a\nEND", 3),
            (".v a b\nBEGIN\ntof a a\nEND", 3),
        ];
        for (text, line) in cases {
            match parse_qc(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
        assert!(matches!(parse_qc(".v a\nBEGIN\nH a\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_qc(".v a\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn unsupported_gate_message() {
        let err = parse_qc(".v a\nBEGIN\nrz a\nEND").unwrap_err();
        assert!(err.to_string().contains("unsupported gate"), "{err}");
    }

    #[test]
    fn write_parse_fixpoint_on_mod5_4() {
        let c = parse_qc(MOD5_4).unwrap();
        let text = write_qc(&c);
        let c2 = parse_qc(&text).unwrap();
        assert_eq!(c, c2);
        assert_eq!(write_qc(&c2), text);
    }

    #[test]
    fn write_empty() {
        let c = Circuit::new(2);
        assert_eq!(write_qc(&c), ".v q0 q1\n\nBEGIN\nEND\n");
        assert_eq!(parse_qc(&write_qc(&c)).unwrap(), c);
    }

    #[test]
    fn expand_counts_mod5_4() {
        let c = parse_qc(MOD5_4).unwrap().expand();
        let k = c.counts();
        assert_eq!(k.t_count, 28);
        assert_eq!(k.cnot_count, 28);
        assert_eq!(k.h_count, 6);
    }

    #[test]
    fn expand_leaves_cliffords_alone() {
        let c = Circuit::from_gates(2, vec![Gate::two(GateKind::Cnot, 0, 1)]).unwrap();
        assert_eq!(c.expand(), c);
    }

    #[test]
    fn counts() {
        assert_eq!(Circuit::new(1).counts(), GateCounts::default());
        let c = Circuit::from_gates(
            1,
            vec![
                Gate::one(GateKind::T, 0),
                Gate::one(GateKind::Tdg, 0),
                Gate::one(GateKind::S, 0),
            ],
        )
        .unwrap();
        assert_eq!(c.counts().t_count, 2);
        assert_eq!(c.counts().gate_count, 3);
    }

    #[test]
    fn t_depth_of_parallel_and_serial_ts() {
        use GateKind::*;
        let par = Circuit::from_gates(3, (0..3).map(|q| Gate::one(T, q)).collect()).unwrap();
        assert_eq!(par.t_depth(), 1);
        let ser = Circuit::from_gates(2, vec![Gate::one(T, 0), Gate::two(Cnot, 0, 1), Gate::one(T, 1)]).unwrap();
        assert_eq!(ser.t_depth(), 2);
        assert_eq!(Circuit::new(2).t_depth(), 0);
    }

    #[test]
    fn push_validates() {
        let mut c = Circuit::new(2);
        assert!(c.push(Gate::two(GateKind::Cnot, 0, 2)).is_err());
        assert!(c.push(Gate::new(GateKind::Cnot, vec![0])).is_err());
        assert!(c.push(Gate::two(GateKind::Cnot, 1, 1)).is_err());
    }
}
