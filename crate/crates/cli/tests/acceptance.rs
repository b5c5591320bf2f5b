//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trotopt::circuit::{Circuit, Gate, GateKind};
use trotopt::gen::{self, CircuitMix};
use trotopt::pauli::{Pauli, Sign};
use trotopt::rotations::{Rotation, RotationForm};
use trotopt::samples::MOD5_4;
use trotopt::tableau::gf2_rank;
use trotopt::tgraph::{extend_with_ancillas, rotations_ancilla_safe, synthesize_layer, Placement};
use trotopt::verify::{
    ancilla_zero_block, brute_force_min_layers, dense_to_pauli, equivalent_up_to_phase, pauli_matrix,
    unitary_of_circuit, unitary_of_rotations,
};
use trotopt::{optimize, optimize_circuit, parse_qc, CliffordTableau, Exec, OutputMode, PauliProduct, TGraph};
use trotopt_cli::bench_dir;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same_unitary(a: &Circuit, b: &Circuit) -> Result<bool, String> {
    let ua = unitary_of_circuit(a, 10).map_err(|e| e.to_string())?;
    let ub = unitary_of_circuit(b, 10).map_err(|e| e.to_string())?;
    equivalent_up_to_phase(&ua, &ub, 1e-8).map_err(|e| e.to_string())
}

fn non_phase(c: &Circuit) -> Vec<Gate> {
    c.gates()
        .iter()
        .filter(|g| !matches!(g.kind, GateKind::S | GateKind::Sdg | GateKind::T | GateKind::Tdg))
        .cloned()
        .collect()
}

fn c1_mod5_4() -> Check {
    let start = Instant::now();
    let c = parse_qc(MOD5_4).map_err(|e| e.to_string())?;
    let out = optimize_circuit(&c, OutputMode::InPlace).map_err(|e| e.to_string())?;
    let before = out.expanded.counts();
    let after = out.circuit.counts();
    ensure(before.t_count == 28, || format!("expanded T-count {}", before.t_count))?;
    ensure(after.t_count == 8, || format!("optimized T-count {}", after.t_count))?;
    ensure(after.cnot_count == 28, || {
        format!("optimized CNOT-count {}", after.cnot_count)
    })?;
    ensure(non_phase(&out.expanded) == non_phase(&out.circuit), || {
        "non-phase gates moved".into()
    })?;
    ensure(same_unitary(&c, &out.circuit)?, || "32x32 unitaries differ".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "T {} -> {}, CNOT {} -> {}, oracle equivalent, {:.1} ms",
        before.t_count,
        after.t_count,
        before.cnot_count,
        after.cnot_count,
        elapsed.as_secs_f64() * 1e3
    ))
}

fn c2_max_reduction() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("mod5_4.qc"), MOD5_4).map_err(|e| e.to_string())?;
    let report = bench_dir(dir.path(), OutputMode::InPlace, Exec::Parallel).map_err(|e| e.to_string())?;
    let mut csv = Vec::new();
    report.write_csv(&mut csv).map_err(|e| e.to_string())?;
    let text = String::from_utf8(csv).map_err(|e| e.to_string())?;
    let max_row = text
        .lines()
        .find(|l| l.starts_with("maximum,"))
        .ok_or("no maximum row")?;
    ensure(max_row.split(',').nth(5) == Some("71.43"), || {
        format!("maximum row {max_row:?}")
    })?;
    Ok(format!(
        "bench maximum row reports {}%",
        max_row.split(',').nth(5).unwrap_or("")
    ))
}

/// Criteria 3 and 4 share one suite.
fn soundness_suite() -> (Check, Check) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let circuits = 500;
    let mut removed = 0;
    let mut soundness = Ok(());
    let mut invariance = Ok(());
    for i in 0..circuits {
        let n = rng.gen_range(1..=6);
        let len = rng.gen_range(1..=60);
        let mix = CircuitMix {
            t: rng.gen_range(0.2..0.7),
            ..Default::default()
        };
        let c = gen::random_clifford_t_circuit(&mut rng, n, len, mix);
        let out = match optimize_circuit(&c, OutputMode::InPlace) {
            Ok(o) => o,
            Err(e) => {
                soundness = Err(format!("circuit {i}: {e}"));
                break;
            }
        };
        let (tb, ta) = (out.expanded.counts().t_count, out.circuit.counts().t_count);
        if soundness.is_ok() {
            if ta > tb || (tb - ta) % 2 != 0 {
                soundness = Err(format!("circuit {i}: T-count {tb} -> {ta}"));
            } else {
                match same_unitary(&c, &out.circuit) {
                    Ok(true) => {}
                    Ok(false) => soundness = Err(format!("circuit {i}: not equivalent")),
                    Err(e) => soundness = Err(format!("circuit {i}: {e}")),
                }
            }
        }
        if invariance.is_ok() && non_phase(&out.expanded) != non_phase(&out.circuit) {
            invariance = Err(format!("circuit {i}: non-phase gates changed"));
        }
        removed += tb - ta;
    }
    let elapsed = start.elapsed();
    if soundness.is_ok() && elapsed > Duration::from_secs(60) {
        soundness = Err(format!("took {elapsed:?}"));
    }
    (
        soundness.map(|_| {
            format!(
                "{circuits} seeded circuits equivalent, {removed} T gates removed, {:.2} s",
                elapsed.as_secs_f64()
            )
        }),
        invariance.map(|_| format!("{circuits} circuits, CNOT/CZ/H/X/Y/Z/SWAP sequences identical")),
    )
}

fn all_commuting(n: usize, k: usize) -> RotationForm {
    let paulis = (1..=k).map(|mask| {
        let letters: Vec<Pauli> = (0..n)
            .map(|q| {
                if mask.checked_shr(q as u32).unwrap_or(0) & 1 == 1 {
                    Pauli::Z
                } else {
                    Pauli::I
                }
            })
            .collect();
        PauliProduct::from_letters(Sign::Plus, &letters)
    });
    RotationForm::from_paulis(n, paulis).expect("sizes match")
}

fn min_time(rf: &RotationForm, runs: usize) -> (Duration, usize) {
    let mut best = Duration::MAX;
    let mut comparisons = 0;
    for _ in 0..runs {
        let start = Instant::now();
        let (_, _, stats) = optimize(std::hint::black_box(rf));
        best = best.min(start.elapsed());
        comparisons = stats.comparisons;
    }
    (best, comparisons)
}

fn c5_complexity() -> Check {
    let mut times = Vec::new();
    let mut notes = Vec::new();
    for k in [256, 512, 1024] {
        let rf = all_commuting(16, k);
        let (t, comparisons) = min_time(&rf, 15);
        ensure(comparisons <= k * k, || format!("k={k}: {comparisons} comparisons"))?;
        ensure(comparisons == k * (k - 1) / 2, || {
            format!("k={k}: expected a full scan, got {comparisons}")
        })?;
        times.push(t.as_secs_f64());
        notes.push(format!("k={k}: {comparisons} cmp"));
    }
    for w in times.windows(2) {
        let ratio = w[1] / w[0];
        ensure(ratio <= 5.0, || format!("doubling k multiplied time by {ratio:.2}"))?;
    }
    // same k, wider Paulis: per-comparison cost grows at most linearly in n
    let (narrow, c_narrow) = min_time(&all_commuting(16, 512), 9);
    let (wide, c_wide) = min_time(&all_commuting(1024, 512), 9);
    let per = |t: Duration, c: usize| t.as_secs_f64() / c as f64;
    let growth = per(wide, c_wide) / per(narrow, c_narrow);
    ensure(growth <= 64.0 * 2.0, || {
        format!("n 16 -> 1024 grew per-comparison cost {growth:.1}x")
    })?;
    Ok(format!(
        "{}; time ratios {:.2}, {:.2}; n 16 -> 1024 per-comparison {growth:.1}x",
        notes.join(", "),
        times[1] / times[0],
        times[2] / times[1]
    ))
}

fn c6_tgraph() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let lists = 500;
    for i in 0..lists {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=12);
        let paulis = gen::random_rotation_axes(&mut rng, n, m);
        let g = TGraph::from_paulis(paulis.clone(), Exec::default());
        let bound = g.t_depth_bound();
        let brute = brute_force_min_layers(&paulis).map_err(|e| e.to_string())?;
        ensure(bound == brute, || {
            format!("list {i}: bound {bound}, exhaustive {brute}")
        })?;
        let s = g.layerize(Placement::Asap).map_err(|e| e.to_string())?;
        ensure(s.depth() == bound, || format!("list {i}: {} layers", s.depth()))?;
        for layer in &s.layers {
            for &a in layer {
                for &b in layer {
                    ensure(paulis[a].commutes_with(&paulis[b]), || {
                        format!("list {i}: layer mixes {a}, {b}")
                    })?;
                }
            }
        }
        let rots: Vec<Rotation> = paulis.iter().cloned().map(Rotation::synthetic).collect();
        let t = rng.gen_range(m.max(1)..=m + 2);
        let ext = extend_with_ancillas(&rots, t).map_err(|e| e.to_string())?;
        let g2 = TGraph::from_rotations(ext, Exec::Sequential);
        ensure(g.edges() == g2.edges(), || {
            format!("list {i}: ancillas changed the edge set")
        })?;
    }
    Ok(format!(
        "{lists} lists with m <= 12: bound = exhaustive, layers commute, ancillas keep edges"
    ))
}

fn c7_layers() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut independent = 0;
    while independent < 120 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=n);
        let layer: Vec<Rotation> = gen::random_commuting_independent_set(&mut rng, n, m)
            .into_iter()
            .map(Rotation::synthetic)
            .collect();
        let c = synthesize_layer(&layer, n).map_err(|e| e.to_string())?;
        ensure(c.t_depth() == 1, || format!("T-depth {}", c.t_depth()))?;
        let u = unitary_of_circuit(&c, 10).map_err(|e| e.to_string())?;
        let axes: Vec<PauliProduct> = layer.iter().map(|r| r.pauli.clone()).collect();
        let v = unitary_of_rotations(&axes, n, 10).map_err(|e| e.to_string())?;
        ensure(equivalent_up_to_phase(&u, &v, 1e-8).unwrap_or(false), || {
            "layer unitary differs".into()
        })?;
        independent += 1;
    }
    let mut dependent = 0;
    while dependent < 40 {
        let n = rng.gen_range(1..=3);
        let t = 6 - n;
        let m = rng.gen_range(2..=t);
        let base = gen::random_commuting_independent_set(&mut rng, n, n);
        let axes: Vec<PauliProduct> = (0..m)
            .map(|_| {
                let mut p = base[rng.gen_range(0..n)].clone();
                for b in &base {
                    if rng.gen() {
                        let (q, k) = p.mul(b).expect("same size");
                        p = if k == 2 { q.negated() } else { q };
                    }
                }
                p
            })
            .filter(|p| !p.is_identity())
            .collect();
        if axes.len() < 2 || gf2_rank(&axes) == axes.len() {
            continue;
        }
        let layer: Vec<Rotation> = axes.iter().cloned().map(Rotation::synthetic).collect();
        ensure(synthesize_layer(&layer, n).is_err(), || {
            "dependent layer was accepted".into()
        })?;
        let ext = extend_with_ancillas(&layer, t).map_err(|e| e.to_string())?;
        ensure(rotations_ancilla_safe(&ext, n + t, t).unwrap_or(false), || {
            "ancilla unsafe".into()
        })?;
        let c = synthesize_layer(&ext, n + t).map_err(|e| e.to_string())?;
        ensure(c.t_depth() == 1, || format!("T-depth {}", c.t_depth()))?;
        let u = unitary_of_circuit(&c, 10).map_err(|e| e.to_string())?;
        let (block, leak) = ancilla_zero_block(&u, n);
        ensure(leak < 1e-12, || format!("ancilla leakage {leak}"))?;
        let v = unitary_of_rotations(&axes, n, 10).map_err(|e| e.to_string())?;
        ensure(equivalent_up_to_phase(&block, &v, 1e-8).unwrap_or(false), || {
            "ancilla layer differs".into()
        })?;
        dependent += 1;
    }
    Ok(format!(
        "{independent} independent layers depth 1 and exact; {dependent} dependent layers exact with n + t = 6"
    ))
}

fn c8_algebra() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pairs = 1200;
    for i in 0..pairs {
        let n = rng.gen_range(1..=4);
        let len = rng.gen_range(0..40);
        let c = gen::random_clifford_circuit(&mut rng, n, len);
        let p = gen::random_pauli(&mut rng, n);
        let t = CliffordTableau::from_circuit(&c).map_err(|e| e.to_string())?;
        let u = unitary_of_circuit(&c, 10).map_err(|e| e.to_string())?;
        let dense = u.matmul(&pauli_matrix(&p)).matmul(&u.adjoint());
        let image = t.conjugate(&p).map_err(|e| e.to_string())?;
        ensure(dense_to_pauli(&dense, 1e-9).as_ref() == Some(&image), || {
            format!("pair {i}: {p} -> {image}")
        })?;
    }
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let all: Vec<PauliProduct> = letters
        .iter()
        .flat_map(|&a| {
            letters
                .iter()
                .map(move |&b| PauliProduct::from_letters(Sign::Plus, &[a, b]))
        })
        .collect();
    let mut laws = 0;
    for q in &all {
        let v = CliffordTableau::squared_rotation(q);
        let r2 = unitary_of_rotations(&[q.clone(), q.clone()], 2, 10).map_err(|e| e.to_string())?;
        for s in all.iter().flat_map(|s| [s.clone(), s.clone().negated()]) {
            let image = v.conjugate(&s).map_err(|e| e.to_string())?;
            let expected = if s.commutes_with(q) {
                s.clone()
            } else {
                let (sq, k) = s.mul(q).expect("same size");
                if (k + 1) % 4 == 2 {
                    sq.negated()
                } else {
                    sq
                }
            };
            ensure(image == expected, || {
                format!("R({q})^2 maps {s} to {image}, expected {expected}")
            })?;
            let dense = r2.matmul(&pauli_matrix(&s)).matmul(&r2.adjoint());
            ensure(dense_to_pauli(&dense, 1e-9) == Some(image), || {
                format!("dense R({q})^2 on {s}")
            })?;
            laws += 1;
        }
    }
    Ok(format!(
        "{pairs} (Clifford, Pauli) pairs match dense; squared-rotation law on {laws} signed 2-qubit pairs"
    ))
}

fn c9_informational() -> Check {
    // Only mod5_4 ships with the crate; other benchmark rows need user files.
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("a.qc"), MOD5_4).map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("b.qc"), ".v a\nBEGIN\nrz a\nEND\n").map_err(|e| e.to_string())?;
    let report = bench_dir(dir.path(), OutputMode::InPlace, Exec::Sequential).map_err(|e| e.to_string())?;
    ensure(report.rows.len() == 2, || format!("{} rows", report.rows.len()))?;
    ensure(report.rows[1].status.starts_with("warning"), || {
        "bad file not flagged".into()
    })?;
    Ok("not reproducible without external .qc inputs; bench runs user-supplied sets and flags bad files".into())
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: &str, name: &str, check: Check| match &check {
        Ok(detail) => println!("PASS  {id}  {name}: {detail}"),
        Err(detail) => {
            failed += 1;
            println!("FAIL  {id}  {name}: {detail}");
        }
    };
    report("C1", "mod5_4 end-to-end", c1_mod5_4());
    report("C2", "maximum reduction", c2_max_reduction());
    let (c3, c4) = soundness_suite();
    report("C3", "soundness suite", c3);
    report("C4", "CNOT invariance", c4);
    report("C5", "complexity envelope", c5_complexity());
    report("C6", "T-graph properties", c6_tgraph());
    report("C7", "layer synthesis", c7_layers());
    report("C8", "algebra oracles", c8_algebra());
    report("C9", "full benchmark table (informational)", c9_informational());
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
