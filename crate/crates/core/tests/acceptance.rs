//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::process::ExitCode;

use qes2d::cli::{run, EXIT_OK, EXIT_VERIFY};
use qes2d::oracle::{fd_spectrum, ode_residual, Grid};
use qes2d::quantization::{
    continuant, mixed_coulomb_solve, mixed_coulomb_solve_with, mixed_energy, mixed_energy_with,
    sextic_constraint_solve, singular_b_solve, solve, SexticUnknown, SolveOptions,
};
use qes2d::recurrence::{FormulaSet, RecurrenceRow};
use qes2d::wavefunction::{node_count, normalize, overlap};
use qes2d::{Family, PotentialSpec, QesSolution};
use rand::{rngs::StdRng, Rng, SeedableRng};

/// Collects named sub-checks for one criterion.
struct Criterion {
    failures: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Self { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn finish(self, label: &str, summary: &str) -> bool {
        if self.failures.is_empty() {
            println!("{label} PASS {summary}");
            true
        } else {
            println!("{label} FAIL {summary}; {}", self.failures.join("; "));
            false
        }
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("qes2d").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn lowest(spec: &PotentialSpec, m: u32, k: usize) -> Vec<f64> {
    fd_spectrum(spec, m, &Grid::default_for(spec.family()), k).unwrap_or_default()
}

fn single(spec: &PotentialSpec, m: u32, p: usize) -> Option<QesSolution> {
    solve(spec, m, p, SolveOptions::default()).ok().and_then(|mut v| (v.len() == 1).then(|| v.remove(0)))
}

fn ac1() -> bool {
    let mut c = Criterion::new();
    let a = sextic_constraint_solve(0, 0, SexticUnknown::A { b: 1.0, c: 1.0 }).unwrap()[0];
    c.check(a == -3.75, format!("a={a}"));
    let spec = PotentialSpec::Sextic { a, b: 1.0, c: 1.0 };
    let Some(sol) = single(&spec, 0, 0) else {
        c.check(false, "no unique solution");
        return c.finish("AC-1", "sextic p=0");
    };
    c.check((sol.energy - 1.0).abs() <= 1e-12, format!("E={}", sol.energy));
    let res = ode_residual(&sol);
    c.check(res <= 1e-10, format!("ode_residual={res:e}"));
    let fd = lowest(&spec, 0, 1);
    let delta = (fd[0] - 1.0).abs();
    c.check(delta <= 1e-3, format!("fd delta={delta:e}"));
    c.finish("AC-1", &format!("sextic p=0: a={a}, E={}, residual={res:.1e}, fd delta={delta:.1e}", sol.energy))
}

fn ac2() -> bool {
    let mut c = Criterion::new();
    let a = sextic_constraint_solve(0, 1, SexticUnknown::A { b: 1.0, c: 1.0 }).unwrap()[0];
    c.check(a == -7.75, format!("a={a}"));
    let spec = PotentialSpec::Sextic { a, b: 1.0, c: 1.0 };
    let sols = solve(&spec, 0, 1, SolveOptions::default()).unwrap_or_default();
    let expected = [2.0 - 17f64.sqrt(), 2.0 + 17f64.sqrt()];
    c.check(sols.len() == 2, format!("{} roots", sols.len()));
    if sols.len() == 2 {
        for (s, e) in sols.iter().zip(expected) {
            c.check((s.energy - e).abs() <= 1e-10, format!("E={} vs {e}", s.energy));
        }
        let fd = lowest(&spec, 0, 2);
        for (k, s) in sols.iter().enumerate() {
            let rel = (fd[k] - s.energy).abs() / s.energy.abs();
            c.check(rel <= 1e-3, format!("fd level {k} rel delta={rel:e}"));
        }
        c.check(node_count(&sols[0]) == 0 && node_count(&sols[1]) == 1, "node counts");
        match (normalize(sols[0].clone()), normalize(sols[1].clone())) {
            (Ok(lo), Ok(hi)) => {
                let ov = overlap(&lo, &hi).map(f64::abs).unwrap_or(f64::NAN);
                c.check(ov <= 1e-8, format!("overlap={ov:e}"));
            }
            _ => c.check(false, "normalization failed"),
        }
    }
    let (code, out) = cli(&[
        "verify",
        "--family",
        "sextic",
        "--a",
        "-7.75",
        "--b",
        "1",
        "--c",
        "1",
        "--p",
        "1",
        "--use-paper-formulas",
    ]);
    c.check(code == EXIT_VERIFY && out.contains("\"FAIL\""), format!("as-published verify exit {code}"));
    c.finish("AC-2", "sextic p=1 pair 2±√17, overlap, nodes, as-published value reported FAIL")
}

fn ac3() -> bool {
    let mut c = Criterion::new();
    let spec = PotentialSpec::Mixed { a: 0.0, b: 1.0, c: 0.0 };
    let grid = Grid::default_for(Family::Mixed);
    let mut worst: f64 = 0.0;
    for m in 0..=2u32 {
        let fd = fd_spectrum(&spec, m, &grid, 3).unwrap();
        for (p, level) in fd.iter().enumerate() {
            let e = mixed_energy(&spec, m, p).unwrap();
            let delta = (level - e).abs();
            worst = worst.max(delta);
            c.check(delta <= 5e-3, format!("m={m} p={p}: E_p={e} vs fd(n_r={p})={level:.6}"));
        }
    }
    c.finish("AC-3", &format!("mixed oscillator E_p=2(1+m+p) vs fd level n_r=p, max delta={worst:.3}"))
}

fn ac4() -> bool {
    let mut c = Criterion::new();
    let roots = mixed_coulomb_solve(1.0, 1.0, 0, 0).unwrap_or_default();
    c.check(roots.len() == 1 && (roots[0] + 0.5).abs() <= 1e-12, format!("c={roots:?}"));
    let spec = PotentialSpec::Mixed { a: 1.0, b: 1.0, c: -0.5 };
    match single(&spec, 0, 0) {
        Some(sol) => {
            c.check((sol.energy - 1.75).abs() <= 1e-12, format!("E={}", sol.energy));
            let res = ode_residual(&sol);
            c.check(res <= 1e-10, format!("ode_residual={res:e}"));
            let delta = (lowest(&spec, 0, 1)[0] - 1.75).abs();
            c.check(delta <= 1e-3, format!("fd delta={delta:e}"));
        }
        None => c.check(false, "no solution"),
    }
    let printed_c = mixed_coulomb_solve_with(1.0, 1.0, 0, 0, FormulaSet::Printed).unwrap_or_default();
    let printed_spec = PotentialSpec::Mixed { a: 1.0, b: 1.0, c: 0.5 };
    let printed_e = mixed_energy_with(&printed_spec, 0, 0, FormulaSet::Printed).unwrap_or(f64::NAN);
    c.check(printed_c == [0.5] && printed_e == 2.0, format!("as-published c={printed_c:?} E={printed_e}"));
    let options = SolveOptions { formulas: FormulaSet::Printed, ..SolveOptions::default() };
    match solve(&printed_spec, 0, 0, options) {
        Ok(sols) => {
            let res = ode_residual(&sols[0]);
            c.check(res >= 1e-2, format!("as-published ode_residual={res:e}"));
        }
        Err(e) => c.check(false, format!("as-published solve: {e}")),
    }
    let (code, _) = cli(&["verify", "--family", "mixed", "--a", "1", "--b", "1", "--c", "0.5", "--use-paper-formulas"]);
    c.check(code == EXIT_VERIFY, format!("as-published verify exit {code}"));
    c.finish("AC-4", "mixed c=−0.5, E=1.75; as-published E=2, c=0.5 rejected")
}

fn ac5() -> bool {
    let mut c = Criterion::new();
    let roots = singular_b_solve(1.0, 2.0, 1.0, 0, 0).unwrap_or_default();
    c.check(roots.len() == 1 && (roots[0] - 2.0).abs() <= 1e-12, format!("b={roots:?}"));
    let spec = PotentialSpec::SingularEvenPower { a: 1.0, b: 2.0, c: 2.0, d: 1.0 };
    match single(&spec, 0, 0) {
        Some(sol) => {
            c.check((sol.energy - 6.0).abs() <= 1e-12, format!("E={}", sol.energy));
            let res = ode_residual(&sol);
            c.check(res <= 1e-10, format!("ode_residual={res:e}"));
            let grid = Grid::new(0.05, 10.0, 20000).unwrap();
            let delta = (fd_spectrum(&spec, 0, &grid, 1).unwrap()[0] - 6.0).abs();
            c.check(delta <= 1e-3, format!("fd delta={delta:e}"));
        }
        None => c.check(false, "no solution"),
    }
    c.finish("AC-5", "singular p=0: b=2, E=6")
}

fn ac6() -> bool {
    let mut c = Criterion::new();
    let roots = singular_b_solve(1.0, 2.0, 1.0, 0, 1).unwrap_or_default();
    let expected = [8.0 - 2.0 * 13f64.sqrt(), 8.0 + 2.0 * 13f64.sqrt()];
    c.check(roots.len() == 2, format!("b={roots:?}"));
    for (b, e) in roots.iter().zip(expected) {
        c.check((b - e).abs() <= 1e-9, format!("b={b} vs {e}"));
        let spec = PotentialSpec::SingularEvenPower { a: 1.0, b: *b, c: 2.0, d: 1.0 };
        match single(&spec, 0, 1) {
            Some(sol) => {
                c.check((sol.energy - 10.0).abs() <= 1e-12, format!("E={}", sol.energy));
                let res = ode_residual(&sol);
                c.check(res <= 1e-8, format!("b={b}: ode_residual={res:e}"));
            }
            None => c.check(false, format!("b={b}: no solution")),
        }
    }
    c.finish("AC-6", "singular p=1: b=8±2√13, E=10")
}

fn laplace_det(m: &[Vec<f64>]) -> f64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<f64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][j] * laplace_det(&minor)
        })
        .sum()
}

fn ac7() -> bool {
    let mut c = Criterion::new();
    let mut rng = StdRng::seed_from_u64(2024);
    let log_uniform = |rng: &mut StdRng| 4f64.powf(rng.gen_range(-1.0..1.0));
    let mut states = 0;
    for i in 0..200 {
        let m = rng.gen_range(0..=3u32);
        let p = rng.gen_range(0..=2usize);
        let (x, y, z) = (log_uniform(&mut rng), log_uniform(&mut rng), log_uniform(&mut rng));
        let specs: Vec<PotentialSpec> = match i % 3 {
            0 => sextic_constraint_solve(m, p, SexticUnknown::A { b: x, c: y })
                .map(|a| vec![PotentialSpec::Sextic { a: a[0], b: x, c: y }])
                .unwrap_or_default(),
            1 => mixed_coulomb_solve(x, y, m, p)
                .map(|cs| cs.into_iter().map(|cc| PotentialSpec::Mixed { a: x, b: y, c: cc }).collect())
                .unwrap_or_default(),
            _ => singular_b_solve(x, y, z, m, p)
                .map(|bs| bs.into_iter().map(|b| PotentialSpec::SingularEvenPower { a: x, b, c: y, d: z }).collect())
                .unwrap_or_default(),
        };
        c.check(!specs.is_empty(), format!("config {i}: constraint solver gave nothing"));
        for spec in specs {
            match solve(&spec, m, p, SolveOptions::default()) {
                Ok(sols) => {
                    for s in sols {
                        states += 1;
                        let res = ode_residual(&s);
                        c.check(
                            s.is_consistent(1e-8) && res <= 1e-8,
                            format!("config {i} {spec:?} m={m} p={p} E={}: ode_residual={res:e}", s.energy),
                        );
                    }
                }
                Err(e) => c.check(false, format!("config {i} {spec:?}: {e}")),
            }
        }
    }
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let rows: Vec<RecurrenceRow> = (0..5)
            .map(|n| RecurrenceRow {
                n,
                lower: rng.gen_range(-2.0..2.0),
                diag: rng.gen_range(-2.0..2.0),
                upper: rng.gen_range(-2.0..2.0),
            })
            .collect();
        let mut dense = vec![vec![0.0; 5]; 5];
        for k in 0..5 {
            dense[k][k] = rows[k].diag;
            if k < 4 {
                dense[k][k + 1] = rows[k + 1].upper;
                dense[k + 1][k] = rows[k].lower;
            }
        }
        let err = (continuant(&rows, 4) - laplace_det(&dense)).abs();
        worst = worst.max(err);
    }
    c.check(worst <= 1e-12, format!("continuant vs cofactor max error={worst:e}"));
    c.finish("AC-7", &format!("{states} states from 200 random configurations; 100 random 5×5 determinants"))
}

fn ac8() -> bool {
    let mut c = Criterion::new();
    let base = ["--family", "sextic", "--a", "-7.75", "--b", "1", "--c", "1", "--p", "1"];
    for cmd in ["solve", "verify"] {
        for format in ["json", "csv"] {
            let args: Vec<&str> = [cmd].into_iter().chain(base).chain(["--format", format]).collect();
            let first = cli(&args);
            let second = cli(&args);
            c.check(first.0 == EXIT_OK && first == second, format!("{cmd} --format {format}"));
        }
    }
    c.finish("AC-8", "solve/verify JSON and CSV byte-identical across runs")
}

fn main() -> ExitCode {
    let results = [ac1(), ac2(), ac3(), ac4(), ac5(), ac6(), ac7(), ac8()];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
