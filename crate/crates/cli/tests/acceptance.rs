// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exits non-zero if any criterion fails, except those listed in
//! `KNOWN_FAILURES`, whose stated literals cannot be met (see the README).

use std::f64::consts::{FRAC_PI_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command as Process;

use abcage_cli::output::OutputFile;
use abcage_cli::{execute, Command, ParamOverrides, RunConfig};
use abcage_core::cls::{build_cls, verify_cls, Branch};
use abcage_core::dynamics::{
    analytic_single_site, edge_state, evolve, period, Leg, Side, StateVector,
};
use abcage_core::lattice::{bloch, build_creutz};
use abcage_core::resonator::{effective_two_mode, reduction_error, ResonatorParams};
use abcage_core::spectral::{eig, ep_defectiveness, flatness, k_grid};
use abcage_core::{Boundary, LatticeParams, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_FAILURES: &[u32] = &[8];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ladder(gamma: f64, b: Boundary) -> LatticeParams {
    LatticeParams::creutz(1.0, gamma, 7, b).unwrap()
}

fn run_cli(command: Command, json: &str) -> Vec<OutputFile> {
    let cfg = RunConfig::from_json(json, command, &ParamOverrides::default()).unwrap();
    execute(&cfg, false).unwrap().files
}

/// Numeric CSV body of the named artifact.
fn table(files: &[OutputFile], name: &str) -> Vec<Vec<f64>> {
    let f = files.iter().find(|f| f.name == name).unwrap();
    csv::Reader::from_reader(f.contents.as_slice())
        .records()
        .map(|r| {
            r.unwrap()
                .iter()
                .map(|x| x.parse::<f64>().unwrap())
                .collect()
        })
        .collect()
}

fn ac1() -> Outcome {
    let s = eig(&build_creutz(&ladder(0.5, Boundary::Periodic)).unwrap()).unwrap();
    let e = 0.75f64.sqrt();
    let plus = s
        .eigenvalues
        .iter()
        .filter(|v| (*v - e).norm() < 1e-10)
        .count();
    let minus = s
        .eigenvalues
        .iter()
        .filter(|v| (*v + e).norm() < 1e-10)
        .count();
    let dev = s
        .eigenvalues
        .iter()
        .map(|v| (v - e).norm().min((v + e).norm()))
        .fold(0.0, f64::max);
    outcome(
        plus == 7 && minus == 7,
        format!("+E x{plus}, -E x{minus}, max deviation {dev:.1e} (tol 1e-10)"),
    )
}

fn ac2() -> Outcome {
    let p = ladder(0.5, Boundary::Open);
    let s = eig(&build_creutz(&p).unwrap()).unwrap();
    let e = 0.75f64.sqrt();
    let bulk = |sign: f64| {
        s.eigenvalues
            .iter()
            .filter(|v| (*v - sign * e).norm() < 1e-10)
            .count()
    };
    let up = s
        .eigenvalues
        .iter()
        .position(|v| (v - C64::new(0.0, 0.5)).norm() < 1e-10);
    let down = s
        .eigenvalues
        .iter()
        .position(|v| (v - C64::new(0.0, -0.5)).norm() < 1e-10);
    let (Some(up), Some(down)) = (up, down) else {
        return outcome(false, "edge eigenvalues +-0.5i not found");
    };
    // overlap with the exact edge vectors, insensitive to phase
    let overlap = |k: usize, side: Side| {
        let v = s.eigenvector(k);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let w = edge_state(&p, side).unwrap().state;
        let dot: C64 = w
            .amplitudes()
            .iter()
            .zip(&v)
            .map(|(a, b)| a.conj() * b)
            .sum();
        1.0 - dot.norm() / norm
    };
    let mismatch = overlap(up, Side::Left).max(overlap(down, Side::Right));
    let residual = edge_state(&p, Side::Left)
        .unwrap()
        .residual
        .max(edge_state(&p, Side::Right).unwrap().residual);
    let pass = bulk(1.0) == 6 && bulk(-1.0) == 6 && mismatch < 1e-10 && residual < 1e-12;
    outcome(
        pass,
        format!(
            "bulk +E x{}, -E x{}, edge vector mismatch {mismatch:.1e}, edge residual {residual:.1e}",
            bulk(1.0),
            bulk(-1.0)
        ),
    )
}

fn ac3() -> Outcome {
    let mut worst_im: f64 = 0.0;
    let mut worst_re: f64 = 0.0;
    for k in 1..=9 {
        let below =
            eig(&build_creutz(&ladder(k as f64 / 10.0, Boundary::Periodic)).unwrap()).unwrap();
        worst_im = worst_im.max(below.max_abs_imag());
        let above = eig(&build_creutz(&ladder(1.0 + k as f64 / 10.0, Boundary::Periodic)).unwrap())
            .unwrap();
        worst_re = worst_re.max(above.max_abs_real());
    }
    let s = eig(&build_creutz(&ladder(1.5, Boundary::Periodic)).unwrap()).unwrap();
    let target = 1.25f64.sqrt();
    let dev = s
        .eigenvalues
        .iter()
        .map(|v| {
            (v - C64::new(0.0, target))
                .norm()
                .min((v + C64::new(0.0, target)).norm())
        })
        .fold(0.0, f64::max);
    outcome(
        worst_im < 1e-10 && worst_re < 1e-10 && dev < 1e-10,
        format!("max|Im E| below EP {worst_im:.1e}, max|Re E| above EP {worst_re:.1e}, +-1.1180339887i deviation {dev:.1e}"),
    )
}

fn ac4() -> Outcome {
    let mut worst: f64 = 0.0;
    for gamma in [0.0, 0.5, 1.5] {
        for k in 0..20 {
            let phi2 = 2.0 * PI * k as f64 / 20.0;
            let p = ladder(gamma, Boundary::Periodic)
                .with_phases(FRAC_PI_2, phi2)
                .unwrap();
            worst = worst.max(flatness(&p, 101).unwrap());
        }
    }
    outcome(
        worst < 1e-12,
        format!("max flatness {worst:.1e} over 20 Phi2 x Gamma in {{0, 0.5, 1.5}} (tol 1e-12)"),
    )
}

fn ac5() -> Outcome {
    let ks = k_grid(101);
    let at_ep = ks
        .iter()
        .map(|&k| ep_defectiveness(&bloch(&ladder(1.0, Boundary::Periodic), k).unwrap()).unwrap())
        .fold(f64::INFINITY, f64::min);
    let away = ks
        .iter()
        .map(|&k| ep_defectiveness(&bloch(&ladder(0.5, Boundary::Periodic), k).unwrap()).unwrap())
        .fold(0.0, f64::max);
    outcome(
        at_ep > 0.999 && away < 0.9,
        format!("min defectiveness at J = Gamma {at_ep:.6}, max at Gamma = 0.5 {away:.6}"),
    )
}

fn ac6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let j = rng.gen_range(0.5..2.0);
        let gamma = loop {
            let g: f64 = rng.gen_range(0.0..2.0 * j);
            if (g - j).abs() > 0.02 * j {
                break g;
            }
        };
        let p = LatticeParams::creutz(j, gamma, 7, Boundary::Open).unwrap();
        let h = build_creutz(&p).unwrap();
        for cell in 2..=5 {
            for branch in [Branch::Plus, Branch::Minus] {
                worst = worst.max(verify_cls(&h, &build_cls(&p, cell, branch).unwrap()).unwrap());
            }
        }
    }
    outcome(
        worst < 1e-12,
        format!("max residual {worst:.1e} over 20 (J, Gamma) x cells 2-5 x 2 branches"),
    )
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_in: f64 = 0.0;
    let mut worst_out: f64 = 0.0;
    for i in 0..50 {
        let gamma = if i % 2 == 0 {
            rng.gen_range(0.01..0.99)
        } else {
            rng.gen_range(1.01..1.99)
        };
        let t = rng.gen_range(0.0..10.0);
        let (site, leg) = if i % 4 < 2 {
            (4, Leg::Upper)
        } else {
            (5, Leg::Lower)
        };
        let p = ladder(gamma, Boundary::Open);
        let traj = evolve(
            &build_creutz(&p).unwrap(),
            &StateVector::single_site(14, site).unwrap(),
            &[t],
        )
        .unwrap();
        let window = analytic_single_site(&p, leg, t).unwrap();
        // errors relative to the state norm, which reaches ~1e7 for Gamma near 2
        let scale = traj.total_intensity[0].sqrt().max(1.0);
        // window [A_{j-1}, ..., B_{j+1}] for the excited cell j
        let first = (site & !1) - 2;
        for (s, z) in traj.states[0].amplitudes().iter().enumerate() {
            if (first..first + 6).contains(&s) {
                let want = window.amplitudes()[s - first];
                worst_in = worst_in.max((z - want).norm() / scale);
            } else {
                worst_out = worst_out.max(z.norm() / scale);
            }
        }
    }
    outcome(
        worst_in < 1e-10 && worst_out < 1e-12,
        format!("window error {worst_in:.1e} (tol 1e-10), outside {worst_out:.1e} (tol 1e-12), relative to ||psi||"),
    )
}

fn ac8() -> Outcome {
    let stated = [(0.2, 3.206371), (0.9, 7.207302)];
    let mut literal_ok = true;
    let mut notes = Vec::new();
    for (gamma, lit) in stated {
        let t = period(&ladder(gamma, Boundary::Open)).unwrap();
        literal_ok &= (t - lit).abs() < 1e-6;
        notes.push(format!(
            "T({gamma}) = {t:.10} vs {lit} (diff {:.1e})",
            (t - lit).abs()
        ));
    }

    // pointwise curve, plus a simulated revival psi(T) = -psi(0) every tenth point
    let mut curve: f64 = 0.0;
    let mut revival: f64 = 0.0;
    for k in 0..100 {
        let gamma = 0.99 * k as f64 / 99.0;
        let p = ladder(gamma, Boundary::Open);
        let t = period(&p).unwrap();
        curve = curve.max((t - PI / (1.0 - gamma * gamma).sqrt()).abs());
        if k % 10 == 0 {
            let psi0 = StateVector::single_site(14, 4).unwrap();
            let traj = evolve(&build_creutz(&p).unwrap(), &psi0, &[t]).unwrap();
            let d = traj.states[0]
                .amplitudes()
                .iter()
                .zip(psi0.amplitudes())
                .map(|(a, b)| (a + b).norm())
                .fold(0.0, f64::max);
            revival = revival.max(d);
        }
    }

    // fig4a through the CLI: intensities at t = T equal those at t = 0
    let files = run_cli(
        Command::Evolve,
        r#"{"evolve": {"initial": {"preset": "fig4a"}}}"#,
    );
    let rows = table(&files, "evolve.csv");
    let t_rev = PI / 0.96f64.sqrt();
    let at = |t: f64| -> Vec<f64> {
        rows.iter()
            .filter(|r| (r[0] - t).abs() < 1e-9)
            .map(|r| r[4])
            .collect()
    };
    let i0 = at(0.0);
    let t_sample = rows
        .iter()
        .map(|r| r[0])
        .min_by(|a, b| (a - t_rev).abs().total_cmp(&(b - t_rev).abs()))
        .unwrap();
    let i_t = at(t_sample);
    let fig4a = i0
        .iter()
        .zip(&i_t)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let pass = literal_ok && curve < 1e-10 && revival < 1e-8 && fig4a < 1e-8;
    outcome(
        pass,
        format!(
            "{}; curve {curve:.1e}; revival {revival:.1e}; fig4a pattern at T {fig4a:.1e}. \
             The stated literals equal pi/sqrt(J^2 - Gamma^2) evaluated with pi = 3.14159",
            notes.join(", ")
        ),
    )
}

/// Active-site interval (one-based) of an evolve CSV at `threshold`.
fn active_sites(rows: &[Vec<f64>], threshold: f64) -> Option<(usize, usize)> {
    let sites: Vec<usize> = rows
        .iter()
        .filter(|r| r[4] >= threshold)
        .map(|r| r[1] as usize)
        .collect();
    Some((*sites.iter().min()?, *sites.iter().max()?))
}

fn ac9() -> Outcome {
    let mut found = Vec::new();
    for preset in ["fig5a", "fig5b", "fig5c"] {
        let json = format!(r#"{{"evolve": {{"initial": {{"preset": "{preset}"}}}}}}"#);
        let rows = table(&run_cli(Command::Evolve, &json), "evolve.csv");
        found.push((preset, active_sites(&rows, 1e-10)));
    }
    let union = found
        .iter()
        .filter_map(|(_, r)| *r)
        .fold((usize::MAX, 0), |a, r| (a.0.min(r.0), a.1.max(r.1)));
    let each_inside = found
        .iter()
        .all(|(_, r)| r.is_some_and(|(a, b)| a >= 3 && b <= 10));
    let detail = found
        .iter()
        .map(|(p, r)| match r {
            Some((a, b)) => format!("{p}: sites {a}-{b}"),
            None => format!("{p}: empty"),
        })
        .collect::<Vec<_>>()
        .join(", ");
    outcome(
        each_inside && union == (3, 10),
        format!("{detail}; union {}-{}", union.0, union.1),
    )
}

fn ac10() -> Outcome {
    let times: Vec<String> = (0..=100)
        .map(|i| format!("{}", 5.0 * i as f64 / 100.0))
        .collect();
    let mut worst: f64 = 0.0;
    for (preset, sign) in [("edgeR", -1.0), ("edgeL", 1.0)] {
        let json = format!(
            r#"{{"evolve": {{"initial": {{"preset": "{preset}"}}, "times": {{"values": [{}]}}}}}}"#,
            times.join(",")
        );
        for row in table(&run_cli(Command::Evolve, &json), "evolve_summary.csv") {
            let want = (sign * 2.0 * 0.5 * row[0]).exp();
            worst = worst.max((row[1] - want).abs() / want);
        }
    }
    outcome(
        worst < 1e-10,
        format!("max relative deviation from exp(-+2 Gamma t) {worst:.1e} over t in [0, 5]"),
    )
}

fn ac11() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (gamma, tol) in [(0.2, 1e-8), (0.9, 1e-6)] {
        let p = ladder(gamma, Boundary::Open);
        let h = build_creutz(&p).unwrap();
        let t_half = period(&p).unwrap();
        // two periods, sampled on multiples of T/200 so extrema are hit exactly
        let times: Vec<f64> = (0..=400).map(|k| t_half * k as f64 / 200.0).collect();
        let traj = evolve(&h, &StateVector::single_site(14, 4).unwrap(), &times).unwrap();
        let lo = traj
            .total_intensity
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let hi = traj.total_intensity.iter().cloned().fold(0.0, f64::max);
        // independent: sum of the squared closed-form components
        let brute = times
            .iter()
            .map(|&t| {
                analytic_single_site(&p, Leg::Upper, t)
                    .unwrap()
                    .amplitudes()
                    .iter()
                    .map(|z| z.re * z.re + z.im * z.im)
                    .sum::<f64>()
            })
            .fold(0.0, f64::max);
        let bound = (1.0 + gamma * gamma) / (1.0 - gamma * gamma);
        let ok = (lo - 1.0).abs() < tol && (hi - bound).abs() < tol && (brute - bound).abs() < tol;
        pass &= ok;
        parts.push(format!(
            "Gamma {gamma}: [{lo:.9}, {hi:.9}] vs [1, {bound:.9}]"
        ));
    }
    outcome(pass, parts.join("; "))
}

fn ac12() -> Outcome {
    let kappa = 0.1;
    let mut exact = true;
    for gamma in [1.0, 3.0, 10.0, 30.0, 100.0, 7.3] {
        let p = ResonatorParams::balanced(kappa, gamma).unwrap();
        let h = effective_two_mode(&p).unwrap();
        exact &=
            h[(0, 1)].norm() == kappa * kappa / gamma && p.gamma_eff() == kappa * kappa / gamma;
    }
    let errors: Vec<f64> = [10.0, 30.0, 100.0]
        .iter()
        .map(|&gamma| {
            let p = ResonatorParams::balanced(kappa, gamma).unwrap();
            reduction_error(&p, 1.0 / p.gamma_eff(), 400).unwrap().error
        })
        .collect();
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    outcome(
        exact && errors[0] < 0.05 && monotone,
        format!(
            "Gamma_eff exact: {exact}; errors at gamma = 10, 30, 100: {:.2e}, {:.2e}, {:.2e}",
            errors[0], errors[1], errors[2]
        ),
    )
}

fn ac13() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_abcage");
    let configs = [
        (
            "spectrum",
            r#"{"params": {"boundary": "periodic"}, "spectrum": {}}"#,
        ),
        ("sweep", r#"{"sweep": {"axis": "phi1", "resolution": 16}}"#),
        ("evolve", r#"{"evolve": {"initial": {"preset": "fig5a"}}}"#),
        ("cls", r#"{"cls": {"decompose": {"cell": 3, "sub": "B"}}}"#),
        (
            "resonator",
            r#"{"resonator": {"kappa": 0.1, "gammas": [1, 10, 100]}}"#,
        ),
    ];
    let root = tempfile::tempdir().unwrap();
    let mut checked = 0;
    for (cmd, json) in configs {
        let cfg = root.path().join(format!("{cmd}.json"));
        std::fs::write(&cfg, json).unwrap();
        let mut outputs = Vec::new();
        for run in 0..2 {
            let dir = root.path().join(format!("{cmd}-{run}"));
            let status = Process::new(bin)
                .arg(cmd)
                .arg("--config")
                .arg(&cfg)
                .arg("--out")
                .arg(&dir)
                .output()
                .unwrap();
            if !status.status.success() {
                return outcome(false, format!("{cmd} exited with {}", status.status));
            }
            outputs.push(read_csvs(&dir));
        }
        if outputs[0].is_empty() || outputs[0] != outputs[1] {
            return outcome(false, format!("{cmd}: outputs differ between runs"));
        }
        checked += outputs[0].len();
    }
    outcome(
        true,
        format!("{checked} CSV files byte-identical across two runs of all five commands"),
    )
}

fn read_csvs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn main() {
    let criteria: [Criterion; 13] = [
        (1, "flat-band values under PBC", ac1),
        (2, "OBC spectrum and edge states", ac2),
        (3, "reality/imaginarity transition", ac3),
        (4, "flatness under Phi2", ac4),
        (5, "EP coalescence", ac5),
        (6, "CLS residuals", ac6),
        (7, "analytic-dynamics oracle", ac7),
        (8, "period reproduction", ac8),
        (9, "fig5 confinement window", ac9),
        (10, "edge dynamics", ac10),
        (11, "total-intensity envelope", ac11),
        (12, "resonator reduction", ac12),
        (13, "CLI determinism", ac13),
    ];
    let mut unexpected = 0;
    let mut known = 0;
    for (id, name, check) in criteria {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let tag = if result.pass { "PASS" } else { "FAIL" };
        let suffix = if !result.pass && KNOWN_FAILURES.contains(&id) {
            known += 1;
            " [known: stated literals unattainable]"
        } else {
            if !result.pass {
                unexpected += 1;
            }
            ""
        };
        println!("{tag} AC{id:02} {name}: {}{suffix}", result.detail);
    }
    println!(
        "acceptance: {} passed, {} failed ({known} known, {unexpected} unexpected)",
        13 - known - unexpected,
        known + unexpected
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
