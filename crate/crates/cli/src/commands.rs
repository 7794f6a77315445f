// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Command bodies. Each returns its artifacts in memory; nothing touches disk here.

use abcage_core::cls::{build_cls, decompose_single_site, verify_cls, Branch};
use abcage_core::dynamics::{evolve_with, Propagation, StateVector};
use abcage_core::lattice::{build_creutz, build_cross_stitch};
use abcage_core::resonator::{reduction_error, ResonatorParams};
use abcage_core::spectral::{eig, sweep_phase, PhaseAxis};
use abcage_core::{ComplexMatrix, LatticeParams, SiteIndex};

use crate::config::{CommandSpec, Model, RunConfig};
use crate::error::CliError;
use crate::output::{float, CsvDoc, OutputFile};
use crate::svg::{heatmap, scatter, Panel};

#[derive(Debug, Clone, Default)]
pub struct RunOutput {
    pub files: Vec<OutputFile>,
    /// Non-fatal notes for standard error.
    pub warnings: Vec<String>,
}

pub fn execute(cfg: &RunConfig, svg: bool) -> Result<RunOutput, CliError> {
    match &cfg.command {
        CommandSpec::Spectrum => spectrum(cfg, svg),
        CommandSpec::Sweep { axis, resolution } => sweep(cfg, *axis, *resolution, svg),
        CommandSpec::Evolve {
            initial,
            times,
            propagation,
        } => evolve(cfg, initial, times, *propagation, svg),
        CommandSpec::Cls {
            cells,
            plus,
            minus,
            decompose,
        } => cls(&cfg.params, cells, *plus, *minus, *decompose),
        CommandSpec::Resonator {
            kappa,
            gammas,
            gain,
            delta,
            samples,
            horizon,
        } => resonator(*kappa, gammas, *gain, *delta, *samples, *horizon),
    }
}

fn hamiltonian(cfg: &RunConfig) -> Result<ComplexMatrix, CliError> {
    Ok(match cfg.model {
        Model::Creutz => build_creutz(&cfg.params)?,
        Model::CrossStitch => build_cross_stitch(&cfg.params)?,
    })
}

fn svg_file(name: &str, body: String) -> OutputFile {
    OutputFile {
        name: name.to_string(),
        contents: body.into_bytes(),
    }
}

fn spectrum(cfg: &RunConfig, svg: bool) -> Result<RunOutput, CliError> {
    let s = eig(&hamiltonian(cfg)?)?;
    let mut doc = CsvDoc::new(&["index", "re", "im"]);
    for (i, e) in s.eigenvalues.iter().enumerate() {
        doc.row([i.to_string(), float(e.re), float(e.im)]);
    }
    let mut out = RunOutput::default();
    out.files.push(doc.finish("spectrum.csv"));
    if svg {
        let points = s.eigenvalues.iter().map(|e| (e.re, e.im)).collect();
        out.files.push(svg_file(
            "spectrum.svg",
            scatter(
                "spectrum",
                &[Panel {
                    xlabel: "Re E",
                    ylabel: "Im E",
                    points,
                }],
            ),
        ));
    }
    Ok(out)
}

fn sweep(
    cfg: &RunConfig,
    axis: PhaseAxis,
    resolution: usize,
    svg: bool,
) -> Result<RunOutput, CliError> {
    let r = sweep_phase(&cfg.params, axis, resolution)?;
    let mut doc = CsvDoc::new(&[
        "phase",
        "level",
        "re",
        "im",
        "flatness",
        "coalescence",
        "defectiveness",
    ]);
    for (i, phase) in r.axis.iter().enumerate() {
        for (level, e) in r.spectra[i].iter().enumerate() {
            doc.row([
                float(*phase),
                level.to_string(),
                float(e.re),
                float(e.im),
                float(r.flatness[i]),
                float(r.coalescence[i]),
                float(r.defectiveness[i]),
            ]);
        }
    }
    let mut out = RunOutput::default();
    out.files.push(doc.finish("sweep.csv"));
    if svg {
        let label = match axis {
            PhaseAxis::Phi1 => "Phi1",
            PhaseAxis::Phi2 => "Phi2",
        };
        let pairs = |f: fn(&abcage_core::C64) -> f64| -> Vec<(f64, f64)> {
            r.axis
                .iter()
                .zip(&r.spectra)
                .flat_map(|(p, s)| s.iter().map(move |e| (*p, f(e))))
                .collect()
        };
        out.files.push(svg_file(
            "sweep.svg",
            scatter(
                &format!("{label} sweep"),
                &[
                    Panel {
                        xlabel: label,
                        ylabel: "Re E",
                        points: pairs(|e| e.re),
                    },
                    Panel {
                        xlabel: label,
                        ylabel: "Im E",
                        points: pairs(|e| e.im),
                    },
                ],
            ),
        ));
    }
    Ok(out)
}

fn evolve(
    cfg: &RunConfig,
    initial: &StateVector,
    times: &[f64],
    propagation: Propagation,
    svg: bool,
) -> Result<RunOutput, CliError> {
    let traj = evolve_with(&hamiltonian(cfg)?, initial, times, propagation)?;
    let mut doc = CsvDoc::new(&["t", "site", "re", "im", "intensity", "normalized_intensity"]);
    let mut summary = CsvDoc::new(&["t", "total_intensity"]);
    let mut normalized = Vec::with_capacity(times.len());
    for (k, t) in traj.times.iter().enumerate() {
        let total = traj.total_intensity[k];
        let column: Vec<f64> = traj.site_intensity[k]
            .iter()
            .map(|i| if total > 0.0 { i / total } else { 0.0 })
            .collect();
        for (s, z) in traj.states[k].amplitudes().iter().enumerate() {
            doc.row([
                float(*t),
                (s + 1).to_string(),
                float(z.re),
                float(z.im),
                float(traj.site_intensity[k][s]),
                float(column[s]),
            ]);
        }
        summary.row([float(*t), float(total)]);
        normalized.push(column);
    }
    let mut out = RunOutput::default();
    if traj.total_intensity.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Numerical(
            "intensity overflowed; shorten the time grid".into(),
        ));
    }
    out.files.push(doc.finish("evolve.csv"));
    out.files.push(summary.finish("evolve_summary.csv"));
    if svg {
        out.files.push(svg_file(
            "evolve.svg",
            heatmap("normalized intensity", "t", "site", times, &normalized),
        ));
    }
    Ok(out)
}

fn cls(
    params: &LatticeParams,
    cells: &[usize],
    plus: bool,
    minus: bool,
    decompose: Option<SiteIndex>,
) -> Result<RunOutput, CliError> {
    let h = build_creutz(params)?;
    let mut doc = CsvDoc::new(&[
        "cell",
        "branch",
        "site",
        "re",
        "im",
        "energy_re",
        "energy_im",
        "residual",
    ]);
    let branches: Vec<(Branch, &str)> = [
        (plus, Branch::Plus, "plus"),
        (minus, Branch::Minus, "minus"),
    ]
    .into_iter()
    .filter_map(|(on, b, name)| on.then_some((b, name)))
    .collect();
    for &cell in cells {
        for &(branch, name) in &branches {
            let state = build_cls(params, cell, branch)?;
            let residual = verify_cls(&h, &state)?;
            let first = state.window_start.flat();
            for (offset, a) in state.amplitudes.iter().enumerate() {
                doc.row([
                    cell.to_string(),
                    name.to_string(),
                    (first + offset + 1).to_string(),
                    float(a.re),
                    float(a.im),
                    float(state.energy.re),
                    float(state.energy.im),
                    float(residual),
                ]);
            }
        }
    }
    let mut out = RunOutput::default();
    out.files.push(doc.finish("cls.csv"));

    if let Some(site) = decompose {
        let d = decompose_single_site(params, site)
            .map_err(|e| CliError::from(e).in_field("cls.decompose"))?;
        let error = d.reconstruction_error(params.sites())?;
        let mut doc = CsvDoc::new(&[
            "basis",
            "cell",
            "sign_re",
            "sign_im",
            "coefficient_re",
            "coefficient_im",
            "reconstruction_error",
        ]);
        for (i, (c, state)) in d.coefficients.iter().zip(&d.basis).enumerate() {
            let label = if i % 2 == 0 { "alpha" } else { "beta" };
            let s = state.sign();
            doc.row([
                label.to_string(),
                state.window_start.cell().to_string(),
                float(s.re),
                float(s.im),
                float(c.re),
                float(c.im),
                float(error),
            ]);
        }
        out.files.push(doc.finish("cls_decomposition.csv"));
    }
    Ok(out)
}

fn resonator(
    kappa: f64,
    gammas: &[f64],
    gain: Option<f64>,
    delta: Option<f64>,
    samples: usize,
    horizon: f64,
) -> Result<RunOutput, CliError> {
    let mut doc = CsvDoc::new(&[
        "gamma",
        "gamma_over_kappa",
        "gamma_eff",
        "reduction_error",
        "in_regime",
    ]);
    let mut out = RunOutput::default();
    for (i, &gamma) in gammas.iter().enumerate() {
        let field = format!("resonator.gammas[{i}]");
        let base = match gain {
            Some(g) => ResonatorParams::new(kappa, gamma, g),
            None => ResonatorParams::balanced(kappa, gamma),
        }
        .map_err(|e| CliError::from(e).in_field(&field))?;
        let p = match delta {
            Some(d) => base.with_delta(d),
            None => base,
        };
        let ge = p.gamma_eff();
        let window = if ge > 0.0 { horizon / ge } else { horizon };
        let report = reduction_error(&p, window, samples)?;
        if !report.in_regime {
            out.warnings.push(format!(
                "gamma / kappa = {} is below {}; adiabatic elimination is not reliable there",
                gamma / kappa,
                abcage_core::resonator::VALID_LOSS_RATIO
            ));
        }
        doc.row([
            float(gamma),
            float(gamma / kappa),
            float(ge),
            float(report.error),
            report.in_regime.to_string(),
        ]);
    }
    out.files.push(doc.finish("resonator.csv"));
    Ok(out)
}
