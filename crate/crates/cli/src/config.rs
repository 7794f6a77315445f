// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: one JSON document, layered as
//! built-in defaults, then preset parameters, then the `params` block, then flags.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::Read;
use std::path::Path;

use abcage_core::dynamics::{uniform_times, Propagation, StateVector};
use abcage_core::spectral::PhaseAxis;
use abcage_core::{Boundary, LatticeParams, SiteIndex, Sublattice, C64};
use serde::Deserialize;

use crate::error::CliError;
use crate::presets::Preset;

/// Default sample count of an evolution time grid.
pub const DEFAULT_SAMPLES: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Sweep,
    Evolve,
    Cls,
    Resonator,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Spectrum => "spectrum",
            Self::Sweep => "sweep",
            Self::Evolve => "evolve",
            Self::Cls => "cls",
            Self::Resonator => "resonator",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Creutz,
    CrossStitch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryName {
    Open,
    Periodic,
}

impl From<BoundaryName> for Boundary {
    fn from(b: BoundaryName) -> Self {
        match b {
            BoundaryName::Open => Boundary::Open,
            BoundaryName::Periodic => Boundary::Periodic,
        }
    }
}

/// Lattice fields, each optional. Also the shape of the flag overrides.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    pub j: Option<f64>,
    pub gamma: Option<f64>,
    pub phi1: Option<f64>,
    pub phi2: Option<f64>,
    pub n: Option<usize>,
    pub boundary: Option<BoundaryName>,
}

impl ParamOverrides {
    fn apply(&self, d: &mut Draft) {
        d.j = self.j.unwrap_or(d.j);
        d.gamma = self.gamma.or(d.gamma);
        d.phi1 = self.phi1.unwrap_or(d.phi1);
        d.phi2 = self.phi2.unwrap_or(d.phi2);
        d.n = self.n.unwrap_or(d.n);
        d.boundary = self.boundary.map(Boundary::from).unwrap_or(d.boundary);
    }
}

struct Draft {
    j: f64,
    /// `None` until something sets it; the model then picks the default.
    gamma: Option<f64>,
    phi1: f64,
    phi2: f64,
    n: usize,
    boundary: Boundary,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub model: Option<Model>,
    #[serde(default)]
    pub params: ParamOverrides,
    pub spectrum: Option<SpectrumBlock>,
    pub sweep: Option<SweepBlock>,
    pub evolve: Option<EvolveBlock>,
    pub cls: Option<ClsBlock>,
    pub resonator: Option<ResonatorBlock>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumBlock {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    Phi1,
    Phi2,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub axis: Option<AxisName>,
    pub resolution: Option<usize>,
}

/// A real amplitude or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialBlock {
    pub preset: Option<String>,
    pub vector: Option<Vec<Amplitude>>,
    /// Rescale an explicit vector to unit norm.
    #[serde(default)]
    pub normalize: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimesBlock {
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub samples: Option<usize>,
    /// Explicit sample times; excludes the other fields.
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropagationName {
    Auto,
    Spectral,
    Pade,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveBlock {
    pub initial: Option<InitialBlock>,
    pub times: Option<TimesBlock>,
    pub propagation: Option<PropagationName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchName {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum SubName {
    A,
    B,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecomposeBlock {
    pub cell: usize,
    pub sub: SubName,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClsBlock {
    pub cells: Option<Vec<usize>>,
    pub branch: Option<BranchName>,
    pub decompose: Option<DecomposeBlock>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonatorBlock {
    pub kappa: Option<f64>,
    pub gammas: Option<Vec<f64>>,
    /// Primary gain; omitted means balanced, `kappa^2 / gamma`.
    pub gain: Option<f64>,
    /// Linker phase in radians; omitted means `pi`.
    pub delta: Option<f64>,
    pub samples: Option<usize>,
    /// Comparison window in units of `1 / Gamma_eff`.
    pub horizon: Option<f64>,
}

/// Fully resolved command.
#[derive(Debug, Clone)]
pub enum CommandSpec {
    Spectrum,
    Sweep {
        axis: PhaseAxis,
        resolution: usize,
    },
    Evolve {
        initial: StateVector,
        times: Vec<f64>,
        propagation: Propagation,
    },
    Cls {
        cells: Vec<usize>,
        plus: bool,
        minus: bool,
        decompose: Option<SiteIndex>,
    },
    Resonator {
        kappa: f64,
        gammas: Vec<f64>,
        gain: Option<f64>,
        delta: Option<f64>,
        samples: usize,
        horizon: f64,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: Model,
    pub params: LatticeParams,
    pub command: CommandSpec,
}

/// Reads the config document; `-` is standard input, `None` an empty document.
pub fn load_config_text(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        None => Ok("{}".to_string()),
        Some(p) if p == Path::new("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| {
                CliError::config("--config", format!("cannot read standard input: {e}"))
            })?;
            Ok(s)
        }
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::config("--config", format!("cannot read {}: {e}", p.display()))),
    }
}

pub fn parse_raw(text: &str) -> Result<RawConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Config {
            message: inner.to_string(),
            field: (path != ".").then_some(path),
            line: Some(inner.line()),
            column: Some(inner.column()),
        }
    })?;
    Ok(raw)
}

impl RunConfig {
    pub fn from_json(
        text: &str,
        command: Command,
        flags: &ParamOverrides,
    ) -> Result<Self, CliError> {
        Self::resolve(parse_raw(text)?, command, flags)
    }

    pub fn resolve(
        raw: RawConfig,
        command: Command,
        flags: &ParamOverrides,
    ) -> Result<Self, CliError> {
        let present: Vec<&str> = [
            (raw.spectrum.is_some(), "spectrum"),
            (raw.sweep.is_some(), "sweep"),
            (raw.evolve.is_some(), "evolve"),
            (raw.cls.is_some(), "cls"),
            (raw.resonator.is_some(), "resonator"),
        ]
        .into_iter()
        .filter_map(|(p, name)| p.then_some(name))
        .collect();
        match present.as_slice() {
            [] => {}
            [one] if *one == command.name() => {}
            _ => {
                return Err(CliError::config(
                    command.name(),
                    format!(
                    "config must hold exactly one command block matching `{command}`, found [{}]",
                    present.join(", ")
                ),
                ))
            }
        }

        let model = raw.model.unwrap_or(Model::Creutz);
        let evolve = raw.evolve.unwrap_or_default();
        let initial = evolve.initial.unwrap_or_default();
        let preset = match (&initial.preset, &initial.vector) {
            (Some(_), Some(_)) => {
                return Err(CliError::config(
                    "evolve.initial",
                    "give either `preset` or `vector`, not both",
                ))
            }
            (Some(name), None) => Some(name.parse::<Preset>()?),
            _ => None,
        };

        let mut draft = Draft {
            j: 1.0,
            gamma: None,
            phi1: FRAC_PI_2,
            phi2: FRAC_PI_2,
            n: 7,
            boundary: Boundary::Open,
        };
        if let Some(pp) = preset.and_then(|p| p.params()) {
            draft.j = pp.j;
            draft.gamma = Some(pp.gamma);
            draft.n = pp.n;
            draft.boundary = pp.boundary;
        }
        raw.params.apply(&mut draft);
        flags.apply(&mut draft);
        let gamma = match model {
            Model::CrossStitch => {
                let g = draft.gamma.unwrap_or(0.0);
                if g != 0.0 {
                    return Err(CliError::config(
                        "params.gamma",
                        format!(
                            "the cross-stitch model has no rung coupling; gamma must be 0, got {g}"
                        ),
                    ));
                }
                0.0
            }
            Model::Creutz => draft.gamma.unwrap_or(0.5),
        };
        let params = LatticeParams::new(
            draft.j,
            gamma,
            draft.phi1,
            draft.phi2,
            draft.n,
            draft.boundary,
        )
        .map_err(|e| {
            let field = match &e {
                abcage_core::Error::ParameterDomain { name, .. } => {
                    format!("params.{}", name.to_lowercase())
                }
                _ => "params".to_string(),
            };
            CliError::from(e).in_field(&field)
        })?;

        let spec = match command {
            Command::Spectrum => CommandSpec::Spectrum,
            Command::Sweep => {
                let b = raw.sweep.unwrap_or_default();
                let resolution = b.resolution.unwrap_or(64);
                if resolution < 2 {
                    return Err(CliError::config(
                        "sweep.resolution",
                        "resolution must be >= 2",
                    ));
                }
                CommandSpec::Sweep {
                    axis: match b.axis.unwrap_or(AxisName::Phi2) {
                        AxisName::Phi1 => PhaseAxis::Phi1,
                        AxisName::Phi2 => PhaseAxis::Phi2,
                    },
                    resolution,
                }
            }
            Command::Evolve => {
                let state = match (preset, initial.vector) {
                    (Some(p), _) => p.vector(&params)?,
                    (None, Some(v)) => explicit_vector(&v, params.sites(), initial.normalize)?,
                    (None, None) => {
                        return Err(CliError::config(
                            "evolve.initial",
                            "an initial state is required: `preset` or `vector`",
                        ))
                    }
                };
                CommandSpec::Evolve {
                    initial: state,
                    times: resolve_times(evolve.times.unwrap_or_default(), &params)?,
                    propagation: match evolve.propagation.unwrap_or(PropagationName::Auto) {
                        PropagationName::Auto => Propagation::Auto,
                        PropagationName::Spectral => Propagation::Spectral,
                        PropagationName::Pade => Propagation::Pade,
                    },
                }
            }
            Command::Cls => {
                let b = raw.cls.unwrap_or_default();
                let cells = b.cells.unwrap_or_else(|| (1..params.n).collect());
                if let Some(&bad) = cells.iter().find(|&&c| c < 1 || c >= params.n) {
                    return Err(CliError::config(
                        "cls.cells",
                        format!("plaquette cell {bad} out of range 1..={}", params.n - 1),
                    ));
                }
                let branch = b.branch.unwrap_or(BranchName::Both);
                let decompose = b
                    .decompose
                    .map(|d| {
                        let sub = match d.sub {
                            SubName::A => Sublattice::A,
                            SubName::B => Sublattice::B,
                        };
                        SiteIndex::new(d.cell, sub)
                            .map_err(|e| CliError::from(e).in_field("cls.decompose.cell"))
                    })
                    .transpose()?;
                CommandSpec::Cls {
                    cells,
                    plus: branch != BranchName::Minus,
                    minus: branch != BranchName::Plus,
                    decompose,
                }
            }
            Command::Resonator => {
                let b = raw.resonator.unwrap_or_default();
                let gammas = b
                    .gammas
                    .unwrap_or_else(|| vec![1.0, 3.0, 10.0, 30.0, 100.0]);
                if gammas.is_empty() {
                    return Err(CliError::config(
                        "resonator.gammas",
                        "need at least one loss rate",
                    ));
                }
                let samples = b.samples.unwrap_or(200);
                if samples == 0 {
                    return Err(CliError::config(
                        "resonator.samples",
                        "need at least one sample",
                    ));
                }
                let horizon = b.horizon.unwrap_or(1.0);
                if !(horizon.is_finite() && horizon > 0.0) {
                    return Err(CliError::config(
                        "resonator.horizon",
                        "horizon must be finite and > 0",
                    ));
                }
                CommandSpec::Resonator {
                    kappa: b.kappa.unwrap_or(0.1),
                    gammas,
                    gain: b.gain,
                    delta: b.delta,
                    samples,
                    horizon,
                }
            }
        };
        Ok(Self {
            model,
            params,
            command: spec,
        })
    }
}

fn explicit_vector(
    v: &[Amplitude],
    sites: usize,
    normalize: bool,
) -> Result<StateVector, CliError> {
    if v.len() != sites {
        return Err(CliError::config(
            "evolve.initial.vector",
            format!(
                "initial vector has {} components, lattice has 2N = {sites} sites",
                v.len()
            ),
        ));
    }
    let mut amps: Vec<C64> = v
        .iter()
        .map(|a| match *a {
            Amplitude::Real(x) => C64::new(x, 0.0),
            Amplitude::Complex([re, im]) => C64::new(re, im),
        })
        .collect();
    if normalize {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(CliError::config(
                "evolve.initial.vector",
                "cannot normalize the zero vector",
            ));
        }
        amps.iter_mut().for_each(|z| *z /= norm);
    }
    StateVector::new(amps).map_err(|e| CliError::from(e).in_field("evolve.initial.vector"))
}

/// Default stop: four periods below the exceptional point, a few growth
/// times above it (at most `20 / J`), and `20 / J` at it or off the cage phases.
fn default_stop(p: &LatticeParams) -> f64 {
    let cap = 20.0 / p.j;
    if !p.is_canonical() || p.gamma == p.j {
        cap
    } else if p.gamma < p.j {
        4.0 * PI / (p.j * p.j - p.gamma * p.gamma).sqrt()
    } else {
        (5.0 / (p.gamma - p.j)).min(cap)
    }
}

fn resolve_times(b: TimesBlock, params: &LatticeParams) -> Result<Vec<f64>, CliError> {
    if let Some(values) = b.values {
        if b.start.is_some() || b.stop.is_some() || b.samples.is_some() {
            return Err(CliError::config(
                "evolve.times",
                "`values` excludes `start`, `stop` and `samples`",
            ));
        }
        if values.is_empty() {
            return Err(CliError::config(
                "evolve.times.values",
                "need at least one time",
            ));
        }
        return Ok(values);
    }
    let start = b.start.unwrap_or(0.0);
    let stop = b.stop.unwrap_or_else(|| default_stop(params));
    let samples = b.samples.unwrap_or(DEFAULT_SAMPLES);
    if !(start.is_finite() && stop.is_finite() && stop > start) {
        return Err(CliError::config("evolve.times", "need finite start < stop"));
    }
    if samples == 0 {
        return Err(CliError::config(
            "evolve.times.samples",
            "need at least one sample",
        ));
    }
    Ok(uniform_times(start, stop, samples))
}
