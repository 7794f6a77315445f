// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Named initial states for the figure runs.
//!
//! Figure presets carry their own `(J, Gamma, N)`; the two-site vectors are
//! 14-component caption vectors and need `N = 7`. `siteA(j)` / `siteB(j)`
//! excite a single site in cell `j` of whatever lattice is configured.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use abcage_core::dynamics::{edge_state, Side, StateVector};
use abcage_core::{Boundary, LatticeParams, SiteIndex, Sublattice};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig4a,
    Fig4b,
    Fig5a,
    Fig5b,
    Fig5c,
    Fig6a,
    Fig6b,
    Fig6c,
    EdgeL,
    EdgeR,
    SiteA(usize),
    SiteB(usize),
}

/// Parameters a preset pins down; config fields and flags may still override them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetParams {
    pub j: f64,
    pub gamma: f64,
    pub n: usize,
    pub boundary: Boundary,
}

const fn figure(gamma: f64) -> PresetParams {
    PresetParams {
        j: 1.0,
        gamma,
        n: 7,
        boundary: Boundary::Open,
    }
}

impl Preset {
    pub fn params(&self) -> Option<PresetParams> {
        use Preset::*;
        match self {
            Fig4a => Some(figure(0.2)),
            Fig4b => Some(figure(0.9)),
            Fig5a | Fig5b | Fig5c | EdgeL | EdgeR => Some(figure(0.5)),
            Fig6a | Fig6b | Fig6c => Some(figure(1.5)),
            SiteA(_) | SiteB(_) => None,
        }
    }

    /// `(site number, weight)` pairs, one-based, before the `1/sqrt2` factor.
    fn caption_pairs(&self) -> Option<[(usize, f64); 2]> {
        use Preset::*;
        Some(match self {
            Fig5a => [(5, 1.0), (8, -1.0)],
            Fig5b => [(6, 1.0), (8, 1.0)],
            Fig5c => [(6, 1.0), (7, 1.0)],
            Fig6a => [(5, 1.0), (8, 1.0)],
            Fig6b => [(6, 1.0), (7, -1.0)],
            Fig6c => [(5, 1.0), (6, -1.0)],
            _ => return None,
        })
    }

    pub fn vector(&self, params: &LatticeParams) -> Result<StateVector, CliError> {
        let dim = params.sites();
        use Preset::*;
        match self {
            Fig4a | Fig4b => single(dim, 4),
            SiteA(cell) | SiteB(cell) => {
                let sub = if matches!(self, SiteA(_)) {
                    Sublattice::A
                } else {
                    Sublattice::B
                };
                let site = SiteIndex::new(*cell, sub)
                    .map_err(|e| CliError::from(e).in_field("evolve.initial.preset"))?;
                if *cell > params.n {
                    return Err(CliError::config(
                        "evolve.initial.preset",
                        format!("cell {cell} exceeds the lattice size N = {}", params.n),
                    ));
                }
                single(dim, site.flat())
            }
            EdgeL | EdgeR => {
                let side = if *self == EdgeL {
                    Side::Left
                } else {
                    Side::Right
                };
                Ok(edge_state(params, side)
                    .map_err(|e| CliError::from(e).in_field("evolve.initial.preset"))?
                    .state)
            }
            _ => {
                let pairs = self.caption_pairs().expect("two-site preset");
                if dim != 14 {
                    return Err(CliError::config(
                        "evolve.initial.preset",
                        format!("preset {self} is a 14-site vector but N = {}", params.n),
                    ));
                }
                let mut amps = vec![0.0; dim];
                for (site, w) in pairs {
                    amps[site - 1] = w * FRAC_1_SQRT_2;
                }
                Ok(StateVector::from_real(&amps, false)?)
            }
        }
    }
}

fn single(dim: usize, flat: usize) -> Result<StateVector, CliError> {
    StateVector::single_site(dim, flat)
        .map_err(|e| CliError::from(e).in_field("evolve.initial.preset"))
}

impl FromStr for Preset {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Preset::*;
        let named = match s {
            "fig4a" => Some(Fig4a),
            "fig4b" => Some(Fig4b),
            "fig5a" => Some(Fig5a),
            "fig5b" => Some(Fig5b),
            "fig5c" => Some(Fig5c),
            "fig6a" => Some(Fig6a),
            "fig6b" => Some(Fig6b),
            "fig6c" => Some(Fig6c),
            "edgeL" => Some(EdgeL),
            "edgeR" => Some(EdgeR),
            _ => None,
        };
        if let Some(p) = named {
            return Ok(p);
        }
        let cell = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.trim().parse::<usize>().ok())
        };
        if let Some(j) = cell("siteA(") {
            return Ok(SiteA(j));
        }
        if let Some(j) = cell("siteB(") {
            return Ok(SiteB(j));
        }
        Err(CliError::config(
            "evolve.initial.preset",
            format!(
                "unknown preset `{s}`; expected fig4a, fig4b, fig5a-c, fig6a-c, edgeL, edgeR, siteA(j) or siteB(j)"
            ),
        ))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Preset::*;
        match self {
            Fig4a => write!(f, "fig4a"),
            Fig4b => write!(f, "fig4b"),
            Fig5a => write!(f, "fig5a"),
            Fig5b => write!(f, "fig5b"),
            Fig5c => write!(f, "fig5c"),
            Fig6a => write!(f, "fig6a"),
            Fig6b => write!(f, "fig6b"),
            Fig6c => write!(f, "fig6c"),
            EdgeL => write!(f, "edgeL"),
            EdgeR => write!(f, "edgeR"),
            SiteA(j) => write!(f, "siteA({j})"),
            SiteB(j) => write!(f, "siteB({j})"),
        }
    }
}
