//! Noise laws of the three diffusion timing channels.
//!
//! A particle released at distance `d` from an absorbing receiver in a 1D
//! medium with diffusion coefficient `D` arrives after a delay
//! `T ~ Lévy(0, d²/(2D))`.
//!
//! * **A**: information in the release time; noise `T_n`.
//! * **B**: information in the gap between two releases of the same particle
//!   type; noise `L_n = T_{n2} − T_{n1}`, the difference of two i.i.d.
//!   delays, `S(0, 2d²/D, 1/2, 0)`.
//! * **C**: as B with two particle types `a` (released first) and `b`;
//!   noise `Z_n = T_{nb} − T_{na}`,
//!   `S(0, d²(√D_a + √D_b)²/(2 D_a D_b), 1/2, (√D_a − √D_b)/(√D_a + √D_b))`.
//!
//! For a spherical receiver in 3D the delay keeps the Lévy form with a
//! geometry-dependent scale; that factor is not derived here and is supplied
//! by the caller as `scale3d`, a multiplier on every Lévy scale.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stable::{cf_levy, cf_stable, StableParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelKind {
    A,
    B,
    C,
}

impl std::fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ChannelKind::A => "A",
            ChannelKind::B => "B",
            ChannelKind::C => "C",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(ChannelKind::A),
            "B" | "b" => Ok(ChannelKind::B),
            "C" | "c" => Ok(ChannelKind::C),
            other => Err(Error::InvalidParams(format!(
                "unknown channel kind {other:?} (expected A, B or C)"
            ))),
        }
    }
}

/// Physical description of a channel. Lengths in metres, diffusion
/// coefficients in m²/s, times in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub kind: ChannelKind,
    /// Transmitter–receiver distance.
    pub d: f64,
    /// Diffusion coefficient (kinds A and B).
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub diffusion: Option<f64>,
    /// Diffusion coefficient of particle type a, released first (kind C).
    #[serde(rename = "D_a", default, skip_serializing_if = "Option::is_none")]
    pub diffusion_a: Option<f64>,
    /// Diffusion coefficient of particle type b (kind C).
    #[serde(rename = "D_b", default, skip_serializing_if = "Option::is_none")]
    pub diffusion_b: Option<f64>,
    /// Caller-supplied multiplier on the Lévy scales for a 3D receiver.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale3d: Option<f64>,
}

impl ChannelConfig {
    pub fn a(d: f64, diffusion: f64) -> Self {
        Self {
            kind: ChannelKind::A,
            d,
            diffusion: Some(diffusion),
            diffusion_a: None,
            diffusion_b: None,
            scale3d: None,
        }
    }

    pub fn b(d: f64, diffusion: f64) -> Self {
        Self {
            kind: ChannelKind::B,
            ..Self::a(d, diffusion)
        }
    }

    pub fn c(d: f64, diffusion_a: f64, diffusion_b: f64) -> Self {
        Self {
            kind: ChannelKind::C,
            d,
            diffusion: None,
            diffusion_a: Some(diffusion_a),
            diffusion_b: Some(diffusion_b),
            scale3d: None,
        }
    }

    pub fn with_scale3d(mut self, factor: f64) -> Self {
        self.scale3d = Some(factor);
        self
    }

    pub fn validate(&self) -> Result<()> {
        positive("d", Some(self.d))?;
        match self.kind {
            ChannelKind::A | ChannelKind::B => {
                positive("D", self.diffusion)?;
            }
            ChannelKind::C => {
                positive("D_a", self.diffusion_a)?;
                positive("D_b", self.diffusion_b)?;
            }
        }
        if self.scale3d.is_some() {
            positive("scale3d", self.scale3d)?;
        }
        Ok(())
    }

    fn scale_factor(&self) -> f64 {
        self.scale3d.unwrap_or(1.0)
    }

    /// Lévy scale `d²/(2D)` of a single arrival delay, times `scale3d`.
    fn levy_scale(&self, diffusion: f64) -> f64 {
        self.d * self.d / (2.0 * diffusion) * self.scale_factor()
    }

    /// Lévy scales of the delays making up the noise term: `(c,)` for A,
    /// `(c₁, c₂)` for B (equal), `(c_a, c_b)` for C. The noise is the second
    /// delay minus the first.
    pub fn component_scales(&self) -> Result<ComponentScales> {
        self.validate()?;
        Ok(match self.kind {
            ChannelKind::A => ComponentScales::Single(self.levy_scale(self.diffusion.unwrap())),
            ChannelKind::B => {
                let c = self.levy_scale(self.diffusion.unwrap());
                ComponentScales::Difference {
                    first: c,
                    second: c,
                }
            }
            ChannelKind::C => ComponentScales::Difference {
                first: self.levy_scale(self.diffusion_a.unwrap()),
                second: self.levy_scale(self.diffusion_b.unwrap()),
            },
        })
    }
}

fn positive(name: &str, value: Option<f64>) -> Result<()> {
    match value {
        None => Err(Error::InvalidParams(format!("{name} is required"))),
        Some(v) if v > 0.0 && v.is_finite() => Ok(()),
        Some(v) => Err(Error::InvalidParams(format!(
            "{name} must be finite and positive, got {v}"
        ))),
    }
}

/// Scales of the Lévy delays a noise term is built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ComponentScales {
    /// A single delay.
    Single(f64),
    /// `second − first`.
    Difference { first: f64, second: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    Nonnegative,
    FullLine,
}

/// A noise law together with its symmetry and support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelNoiseModel {
    pub params: StableParams,
    pub symmetric: bool,
    pub support: Support,
}

impl ChannelNoiseModel {
    pub fn from_params(params: StableParams) -> Result<Self> {
        params.validate()?;
        let support = if params.is_levy() && params.mu == 0.0 {
            Support::Nonnegative
        } else {
            Support::FullLine
        };
        Ok(Self {
            params,
            symmetric: params.beta == 0.0,
            support,
        })
    }
}

fn require_kind(cfg: &ChannelConfig, kind: ChannelKind) -> Result<()> {
    if cfg.kind == kind {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "expected a kind {kind} channel, got kind {}",
            cfg.kind
        )))
    }
}

/// Channel A: `T_n ~ Lévy(0, d²/(2D))`.
pub fn noise_model_a(cfg: &ChannelConfig) -> Result<ChannelNoiseModel> {
    require_kind(cfg, ChannelKind::A)?;
    cfg.validate()?;
    let c = cfg.levy_scale(cfg.diffusion.unwrap());
    ChannelNoiseModel::from_params(StableParams::levy(0.0, c)?)
}

/// Channel B: `L_n ~ S(0, 2d²/D, 1/2, 0)`.
pub fn noise_model_b(cfg: &ChannelConfig) -> Result<ChannelNoiseModel> {
    require_kind(cfg, ChannelKind::B)?;
    cfg.validate()?;
    let d = cfg.d;
    let c = 2.0 * d * d / cfg.diffusion.unwrap() * cfg.scale_factor();
    ChannelNoiseModel::from_params(StableParams::new(0.0, c, 0.5, 0.0)?)
}

/// Channel C: `Z_n ~ S(0, d²(√D_a + √D_b)²/(2 D_a D_b), 1/2,
/// (√D_a − √D_b)/(√D_a + √D_b))`. β > 0 when particle a, released first,
/// diffuses faster.
pub fn noise_model_c(cfg: &ChannelConfig) -> Result<ChannelNoiseModel> {
    require_kind(cfg, ChannelKind::C)?;
    cfg.validate()?;
    let (da, db) = (cfg.diffusion_a.unwrap(), cfg.diffusion_b.unwrap());
    let (ra, rb) = (da.sqrt(), db.sqrt());
    let sum = ra + rb;
    let d = cfg.d;
    let c = d * d * sum * sum / (2.0 * da * db) * cfg.scale_factor();
    let beta = (ra - rb) / sum;
    ChannelNoiseModel::from_params(StableParams::new(0.0, c, 0.5, beta)?)
}

/// Noise law of any channel kind.
pub fn noise_model(cfg: &ChannelConfig) -> Result<ChannelNoiseModel> {
    match cfg.kind {
        ChannelKind::A => noise_model_a(cfg),
        ChannelKind::B => noise_model_b(cfg),
        ChannelKind::C => noise_model_c(cfg),
    }
}

/// Largest deviation over `t_grid` between the product of the component
/// Lévy characteristic functions, `φ_second(t) φ_first(−t)`, and the
/// characteristic function of the closed-form noise law. Kinds B and C only.
pub fn verify_cf_composition(cfg: &ChannelConfig, t_grid: &[f64]) -> Result<f64> {
    let (first, second) = match cfg.component_scales()? {
        ComponentScales::Difference { first, second } => (first, second),
        ComponentScales::Single(_) => {
            return Err(Error::InvalidParams(
                "CF composition applies to kinds B and C".into(),
            ))
        }
    };
    let params = noise_model(cfg)?.params;
    Ok(t_grid
        .iter()
        .map(|&t| {
            let composed = cf_levy(t, 0.0, second) * cf_levy(-t, 0.0, first);
            (composed - cf_stable(t, &params)).norm()
        })
        .fold(0.0, f64::max))
}
