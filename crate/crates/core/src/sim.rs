//! Seeded Monte Carlo sampling of the channel noise terms and
//! Kolmogorov–Smirnov checks against the analytic laws.
//!
//! Draws are generated in chunks of 65 536. Chunk `k` uses a ChaCha8 stream
//! seeded with the batch seed and stream number `k`, so a batch is
//! bit-identical for a given `(seed, count, model)` whatever the number of
//! worker threads.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{noise_model, ChannelConfig, ChannelNoiseModel, ComponentScales};
use crate::error::{domain, Error, Result};
use crate::stable::{self, standardize, CdfTable, StableParams};

const CHUNK: usize = 1 << 16;

/// KS critical value at the 1% level, asymptotically `1.63/√n`.
pub const KS_COEFFICIENT: f64 = 1.63;

/// How a batch was generated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMethod {
    /// `μ + c/G²` with `G` standard normal.
    LevyInverseSquare,
    /// Second Lévy delay minus the first.
    LevyDifference,
    /// Chambers–Mallows–Stuck.
    ChambersMallowsStuck,
    /// `|l_x + v|` applied to a channel-B batch.
    Folded { l_x: f64 },
}

/// Seeded draws of a noise term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub values: Vec<f64>,
    pub seed: u64,
    pub count: usize,
    pub model: ChannelNoiseModel,
    pub method: SamplingMethod,
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParams("sample count must be positive".into()))
    } else {
        Ok(())
    }
}

/// Fill `n` values with `draw`, one ChaCha8 stream per chunk.
fn generate<F>(n: usize, seed: u64, draw: F) -> Vec<f64>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let mut out = vec![0.0; n];
    out.par_chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(k, chunk)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            for v in chunk {
                *v = draw(&mut rng);
            }
        });
    out
}

/// `c/G²`, redrawn in the (measure-zero) case `G = 0`.
fn levy_draw(rng: &mut ChaCha8Rng, c: f64) -> f64 {
    loop {
        let g: f64 = rng.sample(StandardNormal);
        let x = c / (g * g);
        if x.is_finite() {
            return x;
        }
    }
}

/// Lévy draws `μ + c/G²`.
pub fn sample_levy(mu: f64, c: f64, n: usize, seed: u64) -> Result<SampleBatch> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(domain("sample_levy", "scale c must be positive", c));
    }
    check_count(n)?;
    let model = ChannelNoiseModel::from_params(StableParams::levy(mu, c)?)?;
    Ok(SampleBatch {
        values: generate(n, seed, |rng| mu + levy_draw(rng, c)),
        seed,
        count: n,
        model,
        method: SamplingMethod::LevyInverseSquare,
    })
}

/// Noise draws of a channel built from its Lévy delays: a single delay for
/// kind A, the second delay minus the first for kinds B and C.
pub fn sample_channel(cfg: &ChannelConfig, n: usize, seed: u64) -> Result<SampleBatch> {
    check_count(n)?;
    let model = noise_model(cfg)?;
    let (values, method) = match cfg.component_scales()? {
        ComponentScales::Single(c) => (
            generate(n, seed, |rng| levy_draw(rng, c)),
            SamplingMethod::LevyInverseSquare,
        ),
        ComponentScales::Difference { first, second } => (
            generate(n, seed, |rng| {
                let t_first = levy_draw(rng, first);
                let t_second = levy_draw(rng, second);
                t_second - t_first
            }),
            SamplingMethod::LevyDifference,
        ),
    };
    Ok(SampleBatch {
        values,
        seed,
        count: n,
        model,
        method,
    })
}

/// One standard draw `S(0, 1, α, β)` (Chambers–Mallows–Stuck, in the form
/// given by Weron).
fn cms_standard(rng: &mut ChaCha8Rng, alpha: f64, beta: f64) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u == 0.0 {
            continue;
        }
        let v = PI * (u - 0.5);
        let w: f64 = rng.sample(Exp1);
        if w == 0.0 {
            continue;
        }
        let x = if alpha == 1.0 {
            let a = FRAC_PI_2 + beta * v;
            FRAC_2_PI * (a * v.tan() - beta * (FRAC_PI_2 * w * v.cos() / a).ln())
        } else {
            let t = beta * (0.5 * PI * alpha).tan();
            let b = t.atan() / alpha;
            let s = (1.0 + t * t).powf(0.5 / alpha);
            s * (alpha * (v + b)).sin() / v.cos().powf(1.0 / alpha)
                * ((v - alpha * (v + b)).cos() / w).powf((1.0 - alpha) / alpha)
        };
        if x.is_finite() {
            return x;
        }
    }
}

/// Draws from `S(μ, c, α, β)` by Chambers–Mallows–Stuck; a cross-check
/// sampler for the whole family.
pub fn sample_stable_cms(params: &StableParams, n: usize, seed: u64) -> Result<SampleBatch> {
    check_count(n)?;
    let (std, map) = standardize(params)?;
    let model = ChannelNoiseModel::from_params(*params)?;
    let values = generate(n, seed, |rng| {
        map.inverse(cms_standard(rng, std.alpha, std.beta))
    });
    Ok(SampleBatch {
        values,
        seed,
        count: n,
        model,
        method: SamplingMethod::ChambersMallowsStuck,
    })
}

/// Channel-B observable `L_y = |l_x + L_n|`, element-wise.
pub fn fold_observable_b(l_x: f64, batch: &SampleBatch) -> Result<SampleBatch> {
    let p = batch.model.params;
    if !(p.alpha == 0.5 && p.beta == 0.0 && batch.model.symmetric) {
        return Err(Error::InvalidParams(
            "fold_observable_b expects a batch drawn from a channel-B noise law".into(),
        ));
    }
    if !l_x.is_finite() {
        return Err(domain("fold_observable_b", "l_x must be finite", l_x));
    }
    Ok(SampleBatch {
        values: batch.values.iter().map(|v| (l_x + v).abs()).collect(),
        seed: batch.seed,
        count: batch.count,
        model: batch.model,
        method: SamplingMethod::Folded { l_x },
    })
}

// ---------------------------------------------------------------------------
// goodness of fit

/// Result of a Kolmogorov–Smirnov test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub ks_statistic: f64,
    pub sample_count: usize,
    pub threshold: f64,
    pub pass: bool,
}

impl GofReport {
    fn new(ks_statistic: f64, sample_count: usize, threshold: f64) -> Self {
        Self {
            ks_statistic,
            sample_count,
            threshold,
            pass: ks_statistic <= threshold,
        }
    }
}

/// Default one-sample threshold `1.63/√n`.
pub fn ks_threshold(n: usize) -> f64 {
    KS_COEFFICIENT / (n as f64).sqrt()
}

/// Default two-sample threshold `1.63·√((n+m)/(nm))`.
pub fn ks_threshold_two_sample(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    KS_COEFFICIENT * ((n + m) / (n * m)).sqrt()
}

/// Distribution function of a law, in a form cheap enough to evaluate at
/// every sample.
pub enum ModelCdf {
    Levy { mu: f64, c: f64 },
    Gaussian { mu: f64, c: f64 },
    Half { table: CdfTable, mu: f64, c: f64 },
    General(StableParams),
}

impl ModelCdf {
    pub fn new(params: &StableParams) -> Result<Self> {
        let (std, _) = standardize(params)?;
        Ok(if params.is_levy() {
            ModelCdf::Levy {
                mu: params.mu,
                c: params.c,
            }
        } else if std.alpha == 2.0 {
            ModelCdf::Gaussian {
                mu: params.mu,
                c: params.c,
            }
        } else if std.alpha == 0.5 {
            ModelCdf::Half {
                table: CdfTable::half(std.beta)?,
                mu: params.mu,
                c: params.c,
            }
        } else {
            ModelCdf::General(*params)
        })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            ModelCdf::Levy { mu, c } => stable::levy_cdf(x, *mu, *c),
            ModelCdf::Gaussian { mu, c } => Ok(0.5 * crate::specfun::erfc(-(x - mu) / (2.0 * c))),
            ModelCdf::Half { table, mu, c } => Ok(table.eval((x - mu) / c)),
            ModelCdf::General(p) => stable::cdf(x, p),
        }
    }
}

fn sorted(values: &[f64]) -> Result<Vec<f64>> {
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidParams("sample contains NaN".into()));
    }
    let mut v = values.to_vec();
    v.par_sort_unstable_by(f64::total_cmp);
    Ok(v)
}

/// One-sample KS statistic of `values` against `cdf`.
pub fn ks_statistic(values: &[f64], cdf: &ModelCdf) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidParams(
            "KS test needs a non-empty sample".into(),
        ));
    }
    let xs = sorted(values)?;
    let n = xs.len() as f64;
    let ds = xs
        .par_iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf.eval(x)?;
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            Ok(above.max(below))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(ds.into_iter().fold(0.0, f64::max))
}

/// KS test of a batch against the law `params` with the default threshold.
pub fn ks_test_params(batch: &SampleBatch, params: &StableParams) -> Result<GofReport> {
    ks_test_with_threshold(batch, params, ks_threshold(batch.values.len()))
}

/// KS test of a batch against a noise model with the default threshold
/// `1.63/√n`.
pub fn ks_test(batch: &SampleBatch, model: &ChannelNoiseModel) -> Result<GofReport> {
    ks_test_params(batch, &model.params)
}

/// KS test with an explicit pass threshold.
pub fn ks_test_with_threshold(
    batch: &SampleBatch,
    params: &StableParams,
    threshold: f64,
) -> Result<GofReport> {
    let cdf = ModelCdf::new(params)?;
    let d = ks_statistic(&batch.values, &cdf)?;
    Ok(GofReport::new(d, batch.values.len(), threshold))
}

/// Two-sample KS statistic `sup |F_a − F_b|`.
pub fn ks_two_sample_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParams(
            "KS test needs non-empty samples".into(),
        ));
    }
    let (xa, xb) = (sorted(a)?, sorted(b)?);
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Two-sample KS test; `threshold` defaults to `1.63·√((n+m)/(nm))`.
pub fn ks_two_sample(
    a: &SampleBatch,
    b: &SampleBatch,
    threshold: Option<f64>,
) -> Result<GofReport> {
    let d = ks_two_sample_statistic(&a.values, &b.values)?;
    let threshold =
        threshold.unwrap_or_else(|| ks_threshold_two_sample(a.values.len(), b.values.len()));
    Ok(GofReport::new(
        d,
        a.values.len().min(b.values.len()),
        threshold,
    ))
}
