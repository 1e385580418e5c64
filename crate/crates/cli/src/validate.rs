//! Invariant suites run by the `validate` command.

use std::f64::consts::PI;

use anyhow::Result;
use molnoise::channels::{noise_model, ChannelConfig, ComponentScales};
use molnoise::sim;
use molnoise::specfun::{dawson, dawson_real, exp_neg_z2, faddeeva, voigt_k, voigt_l};
use molnoise::stable::{
    cf_inversion_cdf, cf_inversion_pdf, cf_levy, cf_stable, levy_pdf, std_half_cdf, std_half_pdf,
    StableParams, TailApprox,
};
use molnoise::ComplexValue;
use serde_json::Value;

use crate::config::RunConfig;
use crate::output::{Cell, Table};

pub const IDENTITY_TOL: f64 = 1e-11;
pub const SPECFUN_REL_TOL: f64 = 1e-12;
pub const SYMMETRY_PDF_TOL: f64 = 1e-12;
pub const SYMMETRY_CDF_TOL: f64 = 1e-13;
pub const COMPOSITION_TOL: f64 = 1e-12;
pub const ORACLE_TOL: f64 = 1e-8;
pub const LEVY_REL_TOL: f64 = 1e-10;
/// Two-sample KS bound for the stability law, `3/√n` (3e-3 at n = 10⁶).
pub const STABILITY_KS_COEFFICIENT: f64 = 3.0;
pub const STABLE_TAIL_TOL: f64 = 0.05;
pub const GAUSSIAN_TAIL_TOL: f64 = 0.10;
/// Smallest x at which the stable tail suite checks the asymptotic.
pub const STABLE_TAIL_MIN_X: f64 = 100.0;

/// Dawson integral at 1.
const DAWSON_1: f64 = 0.538_079_506_912_768_419_136_387_420_407_556;
/// w(i) = e·erfc(1).
const FADDEEVA_I: f64 = 0.427_583_576_155_807_004_410_750_344_490_515;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.measured <= self.tolerance
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn add(&mut self, suite: &'static str, name: impl Into<String>, measured: f64, tolerance: f64) {
        self.checks.push(Check {
            suite,
            name: name.into(),
            // NaN counts as a failure
            measured: if measured.is_nan() {
                f64::INFINITY
            } else {
                measured
            },
            tolerance,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn suites(&self) -> Vec<&'static str> {
        let mut s: Vec<&'static str> = Vec::new();
        for c in &self.checks {
            if !s.contains(&c.suite) {
                s.push(c.suite);
            }
        }
        s
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.pass())
            .map(|c| format!("{}/{}", c.suite, c.name))
            .collect();
        let total = self.checks.len();
        if failed.is_empty() {
            format!("validate: {total}/{total} checks passed")
        } else {
            format!(
                "validate: {} of {total} checks failed: {}",
                failed.len(),
                failed.join(", ")
            )
        }
    }

    pub fn into_table(self, metadata: Value) -> Table {
        let mut t = Table::new(
            "validate",
            ["suite", "check", "measured", "tolerance", "pass"]
                .map(String::from)
                .to_vec(),
        );
        for c in self.checks {
            let pass = c.pass();
            t.push(vec![
                c.suite.into(),
                c.name.into(),
                Cell::Num(c.measured),
                Cell::Num(c.tolerance),
                pass.into(),
            ]);
        }
        t.metadata = metadata;
        t
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::default();
    specfun_suite(&mut r)?;
    symmetry_suite(&mut r)?;
    composition_suite(&mut r, cfg.fault_scale)?;
    oracle_suite(&mut r, cfg.fault_scale)?;
    ks_suite(&mut r, cfg)?;
    tail_suite(&mut r)?;
    Ok(r)
}

fn rel(got: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        got.abs()
    } else {
        ((got - exact) / exact).abs()
    }
}

fn specfun_grid() -> Vec<ComplexValue> {
    let axis = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    };
    let (re, im) = (axis(-7.0, 7.0, 29), axis(-6.0, 6.0, 25));
    re.iter()
        .flat_map(|&x| im.iter().map(move |&y| ComplexValue::new(x, y)))
        .collect()
}

fn specfun_suite(r: &mut Report) -> Result<()> {
    const S: &str = "specfun_identities";
    let half_j_sqrt_pi = ComplexValue::new(0.0, 0.5 * PI.sqrt());
    let (mut relation, mut reflection, mut voigt, mut real_axis) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for z in specfun_grid() {
        let w = faddeeva(z)?;
        let e = exp_neg_z2(z);
        let f = dawson(z)?;
        let rhs = half_j_sqrt_pi * (e - w);
        relation = relation.max((f - rhs).norm() / (1.0 + f.norm()));
        let w_neg = faddeeva(-z)?;
        let scale = 1.0 + w.norm() + 2.0 * e.norm();
        reflection = reflection.max((w_neg - (2.0 * e - w)).norm() / scale);
        if z.im > 0.0 {
            voigt = voigt
                .max(rel(voigt_k(z.re, z.im)?, w.re))
                .max(rel(voigt_l(z.re, z.im)?, w.im));
        }
        if z.im == 0.0 {
            real_axis = real_axis.max(rel(w.re, (-z.re * z.re).exp()));
        }
    }
    r.add(S, "dawson_faddeeva_relation", relation, IDENTITY_TOL);
    r.add(S, "reflection", reflection, IDENTITY_TOL);
    r.add(S, "voigt_decomposition", voigt, IDENTITY_TOL);
    r.add(S, "real_axis_law", real_axis, IDENTITY_TOL);
    r.add(
        S,
        "dawson_at_1",
        rel(dawson_real(1.0), DAWSON_1),
        SPECFUN_REL_TOL,
    );
    let wi = faddeeva(ComplexValue::new(0.0, 1.0))?;
    r.add(
        S,
        "faddeeva_at_i",
        rel(wi.re, FADDEEVA_I).max(wi.im.abs()),
        SPECFUN_REL_TOL,
    );
    Ok(())
}

fn symmetry_suite(r: &mut Report) -> Result<()> {
    const S: &str = "symmetry";
    let xs: Vec<f64> = (-40..=40).map(|k| 0.75 * k as f64 + 0.01).collect();
    for beta in [0.0, 0.25, 0.5, 0.9] {
        let (mut pdf_dev, mut cdf_dev) = (0.0f64, 0.0f64);
        for &x in &xs {
            let a = std_half_pdf(x, beta)?;
            let b = std_half_pdf(-x, -beta)?;
            pdf_dev = pdf_dev.max(rel(b, a));
            cdf_dev = cdf_dev.max((std_half_cdf(x, beta)? + std_half_cdf(-x, -beta)? - 1.0).abs());
        }
        r.add(
            S,
            format!("pdf_reflection_beta_{beta}"),
            pdf_dev,
            SYMMETRY_PDF_TOL,
        );
        r.add(
            S,
            format!("cdf_reflection_beta_{beta}"),
            cdf_dev,
            SYMMETRY_CDF_TOL,
        );
    }
    let mut cf_dev = 0.0f64;
    for (alpha, beta) in [(0.5, 0.3), (0.5, -1.0), (1.0, 0.7), (1.5, -0.4), (2.0, 0.0)] {
        let p = StableParams::new(0.25, 1.5, alpha, beta)?;
        for k in -50..=50 {
            let t = 0.37 * k as f64;
            cf_dev = cf_dev.max((cf_stable(t, &p) - cf_stable(-t, &p).conj()).norm());
        }
    }
    r.add(S, "cf_hermitian", cf_dev, 1e-15);
    Ok(())
}

/// Deterministic spread of coefficients over [1e-3, 1e3].
fn coefficient(k: usize, salt: f64) -> f64 {
    let golden = 0.618_033_988_749_894_9;
    let u = (k as f64 * golden + salt).fract();
    10f64.powf(-3.0 + 6.0 * u)
}

pub fn composition_configs() -> Vec<ChannelConfig> {
    let mut out = Vec::new();
    for k in 0..20 {
        out.push(ChannelConfig::b(coefficient(k, 0.1), coefficient(k, 0.47)));
    }
    for k in 0..20 {
        out.push(ChannelConfig::c(
            coefficient(k, 0.23),
            coefficient(k, 0.71),
            coefficient(k, 0.05),
        ));
    }
    out
}

/// Largest |φ_second(t) φ_first(−t) − φ_model(t)| over `ts`, with the model
/// scale multiplied by `fault`.
fn composition_deviation(cfg: &ChannelConfig, ts: &[f64], fault: f64) -> Result<f64> {
    let ComponentScales::Difference { first, second } = cfg.component_scales()? else {
        anyhow::bail!("composition needs a difference channel");
    };
    let mut p = noise_model(cfg)?.params;
    p.c *= fault;
    Ok(ts
        .iter()
        .map(|&t| (cf_levy(t, 0.0, second) * cf_levy(-t, 0.0, first) - cf_stable(t, &p)).norm())
        .fold(0.0, f64::max))
}

fn composition_suite(r: &mut Report, fault: f64) -> Result<()> {
    const S: &str = "cf_composition";
    let (mut b_dev, mut c_dev) = (0.0f64, 0.0f64);
    for cfg in composition_configs() {
        let c = cfg.component_scales()?;
        let ComponentScales::Difference { first, .. } = c else {
            unreachable!()
        };
        // t-grid spanning the decay of the characteristic function
        let span = 50.0 / first.max(1e-12);
        let ts: Vec<f64> = (0..100)
            .map(|i| -span + 2.0 * span * i as f64 / 99.0)
            .collect();
        let dev = composition_deviation(&cfg, &ts, fault)?;
        match cfg.kind {
            molnoise::channels::ChannelKind::B => b_dev = b_dev.max(dev),
            _ => c_dev = c_dev.max(dev),
        }
    }
    r.add(S, "kind_b", b_dev, COMPOSITION_TOL);
    r.add(S, "kind_c", c_dev, COMPOSITION_TOL);
    Ok(())
}

fn oracle_suite(r: &mut Report, fault: f64) -> Result<()> {
    const S: &str = "oracle_agreement";
    let xs = [-20.0, -3.0, -0.5, 0.0, 0.5, 3.0, 20.0];
    let (mut pdf_dev, mut cdf_dev, mut peak_dev) = (0.0f64, 0.0f64, 0.0f64);
    for beta in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let under_test = StableParams::new(0.0, fault, 0.5, beta)?;
        let reference = StableParams::standard(0.5, beta)?;
        for x in xs {
            let closed = molnoise::stable::pdf(x, &under_test)?;
            pdf_dev = pdf_dev.max((closed - cf_inversion_pdf(x, &reference)?).abs());
            let closed = molnoise::stable::cdf(x, &under_test)?;
            cdf_dev = cdf_dev.max((closed - cf_inversion_cdf(x, &reference)?).abs());
        }
        if beta < 1.0 {
            let b2 = beta * beta;
            let formula = 2.0 * (1.0 - b2) / (PI * (1.0 + b2) * (1.0 + b2)) / fault;
            peak_dev = peak_dev.max((formula - cf_inversion_pdf(0.0, &reference)?).abs());
        }
    }
    r.add(S, "pdf_closed_form_vs_inversion", pdf_dev, ORACLE_TOL);
    r.add(S, "cdf_closed_form_vs_inversion", cdf_dev, ORACLE_TOL);
    r.add(S, "peak_value_vs_inversion", peak_dev, ORACLE_TOL);
    let mut levy_dev = 0.0f64;
    for i in 1..=100 {
        let x = 0.5 * i as f64;
        let half = std_half_pdf(x / fault, 1.0)? / fault;
        levy_dev = levy_dev.max(rel(half, levy_pdf(x, 0.0, 1.0)?));
    }
    r.add(S, "levy_member", levy_dev, LEVY_REL_TOL);
    Ok(())
}

/// Channels sampled by the KS suite: one of each kind, plus the configured
/// channel if any.
pub fn ks_channels(cfg: &RunConfig) -> Vec<ChannelConfig> {
    let mut v = vec![
        ChannelConfig::a(1.0, 0.5),
        ChannelConfig::b(1.0, 1.0),
        ChannelConfig::c(1.0, 4.0, 1.0),
    ];
    v.extend(cfg.channel);
    v
}

fn ks_suite(r: &mut Report, cfg: &RunConfig) -> Result<()> {
    const S: &str = "ks";
    let n = cfg.n_samples;
    let seed = cfg.seed;
    let threshold = cfg.ks_threshold.unwrap_or_else(|| sim::ks_threshold(n));
    for (k, ch) in ks_channels(cfg).iter().enumerate() {
        let batch = sim::sample_channel(ch, n, seed.wrapping_add(k as u64))?;
        let mut p = batch.model.params;
        p.c *= cfg.fault_scale;
        let gof = sim::ks_test_with_threshold(&batch, &p, threshold)?;
        let label = if k < 3 { "default" } else { "configured" };
        r.add(
            S,
            format!("channel_{}_{label}", ch.kind),
            gof.ks_statistic,
            gof.threshold,
        );
    }

    let ch = ChannelConfig::c(1.0, 4.0, 1.0);
    let diff = sim::sample_channel(&ch, n, seed.wrapping_add(10))?;
    let mut p = diff.model.params;
    p.c *= cfg.fault_scale;
    let direct = sim::sample_stable_cms(&p, n, seed.wrapping_add(11))?;
    let gof = sim::ks_two_sample(&diff, &direct, None)?;
    r.add(S, "difference_vs_direct", gof.ks_statistic, gof.threshold);

    let std = StableParams::standard(0.5, 0.0)?;
    let x1 = sim::sample_stable_cms(&std, n, seed.wrapping_add(20))?;
    let x2 = sim::sample_stable_cms(&std, n, seed.wrapping_add(21))?;
    let x = sim::sample_stable_cms(&std, n, seed.wrapping_add(22))?;
    let sum: Vec<f64> = x1
        .values
        .iter()
        .zip(&x2.values)
        .map(|(a, b)| a + b)
        .collect();
    let scaled: Vec<f64> = x.values.iter().map(|v| 4.0 * cfg.fault_scale * v).collect();
    let d = sim::ks_two_sample_statistic(&sum, &scaled)?;
    r.add(
        S,
        "stability_sum_vs_4x",
        d,
        STABILITY_KS_COEFFICIENT / (n as f64).sqrt(),
    );
    Ok(())
}

fn tail_suite(r: &mut Report) -> Result<()> {
    const S: &str = "tails";
    let xs = [STABLE_TAIL_MIN_X, 300.0, 1e3, 1e4, 1e5, 1e6];
    for beta in [0.0, 0.5, 1.0] {
        let mut worst = 0.0f64;
        for x in xs {
            worst = worst.max(TailApprox::stable_half(x, beta)?.relative_error());
        }
        r.add(
            S,
            format!("stable_half_beta_{beta}"),
            worst,
            STABLE_TAIL_TOL,
        );
    }
    let mut worst = 0.0f64;
    for x in [3.0, 4.0, 6.0, 10.0, 20.0, 30.0] {
        worst = worst.max(TailApprox::gaussian(x)?.relative_error());
    }
    r.add(S, "gaussian", worst, GAUSSIAN_TAIL_TOL);
    Ok(())
}
