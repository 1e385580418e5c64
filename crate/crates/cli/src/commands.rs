//! The tables behind each command.

use std::f64::consts::FRAC_1_SQRT_2;

use anyhow::{Context, Result};
use molnoise::channels::{noise_model, ChannelConfig, ChannelNoiseModel};
use molnoise::sim::{self, SampleBatch};
use molnoise::specfun;
use molnoise::stable::{
    self, cf_stable, standardize, DensityTable, Method, StableParams, TailApprox,
};
use serde_json::{json, Value};

use crate::config::{Command, Grid, RunConfig, UsageError, DEFAULT_TAIL_GRID};
use crate::output::{Cell, Table};
use crate::validate;

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_677_939_946_059_934_381_9;

/// Tables produced by a command, whether its checks passed, and an optional
/// human-readable summary.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub passed: bool,
    pub summary: Option<String>,
}

impl Outcome {
    fn single(table: Table) -> Self {
        Self {
            tables: vec![table],
            passed: true,
            summary: None,
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        Command::Figures => Ok(Outcome {
            tables: figures(cfg)?,
            passed: true,
            summary: None,
        }),
        Command::Pdf | Command::Cdf => law_table(cfg).map(Outcome::single),
        Command::Tail => tail(cfg).map(Outcome::single),
        Command::Sample => sample(cfg),
        Command::Channel => channel_query(cfg),
        Command::Validate => {
            let report = validate::run(cfg)?;
            let passed = report.passed();
            let summary = report.summary();
            Ok(Outcome {
                tables: vec![report.into_table(metadata(cfg, "validate", json!({})))],
                passed,
                summary: Some(summary),
            })
        }
    }
}

fn beta_label(beta: f64) -> String {
    format!("beta_{beta}")
}

fn grid_json(grid: &Grid) -> Value {
    json!({
        "min": grid.min,
        "max": grid.max,
        "points": grid.points,
        "spacing": if grid.log { "log" } else { "linear" },
    })
}

/// Metadata shared by every table.
pub fn metadata(cfg: &RunConfig, table: &str, extra: Value) -> Value {
    let mut meta = json!({
        "command": cfg.command.name(),
        "table": table,
        "seed": cfg.seed,
        "grid": grid_json(&cfg.grid),
        "beta": cfg.beta_list,
        "versions": {
            "molnoise": molnoise::VERSION,
            "molnoise-cli": env!("CARGO_PKG_VERSION"),
        },
    });
    if let Some(ch) = &cfg.channel {
        meta["channel"] = serde_json::to_value(ch).expect("channel config serializes");
    }
    if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
        m.extend(e);
    }
    meta
}

pub fn gaussian_pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * specfun::exp_neg_sq(x * FRAC_1_SQRT_2)
}

pub fn gaussian_cdf(x: f64) -> f64 {
    0.5 * specfun::erfc(-x * FRAC_1_SQRT_2)
}

fn standard_tables(betas: &[f64], xs: &[f64]) -> Result<Vec<DensityTable>> {
    betas
        .iter()
        .map(|&b| {
            let p = StableParams::standard(0.5, b)?;
            Ok(DensityTable::build(p, xs.to_vec(), Method::ClosedForm)?)
        })
        .collect()
}

/// Density, distribution and tail tables of the standard α = 1/2 laws for
/// each β plus the standard normal law. Density and distribution use the
/// configured grid, tails the default logarithmic grid.
pub fn figures(cfg: &RunConfig) -> Result<Vec<Table>> {
    let xs = cfg.grid.nodes();
    let tables = standard_tables(&cfg.beta_list, &xs)?;

    let mut pdf_cols = vec!["x".to_string()];
    let mut cdf_cols = vec!["x".to_string()];
    for &b in &cfg.beta_list {
        pdf_cols.push(format!("pdf_{}", beta_label(b)));
        cdf_cols.push(format!("cdf_{}", beta_label(b)));
    }
    pdf_cols.push("pdf_gaussian".into());
    cdf_cols.push("cdf_gaussian".into());

    let mut fig1 = Table::new("fig1_pdf", pdf_cols);
    let mut fig2 = Table::new("fig2_cdf", cdf_cols);
    for (i, &x) in xs.iter().enumerate() {
        let mut pdf_row = vec![Cell::Num(x)];
        let mut cdf_row = vec![Cell::Num(x)];
        for t in &tables {
            pdf_row.push(t.pdf[i].into());
            cdf_row.push(t.cdf[i].into());
        }
        pdf_row.push(gaussian_pdf(x).into());
        cdf_row.push(gaussian_cdf(x).into());
        fig1.push(pdf_row);
        fig2.push(cdf_row);
    }
    fig1.metadata = metadata(cfg, "fig1_pdf", json!({ "gaussian": "N(0,1)" }));
    fig2.metadata = metadata(cfg, "fig2_cdf", json!({ "gaussian": "N(0,1)" }));

    let mut fig3 = tail_table(&cfg.beta_list, &DEFAULT_TAIL_GRID.nodes(), "fig3_tail")?;
    fig3.metadata = metadata(
        cfg,
        "fig3_tail",
        json!({ "gaussian": "N(0,1)", "tail_grid": grid_json(&DEFAULT_TAIL_GRID) }),
    );
    Ok(vec![fig1, fig2, fig3])
}

/// Exact tails next to their asymptotic approximations.
fn tail_table(betas: &[f64], xs: &[f64], name: &str) -> Result<Table> {
    let mut cols = vec!["x".to_string()];
    for &b in betas {
        cols.push(format!("sf_{}", beta_label(b)));
        cols.push(format!("approx_{}", beta_label(b)));
    }
    cols.push("sf_gaussian".into());
    cols.push("approx_gaussian".into());
    let mut table = Table::new(name, cols);
    for &x in xs {
        let mut row = vec![Cell::Num(x)];
        for &b in betas {
            let t = TailApprox::stable_half(x, b)?;
            row.push(t.p_exact.into());
            row.push(t.p_approx.into());
        }
        let g = TailApprox::gaussian(x)?;
        row.push(g.p_exact.into());
        row.push(g.p_approx.into());
        table.push(row);
    }
    Ok(table)
}

fn channel_model(ch: &ChannelConfig) -> Result<ChannelNoiseModel> {
    noise_model(ch).map_err(|e| UsageError(e.to_string()).into())
}

fn model_json(model: &ChannelNoiseModel) -> Value {
    serde_json::to_value(model).expect("noise model serializes")
}

/// Density or distribution function: of the channel noise in seconds when a
/// channel is configured, else of the standard laws for each β.
fn law_table(cfg: &RunConfig) -> Result<Table> {
    let is_pdf = cfg.command == Command::Pdf;
    let prefix = if is_pdf { "pdf" } else { "cdf" };
    let xs = cfg.grid.nodes();
    let pick = |t: &DensityTable, i: usize| if is_pdf { t.pdf[i] } else { t.cdf[i] };
    let mut table;
    if let Some(ch) = &cfg.channel {
        let model = channel_model(ch)?;
        let t = DensityTable::build(model.params, xs.clone(), Method::ClosedForm)?;
        table = Table::new(prefix, vec!["t".into(), prefix.into()]);
        for (i, &x) in xs.iter().enumerate() {
            table.push(vec![x.into(), pick(&t, i).into()]);
        }
        table.metadata = metadata(cfg, prefix, json!({ "model": model_json(&model) }));
    } else {
        let tables = standard_tables(&cfg.beta_list, &xs)?;
        let mut cols = vec!["x".to_string()];
        cols.extend(
            cfg.beta_list
                .iter()
                .map(|&b| format!("{prefix}_{}", beta_label(b))),
        );
        table = Table::new(prefix, cols);
        for (i, &x) in xs.iter().enumerate() {
            let mut row = vec![Cell::Num(x)];
            row.extend(tables.iter().map(|t| Cell::Num(pick(t, i))));
            table.push(row);
        }
        table.metadata = metadata(cfg, prefix, json!({}));
    }
    Ok(table)
}

fn tail(cfg: &RunConfig) -> Result<Table> {
    let xs = cfg.grid.nodes();
    let Some(ch) = &cfg.channel else {
        let mut table = tail_table(&cfg.beta_list, &xs, "tail")?;
        table.metadata = metadata(cfg, "tail", json!({ "gaussian": "N(0,1)" }));
        return Ok(table);
    };
    let model = channel_model(ch)?;
    let (std, map) = standardize(&model.params)?;
    let mut table = Table::new("tail", vec!["t".into(), "sf".into(), "approx".into()]);
    for &t in &xs {
        let y = map.forward(t);
        let approx = if y > 0.0 {
            stable::tail_stable_half(y, std.beta)?
        } else {
            f64::NAN
        };
        table.push(vec![
            t.into(),
            stable::sf(t, &model.params)?.into(),
            approx.into(),
        ]);
    }
    table.metadata = metadata(cfg, "tail", json!({ "model": model_json(&model) }));
    Ok(table)
}

fn sample(cfg: &RunConfig) -> Result<Outcome> {
    let batch: SampleBatch = match &cfg.channel {
        Some(ch) => {
            channel_model(ch)?;
            sim::sample_channel(ch, cfg.n_samples, cfg.seed)?
        }
        None => {
            let p = StableParams::standard(0.5, cfg.beta_list[0])?;
            sim::sample_stable_cms(&p, cfg.n_samples, cfg.seed)?
        }
    };
    let threshold = cfg
        .ks_threshold
        .unwrap_or_else(|| sim::ks_threshold(batch.values.len()));
    let gof = sim::ks_test_with_threshold(&batch, &batch.model.params, threshold)?;
    let mut table = Table::new("sample", vec!["value".into()]);
    for &v in &batch.values {
        table.push(vec![v.into()]);
    }
    table.metadata = metadata(
        cfg,
        "sample",
        json!({
            "n": batch.count,
            "model": model_json(&batch.model),
            "method": serde_json::to_value(batch.method).expect("method serializes"),
            "ks": serde_json::to_value(gof).expect("report serializes"),
        }),
    );
    let summary = format!(
        "{} draws, KS statistic {:.3e} against threshold {:.3e}: {}",
        batch.count,
        gof.ks_statistic,
        gof.threshold,
        if gof.pass { "pass" } else { "fail" }
    );
    Ok(Outcome {
        tables: vec![table],
        passed: true,
        summary: Some(summary),
    })
}

/// Noise law of the configured channel with its density, distribution
/// function, survival function and characteristic-function modulus over the
/// grid. Times are in seconds; the last column reads the grid as angular
/// frequency.
pub fn channel_query(cfg: &RunConfig) -> Result<Outcome> {
    let ch = cfg
        .channel
        .as_ref()
        .ok_or_else(|| UsageError("the channel command needs --channel-kind".into()))?;
    let model = channel_model(ch)?;
    let p = model.params;
    let xs = cfg.grid.nodes();
    let dt = DensityTable::build(p, xs.clone(), Method::ClosedForm)
        .context("tabulating the noise law")?;
    let mut table = Table::new(
        "channel",
        ["t", "pdf", "cdf", "sf", "cf_abs"]
            .map(String::from)
            .to_vec(),
    );
    for (i, &t) in xs.iter().enumerate() {
        table.push(vec![
            t.into(),
            dt.pdf[i].into(),
            dt.cdf[i].into(),
            stable::sf(t, &p)?.into(),
            cf_stable(t, &p).norm().into(),
        ]);
    }
    table.metadata = metadata(cfg, "channel", json!({ "model": model_json(&model) }));
    let support = match model.support {
        molnoise::channels::Support::Nonnegative => "[0, inf)",
        molnoise::channels::Support::FullLine => "(-inf, inf)",
    };
    let summary = format!(
        "channel {}: S(mu = {}, c = {:.6} s, alpha = {}, beta = {:.6}), symmetric = {}, support = {}",
        ch.kind, p.mu, p.c, p.alpha, p.beta, model.symmetric, support
    );
    Ok(Outcome {
        tables: vec![table],
        passed: true,
        summary: Some(summary),
    })
}
