//! Reproduction criteria for the published results: the standard laws, the
//! channel laws, the tables, sampling agreement and determinism. Each check
//! returns a verdict with the measured values next to their tolerances.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use molnoise::channels::{verify_cf_composition, ChannelConfig};
use molnoise::sim;
use molnoise::specfun::{dawson, exp_neg_z2, faddeeva, voigt_k, voigt_l};
use molnoise::stable::{cf_inversion_pdf, levy_pdf, pdf, std_half_pdf, StableParams, TailApprox};
use molnoise::ComplexValue;
use molnoise_cli::commands::{self, gaussian_pdf};
use molnoise_cli::config::{Command, Format, RunConfig};
use molnoise_cli::output::Table;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const MC_SAMPLES: usize = 1_000_000;
const MC_SEED: u64 = 7_331;

pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn rel(got: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        got.abs()
    } else {
        ((got - exact) / exact).abs()
    }
}

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (
        elapsed <= limit,
        format!("{:.1}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()),
    )
}

fn peak_value() -> Verdict {
    let p = StableParams::new(0.0, 1.0, 0.5, 0.0).unwrap();
    let peak_dev = (pdf(0.0, &p).unwrap() - 2.0 / PI).abs();
    let mut oracle_dev = 0.0f64;
    for beta in [0.0, 0.25, 0.5, 0.75] {
        let b2 = beta * beta;
        let formula = 2.0 * (1.0 - b2) / (PI * (1.0 + b2) * (1.0 + b2));
        let reference = StableParams::standard(0.5, beta).unwrap();
        let oracle = cf_inversion_pdf(0.0, &reference).unwrap();
        let closed = pdf(0.0, &reference).unwrap();
        oracle_dev = oracle_dev
            .max((formula - oracle).abs())
            .max((closed - oracle).abs());
    }
    verdict(
        peak_dev <= 1e-10 && oracle_dev <= 1e-8,
        format!(
            "|f(0) - 2/pi| = {peak_dev:.2e} (tol 1e-10), max |closed form - inversion| at 0 = {oracle_dev:.2e} (tol 1e-8)"
        ),
    )
}

fn levy_member() -> Verdict {
    let worst = (1..=100)
        .map(|i| {
            let x = 0.5 * i as f64;
            rel(
                std_half_pdf(x, 1.0).unwrap(),
                levy_pdf(x, 0.0, 1.0).unwrap(),
            )
        })
        .fold(0.0, f64::max);
    verdict(
        worst <= 1e-10,
        format!("max relative deviation {worst:.2e} on 100 points of (0, 50] (tol 1e-10)"),
    )
}

fn cf_composition() -> Verdict {
    let mut rng = StdRng::seed_from_u64(MC_SEED);
    let mut coeff = || 10f64.powf(rng.random_range(-3.0..3.0));
    let mut configs = Vec::new();
    for _ in 0..20 {
        configs.push(ChannelConfig::b(coeff(), coeff()));
    }
    for _ in 0..20 {
        configs.push(ChannelConfig::c(coeff(), coeff(), coeff()));
    }
    let mut worst = 0.0f64;
    for cfg in &configs {
        let c = molnoise::channels::noise_model(cfg).unwrap().params.c;
        let span = 100.0 / c;
        let ts: Vec<f64> = (0..100)
            .map(|i| -span + 2.0 * span * i as f64 / 99.0)
            .collect();
        worst = worst.max(verify_cf_composition(cfg, &ts).unwrap());
    }
    verdict(
        worst <= 1e-12,
        format!("max CF deviation {worst:.2e} over 20 B + 20 C configs (tol 1e-12)"),
    )
}

fn figure_tables() -> Vec<Table> {
    commands::figures(&RunConfig::new(Command::Figures)).unwrap()
}

fn col(t: &Table, name: &str) -> Vec<f64> {
    t.column(name)
        .unwrap_or_else(|| panic!("{} has no column {name}", t.name))
}

fn figures_pdf_cdf() -> Verdict {
    let start = Instant::now();
    let tables = figure_tables();
    let (fig1, fig2) = (&tables[0], &tables[1]);
    let x = col(fig1, "x");
    let n = x.len();
    assert_eq!((x[0], x[n - 1]), (-10.0, 10.0));

    let (p0, c0) = (col(fig1, "pdf_beta_0"), col(fig2, "cdf_beta_0"));
    let mut sym = 0.0f64;
    for i in 0..n {
        assert_eq!(x[i], -x[n - 1 - i]);
        sym = sym
            .max(rel(p0[i], p0[n - 1 - i]))
            .max((c0[i] + c0[n - 1 - i] - 1.0).abs());
    }

    let (p1, c1) = (col(fig1, "pdf_beta_1"), col(fig2, "cdf_beta_1"));
    let negative_mass = (0..n)
        .filter(|&i| x[i] < 0.0)
        .map(|i| p1[i].abs().max(c1[i].abs()))
        .fold(0.0, f64::max);

    // long tails: every stable density above the Gaussian at |x| >= 6 on its
    // support (β = 1 vanishes identically for x < 0)
    let gauss = col(fig1, "pdf_gaussian");
    let mut margin = f64::INFINITY;
    let mut checked = 0;
    for name in ["pdf_beta_0", "pdf_beta_0.5", "pdf_beta_1"] {
        let f = col(fig1, name);
        for i in 0..n {
            if x[i].abs() >= 6.0 && !(name == "pdf_beta_1" && x[i] < 0.0) {
                margin = margin.min(f[i] - gauss[i]);
                checked += 1;
                assert!((gauss[i] - gaussian_pdf(x[i])).abs() == 0.0);
            }
        }
    }
    let (fast, time) = within(start.elapsed(), Duration::from_secs(60));
    verdict(
        sym <= 1e-12 && negative_mass == 0.0 && margin > 0.0 && fast,
        format!(
            "beta=0 mirror deviation {sym:.1e} (tol 1e-12); beta=1 max |value| on x<0 = {negative_mass:e} (must be 0); \
             min stable-minus-Gaussian density over {checked} points with |x|>=6 = {margin:.3e} (must be > 0); {time}"
        ),
    )
}

fn figure_tails() -> Verdict {
    let start = Instant::now();
    let fig3 = &figure_tables()[2];
    let x = col(fig3, "x");
    let mut parts = Vec::new();
    let mut pass = true;
    for beta in ["0", "0.5", "1"] {
        let b: f64 = beta.parse().unwrap();
        let sf = col(fig3, &format!("sf_beta_{beta}"));
        let approx = col(fig3, &format!("approx_beta_{beta}"));
        // grid points at or beyond 50, plus x = 50 itself
        let mut worst = TailApprox::stable_half(50.0, b).unwrap().relative_error();
        let mut at = 50.0;
        for i in 0..x.len() {
            if x[i] >= 50.0 {
                let e = rel(approx[i], sf[i]);
                if e > worst {
                    worst = e;
                    at = x[i];
                }
            }
        }
        pass &= worst <= 0.05;
        parts.push(format!(
            "beta={beta}: max rel err {:.2}% at x={at:.1}",
            100.0 * worst
        ));
    }
    let (gsf, gapprox) = (col(fig3, "sf_gaussian"), col(fig3, "approx_gaussian"));
    let mut gworst = TailApprox::gaussian(3.0).unwrap().relative_error();
    for i in 0..x.len() {
        if x[i] >= 3.0 && gsf[i] > 0.0 {
            gworst = gworst.max(rel(gapprox[i], gsf[i]));
        }
    }
    pass &= gworst <= 0.10;
    let (fast, time) = within(start.elapsed(), Duration::from_secs(60));
    verdict(
        pass && fast,
        format!(
            "{} (tol 5% for x>=50); Gaussian max rel err {:.2}% for x>=3 (tol 10%); {time}",
            parts.join(", "),
            100.0 * gworst
        ),
    )
}

fn monte_carlo() -> Verdict {
    let start = Instant::now();
    let n = MC_SAMPLES;
    let mut parts = Vec::new();
    let mut pass = true;
    let channels = [
        ChannelConfig::a(1.0, 0.5),
        ChannelConfig::b(1.0, 1.0),
        ChannelConfig::c(1.0, 4.0, 1.0),
    ];
    for (k, ch) in channels.iter().enumerate() {
        let batch = sim::sample_channel(ch, n, MC_SEED + k as u64).unwrap();
        let gof = sim::ks_test(&batch, &batch.model).unwrap();
        pass &= gof.pass;
        parts.push(format!("{}: D={:.2e}", ch.kind, gof.ks_statistic));
    }
    let threshold = sim::ks_threshold(n);
    let diff = sim::sample_channel(&channels[2], n, MC_SEED + 10).unwrap();
    let direct = sim::sample_stable_cms(&diff.model.params, n, MC_SEED + 11).unwrap();
    // same threshold as the one-sample tests, stricter than the two-sample 1% value
    let two = sim::ks_two_sample(&diff, &direct, Some(threshold)).unwrap();
    pass &= two.pass;
    let (fast, time) = within(start.elapsed(), Duration::from_secs(120));
    verdict(
        pass && fast,
        format!(
            "{} (threshold 1.63/sqrt(n) = {threshold:.2e}); difference vs direct D={:.2e}; n={n}; {time}",
            parts.join(", "),
            two.ks_statistic,
        ),
    )
}

fn stability_law() -> Verdict {
    let start = Instant::now();
    let n = MC_SAMPLES;
    let p = StableParams::standard(0.5, 0.0).unwrap();
    let x1 = sim::sample_stable_cms(&p, n, MC_SEED + 20).unwrap();
    let x2 = sim::sample_stable_cms(&p, n, MC_SEED + 21).unwrap();
    let x = sim::sample_stable_cms(&p, n, MC_SEED + 22).unwrap();
    let sum: Vec<f64> = x1
        .values
        .iter()
        .zip(&x2.values)
        .map(|(a, b)| a + b)
        .collect();
    let scaled: Vec<f64> = x.values.iter().map(|v| 4.0 * v).collect();
    let d = sim::ks_two_sample_statistic(&sum, &scaled).unwrap();
    let (fast, time) = within(start.elapsed(), Duration::from_secs(60));
    verdict(
        d <= 3e-3 && fast,
        format!("KS distance {d:.2e} (tol 3e-3), n={n}; {time}"),
    )
}

fn load(name: &str) -> Vec<Vec<f64>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|t| t.parse().unwrap()).collect())
        .collect()
}

fn special_functions() -> Verdict {
    let mut worst = 0.0f64;
    let mut points = 0;
    for (name, f) in [
        (
            "faddeeva.csv",
            faddeeva as fn(ComplexValue) -> molnoise::Result<ComplexValue>,
        ),
        ("dawson.csv", dawson),
    ] {
        for r in load(name) {
            let got = f(ComplexValue::new(r[0], r[1])).unwrap();
            worst = worst.max(rel(got.re, r[2])).max(rel(got.im, r[3]));
            points += 1;
        }
    }
    for r in load("voigt.csv") {
        worst = worst
            .max(rel(voigt_k(r[0], r[1]).unwrap(), r[2]))
            .max(rel(voigt_l(r[0], r[1]).unwrap(), r[3]));
        points += 1;
    }

    let re = [
        -30.0, -9.0, -2.5, -0.8, -1e-9, 0.0, 1e-4, 0.3, 1.5, 4.0, 7.0, 12.0, 30.0,
    ];
    let im = [0.0, 1e-10, 1e-3, 0.2, 0.9, 2.0, 4.5, 8.0, 15.0, 30.0];
    let half_j_sqrt_pi = ComplexValue::new(0.0, 0.5 * PI.sqrt());
    let mut identity = 0.0f64;
    for &x in &re {
        for &y in &im {
            let z = ComplexValue::new(x, y);
            let w = faddeeva(z).unwrap();
            let e = exp_neg_z2(z);
            if let Ok(f) = dawson(z) {
                let dev = (f - half_j_sqrt_pi * (e - w)).norm() / (1.0 + f.norm());
                identity = identity.max(dev);
            }
            if let Ok(w_neg) = faddeeva(-z) {
                let scale = 1.0 + w.norm() + 2.0 * e.norm();
                identity = identity.max((w_neg - (2.0 * e - w)).norm() / scale);
            }
            if y > 0.0 {
                identity = identity
                    .max(rel(voigt_k(x, y).unwrap(), w.re))
                    .max(rel(voigt_l(x, y).unwrap(), w.im));
            } else {
                identity = identity.max(rel(w.re, (-x * x).exp()));
            }
        }
    }
    verdict(
        points >= 500 && worst <= 1e-12 && identity <= 1e-11,
        format!(
            "{points} fixture points, max relative error {worst:.2e} (tol 1e-12); max identity deviation {identity:.2e} (tol 1e-11)"
        ),
    )
}

fn scratch_dir(root: &Path, tag: &str) -> PathBuf {
    let dir = root.join(tag);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Rendered outputs of a command in both formats, on a pool of `threads`.
fn render(root: &Path, command: Command, threads: usize) -> Vec<(String, Vec<u8>)> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    let mut files = Vec::new();
    for format in [Format::Csv, Format::Json] {
        let mut cfg = RunConfig::new(command);
        cfg.format = format;
        let dir = scratch_dir(
            root,
            &format!("{}-{threads}-{}", command.name(), format.extension()),
        );
        cfg.output_path = Some(if command == Command::Figures {
            dir.clone()
        } else {
            dir.join(format!("report.{}", format.extension()))
        });
        let outcome = pool.install(|| commands::run(&cfg)).unwrap();
        assert!(outcome.passed, "{} did not pass", command.name());
        for path in molnoise_cli::emit(&cfg, &outcome).unwrap() {
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            files.push((name, std::fs::read(&path).unwrap()));
        }
    }
    files
}

fn determinism(scratch: &Path) -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for command in [Command::Figures, Command::Validate] {
        let first = render(scratch, command, 1);
        let again = render(scratch, command, 1);
        let parallel = render(scratch, command, 4);
        let same = first == again && first == parallel;
        pass &= same && !first.is_empty();
        parts.push(format!(
            "{}: {} files {}",
            command.name(),
            first.len(),
            if same { "identical" } else { "differ" }
        ));
    }
    verdict(
        pass,
        format!("{} across two runs and 1 vs 4 threads", parts.join(", ")),
    )
}

pub struct Criterion {
    pub name: &'static str,
    check: fn(&Path) -> Verdict,
}

impl Criterion {
    /// Run the check; `scratch` receives any files it writes.
    pub fn run(&self, scratch: &Path) -> Verdict {
        (self.check)(scratch)
    }
}

macro_rules! criterion {
    ($name:expr, $f:expr) => {
        Criterion {
            name: $name,
            check: $f,
        }
    };
}

/// All criteria, in order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        criterion!("standardized peak value", |_| peak_value()),
        criterion!("Levy member equivalence", |_| levy_member()),
        criterion!("CF composition identities", |_| cf_composition()),
        criterion!("density and distribution tables", |_| figures_pdf_cdf()),
        criterion!("tail tables", |_| figure_tails()),
        criterion!("Monte Carlo agreement", |_| monte_carlo()),
        criterion!("stability law", |_| stability_law()),
        criterion!("special-function certification", |_| special_functions()),
        criterion!("determinism", determinism),
    ]
}
