use molnoise::stable::*;
use molnoise::Error;
use std::f64::consts::{E, PI};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

fn std(alpha: f64, beta: f64) -> StableParams {
    StableParams::standard(alpha, beta).unwrap()
}

fn load(name: &str) -> Vec<[f64; 3]> {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    text.lines()
        .skip(1)
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|t| t.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect()
}

#[test]
fn params_validation() {
    assert!(StableParams::new(0.0, -1.0, 0.5, 0.0).is_err());
    assert!(StableParams::new(0.0, 1.0, 0.0, 0.0).is_err());
    assert!(StableParams::new(0.0, 1.0, 2.5, 0.0).is_err());
    assert!(StableParams::new(0.0, 1.0, 0.5, 1.5).is_err());
    assert!(StableParams::new(f64::NAN, 1.0, 0.5, 0.0).is_err());
    assert!(StableParams::new(0.0, 0.0, 0.5, 0.0).is_ok());
}

#[test]
fn cf_examples() {
    let g = cf_stable(1.0, &std(2.0, 0.0));
    assert!(close(g.re, 1.0 / E, 1e-15) && g.im == 0.0);
    for p in [
        std(0.5, 0.7),
        std(1.0, -1.0),
        StableParams::new(3.0, 2.0, 1.3, 0.2).unwrap(),
    ] {
        let one = cf_stable(0.0, &p);
        assert_eq!((one.re, one.im), (1.0, 0.0));
    }
    let h = cf_stable(1.0, &std(0.5, 0.0));
    assert!(close(h.re, 1.0 / E, 1e-15) && h.im == 0.0);
    let g3 = cf_stable(1.7, &std(2.0, 0.0));
    assert!(close(g3.re, (-1.7f64 * 1.7).exp(), 1e-15));
}

#[test]
fn cf_levy_matches_stable_member() {
    for t in [-20.0, -1.0, -0.01, 0.3, 4.0, 50.0] {
        let a = cf_levy(t, 1.5, 0.8);
        let b = cf_stable(t, &StableParams::levy(1.5, 0.8).unwrap());
        assert!((a - b).norm() < 1e-15, "t = {t}");
    }
}

#[test]
fn levy_examples() {
    assert!(rel(levy_pdf(1.0, 0.0, 1.0).unwrap(), 0.241_970_724_519_143_37) < 1e-14);
    assert_eq!(levy_pdf(0.0, 0.0, 1.0).unwrap(), 0.0);
    assert_eq!(levy_pdf(-3.0, 0.0, 1.0).unwrap(), 0.0);
    assert_eq!(levy_pdf(1e-300, 0.0, 1.0).unwrap(), 0.0);
    // mode at μ + c/3
    let mode = 1.0 / 3.0;
    let peak = levy_pdf(mode, 0.0, 1.0).unwrap();
    for i in 1..=2000 {
        let x = i as f64 * 1e-3;
        assert!(levy_pdf(x, 0.0, 1.0).unwrap() <= peak, "x = {x}");
    }
    assert!(matches!(levy_pdf(1.0, 0.0, 0.0), Err(Error::Domain { .. })));
    assert!(matches!(
        levy_cdf(1.0, 0.0, -1.0),
        Err(Error::Domain { .. })
    ));

    assert_eq!(levy_cdf(2.0, 2.0, 5.0).unwrap(), 0.0);
    assert!(rel(levy_cdf(1.0, 0.0, 1.0).unwrap(), 0.317_310_507_862_914_1) < 1e-14);
    assert!(rel(levy_cdf(1e6, 0.0, 1.0).unwrap(), 0.999_202_115_572_177_9) < 1e-14);
    // the survival function keeps relative accuracy where cdf -> 1
    assert!(rel(levy_sf(1e6, 0.0, 1.0).unwrap(), 7.978_844_278_221_252e-4) < 1e-12);
}

#[test]
fn levy_pdf_integrates_to_one() {
    // substitute x = 1/r²: ∫ f dx = ∫₀^∞ 2 f(1/r²)/r³ dr, smooth and fast-decaying
    let n = 200_000;
    let h = 12.0 / n as f64;
    let g = |r: f64| 2.0 * levy_pdf(1.0 / (r * r), 0.0, 1.0).unwrap() / (r * r * r);
    // midpoint rule, which never evaluates r = 0
    let sum: f64 = (0..n).map(|i| g((i as f64 + 0.5) * h)).sum();
    assert!(close(sum * h, 1.0, 1e-12), "{}", sum * h);
}

#[test]
fn std_half_pdf_examples() {
    assert!(close(std_half_pdf(0.0, 0.0).unwrap(), 2.0 / PI, 1e-15));
    assert_eq!(std_half_pdf(0.0, 1.0).unwrap(), 0.0);
    // value from direct inversion of exp(-√|t|)
    assert!(rel(std_half_pdf(1.0, 0.0).unwrap(), 0.086_107_146_912_604_1) < 1e-13);
    for x in [0.5, 1.0, 4.0] {
        let a = std_half_pdf(x, 1.0).unwrap();
        let b = levy_pdf(x, 0.0, 1.0).unwrap();
        assert!(rel(a, b) < 1e-13, "x = {x}: {a} vs {b}");
    }
    assert!(matches!(std_half_pdf(1.0, 1.2), Err(Error::Domain { .. })));
    assert_eq!(std_half_pdf(-2.0, 1.0).unwrap(), 0.0);
}

#[test]
fn std_half_pdf_matches_reference() {
    let rows = load("half_pdf.csv");
    for [x, beta, exact] in rows {
        let got = std_half_pdf(x, beta).unwrap();
        let ok = if exact < 1e-200 {
            got <= 1e-200
        } else {
            rel(got, exact) <= 1e-12
        };
        assert!(ok, "f({x}; {beta}) = {got:e}, reference {exact:e}");
    }
}

#[test]
fn std_half_cdf_matches_reference() {
    for [x, beta, exact] in load("half_cdf.csv") {
        let got = std_half_cdf(x, beta).unwrap();
        assert!(
            close(got, exact, 1e-14),
            "F({x}; {beta}) = {got:e}, reference {exact:e}"
        );
        let sf = std_half_sf(x, beta).unwrap();
        assert!(close(sf, 1.0 - exact, 1e-14));
    }
}

#[test]
fn std_half_sf_matches_reference_in_tail() {
    for [x, beta, exact] in load("half_sf.csv") {
        let got = std_half_sf(x, beta).unwrap();
        assert!(
            rel(got, exact) <= 1e-12,
            "P(X > {x}; {beta}) = {got:e}, reference {exact:e}"
        );
    }
}

#[test]
fn cdf_at_origin() {
    for beta in [-1.0, -0.4, 0.0, 1.0 / 3.0, 0.8, 1.0] {
        let f0 = std_half_cdf(0.0, beta).unwrap();
        assert!(close(f0, 0.5 - 2.0 / PI * f64::atan(beta), 1e-16));
    }
}

#[test]
fn cdf_branches_join_continuously() {
    for beta in [-0.9, 0.0, 0.6, 1.0] {
        for edge in [-1.0f64, 1.0] {
            let below = std_half_cdf(edge - 1e-12, beta).unwrap();
            let above = std_half_cdf(edge + 1e-12, beta).unwrap();
            let slope = std_half_pdf(edge, beta).unwrap();
            assert!(
                close(above - below, 2e-12 * slope, 1e-14),
                "beta {beta} at {edge}"
            );
        }
    }
}

#[test]
fn pdf_examples() {
    let gauss_peak = pdf(0.0, &std(2.0, 0.0)).unwrap();
    assert!(close(gauss_peak, 1.0 / (4.0 * PI).sqrt(), 1e-15));
    assert!(close(pdf(0.0, &std(0.5, 0.0)).unwrap(), 2.0 / PI, 1e-15));
    let scaled = StableParams::new(0.0, 4.0, 0.5, 0.0).unwrap();
    assert!(close(pdf(0.0, &scaled).unwrap(), 2.0 / PI / 4.0, 1e-15));
    // the skewness has no effect at α = 2
    let a = pdf(0.7, &StableParams::new(0.2, 1.3, 2.0, 0.9).unwrap()).unwrap();
    let b = pdf(0.7, &StableParams::new(0.2, 1.3, 2.0, 0.0).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(matches!(
        pdf(0.0, &StableParams::new(0.0, 0.0, 0.5, 0.0).unwrap()),
        Err(Error::Degenerate)
    ));
}

#[test]
fn cf_inversion_examples() {
    let f0 = cf_inversion_pdf(0.0, &std(0.5, 0.0)).unwrap();
    assert!(close(f0, 2.0 / PI, 1e-9));
    let g1 = cf_inversion_pdf(1.0, &std(2.0, 0.0)).unwrap();
    assert!(close(g1, 0.219_695_644_733_861_2, 1e-12));
    let l2 = cf_inversion_pdf(2.0, &std(0.5, 1.0)).unwrap();
    assert!(close(l2, levy_pdf(2.0, 0.0, 1.0).unwrap(), 1e-9));
}

#[test]
fn cf_inversion_of_cauchy_member() {
    // α = 1, β = 0 is Cauchy with scale c
    let p = StableParams::new(0.5, 2.0, 1.0, 0.0).unwrap();
    for x in [-7.0, 0.5, 3.0] {
        let exact = 2.0 / (PI * (4.0 + (x - 0.5) * (x - 0.5)));
        assert!(close(cf_inversion_pdf(x, &p).unwrap(), exact, 1e-12));
        let f = 0.5 + ((x - 0.5) / 2.0).atan() / PI;
        assert!(close(cf_inversion_cdf(x, &p).unwrap(), f, 1e-12));
    }
}

/// Direct inversion of the unstandardized characteristic function with a
/// composite Simpson rule in `t = u⁵`, which smooths the `t^α` and `t ln t`
/// terms at the origin. Independent of the standardization map.
fn simpson_inversion_pdf(x: f64, p: &StableParams, t_max: f64, n: usize) -> f64 {
    let u_max = t_max.powf(0.2);
    let h = u_max / n as f64;
    let g = |u: f64| {
        let t = u.powi(5);
        let phi = cf_stable(t, p);
        let rot = num_complex::Complex64::new(0.0, -x * t).exp();
        (rot * phi).re * 5.0 * u.powi(4)
    };
    let mut s = g(0.0) + g(u_max);
    for i in 1..n {
        s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0 / PI
}

#[test]
fn skewed_alpha_one_standardization_carries_log_shift() {
    let p = StableParams::new(0.7, 2.5, 1.0, 0.6).unwrap();
    for x in [-3.0, 0.0, 1.5, 6.0] {
        let direct = simpson_inversion_pdf(x, &p, 18.0, 400_000);
        let via_std = cf_inversion_pdf(x, &p).unwrap();
        assert!(
            close(direct, via_std, 1e-10),
            "x = {x}: {direct} vs {via_std}"
        );
    }
}

#[test]
fn other_alphas_match_direct_inversion() {
    for p in [
        StableParams::new(-1.0, 0.8, 1.5, -0.4).unwrap(),
        StableParams::new(0.3, 1.2, 0.8, 0.5).unwrap(),
    ] {
        for x in [-2.0, 0.0, 1.0] {
            let t_max = if p.alpha > 1.0 { 16.0 } else { 200.0 };
            let direct = simpson_inversion_pdf(x, &p, t_max, 800_000);
            let got = pdf(x, &p).unwrap();
            assert!(close(direct, got, 1e-9), "{p:?} at {x}: {direct} vs {got}");
        }
    }
}

#[test]
fn cdf_examples() {
    assert!(close(cdf(0.0, &std(0.5, 0.0)).unwrap(), 0.5, 1e-16));
    assert!(close(
        cdf(1.0, &std(0.5, 1.0)).unwrap(),
        0.317_310_507_862_914_1,
        1e-15
    ));
    assert_eq!(cdf(-5.0, &std(0.5, 1.0)).unwrap(), 0.0);
    let g = cdf(1.0, &StableParams::new(1.0, 3.0, 2.0, 0.0).unwrap()).unwrap();
    assert_eq!(g, 0.5);
}

#[test]
fn half_law_agrees_with_inversion() {
    for beta in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let p = std(0.5, beta);
        for i in 0..50 {
            let x = -20.0 + 40.0 * (i as f64 + 0.5) / 50.0;
            let closed = std_half_pdf(x, beta).unwrap();
            let inverted = cf_inversion_pdf(x, &p).unwrap();
            assert!(close(closed, inverted, 1e-8), "beta {beta}, x {x}");
        }
        for x in [-7.0, -1.0, -0.2, 0.0, 0.4, 1.0, 9.0] {
            let closed = std_half_cdf(x, beta).unwrap();
            let inverted = cf_inversion_cdf(x, &p).unwrap();
            assert!(close(closed, inverted, 1e-9), "cdf beta {beta}, x {x}");
        }
    }
}

#[test]
fn symmetric_law_is_even() {
    for i in 0..200 {
        let x = 1e-6 * 1.1f64.powi(i);
        let a = std_half_pdf(x, 0.0).unwrap();
        let b = std_half_pdf(-x, 0.0).unwrap();
        assert!(rel(a, b) <= 1e-12, "x = {x}");
    }
}

#[test]
fn reflection_in_beta() {
    for x in [0.001, 0.3, 2.0, 50.0] {
        for beta in [0.2, 0.7] {
            let a = std_half_pdf(x, beta).unwrap();
            let b = std_half_pdf(-x, -beta).unwrap();
            assert!(rel(a, b) <= 1e-12);
        }
    }
}

#[test]
fn normalization() {
    for beta in [-0.5, 0.0, 0.5, 1.0] {
        // the asymptotic tails (1 ± β)/√(2π L) leave at most 5e-5 on each side
        let target = 5e-5;
        let l_right = ((1.0 + beta) / (target * (2.0 * PI).sqrt()))
            .powi(2)
            .max(1.0);
        let l_left = ((1.0 - beta) / (target * (2.0 * PI).sqrt()))
            .powi(2)
            .max(1.0);
        let grid = |l: f64| -> Vec<f64> {
            let mut g: Vec<f64> = (0..=2000).map(|i| i as f64 * 5e-4).collect();
            let mut x = 1.0;
            while x < l {
                x = (x * 1.002).min(l);
                g.push(x);
            }
            g
        };
        let trapezoid = |xs: &[f64], sign: f64| -> f64 {
            let fs: Vec<f64> = xs
                .iter()
                .map(|&x| std_half_pdf(sign * x, beta).unwrap())
                .collect();
            xs.windows(2)
                .zip(fs.windows(2))
                .map(|(x, f)| 0.5 * (x[1] - x[0]) * (f[0] + f[1]))
                .sum()
        };
        let right = trapezoid(&grid(l_right), 1.0);
        let left = trapezoid(&grid(l_left), -1.0);
        let tails =
            (1.0 + beta) / (2.0 * PI * l_right).sqrt() + (1.0 - beta) / (2.0 * PI * l_left).sqrt();
        assert!(left + right >= 1.0 - 1e-4 - 1e-6);
        let total = left + right + tails;
        assert!(close(total, 1.0, 1e-3), "beta {beta}: {total}");
    }
}

#[test]
fn standardize_examples() {
    let p = StableParams::new(3.0, 2.0, 0.5, 0.0).unwrap();
    let (s, map) = standardize(&p).unwrap();
    assert_eq!(s, std(0.5, 0.0));
    assert_eq!(map.forward(5.0), 1.0);
    assert_eq!(map.inverse(map.forward(7.5)), 7.5);
    assert!(close(pdf(3.0, &p).unwrap(), 2.0 / PI / 2.0, 1e-15));
    assert!(matches!(
        standardize(&StableParams::new(1.0, 0.0, 0.5, 0.0).unwrap()),
        Err(Error::Degenerate)
    ));
    for x in [-40.0, -1.0, 2.9, 3.0, 3.5, 10.0, 400.0] {
        let direct = pdf(x, &p).unwrap();
        let via = std_half_pdf((x - 3.0) / 2.0, 0.0).unwrap() / 2.0;
        assert!(rel(direct, via) <= 1e-12);
    }
}

#[test]
fn tail_examples() {
    assert!(
        rel(
            tail_stable_half(100.0, 0.0).unwrap(),
            0.039_894_228_040_143_27
        ) < 1e-14
    );
    assert!(
        rel(
            tail_stable_half(100.0, 1.0).unwrap(),
            0.079_788_456_080_286_54
        ) < 1e-14
    );
    assert_eq!(tail_stable_half(3.0, -1.0).unwrap(), 0.0);
    assert_eq!(tail_stable_half(1e-3, 1.0).unwrap(), 1.0);
    assert!(rel(tail_gaussian(1.0).unwrap(), 0.241_970_724_519_143_37) < 1e-14);
    assert!(rel(tail_gaussian(5.0).unwrap(), 2.973_439_029_468_595e-7) < 1e-13);
    let ratio = tail_stable_half(10.0, 0.0).unwrap() / tail_gaussian(10.0).unwrap();
    assert!(ratio > 1e20);
    assert!(tail_gaussian(0.0).is_err());
    assert!(tail_stable_half(-1.0, 0.0).is_err());
}

#[test]
fn tail_underflow_is_flagged() {
    let t = TailApprox::gaussian(40.0).unwrap();
    assert_eq!(t.p_approx, 0.0);
    assert!(t.underflow);
    assert_eq!(tail_gaussian(40.0).unwrap(), 0.0);
    let t = TailApprox::gaussian(3.0).unwrap();
    assert!(!t.underflow && t.in_validity_range);
    assert!(!TailApprox::stable_half(0.5, 0.0).unwrap().in_validity_range);
}

#[test]
fn density_table_invariants() {
    let xs: Vec<f64> = (0..401).map(|i| -10.0 + 0.05 * i as f64).collect();
    for (p, m) in [
        (std(0.5, 0.5), Method::ClosedForm),
        (std(2.0, 0.0), Method::ClosedForm),
        (std(1.2, -0.3), Method::CfInversion),
    ] {
        let t = DensityTable::build(p, xs.clone(), m).unwrap();
        assert_eq!(t.len(), xs.len());
        assert!(t.pdf.iter().all(|&f| f >= 0.0));
        assert!(t.cdf.iter().all(|&f| (0.0..=1.0).contains(&f)));
        assert!(t.cdf.windows(2).all(|w| w[1] >= w[0]));
    }
    assert!(DensityTable::build(std(1.2, 0.0), xs.clone(), Method::ClosedForm).is_err());
    assert!(DensityTable::build(std(0.5, 0.0), vec![1.0, 1.0], Method::ClosedForm).is_err());
    assert!(DensityTable::build(std(0.5, 0.0), vec![], Method::ClosedForm).is_err());
}

#[test]
fn density_table_methods_agree() {
    let xs: Vec<f64> = (0..41).map(|i| -10.0 + 0.5 * i as f64).collect();
    let p = StableParams::new(1.0, 2.0, 0.5, -0.25).unwrap();
    let a = DensityTable::build(p, xs.clone(), Method::ClosedForm).unwrap();
    let b = DensityTable::build(p, xs, Method::CfInversion).unwrap();
    for i in 0..a.len() {
        assert!(close(a.pdf[i], b.pdf[i], 1e-9));
        assert!(close(a.cdf[i], b.cdf[i], 1e-9));
    }
}

#[test]
fn cdf_table_interpolates_accurately() {
    for beta in [-1.0, 0.0, 0.4, 1.0] {
        let table = CdfTable::half(beta).unwrap();
        for i in 0..600 {
            let x = (-1.0f64).powi(i) * 1.037f64.powi(i - 300);
            let exact = std_half_cdf(x, beta).unwrap();
            assert!(close(table.eval(x), exact, 1e-12), "beta {beta}, x {x}");
        }
        assert_eq!(table.eval(f64::INFINITY), 1.0);
        assert_eq!(table.eval(f64::NEG_INFINITY), 0.0);
    }
}

#[test]
fn inversion_reports_unresolvable_oscillation() {
    // α = 0.05 far from the origin needs far more panels than allowed
    let r = cf_inversion_pdf(50.0, &std(0.05, 0.0));
    assert!(matches!(r, Err(Error::NonConvergence { .. })), "{r:?}");
}
