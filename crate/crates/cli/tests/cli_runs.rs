use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_molnoise"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"))
        .join("cli_runs")
        .join(tag);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn channel_query_in_physical_units() {
    let o = run(&[
        "--command",
        "channel",
        "--channel-kind",
        "A",
        "--d",
        "1",
        "--D",
        "0.5",
        "--grid-min",
        "1",
        "--grid-max",
        "2",
        "--grid-points",
        "2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("t,pdf,cdf,sf,cf_abs\n"));
    let pdf: f64 = rows(&text)[0][1].parse().unwrap();
    assert!((pdf - 0.241_970_724_519_143_4).abs() < 1e-12);

    let o = run(&[
        "--command",
        "channel",
        "--channel-kind",
        "B",
        "--d",
        "1",
        "--D",
        "2",
        "--grid-min",
        "1",
        "--grid-max",
        "2",
        "--grid-points",
        "2",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cf_abs = v["rows"][0][4].as_f64().unwrap();
    assert!((cf_abs - (-1.0f64).exp()).abs() < 1e-15);
    assert_eq!(v["metadata"]["model"]["support"], "full_line");

    let o = run(&[
        "--command",
        "channel",
        "--channel-kind",
        "C",
        "--d",
        "1",
        "--Da",
        "4",
        "--Db",
        "1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = &v["metadata"]["model"]["params"];
    assert!((p["beta"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert!((p["c"].as_f64().unwrap() - 1.125).abs() < 1e-15);
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta = 0.333333"));
}

#[test]
fn figures_write_three_tables() {
    let dir = scratch("figures");
    let o = run(&["--command", "figures", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let fig1 = std::fs::read_to_string(dir.join("fig1_pdf.csv")).unwrap();
    assert!(fig1.starts_with("x,pdf_beta_0,pdf_beta_0.5,pdf_beta_1,pdf_gaussian\n"));
    assert!(fig1.ends_with('\n'));
    let zero = rows(&fig1)
        .into_iter()
        .find(|r| r[0].parse::<f64>().unwrap() == 0.0)
        .unwrap();
    assert!((zero[1].parse::<f64>().unwrap() - 0.636_619_772_367_581_3).abs() < 1e-15);
    let fig2 = std::fs::read_to_string(dir.join("fig2_cdf.csv")).unwrap();
    let zero = rows(&fig2)
        .into_iter()
        .find(|r| r[0].parse::<f64>().unwrap() == 0.0)
        .unwrap();
    assert_eq!(zero[1].parse::<f64>().unwrap(), 0.5);
    let fig3 = std::fs::read_to_string(dir.join("fig3_tail.csv")).unwrap();
    assert!(fig3.starts_with("x,sf_beta_0,approx_beta_0,"));
    assert_eq!(rows(&fig3).len(), 241);
}

#[test]
fn tail_table_for_the_one_sided_law() {
    let o = run(&[
        "--command",
        "tail",
        "--beta",
        "1",
        "--grid-min",
        "100",
        "--grid-max",
        "1000",
        "--grid-points",
        "2",
    ]);
    assert!(o.status.success());
    let r = rows(&stdout(&o));
    let approx: f64 = r[0][2].parse().unwrap();
    assert!((approx - 0.079_788_456_080_286_54).abs() < 1e-15);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = scratch("config");
    let path = dir.join("run.conf");
    std::fs::write(
        &path,
        "# standard density\ncommand = pdf\nbeta = 0, 1\ngrid-min = -1\ngrid-max = 1\ngrid-points = 3\n",
    )
    .unwrap();
    let o = run(&["--config", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("x,pdf_beta_0,pdf_beta_1\n"));
    assert_eq!(rows(&text).len(), 3);

    let o = run(&[
        "--config",
        path.to_str().unwrap(),
        "--command",
        "cdf",
        "--beta",
        "0.5",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("x,cdf_beta_0.5\n"), "{text}");

    std::fs::write(&path, "command = pdf\nnot-a-flag = 3\n").unwrap();
    assert_eq!(
        run(&["--config", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        vec!["--command", "pdf", "--beta", "1.5"],
        vec!["--command", "pdf", "--grid-min", "2", "--grid-max", "1"],
        vec!["--command", "channel"],
        vec![
            "--command",
            "channel",
            "--channel-kind",
            "C",
            "--d",
            "1",
            "--Da",
            "1",
        ],
        vec!["--command", "nope"],
        vec!["--command", "pdf", "--config", "/nonexistent/molnoise.conf"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn sample_is_reproducible() {
    let args = [
        "--command",
        "sample",
        "--channel-kind",
        "C",
        "--d",
        "1",
        "--Da",
        "4",
        "--Db",
        "1",
        "--n",
        "5000",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(rows(&stdout(&a)).len(), 5000);
    let c = run(&[&args[..], &["--seed", "99"]].concat());
    assert_ne!(a.stdout, c.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("KS statistic"));
}

#[test]
fn validate_passes_and_catches_a_perturbed_scale() {
    let dir = scratch("validate");
    let report = dir.join("report.json");
    let o = run(&[
        "--command",
        "validate",
        "--format",
        "json",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let suites: std::collections::BTreeSet<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[0].as_str().unwrap())
        .collect();
    for s in [
        "specfun_identities",
        "symmetry",
        "cf_composition",
        "oracle_agreement",
        "ks",
        "tails",
    ] {
        assert!(suites.contains(s), "missing suite {s}");
    }
    assert_eq!(
        v["columns"],
        serde_json::json!(["suite", "check", "measured", "tolerance", "pass"])
    );

    let o = run(&[
        "--command",
        "validate",
        "--n",
        "200000",
        "--fault-scale",
        "1.01",
        "--out",
        dir.join("bad.csv").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let bad = std::fs::read_to_string(dir.join("bad.csv")).unwrap();
    assert!(bad.contains(",false\n"));
}
