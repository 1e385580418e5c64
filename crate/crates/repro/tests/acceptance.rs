//! One line per criterion. Runs without the libtest harness so every line is
//! printed; exits nonzero if any criterion fails.

use std::path::Path;

fn main() {
    let scratch = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    let criteria = molnoise_repro::criteria();
    let mut failed = Vec::new();
    for (k, c) in criteria.iter().enumerate() {
        let v = c.run(&scratch);
        println!(
            "[{}] criterion {}: {}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            k + 1,
            c.name,
            v.detail
        );
        if !v.pass {
            failed.push(k + 1);
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
