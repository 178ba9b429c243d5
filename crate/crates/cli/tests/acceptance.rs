//! Acceptance criteria, one line each. Every suite runs through the
//! `spinmod` binary exactly as a user would invoke it.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    bytes: Vec<u8>,
    report: Value,
}

fn spinmod(dir: &Path, name: &str, args: &[&str]) -> Run {
    let out = dir.join(format!("{name}.json"));
    let status = Command::new(env!("CARGO_BIN_EXE_spinmod"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .status()
        .expect("spinmod runs");
    let bytes = std::fs::read(&out).expect("report written");
    let report = serde_json::from_slice(&bytes).expect("report is JSON");
    Run { code: status.code().unwrap_or(-1), bytes, report }
}

fn cases(r: &Run) -> &Vec<Value> {
    r.report["cases"].as_array().expect("cases")
}

fn line(k: usize, ok: bool, detail: &str) {
    println!("criterion {k}: {} {detail}", if ok { "PASS" } else { "FAIL" });
}

fn irreducible_cases(r: &Run) -> Vec<(u64, String, String, String)> {
    cases(r)
        .iter()
        .filter(|c| c["got"]["irreducible"] == true)
        .filter_map(|c| {
            let pair = c["input"]["pair"].as_array()?;
            Some((
                c["input"]["n"].as_u64()?,
                pair[0].as_str()?.to_string(),
                pair[1].as_str()?.to_string(),
                c["got"]["label"].as_str()?.to_string(),
            ))
        })
        .collect()
}

fn main() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let mut failed = Vec::new();
    let exception = vec![(5, "(3,2)+".to_string(), "(3,2)-".to_string(), "(4,1)".to_string())];

    // 1
    let mt = spinmod(dir, "mt", &["verify", "mt", "--max-n", "9", "--seed", "1", "--threads", "4"]);
    let ok1 = mt.code == 0 && mt.report["pass"] == true && irreducible_cases(&mt) == exception;
    line(1, ok1, &format!("verify mt --max-n 9: {} products, irreducible {:?}", cases(&mt).len(), irreducible_cases(&mt)));

    // 2
    let scan = spinmod(dir, "scan", &["verify", "scan", "--max-n", "7"]);
    let ok2 = scan.code == 0 && scan.report["pass"] == true && irreducible_cases(&scan) == exception;
    line(2, ok2, &format!("verify scan --max-n 7: irreducible {:?}", irreducible_cases(&scan)));

    // 3
    let benson = spinmod(dir, "benson", &["verify", "benson", "--max-n", "9"]);
    let mism3 = cases(&benson).iter().filter(|c| c["pass"] != true).count();
    let ok3 = benson.code == 0 && mism3 == 0;
    line(3, ok3, &format!("{} labels for 2 <= n <= 9, {mism3} mismatches", cases(&benson).len()));

    // 4
    let branching = spinmod(dir, "branching", &["verify", "branching", "--max-n", "8"]);
    let mism4 = cases(&branching).iter().filter(|c| c["pass"] != true).count();
    let ok4 = branching.code == 0 && mism4 == 0;
    line(4, ok4, &format!("{} labels for n <= 8, {mism4} mismatches (End dimension and normal-node multiplicities)", cases(&branching).len()));

    // 5
    let basic = spinmod(dir, "basic", &["verify", "basic", "--max-n", "9"]);
    let ok5 = basic.code == 0 && basic.report["pass"] == true;
    line(5, ok5, "dimension 2^((n-1)/2) and restriction pattern, n <= 9");

    // 6: the literal reading of the odd-value lemma fails on collision classes
    let spin = spinmod(dir, "spinchar", &["verify", "spinchar", "--max-n", "12"]);
    let failing: Vec<&Value> = cases(&spin).iter().filter(|c| c["pass"] != true).collect();
    let only_literal = failing.iter().all(|c| c["input"]["check"] == "odd-value lemma, literal reading");
    let literal_misses: u64 = failing.iter().map(|c| c["got"]["mismatches"].as_u64().unwrap()).sum();
    let known_witness = failing.iter().any(|c| {
        c["got"]["counterexample"]["lambda"] == "(6,1)" && c["got"]["counterexample"]["alpha"] == "(5,1,1)"
    });
    let ok6 = spin.code == 0 && failing.is_empty();
    line(
        6,
        ok6,
        &format!(
            "{literal_misses} literal-reading mismatches over n <= 12 (first: lambda (6,1), alpha (5,1,1), value even); \
             refined predicate, degree, magnitude and mod-2 checks all pass"
        ),
    );
    // the deviation must be exactly the documented one
    let deviation_as_documented = !failing.is_empty() && only_literal && known_witness && spin.code == 1;
    if !deviation_as_documented {
        eprintln!("unexpected spin character failures: {failing:?}");
    }

    // 7
    let perm = spinmod(dir, "perm", &["verify", "perm", "--n", "5,7,9"]);
    let ok7 = perm.code == 0 && perm.report["pass"] == true && cases(&perm).len() == 9;
    line(7, ok7, "M_1, M_2, M_{1^2} for n = 5, 7, 9; M_1 certified direct sum");

    // 8
    let mt_again = spinmod(dir, "mt_again", &["verify", "mt", "--max-n", "9", "--seed", "1", "--threads", "1"]);
    let scan_again = spinmod(dir, "scan_again", &["verify", "scan", "--max-n", "7", "--threads", "2"]);
    let benson_again = spinmod(dir, "benson_again", &["verify", "benson", "--max-n", "9", "--threads", "3"]);
    let spin_again = spinmod(dir, "spinchar_again", &["verify", "spinchar", "--max-n", "12"]);
    let ok8 = mt.bytes == mt_again.bytes
        && scan.bytes == scan_again.bytes
        && benson.bytes == benson_again.bytes
        && spin.bytes == spin_again.bytes;
    line(8, ok8, "mt, scan, benson, spinchar reports byte-identical across reruns and thread counts");

    for (k, ok) in [(1, ok1), (2, ok2), (3, ok3), (4, ok4), (5, ok5), (7, ok7), (8, ok8)] {
        if !ok {
            failed.push(k);
        }
    }
    if !deviation_as_documented {
        failed.push(6);
    }
    if failed.is_empty() {
        println!("acceptance: criterion 6 fails as documented; all other criteria pass");
    } else {
        eprintln!("acceptance: unexpected failures in criteria {failed:?}");
        std::process::exit(1);
    }
}
