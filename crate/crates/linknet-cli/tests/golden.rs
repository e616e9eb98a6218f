//! Golden-file tests for the CLI: every command is deterministic, its
//! output is byte-identical across runs and matches the committed
//! golden files (acceptance criterion 12).

use std::path::{Path, PathBuf};
use std::process::Command;

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

struct Run {
    stdout: String,
    code: i32,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_linknet"))
        .current_dir(workspace_root())
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf8 output"),
        code: out.status.code().unwrap_or(-1),
    }
}

/// The command list pinned by golden files: (name, args, expected exit).
fn cases() -> Vec<(&'static str, Vec<&'static str>, i32)> {
    vec![
        ("validate_seg2", vec!["validate", "fixtures/seg2.json"], 0),
        ("validate_tri3", vec!["validate", "fixtures/tri3.json"], 0),
        ("validate_exact1", vec!["validate", "fixtures/exact1.json"], 0),
        (
            "validate_type_i_axioms",
            vec![
                "validate",
                "fixtures/type_i.json",
                "--checks",
                "weakly-linked,linked",
            ],
            0,
        ),
        (
            "validate_circuit_violation",
            vec!["validate", "fixtures/circuit_violation.json"],
            1,
        ),
        ("min_gens_seg2", vec!["min-gens", "fixtures/seg2.json"], 0),
        ("min_gens_tri3", vec!["min-gens", "fixtures/tri3.json"], 0),
        ("min_gens_exact1", vec!["min-gens", "fixtures/exact1.json"], 0),
        ("classify2_exact1", vec!["classify2", "fixtures/exact1.json"], 0),
        ("classify2_type_i", vec!["classify2", "fixtures/type_i.json"], 0),
        ("classify2_type_ii", vec!["classify2", "fixtures/type_ii.json"], 0),
        ("classify2_type_iii", vec!["classify2", "fixtures/type_iii.json"], 0),
        ("classify2_type_iv", vec!["classify2", "fixtures/type_iv.json"], 0),
        ("classify2_type_v", vec!["classify2", "fixtures/type_v.json"], 0),
        ("hull_seg2", vec!["hull", "fixtures/seg2.json"], 0),
        ("hull_exact1", vec!["hull", "fixtures/exact1.json"], 0),
        ("shadow_seg2", vec!["shadow", "fixtures/seg2.json", "3,0"], 0),
        ("render_type_i", vec!["render", "fixtures/type_i.json"], 0),
        ("lp_eqs_seg2", vec!["lp", "eqs", "fixtures/seg2.json"], 0),
        ("lp_eqs_tri3", vec!["lp", "eqs", "fixtures/tri3.json"], 0),
        ("lp_count_seg2_f2", vec!["lp", "count", "fixtures/seg2_f2.json"], 0),
        ("lp_count_seg2_f3", vec!["lp", "count", "fixtures/seg2_f3.json"], 0),
        ("lp_count_seg2_f5", vec!["lp", "count", "fixtures/seg2_f5.json"], 0),
        ("lp_strata_seg2_f3", vec!["lp", "strata", "fixtures/seg2_f3.json"], 0),
        ("lp_strata_tri3_f3", vec!["lp", "strata", "fixtures/tri3_f3.json"], 0),
        ("lp_charts_tri3", vec!["lp", "charts", "fixtures/tri3.json"], 0),
        ("lp_jacobian_seg2_f3", vec!["lp", "jacobian", "fixtures/seg2_f3.json"], 0),
        (
            "lp_hilbert_seg2_csv",
            vec!["lp", "hilbert", "fixtures/seg2.json", "--bound", "3", "--csv"],
            0,
        ),
        ("smooth_check_seg2", vec!["smooth", "check", "fixtures/seg2.json"], 0),
        ("smooth_check_tri3", vec!["smooth", "check", "fixtures/tri3.json"], 0),
        (
            "smooth_degeneration_seg2_csv",
            vec![
                "smooth",
                "degeneration",
                "fixtures/seg2.json",
                "--bound",
                "3",
                "--csv",
            ],
            0,
        ),
        ("smooth_build_seg2", vec!["smooth", "build", "fixtures/seg2.json"], 0),
        (
            "smooth_build_type_i_rejected",
            vec!["smooth", "build", "fixtures/type_i.json"],
            1,
        ),
        ("validate_seg2_json", vec!["validate", "fixtures/seg2.json", "--json"], 0),
        (
            "classify2_type_v_json",
            vec!["classify2", "fixtures/type_v.json", "--json"],
            0,
        ),
    ]
}

#[test]
fn acceptance_12_cli_determinism_and_goldens() {
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut failures = Vec::new();
    for (name, args, want_code) in cases() {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(
            first.stdout, second.stdout,
            "{name}: output differs between two runs"
        );
        assert_eq!(first.code, second.code, "{name}: exit code differs");
        if first.code != want_code {
            failures.push(format!(
                "{name}: exit {} (wanted {want_code})",
                first.code
            ));
            continue;
        }
        let golden_path = golden_dir.join(format!("{name}.golden"));
        let golden = std::fs::read_to_string(&golden_path)
            .unwrap_or_else(|_| panic!("{name}: missing golden file {golden_path:?}"));
        if first.stdout != golden {
            failures.push(format!("{name}: output differs from the golden file"));
        }
    }
    println!(
        "ACCEPTANCE 12 cli-determinism: {}",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn malformed_document_exits_2() {
    let r = run(&["validate", "fixtures/malformed.json"]);
    assert_eq!(r.code, 2);
}

#[test]
fn lp_budget_exceeded_exits_3() {
    let r = run(&["lp", "count", "fixtures/seg2_f5.json", "--budget", "3"]);
    assert_eq!(r.code, 3);
}
