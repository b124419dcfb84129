// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cm-newforms"))
        .args(args)
        .output()
        .expect("run binary")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], name: &str) {
    let out = bin(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden(name),
        "{args:?}"
    );
}

#[test]
fn classgroup_reports() {
    assert_golden(&["classgroup", "--disc", "3"], "classgroup_3.txt");
    assert_golden(&["classgroup", "--disc", "23"], "classgroup_23.txt");
    assert_golden(&["classgroup", "--disc", "4027"], "classgroup_4027.txt");
    assert_golden(&["classgroup", "--disc", "5460"], "classgroup_5460.txt");
}

#[test]
fn newform_expansions() {
    assert_golden(
        &["newform", "--disc", "7", "--weight", "3", "--nmax", "113"],
        "newform_7_k3.txt",
    );
    assert_golden(
        &[
            "newform", "--disc", "15", "--weight", "3", "--signs", "-", "--nmax", "113",
        ],
        "newform_15_k3_minus.txt",
    );
    assert_golden(
        &[
            "newform", "--disc", "7", "--weight", "4", "--all", "--nmax", "40",
        ],
        "newform_7_k4_all.txt",
    );
    assert_golden(
        &[
            "newform",
            "--disc",
            "5460",
            "--weight",
            "3",
            "--calibrate",
            "--nmax",
            "113",
        ],
        "newform_5460_k3_calibrated.txt",
    );
    assert_golden(
        &["newform", "--disc", "8", "--weight", "4", "--nmax", "97"],
        "newform_8_k4.txt",
    );
}

#[test]
fn search_lists_do_not_depend_on_jobs() {
    for (l, b, name) in [
        ("1", "200", "search_l1_200.txt"),
        ("2", "5460", "search_l2_5460.txt"),
        ("3", "100000", "search_l3_100000.txt"),
    ] {
        for jobs in ["1", "3", "8"] {
            assert_golden(
                &[
                    "search",
                    "--exponent-divides",
                    l,
                    "--max-disc",
                    b,
                    "--jobs",
                    jobs,
                ],
                name,
            );
        }
    }
}

#[test]
fn verify_reports_do_not_depend_on_jobs() {
    for jobs in ["1", "4"] {
        assert_golden(
            &["verify", "--table", "wt3", "--jobs", jobs],
            "verify_wt3.txt",
        );
        assert_golden(
            &["verify", "--table", "wt4", "--jobs", jobs],
            "verify_wt4.txt",
        );
    }
}

#[test]
fn corrupted_table_fails_verification() {
    let text = cm_newforms::cli::tables::WEIGHT3.replacen("7 7 2:-3 ", "7 7 2:-4 ", 1);
    assert_ne!(text, cm_newforms::cli::tables::WEIGHT3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wt3_corrupt.txt");
    std::fs::write(&path, text).unwrap();
    let out = bin(&[
        "verify",
        "--table",
        "wt3",
        "--table-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("7\tFAIL\n"));
    assert!(stdout.contains("level=7 p=2 expected=-4 got=-3"));
    assert!(stdout.ends_with("64/65 PASS, 1 FAIL\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["classgroup", "--disc", "5"]).status.code(), Some(2));
    assert_eq!(
        bin(&["newform", "--disc", "5", "--weight", "3"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        bin(&["newform", "--disc", "23", "--weight", "3"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        bin(&["newform", "--disc", "20", "--weight", "3", "--nmax", "5"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        bin(&["newform", "--disc", "15", "--weight", "3", "--signs", "+-"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bin(&["newform", "--disc", "11", "--weight", "5", "--calibrate"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bin(&["verify", "--table", "wt5"]).status.code(), Some(2));
    assert_eq!(
        bin(&["verify", "--table", "wt3", "--table-file", "/nonexistent"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bin(&["search", "--exponent-divides", "0", "--max-disc", "10"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bin(&["bogus"]).status.code(), Some(2));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}
