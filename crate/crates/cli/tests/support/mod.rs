// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const SEEDS: &str = "CJE,FE,JEI,JPKE,NLR,S&S";

pub fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/mini_field")
}

pub fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// `--edges ... --journals ... --citable ... --year 2006` for the fixture.
pub fn fixture_inputs() -> Vec<String> {
    let f = fixture();
    vec![
        "--edges".into(),
        f.join("edges.csv").display().to_string(),
        "--journals".into(),
        f.join("journals.csv").display().to_string(),
        "--citable".into(),
        f.join("citable.csv").display().to_string(),
        "--year".into(),
        "2006".into(),
    ]
}

pub fn citefield(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_citefield"));
    cmd.args(args).env("RUST_LOG", "error");
    match threads {
        Some(t) => cmd.env("CITEFIELD_THREADS", t),
        None => cmd.env_remove("CITEFIELD_THREADS"),
    };
    cmd.output().expect("binary runs")
}

/// Runs `report` on the fixture into `dir`.
pub fn fixture_report(dir: &Path, threads: Option<&str>) -> Output {
    let inputs = fixture_inputs();
    let mut args: Vec<&str> = vec!["report"];
    args.extend(inputs.iter().map(String::as_str));
    let out_dir = dir.display().to_string();
    args.extend(["--seeds", SEEDS, "--out-dir", &out_dir]);
    citefield(&args, threads)
}

pub const GOLDEN_FILES: [&str; 6] = ["report.json", "table.txt", "map.json", "map.net", "map.dot", "map.svg"];
