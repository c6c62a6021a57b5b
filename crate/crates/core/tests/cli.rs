//! End-to-end checks of the command-line interface: file formats, exit
//! codes, and the construct/encode/decode round trip.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cmplxgt"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn gen_verify_encode_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let out = run(
        &[
            "gen-matrix", "--kind", "random", "-n", "8", "-d", "3", "-r", "2", "-z", "1",
            "--seed", "5", "-o", "g.mat",
        ],
        d,
    );
    assert_code(&out, 0);
    let out = run(
        &[
            "gen-matrix", "--kind", "kautz-singleton", "-n", "8", "-d", "4", "-o", "m.mat",
        ],
        d,
    );
    assert_code(&out, 0);

    // the concatenation for n=8, d=4 lands on a 25x8 matrix
    let header = std::fs::read_to_string(d.join("m.mat")).unwrap();
    assert!(header.starts_with("GTMAT v1 25 8"), "{header}");

    assert_code(&run(&["verify", "--matrix", "m.mat", "-d", "4"], d), 0);
    // the same matrix cannot be 7-disjunct (every column would need a
    // private row against all others)
    assert_code(&run(&["verify", "--matrix", "m.mat", "-d", "7"], d), 4);

    std::fs::write(d.join("d.set"), "GTSET v1 8 2\n2: 1 2\n2: 4 6\n").unwrap();
    let out = run(
        &[
            "encode", "--set", "d.set", "--outer", "g.mat", "--inner", "m.mat",
            "--mode", "ccmplx", "-o", "y.out",
        ],
        d,
    );
    assert_code(&out, 0);

    let out = run(
        &[
            "decode", "--outcome", "y.out", "--outer", "g.mat", "--inner", "m.mat",
            "-z", "1", "--mode", "ccmplx",
        ],
        d,
    );
    assert_code(&out, 0);
    let decoded: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("decode emits JSON");
    assert_eq!(
        decoded["complexes"],
        serde_json::json!([[1, 2], [4, 6]]),
        "planted complexes recovered"
    );
}

#[test]
fn decode_tolerates_flips_within_budget() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_code(
        &run(
            &[
                "gen-matrix", "-n", "9", "-d", "3", "-r", "2", "-z", "3", "--seed", "2",
                "-o", "g.mat",
            ],
            d,
        ),
        0,
    );
    assert_code(
        &run(&["gen-matrix", "-n", "9", "-d", "3", "--seed", "3", "-o", "m.mat"], d),
        0,
    );
    std::fs::write(d.join("d.set"), "GTSET v1 9 2\n2: 0 3\n1: 7\n").unwrap();
    assert_code(
        &run(
            &[
                "encode", "--set", "d.set", "--outer", "g.mat", "--inner", "m.mat",
                "--mode", "gcmplx", "-e", "1", "--seed", "8", "-o", "y.out",
            ],
            d,
        ),
        0,
    );
    let out = run(
        &[
            "decode", "--outcome", "y.out", "--outer", "g.mat", "--inner", "m.mat",
            "-z", "3", "--mode", "gcmplx", "-o", "result.json",
        ],
        d,
    );
    assert_code(&out, 0);
    let decoded: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("result.json")).unwrap()).unwrap();
    assert_eq!(decoded["complexes"], serde_json::json!([[7], [0, 3]]));
}

#[test]
fn run_subcommand_reports_and_respects_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("exp.cfg"),
        "n=8\nd=3\nr=2\ns=2\nz=1\nmode=ccmplx\ntrials=2\nseed=9\n",
    )
    .unwrap();
    let out = run(&["run", "--config", "exp.cfg", "-D", "trials=3"], d);
    assert_code(&out, 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4, "3 trial lines + summary:\n{stdout}");
    let summary: serde_json::Value = serde_json::from_str(lines[3]).unwrap();
    assert_eq!(summary["type"], "summary");
    assert_eq!(summary["aggregate"]["successes"], 3);
}

#[test]
fn malformed_files_and_configs_use_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.mat"), "GTMAT v1 2 3\n101\n10\n").unwrap();
    assert_code(&run(&["verify", "--matrix", "bad.mat", "-d", "1"], d), 6);

    std::fs::write(d.join("bad.cfg"), "n=8\nd=9\nr=2\ns=2\nz=1\ntrials=1\n").unwrap();
    assert_code(&run(&["run", "--config", "bad.cfg"], d), 2);

    // construction failure: starved row budget with a single attempt
    let out = run(
        &[
            "gen-matrix", "-n", "20", "-d", "5", "-r", "3", "-z", "5",
            "--row-constant", "0.001", "--max-attempts", "1", "-o", "x.mat",
        ],
        d,
    );
    assert_code(&out, 3);

    // exhaustive verification beyond budget
    assert_code(
        &run(
            &[
                "verify", "--matrix", "bad.mat", "-d", "1", "--verify-budget", "0",
            ],
            d,
        ),
        6,
    );
}

#[test]
fn sweep_expands_skips_and_exports_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("grid.cfg"),
        "n=8\nd=3\nr=2\ns=2\nz=1,3\nmode=ccmplx\ntrials=1\nseed=4\noutput=out/point.jsonl\n",
    )
    .unwrap();
    let out = run(
        &["sweep", "--config", "grid.cfg", "--csv", "agg.csv"],
        d,
    );
    assert_code(&out, 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.matches("done ").count(), 2, "{stdout}");

    let csv = std::fs::read_to_string(d.join("agg.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);

    // rerunning skips both completed points
    let out = run(&["sweep", "--config", "grid.cfg"], d);
    assert_code(&out, 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.matches("skip ").count(), 2, "{stdout}");
}
