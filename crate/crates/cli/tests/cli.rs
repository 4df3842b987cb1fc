//! End-to-end tests of the `varlat` binary: exit codes, output formats,
//! byte-for-byte determinism, and golden transcripts per verify suite.

use std::path::PathBuf;
use std::process::{Command, Output};

fn varlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_varlat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("varlat-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn subgroups_counts() {
    let out = varlat(&["subgroups", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Sub(S3): 6 subgroups"), "{text}");

    let out = varlat(&["subgroups", "--n", "4"]);
    assert!(stdout(&out).contains("Sub(S4): 30 subgroups"));

    let out = varlat(&["subgroups", "--n", "5"]);
    assert!(stdout(&out).contains("Sub(S5): 156 subgroups"));
}

#[test]
fn subgroups_formats_and_caps() {
    let out = varlat(&["subgroups", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["elements"].as_array().unwrap().len(), 6);

    let out = varlat(&["subgroups", "--n", "3", "--format", "dot"]);
    assert!(stdout(&out).starts_with("digraph sub_s3 {"));

    // Degree 6 requires the explicit opt-in.
    let out = varlat(&["subgroups", "--n", "6"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = scratch("subgroups");
    let path = dir.join("s3.dot");
    let out = varlat(&[
        "subgroups",
        "--n",
        "3",
        "--format",
        "dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("rankdir=BT"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn special_on_pentagon_file() {
    let dir = scratch("pentagon");
    let path = dir.join("pentagon.json");
    std::fs::write(
        &path,
        r#"{"elements": ["0", "a", "b", "c", "1"], "covers": [[0,1],[1,3],[3,4],[0,2],[2,4]]}"#,
    )
    .unwrap();
    let out = varlat(&[
        "special",
        "--lattice",
        path.to_str().unwrap(),
        "--kind",
        "modular",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("4 of 5 elements are modular:"), "{text}");
    for name in ["0", "a", "c", "1"] {
        assert!(text.contains(&format!("  {name}\n")));
    }

    // A non-lattice input is a usage error.
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"elements": ["x","y","z"], "covers": [[0,1],[0,2]]}"#).unwrap();
    let out = varlat(&["special", "--lattice", bad.to_str().unwrap(), "--kind", "modular"]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn special_on_subgroup_lattices() {
    let out = varlat(&["subgroups", "--n", "4"]);
    assert!(out.status.success());

    let out = varlat(&["special", "--subgroups", "4", "--kind", "cancellable"]);
    let text = stdout(&out);
    assert!(text.starts_with("2 of 30 elements are cancellable:"), "{text}");
    assert!(text.contains("  T\n"));
    assert!(text.contains("  S4\n"));

    let out = varlat(&[
        "special",
        "--subgroups",
        "4",
        "--kind",
        "modular",
        "--witness",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("7 of 30 elements are modular:"), "{text}");
    assert!(text.contains("V4"));
    assert!(text.contains("A4"));
    assert!(text.contains("fails at y ="));
}

#[test]
fn derive_exit_codes() {
    let dir = scratch("derive");
    let basis = dir.join("two_swaps.eq");
    std::fs::write(&basis, "xyz = yxz\nxyz = xzy\n").unwrap();

    let out = varlat(&[
        "derive",
        "--basis",
        basis.to_str().unwrap(),
        "--target",
        "xyz = zyx",
        "--max-len",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("chain found"));

    // Underivable: bounded search exhausts and exits 1.
    let comm = dir.join("comm.eq");
    std::fs::write(&comm, "xy = yx\n").unwrap();
    let out = varlat(&[
        "derive",
        "--basis",
        comm.to_str().unwrap(),
        "--target",
        "xy = x",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no chain within bounds"));

    // Parse error in the target exits 2.
    let out = varlat(&[
        "derive",
        "--basis",
        comm.to_str().unwrap(),
        "--target",
        "xyz =",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Zero targets derive both absorption components; chain JSON output.
    let qualifying = dir.join("qualifying.eq");
    std::fs::write(&qualifying, "xyz = yxz\nxyz = xzy\nx^2y = 0\n").unwrap();
    let json_path = dir.join("chain.json");
    let out = varlat(&[
        "derive",
        "--basis",
        qualifying.to_str().unwrap(),
        "--target",
        "xyx = 0",
        "--max-len",
        "4",
        "--out",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("zero target: both absorption components derived"));
    let chain: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert!(chain["absorb_left"]["words"].as_array().unwrap().len() >= 2);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn perm_command() {
    let dir = scratch("perm");
    let pres = dir.join("system_i.eq");
    std::fs::write(&pres, "nil_bound: 3\nxyz = zyx\nx^2y = 0\n").unwrap();
    let out = varlat(&["perm", "--basis", pres.to_str().unwrap(), "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Perm_3 = {(), (1 3)}"), "{text}");
    assert!(text.contains("= T13"));

    // The nilpotence case is flagged.
    let nil2 = dir.join("nil2.eq");
    std::fs::write(&nil2, "# no identities\n").unwrap();
    let out = varlat(&[
        "perm",
        "--basis",
        nil2.to_str().unwrap(),
        "--nil-bound",
        "2",
        "--n",
        "3",
    ]);
    let text = stdout(&out);
    // Elements in the canonical (image-lexicographic) order.
    assert!(text.contains("Perm_3 = {(), (2 3), (1 2), (1 2 3), (1 3 2), (1 3)}"), "{text}");
    assert!(text.contains("= S3"));
    assert!(text.contains("nilpotence case"));

    // No bound anywhere: usage error.
    let out = varlat(&["perm", "--basis", nil2.to_str().unwrap(), "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // Oversized bounds are refused rather than blowing up the universe.
    let out = varlat(&[
        "perm",
        "--basis",
        nil2.to_str().unwrap(),
        "--nil-bound",
        "20",
        "--n",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // The theorem basis satisfies every length-3 permutational identity.
    let theorem = dir.join("theorem.eq");
    std::fs::write(&theorem, "nil_bound: 3\nxyz = yxz = xzy\nx^2y = 0\n").unwrap();
    let out = varlat(&["perm", "--basis", theorem.to_str().unwrap(), "--n", "3"]);
    let text = stdout(&out);
    assert!(text.contains("order 6 = S3"), "{text}");
    assert!(!text.contains("nilpotence case"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_matches_goldens() {
    for suite in [
        "figures",
        "lemma-cancellable",
        "theorem-necessity",
        "counterexamples",
        "derivations",
    ] {
        let out = varlat(&["verify", suite]);
        assert_eq!(out.status.code(), Some(0), "suite {suite} failed");
        let golden_path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(format!("{suite}.jsonl"));
        let golden = std::fs::read_to_string(&golden_path).unwrap();
        assert_eq!(stdout(&out), golden, "suite {suite} diverged from its golden transcript");
    }
}

#[test]
fn verify_is_deterministic_and_writes_reports() {
    let first = varlat(&["verify", "counterexamples"]);
    let second = varlat(&["verify", "counterexamples"]);
    assert_eq!(stdout(&first), stdout(&second));

    let dir = scratch("verify");
    let out = varlat(&["verify", "figures", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.join("figures.jsonl").exists());
    assert!(dir.join("sub_s3.json").exists());
    assert!(dir.join("sub_s3.dot").exists());
    // The report references its certificates.
    assert!(stdout(&out).contains("\"cert\":\"sub_s3.json\""));
    let _ = std::fs::remove_dir_all(&dir);

    let out = varlat(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_passes_with_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_varlat"))
        .args(["verify", "all"])
        .env("VARLAT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"claim\":\"coverage.all-ops\",\"pass\":true"));
    assert!(text.trim_end().ends_with("checks passed"));

    // The capped run produces the same bytes as a single-threaded run.
    let sequential = Command::new(env!("CARGO_BIN_EXE_varlat"))
        .args(["verify", "all"])
        .env("VARLAT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(text, stdout(&sequential));
}
