use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Runs the binary, returning stdout, stderr and the exit status.
fn run<I, S>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = Command::new(env!("CARGO_BIN_EXE_ci-lattice")).args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn mixed_dominating_reports() {
    let (out, _, code) = run(["check-mixed-dominating", path(&fixture("glued_matrix.json"))]);
    assert_eq!(code, 0);
    assert!(out.contains("mixed dominating: true"), "{out}");
    assert!(out.contains("glue row 2: columns {1, 2, 3} | {4}"), "{out}");
    let (out, _, code) = run(["check-mixed-dominating", path(&fixture("not_mixed.json"))]);
    assert_eq!((out.as_str(), code), ("mixed: false\n", 0));
    let (out, _, code) = run(["check-mixed-dominating", path(&fixture("empty_matrix.json"))]);
    assert_eq!((out.as_str(), code), ("mixed dominating: true (empty)\n", 0));
    let (out, _, _) = run(["check-mixed-dominating", path(&fixture("glued_matrix.json")), "--format", "machine"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mixed_dominating"], Value::Bool(true));
    assert_eq!(v["decomposition"]["glue_row"], 2);
}

#[test]
fn decide_examples() {
    let (out, _, code) = run(["decide", path(&fixture("torsion_semigroup.json")), "--char", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: yes"), "{out}");
    assert!(out.contains("  x1*x2^3 - x3^4\n") && out.contains("  x1^3*x2 - x4^4\n"), "{out}");
    assert!(out.contains("binomials (height 2):"), "{out}");

    let (out, _, code) = run(["decide", path(&fixture("lattice_l_prime.json")), "--char", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: no"), "{out}");

    let (out, _, code) = run(["decide", path(&fixture("lattice_l_prime.json")), "--char", "2", "--format", "machine"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "yes");
    assert_eq!(v["root"]["index_exponent"], 2);
    assert_eq!(v["note"], "up to radical, characteristic 2");
}

#[test]
fn input_errors_exit_with_two() {
    let (_, err, code) = run(["decide", path(&fixture("not_positive.json"))]);
    assert_eq!(code, 2);
    assert!(err.contains("(0, 1, 1) is a nonzero nonnegative element"), "{err}");
    let (_, err, code) = run(["decide", path(&fixture("lattice_l.json")), "--char", "6"]);
    assert_eq!(code, 2);
    assert!(err.contains("neither 0 nor a prime"), "{err}");
    let (_, _, code) = run(["decide", path(&fixture("does_not_exist.json"))]);
    assert_eq!(code, 2);
    let (_, _, code) = run(["check-mixed-dominating", path(&fixture("lattice_l.json"))]);
    assert_eq!(code, 2);
    let (_, _, code) = run(["cone", path(&fixture("not_positive.json"))]);
    assert_eq!(code, 2);
}

#[test]
fn exponent_cap_exits_with_three() {
    let (out, _, code) = run(["decide", path(&fixture("lattice_l_prime.json")), "--char", "2", "--max-exp", "0"]);
    assert_eq!(code, 3);
    assert!(out.contains("verdict: no_within_bound"), "{out}");
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("l.json");
    let (out, _, _) = run(["decide", path(&fixture("lattice_l.json")), "--format", "machine"]);
    std::fs::write(&cert, &out).unwrap();
    let (out, _, code) = run(["verify", path(&fixture("lattice_l.json")), path(&cert)]);
    assert_eq!((out.as_str(), code), ("pass (characteristic 0)\n", 0));
    let (_, _, code) = run(["verify", path(&fixture("torsion_semigroup.json")), path(&cert)]);
    assert_eq!(code, 0);

    let (out, _, _) = run(["decide", path(&fixture("lattice_l_prime.json")), "--char", "2", "--format", "machine"]);
    let mut v: Value = serde_json::from_str(&out).unwrap();
    v["characteristic"] = 0.into();
    let relabeled = dir.path().join("lp0.json");
    std::fs::write(&relabeled, v.to_string()).unwrap();
    let (out, _, code) = run(["verify", path(&fixture("lattice_l_prime.json")), path(&relabeled)]);
    assert_eq!(code, 1);
    assert!(out.starts_with("fail: span has index 4"), "{out}");

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    v["root"]["u"] = serde_json::json!([3, 1, 1, -4]);
    let tampered = dir.path().join("bad.json");
    std::fs::write(&tampered, v.to_string()).unwrap();
    let (out, _, code) = run(["verify", path(&fixture("lattice_l.json")), path(&tampered), "--format", "machine"]);
    assert_eq!(code, 1);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["pass"], false);
    assert!(r["violation"].as_str().unwrap().contains("not in the lattice"));

    v["root"]["u"] = serde_json::json!([-3, -1, 0, 4]);
    std::fs::write(&tampered, v.to_string()).unwrap();
    let (out, _, code) = run(["verify", path(&fixture("lattice_l.json")), path(&tampered)]);
    assert_eq!(code, 1);
    assert!(out.contains("positive part on E1"), "{out}");
}

#[test]
fn cone_examples() {
    for f in ["affine_semigroup.json", "torsion_semigroup.json"] {
        let (out, _, code) = run(["cone", path(&fixture(f)), "--format", "machine"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!((v["count"].as_u64(), v["dimension"].as_u64()), (Some(2), Some(2)));
        assert_eq!(v["within_bound"], true);
    }
    let (out, _, _) = run(["cone", path(&fixture("standard_basis.json"))]);
    assert!(out.contains("count: 3") && out.contains("bound 2n'-2 = 4: true"), "{out}");
}

#[test]
fn generated_corpus_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [("0", 0u32, 1u64), ("2", 1, 2), ("3", 2, 3), ("3", 1, 4), ("0", 0, 5), ("5", 1, 6), ("2", 3, 7)];
    for (ch, a, seed) in cases {
        let out_dir = dir.path().join(format!("case{seed}"));
        let seed_s = seed.to_string();
        let a_s = a.to_string();
        let (_, err, code) = run([
            "generate",
            "--seed",
            &seed_s,
            "--rank",
            "3",
            "--cols",
            "6",
            "--char",
            ch,
            "--perturb-exp",
            &a_s,
            "--out-dir",
            path(&out_dir),
        ]);
        assert_eq!(code, 0, "{err}");
        let instance = out_dir.join("instance.json");
        let expected: Value =
            serde_json::from_str(&std::fs::read_to_string(out_dir.join("expected.json")).unwrap()).unwrap();
        let (first, _, code) = run(["decide", path(&instance), "--char", ch, "--format", "machine"]);
        assert_eq!(code, 0);
        let (second, _, _) = run(["decide", path(&instance), "--char", ch, "--format", "machine"]);
        assert_eq!(first, second, "machine output is deterministic");
        let record: Value = serde_json::from_str(&first).unwrap();
        let key = if ch == "0" { "ci" } else { "stci" };
        assert_eq!(record["outcome"], expected[key]);
        assert_eq!(record["outcome"], "yes");
        let cert = out_dir.join("cert.json");
        std::fs::write(&cert, &first).unwrap();
        let (out, _, code) = run(["verify", path(&instance), path(&cert)]);
        assert_eq!(code, 0, "{out}");
    }
}

#[test]
fn big_integers_pass_through() {
    let dir = tempfile::tempdir().unwrap();
    let big = "1000000000000000000000000000000";
    let instance = dir.path().join("big.json");
    std::fs::write(
        &instance,
        format!(r#"{{"kind": "lattice", "ambient_dim": 3, "generators": [[{big}, 1, -{big}1]]}}"#),
    )
    .unwrap();
    let (out, _, code) = run(["decide", path(&instance), "--format", "machine"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "yes");
    assert!(out.contains(&format!("-{big}1")), "{out}");
}
