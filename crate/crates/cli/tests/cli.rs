use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn pbw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbw"))
        .args(args)
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn checks(r: &Value) -> Vec<&Value> {
    r["instances"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|i| i["checks"].as_array().unwrap())
        .collect()
}

#[test]
fn identity_instance_passes_every_suite() {
    let out = pbw(&[fixture("identity-arrow.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["summary"]["failed"], 0);
    let suites: std::collections::BTreeSet<_> = checks(&r)
        .iter()
        .map(|c| c["suite"].as_str().unwrap())
        .collect();
    assert_eq!(suites.len(), 5, "{suites:?}");
}

#[test]
fn unknown_top_level_key_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("identity-arrow.json")).unwrap();
    let bad = text.replacen('{', "{\n  \"extras\": {},", 1);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, bad).unwrap();
    let out = pbw(&[path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("extras"));
}

#[test]
fn parse_errors_report_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"categories\": [\n").unwrap();
    let out = pbw(&[path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn laws_suite_names_the_broken_law() {
    let out = pbw(&[
        "--suite",
        "laws",
        fixture("broken-unit.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let failed: Vec<_> = checks(&r)
        .into_iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(failed.iter().any(|c| c["name"] == "monad/S"));
    let text = serde_json::to_string(&failed).unwrap();
    assert!(
        text.contains("left_unit") && text.contains("right_unit"),
        "{text}"
    );
}

#[test]
fn other_suites_refuse_invalid_input() {
    let out = pbw(&[
        "--suite",
        "pbw",
        fixture("broken-unit.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_reflexive_coequalizer_stops_the_envelope() {
    let out = pbw(&[
        "--suite",
        "envelope",
        fixture("missing-coequalizer.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reflexive coequalizers"));
    // the laws suite alone does not need the envelope
    let out = pbw(&[
        "--suite",
        "laws",
        fixture("missing-coequalizer.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn pb3w_agrees_on_the_corpus() {
    let out = pbw(&["--suite", "pb3w", corpus_dir().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let cs = checks(&r);
    assert_eq!(cs.len(), r["instances"].as_array().unwrap().len());
    assert!(cs.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn strict_pbw_implies_pbw_up_to_iso() {
    for mode in ["strict", "up_to_iso"] {
        let out = pbw(&[
            "--suite",
            "pbw",
            "--mode",
            mode,
            corpus_dir().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let r = report(&out);
        assert_eq!(r["mode"], mode);
        for c in checks(&r) {
            let d = &c["detail"];
            if d["strict"] == "pbw" {
                assert_eq!(d["up_to_iso"], "pbw");
            }
            let declared = if mode == "strict" {
                &d["strict"]
            } else {
                &d["up_to_iso"]
            };
            assert_eq!(&d["verdict"], declared);
        }
    }
}

#[test]
fn directories_run_in_sorted_order() {
    let out = pbw(&["--suite", "laws", corpus_dir().to_str().unwrap()]);
    let r = report(&out);
    let names: Vec<_> = r["instances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["source"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(
        names.len(),
        std::fs::read_dir(corpus_dir()).unwrap().count()
    );
}

#[test]
fn out_flag_writes_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let input = fixture("identity-arrow.json");
    let to_stdout = pbw(&[input.to_str().unwrap()]);
    let to_file = pbw(&["--out", path.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
}

#[test]
fn witnesses_only_when_asked() {
    let input = fixture("identity-arrow.json");
    let plain = report(&pbw(&["--suite", "envelope", input.to_str().unwrap()]));
    assert!(checks(&plain).iter().all(|c| c.get("witness").is_none()));
    let dumped = report(&pbw(&[
        "--suite",
        "envelope",
        "--dump-witnesses",
        input.to_str().unwrap(),
    ]));
    let section = checks(&dumped)
        .into_iter()
        .find(|c| c["name"].as_str().unwrap().ends_with("/section"))
        .unwrap();
    assert_eq!(section["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn finset_probe_refutes_orbit_collapse() {
    let out = pbw(&[
        "--backend",
        "finset",
        "--suite",
        "pbw",
        "--t",
        "gset:z2",
        "--s",
        "gset:trivial",
        "--morphism",
        "gset_to_trivial",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let c = checks(&r)[0];
    assert_eq!(c["detail"]["verdict"], "refuted");
    assert_eq!(c["witness"]["first"]["carrier"], 2);
}

#[test]
fn finset_identity_is_not_refuted() {
    let out = pbw(&[
        "--backend",
        "finset",
        "--t",
        "maybe",
        "--s",
        "maybe",
        "--morphism",
        "identity",
        "--max-size",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["max_size"], 4);
    let probe = checks(&r)
        .into_iter()
        .find(|c| c["name"] == "pbw_probe")
        .unwrap();
    assert_eq!(probe["detail"]["verdict"], "not_refuted_at_bound");
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &[
            "--backend",
            "finset",
            "--suite",
            "pb3w",
            "--t",
            "maybe",
            "--s",
            "maybe",
            "--morphism",
            "identity",
        ],
        &[
            "--backend",
            "finset",
            "--suite",
            "freeness",
            "--t",
            "maybe",
            "--s",
            "maybe",
            "--morphism",
            "identity",
        ],
        &["--backend", "finset", "--t", "maybe", "--s", "maybe"],
        &[
            "--backend",
            "finset",
            "--t",
            "list",
            "--s",
            "maybe",
            "--morphism",
            "identity",
        ],
        &[
            "--backend",
            "finset",
            "--t",
            "maybe",
            "--s",
            "powerset",
            "--morphism",
            "identity",
        ],
        &["--t", "maybe"],
        &[],
        &["--suite", "nonsense"],
    ];
    for args in cases {
        assert_eq!(pbw(args).status.code(), Some(2), "{args:?}");
    }
}
