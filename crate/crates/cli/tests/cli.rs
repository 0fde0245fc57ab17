//! End-to-end tests of the afl binary: exit codes, report content, and
//! OBJ output.

use std::path::Path;
use std::process::{Command, Output};

fn afl(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_afl"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn malformed_job_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("bad.json");
    std::fs::write(&job, "{not json").unwrap();
    let out = afl(&["analyze", job.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    // only the job file itself is present
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
}

#[test]
fn unknown_gallery_name_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = afl(&["gallery", "mystery"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gallery_rotational_reports_sharp_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = afl(&["gallery", "rotational", "--json-only"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    let ram = &r["ramification"];
    assert_eq!(ram["delta"]["num"], 2);
    assert_eq!(ram["delta"]["den"], 1);
    assert_eq!(ram["bound"]["num"], 2);
    assert_eq!(ram["exceptional_count"], 2);
    assert_eq!(ram["sharp"], true);
    assert_eq!(r["period"]["verdict"], "well_defined");
    // --json-only writes nothing
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn gallery_zn3_reports_five_thirds() {
    let dir = tempfile::tempdir().unwrap();
    let out = afl(&["gallery", "zn:3", "--json-only"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["ramification"]["delta"]["num"], 5);
    assert_eq!(r["ramification"]["delta"]["den"], 3);
    assert_eq!(r["ramification"]["bound"]["num"], 5);
    assert_eq!(r["ramification"]["sharp"], true);
}

#[test]
fn gallery_voss_is_reported_but_not_meshed() {
    let dir = tempfile::tempdir().unwrap();
    let out = afl(&["gallery", "voss"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["period"]["verdict"], "universal_cover_only");
    let omitted = r["ramification"]["values"].as_array().unwrap();
    assert_eq!(omitted.len(), 3);
    assert!(!dir.path().join("voss.obj").exists());
    assert!(dir.path().join("voss.report.json").exists());
}

#[test]
fn mesh_job_writes_obj_matching_report() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("para.json");
    std::fs::write(
        &job,
        r#"{
            "kind": "affine",
            "weierstrass": {
                "mode": "explicit",
                "F": {"num": [[0.0, 0.0], [0.5, 0.0]]},
                "G": {"num": [[0.0, 0.0], [1.0, 0.0]]},
                "punctures": ["inf"]
            },
            "domain": {"type": "disk", "radius": 2.0},
            "resolution": 8
        }"#,
    )
    .unwrap();
    let out = afl(&["mesh", job.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = stdout_json(&out);
    let obj = std::fs::read_to_string(dir.path().join("para.obj")).unwrap();
    let v_count = obj.lines().filter(|l| l.starts_with("v ")).count();
    let f_count = obj.lines().filter(|l| l.starts_with("f ")).count();
    assert_eq!(v_count as u64, r["mesh"]["vertices"].as_u64().unwrap());
    assert_eq!(f_count as u64, r["mesh"]["faces"].as_u64().unwrap());
    // faces are 1-indexed into the vertex list
    for line in obj.lines().filter(|l| l.starts_with("f ")) {
        for idx in line.split_whitespace().skip(1) {
            let i: usize = idx.parse().unwrap();
            assert!(i >= 1 && i <= v_count);
        }
    }
    assert_eq!(r["classification"], "elliptic_paraboloid");
}

#[test]
fn h3_analyze_job_classifies_horosphere() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("horo.json");
    std::fs::write(
        &job,
        r#"{
            "kind": "h3",
            "forms": {
                "w_hat": {"num": [[1.0, 0.0]]},
                "t_hat": {"num": [[0.0, 0.0]]},
                "punctures": []
            }
        }"#,
    )
    .unwrap();
    let out = afl(&["analyze", job.to_str().unwrap(), "--json-only"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = stdout_json(&out);
    assert_eq!(r["flat_class"], "horosphere");
    assert_eq!(r["monodromy"].as_array().unwrap().len(), 0);
}

#[test]
fn obj_output_is_deterministic() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let a = afl(&["gallery", "cylinder", "--grid", "12"], d1.path());
    let b = afl(&["gallery", "cylinder", "--grid", "12"], d2.path());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(b.status.code(), Some(0));
    let o1 = std::fs::read(d1.path().join("cylinder.obj")).unwrap();
    let o2 = std::fs::read(d2.path().join("cylinder.obj")).unwrap();
    assert_eq!(o1, o2);
    // reports agree apart from wall-clock timing
    let mut r1: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d1.path().join("cylinder.report.json")).unwrap())
            .unwrap();
    let mut r2: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d2.path().join("cylinder.report.json")).unwrap())
            .unwrap();
    r1["timing_ms"] = 0.into();
    r2["timing_ms"] = 0.into();
    assert_eq!(r1, r2);
}

#[test]
fn verify_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = afl(&["verify"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);
}
