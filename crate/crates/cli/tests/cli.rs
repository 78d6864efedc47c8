use std::process::{Command, Output};

use serde_json::Value;

fn qcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcoh"))
        .args(args)
        .output()
        .expect("qcoh runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn measure_bell_vertex() {
    let out = qcoh(&["measure", "--c1", "1", "--c2", "-1", "--c3", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = stdout_json(&out);
    assert!((doc["l1"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((doc["relative_entropy"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(doc["region"], "Entangled");
}

#[test]
fn measure_on_c3_axis_is_incoherent() {
    let out = qcoh(&["measure", "--c1", "0", "--c2", "0", "--c3", "0.5"]);
    let doc = stdout_json(&out);
    for key in ["l1", "trace_norm", "relative_entropy", "discord"] {
        assert_eq!(doc[key].as_f64(), Some(0.0), "{key}");
    }
    assert_eq!(doc["region"], "Separable");
}

#[test]
fn measure_rejects_unphysical_state() {
    let out = qcoh(&["measure", "--c1", "0.9", "--c2", "0.9", "--c3", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("state not positive semidefinite"), "{err}");
    assert!(err.contains("-2e-1"), "{err}");
}

#[test]
fn measure_x_state_omits_discord() {
    let out = qcoh(&[
        "measure", "--c1", "0.1", "--c2", "0.1", "--c3", "0.3", "--r", "0.2", "--s", "0.4",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = stdout_json(&out);
    assert!(doc.get("discord").is_none());
    assert!(doc.get("discord_equals_coherence").is_none());
    assert_eq!(doc["r"].as_f64(), Some(0.2));
    assert!((doc["l1"].as_f64().unwrap() - 0.1).abs() < 1e-15);
}

#[test]
fn measure_out_of_range_parameter() {
    let out = qcoh(&["measure", "--c1", "1.5", "--c2", "0", "--c3", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dynamics_header_and_rows() {
    let out = qcoh(&["dynamics", "--c1", "-0.1", "--c2", "0.4", "--c3", "0.4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,C_bf,C_pf,C_bpf,C_gad");
    assert_eq!(lines.len(), 102);
    let last: Vec<&str> = lines[101].split(',').collect();
    assert_eq!(last[0], "1");
    assert_eq!(last[2], "0");
    assert_eq!(last[4], "0");
}

#[test]
fn dynamics_single_channel_endpoint() {
    let out = qcoh(&[
        "dynamics",
        "--c1",
        "-0.5",
        "--c2",
        "0.1",
        "--c3",
        "0.1",
        "--channel",
        "bf",
        "--steps",
        "11",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,C_bf");
    assert_eq!(lines.len(), 12);
    let values: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] <= w[0] + 1e-9));
    assert!((values[10] - 0.18872).abs() < 1e-4);
}

#[test]
fn dynamics_incoherent_state_is_all_zero() {
    let out = qcoh(&[
        "dynamics", "--c1", "0", "--c2", "0", "--c3", "0.5", "--steps", "5",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        assert!(line.split(',').skip(1).all(|v| v == "0"), "{line}");
    }
}

#[test]
fn dynamics_rejects_unphysical_state() {
    let out = qcoh(&["dynamics", "--c1", "0.9", "--c2", "0.9", "--c3", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surface_writes_mesh_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("l1.obj");
    let stats = dir.path().join("l1.json");
    let out = qcoh(&[
        "surface",
        "--measure",
        "l1",
        "--level",
        "0.5",
        "--resolution",
        "32",
        "--out",
        obj.to_str().unwrap(),
        "--stats-out",
        stats.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: Value = serde_json::from_slice(&std::fs::read(&stats).unwrap()).unwrap();
    let text = std::fs::read_to_string(&obj).unwrap();
    let vertices = text.lines().filter(|l| l.starts_with("v ")).count();
    assert_eq!(doc["vertex_count"].as_u64(), Some(vertices as u64));
    let fraction = doc["entangled_area_fraction"].as_f64().unwrap();
    assert!(fraction > 0.0 && fraction < 1.0);
    assert_eq!(doc["measure"], "l1");
    assert!(doc["r"].is_null());
}

#[test]
fn surface_empty_mesh_still_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("pf.obj");
    let out = qcoh(&[
        "surface",
        "--measure",
        "rel-ent",
        "--level",
        "0.1",
        "--channel",
        "pf",
        "--p",
        "0.5",
        "--out",
        obj.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = stdout_json(&out);
    assert_eq!(doc["empty"], true);
    assert_eq!(doc["channel"], "pf");
    assert_eq!(doc["triangle_count"].as_u64(), Some(0));
}

#[test]
fn surface_warns_on_thin_level() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("thin.obj");
    let out = qcoh(&[
        "surface",
        "--measure",
        "l1",
        "--level",
        "0.01",
        "--resolution",
        "16",
        "--out",
        obj.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"));
}

#[test]
fn surface_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("bad.obj");
    let obj = obj.to_str().unwrap();
    for args in [
        vec![
            "surface",
            "--measure",
            "discord",
            "--level",
            "0.1",
            "--r",
            "0.2",
            "--out",
            obj,
        ],
        vec!["surface", "--measure", "l1", "--level", "0", "--out", obj],
        vec![
            "surface",
            "--measure",
            "l1",
            "--level",
            "0.5",
            "--resolution",
            "4",
            "--out",
            obj,
        ],
        vec![
            "surface",
            "--measure",
            "l1",
            "--level",
            "0.5",
            "--channel",
            "all",
            "--p",
            "0.1",
            "--out",
            obj,
        ],
        vec![
            "surface",
            "--measure",
            "l1",
            "--level",
            "0.5",
            "--channel",
            "bf",
            "--out",
            obj,
        ],
        vec!["surface", "--measure", "l1", "--level", "0.5"],
    ] {
        let out = qcoh(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn surface_clip_and_discord_region() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("d.obj");
    let out = qcoh(&[
        "surface",
        "--measure",
        "discord",
        "--level",
        "0.3",
        "--resolution",
        "32",
        "--clip",
        "--discord-equality",
        "--out",
        obj.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = stdout_json(&out);
    assert_eq!(doc["boundary"], "clipped");
    assert!(doc["triangle_count"].as_u64().unwrap() > 0);
}

#[test]
fn verify_passes_and_names_suites() {
    let out = qcoh(&["verify", "--samples", "500"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("bell_coherence_vs_oracle max_dev ≤ 1e-10: PASS"),
        "{text}"
    );
    assert!(text.lines().all(|l| l.contains("PASS")));
}

#[test]
fn verify_catches_injected_fault() {
    let out = qcoh(&["verify", "--samples", "200", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bell_coherence_vs_oracle"));
}
