use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn isokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isokit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(cmd: &str, input: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![cmd, "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    isokit(&args)
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

#[test]
fn helix_frames_have_unit_curvature_and_torsion() {
    let dir = TempDir::new().unwrap();
    let o = run_on("frames", &spec("helix.json"), dir.path(), &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut rdr = csv::Reader::from_path(dir.path().join("frames.csv")).unwrap();
    let headers = rdr.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (k, t) = (col("kappa"), col("tau"));
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let kappa: f64 = rec[k].parse().unwrap();
        let tau: f64 = rec[t].parse().unwrap();
        assert!((kappa - 1.0).abs() <= 1e-6, "kappa {kappa}");
        assert!((tau - 1.0).abs() <= 1e-6, "tau {tau}");
        rows += 1;
    }
    assert_eq!(rows, 1000);
    assert!(dir.path().join("frames.json").exists());
}

#[test]
fn bundled_specs_classify_as_expected() {
    let cases = [
        ("helix.json", "SphericalCylindrical"),
        ("cylinder.json", "SphericalCylindrical"),
        ("parabolic_sphere.json", "SphericalParabolic"),
        ("planar_circle.json", "PlaneCurve"),
        ("generic.json", "Generic"),
        ("hyperbolic_helix.json", "SphericalCylindrical"),
        ("pseudo_cylinder.json", "SphericalCylindrical"),
        ("spherical_spiral.json", "Spherical"),
    ];
    for (name, expected) in cases {
        let dir = TempDir::new().unwrap();
        let o = run_on("classify", &spec(name), dir.path(), &["--json"]);
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stdout));
        assert_eq!(stdout_json(&o)["verdict"], expected, "{name}");
        let report = read_json(&dir.path().join("report.json"));
        assert_eq!(report["development"]["verdict"], expected, "{name}");
        if let Some(c) = report["cross_check"].as_object() {
            let spherical = expected.starts_with("Spherical");
            assert_eq!(c["accepts"].as_bool(), Some(spherical), "{name} cross-check");
        }
        let csv = std::fs::read_to_string(dir.path().join("development.csv")).unwrap();
        assert!(csv.starts_with("s,kappa1,kappa2"), "{name}");
    }
}

#[test]
fn cylinder_radius_reported() {
    let dir = TempDir::new().unwrap();
    let o = run_on("classify", &spec("pseudo_cylinder.json"), dir.path(), &[]);
    assert!(o.status.success());
    let report = read_json(&dir.path().join("report.json"));
    let r = report["development"]["cylinder_radius"].as_f64().unwrap();
    assert!((r - 1.0).abs() <= 1e-4, "radius {r}");
}

#[test]
fn verdict_independent_of_tau0() {
    for tau0 in ["-2.5", "0", "0.7", "3"] {
        for (name, expected) in [
            ("parabolic_sphere.json", "SphericalParabolic"),
            ("planar_circle.json", "PlaneCurve"),
            ("generic.json", "Generic"),
        ] {
            let dir = TempDir::new().unwrap();
            let o = run_on("classify", &spec(name), dir.path(), &["--tau0", tau0, "--json"]);
            assert!(o.status.success(), "{name} tau0 {tau0}");
            assert_eq!(stdout_json(&o)["verdict"], expected, "{name} tau0 {tau0}");
        }
    }
}

#[test]
fn lightlike_curve_exits_with_admissibility_code() {
    let dir = TempDir::new().unwrap();
    let o = run_on("frames", &spec("lightlike.json"), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("light cone"), "{stderr}");
    let report = read_json(&dir.path().join("frames.json"));
    assert_eq!(report["admissibility"]["admissible"], false);
    assert_eq!(report["error"]["code"], "non_admissible");

    let o = run_on("classify", &spec("lightlike.json"), dir.path(), &["--json"]);
    assert_eq!(o.status.code(), Some(2));
    let j = stdout_json(&o);
    assert_eq!(j["error"]["code"], "non_admissible");
    assert!(j["error"]["message"].as_str().unwrap().contains("light cone"));
}

#[test]
fn missing_input_is_an_error() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("absent.json");
    let o = run_on("classify", &missing, dir.path(), &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("absent.json"));
}

#[test]
fn json_errors_have_code_message_and_context() {
    let dir = TempDir::new().unwrap();
    let o = run_on("frames", &spec("helix.json"), dir.path(), &["--space", "pseudo", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let j = stdout_json(&o);
    let err = j["error"].as_object().expect("error object");
    assert_eq!(err["code"], "space_mismatch");
    assert!(err["message"].as_str().unwrap().contains("pseudo_isotropic"));
    assert!(err["context"]["input"].as_str().unwrap().ends_with("helix.json"));
}

#[test]
fn invalid_flags_are_rejected() {
    let dir = TempDir::new().unwrap();
    for extra in [["--samples", "8"], ["--tol", "-1"], ["--fd-order", "3"], ["--fd-step", "0"]] {
        let o = run_on("classify", &spec("helix.json"), dir.path(), &extra);
        assert_eq!(o.status.code(), Some(1), "{extra:?}");
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(isokit(&["classify"]).status.code(), Some(1));
    assert_eq!(isokit(&["frames", "--input", "x.json", "--bogus"]).status.code(), Some(1));
    assert_eq!(isokit(&["selftest", "--criterion", "9"]).status.code(), Some(1));
    assert_eq!(isokit(&["--help"]).status.code(), Some(0));
}

#[test]
fn csv_input_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("helix.csv");
    let mut text = String::from("t,x,y,z\n");
    for i in 0..400 {
        let t = i as f64 * std::f64::consts::TAU / 399.0;
        text.push_str(&format!("{t},{},{},{t}\n", t.cos(), t.sin()));
    }
    std::fs::write(&path, text).unwrap();
    let o = run_on("classify", &path, dir.path(), &["--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(stdout_json(&o)["verdict"], "SphericalCylindrical");
}

#[test]
fn multiple_inputs_get_their_own_directories() {
    let dir = TempDir::new().unwrap();
    let helix = spec("helix.json");
    let circle = spec("planar_circle.json");
    let o = isokit(&[
        "classify",
        "--input",
        helix.to_str().unwrap(),
        circle.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--json",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o).as_array().unwrap().len(), 2);
    assert!(dir.path().join("helix/report.json").exists());
    assert!(dir.path().join("planar_circle/report.json").exists());
}

#[test]
fn outputs_are_deterministic() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for cmd in ["frames", "classify", "sphere"] {
        run_on(cmd, &spec("parabolic_sphere.json"), a.path(), &[]);
        run_on(cmd, &spec("parabolic_sphere.json"), b.path(), &[]);
    }
    for file in ["frames.csv", "frames.json", "report.json", "development.csv", "spheres.csv", "spheres.json"] {
        let x = std::fs::read(a.path().join(file)).unwrap();
        let y = std::fs::read(b.path().join(file)).unwrap();
        assert!(x == y, "{file} differs between runs");
    }
}

#[test]
fn thread_count_does_not_change_outputs() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let run = |dir: &Path, threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_isokit"))
            .args(["frames", "--input", spec("helix.json").to_str().unwrap()])
            .args(["--out", dir.to_str().unwrap()])
            .env("ISOKIT_THREADS", threads)
            .output()
            .unwrap()
    };
    assert!(run(a.path(), "1").status.success());
    assert!(run(b.path(), "4").status.success());
    assert_eq!(
        std::fs::read(a.path().join("frames.csv")).unwrap(),
        std::fs::read(b.path().join("frames.csv")).unwrap()
    );
    assert_eq!(run(a.path(), "zero").status.code(), Some(1));
}

#[test]
fn osculating_spheres_of_helix_are_one_cylinder() {
    let dir = TempDir::new().unwrap();
    let o = run_on("sphere", &spec("helix.json"), dir.path(), &[]);
    assert!(o.status.success());
    let rows = read_json(&dir.path().join("spheres.json"));
    for row in rows.as_array().unwrap() {
        let form = &row["normal_form"]["normal"];
        assert_eq!(form["form"], "cylindrical");
        assert!((form["r"].as_f64().unwrap() - 1.0).abs() < 1e-5, "{form}");
    }
}

#[test]
fn sphere_spec_reduces_to_normal_form() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("cyl.json");
    // x² + y² − 2x − 4y + 1 = 0 is the cylinder of radius 2 about (1, 2).
    std::fs::write(&path, r#"{"space":"isotropic","form":"general","c1":-1,"c2":-2,"c3":0,"c4":1}"#).unwrap();
    let o = run_on("sphere", &path, dir.path(), &["--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let normal = &stdout_json(&o)["reduction"]["normal"];
    assert_eq!(normal["form"], "cylindrical");
    assert!((normal["r"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!(dir.path().join("sphere.json").exists());
}

#[test]
fn selftest_quick_passes() {
    let o = isokit(&["selftest", "--quick"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(o.status.success(), "{text}");
    for id in 1..=8 {
        assert!(text.contains(&format!("criterion {id} (")), "{text}");
    }
    assert!(text.contains("all criteria pass"));
}

#[test]
fn selftest_single_criterion_json() {
    let o = isokit(&["selftest", "--quick", "--criterion", "1", "--seed", "7", "--json"]);
    assert!(o.status.success());
    let j = stdout_json(&o);
    assert_eq!(j["seed"], 7);
    assert_eq!(j["criteria"].as_array().unwrap().len(), 1);
    assert_eq!(j["criteria"][0]["passed"], true);
}
