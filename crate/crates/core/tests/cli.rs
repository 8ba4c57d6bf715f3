use std::fs;
use std::process::{Command, Output};

fn boxehvi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxehvi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn figure_front(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("front.csv");
    fs::write(&path, "y1,y2\n3,1\n2,1.5\n1,2.5\n").unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn worked_example_values() {
    let dir = tempfile::tempdir().unwrap();
    let f = figure_front(&dir);
    assert_eq!(stdout(&boxehvi(&["hv", "--front", &f, "--ref", "0,0"])).trim(), "5.0");
    let v: f64 = stdout(&boxehvi(&["hvi", "--front", &f, "--ref", "0,0", "--point", "2.8,2.3"])).trim().parse().unwrap();
    assert!((v - 1.84).abs() < 1e-12);
}

#[test]
fn decompose_lists_slices_with_literal_infinity() {
    let dir = tempfile::tempdir().unwrap();
    let f = figure_front(&dir);
    let out = stdout(&boxehvi(&["decompose", "--front", &f, "--ref", "0,0"]));
    let want = "l_1,l_2,u_1,u_2\n0.0,2.5,1.0,inf\n1.0,1.5,2.0,inf\n2.0,1.0,3.0,inf\n3.0,0.0,inf,inf\n";
    assert_eq!(out, want);
}

#[test]
fn mc_validate_agrees_on_worked_instance() {
    let dir = tempfile::tempdir().unwrap();
    let f = figure_front(&dir);
    let o = boxehvi(&["mc-validate", "--front", &f, "--ref", "0,0", "--mu", "2.5,2", "--sigma", "0.7,0.8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["z"].as_f64().unwrap().abs() <= 4.0);
}

#[test]
fn mc_validate_exits_nonzero_on_disagreement() {
    let dir = tempfile::tempdir().unwrap();
    let f = figure_front(&dir);
    let o = boxehvi(&[
        "mc-validate", "--front", &f, "--ref", "0,0", "--mu", "2.5,2", "--sigma", "0.7,0.8",
        "--samples", "100000", "--threshold", "0",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn near_degenerate_prediction_gives_improvement() {
    let dir = tempfile::tempdir().unwrap();
    let f = figure_front(&dir);
    let o = boxehvi(&["ehvi", "--front", &f, "--ref", "0,0", "--mu", "2.8,2.3", "--sigma", "1e-6,1e-6"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 1.84).abs() <= 1e-4);
}

#[test]
fn prediction_from_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = figure_front(&dir);
    let pred = dir.path().join("pred.json");
    fs::write(&pred, r#"{"mu": [2.5, 2], "sigma": [0.7, 0.8], "ref": [0, 0]}"#).unwrap();
    let a = stdout(&boxehvi(&["ehvi", "--front", &f, "--pred", pred.to_str().unwrap()]));
    let b = stdout(&boxehvi(&["ehvi", "--front", &f, "--ref", "0,0", "--mu", "2.5,2", "--sigma", "0.7,0.8"]));
    assert_eq!(a, b);
}

#[test]
fn garbage_front_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "hello\nworld,1\n").unwrap();
    let o = boxehvi(&["hv", "--front", path.to_str().unwrap(), "--ref", "0,0"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = boxehvi(&["mc-validate", "--front", path.to_str().unwrap(), "--ref", "0,0", "--mu", "1,1", "--sigma", "1,1"]);
    assert!(!o.status.success());
}

#[test]
fn generated_front_round_trips_through_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("front.json");
    let p = path.to_str().unwrap();
    stdout(&boxehvi(&["gen-front", "--d", "3", "--n", "12", "--seed", "2", "--format", "json", "--out", p]));
    let hv: f64 = stdout(&boxehvi(&["hv", "--front", p, "--ref", "0,0,0"])).trim().parse().unwrap();
    assert!(hv > 0.0);
}

#[test]
fn bench_speed_small_two_d_is_fast() {
    let out = stdout(&boxehvi(&["bench-speed", "--d", "2", "--n", "200", "--reps", "3"]));
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "2");
    assert_eq!(row[5], "3");
    let secs: f64 = row[4].parse().unwrap();
    assert!(secs < 1.0);
}

#[test]
fn mobgo_run_writes_run_directory() {
    let dir = tempfile::tempdir().unwrap();
    let run = dir.path().join("run");
    stdout(&boxehvi(&[
        "mobgo-run", "--problem", "dtlz2", "--m", "4", "--d", "2", "--eta", "6", "--tc", "9",
        "--ref", "2.5,2.5", "--inner-budget", "200", "--kriging-budget", "50", "--out", run.to_str().unwrap(),
    ]));
    let history = fs::read_to_string(run.join("history.csv")).unwrap();
    assert_eq!(history.lines().count(), 10);
    let archive = fs::read_to_string(run.join("archive.csv")).unwrap();
    assert!(archive.starts_with("x_1,x_2,x_3,x_4,f_1,f_2\n"));
    let cfg: serde_json::Value = serde_json::from_str(&fs::read_to_string(run.join("config.json")).unwrap()).unwrap();
    assert_eq!(cfg["tc"], 9);
}

#[test]
fn help_documents_shared_flags() {
    for sub in ["decompose", "hv", "hvi", "ehvi", "poi", "mc-validate", "gen-front", "bench-speed", "mobgo-run"] {
        let h = stdout(&boxehvi(&[sub, "--help"]));
        for flag in ["--seed", "--format", "--out"] {
            assert!(h.contains(flag), "{sub} help lacks {flag}");
        }
    }
}
