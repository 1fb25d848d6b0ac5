use std::fs;
use std::process::{Command, Output};

fn gaussrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussrel"))
        .args(args)
        .env_remove("GAUSSREL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes()).records().map(|r| r.unwrap()).collect()
}

const HD_EXAMPLE: &str = "[eta=0/1; a=(2); exp=1] * [eta=0/1; a=(1); exp=-1] * [eta=1/2; a=(1); exp=-1]";

#[test]
fn verify_default_fields_pass() {
    let o = gaussrel(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    for q in ["q=5 ", "q=7 ", "q=9 ", "q=13 ", "q=25 ", "q=27 "] {
        assert!(text.contains(q), "missing {q}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_empty_list_is_usage_error() {
    assert_eq!(gaussrel(&["verify", "--fields", ""]).status.code(), Some(2));
    assert_eq!(gaussrel(&["verify", "--fields", "6"]).status.code(), Some(2));
}

#[test]
fn verify_characteristic_two() {
    let o = gaussrel(&["verify", "--fields", "4,8", "--lift", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("conjugation"));
}

#[test]
fn verify_reports_tolerance_failure() {
    let o = gaussrel(&["verify", "--fields", "5", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn weyl_decay_series_with_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("weyl.csv");
    let o = gaussrel(&[
        "weyl", "--q", "3", "--entry", "a=(1)", "--entry", "a=(2)", "--c", "1,-1", "--levels", "1..5",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("m,q,c,re,im,abs,s_size,a,rhs"));
    let rows = csv_rows(&text);
    // S_1 is empty over F_3
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[0][0], "2");
    let abs: Vec<f64> = rows.iter().map(|r| r[5].parse().unwrap()).collect();
    assert!(abs[3] < abs[0]);
    assert!(rows.iter().all(|r| !r[8].is_empty()));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(format!("{}.manifest.json", out.display())).unwrap()).unwrap();
    assert_eq!(manifest["command"], "weyl");
    assert_eq!(manifest["seed"], 0);
    assert_eq!(manifest["config"]["q"], 3);
}

#[test]
fn weyl_trivial_frequency_and_duplicates() {
    let o = gaussrel(&["weyl", "--q", "5", "--entry", "a=(1)", "--entry", "a=(2)", "--c", "0,0", "--levels", "1,2"]);
    let rows = csv_rows(&stdout(&o));
    assert!(rows.iter().all(|r| &r[3] == "1.00000000000000000e0" && r[4].parse::<f64>().unwrap() == 0.0));
    let o = gaussrel(&[
        "weyl", "--q", "7", "--entry", "eta=1/3; a=(2)", "--entry", "eta=1/3; a=(2)", "--c", "1,-1", "--levels", "1",
    ]);
    let rows = csv_rows(&stdout(&o));
    assert!((rows[0][3].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn weyl_output_is_reproducible_across_thread_counts() {
    let args = ["weyl", "--q", "5", "--entry", "a=(1,1)", "--entry", "a=(1,2)", "--cmax", "1", "--levels", "1..2"];
    let one = gaussrel(&[&["--threads", "1"][..], &args].concat());
    let four = gaussrel(&[&["--threads", "4"][..], &args].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn weyl_rejects_bad_input() {
    assert_eq!(gaussrel(&["weyl", "--q", "3", "--entry", "a=(0)", "--c", "1"]).status.code(), Some(2));
    assert_eq!(gaussrel(&["weyl", "--q", "5", "--entry", "eta=1/3; a=(1)", "--c", "1"]).status.code(), Some(2));
    assert_eq!(gaussrel(&["weyl", "--q", "5", "--entry", "a=(1)"]).status.code(), Some(2));
}

#[test]
fn sweep_rejects_uncapped_exponent() {
    let o = gaussrel(&["sweep-q", "--entry", "a=(q-1)", "--c", "1", "--cap", "50", "--primes", "5..97"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
}

#[test]
fn sweep_single_prime_matches_weyl() {
    let s = gaussrel(&["sweep-q", "--entry", "a=(1)", "--entry", "a=(2)", "--c", "1,-1", "--cap", "2", "--primes", "11"]);
    let w = gaussrel(&["weyl", "--q", "11", "--entry", "a=(1)", "--entry", "a=(2)", "--c", "1,-1", "--levels", "1"]);
    let s = csv_rows(&stdout(&s));
    let w = csv_rows(&stdout(&w));
    assert_eq!(s.len(), 1);
    assert_eq!(&s[0][1], &w[0][5]);
}

#[test]
fn decompose_examples() {
    let o = gaussrel(&["decompose", "--q", "5", HD_EXAMPLE, "--crosscheck"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["verdict"], "in_h");
    assert_eq!(v["result"]["moves"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["moves"][0]["kind"], "R");
    assert_eq!(v["verified"], true);
    for lvl in v["crosscheck"]["levels"].as_array().unwrap() {
        assert!(lvl["max_deviation"].as_f64().unwrap() < 1e-8);
    }

    let o = gaussrel(&["decompose", "--q", "5", "[eta=0/1; a=(1); exp=1]"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["verdict"], "not_in_h");
    assert_eq!(v["result"]["reason"], "independent");

    let o = gaussrel(&["decompose", "--q", "7", "--r", "2", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["moves"].as_array().unwrap().len(), 0);
}

#[test]
fn decompose_parse_error_reports_position() {
    let o = gaussrel(&["decompose", "--q", "5", "[eta=0/1; a=(1)] * [eta=x; a=(1)]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 24"));
}

#[test]
fn decompose_sampled_crosscheck_uses_seed() {
    let args = ["decompose", "--q", "7", "[eta=1/3; a=(1,2)] * [eta=2/3; a=(-1,-2)]", "--crosscheck", "--sample", "50"];
    let a = gaussrel(&[&args[..], &["--seed", "3"]].concat());
    let b = gaussrel(&[&args[..], &["--seed", "3"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["crosscheck"]["seed"], 3);
}

#[test]
fn jacobi_presets() {
    let o = gaussrel(&["jacobi", "--preset", "jacobi_all_free", "--n", "2", "--q", "3", "--levels", "2..3", "--cmax", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert!(rows.iter().all(|r| r[8].parse::<f64>().unwrap() < 1e-8));
    let p = gaussrel(&["jacobi", "--preset", "jacobi_powers", "--ds", "1,1", "--q", "3", "--levels", "2..3", "--cmax", "1"]);
    let prows = csv_rows(&stdout(&p));
    assert_eq!(p.status.code(), Some(0));
    assert!(prows.iter().all(|r| &r[2] == "jacobi_powers" && r[8].parse::<f64>().unwrap() < 1e-8));
    let o = gaussrel(&[
        "jacobi", "--preset", "jacobi_fixed_tail", "--d", "1", "--tail", "1/2", "--q", "5", "--levels", "1..2", "--cmax", "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(gaussrel(&["jacobi", "--preset", "jacobi_cubes", "--q", "5"]).status.code(), Some(2));
}

#[test]
fn gauss_single_and_batch() {
    let o = gaussrel(&["gauss", "--q", "5", "--index", "2"]);
    let rows = csv_rows(&stdout(&o));
    assert!((rows[0][1].parse::<f64>().unwrap() + 5f64.sqrt()).abs() < 1e-12);
    let o = gaussrel(&["gauss", "--q", "9", "--m", "2"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 80);
    assert_eq!(&rows[0][1], "1.00000000000000000e0");
    for r in &rows[1..] {
        assert!((r[3].parse::<f64>().unwrap() - 9.0).abs() < 1e-9);
    }
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    fs::write(&conf, "# decay run\nq = 3\nentry = a=(1)\nentry = a=(2)\nc = 1,-1\nlevels = 2..3\n").unwrap();
    let a = gaussrel(&["weyl", "--config", conf.to_str().unwrap()]);
    let b = gaussrel(&["weyl", "--q", "3", "--entry", "a=(1)", "--entry", "a=(2)", "--c", "1,-1", "--levels", "2..3"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let c = gaussrel(&["weyl", "--config", conf.to_str().unwrap(), "--levels", "2"]);
    assert_eq!(csv_rows(&stdout(&c)).len(), 1);
}

#[test]
fn cache_directory_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gaussrel"))
            .args(["gauss", "--q", "7", "--m", "2"])
            .env("GAUSSREL_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(dir.path().join("gauss_p7_f1_m2.bin").exists());
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, gaussrel(&["gauss", "--q", "7", "--m", "2"]).stdout);
}
