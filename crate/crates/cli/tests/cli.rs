use std::io::Write;
use std::process::{Command, Output};

use segre_core::flag::flag_tower;
use segre_towers::{run_verify, ResultTable, TowerSpecFile, VerifyConfig, DEGREE_CAP_ENV};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segre-towers"))
        .args(args)
        .env_remove(DEGREE_CAP_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn spec_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn flag_file(k: usize) -> tempfile::NamedTempFile {
    spec_file(
        &TowerSpecFile::from_spec(&flag_tower(k).unwrap())
            .unwrap()
            .to_json(),
    )
}

#[test]
fn flag_integral_values() {
    for (exps, expected) in [("2,1", "1\n"), ("1,2", "-1\n"), ("1,1", "0\n")] {
        let o = bin(&["flag-integral", "--k", "2", "--exps", exps]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), expected, "exps {exps}");
    }
}

#[test]
fn flag_integral_verbose_and_json() {
    let o = bin(&["flag-integral", "--k", "3", "--exps", "3,2,1", "-v"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "closed: 1\nvandermonde: 1\nlocalization: 1 (seed 7, 3 trials)\n"
    );

    let o = bin(&[
        "flag-integral",
        "--k",
        "2",
        "--exps",
        "2,1",
        "--format",
        "json",
        "-v",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "1");
    assert_eq!(v["localization"], "1");
    assert_eq!(v["seed"], 7);
}

#[test]
fn flag_integral_arity_is_a_usage_error() {
    let o = bin(&["flag-integral", "--k", "2", "--exps", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected k = 2"));
}

#[test]
fn tower_segre_flag_k2_both_methods() {
    let f = flag_file(2);
    let path = f.path().to_str().unwrap();
    let closed = bin(&["tower-segre", path, "--window", "2"]);
    assert!(closed.status.success());
    assert_eq!(stdout(&closed), "u1\tu2\tvalue\n-3\t-2\t1\n-2\t-3\t-1\n");
    let step = bin(&["tower-segre", path, "--window", "2", "--method", "stepwise"]);
    assert_eq!(stdout(&step), stdout(&closed));

    let json = bin(&["tower-segre", path, "--window", "2,2", "--format", "json"]);
    let table = ResultTable::from_json(&stdout(&json)).unwrap();
    assert_eq!(table, ResultTable::parse(&stdout(&closed)).unwrap());
}

#[test]
fn tower_segre_with_aux_and_base() {
    // q = 1/(u^2 + g u): pi_* of c^a is (-g)^(a-1).
    let f = spec_file(
        r#"{"k": 1, "base_generators": [{"name": "g", "degree": 1}],
            "levels": [{"factors": [{"m": [], "q_num": [[0, 1, 1]], "q_den": [[2, 1, 1], [1, 1, 1, {"g": 1}]]}],
                        "aux": ["v"]}]}"#,
    );
    let o = bin(&[
        "tower-segre",
        f.path().to_str().unwrap(),
        "--window",
        "2",
        "--aux-window",
        "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        stdout(&o),
        "u1\tv\tvalue\n-3\t-2\tg^2\n-3\t-1\t-g\n-2\t-2\t-g\n-2\t-1\t1\n-1\t-2\t1\n"
    );
}

#[test]
fn malformed_twist_names_the_level() {
    let f = spec_file(
        r#"{"k": 2, "levels": [
            {"factors": [{"m": [], "q_num": [[-3, 1, 1]]}]},
            {"factors": [{"m": [], "q_num": [[-3, 1, 1]]}]}]}"#,
    );
    let o = bin(&["tower-segre", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("level 2, factors[0].m"), "{err}");
}

#[test]
fn missing_file_fails() {
    let o = bin(&["tower-segre", "/nonexistent/tower.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn degree_cap_override() {
    let f = flag_file(2);
    let path = f.path().to_str().unwrap();
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_segre-towers"))
            .args(["tower-segre", path, "--window", "2"])
            .env(DEGREE_CAP_ENV, cap)
            .output()
            .unwrap()
    };
    let high = run("40");
    assert!(high.status.success());
    assert_eq!(
        stdout(&high),
        stdout(&bin(&["tower-segre", path, "--window", "2"]))
    );
    let low = run("1");
    assert_eq!(low.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&low.stderr).contains("below the derived bound"));
    assert_eq!(run("x").status.code(), Some(2));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = bin(&["verify", "--max-k", "3", "--seed", "7", "--trials", "3"]);
    assert!(a.status.success());
    let text = stdout(&a);
    assert!(text.starts_with("verify: max_k=3 seed=7 trials=3 corpus=50\n"));
    assert!(text.ends_with(" passed, 0 failed\n"));
    let b = bin(&["verify", "--max-k", "3", "--seed", "7", "--trials", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_max_k_zero_is_vacuous() {
    let o = bin(&["verify", "--max-k", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("tower k=0: closed=1 stepwise=1 ok"));
}

#[test]
fn verify_ceiling_is_enforced() {
    assert_eq!(bin(&["verify", "--max-k", "5"]).status.code(), Some(2));
}

#[test]
fn perturbed_vandermonde_is_reported() {
    let config = VerifyConfig {
        max_k: 2,
        perturb_vandermonde: true,
        ..Default::default()
    };
    let mut out = vec![];
    let summary = run_verify(&config, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(summary.failed, 1, "{text}");
    assert!(!summary.ok());
    assert!(
        text.contains("flag k=1 a=(1): closed=1 vandermonde=2 localization=1 (seed 7000) MISMATCH"),
        "{text}"
    );
}

#[test]
fn tower_segre_output_is_deterministic() {
    let f = flag_file(3);
    let path = f.path().to_str().unwrap();
    let a = bin(&["tower-segre", path, "--window", "3", "--format", "json"]);
    let b = bin(&["tower-segre", path, "--window", "3", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
