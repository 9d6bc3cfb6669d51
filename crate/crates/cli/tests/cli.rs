use std::process::{Command, Output};

fn pfchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfchain"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_row_csv() {
    let o = pfchain(&["--format", "csv", "count", "--d", "3", "--nmax", "5"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let rows: Vec<&str> = s.lines().filter(|l| !l.starts_with('#')).collect();
    let counts: Vec<&str> = rows[1..]
        .iter()
        .map(|r| r.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(rows[0], "family,d,n,k,count");
    assert_eq!(rows[1], "pf,3,0,0,1");
    assert_eq!(counts, ["1", "3", "15", "87", "543", "3543"]);
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("pfchain-cache-{}", std::process::id()));
    let args = [
        "--format",
        "csv",
        "--cache",
        dir.to_str().unwrap(),
        "count",
        "--d",
        "4",
        "--nmax",
        "12",
    ];
    let first = stdout(&pfchain(&args));
    assert!(dir.join("counts-d4.bin").exists());
    let second = stdout(&pfchain(&args));
    assert_eq!(first, second);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn markov_json_is_exact() {
    let o = pfchain(&[
        "markov", "--chain", "pf", "--d", "3", "--n", "1", "--matrix",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["states"], 3);
    assert_eq!(v["reversible"], true);
    assert!(v["P"][0][0][1].as_str().unwrap().contains('/'));
}

#[test]
fn entropy_ratio() {
    let o = pfchain(&["entropy", "--model", "pf", "--d", "3", "--N", "8000"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["ratio"].as_f64().unwrap() - 0.9825).abs() < 1e-3);
}

#[test]
fn exit_codes() {
    assert_eq!(
        pfchain(&["--precision-bits", "16", "count"]).status.code(),
        Some(2)
    );
    assert_eq!(pfchain(&["--jobs", "0", "count"]).status.code(), Some(2));
    assert_eq!(
        pfchain(&["--max-dim", "100", "markov", "--chain", "pf", "--n", "6"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(pfchain(&["repro", "--claims", "99"]).status.code(), Some(2));
    assert_eq!(
        pfchain(&["repro", "--claims", "1,2"]).status.code(),
        Some(0)
    );
}

#[test]
fn plot_data_header() {
    let o = pfchain(&["plot-data", "--kind", "histogram", "--d", "3", "--N", "6"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.starts_with("# schema 1, config ")));
    assert!(s.contains("pairs,words"));
}

#[test]
fn pairs_modes_agree() {
    let run = |mode: &str| {
        let s = stdout(&pfchain(&[
            "--format", "csv", "pairs", "--d", "3", "--nmax", "4", "--k-list", "0,2", "--mode",
            mode,
        ]));
        s.lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| l.split(',').take(6).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
    };
    let exact = run("exact");
    assert!(exact.contains(&"4,0,543,1827,609,181".to_string()));
    assert_eq!(exact, run("histogram"));
    assert_eq!(exact, run("bogf"));
}

#[test]
fn entropy_modes_agree() {
    let bits = |mode: &str| {
        let o = pfchain(&[
            "entropy", "--model", "pf", "--d", "3", "--N", "12", "--mode", mode,
        ]);
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["entropy_bits"]
            .as_f64()
            .unwrap()
    };
    let (a, b, c) = (bits("exact"), bits("logspace"), bits("oracle"));
    assert!((a - b).abs() < 1e-12 && (b - c).abs() < 1e-10);
    assert_eq!(
        pfchain(&["entropy", "--N", "400", "--mode", "exact"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn spectrum_fit_and_export() {
    let path = std::env::temp_dir().join(format!("pfchain-coo-{}", std::process::id()));
    let o = pfchain(&[
        "--jobs",
        "3",
        "spectrum",
        "--d",
        "3",
        "--N",
        "8",
        "--fit",
        "--fit-min",
        "4",
        "--export",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 543);
    assert_eq!(v["fit"]["points"].as_array().unwrap().len(), 3);
    assert!(v["fit"]["slope"].as_f64().unwrap() < -1.0);
    let coo = std::fs::read_to_string(&path).unwrap();
    assert_eq!(coo.lines().next(), Some("543"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = [
        "markov",
        "--chain",
        "pd",
        "--d",
        "3",
        "--n",
        "2",
        "--bound",
        "canonical",
    ];
    let a = pfchain(&args);
    assert_eq!(a.stdout, pfchain(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["bound"]["bound"], "1/18");
}
