use serde_json::Value;
use std::process::Command;

fn clsieve(args: &str) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_clsieve"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &str) -> Value {
    let (code, stdout, stderr) = clsieve(&format!("{args} --format json"));
    assert!(code == 0 || code == 1, "{args}: exit {code}: {stderr}");
    serde_json::from_str(&stdout).unwrap()
}

fn feasible_xs(v: &Value) -> Vec<String> {
    v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["feasible"].as_bool().unwrap())
        .map(|r| r["x"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn ag57_csv_matches_the_mod_16_analysis() {
    let (code, stdout, _) = clsieve("sieve --space ag --n 5 --k 1 --q 7 --x-max 1201 --format csv");
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("x,condition,applicable,feasible,witness"));
    let feasible: Vec<u64> = lines
        .filter_map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1] == "all" && f[3] == "true").then(|| f[0].parse().unwrap())
        })
        .collect();
    let expected: Vec<u64> = (0..=1201u64)
        .filter(|&x| x <= 1 || (9 * x * (x - 1) % 16 == 0 && x >= 101))
        .collect();
    assert_eq!(feasible, expected);
    assert!(stdout.contains("2,affine_kset,true,false,"));
}

#[test]
fn pg33_residue_exhaustion() {
    let v = json("sieve --space pg --n 3 --k 1 --q 3 --x-max 10");
    let reports = v["reports"].as_array().unwrap();
    for x in [3, 4] {
        let r = &reports[x];
        assert_eq!(r["x"], format!("{x}/1"));
        assert_eq!(r["feasible"], false);
        let metsch = r["verdicts"].as_array().unwrap().iter().find(|v| v["name"] == "metsch_pg3").unwrap();
        assert_eq!(metsch["exhaustion"].as_array().unwrap().len(), 4);
    }
    assert_eq!(feasible_xs(&v), ["0/1", "1/1", "2/1", "5/1", "8/1", "9/1", "10/1"]);
}

#[test]
fn pg42_even_dimension_parameters() {
    let v = json("sieve --space pg --n 4 --k 1 --q 2 --x-max 2");
    let xs: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["x"].as_str().unwrap()).collect();
    assert_eq!(xs, ["0/1", "1/1", "4/3", "5/3", "2/1"]);
    let one = &v["reports"][1]["verdicts"];
    let even = one.as_array().unwrap().iter().find(|v| v["name"] == "even_dim").unwrap();
    assert_eq!(even["witness"], "C=0");
    assert_eq!(v["full_parameter"], "31/3");
}

#[test]
fn verify_search_geometry_examples() {
    let (code, stdout, _) = clsieve("verify --check maineq2 --n 7 --q 2 --class hyperplane --point 0");
    assert_eq!(code, 0);
    assert!(stdout.contains("1 passed, 0 failed"));
    let v = json("search --space pg --n 3 --q 2 --x 1");
    assert_eq!(v["count"], 30);
    assert_eq!(v["classes"].as_array().unwrap().len(), 30);
    let g = json("geometry --n 3 --q 2");
    assert_eq!((g["points"].as_str(), g["lines"].as_str(), g["spreads"].as_str()), (Some("15"), Some("35"), Some("56")));
}

#[test]
fn manifest_and_string_numbers() {
    let v = json("geometry --n 30 --q 49");
    assert_eq!(v["materialized"], false);
    assert!(v["lines"].as_str().unwrap().len() > 16);
    let m = &v["manifest"];
    assert_eq!(m["tool"], "clsieve");
    assert_eq!(m["ordering_version"], 1);
    assert_eq!(m["command"], "geometry --n 30 --q 49 --format json");
    assert_eq!(m["seed"], "1");
    assert!(m.get("elapsed_ms").is_none());
    let timed = json("catalog --timing");
    assert!(timed["manifest"]["elapsed_ms"].is_string());
}

#[test]
fn exit_code_contract() {
    assert_eq!(clsieve("verify --check metsch --n 3 --q 3 --class union").0, 0);
    assert_eq!(clsieve("verify --check modular-t --n 7 --q 2 --class hyperplane --samples 3").0, 1);
    assert_eq!(clsieve("sieve --space pg --n 3").0, 2);
    assert_eq!(clsieve("verify --check drudge --n 3 --q 2 --class union:0:0").0, 2);
    assert_eq!(clsieve("geometry --n 3 --q 6").0, 3);
    assert_eq!(clsieve("sieve --space pg --n 4 --k 2 --q 2").0, 3);
    assert_eq!(clsieve("verify --check skewlines --n 9 --q 3").0, 4);
    assert_eq!(clsieve("sieve --space ag --n 20 --q 49").0, 4);
}

#[test]
fn output_is_byte_identical_across_runs_and_jobs() {
    for args in [
        "sieve --space pg --n 7 --q 3 --fold-complement --format json",
        "sieve --space ag --n 5 --q 7 --format csv",
        "verify --check count1 --n 5 --q 2 --class complement:union --seed 9 --format json",
        "verify --check segre --n 6 --q 2 --m 2 --j 1 --seed 4 --format json",
    ] {
        let runs: Vec<String> = ["1", "1", "3", "8"]
            .iter()
            .map(|j| clsieve(&format!("{args} --jobs {j}")).1.replace(&format!("--jobs {j}"), "--jobs N"))
            .collect();
        assert!(!runs[0].is_empty());
        assert!(runs.iter().all(|r| *r == runs[0]), "{args}");
    }
    let a = clsieve("verify --check le-extra --n 7 --q 2 --class pencil --seed 1").1;
    let b = clsieve("verify --check le-extra --n 7 --q 2 --class pencil --seed 2").1;
    assert_ne!(a, b);
}

#[test]
fn class_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("clsieve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("union.cls");
    let (code, stdout, stderr) = clsieve(&format!("class --n 3 --q 3 --class union --out {}", path.display()));
    assert_eq!(code, 0, "{stderr}");
    assert!(stdout.contains("degree-one: yes"));
    let from_file = json(&format!("verify --check skewlines --n 3 --q 3 --class file:{}", path.display()));
    let direct = json("verify --check skewlines --n 3 --q 3 --class union");
    assert_eq!(from_file["results"], direct["results"]);
    assert_eq!(from_file["summary"]["failed"], 0);
    assert_eq!(clsieve(&format!("verify --check metsch --n 3 --q 2 --class file:{}", path.display())).0, 2);
    std::fs::remove_dir_all(dir).unwrap();
}
