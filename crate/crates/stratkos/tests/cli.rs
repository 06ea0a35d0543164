use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use stratkos::cli::files::{load_algebra, AlgebraSpecFile};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stratkos"))
        .args(args)
        .env_remove("STRATKOS_BOUND")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    (out.status.code().unwrap(), v)
}

#[test]
fn build_reports_dimension() {
    let (code, v) = json(&["build", &fixture("ex2_1_10.alg")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["algebra"]["dim"], 5);
    assert_eq!(v["result"]["associative"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["check", "koszul", &fixture("ex2_4_3.alg")])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["check", "directed", &fixture("ex5_2_14.alg")])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["check", "proper", &fixture("ex6_1_10.alg")])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["build", "/nonexistent/file.alg"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn malformed_relation_names_token_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.alg");
    std::fs::write(
        &p,
        "{\"name\": \"bad\", \"field\": \"Q\", \"vertices\": [\"x\"],\n\"arrows\": [{\"name\": \"a\", \"from\": \"x\", \"to\": \"x\"}],\n\"relations\": [\"a*q\"]}\n",
    )
    .unwrap();
    let (code, v) = json(&["build", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["token"], "q");
    assert_eq!(v["error"]["line"], 3);
    let text = run(&["build", p.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&text.stderr).contains("line 3"));
}

#[test]
fn orders_of_ex6_4_1() {
    let (code, v) = json(&["orders", &fixture("ex6_4_1.alg")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 6);
    let args: Vec<&str> = v["result"]["order_args"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(args.iter().all(|a| a.starts_with("y,")));
}

#[test]
fn coker_closed_needs_an_order_and_reports_witness() {
    assert_eq!(
        run(&["check", "coker-closed", &fixture("ex6_3_6.alg")])
            .status
            .code(),
        Some(2)
    );
    let (code, v) = json(&[
        "check",
        "coker-closed",
        &fixture("ex6_3_6.alg"),
        "--order",
        "x,y,z",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["lambda"], "y");
    let (code, _) = json(&[
        "check",
        "coker-closed",
        &fixture("ex6_3_7.alg"),
        "--order",
        "x,z,y",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn ei_emit_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("kE.alg");
    let (code, v) = json(&[
        "ei",
        &fixture("ex4_3_8.ei"),
        "--char",
        "2",
        "--emit",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{v}");
    let a = load_algebra(&p).unwrap();
    assert_eq!(a.dim(), 7);
    let again = AlgebraSpecFile::from_algebra(&a).to_json();
    assert_eq!(again, std::fs::read_to_string(&p).unwrap().trim_end());
}

#[test]
fn reduce_and_graded_emit_loadable_specs() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("red.alg");
    let g = dir.path().join("gr.alg");
    assert_eq!(
        run(&[
            "reduce",
            &fixture("ex2_4_3.alg"),
            "--emit",
            r.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&[
            "graded",
            &fixture("ex6_1_10.alg"),
            "--emit",
            g.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(load_algebra(&r).unwrap().check_associativity(), None);
    assert_eq!(load_algebra(&g).unwrap().dim(), 8);
}

#[test]
fn json_is_deterministic() {
    for args in [
        vec!["--json", "orders", "ex6_4_2.alg"],
        vec![
            "--json",
            "ext",
            "ex2_1_10.alg",
            "--from",
            "A0",
            "--to",
            "A0",
            "-n",
            "3",
        ],
        vec![
            "--json",
            "gamma",
            "ex5_2_12.alg",
            "--order",
            "z,y,x",
            "-n",
            "3",
        ],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".alg") {
                    fixture(a)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&refs);
        let second = run(&refs);
        assert_eq!(
            first.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&first.stderr)
        );
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn bound_comes_from_flag_then_environment() {
    let f = fixture("ex2_1_10.alg");
    let (_, v) = json(&["check", "koszul", &f]);
    assert_eq!(v["query"]["bound"], 6);
    let out = Command::new(env!("CARGO_BIN_EXE_stratkos"))
        .args(["--json", "check", "koszul", &f])
        .env("STRATKOS_BOUND", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["query"]["bound"], 3);
    let out = Command::new(env!("CARGO_BIN_EXE_stratkos"))
        .args(["--json", "check", "koszul", &f, "-n", "4"])
        .env("STRATKOS_BOUND", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["query"]["bound"], 4);
}

#[test]
fn ext_selectors() {
    let f = fixture("ex5_2_14.alg");
    let (code, v) = json(&[
        "ext", &f, "--from", "D:y", "--to", "D:x", "-n", "3", "--order", "x,z,y",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["dims"], serde_json::json!([1, 0, 1, 0]));
}
