use std::path::PathBuf;
use std::process::{Command, Output};

use mixdom::setfile::SetFile;
use mixdom::{verify, Graph};

fn mixdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixdom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mixdom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn assert_reverifies(text: &str) {
    let file = SetFile::parse(text).unwrap();
    let g = Graph::new(file.n, file.k).unwrap();
    assert!(verify(&g, &file.to_set(&g).unwrap()).is_dominating);
}

#[test]
fn build_dot_counts() {
    let o = mixdom(&["build", "--n", "10", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
    let nodes = dot
        .lines()
        .filter(|l| !l.contains(" -- ") && l.trim_start().starts_with(['v', 'u']))
        .count();
    assert_eq!((nodes, edges), (20, 30));
}

#[test]
fn build_rejects_bad_parameters() {
    assert_eq!(
        mixdom(&["build", "--n", "5", "--k", "2"]).status.code(),
        Some(0)
    );
    assert_eq!(
        mixdom(&["build", "--n", "4", "--k", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        mixdom(&["build", "--n", "2", "--k", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_exit_codes() {
    let good = scratch("good.set", "n 8\nk 1\nu 0\nvv 1\nuu 2\nv 4\nuu 5\nvv 6\n");
    let o = mixdom(&["verify", "--set", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rd_total 2"));

    let empty = scratch("empty.set", "n 8\nk 1\n");
    let o = mixdom(&["verify", "--set", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("uncovered 40"));

    let bad = scratch("bad.set", "n 8\nk 1\nuu 9\n");
    assert_eq!(
        mixdom(&["verify", "--set", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let wrong = ["verify", "--n", "9", "--set", good.to_str().unwrap()];
    assert_eq!(mixdom(&wrong).status.code(), Some(2));
    assert_eq!(
        mixdom(&["verify", "--set", "/nonexistent/x.set"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn construct_emits_verifiable_sets() {
    for (n, k, pattern) in [
        ("16", "1", None),
        ("13", "2", None),
        ("13", "2", Some("K2_Block8")),
        ("13", "3", None),
        ("27", "4", None),
    ] {
        let mut args = vec!["construct", "--n", n, "--k", k];
        if let Some(p) = pattern {
            args.extend(["--pattern", p]);
        }
        let o = mixdom(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_reverifies(&stdout(&o));
    }
    let o = mixdom(&[
        "construct",
        "--n",
        "10",
        "--k",
        "2",
        "--pattern",
        "K1_Block8",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_exit_codes() {
    let o = mixdom(&["solve", "--n", "9", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let file = SetFile::parse(&text).unwrap();
    assert_eq!(file.elements.len(), 7);
    assert_eq!(file.meta("proved"), Some("true"));
    assert_reverifies(&text);

    let o = mixdom(&["solve", "--n", "6", "--k", "1", "--exhaustive", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(SetFile::parse(&stdout(&o)).unwrap().elements.len(), 5);

    let o = mixdom(&["solve", "--n", "12", "--k", "1", "--max-nodes", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert_reverifies(&stdout(&o));

    assert_eq!(
        mixdom(&["solve", "--n", "6", "--k", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn formula_values() {
    let o = mixdom(&["formula", "--n", "12", "--k", "2", "--remark"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("10"));
}

fn compare_gaps(k: &str, from: &str, to: &str) -> Vec<mixdom::cli::CompareRow> {
    let o = mixdom(&[
        "compare", "--k", k, "--from", from, "--to", to, "--format", "lines",
    ]);
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
        .lines()
        .map(|l| mixdom::cli::CompareRow::parse_line(l).expect("row parses"))
        .collect()
}

#[test]
fn compare_k1_and_k2_are_tight() {
    for (k, from, to) in [("1", "8", "12"), ("2", "5", "12")] {
        let rows = compare_gaps(k, from, to);
        assert!(!rows.is_empty());
        for r in rows {
            assert!(r.proved);
            assert_eq!(r.gap(), Some(0), "{}", r.to_line());
            assert_eq!(r.formula_gap(), Some(0), "{}", r.to_line());
        }
    }
}

#[test]
fn compare_k3_rows() {
    let rows = compare_gaps("3", "8", "12");
    assert_eq!(rows.len(), 5);
    for r in rows {
        let exact = r.exact_optimum.expect("proved");
        assert!(exact <= r.formula_value);
        assert!(exact >= r.lower_bound);
    }
}

fn table_values(args: &[&str]) -> (i32, Vec<String>) {
    let o = mixdom(args);
    let text = stdout(&o);
    let values = text
        .lines()
        .find(|l| l.starts_with("value"))
        .unwrap()
        .split_whitespace()
        .skip(1)
        .map(str::to_string)
        .collect();
    (o.status.code().unwrap(), values)
}

#[test]
fn tables_match() {
    assert_eq!(
        table_values(&["table", "table1"]),
        (
            0,
            vec!["3", "4", "4", "5", "6"]
                .into_iter()
                .map(String::from)
                .collect()
        )
    );
    let want: Vec<String> = "6 8 8 9 10 10 11 12".split(' ').map(String::from).collect();
    assert_eq!(table_values(&["table", "eq1"]), (0, want));
    let want: Vec<String> = "4 5 6 6 7 8 9 9".split(' ').map(String::from).collect();
    assert_eq!(table_values(&["table", "k2"]), (0, want));
    assert_eq!(table_values(&["table", "k2remark"]).0, 0);
    assert_eq!(table_values(&["table", "general", "--k", "4"]).0, 0);
}
