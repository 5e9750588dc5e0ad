use std::path::PathBuf;
use std::process::{Command, Output};

use pairmult_core::groupfile::{GroupFile, PcSection};
use proptest::prelude::*;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pairmult"))
}

fn groups(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../groups")
        .join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pairmult-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn multiplier_of_cyclic_group_is_trivial() {
    let o = run(&["multiplier", groups("z4.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(trivial)"), "{}", stdout(&o));
}

#[test]
fn multiplier_backends_agree_on_q8() {
    let f = groups("q8xz2.json");
    let bar = run(&["multiplier", f.to_str().unwrap(), "--backend", "bar"]);
    let pc = run(&["multiplier", f.to_str().unwrap(), "--backend", "pc"]);
    let strip = |o: &Output| stdout(o).split("  [").next().unwrap().to_string();
    assert_eq!(strip(&bar), strip(&pc));
    assert!(strip(&bar).contains("Z2 x Z2"));
}

#[test]
fn snf_lists_nonzero_invariants() {
    let m = scratch("m.txt");
    std::fs::write(&m, "2 2\n0 0 2\n1 1 3\n").unwrap();
    let o = run(&["snf", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "invariants: 1 6"));
}

#[test]
fn snf_reports_bad_line() {
    let m = scratch("bad.txt");
    std::fs::write(&m, "2 2\n0 0 2\n1 y 3\n").unwrap();
    let o = run(&["snf", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["check", groups("d4.json").to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    // five overlaps fail on b^2
    let o = run(&["check", groups("g2048.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("inconsistent")
            || String::from_utf8_lossy(&o.stderr).contains("inconsistent")
    );
    assert_eq!(run(&["example21"]).status.code(), Some(1));
    assert_eq!(
        run(&["check", "/nonexistent/g.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    let d4 = groups("d4.json");
    assert_eq!(
        run(&["pair", d4.to_str().unwrap(), "--n", "X"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["pair", d4.to_str().unwrap(), "--n", "R", "--k", "S"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn input_errors_carry_a_position() {
    let f = scratch("broken.json");
    std::fs::write(&f, "{\"name\": \"x\",\n \"pc\": {\"generators\": [\"a\"], \"orders\": [4], \"powers\": {\"a\": \"b\"}}}").unwrap();
    let o = run(&["analyze", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("powers"), "{err}");
}

#[test]
fn pair_json_schema_and_determinism() {
    let d4 = groups("d4.json");
    let a = scratch("a.json");
    let b = scratch("b.json");
    for out in [&a, &b] {
        let o = run(&[
            "pair",
            d4.to_str().unwrap(),
            "--n",
            "R",
            "--k",
            "S",
            "--json",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());
    let v: serde_json::Value = serde_json::from_str(&ta).unwrap();
    for key in [
        "group_name",
        "order_G",
        "order_N",
        "p",
        "e",
        "pair_class",
        "m",
        "exp_N",
        "multiplier",
        "exp_M",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["exp_M"], "2");
    assert_eq!(v["bounds"]["thm27"], "8");
    assert_eq!(v["verdicts"]["thm27_holds"], true);
    assert!(v["verdicts"]["cor28_holds"].is_null());
}

#[test]
fn corpus_json_is_deterministic() {
    let a = scratch("ca.json");
    let b = scratch("cb.json");
    for out in [&a, &b] {
        let o = run(&[
            "corpus",
            "--max-order",
            "16",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());
    let v: serde_json::Value = serde_json::from_str(&ta).unwrap();
    assert_eq!(v["version"], "1");
    assert!(v["entries"].as_array().unwrap().len() > 10);
    assert_eq!(v["summary"]["violations"], 0);
}

#[test]
fn shipped_group_files_load() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../groups");
    let mut n = 0;
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        let f = GroupFile::parse(&text).unwrap();
        assert_eq!(
            GroupFile::parse(&f.to_json()).unwrap(),
            f,
            "{}",
            p.display()
        );
        n += 1;
    }
    assert!(n > 40);
}

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9]{0,3}"
}

proptest! {
    #[test]
    fn group_file_round_trip(
        gens in proptest::collection::btree_set(name(), 1..5),
        orders in proptest::collection::vec(2i64..9, 5),
        labels in proptest::collection::btree_map("[A-Z]{1,3}", 0usize..5, 0..4),
    ) {
        let gens: Vec<String> = gens.into_iter().collect();
        let orders = orders[..gens.len()].to_vec();
        let pick = |i: usize| gens[i % gens.len()].clone();
        let powers = gens.iter().skip(1).map(|g| (g.clone(), format!("{}^2", gens[0]))).collect();
        let commutators = gens
            .windows(2)
            .map(|w| (format!("{},{}", w[1], w[0]), w[0].clone()))
            .collect();
        let f = GroupFile {
            name: gens.join("-"),
            pc: Some(PcSection { generators: gens.clone(), orders, powers, commutators }),
            perm: None,
            subgroups: labels.iter().map(|(k, &i)| (k.clone(), vec![pick(i)])).collect(),
            complements: Default::default(),
        };
        let back = GroupFile::parse(&f.to_json()).unwrap();
        prop_assert_eq!(back, f);
    }
}
