use std::path::PathBuf;

use quota_alloc::cli::run_command;
use quota_alloc::format::{parse_instance, parse_matching, serialize_instance, serialize_matching};
use quota_alloc::generators::gen_random;
use quota_alloc::instance::{is_feasible, popularity_margin};
use quota_alloc::oracle::{oracle_exists, ExistsMode, Guard};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_command(
        std::iter::once("quota-alloc").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir =
            std::env::temp_dir().join(format!("quota-alloc-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

const IDENTICAL_LISTS: &str = "# three applicants, identical lists
applicants 3
projects 3
project p1 1 1
project p2 1 1
project p3 1 1
pref a1: p1 p2 p3
pref a2: p1 p2 p3
pref a3: p1 p2 p3
";

#[test]
fn verify_popular_prints_a_more_popular_matching() {
    let s = Scratch::new("identical");
    let inst = s.file("identical.txt", IDENTICAL_LISTS);
    let diag = s.file("diag.txt", "match a1 p1\nmatch a2 p2\nmatch a3 p3\n");
    let (code, out, err) = run(&["verify", "popular", "-i", &inst, "-m", &diag]);
    assert_eq!(code, 0, "{err}");
    let parsed = parse_instance(IDENTICAL_LISTS).unwrap();
    let witness = parse_matching(&parsed, &out).unwrap();
    let m = parse_matching(&parsed, "match a1 p1\nmatch a2 p2\nmatch a3 p3\n").unwrap();
    assert!(popularity_margin(&parsed, &witness, &m).unwrap() > 0);
}

#[test]
fn solve_perpo_on_a_no_instance_prints_none() {
    let s = Scratch::new("perpo");
    // a2 only fits on p2, which needs two applicants, while p1 can hold only a1.
    let text =
        "applicants 2\nprojects 2\nproject p1 1 1\nproject p2 2 2\npref a1: p1\npref a2: p2\n";
    let inst = parse_instance(text).unwrap();
    assert!(
        oracle_exists(&inst, ExistsMode::PerfectPareto, Guard::default())
            .unwrap()
            .is_none()
    );
    let path = s.file("inst.txt", text);
    let (code, out, _) = run(&["solve", "perpo", "-i", &path, "--method", "lq2"]);
    assert_eq!((code, out.as_str()), (1, "NONE\n"));
}

#[test]
fn gen_condorcet_lq3_is_a_valid_instance() {
    let (code, out, _) = run(&["gen", "condorcet", "--variant", "lq3"]);
    assert_eq!(code, 0);
    let inst = parse_instance(&out).unwrap();
    assert_eq!((inst.n(), inst.m(), inst.lower_max()), (3, 3, 3));
}

#[test]
fn methods_agree() {
    let s = Scratch::new("methods");
    for seed in 0..40 {
        let inst = gen_random(seed, 4, 3, 2, 0..=3).unwrap();
        let path = s.file("inst.txt", &serialize_instance(&inst));
        let mut answers = Vec::new();
        for method in ["oracle", "lq2", "fpt", "flow"] {
            let (code, out, err) = run(&["solve", "perpo", "-i", &path, "--method", method]);
            assert!(code < 2, "{method}: {err}");
            if code == 0 {
                let m = parse_matching(&inst, &out).unwrap();
                assert!(m.is_perfect() && is_feasible(&inst, &m).unwrap());
            }
            answers.push(code);
        }
        assert!(
            answers.windows(2).all(|w| w[0] == w[1]),
            "seed {seed}: {answers:?}"
        );

        let empty = s.file(
            "empty.txt",
            &serialize_matching(&inst, &quota_alloc::Matching::empty(inst.n())),
        );
        for mode in ["popular", "pareto"] {
            let codes: Vec<i32> = ["oracle", "lq2", "fpt", "flow"]
                .iter()
                .map(|method| {
                    run(&[
                        "verify", mode, "-i", &path, "-m", &empty, "--method", method,
                    ])
                    .0
                })
                .collect();
            assert!(
                codes.windows(2).all(|w| w[0] == w[1]),
                "seed {seed} {mode}: {codes:?}"
            );
        }
    }
}

#[test]
fn maxweight_reads_weight_lines() {
    let s = Scratch::new("weights");
    let path = s.file(
        "inst.txt",
        "applicants 2\nprojects 2\nproject p1 1 2\nproject p2 2 2\npref a1: p1 p2\npref a2: p2 p1\nweight a1 p2 4\nweight a2 p2 4\nweight a1 p1 5\n",
    );
    let (code, out, _) = run(&["maxweight", "-i", &path]);
    assert_eq!(code, 0);
    assert!(out.starts_with("weight 8\n"), "{out}");
    let (code, out, _) = run(&["maxweight", "-i", &path, "--open", "p1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("weight 5\n"), "{out}");
}

#[test]
fn exists_and_errors() {
    let s = Scratch::new("exists");
    let path = s.file("identical.txt", IDENTICAL_LISTS);
    assert_eq!(run(&["exists", "popular", "-i", &path]).0, 1);
    assert_eq!(run(&["exists", "perfect-pareto", "-i", &path]).0, 0);
    assert_eq!(
        run(&["exists", "popular", "-i", &path, "--method", "lq2"]).0,
        2
    );
    let bad = s.file(
        "bad.txt",
        "applicants 1\nprojects 1\nproject p1 2 1\npref a1: p1\n",
    );
    let (code, out, err) = run(&["validate", "-i", &bad]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 3"), "{err}");
    let lq3 = s.file("lq3.txt", &run(&["gen", "condorcet", "--variant", "lq3"]).1);
    assert_eq!(run(&["solve", "perpo", "-i", &lq3, "--method", "lq2"]).0, 2);
    assert_eq!(
        run(&[
            "exists",
            "popular",
            "-i",
            &lq3,
            "--param",
            "oracle-guard",
            "2"
        ])
        .0,
        2
    );
}
