use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn ddsynth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddsynth")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    ddsynth(args).status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn input_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.aca");
    let out = out.to_str().unwrap();
    assert_eq!(code(&["translate", "--ltl", "F (", "--props", "a", "-o", out]), 3);
    assert_eq!(code(&["translate", "--ltl", "F b", "--props", "a", "-o", out]), 3);
    assert_eq!(code(&["mc", "--uca", "/nonexistent", "--machine", &fixture("s1.moore")]), 3);
    assert_eq!(code(&["no-such-command"]), 3);
    let single = code(&["compositional", "--ltl", "G F o", "--arch", &fixture("eager.arch"), "-o", out]);
    assert_eq!(single, 3);
    let err = ddsynth(&["translate", "--ltl", "F b", "--props", "a", "-o", out]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("unknown atom `b`"));
}

#[test]
fn exhausted_synthesis_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = |f: &str| dir.path().join(f).to_string_lossy().into_owned();
    assert_eq!(code(&["translate", "--ltl", "false", "--props", "a", "-o", &p("f.aca")]), 0);
    assert_eq!(code(&["to-uca", "--aca", &p("f.aca"), "-o", &p("f.uca")]), 0);
    let args = ["synth", "--uca", &p("f.uca"), "--inputs", "", "--outputs", "a", "-o", &p("m.moore"), "--report", &p("r.json")];
    assert_eq!(code(&args), 2);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(p("r.json")).unwrap()).unwrap();
    assert_eq!(report["attempts"].as_array().unwrap().len(), 16);
    assert!(!Path::new(&p("m.moore")).exists());
}

#[test]
fn staged_commands_reproduce_the_message_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let p = |f: &str| dir.path().join(f).to_string_lossy().into_owned();
    let f = "F m1 & F m2";
    assert_eq!(code(&["translate", "--ltl", f, "--props", "m2 m1", "-o", &p("a.aca"), "--dot", &p("a.dot")]), 0);
    assert_eq!(code(&["translate", "--ltl", f, "--props", "m2 m1", "--negate", "-o", &p("n.aca")]), 0);
    let b = ddsynth(&["build-dd", "--aca", &p("a.aca"), "--neg-aca", &p("n.aca"), "--outputs", "m1", "-o", &p("b.aca")]);
    assert!(stdout(&b).starts_with("36 states before pruning"));
    assert_eq!(code(&["to-uca", "--aca", &p("b.aca"), "-o", &p("u.uca")]), 0);
    assert_eq!(code(&["project", "--uca", &p("u.uca"), "--keep", "m2 m1", "-o", &p("d.uca")]), 0);
    let synth = ["synth", "--uca", &p("d.uca"), "--inputs", "m2", "--outputs", "m1", "-o", &p("m.moore"), "--emit-dimacs", &p("g.cnf")];
    assert_eq!(code(&synth), 0);
    assert!(fs::read_to_string(p("g.cnf")).unwrap().contains("p cnf"));
    assert_eq!(code(&["mc", "--uca", &p("d.uca"), "--machine", &p("m.moore")]), 0);
    let t1 = ddsynth(&["mc", "--uca", &p("d.uca"), "--machine", &fixture("t1.moore")]);
    assert_eq!(t1.status.code(), Some(1));
    assert!(stdout(&t1).contains("counterexample: "));
    let check = ["check-dd", "--ltl", f, "--arch", &fixture("messages.arch"), "--process", "p1", "--machine", &p("m.moore")];
    assert_eq!(code(&check), 0);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = |f: &str| dir.path().join(f).to_string_lossy().into_owned();
    for name in ["x", "y"] {
        let args = [
            "synth-dd", "--ltl", "G F o | X i", "--arch", &fixture("eager.arch"), "--process", "p", "-o",
            &p(&format!("{name}.moore")), "--report", &p(&format!("{name}.json")),
        ];
        assert_eq!(code(&args), 0);
    }
    assert_eq!(fs::read(p("x.moore")).unwrap(), fs::read(p("y.moore")).unwrap());
    assert_eq!(fs::read(p("x.json")).unwrap(), fs::read(p("y.json")).unwrap());
}

#[test]
fn pair_check_writes_arena_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = |f: &str| dir.path().join(f).to_string_lossy().into_owned();
    let args = [
        "check-dd-pair", "--aca", &fixture("messages.aca"), "--dominant", &fixture("t1.moore"), "--alt",
        &fixture("s1.moore"), "--gamma", "{} {m2} $ {}", "--dot", &p("g.dot"), "--report", &p("r.json"),
    ];
    assert_eq!(code(&args), 1);
    assert!(fs::read_to_string(p("g.dot")).unwrap().starts_with("digraph"));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(p("r.json")).unwrap()).unwrap();
    assert_eq!(r["verdict"], "does not delay-dominate");
    assert_eq!(r["unmatched"]["round"], 2);
}

#[test]
fn composing_machine_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.moore");
    let o = ddsynth(&["compose", "--machines", &fixture("s1.moore"), &fixture("s2.moore"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(out).unwrap();
    assert!(text.contains("outputs: m1 m2") && text.contains("label 0: {m1,m2}"), "{text}");
}
