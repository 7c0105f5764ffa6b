mod common;

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use realmono::coupling::{MeasureSystem, Realization, DEFAULT_TUPLE_CAP};
use realmono::format::{load_system, parse_certificate, parse_coupling, parse_phi};
use realmono::poset::{root_tree, ChildOrders};

use common::*;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realmono"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("realmono-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn fx(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn classify_reports_edges_and_class() {
    let o = run(&["classify", "--poset", &fx("example.poset")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "elements 6\ncover w v\ncover w z\ncover w τ\ncover x z\ncover y z\nclass W\nsynchronizable-index true\n"
    );
    let o = run(&["classify", "--poset", &fx("chain3.poset")]);
    assert!(stdout(&o).contains("class Z\n"));
    let o = run(&["classify", "--poset", &fx("diamond.poset")]);
    assert!(stdout(&o).contains("class NonAcyclicOrDisconnected\n"));
}

#[test]
fn check_realizable_emits_coupling() {
    let out = scratch("check");
    let o = run(&["check", "--system", &fx("example.system"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("stochastically-monotone true\nrealizable true\n"));
    assert!(text.ends_with("verdict realizably-monotone\n"));
    let sys = load_system(&fixture("example.system")).unwrap();
    let c = parse_coupling(&fs::read_to_string(out.join("coupling.txt")).unwrap(), &sys).unwrap();
    assert!(coupling_exact(&c, &sys));
}

#[test]
fn check_reports_witness_for_reversed_system() {
    let o = run(&["check", "--system", &fx("reversed.system")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("stochastically-monotone false\n"));
    let witness = text.lines().find(|l| l.starts_with("witness ")).unwrap();
    // P2 above P1 fails on an up-set carrying 11/15 of P2 but 3/15 of P1.
    assert_eq!(witness, "witness 1 2 up-set {z,v,τ} masses 11/15 1/5");
}

#[test]
fn check_reverses_point_masses_on_a_chain() {
    let dir = scratch("points");
    fs::write(
        dir.join("sys.system"),
        format!(
            "index {0}\nstate {0}\nmeasure top\nmass hi 1\nmeasure bot\nmass lo 1\nassign lo top\nassign hi bot\n",
            fx("chain2.poset")
        ),
    )
    .unwrap();
    let o = run(&["check", "--system", dir.join("sys.system").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness lo hi up-set {hi} masses 1/1 0/1\n"));
}

#[test]
fn check_diamond_prints_frozen_certificate() {
    let out = scratch("diamond");
    let o = run(&["check", "--system", &fx("diamond.system"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict monotone-not-realizable\n"));
    let written = fs::read_to_string(out.join("certificate.txt")).unwrap();
    assert_eq!(written, fs::read_to_string(fixture("diamond.certificate")).unwrap());
    let sys = load_system(&fixture("diamond.system")).unwrap();
    assert!(certificate_exact(&parse_certificate(&written, &sys).unwrap(), &sys));
}

#[test]
fn synchronize_worked_example() {
    let out = scratch("sync");
    let o = run(&[
        "synchronize",
        "--system",
        &fx("example.system"),
        "--root",
        "τ",
        "--child-order",
        "w:z,v",
        "--child-order",
        "z:x,y",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with(
        "extension x y z v w τ\n\
         naive-violation 1 2 [1/15,2/15) x y\n\
         naive-violation 1 2 [6/15,7/15) v z\n"
    ));
    assert_eq!(text.matches("naive-violation").count(), 2);
    assert!(text.ends_with("synchronized true\n"));

    let sys = load_system(&fixture("example.system")).unwrap();
    let s = sys.state_poset();
    let (_, ext) = root_tree(s, s.index_of("τ").unwrap(), &ChildOrders::new()).unwrap();
    let perms: Vec<_> = ["phi_1.txt", "phi_2.txt"]
        .iter()
        .map(|f| parse_phi(&fs::read_to_string(out.join(f)).unwrap()).unwrap())
        .collect();
    assert!(synchronized_brute(&perms, &sys, &ext));
    for f in ["naive.svg", "synchronized.svg", "phi.svg"] {
        let svg = fs::read_to_string(out.join(f)).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
    // Failure intervals are shaded on the naive plot only.
    assert_eq!(fs::read_to_string(out.join("naive.svg")).unwrap().matches("fill=\"red\"").count(), 2);
    assert_eq!(fs::read_to_string(out.join("synchronized.svg")).unwrap().matches("fill=\"red\"").count(), 0);
}

#[test]
fn synchronize_chain_gives_identity() {
    let o = run(&["synchronize", "--system", &fx("chain3.system")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("phi lo identity\nphi hi identity\n"));
    assert!(!text.contains("naive-violation"));
}

#[test]
fn synchronize_antichain_index_is_trivial() {
    let dir = scratch("antichain");
    fs::write(dir.join("a.poset"), "element p\nelement q\n").unwrap();
    fs::write(
        dir.join("sys.system"),
        format!(
            "index a.poset\nstate {}\nmeasure m1\nmass x 1/2\nmass τ 1/2\nmeasure m2\nmass v 1\nassign p m1\nassign q m2\n",
            fx("example.poset")
        ),
    )
    .unwrap();
    let o = run(&["synchronize", "--system", dir.join("sys.system").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("synchronized true\n"));
}

#[test]
fn cftp_is_deterministic_and_reports_summary() {
    let args = ["cftp", "--kernel", &fx("chain2.kernel"), "--seed", "7", "--samples", "2000"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let states: Vec<&str> = text.lines().take_while(|l| !l.starts_with("summary")).collect();
    assert_eq!(states.len(), 2000);
    assert!(states.iter().all(|s| *s == "lo" || *s == "hi"));
    assert!(text.contains("summary state lo stationary 1/2 observed "));
    let p: f64 = text
        .lines()
        .find(|l| l.starts_with("summary chi-square"))
        .and_then(|l| l.split_whitespace().last())
        .unwrap()
        .parse()
        .unwrap();
    assert!(p > 0.001);
    let other = run(&["cftp", "--kernel", &fx("chain2.kernel"), "--seed", "8", "--samples", "2000"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn cftp_rejects_identity_kernel() {
    let o = run(&["cftp", "--kernel", &fx("identity.kernel")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not ergodic"));
}

#[test]
fn input_errors_exit_two_with_line_numbers() {
    let dir = scratch("bad");
    fs::write(dir.join("bad.poset"), "element a\n# comment\ncover a b\n").unwrap();
    let o = run(&["classify", "--poset", dir.join("bad.poset").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let o = run(&["classify", "--poset", dir.join("missing.poset").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(dir.join("sum.measures"), "measure m\nmass x 1/2\n").unwrap();
    fs::write(
        dir.join("sum.system"),
        format!("index {0}\nstate {0}\nmeasures sum.measures\n", fx("example.poset")),
    )
    .unwrap();
    let o = run(&["check", "--system", dir.join("sum.system").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sum.measures"));
}

#[test]
fn caps_exit_three() {
    let o = run(&["check", "--system", &fx("example.system"), "--cap-tuples", "3"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = run(&["check", "--system", &fx("example.system"), "--cap-upsets", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["classify", "--poset", &fx("example.poset"), "--cap-trees", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn library_and_binary_agree_on_realizability() {
    let sys: MeasureSystem = load_system(&fixture("example.system")).unwrap();
    assert!(matches!(
        realmono::coupling::realize(&sys, DEFAULT_TUPLE_CAP).unwrap(),
        Realization::Feasible(_)
    ));
}
