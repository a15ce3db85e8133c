mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use common::strategies::document;
use proptest::prelude::*;
use quiverlink::document::{parse_quiver, serialize_quiver};
use tempfile::TempDir;

const INTRO: &str = "# the two-cycle example\nquiver intro\nvertex 0\nvertex 1\narrow a 0 0\narrow c 0 1\narrow d 1 0\ntwocycle cd c d\npair p 0 1\n";
const LOOP: &str = "quiver loop\nvertex 0\nvertex 1\narrow a 0 0\n";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_quiverlink"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn fixture(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_unlink_on_intro_succeeds() {
    let dir = TempDir::new().unwrap();
    let q = fixture(&dir, "intro.quiver", INTRO);
    let r = run(&[
        "verify",
        "unlink",
        "-q",
        s(&q),
        "--c",
        "c",
        "--d",
        "d",
        "--max-weight",
        "6",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.lines().count(), 28);
    assert!(r
        .stdout
        .lines()
        .all(|l| l.starts_with("UNLINK ") && l.ends_with(" OK")));
    assert!(r.stdout.contains("UNLINK 0:1,1:1 OK\n"));
    let named = run(&[
        "verify",
        "unlink",
        "-q",
        s(&q),
        "--twocycle",
        "cd",
        "--max-weight",
        "6",
    ]);
    assert_eq!(named.stdout, r.stdout);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let q = fixture(&dir, "intro.quiver", INTRO);
    let a = run(&[
        "verify",
        "link",
        "-q",
        s(&q),
        "--pair",
        "p",
        "--max-weight",
        "4",
    ]);
    let b = run(&[
        "verify",
        "link",
        "-q",
        s(&q),
        "--pair",
        "p",
        "--max-weight",
        "4",
    ]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_acyclicity() {
    let r = run(&["verify", "acyclicity", "--n", "15"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 15);
    assert!(r.stdout.starts_with("ACYC n=1 OK\n"));
    assert!(r.stdout.ends_with("ACYC n=15 OK\n"));
}

#[test]
fn bad_pointer_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let q = fixture(&dir, "intro.quiver", INTRO);
    let r = run(&["verify", "unlink", "-q", s(&q), "--c", "nope", "--d", "d"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("`nope` is not an arrow"), "{}", r.stderr);
    assert!(r.stdout.is_empty());
    // c and a do not form a two-cycle
    assert_eq!(
        run(&["verify", "unlink", "-q", s(&q), "--c", "a", "--d", "d"]).code,
        2
    );
    assert_eq!(run(&["verify", "unlink", "-q", s(&q)]).code, 2);
    assert_eq!(run(&["verify"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn parse_errors_are_reported_with_positions() {
    let dir = TempDir::new().unwrap();
    let q = fixture(
        &dir,
        "bad.quiver",
        "quiver q\nvertex 0\narrow x 0 0 extra\n",
    );
    let r = run(&["show", "-q", s(&q)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3, column 13"), "{}", r.stderr);
    let q = fixture(
        &dir,
        "dup.quiver",
        "quiver q\nvertex 0\nvertex 1\narrow c 0 1\narrow c 0 1\n",
    );
    let r = run(&["show", "-q", s(&q)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 5"), "{}", r.stderr);
    assert_eq!(run(&["show", "-q", s(&dir.path().join("missing"))]).code, 2);
}

#[test]
fn tampered_dump_is_a_counterexample() {
    let dir = TempDir::new().unwrap();
    let q = fixture(&dir, "intro.quiver", INTRO);
    let dump = dir.path().join("intro.series");
    let r = run(&["series", "-q", s(&q), "--max-weight", "4", "-o", s(&dump)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let ok = run(&[
        "verify",
        "series",
        "-q",
        s(&q),
        "--max-weight",
        "4",
        "--against",
        s(&dump),
    ]);
    assert_eq!(ok.code, 0, "{}", ok.stderr);

    let text = fs::read_to_string(&dump).unwrap();
    let tampered: String = text
        .lines()
        .map(|l| {
            if l.starts_with("0:1,1:1\t") {
                "0:1,1:1\t(1*s^1)/(1*s^0 + -2*s^2 + 1*s^4)".to_string()
            } else {
                l.to_string()
            }
        })
        .map(|l| l + "\n")
        .collect();
    assert_ne!(tampered, text);
    let bad = fixture(&dir, "tampered.series", &tampered);
    let r = run(&[
        "verify",
        "series",
        "-q",
        s(&q),
        "--max-weight",
        "4",
        "--against",
        s(&bad),
    ]);
    assert_eq!(r.code, 1);
    let fails: Vec<&str> = r.stdout.lines().filter(|l| l.contains("FAIL")).collect();
    assert_eq!(fails.len(), 1);
    assert!(
        fails[0].starts_with("SERIES 0:1,1:1 FAIL lhs=(-1*s^-1)/("),
        "{}",
        fails[0]
    );
    assert!(
        fails[0].ends_with("rhs=(1*s^1)/(1*s^0 + -2*s^2 + 1*s^4)"),
        "{}",
        fails[0]
    );
}

#[test]
fn mutation_commands() {
    let dir = TempDir::new().unwrap();
    let q = fixture(&dir, "intro.quiver", INTRO);
    let r = run(&["unlink", "-q", s(&q), "--c", "c", "--d", "d"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "quiver intro_U\nvertex 0\nvertex 1\nvertex star\narrow a 0 0\narrow a^star star 0\narrow a_star 0 star\narrow a^star_star star star\narrow c^star_star star star\n"
    );
    let m = run(&["unlink", "-q", s(&q), "--twocycle", "cd", "--label-map"]);
    assert_eq!(
        m.stdout,
        "a -> a,a^star,a_star,a^star_star\nc -> c^star_star\nd -> \n"
    );

    let l = fixture(&dir, "loop.quiver", LOOP);
    let out = dir.path().join("loop_L.quiver");
    let r = run(&["link", "-q", s(&l), "--v0", "0", "--v1", "1", "-o", s(&out)]);
    assert_eq!(r.code, 0);
    let linked = fs::read_to_string(&out).unwrap();
    assert!(linked.contains("vertex square\n"));
    assert!(linked.ends_with("twocycle distinguished alpha_square beta_square\n"));
    // the linked file can be unlinked at its recorded two-cycle
    let lu = run(&["unlink", "-q", s(&out), "--twocycle", "distinguished"]);
    assert_eq!(lu.code, 0);
    assert_eq!(
        lu.stdout
            .lines()
            .filter(|l| l.starts_with("arrow "))
            .count(),
        10
    );

    let t = run(&["twocycle", "-q", s(&l), "--v0", "0", "--v1", "1"]);
    assert!(t
        .stdout
        .contains("arrow c 0 1\narrow d 1 0\ntwocycle distinguished c d\n"));
}

#[test]
fn verification_commands_hold() {
    let dir = TempDir::new().unwrap();
    let q = fixture(&dir, "intro.quiver", INTRO);
    let l = fixture(&dir, "loop.quiver", LOOP);
    for (args, tag) in [
        (
            vec!["verify", "link", "-q", s(&l), "--v0", "0", "--v1", "1"],
            "LINK ",
        ),
        (
            vec![
                "verify",
                "filtration",
                "-q",
                s(&q),
                "--twocycle",
                "cd",
                "--max-weight",
                "5",
            ],
            "FILTRATION ",
        ),
        (
            vec![
                "verify",
                "framed",
                "-q",
                s(&l),
                "--v0",
                "0",
                "--v1",
                "1",
                "--max-weight",
                "4",
                "--max-k",
                "2",
            ],
            "FRAMED ",
        ),
        (
            vec![
                "verify",
                "euler",
                "-q",
                s(&l),
                "--v0",
                "0",
                "--v1",
                "1",
                "--max-weight",
                "5",
            ],
            "EULER ",
        ),
    ] {
        let r = run(&args);
        assert_eq!(r.code, 0, "{args:?}: {}{}", r.stderr, r.stdout);
        assert!(r.stdout.contains(tag));
        assert!(!r.stdout.contains("FAIL"));
    }
    let sym = fixture(
        &dir,
        "sym.quiver",
        "quiver sym\nvertex 0\nvertex 1\narrow c 0 1\narrow d 1 0\narrow a 1 1\n",
    );
    assert_eq!(run(&["verify", "lemma21", "-q", s(&sym)]).code, 0);
    // the adjacency series is only compared for symmetric quivers
    assert_eq!(run(&["verify", "lemma21", "-q", s(&l)]).code, 0);
    let arrow = fixture(
        &dir,
        "arrow.quiver",
        "quiver a\nvertex 0\nvertex 1\narrow x 0 1\n",
    );
    assert_eq!(run(&["verify", "lemma21", "-q", s(&arrow)]).code, 2);
}

#[test]
fn show_and_expand() {
    let dir = TempDir::new().unwrap();
    let q = fixture(&dir, "intro.quiver", INTRO);
    let r = run(&["show", "-q", s(&q)]);
    assert_eq!(r.code, 0);
    assert!(r
        .stdout
        .starts_with(&INTRO[INTRO.find("quiver").unwrap()..]));
    assert!(r
        .stdout
        .contains("# 2 vertices, 3 arrows, symmetric\n# 0: 1 1\n# 1: 1 0\n"));
    // the output of show is itself a valid file
    assert_eq!(
        parse_quiver(&r.stdout).unwrap(),
        parse_quiver(INTRO).unwrap()
    );

    let e = run(&["expand", "-q", s(&q), "--dim", "0:1,1:1", "--order", "5"]);
    assert_eq!(e.code, 0);
    assert_eq!(
        e.stdout,
        "# (-1*s^-1)/(1*s^0 + -2*s^2 + 1*s^4)\ns^-1\t-1\ns^1\t-2\ns^3\t-3\ns^5\t-4\n# + O(s^6)\n"
    );
    let v = run(&[
        "expand",
        "--value",
        "(1*s^0)/(1*s^0 + -1*s^2)",
        "--order",
        "4",
    ]);
    assert_eq!(
        v.stdout,
        "# (1*s^0)/(1*s^0 + -1*s^2)\ns^0\t1\ns^2\t1\ns^4\t1\n# + O(s^5)\n"
    );
    assert_eq!(
        run(&["expand", "--value", "(1*s^0)/(2*s^0 + 1*s^1)"]).code,
        2
    );
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn documents_round_trip(doc in document()) {
        let text = serialize_quiver(&doc);
        let back = parse_quiver(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize_quiver(&back), text);
    }
}
