use std::path::PathBuf;

use nsw_cli::{run, EXIT_INPUT, EXIT_OK, EXIT_SAT, EXIT_UNSAT};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn nsw(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nsw").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn width_of_running_example() {
    let (code, out, _) = nsw(&["nsw", &data("h0.hg"), "--oracle"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("nsw = 2\n"), "{out}");
    assert!(out.contains("oracle agrees"));

    let (code, out, _) = nsw(&["nsw", &data("h0.hg"), "--max-k", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "nsw > 1\n");

    let (_, out, _) = nsw(&["nsw", &data("h0.hg"), "--format", "tsv"]);
    assert!(out.starts_with("nsw\t2\nneo\t"), "{out}");
}

#[test]
fn nest_set_verdicts() {
    let (code, out, _) = nsw(&["nest-set", &data("h0.hg"), "--set", "c"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "{c} is not a nest-set\n");
    let (_, out, _) = nsw(&["nest-set", &data("h0.hg"), "--set", "f"]);
    assert!(out.starts_with("{f} is a nest-set\nguard "), "{out}");
    let (code, _, err) = nsw(&["nest-set", &data("h0.hg"), "--set", "zz"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("zz"));
}

#[test]
fn neo_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (code, neo, _) = nsw(&["neo", &data("h0.hg"), "-k", "2"]);
    assert_eq!(code, EXIT_OK);
    let path = dir.path().join("h0.neo");
    std::fs::write(&path, neo).unwrap();
    let (code, out, _) = nsw(&[
        "validate-neo",
        &data("h0.hg"),
        path.to_str().unwrap(),
        "-k",
        "2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("valid 2-NEO"), "{out}");

    let (_, out, _) = nsw(&["validate-neo", &data("h0.hg"), &data("h0.neo"), "-k", "2"]);
    assert_eq!(out, "valid 2-NEO ({c,f}, {b,e}, {a,d})\n");
    let (code, out, _) = nsw(&["validate-neo", &data("h0.hg"), &data("h0.neo"), "-k", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("invalid 1-NEO: entry 1"), "{out}");

    let (_, out, _) = nsw(&["neo", &data("h0.hg"), "-k", "1"]);
    assert_eq!(out, "# no 1-NEO exists: nsw > 1\n");
}

#[test]
fn decomposition_and_acyclicity() {
    let (code, out, _) = nsw(&["ghtd", &data("h0.hg"), "-k", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("node 0 parent=-"), "{out}");
    assert!(out.ends_with("valid\n"), "{out}");
    let (_, out, _) = nsw(&["beta-acyclic", &data("h0.hg")]);
    assert_eq!(out, "beta-acyclic: no\n");
}

#[test]
fn query_evaluation() {
    let (code, out, _) = nsw(&[
        "cq-eval",
        &data("triangle.q"),
        &data("triangle.db"),
        "--oracle",
        "--trace",
    ]);
    assert_eq!(code, EXIT_SAT);
    assert!(out.contains("step 1: eliminate"), "{out}");
    assert!(out.ends_with("SAT\noracle agrees\n"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.db");
    std::fs::write(&bad, "domain 4\nrelation R 2\n0 9\n").unwrap();
    let (code, _, err) = nsw(&["cq-eval", &data("triangle.q"), bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("bad.db: line 3"), "{err}");
}

#[test]
fn sat_solving() {
    let (code, out, _) = nsw(&["sat", &data("contradiction.cnf")]);
    assert_eq!(code, EXIT_UNSAT);
    assert_eq!(out, "s UNSATISFIABLE\n");
    let (code, out, _) = nsw(&["sat", &data("contradiction.cnf"), "--via-cq", "--oracle"]);
    assert_eq!(code, EXIT_UNSAT);
    assert!(out.contains("s UNSATISFIABLE"));
    let (_, out, _) = nsw(&[
        "sat",
        &data("contradiction.cnf"),
        "--stats",
        "--format",
        "tsv",
    ]);
    assert!(out.starts_with("nsw\t1\n"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cnf");
    std::fs::write(&bad, "p cnf 2 1\n1 x 0\n").unwrap();
    let (code, _, err) = nsw(&["sat", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn generators_feed_the_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let (code, cycle, _) = nsw(&["gen", "cycle", "-n", "5"]);
    assert_eq!(code, EXIT_OK);
    let path = dir.path().join("c5.hg");
    std::fs::write(&path, cycle).unwrap();
    let (_, out, _) = nsw(&["nsw", path.to_str().unwrap()]);
    assert!(out.starts_with("nsw = 4\n"));

    let (code, gadget, _) = nsw(&["gen", "vc", &data("path.graph"), "-k", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(gadget.contains("f1_1("));

    let (code, cnf, _) = nsw(&[
        "gen",
        "random",
        "--seed",
        "3",
        "cnf",
        "--vars",
        "6",
        "--clauses",
        "10",
    ]);
    assert_eq!(code, EXIT_OK);
    let path = dir.path().join("r.cnf");
    std::fs::write(&path, cnf).unwrap();
    let (code, _, _) = nsw(&["sat", path.to_str().unwrap(), "--oracle"]);
    assert!(code == EXIT_SAT || code == EXIT_UNSAT);

    let prefix = dir.path().join("rq");
    let (code, _, _) = nsw(&["gen", "random", "query", "--out", prefix.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (q, db) = (prefix.with_extension("q"), prefix.with_extension("db"));
    let (code, _, _) = nsw(&[
        "cq-eval",
        q.to_str().unwrap(),
        db.to_str().unwrap(),
        "--oracle",
    ]);
    assert!(code == EXIT_SAT || code == EXIT_UNSAT);

    let (a, _, _) = nsw(&["gen", "random", "--seed", "9", "hypergraph"]);
    let (b, first, _) = nsw(&["gen", "random", "--seed", "9", "hypergraph"]);
    let (_, second, _) = nsw(&["gen", "random", "--seed", "9", "hypergraph"]);
    assert_eq!((a, b), (EXIT_OK, EXIT_OK));
    assert_eq!(first, second);
}

#[test]
fn usage_errors() {
    let (code, _, err) = nsw(&["nsw"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(!err.is_empty());
    let (code, _, err) = nsw(&["nsw", "/nonexistent/file.hg"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("/nonexistent/file.hg"));
    let (code, out, _) = nsw(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("cq-eval"));
}
