use std::process::Command;

use serde::de::DeserializeOwned;
use serde::Serialize;

use reslat::cli::{
    run_with, ComplementOutput, DiscOutput, EigenOutput, Envelope, GenusOutput, HilbertOutput,
    HodgeOutput, LatticeInfo, PairLatticeOutput, QuasiSmoothOutput, SelftestOutput, SnfOutput,
};
use reslat::scenarios::{HorikawaReport, LatticeSplitReport, ModuliDimensions};

const RING: &str = "x0,x1,y,z;1,1,2,5";
const FERMAT: &str = "z^2-x0^10-x1^10-y^5";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("reslat").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Parses a JSON report, checks the schema tag, and checks that
/// re-serializing gives back the same bytes.
fn round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    let env: Envelope<T> = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(env.schema, 1);
    assert_eq!(serde_json::to_string(&env).unwrap() + "\n", r.stdout);
    env.report
}

#[test]
fn hodge_example() {
    let r = run(&["hodge", "--ring", RING, "--poly", FERMAT]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("[2, 28, 2]"), "{}", r.stdout);
    assert!(r.stderr.is_empty());
}

#[test]
fn moduli_example() {
    let r = run(&["scenario", "moduli", "--json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"schema": 1, "branch_data": 16, "hypersurface": 16})
    );
    let m: ModuliDimensions = round_trip(&["scenario", "moduli", "--json"]);
    assert_eq!(
        m,
        ModuliDimensions {
            branch_data: 16,
            hypersurface: 16
        }
    );
}

#[test]
fn genus_example() {
    let r = run(&["lattice", "genus", "--a", "U2+D4", "--b", "M"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "same genus: true\n"));
    let r = run(&["lattice", "genus", "--a", "U+U2+D4+E8", "--b", "T"]);
    assert_eq!(r.stdout, "same genus: true\n");
    let r = run(&["lattice", "genus", "--a", "U+D4", "--b", "M"]);
    assert_eq!(r.stdout, "same genus: false\n");
}

#[test]
fn json_reports_round_trip() {
    let h: HodgeOutput = round_trip(&[
        "hodge", "--ring", RING, "--poly", FERMAT, "--basis", "--json",
    ]);
    assert_eq!(h.hodge.0, vec![2, 28, 2]);
    assert_eq!(h.residue_basis.unwrap()[0], vec!["x0", "x1"]);

    let e: EigenOutput = round_trip(&[
        "eigen",
        "--ring",
        RING,
        "--poly",
        FERMAT,
        "--group",
        "2,2",
        "--action",
        "1,0,0,0;0,1,0,0",
        "--json",
    ]);
    assert_eq!(e.eigen.get(&[0, 1]).unwrap().0, vec![1, 14, 1]);
    assert_eq!(e.eigen.get(&[1, 0]).unwrap().0, vec![1, 14, 1]);

    let q: QuasiSmoothOutput =
        round_trip(&["quasismooth", "--ring", RING, "--poly", FERMAT, "--json"]);
    assert!(q.quasi_smooth);
    assert_eq!((q.degree, q.socle_degree), (10, 22));

    let hs: HilbertOutput = round_trip(&[
        "hilbert", "--ring", RING, "--poly", FERMAT, "--up-to", "27", "--json",
    ]);
    assert_eq!(hs.generator_degrees, vec![9, 9, 8, 5]);
    let dims: Vec<i64> = hs
        .quotient_dims
        .unwrap()
        .iter()
        .map(|&d| d as i64)
        .collect();
    assert_eq!(dims, hs.series);

    let info: LatticeInfo = round_trip(&["lattice", "info", "--a", "K3", "--json"]);
    assert_eq!(
        (info.rank, info.determinant, info.signature, info.even),
        (22, -1, (3, 19), true)
    );
    assert_eq!(info.discriminant_group, Some(vec![]));

    let snf: SnfOutput = round_trip(&["lattice", "snf", "--a", "[[2,1],[1,2]]", "--json"]);
    assert_eq!(snf.diagonal, vec![1, 3]);

    let disc: DiscOutput = round_trip(&["lattice", "disc", "--a", "A1", "--json"]);
    assert_eq!(disc.invariant_factors, vec![2]);
    assert_eq!(disc.q_values, vec!["3/2"]);
    assert_eq!(disc.b_values, vec![vec!["1/2"]]);

    let c: ComplementOutput = round_trip(&[
        "lattice",
        "complement",
        "--ambient",
        "E8",
        "--basis",
        "0,0,0,1,0,0,0,0",
        "--json",
    ]);
    assert_eq!((c.rank, c.signature), (7, (0, 7)));
    assert!(c.sublattice_primitive);

    let g: GenusOutput = round_trip(&["lattice", "genus", "--a", "U2+D4", "--b", "M", "--json"]);
    assert!(g.same_genus);

    let h: HorikawaReport = round_trip(&["scenario", "horikawa", "--json"]);
    assert_eq!(h.total.unwrap().0, vec![2, 28, 2]);

    let p: PairLatticeOutput = round_trip(&["scenario", "pair-lattice", "--json"]);
    assert_eq!(
        (p.determinant, p.signature, p.h_squared, p.h_dot_line),
        (-16, (1, 5), 2, 1)
    );
    assert_eq!(p.discriminant_group, vec![2, 2, 2, 2]);

    let k: LatticeSplitReport = round_trip(&["scenario", "k3-split", "--json"]);
    assert!(k.all_ok());
    assert_eq!(k.t_signature, (2, 14));
}

#[test]
fn selftest_is_deterministic_and_green() {
    let a = run(&["selftest", "--seed", "11", "--json"]);
    let b = run(&["selftest", "--seed", "11", "--json"]);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    let env: Envelope<SelftestOutput> = serde_json::from_str(&a.stdout).unwrap();
    assert!(env.report.all_passed);
    assert_eq!(env.report.criteria.len(), 8);
}

#[test]
fn polynomial_files_with_headers() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("horikawa_fermat.poly");
    std::fs::write(
        &path,
        "vars: x0,x1,y,z; weights: 1,1,2,5\nz^2 - x0^10 - x1^10 - y^5\n",
    )
    .unwrap();
    let r = run(&["hodge", "--file", path.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("[2, 28, 2]"));

    let bare = dir.join("quartic.poly");
    std::fs::write(&bare, "a^4 + b^4 + c^4 + d^4").unwrap();
    let r = run(&[
        "hodge",
        "--ring",
        "a,b,c,d;1,1,1,1",
        "--file",
        bare.to_str().unwrap(),
    ]);
    assert!(r.stdout.contains("[1, 19, 1]"));
    let r = run(&["hodge", "--file", bare.to_str().unwrap()]);
    assert_eq!(r.code, 1);
}

#[test]
fn domain_errors_exit_1() {
    for args in [
        vec!["hodge", "--ring", RING, "--poly", "z^2-x0^10-x1^10"],
        vec!["hodge", "--ring", RING, "--poly", "z^2 +* x0"],
        vec!["hodge", "--ring", RING, "--poly", "z^2 + q^10"],
        vec!["hodge", "--ring", RING, "--poly", "z^2 + x0"],
        vec!["hodge", "--ring", "x0,x1;1", "--poly", "x0"],
        vec![
            "eigen", "--ring", RING, "--poly", FERMAT, "--group", "4", "--action", "1,0,0,0",
        ],
        vec![
            "eigen", "--ring", RING, "--poly", FERMAT, "--group", "2", "--action", "1,0",
        ],
        vec!["scenario", "horikawa", "--quintic", "u^5+v^5"],
        vec!["lattice", "info", "--a", "Q7"],
        vec!["lattice", "disc", "--a", "[[1]]"],
        vec!["lattice", "info", "--a", "[[1,2],[3,4]]"],
        vec!["lattice", "genus", "--a", "[[0,1],[1,0]]", "--b", "[[0]]"],
        vec![
            "lattice",
            "complement",
            "--ambient",
            "U",
            "--basis",
            "1,2,3",
        ],
        vec!["hodge", "--file", "/nonexistent/poly.txt"],
    ] {
        let r = run(&args);
        assert_eq!(r.code, 1, "{args:?}: {}", r.stdout);
        assert!(r.stdout.is_empty(), "{args:?}");
        assert!(r.stderr.starts_with("error: "), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec![],
        vec!["frobnicate"],
        vec!["hodge", "--poly", FERMAT],
        vec!["hodge", "--ring", RING],
        vec!["hodge", "--ring", RING, "--poly", FERMAT, "--file", "x"],
        vec!["lattice", "genus", "--a", "M"],
        vec!["selftest", "--seed", "minus-one"],
    ] {
        let r = run(&args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(!r.stderr.is_empty());
    }
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("selftest"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_reslat");
    let ok = Command::new(bin)
        .args(["scenario", "moduli", "--json"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(ok.stdout).unwrap(),
        "{\"schema\":1,\"branch_data\":16,\"hypersurface\":16}\n"
    );
    let bad = Command::new(bin)
        .args(["lattice", "info", "--a", "[[1,"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).args(["lattice"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
