use std::path::{Path, PathBuf};
use std::process::Command;

use polysum::{oracle_sum, Polytope, Vector};
use polysum_cli::cdd::{parse_file, write_file, Representation};
use polysum_cli::run_with;
use proptest::prelude::*;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn polysum(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["polysum"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn load(path: impl AsRef<Path>) -> Polytope {
    parse_file(&std::fs::read_to_string(path).unwrap()).unwrap().to_polytope().unwrap()
}

fn octagon() -> Polytope {
    oracle_sum(&load(data("square.ine")), &load(data("diamond.ine"))).unwrap()
}

#[test]
fn sum_with_check_writes_octagon_files() {
    let dir = tempfile::tempdir().unwrap();
    let ine: PathBuf = dir.path().join("oct.ine");
    let ext: PathBuf = dir.path().join("oct.ext");
    let (code, _, err) = polysum(&[
        "sum",
        &data("square.ine"),
        &data("diamond.ine"),
        "--method",
        "dual-opt",
        "--check",
        "-o",
        ine.to_str().unwrap(),
        "--ext",
        ext.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    for path in [&ine, &ext] {
        let file = parse_file(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(file.rows.len(), 8);
        assert_eq!(file.to_polytope().unwrap(), octagon());
    }
}

#[test]
fn every_method_prints_the_same_sum() {
    let outputs: Vec<String> = ["dual", "dual-opt", "primal", "oracle"]
        .iter()
        .map(|m| {
            let (code, out, err) =
                polysum(&["sum", &data("square.ext"), &data("diamond.ine"), "--method", m, "--witnesses"]);
            assert_eq!(code, 0, "{m}: {err}");
            out
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    assert!(outputs[0].contains("* (2, 1) = a[3] + b[3] = (1, 1) + (1, 0)"));
    assert_eq!(parse_file(&outputs[0]).unwrap().to_polytope().unwrap(), octagon());
}

#[test]
fn lower_dimensional_input_is_a_precondition_failure() {
    let (code, _, err) = polysum(&["sum", &data("seg.ext"), &data("seg2.ext"), "--method", "dual"]);
    assert_eq!(code, 2);
    assert!(err.contains("not full-dimensional"));
    for m in ["dual-opt", "primal"] {
        assert_eq!(polysum(&["sum", &data("seg.ext"), &data("seg2.ext"), "--method", m]).0, 2);
    }
    let (code, out, _) = polysum(&["sum", &data("seg.ext"), &data("seg2.ext"), "--method", "oracle"]);
    assert_eq!(code, 0);
    assert_eq!(parse_file(&out).unwrap().to_polytope().unwrap(), Polytope::cube(2));
}

#[test]
fn doubled_cube() {
    let (code, out, _) = polysum(&["sum", &data("cube.ine"), &data("cube.ine"), "--method", "primal"]);
    assert_eq!(code, 0);
    let doubled: Vec<Vector> = Polytope::cube(3).vertices().iter().map(|v| v + v).collect();
    assert_eq!(parse_file(&out).unwrap().to_polytope().unwrap(), Polytope::from_vertices(3, &doubled).unwrap());
}

#[test]
fn seed_override() {
    // The seed only picks the starting vertex, so the output is unchanged.
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_polysum"));
        cmd.args(["sum", &data("hexagon.ext"), &data("diamond.ext"), "--method", "primal", "--witnesses"]);
        match seed {
            Some(s) => cmd.env("POLYSUM_SEED", s),
            None => cmd.env_remove("POLYSUM_SEED"),
        };
        let out = cmd.output().unwrap();
        (out.status.code(), out.stdout, String::from_utf8(out.stderr).unwrap())
    };
    let (code, reference, _) = run(None);
    assert_eq!(code, Some(0));
    for seed in ["0", "12345", "18446744073709551615"] {
        assert_eq!(run(Some(seed)), (Some(0), reference.clone(), String::new()));
    }
    let (code, _, err) = run(Some("not-a-number"));
    assert_eq!(code, Some(1));
    assert!(err.contains("POLYSUM_SEED"));
}

#[test]
fn convert_counts() {
    let (code, out, _) = polysum(&["convert", &data("cube6.ine"), "--to", "V"]);
    assert_eq!(code, 0);
    let file = parse_file(&out).unwrap();
    assert_eq!(file.representation, Representation::V);
    assert_eq!(file.rows.len(), 64);

    let (code, out, _) = polysum(&["convert", &data("simplex3.ext"), "--to", "H"]);
    assert_eq!(code, 0);
    assert_eq!(parse_file(&out).unwrap().rows.len(), 4);

    let (_, out, _) = polysum(&["convert", &data("thirds.ext"), "--to", "V"]);
    assert!(out.contains("3 3 rational") && out.contains("1 1/3 0") && out.contains("1 0 2/3"));
}

#[test]
fn validate_reports() {
    assert_eq!(polysum(&["validate", &data("square.ine")]), (0, "ok\n".into(), String::new()));
    let (code, out, _) = polysum(&["validate", &data("redundant.ine")]);
    assert_eq!(code, 1);
    assert_eq!(out, "violation: redundant facet 4\nviolation: redundant facet 5\n");
    let (code, out, _) = polysum(&["validate", &data("hexagon.ext")]);
    assert_eq!(code, 1);
    assert_eq!(out, "violation: vertex 6 is not extreme\nviolation: vertex 7 is not extreme\n");
    let (code, out, _) = polysum(&["validate", &data("seg.ext")]);
    assert_eq!(code, 1);
    assert!(out.contains("not full-dimensional"));
}

#[test]
fn cap_of_square_corner() {
    let (code, out, _) = polysum(&["cap", &data("square.ine"), &data("diamond.ine"), "--vertex", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "anchor a[3] = (1, 1)\nmember b[2] = (0, 1)\nmember b[3] = (1, 0)\nconnected: yes\n");
    assert_eq!(polysum(&["cap", &data("square.ine"), &data("diamond.ine"), "--vertex", "9"]).0, 1);
}

#[test]
fn bench_counts_are_on_stdout_and_timings_on_stderr() {
    let (code, out, err) = polysum(&["bench", &data("square.ine"), &data("diamond.ine"), "--repeat", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("dual cone operations: 16\n"));
    let opt: usize = out
        .lines()
        .find_map(|l| l.strip_prefix("dual-opt cone operations: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(opt <= 16);
    assert!(!out.contains(" ms"));
    assert_eq!(err.lines().filter(|l| l.contains("(mean of 2)")).count(), 4);
}

#[test]
fn input_errors_exit_with_one() {
    let (code, _, err) = polysum(&["sum", &data("broken.ine"), &data("square.ine")]);
    assert_eq!(code, 1);
    assert!(err.contains("line 5, column 5"));
    assert_eq!(polysum(&["sum", &data("ray.ext"), &data("square.ine")]).0, 1);
    assert_eq!(polysum(&["sum", &data("square.ine"), &data("cube.ine")]).0, 1);
    assert_eq!(polysum(&["sum", &data("missing.ine"), &data("square.ine")]).0, 1);
    assert_eq!(polysum(&["sum", &data("square.ine"), &data("square.ine"), "--method", "fast"]).0, 1);
    assert_eq!(polysum(&["frobnicate"]).0, 1);
    assert_eq!(polysum(&["--help"]).0, 0);
}

#[test]
fn shipped_corpus_passes_check() {
    let full = ["square.ine", "diamond.ine", "square.ext", "diamond.ext", "hexagon.ext", "thirds.ext"];
    for a in full {
        for b in full {
            for m in ["dual", "dual-opt", "primal"] {
                let (code, _, err) = polysum(&["sum", &data(a), &data(b), "--method", m, "--check"]);
                assert_eq!(code, 0, "{a} + {b} ({m}): {err}");
            }
        }
    }
    for m in ["dual", "dual-opt", "primal"] {
        assert_eq!(polysum(&["sum", &data("cube.ine"), &data("simplex3.ext"), "--method", m, "--check"]).0, 0);
    }
}

fn random_polytope() -> impl Strategy<Value = Polytope> {
    (2usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(-6i64..=6, n), 5..12)))
        .prop_filter_map("lower-dimensional", |(n, pts)| {
            let pts: Vec<Vector> = pts.iter().map(|c| Vector::from_ints(c)).collect();
            Polytope::from_vertices(n, &pts).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn write_then_parse_is_identity(p in random_polytope(), scale in 1i64..=4) {
        let p = Polytope::from_vertices(
            p.dim(),
            &p.vertices().iter().map(|v| v.scale(&polysum::Rational::new(1.into(), scale.into()))).collect::<Vec<_>>(),
        ).unwrap();
        for rep in [Representation::H, Representation::V] {
            let text = write_file(&p, rep);
            let back = parse_file(&text).unwrap();
            prop_assert_eq!(back.representation, rep);
            prop_assert_eq!(&back.to_polytope().unwrap(), &p);
            prop_assert_eq!(write_file(&back.to_polytope().unwrap(), rep), text);
        }
    }
}
