use std::fs;
use std::path::PathBuf;
use std::process::Command;

use canon_core::format::{write_cg, write_rs};
use canon_core::generate::{gen_family, platonic, Family, Lcg64, Platonic};
use canon_core::invariant::bf_canonical_order;
use canon_core::{apply_permutation, ColoredGraph, Labeling};

fn dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("golden");
    fs::create_dir_all(&d).unwrap();
    d
}

fn put(name: &str, text: &str) -> String {
    let path = dir().join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn canon(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_canon"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// The cg block after the labeling lines.
fn form(stdout: &str) -> &str {
    &stdout[stdout.find("cg 1").unwrap()..]
}

#[test]
fn separator_ranks_the_path_midpoint_first() {
    let p3 = put("p3.cg", "cg 1\nn 3\ne 1 2\ne 2 3\n");
    let (code, out, _) = canon(&["canon", "--method", "separator", "--invariant", "bf", "--r", "1", "--input", &p3]);
    assert_eq!(code, 0);
    assert!(out.starts_with("1 -> 2\n2 -> 1\n3 -> 3\n"), "{out}");
    assert_eq!(form(&out), "cg 1\nn 3\ne 1 2\ne 1 3\n");
}

#[test]
fn rigidity_forms_agree_on_relabeled_square() {
    let c4 = gen_family(Family::Cycle { n: 4 }, 0).unwrap();
    let a = put("c4.cg", &write_cg(&c4));
    let b = put(
        "c4b.cg",
        &write_cg(&apply_permutation(&c4, &Labeling::new(vec![3, 1, 0, 2]).unwrap()).unwrap()),
    );
    let flags = ["--method", "rigidity", "--invariant", "bf", "--r", "2", "--input"];
    let (_, out_a, _) = canon(&[&["canon"][..], &flags, &[&a]].concat());
    let (_, out_b, _) = canon(&[&["canon"][..], &flags, &[&b]].concat());
    assert_eq!(form(&out_a), form(&out_b));
}

#[test]
fn bf_method_passes_the_oracle_through() {
    for seed in 0..5 {
        let g = gen_family(Family::RandomGnp { n: 8, p_pct: 40 }, seed).unwrap();
        let path = put(&format!("gnp{seed}.cg"), &write_cg(&g));
        let (code, out, _) = canon(&["canon", "--method", "bf", "--input", &path]);
        assert_eq!(code, 0);
        let (order, _) = bf_canonical_order(&g).unwrap();
        let expected = apply_permutation(&g, &Labeling::from_order(&order).unwrap()).unwrap();
        assert_eq!(form(&out), write_cg(&expected));
    }
}

#[test]
fn iso_exit_codes() {
    let tree = gen_family(Family::Tree { n: 9 }, 11).unwrap();
    let t = put("t.cg", &write_cg(&tree));
    let u = put(
        "u.cg",
        &write_cg(&apply_permutation(&tree, &Lcg64::new(2).permutation(9)).unwrap()),
    );
    let (code, out, _) = canon(&["iso", &t, &u, "--invariant", "wl1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("isomorphic\n"));

    let (code, out, _) = canon(&["iso", &t, &t]);
    assert_eq!(code, 0);
    assert!(out.lines().skip(1).take(9).enumerate().all(|(i, l)| l == format!("{} -> {}", i + 1, i + 1)));

    let c6 = put("c6.cg", &write_cg(&gen_family(Family::Cycle { n: 6 }, 0).unwrap()));
    let two = ColoredGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
    let k3k3 = put("2k3.cg", &write_cg(&two));
    let (code, out, _) = canon(&["iso", &c6, &k3k3, "--invariant", "wl1", "--check"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("non-isomorphic\n"));
    assert!(out.contains("collision: wl1 codes agree on non-isomorphic graphs"), "{out}");
}

#[test]
fn oracle_and_embedding_reports() {
    let k4 = put("k4.cg", &write_cg(&gen_family(Family::Complete { n: 4 }, 0).unwrap()));
    let (code, out, _) = canon(&["rigidity", "--input", &k4]);
    assert_eq!(code, 0);
    assert!(out.starts_with("rig = 3\n"));

    let (_, out, _) = canon(&["aut", "--input", &k4]);
    assert!(out.starts_with("order = 24\n"));

    let (_, out, _) = canon(&["orbits", "--input", &k4]);
    assert_eq!(out, "1 2 3 4\n");

    let rs = put("k4.rs", &write_rs(&platonic(Platonic::Tetrahedron).1));
    let (code, out, _) = canon(&["embed", "faces", "--input", &rs]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("faces = 4"));
    assert_eq!(out.lines().filter(|l| !l.contains('=')).count(), 4);
    assert!(out.ends_with("genus = 0\n"));

    let (_, out, _) = canon(&["embed", "fixing-set", "--input", &rs]);
    assert!(out.contains("c = 1\n") && out.contains("verified = true\n"), "{out}");
}

#[test]
fn gen_is_seeded_and_bench_has_the_fixed_schema() {
    let args = ["gen", "--family", "random_gnp", "--n", "7", "--p", "40", "--seed", "3", "--count", "3", "--format", "graph6"];
    let (code, first, _) = canon(&args);
    assert_eq!(code, 0);
    assert_eq!(first.lines().count(), 3);
    assert_eq!(canon(&args).1, first);

    let (code, out, _) = canon(&[
        "bench", "--family", "k_tree", "--k", "2", "--n", "8", "--trials", "3", "--method", "separator", "--invariant", "wl1",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("family,n,seed,method,invariant,depth,invariant_calls,wall_ms,workers,diagnostics")
    );
    assert!(lines.all(|l| l.starts_with("k_tree,8,") && l.split(',').count() == 10));
}

#[test]
fn error_exit_codes() {
    let bad = put("bad.cg", "cg 1\nn 3\ne 2 1\n");
    let (code, _, err) = canon(&["canon", "--input", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error on line 3"), "{err}");

    let big = put("k12.cg", &write_cg(&gen_family(Family::Complete { n: 12 }, 0).unwrap()));
    let (code, _, err) = canon(&["canon", "--method", "bf", "--input", &big]);
    assert_eq!(code, 3);
    assert!(err.contains("cap"), "{err}");

    let (code, _, _) = canon(&["canon", "--invariant", "wlk:1", "--input", &bad]);
    assert_ne!(code, 0);
}
