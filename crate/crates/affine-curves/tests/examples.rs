mod common;

use std::process::Command;

use affine_curves::curve::Curve;
use affine_curves::equivalence::{affine_equivalences, symmetries, Options, Status, Tag};
use affine_curves::exact::{Gr, MultiPoly, RatFunc, Var};
use affine_curves::moebius::MoebiusMap;

use common::*;

fn affine(a: i64, b: i64) -> MoebiusMap {
    MoebiusMap::affine(Gr::from_int(a), Gr::from_int(b))
}

#[test]
fn spiral_pair() {
    let (p, q) = (shipped("spiral_p"), shipped("spiral_q"));
    let r = affine_equivalences(&p, &q, &Options::default()).unwrap();
    assert_eq!(r.status, Status::EquivalencesFound);
    assert_eq!(r.equivalences.len(), 2);
    let a1 = ints(&[&[1, -1, 1], &[2, -1, 1], &[0, 0, 1]]);
    let a2 = ints(&[&[-1, 1, -1], &[2, -1, 1], &[0, 0, -1]]);
    let b1 = ints(&[&[0, -1, 1]]).remove(0);
    let b2 = ints(&[&[0, -1, -1]]).remove(0);
    let find = |phi: &MoebiusMap| r.equivalences.iter().find(|e| &e.phi == phi).expect("map present");
    let e1 = find(&affine(-2, 0));
    let e2 = find(&affine(2, 0));
    assert_eq!((&e1.a, &e1.b), (&a1, &b1));
    assert_eq!((&e2.a, &e2.b), (&a2, &b2));
    assert!(e1.has(Tag::Real) && e2.has(Tag::Real));
}

#[test]
fn catenary_families() {
    let (p, q) = (shipped("catenary_p"), shipped("catenary_q"));
    let r = affine_equivalences(&p, &q, &Options::default()).unwrap();
    assert_eq!(r.status, Status::EquivalencesFound);
    let third = |rows: &[&[i64]]| -> Vec<Vec<Gr>> {
        rows.iter().map(|row| row.iter().map(|&x| Gr::from_frac(x, 3)).collect()).collect()
    };
    // phi = 2z + beta with e^beta = +-1, and phi = -2z + beta with e^beta = +-1
    let want = [
        (2, 1, third(&[&[1, 1], &[-2, 1]]), [-1, 2]),
        (2, -1, third(&[&[1, 1], &[2, -1]]), [-1, -2]),
        (-2, 1, third(&[&[-1, -1], &[-2, 1]]), [1, 2]),
        (-2, -1, third(&[&[-1, -1], &[2, -1]]), [1, -2]),
    ];
    assert_eq!(r.equivalences.len(), want.len());
    for (slope, s, a, b) in want {
        let e = r
            .equivalences
            .iter()
            .find(|e| e.phi == affine(slope, 0) && e.shift.as_ref().is_some_and(|sh| sh.s == Gr::from_int(s)))
            .unwrap_or_else(|| panic!("family slope {slope}, s {s}"));
        assert_eq!(e.a, a);
        assert_eq!(e.b, vec![Gr::from_frac(b[0], 3), Gr::from_frac(b[1], 3)]);
        assert_eq!(e.b_beta, vec![Gr::from_int(1), Gr::from_int(0)]);
        assert_eq!(e.has(Tag::Real), s == 1);
    }
}

/// Floating-point oracle: with `phi = -2z` (beta = 0) only the `e^beta = 1`
/// matrix maps the catenary pair; the `e^beta = -1` one flips the sign of cosh.
#[test]
fn catenary_real_members_by_evaluation() {
    let p = |z: f64| [2.0 * z - (2.0 * z).cosh() + 1.0, 4.0 * z + (2.0 * z).cosh()];
    let q = |z: f64| [z, z.cosh()];
    let apply = |a: [[f64; 2]; 2], b: [f64; 2], x: [f64; 2]| {
        [a[0][0] * x[0] + a[0][1] * x[1] + b[0], a[1][0] * x[0] + a[1][1] * x[1] + b[1]]
    };
    let t = 1.0 / 3.0;
    let good = ([[-t, -t], [-2.0 * t, t]], [t, 2.0 * t]);
    let bad = ([[-t, -t], [2.0 * t, -t]], [t, -2.0 * t]);
    let mut bad_err: f64 = 0.0;
    for k in -5..=5 {
        let z = 0.37 * k as f64;
        let (g, want) = (apply(good.0, good.1, p(z)), q(-2.0 * z));
        assert!((g[0] - want[0]).abs() < 1e-9 && (g[1] - want[1]).abs() < 1e-9 * want[1].abs());
        let b = apply(bad.0, bad.1, p(z));
        bad_err = bad_err.max((b[1] - want[1]).abs());
    }
    assert!(bad_err > 1.0);
}

#[test]
fn cubic_is_degenerate() {
    let c = shipped("cubic");
    let r = symmetries(&c, &Options::default()).unwrap();
    assert_eq!(r.status, Status::DegenerateInvariants);
    assert!(r.equivalences.is_empty());
}

#[test]
fn parabola_has_vanishing_denominators() {
    let c = Curve::from_int_coeffs(&[vec![0, 1], vec![0, 0, 1]]).unwrap();
    let r = symmetries(&c, &Options::default()).unwrap();
    assert_eq!(r.status, Status::DegenerateInvariants);
}

#[test]
fn even_image_symmetry() {
    let c = shipped("even_image");
    assert!(symmetries(&c, &Options::default()).is_err());
    let r = symmetries(&c, &Options { allow_improper: true, ..Options::default() }).unwrap();
    assert!(r.diagnostics.improper);
    let flip = r.equivalences.iter().find(|e| e.phi == affine(-1, 0)).expect("z -> -z");
    assert_eq!(flip.a, ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    assert!(flip.b.iter().all(|x| *x == Gr::from_int(0)));
}

#[test]
fn plane_symmetric_quartic() {
    // (z, z^4 + z^2) is symmetric under z -> -z with A = diag(-1, 1)
    let c = Curve::from_int_coeffs(&[vec![0, 1], vec![0, 0, 1, 0, 1]]).unwrap();
    let r = symmetries(&c, &Options::default()).unwrap();
    let flip = r.equivalences.iter().find(|e| e.phi == affine(-1, 0)).expect("reflection");
    assert_eq!(flip.a, ints(&[&[-1, 0], &[0, 1]]));
    assert!(flip.has(Tag::Orthogonal));
    assert!(r.equivalences.iter().any(|e| e.has(Tag::Identity)));
}

#[test]
fn unrelated_curves_are_not_equivalent() {
    let p = Curve::from_int_coeffs(&[vec![0, 1], vec![0, 1, 0, 0, 1]]).unwrap();
    let q = Curve::from_int_coeffs(&[vec![0, 1], vec![0, 1, 0, 0, 0, 1]]).unwrap();
    let r = affine_equivalences(&p, &q, &Options::default()).unwrap();
    assert_eq!(r.status, Status::NotEquivalent);
}

#[test]
fn routes_agree_on_shipped_spiral() {
    let (p, q) = (shipped("spiral_p"), shipped("spiral_q"));
    let mut maps = Vec::new();
    for route in [
        affine_curves::equivalence::Route::Specialized,
        affine_curves::equivalence::Route::Materialized,
    ] {
        let r = affine_equivalences(&p, &q, &Options { route, ..Options::default() }).unwrap();
        maps.push(r.equivalences.iter().map(|e| (e.phi.clone(), e.a.clone(), e.b.clone())).collect::<Vec<_>>());
    }
    assert_eq!(maps[0], maps[1]);
}

#[test]
fn rational_curve_with_inversion() {
    // q = p ∘ (1/z) exercises a non-affine map
    let p = Curve::rational(vec![
        RatFunc::new(MultiPoly::from_univariate(Var::Z, &[Gr::from_int(1), Gr::from_int(0), Gr::from_int(2)]), MultiPoly::from_univariate(Var::Z, &[Gr::from_int(3), Gr::from_int(1)])),
        RatFunc::from_poly(MultiPoly::from_univariate(Var::Z, &[Gr::from_int(0), Gr::from_int(1), Gr::from_int(-1), Gr::from_int(1)])),
    ])
    .unwrap();
    let inv = MoebiusMap::from_ints(0, 1, 1, 0).unwrap();
    let q = p.compose(&inv).unwrap();
    let r = affine_equivalences(&p, &q, &Options::default()).unwrap();
    let e = r.equivalences.iter().find(|e| e.phi == inv).expect("inversion");
    assert_eq!(e.a, ints(&[&[1, 0], &[0, 1]]));
}

// ---- command line ----

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_affine-curves"))
        .args(args)
        .arg("--template-cache")
        .arg(std::env::temp_dir().join("affine-curves-test-cache"))
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn path(name: &str) -> String {
    curves_dir().join(format!("{name}.curve")).to_string_lossy().into_owned()
}

#[test]
fn cli_exit_codes() {
    let (code, out) = cli(&["equiv", &path("spiral_p"), &path("spiral_q")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("status: equivalences-found"));
    let (code, out) = cli(&["symmetries", &path("cubic")]);
    assert_eq!(code, 2);
    assert!(out.contains("all the Möbius-commuting invariants are constant"));
    let (code, out) = cli(&["invariants", "--dim", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("F_2"));
    assert_eq!(cli(&["frobnicate"]).0, 3);
    assert_eq!(cli(&["equiv", &path("spiral_p")]).0, 3);
    assert_eq!(cli(&["equiv", "/nonexistent.curve", &path("spiral_q")]).0, 4);
    assert_eq!(cli(&["symmetries", &path("even_image")]).0, 5);
}

#[test]
fn cli_not_equivalent() {
    let dir = std::env::temp_dir();
    let a = dir.join("affine-curves-a.curve");
    let b = dir.join("affine-curves-b.curve");
    std::fs::write(&a, "dim 2\nz\nz + z^4\n").unwrap();
    std::fs::write(&b, "dim 2\nz\nz + z^5\n").unwrap();
    let (code, out) = cli(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("result: not affinely equivalent"));
}

#[test]
fn cli_parse_error_names_the_line() {
    let bad = std::env::temp_dir().join("affine-curves-bad.curve");
    std::fs::write(&bad, "dim 2\nz\nz^2 +* 1\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_affine-curves"))
        .args(["symmetries", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}
