#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use affine_curves::curve::Curve;
use affine_curves::exact::matrix::det_const;
use affine_curves::exact::{Gr, MultiPoly, RatFunc, Var};
use affine_curves::io::read_curve;
use affine_curves::moebius::MoebiusMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn curves_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../curves")
}

pub fn shipped(name: &str) -> Curve {
    read_curve(&curves_dir().join(format!("{name}.curve"))).unwrap()
}

pub fn small_int(r: &mut ChaCha8Rng, bound: i64) -> Gr {
    Gr::from_int(r.gen_range(-bound..=bound))
}

pub fn small_gr(r: &mut ChaCha8Rng, bound: i64, complex: bool) -> Gr {
    if complex && r.gen_bool(0.5) {
        Gr::cplx(r.gen_range(-bound..=bound), r.gen_range(-bound..=bound))
    } else {
        small_int(r, bound)
    }
}

pub fn univariate(cs: &[Gr]) -> MultiPoly {
    MultiPoly::from_univariate(Var::Z, cs)
}

/// Polynomial curve of degree `d`, redrawn until proper and not in a hyperplane.
pub fn random_poly_curve(r: &mut ChaCha8Rng, n: usize, d: u32, complex: bool) -> Curve {
    loop {
        let comps: Vec<RatFunc> = (0..n)
            .map(|_| {
                let cs: Vec<Gr> = (0..=d).map(|_| small_gr(r, 5, complex)).collect();
                RatFunc::from_poly(univariate(&cs))
            })
            .collect();
        let Ok(c) = Curve::rational(comps) else { continue };
        if c.check_not_in_hyperplane() && c.check_proper_rational().unwrap_or(false) {
            return c;
        }
    }
}

/// Rational curve with a shared denominator of degree `e`.
pub fn random_rational_curve(r: &mut ChaCha8Rng, n: usize, d: u32, e: u32) -> Curve {
    loop {
        let den: Vec<Gr> = (0..=e).map(|_| small_int(r, 4)).collect();
        let den = univariate(&den);
        if den.is_zero() {
            continue;
        }
        let comps: Vec<RatFunc> = (0..n)
            .map(|_| {
                let cs: Vec<Gr> = (0..=d).map(|_| small_int(r, 5)).collect();
                RatFunc::new(univariate(&cs), den.clone())
            })
            .collect();
        let Ok(c) = Curve::rational(comps) else { continue };
        if c.check_not_in_hyperplane() && c.check_proper_rational().unwrap_or(false) {
            return c;
        }
    }
}

pub fn random_affine(r: &mut ChaCha8Rng, n: usize, complex: bool) -> (Vec<Vec<Gr>>, Vec<Gr>) {
    loop {
        let a: Vec<Vec<Gr>> = (0..n).map(|_| (0..n).map(|_| small_gr(r, 3, complex)).collect()).collect();
        if det_const(&a) != Gr::from_int(0) {
            let b = (0..n).map(|_| small_gr(r, 3, complex)).collect();
            return (a, b);
        }
    }
}

pub fn random_moebius(r: &mut ChaCha8Rng, complex: bool) -> MoebiusMap {
    loop {
        let c = if r.gen_bool(0.5) { Gr::from_int(0) } else { small_gr(r, 3, complex) };
        let d = small_gr(r, 3, complex);
        if let Ok(m) = MoebiusMap::new(small_gr(r, 3, complex), small_gr(r, 3, complex), c, d) {
            return m;
        }
    }
}

pub fn ints(rows: &[&[i64]]) -> Vec<Vec<Gr>> {
    rows.iter().map(|r| r.iter().map(|&x| Gr::from_int(x)).collect()).collect()
}

pub fn fracs(rows: &[&[(i64, i64)]]) -> Vec<Vec<Gr>> {
    rows.iter().map(|r| r.iter().map(|&(p, q)| Gr::from_frac(p, q)).collect()).collect()
}
