//! Polynomial GCD: recursive subresultant PRS with content extraction, plus a
//! modular fast path for univariate polynomials with rational coefficients.

use num_traits::One;

use super::gaussian::Gr;
use super::modular;
use super::poly::{dense_divrem, Mono, MultiPoly, Var};

/// Greatest common divisor normalized to leading coefficient 1; `gcd(f, 0)` is `f` made monic.
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    gcd_inner(f, g, true).monic()
}

/// Same result computed without the modular fast path.
pub fn poly_gcd_prs(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    gcd_inner(f, g, false).monic()
}

fn gcd_inner(f: &MultiPoly, g: &MultiPoly, modular_ok: bool) -> MultiPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one();
    }
    if f.len() == 1 {
        return mono_gcd(&f.terms()[0].0, g);
    }
    if g.len() == 1 {
        return mono_gcd(&g.terms()[0].0, f);
    }
    if let (Some(u), Some(v)) = (f.univariate_var(), g.univariate_var()) {
        if u == v {
            return univariate_gcd(u, f, g, modular_ok);
        }
    }
    // pull out the monomial content first
    let mf = mono_content(f);
    let mg = mono_content(g);
    let mcommon = mono_min(&mf, &mg);
    let f = f.div_exact(&MultiPoly::term(mf, Gr::one())).unwrap();
    let g = g.div_exact(&MultiPoly::term(mg, Gr::one())).unwrap();
    let mut vars = f.vars();
    vars.extend(g.vars());
    vars.sort_unstable();
    vars.dedup();
    let core = recursive_gcd(&f, &g, &vars, modular_ok);
    core.mul_mono(&mcommon)
}

fn mono_content(f: &MultiPoly) -> Mono {
    let mut it = f.terms().iter();
    let first = it.next().unwrap().0.clone();
    it.fold(first, |acc, (m, _)| mono_min(&acc, m))
}

fn mono_min(a: &Mono, b: &Mono) -> Mono {
    let pairs: Vec<(Var, u32)> = a
        .0
        .iter()
        .filter_map(|&(v, e)| {
            let f = b.exp(v);
            (f > 0).then_some((v, e.min(f)))
        })
        .collect();
    Mono::from_pairs(&pairs)
}

fn mono_gcd(m: &Mono, g: &MultiPoly) -> MultiPoly {
    MultiPoly::term(mono_min(m, &mono_content(g)), Gr::one())
}

fn univariate_gcd(v: Var, f: &MultiPoly, g: &MultiPoly, modular_ok: bool) -> MultiPoly {
    if modular_ok && f.all_real() && g.all_real() {
        let a: Vec<_> = f.to_univariate(v).into_iter().map(|c| c.re).collect();
        let b: Vec<_> = g.to_univariate(v).into_iter().map(|c| c.re).collect();
        let r = modular::gcd_q(&a, &b);
        let r: Vec<Gr> = r.into_iter().map(Gr::real).collect();
        return MultiPoly::from_univariate(v, &r);
    }
    if modular_ok {
        let r = modular::gcd_gaussian(&f.to_univariate(v), &g.to_univariate(v));
        return MultiPoly::from_univariate(v, &r);
    }
    let mut a = f.to_univariate(v);
    let mut b = g.to_univariate(v);
    while !b.is_empty() {
        let (_, r) = dense_divrem(&a, &b);
        a = b;
        b = r;
        if let Some(lc) = b.last().cloned() {
            let inv = lc.inv().unwrap();
            b.iter_mut().for_each(|c| *c = &*c * &inv);
        }
    }
    MultiPoly::from_univariate(v, &a)
}

/// Content of `f` with respect to `x`: the gcd of its coefficients.
pub fn content_in(f: &MultiPoly, x: Var) -> MultiPoly {
    let coeffs = f.coeffs_in(x);
    let mut c = MultiPoly::zero();
    // smallest coefficients first tends to finish sooner
    let mut nonzero: Vec<&MultiPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| (c.total_degree(), c.len()));
    for k in nonzero {
        c = gcd_inner(&c, k, true);
        if c.is_constant() {
            return MultiPoly::one();
        }
    }
    c.monic()
}

fn recursive_gcd(f: &MultiPoly, g: &MultiPoly, vars: &[Var], modular_ok: bool) -> MultiPoly {
    // choose a main variable present in both if possible
    let x = match vars.iter().copied().find(|&v| f.contains_var(v) && g.contains_var(v)) {
        Some(x) => x,
        None => {
            // no shared variable: the gcd is a common content
            let v = vars[0];
            if f.contains_var(v) {
                return gcd_inner(&content_in(f, v), g, modular_ok);
            }
            return gcd_inner(f, &content_in(g, v), modular_ok);
        }
    };
    // variables absent from one side force the gcd into that side's coefficients
    for &v in vars {
        if f.contains_var(v) && !g.contains_var(v) {
            return gcd_inner(&content_in(f, v), g, modular_ok);
        }
        if g.contains_var(v) && !f.contains_var(v) {
            return gcd_inner(f, &content_in(g, v), modular_ok);
        }
    }
    let cf = content_in(f, x);
    let cg = content_in(g, x);
    let pf = f.div_exact(&cf).unwrap();
    let pg = g.div_exact(&cg).unwrap();
    let c = gcd_inner(&cf, &cg, modular_ok);
    let h = subresultant_last(&pf, &pg, x);
    let h = if h.contains_var(x) {
        let ch = content_in(&h, x);
        h.div_exact(&ch).unwrap()
    } else {
        MultiPoly::one()
    };
    c.mul(&h)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b` in `x`, coefficients dense in `x`.
fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    if r.len() <= db {
        return r;
    }
    // exactly deg a - deg b + 1 steps, even when a leading coefficient cancels
    for k in (db..a.len()).rev() {
        let c = r.pop().unwrap();
        for item in r.iter_mut() {
            *item = item.mul(lb);
        }
        if !c.is_zero() {
            for j in 0..db {
                let idx = k - db + j;
                r[idx] = r[idx].sub(&c.mul(&b[j]));
            }
        }
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

/// Last nonzero subresultant of two primitive polynomials in `x`.
fn subresultant_last(f: &MultiPoly, g: &MultiPoly, x: Var) -> MultiPoly {
    let (mut a, mut b) = {
        let fa = f.coeffs_in(x);
        let gb = g.coeffs_in(x);
        if fa.len() >= gb.len() { (fa, gb) } else { (gb, fa) }
    };
    let mut gg = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            return MultiPoly::from_coeffs_in(x, &b);
        }
        if r.len() == 1 {
            return MultiPoly::one();
        }
        let divisor = gg.mul(&h.pow(delta));
        let r: Vec<MultiPoly> = r.iter().map(|c| c.div_exact(&divisor).expect("subresultant division")).collect();
        a = b;
        b = r;
        gg = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = gg.pow(delta);
            let den = h.pow(delta - 1);
            num.div_exact(&den).expect("subresultant h update")
        };
    }
}

/// Squarefree part of a univariate polynomial over Q(i).
pub fn squarefree_univariate(f: &MultiPoly) -> MultiPoly {
    let Some(v) = f.univariate_var() else { return f.monic() };
    let d = poly_gcd(f, &f.derivative(v));
    if d.is_one() {
        return f.monic();
    }
    f.div_exact(&d).unwrap().monic()
}

pub fn is_unit(f: &MultiPoly) -> bool {
    f.is_constant() && !f.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> MultiPoly {
        MultiPoly::var(Var::Z)
    }
    fn w() -> MultiPoly {
        MultiPoly::var(Var::W)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::int(n)
    }

    #[test]
    fn spec_examples() {
        let f = z().pow(2).sub(&w().pow(2));
        let g = z().sub(&w());
        assert_eq!(poly_gcd(&f, &g), z().sub(&w()));
        assert!(poly_gcd(&f, &c(1)).is_one());
        // (w - 2z)(z^2 + 1) and (w - 2z)(w + 1), expanded by hand
        let a = w().mul(&z().pow(2)).add(&w()).sub(&z().pow(3).scale(&Gr::from_int(2))).sub(&z().scale(&Gr::from_int(2)));
        let b = w().pow(2).add(&w()).sub(&z().mul(&w()).scale(&Gr::from_int(2))).sub(&z().scale(&Gr::from_int(2)));
        let expect = z().sub(&w().scale(&Gr::from_frac(1, 2)));
        assert_eq!(poly_gcd(&a, &b), expect);
        assert_eq!(poly_gcd_prs(&a, &b), expect);
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let f = z().scale(&Gr::from_int(3)).add(&c(6));
        assert_eq!(poly_gcd(&f, &MultiPoly::zero()), z().add(&c(2)));
    }

    #[test]
    fn three_variable_gcd() {
        let t = MultiPoly::var(Var::T);
        let common = z().mul(&t).add(&w()).add(&c(1));
        let f = common.mul(&z().sub(&t.pow(2)));
        let g = common.mul(&w().add(&t).add(&z().pow(2)));
        assert_eq!(poly_gcd(&f, &g), common.monic());
    }

    #[test]
    fn gaussian_univariate() {
        let i = MultiPoly::constant(Gr::i());
        let f = z().sub(&i).mul(&z().add(&c(3)));
        let g = z().sub(&i).mul(&z().sub(&c(5)));
        assert_eq!(poly_gcd(&f, &g), z().sub(&i));
    }
}
