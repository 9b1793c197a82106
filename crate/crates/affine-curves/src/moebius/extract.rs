//! Extraction of Möbius-like factors `w(cz+d) - (az+b)`.
//!
//! A factor of this shape vanishes at `w = phi(z0)` for every `z0` with
//! `c z0 + d != 0`. Roots in Q(i) of the specializations at four points
//! therefore contain the images of at least three of them, and three image
//! pairs fix the map. Every candidate is then checked exactly.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::conditions::{rational_part, strip_monomial, BivariateCondition};
use super::map::MoebiusMap;
use crate::exact::{gaussian_roots, poly_gcd, Gr, Mono, MultiPoly, RatFunc, Var};
use crate::Error;

const POINTS: usize = 4;
const MAX_TRIES: i64 = 64;

/// Sample parameters 0, 1, -1, 2, -2, ...
fn sample(k: i64) -> Gr {
    let m = (k + 1) / 2;
    Gr::from_int(if k % 2 == 1 { m } else { -m })
}

fn det3(m: [[&Gr; 3]; 3]) -> Gr {
    let t1 = m[0][0] * &(&(m[1][1] * m[2][2]) - &(m[1][2] * m[2][1]));
    let t2 = m[0][1] * &(&(m[1][0] * m[2][2]) - &(m[1][2] * m[2][0]));
    let t3 = m[0][2] * &(&(m[1][0] * m[2][1]) - &(m[1][1] * m[2][0]));
    &(&t1 - &t2) + &t3
}

/// The Möbius map through three pairs `(z_k, w_k)`, when one exists.
pub fn fit_moebius(pairs: &[(Gr, Gr); 3]) -> Option<MoebiusMap> {
    // rows (-z, -1, w z, w) against (a, b, c, d)
    let rows: Vec<[Gr; 4]> =
        pairs.iter().map(|(z, w)| [-z.clone(), -Gr::one(), w * z, w.clone()]).collect();
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        det3([
            [&rows[0][cols[0]], &rows[0][cols[1]], &rows[0][cols[2]]],
            [&rows[1][cols[0]], &rows[1][cols[1]], &rows[1][cols[2]]],
            [&rows[2][cols[0]], &rows[2][cols[1]], &rows[2][cols[2]]],
        ])
    };
    let x: Vec<Gr> = (0..4).map(|j| if j % 2 == 0 { minor(j) } else { -minor(j) }).collect();
    if x.iter().all(Zero::is_zero) {
        return None;
    }
    MoebiusMap::new(x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()).ok()
}

/// Every 3-subset of four root sets, with the fourth used as a quick filter.
fn triples(points: &[(Gr, Vec<Gr>)], mut accept: impl FnMut(&MoebiusMap) -> bool) -> Vec<MoebiusMap> {
    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    for skip in (0..points.len()).rev() {
        let idx: Vec<usize> = (0..points.len()).filter(|&k| k != skip).collect();
        let (za, ra) = &points[idx[0]];
        let (zb, rb) = &points[idx[1]];
        let (zc, rc) = &points[idx[2]];
        for wa in ra {
            for wb in rb {
                if wb == wa {
                    continue;
                }
                for wc in rc {
                    if wc == wa || wc == wb {
                        continue;
                    }
                    let pairs = [(za.clone(), wa.clone()), (zb.clone(), wb.clone()), (zc.clone(), wc.clone())];
                    let Some(phi) = fit_moebius(&pairs) else { continue };
                    if !seen.insert(phi.clone()) {
                        continue;
                    }
                    let (zs, rs) = &points[skip];
                    let consistent = match phi.apply(zs) {
                        Some(w) => rs.contains(&w),
                        None => true,
                    };
                    if consistent && accept(&phi) {
                        out.insert(phi);
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Möbius maps `w = phi(z)` whose factor `w(cz+d) - (az+b)` divides `l`, sorted.
pub fn extract_moebius_factors(l: &MultiPoly) -> Vec<MoebiusMap> {
    if l.is_zero() {
        return Vec::new();
    }
    let l = if l.contains_var(Var::T) || l.contains_var(Var::TW) { rational_part(l) } else { l.clone() };
    if l.degree_in(Var::W) == 0 || l.degree_in(Var::Z) == 0 {
        return Vec::new();
    }
    let mut points = Vec::new();
    for k in 0..MAX_TRIES {
        let z0 = sample(k);
        let s = l.eval_var(Var::Z, &z0);
        if s.is_zero() || s.degree_in(Var::W) == 0 {
            continue;
        }
        let roots = gaussian_roots(&s.to_univariate(Var::W));
        points.push((z0, roots));
        if points.len() == POINTS {
            break;
        }
    }
    if points.len() < POINTS {
        return Vec::new();
    }
    triples(&points, |phi| l.div_exact(&phi.factor()).is_some())
}

fn nonconstant(f: &RatFunc) -> bool {
    !f.is_constant()
}

/// Candidate maps with `F_j(p) = F_j(q) ∘ phi` for all j, read off the univariate
/// template values directly (both sides in `z`).
pub fn candidates_from_values(fp: &[RatFunc], fq: &[RatFunc]) -> Result<Vec<MoebiusMap>, Error> {
    let mut active = Vec::new();
    for (j, (a, b)) in fp.iter().zip(fq).enumerate() {
        match (nonconstant(a), nonconstant(b)) {
            (false, false) if a == b => {}
            (true, true) => active.push(j),
            _ => return Ok(Vec::new()),
        }
    }
    if active.is_empty() {
        return Err(Error::AllInvariantsConstant);
    }
    // root the cheapest condition, filter with the rest
    let key = *active.iter().min_by_key(|&&j| (fq[j].num().total_degree().max(fq[j].den().total_degree()), j)).unwrap();
    let sample_points = |count: usize, from: i64| {
        let mut pts = Vec::new();
        let mut k = from;
        while pts.len() < count && k < from + MAX_TRIES {
            let z0 = sample(k);
            k += 1;
            let vals: Option<Vec<Gr>> = active.iter().map(|&j| fp[j].eval(&|_| z0.clone())).collect();
            let Some(vals) = vals else { continue };
            let v = &vals[active.iter().position(|&j| j == key).unwrap()];
            let poly = fq[key].num().sub(&fq[key].den().scale(v));
            if poly.is_zero() {
                continue;
            }
            let roots: Vec<Gr> = gaussian_roots(&poly.to_univariate(Var::Z))
                .into_iter()
                .filter(|w| {
                    active.iter().zip(&vals).all(|(&j, vj)| fq[j].eval(&|_| w.clone()).is_some_and(|x| &x == vj))
                })
                .collect();
            pts.push((z0, roots));
        }
        (pts, k)
    };
    let (points, next) = sample_points(POINTS, 0);
    if points.len() < POINTS {
        return Ok(Vec::new());
    }
    let (checks, _) = sample_points(3, next);
    Ok(triples(&points, |phi| {
        checks.iter().all(|(z0, roots)| phi.apply(z0).is_none_or(|w| roots.contains(&w)))
    }))
}

/// `e^{mu beta} = s`: the additive shift of an exp-type reparametrization,
/// known up to the period `2 pi i / mu`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExpShift {
    pub s: Gr,
    pub mu: Gr,
}

impl ExpShift {
    /// Fraction `q` with `s = e^{i pi q}` for the units `1, -1, i, -i`.
    pub fn turn(&self) -> Option<BigRational> {
        let q = |a: i64, b: i64| Some(BigRational::new(a.into(), b.into()));
        let one = Gr::one();
        if self.s == one {
            q(0, 1)
        } else if self.s == -one {
            q(1, 1)
        } else if self.s == Gr::i() {
            q(1, 2)
        } else if self.s == -Gr::i() {
            q(-1, 2)
        } else {
            None
        }
    }

    /// Principal value of beta, when it is zero.
    pub fn principal_is_zero(&self) -> bool {
        self.s.is_one()
    }
}

impl std::fmt::Display for ExpShift {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mu = if self.mu.is_one() { String::new() } else { format!(" / ({})", self.mu) };
        match self.turn() {
            Some(q) if q.is_zero() => write!(f, "beta = 2 k pi i{mu}, k in Z"),
            Some(q) => write!(f, "beta = ({} + 2 k) pi i{mu}, k in Z", q),
            None => write!(f, "beta = (Log({}) + 2 k pi i){mu}, k in Z", self.s),
        }
    }
}

/// Affine candidate for exp-type curves: `w = a z + beta`, `t_w = s t^e`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExpCandidate {
    pub phi: MoebiusMap,
    pub t_exp: i64,
    pub shift: Option<ExpShift>,
}

fn group_coefficients(p: &MultiPoly, outer: &[Var]) -> Vec<MultiPoly> {
    let mut groups: HashMap<Vec<u32>, Vec<(Mono, Gr)>> = HashMap::new();
    for (m, c) in p.terms() {
        let key: Vec<u32> = outer.iter().map(|&v| m.exp(v)).collect();
        let mut rest = m.clone();
        for &v in outer {
            rest = rest.split_var(v).1;
        }
        groups.entry(key).or_default().push((rest, c.clone()));
    }
    let mut keys: Vec<_> = groups.keys().cloned().collect();
    keys.sort();
    keys.into_iter().map(|k| MultiPoly::from_terms(groups.remove(&k).unwrap())).collect()
}

fn gcd_all(ps: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for p in ps {
        g = poly_gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Candidate affine maps for conditions that involve `t` and `t_w`.
///
/// `|e|` comes from the ratio of the `t` and `t_w` degrees; `s` (and the
/// shift `beta` when `w` also appears) from exact coefficient matching.
pub fn extract_affine_exp(conds: &[BivariateCondition], mu_p: &Gr, mu_q: &Gr) -> Vec<ExpCandidate> {
    let active: Vec<MultiPoly> = conds
        .iter()
        .map(|c| strip_monomial(&c.poly))
        .filter(|p| !p.is_zero() && (p.contains_var(Var::T) || p.contains_var(Var::TW)))
        .collect();
    if active.is_empty() {
        return Vec::new();
    }
    let mut ratio: Option<u32> = None;
    for p in &active {
        let (dt, dw) = (p.degree_in(Var::T), p.degree_in(Var::TW));
        if dt == 0 || dw == 0 || dt % dw != 0 {
            return Vec::new();
        }
        match ratio {
            None => ratio = Some(dt / dw),
            Some(r) if r != dt / dw => return Vec::new(),
            _ => {}
        }
    }
    let r = ratio.unwrap() as i64;
    let has_w = active.iter().any(|p| p.contains_var(Var::W));
    let mut out = BTreeSet::new();
    for e in [r, -r] {
        let a = &(&Gr::from_int(e) * mu_p) / mu_q;
        let mut w_sub = RatFunc::var(Var::Z).scale(&a);
        if has_w {
            w_sub = w_sub.add(&RatFunc::var(Var::BETA));
        }
        let subs = [
            (Var::W, w_sub),
            (Var::TW, RatFunc::var(Var::S).mul(&RatFunc::var(Var::T).pow(e as i32))),
        ];
        let mut coeffs = Vec::new();
        for p in &active {
            let num = crate::exact::ratfunc::substitute_poly(p, &subs).num().clone();
            coeffs.extend(group_coefficients(&num, &[Var::Z, Var::T]));
        }
        let phi = MoebiusMap::affine(a.clone(), Gr::zero());
        if has_w {
            // beta pinned to a value; only beta = 0 keeps s = e^{mu beta} algebraic
            let beta_only: Vec<MultiPoly> = coeffs.iter().filter(|c| !c.contains_var(Var::S)).cloned().collect();
            let g = gcd_all(&beta_only);
            if !g.is_zero() && !g.eval_var(Var::BETA, &Gr::zero()).is_zero() {
                continue;
            }
            let at = |c: &MultiPoly| c.eval_var(Var::BETA, &Gr::zero()).eval_var(Var::S, &Gr::one());
            if coeffs.iter().all(|c| at(c).is_zero()) {
                out.insert(ExpCandidate { phi, t_exp: e, shift: None });
            }
            continue;
        }
        let g = gcd_all(&coeffs);
        if g.is_zero() {
            continue;
        }
        for s in gaussian_roots(&g.to_univariate(Var::S)) {
            if s.is_zero() {
                continue;
            }
            out.insert(ExpCandidate { phi: phi.clone(), t_exp: e, shift: Some(ExpShift { s, mu: mu_q.clone() }) });
        }
    }
    out.into_iter().collect()
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

    #[test]
    fn opposite_doublings() {
        let l = w().sub(&z().scale(&Gr::from_int(2))).mul(&w().add(&z().scale(&Gr::from_int(2))));
        let maps = extract_moebius_factors(&l);
        assert_eq!(maps.len(), 2);
        assert!(maps.contains(&MoebiusMap::from_ints(2, 0, 0, 1).unwrap()));
        assert!(maps.contains(&MoebiusMap::from_ints(-2, 0, 0, 1).unwrap()));
    }

    #[test]
    fn inversion_among_irreducible_cofactor() {
        let h = z().mul(&w()).sub(&MultiPoly::one());
        let cof = z().pow(2).add(&w().pow(2)).add(&MultiPoly::one());
        let maps = extract_moebius_factors(&h.mul(&cof));
        assert_eq!(maps, vec![MoebiusMap::from_ints(0, 1, 1, 0).unwrap()]);
        assert!(extract_moebius_factors(&cof).is_empty());
    }

    #[test]
    fn fit_through_three_points() {
        let phi = MoebiusMap::new(Gr::cplx(1, 2), Gr::from_int(3), Gr::from_int(1), Gr::cplx(0, -1)).unwrap();
        let pairs = [0, 2, 5].map(|k| {
            let z0 = Gr::from_int(k);
            let w0 = phi.apply(&z0).unwrap();
            (z0, w0)
        });
        assert_eq!(fit_moebius(&pairs), Some(phi));
    }
}
