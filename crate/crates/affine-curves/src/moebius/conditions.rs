//! Bivariate conditions `M_j(z, w)` from the Möbius-commuting invariants and their common factor.

use crate::curve::Curve;
use crate::exact::{content_in, poly_gcd, MultiPoly, RatFunc, Var};
use crate::invariants::{eval_template, invariants};
use crate::invgen::InvariantTemplate;
use crate::Error;

/// Cleared numerator of `F_j(p)(z) - F_j(q)(w)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariateCondition {
    pub j: usize,
    pub poly: MultiPoly,
}

impl BivariateCondition {
    /// Both sides were the same constant.
    pub fn is_degenerate(&self) -> bool {
        self.poly.is_zero()
    }
}

/// `F_1(c), ..., F_{n-1}(c)` in the variables of `c`.
pub fn template_values(c: &Curve, templates: &[InvariantTemplate]) -> Result<Vec<RatFunc>, Error> {
    let iv = invariants(c)?;
    templates.iter().map(|t| eval_template(t, &iv)).collect()
}

/// Divides out monomial content, scalar content, the content in `w` and repeated factors in `w`.
pub fn reduce_condition(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() || p.is_constant() {
        return if p.is_zero() { p.clone() } else { MultiPoly::one() };
    }
    let mut q = strip_monomial(p).monic();
    if q.contains_var(Var::W) {
        let c = content_in(&q, Var::W);
        if !c.is_constant() {
            q = q.div_exact(&c).expect("content divides");
        }
        let g = poly_gcd(&q, &q.derivative(Var::W));
        if g.contains_var(Var::W) {
            q = q.div_exact(&g).expect("gcd divides");
        }
    }
    q.monic()
}

/// Removes the largest monomial dividing every term.
pub fn strip_monomial(p: &MultiPoly) -> MultiPoly {
    let Some((m0, _)) = p.terms().first() else { return p.clone() };
    let mut common: Vec<(Var, u32)> = m0.0.to_vec();
    for (m, _) in p.terms() {
        common = common.into_iter().filter_map(|(v, e)| {
            let f = m.exp(v).min(e);
            (f > 0).then_some((v, f))
        }).collect();
        if common.is_empty() {
            return p.clone();
        }
    }
    let m = crate::exact::Mono::from_pairs(&common);
    MultiPoly::from_terms(p.terms().iter().map(|(t, c)| (t.div(&m).unwrap(), c.clone())))
}

/// Conditions from already evaluated template values; `fq` is in `z` and is renamed here.
pub fn conditions_from_values(fp: &[RatFunc], fq: &[RatFunc]) -> Vec<BivariateCondition> {
    fp.iter()
        .zip(fq)
        .enumerate()
        .map(|(k, (a, b))| {
            let b = b.rename(Var::Z, Var::W).rename(Var::T, Var::TW);
            let raw = a.num().mul(b.den()).sub(&b.num().mul(a.den()));
            BivariateCondition { j: k + 1, poly: reduce_condition(&raw) }
        })
        .collect()
}

/// One condition per template, each reduced.
pub fn build_conditions(p: &Curve, q: &Curve, templates: &[InvariantTemplate]) -> Result<Vec<BivariateCondition>, Error> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    if !p.check_not_in_hyperplane() || !q.check_not_in_hyperplane() {
        return Err(Error::CurveInHyperplane);
    }
    let fp = template_values(p, templates)?;
    let fq = template_values(q, templates)?;
    Ok(conditions_from_values(&fp, &fq))
}

/// gcd of the nonzero conditions.
pub fn common_factor(conds: &[BivariateCondition]) -> Result<MultiPoly, Error> {
    let mut nonzero: Vec<&MultiPoly> = conds.iter().map(|c| &c.poly).filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllInvariantsConstant);
    }
    nonzero.sort_by_key(|p| (p.total_degree(), p.len()));
    let mut g = nonzero[0].clone();
    for p in &nonzero[1..] {
        if g.is_constant() {
            break;
        }
        g = poly_gcd(&g, p);
    }
    Ok(if g.is_constant() { MultiPoly::one() } else { g.monic() })
}

/// The part of `l` free of `t` and `t_w`.
pub fn rational_part(l: &MultiPoly) -> MultiPoly {
    let mut g = l.clone();
    for v in [Var::T, Var::TW] {
        if g.contains_var(v) {
            g = content_in(&g, v);
        }
    }
    if g.is_constant() { MultiPoly::one() } else { g.monic() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invgen::templates;

    #[test]
    fn twisted_quartic_has_diagonal_factor() {
        let p = Curve::from_int_coeffs(&[vec![0, 1], vec![0, 0, 0, 1, 1]]).unwrap();
        let conds = build_conditions(&p, &p, &templates(2).unwrap()).unwrap();
        let diag = MultiPoly::var(Var::W).sub(&MultiPoly::var(Var::Z));
        assert!(conds[0].poly.div_exact(&diag).is_some());
    }

    #[test]
    fn cubic_is_degenerate() {
        let p = Curve::from_int_coeffs(&[vec![0, 1], vec![0, 0, 0, 1]]).unwrap();
        let conds = build_conditions(&p, &p, &templates(2).unwrap()).unwrap();
        assert!(conds[0].is_degenerate());
        assert_eq!(common_factor(&conds), Err(Error::AllInvariantsConstant));
    }
}
