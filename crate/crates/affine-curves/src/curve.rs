//! Parametric curves over Q(i), optionally carrying one exponential generator.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::exact::{poly_gcd, Derivation, Gr, Matrix, MultiPoly, RatFunc, Var};
use crate::moebius::MoebiusMap;
use crate::Error;

/// `t = e^{mu z}`, so `t' = mu t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TranscendentalRule {
    pub mu: Gr,
}

#[derive(Debug)]
pub struct Curve {
    comps: Vec<RatFunc>,
    rule: Option<TranscendentalRule>,
    proper_asserted: bool,
    derivs: OnceLock<Vec<Vec<RatFunc>>>,
}

impl Clone for Curve {
    fn clone(&self) -> Self {
        Self {
            comps: self.comps.clone(),
            rule: self.rule.clone(),
            proper_asserted: self.proper_asserted,
            derivs: self.derivs.clone(),
        }
    }
}

impl PartialEq for Curve {
    fn eq(&self, o: &Self) -> bool {
        self.comps == o.comps && self.rule == o.rule && self.proper_asserted == o.proper_asserted
    }
}

impl Curve {
    /// Rational curve in `z`.
    pub fn rational(comps: Vec<RatFunc>) -> Result<Self, Error> {
        Self::build(comps, None)
    }

    /// Curve rational in `z` and `t = e^{mu z}`.
    pub fn exp_type(comps: Vec<RatFunc>, mu: Gr) -> Result<Self, Error> {
        if mu.is_zero() {
            return Err(Error::InvalidCurve("exponential frequency must be nonzero".into()));
        }
        Self::build(comps, Some(TranscendentalRule { mu }))
    }

    pub fn build(comps: Vec<RatFunc>, rule: Option<TranscendentalRule>) -> Result<Self, Error> {
        if comps.len() < 2 {
            return Err(Error::InvalidCurve(format!("dimension {} < 2", comps.len())));
        }
        for c in &comps {
            for v in c.vars() {
                let ok = v == Var::Z || (v == Var::T && rule.is_some());
                if !ok {
                    return Err(Error::InvalidCurve(format!("unexpected variable {}", v.name())));
                }
            }
        }
        Ok(Self { comps, rule, proper_asserted: false, derivs: OnceLock::new() })
    }

    /// Records the caller's assertion that an exp-type parametrization is proper.
    pub fn with_proper_assertion(mut self, yes: bool) -> Self {
        self.proper_asserted = yes;
        self
    }

    /// Polynomial curve from ascending coefficient lists.
    pub fn from_int_coeffs(comps: &[Vec<i64>]) -> Result<Self, Error> {
        let cs = comps
            .iter()
            .map(|c| {
                let g: Vec<Gr> = c.iter().map(|&x| Gr::from_int(x)).collect();
                RatFunc::from_poly(MultiPoly::from_univariate(Var::Z, &g))
            })
            .collect();
        Self::rational(cs)
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.comps
    }

    pub fn rule(&self) -> Option<&TranscendentalRule> {
        self.rule.as_ref()
    }

    pub fn mu(&self) -> Option<&Gr> {
        self.rule.as_ref().map(|r| &r.mu)
    }

    pub fn is_rational(&self) -> bool {
        self.rule.is_none()
    }

    /// True when the components do not actually involve `t`.
    pub fn is_t_free(&self) -> bool {
        self.comps.iter().all(|c| !c.contains_var(Var::T))
    }

    pub fn proper_asserted(&self) -> bool {
        self.proper_asserted
    }

    /// `d/dz` on the curve's differential ring.
    pub fn derivation(&self) -> Derivation {
        match &self.rule {
            Some(r) => Derivation::exp_type(Var::Z, Var::T, r.mu.clone()),
            None => Derivation::partial(Var::Z),
        }
    }

    fn cache(&self) -> &Vec<Vec<RatFunc>> {
        self.derivs.get_or_init(|| {
            let d = self.derivation();
            let top = self.dim() + 2;
            let mut out = vec![self.comps.clone()];
            for k in 1..=top {
                let next: Vec<RatFunc> = out[k - 1].iter().map(|c| c.derive(&d)).collect();
                out.push(next);
            }
            out
        })
    }

    /// k-th derivative of every component; derivatives up to order n+2 are cached.
    pub fn derivative(&self, k: usize) -> Vec<RatFunc> {
        let cache = self.cache();
        if k < cache.len() {
            return cache[k].clone();
        }
        let d = self.derivation();
        let mut cur = cache.last().unwrap().clone();
        for _ in cache.len()..=k {
            cur = cur.iter().map(|c| c.derive(&d)).collect();
        }
        cur
    }

    pub(crate) fn derivative_ref(&self, k: usize) -> &[RatFunc] {
        &self.cache()[k]
    }

    /// `D(u) = [u', u'', ..., u^(n)]`.
    pub fn deriv_matrix(&self) -> Matrix {
        let cols: Vec<Vec<RatFunc>> = (1..=self.dim()).map(|k| self.derivative_ref(k).to_vec()).collect();
        Matrix::from_cols(&cols)
    }

    pub fn check_not_in_hyperplane(&self) -> bool {
        !self.deriv_matrix().det().is_zero()
    }

    /// Generic injectivity of a rational parametrization: the gcd of the
    /// numerators of `p_i(z) - p_i(w)` has degree exactly 1 in `z`.
    pub fn check_proper_rational(&self) -> Result<bool, Error> {
        if self.rule.is_some() {
            return Err(Error::NotRational);
        }
        let mut g = MultiPoly::zero();
        for c in &self.comps {
            let cw = c.rename(Var::Z, Var::W);
            let diff = c.sub(&cw);
            g = poly_gcd(&g, diff.num());
            if g.degree_in(Var::Z) <= 1 {
                break;
            }
        }
        Ok(g.degree_in(Var::Z) == 1)
    }

    /// `c ∘ phi`. Exp-type curves only admit `phi(z) = a z` with integer `a`.
    pub fn compose(&self, phi: &MoebiusMap) -> Result<Curve, Error> {
        let mut subs = vec![(Var::Z, phi.as_ratfunc(Var::Z))];
        let rule = if let Some(r) = &self.rule {
            if !self.is_t_free() {
                let ok = phi.is_affine() && phi.b.is_zero() && phi.a.is_real() && phi.a.re.is_integer();
                if !ok {
                    return Err(Error::Unsupported("exp-type composition needs phi(z) = a z, a integer".into()));
                }
                let a = phi.a.re.to_integer();
                let e: i32 = a.try_into().map_err(|_| Error::Unsupported("exponent too large".into()))?;
                subs.push((Var::T, RatFunc::var(Var::T).pow(e)));
            }
            Some(r.clone())
        } else {
            None
        };
        let comps = self
            .comps
            .iter()
            .map(|c| c.substitute(&subs).ok_or_else(|| Error::InvalidCurve("composition hits a pole".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Curve { comps, rule, proper_asserted: self.proper_asserted, derivs: OnceLock::new() })
    }

    /// `A c + b`.
    pub fn affine_image(&self, a: &[Vec<Gr>], b: &[Gr]) -> Result<Curve, Error> {
        let n = self.dim();
        if a.len() != n || b.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: a.len() });
        }
        let comps = (0..n)
            .map(|i| {
                let mut acc = RatFunc::constant(b[i].clone());
                for j in 0..n {
                    if !a[i][j].is_zero() {
                        acc = acc.add(&self.comps[j].scale(&a[i][j]));
                    }
                }
                acc
            })
            .collect();
        Ok(Curve { comps, rule: self.rule.clone(), proper_asserted: self.proper_asserted, derivs: OnceLock::new() })
    }

    /// Components with `z, t` renamed to `w, t_w`.
    pub fn components_in_w(&self) -> Vec<RatFunc> {
        self.comps.iter().map(|c| c.rename(Var::Z, Var::W).rename(Var::T, Var::TW)).collect()
    }
}

impl std::fmt::Display for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")?;
        if let Some(r) = &self.rule {
            if !r.mu.is_one() {
                write!(f, " with t = exp({} z)", r.mu)?;
            } else {
                write!(f, " with t = exp(z)")?;
            }
        }
        Ok(())
    }
}
