//! Affine differential invariants `I_0, ..., I_n` of a curve and evaluation of
//! invariant templates on them.

use std::sync::OnceLock;

use crate::curve::Curve;
use crate::exact::matrix::lcm;
use crate::exact::{Matrix, MultiPoly, RatFunc, Var};
use crate::invgen::InvariantTemplate;
use crate::Error;

/// `I_0 ... I_n` of one curve.
#[derive(Clone, Debug)]
pub struct InvariantVector {
    values: Vec<RatFunc>,
    common: OnceLock<(Vec<MultiPoly>, MultiPoly)>,
}

impl PartialEq for InvariantVector {
    fn eq(&self, o: &Self) -> bool {
        self.values == o.values
    }
}

impl InvariantVector {
    pub fn new(values: Vec<RatFunc>) -> Self {
        Self { values, common: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, i: usize) -> &RatFunc {
        &self.values[i]
    }

    pub fn values(&self) -> &[RatFunc] {
        &self.values
    }

    /// Numerators over one common denominator: `I_k = X_k / L`.
    pub fn common_form(&self) -> &(Vec<MultiPoly>, MultiPoly) {
        self.common.get_or_init(|| {
            let l = self.values.iter().fold(MultiPoly::one(), |acc, v| lcm(&acc, v.den()));
            let xs = self
                .values
                .iter()
                .map(|v| if v.den() == &l { v.num().clone() } else { v.num().mul(&l.div_exact(v.den()).unwrap()) })
                .collect();
            (xs, l)
        })
    }

    /// Evaluates a polynomial in the formal symbols `I_k`.
    pub fn eval_poly(&self, p: &MultiPoly) -> RatFunc {
        if p.is_zero() {
            return RatFunc::zero();
        }
        let (xs, l) = self.common_form();
        let w = p.total_degree();
        let mut lpow = vec![MultiPoly::one()];
        for k in 1..=w as usize {
            lpow.push(lpow[k - 1].mul(l));
        }
        let mut acc = MultiPoly::zero();
        for (m, c) in p.terms() {
            let mut t = MultiPoly::constant(c.clone());
            for &(v, e) in m.0.iter() {
                let k = v.inv_index().expect("template in I symbols only");
                t = t.mul(&xs[k].pow(e));
            }
            acc = acc.add(&t.mul(&lpow[(w - m.degree()) as usize]));
        }
        RatFunc::new(acc, lpow[w as usize].clone())
    }

    /// Same as [`eval_poly`](Self::eval_poly) by direct rational substitution.
    pub fn eval_poly_direct(&self, p: &MultiPoly) -> RatFunc {
        let subs: Vec<(Var, RatFunc)> =
            self.values.iter().enumerate().map(|(k, v)| (Var::inv(k), v.clone())).collect();
        crate::exact::ratfunc::substitute_poly(p, &subs)
    }
}

/// `Δ(u) = ‖u', ..., u^(n)‖`.
pub fn delta(c: &Curve) -> RatFunc {
    c.deriv_matrix().det()
}

fn det_with_columns(c: &Curve, orders: &[usize]) -> RatFunc {
    let cols: Vec<Vec<RatFunc>> = orders.iter().map(|&k| c.derivative(k)).collect();
    Matrix::from_cols(&cols).det()
}

/// `A_i(u)`: `Δ` with the i-th column replaced by `u^(n+1)`.
pub fn a_i(c: &Curve, i: usize) -> Result<RatFunc, Error> {
    let n = c.dim();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("A_{i} for n = {n}")));
    }
    let mut orders: Vec<usize> = (1..=n).collect();
    orders[i - 1] = n + 1;
    Ok(det_with_columns(c, &orders))
}

/// Numerator of `I_0`: `‖u', ..., u^(n-1), u^(n+2)‖`.
pub fn a_0(c: &Curve) -> RatFunc {
    let n = c.dim();
    let mut orders: Vec<usize> = (1..n).collect();
    orders.push(n + 2);
    det_with_columns(c, &orders)
}

/// `I_i = A_i / Δ`, `I_0 = ‖u', ..., u^(n-1), u^(n+2)‖ / Δ`.
///
/// Computed by solving `D(u) x = u^(n+1)` and `D(u) y = u^(n+2)`: by Cramer's
/// rule `x_i = I_i` and `y_n = I_0`.
pub fn invariants(c: &Curve) -> Result<InvariantVector, Error> {
    let n = c.dim();
    let d = c.deriv_matrix();
    let rhs = vec![c.derivative(n + 1), c.derivative(n + 2)];
    let sol = d.solve_multi(&rhs).map_err(|_| Error::CurveInHyperplane)?;
    let mut values = Vec::with_capacity(n + 1);
    values.push(sol[1][n - 1].clone());
    values.extend(sol[0].iter().cloned());
    Ok(InvariantVector::new(values))
}

/// The invariants as explicit determinant quotients.
pub fn invariants_by_determinants(c: &Curve) -> Result<InvariantVector, Error> {
    let dl = delta(c);
    if dl.is_zero() {
        return Err(Error::CurveInHyperplane);
    }
    let mut values = vec![a_0(c).div(&dl).unwrap()];
    for i in 1..=c.dim() {
        values.push(a_i(c, i)?.div(&dl).unwrap());
    }
    Ok(InvariantVector::new(values))
}

/// `num^num_exp / den^den_exp` with both bases kept apart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TemplateValue {
    pub num: RatFunc,
    pub num_exp: u32,
    pub den: RatFunc,
    pub den_exp: u32,
}

impl TemplateValue {
    pub fn value(&self) -> RatFunc {
        let n = self.num.pow(self.num_exp as i32);
        let d = self.den.pow(self.den_exp as i32);
        n.div(&d).expect("nonzero template denominator")
    }
}

/// Substitutes the invariants into a template.
pub fn eval_template_parts(tpl: &InvariantTemplate, iv: &InvariantVector) -> Result<TemplateValue, Error> {
    if tpl.n != iv.n() {
        return Err(Error::DimensionMismatch { expected: tpl.n, found: iv.n() });
    }
    let den = iv.eval_poly(&tpl.den);
    if den.is_zero() {
        return Err(Error::DegenerateInvariant);
    }
    let num = iv.eval_poly(&tpl.num);
    Ok(TemplateValue { num, num_exp: tpl.num_exp, den, den_exp: tpl.den_exp })
}

pub fn eval_template(tpl: &InvariantTemplate, iv: &InvariantVector) -> Result<RatFunc, Error> {
    Ok(eval_template_parts(tpl, iv)?.value())
}
