//! Affine equivalences `A p + b = q ∘ phi` between two curves, and symmetries.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::curve::Curve;
use crate::exact::matrix::{identity_const, mul_const, transpose_const};
use crate::exact::{Gr, Matrix, MultiPoly, RatFunc, Var};
use crate::invgen::templates;
use crate::moebius::conditions::{common_factor, conditions_from_values, rational_part, template_values};
use crate::moebius::{candidates_from_values, extract_affine_exp, extract_moebius_factors, ExpShift, MoebiusMap};
use crate::Error;

/// How Möbius candidates are obtained for rational conditions.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Route {
    /// Specialized for rational conditions, both extractions for exp-type ones.
    #[default]
    Auto,
    /// Roots of the univariate template values at sample points; `A` at one point.
    Specialized,
    /// Bivariate conditions, their gcd and factor extraction; `A` from `D(q∘phi) D(p)^-1`.
    Materialized,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub route: Route,
    /// Run candidate recovery sequentially.
    pub sequential: bool,
    /// Accept rational inputs that fail the properness check; the list may then be incomplete.
    pub allow_improper: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Tag {
    Real,
    Orthogonal,
    Identity,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Real => "real",
            Tag::Orthogonal => "orthogonal",
            Tag::Identity => "identity",
        })
    }
}

/// Reparametrization `w = phi(z)`; for exp-type curves `t_q = s t_p^e` and an
/// additive shift `beta` with `e^{mu beta} = s`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Candidate {
    pub phi: MoebiusMap,
    pub t_exp: Option<i64>,
    pub shift: Option<ExpShift>,
}

impl Candidate {
    pub fn plain(phi: MoebiusMap) -> Self {
        Self { phi, t_exp: None, shift: None }
    }
}

/// `A p + b + beta b_beta = q ∘ phi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineEquivalence {
    pub a: Vec<Vec<Gr>>,
    pub b: Vec<Gr>,
    /// Coefficient of the shift `beta`; zero without a shift.
    pub b_beta: Vec<Gr>,
    pub phi: MoebiusMap,
    pub t_exp: Option<i64>,
    pub shift: Option<ExpShift>,
    pub tags: BTreeSet<Tag>,
}

impl AffineEquivalence {
    pub fn has(&self, t: Tag) -> bool {
        self.tags.contains(&t)
    }

    pub fn candidate(&self) -> Candidate {
        Candidate { phi: self.phi.clone(), t_exp: self.t_exp, shift: self.shift.clone() }
    }

    fn compute_tags(&mut self) {
        let n = self.a.len();
        let all_real = |v: &[Gr]| v.iter().all(Gr::is_real);
        let shift_real = self.shift.as_ref().is_none_or(|s| {
            s.mu.is_real() && s.s.is_real() && s.s.re > num_rational::BigRational::zero()
        });
        if self.a.iter().all(|r| all_real(r)) && all_real(&self.b) && all_real(&self.b_beta) && self.phi.is_real() && shift_real {
            self.tags.insert(Tag::Real);
        }
        if mul_const(&transpose_const(&self.a), &self.a) == identity_const(n) {
            self.tags.insert(Tag::Orthogonal);
        }
        let shift_trivial = self.shift.as_ref().is_none_or(ExpShift::principal_is_zero);
        if self.a == identity_const(n)
            && self.b.iter().all(Zero::is_zero)
            && self.b_beta.iter().all(Zero::is_zero)
            && self.phi.is_identity()
            && shift_trivial
        {
            self.tags.insert(Tag::Identity);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    EquivalencesFound,
    NotEquivalent,
    DegenerateInvariants,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::EquivalencesFound => "equivalences-found",
            Status::NotEquivalent => "not-equivalent",
            Status::DegenerateInvariants => "degenerate-invariants",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub candidates: usize,
    pub rejected: usize,
    pub asserted_proper: bool,
    /// A rational input failed the properness check and was accepted anyway.
    pub improper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub status: Status,
    pub dim: usize,
    pub equivalences: Vec<AffineEquivalence>,
    pub diagnostics: Diagnostics,
}

impl EquivalenceReport {
    fn degenerate(dim: usize, diagnostics: Diagnostics) -> Self {
        Self { status: Status::DegenerateInvariants, dim, equivalences: Vec::new(), diagnostics }
    }

    /// Keeps only the equivalences tagged real.
    pub fn real_only(mut self) -> Self {
        self.equivalences.retain(|e| e.has(Tag::Real));
        if self.equivalences.is_empty() && self.status == Status::EquivalencesFound {
            self.status = Status::NotEquivalent;
        }
        self
    }
}

/// `q ∘ phi` written in the differential ring of `p`, with `beta` as a constant.
pub fn compose_candidate(p: &Curve, q: &Curve, cand: &Candidate) -> Result<Vec<RatFunc>, Error> {
    let mut w = cand.phi.as_ratfunc(Var::Z);
    if cand.shift.is_some() {
        w = w.add(&RatFunc::var(Var::BETA));
    }
    let mut subs = vec![(Var::Z, w)];
    if !q.is_t_free() {
        if p.is_rational() {
            return Err(Error::Unsupported("exp-type image of a rational curve".into()));
        }
        let e = match cand.t_exp {
            Some(e) => e,
            None => t_exponent(p, q, &cand.phi)?,
        };
        let s = cand.shift.as_ref().map_or_else(Gr::one, |s| s.s.clone());
        subs.push((Var::T, RatFunc::var(Var::T).pow(e as i32).scale(&s)));
    }
    q.components()
        .iter()
        .map(|c| c.substitute(&subs).ok_or_else(|| Error::InvalidCurve("composition hits a pole".into())))
        .collect()
}

/// `e` with `e^{mu_q (a z)} = t_p^e`; needs `phi(z) = a z` and an integral ratio.
fn t_exponent(p: &Curve, q: &Curve, phi: &MoebiusMap) -> Result<i64, Error> {
    let (Some(mp), Some(mq)) = (p.mu(), q.mu()) else {
        return Err(Error::Unsupported("exponential generator on one side only".into()));
    };
    if !phi.is_affine() || !phi.b.is_zero() {
        return Err(Error::Unsupported("exp-type reparametrization must be w = a z".into()));
    }
    let e = &(&phi.a * mq) / mp;
    if !e.is_real() || !e.re.is_integer() {
        return Err(Error::Unsupported("non-integral frequency ratio".into()));
    }
    i64::try_from(e.re.to_integer()).map_err(|_| Error::Unsupported("frequency ratio too large".into()))
}

fn derivatives(c: &[RatFunc], p: &Curve, n: usize) -> Vec<Vec<RatFunc>> {
    let d = p.derivation();
    let mut out = Vec::with_capacity(n);
    let mut cur = c.to_vec();
    for _ in 0..n {
        cur = cur.iter().map(|x| x.derive(&d)).collect();
        out.push(cur.clone());
    }
    out
}

/// Splits `b` into `b0 + beta b1`; None unless affine in `beta` with constant coefficients.
fn split_beta(b: &RatFunc) -> Option<(Gr, Gr)> {
    if !b.den().is_constant() {
        return None;
    }
    let inv = b.den().constant_value()?.inv()?;
    let cs = b.num().coeffs_in(Var::BETA);
    if cs.len() > 2 {
        return None;
    }
    let get = |k: usize| -> Option<Gr> {
        match cs.get(k) {
            None => Some(Gr::zero()),
            Some(c) => c.constant_value().map(|x| &x * &inv),
        }
    };
    Some((get(0)?, get(1)?))
}

fn finish(a: Vec<Vec<Gr>>, b: &[RatFunc], cand: &Candidate) -> Option<AffineEquivalence> {
    let mut b0 = Vec::with_capacity(b.len());
    let mut b1 = Vec::with_capacity(b.len());
    for x in b {
        let (u, v) = split_beta(x)?;
        b0.push(u);
        b1.push(v);
    }
    let mut eq = AffineEquivalence {
        a,
        b: b0,
        b_beta: b1,
        phi: cand.phi.clone(),
        t_exp: cand.t_exp,
        shift: cand.shift.clone(),
        tags: BTreeSet::new(),
    };
    eq.compute_tags();
    Some(eq)
}

/// `A = D(q∘phi) D(p)^-1`, accepted when constant and when `b = q∘phi - A p` is constant.
pub fn recover_affine(p: &Curve, q: &Curve, phi: &MoebiusMap) -> Result<Option<AffineEquivalence>, Error> {
    recover_candidate(p, q, &Candidate::plain(phi.clone()))
}

pub fn recover_candidate(p: &Curve, q: &Curve, cand: &Candidate) -> Result<Option<AffineEquivalence>, Error> {
    let n = p.dim();
    let qphi = match compose_candidate(p, q, cand) {
        Ok(c) => c,
        Err(Error::Unsupported(_)) | Err(Error::InvalidCurve(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let dq = derivatives(&qphi, p, n);
    let dp_t = p.deriv_matrix().transpose();
    // rows of A solve D(p)^T x = (row i of D(q∘phi))^T
    let rhs: Vec<Vec<RatFunc>> = (0..n).map(|i| (0..n).map(|k| dq[k][i].clone()).collect()).collect();
    let rows = dp_t.solve_multi(&rhs).map_err(|_| Error::CurveInHyperplane)?;
    let Some(a) = rows.iter().map(|r| r.iter().map(RatFunc::constant_value).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>() else {
        return Ok(None);
    };
    if crate::exact::matrix::det_const(&a).is_zero() {
        return Ok(None);
    }
    let ap = Matrix::from_const(&a).mul_vec(p.components());
    let b: Vec<RatFunc> = qphi.iter().zip(&ap).map(|(x, y)| x.sub(y)).collect();
    if b.iter().any(|x| x.contains_var(Var::Z) || x.contains_var(Var::T)) {
        return Ok(None);
    }
    Ok(finish(a, &b, cand))
}

/// Values of `c` and `D(c)` at one parameter.
fn eval_at(c: &[RatFunc], z0: &Gr) -> Option<Vec<Gr>> {
    c.iter().map(|x| x.eval(&|_| z0.clone())).collect()
}

/// Same result as [`recover_candidate`] for curves in `z` alone: `A` and `b` are
/// read at one parameter value and the identity is then checked exactly.
pub fn recover_pointwise(p: &Curve, q: &Curve, phi: &MoebiusMap) -> Result<Option<AffineEquivalence>, Error> {
    let n = p.dim();
    let cand = Candidate::plain(phi.clone());
    let qphi = match compose_candidate(p, q, &cand) {
        Ok(c) => c,
        Err(Error::Unsupported(_)) | Err(Error::InvalidCurve(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if qphi.iter().chain(p.components()).any(|c| c.contains_var(Var::T)) {
        return recover_candidate(p, q, &cand);
    }
    let dq = derivatives(&qphi, p, n);
    for k in 0..64i64 {
        let z0 = Gr::from_int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        let Some(p0) = eval_at(p.components(), &z0) else { continue };
        let Some(q0) = eval_at(&qphi, &z0) else { continue };
        let dp0: Option<Vec<Vec<Gr>>> = (1..=n).map(|k| eval_at(p.derivative_ref(k), &z0)).collect();
        let dq0: Option<Vec<Vec<Gr>>> = dq.iter().map(|col| eval_at(col, &z0)).collect();
        let (Some(dp0), Some(dq0)) = (dp0, dq0) else { continue };
        // dp0[k][i] is the i-th component of the (k+1)-th derivative
        if crate::exact::matrix::det_const(&dp0).is_zero() {
            continue;
        }
        let m = Matrix::from_const(&dp0);
        let rhs: Vec<Vec<RatFunc>> =
            (0..n).map(|i| (0..n).map(|k| RatFunc::constant(dq0[k][i].clone())).collect()).collect();
        let rows = m.solve_multi(&rhs)?;
        let a: Vec<Vec<Gr>> = rows.iter().map(|r| r.iter().map(|x| x.constant_value().unwrap()).collect()).collect();
        if crate::exact::matrix::det_const(&a).is_zero() {
            return Ok(None);
        }
        let b: Vec<Gr> = (0..n)
            .map(|i| (0..n).fold(q0[i].clone(), |acc, j| &acc - &(&a[i][j] * &p0[j])))
            .collect();
        let ap = Matrix::from_const(&a).mul_vec(p.components());
        let holds = (0..n).all(|i| ap[i].add(&RatFunc::constant(b[i].clone())) == qphi[i]);
        if !holds {
            return Ok(None);
        }
        let b: Vec<RatFunc> = b.into_iter().map(RatFunc::constant).collect();
        return Ok(finish(a, &b, &cand));
    }
    Ok(None)
}

/// Independent check of `A p + b + beta b_beta = q ∘ phi` by evaluation.
///
/// For curves in `z` alone the number of sample points exceeds the degree of
/// the difference, so agreement proves the identity.
pub fn verify_equivalence(p: &Curve, q: &Curve, eq: &AffineEquivalence) -> bool {
    let n = p.dim();
    let height = |c: &RatFunc| c.num().total_degree().max(c.den().total_degree()) as usize;
    let hp: usize = p.components().iter().map(height).sum();
    let hq = q.components().iter().map(height).max().unwrap_or(0);
    let exp = !p.is_t_free() || !q.is_t_free() || eq.shift.is_some();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let needed = if exp { 12 } else { hp + hq + 2 };
    let mut ok = 0;
    let mut tries = 0;
    while ok < needed {
        tries += 1;
        if tries > 20 * needed + 100 {
            return false;
        }
        let (z0, t0, beta) = if exp {
            let r = |rng: &mut ChaCha8Rng| Gr::new(
                num_rational::BigRational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=9).into()),
                num_rational::BigRational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=9).into()),
            );
            (r(&mut rng), r(&mut rng), r(&mut rng))
        } else {
            (Gr::from_int(tries as i64 - 1), Gr::zero(), Gr::zero())
        };
        if exp && t0.is_zero() {
            continue;
        }
        let at = |v: Var| if v == Var::Z { z0.clone() } else { t0.clone() };
        let Some(pv) = p.components().iter().map(|c| c.eval(&at)).collect::<Option<Vec<_>>>() else { continue };
        // q evaluated at (phi(z0) + beta, s t0^e) without building q ∘ phi
        let Some(w0) = eq.phi.apply(&z0) else { continue };
        let w0 = if eq.shift.is_some() { &w0 + &beta } else { w0 };
        let tq = if q.is_t_free() {
            Gr::one()
        } else {
            let Some(e) = eq.t_exp.or_else(|| t_exponent(p, q, &eq.phi).ok()) else { return false };
            let base = if e >= 0 { t0.pow(e as u32) } else { t0.inv().unwrap().pow((-e) as u32) };
            let s = eq.shift.as_ref().map_or_else(Gr::one, |s| s.s.clone());
            &base * &s
        };
        let qat = |v: Var| if v == Var::Z { w0.clone() } else { tq.clone() };
        let Some(qv) = q.components().iter().map(|c| c.eval(&qat)).collect::<Option<Vec<_>>>() else { continue };
        for i in 0..n {
            let mut lhs = &eq.b[i] + &(&beta * &eq.b_beta[i]);
            for j in 0..n {
                lhs = &lhs + &(&eq.a[i][j] * &pv[j]);
            }
            if lhs != qv[i] {
                return false;
            }
        }
        ok += 1;
    }
    true
}

/// Returns whether some rational input is not proper (only when `allow_improper`).
fn check_inputs(p: &Curve, q: &Curve, allow_improper: bool) -> Result<bool, Error> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    let mut improper = false;
    for c in [p, q] {
        if !c.check_not_in_hyperplane() {
            return Err(Error::CurveInHyperplane);
        }
        if c.is_rational() {
            if !c.check_proper_rational()? {
                if !allow_improper {
                    return Err(Error::InvalidCurve("parametrization is not proper".into()));
                }
                improper = true;
            }
        } else if !c.proper_asserted() {
            return Err(Error::InvalidCurve("exp-type parametrization needs a properness assertion".into()));
        }
    }
    Ok(improper)
}

fn has_t(fs: &[RatFunc]) -> bool {
    fs.iter().any(|f| f.contains_var(Var::T))
}

/// The full pipeline: templates, conditions, candidate maps, recovery and verification.
pub fn affine_equivalences(p: &Curve, q: &Curve, opts: &Options) -> Result<EquivalenceReport, Error> {
    let improper = check_inputs(p, q, opts.allow_improper)?;
    let n = p.dim();
    let ts = templates(n)?;
    let mut diag = Diagnostics {
        asserted_proper: p.proper_asserted() || q.proper_asserted(),
        improper,
        ..Default::default()
    };
    // a vanishing template denominator is itself an invariant property
    let (fp, fq) = match (template_values(p, &ts), template_values(q, &ts)) {
        (Ok(fp), Ok(fq)) => (fp, fq),
        (Err(Error::DegenerateInvariant), Err(Error::DegenerateInvariant)) => {
            return Ok(EquivalenceReport::degenerate(n, diag));
        }
        (Err(Error::DegenerateInvariant), Ok(_)) | (Ok(_), Err(Error::DegenerateInvariant)) => {
            return Ok(EquivalenceReport { status: Status::NotEquivalent, dim: n, equivalences: vec![], diagnostics: diag });
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };

    let mut cands: BTreeSet<Candidate> = BTreeSet::new();
    if !has_t(&fp) && !has_t(&fq) {
        let maps = match opts.route {
            Route::Auto | Route::Specialized => match candidates_from_values(&fp, &fq) {
                Err(Error::AllInvariantsConstant) => return Ok(EquivalenceReport::degenerate(n, diag)),
                r => r?,
            },
            Route::Materialized => {
                let conds = conditions_from_values(&fp, &fq);
                match common_factor(&conds) {
                    Err(Error::AllInvariantsConstant) => return Ok(EquivalenceReport::degenerate(n, diag)),
                    r => extract_moebius_factors(&r?),
                }
            }
        };
        cands.extend(maps.into_iter().map(Candidate::plain));
    } else {
        let conds = conditions_from_values(&fp, &fq);
        let l = match common_factor(&conds) {
            Err(Error::AllInvariantsConstant) => return Ok(EquivalenceReport::degenerate(n, diag)),
            r => r?,
        };
        cands.extend(extract_moebius_factors(&rational_part(&l)).into_iter().map(Candidate::plain));
        if let (Some(mp), Some(mq)) = (p.mu(), q.mu()) {
            for c in extract_affine_exp(&conds, mp, mq) {
                cands.insert(Candidate { phi: c.phi, t_exp: Some(c.t_exp), shift: c.shift });
            }
        }
    }
    diag.candidates = cands.len();

    let cands: Vec<Candidate> = cands.into_iter().collect();
    let pointwise = opts.route != Route::Materialized;
    let recover = |c: &Candidate| -> Result<Option<AffineEquivalence>, Error> {
        if pointwise && c.shift.is_none() && c.t_exp.is_none() {
            recover_pointwise(p, q, &c.phi)
        } else {
            recover_candidate(p, q, c)
        }
    };
    let results: Vec<Result<Option<AffineEquivalence>, Error>> = if opts.sequential {
        cands.iter().map(recover).collect()
    } else {
        cands.par_iter().map(recover).collect()
    };
    let mut eqs = Vec::new();
    for r in results {
        match r? {
            Some(e) if verify_equivalence(p, q, &e) => eqs.push(e),
            Some(_) => diag.rejected += 1,
            None => diag.rejected += 1,
        }
    }
    let status = if eqs.is_empty() { Status::NotEquivalent } else { Status::EquivalencesFound };
    Ok(EquivalenceReport { status, dim: n, equivalences: eqs, diagnostics: diag })
}

/// Self-equivalences of `p`; orthogonal ones are tagged.
pub fn symmetries(p: &Curve, opts: &Options) -> Result<EquivalenceReport, Error> {
    affine_equivalences(p, p, opts)
}

/// Applies `x -> A x + b` to a constant vector.
pub fn apply_affine(a: &[Vec<Gr>], b: &[Gr], x: &[Gr]) -> Vec<Gr> {
    (0..a.len()).map(|i| (0..x.len()).fold(b[i].clone(), |acc, j| &acc + &(&a[i][j] * &x[j]))).collect()
}

/// Polynomial in `beta` for one translation entry.
pub fn translation_entry(eq: &AffineEquivalence, i: usize) -> MultiPoly {
    MultiPoly::constant(eq.b[i].clone()).add(&MultiPoly::var(Var::BETA).scale(&eq.b_beta[i]))
}
