//! Sparse multivariate polynomials over Q(i) in graded lexicographic order.
//!
//! Variables live in one global namespace (`Var`); their index fixes the
//! variable order, `z < w < t < tw < beta < s < ...`, with lower indices more
//! significant in the lexicographic tie break.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::gaussian::Gr;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u16);

impl Var {
    /// Curve parameter.
    pub const Z: Var = Var(0);
    /// Parameter of the second curve in a pair.
    pub const W: Var = Var(1);
    /// `e^{mu z}` of the first curve.
    pub const T: Var = Var(2);
    /// `e^{mu w}` of the second curve.
    pub const TW: Var = Var(3);
    /// Unknown additive shift in exp-type reparametrizations.
    pub const BETA: Var = Var(4);
    /// Unknown unit `e^{mu beta}`.
    pub const S: Var = Var(5);
    /// Formal first derivative of a reparametrization.
    pub const WP: Var = Var(144);
    /// Formal `K_n - w' G_n`.
    pub const PHI: Var = Var(145);

    /// Formal invariant symbol `I_k`.
    pub fn inv(k: usize) -> Var {
        assert!(k < 32);
        Var(16 + k as u16)
    }
    /// Formal `I_k(q(w))`.
    pub fn k_sym(k: usize) -> Var {
        assert!(k < 32);
        Var(48 + k as u16)
    }
    /// Formal `I_k(q)(w)`.
    pub fn g_sym(k: usize) -> Var {
        assert!(k < 32);
        Var(80 + k as u16)
    }
    /// Bell polynomial argument `x_k`.
    pub fn x(k: usize) -> Var {
        assert!(k < 32);
        Var(112 + k as u16)
    }
    /// Formal k-th derivative of a reparametrization.
    pub fn wder(k: usize) -> Var {
        assert!(k < 32);
        Var(160 + k as u16)
    }

    /// Index of an `I_k` symbol.
    pub fn inv_index(self) -> Option<usize> {
        (16..48).contains(&self.0).then(|| (self.0 - 16) as usize)
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "z".into(),
            1 => "w".into(),
            2 => "t".into(),
            3 => "tw".into(),
            4 => "beta".into(),
            5 => "s".into(),
            144 => "wp".into(),
            145 => "Phi".into(),
            16..=47 => format!("I{}", self.0 - 16),
            48..=79 => format!("K{}", self.0 - 48),
            80..=111 => format!("G{}", self.0 - 80),
            112..=143 => format!("x{}", self.0 - 112),
            160..=191 => format!("w{}", self.0 - 160),
            k => format!("v{k}"),
        }
    }
}

/// Sparse exponent vector: `(var, exp)` pairs sorted by variable, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Mono(pub SmallVec<[(Var, u32); 4]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Mono::one();
        if e > 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut m = Mono::one();
        for &(v, e) in pairs {
            m = m.mul(&Mono::var(v, e));
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut out = SmallVec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (a, b) = (self.0[i], o.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Mono(out)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 < v {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == v {
                let f = o.0[j].1;
                j += 1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
            } else {
                out.push((v, e));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    /// Removes variable `v`, returning its exponent.
    pub fn split_var(&self, v: Var) -> (u32, Mono) {
        let mut e = 0;
        let mut rest = SmallVec::new();
        for &p in &self.0 {
            if p.0 == v {
                e = p.1;
            } else {
                rest.push(p);
            }
        }
        (e, Mono(rest))
    }

    pub fn rename(&self, from: Var, to: Var) -> Mono {
        let (e, rest) = self.split_var(from);
        rest.mul(&Mono::var(to, e))
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        let d = self.degree().cmp(&o.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), o.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => {
                    if a.0 != b.0 {
                        // the monomial containing the more significant variable wins
                        return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
                    }
                    if a.1 != b.1 {
                        return a.1.cmp(&b.1);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial with terms sorted in decreasing monomial order and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Mono, Gr)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Gr::one())
    }

    pub fn constant(c: Gr) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Gr::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self { terms: vec![(Mono::var(v, 1), Gr::one())] }
    }

    pub fn term(m: Mono, c: Gr) -> Self {
        Self::constant(c).mul_mono(&m)
    }

    /// Builds from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Gr)>>(it: I) -> Self {
        let mut map: HashMap<Mono, Gr> = HashMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(e) => *e += &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<Mono, Gr>) -> Self {
        let mut terms: Vec<(Mono, Gr)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self { terms }
    }

    /// Dense univariate constructor, `coeffs[k]` multiplies `v^k`.
    pub fn from_univariate(v: Var, coeffs: &[Gr]) -> Self {
        let mut terms: Vec<(Mono, Gr)> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Mono::var(v, k as u32), c.clone()))
            .collect();
        terms.shrink_to_fit();
        Self { terms }
    }

    pub fn terms(&self) -> &[(Mono, Gr)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Gr> {
        if self.terms.is_empty() {
            Some(Gr::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Gr {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Gr::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Gr {
        self.terms.first().map_or_else(Gr::zero, |t| t.1.clone())
    }

    pub fn leading_mono(&self) -> Option<&Mono> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree())
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).min().unwrap_or(0)
    }

    /// Variables that occur, in increasing index order.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.iter().flat_map(|t| t.0 .0.iter().map(|p| p.0)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    /// The single variable of a univariate polynomial (None for constants or several).
    pub fn univariate_var(&self) -> Option<Var> {
        let mut found: Option<Var> = None;
        for (m, _) in &self.terms {
            match m.0.len() {
                0 => {}
                1 => match found {
                    None => found = Some(m.0[0].0),
                    Some(v) if v == m.0[0].0 => {}
                    _ => return None,
                },
                _ => return None,
            }
        }
        found
    }

    /// Dense coefficient vector in `v` for a polynomial in `v` alone.
    pub fn to_univariate(&self, v: Var) -> Vec<Gr> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Gr::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            debug_assert!(m.0.iter().all(|p| p.0 == v));
            out[m.exp(v) as usize] = c.clone();
        }
        out
    }

    pub fn all_real(&self) -> bool {
        self.terms.iter().all(|t| t.1.is_real())
    }

    pub fn scale(&self, c: &Gr) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        if m.is_one() {
            return self.clone();
        }
        Self { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading_coeff();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.inv().unwrap())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut terms = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (&self.terms[i], &o.terms[j]);
            match a.0.cmp(&b.0) {
                Ordering::Greater => {
                    terms.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.1 + &b.1;
                    if !c.is_zero() {
                        terms.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&o.terms[j..]);
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let (Some(u), Some(v)) = (self.univariate_var(), o.univariate_var()) {
            if u == v {
                return Self::from_univariate(u, &dense_mul(&self.to_univariate(u), &o.to_univariate(u)));
            }
        }
        let mut map: HashMap<Mono, Gr> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.get_mut(&m) {
                    Some(e) => *e += &c,
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(map)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.split_var(v);
            (e > 0).then(|| (rest.mul(&Mono::var(v, e - 1)), c * &Gr::from_int(e as i64)))
        }))
    }

    /// Coefficients with respect to `v`: entry `k` multiplies `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, Gr)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        // removing a variable preserves relative order within each bucket only up to
        // ties, so re-sort
        buckets
            .into_iter()
            .map(|mut b| {
                b.sort_unstable_by(|x, y| y.0.cmp(&x.0));
                MultiPoly { terms: b }
            })
            .collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MultiPoly]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let m = Mono::var(v, k as u32);
            for (a, x) in &c.terms {
                terms.push((a.mul(&m), x.clone()));
            }
        }
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        MultiPoly { terms }
    }

    /// Leading coefficient with respect to `v`.
    pub fn lc_in(&self, v: Var) -> MultiPoly {
        let d = self.degree_in(v);
        let mut terms: Vec<(Mono, Gr)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == d)
            .map(|(m, c)| (m.split_var(v).1, c.clone()))
            .collect();
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        MultiPoly { terms }
    }

    pub fn rename(&self, from: Var, to: Var) -> Self {
        if from == to {
            return self.clone();
        }
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.rename(from, to), c.clone())))
    }

    /// Substitutes the value `x` for variable `v`.
    pub fn eval_var(&self, v: Var, x: &Gr) -> Self {
        if !self.contains_var(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.scale(x).add(c);
        }
        acc
    }

    /// Evaluates every variable; `val` must cover all variables that occur.
    pub fn eval(&self, val: &dyn Fn(Var) -> Gr) -> Gr {
        let mut cache: HashMap<(Var, u32), Gr> = HashMap::new();
        let mut acc = Gr::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let p = cache.entry((v, e)).or_insert_with(|| val(v).pow(e));
                t = &t * p;
            }
            acc += &t;
        }
        acc
    }

    /// Univariate Horner evaluation.
    pub fn eval_univariate(&self, v: Var, x: &Gr) -> Gr {
        self.eval_var(v, x).constant_value().expect("polynomial has other variables")
    }

    /// Substitutes the polynomial `q` for variable `v`.
    pub fn substitute(&self, v: Var, q: &MultiPoly) -> Self {
        if !self.contains_var(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(q).add(c);
        }
        acc
    }

    /// Exact quotient `self / g`, or None when `g` does not divide `self`.
    pub fn div_exact(&self, g: &MultiPoly) -> Option<MultiPoly> {
        assert!(!g.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = g.constant_value() {
            return Some(self.scale(&c.inv().unwrap()));
        }
        if let (Some(u), Some(v)) = (self.univariate_var(), g.univariate_var()) {
            if u == v {
                let (q, r) = dense_divrem(&self.to_univariate(u), &g.to_univariate(u));
                return r.iter().all(|c| c.is_zero()).then(|| Self::from_univariate(u, &q));
            }
        }
        if self.is_constant() {
            return None;
        }
        let (glm, glc) = (&g.terms[0].0, &g.terms[0].1);
        let glc_inv = glc.inv().unwrap();
        let mut r = self.clone();
        let mut q_terms: Vec<(Mono, Gr)> = Vec::new();
        while !r.is_zero() {
            let (rm, rc) = (&r.terms[0].0, &r.terms[0].1);
            let m = rm.div(glm)?;
            let c = rc * &glc_inv;
            r = r.sub(&g.mul_mono(&m).scale(&c));
            q_terms.push((m, c));
        }
        Some(MultiPoly { terms: q_terms })
    }
}

pub(crate) fn dense_mul(a: &[Gr], b: &[Gr]) -> Vec<Gr> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Gr::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Dense division over the field; returns (quotient, remainder).
pub(crate) fn dense_divrem(a: &[Gr], b: &[Gr]) -> (Vec<Gr>, Vec<Gr>) {
    let mut b = b.to_vec();
    while b.last().is_some_and(|c| c.is_zero()) {
        b.pop();
    }
    assert!(!b.is_empty());
    let mut r = a.to_vec();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb_inv = b.last().unwrap().inv().unwrap();
    let mut q = vec![Gr::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + b.len() - 1] * &lb_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    r[k + j] -= &(&c * bj);
                }
            }
        }
        q[k] = c;
    }
    r.truncate(b.len() - 1);
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    (q, r)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let coeff = if c.is_real() { c.to_string() } else { format!("({c})") };
            let mono: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| if e == 1 { v.name() } else { format!("{}^{}", v.name(), e) })
                .collect();
            let body = if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono.join("*")
            } else if (-c).is_one() {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", coeff, mono.join("*"))
            };
            if k > 0 && !body.starts_with('-') {
                write!(f, " + {body}")?;
            } else if k > 0 {
                write!(f, " - {}", &body[1..])?;
            } else {
                write!(f, "{body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
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
    fn canonical_order_and_equality() {
        let a = z().mul(&w()).add(&z().pow(2)).add(&MultiPoly::int(1));
        let b = MultiPoly::int(1).add(&z().pow(2)).add(&w().mul(&z()));
        assert_eq!(a, b);
        assert_eq!(a.leading_mono().unwrap(), &Mono::var(Var::Z, 2));
        assert_eq!(a.to_string(), "z^2 + z*w + 1");
    }

    #[test]
    fn exact_division() {
        let f = z().sub(&w()).mul(&z().add(&w()));
        assert_eq!(f.div_exact(&z().sub(&w())).unwrap(), z().add(&w()));
        assert!(f.div_exact(&z().add(&MultiPoly::int(1))).is_none());
        let u = z().pow(3).sub(&MultiPoly::int(1));
        assert_eq!(u.div_exact(&z().sub(&MultiPoly::int(1))).unwrap().to_string(), "z^2 + z + 1");
    }

    #[test]
    fn coefficients_roundtrip() {
        let f = z().pow(2).mul(&w()).add(&w().pow(3)).add(&z());
        let c = f.coeffs_in(Var::W);
        assert_eq!(MultiPoly::from_coeffs_in(Var::W, &c), f);
        assert_eq!(f.lc_in(Var::W), MultiPoly::int(1));
        assert_eq!(f.derivative(Var::W), z().pow(2).add(&w().pow(2).scale(&Gr::from_int(3))));
    }
}
