//! Reduced rational functions over Q(i).

use std::fmt;

use num_traits::{One, Zero};

use super::gaussian::Gr;
use super::gcd::poly_gcd;
use super::poly::{Mono, MultiPoly, Var};

/// `num/den` with `gcd(num, den) = 1` and `den` monic; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Reduces and normalizes. Panics on a zero denominator.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let c = den.leading_coeff();
            return Self { num: num.scale(&c.inv().unwrap()), den: MultiPoly::one() };
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::normalized(num, den)
    }

    /// Builds from a fraction already known to be in lowest terms.
    pub fn from_coprime(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        Self::normalized(num, den)
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.inv().unwrap();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        Self { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: Gr) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Gr::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant iff both parts are constant (canonical form makes this exact).
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Gr> {
        if self.is_constant() {
            Some(&self.num.constant_value().unwrap() / &self.den.constant_value().unwrap())
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return Self::from_coprime(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        if o.den.is_one() {
            return Self::from_coprime(o.num.mul(&self.den).add(&self.num), self.den.clone());
        }
        let g = poly_gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Self::from_coprime(num, self.den.mul(&o.den));
        }
        let bd = self.den.div_exact(&g).unwrap();
        let dd = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&dd).add(&o.num.mul(&bd));
        Self::new(num, bd.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.num.constant_value().filter(|_| self.den.is_one()) {
            return Self { num: o.num.scale(&c), den: o.den.clone() };
        }
        if let Some(c) = o.num.constant_value().filter(|_| o.den.is_one()) {
            return Self { num: self.num.scale(&c), den: self.den.clone() };
        }
        let g1 = poly_gcd(&self.num, &o.den);
        let g2 = poly_gcd(&o.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = o.den.div_exact(&g1).unwrap();
        let c = o.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Self::from_coprime(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, c: &Gr) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let e = e as u32;
        Self::normalized(self.num.pow(e), self.den.pow(e))
    }

    /// Applies a derivation given by its values on the variables.
    pub fn derive(&self, d: &Derivation) -> Self {
        let dn = d.apply(&self.num);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = d.apply(&self.den);
        // (n' d - n d') / d^2, with the common factor of d and d' removed first
        let g = poly_gcd(&self.den, &dd);
        let den_g = self.den.div_exact(&g).unwrap();
        let dd_g = dd.div_exact(&g).unwrap();
        let num = dn.mul(&den_g).sub(&self.num.mul(&dd_g));
        Self::new(num, den_g.mul(&self.den))
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Self {
        self.derive(&Derivation::partial(v))
    }

    /// Evaluates every variable; None when the denominator vanishes.
    pub fn eval(&self, val: &dyn Fn(Var) -> Gr) -> Option<Gr> {
        let d = self.den.eval(val);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(val) / &d)
    }

    /// Substitutes a value for one variable; None when the denominator vanishes identically.
    pub fn eval_var(&self, v: Var, x: &Gr) -> Option<Self> {
        let d = self.den.eval_var(v, x);
        if d.is_zero() {
            return None;
        }
        Some(Self::new(self.num.eval_var(v, x), d))
    }

    /// Substitutes rational functions for several variables at once.
    pub fn substitute(&self, subs: &[(Var, RatFunc)]) -> Option<Self> {
        let n = substitute_poly(&self.num, subs);
        let d = substitute_poly(&self.den, subs);
        n.div(&d)
    }

    pub fn rename(&self, from: Var, to: Var) -> Self {
        Self { num: self.num.rename(from, to), den: self.den.rename(from, to) }
    }
}

/// Substitutes rational functions for variables of a polynomial.
pub fn substitute_poly(p: &MultiPoly, subs: &[(Var, RatFunc)]) -> RatFunc {
    if subs.is_empty() || p.is_constant() {
        return RatFunc::from_poly(p.clone());
    }
    let (v, r) = (&subs[0].0, &subs[0].1);
    let rest = &subs[1..];
    if !p.contains_var(*v) {
        return substitute_poly(p, rest);
    }
    let coeffs = p.coeffs_in(*v);
    let deg = coeffs.len() - 1;
    // homogenize: sum c_k num^k den^(deg-k) / den^deg
    let (rn, rd) = (r.num(), r.den());
    let mut num_powers = vec![MultiPoly::one()];
    for k in 1..=deg {
        num_powers.push(num_powers[k - 1].mul(rn));
    }
    let mut den_powers = vec![MultiPoly::one()];
    for k in 1..=deg {
        den_powers.push(den_powers[k - 1].mul(rd));
    }
    let mut acc = RatFunc::zero();
    let mut poly_acc = MultiPoly::zero();
    let mut has_rest = false;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if rest.iter().any(|(w, _)| c.contains_var(*w)) {
            has_rest = true;
            let ck = substitute_poly(c, rest);
            let term = RatFunc::from_poly(num_powers[k].mul(&den_powers[deg - k]));
            acc = acc.add(&ck.mul(&term));
        } else {
            poly_acc = poly_acc.add(&c.mul(&num_powers[k]).mul(&den_powers[deg - k]));
        }
    }
    let total = if has_rest { acc.add(&RatFunc::from_poly(poly_acc)) } else { RatFunc::from_poly(poly_acc) };
    total.mul(&RatFunc::new(MultiPoly::one(), den_powers[deg].clone()))
}

/// A derivation of the polynomial ring, fixed by `D(v)` for the variables it moves.
/// `D(v) = c * v^e` covers both `z' = 1` and `t' = mu t`.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub rules: Vec<(Var, Gr, bool)>,
}

impl Derivation {
    /// `d/dv`.
    pub fn partial(v: Var) -> Self {
        Self { rules: vec![(v, Gr::one(), false)] }
    }

    /// `d/dz` on `Q(i)(z, t)` with `t = e^{mu z}`.
    pub fn exp_type(z: Var, t: Var, mu: Gr) -> Self {
        Self { rules: vec![(z, Gr::one(), false), (t, mu, true)] }
    }

    /// Derivative of a polynomial. A rule `(v, c, true)` means `D(v) = c v`.
    pub fn apply(&self, p: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (v, c, scaling) in &self.rules {
            if !p.contains_var(*v) {
                continue;
            }
            if *scaling {
                // D(v^e) = e c v^e, so each term is multiplied by e c
                let terms = p.terms().iter().filter_map(|(m, a)| {
                    let e = m.exp(*v);
                    (e > 0).then(|| (m.clone(), &(a * c) * &Gr::from_int(e as i64)))
                });
                acc = acc.add(&MultiPoly::from_terms(terms));
            } else {
                acc = acc.add(&p.derivative(*v).scale(c));
            }
        }
        acc
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let d = if self.den.len() > 1 { format!("({})", self.den) } else { self.den.to_string() };
        write!(f, "{n}/{d}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Convenience: `v^e` as a polynomial.
pub fn mono_poly(v: Var, e: u32) -> MultiPoly {
    MultiPoly::term(Mono::var(v, e), Gr::one())
}
