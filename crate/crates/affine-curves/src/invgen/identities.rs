//! Executable checks of the derivation behind the templates: Schwarzian
//! collapse of Möbius derivatives, Bell/Lah rewriting, the expansions of
//! `I_i(q(w))`, and the back-substituted powers of `w'`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::combinat::{b_tilde, bell_partial, binomial, factorial};
use super::mdet::m_determinant;
use super::templates::templates;
use crate::curve::Curve;
use crate::exact::ratfunc::substitute_poly;
use crate::exact::{Gr, MultiPoly, RatFunc, Var};
use crate::invariants::{delta, eval_template, invariants, InvariantVector};
use crate::moebius::MoebiusMap;
use crate::Error;

fn q(n: i64, d: i64) -> Gr {
    Gr::from_frac(n, d)
}

fn big(x: BigInt) -> Gr {
    Gr::from_bigint(x)
}

fn rf(c: Gr) -> RatFunc {
    RatFunc::constant(c)
}

/// k-th derivative of the map as a function of z.
pub fn moebius_derivative(phi: &MoebiusMap, k: usize) -> RatFunc {
    (0..k).fold(phi.as_ratfunc(Var::Z), |acc, _| acc.derivative(Var::Z))
}

/// `w^(k) = k!/2^(k-1) (w'')^(k-1) / (w')^(k-2)` for `k >= 3`.
pub fn schwarzian_check(phi: &MoebiusMap, k: usize) -> bool {
    assert!(k >= 3, "schwarzian_check needs k >= 3");
    let lhs = moebius_derivative(phi, k);
    let w1 = moebius_derivative(phi, 1);
    let w2 = moebius_derivative(phi, 2);
    let c = Gr::real(BigRational::new(factorial(k as u32), BigInt::from(2).pow(k as u32 - 1)));
    let rhs = w2.pow(k as i32 - 1).div(&w1.pow(k as i32 - 2)).unwrap().scale(&c);
    lhs == rhs
}

/// Outcome of [`derivation_identities_check`]: which identities held.
#[derive(Clone, Debug, Default)]
pub struct IdentityCheck {
    pub passed: Vec<&'static str>,
    pub failed: Vec<&'static str>,
}

impl IdentityCheck {
    pub fn ok(&self) -> bool {
        self.failed.is_empty()
    }

    fn record(&mut self, name: &'static str, holds: bool) {
        if holds { self.passed.push(name) } else { self.failed.push(name) }
    }

    pub fn holds(&self, name: &str) -> bool {
        self.passed.contains(&name)
    }
}

/// Concrete values of the formal symbols for a curve and a reparametrization.
pub struct DerivationScratch {
    pub n: usize,
    /// `K_i = I_i(c ∘ phi)`.
    pub k: Vec<RatFunc>,
    /// `G_i = I_i(c) ∘ phi`, with `G_{n+1} = -1`.
    pub g: Vec<RatFunc>,
    /// `w^(k)` for `k = 0..=n+2`.
    pub w: Vec<RatFunc>,
    /// `K_n - w' G_n`.
    pub phi_shift: RatFunc,
}

impl DerivationScratch {
    pub fn new(c: &Curve, phi: &MoebiusMap) -> Result<Self, Error> {
        let n = c.dim();
        let composed = c.compose(phi)?;
        let kv = invariants(&composed)?;
        let gv = invariants(c)?;
        let sub = [(Var::Z, phi.as_ratfunc(Var::Z))];
        let mut g: Vec<RatFunc> = gv.values().iter().map(|x| x.substitute(&sub).unwrap()).collect();
        g.push(RatFunc::int(-1));
        let mut k = kv.values().to_vec();
        k.push(RatFunc::int(-1));
        let w: Vec<RatFunc> = (0..=n + 2).map(|j| moebius_derivative(phi, j)).collect();
        let phi_shift = k[n].sub(&w[1].mul(&g[n]));
        Ok(Self { n, k, g, w, phi_shift })
    }

    fn wp(&self) -> &RatFunc {
        &self.w[1]
    }
}

/// Checks every identity of the derivation on one curve and one map.
pub fn derivation_identities_check(c: &Curve, phi: &MoebiusMap) -> Result<IdentityCheck, Error> {
    let n = c.dim();
    let s = DerivationScratch::new(c, phi)?;
    let mut out = IdentityCheck::default();
    let nn1 = (n * (n + 1)) as i64;
    let wp = s.wp().clone();

    // I_0 = I_n' + I_{n-1} + I_n^2
    let iv = invariants(c)?;
    let i0_identity = iv.get(0) == &iv.get(n).derivative(Var::Z).add(iv.get(n - 1)).add(&iv.get(n).pow(2));
    out.record("i0-identity", i0_identity);

    // Δ(c∘φ) = w'^{n(n+1)/2} Δ(c)∘φ
    let composed = c.compose(phi)?;
    let d_comp = delta(&composed);
    let d_sub = delta(c).substitute(&[(Var::Z, phi.as_ratfunc(Var::Z))]).unwrap();
    out.record("delta-transform", d_comp == wp.pow((nn1 / 2) as i32).mul(&d_sub));

    // K_n = n(n+1)/2 w''/w' + w' G_n
    let rhs6 = s.w[2].div(&wp).unwrap().scale(&q(nn1, 2)).add(&wp.mul(&s.g[n]));
    out.record("in-transform", s.k[n] == rhs6);

    // w^(k) = k!/(n(n+1))^{k-1} w' Φ^{k-1}
    let w_derivs = (2..=n + 2).all(|k| {
        let c = Gr::real(BigRational::new(factorial(k as u32), BigInt::from(nn1).pow(k as u32 - 1)));
        s.w[k] == wp.mul(&s.phi_shift.pow(k as i32 - 1)).scale(&c)
    });
    out.record("w-derivatives", w_derivs);

    // B_{k,m}(w', w'', ...) = B~_{k,m} w'^m Φ^{k-m}
    let bell_scaling = (1..=6u32).all(|k| {
        (1..=k).all(|m| {
            let b = bell_partial(k, m).unwrap();
            let subs: Vec<(Var, RatFunc)> =
                (1..=(k - m + 1) as usize).map(|j| (Var::x(j), moebius_derivative(phi, j))).collect();
            let lhs = substitute_poly(&b, &subs);
            let rhs = wp.pow(m as i32).mul(&s.phi_shift.pow((k - m) as i32)).scale(&b_tilde(n as u32, k, m));
            lhs == rhs
        })
    });
    out.record("bell-scaling", bell_scaling);

    // K_i = sum_j (-1)^j M_j w'^{n-i+1-j} Φ^j G_{i+j}
    let k_expansion = (1..n).all(|i| {
        let mut acc = RatFunc::zero();
        for j in 0..=n - i + 1 {
            let m = m_determinant(n, i, j).unwrap();
            let sign = if j % 2 == 0 { Gr::one() } else { -Gr::one() };
            let t = wp.pow((n - i + 1 - j) as i32).mul(&s.phi_shift.pow(j as i32)).mul(&s.g[i + j]);
            acc = acc.add(&t.scale(&(&m * &sign)));
        }
        acc == s.k[i]
    });
    out.record("k-expansion", k_expansion);

    // K_i = sum_k (-1)^k K_n^k w'^{n-i+1-k} sum_{j>=k} C(j,k) M_j G_n^{j-k} G_{j+i}
    let k_binomial = (1..n).all(|i| {
        let mut acc = RatFunc::zero();
        for k in 0..=n - i + 1 {
            let mut inner = RatFunc::zero();
            for j in k..=n - i + 1 {
                let m = m_determinant(n, i, j).unwrap();
                let c = &m * &big(binomial(j as u32, k as u32));
                inner = inner.add(&s.g[n].pow((j - k) as i32).mul(&s.g[j + i]).scale(&c));
            }
            let sign = if k % 2 == 0 { Gr::one() } else { -Gr::one() };
            let t = s.k[n].pow(k as i32).mul(&wp.pow((n - i + 1 - k) as i32)).mul(&inner).scale(&sign);
            acc = acc.add(&t);
        }
        acc == s.k[i]
    });
    out.record("k-binomial", k_binomial);

    // w'^k = (sum M_i K_{n-k+1+i} K_n^i) / (sum M_i G_{n-k+1+i} G_n^i)
    let wp_power = (2..=n).all(|k| {
        let mut num = RatFunc::zero();
        let mut den = RatFunc::zero();
        for i in 0..=k {
            let m = m_determinant(n, n + 1 - k, i).unwrap();
            num = num.add(&s.k[n - k + 1 + i].mul(&s.k[n].pow(i as i32)).scale(&m));
            den = den.add(&s.g[n - k + 1 + i].mul(&s.g[n].pow(i as i32)).scale(&m));
        }
        !den.is_zero() && num.div(&den).unwrap() == wp.pow(k as i32)
    });
    out.record("wp-power", wp_power);

    // K_0 = c K_n^2 + w'^2 (G_0 - c G_n^2), c = (n+2)/(2n)
    let c0 = q(n as i64 + 2, 2 * n as i64);
    let k0 = s.k[n].pow(2).scale(&c0).add(&wp.pow(2).mul(&s.g[0].sub(&s.g[n].pow(2).scale(&c0))));
    out.record("k0", k0 == s.k[0]);

    if n == 3 {
        out.record("n3-elimination", n3_elimination_holds(&s));
    }

    let ts = templates(n)?;
    let fc = ts.iter().all(|t| {
        let lhs = eval_template(t, &invariants(&composed).unwrap());
        let rhs = eval_template(t, &iv).map(|f| f.substitute(&[(Var::Z, phi.as_ratfunc(Var::Z))]).unwrap());
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => a == b,
            (Err(a), Err(b)) => a == b,
            _ => false,
        }
    });
    out.record("moebius-commuting", fc);
    Ok(out)
}

/// The three published n = 3 expansions of `I_i(q(w))`.
fn n3_elimination_holds(s: &DerivationScratch) -> bool {
    let (w1, w2) = (&s.w[1], &s.w[2]);
    let (k, g) = (&s.k, &s.g);
    let l1 = w1.pow(3).mul(&k[1]);
    let r1 = w2
        .pow(3)
        .scale(&Gr::from_int(3))
        .add(&w1.pow(2).mul(&w2.pow(2)).mul(&g[3]).scale(&q(3, 2)))
        .sub(&w1.pow(4).mul(w2).mul(&g[2]))
        .add(&w1.pow(6).mul(&g[1]));
    let l2 = w1.pow(2).mul(&k[2]);
    let r2 = w2
        .pow(2)
        .scale(&Gr::from_int(-9))
        .add(&w1.pow(4).mul(&g[2]))
        .sub(&w1.pow(2).mul(w2).mul(&g[3]).scale(&Gr::from_int(3)));
    let l3 = w1.mul(&k[3]);
    let r3 = w2.scale(&Gr::from_int(6)).add(&w1.pow(2).mul(&g[3]));
    l1 == r1 && l2 == r2 && l3 == r3
}

/// The Bell polynomial scaling with formal symbols: substituting
/// `x_j = j!/(n(n+1))^{j-1} w' Φ^{j-1}` into `B_{k,m}` gives `B~_{k,m} w'^m Φ^{k-m}`.
pub fn bell_scaling_formal(n: usize, kmax: u32) -> bool {
    let wp = MultiPoly::var(Var::WP);
    let ph = MultiPoly::var(Var::PHI);
    let nn1 = BigInt::from(n * (n + 1));
    (1..=kmax).all(|k| {
        (1..=k).all(|m| {
            let b = bell_partial(k, m).unwrap();
            let subs: Vec<(Var, RatFunc)> = (1..=(k - m + 1) as usize)
                .map(|j| {
                    let c = Gr::real(BigRational::new(factorial(j as u32), nn1.pow(j as u32 - 1)));
                    (Var::x(j), RatFunc::from_poly(wp.mul(&ph.pow(j as u32 - 1)).scale(&c)))
                })
                .collect();
            let lhs = substitute_poly(&b, &subs);
            let rhs = wp.pow(m).mul(&ph.pow(k - m)).scale(&b_tilde(n as u32, k, m));
            lhs == RatFunc::from_poly(rhs)
        })
    })
}

/// Right side of the `K_i` expansion in formal symbols `K_n`, `G_j`, `w'`.
pub fn k_expansion_formal(n: usize, i: usize) -> MultiPoly {
    let kn = MultiPoly::var(Var::k_sym(n));
    let wp = MultiPoly::var(Var::WP);
    let gs = |j: usize| if j == n + 1 { MultiPoly::int(-1) } else { MultiPoly::var(Var::g_sym(j)) };
    let mut acc = MultiPoly::zero();
    for k in 0..=n - i + 1 {
        let mut inner = MultiPoly::zero();
        for j in k..=n - i + 1 {
            let c = &m_determinant(n, i, j).unwrap() * &big(binomial(j as u32, k as u32));
            inner = inner.add(&gs(n).pow((j - k) as u32).mul(&gs(j + i)).scale(&c));
        }
        let sign = if k % 2 == 0 { Gr::one() } else { -Gr::one() };
        acc = acc.add(&kn.pow(k as u32).mul(&wp.pow((n - i + 1 - k) as u32)).mul(&inner).scale(&sign));
    }
    acc
}

/// The coefficient of `w'` in every `K_i` expansion vanishes.
pub fn k_linear_coefficient_vanishes(n: usize) -> bool {
    (1..n).all(|i| {
        let p = k_expansion_formal(n, i);
        let cs = p.coeffs_in(Var::WP);
        cs.len() < 2 || cs[1].is_zero()
    })
}

/// Numerator of `w'^k` uses only `K` symbols and the denominator only `G` symbols.
pub fn wp_power_formal(n: usize, k: usize) -> (MultiPoly, MultiPoly) {
    let ks = |j: usize| if j == n + 1 { MultiPoly::int(-1) } else { MultiPoly::var(Var::k_sym(j)) };
    let gs = |j: usize| if j == n + 1 { MultiPoly::int(-1) } else { MultiPoly::var(Var::g_sym(j)) };
    let mut num = MultiPoly::zero();
    let mut den = MultiPoly::zero();
    for i in 0..=k {
        let m = m_determinant(n, n + 1 - k, i).unwrap();
        num = num.add(&ks(n - k + 1 + i).mul(&ks(n).pow(i as u32)).scale(&m));
        den = den.add(&gs(n - k + 1 + i).mul(&gs(n).pow(i as u32)).scale(&m));
    }
    (num, den)
}

pub fn wp_power_separated(n: usize) -> bool {
    (2..=n).all(|k| {
        let (num, den) = wp_power_formal(n, k);
        num.vars().iter().all(|v| (48..80).contains(&v.0)) && den.vars().iter().all(|v| (80..112).contains(&v.0))
    })
}

/// `I_0(c)` against `I_0 = I_n' + I_(n-1) + I_n^2` for a vector already computed.
pub fn i0_identity_holds(iv: &InvariantVector) -> bool {
    let n = iv.n();
    iv.get(0) == &iv.get(n).derivative(Var::Z).add(iv.get(n - 1)).add(&iv.get(n).pow(2))
}

pub fn rf_const(c: Gr) -> RatFunc {
    rf(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schwarzian_examples() {
        assert!(schwarzian_check(&MoebiusMap::from_ints(0, 1, 1, 0).unwrap(), 3));
        assert!(schwarzian_check(&MoebiusMap::from_ints(2, -1, 0, 1).unwrap(), 3));
        assert!(schwarzian_check(&MoebiusMap::from_ints(1, 1, 1, -1).unwrap(), 4));
        assert_eq!(moebius_derivative(&MoebiusMap::from_ints(0, 1, 1, 0).unwrap(), 3), {
            RatFunc::var(Var::Z).pow(-4).scale(&Gr::from_int(-6))
        });
    }

    #[test]
    fn formal_identities() {
        for n in 2..=5 {
            assert!(bell_scaling_formal(n, 6));
            assert!(k_linear_coefficient_vanishes(n));
            assert!(wp_power_separated(n));
        }
    }

    #[test]
    fn concrete_identities_n3() {
        let c = Curve::from_int_coeffs(&[vec![0, 1], vec![0, 0, 1], vec![0, 0, 0, 0, 1]]).unwrap();
        let r = derivation_identities_check(&c, &MoebiusMap::from_ints(2, -1, 0, 1).unwrap()).unwrap();
        assert!(r.ok(), "failed: {:?}", r.failed);
        let r = derivation_identities_check(&c, &MoebiusMap::from_ints(2, -1, 1, 3).unwrap()).unwrap();
        assert!(r.ok(), "failed: {:?}", r.failed);
    }
}
