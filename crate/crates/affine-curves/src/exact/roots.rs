//! Roots in Q(i) of univariate polynomials with Gaussian rational coefficients.
//!
//! The polynomial is cleared to Z[i], mapped to F_p along both embeddings of i
//! (p = 1 mod 4), roots mod p are found by equal-degree splitting, lifted
//! p-adically, and recombined; every candidate is checked exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gaussian::Gr;
use super::gcd::squarefree_univariate;
use super::modular::{primes_below, sqrt_minus_one, Zp};
use super::poly::{MultiPoly, Var};

/// Distinct roots in Q(i) of the polynomial with ascending coefficients `coeffs`.
pub fn gaussian_roots(coeffs: &[Gr]) -> Vec<Gr> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let f = MultiPoly::from_univariate(Var::Z, &c);
    let sf = squarefree_univariate(&f).to_univariate(Var::Z);
    let mut roots = Vec::new();
    // strip the root at zero
    let lead_zero = sf.iter().take_while(|x| x.is_zero()).count();
    let sf = if lead_zero > 0 {
        roots.push(Gr::zero());
        sf[lead_zero..].to_vec()
    } else {
        sf
    };
    match sf.len() {
        0 | 1 => {}
        2 => roots.push(-(&sf[0] / &sf[1])),
        _ => roots.extend(roots_squarefree(&sf)),
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Roots of a univariate polynomial (in any single variable).
pub fn poly_roots(p: &MultiPoly) -> Vec<Gr> {
    if p.is_constant() {
        return Vec::new();
    }
    let v = p.univariate_var().expect("poly_roots needs a univariate polynomial");
    gaussian_roots(&p.to_univariate(v))
}

fn eval(c: &[Gr], x: &Gr) -> Gr {
    c.iter().rev().fold(Gr::zero(), |acc, a| &(&acc * x) + a)
}

/// Coefficients cleared to Gaussian integers: (real parts, imaginary parts).
fn to_gaussian_integers(c: &[Gr]) -> (Vec<BigInt>, Vec<BigInt>) {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
    c.iter().map(|x| x.scaled_parts(&l)).unzip()
}

fn abs1(a: &BigInt, b: &BigInt) -> BigInt {
    a.abs() + b.abs()
}

fn roots_squarefree(c: &[Gr]) -> Vec<Gr> {
    let (re, im) = to_gaussian_integers(c);
    let d = re.len() - 1;
    let lc = Gr::from_bigint(re[d].clone()) + Gr::i() * Gr::from_bigint(im[d].clone());
    let bound = abs1(&re[d], &im[d]) + (0..d).map(|k| abs1(&re[k], &im[k])).max().unwrap_or_default();
    let target = BigInt::from(4) * &bound + 1;
    for p in primes_below(1u64 << 62, Some(1)) {
        let f = Zp::new(p);
        let iota = sqrt_minus_one(f);
        let embed = |s: u64| -> Vec<u64> {
            re.iter()
                .zip(&im)
                .map(|(a, b)| f.add(f.from_bigint(a), f.mul(s, f.from_bigint(b))))
                .collect()
        };
        let f1 = embed(iota);
        let f2 = embed(f.neg(iota));
        if f1[d] == 0 || f2[d] == 0 || !squarefree_mod(f, &f1) || !squarefree_mod(f, &f2) {
            continue;
        }
        let r1 = roots_mod_p(f, &f1);
        let r2 = roots_mod_p(f, &f2);
        if r1.is_empty() || r2.is_empty() {
            return Vec::new();
        }
        // lift to a modulus exceeding the coefficient bound
        let pb = BigInt::from(p);
        let mut modulus = pb.clone();
        while modulus <= target {
            modulus = &modulus * &modulus;
        }
        let iota_big = lift_sqrt_minus_one(BigInt::from(iota), &pb, &modulus);
        let neg_iota = (&modulus - &iota_big) % &modulus;
        let embed_big = |s: &BigInt| -> Vec<BigInt> {
            re.iter().zip(&im).map(|(a, b)| (a + b * s).mod_floor(&modulus)).collect()
        };
        let g1 = embed_big(&iota_big);
        let g2 = embed_big(&neg_iota);
        let lc1 = g1[d].clone();
        let lc2 = g2[d].clone();
        let l1: Vec<BigInt> = r1.iter().map(|&r| &lc1 * newton_lift(&g1, r, &pb, &modulus) % &modulus).collect();
        let l2: Vec<BigInt> = r2.iter().map(|&r| &lc2 * newton_lift(&g2, r, &pb, &modulus) % &modulus).collect();
        let inv2 = mod_inv(&BigInt::from(2), &modulus);
        let inv2i = mod_inv(&(BigInt::from(2) * &iota_big), &modulus);
        let mut out = Vec::new();
        for a in &l1 {
            for b in &l2 {
                let x = symmetric(&((a + b) * &inv2), &modulus);
                let y = symmetric(&((a - b) * &inv2i), &modulus);
                if x.abs() > bound || y.abs() > bound {
                    continue;
                }
                let beta = Gr::from_bigint(x) + Gr::i() * Gr::from_bigint(y);
                let r = &beta / &lc;
                if eval(c, &r).is_zero() {
                    out.push(r);
                }
            }
        }
        return out;
    }
    unreachable!("ran out of primes")
}

fn squarefree_mod(f: Zp, a: &[u64]) -> bool {
    let g = f.poly_gcd(a, &f.poly_derivative(a));
    g.len() == 1
}

/// Distinct roots in F_p of a squarefree polynomial.
fn roots_mod_p(f: Zp, a: &[u64]) -> Vec<u64> {
    let a = f.poly_monic(a);
    let x = vec![0, 1];
    let xp = f.poly_powmod(&x, f.p, &a);
    let g = f.poly_gcd(&a, &f.poly_sub(&xp, &x));
    let mut out = Vec::new();
    split_linear(f, &g, 1, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(f: Zp, g: &[u64], mut shift: u64, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => {
            let g = f.poly_monic(g);
            out.push(f.neg(g[0]));
        }
        _ => loop {
            let h = f.poly_powmod(&[shift % f.p, 1], (f.p - 1) / 2, g);
            let h = f.poly_sub(&h, &[1]);
            let d = f.poly_gcd(g, &h);
            shift += 1;
            if d.len() > 1 && d.len() < g.len() {
                let (q, _) = f.poly_divrem(g, &d);
                split_linear(f, &d, shift, out);
                split_linear(f, &q, shift, out);
                return;
            }
        },
    }
}

fn eval_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| (acc * x + a).mod_floor(m))
}

fn deriv_eval_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for k in (1..c.len()).rev() {
        acc = (acc * x + &c[k] * BigInt::from(k)).mod_floor(m);
    }
    acc
}

fn newton_lift(c: &[BigInt], r: u64, p: &BigInt, target: &BigInt) -> BigInt {
    let mut m = p.clone();
    let mut x = BigInt::from(r);
    while &m < target {
        m = (&m * &m).min(target.clone());
        let fx = eval_mod(c, &x, &m);
        let dfx = deriv_eval_mod(c, &x, &m);
        x = (&x - fx * mod_inv(&dfx, &m)).mod_floor(&m);
    }
    x
}

fn lift_sqrt_minus_one(i0: BigInt, p: &BigInt, target: &BigInt) -> BigInt {
    let c = [BigInt::one(), BigInt::zero(), BigInt::one()];
    let r = i0.to_u64().unwrap();
    newton_lift(&c, r, p, target)
}

fn mod_inv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "no inverse modulo");
    e.x.mod_floor(m)
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r + &r > *m { r - m } else { r }
}

/// Rational roots of a polynomial with rational coefficients.
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let c: Vec<Gr> = coeffs.iter().cloned().map(Gr::real).collect();
    gaussian_roots(&c).into_iter().filter(|r| r.is_real()).map(|r| r.re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(rs: &[Gr], lc: Gr) -> Vec<Gr> {
        let mut c = vec![lc];
        for r in rs {
            let mut n = vec![Gr::zero(); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                n[k + 1] += a;
                let t = a * &-r.clone();
                n[k] += &t;
            }
            c = n;
        }
        c
    }

    #[test]
    fn recovers_planted_roots() {
        let rs = vec![Gr::from_frac(1, 3), Gr::cplx(2, -5), "-7/2+1/3 i".parse().unwrap(), Gr::i(), Gr::zero()];
        let mut c = from_roots(&rs, Gr::cplx(3, 1));
        // an irreducible factor x^2 - 2 contributes nothing
        c = crate::exact::poly::dense_mul(&c, &[Gr::from_int(-2), Gr::zero(), Gr::one()]);
        let mut want = rs.clone();
        want.sort();
        assert_eq!(gaussian_roots(&c), want);
    }

    #[test]
    fn repeated_and_irreducible() {
        let c = from_roots(&[Gr::one(), Gr::one(), Gr::from_int(-4)], Gr::one());
        assert_eq!(gaussian_roots(&c), vec![Gr::from_int(-4), Gr::one()]);
        assert!(gaussian_roots(&[Gr::one(), Gr::zero(), Gr::from_int(3)]).is_empty());
        assert_eq!(gaussian_roots(&[Gr::one(), Gr::zero(), Gr::one()]), {
            let mut v = vec![Gr::i(), -Gr::i()];
            v.sort();
            v
        });
    }
}
