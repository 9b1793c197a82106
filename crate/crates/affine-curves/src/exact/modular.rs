//! Word-size prime field arithmetic and the modular univariate GCD over Q and Q(i).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gaussian::Gr;

/// Arithmetic in Z/pZ for a prime p < 2^63.
#[derive(Clone, Copy, Debug)]
pub struct Zp {
    pub p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        Self { p }
    }
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }
    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }
    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.p - a }
    }
    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    pub fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }
    pub fn from_bigint(self, x: &BigInt) -> u64 {
        let m = x.mod_floor(&BigInt::from(self.p));
        m.to_u64().unwrap()
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn poly_mul(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Self::trim(&mut out);
        out
    }

    /// Remainder of `a` modulo `b` (b nonzero).
    pub fn poly_rem(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        Self::trim(&mut r);
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        while r.len() > db {
            let k = r.len() - 1;
            let c = self.mul(r[k], inv);
            if c != 0 {
                for j in 0..=db {
                    let idx = k - db + j;
                    r[idx] = self.sub(r[idx], self.mul(c, b[j]));
                }
            }
            r.pop();
            Self::trim(&mut r);
        }
        r
    }

    pub fn poly_divrem(self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        Self::trim(&mut r);
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let inv = self.inv(b[db]);
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let k = r.len() - 1;
            let c = self.mul(r[k], inv);
            q[k - db] = c;
            if c != 0 {
                for j in 0..=db {
                    let idx = k - db + j;
                    r[idx] = self.sub(r[idx], self.mul(c, b[j]));
                }
            }
            r.pop();
        }
        Self::trim(&mut r);
        (q, r)
    }

    pub fn poly_monic(self, a: &[u64]) -> Vec<u64> {
        if a.is_empty() {
            return Vec::new();
        }
        let inv = self.inv(*a.last().unwrap());
        a.iter().map(|&c| self.mul(c, inv)).collect()
    }

    /// Monic gcd.
    pub fn poly_gcd(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        Self::trim(&mut a);
        Self::trim(&mut b);
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    pub fn poly_sub(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|k| self.sub(*a.get(k).unwrap_or(&0), *b.get(k).unwrap_or(&0)))
            .collect();
        Self::trim(&mut out);
        out
    }

    /// `base^e mod f`.
    pub fn poly_powmod(self, base: &[u64], mut e: u64, f: &[u64]) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = self.poly_rem(base, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), f);
            }
            e >>= 1;
            if e > 0 {
                b = self.poly_rem(&self.poly_mul(&b, &b), f);
            }
        }
        acc
    }

    pub fn poly_eval(self, a: &[u64], x: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn poly_derivative(self, a: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = a.iter().enumerate().skip(1).map(|(k, &c)| self.mul(c, k as u64 % self.p)).collect();
        Self::trim(&mut out);
        out
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let f = Zp::new(n);
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Deterministic descending sequence of primes below `start`, optionally restricted
/// to a residue class mod 4.
pub fn primes_below(start: u64, residue_mod4: Option<u64>) -> impl Iterator<Item = u64> {
    let mut n = start;
    std::iter::from_fn(move || loop {
        n -= 1;
        if n < 3 {
            return None;
        }
        if let Some(r) = residue_mod4 {
            if n % 4 != r {
                continue;
            }
        }
        if is_prime_u64(n) {
            return Some(n);
        }
    })
}

/// Clears denominators and content: returns an integer vector proportional to `a`.
pub fn primitive_integer(a: &[BigRational]) -> Vec<BigInt> {
    let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: Vec<BigInt> = a.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r + &r > *m { r - m } else { r }
}

fn trial_divides(a: &[BigInt], b: &[BigInt]) -> bool {
    // does b divide a over Q (b integer primitive)
    let db = b.len() - 1;
    let mut r: Vec<BigRational> = a.iter().cloned().map(BigRational::from_integer).collect();
    let lb = BigRational::from_integer(b[db].clone());
    while r.len() > db {
        let k = r.len() - 1;
        let c = &r[k] / &lb;
        if !c.is_zero() {
            for j in 0..=db {
                let t = &c * BigRational::from_integer(b[j].clone());
                r[k - db + j] -= t;
            }
        }
        r.pop();
    }
    r.iter().all(|c| c.is_zero())
}

/// Greatest common divisor of two univariate polynomials over Q, monic, via
/// multi-prime reconstruction verified by trial division. Coefficients are in
/// ascending order; both inputs nonzero.
pub fn gcd_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let a = primitive_integer(a);
    let b = primitive_integer(b);
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() == 1 {
        return vec![BigRational::one()];
    }
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut prev: Option<Vec<BigInt>> = None;
    for p in primes_below(1u64 << 62, None) {
        let f = Zp::new(p);
        let lc_a = f.from_bigint(a.last().unwrap());
        let lc_b = f.from_bigint(b.last().unwrap());
        if lc_a == 0 || lc_b == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| f.from_bigint(c)).collect();
        let bp: Vec<u64> = b.iter().map(|c| f.from_bigint(c)).collect();
        let g = f.poly_gcd(&ap, &bp);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigRational::one()];
        }
        if d > best_deg {
            continue;
        }
        let gm = f.from_bigint(&gamma);
        let g: Vec<u64> = g.iter().map(|&c| f.mul(c, gm)).collect();
        if d < best_deg {
            best_deg = d;
            modulus = BigInt::from(p);
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            prev = None;
            continue;
        }
        // CRT combine acc (mod modulus) with g (mod p)
        let pb = BigInt::from(p);
        let minv = BigInt::from(f.inv(f.from_bigint(&modulus)));
        for (x, &r) in acc.iter_mut().zip(g.iter()) {
            let diff = (BigInt::from(r) - &*x).mod_floor(&pb);
            let t = (diff * &minv).mod_floor(&pb);
            *x += t * &modulus;
        }
        modulus *= &pb;
        let cand: Vec<BigInt> = acc.iter().map(|c| symmetric(c, &modulus)).collect();
        if prev.as_ref() == Some(&cand) {
            let cont = cand.iter().fold(BigInt::zero(), |s, c| s.gcd(c));
            let mut pp: Vec<BigInt> = cand.iter().map(|c| c / &cont).collect();
            if pp.last().unwrap().is_negative() {
                pp.iter_mut().for_each(|c| *c = -c.clone());
            }
            if trial_divides(&a, &pp) && trial_divides(&b, &pp) {
                let lc = BigRational::from_integer(pp.last().unwrap().clone());
                return pp.into_iter().map(|c| BigRational::from_integer(c) / &lc).collect();
            }
        }
        prev = Some(cand);
    }
    unreachable!("ran out of primes")
}

/// A square root of -1 in F_p, p = 1 mod 4.
pub fn sqrt_minus_one(f: Zp) -> u64 {
    for c in 2u64.. {
        let r = f.pow(c, (f.p - 1) / 4);
        if f.mul(r, r) == f.p - 1 {
            return r;
        }
    }
    unreachable!()
}

/// `n/d` with `n/d = u mod m` and `|n|, d <= sqrt(m/2)`, if it exists.
pub fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn gaussian_rem_is_zero(a: &[Gr], monic: &[Gr]) -> bool {
    let db = monic.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let c = r.pop().unwrap();
        if !c.is_zero() {
            let k = r.len() - db;
            for j in 0..db {
                r[k + j] = &r[k + j] - &(&c * &monic[j]);
            }
        }
    }
    r.iter().all(|c| c.is_zero())
}

/// Monic gcd over Q(i) of two nonzero univariate polynomials (ascending
/// coefficients). Both embeddings `i -> ±r` into F_p, p = 1 mod 4, give the
/// real and imaginary parts mod p; these are combined by CRT, reconstructed as
/// rationals and verified by exact division.
pub fn gcd_gaussian(a: &[Gr], b: &[Gr]) -> Vec<Gr> {
    let clear = |c: &[Gr]| -> (Vec<BigInt>, Vec<BigInt>) {
        let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
        c.iter().map(|x| x.scaled_parts(&l)).unzip()
    };
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() == 1 {
        return vec![Gr::one()];
    }
    let (ar, ai) = clear(a);
    let (br, bi) = clear(b);
    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<(BigInt, BigInt)> = Vec::new();
    let mut prev: Option<Vec<Gr>> = None;
    for p in primes_below(1u64 << 62, Some(1)) {
        let f = Zp::new(p);
        let r = sqrt_minus_one(f);
        let image = |re: &[BigInt], im: &[BigInt], s: u64| -> Vec<u64> {
            re.iter().zip(im).map(|(x, y)| f.add(f.from_bigint(x), f.mul(f.from_bigint(y), s))).collect()
        };
        let mut gs = Vec::with_capacity(2);
        for s in [r, p - r] {
            let (ap, bp) = (image(&ar, &ai, s), image(&br, &bi, s));
            if *ap.last().unwrap() == 0 || *bp.last().unwrap() == 0 {
                break;
            }
            gs.push(f.poly_gcd(&ap, &bp));
        }
        if gs.len() < 2 || gs[0].len() != gs[1].len() {
            continue;
        }
        let d = gs[0].len() - 1;
        if d == 0 {
            return vec![Gr::one()];
        }
        if d > best_deg {
            continue;
        }
        let half = f.inv(2);
        let inv_2r = f.inv(f.mul(2, r));
        let parts: Vec<(u64, u64)> = gs[0]
            .iter()
            .zip(&gs[1])
            .map(|(&u, &v)| (f.mul(f.add(u, v), half), f.mul(f.sub(u, v), inv_2r)))
            .collect();
        let pb = BigInt::from(p);
        if d < best_deg {
            best_deg = d;
            modulus = pb;
            acc = parts.iter().map(|&(x, y)| (BigInt::from(x), BigInt::from(y))).collect();
            prev = None;
        } else {
            let minv = BigInt::from(f.inv(f.from_bigint(&modulus)));
            let crt = |x: &mut BigInt, r: u64| {
                let t = ((BigInt::from(r) - &*x).mod_floor(&pb) * &minv).mod_floor(&pb);
                *x += t * &modulus;
            };
            for ((x, y), &(u, v)) in acc.iter_mut().zip(&parts) {
                crt(x, u);
                crt(y, v);
            }
            modulus *= &pb;
        }
        let cand: Option<Vec<Gr>> = acc
            .iter()
            .map(|(x, y)| Some(Gr::new(rational_reconstruction(x, &modulus)?, rational_reconstruction(y, &modulus)?)))
            .collect();
        let Some(cand) = cand else { continue };
        if prev.as_ref() == Some(&cand) && gaussian_rem_is_zero(a, &cand) && gaussian_rem_is_zero(b, &cand) {
            return cand;
        }
        prev = Some(cand);
    }
    unreachable!("ran out of primes")
}

/// Sign helper exposed for root bounds.
pub fn abs_big(x: &BigInt) -> BigInt {
    if x.sign() == Sign::Minus { -x.clone() } else { x.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn modular_gcd_matches_known_factor() {
        // (x-2)(x^2+1) and (x-2)(x+1)
        let a = q(&[-2, 1, -2, 1]);
        let b = q(&[-2, -1, 1]);
        assert_eq!(gcd_q(&a, &b), q(&[-2, 1]));
        assert_eq!(gcd_q(&q(&[1, 1]), &q(&[-1, 1])), q(&[1]));
    }

    #[test]
    fn gaussian_gcd_matches_known_factor() {
        let g = |a: i64, b: i64| Gr::cplx(a, b);
        // (x - i)(x + 2) and (x - i)(x - 3 + i/2)
        let a = [g(0, -2), g(2, -1), g(1, 0)];
        let b = [Gr::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer(3.into())), Gr::new(BigRational::from_integer((-3).into()), BigRational::new((-1).into(), 2.into())), g(1, 0)];
        assert_eq!(gcd_gaussian(&a, &b), vec![g(0, -1), g(1, 0)]);
        assert_eq!(gcd_gaussian(&a, &[g(1, 1), g(1, 0)]), vec![g(1, 0)]);
    }

    #[test]
    fn reconstruction_inverts_reduction() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        let x = BigRational::new((-355).into(), 113.into());
        let u = (x.numer() * mod_inverse(x.denom(), &m)).mod_floor(&m);
        assert_eq!(rational_reconstruction(&u, &m), Some(x));
    }

    fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
        let e = a.extended_gcd(m);
        e.x.mod_floor(m)
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = primes_below(1 << 31, Some(1)).take(5).collect();
        for p in ps {
            assert_eq!(p % 4, 1);
            assert!(is_prime_u64(p));
        }
        assert!(!is_prime_u64(561));
    }
}
