//! Closed-form Möbius-commuting invariants `F_1, ..., F_{n-1}` for any n.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mdet::m_determinant;
use crate::exact::{Gr, Mono, MultiPoly, Var};
use crate::Error;

/// `F_j = num^num_exp / den^den_exp`, both bases polynomials in the symbols `I_0..I_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantTemplate {
    pub n: usize,
    pub j: usize,
    pub num: MultiPoly,
    pub num_exp: u32,
    pub den: MultiPoly,
    pub den_exp: u32,
}

fn i_sym(k: usize) -> MultiPoly {
    MultiPoly::var(Var::inv(k))
}

/// `I_k` for `k <= n`, and `-1` for `k = n+1`.
fn i_ext(n: usize, k: usize) -> MultiPoly {
    if k == n + 1 { MultiPoly::int(-1) } else { i_sym(k) }
}

/// Common denominator `I_{n-1} + M_2^{n+1,n} I_n^2`, before normalization.
pub fn shared_denominator(n: usize) -> MultiPoly {
    let m2 = m_determinant(n, n - 1, 2).unwrap();
    i_sym(n - 1).add(&i_sym(n).pow(2).scale(&m2))
}

/// `sum_{i=0}^{k} M_i^{n+1,n-k+2} I_{n-k+1+i} I_n^i`, before normalization.
pub fn alpha_numerator(n: usize, k: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for i in 0..=k {
        let m = m_determinant(n, n + 1 - k, i).unwrap();
        if m.is_zero() {
            continue;
        }
        acc = acc.add(&i_ext(n, n - k + 1 + i).mul(&i_sym(n).pow(i as u32)).scale(&m));
    }
    acc
}

/// Clears denominators, removes the integer content and makes the leading coefficient positive.
pub fn canonicalize(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let l = p.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(&c.denom_lcm()));
    let mut g = BigInt::zero();
    let parts: Vec<(BigInt, BigInt)> = p.terms().iter().map(|(_, c)| c.scaled_parts(&l)).collect();
    for (a, b) in &parts {
        g = g.gcd(a).gcd(b);
    }
    let lead = &parts[0];
    let neg = if !lead.0.is_zero() { lead.0.is_negative() } else { lead.1.is_negative() };
    let g = if neg { -g } else { g };
    let s = Gr::real(BigRational::new(l, g));
    p.scale(&s)
}

/// Templates `F_1, ..., F_{n-1}`, canonicalized.
pub fn generate_templates(n: usize) -> Result<Vec<InvariantTemplate>, Error> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("templates need n >= 2, got {n}")));
    }
    if n > 30 {
        return Err(Error::IndexOutOfRange(format!("dimension {n} is too large")));
    }
    let den = canonicalize(&shared_denominator(n));
    let c = Gr::real(BigRational::new(BigInt::from(n + 2), BigInt::from(2 * n)));
    let f1 = i_sym(0).sub(&i_sym(n).pow(2).scale(&c));
    let mut out =
        vec![InvariantTemplate { n, j: 1, num: canonicalize(&f1), num_exp: 1, den: den.clone(), den_exp: 1 }];
    for k in 3..=n {
        let e = 2usize.lcm(&k);
        assert!(e % k == 0 && e % 2 == 0);
        out.push(InvariantTemplate {
            n,
            j: k - 1,
            num: canonicalize(&alpha_numerator(n, k)),
            num_exp: (e / k) as u32,
            den: den.clone(),
            den_exp: (e / 2) as u32,
        });
    }
    Ok(out)
}

static MEMO: OnceLock<Mutex<HashMap<usize, Arc<Vec<InvariantTemplate>>>>> = OnceLock::new();

/// Process-wide memo of generated templates.
pub fn templates(n: usize) -> Result<Arc<Vec<InvariantTemplate>>, Error> {
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = memo.lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(generate_templates(n)?);
    memo.lock().unwrap().insert(n, t.clone());
    Ok(t)
}

/// Makes `templates(n)` return `ts`, e.g. after loading them from a cache file.
pub fn install_templates(n: usize, ts: Vec<InvariantTemplate>) {
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    memo.lock().unwrap().insert(n, Arc::new(ts));
}

/// Polynomial in the `I` symbols from `(coefficient, [(k, exponent)])` terms.
pub fn i_poly(terms: &[(i64, &[(usize, u32)])]) -> MultiPoly {
    MultiPoly::from_terms(terms.iter().map(|(c, ms)| {
        let pairs: Vec<(Var, u32)> = ms.iter().map(|&(k, e)| (Var::inv(k), e)).collect();
        (Mono::from_pairs(&pairs), Gr::from_int(*c))
    }))
}

fn wrap(p: &MultiPoly, e: u32) -> String {
    let s = p.to_string();
    match (p.len() > 1, e) {
        (false, 1) => s,
        (true, 1) => format!("({s})"),
        (false, e) => format!("{s}^{e}"),
        (true, e) => format!("({s})^{e}"),
    }
}

impl fmt::Display for InvariantTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} = {} / {}", self.j, wrap(&self.num, self.num_exp), wrap(&self.den, self.den_exp))
    }
}
