//! Lah numbers, the rescaled Lah coefficients and partial Bell polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{Gr, Mono, MultiPoly, Var};
use crate::Error;

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, x| acc * x)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `L(k, m) = C(k-1, m-1) k!/m!`.
pub fn lah(k: u32, m: u32) -> Result<BigInt, Error> {
    if m < 1 || m > k {
        return Err(Error::IndexOutOfRange(format!("lah({k}, {m})")));
    }
    Ok(binomial(k - 1, m - 1) * factorial(k) / factorial(m))
}

/// `L(k, m) / (n (n+1))^(k-m)`, zero when `k < m`.
pub fn b_tilde(n: u32, k: u32, m: u32) -> Gr {
    if k < m || m == 0 {
        return Gr::zero();
    }
    let l = lah(k, m).unwrap();
    let base = BigInt::from(n) * BigInt::from(n + 1);
    let d = num_traits::pow(base, (k - m) as usize);
    Gr::real(BigRational::new(l, d))
}

/// Partial Bell polynomial `B_{k,m}(x_1, ..., x_{k-m+1})` in the symbols `Var::x`.
pub fn bell_partial(k: u32, m: u32) -> Result<MultiPoly, Error> {
    if m < 1 || m > k {
        return Err(Error::IndexOutOfRange(format!("B_{{{k},{m}}}")));
    }
    let len = (k - m + 1) as usize;
    let mut acc = MultiPoly::zero();
    let mut ls = vec![0u32; len];
    enumerate(&mut ls, 0, m, k, &mut |ls| {
        // k! / prod(l_i! (i!)^l_i)
        let mut den = BigInt::one();
        let mut pairs = Vec::new();
        for (idx, &l) in ls.iter().enumerate() {
            if l > 0 {
                let i = idx as u32 + 1;
                den *= factorial(l) * num_traits::pow(factorial(i), l as usize);
                pairs.push((Var::x(i as usize), l));
            }
        }
        let c = Gr::real(BigRational::new(factorial(k), den));
        acc = acc.add(&MultiPoly::term(Mono::from_pairs(&pairs), c));
    });
    Ok(acc)
}

fn enumerate(ls: &mut Vec<u32>, idx: usize, m_left: u32, k_left: u32, f: &mut dyn FnMut(&[u32])) {
    if idx == ls.len() {
        if m_left == 0 && k_left == 0 {
            f(ls);
        }
        return;
    }
    let i = idx as u32 + 1;
    let mut l = 0;
    while l <= m_left && l * i <= k_left {
        ls[idx] = l;
        enumerate(ls, idx + 1, m_left - l, k_left - l * i, f);
        l += 1;
    }
    ls[idx] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> MultiPoly {
        MultiPoly::var(Var::x(k))
    }

    #[test]
    fn lah_values() {
        assert_eq!(lah(3, 3).unwrap(), BigInt::from(1));
        assert_eq!(lah(3, 2).unwrap(), BigInt::from(6));
        assert_eq!(lah(4, 1).unwrap(), BigInt::from(24));
        assert!(lah(2, 3).is_err());
    }

    #[test]
    fn b_tilde_values() {
        assert_eq!(b_tilde(3, 3, 2), Gr::from_frac(1, 2));
        assert_eq!(b_tilde(2, 1, 5), Gr::zero());
        assert_eq!(b_tilde(7, 4, 4), Gr::one());
    }

    #[test]
    fn bell_values() {
        assert_eq!(bell_partial(3, 2).unwrap(), x(1).mul(&x(2)).scale(&Gr::from_int(3)));
        let want = x(1).mul(&x(3)).scale(&Gr::from_int(4)).add(&x(2).pow(2).scale(&Gr::from_int(3)));
        assert_eq!(bell_partial(4, 2).unwrap(), want);
        assert_eq!(bell_partial(5, 5).unwrap(), x(1).pow(5));
    }
}
