//! Exact elements of Q(i).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Gaussian rational `re + im·i` with both parts in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

pub type Gr = GaussianRational;

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::real(BigRational::from_integer(n))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::real(BigRational::new(p.into(), q.into()))
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    /// `a + b i` with integer parts.
    pub fn cplx(a: i64, b: i64) -> Self {
        Self {
            re: BigRational::from_integer(a.into()),
            im: BigRational::from_integer(b.into()),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |x|² = re² + im².
    pub fn norm(&self) -> BigRational {
        if self.im.is_zero() {
            return &self.re * &self.re;
        }
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()));
        }
        let n = self.norm();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Is this an element of Z[i]?
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// Numerators after scaling by `m`, assumed to clear both denominators.
    pub fn scaled_parts(&self, m: &BigInt) -> (BigInt, BigInt) {
        let re = &self.re * BigRational::from_integer(m.clone());
        let im = &self.im * BigRational::from_integer(m.clone());
        debug_assert!(re.is_integer() && im.is_integer());
        (re.to_integer(), im.to_integer())
    }

    /// Sign of the first nonzero part, used to make leading coefficients positive.
    pub fn leading_sign(&self) -> i32 {
        if !self.re.is_zero() {
            if self.re.is_positive() { 1 } else { -1 }
        } else if !self.im.is_zero() {
            if self.im.is_positive() { 1 } else { -1 }
        } else {
            0
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a Gr> for &'a Gr {
    type Output = Gr;
    fn add(self, o: &Gr) -> Gr {
        let im = if self.im.is_zero() {
            o.im.clone()
        } else if o.im.is_zero() {
            self.im.clone()
        } else {
            &self.im + &o.im
        };
        Gr { re: &self.re + &o.re, im }
    }
}

impl<'a> Sub<&'a Gr> for &'a Gr {
    type Output = Gr;
    fn sub(self, o: &Gr) -> Gr {
        let im = if o.im.is_zero() { self.im.clone() } else { &self.im - &o.im };
        Gr { re: &self.re - &o.re, im }
    }
}

impl<'a> Mul<&'a Gr> for &'a Gr {
    type Output = Gr;
    fn mul(self, o: &Gr) -> Gr {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => Gr::real(&self.re * &o.re),
            (true, false) => Gr { re: &self.re * &o.re, im: &self.re * &o.im },
            (false, true) => Gr { re: &self.re * &o.re, im: &self.im * &o.re },
            (false, false) => Gr {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl<'a> Div<&'a Gr> for &'a Gr {
    type Output = Gr;
    fn div(self, o: &Gr) -> Gr {
        if o.im.is_zero() {
            return Gr { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &Gr {
    type Output = Gr;
    fn neg(self) -> Gr {
        Gr { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for Gr {
    type Output = Gr;
    fn neg(self) -> Gr {
        Gr { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Gr> for Gr {
            type Output = Gr;
            fn $m(self, o: Gr) -> Gr {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Gr> for Gr {
            type Output = Gr;
            fn $m(self, o: &Gr) -> Gr {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Gr> for Gr {
    fn add_assign(&mut self, o: &Gr) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&Gr> for Gr {
    fn sub_assign(&mut self, o: &Gr) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl MulAssign<&Gr> for Gr {
    fn mul_assign(&mut self, o: &Gr) {
        *self = &*self * o;
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Prints `p/q`, `r/s i` or `p/q+r/s i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{} i", fmt_rat(&self.im))
        };
        if self.re.is_zero() {
            return write!(f, "{im}");
        }
        if self.im.is_negative() {
            write!(f, "{}{}", fmt_rat(&self.re), im)
        } else {
            write!(f, "{}+{}", fmt_rat(&self.re), im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid gaussian rational literal: {0}")]
pub struct ParseGrError(pub String);

fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        BigInt::from_str(s).ok().map(BigRational::from_integer)
    }
}

/// Accepts the forms produced by `Display`.
impl FromStr for GaussianRational {
    type Err = ParseGrError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGrError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if !t.ends_with('i') {
            return parse_rat(&t).map(Gr::real).ok_or_else(err);
        }
        let body = &t[..t.len() - 1];
        // split at the last sign that is not the leading one and not after '/'
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                split = Some(k);
                break;
            }
        }
        let (re_s, im_s) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_s {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rat(other.trim_start_matches('+')).ok_or_else(err)?,
        };
        let re = parse_rat(re_s).ok_or_else(err)?;
        Ok(Gr { re, im })
    }
}
