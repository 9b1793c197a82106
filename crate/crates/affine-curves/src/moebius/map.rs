use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{Gr, MultiPoly, RatFunc, Var};
use crate::Error;

/// `w = (a z + b) / (c z + d)` with `ad - bc != 0`, scaled so that the first
/// nonzero of `(c, d)` is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MoebiusMap {
    pub a: Gr,
    pub b: Gr,
    pub c: Gr,
    pub d: Gr,
}

impl MoebiusMap {
    pub fn new(a: Gr, b: Gr, c: Gr, d: Gr) -> Result<Self, Error> {
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(Error::InvalidMoebius);
        }
        let s = if !c.is_zero() { c.inv().unwrap() } else { d.inv().unwrap() };
        Ok(Self { a: &a * &s, b: &b * &s, c: &c * &s, d: &d * &s })
    }

    pub fn identity() -> Self {
        Self::affine(Gr::one(), Gr::zero())
    }

    /// `w = a z + b`.
    pub fn affine(a: Gr, b: Gr) -> Self {
        assert!(!a.is_zero(), "affine map with zero slope");
        Self { a, b, c: Gr::zero(), d: Gr::one() }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Error> {
        Self::new(Gr::from_int(a), Gr::from_int(b), Gr::from_int(c), Gr::from_int(d))
    }

    pub fn is_affine(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity()
    }

    pub fn is_real(&self) -> bool {
        self.a.is_real() && self.b.is_real() && self.c.is_real() && self.d.is_real()
    }

    pub fn det(&self) -> Gr {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// The map as a rational function of `v`.
    pub fn as_ratfunc(&self, v: Var) -> RatFunc {
        let x = MultiPoly::var(v);
        let num = x.scale(&self.a).add(&MultiPoly::constant(self.b.clone()));
        let den = x.scale(&self.c).add(&MultiPoly::constant(self.d.clone()));
        RatFunc::new(num, den)
    }

    /// `w (c z + d) - (a z + b)`.
    pub fn factor(&self) -> MultiPoly {
        let z = MultiPoly::var(Var::Z);
        let w = MultiPoly::var(Var::W);
        let den = z.scale(&self.c).add(&MultiPoly::constant(self.d.clone()));
        let num = z.scale(&self.a).add(&MultiPoly::constant(self.b.clone()));
        w.mul(&den).sub(&num)
    }

    pub fn apply(&self, z: &Gr) -> Option<Gr> {
        let den = &(&self.c * z) + &self.d;
        let num = &(&self.a * z) + &self.b;
        den.inv().map(|i| &num * &i)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        MoebiusMap::new(
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        )
        .expect("composition of Möbius maps is invertible")
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
            .expect("inverse of a Möbius map is invertible")
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.as_ratfunc(Var::Z);
        write!(f, "{r}")
    }
}
