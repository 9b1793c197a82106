//! Matrices over Q(i)(vars): fraction-free determinants and linear solving.

use num_traits::{One, Zero};

use super::gaussian::Gr;
use super::gcd::poly_gcd;
use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<RatFunc>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose k-th column is `cols[k]`.
    pub fn from_cols(cols: &[Vec<RatFunc>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Self::new(r, c, data)
    }

    pub fn from_const(rows: &[Vec<Gr>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().cloned().map(RatFunc::constant).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![RatFunc::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = RatFunc::one();
        }
        Self::new(n, n, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<RatFunc> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<RatFunc> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self::new(self.cols, self.rows, data)
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = RatFunc::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
                }
                data.push(acc);
            }
        }
        Matrix::new(self.rows, o.cols, data)
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(RatFunc::zero(), |acc, k| acc.add(&self.get(i, k).mul(&v[k]))))
            .collect()
    }

    /// All entries constant.
    pub fn to_const(&self) -> Option<Vec<Vec<Gr>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).constant_value()).collect::<Option<Vec<_>>>())
            .collect()
    }

    /// Rows scaled to polynomials; returns the polynomial rows and the row multipliers.
    fn clear_rows(&self, extra: Option<&[Vec<RatFunc>]>) -> (Vec<Vec<MultiPoly>>, Vec<MultiPoly>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut mults = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row: Vec<RatFunc> = self.row(i);
            if let Some(e) = extra {
                row.extend(e[i].iter().cloned());
            }
            let l = row.iter().fold(MultiPoly::one(), |acc, x| lcm(&acc, x.den()));
            let prow: Vec<MultiPoly> = row
                .iter()
                .map(|x| if x.den() == &l { x.num().clone() } else { x.num().mul(&l.div_exact(x.den()).unwrap()) })
                .collect();
            out.push(prow);
            mults.push(l);
        }
        (out, mults)
    }

    /// Determinant by fraction-free elimination after clearing row denominators.
    pub fn det(&self) -> RatFunc {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return RatFunc::one();
        }
        let (m, mults) = self.clear_rows(None);
        let d = bareiss_det(m);
        if d.is_zero() {
            return RatFunc::zero();
        }
        let den = mults.iter().fold(MultiPoly::one(), |acc, l| acc.mul(l));
        RatFunc::new(d, den)
    }

    /// Solves `self * X = B` for each column of `rhs`.
    pub fn solve_multi(&self, rhs: &[Vec<RatFunc>]) -> Result<Vec<Vec<RatFunc>>, Error> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        let n = self.rows;
        let k = rhs.len();
        // rows of the augmented matrix
        let extra: Vec<Vec<RatFunc>> = (0..n).map(|i| rhs.iter().map(|c| c[i].clone()).collect()).collect();
        let (mut m, _) = self.clear_rows(Some(&extra));
        let mut prev = MultiPoly::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Err(Error::SingularSystem);
            };
            m.swap(c, p);
            for r in c + 1..n {
                for j in c + 1..n + k {
                    let v = m[r][j].mul(&m[c][c]).sub(&m[r][c].mul(&m[c][j]));
                    m[r][j] = v.div_exact(&prev).expect("fraction-free elimination");
                }
                m[r][c] = MultiPoly::zero();
            }
            prev = m[c][c].clone();
        }
        let mut sols = vec![vec![RatFunc::zero(); n]; k];
        for (s, sol) in sols.iter_mut().enumerate() {
            for i in (0..n).rev() {
                let mut acc = RatFunc::from_poly(m[i][n + s].clone());
                for j in i + 1..n {
                    if !m[i][j].is_zero() {
                        acc = acc.sub(&RatFunc::from_poly(m[i][j].clone()).mul(&sol[j]));
                    }
                }
                sol[i] = acc.div(&RatFunc::from_poly(m[i][i].clone())).unwrap();
            }
        }
        Ok(sols)
    }
}

/// Exact solution of `m x = rhs`.
pub fn solve_linear(m: &Matrix, rhs: &[RatFunc]) -> Result<Vec<RatFunc>, Error> {
    Ok(m.solve_multi(&[rhs.to_vec()])?.pop().unwrap())
}

pub fn det(m: &Matrix) -> RatFunc {
    m.det()
}

pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = poly_gcd(a, b);
    a.mul(&b.div_exact(&g).unwrap())
}

/// Bareiss determinant of a square polynomial matrix.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return MultiPoly::zero();
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev).expect("Bareiss exact division");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign { d.neg() } else { d }
}

/// Determinant of a constant matrix.
pub fn det_const(m: &[Vec<Gr>]) -> Gr {
    let n = m.len();
    let mut a: Vec<Vec<Gr>> = m.to_vec();
    let mut d = Gr::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Gr::zero();
        };
        if p != c {
            a.swap(c, p);
            d = -d;
        }
        let piv = a[c][c].clone();
        d = &d * &piv;
        let inv = piv.inv().unwrap();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[r][j] -= &t;
            }
        }
    }
    d
}

/// Product of constant matrices.
pub fn mul_const(a: &[Vec<Gr>], b: &[Vec<Gr>]) -> Vec<Vec<Gr>> {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Gr::zero(), |acc, l| &acc + &(&a[i][l] * &b[l][j])))
                .collect()
        })
        .collect()
}

pub fn transpose_const(a: &[Vec<Gr>]) -> Vec<Vec<Gr>> {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn identity_const(n: usize) -> Vec<Vec<Gr>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Gr::one() } else { Gr::zero() }).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Var;

    fn z() -> RatFunc {
        RatFunc::var(Var::Z)
    }

    #[test]
    fn derivative_matrix_of_twisted_cubic() {
        // columns (1, 2z, 3z^2), (0, 2, 6z), (0, 0, 6)
        let c1 = vec![RatFunc::one(), z().scale(&Gr::from_int(2)), z().pow(2).scale(&Gr::from_int(3))];
        let c2 = vec![RatFunc::zero(), RatFunc::int(2), z().scale(&Gr::from_int(6))];
        let c3 = vec![RatFunc::zero(), RatFunc::zero(), RatFunc::int(6)];
        let m = Matrix::from_cols(&[c1.clone(), c2, c3]);
        assert_eq!(m.det(), RatFunc::int(12));
        assert_eq!(Matrix::identity(3).det(), RatFunc::one());
        let twice = Matrix::from_cols(&[c1.clone(), c1]);
        assert!(Matrix::from_rows(vec![twice.row(0), twice.row(1)]).det().is_zero());
    }

    #[test]
    fn back_substitution() {
        let m = Matrix::from_const(&[vec![Gr::from_int(1), Gr::from_int(1)], vec![Gr::zero(), Gr::from_int(2)]]);
        let x = solve_linear(&m, &[RatFunc::int(3), RatFunc::int(4)]).unwrap();
        assert_eq!(x, vec![RatFunc::int(1), RatFunc::int(2)]);
        let s = Matrix::from_const(&[vec![Gr::from_int(1), Gr::from_int(2)], vec![Gr::from_int(2), Gr::from_int(4)]]);
        assert!(matches!(solve_linear(&s, &[RatFunc::one(), RatFunc::one()]), Err(Error::SingularSystem)));
    }

    #[test]
    fn rational_entries() {
        let m = Matrix::from_rows(vec![vec![z().inv().unwrap(), RatFunc::one()], vec![RatFunc::one(), z()]]);
        assert!(m.det().is_zero());
        let m2 = Matrix::from_rows(vec![vec![z().inv().unwrap(), RatFunc::int(2)], vec![RatFunc::one(), z()]]);
        assert_eq!(m2.det(), RatFunc::int(-1));
    }
}
