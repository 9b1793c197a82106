//! The coefficient determinants `M^{n+1,i+1}_r` built from the rescaled Lah numbers.
//!
//! Indexing is by offset: `M_r` multiplies `G_{i+r}` in the expansion of
//! `I_i(q(w))`, for `0 <= r <= n-i+1`. Its rows are `k = n+1, n, ..., i+1` and
//! its columns are `m = n+1, n, ..., i` with `m = i+r` left out; the entries are
//! `b_tilde(n, k, m)`.

use num_traits::{One, Zero};

use super::combinat::b_tilde;
use crate::exact::matrix::det_const;
use crate::exact::Gr;
use crate::Error;

fn det_rows_cols(n: usize, rows: &[usize], cols: &[usize]) -> Gr {
    let m: Vec<Vec<Gr>> =
        rows.iter().map(|&k| cols.iter().map(|&c| b_tilde(n as u32, k as u32, c as u32)).collect()).collect();
    det_const(&m)
}

/// `M^{n+1,i+1}_r`; `r = n+1` gives the convention value `(-1)^n`.
pub fn m_determinant(n: usize, i: usize, r: usize) -> Result<Gr, Error> {
    if i < 1 || i > n {
        return Err(Error::IndexOutOfRange(format!("M^{{{},{}}} for n = {n}", n + 1, i + 1)));
    }
    if r == n + 1 {
        return Ok(if n % 2 == 0 { Gr::one() } else { -Gr::one() });
    }
    if r > n - i + 1 {
        return Err(Error::IndexOutOfRange(format!("M_{r}^{{{},{}}}", n + 1, i + 1)));
    }
    let rows: Vec<usize> = (i + 1..=n + 1).rev().collect();
    let cols: Vec<usize> = (i..=n + 1).rev().filter(|&m| m != i + r).collect();
    Ok(det_rows_cols(n, &rows, &cols))
}

/// Unsubscripted `M^{n'+1,i+1}` for a smaller `n' <= n`, with entries
/// `b_tilde(n, ., .)`: rows `n'+1..i+1`, the j-th column holding `m = n'+1-j`.
pub fn m_plain(n: usize, n_small: usize, i: usize) -> Result<Gr, Error> {
    if i < 1 || i > n_small || n_small > n {
        return Err(Error::IndexOutOfRange(format!("M^{{{},{}}}", n_small + 1, i + 1)));
    }
    let rows: Vec<usize> = (i + 1..=n_small + 1).rev().collect();
    let cols: Vec<usize> = (i..=n_small).rev().collect();
    Ok(det_rows_cols(n, &rows, &cols))
}

/// All `M^{n+1,i+1}_r` for one dimension.
#[derive(Clone, Debug)]
pub struct MDeterminantTable {
    pub n: usize,
    /// `values[i - 1][r]` for `0 <= r <= n-i+1`.
    pub values: Vec<Vec<Gr>>,
}

impl MDeterminantTable {
    pub fn new(n: usize) -> Self {
        let values = (1..=n).map(|i| (0..=n - i + 1).map(|r| m_determinant(n, i, r).unwrap()).collect()).collect();
        Self { n, values }
    }

    pub fn get(&self, i: usize, r: usize) -> &Gr {
        &self.values[i - 1][r]
    }

    /// `M_{n-i} - (n-i+1) M_{n-i+1}` for one `i`.
    pub fn shift_residual(&self, i: usize) -> Gr {
        let n = self.n;
        let a = self.get(i, n - i);
        let b = self.get(i, n - i + 1);
        a - &(&Gr::from_int((n - i + 1) as i64) * b)
    }
}

/// True when every `M_{n-i} - (n-i+1) M_{n-i+1}` vanishes for `1 <= i < n <= max_n`.
pub fn shift_identity_holds(max_n: usize) -> bool {
    (2..=max_n).all(|n| {
        let t = MDeterminantTable::new(n);
        (1..n).all(|i| t.shift_residual(i).is_zero())
    })
}
