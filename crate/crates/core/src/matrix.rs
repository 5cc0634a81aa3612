//! Exact dense linear algebra over Q(i) and determinants of polynomial
//! matrices.

use num_traits::{One, Zero};

use crate::algebra::{GaussianRational, MultiPoly};

/// Dense square-or-rectangular matrix over Q(i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussianRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = GaussianRational::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.at(i, k) * other.at(k, j));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.at(i, k) * &v[k]);
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> GaussianRational {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        let mut acc = GaussianRational::zero();
        for i in 0..self.rows {
            acc = &acc + self.at(i, i);
        }
        acc
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> GaussianRational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = GaussianRational::one();
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !m.at(r, k).is_zero());
            let Some(pr) = pivot_row else {
                return GaussianRational::zero();
            };
            if pr != k {
                for j in 0..n {
                    let a = m.at(pr, j).clone();
                    let b = m.at(k, j).clone();
                    *m.at_mut(pr, j) = b;
                    *m.at_mut(k, j) = a;
                }
                det = -det;
            }
            let pivot = m.at(k, k).clone();
            det = &det * &pivot;
            let inv = pivot.inv();
            for i in (k + 1)..n {
                let factor = &(m.at(i, k) * &inv);
                if factor.is_zero() {
                    continue;
                }
                let factor = factor.clone();
                for j in k..n {
                    let delta = &factor * m.at(k, j);
                    *m.at_mut(i, j) = &*m.at(i, j) - &delta;
                }
            }
        }
        det
    }

    /// Solve `self * x = b`; `None` when the matrix is singular.
    pub fn solve(&self, b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert_eq!(self.rows, self.cols, "solve requires a square matrix");
        assert_eq!(self.rows, b.len(), "dimension mismatch");
        let n = self.rows;
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let pr = (k..n).find(|&r| !m.at(r, k).is_zero())?;
            if pr != k {
                for j in 0..n {
                    let a = m.at(pr, j).clone();
                    let c = m.at(k, j).clone();
                    *m.at_mut(pr, j) = c;
                    *m.at_mut(k, j) = a;
                }
                rhs.swap(pr, k);
            }
            let inv = m.at(k, k).inv();
            for i in (k + 1)..n {
                let factor = m.at(i, k) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let delta = &factor * m.at(k, j);
                    *m.at_mut(i, j) = &*m.at(i, j) - &delta;
                }
                rhs[i] = &rhs[i] - &(&factor * &rhs[k]);
            }
        }
        let mut x = vec![GaussianRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i].clone();
            for j in (i + 1)..n {
                acc = &acc - &(m.at(i, j) * &x[j]);
            }
            x[i] = &acc / m.at(i, i);
        }
        Some(x)
    }

    /// Coefficients of the characteristic polynomial, ascending:
    /// `c[0] + c[1] x + ... + c[n] x^n` with `c[n] = 1`.
    ///
    /// Similarity reduction to Hessenberg form followed by the leading
    /// principal minor recurrence; exact over Q(i).
    pub fn char_poly(&self) -> Vec<GaussianRational> {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return vec![GaussianRational::one()];
        }
        let mut h = self.clone();
        // eliminate below the subdiagonal, column by column
        for k in 0..n.saturating_sub(2) {
            let pivot_row = ((k + 1)..n).find(|&r| !h.at(r, k).is_zero());
            let Some(pr) = pivot_row else { continue };
            if pr != k + 1 {
                // swap rows and the matching columns (a similarity)
                for j in 0..n {
                    let a = h.at(pr, j).clone();
                    let b = h.at(k + 1, j).clone();
                    *h.at_mut(pr, j) = b;
                    *h.at_mut(k + 1, j) = a;
                }
                for i in 0..n {
                    let a = h.at(i, pr).clone();
                    let b = h.at(i, k + 1).clone();
                    *h.at_mut(i, pr) = b;
                    *h.at_mut(i, k + 1) = a;
                }
            }
            let inv = h.at(k + 1, k).inv();
            for i in (k + 2)..n {
                let factor = h.at(i, k) * &inv;
                if factor.is_zero() {
                    continue;
                }
                // row_i -= factor * row_{k+1}, col_{k+1} += factor * col_i
                for j in 0..n {
                    let delta = &factor * h.at(k + 1, j);
                    *h.at_mut(i, j) = &*h.at(i, j) - &delta;
                }
                for j in 0..n {
                    let delta = &factor * h.at(j, i);
                    *h.at_mut(j, k + 1) = &*h.at(j, k + 1) + &delta;
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod subdiagonals) p_{i-1}
        let mut polys: Vec<Vec<GaussianRational>> = vec![vec![GaussianRational::one()]];
        for m in 1..=n {
            let mut next = vec![GaussianRational::zero(); m + 1];
            let prev = &polys[m - 1];
            for (e, c) in prev.iter().enumerate() {
                next[e + 1] = &next[e + 1] + c;
                next[e] = &next[e] - &(c * h.at(m - 1, m - 1));
            }
            let mut subdiag = GaussianRational::one();
            for i in (1..m).rev() {
                subdiag = &subdiag * h.at(i, i - 1);
                if subdiag.is_zero() {
                    break;
                }
                let weight = &subdiag * h.at(i - 1, m - 1);
                if weight.is_zero() {
                    continue;
                }
                for (e, c) in polys[i - 1].iter().enumerate() {
                    next[e] = &next[e] - &(&weight * c);
                }
            }
            polys.push(next);
        }
        polys.pop().expect("n >= 1")
    }
}

/// Determinant of a square matrix of polynomials: cofactor expansion for
/// small sizes, fraction-free Bareiss elimination above. Both exact.
pub fn poly_det(entries: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = entries.len();
    assert!(n > 0, "empty matrix");
    let nvars = entries[0][0].nvars();
    assert!(entries.iter().all(|row| row.len() == n), "non-square matrix");
    if n <= 4 {
        cofactor_det(entries, &(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>(), nvars)
    } else {
        bareiss_det(entries, nvars)
    }
}

fn cofactor_det(entries: &[Vec<MultiPoly>], rows: &[usize], cols: &[usize], nvars: usize) -> MultiPoly {
    if rows.is_empty() {
        return MultiPoly::one(nvars);
    }
    if rows.len() == 1 {
        return entries[rows[0]][cols[0]].clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    let sub_rows = &rows[1..];
    for (k, &col) in cols.iter().enumerate() {
        let e = &entries[rows[0]][col];
        if e.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &c)| c)
            .collect();
        let minor = cofactor_det(entries, sub_rows, &sub_cols, nvars);
        let contrib = e * &minor;
        if k % 2 == 0 {
            acc = &acc + &contrib;
        } else {
            acc = &acc - &contrib;
        }
    }
    acc
}

fn bareiss_det(entries: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = entries.len();
    let mut a: Vec<Vec<MultiPoly>> = entries.to_vec();
    let mut prev = MultiPoly::one(nvars);
    let mut sign_flip = false;
    for k in 0..(n - 1) {
        if a[k][k].is_zero() {
            let Some(pr) = ((k + 1)..n).find(|&r| !a[r][k].is_zero()) else {
                return MultiPoly::zero(nvars);
            };
            a.swap(k, pr);
            sign_flip = !sign_flip;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
            a[i][k] = MultiPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}
