//! Dense exact linear algebra over Q.

use num_traits::{One, Zero};

use super::param::ParamPoly;
use super::rat::Rat;

#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        RatMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn determinant(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                let f = m.get(r, col) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j) - &f * m.get(col, j);
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan; `None` if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pivot_inv = Rat::one() / a.get(col, col);
            for j in 0..n {
                let v = a.get(col, j) * &pivot_inv;
                a.set(col, j, v);
                let w = inv.get(col, j) * &pivot_inv;
                inv.set(col, j, w);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j) - &f * a.get(col, j);
                    a.set(r, j, v);
                    let w = inv.get(r, j) - &f * inv.get(col, j);
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }

    /// `self * rhs` where rhs entries are parameter polynomials.
    pub fn apply(&self, rhs: &[ParamPoly]) -> Vec<ParamPoly> {
        assert_eq!(self.cols, rhs.len());
        let symbols = rhs
            .iter()
            .fold(super::symbols::Symbols::empty(), |s, p| s.union(p.symbols()));
        (0..self.rows)
            .map(|i| {
                let mut acc = ParamPoly::zero(&symbols);
                for (j, r) in rhs.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc.add_scaled(r, a);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Outcome of solving `A u = b` with polynomial right-hand side.
pub struct Solution {
    pub values: Vec<ParamPoly>,
    /// Residual equations `0 = r` left after elimination; all zero iff consistent.
    pub inconsistencies: Vec<ParamPoly>,
}

/// Row-reduces `A u = b`, setting free unknowns to zero. Columns are pivoted
/// in order, so earlier columns are preferred as pivots.
pub fn solve_poly_rhs(a: &RatMatrix, b: &[ParamPoly]) -> Solution {
    assert_eq!(a.rows(), b.len());
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut rhs: Vec<ParamPoly> = b.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        rhs.swap(p, r);
        let inv = Rat::one() / m.get(r, c);
        for j in c..cols {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
        }
        rhs[r] = rhs[r].scale(&inv);
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = m.get(i, j) - &f * m.get(r, j);
                m.set(i, j, v);
            }
            let pr = rhs[r].clone();
            rhs[i].add_scaled(&pr, &-f);
        }
        pivots.push((r, c));
        r += 1;
    }
    let symbols = b
        .iter()
        .fold(super::symbols::Symbols::empty(), |s, p| s.union(p.symbols()));
    let mut values = vec![ParamPoly::zero(&symbols); cols];
    for &(row, col) in &pivots {
        values[col] = rhs[row].clone();
    }
    let inconsistencies = rhs[r..].iter().filter(|p| !p.is_zero()).cloned().collect();
    Solution {
        values,
        inconsistencies,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::int;

    #[test]
    fn inverse_round_trip() {
        let a = RatMatrix::from_rows(vec![
            vec![int(2), int(1), int(0)],
            vec![int(1), int(3), int(1)],
            vec![int(0), int(1), int(4)],
        ]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(3));
        assert_eq!(a.determinant(), int(18));
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = RatMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert!(a.inverse().is_none());
        assert_eq!(a.determinant(), int(0));
    }

    #[test]
    fn underdetermined_solve_zeroes_free_columns() {
        let a = RatMatrix::from_rows(vec![vec![int(1), int(1)]]);
        let b = vec![ParamPoly::symbol("t")];
        let s = solve_poly_rhs(&a, &b);
        assert_eq!(s.values[0], ParamPoly::symbol("t"));
        assert!(s.values[1].is_zero());
        assert!(s.inconsistencies.is_empty());
    }
}
