//! Dense linear algebra over small finite fields.

use alloc::vec::Vec;

use crate::field::{Field, Scalar};

/// Row-major `rows x cols` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: alloc::vec![Scalar::ZERO; rows * cols] }
    }

    /// Matrix whose columns are `cols`, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar], f: &Field) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Scalar::ZERO, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j]))))
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(p * self.cols + j, r * self.cols + j);
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let a = self.get(i, c);
                if i == r || a.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(a, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the null space `{v : M v = 0}`.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = alloc::vec![Scalar::ZERO; self.cols];
            v[free] = Scalar::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar], f: &Field) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = alloc::vec![Scalar::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Rank of the span of `vectors`, each of length `dim`.
pub fn span_rank(dim: usize, vectors: &[Vec<Scalar>], f: &Field) -> usize {
    Matrix::from_columns(dim, vectors).rank(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: &Field, rows: &[&[u32]]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                out.set(i, j, f.from_code(v as i64).unwrap());
            }
        }
        out
    }

    #[test]
    fn rank_kernel_solve_over_f2_and_f5() {
        let f2 = Field::f2();
        let a = m(&f2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(a.rank(&f2), 2);
        let k = a.kernel(&f2);
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0], &f2).iter().all(|x| x.is_zero()));
        assert!(a.solve(&[Scalar(1), Scalar(0), Scalar(0)], &f2).is_none());
        let f5 = Field::prime(5).unwrap();
        let b = m(&f5, &[&[2, 3], &[1, 4]]);
        assert_eq!(b.rank(&f5), 1);
        let x = b.solve(&[Scalar(4), Scalar(2)], &f5).unwrap();
        assert_eq!(b.mul_vec(&x, &f5), alloc::vec![Scalar(4), Scalar(2)]);
    }

    #[test]
    fn kernel_dimension_is_rank_nullity() {
        let f4 = Field::new(4).unwrap();
        let a = m(&f4, &[&[1, 2, 3, 0], &[2, 3, 1, 0], &[3, 1, 2, 0]]);
        let r = a.rank(&f4);
        let k = a.kernel(&f4);
        assert_eq!(r + k.len(), 4);
        for v in &k {
            assert!(a.mul_vec(v, &f4).iter().all(|x| x.is_zero()));
        }
    }
}
