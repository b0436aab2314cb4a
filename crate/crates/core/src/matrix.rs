//! Dense matrices over a finite field: products, row reduction, rank,
//! inverses, kernels and linear solves.

use crate::field::{Fe, GaloisField};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Result of reduced row echelon elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.concat() }
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(nrows: usize, cols: &[Vec<Fe>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix, f: &GaloisField) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| f.add(x, y)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix, f: &GaloisField) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| f.sub(x, y)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Fe, f: &GaloisField) -> Matrix {
        let data = self.data.iter().map(|&x| f.mul(c, x)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self, f: &GaloisField) -> Matrix {
        let data = self.data.iter().map(|&x| f.neg(x)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix, f: &GaloisField) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if !b.is_zero() {
                        *d = f.mul_add(*d, a, b);
                    }
                }
            }
        }
        out
    }

    /// Column vector product `M v`.
    pub fn apply(&self, v: &[Fe], f: &GaloisField) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![Fe::ZERO; self.rows];
        for (j, &x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o = f.mul_add(*o, m, x);
                }
            }
        }
        out
    }

    /// Row vector product `v M`.
    pub fn apply_row(&self, v: &[Fe], f: &GaloisField) -> Vec<Fe> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![Fe::ZERO; self.cols];
        for (i, &x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                if !m.is_zero() {
                    *o = f.mul_add(*o, x, m);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize, f: &GaloisField) -> Matrix {
        assert!(self.is_square());
        let mut r = Matrix::identity(self.rows);
        for _ in 0..e {
            r = self.mul(&r, f);
        }
        r
    }

    /// Reduced row echelon form. Pivots are chosen as the first nonzero entry
    /// at or below the current row.
    pub fn echelon(&self, f: &GaloisField) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(m.get(row, j), inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let c = m.get(i, col);
                if c.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(c, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &GaloisField) -> usize {
        self.echelon(f).pivots.len()
    }

    pub fn inverse(&self, f: &GaloisField) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe::ONE);
        }
        let e = aug.echelon(f);
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, e.reduced.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Basis of `{x : M x = 0}`, one vector per free column, in increasing
    /// order of the free column.
    pub fn kernel(&self, f: &GaloisField) -> Vec<Vec<Fe>> {
        let e = self.echelon(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[fc] = Fe::ONE;
                for (r, &pc) in e.pivots.iter().enumerate() {
                    v[pc] = f.neg(e.reduced.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// One solution of `M x = b` with free variables set to zero.
    pub fn solve(&self, b: &[Fe], f: &GaloisField) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let e = aug.echelon(f);
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (r, &pc) in e.pivots.iter().enumerate() {
            x[pc] = e.reduced.get(r, self.cols);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &GaloisField, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let rows: Vec<Vec<Fe>> = (0..r).map(|_| (0..c).map(|_| f.random(rng)).collect()).collect();
        Matrix::from_rows(&rows)
    }

    #[test]
    fn inverse_roundtrip() {
        let f = GaloisField::extension(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut found = 0;
        for _ in 0..50 {
            let m = random_matrix(&f, 4, 4, &mut rng);
            if let Some(inv) = m.inverse(&f) {
                assert_eq!(m.mul(&inv, &f), Matrix::identity(4));
                assert_eq!(m.rank(&f), 4);
                found += 1;
            } else {
                assert!(m.rank(&f) < 4);
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = GaloisField::extension(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let m = random_matrix(&f, 3, 5, &mut rng);
            let ker = m.kernel(&f);
            assert_eq!(ker.len() + m.rank(&f), 5);
            for v in ker {
                assert!(m.apply(&v, &f).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = GaloisField::prime(5).unwrap();
        let m = Matrix::from_rows(&[vec![Fe(1), Fe(2)], vec![Fe(2), Fe(4)]]);
        let x = m.solve(&[Fe(3), Fe(1)], &f).unwrap();
        assert_eq!(m.apply(&x, &f), vec![Fe(3), Fe(1)]);
        assert!(m.solve(&[Fe(1), Fe(1)], &f).is_none());
    }
}
