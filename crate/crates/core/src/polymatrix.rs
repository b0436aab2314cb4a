//! Matrices over `F[X]`: Hermite and Smith forms, membership in a row
//! module, purification, and the direct-summand test.

use rand::Rng;

use crate::field::{Fe, GaloisField};
use crate::fxpoly::FPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![FPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FPoly::one());
        }
        m
    }

    /// Rows of equal length; `cols` is used when there are no rows.
    pub fn from_rows(rows: Vec<Vec<FPoly>>, cols: usize) -> Self {
        let cols = rows.first().map_or(cols, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        PolyMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self) -> Vec<Vec<FPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// The first `k` rows.
    pub fn top(&self, k: usize) -> PolyMatrix {
        PolyMatrix::from_rows(self.row_vec().into_iter().take(k).collect(), self.cols)
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(FPoly::is_zero)
    }

    /// Drops zero rows.
    pub fn nonzero_rows(&self) -> PolyMatrix {
        let rows = (0..self.rows).filter(|&i| !self.is_zero_row(i)).map(|i| self.row(i).to_vec()).collect();
        PolyMatrix::from_rows(rows, self.cols)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(FPoly::degree).max()
    }

    pub fn mul(&self, other: &PolyMatrix, f: &GaloisField) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FPoly::zero();
                for l in 0..self.cols {
                    acc = acc.add(&self.get(i, l).mul(other.get(l, j), f), f);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `x G` for a row vector `x`.
    pub fn row_combination(&self, x: &[FPoly], f: &GaloisField) -> Vec<FPoly> {
        assert_eq!(x.len(), self.rows, "shape mismatch");
        (0..self.cols)
            .map(|j| x.iter().enumerate().fold(FPoly::zero(), |acc, (i, c)| acc.add(&c.mul(self.get(i, j), f), f)))
            .collect()
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, deg: usize, f: &GaloisField, rng: &mut R) -> Self {
        let rows = (0..rows).map(|_| (0..cols).map(|_| FPoly::random(deg, f, rng)).collect()).collect();
        PolyMatrix::from_rows(rows, cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_dst += q row_src`
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &FPoly, f: &GaloisField) {
        for j in 0..self.cols {
            let v = self.get(dst, j).add(&q.mul(self.get(src, j), f), f);
            self.set(dst, j, v);
        }
    }

    /// `col_dst += q col_src`
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &FPoly, f: &GaloisField) {
        for i in 0..self.rows {
            let v = self.get(i, dst).add(&q.mul(self.get(i, src), f), f);
            self.set(i, dst, v);
        }
    }

    fn scale_row(&mut self, i: usize, c: Fe, f: &GaloisField) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c, f);
            self.set(i, j, v);
        }
    }

    pub fn format(&self, f: &GaloisField) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|p| p.format(f)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// `(H, U)` with `U G = H`, `U` unimodular, `H` in reduced row-echelon form:
/// monic pivots, entries above each pivot of lower degree, zero rows last.
pub fn hermite_form(g: &PolyMatrix, f: &GaloisField) -> (PolyMatrix, PolyMatrix) {
    let mut h = g.clone();
    let mut u = PolyMatrix::identity(g.rows);
    let mut r = 0;
    for c in 0..g.cols {
        if r == g.rows {
            break;
        }
        loop {
            // minimal-degree nonzero entry in column c at or below row r, lowest row on ties
            let Some(p) = (r..g.rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by_key(|&i| (h.get(i, c).degree(), i))
            else {
                break;
            };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..g.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let (q, rem) = h.get(i, c).div_rem(h.get(r, c), f).expect("pivot nonzero");
                let q = q.neg(f);
                h.add_row_multiple(i, r, &q, f);
                u.add_row_multiple(i, r, &q, f);
                done &= rem.is_zero();
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        let inv = f.inv(h.get(r, c).lead().expect("nonzero")).expect("nonzero");
        h.scale_row(r, inv, f);
        u.scale_row(r, inv, f);
        for i in 0..r {
            let (q, _) = h.get(i, c).div_rem(h.get(r, c), f).expect("pivot nonzero");
            if !q.is_zero() {
                let q = q.neg(f);
                h.add_row_multiple(i, r, &q, f);
                u.add_row_multiple(i, r, &q, f);
            }
        }
        r += 1;
    }
    (h, u)
}

/// `U G V = D` with `U`, `V` unimodular and `V_inv = V^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
    pub v_inv: PolyMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<FPoly> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).take_while(|p| !p.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_form(g: &PolyMatrix, f: &GaloisField) -> SmithDecomposition {
    let (k, n) = (g.rows, g.cols);
    let mut d = g.clone();
    let mut u = PolyMatrix::identity(k);
    let mut v = PolyMatrix::identity(n);
    let mut v_inv = PolyMatrix::identity(n);
    for t in 0..k.min(n) {
        let Some((pi, pj)) = min_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..k {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let (q, rem) = d.get(i, t).div_rem(d.get(t, t), f).expect("pivot nonzero");
                let q = q.neg(f);
                d.add_row_multiple(i, t, &q, f);
                u.add_row_multiple(i, t, &q, f);
                clean &= rem.is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let (q, rem) = d.get(t, j).div_rem(d.get(t, t), f).expect("pivot nonzero");
                d.add_col_multiple(j, t, &q.neg(f), f);
                v.add_col_multiple(j, t, &q.neg(f), f);
                v_inv.add_row_multiple(t, j, &q, f);
                clean &= rem.is_zero();
            }
            if clean {
                let bad = (t + 1..k)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !d.get(t, t).divides(d.get(i, j), f));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        d.add_row_multiple(t, i, &FPoly::one(), f);
                        u.add_row_multiple(t, i, &FPoly::one(), f);
                    }
                }
            }
            let (pi, pj) = min_entry(&d, t).expect("pivot row nonzero");
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
        }
        let inv = f.inv(d.get(t, t).lead().expect("nonzero")).expect("nonzero");
        d.scale_row(t, inv, f);
        u.scale_row(t, inv, f);
    }
    SmithDecomposition { u, d, v, v_inv }
}

/// Minimal-degree nonzero entry of the lower-right block from `(t, t)`,
/// lowest row then lowest column on ties.
fn min_entry(d: &PolyMatrix, t: usize) -> Option<(usize, usize)> {
    (t..d.rows)
        .flat_map(|i| (t..d.cols).map(move |j| (i, j)))
        .filter(|&(i, j)| !d.get(i, j).is_zero())
        .min_by_key(|&(i, j)| (d.get(i, j).degree(), i, j))
}

/// The row module of `G` with its Hermite form cached, for repeated
/// membership queries.
#[derive(Clone, Debug)]
pub struct RowModule {
    h: PolyMatrix,
    u: PolyMatrix,
}

impl RowModule {
    pub fn new(g: &PolyMatrix, f: &GaloisField) -> Self {
        let (h, u) = hermite_form(g, f);
        RowModule { h, u }
    }

    /// Coordinates `x` with `x G = v`, if `v` lies in the row module.
    pub fn coordinates(&self, v: &[FPoly], f: &GaloisField) -> Option<Vec<FPoly>> {
        let h = &self.h;
        if v.len() != h.cols {
            return None;
        }
        let mut residual = v.to_vec();
        let mut y = vec![FPoly::zero(); h.rows];
        for (i, yi) in y.iter_mut().enumerate() {
            let Some(c) = (0..h.cols).find(|&c| !h.get(i, c).is_zero()) else { break };
            let (q, rem) = residual[c].div_rem(h.get(i, c), f).expect("pivot nonzero");
            if !rem.is_zero() {
                return None;
            }
            for (j, r) in residual.iter_mut().enumerate() {
                *r = r.sub(&q.mul(h.get(i, j), f), f);
            }
            *yi = q;
        }
        if residual.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(self.u.row_combination(&y, f))
    }

    pub fn contains(&self, v: &[FPoly], f: &GaloisField) -> bool {
        self.coordinates(v, f).is_some()
    }
}

/// Coordinates `x` with `x G = v`, if `v` lies in the row module of `G`.
pub fn membership(v: &[FPoly], g: &PolyMatrix, f: &GaloisField) -> Option<Vec<FPoly>> {
    RowModule::new(g, f).coordinates(v, f)
}

/// Hermite basis of the smallest direct summand of `F^n[X]` containing the
/// row module of `G`: the first `rank` rows of `V^{-1}`.
pub fn closure(g: &PolyMatrix, f: &GaloisField) -> PolyMatrix {
    let s = smith_form(g, f);
    let pure = s.v_inv.top(s.rank());
    hermite_form(&pure, f).0.nonzero_rows()
}

/// Whether the row module of `G` is an `F[X]`-direct summand of `F^n[X]`.
pub fn is_direct_summand(g: &PolyMatrix, f: &GaloisField) -> bool {
    let s = smith_form(g, f);
    s.invariant_factors().iter().all(|p| p.degree() == Some(0))
}

/// Whether the row modules of `G` and `H` coincide.
pub fn same_row_module(g: &PolyMatrix, h: &PolyMatrix, f: &GaloisField) -> bool {
    g.cols == h.cols
        && (0..g.rows).all(|i| membership(g.row(i), h, f).is_some())
        && (0..h.rows).all(|i| membership(h.row(i), g, f).is_some())
}

/// Rank over `F(X)` by fraction-free (Bareiss) elimination.
pub fn rank_rational(g: &PolyMatrix, f: &GaloisField) -> usize {
    bareiss(g, f).0
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn det(g: &PolyMatrix, f: &GaloisField) -> FPoly {
    assert_eq!(g.rows, g.cols, "square matrix");
    let (rank, last, swaps) = bareiss(g, f);
    if rank < g.rows {
        return FPoly::zero();
    }
    if g.rows == 0 {
        return FPoly::one();
    }
    if swaps % 2 == 1 {
        last.neg(f)
    } else {
        last
    }
}

pub fn is_unimodular(g: &PolyMatrix, f: &GaloisField) -> bool {
    det(g, f).degree() == Some(0)
}

/// `(rank, last pivot, row swaps)`.
fn bareiss(g: &PolyMatrix, f: &GaloisField) -> (usize, FPoly, usize) {
    let mut m = g.clone();
    let mut prev = FPoly::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
        if p != r {
            m.swap_rows(r, p);
            swaps += 1;
        }
        let piv = m.get(r, c).clone();
        for i in r + 1..m.rows {
            let a = m.get(i, c).clone();
            for j in c..m.cols {
                let num = piv.mul(m.get(i, j), f).sub(&a.mul(m.get(r, j), f), f);
                let (q, rem) = num.div_rem(&prev, f).expect("previous pivot nonzero");
                debug_assert!(rem.is_zero());
                m.set(i, j, q);
            }
        }
        prev = piv;
        r += 1;
    }
    (r, prev, swaps)
}
