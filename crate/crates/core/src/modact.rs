//! `F^n` as a right `A`-module through matrices `R(a_j)` acting on row
//! vectors, and the induced right module structures on `F^n[X]`, `F^n[[X]]`
//! and `F^n((X))`.

use std::fmt;

use thiserror::Error;

use crate::action::RightActionDomain;
use crate::algebra::{Algebra, AlgebraElement, LinearMap};
use crate::field::{Fe, GaloisField};
use crate::laurent::{laurent_times, Laurent, LaurentRing, TruncLaurent};
use crate::matrix::Matrix;
use crate::series::{series_times, series_times_scalar_in, SeriesError, SeriesRing};
use crate::skewmap::SkewDerivation;
use crate::skewpoly::{poly_times, SkewPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("expected {expected} action matrices, got {got}")]
    MatrixCount { expected: usize, got: usize },
    #[error("action matrix {index} is not {n}x{n}")]
    MatrixShape { index: usize, n: usize },
    #[error("vector has length {got}, module has rank {expected}")]
    VectorLength { expected: usize, got: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleReport {
    pub unit_ok: bool,
    /// Basis pairs `(i, j)` with `R(a_i a_j) != R(a_i) R(a_j)`.
    pub failures: Vec<(usize, usize)>,
}

impl ModuleReport {
    pub fn is_valid(&self) -> bool {
        self.unit_ok && self.failures.is_empty()
    }
}

impl fmt::Display for ModuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        if !self.unit_ok {
            write!(f, "R(1) != I")?;
        }
        for (i, j) in &self.failures {
            write!(f, " R(a{i} a{j}) != R(a{i}) R(a{j})")?;
        }
        Ok(())
    }
}

/// `F^n` with `v · a_j = v R(a_j)`.
#[derive(Clone, Debug)]
pub struct RightModule {
    algebra: Algebra,
    n: usize,
    action: Vec<Matrix>,
}

impl RightModule {
    pub fn from_matrices(algebra: &Algebra, action: Vec<Matrix>) -> Result<Self, ModuleError> {
        if action.len() != algebra.dim() {
            return Err(ModuleError::MatrixCount { expected: algebra.dim(), got: action.len() });
        }
        let n = action.first().map_or(0, Matrix::rows);
        if let Some(index) = action.iter().position(|m| m.rows() != n || m.cols() != n) {
            return Err(ModuleError::MatrixShape { index, n });
        }
        Ok(RightModule { algebra: algebra.clone(), n, action })
    }

    /// `A` acting on itself by right multiplication.
    pub fn regular(algebra: &Algebra) -> Self {
        let action = (0..algebra.dim()).map(|j| algebra.right_regular_matrix(j)).collect();
        RightModule { algebra: algebra.clone(), n: algebra.dim(), action }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn action(&self, j: usize) -> &Matrix {
        &self.action[j]
    }

    /// `R(a) = Σ_j a_j R(a_j)`.
    pub fn matrix_of(&self, a: &AlgebraElement) -> Matrix {
        let f = self.algebra.field();
        let mut m = Matrix::zeros(self.n, self.n);
        for (c, r) in a.coords().iter().zip(&self.action) {
            if !c.is_zero() {
                m = m.add(&r.scale(*c, f), f);
            }
        }
        m
    }

    pub fn check_vector(&self, v: &[Fe]) -> Result<(), ModuleError> {
        if v.len() == self.n {
            Ok(())
        } else {
            Err(ModuleError::VectorLength { expected: self.n, got: v.len() })
        }
    }

    pub fn verify(&self) -> ModuleReport {
        let a = &self.algebra;
        let f = a.field();
        let r = a.dim();
        let unit_ok = self.matrix_of(&a.one()) == Matrix::identity(self.n);
        let mut failures = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let lhs = self.matrix_of(&a.mul(&a.basis(i), &a.basis(j)));
                if lhs != self.action[i].mul(&self.action[j], f) {
                    failures.push((i, j));
                }
            }
        }
        ModuleReport { unit_ok, failures }
    }
}

impl RightActionDomain for RightModule {
    type Elem = Vec<Fe>;

    fn field(&self) -> &GaloisField {
        self.algebra.field()
    }

    fn zero(&self) -> Vec<Fe> {
        vec![Fe::ZERO; self.n]
    }

    fn is_zero(&self, x: &Vec<Fe>) -> bool {
        x.iter().all(|c| c.is_zero())
    }

    fn add_assign(&self, acc: &mut Vec<Fe>, x: &Vec<Fe>) {
        let f = self.algebra.field();
        for (a, &b) in acc.iter_mut().zip(x) {
            *a = f.add(*a, b);
        }
    }

    fn act(&self, x: &Vec<Fe>, a: &AlgebraElement) -> Vec<Fe> {
        let f = self.algebra.field();
        let mut out = vec![Fe::ZERO; self.n];
        for (c, r) in a.coords().iter().zip(&self.action) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(r.apply_row(x, f)) {
                *o = f.mul_add(*o, *c, v);
            }
        }
        out
    }
}

/// `Σ v_i X^i` with `v_i ∈ F^n`; the top stored vector is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VecPoly {
    coeffs: Vec<Vec<Fe>>,
}

impl VecPoly {
    pub fn from_coeffs(mut coeffs: Vec<Vec<Fe>>) -> Self {
        while coeffs.last().is_some_and(|v| v.iter().all(|c| c.is_zero())) {
            coeffs.pop();
        }
        VecPoly { coeffs }
    }

    pub fn zero() -> Self {
        VecPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Vec<Fe>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &VecPoly, f: &GaloisField) -> VecPoly {
        let n = self.coeffs.first().or(other.coeffs.first()).map_or(0, Vec::len);
        let zero = vec![Fe::ZERO; n];
        let len = self.coeffs.len().max(other.coeffs.len());
        VecPoly::from_coeffs(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = other.coeffs.get(i).unwrap_or(&zero);
                    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
                })
                .collect(),
        )
    }
}

/// `s_0 + s_1 X + ... + O(X^N)` with `s_i ∈ F^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VecSeries {
    pub coeffs: Vec<Vec<Fe>>,
}

impl VecSeries {
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }
}

pub type VecLaurent = Laurent<Vec<Fe>>;

/// `(Σ m_k X^k)(Σ f_j X^j) = Σ (Σ_k m_k N_i^k(f_j)) X^{i+j}`
pub fn vecpoly_times_ring(module: &RightModule, ctx: &SkewDerivation, v: &VecPoly, f: &SkewPoly) -> VecPoly {
    VecPoly::from_coeffs(poly_times(module, ctx, &v.coeffs, f.coeffs()))
}

/// The module version of the bounded series product, to `out` coefficients.
pub fn vecseries_times_ring(
    module: &RightModule,
    ring: &SeriesRing,
    s: &VecSeries,
    t: &crate::series::TruncSeries,
    out: usize,
) -> Result<VecSeries, SeriesError> {
    series_times(module, ring.context(), ring.m(), &s.coeffs, t.coeffs(), out, 0).map(|coeffs| VecSeries { coeffs })
}

pub fn veclaurent(module: &RightModule, ord: i64, coeffs: Vec<Vec<Fe>>) -> VecLaurent {
    Laurent::new(ord, coeffs, |v| module.is_zero(v))
}

pub fn veclaurent_times_laurent(module: &RightModule, ring: &LaurentRing, s: &VecLaurent, t: &TruncLaurent) -> VecLaurent {
    laurent_times(module, ring, s, t)
}

/// `s a` through the Laurent product: `X^{ord} a` first, then the series
/// product with `ŝ`.
pub fn veclaurent_times_scalar(module: &RightModule, ring: &LaurentRing, s: &VecLaurent, a: &AlgebraElement) -> VecLaurent {
    let len = s.len() + 1;
    laurent_times(module, ring, s, &ring.constant(a.clone(), len))
}

/// `s a` for `s = ŝ X^{-n0}` by the closed formula
/// `Σ_k Σ_i (Σ_j ŝ_j N_i^j(b_k)) X^{i-n0-k}`, where `b_k` sums
/// `σ'δ'^{k_{n0}} ∘ ... ∘ σ'δ'^{k_1}(a)` over tuples with `k_1 + ... + k_{n0} = k`.
/// For `ord >= 0` the inner element is `N_k^{ord}(a)` at shift `k`.
pub fn veclaurent_times_scalar_direct(
    module: &RightModule,
    ring: &LaurentRing,
    s: &VecLaurent,
    a: &AlgebraElement,
) -> VecLaurent {
    let ctx = ring.context();
    let f = ctx.field();
    let alg = ctx.algebra();
    let terms: Vec<(i64, AlgebraElement)> = if s.ord() >= 0 {
        let row = ctx.n_table().row(s.ord() as usize);
        row.iter().enumerate().map(|(k, nk)| (k as i64, nk.apply(a, f))).collect()
    } else {
        let n0 = s.ord().unsigned_abs() as usize;
        let mp = ring.m_prime();
        let dp = ctx.delta_prime().expect("Laurent context");
        let steps: Vec<LinearMap> = (0..mp).map(|k| ring.sigma_prime().compose(&dp.pow(k, f), f)).collect();
        let mut by_total = vec![alg.zero(); n0 * (mp - 1) + 1];
        let mut tuple = vec![0usize; n0];
        loop {
            let img = tuple.iter().fold(a.clone(), |x, &k| steps[k].apply(&x, f));
            alg.add_assign(&mut by_total[tuple.iter().sum::<usize>()], &img);
            let Some(pos) = tuple.iter().position(|&k| k + 1 < mp) else { break };
            tuple[pos] += 1;
            for k in &mut tuple[..pos] {
                *k = 0;
            }
        }
        by_total.into_iter().enumerate().map(|(k, b)| (s.ord() - k as i64, b)).collect()
    };
    let out = s.len() / ring.m();
    // each term is known below `shift + out`
    let lo = terms.iter().map(|(sh, _)| *sh).min().unwrap_or(0);
    let hi = lo + out as i64;
    let mut acc = vec![module.zero(); out];
    for (sh, b) in &terms {
        let prod = series_times_scalar_in(module, ctx, ring.m(), s.coeffs(), b, out).expect("window fits");
        for (i, v) in prod.iter().enumerate() {
            let e = sh + i as i64;
            if e < hi {
                module.add_assign(&mut acc[(e - lo) as usize], v);
            }
        }
    }
    Laurent::new(lo, acc, |v| module.is_zero(v))
}

/// `s f` for `f ∈ F((X))`, which is central: the plain convolution.
pub fn flsx_scalar_action(module: &RightModule, s: &VecLaurent, t: &Laurent<Fe>) -> VecLaurent {
    let f = module.field();
    let prec = (s.prec() + t.ord()).min(t.prec() + s.ord());
    let lo = s.ord() + t.ord();
    let len = (prec - lo).max(0) as usize;
    let mut acc = vec![module.zero(); len];
    for (i, si) in s.coeffs().iter().enumerate() {
        for (j, &tj) in t.coeffs().iter().enumerate() {
            let k = i + j;
            if k >= len || tj.is_zero() {
                continue;
            }
            for (o, &x) in acc[k].iter_mut().zip(si) {
                *o = f.mul_add(*o, tj, x);
            }
        }
    }
    if len == 0 {
        return Laurent::zero(prec);
    }
    Laurent::new(lo, acc, |v| module.is_zero(v))
}

/// `F((X)) → A((X;σ,δ))`, `c ↦ c·1`.
pub fn embed_scalar_series(ring: &LaurentRing, t: &Laurent<Fe>) -> TruncLaurent {
    let a = ring.algebra();
    ring.make(t.ord(), t.coeffs().iter().map(|&c| a.scalar(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_algebra;
    use crate::field::GaloisField;

    #[test]
    fn regular_module_is_valid() {
        let f = GaloisField::extension(2, 2).unwrap();
        let a = matrix_algebra(&f, 2).unwrap();
        assert!(RightModule::regular(&a).verify().is_valid());
    }

    #[test]
    fn identity_action_only_for_trivial_algebra() {
        let f = GaloisField::prime(2).unwrap();
        let a = matrix_algebra(&f, 2).unwrap();
        let m = RightModule::from_matrices(&a, vec![Matrix::identity(3); 4]).unwrap();
        let rep = m.verify();
        assert!(!rep.is_valid());
        let one = matrix_algebra(&f, 1).unwrap();
        assert!(RightModule::from_matrices(&one, vec![Matrix::identity(3)]).unwrap().verify().is_valid());
    }

    #[test]
    fn corrupted_action_reports_pair() {
        let f = GaloisField::prime(2).unwrap();
        let a = matrix_algebra(&f, 2).unwrap();
        let reg = RightModule::regular(&a);
        let mut mats: Vec<Matrix> = (0..4).map(|j| reg.action(j).clone()).collect();
        mats[1].set(0, 0, Fe::ONE);
        let rep = RightModule::from_matrices(&a, mats).unwrap().verify();
        assert!(!rep.failures.is_empty());
    }

    #[test]
    fn shape_errors() {
        let f = GaloisField::prime(2).unwrap();
        let a = matrix_algebra(&f, 2).unwrap();
        assert!(matches!(
            RightModule::from_matrices(&a, vec![Matrix::identity(2)]),
            Err(ModuleError::MatrixCount { .. })
        ));
        let mut mats = vec![Matrix::identity(2); 4];
        mats[3] = Matrix::identity(3);
        assert!(matches!(RightModule::from_matrices(&a, mats), Err(ModuleError::MatrixShape { index: 3, .. })));
    }
}
