//! Skew derivations `(σ, δ)` on a finite-dimensional algebra, the mirrored
//! right pair `(σ', δ') = (σ⁻¹, -δσ⁻¹)`, nilpotency indices, and the
//! operators `N_i^n` with `X^n a = Σ_i N_i^n(a) X^i`.

use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraElement, LinearMap};
use crate::field::GaloisField;
use crate::par;

/// The first basis instance on which an axiom fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomFailure {
    SigmaNotUnital,
    /// `σ(a_i a_j) != σ(a_i) σ(a_j)`
    SigmaNotMultiplicative { i: usize, j: usize },
    /// `δ(a_i a_j) != σ(a_i) δ(a_j) + δ(a_i) a_j`
    NotSigmaDerivation { i: usize, j: usize },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::SigmaNotUnital => write!(f, "sigma(1) != 1"),
            AxiomFailure::SigmaNotMultiplicative { i, j } => {
                write!(f, "sigma(a{i} a{j}) != sigma(a{i}) sigma(a{j})")
            }
            AxiomFailure::NotSigmaDerivation { i, j } => {
                write!(f, "delta(a{i} a{j}) != sigma(a{i}) delta(a{j}) + delta(a{i}) a{j}")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("map has size {got}, algebra has dimension {expected}")]
    Shape { expected: usize, got: usize },
    #[error("axiom violated: {0}")]
    Axiom(AxiomFailure),
    #[error("N operator index out of range: i = {i}, n = {n}")]
    IndexOutOfRange { i: usize, n: usize },
}

/// Smallest `m <= r` with `L^m = 0`, or `None` when `L^r != 0`.
pub fn nilpotency_index(map: &LinearMap, field: &GaloisField) -> Option<usize> {
    let r = map.dim();
    let mut power = map.clone();
    for m in 1..=r.max(1) {
        if power.is_zero() {
            return Some(m);
        }
        power = map.compose(&power, field);
    }
    None
}

/// A nonzero element certifying that `map` is not nilpotent: a fixed vector
/// `L(w) = w` when one exists, otherwise a basis element with `L^r(a_j) != 0`.
pub fn non_nilpotency_witness(map: &LinearMap, field: &GaloisField) -> Option<AlgebraElement> {
    let r = map.dim();
    let shifted = map.sub(&LinearMap::identity(r), field);
    if let Some(v) = shifted.matrix().kernel(field).into_iter().next() {
        return Some(AlgebraElement::from_coords(v));
    }
    let top = map.pow(r, field);
    (0..r).find(|&j| !top.image(j).is_zero()).map(|j| {
        let mut c = vec![crate::field::Fe::ZERO; r];
        c[j] = crate::field::Fe::ONE;
        AlgebraElement::from_coords(c)
    })
}

/// The inner σ-derivation `x ↦ M x - σ(x) M`.
pub fn inner_derivation(algebra: &Algebra, sigma: &LinearMap, m: &AlgebraElement) -> LinearMap {
    let f = algebra.field();
    let images: Vec<AlgebraElement> = (0..algebra.dim())
        .map(|j| {
            let a = algebra.basis(j);
            let left = algebra.mul(m, &a);
            let right = algebra.mul(&sigma.apply(&a, f), m);
            algebra.sub(&left, &right)
        })
        .collect();
    LinearMap::from_images(&images)
}

/// Memoized `N_i^n` for `0 <= i <= n`, grown on demand. Growth takes the
/// write lock; lookups of existing rows take the read lock only.
pub struct NOperatorTable {
    field: GaloisField,
    sigma: LinearMap,
    delta: LinearMap,
    rows: RwLock<Vec<Arc<[LinearMap]>>>,
}

impl NOperatorTable {
    pub fn new(field: &GaloisField, sigma: &LinearMap, delta: &LinearMap) -> Self {
        let first: Arc<[LinearMap]> = Arc::from(vec![LinearMap::identity(sigma.dim())]);
        NOperatorTable {
            field: field.clone(),
            sigma: sigma.clone(),
            delta: delta.clone(),
            rows: RwLock::new(vec![first]),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.read().expect("table lock").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Makes rows `0..=n_max` available.
    pub fn ensure(&self, n_max: usize) {
        if self.len() > n_max {
            return;
        }
        let mut rows = self.rows.write().expect("table lock");
        while rows.len() <= n_max {
            let prev = rows.last().expect("row 0 exists").clone();
            let n = prev.len() - 1;
            let f = &self.field;
            let next = par::map_indexed(n + 2, |i| {
                // N_i^{n+1} = σ N_{i-1}^n + δ N_i^n
                let mut acc = LinearMap::zero(self.sigma.dim());
                if i >= 1 && !prev[i - 1].is_zero() {
                    acc = acc.add(&self.sigma.compose(&prev[i - 1], f), f);
                }
                if i <= n && !prev[i].is_zero() {
                    acc = acc.add(&self.delta.compose(&prev[i], f), f);
                }
                acc
            });
            rows.push(Arc::from(next));
        }
    }

    /// Row `n`: the maps `N_0^n, ..., N_n^n`.
    pub fn row(&self, n: usize) -> Arc<[LinearMap]> {
        self.ensure(n);
        self.rows.read().expect("table lock")[n].clone()
    }

    /// Rows `0..=n_max`.
    pub fn rows_upto(&self, n_max: usize) -> Vec<Arc<[LinearMap]>> {
        self.ensure(n_max);
        self.rows.read().expect("table lock")[..=n_max].to_vec()
    }

    pub fn get(&self, i: usize, n: usize) -> Result<LinearMap, SkewError> {
        if i > n {
            return Err(SkewError::IndexOutOfRange { i, n });
        }
        Ok(self.row(n)[i].clone())
    }
}

/// A verified skew derivation with its cached derived data.
pub struct SkewDerivation {
    algebra: Algebra,
    sigma: LinearMap,
    delta: LinearMap,
    sigma_inv: Option<LinearMap>,
    delta_prime: Option<LinearMap>,
    m_delta: Option<usize>,
    m_delta_prime: Option<usize>,
    table: NOperatorTable,
}

impl fmt::Debug for SkewDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SkewDerivation")
            .field("algebra", &self.algebra)
            .field("sigma_invertible", &self.sigma_inv.is_some())
            .field("m_delta", &self.m_delta)
            .field("m_delta_prime", &self.m_delta_prime)
            .finish()
    }
}

impl Clone for SkewDerivation {
    fn clone(&self) -> Self {
        SkewDerivation {
            algebra: self.algebra.clone(),
            sigma: self.sigma.clone(),
            delta: self.delta.clone(),
            sigma_inv: self.sigma_inv.clone(),
            delta_prime: self.delta_prime.clone(),
            m_delta: self.m_delta,
            m_delta_prime: self.m_delta_prime,
            table: NOperatorTable::new(self.algebra.field(), &self.sigma, &self.delta),
        }
    }
}

/// Checks the skew-derivation axioms on all basis pairs and caches `σ⁻¹`,
/// `δ'`, and the nilpotency indices. A non-invertible σ is accepted; the
/// Laurent machinery then refuses the context.
pub fn verify_skew_derivation(
    algebra: &Algebra,
    sigma: LinearMap,
    delta: LinearMap,
) -> Result<SkewDerivation, SkewError> {
    let r = algebra.dim();
    for m in [&sigma, &delta] {
        if m.dim() != r {
            return Err(SkewError::Shape { expected: r, got: m.dim() });
        }
    }
    let f = algebra.field();
    if sigma.apply(&algebra.one(), f) != algebra.one() {
        return Err(SkewError::Axiom(AxiomFailure::SigmaNotUnital));
    }
    let basis: Vec<AlgebraElement> = (0..r).map(|j| algebra.basis(j)).collect();
    let sb: Vec<AlgebraElement> = basis.iter().map(|a| sigma.apply(a, f)).collect();
    let db: Vec<AlgebraElement> = basis.iter().map(|a| delta.apply(a, f)).collect();
    let failures = par::map_indexed(r, |i| {
        for j in 0..r {
            let prod = algebra.mul(&basis[i], &basis[j]);
            if sigma.apply(&prod, f) != algebra.mul(&sb[i], &sb[j]) {
                return Some(AxiomFailure::SigmaNotMultiplicative { i, j });
            }
        }
        for j in 0..r {
            let prod = algebra.mul(&basis[i], &basis[j]);
            let mut rhs = algebra.mul(&sb[i], &db[j]);
            algebra.mul_acc(&mut rhs, &db[i], &basis[j]);
            if delta.apply(&prod, f) != rhs {
                return Some(AxiomFailure::NotSigmaDerivation { i, j });
            }
        }
        None
    });
    // report multiplicativity failures before Leibniz failures
    let all: Vec<AxiomFailure> = failures.into_iter().flatten().collect();
    if let Some(fail) = all
        .iter()
        .find(|x| matches!(x, AxiomFailure::SigmaNotMultiplicative { .. }))
        .or_else(|| all.first())
    {
        return Err(SkewError::Axiom(fail.clone()));
    }
    Ok(SkewDerivation::assemble(algebra, sigma, delta))
}

impl SkewDerivation {
    fn assemble(algebra: &Algebra, sigma: LinearMap, delta: LinearMap) -> Self {
        let f = algebra.field();
        let sigma_inv = sigma.inverse(f);
        let delta_prime = sigma_inv.as_ref().map(|si| delta.compose(si, f).neg(f));
        let m_delta = nilpotency_index(&delta, f);
        let m_delta_prime = delta_prime.as_ref().and_then(|d| nilpotency_index(d, f));
        let table = NOperatorTable::new(f, &sigma, &delta);
        SkewDerivation {
            algebra: algebra.clone(),
            sigma,
            delta,
            sigma_inv,
            delta_prime,
            m_delta,
            m_delta_prime,
            table,
        }
    }

    /// `σ = id`, `δ = 0`.
    pub fn trivial(algebra: &Algebra) -> Self {
        let r = algebra.dim();
        Self::assemble(algebra, LinearMap::identity(r), LinearMap::zero(r))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> &GaloisField {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn sigma(&self) -> &LinearMap {
        &self.sigma
    }

    pub fn delta(&self) -> &LinearMap {
        &self.delta
    }

    pub fn sigma_inv(&self) -> Option<&LinearMap> {
        self.sigma_inv.as_ref()
    }

    /// `δ' = -δ σ⁻¹`, present iff σ is invertible.
    pub fn delta_prime(&self) -> Option<&LinearMap> {
        self.delta_prime.as_ref()
    }

    pub fn m_delta(&self) -> Option<usize> {
        self.m_delta
    }

    pub fn m_delta_prime(&self) -> Option<usize> {
        self.m_delta_prime
    }

    pub fn n_table(&self) -> &NOperatorTable {
        &self.table
    }

    pub fn n_operator(&self, i: usize, n: usize) -> Result<LinearMap, SkewError> {
        self.table.get(i, n)
    }

    pub fn sigma_of(&self, x: &AlgebraElement) -> AlgebraElement {
        self.sigma.apply(x, self.field())
    }

    pub fn delta_of(&self, x: &AlgebraElement) -> AlgebraElement {
        self.delta.apply(x, self.field())
    }

    pub fn commutes(&self) -> bool {
        let f = self.field();
        self.sigma.compose(&self.delta, f) == self.delta.compose(&self.sigma, f)
    }

    /// First basis pair violating `δ'(a_i a_j) = δ'(a_i) σ'(a_j) + a_i δ'(a_j)`,
    /// the axiom of a right skew derivation. `None` when it holds or when σ is
    /// not invertible.
    pub fn right_axiom_failure(&self) -> Option<(usize, usize)> {
        let (si, dp) = (self.sigma_inv.as_ref()?, self.delta_prime.as_ref()?);
        let a = &self.algebra;
        let f = a.field();
        let r = a.dim();
        for i in 0..r {
            for j in 0..r {
                let (x, y) = (a.basis(i), a.basis(j));
                let lhs = dp.apply(&a.mul(&x, &y), f);
                let mut rhs = a.mul(&dp.apply(&x, f), &si.apply(&y, f));
                a.mul_acc(&mut rhs, &x, &dp.apply(&y, f));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}
