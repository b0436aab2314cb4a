//! Finite-dimensional associative algebras presented by structure constants.

use std::fmt;

use thiserror::Error;

use crate::field::{Fe, GaloisField};
use crate::matrix::Matrix;
use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("modulus polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("structure tensor has wrong shape: {0}")]
    BadShape(String),
    #[error("algebra must have dimension >= 1")]
    Empty,
}

/// Coordinates of an algebra element in the algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgebraElement {
    coords: Vec<Fe>,
}

impl AlgebraElement {
    pub fn from_coords(coords: Vec<Fe>) -> Self {
        AlgebraElement { coords }
    }

    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Fe> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// An F-linear endomorphism of an algebra; column `j` is the image of `a_j`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn from_matrix(matrix: Matrix) -> Self {
        assert!(matrix.is_square(), "linear map must be square");
        LinearMap { matrix }
    }

    pub fn from_images(images: &[AlgebraElement]) -> Self {
        let r = images.len();
        let cols: Vec<Vec<Fe>> = images.iter().map(|x| x.coords.clone()).collect();
        Self::from_matrix(Matrix::from_columns(r, &cols))
    }

    pub fn identity(r: usize) -> Self {
        LinearMap { matrix: Matrix::identity(r) }
    }

    pub fn zero(r: usize) -> Self {
        LinearMap { matrix: Matrix::zeros(r, r) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &AlgebraElement, f: &GaloisField) -> AlgebraElement {
        AlgebraElement { coords: self.matrix.apply(&x.coords, f) }
    }

    pub fn image(&self, j: usize) -> AlgebraElement {
        AlgebraElement { coords: self.matrix.column(j) }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearMap, f: &GaloisField) -> LinearMap {
        LinearMap { matrix: self.matrix.mul(&other.matrix, f) }
    }

    pub fn add(&self, other: &LinearMap, f: &GaloisField) -> LinearMap {
        LinearMap { matrix: self.matrix.add(&other.matrix, f) }
    }

    pub fn sub(&self, other: &LinearMap, f: &GaloisField) -> LinearMap {
        LinearMap { matrix: self.matrix.sub(&other.matrix, f) }
    }

    pub fn neg(&self, f: &GaloisField) -> LinearMap {
        LinearMap { matrix: self.matrix.neg(f) }
    }

    pub fn pow(&self, e: usize, f: &GaloisField) -> LinearMap {
        LinearMap { matrix: self.matrix.pow(e, f) }
    }

    pub fn inverse(&self, f: &GaloisField) -> Option<LinearMap> {
        self.matrix.inverse(f).map(|matrix| LinearMap { matrix })
    }
}

/// An associative unital algebra `A` over a finite field with basis
/// `a_1..a_r` and `a_i a_j = Σ_l c[i][j][l] a_l`.
#[derive(Clone)]
pub struct Algebra {
    field: GaloisField,
    labels: Vec<String>,
    /// `c[i][j][l]` at `(i * r + j) * r + l`
    table: Vec<Fe>,
    /// nonzero `(l, c[i][j][l])` per `(i, j)`
    sparse: Vec<Vec<(usize, Fe)>>,
    unit: Vec<Fe>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {}, basis {:?})", self.dim(), self.field, self.labels)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.table == other.table && self.unit == other.unit
    }
}

/// Outcome of [`Algebra::verify`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    /// `(i, j, l)` with `(a_i a_j) a_l != a_i (a_j a_l)`
    pub associativity_failures: Vec<(usize, usize, usize)>,
    /// `k` with `u a_k != a_k` or `a_k u != a_k`
    pub unit_failures: Vec<usize>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.associativity_failures.is_empty() && self.unit_failures.is_empty()
    }
}

impl fmt::Display for AlgebraReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let mut parts = Vec::new();
        for (i, j, l) in &self.associativity_failures {
            parts.push(format!("associativity fails on ({i},{j},{l})"));
        }
        for k in &self.unit_failures {
            parts.push(format!("unit fails on basis element {k}"));
        }
        write!(f, "{}", parts.join("; "))
    }
}

impl Algebra {
    /// Builds an algebra from a dense structure tensor `table[i][j]` = coordinates
    /// of `a_i a_j`. Does not check associativity; see [`Algebra::verify`].
    pub fn from_structure(
        field: &GaloisField,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Fe>>>,
        unit: Vec<Fe>,
    ) -> Result<Self, AlgebraError> {
        let r = labels.len();
        if r == 0 {
            return Err(AlgebraError::Empty);
        }
        if table.len() != r || table.iter().any(|row| row.len() != r || row.iter().any(|c| c.len() != r)) {
            return Err(AlgebraError::BadShape(format!("expected {r}x{r}x{r}")));
        }
        if unit.len() != r {
            return Err(AlgebraError::DimensionMismatch { expected: r, got: unit.len() });
        }
        let flat: Vec<Fe> = table.into_iter().flatten().flatten().collect();
        Ok(Self::from_flat(field, labels, flat, unit))
    }

    fn from_flat(field: &GaloisField, labels: Vec<String>, table: Vec<Fe>, unit: Vec<Fe>) -> Self {
        let r = labels.len();
        let sparse = (0..r * r)
            .map(|ij| {
                (0..r)
                    .filter_map(|l| {
                        let c = table[ij * r + l];
                        (!c.is_zero()).then_some((l, c))
                    })
                    .collect()
            })
            .collect();
        Algebra { field: field.clone(), labels, table, sparse, unit }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `c[i][j][l]`
    pub fn structure_constant(&self, i: usize, j: usize, l: usize) -> Fe {
        let r = self.dim();
        self.table[(i * r + j) * r + l]
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { coords: vec![Fe::ZERO; self.dim()] }
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement { coords: self.unit.clone() }
    }

    pub fn basis(&self, j: usize) -> AlgebraElement {
        let mut c = vec![Fe::ZERO; self.dim()];
        c[j] = Fe::ONE;
        AlgebraElement { coords: c }
    }

    pub fn scalar(&self, c: Fe) -> AlgebraElement {
        self.scale(c, &self.one())
    }

    pub fn element(&self, coords: Vec<Fe>) -> Result<AlgebraElement, AlgebraError> {
        self.check(&coords)?;
        Ok(AlgebraElement { coords })
    }

    fn check(&self, coords: &[Fe]) -> Result<(), AlgebraError> {
        if coords.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        Ok(())
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let f = &self.field;
        AlgebraElement { coords: x.coords.iter().zip(&y.coords).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn add_assign(&self, acc: &mut AlgebraElement, x: &AlgebraElement) {
        let f = &self.field;
        for (a, &b) in acc.coords.iter_mut().zip(&x.coords) {
            *a = f.add(*a, b);
        }
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let f = &self.field;
        AlgebraElement { coords: x.coords.iter().zip(&y.coords).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn neg(&self, x: &AlgebraElement) -> AlgebraElement {
        let f = &self.field;
        AlgebraElement { coords: x.coords.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn scale(&self, c: Fe, x: &AlgebraElement) -> AlgebraElement {
        let f = &self.field;
        AlgebraElement { coords: x.coords.iter().map(|&a| f.mul(c, a)).collect() }
    }

    /// Structure-constant contraction. Panics on dimension mismatch; see
    /// [`Algebra::try_mul`] for the checked variant.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        self.mul_acc(&mut out, x, y);
        out
    }

    /// `acc += x y`
    pub fn mul_acc(&self, acc: &mut AlgebraElement, x: &AlgebraElement, y: &AlgebraElement) {
        let r = self.dim();
        assert!(x.dim() == r && y.dim() == r, "algebra element dimension mismatch");
        let f = &self.field;
        for (i, &xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = f.mul(xi, yj);
                for &(l, s) in &self.sparse[i * r + j] {
                    acc.coords[l] = f.mul_add(acc.coords[l], c, s);
                }
            }
        }
    }

    pub fn try_mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(&x.coords)?;
        self.check(&y.coords)?;
        Ok(self.mul(x, y))
    }

    pub fn pow(&self, x: &AlgebraElement, e: usize) -> AlgebraElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// Matrix of `x ↦ x a_j` in row-vector convention: row `i` holds the
    /// coordinates of `a_i a_j`.
    pub fn right_regular_matrix(&self, j: usize) -> Matrix {
        let r = self.dim();
        let rows: Vec<Vec<Fe>> = (0..r).map(|i| self.mul(&self.basis(i), &self.basis(j)).coords).collect();
        Matrix::from_rows(&rows)
    }

    /// Exhaustive check of associativity on all basis triples and of the unit
    /// on all basis elements. The `r^3` triple loop runs in parallel.
    pub fn verify(&self) -> AlgebraReport {
        let r = self.dim();
        let basis: Vec<AlgebraElement> = (0..r).map(|j| self.basis(j)).collect();
        let products: Vec<Vec<AlgebraElement>> =
            (0..r).map(|i| (0..r).map(|j| self.mul(&basis[i], &basis[j])).collect()).collect();
        let failures = par::map_indexed(r, |i| {
            let mut bad = Vec::new();
            for j in 0..r {
                for l in 0..r {
                    let left = self.mul(&products[i][j], &basis[l]);
                    let right = self.mul(&basis[i], &products[j][l]);
                    if left != right {
                        bad.push((i, j, l));
                    }
                }
            }
            bad
        });
        let one = self.one();
        let unit_failures = (0..r)
            .filter(|&k| self.mul(&one, &basis[k]) != basis[k] || self.mul(&basis[k], &one) != basis[k])
            .collect();
        AlgebraReport { associativity_failures: failures.into_iter().flatten().collect(), unit_failures }
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.dim();
        (0..r).all(|i| (0..r).all(|j| self.mul(&self.basis(i), &self.basis(j)) == self.mul(&self.basis(j), &self.basis(i))))
    }

    /// Canonical text: `1` for the unit, otherwise a sum of `coef*label`.
    pub fn format(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        if x.coords == self.unit {
            return "1".to_string();
        }
        let f = &self.field;
        let parts: Vec<String> = x
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, &c)| {
                let label = &self.labels[j];
                if c == Fe::ONE {
                    label.clone()
                } else if f.is_compound(c) {
                    format!("({})*{label}", f.format(c))
                } else {
                    format!("{}*{label}", f.format(c))
                }
            })
            .collect();
        parts.join("+")
    }
}

fn matrix_unit_label(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{}_{}", i + 1, j + 1)
    }
}

fn power_label(sym: &str, i: usize) -> String {
    match i {
        0 => "1".to_string(),
        1 => sym.to_string(),
        _ => format!("{sym}^{i}"),
    }
}

/// `M_n(F)` on the matrix units `E_ij`, ordered row-major.
pub fn matrix_algebra(field: &GaloisField, n: usize) -> Result<Algebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::Empty);
    }
    let r = n * n;
    let labels = (0..r).map(|idx| matrix_unit_label(n, idx / n, idx % n)).collect();
    let mut table = vec![Fe::ZERO; r * r * r];
    for a in 0..r {
        for b in 0..r {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            if j == k {
                table[(a * r + b) * r + i * n + l] = Fe::ONE;
            }
        }
    }
    let mut unit = vec![Fe::ZERO; r];
    for i in 0..n {
        unit[i * n + i] = Fe::ONE;
    }
    Ok(Algebra::from_flat(field, labels, table, unit))
}

/// Group algebra `F C_n` on `1, g, ..., g^(n-1)`.
pub fn group_algebra_cyclic(field: &GaloisField, n: usize) -> Result<Algebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::Empty);
    }
    let labels = (0..n).map(|i| power_label("g", i)).collect();
    let mut table = vec![Fe::ZERO; n * n * n];
    for i in 0..n {
        for j in 0..n {
            table[(i * n + j) * n + (i + j) % n] = Fe::ONE;
        }
    }
    let mut unit = vec![Fe::ZERO; n];
    unit[0] = Fe::ONE;
    Ok(Algebra::from_flat(field, labels, table, unit))
}

/// `F[Y,Z]/(Y^2, Z^2, YZ)` on `1, y, z`.
pub fn quotient_algebra_yz(field: &GaloisField) -> Algebra {
    let labels = vec!["1".to_string(), "y".to_string(), "z".to_string()];
    let mut table = vec![Fe::ZERO; 27];
    for j in 0..3 {
        // 1·a_j = a_j·1 = a_j
        table[j * 3 + j] = Fe::ONE;
        table[(j * 3) * 3 + j] = Fe::ONE;
    }
    Algebra::from_flat(field, labels, table, vec![Fe::ONE, Fe::ZERO, Fe::ZERO])
}

/// `F[t]/(f)` on `1, t, ..., t^(n-1)` for a monic `f` of degree `n`, given
/// by its coefficients from the constant term up.
pub fn quotient_algebra_tn(field: &GaloisField, f: &[Fe]) -> Result<Algebra, AlgebraError> {
    let n = f.len().checked_sub(1).ok_or(AlgebraError::NotMonic)?;
    if n == 0 || f[n] != Fe::ONE {
        return Err(AlgebraError::NotMonic);
    }
    // reduce t^e for e < 2n - 1 modulo f
    let mut powers: Vec<Vec<Fe>> = Vec::with_capacity(2 * n);
    for e in 0..2 * n {
        if e < n {
            let mut v = vec![Fe::ZERO; n];
            v[e] = Fe::ONE;
            powers.push(v);
        } else {
            // t * t^(e-1): shift then replace t^n by -(f_0 + ... + f_{n-1} t^{n-1})
            let prev = &powers[e - 1];
            let top = prev[n - 1];
            let mut v = vec![Fe::ZERO; n];
            for i in (1..n).rev() {
                v[i] = prev[i - 1];
            }
            for i in 0..n {
                v[i] = field.sub(v[i], field.mul(top, f[i]));
            }
            powers.push(v);
        }
    }
    let labels = (0..n).map(|i| power_label("t", i)).collect();
    let mut table = vec![Fe::ZERO; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                table[(i * n + j) * n + l] = powers[i + j][l];
            }
        }
    }
    let mut unit = vec![Fe::ZERO; n];
    unit[0] = Fe::ONE;
    Ok(Algebra::from_flat(field, labels, table, unit))
}

/// An algebra over `GF(p^k)` viewed as an algebra of dimension `r k` over
/// `Z_p`, with basis `a^e b_l` at index `l k + e`.
#[derive(Clone, Debug)]
pub struct ScalarRestriction {
    base: Algebra,
    restricted: Algebra,
}

pub fn restrict_scalars(base: &Algebra) -> ScalarRestriction {
    let big = base.field();
    let p = big.characteristic();
    let k = big.degree();
    let small = GaloisField::prime(p).expect("characteristic is prime");
    let r = base.dim();
    let rr = r * k;
    let sym = big.symbol();
    let labels: Vec<String> = (0..rr)
        .map(|idx| {
            let (l, e) = (idx / k, idx % k);
            let lab = &base.labels()[l];
            match (e, lab.as_str()) {
                (0, _) => lab.clone(),
                (_, "1") => power_label(sym, e),
                (1, _) => format!("{sym}{lab}"),
                _ => format!("{sym}{e}{lab}"),
            }
        })
        .collect();
    let gen_pow: Vec<Fe> = (0..2 * k).map(|e| big.pow(big.generator(), e as u64)).collect();
    let mut table = vec![Fe::ZERO; rr * rr * rr];
    for i in 0..r {
        for j in 0..r {
            for l in 0..r {
                let c = base.structure_constant(i, j, l);
                if c.is_zero() {
                    continue;
                }
                for e in 0..k {
                    for g in 0..k {
                        let v = big.mul(gen_pow[e + g], c);
                        for (d, digit) in big.coeffs(v).into_iter().enumerate() {
                            if digit != 0 {
                                let (a, b, o) = (i * k + e, j * k + g, l * k + d);
                                table[(a * rr + b) * rr + o] = small.constant(digit);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![Fe::ZERO; rr];
    for (l, &u) in base.one().coords().iter().enumerate() {
        for (d, digit) in big.coeffs(u).into_iter().enumerate() {
            unit[l * k + d] = small.constant(digit);
        }
    }
    let restricted = Algebra::from_flat(&small, labels, table, unit);
    ScalarRestriction { base: base.clone(), restricted }
}

impl ScalarRestriction {
    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn algebra(&self) -> &Algebra {
        &self.restricted
    }

    pub fn into_algebra(self) -> Algebra {
        self.restricted
    }

    /// Coordinates over the prime field of an element of the base algebra.
    pub fn embed(&self, x: &AlgebraElement) -> AlgebraElement {
        let big = self.base.field();
        let small = self.restricted.field();
        let coords = x
            .coords()
            .iter()
            .flat_map(|&c| big.coeffs(c).into_iter().map(|d| small.constant(d)))
            .collect();
        AlgebraElement::from_coords(coords)
    }

    pub fn project(&self, y: &AlgebraElement) -> AlgebraElement {
        let big = self.base.field();
        let k = big.degree();
        let coords = y
            .coords()
            .chunks(k)
            .map(|chunk| big.from_coeffs(&chunk.iter().map(|d| d.index()).collect::<Vec<_>>()))
            .collect();
        AlgebraElement::from_coords(coords)
    }

    /// The map applying `c ↦ c^p` to every coordinate in the base basis.
    /// This is a ring endomorphism when the base structure constants and unit
    /// lie in the prime field (matrix units, group algebras).
    pub fn frobenius_map(&self) -> LinearMap {
        let big = self.base.field();
        let images: Vec<AlgebraElement> = (0..self.restricted.dim())
            .map(|idx| {
                let basis = self.project(&self.restricted.basis(idx));
                let img = AlgebraElement::from_coords(basis.coords().iter().map(|&c| big.frobenius(c)).collect());
                self.embed(&img)
            })
            .collect();
        LinearMap::from_images(&images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> GaloisField {
        GaloisField::extension(2, 2).unwrap()
    }

    fn rand_elem(alg: &Algebra, rng: &mut ChaCha8Rng) -> AlgebraElement {
        AlgebraElement::from_coords((0..alg.dim()).map(|_| alg.field().random(rng)).collect())
    }

    #[test]
    fn matrix_units_multiply() {
        let a = matrix_algebra(&f4(), 2).unwrap();
        assert_eq!(a.dim(), 4);
        let e12 = a.basis(a.label_index("E12").unwrap());
        let e21 = a.basis(a.label_index("E21").unwrap());
        let e11 = a.basis(a.label_index("E11").unwrap());
        assert_eq!(a.mul(&e12, &e21), e11);
        assert_eq!(a.format(&a.one()), "1");
        assert_eq!(a.one(), a.add(&e11, &a.basis(3)));
        assert!(a.verify().is_valid());
    }

    #[test]
    fn matrix_algebra_matches_literal_products() {
        let f = f4();
        let a = matrix_algebra(&f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let x = rand_elem(&a, &mut rng);
            let y = rand_elem(&a, &mut rng);
            let xy = a.mul(&x, &y);
            let (p, q) = (x.coords(), y.coords());
            for i in 0..2 {
                for j in 0..2 {
                    let lit = f.add(f.mul(p[i * 2], q[j]), f.mul(p[i * 2 + 1], q[2 + j]));
                    assert_eq!(xy.coords()[i * 2 + j], lit);
                }
            }
        }
    }

    #[test]
    fn one_by_one_matrix_algebra_is_the_field() {
        let f2 = GaloisField::prime(2).unwrap();
        let a = matrix_algebra(&f2, 1).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.one(), a.basis(0));
        assert!(a.verify().is_valid());
    }

    #[test]
    fn cyclic_group_algebra_exponents() {
        let a = group_algebra_cyclic(&f4(), 5).unwrap();
        let g2 = a.basis(2);
        let g4 = a.basis(4);
        assert_eq!(a.mul(&g2, &g4), a.basis(1));
        assert!(a.is_commutative());
        assert!(a.verify().is_valid());
        let trivial = group_algebra_cyclic(&GaloisField::prime(2).unwrap(), 1).unwrap();
        assert_eq!(trivial.dim(), 1);
    }

    #[test]
    fn yz_quotient_products_vanish() {
        let a = quotient_algebra_yz(&f4());
        let (y, z) = (a.basis(1), a.basis(2));
        assert!(a.mul(&y, &z).is_zero());
        assert!(a.mul(&y, &y).is_zero());
        assert_eq!(a.mul(&a.one(), &y), y);
        assert!(a.verify().is_valid());
    }

    #[test]
    fn tn_quotient_wraps() {
        let f = f4();
        // t^5 - 1
        let mut m = vec![Fe::ZERO; 6];
        m[0] = f.neg(Fe::ONE);
        m[5] = Fe::ONE;
        let a = quotient_algebra_tn(&f, &m).unwrap();
        assert_eq!(a.mul(&a.basis(1), &a.basis(4)), a.one());
        assert!(a.verify().is_valid());
        let f2 = GaloisField::prime(2).unwrap();
        let one = quotient_algebra_tn(&f2, &[Fe::ONE, Fe::ONE]).unwrap();
        assert_eq!(one.dim(), 1);
        assert!(quotient_algebra_tn(&f, &[Fe::ONE, f.generator()]).is_err());
    }

    #[test]
    fn tn_quotient_general_modulus() {
        let f = GaloisField::prime(3).unwrap();
        // t^3 - t - 1 over Z_3, compare with direct polynomial reduction
        let m = vec![f.neg(Fe::ONE), f.neg(Fe::ONE), Fe::ZERO, Fe::ONE];
        let a = quotient_algebra_tn(&f, &m).unwrap();
        let t = a.basis(1);
        let t3 = a.pow(&t, 3);
        assert_eq!(t3, a.add(&t, &a.one()));
        assert!(a.verify().is_valid());
    }

    #[test]
    fn corrupted_tensor_is_reported() {
        let f = f4();
        let a = matrix_algebra(&f, 2).unwrap();
        let r = a.dim();
        let mut table: Vec<Vec<Vec<Fe>>> =
            (0..r).map(|i| (0..r).map(|j| a.mul(&a.basis(i), &a.basis(j)).into_coords()).collect()).collect();
        table[1][1][1] = Fe::ONE;
        let bad = Algebra::from_structure(&f, a.labels().to_vec(), table, a.one().into_coords()).unwrap();
        let report = bad.verify();
        assert!(!report.is_valid());
        assert!(report.associativity_failures.iter().any(|&(i, j, l)| (i, j) == (1, 1) || (j, l) == (1, 1)));
    }

    #[test]
    fn bilinearity() {
        let f = f4();
        let a = group_algebra_cyclic(&f, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = rand_elem(&a, &mut rng);
            let y = rand_elem(&a, &mut rng);
            let c = f.random(&mut rng);
            assert_eq!(a.mul(&a.scale(c, &x), &y), a.scale(c, &a.mul(&x, &y)));
            assert_eq!(a.mul(&x, &a.scale(c, &y)), a.scale(c, &a.mul(&x, &y)));
        }
    }

    #[test]
    fn restriction_preserves_products() {
        let f = f4();
        let base = matrix_algebra(&f, 2).unwrap();
        let res = restrict_scalars(&base);
        let small = res.algebra();
        assert_eq!(small.dim(), 8);
        assert!(small.verify().is_valid());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = rand_elem(&base, &mut rng);
            let y = rand_elem(&base, &mut rng);
            assert_eq!(small.mul(&res.embed(&x), &res.embed(&y)), res.embed(&base.mul(&x, &y)));
            assert_eq!(res.project(&res.embed(&x)), x);
        }
        assert_eq!(small.format(&small.one()), "1");
    }
}
