//! Truncated skew Laurent series `A((X;σ,δ))` on finite exponent windows.
//!
//! A value `Σ_{e>=ord} c_e X^e + O(X^P)` stores `ord` and `c_ord, ..., c_{P-1}`.
//! Leading zeros are stripped; the zero value has no coefficients and
//! `ord = P`.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::action::RightActionDomain;
use crate::algebra::{Algebra, AlgebraElement, LinearMap};
use crate::field::GaloisField;
use crate::random;
use crate::series::{series_times, SeriesError};
use crate::skewmap::{non_nilpotency_witness, SkewDerivation};
use crate::skewpoly::{format_terms, SkewPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("sigma is not invertible")]
    SigmaNotInvertible,
    #[error("delta is not nilpotent")]
    DeltaNotNilpotent,
    #[error("delta' = -delta sigma^-1 is not nilpotent")]
    DeltaPrimeNotNilpotent,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Laurent<E> {
    ord: i64,
    coeffs: Vec<E>,
}

pub type TruncLaurent = Laurent<AlgebraElement>;

impl<E: Clone> Laurent<E> {
    /// Builds `Σ_i coeffs[i] X^{ord+i} + O(X^{ord+len})` and strips leading zeros.
    pub fn new(ord: i64, coeffs: Vec<E>, is_zero: impl Fn(&E) -> bool) -> Self {
        let lead = coeffs.iter().take_while(|c| is_zero(c)).count();
        Laurent { ord: ord + lead as i64, coeffs: coeffs[lead..].to_vec() }
    }

    /// `O(X^prec)`
    pub fn zero(prec: i64) -> Self {
        Laurent { ord: prec, coeffs: Vec::new() }
    }

    pub fn ord(&self) -> i64 {
        self.ord
    }

    /// Absolute precision `P`: the value is known modulo `X^P`.
    pub fn prec(&self) -> i64 {
        self.ord + self.coeffs.len() as i64
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Coefficient of `X^e`, `None` outside the known window, `zero` below it.
    pub fn coeff(&self, e: i64, zero: &E) -> Option<E> {
        if e >= self.prec() {
            None
        } else if e < self.ord {
            Some(zero.clone())
        } else {
            Some(self.coeffs[(e - self.ord) as usize].clone())
        }
    }

    /// The same value known only modulo `X^p` (`p` at most the current precision).
    pub fn truncate(&self, p: i64, is_zero: impl Fn(&E) -> bool) -> Self {
        let p = p.min(self.prec());
        if p <= self.ord {
            return Self::zero(p);
        }
        Self::new(self.ord, self.coeffs[..(p - self.ord) as usize].to_vec(), is_zero)
    }

    /// `s X^l`, which shifts every exponent by `l`.
    pub fn shift(&self, l: i64) -> Self {
        Laurent { ord: self.ord + l, coeffs: self.coeffs.clone() }
    }

    /// Equality on the window both values know.
    pub fn agrees_with(&self, other: &Self, zero: &E) -> bool
    where
        E: PartialEq,
    {
        let lo = self.ord.min(other.ord);
        let hi = self.prec().min(other.prec());
        (lo..hi).all(|e| self.coeff(e, zero) == other.coeff(e, zero))
    }

    /// Coefficients `c_lo, ..., c_{P-1}` with explicit zeros below `ord`.
    pub fn window_from(&self, lo: i64, zero: &E) -> Vec<E> {
        (lo..self.prec()).map(|e| self.coeff(e, zero).expect("inside window")).collect()
    }
}

/// `s t` for `s` with coefficients in a right `A`-space: with `s = ŝ X^{o_s}`
/// and `u = X^{o_s} t̂ = û X^{o_u}`, the result is `(ŝ û) X^{o_u + o_t}`, known to
/// `min(len û, ⌊len ŝ / m⌋)` coefficients.
pub fn laurent_times<D: RightActionDomain>(
    dom: &D,
    ring: &LaurentRing,
    s: &Laurent<D::Elem>,
    t: &TruncLaurent,
) -> Laurent<D::Elem> {
    let that = TruncLaurent { ord: 0, coeffs: t.coeffs.clone() };
    let u = ring.xpow_times(&that, s.ord);
    let out = u.coeffs.len().min(s.coeffs.len() / ring.m);
    let prod = series_times(dom, &ring.ctx, ring.m, &s.coeffs, &u.coeffs, out, 0).expect("window chosen to fit");
    Laurent::new(u.ord + t.ord, prod, |x| dom.is_zero(x))
}

/// `A((X;σ,δ))`: needs σ invertible and both δ and δ' nilpotent.
#[derive(Clone, Debug)]
pub struct LaurentRing {
    ctx: Arc<SkewDerivation>,
    m: usize,
    m_prime: usize,
    sigma_prime: LinearMap,
    /// `σ'δ'^k` for `k < m'`
    steps: Vec<LinearMap>,
}

impl LaurentRing {
    pub fn new(ctx: Arc<SkewDerivation>) -> Result<Self, LaurentError> {
        let sigma_prime = ctx.sigma_inv().ok_or(LaurentError::SigmaNotInvertible)?.clone();
        let m = ctx.m_delta().ok_or(LaurentError::DeltaNotNilpotent)?;
        let m_prime = ctx.m_delta_prime().ok_or(LaurentError::DeltaPrimeNotNilpotent)?;
        let dp = ctx.delta_prime().expect("present with sigma inverse");
        let f = ctx.field();
        let steps = (0..m_prime).map(|k| sigma_prime.compose(&dp.pow(k, f), f)).collect();
        Ok(LaurentRing { ctx, m, m_prime, sigma_prime, steps })
    }

    pub fn context(&self) -> &SkewDerivation {
        &self.ctx
    }

    pub fn algebra(&self) -> &Algebra {
        self.ctx.algebra()
    }

    fn field(&self) -> &GaloisField {
        self.ctx.field()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn m_prime(&self) -> usize {
        self.m_prime
    }

    pub fn sigma_prime(&self) -> &LinearMap {
        &self.sigma_prime
    }

    pub fn make(&self, ord: i64, coeffs: Vec<AlgebraElement>) -> TruncLaurent {
        Laurent::new(ord, coeffs, AlgebraElement::is_zero)
    }

    pub fn constant(&self, a: AlgebraElement, prec: usize) -> TruncLaurent {
        let mut c = vec![self.algebra().zero(); prec];
        if prec > 0 {
            c[0] = a;
        }
        self.make(0, c)
    }

    pub fn one(&self, prec: usize) -> TruncLaurent {
        self.constant(self.algebra().one(), prec)
    }

    /// `a X^e + O(X^{e+len})`
    pub fn monomial(&self, a: AlgebraElement, e: i64, len: usize) -> TruncLaurent {
        let mut c = vec![self.algebra().zero(); len];
        if len > 0 {
            c[0] = a;
        }
        self.make(e, c)
    }

    pub fn from_poly(&self, f: &SkewPoly, prec: usize) -> TruncLaurent {
        let zero = self.algebra().zero();
        self.make(0, (0..prec).map(|i| f.coeff(i).unwrap_or(&zero).clone()).collect())
    }

    pub fn add(&self, s: &TruncLaurent, t: &TruncLaurent) -> TruncLaurent {
        let a = self.algebra();
        let lo = s.ord.min(t.ord);
        let hi = s.prec().min(t.prec());
        if hi <= lo {
            return Laurent::zero(hi);
        }
        let zero = a.zero();
        let c = (lo..hi)
            .map(|e| a.add(&s.coeff(e, &zero).unwrap(), &t.coeff(e, &zero).unwrap()))
            .collect();
        self.make(lo, c)
    }

    pub fn neg(&self, s: &TruncLaurent) -> TruncLaurent {
        Laurent { ord: s.ord, coeffs: s.coeffs.iter().map(|c| self.algebra().neg(c)).collect() }
    }

    pub fn sub(&self, s: &TruncLaurent, t: &TruncLaurent) -> TruncLaurent {
        self.add(s, &self.neg(t))
    }

    /// `X s`: coefficient `e` is `σ(c_{e-1}) + δ(c_e)`. Keeps the precision.
    pub fn x_times(&self, s: &TruncLaurent) -> TruncLaurent {
        let a = self.algebra();
        let zero = a.zero();
        let c = (s.ord..s.prec())
            .map(|e| {
                let mut v = self.ctx.delta_of(&s.coeff(e, &zero).unwrap());
                a.add_assign(&mut v, &self.ctx.sigma_of(&s.coeff(e - 1, &zero).unwrap()));
                v
            })
            .collect();
        self.make(s.ord, c)
    }

    /// `X^{-1} s`: coefficient `e` is `Σ_{k<m'} σ'δ'^k(c_{e+1+k})`. The lowest
    /// exponent drops by `m'` and so does the precision.
    pub fn xinv_times(&self, s: &TruncLaurent) -> TruncLaurent {
        let a = self.algebra();
        let f = self.field();
        let mp = self.m_prime as i64;
        let zero = a.zero();
        let lo = s.ord - mp;
        let hi = s.prec() - mp;
        let c = (lo..hi)
            .map(|e| {
                let mut v = a.zero();
                for (k, step) in self.steps.iter().enumerate() {
                    let src = s.coeff(e + 1 + k as i64, &zero).expect("inside window");
                    if !src.is_zero() {
                        a.add_assign(&mut v, &step.apply(&src, f));
                    }
                }
                v
            })
            .collect();
        self.make(lo, c)
    }

    /// `X^{-n} s` as `n` applications of [`Self::xinv_times`].
    pub fn xnegn_times(&self, s: &TruncLaurent, n: usize) -> TruncLaurent {
        (0..n).fold(s.clone(), |acc, _| self.xinv_times(&acc))
    }

    /// `X^{-n} s` summed over all compositions
    /// `σ'δ'^{k_n} ∘ ... ∘ σ'δ'^{k_1}` with each `k_j < m'`.
    pub fn xnegn_times_direct(&self, s: &TruncLaurent, n: usize) -> TruncLaurent {
        let a = self.algebra();
        let f = self.field();
        let r = a.dim();
        let mp = self.m_prime;
        let kmax = n * (mp - 1);
        let mut by_total = vec![LinearMap::zero(r); kmax + 1];
        let mut tuple = vec![0usize; n];
        loop {
            let map = tuple.iter().fold(LinearMap::identity(r), |acc, &k| self.steps[k].compose(&acc, f));
            let total: usize = tuple.iter().sum();
            by_total[total] = by_total[total].add(&map, f);
            let Some(pos) = tuple.iter().position(|&k| k + 1 < mp) else { break };
            tuple[pos] += 1;
            for k in &mut tuple[..pos] {
                *k = 0;
            }
        }
        let shift = (n * mp) as i64;
        let zero = a.zero();
        let lo = s.ord - shift;
        let hi = s.prec() - shift;
        let c = (lo..hi)
            .map(|e| {
                let mut v = a.zero();
                for (k, map) in by_total.iter().enumerate() {
                    let src = s.coeff(e + n as i64 + k as i64, &zero).expect("inside window");
                    a.add_assign(&mut v, &map.apply(&src, f));
                }
                v
            })
            .collect();
        self.make(lo, c)
    }

    /// `X^n s` for `n >= 0`: coefficient `e` is `Σ_k N_k^n(c_{e-k})`.
    pub fn xn_times(&self, s: &TruncLaurent, n: usize) -> TruncLaurent {
        let a = self.algebra();
        let f = self.field();
        let row = self.ctx.n_table().row(n);
        let zero = a.zero();
        let c = (s.ord..s.prec())
            .map(|e| {
                let mut v = a.zero();
                for (k, nk) in row.iter().enumerate() {
                    let src = s.coeff(e - k as i64, &zero).unwrap();
                    if !src.is_zero() {
                        a.add_assign(&mut v, &nk.apply(&src, f));
                    }
                }
                v
            })
            .collect();
        self.make(s.ord, c)
    }

    /// `X^l s` for any integer `l`.
    pub fn xpow_times(&self, s: &TruncLaurent, l: i64) -> TruncLaurent {
        if l >= 0 {
            self.xn_times(s, l as usize)
        } else {
            self.xnegn_times(s, l.unsigned_abs() as usize)
        }
    }

    pub fn mul(&self, s: &TruncLaurent, t: &TruncLaurent) -> TruncLaurent {
        laurent_times(self.algebra(), self, s, t)
    }

    /// `s a`, with `a` known exactly.
    pub fn times_scalar(&self, s: &TruncLaurent, a: &AlgebraElement) -> TruncLaurent {
        let len = s.len().max(1) + (s.ord.unsigned_abs() as usize) * self.m_prime + 1;
        self.mul(s, &self.constant(a.clone(), len))
    }

    pub fn random<R: Rng + ?Sized>(&self, ord: i64, len: usize, rng: &mut R) -> TruncLaurent {
        self.make(ord, random::elements(self.algebra(), len, rng))
    }

    /// Equality on the window both values know.
    pub fn agree(&self, s: &TruncLaurent, t: &TruncLaurent) -> bool {
        self.sub(s, t).is_zero()
    }

    pub fn format(&self, s: &TruncLaurent) -> String {
        let terms: Vec<(i64, &AlgebraElement)> =
            s.coeffs.iter().enumerate().map(|(i, c)| (s.ord + i as i64, c)).collect();
        let body = format_terms(self.algebra(), &terms);
        format!("{body} + O(X^{})", s.prec())
    }
}

/// Why a ring in the tower `A[X;σ,δ] ⊂ A[[X;σ,δ]] ⊂ A((X;σ,δ))` is missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refusal {
    /// `δ` is not nilpotent; the element is fixed by δ or survives `δ^r`.
    DeltaNotNilpotent { witness: AlgebraElement },
    SigmaNotInvertible,
    /// `δ'` is not nilpotent; the element is fixed by δ' or survives `δ'^r`.
    DeltaPrimeNotNilpotent { witness: AlgebraElement },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceReport {
    /// Nilpotency index of δ, or the refusal.
    pub series: Result<usize, Refusal>,
    /// Nilpotency index of δ', or the refusal.
    pub laurent: Result<usize, Refusal>,
}

impl ExistenceReport {
    pub fn poly(&self) -> bool {
        true
    }
}

pub fn laurent_ring_exists(ctx: &SkewDerivation) -> ExistenceReport {
    let f = ctx.field();
    let series = ctx.m_delta().ok_or_else(|| Refusal::DeltaNotNilpotent {
        witness: non_nilpotency_witness(ctx.delta(), f).expect("not nilpotent"),
    });
    let laurent = match (&series, ctx.delta_prime()) {
        (Err(e), _) => Err(e.clone()),
        (Ok(_), None) => Err(Refusal::SigmaNotInvertible),
        (Ok(_), Some(dp)) => ctx.m_delta_prime().ok_or_else(|| Refusal::DeltaPrimeNotNilpotent {
            witness: non_nilpotency_witness(dp, f).expect("not nilpotent"),
        }),
    };
    ExistenceReport { series, laurent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_algebra;
    use crate::field::GaloisField;

    fn trivial() -> LaurentRing {
        let f = GaloisField::extension(2, 2).unwrap();
        let a = matrix_algebra(&f, 2).unwrap();
        LaurentRing::new(Arc::new(SkewDerivation::trivial(&a))).unwrap()
    }

    #[test]
    fn normalization_and_zero() {
        let ring = trivial();
        let a = ring.algebra().clone();
        let s = ring.make(-2, vec![a.zero(), a.zero(), a.one()]);
        assert_eq!(s.ord(), 0);
        assert_eq!(s.prec(), 1);
        let z = ring.make(3, vec![a.zero(); 4]);
        assert!(z.is_zero());
        assert_eq!(z.prec(), 7);
    }

    #[test]
    fn xinv_x_is_one() {
        let ring = trivial();
        let a = ring.algebra().clone();
        let xinv = ring.monomial(a.one(), -1, 6);
        let x = ring.monomial(a.one(), 1, 6);
        let p = ring.mul(&xinv, &x);
        assert!(ring.agree(&p, &ring.one(p.prec() as usize)));
        assert!(p.prec() >= 5);
        assert_eq!(ring.format(&ring.one(2)), "1 + O(X^2)");
    }

    #[test]
    fn trivial_existence() {
        let ring = trivial();
        let rep = laurent_ring_exists(ring.context());
        assert_eq!(rep.series, Ok(1));
        assert_eq!(rep.laurent, Ok(1));
        assert!(rep.poly());
    }
}
