//! Truncated skew power series `A[[X;σ,δ]] / X^N`, the left Ore condition for
//! `{1, X, X², ...}`, and the truncated systems for right permutability and
//! right reversibility.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::action::RightActionDomain;
use crate::algebra::{Algebra, AlgebraElement};
use crate::field::Fe;
use crate::matrix::Matrix;
use crate::par;
use crate::random;
use crate::skewmap::SkewDerivation;
use crate::skewpoly::{format_terms, SkewPoly, SkewPolyRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("delta is not nilpotent, so no power series ring exists")]
    DeltaNotNilpotent,
    #[error("{operand} operand has {available} coefficients, {needed} are required")]
    Precision { operand: &'static str, needed: usize, available: usize },
}

/// The class of `Σ_{i<N} c_i X^i` modulo `X^N`; `N` is the number of stored
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct TruncSeries {
    coeffs: Vec<AlgebraElement>,
}

impl TruncSeries {
    pub fn from_coeffs(coeffs: Vec<AlgebraElement>) -> Self {
        TruncSeries { coeffs }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[AlgebraElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<AlgebraElement> {
        self.coeffs
    }

    pub fn truncate(&self, n: usize) -> TruncSeries {
        TruncSeries { coeffs: self.coeffs[..n.min(self.prec())].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(AlgebraElement::is_zero)
    }
}

/// `X^n f = g X^k`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreWitness {
    pub n: usize,
    pub k: usize,
    pub g: SkewPoly,
}

/// The bounded product `(st)_n = Σ_{l<=n} Σ_{l<=i<=q} s_i N_l^i(t_{n-l})` with
/// `q = (n+1)m - 1 + extra`, for `n < out`. Reads `s` up to `out·m - 1 + extra`
/// and `t` up to `out - 1`.
pub fn series_times<D: RightActionDomain>(
    dom: &D,
    ctx: &SkewDerivation,
    m: usize,
    s: &[D::Elem],
    t: &[AlgebraElement],
    out: usize,
    extra: usize,
) -> Result<Vec<D::Elem>, SeriesError> {
    if out == 0 {
        return Ok(Vec::new());
    }
    let need_s = out * m + extra;
    if s.len() < need_s {
        return Err(SeriesError::Precision { operand: "left", needed: need_s, available: s.len() });
    }
    if t.len() < out {
        return Err(SeriesError::Precision { operand: "right", needed: out, available: t.len() });
    }
    let field = ctx.field();
    let rows = ctx.n_table().rows_upto(need_s - 1);
    Ok(par::map_indexed(out, |n| {
        let q = (n + 1) * m - 1 + extra;
        let mut acc = dom.zero();
        for l in 0..=n {
            let tv = &t[n - l];
            if tv.is_zero() {
                continue;
            }
            for (i, si) in s.iter().enumerate().take(q + 1).skip(l) {
                if dom.is_zero(si) || rows[i][l].is_zero() {
                    continue;
                }
                dom.act_acc(&mut acc, si, &rows[i][l].apply(tv, field));
            }
        }
        acc
    }))
}

/// `(Σ s_j X^j) a = Σ_i (Σ_{j=i}^{(i+1)m-1} s_j N_i^j(a)) X^i` for `i < out`.
pub fn series_times_scalar_in<D: RightActionDomain>(
    dom: &D,
    ctx: &SkewDerivation,
    m: usize,
    s: &[D::Elem],
    a: &AlgebraElement,
    out: usize,
) -> Result<Vec<D::Elem>, SeriesError> {
    let need = out * m;
    if s.len() < need {
        return Err(SeriesError::Precision { operand: "left", needed: need, available: s.len() });
    }
    if out == 0 {
        return Ok(Vec::new());
    }
    let field = ctx.field();
    let rows = ctx.n_table().rows_upto(need - 1);
    Ok(par::map_indexed(out, |i| {
        let mut acc = dom.zero();
        for j in i..(i + 1) * m {
            if !dom.is_zero(&s[j]) {
                dom.act_acc(&mut acc, &s[j], &rows[j][i].apply(a, field));
            }
        }
        acc
    }))
}

/// `A[[X;σ,δ]]` truncated, available exactly when δ is nilpotent.
#[derive(Clone, Debug)]
pub struct SeriesRing {
    ctx: Arc<SkewDerivation>,
    m: usize,
}

impl SeriesRing {
    pub fn new(ctx: Arc<SkewDerivation>) -> Result<Self, SeriesError> {
        let m = ctx.m_delta().ok_or(SeriesError::DeltaNotNilpotent)?;
        Ok(SeriesRing { ctx, m })
    }

    pub fn context(&self) -> &SkewDerivation {
        &self.ctx
    }

    pub fn algebra(&self) -> &Algebra {
        self.ctx.algebra()
    }

    /// The nilpotency index of δ.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `q_n = (n+1)m - 1`: beyond this index no `s_i X^i a` reaches degree `n`.
    pub fn q_bound(&self, n: usize) -> usize {
        (n + 1) * self.m - 1
    }

    /// Largest output precision supported by operands of the given lengths.
    pub fn supported_prec(&self, s_len: usize, t_len: usize) -> usize {
        (s_len / self.m).min(t_len)
    }

    pub fn zero(&self, prec: usize) -> TruncSeries {
        TruncSeries::from_coeffs(vec![self.algebra().zero(); prec])
    }

    pub fn one(&self, prec: usize) -> TruncSeries {
        self.constant(self.algebra().one(), prec)
    }

    pub fn constant(&self, a: AlgebraElement, prec: usize) -> TruncSeries {
        self.from_poly(&SkewPoly::constant(a), prec)
    }

    pub fn from_poly(&self, f: &SkewPoly, prec: usize) -> TruncSeries {
        let zero = self.algebra().zero();
        TruncSeries::from_coeffs((0..prec).map(|i| f.coeff(i).unwrap_or(&zero).clone()).collect())
    }

    pub fn to_poly(&self, s: &TruncSeries) -> SkewPoly {
        SkewPoly::from_coeffs(s.coeffs.clone())
    }

    pub fn add(&self, s: &TruncSeries, t: &TruncSeries) -> TruncSeries {
        let a = self.algebra();
        let n = s.prec().min(t.prec());
        TruncSeries::from_coeffs((0..n).map(|i| a.add(&s.coeffs[i], &t.coeffs[i])).collect())
    }

    pub fn sub(&self, s: &TruncSeries, t: &TruncSeries) -> TruncSeries {
        let a = self.algebra();
        let n = s.prec().min(t.prec());
        TruncSeries::from_coeffs((0..n).map(|i| a.sub(&s.coeffs[i], &t.coeffs[i])).collect())
    }

    /// `st mod X^out`.
    pub fn mul(&self, s: &TruncSeries, t: &TruncSeries, out: usize) -> Result<TruncSeries, SeriesError> {
        self.mul_with_extra(s, t, out, 0)
    }

    /// The product at the largest precision the operands support.
    pub fn mul_auto(&self, s: &TruncSeries, t: &TruncSeries) -> TruncSeries {
        let out = self.supported_prec(s.prec(), t.prec());
        self.mul(s, t, out).expect("precision chosen to fit")
    }

    /// The product with every `q_n` raised by `extra`.
    pub fn mul_with_extra(
        &self,
        s: &TruncSeries,
        t: &TruncSeries,
        out: usize,
        extra: usize,
    ) -> Result<TruncSeries, SeriesError> {
        series_times(self.algebra(), &self.ctx, self.m, &s.coeffs, &t.coeffs, out, extra)
            .map(TruncSeries::from_coeffs)
    }

    pub fn times_scalar(&self, s: &TruncSeries, a: &AlgebraElement, out: usize) -> Result<TruncSeries, SeriesError> {
        series_times_scalar_in(self.algebra(), &self.ctx, self.m, &s.coeffs, a, out).map(TruncSeries::from_coeffs)
    }

    pub fn random<R: Rng + ?Sized>(&self, prec: usize, rng: &mut R) -> TruncSeries {
        TruncSeries::from_coeffs(random::elements(self.algebra(), prec, rng))
    }

    pub fn poly_ring(&self) -> SkewPolyRing {
        SkewPolyRing::new(self.ctx.clone())
    }

    /// `(n, g)` with `X^n f = g X`: `n` is least with `δ^n(f_0) = 0` and
    /// `g = X^n h + Σ_{k>=1} N_k^n(f_0) X^{k-1}` where `f = f_0 + hX`.
    pub fn ore_left(&self, f: &SkewPoly) -> OreWitness {
        let ring = self.poly_ring();
        let a = self.algebra();
        let field = a.field();
        let zero = a.zero();
        let f0 = f.coeff(0).unwrap_or(&zero).clone();
        let h = SkewPoly::from_coeffs(f.coeffs().iter().skip(1).cloned().collect());
        let mut n = 0;
        let mut d = f0.clone();
        while !d.is_zero() {
            d = self.ctx.delta_of(&d);
            n += 1;
        }
        let row = self.ctx.n_table().row(n);
        let tail = SkewPoly::from_coeffs(row.iter().skip(1).map(|nk| nk.apply(&f0, field)).collect());
        OreWitness { n, k: 1, g: ring.add(&ring.xn_times(&h, n), &tail) }
    }

    /// `(n, g)` with `X^n f = g X^k`, by iterating [`Self::ore_left`].
    pub fn ore_left_power(&self, f: &SkewPoly, k: usize) -> OreWitness {
        let mut w = OreWitness { n: 0, k: 0, g: f.clone() };
        for _ in 0..k {
            let step = self.ore_left(&w.g);
            w = OreWitness { n: w.n + step.n, k: w.k + 1, g: step.g };
        }
        w
    }

    /// Least `m <= n_max` such that `f X^m = X s` has a solution modulo
    /// `X^{m+out}`, with the `s_e` beyond the forced ones set to zero. Reads `f`
    /// up to `out - 1`.
    pub fn solve_right_permutable(
        &self,
        f: &TruncSeries,
        n_max: usize,
        out: usize,
    ) -> Result<Option<(usize, TruncSeries)>, SeriesError> {
        if f.prec() < out {
            return Err(SeriesError::Precision { operand: "left", needed: out, available: f.prec() });
        }
        let a = self.algebra();
        for m in 0..=n_max {
            let len = m + out;
            let rhs: Vec<AlgebraElement> =
                (0..len).map(|e| if e >= m { f.coeffs[e - m].clone() } else { a.zero() }).collect();
            if let Some(s) = solve_x_chain(&self.ctx, &rhs) {
                let s = TruncSeries::from_coeffs(s);
                debug_assert_eq!(self.x_times(&s), TruncSeries::from_coeffs(rhs));
                return Ok(Some((m, s)));
            }
        }
        Ok(None)
    }

    /// `X s` to the precision of `s`.
    pub fn x_times(&self, s: &TruncSeries) -> TruncSeries {
        let a = self.algebra();
        TruncSeries::from_coeffs(
            (0..s.prec())
                .map(|e| {
                    let mut c = self.ctx.delta_of(&s.coeffs[e]);
                    if e > 0 {
                        a.add_assign(&mut c, &self.ctx.sigma_of(&s.coeffs[e - 1]));
                    }
                    c
                })
                .collect(),
        )
    }

    /// Basis of the prefixes `(s_0, ..., s_{N-1})` of solutions of `X s = 0`.
    /// The chain is solved to length `N + r + 1`, past the point where the
    /// extendable values stabilize, and projected onto the first `N` blocks.
    pub fn kernel_left_x(&self, n: usize) -> Vec<TruncSeries> {
        kernel_left_x(&self.ctx, n)
    }

    pub fn format(&self, s: &TruncSeries) -> String {
        let terms: Vec<(i64, &AlgebraElement)> =
            s.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)).collect();
        let body = format_terms(self.algebra(), &terms);
        format!("{body} + O(X^{})", s.prec())
    }
}

/// The block matrix of `s ↦ (σ(s_{e-1}) + δ(s_e))_{e<len}` on `F^{r·len}`.
fn x_chain_matrix(ctx: &SkewDerivation, len: usize) -> Matrix {
    let r = ctx.dim();
    let mut m = Matrix::zeros(r * len, r * len);
    for e in 0..len {
        for (map, col_block) in [(ctx.delta(), Some(e)), (ctx.sigma(), e.checked_sub(1))] {
            let Some(cb) = col_block else { continue };
            for i in 0..r {
                for j in 0..r {
                    let v = map.matrix().get(i, j);
                    if !v.is_zero() {
                        let old = m.get(e * r + i, cb * r + j);
                        m.set(e * r + i, cb * r + j, ctx.field().add(old, v));
                    }
                }
            }
        }
    }
    m
}

fn solve_x_chain(ctx: &SkewDerivation, rhs: &[AlgebraElement]) -> Option<Vec<AlgebraElement>> {
    let r = ctx.dim();
    let len = rhs.len();
    if len == 0 {
        return Some(Vec::new());
    }
    let m = x_chain_matrix(ctx, len);
    let b: Vec<Fe> = rhs.iter().flat_map(|c| c.coords().iter().copied()).collect();
    let x = m.solve(&b, ctx.field())?;
    Some(x.chunks(r).map(|c| AlgebraElement::from_coords(c.to_vec())).collect())
}

pub fn kernel_left_x(ctx: &SkewDerivation, n: usize) -> Vec<TruncSeries> {
    let r = ctx.dim();
    if n == 0 {
        return Vec::new();
    }
    let len = n + r + 1;
    let ker = x_chain_matrix(ctx, len).kernel(ctx.field());
    let prefixes: Vec<Vec<Fe>> = ker.into_iter().map(|v| v[..n * r].to_vec()).collect();
    if prefixes.is_empty() {
        return Vec::new();
    }
    let e = Matrix::from_rows(&prefixes).echelon(ctx.field());
    (0..e.pivots.len())
        .map(|i| {
            let row = e.reduced.row(i);
            TruncSeries::from_coeffs(row.chunks(r).map(|c| AlgebraElement::from_coords(c.to_vec())).collect())
        })
        .collect()
}
