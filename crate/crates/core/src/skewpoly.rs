//! The skew polynomial ring `A[X;σ,δ]` on left coefficients.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::action::RightActionDomain;
use crate::algebra::{Algebra, AlgebraElement, LinearMap};
use crate::par;
use crate::random;
use crate::skewmap::SkewDerivation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("coefficient has dimension {got}, ring has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("sigma is not invertible")]
    SigmaNotInvertible,
}

/// `Σ c_i X^i` with `c_i` on the left of `X^i`. The highest stored
/// coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct SkewPoly {
    coeffs: Vec<AlgebraElement>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<AlgebraElement>) -> Self {
        while coeffs.last().is_some_and(AlgebraElement::is_zero) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn constant(a: AlgebraElement) -> Self {
        Self::from_coeffs(vec![a])
    }

    /// `a X^n`
    pub fn monomial(a: AlgebraElement, n: usize, zero: &AlgebraElement) -> Self {
        let mut c = vec![zero.clone(); n];
        c.push(a);
        Self::from_coeffs(c)
    }

    pub fn coeffs(&self) -> &[AlgebraElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<AlgebraElement> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<&AlgebraElement> {
        self.coeffs.get(i)
    }
}

/// `(Σ g_k X^k)(Σ f_j X^j) = Σ_{i,j} (Σ_{k>=i} g_k N_i^k(f_j)) X^{i+j}`, with the
/// left factor taken from any right `A`-space. Returns the full coefficient
/// list of length `len g + len f - 1` (empty if either factor is empty).
pub fn poly_times<D: RightActionDomain>(
    dom: &D,
    ctx: &SkewDerivation,
    g: &[D::Elem],
    f: &[AlgebraElement],
) -> Vec<D::Elem> {
    if g.is_empty() || f.is_empty() {
        return Vec::new();
    }
    let field = ctx.field();
    let rows = ctx.n_table().rows_upto(g.len() - 1);
    let out_len = g.len() + f.len() - 1;
    par::map_indexed(out_len, |e| {
        let mut acc = dom.zero();
        for (j, fj) in f.iter().enumerate().take(e + 1) {
            if fj.is_zero() {
                continue;
            }
            let i = e - j;
            for (k, gk) in g.iter().enumerate().skip(i) {
                if dom.is_zero(gk) {
                    continue;
                }
                let n = &rows[k][i];
                if n.is_zero() {
                    continue;
                }
                dom.act_acc(&mut acc, gk, &n.apply(fj, field));
            }
        }
        acc
    })
}

/// `A[X;σ,δ]` over a verified skew derivation.
#[derive(Clone, Debug)]
pub struct SkewPolyRing {
    ctx: Arc<SkewDerivation>,
}

impl SkewPolyRing {
    pub fn new(ctx: Arc<SkewDerivation>) -> Self {
        SkewPolyRing { ctx }
    }

    pub fn context(&self) -> &SkewDerivation {
        &self.ctx
    }

    pub fn shared_context(&self) -> Arc<SkewDerivation> {
        self.ctx.clone()
    }

    pub fn algebra(&self) -> &Algebra {
        self.ctx.algebra()
    }

    pub fn one(&self) -> SkewPoly {
        SkewPoly::constant(self.algebra().one())
    }

    /// The indeterminate `X`.
    pub fn x(&self) -> SkewPoly {
        self.monomial(self.algebra().one(), 1)
    }

    pub fn monomial(&self, a: AlgebraElement, n: usize) -> SkewPoly {
        SkewPoly::monomial(a, n, &self.algebra().zero())
    }

    pub fn check(&self, f: &SkewPoly) -> Result<(), PolyError> {
        let r = self.algebra().dim();
        match f.coeffs.iter().find(|c| c.dim() != r) {
            Some(c) => Err(PolyError::DimensionMismatch { expected: r, got: c.dim() }),
            None => Ok(()),
        }
    }

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let a = self.algebra();
        let n = f.coeffs.len().max(g.coeffs.len());
        let zero = a.zero();
        let c = (0..n)
            .map(|i| a.add(f.coeffs.get(i).unwrap_or(&zero), g.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        SkewPoly::from_coeffs(c)
    }

    pub fn sub(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        self.add(f, &self.neg(g))
    }

    pub fn neg(&self, f: &SkewPoly) -> SkewPoly {
        SkewPoly::from_coeffs(f.coeffs.iter().map(|c| self.algebra().neg(c)).collect())
    }

    pub fn scale(&self, c: crate::field::Fe, f: &SkewPoly) -> SkewPoly {
        SkewPoly::from_coeffs(f.coeffs.iter().map(|x| self.algebra().scale(c, x)).collect())
    }

    /// `a · f`, multiplying each left coefficient on the left.
    pub fn left_scalar(&self, a: &AlgebraElement, f: &SkewPoly) -> SkewPoly {
        SkewPoly::from_coeffs(f.coeffs.iter().map(|c| self.algebra().mul(a, c)).collect())
    }

    pub fn mul(&self, g: &SkewPoly, f: &SkewPoly) -> SkewPoly {
        SkewPoly::from_coeffs(poly_times(self.algebra(), &self.ctx, &g.coeffs, &f.coeffs))
    }

    pub fn try_mul(&self, g: &SkewPoly, f: &SkewPoly) -> Result<SkewPoly, PolyError> {
        self.check(g)?;
        self.check(f)?;
        Ok(self.mul(g, f))
    }

    pub fn pow(&self, f: &SkewPoly, e: usize) -> SkewPoly {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, f))
    }

    /// `X · f = σ(f) X + δ(f)`, rewritten term by term.
    pub fn x_times(&self, f: &SkewPoly) -> SkewPoly {
        let a = self.algebra();
        let mut out = vec![a.zero(); f.coeffs.len() + 1];
        for (j, c) in f.coeffs.iter().enumerate() {
            a.add_assign(&mut out[j + 1], &self.ctx.sigma_of(c));
            a.add_assign(&mut out[j], &self.ctx.delta_of(c));
        }
        SkewPoly::from_coeffs(out)
    }

    /// The product obtained by rewriting `X a` one step at a time, without the
    /// N-operator table.
    pub fn mul_by_commutation(&self, g: &SkewPoly, f: &SkewPoly) -> SkewPoly {
        let mut acc = SkewPoly::zero();
        let mut xk_f = f.clone();
        for gk in &g.coeffs {
            acc = self.add(&acc, &self.left_scalar(gk, &xk_f));
            xk_f = self.x_times(&xk_f);
        }
        acc
    }

    /// `X^n f = Σ_j Σ_k N_k^n(f_j) X^{k+j}`
    pub fn xn_times(&self, f: &SkewPoly, n: usize) -> SkewPoly {
        if f.is_zero() {
            return SkewPoly::zero();
        }
        let a = self.algebra();
        let field = a.field();
        let row = self.ctx.n_table().row(n);
        let mut out = vec![a.zero(); f.coeffs.len() + n];
        for (j, fj) in f.coeffs.iter().enumerate() {
            for (k, nk) in row.iter().enumerate() {
                a.add_assign(&mut out[j + k], &nk.apply(fj, field));
            }
        }
        SkewPoly::from_coeffs(out)
    }

    /// Left form of `Σ X^j b_j`: coefficient `i` is `Σ_{j>=i} N_i^j(b_j)`.
    pub fn left_from_right(&self, right: &[AlgebraElement]) -> SkewPoly {
        if right.is_empty() {
            return SkewPoly::zero();
        }
        let a = self.algebra();
        let field = a.field();
        let rows = self.ctx.n_table().rows_upto(right.len() - 1);
        let c = (0..right.len())
            .map(|i| {
                let mut acc = a.zero();
                for (j, bj) in right.iter().enumerate().skip(i) {
                    a.add_assign(&mut acc, &rows[j][i].apply(bj, field));
                }
                acc
            })
            .collect();
        SkewPoly::from_coeffs(c)
    }

    /// Right coefficients `b_i` with `f = Σ X^i b_i`, solved from the top
    /// degree down using `N_i^i = σ^i`.
    pub fn right_from_left(&self, f: &SkewPoly) -> Result<Vec<AlgebraElement>, PolyError> {
        let sigma_inv = self.ctx.sigma_inv().ok_or(PolyError::SigmaNotInvertible)?;
        let Some(d) = f.degree() else {
            return Ok(Vec::new());
        };
        let a = self.algebra();
        let field = a.field();
        let rows = self.ctx.n_table().rows_upto(d);
        let mut b = vec![a.zero(); d + 1];
        for i in (0..=d).rev() {
            let mut rest = f.coeffs[i].clone();
            for j in i + 1..=d {
                rest = a.sub(&rest, &rows[j][i].apply(&b[j], field));
            }
            b[i] = sigma_inv.pow(i, field).apply(&rest, field);
        }
        while b.last().is_some_and(AlgebraElement::is_zero) {
            b.pop();
        }
        Ok(b)
    }

    pub fn apply_coeffwise(&self, l: &LinearMap, f: &SkewPoly) -> SkewPoly {
        let field = self.algebra().field();
        SkewPoly::from_coeffs(f.coeffs.iter().map(|c| l.apply(c, field)).collect())
    }

    /// A polynomial with `deg + 1` uniformly random coefficients.
    pub fn random<R: Rng + ?Sized>(&self, deg: usize, rng: &mut R) -> SkewPoly {
        SkewPoly::from_coeffs(random::elements(self.algebra(), deg + 1, rng))
    }

    pub fn format(&self, f: &SkewPoly) -> String {
        let terms: Vec<(i64, &AlgebraElement)> =
            f.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)).collect();
        format_terms(self.algebra(), &terms)
    }
}

/// Renders `Σ c_e X^e` in descending exponent order, e.g. `E21*X + 1`.
pub fn format_terms(a: &Algebra, terms: &[(i64, &AlgebraElement)]) -> String {
    let mut parts = Vec::new();
    for &(e, c) in terms.iter().rev() {
        if c.is_zero() {
            continue;
        }
        let body = a.format(c);
        let compound = body.contains('+');
        let xpart = match e {
            0 => String::new(),
            1 => "X".to_string(),
            _ => format!("X^{e}"),
        };
        let s = if xpart.is_empty() {
            body
        } else if body == "1" {
            xpart
        } else if compound {
            format!("({body})*{xpart}")
        } else {
            format!("{body}*{xpart}")
        };
        parts.push(s);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}
