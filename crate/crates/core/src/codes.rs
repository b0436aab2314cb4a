//! Cyclic convolutional codes through their polynomial side `C ⊆ F^n[X]`:
//! stability under the module action, cyclic closure, the correspondence
//! check and encoding.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::AlgebraElement;
use crate::field::{Fe, GaloisField};
use crate::fxpoly::FPoly;
use crate::laurent::{laurent_ring_exists, Refusal};
use crate::modact::{vecpoly_times_ring, ModuleReport, RightModule, VecPoly};
use crate::par;
use crate::polymatrix::{closure, is_direct_summand, membership, rank_rational, PolyMatrix, RowModule};
use crate::skewmap::SkewDerivation;
use crate::skewpoly::SkewPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("module and context use different algebras")]
    AlgebraMismatch,
    #[error("module action is invalid: {0}")]
    InvalidModule(ModuleReport),
    #[error("the Laurent ring does not exist for this context: {0:?}")]
    NoLaurentRing(Refusal),
    #[error("expected length {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("code basis is not pure")]
    NotPure,
}

/// `F^n[X]` with the right `A[X;σ,δ]`-action induced by a right `A`-module `F^n`.
#[derive(Clone, Debug)]
pub struct CodeSpace {
    module: RightModule,
    ctx: Arc<SkewDerivation>,
}

/// A code stored by its canonical (reduced Hermite) basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvCodeBasis {
    pub g: PolyMatrix,
    pub pure: bool,
    pub stable: bool,
}

impl ConvCodeBasis {
    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    pub fn rate(&self) -> (usize, usize) {
        (self.k(), self.n())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicClosure {
    pub code: ConvCodeBasis,
    /// Rank after each round.
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub pure: bool,
    pub stable: bool,
    /// `closure(C) = C`, i.e. `C* ∩ F^n[X] = C`.
    pub closure_fixed: bool,
    pub rank: usize,
    pub rational_rank: usize,
}

impl RoundtripReport {
    pub fn passes(&self) -> bool {
        self.pure && self.stable && self.closure_fixed && self.rank == self.rational_rank
    }
}

impl CodeSpace {
    pub fn new(module: RightModule, ctx: Arc<SkewDerivation>) -> Result<Self, CodeError> {
        if module.algebra().dim() != ctx.dim() || module.algebra().field() != ctx.field() {
            return Err(CodeError::AlgebraMismatch);
        }
        let report = module.verify();
        if !report.is_valid() {
            return Err(CodeError::InvalidModule(report));
        }
        laurent_ring_exists(&ctx).laurent.map_err(CodeError::NoLaurentRing)?;
        Ok(CodeSpace { module, ctx })
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    pub fn context(&self) -> &SkewDerivation {
        &self.ctx
    }

    pub fn field(&self) -> &GaloisField {
        self.ctx.field()
    }

    pub fn n(&self) -> usize {
        self.module.rank()
    }

    pub fn to_vecpoly(&self, row: &[FPoly]) -> VecPoly {
        let len = row.iter().filter_map(FPoly::degree).max().map_or(0, |d| d + 1);
        VecPoly::from_coeffs((0..len).map(|i| row.iter().map(|p| p.coeff(i)).collect()).collect())
    }

    pub fn from_vecpoly(&self, v: &VecPoly) -> Vec<FPoly> {
        (0..self.n()).map(|j| FPoly::from_coeffs(v.coeffs().iter().map(|c| c[j]).collect())).collect()
    }

    /// `row · f` for `f ∈ A[X;σ,δ]`.
    pub fn act(&self, row: &[FPoly], f: &SkewPoly) -> Vec<FPoly> {
        self.from_vecpoly(&vecpoly_times_ring(&self.module, &self.ctx, &self.to_vecpoly(row), f))
    }

    pub fn act_scalar(&self, row: &[FPoly], a: &AlgebraElement) -> Vec<FPoly> {
        self.act(row, &SkewPoly::constant(a.clone()))
    }

    /// First `(row, basis index)` with `g_row · a_j` outside the row module.
    pub fn stability_failure(&self, g: &PolyMatrix) -> Option<(usize, usize)> {
        let r = self.ctx.dim();
        let f = self.field();
        let rm = RowModule::new(g, f);
        let results = par::map_indexed(g.rows() * r, |idx| {
            let (i, j) = (idx / r, idx % r);
            !rm.contains(&self.act_scalar(g.row(i), &self.ctx.algebra().basis(j)), f)
        });
        results.iter().position(|&bad| bad).map(|idx| (idx / r, idx % r))
    }

    pub fn is_cyclic_submodule(&self, g: &PolyMatrix) -> bool {
        self.stability_failure(g).is_none()
    }

    pub fn generator_matrix(&self, rows: &[Vec<FPoly>]) -> Result<PolyMatrix, CodeError> {
        if let Some(r) = rows.iter().find(|r| r.len() != self.n()) {
            return Err(CodeError::SizeMismatch { expected: self.n(), got: r.len() });
        }
        Ok(PolyMatrix::from_rows(rows.to_vec(), self.n()))
    }

    pub fn code_from_generators(&self, rows: &[Vec<FPoly>]) -> Result<ConvCodeBasis, CodeError> {
        let g = closure(&self.generator_matrix(rows)?, self.field());
        Ok(self.flag(g))
    }

    fn flag(&self, g: PolyMatrix) -> ConvCodeBasis {
        let pure = is_direct_summand(&g, self.field());
        let stable = self.is_cyclic_submodule(&g);
        ConvCodeBasis { g, pure, stable }
    }

    /// The smallest pure stable submodule containing the rows: alternately
    /// adjoin `g·a_j` for all rows and basis elements, then purify.
    pub fn cyclic_closure(&self, rows: &[Vec<FPoly>]) -> Result<CyclicClosure, CodeError> {
        let f = self.field();
        let mut g = closure(&self.generator_matrix(rows)?, f);
        let mut ranks = vec![g.rows()];
        let r = self.ctx.dim();
        loop {
            let images = par::map_indexed(g.rows() * r, |idx| {
                self.act_scalar(g.row(idx / r), &self.ctx.algebra().basis(idx % r))
            });
            let mut all = g.row_vec();
            all.extend(images);
            let next = closure(&PolyMatrix::from_rows(all, self.n()), f);
            ranks.push(next.rows());
            if next == g {
                break;
            }
            g = next;
            assert!(ranks.len() <= self.n() + 2, "cyclic closure did not stabilize");
        }
        Ok(CyclicClosure { code: self.flag(g), ranks })
    }

    pub fn correspondence_roundtrip(&self, c: &ConvCodeBasis) -> RoundtripReport {
        let f = self.field();
        RoundtripReport {
            pure: is_direct_summand(&c.g, f),
            stable: self.is_cyclic_submodule(&c.g),
            closure_fixed: closure(&c.g, f) == c.g,
            rank: c.g.rows(),
            rational_rank: rank_rational(&c.g, f),
        }
    }

    /// Whether every row times `f` stays in the code.
    pub fn closed_under(&self, c: &ConvCodeBasis, f: &SkewPoly) -> bool {
        let rm = RowModule::new(&c.g, self.field());
        (0..c.g.rows()).all(|i| rm.contains(&self.act(c.g.row(i), f), self.field()))
    }

    /// `message · G`.
    pub fn encode(&self, message: &[FPoly], c: &ConvCodeBasis) -> Result<Vec<FPoly>, CodeError> {
        if !c.pure {
            return Err(CodeError::NotPure);
        }
        if message.len() != c.k() {
            return Err(CodeError::SizeMismatch { expected: c.k(), got: message.len() });
        }
        Ok(c.g.row_combination(message, self.field()))
    }

    /// Coordinates of a codeword, if it is one.
    pub fn decode(&self, word: &[FPoly], c: &ConvCodeBasis) -> Option<Vec<FPoly>> {
        membership(word, &c.g, self.field())
    }

    pub fn unit_row(&self, j: usize) -> Vec<FPoly> {
        (0..self.n()).map(|i| if i == j { FPoly::one() } else { FPoly::zero() }).collect()
    }

    /// `Σ_i v_i X^i` with `v_i` the coordinates of `p_i` in the regular module.
    pub fn row_of_poly(&self, p: &SkewPoly) -> Vec<FPoly> {
        let v = VecPoly::from_coeffs(p.coeffs().iter().map(|c| c.coords().to_vec()).collect::<Vec<Vec<Fe>>>());
        self.from_vecpoly(&v)
    }
}
