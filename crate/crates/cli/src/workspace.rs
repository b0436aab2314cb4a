//! The JSON workspace file: field, algebra, (σ, δ), optional module and
//! payloads. See `data/` for complete examples.

use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;
use skewlaurent::algebra::{
    group_algebra_cyclic, matrix_algebra, quotient_algebra_tn, quotient_algebra_yz, restrict_scalars,
    ScalarRestriction,
};
use skewlaurent::fxpoly::FPoly;
use skewlaurent::laurent::TruncLaurent;
use skewlaurent::matrix::Matrix;
use skewlaurent::modact::RightModule;
use skewlaurent::series::TruncSeries;
use skewlaurent::skewmap::{inner_derivation, SkewError};
use skewlaurent::skewpoly::{format_terms, SkewPoly};
use skewlaurent::{verify_skew_derivation, Algebra, AlgebraElement, Fe, FieldSpec, GaloisField, LinearMap, SkewDerivation};

use crate::expr::{self, Coeffs, Parsed};
use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(default)]
    pub description: Option<String>,
    pub field: FieldDesc,
    pub algebra: AlgebraDesc,
    #[serde(default)]
    pub restrict_scalars: bool,
    pub sigma: MapDesc,
    pub delta: MapDesc,
    #[serde(default)]
    pub module: Option<ModuleDesc>,
    #[serde(default)]
    pub precision: Option<i64>,
    #[serde(default)]
    pub lhs: Option<Value>,
    #[serde(default)]
    pub rhs: Option<Value>,
    /// Rows of `F[X]` expressions.
    #[serde(default)]
    pub generators: Option<Vec<Vec<String>>>,
    /// Skew polynomials whose coordinates give generator rows of the regular module.
    #[serde(default)]
    pub ideal: Option<Vec<Value>>,
    #[serde(default)]
    pub message: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDesc {
    pub p: u32,
    #[serde(default = "one")]
    pub k: usize,
    /// Coefficients from the constant term up, monic.
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
    #[serde(default)]
    pub symbol: Option<String>,
}

fn one() -> usize {
    1
}

/// A field element: an integer or text such as `"a+1"`.
#[derive(Debug, Deserialize, Clone)]
#[serde(untagged)]
pub enum Scalar {
    Int(u64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraDesc {
    Matrix { n: usize },
    GroupCyclic { n: usize },
    QuotientYz,
    /// `F[t]/(f)` with `f` from the constant term up.
    QuotientTn { modulus: Vec<Scalar> },
    /// `table[i][j]` holds the coordinates of `a_i a_j`.
    Structure { labels: Vec<String>, table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar> },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapDesc {
    Identity,
    Zero,
    /// `c ↦ c^p` on coordinates; needs a prime field or restricted scalars.
    Frobenius,
    /// Images of the basis elements, in basis order.
    Images { images: Vec<Value> },
    /// `x ↦ m x - σ(x) m`; only for δ.
    Inner { m: Value },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDesc {
    Regular,
    /// One `n × n` matrix per basis element, acting on row vectors.
    Matrices { matrices: Vec<Vec<Vec<Scalar>>> },
}

pub const DEFAULT_PRECISION: i64 = 8;

pub struct Workspace {
    pub file: WorkspaceFile,
    pub field: GaloisField,
    pub algebra: Algebra,
    pub restriction: Option<ScalarRestriction>,
    pub sigma: LinearMap,
    pub delta: LinearMap,
    pub precision: i64,
}

fn input(msg: impl std::fmt::Display) -> CliError {
    CliError::Input(msg.to_string())
}

pub fn load(path: &str, prec: Option<i64>) -> Result<Workspace, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))?;
    let file: WorkspaceFile = serde_json::from_str(&text).map_err(|e| input(format!("{path}: {e}")))?;
    Workspace::build(file, prec)
}

impl Workspace {
    pub fn build(file: WorkspaceFile, prec: Option<i64>) -> Result<Self, CliError> {
        let fd = &file.field;
        let spec = match &fd.modulus {
            Some(m) => FieldSpec::new(fd.p, m.clone()),
            None => FieldSpec::with_default_modulus(fd.p, fd.k),
        }
        .map_err(input)?;
        if spec.k != fd.k && fd.modulus.is_some() && fd.k != 1 {
            return Err(input(format!("modulus has degree {}, field.k is {}", spec.k, fd.k)));
        }
        let base_field = GaloisField::with_symbol(spec, fd.symbol.as_deref().unwrap_or("a"));
        let scalar = |s: &Scalar| parse_scalar(&base_field, s);
        let base = match &file.algebra {
            AlgebraDesc::Matrix { n } => matrix_algebra(&base_field, *n).map_err(input)?,
            AlgebraDesc::GroupCyclic { n } => group_algebra_cyclic(&base_field, *n).map_err(input)?,
            AlgebraDesc::QuotientYz => quotient_algebra_yz(&base_field),
            AlgebraDesc::QuotientTn { modulus } => {
                let m = modulus.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
                quotient_algebra_tn(&base_field, &m).map_err(input)?
            }
            AlgebraDesc::Structure { labels, table, unit } => {
                let t = table
                    .iter()
                    .map(|row| row.iter().map(|c| c.iter().map(scalar).collect()).collect())
                    .collect::<Result<Vec<Vec<Vec<Fe>>>, _>>()?;
                let u = unit.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
                Algebra::from_structure(&base_field, labels.clone(), t, u).map_err(input)?
            }
        };
        let (algebra, restriction) = if file.restrict_scalars {
            let res = restrict_scalars(&base);
            (res.algebra().clone(), Some(res))
        } else {
            (base, None)
        };
        let field = algebra.field().clone();
        let precision = prec.or(file.precision).unwrap_or(DEFAULT_PRECISION);
        let mut ws = Workspace {
            file,
            field,
            algebra: algebra.clone(),
            restriction,
            sigma: LinearMap::identity(algebra.dim()),
            delta: LinearMap::zero(algebra.dim()),
            precision,
        };
        ws.sigma = ws.map(&ws.file.sigma, None, "sigma")?;
        let sigma = ws.sigma.clone();
        ws.delta = ws.map(&ws.file.delta, Some(&sigma), "delta")?;
        Ok(ws)
    }

    fn map(&self, desc: &MapDesc, sigma: Option<&LinearMap>, name: &str) -> Result<LinearMap, CliError> {
        let r = self.algebra.dim();
        Ok(match desc {
            MapDesc::Identity => LinearMap::identity(r),
            MapDesc::Zero => LinearMap::zero(r),
            MapDesc::Frobenius => match &self.restriction {
                Some(res) => res.frobenius_map(),
                None if self.field.degree() == 1 => LinearMap::identity(r),
                None => {
                    return Err(input(format!(
                        "{name}: the Frobenius map is not linear over GF({}); set restrict_scalars",
                        self.field.order()
                    )))
                }
            },
            MapDesc::Images { images } => {
                if images.len() != r {
                    return Err(input(format!("{name}: expected {r} images, got {}", images.len())));
                }
                let imgs = images.iter().map(|v| self.element_value(v)).collect::<Result<Vec<_>, _>>()?;
                LinearMap::from_images(&imgs)
            }
            MapDesc::Inner { m } => {
                let Some(sigma) = sigma else {
                    return Err(input(format!("{name}: an inner map is only available for delta")));
                };
                inner_derivation(&self.algebra, sigma, &self.element_value(m)?)
            }
        })
    }

    /// Verifies the axioms; `Shape` errors are input errors, axiom failures
    /// are reported to the caller.
    pub fn derivation(&self) -> Result<Result<SkewDerivation, SkewError>, CliError> {
        match verify_skew_derivation(&self.algebra, self.sigma.clone(), self.delta.clone()) {
            Err(e @ SkewError::Shape { .. }) => Err(input(e)),
            other => Ok(other),
        }
    }

    /// The context, failing unless the algebra and the axioms are valid.
    pub fn context(&self) -> Result<Arc<SkewDerivation>, CliError> {
        let report = self.algebra.verify();
        if !report.is_valid() {
            return Err(CliError::Math(format!("algebra is invalid: {report}")));
        }
        self.derivation()?.map(Arc::new).map_err(|e| CliError::Math(e.to_string()))
    }

    pub fn module(&self) -> Result<RightModule, CliError> {
        match &self.file.module {
            None | Some(ModuleDesc::Regular) => Ok(RightModule::regular(&self.algebra)),
            Some(ModuleDesc::Matrices { matrices }) => {
                let ms = matrices
                    .iter()
                    .map(|m| {
                        let rows = m
                            .iter()
                            .map(|row| row.iter().map(|c| parse_scalar(&self.field, c)).collect())
                            .collect::<Result<Vec<Vec<Fe>>, _>>()?;
                        Ok(Matrix::from_rows(&rows))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                RightModule::from_matrices(&self.algebra, ms).map_err(input)
            }
        }
    }

    pub fn module_is_regular(&self) -> bool {
        matches!(self.file.module, None | Some(ModuleDesc::Regular))
    }

    pub fn fmt_elem(&self, x: &AlgebraElement) -> String {
        match &self.restriction {
            Some(res) => res.base().format(&res.project(x)),
            None => self.algebra.format(x),
        }
    }

    pub fn fmt_terms(&self, terms: &[(i64, &AlgebraElement)]) -> String {
        match &self.restriction {
            Some(res) => {
                let projected: Vec<(i64, AlgebraElement)> = terms.iter().map(|&(e, c)| (e, res.project(c))).collect();
                let refs: Vec<(i64, &AlgebraElement)> = projected.iter().map(|(e, c)| (*e, c)).collect();
                format_terms(res.base(), &refs)
            }
            None => format_terms(&self.algebra, terms),
        }
    }

    pub fn fmt_poly(&self, f: &SkewPoly) -> String {
        let terms: Vec<(i64, &AlgebraElement)> = f.coeffs().iter().enumerate().map(|(i, c)| (i as i64, c)).collect();
        self.fmt_terms(&terms)
    }

    pub fn fmt_series(&self, s: &TruncSeries) -> String {
        let terms: Vec<(i64, &AlgebraElement)> = s.coeffs().iter().enumerate().map(|(i, c)| (i as i64, c)).collect();
        format!("{} + O(X^{})", self.fmt_terms(&terms), s.prec())
    }

    pub fn fmt_laurent(&self, s: &TruncLaurent) -> String {
        let terms: Vec<(i64, &AlgebraElement)> =
            s.coeffs().iter().enumerate().map(|(i, c)| (s.ord() + i as i64, c)).collect();
        format!("{} + O(X^{})", self.fmt_terms(&terms), s.prec())
    }

    pub fn fmt_row(&self, row: &[FPoly]) -> String {
        let cells: Vec<String> = row.iter().map(|p| p.format(&self.field)).collect();
        format!("({})", cells.join(", "))
    }

    fn coeffs(&self) -> AlgCoeffs<'_> {
        AlgCoeffs { ws: self }
    }

    pub fn terms(&self, text: &str) -> Result<Parsed<AlgebraElement>, CliError> {
        expr::parse(text, &self.coeffs()).map_err(|e| input(format!("{text:?}: {e}")))
    }

    /// An algebra element from text or a coordinate array.
    pub fn element_value(&self, v: &Value) -> Result<AlgebraElement, CliError> {
        match v {
            Value::String(s) => {
                let p = self.terms(s)?;
                if p.big_o.is_some() || p.terms.keys().any(|&e| e != 0) {
                    return Err(input(format!("{s:?}: expected an algebra element without X")));
                }
                Ok(p.terms.get(&0).cloned().unwrap_or_else(|| self.algebra.zero()))
            }
            Value::Array(_) => self.coords(v),
            _ => Err(input(format!("expected an element, got {v}"))),
        }
    }

    fn coords(&self, v: &Value) -> Result<AlgebraElement, CliError> {
        let scalars: Vec<Scalar> = serde_json::from_value(v.clone()).map_err(input)?;
        let c = scalars.iter().map(|s| parse_scalar(&self.field, s)).collect::<Result<Vec<_>, _>>()?;
        self.algebra.element(c).map_err(input)
    }

    /// Text, or the array form `[[c00, c01, ...], [c10, ...], ...]` indexed by
    /// the power of `X` and then by coordinate.
    pub fn poly_value(&self, v: &Value) -> Result<SkewPoly, CliError> {
        match v {
            Value::String(s) => self.poly(s),
            Value::Array(rows) => {
                let cs = rows.iter().map(|r| self.coords(r)).collect::<Result<Vec<_>, _>>()?;
                Ok(SkewPoly::from_coeffs(cs))
            }
            _ => Err(input(format!("expected a polynomial, got {v}"))),
        }
    }

    pub fn poly(&self, text: &str) -> Result<SkewPoly, CliError> {
        if text.trim_start().starts_with('[') {
            let v: Value = serde_json::from_str(text).map_err(|e| input(format!("{text:?}: {e}")))?;
            return self.poly_value(&v);
        }
        let p = self.terms(text)?;
        if p.big_o.is_some() {
            return Err(input(format!("{text:?}: a polynomial has no O(X^n) term")));
        }
        if let Some((&e, _)) = p.terms.iter().next() {
            if e < 0 {
                return Err(input(format!("{text:?}: negative power of X in a polynomial")));
            }
        }
        let len = p.terms.keys().next_back().map_or(0, |&e| e as usize + 1);
        let mut cs = vec![self.algebra.zero(); len];
        for (e, c) in p.terms {
            cs[e as usize] = c;
        }
        Ok(SkewPoly::from_coeffs(cs))
    }

    /// Coefficients `X^lo ..= X^{prec-1}`; the precision is the `O(X^n)` term
    /// or the workspace default.
    fn window(&self, text: &str, lo: Option<i64>) -> Result<(i64, Vec<AlgebraElement>), CliError> {
        let p = self.terms(text)?;
        let prec = p.big_o.unwrap_or(self.precision);
        let ord = lo.unwrap_or_else(|| p.terms.keys().next().copied().unwrap_or(prec).min(prec));
        if let Some((&e, _)) = p.terms.iter().next() {
            if e < ord {
                return Err(input(format!("{text:?}: negative power of X in a power series")));
            }
        }
        if let Some((&e, _)) = p.terms.iter().next_back() {
            if e >= prec {
                return Err(input(format!("{text:?}: term X^{e} lies beyond the precision O(X^{prec})")));
            }
        }
        let len = (prec - ord).max(0) as usize;
        let mut cs = vec![self.algebra.zero(); len];
        for (e, c) in p.terms {
            cs[(e - ord) as usize] = c;
        }
        Ok((ord, cs))
    }

    pub fn series(&self, text: &str) -> Result<TruncSeries, CliError> {
        let (_, cs) = self.window(text, Some(0))?;
        Ok(TruncSeries::from_coeffs(cs))
    }

    pub fn laurent(&self, text: &str) -> Result<(i64, Vec<AlgebraElement>), CliError> {
        self.window(text, None)
    }

    pub fn fpoly(&self, text: &str) -> Result<FPoly, CliError> {
        let p = expr::parse(text, &FieldCoeffs(&self.field)).map_err(|e| input(format!("{text:?}: {e}")))?;
        if p.big_o.is_some() || p.terms.keys().next().is_some_and(|&e| e < 0) {
            return Err(input(format!("{text:?}: expected a polynomial in X")));
        }
        let len = p.terms.keys().next_back().map_or(0, |&e| e as usize + 1);
        let mut cs = vec![Fe::ZERO; len];
        for (e, c) in p.terms {
            cs[e as usize] = c;
        }
        Ok(FPoly::from_coeffs(cs))
    }
}

pub fn parse_scalar(f: &GaloisField, s: &Scalar) -> Result<Fe, CliError> {
    match s {
        Scalar::Int(n) => Ok(f.constant((*n % f.characteristic() as u64) as u32)),
        Scalar::Text(t) => f.parse(t).map_err(input),
    }
}

struct AlgCoeffs<'a> {
    ws: &'a Workspace,
}

impl Coeffs for AlgCoeffs<'_> {
    type C = AlgebraElement;

    fn zero(&self) -> AlgebraElement {
        self.ws.algebra.zero()
    }
    fn one(&self) -> AlgebraElement {
        self.ws.algebra.one()
    }
    fn is_zero(&self, c: &AlgebraElement) -> bool {
        c.is_zero()
    }
    fn is_one(&self, c: &AlgebraElement) -> bool {
        *c == self.ws.algebra.one()
    }
    fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.ws.algebra.add(x, y)
    }
    fn neg(&self, x: &AlgebraElement) -> AlgebraElement {
        self.ws.algebra.neg(x)
    }
    fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.ws.algebra.mul(x, y)
    }
    fn number(&self, n: u64) -> AlgebraElement {
        let f = &self.ws.field;
        self.ws.algebra.scalar(f.constant((n % f.characteristic() as u64) as u32))
    }
    fn ident(&self, name: &str) -> Option<AlgebraElement> {
        let a = &self.ws.algebra;
        if let Some(j) = a.label_index(name) {
            return Some(a.basis(j));
        }
        match &self.ws.restriction {
            Some(res) => {
                let base = res.base();
                if let Some(j) = base.label_index(name) {
                    return Some(res.embed(&base.basis(j)));
                }
                let bf = base.field();
                (name == bf.symbol() && bf.degree() > 1).then(|| res.embed(&base.scalar(bf.generator())))
            }
            None => {
                let f = &self.ws.field;
                (name == f.symbol() && f.degree() > 1).then(|| a.scalar(f.generator()))
            }
        }
    }
}

struct FieldCoeffs<'a>(&'a GaloisField);

impl Coeffs for FieldCoeffs<'_> {
    type C = Fe;

    fn zero(&self) -> Fe {
        Fe::ZERO
    }
    fn one(&self) -> Fe {
        Fe::ONE
    }
    fn is_zero(&self, c: &Fe) -> bool {
        c.is_zero()
    }
    fn is_one(&self, c: &Fe) -> bool {
        *c == Fe::ONE
    }
    fn add(&self, x: &Fe, y: &Fe) -> Fe {
        self.0.add(*x, *y)
    }
    fn neg(&self, x: &Fe) -> Fe {
        self.0.neg(*x)
    }
    fn mul(&self, x: &Fe, y: &Fe) -> Fe {
        self.0.mul(*x, *y)
    }
    fn number(&self, n: u64) -> Fe {
        self.0.constant((n % self.0.characteristic() as u64) as u32)
    }
    fn ident(&self, name: &str) -> Option<Fe> {
        (name == self.0.symbol() && self.0.degree() > 1).then(|| self.0.generator())
    }
}
