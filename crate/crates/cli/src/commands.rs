use std::fmt::Write;

use skewlaurent::codes::{CodeError, CodeSpace, ConvCodeBasis};
use skewlaurent::fxpoly::FPoly;
use skewlaurent::laurent::{laurent_ring_exists, LaurentRing, Refusal};
use skewlaurent::polymatrix::{hermite_form, is_direct_summand};
use skewlaurent::series::SeriesRing;
use skewlaurent::skewmap::{non_nilpotency_witness, SkewError};
use skewlaurent::skewpoly::SkewPolyRing;
use skewlaurent::worked::{run_example, EXAMPLE_NAMES};
use skewlaurent::LinearMap;

use crate::workspace::{MapDesc, Workspace};
use crate::CliError;

/// Text for stdout and whether every check passed.
pub struct Report {
    pub text: String,
    pub pass: bool,
}

impl Report {
    fn new() -> Self {
        Report { text: String::new(), pass: true }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn extend_opt(&mut self, s: Option<String>) {
        if let Some(s) = s {
            self.line(s);
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn field_name(ws: &Workspace) -> String {
    let f = ws.restriction.as_ref().map_or(&ws.field, |r| r.base().field());
    let spec = f.spec();
    if spec.k == 1 {
        return format!("GF({})", spec.p);
    }
    let sym = f.symbol();
    let mut parts = Vec::new();
    for (i, &c) in spec.modulus.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => sym.to_string(),
            _ => format!("{sym}^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    format!("GF({}) = GF({})[{sym}]/({})", spec.order(), spec.p, parts.join("+"))
}

fn refusal_reason(r: &Refusal) -> &'static str {
    match r {
        Refusal::DeltaNotNilpotent { .. } => "delta is not nilpotent",
        Refusal::SigmaNotInvertible => "sigma is not invertible",
        Refusal::DeltaPrimeNotNilpotent { .. } => "delta' is not nilpotent",
    }
}

/// Describes why `map` is not nilpotent. The element defining an inner δ is
/// preferred when the map fixes it.
fn witness_line(ws: &Workspace, name: &str, map: &LinearMap) -> Option<String> {
    let inner = match &ws.file.delta {
        MapDesc::Inner { m } => ws.element_value(m).ok().filter(|m| !m.is_zero() && map.apply(m, &ws.field) == *m),
        _ => None,
    };
    let w = inner.or_else(|| non_nilpotency_witness(map, &ws.field))?;
    let img = map.apply(&w, &ws.field);
    Some(if img == w {
        format!("witness: {name}({}) = {}", ws.fmt_elem(&w), ws.fmt_elem(&w))
    } else {
        format!("witness: {name}^{}({}) != 0", map.dim(), ws.fmt_elem(&w))
    })
}

pub fn verify(ws: &Workspace) -> Result<Report, CliError> {
    let mut r = Report::new();
    if let Some(d) = &ws.file.description {
        r.line(d);
    }
    r.line(format!("field: {}", field_name(ws)));
    let a = &ws.algebra;
    match &ws.restriction {
        Some(res) => r.line(format!(
            "algebra: dimension {} over GF({}), restricted from dimension {} over GF({})",
            a.dim(),
            ws.field.order(),
            res.base().dim(),
            res.base().field().order()
        )),
        None => r.line(format!("algebra: dimension {} over GF({})", a.dim(), ws.field.order())),
    }
    r.line(format!("basis: {}", a.labels().join(", ")));
    let report = a.verify();
    r.line(format!("algebra axioms: {report}"));
    if !report.is_valid() {
        r.pass = false;
        return Ok(r);
    }
    let ctx = match ws.derivation()? {
        Ok(ctx) => ctx,
        Err(SkewError::Axiom(fail)) => {
            r.line(format!("skew derivation axioms: fail, {fail}"));
            r.pass = false;
            return Ok(r);
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    r.line("skew derivation axioms: valid");
    r.line(format!("sigma invertible: {}", yes(ctx.sigma_inv().is_some())));
    r.line(format!("sigma delta = delta sigma: {}", yes(ctx.commutes())));
    let idx = |m: Option<usize>| m.map_or("none".to_string(), |m| m.to_string());
    r.line(format!("m_delta: {}", idx(ctx.m_delta())));
    r.line(format!("m_delta': {}", idx(ctx.m_delta_prime())));
    let rep = laurent_ring_exists(&ctx);
    let series = match &rep.series {
        Ok(m) => format!("yes (m={m})"),
        Err(_) => "no".to_string(),
    };
    let laurent = match &rep.laurent {
        Ok(m) => format!("yes (m′={m})"),
        Err(_) => "no".to_string(),
    };
    r.line(format!("poly: {}, series: {series}, laurent: {laurent}", yes(rep.poly())));
    if let Err(refusal) = &rep.laurent {
        r.line(format!("refused: {}", refusal_reason(refusal)));
    }
    if ctx.m_delta().is_none() {
        r.extend_opt(witness_line(ws, "delta", ctx.delta()));
    }
    if let (Some(dp), None) = (ctx.delta_prime(), ctx.m_delta_prime()) {
        r.extend_opt(witness_line(ws, "delta'", dp));
    }
    if ws.file.module.is_some() {
        let m = ws.module()?;
        let mr = m.verify();
        r.line(format!("module: rank {}, {mr}", m.rank()));
        r.pass &= mr.is_valid();
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RingKind {
    Poly,
    Series,
    Laurent,
}

fn payload(cli: Option<String>, file: &Option<serde_json::Value>, name: &str) -> Result<String, CliError> {
    match (cli, file) {
        (Some(s), _) => Ok(s),
        (None, Some(serde_json::Value::String(s))) => Ok(s.clone()),
        (None, Some(v)) => Ok(v.to_string()),
        (None, None) => Err(CliError::Input(format!("no {name} operand given on the command line or in the file"))),
    }
}

pub fn mul(ws: &Workspace, ring: RingKind, lhs: Option<String>, rhs: Option<String>) -> Result<Report, CliError> {
    let lhs = payload(lhs, &ws.file.lhs, "left")?;
    let rhs = payload(rhs, &ws.file.rhs, "right")?;
    let ctx = ws.context()?;
    let mut r = Report::new();
    match ring {
        RingKind::Poly => {
            let pr = SkewPolyRing::new(ctx);
            let (f, g) = (ws.poly(&lhs)?, ws.poly(&rhs)?);
            r.line(ws.fmt_poly(&pr.mul(&f, &g)));
        }
        RingKind::Series => {
            let (s, t) = (ws.series(&lhs)?, ws.series(&rhs)?);
            let sr = SeriesRing::new(ctx).map_err(|e| CliError::Math(format!("no power series ring: {e}")))?;
            let out = sr.supported_prec(s.prec(), t.prec());
            if out == 0 {
                return Err(CliError::Math(format!(
                    "precision shortfall: the left operand needs at least m = {} coefficients",
                    sr.m()
                )));
            }
            let p = sr.mul(&s, &t, out).map_err(|e| CliError::Math(e.to_string()))?;
            r.line(ws.fmt_series(&p));
        }
        RingKind::Laurent => {
            let (so, sc) = ws.laurent(&lhs)?;
            let (to, tc) = ws.laurent(&rhs)?;
            let lr = LaurentRing::new(ctx).map_err(|e| CliError::Math(format!("no Laurent series ring: {e}")))?;
            let p = lr.mul(&lr.make(so, sc), &lr.make(to, tc));
            r.line(ws.fmt_laurent(&p));
        }
    }
    Ok(r)
}

pub fn nop(ws: &Workspace, i: usize, n: usize) -> Result<Report, CliError> {
    let ctx = ws.context()?;
    let map = ctx.n_operator(i, n).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new();
    r.line(format!("N_{i}^{n}:"));
    for j in 0..ws.algebra.dim() {
        let b = ws.algebra.basis(j);
        r.line(format!("  {} -> {}", ws.fmt_elem(&b), ws.fmt_elem(&map.apply(&b, &ws.field))));
    }
    Ok(r)
}

pub fn ore(ws: &Workspace, f: Option<String>, k: usize) -> Result<Report, CliError> {
    let f = ws.poly(&payload(f, &ws.file.lhs, "polynomial")?)?;
    let ctx = ws.context()?;
    let sr = SeriesRing::new(ctx).map_err(|e| CliError::Math(format!("no Ore witness: {e}")))?;
    let w = sr.ore_left_power(&f, k);
    let pr = sr.poly_ring();
    let lhs = pr.mul(&pr.monomial(ws.algebra.one(), w.n), &f);
    let rhs = pr.mul(&w.g, &pr.monomial(ws.algebra.one(), w.k));
    let mut r = Report::new();
    r.line(format!("f: {}", ws.fmt_poly(&f)));
    r.line(format!("n: {}", w.n));
    r.line(format!("k: {}", w.k));
    r.line(format!("g: {}", ws.fmt_poly(&w.g)));
    r.pass = lhs == rhs;
    r.line(format!("check X^n f = g X^k: {}", if r.pass { "pass" } else { "fail" }));
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CodeAction {
    Check,
    Closure,
    Roundtrip,
    Encode,
}

fn code_error(e: CodeError) -> CliError {
    match e {
        CodeError::SizeMismatch { .. } | CodeError::AlgebraMismatch => CliError::Input(e.to_string()),
        CodeError::NoLaurentRing(refusal) => CliError::Math(format!("codes need the Laurent ring: {}", refusal_reason(&refusal))),
        _ => CliError::Math(e.to_string()),
    }
}

fn generator_rows(ws: &Workspace, space: &CodeSpace, cli: Option<String>) -> Result<Vec<Vec<FPoly>>, CliError> {
    let from_cli = cli.is_some();
    let rows: Option<Vec<Vec<String>>> = match cli {
        Some(s) => Some(serde_json::from_str(&s).map_err(|e| CliError::Input(format!("--generators: {e}")))?),
        None => ws.file.generators.clone(),
    };
    let mut out = Vec::new();
    if let Some(rows) = rows {
        for row in rows {
            out.push(row.iter().map(|c| ws.fpoly(c)).collect::<Result<Vec<_>, _>>()?);
        }
    }
    // generators on the command line replace everything in the file
    if let Some(ideal) = ws.file.ideal.as_ref().filter(|v| !from_cli && !v.is_empty()) {
        if !ws.module_is_regular() {
            return Err(CliError::Input("ideal generators need the regular module".into()));
        }
        for v in ideal {
            out.push(space.row_of_poly(&ws.poly_value(v)?));
        }
    }
    if out.is_empty() {
        return Err(CliError::Input("no generators given".into()));
    }
    Ok(out)
}

fn basis_line(ws: &Workspace, c: &ConvCodeBasis) -> String {
    let rows: Vec<String> = (0..c.k()).map(|i| ws.fmt_row(c.g.row(i))).collect();
    format!("basis: [{}]", rows.join(", "))
}

pub fn code(
    ws: &Workspace,
    action: CodeAction,
    generators: Option<String>,
    message: Option<String>,
) -> Result<Report, CliError> {
    let ctx = ws.context()?;
    let space = CodeSpace::new(ws.module()?, ctx.clone()).map_err(code_error)?;
    let rows = generator_rows(ws, &space, generators)?;
    let f = &ws.field;
    let mut r = Report::new();
    match action {
        CodeAction::Check => {
            let g = space.generator_matrix(&rows).map_err(code_error)?;
            let h = hermite_form(&g, f).0.nonzero_rows();
            let pure = is_direct_summand(&h, f);
            r.line(format!("rank: {}", h.rows()));
            r.line(format!("pure: {}", yes(pure)));
            match space.stability_failure(&h) {
                None => r.line("stable: yes"),
                Some((i, j)) => {
                    let b = ws.algebra.basis(j);
                    r.line(format!("stable: no, {} * {} leaves the module", ws.fmt_row(h.row(i)), ws.fmt_elem(&b)));
                    r.pass = false;
                }
            }
            r.pass &= pure;
        }
        CodeAction::Closure => {
            let cl = space.cyclic_closure(&rows).map_err(code_error)?;
            let ranks: Vec<String> = cl.ranks.iter().map(usize::to_string).collect();
            r.line(format!("ranks: {}", ranks.join(" -> ")));
            r.line(basis_line(ws, &cl.code));
            r.line(format!("rate: {}/{}", cl.code.k(), cl.code.n()));
            r.line(format!("pure: {}", yes(cl.code.pure)));
            r.line(format!("stable: {}", yes(cl.code.stable)));
            r.pass = cl.code.pure && cl.code.stable;
        }
        CodeAction::Roundtrip => {
            let c = space.code_from_generators(&rows).map_err(code_error)?;
            let rep = space.correspondence_roundtrip(&c);
            r.line(basis_line(ws, &c));
            r.line(format!("pure: {}", yes(rep.pure)));
            r.line(format!("stable: {}", yes(rep.stable)));
            r.line(format!("closure fixed: {}", yes(rep.closure_fixed)));
            r.line(format!("rank: {}, rational rank: {}", rep.rank, rep.rational_rank));
            r.pass = rep.passes();
            r.line(format!("roundtrip: {}", if r.pass { "pass" } else { "fail" }));
        }
        CodeAction::Encode => {
            let msg: Vec<String> = match message {
                Some(s) => serde_json::from_str(&s).map_err(|e| CliError::Input(format!("--message: {e}")))?,
                None => ws.file.message.clone().ok_or_else(|| CliError::Input("no message given".into()))?,
            };
            let msg = msg.iter().map(|m| ws.fpoly(m)).collect::<Result<Vec<_>, _>>()?;
            let c = space.code_from_generators(&rows).map_err(code_error)?;
            let word = space.encode(&msg, &c).map_err(code_error)?;
            r.line(basis_line(ws, &c));
            r.line(format!("codeword: {}", ws.fmt_row(&word)));
            r.pass = space.decode(&word, &c).as_deref() == Some(&msg[..]);
            r.line(format!("decode: {}", if r.pass { "pass" } else { "fail" }));
        }
    }
    Ok(r)
}

pub fn example(name: &str) -> Result<Report, CliError> {
    let checks = run_example(name).ok_or_else(|| {
        CliError::Input(format!("unknown example {name:?}; known: {}", EXAMPLE_NAMES.join(", ")))
    })?;
    let mut r = Report::new();
    for c in &checks {
        let _ = writeln!(r.text, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.label);
        r.pass &= c.pass;
    }
    r.line(format!("example {name}: {}", if r.pass { "PASS" } else { "FAIL" }));
    Ok(r)
}

pub fn list_examples() -> Report {
    let mut r = Report::new();
    for n in EXAMPLE_NAMES {
        r.line(n);
    }
    r
}
