//! Seeded randomized sweeps behind the acceptance suite. Every case draws
//! from its own generator, so the reports do not depend on the strategy or
//! on thread scheduling.

use std::collections::HashSet;
use std::fmt::Write;
use std::sync::Arc;

use rand::Rng;

use crate::algebra::AlgebraElement;
use crate::codes::{CodeSpace, ConvCodeBasis};
use crate::field::{Fe, GaloisField};
use crate::fxpoly::FPoly;
use crate::laurent::{laurent_ring_exists, LaurentRing};
use crate::modact::RightModule;
use crate::par::{self, Strategy};
use crate::polymatrix::{
    closure, hermite_form, is_direct_summand, is_unimodular, rank_rational, smith_form, PolyMatrix, RowModule,
};
use crate::random::{self, SampleRng};
use crate::series::SeriesRing;
use crate::skewmap::verify_skew_derivation;
use crate::skewpoly::{SkewPoly, SkewPolyRing};
use crate::worked::{self, f4c5_group, fyz_quotient, m2f4_inner, WorkedContext};
use crate::LinearMap;

/// One property checked over a number of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepLine {
    pub label: String,
    pub cases: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub lines: Vec<SweepLine>,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.failures == 0 && l.cases > 0)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {} {}: {}", self.id, verdict, self.title).expect("string write");
        for l in &self.lines {
            writeln!(out, "  {}: {} cases, {} failures", l.label, l.cases, l.failures).expect("string write");
        }
        out
    }
}

pub const TITLES: [&str; 6] = [
    "worked examples",
    "skew polynomial arithmetic",
    "truncated skew power series",
    "truncated skew Laurent series",
    "F[X] linear algebra",
    "code correspondence",
];

fn case_rng(criterion: u8, sweep: u64, case: usize) -> SampleRng {
    random::rng(((criterion as u64) << 48) ^ (sweep << 32) ^ case as u64)
}

fn sweep<F>(strategy: Strategy, label: impl Into<String>, cases: usize, check: F) -> SweepLine
where
    F: Fn(usize) -> bool + Sync + Send,
{
    let failures = par::map_with(strategy, cases, check).iter().filter(|ok| !**ok).count();
    SweepLine { label: label.into(), cases, failures }
}

fn line(label: impl Into<String>, ok: bool) -> SweepLine {
    SweepLine { label: label.into(), cases: 1, failures: usize::from(!ok) }
}

pub fn run(id: u8, strategy: Strategy) -> CriterionReport {
    let lines = match id {
        1 => examples(),
        2 => polynomials(strategy),
        3 => series(strategy),
        4 => laurent(strategy),
        5 => fx_linalg(strategy),
        6 => codes(strategy),
        _ => panic!("criteria are numbered 1 to 6"),
    };
    CriterionReport { id, title: TITLES[id as usize - 1], lines }
}

pub fn full_suite(strategy: Strategy) -> Vec<CriterionReport> {
    (1..=6).map(|id| run(id, strategy)).collect()
}

pub fn render_all(reports: &[CriterionReport]) -> String {
    reports.iter().map(CriterionReport::render).collect()
}

fn examples() -> Vec<SweepLine> {
    let mut lines = Vec::new();
    for name in worked::EXAMPLE_NAMES {
        for c in worked::run_example(name).expect("known example") {
            lines.push(line(format!("{name}: {}", c.label), c.pass));
        }
    }
    let diag = laurent_ring_exists(&worked::m2f4_diag().ctx);
    lines.push(line("m2f4-diag: verify refuses series and Laurent rings", diag.series.is_err() && diag.laurent.is_err()));
    lines
}

fn ab() -> [WorkedContext; 2] {
    [m2f4_inner(), f4c5_group()]
}

fn polynomials(strategy: Strategy) -> Vec<SweepLine> {
    let ctxs = ab();
    let rings: Vec<SkewPolyRing> = ctxs.iter().map(|wc| SkewPolyRing::new(wc.ctx.clone())).collect();
    let assoc = sweep(strategy, "associativity (fg)h = f(gh), degrees <= 5, contexts (a) and (b)", 500, |i| {
        let ring = &rings[i % 2];
        let mut rng = case_rng(2, 0, i);
        let f = ring.random(rng.gen_range(0..=5), &mut rng);
        let g = ring.random(rng.gen_range(0..=5), &mut rng);
        let h = ring.random(rng.gen_range(0..=5), &mut rng);
        ring.mul(&ring.mul(&f, &g), &h) == ring.mul(&f, &ring.mul(&g, &h))
    });
    let xn = sweep(strategy, "xn_times against iterated multiplication by X", 200, |i| {
        let ring = &rings[i % 2];
        let mut rng = case_rng(2, 1, i);
        let f = ring.random(rng.gen_range(0..=4), &mut rng);
        let n = rng.gen_range(0..=6);
        let iterated = (0..n).fold(f.clone(), |acc, _| ring.mul(&ring.x(), &acc));
        ring.xn_times(&f, n) == iterated
    });
    let eq5 = sweep(strategy, "closed product formula against commutation rewriting", 200, |i| {
        let ring = &rings[i % 2];
        let mut rng = case_rng(2, 2, i);
        let f = ring.random(rng.gen_range(0..=5), &mut rng);
        let g = ring.random(rng.gen_range(0..=5), &mut rng);
        ring.mul(&f, &g) == ring.mul_by_commutation(&f, &g)
    });
    let roundtrip = sweep(strategy, "left/right coefficient round trip", 200, |i| {
        let ring = &rings[i % 2];
        let mut rng = case_rng(2, 3, i);
        let f = ring.random(rng.gen_range(0..=5), &mut rng);
        ring.right_from_left(&f).is_ok_and(|r| ring.left_from_right(&r) == f)
    });
    vec![assoc, xn, eq5, roundtrip]
}

fn series_contexts() -> Vec<SeriesRing> {
    [m2f4_inner(), f4c5_group(), fyz_quotient()]
        .iter()
        .map(|wc| SeriesRing::new(wc.ctx.clone()).expect("δ nilpotent"))
        .collect()
}

fn series(strategy: Strategy) -> Vec<SweepLine> {
    let rings = series_contexts();
    let n = 8;
    let q_indep = sweep(strategy, "product unchanged when q is raised by 5, N = 8", 100, |i| {
        let ring = &rings[i % 3];
        let mut rng = case_rng(3, 0, i);
        let s = ring.random(n * ring.m() + 5, &mut rng);
        let t = ring.random(n, &mut rng);
        matches!((ring.mul(&s, &t, n), ring.mul_with_extra(&s, &t, n, 5)), (Ok(a), Ok(b)) if a == b)
    });
    let assoc = sweep(strategy, "truncated associativity, N = 8", 200, |i| {
        let ring = &rings[i % 3];
        let m = ring.m();
        let mut rng = case_rng(3, 1, i);
        let u = ring.random(n * m * m, &mut rng);
        let s = ring.random(n * m, &mut rng);
        let t = ring.random(n, &mut rng);
        let left = ring.mul(&s, &t, n).and_then(|st| ring.mul(&u, &st, n));
        let right = ring.mul(&u, &s, n * m).and_then(|us| ring.mul(&us, &t, n));
        matches!((left, right), (Ok(l), Ok(r)) if l == r)
    });
    let ore = sweep(strategy, "Ore witness g X = X^n f", 200, |i| {
        let ring = &rings[i % 3];
        let pr = ring.poly_ring();
        let mut rng = case_rng(3, 2, i);
        let f = pr.random(rng.gen_range(0..=4), &mut rng);
        let w = ring.ore_left(&f);
        pr.mul(&w.g, &pr.x()) == pr.xn_times(&f, w.n)
    });
    vec![q_indep, assoc, ore]
}

fn laurent(strategy: Strategy) -> Vec<SweepLine> {
    let rings: Vec<LaurentRing> = ab().iter().map(|wc| LaurentRing::new(wc.ctx.clone()).expect("exists")).collect();
    let inverse = sweep(strategy, "X(X^-1 s) = s and X^-1(X s) = s, window 8", 200, |i| {
        let ring = &rings[i % 2];
        let mut rng = case_rng(4, 0, i);
        let s = ring.random(rng.gen_range(-3..=3), 8, &mut rng);
        let back = ring.x_times(&ring.xinv_times(&s));
        let fwd = ring.xinv_times(&ring.x_times(&s));
        ring.agree(&back, &s) && ring.agree(&fwd, &s) && back.len() + ring.m_prime() >= 8
    });
    let direct = sweep(strategy, "X^-n s by composition tuples against iterated X^-1", 100, |i| {
        let ring = &rings[i % 2];
        let mut rng = case_rng(4, 1, i);
        let s = ring.random(rng.gen_range(-3..=3), 8, &mut rng);
        let n = rng.gen_range(1..=3);
        ring.xnegn_times_direct(&s, n) == ring.xnegn_times(&s, n)
    });
    let wc = f4c5_group();
    let a = wc.algebra().clone();
    let f = a.field().clone();
    let sigma = wc.ctx.sigma().clone();
    let zero_ctx = verify_skew_derivation(&a, sigma.clone(), LinearMap::zero(a.dim())).expect("δ = 0 is valid");
    let zero_ring = LaurentRing::new(Arc::new(zero_ctx)).expect("exists");
    let sinv = zero_ring.sigma_prime().clone();
    let twisted = sweep(strategy, "δ = 0: (Σ s_i X^i) a = Σ s_i σ^i(a) X^i", 100, |i| {
        let mut rng = case_rng(4, 2, i);
        let s = zero_ring.random(rng.gen_range(-3..=3), 8, &mut rng);
        let b = random::element(&a, &mut rng);
        let p = zero_ring.times_scalar(&s, &b);
        let zero = a.zero();
        (s.ord()..s.prec()).all(|e| {
            let tw = if e >= 0 { sigma.pow(e as usize, &f) } else { sinv.pow(e.unsigned_abs() as usize, &f) };
            p.coeff(e, &zero) == Some(a.mul(&s.coeff(e, &zero).expect("in window"), &tw.apply(&b, &f)))
        })
    });
    vec![inverse, direct, twisted]
}

fn small_fields() -> [GaloisField; 2] {
    [GaloisField::prime(2).expect("prime"), GaloisField::extension(2, 2).expect("F4")]
}

fn smith_ok(g: &PolyMatrix, f: &GaloisField) -> bool {
    let s = smith_form(g, f);
    if s.u.mul(g, f).mul(&s.v, f) != s.d || !is_unimodular(&s.u, f) || !is_unimodular(&s.v, f) {
        return false;
    }
    if s.v.mul(&s.v_inv, f) != PolyMatrix::identity(g.cols()) {
        return false;
    }
    let diag: Vec<FPoly> = (0..g.rows().min(g.cols())).map(|i| s.d.get(i, i).clone()).collect();
    let off_diag_zero =
        (0..g.rows()).all(|i| (0..g.cols()).all(|j| i == j || s.d.get(i, j).is_zero()));
    let nz = diag.iter().take_while(|p| !p.is_zero()).count();
    off_diag_zero
        && diag[nz..].iter().all(FPoly::is_zero)
        && diag[..nz].iter().all(|p| p.lead() == Some(Fe::ONE))
        && diag[..nz].windows(2).all(|w| w[0].divides(&w[1], f))
}

fn all_polys(f: &GaloisField, max_deg: usize) -> Vec<FPoly> {
    let q = f.order() as usize;
    (0..q.pow(max_deg as u32 + 1))
        .map(|mut idx| {
            let mut c = Vec::with_capacity(max_deg + 1);
            for _ in 0..=max_deg {
                c.push(f.element((idx % q) as u32).expect("index below order"));
                idx /= q;
            }
            FPoly::from_coeffs(c)
        })
        .collect()
}

fn all_vectors(polys: &[FPoly], n: usize) -> Vec<Vec<FPoly>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<FPoly>| {
                polys.iter().map(move |p| {
                    let mut w = v.clone();
                    w.push(p.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// Soundness and completeness of membership against the set of all
/// combinations with coordinates of degree <= 1.
fn membership_brute_force(f: &GaloisField, n: usize, k: usize, rng: &mut SampleRng) -> bool {
    let g = PolyMatrix::random(k, n, 1, f, rng);
    let rm = RowModule::new(&g, f);
    let reachable: HashSet<Vec<FPoly>> =
        all_vectors(&all_polys(f, 1), k).iter().map(|x| g.row_combination(x, f)).collect();
    let candidates: Vec<Vec<FPoly>> = if f.order() == 2 || n <= 2 {
        all_vectors(&all_polys(f, 2), n)
    } else {
        (0..2000).map(|_| (0..n).map(|_| FPoly::random(2, f, rng)).collect()).collect()
    };
    candidates.iter().chain(reachable.iter()).all(|v| match rm.coordinates(v, f) {
        Some(x) => &g.row_combination(&x, f) == v,
        None => !reachable.contains(v),
    })
}

fn fx_linalg(strategy: Strategy) -> Vec<SweepLine> {
    let fields = small_fields();
    let smith = sweep(strategy, "Smith form: UGV = D, unimodular U and V, divisibility chain", 100, |i| {
        let f = &fields[i % 2];
        let mut rng = case_rng(5, 0, i);
        let g = PolyMatrix::random(rng.gen_range(1..=4), rng.gen_range(1..=6), rng.gen_range(0..=3), f, &mut rng);
        smith_ok(&g, f)
    });
    let hermite = sweep(strategy, "Hermite form: UG = H with U unimodular", 100, |i| {
        let f = &fields[i % 2];
        let mut rng = case_rng(5, 1, i);
        let g = PolyMatrix::random(rng.gen_range(1..=4), rng.gen_range(1..=6), rng.gen_range(0..=3), f, &mut rng);
        let (h, u) = hermite_form(&g, f);
        u.mul(&g, f) == h && is_unimodular(&u, f)
    });
    let clos = sweep(strategy, "closure is pure, idempotent, extensive and of rational rank", 100, |i| {
        let f = &fields[i % 2];
        let mut rng = case_rng(5, 2, i);
        let g = PolyMatrix::random(rng.gen_range(1..=4), rng.gen_range(1..=5), rng.gen_range(0..=3), f, &mut rng);
        let c = closure(&g, f);
        let rm = RowModule::new(&c, f);
        is_direct_summand(&c, f)
            && closure(&c, f) == c
            && (0..g.rows()).all(|r| rm.contains(g.row(r), f))
            && c.rows() == rank_rational(&g, f)
    });
    let shapes: Vec<(usize, usize, usize)> =
        (0..2).flat_map(|fi| (1..=3).flat_map(move |n| (1..=n.min(2)).map(move |k| (fi, n, k)))).collect();
    let brute = sweep(strategy, "membership against brute-force enumeration, n <= 3, degree <= 2, F2 and F4", shapes.len(), |i| {
        let (fi, n, k) = shapes[i];
        let mut rng = case_rng(5, 3, i);
        membership_brute_force(&fields[fi], n, k, &mut rng)
    });
    vec![smith, hermite, clos, brute]
}

fn zero_divisor(wc: &WorkedContext) -> AlgebraElement {
    let a = wc.algebra();
    match &wc.restriction {
        Some(res) => res.embed(&worked::m2([Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO])),
        None => a.add(&a.one(), &a.basis(1)),
    }
}

/// Generators for closure `i`: for even `i` two elements of the proper right
/// ideal `z A[X]`, for odd `i` two unrestricted elements.
fn code_seeds(wc: &WorkedContext, space: &CodeSpace, i: usize, rng: &mut SampleRng) -> Vec<Vec<FPoly>> {
    let ring = SkewPolyRing::new(wc.ctx.clone());
    let z = SkewPoly::constant(zero_divisor(wc));
    (0..2)
        .map(|_| {
            let p = ring.random(2, rng);
            let p = if i % 2 == 0 { ring.mul(&z, &p) } else { p };
            space.row_of_poly(&p)
        })
        .collect()
}

fn code_ok(wc: &WorkedContext, space: &CodeSpace, c: &ConvCodeBasis, rng: &mut SampleRng) -> [bool; 4] {
    let f = space.field();
    let ring = SkewPolyRing::new(wc.ctx.clone());
    let rm = RowModule::new(&c.g, f);
    let closed = (0..200).all(|_| {
        let p = ring.random(3, rng);
        (0..c.k()).all(|r| rm.contains(&space.act(c.g.row(r), &p), f))
    });
    [c.pure && c.stable, space.correspondence_roundtrip(c).passes(), closed, c.k() == rank_rational(&c.g, f)]
}

fn codes(strategy: Strategy) -> Vec<SweepLine> {
    let ctxs = ab();
    let spaces: Vec<CodeSpace> = ctxs
        .iter()
        .map(|wc| CodeSpace::new(RightModule::regular(wc.algebra()), wc.ctx.clone()).expect("Laurent context"))
        .collect();
    let cases = 24;
    let results = par::map_with(strategy, cases, |i| {
        let (wc, space) = (&ctxs[i % 2], &spaces[i % 2]);
        let mut rng = case_rng(6, 0, i);
        let seeds = code_seeds(wc, space, i / 2, &mut rng);
        let cl = space.cyclic_closure(&seeds).expect("rows of length n");
        let monotone = cl.ranks.windows(2).all(|w| w[0] <= w[1]) && cl.ranks.iter().all(|&r| r <= space.n());
        let [ps, rt, closed, rank] = code_ok(wc, space, &cl.code, &mut rng);
        (cl.code.k(), [ps && monotone, rt, closed, rank])
    });
    let labels = [
        "cyclic closure is pure and stable, ranks non-decreasing",
        "correspondence round trip",
        "closed under 200 random ring elements of degree <= 3",
        "rank over F[X] equals rank over F(X)",
    ];
    let mut lines: Vec<SweepLine> = labels
        .iter()
        .enumerate()
        .map(|(j, l)| SweepLine {
            label: format!("{l} (regular modules, n = 8 and n = 5)"),
            cases,
            failures: results.iter().filter(|(_, r)| !r[j]).count(),
        })
        .collect();
    let n_of = |i: usize| spaces[i % 2].n();
    let proper = results.iter().enumerate().filter(|(i, (k, _))| *k > 0 && *k < n_of(*i)).count();
    lines.push(line(format!("proper nonzero codes among closures: {proper} of {cases}"), proper > 0));
    let ranks: Vec<String> = results.iter().map(|(k, _)| k.to_string()).collect();
    lines.push(line(format!("code dimensions: {}", ranks.join(" ")), true));
    lines
}
