//! The four worked contexts and a runner that rechecks each of their
//! displayed identities.

use std::sync::Arc;

use crate::algebra::{
    group_algebra_cyclic, matrix_algebra, quotient_algebra_yz, restrict_scalars, Algebra, AlgebraElement, LinearMap,
    ScalarRestriction,
};
use crate::field::{Fe, GaloisField};
use crate::laurent::{laurent_ring_exists, Refusal};
use crate::matrix::Matrix;
use crate::modact::RightModule;
use crate::skewmap::{inner_derivation, verify_skew_derivation, SkewDerivation};

pub const EXAMPLE_NAMES: [&str; 4] = ["m2f4-inner", "f4c5-group", "m2f4-diag", "fyz-quotient"];

/// A context together with the `F_4`-presentation it came from, when the
/// algebra was restricted to `F_2`.
#[derive(Clone, Debug)]
pub struct WorkedContext {
    pub name: &'static str,
    pub ctx: Arc<SkewDerivation>,
    pub restriction: Option<ScalarRestriction>,
}

impl WorkedContext {
    pub fn algebra(&self) -> &Algebra {
        self.ctx.algebra()
    }
}

fn f4() -> GaloisField {
    GaloisField::extension(2, 2).expect("F4 exists")
}

/// `[[x0, x1], [x2, x3]]` in `M_2(F_4)`.
pub fn m2(x: [Fe; 4]) -> AlgebraElement {
    AlgebraElement::from_coords(x.to_vec())
}

fn m2f4_with(name: &'static str, m: [Fe; 4]) -> WorkedContext {
    let res = restrict_scalars(&matrix_algebra(&f4(), 2).expect("n >= 1"));
    let a = res.algebra().clone();
    let sigma = res.frobenius_map();
    let delta = inner_derivation(&a, &sigma, &res.embed(&m2(m)));
    let ctx = verify_skew_derivation(&a, sigma, delta).expect("inner derivation");
    WorkedContext { name, ctx: Arc::new(ctx), restriction: Some(res) }
}

/// `M_2(F_4)` over `F_2`, σ the entrywise Frobenius, `δ(x) = E12 x - σ(x) E12`.
pub fn m2f4_inner() -> WorkedContext {
    m2f4_with("m2f4-inner", [Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO])
}

/// As [`m2f4_inner`] with `M = diag(0, a)`.
pub fn m2f4_diag() -> WorkedContext {
    m2f4_with("m2f4-diag", [Fe::ZERO, Fe::ZERO, Fe::ZERO, f4().generator()])
}

/// `F_4 C_5`, `σ(g) = g^2`, `δ = id + σ` (the inner σ-derivation of 1).
pub fn f4c5_group() -> WorkedContext {
    let a = group_algebra_cyclic(&f4(), 5).expect("n >= 1");
    let sigma = LinearMap::from_images(&(0..5).map(|j| a.basis(2 * j % 5)).collect::<Vec<_>>());
    let delta = inner_derivation(&a, &sigma, &a.one());
    let ctx = verify_skew_derivation(&a, sigma, delta).expect("inner derivation");
    WorkedContext { name: "f4c5-group", ctx: Arc::new(ctx), restriction: None }
}

/// `F_2[Y,Z]/(Y^2, Z^2, YZ)`, `σ(y) = y + z`, `σ(z) = z`, `δ(z) = y`, `δ(1) = δ(y) = 0`.
pub fn fyz_quotient() -> WorkedContext {
    let f = GaloisField::prime(2).expect("2 is prime");
    let a = quotient_algebra_yz(&f);
    let (one, y, z) = (a.basis(0), a.basis(1), a.basis(2));
    let sigma = LinearMap::from_images(&[one, a.add(&y, &z), z]);
    let delta = LinearMap::from_images(&[a.zero(), a.zero(), y]);
    let ctx = verify_skew_derivation(&a, sigma, delta).expect("sigma-derivation");
    WorkedContext { name: "fyz-quotient", ctx: Arc::new(ctx), restriction: None }
}

/// Row vectors `F_4^2 = F_2^4` as a right module over a restricted `M_2(F_4)`.
pub fn m2f4_row_module(wc: &WorkedContext) -> Option<RightModule> {
    let res = wc.restriction.as_ref()?;
    let big = res.base().field();
    let small = wc.ctx.field();
    let k = big.degree();
    let flatten = |v: [Fe; 2]| -> Vec<Fe> {
        v.iter()
            .flat_map(|&x| {
                let mut c = big.coeffs(x);
                c.resize(k, 0);
                c.into_iter().map(|d| small.constant(d))
            })
            .collect()
    };
    let action = (0..wc.algebra().dim())
        .map(|j| {
            let b = res.project(&wc.algebra().basis(j));
            let x = b.coords();
            let rows: Vec<Vec<Fe>> = (0..2 * k)
                .map(|i| {
                    let mut unit = vec![0u32; k];
                    unit[i % k] = 1;
                    let c = big.from_coeffs(&unit);
                    let v = if i < k { [c, Fe::ZERO] } else { [Fe::ZERO, c] };
                    let w0 = big.add(big.mul(v[0], x[0]), big.mul(v[1], x[2]));
                    let w1 = big.add(big.mul(v[0], x[1]), big.mul(v[1], x[3]));
                    flatten([w0, w1])
                })
                .collect();
            Matrix::from_rows(&rows)
        })
        .collect();
    RightModule::from_matrices(wc.algebra(), action).ok()
}

pub fn context(name: &str) -> Option<WorkedContext> {
    match name {
        "m2f4-inner" => Some(m2f4_inner()),
        "f4c5-group" => Some(f4c5_group()),
        "m2f4-diag" => Some(m2f4_diag()),
        "fyz-quotient" => Some(fyz_quotient()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub pass: bool,
}

fn check(out: &mut Vec<Check>, label: impl Into<String>, pass: bool) {
    out.push(Check { label: label.into(), pass });
}

/// Reruns a worked example; `None` for an unknown name.
pub fn run_example(name: &str) -> Option<Vec<Check>> {
    let wc = context(name)?;
    let mut out = Vec::new();
    match name {
        "m2f4-inner" => m2f4_inner_checks(&wc, &mut out),
        "f4c5-group" => f4c5_checks(&wc, &mut out),
        "m2f4-diag" => m2f4_diag_checks(&wc, &mut out),
        _ => fyz_checks(&wc, &mut out),
    }
    Some(out)
}

fn m2f4_inner_checks(wc: &WorkedContext, out: &mut Vec<Check>) {
    let ctx = &wc.ctx;
    let res = wc.restriction.as_ref().expect("restricted");
    let big = res.base().field().clone();
    let a = ctx.algebra();
    let all: Vec<Fe> = big.elements().collect();
    let displayed = |x: [Fe; 4]| {
        let [x0, _x1, x2, x3] = x;
        m2([x2, big.add(big.mul(x0, x0), x3), Fe::ZERO, big.mul(x2, x2)])
    };
    let units_ok = (0..4).all(|u| {
        let mut x = [Fe::ZERO; 4];
        x[u] = Fe::ONE;
        res.project(&ctx.delta_of(&res.embed(&m2(x)))) == displayed(x)
    });
    check(out, "delta(E_ij) = [[x2, x0^2+x3], [0, x2^2]] on the four matrix units", units_ok);
    let mut all_ok = true;
    for &x0 in &all {
        for &x1 in &all {
            for &x2 in &all {
                for &x3 in &all {
                    let x = [x0, x1, x2, x3];
                    all_ok &= res.project(&ctx.delta_of(&res.embed(&m2(x)))) == displayed(x);
                }
            }
        }
    }
    check(out, "delta = [[x2, x0^2+x3], [0, x2^2]] on all of M2(F4)", all_ok);
    let f = a.field();
    check(out, "delta^2 = 0", ctx.delta().pow(2, f).is_zero());
    check(out, "m_delta = 2", ctx.m_delta() == Some(2));
    let m = res.embed(&m2([Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO]));
    check(out, "sigma(M) = M", ctx.sigma_of(&m) == m);
    check(out, "sigma delta = delta sigma", ctx.commutes());
    check(out, "delta' nilpotent", ctx.m_delta_prime().is_some());
    check(out, "Laurent ring exists", laurent_ring_exists(ctx).laurent.is_ok());
}

fn f4c5_checks(wc: &WorkedContext, out: &mut Vec<Check>) {
    let ctx = &wc.ctx;
    let a = ctx.algebra();
    let g = a.basis(1);
    let sum = |idx: &[usize]| idx.iter().fold(a.zero(), |acc, &i| a.add(&acc, &a.basis(i)));
    let d1 = ctx.delta_of(&g);
    let d2 = ctx.delta_of(&d1);
    let d3 = ctx.delta_of(&d2);
    let d4 = ctx.delta_of(&d3);
    check(out, "delta(g) = g + g^2", d1 == sum(&[1, 2]));
    check(out, "delta^2(g) = g + g^4", d2 == sum(&[1, 4]));
    check(out, "delta^3(g) = g + g^2 + g^3 + g^4", d3 == sum(&[1, 2, 3, 4]));
    check(out, "delta^4(g) = 0", d4.is_zero());
    let group_ok = (0..5).all(|j| ctx.delta().pow(4, a.field()).image(j).is_zero());
    check(out, "delta^4 vanishes on every group element", group_ok);
    check(out, "m_delta = 4", ctx.m_delta() == Some(4));
    check(out, "sigma delta = delta sigma", ctx.commutes());
    check(out, "delta' nilpotent", ctx.m_delta_prime().is_some());
    check(out, "Laurent ring exists", laurent_ring_exists(ctx).laurent.is_ok());
}

fn m2f4_diag_checks(wc: &WorkedContext, out: &mut Vec<Check>) {
    let ctx = &wc.ctx;
    let res = wc.restriction.as_ref().expect("restricted");
    let f = ctx.field();
    let a_gen = res.base().field().generator();
    let m = res.embed(&m2([Fe::ZERO, Fe::ZERO, Fe::ZERO, a_gen]));
    check(out, "delta(diag(0,a)) = diag(0,a)", ctx.delta_of(&m) == m);
    let dp = ctx.delta_prime().expect("sigma invertible");
    check(out, "sigma^-1 = sigma", ctx.sigma_inv() == Some(ctx.sigma()));
    check(out, "delta'(diag(0,a)) = diag(0,a)", dp.apply(&m, f) == m);
    let rep = laurent_ring_exists(ctx);
    check(out, "delta not nilpotent: series ring refused", matches!(rep.series, Err(Refusal::DeltaNotNilpotent { .. })));
    check(out, "delta' not nilpotent", ctx.m_delta_prime().is_none());
    check(out, "Laurent ring refused", rep.laurent.is_err());
}

fn fyz_checks(wc: &WorkedContext, out: &mut Vec<Check>) {
    let ctx = &wc.ctx;
    let a = ctx.algebra();
    let f = a.field();
    let (y, z) = (a.basis(1), a.basis(2));
    let axiom = |x: &AlgebraElement, w: &AlgebraElement| {
        let lhs = ctx.delta_of(&a.mul(x, w));
        let mut rhs = a.mul(&ctx.sigma_of(x), &ctx.delta_of(w));
        a.mul_acc(&mut rhs, &ctx.delta_of(x), w);
        lhs.is_zero() && rhs.is_zero()
    };
    check(out, "sigma(y)delta(y) + delta(y)y = 0 = delta(y^2)", axiom(&y, &y));
    check(out, "sigma(z)delta(z) + delta(z)z = 0 = delta(z^2)", axiom(&z, &z));
    check(out, "sigma(y)delta(z) + delta(y)z = 0 = delta(yz)", axiom(&y, &z));
    check(out, "sigma(z)delta(y) + delta(z)y = 0 = delta(zy)", axiom(&z, &y));
    check(out, "delta^2 = 0", ctx.delta().pow(2, f).is_zero());
    let dp = ctx.delta_prime().expect("sigma invertible");
    check(out, "delta'(y) = y", dp.apply(&y, f) == y);
    let rep = laurent_ring_exists(ctx);
    check(out, "series ring exists with m = 2", rep.series == Ok(2));
    check(
        out,
        "Laurent ring refused: delta' not nilpotent",
        matches!(rep.laurent, Err(Refusal::DeltaPrimeNotNilpotent { .. })),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_passes() {
        for name in EXAMPLE_NAMES {
            let checks = run_example(name).unwrap();
            assert!(!checks.is_empty());
            for c in checks {
                assert!(c.pass, "{name}: {}", c.label);
            }
        }
        assert!(run_example("nope").is_none());
    }
}
