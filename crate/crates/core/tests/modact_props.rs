use proptest::prelude::*;
use skewlaurent::action::RightActionDomain;
use skewlaurent::field::Fe;
use skewlaurent::laurent::{Laurent, LaurentRing};
use skewlaurent::matrix::Matrix;
use skewlaurent::modact::{
    embed_scalar_series, flsx_scalar_action, veclaurent, veclaurent_times_laurent, veclaurent_times_scalar,
    veclaurent_times_scalar_direct, vecpoly_times_ring, vecseries_times_ring, RightModule, VecLaurent, VecPoly,
    VecSeries,
};
use skewlaurent::random;
use skewlaurent::series::SeriesRing;
use skewlaurent::skewpoly::SkewPolyRing;
use skewlaurent::worked::{f4c5_group, m2f4_inner, m2f4_row_module, WorkedContext};

/// The augmentation module of `F_4 C_5`: every group element acts as 1.
fn trivial_module(wc: &WorkedContext) -> RightModule {
    RightModule::from_matrices(wc.algebra(), vec![Matrix::identity(1); wc.algebra().dim()]).unwrap()
}

fn cases() -> Vec<(WorkedContext, RightModule)> {
    let a = m2f4_inner();
    let b = f4c5_group();
    let row = m2f4_row_module(&a).unwrap();
    let reg = RightModule::regular(b.algebra());
    let aug = trivial_module(&b);
    vec![(a.clone(), row), (a.clone(), RightModule::regular(a.algebra())), (b.clone(), reg), (b, aug)]
}

fn random_vec(module: &RightModule, len: usize, rng: &mut random::SampleRng) -> Vec<Vec<Fe>> {
    (0..len).map(|_| random::field_vec(module.field(), module.rank(), rng)).collect()
}

#[test]
fn sample_modules_are_valid() {
    for (wc, module) in cases() {
        assert!(module.verify().is_valid(), "{}", wc.name);
    }
    let wc = m2f4_inner();
    let bad = RightModule::from_matrices(wc.algebra(), vec![Matrix::identity(4); 8]).unwrap();
    assert!(!bad.verify().is_valid());
}

#[test]
fn regular_module_matches_ring_product() {
    let wc = m2f4_inner();
    let module = RightModule::regular(wc.algebra());
    let ring = SkewPolyRing::new(wc.ctx.clone());
    let mut rng = random::rng(41);
    for _ in 0..50 {
        let f = ring.random(3, &mut rng);
        let g = ring.random(3, &mut rng);
        let v = VecPoly::from_coeffs(f.coeffs().iter().map(|c| c.coords().to_vec()).collect());
        let p = vecpoly_times_ring(&module, &wc.ctx, &v, &g);
        let fg = ring.mul(&f, &g);
        let expected: Vec<Vec<Fe>> = fg.coeffs().iter().map(|c| c.coords().to_vec()).collect();
        assert_eq!(p.coeffs(), expected.as_slice());
    }
}

#[test]
fn polynomial_module_axioms() {
    for (wc, module) in cases() {
        let ring = SkewPolyRing::new(wc.ctx.clone());
        let f = module.field().clone();
        let mut rng = random::rng(42);
        for _ in 0..40 {
            let v = VecPoly::from_coeffs(random_vec(&module, 3, &mut rng));
            let g = ring.random(2, &mut rng);
            let h = ring.random(2, &mut rng);
            let lhs = vecpoly_times_ring(&module, &wc.ctx, &vecpoly_times_ring(&module, &wc.ctx, &v, &g), &h);
            assert_eq!(lhs, vecpoly_times_ring(&module, &wc.ctx, &v, &ring.mul(&g, &h)), "{}", wc.name);
            let sum = vecpoly_times_ring(&module, &wc.ctx, &v, &ring.add(&g, &h));
            let parts =
                vecpoly_times_ring(&module, &wc.ctx, &v, &g).add(&vecpoly_times_ring(&module, &wc.ctx, &v, &h), &f);
            assert_eq!(sum, parts);
            assert_eq!(vecpoly_times_ring(&module, &wc.ctx, &v, &ring.one()), v);
        }
    }
}

#[test]
fn series_module_associativity() {
    for (wc, module) in cases() {
        let ring = SeriesRing::new(wc.ctx.clone()).unwrap();
        let m = ring.m();
        let n = 6;
        let mut rng = random::rng(43);
        for _ in 0..20 {
            let v = VecSeries { coeffs: random_vec(&module, n * m * m, &mut rng) };
            let s = ring.random(n * m, &mut rng);
            let t = ring.random(n, &mut rng);
            let lhs = vecseries_times_ring(&module, &ring, &vecseries_times_ring(&module, &ring, &v, &s, n * m).unwrap(), &t, n);
            let rhs = vecseries_times_ring(&module, &ring, &v, &ring.mul(&s, &t, n).unwrap(), n);
            assert_eq!(lhs.unwrap(), rhs.unwrap(), "{}", wc.name);
        }
    }
}

#[test]
fn direct_scalar_action_matches_composition() {
    for (wc, module) in cases() {
        let ring = LaurentRing::new(wc.ctx.clone()).unwrap();
        let zero = module.zero();
        let mut rng = random::rng(44);
        for case in 0..100 {
            let ord = (case % 7) as i64 - 4;
            let len = ring.m() * (6 + ring.m_prime() * ord.unsigned_abs() as usize);
            let s = veclaurent(&module, ord, random_vec(&module, len, &mut rng));
            let a = random::element(wc.algebra(), &mut rng);
            let direct = veclaurent_times_scalar_direct(&module, &ring, &s, &a);
            let composed = veclaurent_times_scalar(&module, &ring, &s, &a);
            assert!(direct.prec() >= ord.min(0) + 5 && composed.prec() >= ord.min(0) + 5, "{} {} {} {} {}", wc.name, s.ord(), s.len(), direct.prec(), composed.prec());
            assert!(direct.agrees_with(&composed, &zero), "{} ord {ord}", wc.name);
        }
    }
}

#[test]
fn central_scalars_act_by_convolution() {
    for (wc, module) in cases() {
        let ring = LaurentRing::new(wc.ctx.clone()).unwrap();
        let f = module.field().clone();
        let zero = module.zero();
        let mut rng = random::rng(45);
        for _ in 0..40 {
            let s = veclaurent(&module, -2, random_vec(&module, 16, &mut rng));
            let c: Vec<Fe> = (0..8).map(|_| f.random(&mut rng)).collect();
            let t = Laurent::new(-1, c, |x: &Fe| x.is_zero());
            let conv = flsx_scalar_action(&module, &s, &t);
            let via_ring = veclaurent_times_laurent(&module, &ring, &s, &embed_scalar_series(&ring, &t));
            assert!(conv.agrees_with(&via_ring, &zero), "{}", wc.name);
        }
    }
}

fn laurent_assoc(which: usize, seed: u64) -> (VecLaurent, VecLaurent, Vec<Fe>) {
    let (wc, module) = cases().swap_remove(which);
    let ring = LaurentRing::new(wc.ctx.clone()).unwrap();
    let mut rng = random::rng(seed);
    let m = ring.m().max(ring.m_prime());
    let v = veclaurent(&module, -1, random_vec(&module, 64 * m, &mut rng));
    let s = ring.random(-1, 32 * m, &mut rng);
    let t = ring.random(1, 32, &mut rng);
    let lhs = veclaurent_times_laurent(&module, &ring, &veclaurent_times_laurent(&module, &ring, &v, &s), &t);
    let rhs = veclaurent_times_laurent(&module, &ring, &v, &ring.mul(&s, &t));
    (lhs, rhs, module.zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn laurent_module_associativity(seed in any::<u64>(), which in 0usize..4) {
        let (l, r, zero) = laurent_assoc(which, seed);
        prop_assert!(l.prec() >= 4 && r.prec() >= 4, "{} {} {}", which, l.prec(), r.prec());
        prop_assert!(l.agrees_with(&r, &zero));
    }
}
