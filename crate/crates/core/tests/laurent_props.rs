use std::sync::Arc;

use proptest::prelude::*;
use skewlaurent::laurent::{laurent_ring_exists, LaurentError, LaurentRing, Refusal, TruncLaurent};
use skewlaurent::random;
use skewlaurent::series::SeriesRing;
use skewlaurent::worked::{f4c5_group, fyz_quotient, m2f4_diag, m2f4_inner, WorkedContext};
use skewlaurent::{verify_skew_derivation, LinearMap};

fn contexts() -> Vec<WorkedContext> {
    vec![m2f4_inner(), f4c5_group()]
}

fn laurent(wc: &WorkedContext) -> LaurentRing {
    LaurentRing::new(wc.ctx.clone()).unwrap()
}

fn zero_delta_ring() -> LaurentRing {
    let wc = f4c5_group();
    let ctx = verify_skew_derivation(wc.algebra(), wc.ctx.sigma().clone(), LinearMap::zero(5)).unwrap();
    LaurentRing::new(Arc::new(ctx)).unwrap()
}

#[test]
fn refused_contexts() {
    assert_eq!(LaurentRing::new(m2f4_diag().ctx).unwrap_err(), LaurentError::DeltaNotNilpotent);
    assert_eq!(LaurentRing::new(fyz_quotient().ctx).unwrap_err(), LaurentError::DeltaPrimeNotNilpotent);

    let diag = m2f4_diag();
    let rep = laurent_ring_exists(&diag.ctx);
    let Err(Refusal::DeltaNotNilpotent { witness }) = rep.series else { panic!("series should be refused") };
    assert_eq!(diag.ctx.delta_of(&witness), witness);
    assert!(rep.laurent.is_err());

    let fyz = fyz_quotient();
    let rep = laurent_ring_exists(&fyz.ctx);
    assert_eq!(rep.series, Ok(2));
    let Err(Refusal::DeltaPrimeNotNilpotent { witness }) = rep.laurent else { panic!("laurent should be refused") };
    let dp = fyz.ctx.delta_prime().unwrap();
    assert_eq!(dp.apply(&witness, fyz.ctx.field()), witness);
    assert_eq!(witness, fyz.algebra().basis(1));
}

#[test]
fn zero_delta_all_rings_exist() {
    let ring = zero_delta_ring();
    let rep = laurent_ring_exists(ring.context());
    assert_eq!((rep.series, rep.laurent), (Ok(1), Ok(1)));
}

#[test]
fn xinv_of_scalar() {
    let ring = zero_delta_ring();
    let a = ring.algebra().clone();
    let f = a.field().clone();
    let mut rng = random::rng(31);
    for _ in 0..20 {
        let b = random::element(&a, &mut rng);
        let p = ring.xinv_times(&ring.constant(b.clone(), 4));
        let expected = ring.monomial(ring.sigma_prime().apply(&b, &f), -1, 4);
        assert_eq!(p, expected);
    }

    let wc = m2f4_inner();
    let ring = laurent(&wc);
    assert_eq!(ring.m_prime(), 2);
    let f = wc.ctx.field().clone();
    let sp = ring.sigma_prime().clone();
    let dp = wc.ctx.delta_prime().unwrap().clone();
    let mut found_two_terms = false;
    for j in 0..8 {
        let b = ring.algebra().basis(j);
        let p = ring.xinv_times(&ring.constant(b.clone(), 4));
        let one = sp.apply(&b, &f);
        let two = sp.apply(&dp.apply(&b, &f), &f);
        found_two_terms |= !two.is_zero();
        let expected = ring.make(-2, vec![two, one, ring.algebra().zero(), ring.algebra().zero()]);
        assert_eq!(p, expected);
    }
    assert!(found_two_terms);
}

#[test]
fn x_and_xinv_roundtrip() {
    for wc in contexts() {
        let ring = laurent(&wc);
        let mut rng = random::rng(32);
        let x = ring.monomial(ring.algebra().one(), 1, 16);
        for case in 0..200 {
            let ord = (case % 7) as i64 - 3;
            let s = ring.random(ord, 8, &mut rng);
            let back = ring.x_times(&ring.xinv_times(&s));
            assert!(ring.agree(&back, &s));
            assert_eq!(back.prec(), s.prec() - ring.m_prime() as i64);
            let fwd = ring.xinv_times(&ring.x_times(&s));
            assert!(ring.agree(&fwd, &s));
            let via_mul = ring.mul(&x, &ring.xinv_times(&s));
            assert!(ring.agree(&via_mul, &s));
        }
    }
}

#[test]
fn direct_composition_matches_iteration() {
    for wc in contexts() {
        let ring = laurent(&wc);
        let mut rng = random::rng(33);
        for case in 0..100 {
            let n = 1 + case % 3;
            let s = ring.random((case % 5) as i64 - 2, 8, &mut rng);
            assert_eq!(ring.xnegn_times_direct(&s, n), ring.xnegn_times(&s, n));
        }
        let s = ring.random(0, 10, &mut rng);
        for (n1, n2) in [(1, 1), (1, 2), (2, 1)] {
            assert_eq!(ring.xnegn_times(&s, n1 + n2), ring.xnegn_times(&ring.xnegn_times(&s, n2), n1));
        }
    }
    let ring = zero_delta_ring();
    let a = ring.algebra().clone();
    let f = a.field().clone();
    let b = a.basis(1);
    for n in 1..4 {
        let p = ring.xnegn_times_direct(&ring.constant(b.clone(), 3), n);
        assert_eq!(p, ring.monomial(ring.sigma_prime().pow(n, &f).apply(&b, &f), -(n as i64), 3));
    }
}

#[test]
fn zero_delta_twisted_rule_for_negative_exponents() {
    let ring = zero_delta_ring();
    let a = ring.algebra().clone();
    let f = a.field().clone();
    let sigma = ring.context().sigma().clone();
    let sinv = ring.sigma_prime().clone();
    let mut rng = random::rng(34);
    for _ in 0..50 {
        let s = ring.random(-3, 8, &mut rng);
        let b = random::element(&a, &mut rng);
        let p = ring.times_scalar(&s, &b);
        assert!(p.prec() >= s.prec());
        let zero = a.zero();
        for e in -3i64..5 {
            let tw = if e >= 0 { sigma.pow(e as usize, &f) } else { sinv.pow(e.unsigned_abs() as usize, &f) };
            let expected = a.mul(&s.coeff(e, &zero).unwrap(), &tw.apply(&b, &f));
            assert_eq!(p.coeff(e, &zero).unwrap(), expected, "e = {e}");
        }
    }
}

#[test]
fn small_products() {
    for wc in contexts() {
        let ring = laurent(&wc);
        let a = ring.algebra().clone();
        let one = a.one();
        let p = ring.mul(&ring.monomial(one.clone(), -1, 8), &ring.monomial(one.clone(), 1, 8));
        assert!(ring.agree(&p, &ring.one(8)));
        assert_eq!(p.ord(), 0);
        let mut rng = random::rng(35);
        for l in -3i64..=3 {
            let b = random::element(&a, &mut rng);
            let p = ring.mul(&ring.constant(b.clone(), 8), &ring.monomial(one.clone(), l, 8));
            assert!(ring.agree(&p, &ring.monomial(b, l, 8)));
        }
    }
}

#[test]
fn restricts_to_series_and_polynomials() {
    for wc in contexts() {
        let ring = laurent(&wc);
        let sr = SeriesRing::new(wc.ctx.clone()).unwrap();
        let pr = sr.poly_ring();
        let m = sr.m();
        let mut rng = random::rng(36);
        for _ in 0..40 {
            let s = sr.random(8 * m, &mut rng);
            let t = sr.random(8, &mut rng);
            let st = sr.mul(&s, &t, 8).unwrap();
            let lp = ring.mul(&ring.make(0, s.coeffs().to_vec()), &ring.make(0, t.coeffs().to_vec()));
            assert!(lp.prec() >= 8);
            assert!(ring.agree(&lp, &ring.make(0, st.coeffs().to_vec())));

            let f = pr.random(3, &mut rng);
            let g = pr.random(3, &mut rng);
            let fg = ring.mul(&ring.from_poly(&f, 8 * m), &ring.from_poly(&g, 8));
            assert!(ring.agree(&fg, &ring.from_poly(&pr.mul(&f, &g), 8)));
        }
    }
}

fn assoc_case(ring: &LaurentRing, seed: u64) -> (TruncLaurent, TruncLaurent) {
    let mut rng = random::rng(seed);
    let m = ring.m().max(ring.m_prime());
    let u = ring.random(-1, 8 * m * m + 8, &mut rng);
    let s = ring.random(-1, 8 * m + 8, &mut rng);
    let t = ring.random(1, 8 + 4 * m, &mut rng);
    (ring.mul(&u, &ring.mul(&s, &t)), ring.mul(&ring.mul(&u, &s), &t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn associativity_on_window(seed in any::<u64>(), which in 0usize..2) {
        let ring = laurent(&contexts()[which]);
        let (l, r) = assoc_case(&ring, seed);
        prop_assert!(l.len() >= 4 && r.len() >= 4);
        prop_assert!(ring.agree(&l, &r));
    }

    #[test]
    fn distributivity_on_window(seed in any::<u64>(), which in 0usize..2) {
        let ring = laurent(&contexts()[which]);
        let mut rng = random::rng(seed);
        let s = ring.random(-2, 16, &mut rng);
        let t = ring.random(0, 8, &mut rng);
        let u = ring.random(1, 8, &mut rng);
        let l = ring.mul(&s, &ring.add(&t, &u));
        let r = ring.add(&ring.mul(&s, &t), &ring.mul(&s, &u));
        prop_assert!(ring.agree(&l, &r));
    }
}
