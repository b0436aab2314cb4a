use std::sync::Arc;

use skewlaurent::algebra::AlgebraElement;
use skewlaurent::codes::{CodeSpace, ConvCodeBasis};
use skewlaurent::field::{Fe, GaloisField};
use skewlaurent::fxpoly::FPoly;
use skewlaurent::matrix::Matrix;
use skewlaurent::modact::RightModule;
use skewlaurent::polymatrix::{membership, PolyMatrix};
use skewlaurent::random;
use skewlaurent::skewpoly::{SkewPoly, SkewPolyRing};
use skewlaurent::worked::{f4c5_group, m2f4_inner, WorkedContext};
use skewlaurent::{verify_skew_derivation, LinearMap, SkewDerivation};

fn regular_space(wc: &WorkedContext) -> CodeSpace {
    CodeSpace::new(RightModule::regular(wc.algebra()), wc.ctx.clone()).unwrap()
}

/// `copies` copies of the augmentation module of `F_4 C_5`.
fn augmentation_space(copies: usize) -> CodeSpace {
    let wc = f4c5_group();
    let module = RightModule::from_matrices(wc.algebra(), vec![Matrix::identity(copies); 5]).unwrap();
    CodeSpace::new(module, wc.ctx.clone()).unwrap()
}

fn random_rows(space: &CodeSpace, k: usize, deg: usize, rng: &mut random::SampleRng) -> Vec<Vec<FPoly>> {
    (0..k).map(|_| (0..space.n()).map(|_| FPoly::random(deg, space.field(), rng)).collect()).collect()
}

/// Rows of `z p` for random `p`, where `z` is a zero divisor, so the right
/// ideal they generate is proper.
fn ideal_seeds(wc: &WorkedContext, space: &CodeSpace, z: &AlgebraElement, rng: &mut random::SampleRng) -> Vec<Vec<FPoly>> {
    let ring = SkewPolyRing::new(wc.ctx.clone());
    let zp = SkewPoly::constant(z.clone());
    (0..2).map(|_| space.row_of_poly(&ring.mul(&zp, &ring.random(2, rng)))).collect()
}

fn zero_divisor(wc: &WorkedContext) -> AlgebraElement {
    let a = wc.algebra();
    match wc.name {
        // 1 + g
        "f4c5-group" => a.add(&a.one(), &a.basis(1)),
        // E11
        _ => wc.restriction.as_ref().unwrap().embed(&skewlaurent::worked::m2([Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO])),
    }
}

#[test]
fn trivial_action_makes_everything_stable() {
    let space = augmentation_space(3);
    let mut rng = random::rng(61);
    for _ in 0..20 {
        let g = PolyMatrix::from_rows(random_rows(&space, 2, 2, &mut rng), 3);
        assert!(space.is_cyclic_submodule(&g));
    }
    let space = augmentation_space(2);
    let c = space.code_from_generators(&[vec![FPoly::x(), FPoly::zero()]]).unwrap();
    assert_eq!(c.g, PolyMatrix::from_rows(vec![vec![FPoly::one(), FPoly::zero()]], 2));
    assert!(c.pure && c.stable);
    assert_eq!(c.rate(), (1, 2));
}

#[test]
fn identity_generators_give_full_space() {
    for wc in [m2f4_inner(), f4c5_group()] {
        let space = regular_space(&wc);
        let rows: Vec<Vec<FPoly>> = (0..space.n()).map(|j| space.unit_row(j)).collect();
        let c = space.code_from_generators(&rows).unwrap();
        assert_eq!(c.g, PolyMatrix::identity(space.n()));
        assert!(c.pure && c.stable);
        assert!(space.correspondence_roundtrip(&c).passes());
    }
}

#[test]
fn single_unit_row_in_matrix_algebra_is_not_stable() {
    let wc = m2f4_inner();
    let space = regular_space(&wc);
    let g = PolyMatrix::from_rows(vec![space.unit_row(0)], space.n());
    assert!(!space.is_cyclic_submodule(&g));
    let (i, j) = space.stability_failure(&g).unwrap();
    let image = space.act_scalar(g.row(i), &wc.algebra().basis(j));
    assert!(membership(&image, &g, space.field()).is_none());
}

/// The regular module of `F_4[t]/(t^5 - 1)` with `σ = id`, `δ = 0`: the ideal
/// generated by a factor `h` of `t^5 - 1` gives a classical cyclic code.
#[test]
fn classical_cyclic_code_is_stable() {
    let wc = f4c5_group();
    let a = wc.algebra().clone();
    let f = a.field().clone();
    let ctx = Arc::new(SkewDerivation::trivial(&a));
    let space = CodeSpace::new(RightModule::regular(&a), ctx).unwrap();
    let t5 = FPoly::from_coeffs(vec![f.neg(Fe::ONE), Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE]);
    let quadratics: Vec<FPoly> = f
        .elements()
        .flat_map(|c1| f.elements().map(move |c0| FPoly::from_coeffs(vec![c0, c1, Fe::ONE])))
        .filter(|h| h.divides(&t5, &f))
        .collect();
    assert_eq!(quadratics.len(), 2);
    for h in quadratics {
        let h_elem = AlgebraElement::from_coords((0..5).map(|i| h.coeff(i)).collect());
        let rows: Vec<Vec<FPoly>> = (0..5)
            .map(|j| a.mul(&h_elem, &a.basis(j)).coords().iter().map(|&c| FPoly::constant(c)).collect())
            .collect();
        let c = space.code_from_generators(&rows).unwrap();
        assert_eq!(c.k(), 3);
        assert!(c.pure && c.stable);
        // every basis row is a multiple of h modulo t^5 - 1
        for i in 0..c.k() {
            let word = FPoly::from_coeffs(c.g.row(i).iter().map(|p| p.coeff(0)).collect());
            assert!(c.g.row(i).iter().all(|p| p.degree() <= Some(0)));
            assert!(h.divides(&word, &f));
        }
        assert!(space.correspondence_roundtrip(&c).passes());
    }
}

#[test]
fn cyclic_closure_of_a_unit_row() {
    let wc = f4c5_group();
    let space = regular_space(&wc);
    let cl = space.cyclic_closure(&[space.unit_row(1)]).unwrap();
    assert!(cl.code.pure && cl.code.stable);
    assert!(space.is_cyclic_submodule(&cl.code.g));
    assert!(cl.ranks.windows(2).all(|w| w[0] <= w[1]));
    assert!(cl.ranks.iter().all(|&r| r <= space.n()));
}

fn closures(wc: &WorkedContext, count: usize, seed: u64) -> (CodeSpace, Vec<ConvCodeBasis>) {
    let space = regular_space(wc);
    let z = zero_divisor(wc);
    let mut rng = random::rng(seed);
    let codes = (0..count)
        .map(|_| {
            let seeds = ideal_seeds(wc, &space, &z, &mut rng);
            let cl = space.cyclic_closure(&seeds).unwrap();
            assert!(cl.ranks.windows(2).all(|w| w[0] <= w[1]));
            assert!(cl.ranks.len() <= space.n() + 2);
            cl.code
        })
        .collect();
    (space, codes)
}

#[test]
fn closures_are_pure_stable_and_proper() {
    for wc in [m2f4_inner(), f4c5_group()] {
        let (space, codes) = closures(&wc, 10, 62);
        assert!(codes.iter().any(|c| c.k() > 0 && c.k() < space.n()), "{}", wc.name);
        for c in &codes {
            assert!(c.pure && c.stable);
            assert!(c.k() <= c.n());
            assert_eq!(c.k() == c.n(), c.g == PolyMatrix::identity(space.n()));
            assert!(space.correspondence_roundtrip(c).passes());
        }
    }
}

#[test]
fn closure_under_random_ring_elements() {
    for wc in [m2f4_inner(), f4c5_group()] {
        let (space, codes) = closures(&wc, 2, 63);
        let ring = SkewPolyRing::new(wc.ctx.clone());
        let mut rng = random::rng(64);
        for c in &codes {
            for _ in 0..100 {
                assert!(space.closed_under(c, &ring.random(3, &mut rng)), "{}", wc.name);
            }
        }
    }
}

#[test]
fn encode_decode_roundtrip() {
    let wc = f4c5_group();
    let (space, codes) = closures(&wc, 1, 65);
    let c = &codes[0];
    let f = space.field().clone();
    let mut rng = random::rng(66);
    for _ in 0..200 {
        let msg: Vec<FPoly> = (0..c.k()).map(|_| FPoly::random(3, &f, &mut rng)).collect();
        let word = space.encode(&msg, c).unwrap();
        assert_eq!(space.decode(&word, c).unwrap(), msg);
    }
    for i in 0..c.k() {
        let unit: Vec<FPoly> = (0..c.k()).map(|j| if i == j { FPoly::one() } else { FPoly::zero() }).collect();
        assert_eq!(space.encode(&unit, c).unwrap(), c.g.row(i).to_vec());
    }
    assert!(space.encode(&vec![FPoly::zero(); c.k()], c).unwrap().iter().all(FPoly::is_zero));
    assert!(space.encode(&[], c).is_err() || c.k() == 0);
}

/// `(Σ s_i X^i) a = Σ s_i σ^i(a) X^i` when `δ = 0`.
fn sigma_only_stable(space: &CodeSpace, sigma: &LinearMap, f: &GaloisField, g: &PolyMatrix) -> bool {
    use skewlaurent::action::RightActionDomain;
    let module = space.module();
    let a = space.context().algebra();
    (0..g.rows()).all(|i| {
        let v = space.to_vecpoly(g.row(i));
        (0..a.dim()).all(|j| {
            let coeffs: Vec<Vec<Fe>> = v
                .coeffs()
                .iter()
                .enumerate()
                .map(|(e, s)| module.act(s, &sigma.pow(e, f).apply(&a.basis(j), f)))
                .collect();
            let image = space.from_vecpoly(&skewlaurent::modact::VecPoly::from_coeffs(coeffs));
            membership(&image, g, f).is_some()
        })
    })
}

#[test]
fn zero_delta_matches_sigma_only_oracle() {
    let wc = f4c5_group();
    let a = wc.algebra().clone();
    let f = a.field().clone();
    let sigma = wc.ctx.sigma().clone();
    let ctx = Arc::new(verify_skew_derivation(&a, sigma.clone(), LinearMap::zero(5)).unwrap());
    let space = CodeSpace::new(RightModule::regular(&a), ctx.clone()).unwrap();
    let ring = SkewPolyRing::new(ctx);
    let mut rng = random::rng(67);
    let z = a.add(&a.one(), &a.basis(1));
    let mut seen = [false; 2];
    for _ in 0..40 {
        let seeds: Vec<Vec<FPoly>> = (0..2)
            .map(|_| space.row_of_poly(&ring.mul(&SkewPoly::constant(z.clone()), &ring.random(2, &mut rng))))
            .collect();
        let g = space.code_from_generators(&seeds).unwrap().g;
        let stable = space.is_cyclic_submodule(&g);
        assert_eq!(stable, sigma_only_stable(&space, &sigma, &f, &g));
        seen[stable as usize] = true;
        let cl = space.cyclic_closure(&seeds).unwrap().code;
        assert!(sigma_only_stable(&space, &sigma, &f, &cl.g));
    }
    assert!(seen[0], "sample should include unstable generator sets");
}
