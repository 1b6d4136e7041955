use std::sync::Arc;

use proptest::prelude::*;
use spf_core::divided_powers::{binomial, compose, SymTensor};
use spf_core::functor::*;
use spf_core::ring::{ExactMatrix, RingSpec, Scalar};
use spf_core::schur::*;

const F2: RingSpec = RingSpec::PrimeField(2);
const F3: RingSpec = RingSpec::PrimeField(3);
const Q: RingSpec = RingSpec::Rationals;
const Z: RingSpec = RingSpec::Integers;

fn alg(ring: RingSpec, n: usize, d: usize) -> Arc<SchurAlgebra> {
    SchurAlgebra::new(ring, n, d)
}

fn iso(a: &SchurModule, b: &SchurModule) -> bool {
    is_isomorphic(a, b).unwrap().is_iso()
}

fn free(ring: RingSpec, d: usize, vs: &[usize]) -> FreeFunctor {
    FreeFunctor::new(ring, d, vs.iter().map(|&v| FreeSummand::whole(v)).collect()).unwrap()
}

fn free_presented(f: &FreeFunctor) -> PresentedFunctor {
    let empty = FreeFunctor::zero(f.ring(), f.degree());
    PresentedFunctor::new(FunctorMorphism::zero(empty, f.clone()))
}

// Γ², S², Λ², ⊗² and the Frobenius image at n = d = 2
fn family(a: &Arc<SchurAlgebra>) -> Vec<SchurModule> {
    vec![
        divided_module(a, 2).unwrap(),
        symmetric_module(a, 2).unwrap(),
        exterior_module(a, 2).unwrap(),
        tensor_power_module(a).unwrap(),
        frobenius_kernel_image(a).unwrap(),
    ]
}

#[test]
fn representables_evaluate_to_divided_powers() {
    for d in 1..=3 {
        for m in 1..=4 {
            let a = alg(F2, m, d);
            let g = eval_free(&free(F2, d, &[1]), &a).unwrap();
            assert_eq!(g.rank(), binomial(m + d - 1, d));
        }
    }
    assert_eq!(eval_free(&free(F3, 2, &[2]), &alg(F3, 2, 2)).unwrap().rank(), 10);
    let a = alg(Q, 3, 2);
    let g = eval_free(&free(Q, 2, &[1]), &a).unwrap();
    assert!(iso(&g, &divided_module(&a, 2).unwrap()));
}

#[test]
fn weight_cut_is_the_left_ideal() {
    for ring in [F2, Q] {
        let a = alg(ring, 2, 2);
        for w in 0..a.weights().len() {
            let lam = a.weights()[w].parts.clone();
            let f = projective_functor(&a, &[w]).unwrap();
            let m = eval_free(&f, &a).unwrap();
            assert!(iso(&m, &gamma_weight_module(&a, &lam).unwrap()), "{lam:?}");
        }
    }
}

#[test]
fn identity_and_degree_one_morphisms() {
    let a = alg(F3, 2, 2);
    let f = free(F3, 2, &[2, 1]);
    let id = eval_morphism(&FunctorMorphism::identity(&f), &a).unwrap();
    assert!(id.is_identity());

    // d = 1: f ↦ f·A on 2×3 matrices, A: k^2 → k^3 (entry in Hom(W, V) with W = k^2, V = k^3)
    let ring = Q;
    let a1 = alg(ring, 2, 1);
    let mat = ExactMatrix::from_i64_rows(ring, &[vec![1, 2], vec![0, 1], vec![3, -1]]);
    let eta = SymTensor::tensor_power(&mat, 1);
    let phi =
        FunctorMorphism::new(free(ring, 1, &[3]), free(ring, 1, &[2]), vec![vec![eta]]).unwrap();
    let got = eval_morphism(&phi, &a1).unwrap();
    // oracle: basis of Hom(k^v, k^2) is E_{ij} in multiset order (i, j) lexicographic
    let idx = |i: usize, j: usize, v: usize| i * v + j;
    let mut trip = Vec::new();
    for i in 0..2 {
        for j in 0..3 {
            // E_ij · A = Σ_l A[j][l] E_il
            for l in 0..2 {
                let c = mat.get(j, l);
                if !ring.is_zero(&c) {
                    trip.push((idx(i, l, 2), idx(i, j, 3), c));
                }
            }
        }
    }
    assert_eq!(got, ExactMatrix::from_triplets(ring, 4, 6, trip));
}

fn small_tensor(ring: RingSpec, d: usize, dom: usize, cod: usize, seed: &[i64]) -> SymTensor {
    let basis = spf_core::divided_powers::sym_basis(dom, cod, d);
    let terms = basis
        .into_iter()
        .zip(seed.iter().cycle())
        .filter(|(_, &c)| c != 0)
        .map(|(m, &c)| (m, ring.from_i64(c)));
    SymTensor::from_terms(ring, d, dom, cod, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn evaluation_is_functorial(
        s1 in proptest::collection::vec(-1i64..2, 1..12),
        s2 in proptest::collection::vec(-1i64..2, 1..12),
        u in 1usize..3, v in 1usize..3, w in 1usize..3,
    ) {
        let ring = F3;
        let a = alg(ring, 2, 2);
        let (fu, fv, fw) = (free(ring, 2, &[u]), free(ring, 2, &[v]), free(ring, 2, &[w]));
        let phi = FunctorMorphism::new(fu, fv.clone(), vec![vec![small_tensor(ring, 2, v, u, &s1)]]).unwrap();
        let psi = FunctorMorphism::new(fv, fw, vec![vec![small_tensor(ring, 2, w, v, &s2)]]).unwrap();
        let lhs = eval_morphism(&psi.after(&phi).unwrap(), &a).unwrap();
        let rhs = eval_morphism(&psi, &a).unwrap().mul(&eval_morphism(&phi, &a).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn representable_tensor_products() {
    let ring = F2;
    let unit = free(ring, 2, &[1]);
    let a = alg(ring, 2, 2);
    for g in [free(ring, 2, &[2]), projective_functor(&a, &[1, 2]).unwrap()] {
        let t = day_tensor_free(&unit, &g).unwrap();
        assert_eq!(t.summands().iter().map(|s| s.v).collect::<Vec<_>>(), g.summands().iter().map(|s| s.v).collect::<Vec<_>>());
        assert!(iso(&eval_free(&t, &a).unwrap(), &eval_free(&g, &a).unwrap()));
    }
    let t = day_tensor_free(&free(ring, 2, &[2]), &free(ring, 2, &[2])).unwrap();
    assert_eq!(t, free(ring, 2, &[4]));
}

// (Γ^{d,V} ⊗ X)(k^n) = X(Hom(V, k^n)), with X itself representable
#[test]
fn tensor_with_representable_is_precomposition() {
    for ring in [F2, Q] {
        let a = alg(ring, 2, 2);
        for (v, w) in [(1, 2), (2, 1), (2, 2)] {
            let x = eval_free(&free(ring, 2, &[w]), &a).unwrap();
            let fv = free(ring, 2, &[v]);
            let t = tensor_with_module(&free_presented(&fv), &x).unwrap();
            assert_eq!(t.rank(), Extension::new(&x, 2 * v).unwrap().rank());
            let direct = eval_free(&day_tensor_free(&fv, &free(ring, 2, &[w])).unwrap(), &a).unwrap();
            assert!(iso(&t, &direct), "v={v} w={w}");
        }
    }
}

#[test]
fn exterior_square_tensor_square_is_symmetric_square() {
    for ring in [F2, F3, Q] {
        let a = alg(ring, 2, 2);
        let l = exterior_module(&a, 2).unwrap();
        let t = day_tensor_modules(&l, &l).unwrap();
        assert_eq!(t.rank(), 3);
        assert!(iso(&t, &symmetric_module(&a, 2).unwrap()), "{ring}");
        let t2 = tensor_with_module(&presentation_from_module(&l).unwrap(), &l).unwrap();
        assert!(iso(&t2, &t));
    }
}

#[test]
fn unit_and_commutativity_on_the_standard_family() {
    for ring in [F2, F3] {
        let a = alg(ring, 2, 2);
        let fam = family(&a);
        let unit = &fam[0];
        for x in &fam {
            assert!(iso(&day_tensor_modules(unit, x).unwrap(), x));
        }
        for (i, x) in fam.iter().enumerate() {
            for y in &fam[i + 1..] {
                let xy = day_tensor_modules(x, y).unwrap();
                let yx = day_tensor_modules(y, x).unwrap();
                assert!(iso(&xy, &yx), "{:?} {:?}", x.label(), y.label());
                let ext = tensor_with_module(&presentation_from_module(x).unwrap(), y).unwrap();
                assert!(iso(&xy, &ext));
            }
        }
    }
}

#[test]
fn internal_hom_of_representables() {
    let ring = F3;
    let a = alg(ring, 2, 2);
    let unit = free(ring, 2, &[1]);
    for g in [free(ring, 2, &[2]), projective_functor(&a, &[0, 1]).unwrap()] {
        let h = internal_hom_free(&unit, &g).unwrap();
        assert!(iso(&eval_free(&h, &a).unwrap(), &eval_free(&g, &a).unwrap()));
    }
    for (f, g) in [(free(ring, 2, &[2]), free(ring, 2, &[1])), (projective_functor(&a, &[1]).unwrap(), projective_functor(&a, &[0]).unwrap())] {
        let h = eval_free(&internal_hom_free(&f, &g).unwrap(), &a).unwrap();
        let via = internal_hom(&free_presented(&f), &eval_free(&g, &a).unwrap()).unwrap();
        assert!(iso(&h, &via));
    }
    // Hom(F, Γ^{d,k}) has the dualized cuts
    let f = projective_functor(&a, &[1]).unwrap();
    let h = internal_hom_free(&f, &unit).unwrap();
    let e = f.summands()[0].idem.clone().unwrap();
    assert_eq!(h.summands()[0].idem.as_ref(), Some(&spf_core::divided_powers::dualize(&e)));
}

#[test]
fn internal_hom_from_representable_is_a_shift() {
    for ring in [F2, Q] {
        let a = alg(ring, 2, 2);
        for y in family(&a) {
            for v in 1..=2 {
                let h = internal_hom(&free_presented(&free(ring, 2, &[v])), &y).unwrap();
                assert_eq!(h.rank(), Extension::new(&y, 2 * v).unwrap().rank());
            }
            let unit = presentation_from_module(&divided_module(&a, 2).unwrap()).unwrap();
            assert!(iso(&internal_hom(&unit, &y).unwrap(), &y));
        }
    }
}

#[test]
fn internal_hom_dimension_identities() {
    for ring in [F2, F3] {
        let a = alg(ring, 2, 2);
        let (l, s) = (exterior_module(&a, 2).unwrap(), symmetric_module(&a, 2).unwrap());
        let h = internal_hom(&presentation_from_module(&l).unwrap(), &s).unwrap();
        let other = day_tensor_modules(&l, &s.kuhn_dual()).unwrap().kuhn_dual();
        assert_eq!(h.rank(), other.rank());
        // adjunction: Hom(X⊗Y, Z) = Hom(X, Hom(Y, Z))
        let fam = family(&a);
        for (x, y, z) in [(0, 2, 1), (2, 2, 1), (4, 1, 3), (1, 4, 4), (3, 2, 0)] {
            let (x, y, z) = (&fam[x], &fam[y], &fam[z]);
            let lhs = hom_dim(&day_tensor_modules(x, y).unwrap(), z).unwrap();
            let rhs = hom_dim(x, &internal_hom(&presentation_from_module(y).unwrap(), z).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn presentations_round_trip() {
    for ring in [F2, F3, Q, Z] {
        let a = alg(ring, 2, 2);
        let reg = regular_module(&a).unwrap();
        let p = presentation_from_module(&reg).unwrap();
        assert!(p.relations().is_empty());
        assert!(iso(&p.eval(&a).unwrap(), &reg));
        let l = exterior_module(&a, 2).unwrap();
        let p = presentation_from_module(&l).unwrap();
        assert_eq!(p.generators().len(), 1);
        assert!(p.relations().len() <= a.dim());
        assert!(iso(&p.eval(&a).unwrap(), &l));
        for x in family(&a).iter().take(if ring == Z { 4 } else { 5 }) {
            let p = presentation_from_module(x).unwrap();
            assert!(iso(&p.eval(&a).unwrap(), x));
            assert!(iso(&kuhn_dual_presented(&p, &a).unwrap(), &x.kuhn_dual()));
        }
    }
    let a = alg(F3, 3, 3);
    let w = weyl_module(&a, &[2, 1]).unwrap();
    assert!(iso(&presentation_from_module(&w).unwrap().eval(&a).unwrap(), &w));
}

#[test]
fn presentation_json_round_trip() {
    let a = alg(F3, 2, 2);
    let p = presentation_from_module(&symmetric_module(&a, 2).unwrap()).unwrap();
    let j = serde_json::to_string(&PresentedJson::from_presented(&p)).unwrap();
    let back: PresentedJson = serde_json::from_str(&j).unwrap();
    assert_eq!(back.to_presented().unwrap(), p);
}

#[test]
fn incompatible_entries_are_rejected() {
    let a = alg(F2, 2, 2);
    let f = projective_functor(&a, &[0]).unwrap();
    let g = projective_functor(&a, &[1]).unwrap();
    // the unit of End(k^2) is not in e_0 S e_1
    let bad = SymTensor::identity(F2, 2, 2);
    assert!(FunctorMorphism::new(f, g, vec![vec![bad]]).is_err());
    let e = SymTensor::from_terms(
        F2,
        2,
        2,
        2,
        [(spf_core::divided_powers::Multiset::new(vec![(0, 1), (0, 1)]), Scalar::Mod(1))],
    )
    .unwrap();
    assert_ne!(compose(&e, &e).unwrap(), e);
    assert!(FreeFunctor::new(F2, 2, vec![FreeSummand { v: 2, idem: Some(e) }]).is_err());
}
