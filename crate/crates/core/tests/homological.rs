use std::sync::Arc;

use num_bigint::BigInt;
use spf_core::divided_powers::{binomial, partitions, positive_compositions};
use spf_core::functor::{FreeFunctor, FreeSummand, FunctorMorphism};
use spf_core::homological::*;
use spf_core::ring::{ExactMatrix, RingSpec};
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

fn family(a: &Arc<SchurAlgebra>) -> Vec<SchurModule> {
    let d = a.d();
    let mut v = vec![
        divided_module(a, d).unwrap(),
        symmetric_module(a, d).unwrap(),
        exterior_module(a, d).unwrap(),
        tensor_power_module(a).unwrap(),
    ];
    if d == 2 && a.ring().characteristic() == 2 {
        v.push(frobenius_kernel_image(a).unwrap());
    }
    v
}

#[test]
fn homology_of_small_linear_complexes() {
    let f = ExactMatrix::from_i64_rows(Q, &[vec![1, 0], vec![0, 1]]);
    let h = linear_homology(&LinearComplex::new(Q, 0, vec![2, 2], vec![f]).unwrap());
    assert!(h.is_zero());
    let zero = ExactMatrix::zeros(F3, 3, 2);
    let h = linear_homology(&LinearComplex::new(F3, -1, vec![2, 3], vec![zero]).unwrap());
    assert_eq!((h.free_rank(-1), h.free_rank(0)), (2, 3));
    let two = ExactMatrix::from_i64_rows(Z, &[vec![2]]);
    let h = linear_homology(&LinearComplex::new(Z, 0, vec![1, 1], vec![two]).unwrap());
    assert!(h.at(0).unwrap().is_zero());
    assert_eq!(h.at(1).unwrap().free_rank, 0);
    assert_eq!(h.at(1).unwrap().torsion, vec![BigInt::from(2)]);
    let bad = ExactMatrix::from_i64_rows(Q, &[vec![1]]);
    assert!(LinearComplex::new(Q, 0, vec![1, 1, 1], vec![bad.clone(), bad]).is_err());
}

#[test]
fn two_step_presentations() {
    for ring in [F2, F3, Q, Z] {
        let c = presentation_exterior(ring, 1, 2).unwrap();
        assert_eq!(c.ranks(), vec![2]);
        let c = presentation_exterior(ring, 2, 2).unwrap();
        assert_eq!(c.ranks(), vec![3, 4]);
        let h = homology(&c, false).unwrap();
        assert_eq!(h.free_rank(0), 1);
        let c = presentation_symmetric(ring, 2, 2).unwrap();
        assert_eq!(c.ranks(), vec![1, 4]);
        assert_eq!(homology(&c, false).unwrap().free_rank(0), 3);
        let c = presentation_exterior(ring, 3, 3).unwrap();
        assert_eq!(homology(&c, false).unwrap().free_rank(0), 1);
    }
}

fn bar_term_rank(n: usize, d: usize, p: usize) -> usize {
    positive_compositions(p, d)
        .iter()
        .map(|w| w.parts.iter().map(|&i| binomial(n + i - 1, i)).product::<usize>())
        .sum()
}

#[test]
fn exterior_bar_resolution_is_exact() {
    let r = koszul_resolution_exterior(F2, 2, 2).unwrap();
    assert_eq!(r.evaluated.ranks(), vec![3, 4]);
    assert_eq!(koszul_resolution_exterior(Q, 1, 3).unwrap().evaluated.ranks(), vec![3]);
    for ring in [F2, F3, Q, Z] {
        for d in 1..=3 {
            for n in 1..=3 {
                let r = koszul_resolution_exterior(ring, d, n)
                    .unwrap_or_else(|e| panic!("{ring} d={d} n={n}: {e}"));
                let want: Vec<usize> = (1..=d).map(|p| bar_term_rank(n, d, p)).collect();
                assert_eq!(r.evaluated.ranks(), want);
                assert_eq!(r.homology.free_rank(0), binomial(n, d));
            }
        }
    }
}

#[test]
fn symmetric_bar_resolution_is_exact() {
    for ring in [F2, F3, Q, Z] {
        for d in 1..=3 {
            for n in 1..=3 {
                let r = koszul_resolution_symmetric(ring, d, n)
                    .unwrap_or_else(|e| panic!("{ring} d={d} n={n}: {e}"));
                assert_eq!(r.homology.free_rank(0), binomial(n + d - 1, d));
                let c = presentation_symmetric(ring, d, n).unwrap();
                assert_eq!(homology(&c, false).unwrap().free_rank(0), binomial(n + d - 1, d));
            }
        }
    }
}

#[test]
fn restriction_is_evaluation() {
    for ring in [F2, Z] {
        let big = alg(ring, 3, 3);
        let small = alg(ring, 2, 3);
        for (m, want) in [
            (symmetric_module(&big, 3).unwrap(), symmetric_module(&small, 3).unwrap()),
            (tensor_power_module(&big).unwrap(), tensor_power_module(&small).unwrap()),
            (divided_module(&big, 3).unwrap(), divided_module(&small, 3).unwrap()),
        ] {
            let (r, b) = m.restrict(&small).unwrap();
            assert_eq!(b.shape(), (m.rank(), want.rank()));
            r.check().unwrap();
            assert!(is_isomorphic(&r, &want).unwrap().is_iso());
        }
        assert!(exterior_module(&big, 3).unwrap().restrict(&small).unwrap().0.rank() == 0);
    }
}

#[test]
fn free_resolutions() {
    for ring in [F2, F3] {
        let a = alg(ring, 2, 2);
        let r = free_resolution(&regular_module(&a).unwrap(), 5).unwrap();
        assert!(r.terminated);
        assert_eq!(r.length(), 0);
        for m in family(&a) {
            let r = free_resolution(&m, 5).unwrap();
            assert!(r.terminated && r.length() <= 4, "{:?}", m.label());
            let h = homology(&r.evaluated().unwrap(), true).unwrap();
            assert!(h.concentrated_in(0));
            assert!(iso(h.module(0).unwrap(), &m));
        }
    }
}

#[test]
fn ext_from_the_bar_resolution_matches_generic_resolutions() {
    for ring in [F2, F3] {
        for d in 2..=3 {
            let a = alg(ring, d, d);
            let bar = bar_complex(ring, d).unwrap();
            let lam = exterior_module(&a, d).unwrap();
            for n in family(&a) {
                let via_bar = linear_homology(&hom_free_complex(&bar, &n).unwrap());
                let ext = ext_groups(&lam, &n, 2 * d).unwrap();
                for (i, (r, t)) in ext.iter().enumerate() {
                    assert!(t.is_empty());
                    assert_eq!(*r, via_bar.free_rank(i as i64), "{ring} d={d} {:?} i={i}", n.label());
                }
            }
        }
    }
}

#[test]
fn derived_tensor_with_the_unit_complex() {
    let a = alg(F3, 2, 2);
    let unit = FreeFunctor::new(F3, 2, vec![FreeSummand::whole(1)]).unwrap();
    let c = FreeComplex::new(0, vec![unit], vec![]).unwrap();
    for x in family(&a) {
        let t = derived_tensor(&c, &x).unwrap();
        assert_eq!((t.lo(), t.hi()), (0, 0));
        assert!(iso(t.object(0).unwrap(), &x));
    }
}

#[test]
fn exterior_power_is_self_dual_under_derived_tensor() {
    for ring in [F2, F3, Q, Z] {
        for d in 1..=3 {
            let a = alg(ring, d, d);
            let c = derived_tensor(&bar_complex(ring, d).unwrap(), &exterior_module(&a, d).unwrap()).unwrap();
            let h = homology(&c, true).unwrap();
            assert!(h.concentrated_in(0), "{ring} d={d}: {:?}", h.support());
            assert!(iso(h.module(0).unwrap(), &symmetric_module(&a, d).unwrap()));
        }
    }
}

#[test]
fn exterior_tensor_weight_projectives() {
    for ring in [F2, F3, Q, Z] {
        for d in 2..=3 {
            let a = alg(ring, d, d);
            let bar = bar_complex(ring, d).unwrap();
            for lam in partitions(d) {
                let lam = lam.padded(d).parts;
                let c = derived_tensor(&bar, &gamma_weight_module(&a, &lam).unwrap()).unwrap();
                let h = homology(&c, true).unwrap();
                assert!(h.concentrated_in(0));
                assert!(iso(h.module(0).unwrap(), &lambda_weight_module(&a, &lam).unwrap()), "{ring} {lam:?}");
                // Euler characteristic of the total complex
                let want: i64 = c.euler_characteristic();
                assert_eq!(h.euler_characteristic(), want);
            }
        }
    }
}

#[test]
fn ext_basics() {
    for ring in [F2, F3, Z] {
        let a = alg(ring, 2, 2);
        let reg = regular_module(&a).unwrap();
        for m in family(&a) {
            let e = ext_groups(&reg, &m, 3).unwrap();
            assert_eq!(e[0].0, m.rank());
            assert!(e[1..].iter().all(|(r, t)| *r == 0 && t.is_empty()));
        }
    }
    for ring in [F2, F3] {
        let a = alg(ring, 2, 2);
        let fam = family(&a);
        for x in &fam {
            for y in &fam {
                let e = ext_groups(x, y, 6).unwrap();
                assert_eq!(e[0].0, hom_dim(x, y).unwrap());
                assert!(e[5..].iter().all(|(r, _)| *r == 0));
            }
        }
    }
}

#[test]
fn weyl_and_schur_ext_agree_under_conjugation() {
    for d in 2..=3 {
        let a = alg(F2, d, d);
        let parts = partitions(d);
        for l in &parts {
            for m in &parts {
                let (lp, mp) = (l.padded(d).parts, m.padded(d).parts);
                let (lc, mc) = (l.conjugate().padded(d).parts, m.conjugate().padded(d).parts);
                let w = ext_groups(&weyl_module(&a, &lp).unwrap(), &weyl_module(&a, &mp).unwrap(), 2 * d).unwrap();
                let s = ext_groups(&schur_module(&a, &lc).unwrap(), &schur_module(&a, &mc).unwrap(), 2 * d).unwrap();
                let w: Vec<usize> = w.iter().map(|x| x.0).collect();
                let s: Vec<usize> = s.iter().map(|x| x.0).collect();
                assert_eq!(w, s, "{lp:?} {mp:?}");
            }
        }
    }
}

#[test]
fn complex_json_round_trip() {
    let r = koszul_resolution_exterior(F3, 2, 2).unwrap();
    let j = serde_json::to_string(&ComplexJson::from_complex(&r.evaluated)).unwrap();
    let back: ComplexJson = serde_json::from_str(&j).unwrap();
    let c = back.to_complex(r.evaluated.algebra()).unwrap();
    assert_eq!(c.ranks(), r.evaluated.ranks());
    assert_eq!(c.differentials(), r.evaluated.differentials());
}

#[test]
fn bad_functor_complexes_are_rejected() {
    let f = FreeFunctor::new(Q, 1, vec![FreeSummand::whole(1)]).unwrap();
    let id = FunctorMorphism::identity(&f);
    assert!(FreeComplex::new(0, vec![f.clone(), f.clone(), f], vec![id.clone(), id]).is_err());
}
