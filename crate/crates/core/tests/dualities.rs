use std::sync::Arc;

use spf_core::divided_powers::partitions;
use spf_core::dualities::*;
use spf_core::homological::*;
use spf_core::ring::RingSpec;
use spf_core::schur::*;

const F2: RingSpec = RingSpec::PrimeField(2);
const F3: RingSpec = RingSpec::PrimeField(3);
const Q: RingSpec = RingSpec::Rationals;
const Z: RingSpec = RingSpec::Integers;

fn iso(a: &SchurModule, b: &SchurModule) -> bool {
    is_isomorphic(a, b).unwrap().is_iso()
}

/// `[α], [ω], [α/ω], [ω/α], [ω/α/ω]` over F2 at d = 2.
fn indecomposables(a: &Arc<SchurAlgebra>) -> Vec<SchurModule> {
    vec![
        frobenius_kernel_image(a).unwrap(),
        exterior_module(a, 2).unwrap(),
        divided_module(a, 2).unwrap(),
        symmetric_module(a, 2).unwrap(),
        gamma_weight_module(a, &[1, 1]).unwrap(),
    ]
}

fn standard_family(a: &Arc<SchurAlgebra>) -> Vec<SchurModule> {
    let d = a.d();
    let mut v = vec![];
    for w in a.weights() {
        if w.parts.windows(2).all(|p| p[0] >= p[1]) {
            v.push(gamma_weight_module(a, &w.parts).unwrap());
            v.push(lambda_weight_module(a, &w.parts).unwrap());
            v.push(symmetric_weight_module(a, &w.parts).unwrap());
        }
    }
    if d == 2 && a.ring() == F2 {
        v.push(frobenius_kernel_image(a).unwrap());
    }
    v
}

fn concentrated(r: &KoszulResult) -> &SchurModule {
    r.concentrated_module(0).unwrap_or_else(|| panic!("{}: support {:?}", r.input, r.homology.support()))
}

#[test]
fn koszul_on_weight_modules() {
    for ring in [F2, F3, Q, Z] {
        for d in 1..=3 {
            let a = SchurAlgebra::new(ring, d, d);
            for w in a.weights() {
                let l = &w.parts;
                let g = concentrated(&koszul(&gamma_weight_module(&a, l).unwrap()).unwrap()).clone();
                assert!(iso(&g, &lambda_weight_module(&a, l).unwrap()), "{ring} Γ^{l:?}");
                let e = concentrated(&koszul(&lambda_weight_module(&a, l).unwrap()).unwrap()).clone();
                assert!(iso(&e, &symmetric_weight_module(&a, l).unwrap()), "{ring} Λ^{l:?}");
            }
        }
    }
}

#[test]
fn koszul_sends_weyl_to_schur_of_the_conjugate() {
    for ring in [F2, Q] {
        for d in 1..=3 {
            let a = SchurAlgebra::new(ring, d, d);
            for p in partitions(d) {
                let l = p.padded(d).parts;
                let c = p.conjugate().padded(d).parts;
                let r = koszul(&weyl_module(&a, &l).unwrap()).unwrap();
                assert!(iso(concentrated(&r), &schur_module(&a, &c).unwrap()), "{ring} W_{l:?}");
            }
        }
    }
}

#[test]
fn identification_labels() {
    let a = SchurAlgebra::new(F2, 2, 2);
    let r = koszul(&exterior_module(&a, 2).unwrap()).unwrap();
    assert!(r.identified.unwrap().starts_with("S^"));
    let r = koszul(&divided_module(&a, 2).unwrap()).unwrap();
    assert!(r.identified.unwrap().starts_with("Λ"));
}

#[test]
fn two_routes_to_koszul_agree() {
    for ring in [F2, F3] {
        let a = SchurAlgebra::new(ring, 2, 2);
        for x in standard_family(&a) {
            let h1 = koszul(&x).unwrap().homology;
            let h2 = homology(&koszul_via_resolution(&x).unwrap(), true).unwrap();
            assert_eq!(h1.support(), h2.support());
            for i in h1.support() {
                assert!(iso(h1.module(i).unwrap(), h2.module(i).unwrap()));
            }
        }
    }
}

#[test]
fn round_trips_on_indecomposables() {
    let a = SchurAlgebra::new(F2, 2, 2);
    for x in indecomposables(&a) {
        let k = koszul(&x).unwrap();
        let back = koszul_inverse_complex(&k.output).unwrap();
        assert!(iso(concentrated(&back), &x), "{:?}", x.label());
        let inv = koszul_inverse(&x).unwrap();
        let fwd = koszul_complex(&inv.output).unwrap();
        assert!(iso(concentrated(&fwd), &x), "{:?}", x.label());
    }
}

#[test]
fn round_trips_at_degree_three() {
    let a = SchurAlgebra::new(F3, 3, 3);
    for x in standard_family(&a) {
        let back = koszul_inverse_complex(&koszul(&x).unwrap().output).unwrap();
        assert!(iso(concentrated(&back), &x), "{:?}", x.label());
    }
}

#[test]
fn inverse_on_exterior_weights_gives_divided_powers() {
    for ring in [F2, F3, Q] {
        let a = SchurAlgebra::new(ring, 2, 2);
        for w in a.weights() {
            let r = koszul_inverse(&lambda_weight_module(&a, &w.parts).unwrap()).unwrap();
            assert!(iso(concentrated(&r), &gamma_weight_module(&a, &w.parts).unwrap()));
        }
        let r = koszul_inverse(&exterior_module(&a, 2).unwrap()).unwrap();
        assert!(iso(concentrated(&r), &divided_module(&a, 2).unwrap()));
    }
}

#[test]
fn inverse_routes_agree() {
    for ring in [F2, F3] {
        let a = SchurAlgebra::new(ring, 2, 2);
        for y in standard_family(&a) {
            let h1 = koszul_inverse(&y).unwrap().homology;
            let h2 = homology(&koszul_inverse_internal(&ChainComplex::concentrated(&y, 0)).unwrap(), true).unwrap();
            assert_eq!(h1.support(), h2.support(), "{:?}", y.label());
            for i in h1.support() {
                assert!(iso(h1.module(i).unwrap(), h2.module(i).unwrap()));
            }
        }
    }
}

#[test]
fn contravariant_duality() {
    for ring in [F2, F3] {
        let a = SchurAlgebra::new(ring, 2, 2);
        for w in a.weights() {
            let h = homology(&contravariant_koszul(&gamma_weight_module(&a, &w.parts).unwrap()).unwrap(), true).unwrap();
            assert!(h.concentrated_in(0));
            assert!(iso(h.module(0).unwrap(), &lambda_weight_module(&a, &w.parts).unwrap()));
        }
        let h = homology(&contravariant_koszul(&exterior_module(&a, 2).unwrap()).unwrap(), true).unwrap();
        assert!(iso(h.module(0).unwrap(), &divided_module(&a, 2).unwrap()));
        for x in standard_family(&a) {
            let d1 = homology(&contravariant_koszul(&x).unwrap(), true).unwrap();
            let d2 = homology(&contravariant_koszul_complex(&ChainComplex::concentrated(&x, 0)).unwrap(), true).unwrap();
            assert_eq!(d1.support(), d2.support());
            for i in d1.support() {
                assert!(iso(d1.module(i).unwrap(), d2.module(i).unwrap()));
            }
        }
    }
}

#[test]
fn contravariant_duality_is_an_involution() {
    let a = SchurAlgebra::new(F2, 2, 2);
    for x in indecomposables(&a) {
        let dx = contravariant_koszul(&x).unwrap();
        let h = homology(&dx, true).unwrap();
        let ddx = match h.support().as_slice() {
            [0] => contravariant_koszul(h.module(0).unwrap()).unwrap(),
            _ => contravariant_koszul_complex(&dx).unwrap(),
        };
        let hh = homology(&ddx, true).unwrap();
        assert!(hh.concentrated_in(0), "{:?}", x.label());
        assert!(iso(hh.module(0).unwrap(), &x));
    }
}

#[test]
fn rhom_of_exterior_powers() {
    for ring in [F2, F3, Q, Z] {
        for d in 1..=3 {
            let a = SchurAlgebra::new(ring, d, d);
            let r = koszul_inverse(&exterior_module(&a, d).unwrap()).unwrap();
            assert!(iso(concentrated(&r), &divided_module(&a, d).unwrap()), "{ring} d={d}");
        }
    }
}

#[test]
fn ringel_tilting_module() {
    for ring in [F2, F3] {
        let r = ringel_data(ring, 2, 2).unwrap();
        assert_eq!(r.t.rank(), 6);
        assert_eq!(r.endo.len(), 10);
        assert!(r.phi.iter().all(|p| p.shape() == (6, 6)));
        let c = r.structure_constants().unwrap();
        assert_eq!(c.len(), 10);
    }
    assert!(matches!(ringel_data(Q, 1, 2), Err(spf_core::Error::RequiresNGeqD { .. })));
}

#[test]
fn ringel_commutation() {
    for ring in [F2, F3] {
        let r = ringel_data(ring, 2, 2).unwrap();
        let a = r.algebra().clone();
        let reg = r.hom_from_t(&r.t).unwrap();
        assert!(iso(&reg, &regular_module(&a).unwrap()));
        let mut ms: Vec<SchurModule> =
            a.weights().iter().map(|w| gamma_weight_module(&a, &w.parts).unwrap()).collect();
        ms.push(exterior_module(&a, 2).unwrap());
        ms.push(symmetric_module(&a, 2).unwrap());
        ms.push(r.t.clone());
        for m in ms {
            let rep = ringel_commutes_check(&r, &m, 4).unwrap();
            assert!(rep.pass, "{ring} {:?}: {:?}", m.label(), rep);
        }
    }
}

#[test]
fn serre_duality_on_the_standard_family() {
    for ring in [F2, F3] {
        let a = SchurAlgebra::new(ring, 2, 2);
        let fam = standard_family(&a);
        for x in &fam {
            for y in &fam {
                let rep = serre_check(x, y, -4..=4).unwrap();
                assert!(rep.pass, "{ring} {:?} {:?}: {:?}", x.label(), y.label(), rep);
            }
        }
    }
    let a = SchurAlgebra::new(Z, 2, 2);
    let x = regular_module(&a).unwrap();
    assert!(matches!(serre_check(&x, &x, 0..=0), Err(spf_core::Error::RequiresField)));
}

#[test]
fn serre_functor_sends_projectives_to_injectives() {
    let a = SchurAlgebra::new(F2, 2, 2);
    let g = gamma_weight_module(&a, &[2, 0]).unwrap();
    let h = homology(&serre_functor(&g).unwrap(), true).unwrap();
    assert!(h.concentrated_in(0));
    assert!(iso(h.module(0).unwrap(), &symmetric_weight_module(&a, &[2, 0]).unwrap()));
    let reg = regular_module(&a).unwrap();
    let rep = serre_check(&reg, &reg, -4..=4).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.rows.iter().find(|r| r.degree == 0).unwrap().hom_xy, 10);
}

#[test]
fn higher_powers_are_computable() {
    let a = SchurAlgebra::new(F2, 2, 2);
    let x = ChainComplex::concentrated(&divided_module(&a, 2).unwrap(), 0);
    let r = koszul_power(&x, 3).unwrap();
    assert!(!r.homology.degrees.is_empty());
}

#[test]
fn complex_dual_is_an_involution() {
    let r = koszul_resolution_exterior(F3, 2, 2).unwrap();
    let c = &r.evaluated;
    let dd = c.kuhn_dual().kuhn_dual();
    assert_eq!((dd.lo(), dd.hi()), (c.lo(), c.hi()));
    assert_eq!(dd.differentials(), c.differentials());
    let _ = ChainComplex::new(c.algebra().clone(), dd.lo(), dd.objects().to_vec(), dd.differentials().to_vec()).unwrap();
}
