use std::collections::BTreeMap;

use proptest::prelude::*;
use spf_core::divided_powers::*;
use spf_core::ring::{ExactMatrix, RingSpec, Scalar};

type Word = Vec<(usize, usize)>;

// Brute-force oracle: an invariant tensor as a map word -> coefficient.
fn expand(t: &SymTensor) -> BTreeMap<Word, Scalar> {
    let ring = t.ring();
    let mut out = BTreeMap::new();
    for (m, c) in t.terms() {
        for a in m.arrangements() {
            let e = out.entry(a).or_insert_with(|| ring.zero());
            *e = ring.add(e, c);
        }
    }
    out.retain(|_, v| !ring.is_zero(v));
    out
}

fn oracle_compose(g: &BTreeMap<Word, Scalar>, f: &BTreeMap<Word, Scalar>, ring: RingSpec) -> BTreeMap<Word, Scalar> {
    let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (a, cg) in g {
        for (b, cf) in f {
            if a.iter().zip(b).all(|(x, y)| x.1 == y.0) {
                let w: Word = a.iter().zip(b).map(|(x, y)| (x.0, y.1)).collect();
                let e = out.entry(w).or_insert_with(|| ring.zero());
                *e = ring.add(e, &ring.mul(cg, cf));
            }
        }
    }
    out.retain(|_, v| !ring.is_zero(v));
    out
}

fn oracle_tensor(
    f: &BTreeMap<Word, Scalar>,
    g: &BTreeMap<Word, Scalar>,
    n2: usize,
    m2: usize,
    ring: RingSpec,
) -> BTreeMap<Word, Scalar> {
    let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (a, cf) in f {
        for (b, cg) in g {
            let w: Word = a.iter().zip(b).map(|(x, y)| (x.0 * n2 + y.0, x.1 * m2 + y.1)).collect();
            let e = out.entry(w).or_insert_with(|| ring.zero());
            *e = ring.add(e, &ring.mul(cf, cg));
        }
    }
    out.retain(|_, v| !ring.is_zero(v));
    out
}

fn ring_of(k: u8) -> RingSpec {
    match k % 4 {
        0 => RingSpec::PrimeField(2),
        1 => RingSpec::PrimeField(3),
        2 => RingSpec::Rationals,
        _ => RingSpec::Integers,
    }
}

fn tensor_from(ring: RingSpec, d: usize, dom: usize, cod: usize, coeffs: &[i64]) -> SymTensor {
    let basis = sym_basis(dom, cod, d);
    let terms = basis.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, ring.from_i64(c)));
    SymTensor::from_terms(ring, d, dom, cod, terms).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..3, 1..12)
}

#[test]
fn d_zero_is_one_dimensional() {
    assert_eq!(sym_basis(4, 3, 0).len(), 1);
    let id = SymTensor::identity(RingSpec::Rationals, 3, 0);
    assert_eq!(id.num_terms(), 1);
}

#[test]
fn basis_dimension_is_binomial() {
    for m in 1..4 {
        for n in 1..4 {
            for d in 0..4 {
                assert_eq!(sym_basis(m, n, d).len(), binomial(n * m + d - 1, d));
            }
        }
    }
}

#[test]
fn degree_one_is_matrix_product() {
    let q = RingSpec::Rationals;
    let a = ExactMatrix::from_i64_rows(q, &[vec![1, 2], vec![0, -1], vec![3, 1]]);
    let b = ExactMatrix::from_i64_rows(q, &[vec![2, 1, 1], vec![1, 0, 4]]);
    let ab = compose(&SymTensor::tensor_power(&a, 1), &SymTensor::tensor_power(&b, 1)).unwrap();
    assert_eq!(ab, SymTensor::tensor_power(&a.mul(&b), 1));
    let t = dualize(&SymTensor::tensor_power(&a, 1));
    assert_eq!(t, SymTensor::tensor_power(&a.transpose(), 1));
}

#[test]
fn tensor_power_is_functorial() {
    let f3 = RingSpec::PrimeField(3);
    let a = ExactMatrix::from_i64_rows(f3, &[vec![1, 2], vec![0, 1]]);
    let b = ExactMatrix::from_i64_rows(f3, &[vec![2, 1], vec![1, 1]]);
    for d in 0..4 {
        let lhs = compose(&SymTensor::tensor_power(&a, d), &SymTensor::tensor_power(&b, d)).unwrap();
        assert_eq!(lhs, SymTensor::tensor_power(&a.mul(&b), d));
    }
}

#[test]
fn idempotents_orthogonal_and_complete() {
    for ring in [RingSpec::PrimeField(2), RingSpec::Rationals, RingSpec::Integers] {
        for (n, d) in [(1, 3), (2, 2), (3, 2), (2, 3), (3, 3)] {
            let es = weight_idempotents(ring, n, d);
            assert_eq!(es.len(), binomial(n + d - 1, d));
            let mut sum = SymTensor::zero(ring, d, n, n);
            for (la, ea) in &es {
                sum = sum.add(ea).unwrap();
                for (mu, eb) in &es {
                    let p = compose(ea, eb).unwrap();
                    if la == mu {
                        assert_eq!(&p, ea);
                    } else {
                        assert!(p.is_zero());
                    }
                }
            }
            assert_eq!(sum, SymTensor::identity(ring, n, d));
            // identity expands to id^{⊗d}
            let id = ExactMatrix::identity(ring, n);
            assert_eq!(sum, SymTensor::tensor_power(&id, d));
        }
    }
}

#[test]
fn split_over_one_symbol_is_identity() {
    // Γ^{a+b}k has one basis multiset and exactly one split of it.
    for (a, b) in [(1, 1), (2, 1), (2, 2), (3, 0)] {
        let c = comultiplication_split(RingSpec::Rationals, 1, a, b);
        assert!(c.is_identity(), "({a},{b})");
    }
}

#[test]
fn split_is_coassociative() {
    let ring = RingSpec::Integers;
    for v in 1..4 {
        for (a, b, c) in [(1, 1, 1), (2, 1, 0), (1, 2, 1), (0, 2, 2)] {
            let da = gamma_basis(v, a).len();
            let dc = gamma_basis(v, c).len();
            let lhs = kron(&comultiplication_split(ring, v, a, b), &ExactMatrix::identity(ring, dc))
                .mul(&comultiplication_split(ring, v, a + b, c));
            let rhs = kron(&ExactMatrix::identity(ring, da), &comultiplication_split(ring, v, b, c))
                .mul(&comultiplication_split(ring, v, a, b + c));
            assert_eq!(lhs, rhs, "v={v} ({a},{b},{c})");
        }
    }
}

fn kron(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let ring = a.ring();
    let mut trip = Vec::new();
    for (i, j, x) in a.entries() {
        for (k, l, y) in b.entries() {
            trip.push((i * b.rows() + k, j * b.cols() + l, ring.mul(x, y)));
        }
    }
    ExactMatrix::from_triplets(ring, a.rows() * b.rows(), a.cols() * b.cols(), trip)
}

#[test]
fn symtensor_json_round_trip() {
    let t = tensor_from(RingSpec::Rationals, 2, 2, 3, &[1, -2, 0, 3]);
    let j = serde_json::to_string(&SymTensorJson::from_tensor(&t)).unwrap();
    let back: SymTensorJson = serde_json::from_str(&j).unwrap();
    assert_eq!(back.to_tensor().unwrap(), t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn compose_matches_expansion(k in 0u8..4, d in 1usize..4, dims in (1usize..3, 1usize..3, 1usize..3),
                                 cg in coeffs(), cf in coeffs()) {
        let ring = ring_of(k);
        let (a, b, c) = dims;
        let f = tensor_from(ring, d, a, b, &cf);
        let g = tensor_from(ring, d, b, c, &cg);
        let gf = compose(&g, &f).unwrap();
        prop_assert_eq!(expand(&gf), oracle_compose(&expand(&g), &expand(&f), ring));
    }

    #[test]
    fn category_laws(k in 0u8..4, d in 1usize..3, c1 in coeffs(), c2 in coeffs(), c3 in coeffs()) {
        let ring = ring_of(k);
        let f = tensor_from(ring, d, 2, 1, &c1);
        let g = tensor_from(ring, d, 1, 2, &c2);
        let h = tensor_from(ring, d, 2, 2, &c3);
        let l = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let r = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(compose(&SymTensor::identity(ring, 2, d), &h).unwrap(), h.clone());
        prop_assert_eq!(compose(&h, &SymTensor::identity(ring, 2, d)).unwrap(), h);
    }

    #[test]
    fn tensor_matches_expansion_and_interchange(k in 0u8..3, c1 in coeffs(), c2 in coeffs(),
                                                c3 in coeffs(), c4 in coeffs()) {
        let ring = ring_of(k);
        let d = 2;
        let f = tensor_from(ring, d, 1, 2, &c1);
        let f2 = tensor_from(ring, d, 2, 2, &c2);
        let g = tensor_from(ring, d, 2, 1, &c3);
        let g2 = tensor_from(ring, d, 2, 2, &c4);
        let t = monoidal_tensor(&f, &f2).unwrap();
        prop_assert_eq!(expand(&t), oracle_tensor(&expand(&f), &expand(&f2), 2, 2, ring));
        let lhs = compose(&monoidal_tensor(&g, &g2).unwrap(), &monoidal_tensor(&f, &f2).unwrap()).unwrap();
        let rhs = monoidal_tensor(&compose(&g, &f).unwrap(), &compose(&g2, &f2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dualize_is_contravariant_involution(k in 0u8..4, c1 in coeffs(), c2 in coeffs()) {
        let ring = ring_of(k);
        let f = tensor_from(ring, 2, 2, 1, &c1);
        let g = tensor_from(ring, 2, 1, 2, &c2);
        prop_assert_eq!(dualize(&dualize(&f)), f.clone());
        let lhs = dualize(&compose(&g, &f).unwrap());
        let rhs = compose(&dualize(&f), &dualize(&g)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn identity_tensor_identity() {
    let ring = RingSpec::PrimeField(2);
    let t = monoidal_tensor(&SymTensor::identity(ring, 2, 2), &SymTensor::identity(ring, 3, 2)).unwrap();
    assert_eq!(t, SymTensor::identity(ring, 6, 2));
    let a = ExactMatrix::from_i64_rows(ring, &[vec![1, 1]]);
    let b = ExactMatrix::from_i64_rows(ring, &[vec![1], vec![1]]);
    let t1 = monoidal_tensor(&SymTensor::tensor_power(&a, 1), &SymTensor::tensor_power(&b, 1)).unwrap();
    assert_eq!(t1, SymTensor::tensor_power(&kron(&a, &b), 1));
}
