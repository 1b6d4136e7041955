use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::divided_powers::{
    binomial, compose_basis, compositions, diagonal_multiset, sym_basis, Multiset, SymTensor,
    Weight,
};
use crate::error::{Error, Result};
use crate::ring::{ExactMatrix, RingSpec, Scalar};

type Product = Arc<Vec<(usize, Scalar)>>;

/// The Schur algebra `S_k(n, d) = Γ^d End(k^n)` in the orbit-sum basis.
pub struct SchurAlgebra {
    ring: RingSpec,
    n: usize,
    d: usize,
    basis: Vec<Multiset>,
    index: HashMap<Multiset, usize>,
    cod_w: Vec<usize>,
    dom_w: Vec<usize>,
    weights: Vec<Weight>,
    weight_index: HashMap<Weight, usize>,
    products: RwLock<HashMap<(usize, usize), Product>>,
}

impl std::fmt::Debug for SchurAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S_{}({}, {})", self.ring, self.n, self.d)
    }
}

impl SchurAlgebra {
    pub fn new(ring: RingSpec, n: usize, d: usize) -> Arc<Self> {
        let basis = sym_basis(n, n, d);
        let index = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let weights = compositions(n, d);
        let weight_index: HashMap<Weight, usize> =
            weights.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let cod_w = basis
            .iter()
            .map(|m| weight_index[&Weight::new(m.cod_marginal(n))])
            .collect();
        let dom_w = basis
            .iter()
            .map(|m| weight_index[&Weight::new(m.dom_marginal(n))])
            .collect();
        Arc::new(SchurAlgebra {
            ring,
            n,
            d,
            basis,
            index,
            cod_w,
            dom_w,
            weights,
            weight_index,
            products: RwLock::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn expected_dim(n: usize, d: usize) -> usize {
        binomial(n * n + d - 1, d)
    }

    pub fn basis(&self) -> &[Multiset] {
        &self.basis
    }

    pub fn index_of(&self, m: &Multiset) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn label(&self, k: usize) -> String {
        self.basis[k].label()
    }

    /// `Λ(n, d)` in the canonical order.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight_index(&self, w: &Weight) -> Option<usize> {
        self.weight_index.get(w).copied()
    }

    /// Index into [`weights`](Self::weights) of the codomain marginal of basis element `k`.
    pub fn cod_weight(&self, k: usize) -> usize {
        self.cod_w[k]
    }

    pub fn dom_weight(&self, k: usize) -> usize {
        self.dom_w[k]
    }

    /// Basis index of `e_λ`.
    pub fn idempotent(&self, w: usize) -> usize {
        self.index[&diagonal_multiset(&self.weights[w])]
    }

    pub fn check_weight(&self, parts: &[usize]) -> Result<Weight> {
        Weight::checked(parts.to_vec(), self.n, self.d)
    }

    /// Index of `dualize(ξ_k)`.
    pub fn dual_index(&self, k: usize) -> usize {
        self.index[&self.basis[k].dualized()]
    }

    /// Structure constants of `ξ_a ξ_b`.
    pub fn mul_basis(&self, a: usize, b: usize) -> Product {
        if self.dom_w[a] != self.cod_w[b] {
            return Arc::new(Vec::new());
        }
        if let Some(p) = self.products.read().unwrap().get(&(a, b)) {
            return p.clone();
        }
        let mut v: Vec<(usize, Scalar)> = compose_basis(&self.basis[a], &self.basis[b])
            .into_iter()
            .map(|(m, c)| (self.index[&m], self.ring.from_i64(c as i64)))
            .filter(|(_, c)| !self.ring.is_zero(c))
            .collect();
        v.sort_by_key(|e| e.0);
        let p = Arc::new(v);
        self.products.write().unwrap().insert((a, b), p.clone());
        p
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let ring = self.ring;
        let mut out = vec![ring.zero(); self.dim()];
        for (a, ca) in x.iter().enumerate().filter(|(_, c)| !ring.is_zero(c)) {
            for (b, cb) in y.iter().enumerate().filter(|(_, c)| !ring.is_zero(c)) {
                let c = ring.mul(ca, cb);
                for (k, s) in self.mul_basis(a, b).iter() {
                    out[*k] = ring.add(&out[*k], &ring.mul(&c, s));
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut v = vec![self.ring.zero(); self.dim()];
        for w in 0..self.weights.len() {
            v[self.idempotent(w)] = self.ring.one();
        }
        v
    }

    pub fn basis_vector(&self, k: usize) -> Vec<Scalar> {
        let mut v = vec![self.ring.zero(); self.dim()];
        v[k] = self.ring.one();
        v
    }

    pub fn to_vector(&self, t: &SymTensor) -> Result<Vec<Scalar>> {
        if t.dom() != self.n || t.cod() != self.n || t.degree() != self.d || t.ring() != self.ring {
            return Err(Error::ShapeMismatch(format!("{t:?} is not in {self:?}")));
        }
        Ok(t.to_vector(&self.index, self.dim()))
    }

    pub fn to_tensor(&self, v: &[Scalar]) -> SymTensor {
        SymTensor::from_terms(
            self.ring,
            self.d,
            self.n,
            self.n,
            v.iter()
                .enumerate()
                .filter(|(_, c)| !self.ring.is_zero(c))
                .map(|(k, c)| (self.basis[k].clone(), c.clone())),
        )
        .unwrap()
    }

    /// Basis indices of the generators `E_ij^{(r)} e_λ` (`i ≠ j`, `1 ≤ r ≤ λ_j`) and `e_λ`.
    pub fn generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, lam) in self.weights.iter().enumerate() {
            out.push(self.idempotent(w));
            for i in 0..self.n {
                for j in 0..self.n {
                    if i == j {
                        continue;
                    }
                    for r in 1..=lam.parts[j] {
                        let mut pairs = vec![(i, j); r];
                        for (k, &p) in lam.parts.iter().enumerate() {
                            let c = if k == j { p - r } else { p };
                            pairs.extend(std::iter::repeat((k, k)).take(c));
                        }
                        out.push(self.index[&Multiset::new(pairs)]);
                    }
                }
            }
        }
        out
    }

    /// Full multiplication table as the matrices of left multiplication.
    pub fn left_regular(&self) -> Vec<ExactMatrix> {
        let dim = self.dim();
        (0..dim)
            .map(|a| {
                let mut trip = Vec::new();
                for b in 0..dim {
                    for (k, c) in self.mul_basis(a, b).iter() {
                        trip.push((*k, b, c.clone()));
                    }
                }
                ExactMatrix::from_triplets(self.ring, dim, dim, trip)
            })
            .collect()
    }

    /// Checks associativity on all basis triples.
    pub fn check_associative(&self) -> bool {
        let dim = self.dim();
        for a in 0..dim {
            for b in 0..dim {
                let ab = self.mul_basis(a, b);
                if ab.is_empty() {
                    continue;
                }
                for c in 0..dim {
                    if self.dom_w[b] != self.cod_w[c] {
                        continue;
                    }
                    let x = self.basis_vector(a);
                    let bc = self.mul(&self.basis_vector(b), &self.basis_vector(c));
                    let mut abv = vec![self.ring.zero(); dim];
                    for (k, s) in ab.iter() {
                        abv[*k] = s.clone();
                    }
                    if self.mul(&abv, &self.basis_vector(c)) != self.mul(&x, &bc) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
