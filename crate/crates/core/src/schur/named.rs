//! The standard functors evaluated at `k^n`, realized as subquotients of
//! the tensor power `(k^n)^{⊗d}` (or as left ideals of the algebra).

use std::collections::HashMap;
use std::sync::Arc;

use super::{SchurAlgebra, SchurModule};
use crate::divided_powers::{arrangements, Multiset, Weight};
use crate::error::{Error, Result};
use crate::ring::linalg::{image_basis, rref, solve, ColumnSpace};
use crate::ring::{kernel_basis, ExactMatrix, RingSpec};

pub(crate) fn word_index(w: &[usize], n: usize) -> usize {
    w.iter().fold(0, |acc, &x| acc * n + x)
}

pub(crate) fn pow(n: usize, d: usize) -> usize {
    (0..d).fold(1, |a, _| a * n)
}

/// Action of a basis multiset on `(k^n)^{⊗d}`: the sum over its arrangements `a`
/// of the elementary maps `e_{a.j} ↦ e_{a.i}`.
pub(crate) fn tensor_action(ring: RingSpec, n: usize, m: &Multiset) -> ExactMatrix {
    let d = m.len();
    let dim = pow(n, d);
    let trip: Vec<_> = m
        .arrangements()
        .into_iter()
        .map(|a| {
            let i: Vec<usize> = a.iter().map(|p| p.0).collect();
            let j: Vec<usize> = a.iter().map(|p| p.1).collect();
            (word_index(&i, n), word_index(&j, n), ring.one())
        })
        .collect();
    ExactMatrix::from_triplets(ring, dim, dim, trip)
}

/// Sorted `r`-multisets over `[n]`.
pub(crate) fn multisets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, start: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for s in start..n {
            cur.push(s);
            rec(n, s, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, r, &mut Vec::new(), &mut out);
    out
}

/// Strictly increasing `r`-tuples over `[n]`.
pub(crate) fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    multisets(n, r).into_iter().filter(|s| s.windows(2).all(|w| w[0] < w[1])).collect()
}

fn block_ranges(parts: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut s = 0;
    for &p in parts {
        out.push(s..s + p);
        s += p;
    }
    out
}

fn tuples(lists: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for l in lists {
        let mut next = Vec::new();
        for prefix in &out {
            for item in l {
                let mut w = prefix.clone();
                w.extend_from_slice(item);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn sign_of_sort(w: &[usize]) -> Option<i64> {
    let mut inv = 0;
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if w[a] == w[b] {
                return None;
            }
            if w[a] > w[b] {
                inv += 1;
            }
        }
    }
    Some(if inv % 2 == 0 { 1 } else { -1 })
}

/// `Γ^{λ_1} ⊗ … ↪ (k^n)^{⊗d}`, blockwise orbit sums.
pub(crate) fn gamma_inclusion(ring: RingSpec, n: usize, parts: &[usize]) -> ExactMatrix {
    let d: usize = parts.iter().sum();
    let lists: Vec<Vec<Vec<usize>>> = parts.iter().map(|&p| multisets(n, p)).collect();
    let cols = tuples(&lists);
    let mut trip = Vec::new();
    for (c, t) in cols.iter().enumerate() {
        let per_block: Vec<Vec<Vec<usize>>> =
            block_ranges(parts).into_iter().map(|r| arrangements(&t[r])).collect();
        for w in tuples(&per_block) {
            trip.push((word_index(&w, n), c, ring.one()));
        }
    }
    ExactMatrix::from_triplets(ring, pow(n, d), cols.len(), trip)
}

/// `Λ^{λ_1} ⊗ … → (k^n)^{⊗d}`, blockwise signed sums over arrangements.
pub(crate) fn exterior_comultiplication(ring: RingSpec, n: usize, parts: &[usize]) -> ExactMatrix {
    let d: usize = parts.iter().sum();
    let lists: Vec<Vec<Vec<usize>>> = parts.iter().map(|&p| subsets(n, p)).collect();
    let cols = tuples(&lists);
    let mut trip = Vec::new();
    for (c, t) in cols.iter().enumerate() {
        let per_block: Vec<Vec<Vec<usize>>> =
            block_ranges(parts).into_iter().map(|r| arrangements(&t[r])).collect();
        for w in tuples(&per_block) {
            let s: i64 = block_ranges(parts)
                .into_iter()
                .map(|r| sign_of_sort(&w[r]).unwrap())
                .product();
            trip.push((word_index(&w, n), c, ring.from_i64(s)));
        }
    }
    ExactMatrix::from_triplets(ring, pow(n, d), cols.len(), trip)
}

fn all_words(n: usize, d: usize) -> Vec<Vec<usize>> {
    let lists: Vec<Vec<Vec<usize>>> = (0..d).map(|_| (0..n).map(|x| vec![x]).collect()).collect();
    tuples(&lists)
}

/// `(k^n)^{⊗d} ↠ S^{λ_1} ⊗ …`, blockwise multiplication.
pub(crate) fn symmetric_projection(ring: RingSpec, n: usize, parts: &[usize]) -> ExactMatrix {
    let d: usize = parts.iter().sum();
    let lists: Vec<Vec<Vec<usize>>> = parts.iter().map(|&p| multisets(n, p)).collect();
    let rows = tuples(&lists);
    let index: HashMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(k, r)| (r, k)).collect();
    let mut trip = Vec::new();
    for w in all_words(n, d) {
        let mut s = Vec::with_capacity(d);
        for r in block_ranges(parts) {
            let mut b = w[r].to_vec();
            b.sort_unstable();
            s.extend(b);
        }
        trip.push((index[&s], word_index(&w, n), ring.one()));
    }
    ExactMatrix::from_triplets(ring, rows.len(), pow(n, d), trip)
}

/// `(k^n)^{⊗d} ↠ Λ^{λ_1} ⊗ …`: sign of the sorting permutation, or zero on a repeat.
pub(crate) fn exterior_projection(ring: RingSpec, n: usize, parts: &[usize]) -> ExactMatrix {
    let d: usize = parts.iter().sum();
    let lists: Vec<Vec<Vec<usize>>> = parts.iter().map(|&p| subsets(n, p)).collect();
    let rows = tuples(&lists);
    let index: HashMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(k, r)| (r, k)).collect();
    let mut trip = Vec::new();
    'w: for w in all_words(n, d) {
        let mut s = Vec::with_capacity(d);
        let mut sign = 1;
        for r in block_ranges(parts) {
            let Some(sg) = sign_of_sort(&w[r.clone()]) else { continue 'w };
            sign *= sg;
            let mut b = w[r].to_vec();
            b.sort_unstable();
            s.extend(b);
        }
        trip.push((index[&s], word_index(&w, n), ring.from_i64(sign)));
    }
    ExactMatrix::from_triplets(ring, rows.len(), pow(n, d), trip)
}

/// The permutation of tensor factors with `out[t] = in[f[t]]`.
pub(crate) fn reorder(ring: RingSpec, n: usize, f: &[usize]) -> ExactMatrix {
    let d = f.len();
    let trip: Vec<_> = all_words(n, d)
        .into_iter()
        .map(|w| {
            let out: Vec<usize> = f.iter().map(|&s| w[s]).collect();
            (word_index(&out, n), word_index(&w, n), ring.one())
        })
        .collect();
    ExactMatrix::from_triplets(ring, pow(n, d), pow(n, d), trip)
}

pub fn tensor_power_module(alg: &Arc<SchurAlgebra>) -> Result<SchurModule> {
    let (ring, n) = (alg.ring(), alg.n());
    let action = alg.basis().iter().map(|m| tensor_action(ring, n, m)).collect();
    SchurModule::new(alg.clone(), pow(n, alg.d()), action, Some("⊗^d".into()))
}

/// The image of `U` (columns in the tensor power) in the quotient given by
/// `q`, with the induced action. Both `U` and `ker q` are checked to be stable.
pub(crate) fn tensor_subquotient(
    alg: &Arc<SchurAlgebra>,
    u: &ExactMatrix,
    q: &ExactMatrix,
    label: String,
) -> Result<SchurModule> {
    let (ring, n) = (alg.ring(), alg.n());
    let gens = alg.generators();
    let t_act: HashMap<usize, ExactMatrix> =
        gens.iter().map(|&g| (g, tensor_action(ring, n, &alg.basis()[g]))).collect();
    let ubasis = image_basis(u);
    let ucs = ColumnSpace::new(ubasis.clone());
    let ker = kernel_basis(q);
    for &g in &gens {
        let a = &t_act[&g];
        if ucs.coords_matrix(&a.mul(&ubasis)).is_none() {
            return Err(Error::InvariantViolation(format!(
                "{label}: subspace not stable under {}",
                alg.label(g)
            )));
        }
        if !q.mul(a).mul(&ker).is_zero() {
            return Err(Error::InvariantViolation(format!(
                "{label}: quotient not compatible with {}",
                alg.label(g)
            )));
        }
    }
    let x = q.mul(&ubasis);
    // basis of the image and preimages in U
    let (b, pre) = if ring.is_field() {
        let piv = rref(&x).unwrap().pivots;
        (x.select_cols(&piv), ubasis.select_cols(&piv))
    } else {
        let b = image_basis(&x);
        let cols: Vec<Vec<_>> =
            b.columns().iter().map(|c| solve(&x, c).expect("image lattice")).collect();
        let c = ExactMatrix::from_columns(ring, x.cols(), &cols);
        (b, ubasis.mul(&c))
    };
    let bcs = ColumnSpace::new(b.clone());
    let action = alg
        .basis()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let a = t_act.get(&k).cloned().unwrap_or_else(|| tensor_action(ring, n, m));
            bcs.coords_matrix(&q.mul(&a).mul(&pre)).expect("induced action leaves the image")
        })
        .collect();
    SchurModule::new(alg.clone(), b.cols(), action, Some(label))
}

pub fn regular_module(alg: &Arc<SchurAlgebra>) -> Result<SchurModule> {
    SchurModule::new(alg.clone(), alg.dim(), alg.left_regular(), Some("S(n,d)".into()))
}

/// `Γ^λ = A·e_λ`, spanned by the basis elements with domain marginal `λ`.
pub fn gamma_weight_module(alg: &Arc<SchurAlgebra>, lambda: &[usize]) -> Result<SchurModule> {
    let w = alg.check_weight(lambda)?;
    let wi = alg.weight_index(&w).unwrap();
    let cols: Vec<usize> = (0..alg.dim()).filter(|&k| alg.dom_weight(k) == wi).collect();
    let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(p, &k)| (k, p)).collect();
    let ring = alg.ring();
    let action = (0..alg.dim())
        .map(|a| {
            let mut trip = Vec::new();
            for (p, &b) in cols.iter().enumerate() {
                for (k, c) in alg.mul_basis(a, b).iter() {
                    trip.push((pos[k], p, c.clone()));
                }
            }
            ExactMatrix::from_triplets(ring, cols.len(), cols.len(), trip)
        })
        .collect();
    SchurModule::new(alg.clone(), cols.len(), action, Some(format!("Γ^{}", w.label())))
}

fn positive(lambda: &[usize]) -> Vec<usize> {
    lambda.iter().copied().filter(|&p| p > 0).collect()
}

pub fn lambda_weight_module(alg: &Arc<SchurAlgebra>, lambda: &[usize]) -> Result<SchurModule> {
    let w = alg.check_weight(lambda)?;
    let (ring, n) = (alg.ring(), alg.n());
    let t = ExactMatrix::identity(ring, pow(n, alg.d()));
    let q = exterior_projection(ring, n, &positive(lambda));
    tensor_subquotient(alg, &t, &q, format!("Λ^{}", w.label()))
}

pub fn symmetric_weight_module(alg: &Arc<SchurAlgebra>, lambda: &[usize]) -> Result<SchurModule> {
    let w = alg.check_weight(lambda)?;
    let (ring, n) = (alg.ring(), alg.n());
    let t = ExactMatrix::identity(ring, pow(n, alg.d()));
    let q = symmetric_projection(ring, n, &positive(lambda));
    tensor_subquotient(alg, &t, &q, format!("S^{}", w.label()))
}

/// `Γ^λ` realized inside the tensor power (isomorphic to [`gamma_weight_module`]).
pub fn gamma_tensor_module(alg: &Arc<SchurAlgebra>, lambda: &[usize]) -> Result<SchurModule> {
    let w = alg.check_weight(lambda)?;
    let (ring, n) = (alg.ring(), alg.n());
    let u = gamma_inclusion(ring, n, &positive(lambda));
    let q = ExactMatrix::identity(ring, pow(n, alg.d()));
    tensor_subquotient(alg, &u, &q, format!("Γ^{}", w.label()))
}

fn pad(alg: &SchurAlgebra, e: usize) -> Result<Vec<usize>> {
    if e != alg.d() {
        return Err(Error::ShapeMismatch(format!("degree {e} in {alg:?}")));
    }
    let mut p = vec![0; alg.n()];
    if alg.n() == 0 {
        return Err(Error::WeightOutOfRange(vec![e], 0, alg.d()));
    }
    p[0] = e;
    Ok(p)
}

pub fn exterior_module(alg: &Arc<SchurAlgebra>, e: usize) -> Result<SchurModule> {
    Ok(lambda_weight_module(alg, &pad(alg, e)?)?.with_label(format!("Λ^{e}")))
}

pub fn symmetric_module(alg: &Arc<SchurAlgebra>, e: usize) -> Result<SchurModule> {
    Ok(symmetric_weight_module(alg, &pad(alg, e)?)?.with_label(format!("S^{e}")))
}

pub fn divided_module(alg: &Arc<SchurAlgebra>, e: usize) -> Result<SchurModule> {
    Ok(gamma_weight_module(alg, &pad(alg, e)?)?.with_label(format!("Γ^{e}")))
}

fn partition(alg: &SchurAlgebra, lambda: &[usize]) -> Result<Weight> {
    let w = Weight::new(positive(lambda));
    if !Weight::new(lambda.to_vec()).is_partition() || w.degree() != alg.d() {
        return Err(Error::WeightOutOfRange(lambda.to_vec(), lambda.len(), alg.d()));
    }
    Ok(w)
}

fn inverse_perm(f: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; f.len()];
    for (i, &x) in f.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Schur module `S_λ`: image of `Λ^{λ'} → ⊗^d → ⊗^d → S^λ`.
pub fn schur_module(alg: &Arc<SchurAlgebra>, lambda: &[usize]) -> Result<SchurModule> {
    let lam = partition(alg, lambda)?;
    let conj = lam.conjugate();
    let (ring, n) = (alg.ring(), alg.n());
    let delta = exterior_comultiplication(ring, n, &conj.parts);
    // column-reading order -> row-reading order
    let s = reorder(ring, n, &lam.row_to_col());
    let q = symmetric_projection(ring, n, &lam.parts);
    tensor_subquotient(alg, &s.mul(&delta), &q, format!("S_{}", lam.label()))
}

/// Weyl module `W_λ`: image of `Γ^λ → ⊗^d → ⊗^d → Λ^{λ'}`.
pub fn weyl_module(alg: &Arc<SchurAlgebra>, lambda: &[usize]) -> Result<SchurModule> {
    let lam = partition(alg, lambda)?;
    let conj = lam.conjugate();
    let (ring, n) = (alg.ring(), alg.n());
    let delta = gamma_inclusion(ring, n, &lam.parts);
    let s = reorder(ring, n, &inverse_perm(&lam.row_to_col()));
    let q = exterior_projection(ring, n, &conj.parts);
    tensor_subquotient(alg, &s.mul(&delta), &q, format!("W_{}", lam.label()))
}

/// Image of the canonical map `Γ^d → ⊗^d → S^d`.
pub fn frobenius_kernel_image(alg: &Arc<SchurAlgebra>) -> Result<SchurModule> {
    let (ring, n, d) = (alg.ring(), alg.n(), alg.d());
    let u = gamma_inclusion(ring, n, &[d]);
    let q = symmetric_projection(ring, n, &[d]);
    tensor_subquotient(alg, &u, &q, "im(Γ^d→S^d)".into())
}

/// The simple modules of degree 2 over a finite field, indexed by `(2)` and `(1,1)`.
pub fn simple_module(alg: &Arc<SchurAlgebra>, lambda: &[usize]) -> Result<SchurModule> {
    if alg.d() != 2 || !matches!(alg.ring(), RingSpec::PrimeField(_)) {
        return Err(Error::ShapeMismatch("simple modules are available for d = 2 over F_p".into()));
    }
    match positive(lambda).as_slice() {
        [2] => Ok(frobenius_kernel_image(alg)?.with_label("L(2)")),
        [1, 1] => Ok(exterior_module(alg, 2)?.with_label("L(1,1)")),
        _ => Err(Error::WeightOutOfRange(lambda.to_vec(), lambda.len(), 2)),
    }
}

/// The `𝔖_d`-representation on the weight space of `(1,…,1,0,…)`.
#[derive(Clone, Debug)]
pub struct SymmetricGroupRep {
    pub dim: usize,
    /// Permutations of `0..d` in lexicographic order.
    pub perms: Vec<Vec<usize>>,
    pub matrices: Vec<ExactMatrix>,
}

/// Basis index of `ξ_σ = {(σ(t), t)}`.
pub fn permutation_element(alg: &SchurAlgebra, sigma: &[usize]) -> usize {
    let m = Multiset::new(sigma.iter().enumerate().map(|(t, &s)| (s, t)).collect());
    alg.index_of(&m).expect("permutation outside the algebra")
}

pub fn symmetric_group_functor(m: &SchurModule) -> Result<SymmetricGroupRep> {
    let alg = m.algebra();
    let (n, d) = (alg.n(), alg.d());
    if n < d {
        return Err(Error::RequiresNGeqD { n, d });
    }
    let mut omega = vec![0; n];
    omega[..d].iter_mut().for_each(|x| *x = 1);
    let wi = alg.weight_index(&Weight::new(omega)).unwrap();
    let wb = m.weight_basis();
    let (off, dim) = wb.blocks[wi];
    let idx: Vec<usize> = (off..off + dim).collect();
    let perms = arrangements(&(0..d).collect::<Vec<_>>());
    let matrices = perms
        .iter()
        .map(|s| {
            let a = wb.pinv.mul(m.action(permutation_element(alg, s))).mul(&wb.p);
            a.select_rows(&idx).select_cols(&idx)
        })
        .collect();
    Ok(SymmetricGroupRep { dim, perms, matrices })
}
