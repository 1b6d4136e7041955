use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::free::{
    day_tensor_free, day_tensor_mor, eval_free, eval_morphism, FreeFunctor, FreeSummand,
    FunctorMorphism, MorphismJson,
};
use super::generators::{weight_generators, WeightGenerator};
use super::piece::{Piece, Side};
use crate::error::{Error, Result};
use crate::ring::{kernel_basis, ExactMatrix};
use crate::schur::{SchurAlgebra, SchurModule};

/// The summand `Γ^{d,k^n} e_λ`, whose value at `k^n` is `S(n, d) e_λ`.
pub fn weight_summand(alg: &SchurAlgebra, w: usize) -> FreeSummand {
    let e = alg.to_tensor(&alg.basis_vector(alg.idempotent(w)));
    FreeSummand { v: alg.n(), idem: Some(e) }
}

pub fn projective_functor(alg: &SchurAlgebra, weights: &[usize]) -> Result<FreeFunctor> {
    FreeFunctor::new(alg.ring(), alg.d(), weights.iter().map(|&w| weight_summand(alg, w)).collect())
}

/// Matrix of `⊕ S e_{λ_k} → M`, `a e_{λ_k} ↦ a x_k`.
pub fn cover_matrix(m: &SchurModule, gens: &[WeightGenerator]) -> ExactMatrix {
    let alg = m.algebra();
    let mut cols = Vec::new();
    for g in gens {
        for b in (0..alg.dim()).filter(|&b| alg.dom_weight(b) == g.weight) {
            cols.push(m.action(b).mul_vec(&g.vector));
        }
    }
    ExactMatrix::from_columns(m.ring(), m.rank(), &cols)
}

/// A free cover `P → M` by summands `S e_λ`; returns `P` and the matrix of `P(k^n) → M`.
pub fn free_cover(m: &SchurModule) -> Result<(FreeFunctor, Vec<usize>, ExactMatrix)> {
    let gens = weight_generators(m)?;
    let weights: Vec<usize> = gens.iter().map(|g| g.weight).collect();
    let p = projective_functor(m.algebra(), &weights)?;
    Ok((p, weights, cover_matrix(m, &gens)))
}

/// The morphism `⊕ S e_{μ_j} → target` sending the generator `e_{μ_j}` to the
/// given vectors of `target(k^n)`. All summands of `target` must be of the
/// form `S e_λ`.
pub fn morphism_from_vectors(
    alg: &SchurAlgebra,
    target_weights: &[usize],
    vectors: &[WeightGenerator],
) -> Result<FunctorMorphism> {
    let target = projective_functor(alg, target_weights)?;
    let source = projective_functor(alg, &vectors.iter().map(|g| g.weight).collect::<Vec<_>>())?;
    let ring = alg.ring();
    let mut entries = vec![Vec::new(); target_weights.len()];
    for g in vectors {
        let mut off = 0;
        for (i, &w) in target_weights.iter().enumerate() {
            let mut y = vec![ring.zero(); alg.dim()];
            for b in (0..alg.dim()).filter(|&b| alg.dom_weight(b) == w) {
                y[b] = g.vector[off].clone();
                off += 1;
            }
            entries[i].push(alg.to_tensor(&y));
        }
    }
    FunctorMorphism::new(source, target, entries)
}

/// A functor given as the cokernel of a morphism of free functors `P1 → P0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedFunctor {
    rel: FunctorMorphism,
}

impl PresentedFunctor {
    pub fn new(rel: FunctorMorphism) -> Self {
        PresentedFunctor { rel }
    }

    pub fn relation(&self) -> &FunctorMorphism {
        &self.rel
    }

    pub fn generators(&self) -> &FreeFunctor {
        &self.rel.target
    }

    pub fn relations(&self) -> &FreeFunctor {
        &self.rel.source
    }

    /// The value at `k^n` as an `S(n, d)`-module.
    pub fn eval(&self, alg: &Arc<SchurAlgebra>) -> Result<SchurModule> {
        let p0 = eval_free(&self.rel.target, alg)?;
        p0.cokernel_of(&eval_morphism(&self.rel, alg)?, None)
    }
}

/// A presentation `P1 → P0 → M → 0` by summands `S e_λ`.
pub fn presentation_from_module(m: &SchurModule) -> Result<PresentedFunctor> {
    let alg = m.algebra();
    if alg.n() < alg.d() {
        return Err(Error::RequiresNGeqD { n: alg.n(), d: alg.d() });
    }
    let (p0, w0, c0) = free_cover(m)?;
    let kb = kernel_basis(&c0);
    let k = eval_free(&p0, alg)?.submodule(&kb, None)?;
    let gens: Vec<WeightGenerator> = weight_generators(&k)?
        .into_iter()
        .map(|g| WeightGenerator { weight: g.weight, vector: kb.mul_vec(&g.vector) })
        .collect();
    Ok(PresentedFunctor::new(morphism_from_vectors(alg, &w0, &gens)?))
}

/// `X ⊗ Y` on presentations: `P0⊗Q0` modulo `P1⊗Q0 + P0⊗Q1`.
pub fn day_tensor(x: &PresentedFunctor, y: &PresentedFunctor) -> Result<PresentedFunctor> {
    let (phi, psi) = (&x.rel, &y.rel);
    let a = day_tensor_mor(phi, &FunctorMorphism::identity(&psi.target))?;
    let b = day_tensor_mor(&FunctorMorphism::identity(&phi.target), psi)?;
    let rel = a.hconcat(&b)?;
    debug_assert_eq!(rel.target, day_tensor_free(&phi.target, &psi.target)?);
    Ok(PresentedFunctor::new(rel))
}

fn pieces(f: &FreeFunctor, y: &SchurModule, side: Side) -> Result<Vec<Piece>> {
    f.summands().iter().map(|s| Piece::new(y, s.v, s.idem.as_ref(), side, None)).collect()
}

fn stacked(ring: crate::ring::RingSpec, rows: &[usize], cols: &[usize]) -> ExactMatrix {
    ExactMatrix::zeros(ring, rows.iter().sum(), cols.iter().sum())
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut o = vec![0];
    for d in dims {
        o.push(o.last().unwrap() + d);
    }
    o
}

/// Matrix of `φ ⊗ Y` between sums of tensor pieces.
pub(crate) fn tensor_matrix(
    phi: &FunctorMorphism,
    src: &[Piece],
    tgt: &[Piece],
) -> Result<ExactMatrix> {
    let ring = phi.source.ring();
    let sd: Vec<usize> = src.iter().map(|p| p.module().rank()).collect();
    let td: Vec<usize> = tgt.iter().map(|p| p.module().rank()).collect();
    let (so, to) = (offsets(&sd), offsets(&td));
    let mut out = stacked(ring, &td, &sd);
    for (i, t) in tgt.iter().enumerate() {
        for (j, s) in src.iter().enumerate() {
            let eta = phi.entry(i, j);
            if eta.is_zero() {
                continue;
            }
            out.add_block(to[i], so[j], &s.induced(t, eta)?);
        }
    }
    Ok(out)
}

/// Matrix of `Hom(φ, Y)` from the pieces of the target to those of the source.
pub(crate) fn hom_matrix(
    phi: &FunctorMorphism,
    src: &[Piece],
    tgt: &[Piece],
) -> Result<ExactMatrix> {
    let ring = phi.source.ring();
    let sd: Vec<usize> = src.iter().map(|p| p.module().rank()).collect();
    let td: Vec<usize> = tgt.iter().map(|p| p.module().rank()).collect();
    let (so, to) = (offsets(&sd), offsets(&td));
    let mut out = stacked(ring, &sd, &td);
    for (i, t) in tgt.iter().enumerate() {
        for (j, s) in src.iter().enumerate() {
            let eta = phi.entry(i, j);
            if eta.is_zero() {
                continue;
            }
            out.add_block(so[j], to[i], &t.induced(s, eta)?);
        }
    }
    Ok(out)
}

pub(crate) fn sum_module(alg: &Arc<SchurAlgebra>, ps: &[Piece]) -> SchurModule {
    let mods: Vec<&SchurModule> = ps.iter().map(|p| p.module()).collect();
    SchurModule::direct_sum(alg, &mods)
}

/// `X ⊗ Y` for a presented `X` and a module `Y`, computed inside `Y(k^{n v})`.
pub fn tensor_with_module(x: &PresentedFunctor, y: &SchurModule) -> Result<SchurModule> {
    let alg = y.algebra();
    let (s, t) = (pieces(x.relations(), y, Side::Tensor)?, pieces(x.generators(), y, Side::Tensor)?);
    let f = tensor_matrix(&x.rel, &s, &t)?;
    sum_module(alg, &t).cokernel_of(&f, None)
}

/// The internal `Hom(X, Y)` for a presented `X` and a module `Y`.
pub fn internal_hom(x: &PresentedFunctor, y: &SchurModule) -> Result<SchurModule> {
    let alg = y.algebra();
    let (s, t) = (pieces(x.relations(), y, Side::Hom)?, pieces(x.generators(), y, Side::Hom)?);
    let f = hom_matrix(&x.rel, &s, &t)?;
    sum_module(alg, &t).kernel_of(&f, None)
}

/// The Day tensor of two modules, through presentations of both.
pub fn day_tensor_modules(x: &SchurModule, y: &SchurModule) -> Result<SchurModule> {
    x.same_algebra(y)?;
    let t = day_tensor(&presentation_from_module(x)?, &presentation_from_module(y)?)?;
    t.eval(x.algebra())
}

/// `X°`, computed after evaluation.
pub fn kuhn_dual_presented(x: &PresentedFunctor, alg: &Arc<SchurAlgebra>) -> Result<SchurModule> {
    Ok(x.eval(alg)?.kuhn_dual())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedJson {
    pub relation: MorphismJson,
}

impl PresentedJson {
    pub fn from_presented(x: &PresentedFunctor) -> Self {
        PresentedJson { relation: MorphismJson::from_morphism(&x.rel) }
    }

    pub fn to_presented(&self) -> Result<PresentedFunctor> {
        Ok(PresentedFunctor::new(self.relation.to_morphism()?))
    }
}
