use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::divided_powers::{
    compose, dualize, monoidal_tensor, sym_basis, Multiset, SymTensor, SymTensorJson,
};
use crate::error::{Error, Result};
use crate::ring::linalg::{image_basis, ColumnSpace};
use crate::ring::{ExactMatrix, RingSpec, Scalar};
use crate::schur::{SchurAlgebra, SchurModule};

use super::piece::diagonal_weights;

/// `Γ^{d,k^v} e`: the representable functor cut by an idempotent `e ∈ Γ^d End(k^v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSummand {
    pub v: usize,
    pub idem: Option<SymTensor>,
}

impl FreeSummand {
    pub fn whole(v: usize) -> Self {
        FreeSummand { v, idem: None }
    }

    /// The idempotent, with `None` read as the identity.
    pub fn idempotent(&self, ring: RingSpec, d: usize) -> SymTensor {
        self.idem.clone().unwrap_or_else(|| SymTensor::identity(ring, self.v, d))
    }
}

/// A finite direct sum of cut representable functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeFunctor {
    ring: RingSpec,
    d: usize,
    summands: Vec<FreeSummand>,
}

impl FreeFunctor {
    pub fn new(ring: RingSpec, d: usize, summands: Vec<FreeSummand>) -> Result<Self> {
        for s in &summands {
            if let Some(e) = &s.idem {
                if e.ring() != ring {
                    return Err(Error::RingMismatch(e.ring().name(), ring.name()));
                }
                if (e.dom(), e.cod(), e.degree()) != (s.v, s.v, d) {
                    return Err(Error::ShapeMismatch("idempotent of the wrong shape".into()));
                }
                if compose(e, e)? != *e {
                    return Err(Error::InvariantViolation("cut is not idempotent".into()));
                }
            }
        }
        Ok(FreeFunctor { ring, d, summands })
    }

    pub fn zero(ring: RingSpec, d: usize) -> Self {
        FreeFunctor { ring, d, summands: Vec::new() }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn summands(&self) -> &[FreeSummand] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn direct_sum(&self, other: &FreeFunctor) -> FreeFunctor {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        FreeFunctor { ring: self.ring, d: self.d, summands }
    }
}

/// A morphism of free functors in Yoneda form: the entry `(i, j)` lies in
/// `Γ^d Hom(W_i, V_j)` where `V_j` and `W_i` are the source and target
/// objects, and acts by precomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorMorphism {
    pub source: FreeFunctor,
    pub target: FreeFunctor,
    entries: Vec<Vec<SymTensor>>,
}

impl FunctorMorphism {
    pub fn new(
        source: FreeFunctor,
        target: FreeFunctor,
        entries: Vec<Vec<SymTensor>>,
    ) -> Result<Self> {
        let (ring, d) = (source.ring, source.d);
        if target.ring != ring || target.d != d {
            return Err(Error::ShapeMismatch("source and target differ in ring or degree".into()));
        }
        if entries.len() != target.len() || entries.iter().any(|r| r.len() != source.len()) {
            return Err(Error::ShapeMismatch("entry table has the wrong size".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            let t = &target.summands[i];
            for (j, x) in row.iter().enumerate() {
                let s = &source.summands[j];
                if (x.dom(), x.cod(), x.degree()) != (t.v, s.v, d) {
                    return Err(Error::ShapeMismatch(format!("entry ({i}, {j}) has the wrong shape")));
                }
                let cut = compose(&s.idempotent(ring, d), &compose(x, &t.idempotent(ring, d))?)?;
                if cut != *x {
                    return Err(Error::InvariantViolation(format!(
                        "entry ({i}, {j}) is not compatible with the cuts"
                    )));
                }
            }
        }
        Ok(FunctorMorphism { source, target, entries })
    }

    pub fn entry(&self, i: usize, j: usize) -> &SymTensor {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<SymTensor>] {
        &self.entries
    }

    pub fn zero(source: FreeFunctor, target: FreeFunctor) -> Self {
        let (ring, d) = (source.ring, source.d);
        let entries = target
            .summands
            .iter()
            .map(|t| source.summands.iter().map(|s| SymTensor::zero(ring, d, t.v, s.v)).collect())
            .collect();
        FunctorMorphism { source, target, entries }
    }

    pub fn identity(f: &FreeFunctor) -> Self {
        let (ring, d) = (f.ring, f.d);
        let entries = (0..f.len())
            .map(|i| {
                (0..f.len())
                    .map(|j| {
                        if i == j {
                            f.summands[i].idempotent(ring, d)
                        } else {
                            SymTensor::zero(ring, d, f.summands[i].v, f.summands[j].v)
                        }
                    })
                    .collect()
            })
            .collect();
        FunctorMorphism { source: f.clone(), target: f.clone(), entries }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FunctorMorphism) -> Result<FunctorMorphism> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("morphisms are not composable".into()));
        }
        let (ring, d) = (self.source.ring, self.source.d);
        let mut entries = Vec::with_capacity(self.target.len());
        for (h, row) in self.entries.iter().enumerate() {
            let mut out = Vec::with_capacity(first.source.len());
            for j in 0..first.source.len() {
                let mut acc = SymTensor::zero(
                    ring,
                    d,
                    self.target.summands[h].v,
                    first.source.summands[j].v,
                );
                for (g, psi) in row.iter().enumerate() {
                    acc = acc.add(&compose(&first.entries[g][j], psi)?)?;
                }
                out.push(acc);
            }
            entries.push(out);
        }
        Ok(FunctorMorphism { source: first.source.clone(), target: self.target.clone(), entries })
    }

    /// `[self | other]: source ⊕ other.source → target`.
    pub fn hconcat(&self, other: &FunctorMorphism) -> Result<FunctorMorphism> {
        if self.target != other.target {
            return Err(Error::ShapeMismatch("targets differ".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(FunctorMorphism {
            source: self.source.direct_sum(&other.source),
            target: self.target.clone(),
            entries,
        })
    }

    pub fn scale(&self, c: &Scalar) -> FunctorMorphism {
        let entries =
            self.entries.iter().map(|r| r.iter().map(|x| x.scale(c)).collect()).collect();
        FunctorMorphism { source: self.source.clone(), target: self.target.clone(), entries }
    }
}

/// `F(k^n)` for a single summand: basis multisets of `Γ^d Hom(k^v, k^n)`, cut.
#[derive(Clone, Debug)]
struct SummandSpace {
    basis: Vec<Multiset>,
    sel: Option<ColumnSpace>,
}

impl SummandSpace {
    fn new(s: &FreeSummand, ring: RingSpec, n: usize, d: usize) -> Result<Self> {
        let all = sym_basis(s.v, n, d);
        let Some(e) = &s.idem else {
            return Ok(SummandSpace { basis: all, sel: None });
        };
        if let Some(ws) = diagonal_weights(e) {
            let basis = all.into_iter().filter(|x| ws.contains(&x.dom_marginal(s.v))).collect();
            return Ok(SummandSpace { basis, sel: None });
        }
        let index = all.iter().enumerate().map(|(k, x)| (x.clone(), k)).collect();
        let cols: Result<Vec<Vec<Scalar>>> = all
            .iter()
            .map(|x| {
                let f = SymTensor::basis_element(ring, d, s.v, n, x.clone());
                Ok(compose(&f, e)?.to_vector(&index, all.len()))
            })
            .collect();
        let p = ExactMatrix::from_columns(ring, all.len(), &cols?);
        Ok(SummandSpace { basis: all, sel: Some(ColumnSpace::new(image_basis(&p))) })
    }

    fn dim(&self) -> usize {
        self.sel.as_ref().map_or(self.basis.len(), |c| c.dim())
    }

    fn index(&self) -> std::collections::HashMap<Multiset, usize> {
        self.basis.iter().enumerate().map(|(k, x)| (x.clone(), k)).collect()
    }

    // tensors spanning the space, one per coordinate
    fn vectors(&self, ring: RingSpec, v: usize, n: usize, d: usize) -> Vec<SymTensor> {
        match &self.sel {
            None => self
                .basis
                .iter()
                .map(|x| SymTensor::basis_element(ring, d, v, n, x.clone()))
                .collect(),
            Some(cs) => cs
                .basis()
                .columns()
                .into_iter()
                .map(|col| {
                    let terms = col
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !ring.is_zero(c))
                        .map(|(k, c)| (self.basis[k].clone(), c));
                    SymTensor::from_terms(ring, d, v, n, terms).unwrap()
                })
                .collect(),
        }
    }

    fn coords(&self, t: &SymTensor) -> Result<Vec<Scalar>> {
        let full = t.to_vector(&self.index(), self.basis.len());
        match &self.sel {
            None => Ok(full),
            Some(cs) => cs
                .coords(&full)
                .ok_or_else(|| Error::InvariantViolation("element outside the cut".into())),
        }
    }
}

fn spaces(f: &FreeFunctor, n: usize) -> Result<Vec<SummandSpace>> {
    f.summands.iter().map(|s| SummandSpace::new(s, f.ring, n, f.d)).collect()
}

/// `F(k^n)` as a module over `S(n, d)`, with `ξ` acting by postcomposition.
pub fn eval_free(f: &FreeFunctor, alg: &Arc<SchurAlgebra>) -> Result<SchurModule> {
    check_alg(f, alg)?;
    let (ring, n, d) = (f.ring, alg.n(), f.d);
    let sp = spaces(f, n)?;
    let mut blocks: Vec<Vec<ExactMatrix>> = vec![Vec::new(); alg.dim()];
    for (s, space) in f.summands.iter().zip(&sp) {
        let vecs = space.vectors(ring, s.v, n, d);
        for (k, blk) in blocks.iter_mut().enumerate() {
            let xi = SymTensor::basis_element(ring, d, n, n, alg.basis()[k].clone());
            let cols: Result<Vec<Vec<Scalar>>> =
                vecs.iter().map(|x| space.coords(&compose(&xi, x)?)).collect();
            blk.push(ExactMatrix::from_columns(ring, space.dim(), &cols?));
        }
    }
    let rank = sp.iter().map(|s| s.dim()).sum();
    let action = blocks.into_iter().map(|b| ExactMatrix::block_diag(ring, &b)).collect();
    SchurModule::new(alg.clone(), rank, action, None)
}

/// `φ(k^n)` between the evaluations of source and target.
pub fn eval_morphism(phi: &FunctorMorphism, alg: &Arc<SchurAlgebra>) -> Result<ExactMatrix> {
    check_alg(&phi.source, alg)?;
    let (ring, n, d) = (phi.source.ring, alg.n(), phi.source.d);
    let (ss, ts) = (spaces(&phi.source, n)?, spaces(&phi.target, n)?);
    let mut roff = vec![0];
    for t in &ts {
        roff.push(roff.last().unwrap() + t.dim());
    }
    let mut out = Vec::new();
    for (j, (s, space)) in phi.source.summands.iter().zip(&ss).enumerate() {
        for x in space.vectors(ring, s.v, n, d) {
            let mut col = vec![ring.zero(); *roff.last().unwrap()];
            for (i, t) in ts.iter().enumerate() {
                let y = compose(&x, &phi.entries[i][j])?;
                for (k, c) in t.coords(&y)?.into_iter().enumerate() {
                    col[roff[i] + k] = c;
                }
            }
            out.push(col);
        }
    }
    Ok(ExactMatrix::from_columns(ring, *roff.last().unwrap(), &out))
}

fn check_alg(f: &FreeFunctor, alg: &SchurAlgebra) -> Result<()> {
    if f.ring != alg.ring() {
        return Err(Error::RingMismatch(f.ring.name(), alg.ring().name()));
    }
    if f.d != alg.d() {
        return Err(Error::ShapeMismatch(format!("degree {} functor on {alg:?}", f.d)));
    }
    Ok(())
}

// `e_a ⊗ e_b`, or `e_a ⊗ e_b*` when `dual_b`; `None` if both are whole
fn tensor_opt(
    ring: RingSpec,
    d: usize,
    a: &FreeSummand,
    b: &FreeSummand,
    dual_b: bool,
) -> Result<Option<SymTensor>> {
    if a.idem.is_none() && b.idem.is_none() {
        return Ok(None);
    }
    let eb = b.idempotent(ring, d);
    let eb = if dual_b { dualize(&eb) } else { eb };
    Ok(Some(monoidal_tensor(&a.idempotent(ring, d), &eb)?))
}

/// `F ⊗ G` on free functors: `Γ^{d,V} ⊗ Γ^{d,W} = Γ^{d,V⊗W}`, summands `(i, j)` row-major.
pub fn day_tensor_free(f: &FreeFunctor, g: &FreeFunctor) -> Result<FreeFunctor> {
    let (ring, d) = (f.ring, f.d);
    let mut summands = Vec::new();
    for a in &f.summands {
        for b in &g.summands {
            summands.push(FreeSummand { v: a.v * b.v, idem: tensor_opt(ring, d, a, b, false)? });
        }
    }
    FreeFunctor::new(ring, d, summands)
}

pub fn day_tensor_mor(phi: &FunctorMorphism, psi: &FunctorMorphism) -> Result<FunctorMorphism> {
    let source = day_tensor_free(&phi.source, &psi.source)?;
    let target = day_tensor_free(&phi.target, &psi.target)?;
    let mut entries = Vec::new();
    for ra in &phi.entries {
        for rb in &psi.entries {
            let mut row = Vec::new();
            for x in ra {
                for y in rb {
                    row.push(monoidal_tensor(x, y)?);
                }
            }
            entries.push(row);
        }
    }
    FunctorMorphism::new(source, target, entries)
}

/// `Hom(F, G)` on free functors: `Hom(Γ^{d,V}, Γ^{d,W}) = Γ^{d, W⊗V*}`,
/// summands `(i, j)` with `i` over `F`.
pub fn internal_hom_free(f: &FreeFunctor, g: &FreeFunctor) -> Result<FreeFunctor> {
    let (ring, d) = (f.ring, f.d);
    let mut summands = Vec::new();
    for a in &f.summands {
        for b in &g.summands {
            summands.push(FreeSummand { v: a.v * b.v, idem: tensor_opt(ring, d, b, a, true)? });
        }
    }
    FreeFunctor::new(ring, d, summands)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub v: usize,
    pub idem: Option<SymTensorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeFunctorJson {
    pub ring: String,
    pub d: usize,
    pub summands: Vec<SummandJson>,
}

impl FreeFunctorJson {
    pub fn from_functor(f: &FreeFunctor) -> Self {
        FreeFunctorJson {
            ring: f.ring.name(),
            d: f.d,
            summands: f
                .summands
                .iter()
                .map(|s| SummandJson { v: s.v, idem: s.idem.as_ref().map(SymTensorJson::from_tensor) })
                .collect(),
        }
    }

    pub fn to_functor(&self) -> Result<FreeFunctor> {
        let ring = RingSpec::parse(&self.ring)?;
        let summands: Result<Vec<FreeSummand>> = self
            .summands
            .iter()
            .map(|s| {
                Ok(FreeSummand { v: s.v, idem: s.idem.as_ref().map(|e| e.to_tensor()).transpose()? })
            })
            .collect();
        FreeFunctor::new(ring, self.d, summands?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: FreeFunctorJson,
    pub target: FreeFunctorJson,
    pub entries: Vec<Vec<SymTensorJson>>,
}

impl MorphismJson {
    pub fn from_morphism(m: &FunctorMorphism) -> Self {
        MorphismJson {
            source: FreeFunctorJson::from_functor(&m.source),
            target: FreeFunctorJson::from_functor(&m.target),
            entries: m
                .entries
                .iter()
                .map(|r| r.iter().map(SymTensorJson::from_tensor).collect())
                .collect(),
        }
    }

    pub fn to_morphism(&self) -> Result<FunctorMorphism> {
        let entries: Result<Vec<Vec<SymTensor>>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_tensor()).collect())
            .collect();
        FunctorMorphism::new(self.source.to_functor()?, self.target.to_functor()?, entries?)
    }
}
