use std::sync::Arc;

use super::complex::{ChainComplex, FreeComplex};
use super::derived::derived_tensor;
use super::homology::{homology, HomologyReport};
use crate::divided_powers::{compose, diagonal_multiset, positive_compositions, SymTensor};
use crate::error::{Error, Result};
use crate::functor::{FreeFunctor, FreeSummand, FunctorMorphism};
use crate::ring::{ExactMatrix, RingSpec};
use crate::schur::{exterior_module, is_isomorphic, symmetric_module, SchurAlgebra, SchurModule};

/// Sign rule used for the bar differentials, reported with every resolution.
pub const BAR_CONVENTION: &str =
    "term with p parts in degree p-d; d = sum_j (-1)^j Γ^d(s_j), s_j: k^(p+1) → k^p merging coordinates j, j+1 (0-based)";

/// `E_p = Σ e_λ` over the positive compositions `λ` of `d` with `p` parts.
pub fn positive_cut(ring: RingSpec, p: usize, d: usize) -> SymTensor {
    let terms = positive_compositions(p, d).into_iter().map(|w| (diagonal_multiset(&w), ring.one()));
    SymTensor::from_terms(ring, d, p, p, terms).unwrap()
}

// codiagonal k^(p+1) → k^p identifying coordinates j and j+1
fn merge(ring: RingSpec, p: usize, j: usize) -> ExactMatrix {
    let trip = (0..=p).map(|t| (if t <= j { t } else { t - 1 }, t, ring.one()));
    ExactMatrix::from_triplets(ring, p, p + 1, trip)
}

/// The normalized bar resolution of `Λ^d` by the functors
/// `Γ^{i_1} ⊗ ⋯ ⊗ Γ^{i_p} = Γ^{d,k^p} E_p`, in degrees `1−d, …, 0`.
pub fn bar_complex(ring: RingSpec, d: usize) -> Result<FreeComplex> {
    if d == 0 {
        return Err(Error::ShapeMismatch("degree must be positive".into()));
    }
    let cuts: Vec<SymTensor> = (1..=d).map(|p| positive_cut(ring, p, d)).collect();
    let terms: Result<Vec<FreeFunctor>> = cuts
        .iter()
        .enumerate()
        .map(|(i, e)| FreeFunctor::new(ring, d, vec![FreeSummand { v: i + 1, idem: Some(e.clone()) }]))
        .collect();
    let terms = terms?;
    let mut diffs = Vec::new();
    for p in 1..d {
        let mut acc = SymTensor::zero(ring, d, p + 1, p);
        for j in 0..p {
            let s = SymTensor::tensor_power(&merge(ring, p, j), d);
            let face = compose(&cuts[p - 1], &compose(&s, &cuts[p])?)?;
            let c = ring.from_i64(if j % 2 == 0 { 1 } else { -1 });
            acc = acc.add(&face.scale(&c))?;
        }
        diffs.push(FunctorMorphism::new(terms[p - 1].clone(), terms[p].clone(), vec![vec![acc]])?);
    }
    FreeComplex::new(1 - d as i64, terms, diffs)
}

/// A resolution with its evaluation at `k^n` and the homology used by the gate.
#[derive(Clone, Debug)]
pub struct KoszulResolution {
    pub complex: Option<FreeComplex>,
    pub evaluated: ChainComplex,
    pub homology: HomologyReport,
    pub convention: &'static str,
}

fn gate(c: &ChainComplex, target: &SchurModule, what: &str) -> Result<HomologyReport> {
    let h = homology(c, true)?;
    if !h.concentrated_in(0) {
        return Err(Error::ExactnessFailure(format!("{what}: homology in degrees {:?}", h.support())));
    }
    let h0 = h.module(0).expect("degree 0 is present");
    let torsion_free = h.at(0).is_some_and(|x| x.torsion.is_empty());
    if !torsion_free || h0.rank() != target.rank() || !is_isomorphic(h0, target)?.is_iso() {
        return Err(Error::ExactnessFailure(format!("{what}: degree 0 is not the expected module")));
    }
    Ok(h)
}

/// The bar resolution of `Λ^d` evaluated at `k^n`; fails unless it is exact
/// away from degree 0 with `H^0 ≅ Λ^d(k^n)`.
pub fn koszul_resolution_exterior(ring: RingSpec, d: usize, n: usize) -> Result<KoszulResolution> {
    let c = bar_complex(ring, d)?;
    let alg = SchurAlgebra::new(ring, n, d);
    let ev = c.eval(&alg)?;
    let h = gate(&ev, &exterior_module(&alg, d)?, "exterior bar resolution")?;
    Ok(KoszulResolution { complex: Some(c), evaluated: ev, homology: h, convention: BAR_CONVENTION })
}

/// The resolution of `S^d` by sums of `Λ^{i_1} ⊗ ⋯ ⊗ Λ^{i_p}`, obtained as
/// `Λ^d ⊗` the bar resolution of `Λ^d`.
pub fn koszul_resolution_symmetric(ring: RingSpec, d: usize, n: usize) -> Result<KoszulResolution> {
    let alg = SchurAlgebra::new(ring, n, d);
    let ev = symmetric_bar(ring, d, &alg)?;
    let h = gate(&ev, &symmetric_module(&alg, d)?, "symmetric bar resolution")?;
    Ok(KoszulResolution { complex: None, evaluated: ev, homology: h, convention: BAR_CONVENTION })
}

// Λ^d ⊗ (bar resolution), formed where n ≥ d and restricted to k^n
fn symmetric_bar(ring: RingSpec, d: usize, alg: &Arc<SchurAlgebra>) -> Result<ChainComplex> {
    let bar = bar_complex(ring, d)?;
    if alg.n() >= d {
        return derived_tensor(&bar, &exterior_module(alg, d)?);
    }
    let big = SchurAlgebra::new(ring, d, d);
    derived_tensor(&bar, &exterior_module(&big, d)?)?.restrict(alg)
}

fn last_two(c: &ChainComplex) -> Result<ChainComplex> {
    if c.lo() == 0 {
        return Ok(c.clone());
    }
    let objs = vec![c.object(-1).unwrap().clone(), c.object(0).unwrap().clone()];
    ChainComplex::new(c.algebra().clone(), -1, objs, vec![c.differential(-1).unwrap().clone()])
}

fn check_cokernel(c: &ChainComplex, target: &SchurModule) -> Result<()> {
    let h = homology(c, true)?;
    let ok = h.module(0).is_some_and(|m| is_isomorphic(m, target).map(|v| v.is_iso()).unwrap_or(false));
    if !ok {
        return Err(Error::ExactnessFailure("presentation has the wrong cokernel".into()));
    }
    Ok(())
}

/// `⊕ V^{⊗i−1} ⊗ Γ²V ⊗ V^{⊗d−i−1} → V^{⊗d}` at `V = k^n`, with cokernel `Λ^d`.
pub fn presentation_exterior(ring: RingSpec, d: usize, n: usize) -> Result<ChainComplex> {
    let alg: Arc<SchurAlgebra> = SchurAlgebra::new(ring, n, d);
    let c = last_two(&bar_complex(ring, d)?.eval(&alg)?)?;
    check_cokernel(&c, &exterior_module(&alg, d)?)?;
    Ok(c)
}

/// `⊕ V^{⊗i−1} ⊗ Λ²V ⊗ V^{⊗d−i−1} → V^{⊗d}` at `V = k^n`, with cokernel `S^d`.
pub fn presentation_symmetric(ring: RingSpec, d: usize, n: usize) -> Result<ChainComplex> {
    let alg = SchurAlgebra::new(ring, n, d);
    let c = last_two(&symmetric_bar(ring, d, &alg)?)?;
    check_cokernel(&c, &symmetric_module(&alg, d)?)?;
    Ok(c)
}
