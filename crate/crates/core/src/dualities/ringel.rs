use std::sync::Arc;

use serde::Serialize;

use super::koszul::koszul_inverse;
use crate::divided_powers::dualize;
use crate::error::{Error, Result};
use crate::functor::{Piece, Side};
use crate::homological::ext_groups;
use crate::ring::{image_basis, ColumnSpace, ExactMatrix, RingSpec, Scalar};
use crate::schur::{
    exterior_module, hom_matrices, is_isomorphic, lambda_weight_module, IsoVerdict, SchurAlgebra,
    SchurModule,
};

/// The tilting module `T = Λ^d(k^n ⊗ −)` evaluated at `k^n`, with the map
/// `φ: S(n, d) → End(T)` induced by the Koszul functor on endomorphisms of
/// `Γ^{d,k^n}`, twisted by the transpose so that it is multiplicative.
#[derive(Clone, Debug)]
pub struct RingelData {
    pub t: SchurModule,
    /// A basis of `End_S(T)`.
    pub endo: Vec<ExactMatrix>,
    /// `phi[k]` is the image of the `k`-th basis element of `S(n, d)`.
    pub phi: Vec<ExactMatrix>,
    /// `T → ⊕_λ Λ^λ`.
    pub decomposition: ExactMatrix,
}

fn flatten(ms: &[ExactMatrix]) -> ExactMatrix {
    let (r, c) = ms[0].shape();
    let ring = ms[0].ring();
    let trip = ms
        .iter()
        .enumerate()
        .flat_map(|(k, m)| m.entries().map(move |(i, j, x)| (i * c + j, k, x.clone())).collect::<Vec<_>>());
    ExactMatrix::from_triplets(ring, r * c, ms.len(), trip)
}

fn combination(ring: RingSpec, basis: &[ExactMatrix], coeffs: &[Scalar]) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(ring, basis[0].rows(), basis[0].cols());
    for (b, c) in basis.iter().zip(coeffs) {
        if !ring.is_zero(c) {
            out = out.add(&b.scale(c));
        }
    }
    out
}

/// Builds `T` and `φ` and verifies that `φ` is a unital algebra isomorphism
/// onto `End_S(T)` and that `T ≅ ⊕_{λ∈Λ(n,d)} Λ^λ`.
pub fn ringel_data(ring: RingSpec, n: usize, d: usize) -> Result<RingelData> {
    if n < d {
        return Err(Error::RequiresNGeqD { n, d });
    }
    let alg = SchurAlgebra::new(ring, n, d);
    let lam = exterior_module(&alg, d)?;
    let piece = Piece::new(&lam, n, None, Side::Tensor, None)?;
    let t = piece.module().clone().with_label("T");
    let phi: Vec<ExactMatrix> = (0..alg.dim())
        .map(|k| piece.induced(&piece, &dualize(&alg.to_tensor(&alg.basis_vector(k)))))
        .collect::<Result<_>>()?;
    let fail = |m: String| Err(Error::InvariantViolation(m));
    for (k, p) in phi.iter().enumerate() {
        for g in alg.generators() {
            if p.mul(t.action(g)) != t.action(g).mul(p) {
                return fail(format!("phi({}) is not S-linear", alg.label(k)));
            }
        }
    }
    if !combination(ring, &phi, &alg.unit()).is_identity() {
        return fail("phi is not unital".into());
    }
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            let prod = alg.mul(&alg.basis_vector(a), &alg.basis_vector(b));
            if phi[a].mul(&phi[b]) != combination(ring, &phi, &prod) {
                return fail(format!("phi is not multiplicative on ({}, {})", alg.label(a), alg.label(b)));
            }
        }
    }
    let endo = hom_matrices(&t, &t)?;
    if endo.len() != alg.dim() || image_basis(&flatten(&phi)).cols() != alg.dim() {
        return fail("phi is not bijective".into());
    }
    let parts: Vec<SchurModule> =
        alg.weights().iter().map(|w| lambda_weight_module(&alg, &w.parts)).collect::<Result<_>>()?;
    let sum = SchurModule::direct_sum(&alg, &parts.iter().collect::<Vec<_>>());
    let decomposition = match is_isomorphic(&t, &sum)? {
        IsoVerdict::Iso(m) => m,
        _ => return fail("T is not the sum of the Λ^λ".into()),
    };
    Ok(RingelData { t, endo, phi, decomposition })
}

impl RingelData {
    pub fn algebra(&self) -> &Arc<SchurAlgebra> {
        self.t.algebra()
    }

    /// Structure constants of `End(T)` in the basis `endo`: entry `[i][j]`
    /// holds the coordinates of `endo[i] ∘ endo[j]`.
    pub fn structure_constants(&self) -> Result<Vec<Vec<Vec<Scalar>>>> {
        let cs = ColumnSpace::new(flatten(&self.endo));
        let mut out = Vec::new();
        for a in &self.endo {
            let mut row = Vec::new();
            for b in &self.endo {
                let p = flatten(&[a.mul(b)]);
                let c = cs.coords(&p.column(0)).ok_or_else(|| {
                    Error::InvariantViolation("End(T) is not closed under composition".into())
                })?;
                row.push(c);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// `Hom_S(T, M)` as an `S`-module through `φ`: `x·f = f ∘ φ(x^T)`.
    pub fn hom_from_t(&self, m: &SchurModule) -> Result<SchurModule> {
        let alg = self.algebra();
        let basis = hom_matrices(&self.t, m)?;
        if basis.is_empty() {
            return Ok(SchurModule::zero(alg.clone()));
        }
        let cs = ColumnSpace::new(flatten(&basis));
        let mut action = Vec::with_capacity(alg.dim());
        for k in 0..alg.dim() {
            let pk = &self.phi[alg.dual_index(k)];
            let imgs: Vec<ExactMatrix> = basis.iter().map(|f| f.mul(pk)).collect();
            let a = cs.coords_matrix(&flatten(&imgs)).ok_or_else(|| {
                Error::InvariantViolation("Hom(T, M) is not stable under End(T)".into())
            })?;
            action.push(a);
        }
        SchurModule::new(alg.clone(), basis.len(), action, Some(format!("Hom(T, {})", m.label().unwrap_or("M"))))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RingelDegree {
    pub degree: i64,
    /// `dim Ext^i_S(T, M)`.
    pub tilting_side: usize,
    /// `dim H^i RHom(Λ^d, M)`.
    pub koszul_side: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingelReport {
    pub degrees: Vec<RingelDegree>,
    /// Whether `Hom_S(T, M)` (through `φ`) is isomorphic to `H^0 RHom(Λ^d, M)`.
    pub degree_zero_iso: bool,
    /// Intertwiner witnessing `degree_zero_iso`.
    #[serde(skip)]
    pub intertwiner: Option<ExactMatrix>,
    pub pass: bool,
}

/// Compares `RHom_S(T, M)` transported along `φ` with `RHom(Λ^d, M)`.
pub fn ringel_commutes_check(data: &RingelData, m: &SchurModule, max_degree: usize) -> Result<RingelReport> {
    if !m.ring().is_field() {
        return Err(Error::RequiresField);
    }
    m.same_algebra(&data.t)?;
    let ext = ext_groups(&data.t, m, max_degree)?;
    let k = koszul_inverse(m)?;
    let mut degrees = Vec::new();
    for (i, (r, _)) in ext.iter().enumerate() {
        degrees.push(RingelDegree { degree: i as i64, tilting_side: *r, koszul_side: k.homology.free_rank(i as i64) });
    }
    let beyond = k.homology.support().iter().any(|&i| i < 0 || i > max_degree as i64);
    let lhs = data.hom_from_t(m)?;
    let intertwiner = match k.homology.module(0) {
        Some(h0) => match is_isomorphic(&lhs, h0)? {
            IsoVerdict::Iso(f) => Some(f),
            _ => None,
        },
        None => (lhs.rank() == 0).then(|| ExactMatrix::zeros(m.ring(), 0, 0)),
    };
    let degree_zero_iso = intertwiner.is_some();
    let pass = degree_zero_iso && !beyond && degrees.iter().all(|d| d.tilting_side == d.koszul_side);
    Ok(RingelReport { degrees, degree_zero_iso, intertwiner, pass })
}
