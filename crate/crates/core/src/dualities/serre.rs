use serde::Serialize;

use super::koszul::{koszul, koszul_complex};
use crate::error::{Error, Result};
use crate::homological::{
    derived_hom, derived_tensor, free_resolution, homology, ChainComplex, FreeResolution,
};
use crate::schur::{is_isomorphic, symmetric_module, SchurModule};

fn resolution(x: &SchurModule, span: usize) -> Result<FreeResolution> {
    let len = 2 * x.algebra().d() + span + 2;
    let r = free_resolution(x, len)?;
    if !r.terminated {
        return Err(Error::ExactnessFailure(format!("no projective resolution of length ≤ {len}")));
    }
    Ok(r)
}

/// `S^d ⊗^L X` from a projective resolution of `X`.
pub fn serre_functor(x: &SchurModule) -> Result<ChainComplex> {
    let r = resolution(x, 0)?;
    derived_tensor(&r.complex()?, &symmetric_module(x.algebra(), x.algebra().d())?)
}

#[derive(Clone, Debug, Serialize)]
pub struct SerreRow {
    pub degree: i64,
    /// `dim Hom_D(X, Y[i])`.
    pub hom_xy: usize,
    /// `dim Hom_D(Y, F X[−i])` with `F = S^d ⊗^L −`.
    pub hom_y_fx: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SerreReport {
    pub rows: Vec<SerreRow>,
    /// Degrees where `H(K(K(X)))` and `H(S^d ⊗^L X)` are isomorphic.
    pub square_iso: Vec<(i64, bool)>,
    pub pass: bool,
}

/// Checks `Hom_D(X, Y[i])* ≅ Hom_D(Y[i], F X) = Hom_D(Y, F X[−i])` dimensionwise
/// for `i` in `range`, and `K² X ≅ F X` degreewise on homology.
pub fn serre_check(x: &SchurModule, y: &SchurModule, range: std::ops::RangeInclusive<i64>) -> Result<SerreReport> {
    if !x.ring().is_field() {
        return Err(Error::RequiresField);
    }
    x.same_algebra(y)?;
    let span = range.start().unsigned_abs().max(range.end().unsigned_abs()) as usize;
    let fx = serre_functor(x)?;
    let left = derived_hom(&resolution(x, span)?, &ChainComplex::concentrated(y, 0))?;
    let right = derived_hom(&resolution(y, span)?, &fx)?;
    let rows: Vec<SerreRow> = range
        .map(|i| SerreRow { degree: i, hom_xy: left.free_rank(i), hom_y_fx: right.free_rank(-i) })
        .collect();
    let square_iso = square_check(x, &fx)?;
    let pass = rows.iter().all(|r| r.hom_xy == r.hom_y_fx) && square_iso.iter().all(|s| s.1);
    Ok(SerreReport { rows, square_iso, pass })
}

/// Compares the homology of `K(K(X))` with that of `F X` degree by degree.
pub fn square_check(x: &SchurModule, fx: &ChainComplex) -> Result<Vec<(i64, bool)>> {
    let kk = koszul_complex(&koszul(x)?.output)?;
    let hf = homology(fx, true)?;
    let lo = kk.output.lo().min(fx.lo());
    let hi = kk.output.hi().max(fx.hi());
    let mut out = Vec::new();
    for i in lo..=hi {
        let a = kk.homology.at(i).filter(|h| !h.is_zero());
        let b = hf.at(i).filter(|h| !h.is_zero());
        let ok = match (a, b) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                a.torsion == b.torsion
                    && match (&a.module, &b.module) {
                        (Some(p), Some(q)) => is_isomorphic(p, q)?.is_iso(),
                        _ => false,
                    }
            }
            _ => false,
        };
        out.push((i, ok));
    }
    Ok(out)
}
