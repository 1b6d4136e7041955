use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::complex::{ChainComplex, FreeComplex};
use crate::error::{Error, Result};
use crate::functor::{hom_matrix, sum_module, tensor_matrix, Extension, FreeFunctor, Piece, Side};
use crate::ring::ExactMatrix;
use crate::schur::{SchurAlgebra, SchurModule};

type Cell = (i64, i64);

// Assembles the total complex of a finite double complex given by its cells
// (keyed by bidegree, ordered within each total degree by key) and the
// nonzero maps between cells of consecutive total degree.
fn total(
    alg: &Arc<SchurAlgebra>,
    cells: BTreeMap<Cell, SchurModule>,
    deg: impl Fn(Cell) -> i64,
    maps: Vec<(Cell, Cell, ExactMatrix)>,
) -> Result<ChainComplex> {
    let ring = alg.ring();
    let mut by_deg: BTreeMap<i64, Vec<Cell>> = BTreeMap::new();
    for &c in cells.keys() {
        by_deg.entry(deg(c)).or_default().push(c);
    }
    let (lo, hi) = match (by_deg.keys().next(), by_deg.keys().last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Ok(ChainComplex::concentrated(&SchurModule::zero(alg.clone()), 0)),
    };
    let mut offset: HashMap<Cell, usize> = HashMap::new();
    let mut objects = Vec::new();
    let mut ranks = Vec::new();
    for n in lo..=hi {
        let cs = by_deg.get(&n).cloned().unwrap_or_default();
        let mut off = 0;
        let mut mods = Vec::new();
        for c in cs {
            offset.insert(c, off);
            off += cells[&c].rank();
            mods.push(&cells[&c]);
        }
        ranks.push(off);
        objects.push(SchurModule::direct_sum(alg, &mods));
    }
    let mut diffs: Vec<ExactMatrix> = (lo..hi)
        .map(|n| ExactMatrix::zeros(ring, ranks[(n + 1 - lo) as usize], ranks[(n - lo) as usize]))
        .collect();
    for (s, t, m) in maps {
        let n = deg(s);
        if deg(t) != n + 1 {
            return Err(Error::ShapeMismatch("map between cells of non-adjacent degree".into()));
        }
        diffs[(n - lo) as usize].add_block(offset[&t], offset[&s], &m);
    }
    ChainComplex::new(alg.clone(), lo, objects, diffs)
}

struct PieceCache {
    side: Side,
    exts: HashMap<(i64, usize), Arc<Extension>>,
}

impl PieceCache {
    fn pieces(&mut self, f: &FreeFunctor, q: i64, y: &SchurModule) -> Result<Vec<Piece>> {
        let n = y.algebra().n();
        let mut out = Vec::new();
        for s in f.summands() {
            let ext = match self.exts.get(&(q, s.v)) {
                Some(e) => e.clone(),
                None => {
                    let e = Arc::new(Extension::new(y, n * s.v)?);
                    self.exts.insert((q, s.v), e.clone());
                    e
                }
            };
            out.push(Piece::new(y, s.v, s.idem.as_ref(), self.side, Some(ext))?);
        }
        Ok(out)
    }
}

fn blockwise(src: &[Piece], tgt: &[Piece], f: &ExactMatrix) -> Result<ExactMatrix> {
    let blocks: Result<Vec<ExactMatrix>> =
        src.iter().zip(tgt).map(|(s, t)| s.induced_by_map(t, f)).collect();
    Ok(ExactMatrix::block_diag(f.ring(), &blocks?))
}

fn sign(alg: &SchurAlgebra, odd: bool) -> crate::ring::Scalar {
    alg.ring().from_i64(if odd { -1 } else { 1 })
}

/// The total complex of `C ⊗ X` with `d = d_C ⊗ 1 + (−1)^p 1 ⊗ d_X`.
pub fn derived_tensor_complex(c: &FreeComplex, x: &ChainComplex) -> Result<ChainComplex> {
    let alg = x.algebra();
    let mut cache = PieceCache { side: Side::Tensor, exts: HashMap::new() };
    let mut pieces: BTreeMap<Cell, Vec<Piece>> = BTreeMap::new();
    for (i, t) in c.terms().iter().enumerate() {
        let p = c.lo() + i as i64;
        for q in x.degrees() {
            pieces.insert((p, q), cache.pieces(t, q, x.object(q).unwrap())?);
        }
    }
    let mut maps = Vec::new();
    for (&(p, q), src) in &pieces {
        if let Some(tgt) = pieces.get(&(p + 1, q)) {
            let phi = &c.differentials()[(p - c.lo()) as usize];
            maps.push(((p, q), (p + 1, q), tensor_matrix(phi, src, tgt)?));
        }
        if let (Some(tgt), Some(dx)) = (pieces.get(&(p, q + 1)), x.differential(q)) {
            let m = blockwise(src, tgt, dx)?.scale(&sign(alg, p % 2 != 0));
            maps.push(((p, q), (p, q + 1), m));
        }
    }
    let cells = pieces.iter().map(|(&k, ps)| (k, sum_module(alg, ps))).collect();
    total(alg, cells, |(p, q)| p + q, maps)
}

/// `C ⊗ X` for a module `X` in degree 0.
pub fn derived_tensor(c: &FreeComplex, x: &SchurModule) -> Result<ChainComplex> {
    derived_tensor_complex(c, &ChainComplex::concentrated(x, 0))
}

/// The internal total Hom complex `Hom(C, Y)`, `Hom^n = ⊕_{q−p=n} Hom(C^p, Y^q)`,
/// with `δf = d_Y f − (−1)^n f d_C`.
pub fn internal_rhom_complex(c: &FreeComplex, y: &ChainComplex) -> Result<ChainComplex> {
    let alg = y.algebra();
    let mut cache = PieceCache { side: Side::Hom, exts: HashMap::new() };
    // cells keyed by (q, −p) so that the order within a degree is deterministic
    let mut pieces: BTreeMap<Cell, Vec<Piece>> = BTreeMap::new();
    for (i, t) in c.terms().iter().enumerate() {
        let p = c.lo() + i as i64;
        for q in y.degrees() {
            pieces.insert((q, -p), cache.pieces(t, q, y.object(q).unwrap())?);
        }
    }
    let mut maps = Vec::new();
    for (&(q, mp), src) in &pieces {
        let p = -mp;
        let n = q - p;
        if let (Some(tgt), Some(dy)) = (pieces.get(&(q + 1, mp)), y.differential(q)) {
            maps.push(((q, mp), (q + 1, mp), blockwise(src, tgt, dy)?));
        }
        if let Some(tgt) = pieces.get(&(q, mp + 1)) {
            // precomposition with d_C: C^{p−1} → C^p
            let phi = &c.differentials()[(p - 1 - c.lo()) as usize];
            let m = hom_matrix(phi, tgt, src)?.scale(&sign(alg, n % 2 == 0));
            maps.push(((q, mp), (q, mp + 1), m));
        }
    }
    let cells = pieces.iter().map(|(&k, ps)| (k, sum_module(alg, ps))).collect();
    total(alg, cells, |(q, mp)| q + mp, maps)
}

pub fn internal_rhom(c: &FreeComplex, y: &SchurModule) -> Result<ChainComplex> {
    internal_rhom_complex(c, &ChainComplex::concentrated(y, 0))
}
