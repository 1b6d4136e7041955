use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::complex::{ChainComplex, FreeComplex, LinearComplex};
use super::homology::{linear_homology, HomologyReport};
use crate::error::{Error, Result};
use crate::functor::{
    diagonal_weights, eval_free, eval_morphism, free_cover, Extension, morphism_from_vectors, projective_functor,
    weight_generators, FreeFunctor, FunctorMorphism, WeightGenerator,
};
use crate::ring::{kernel_basis, ExactMatrix};
use crate::schur::SchurModule;

/// A resolution `⋯ → P_1 → P_0 → M` by sums of `S e_λ`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub module: SchurModule,
    /// Weight indices of the summands of `P_k`.
    pub weights: Vec<Vec<usize>>,
    /// `maps[k]: P_{k+1} → P_k`.
    pub maps: Vec<FunctorMorphism>,
    /// `P_0(k^n) → M`.
    pub augmentation: ExactMatrix,
    /// True if the last kernel was zero, so the resolution is complete.
    pub terminated: bool,
}

/// Resolution by iterated kernels and weight-vector covers, up to `P_length`.
pub fn free_resolution(m: &SchurModule, length: usize) -> Result<FreeResolution> {
    let alg = m.algebra();
    let (p0, w0, aug) = free_cover(m)?;
    let mut weights = vec![w0];
    let mut maps = Vec::new();
    let mut cur_mod = eval_free(&p0, alg)?;
    let mut cur_map = aug.clone();
    let mut terminated = false;
    for _ in 0..=length {
        let kb = kernel_basis(&cur_map);
        if kb.cols() == 0 {
            terminated = true;
            break;
        }
        if maps.len() == length {
            break;
        }
        let k = cur_mod.submodule(&kb, None)?;
        let gens: Vec<WeightGenerator> = weight_generators(&k)?
            .into_iter()
            .map(|g| WeightGenerator { weight: g.weight, vector: kb.mul_vec(&g.vector) })
            .collect();
        let phi = morphism_from_vectors(alg, weights.last().unwrap(), &gens)?;
        weights.push(gens.iter().map(|g| g.weight).collect());
        cur_mod = eval_free(&phi.source, alg)?;
        cur_map = eval_morphism(&phi, alg)?;
        maps.push(phi);
    }
    Ok(FreeResolution { module: m.clone(), weights, maps, augmentation: aug, terminated })
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn term(&self, k: usize) -> Result<FreeFunctor> {
        projective_functor(self.module.algebra(), &self.weights[k])
    }

    /// `P_L → ⋯ → P_0` in cohomological degrees `−L, …, 0`.
    pub fn complex(&self) -> Result<FreeComplex> {
        let l = self.length();
        let terms: Result<Vec<FreeFunctor>> = (0..=l).rev().map(|k| self.term(k)).collect();
        let diffs = (0..l).rev().map(|k| self.maps[k].clone()).collect();
        FreeComplex::new(-(l as i64), terms?, diffs)
    }

    pub fn evaluated(&self) -> Result<ChainComplex> {
        self.complex()?.eval(self.module.algebra())
    }
}

// e_λ Z as a block of the weight basis of Z
fn block(z: &SchurModule, w: usize) -> (usize, usize) {
    z.weight_basis().blocks[w]
}

// matrix of y·: e_λ Z → e_μ Z in weight coordinates
fn weight_action(z: &SchurModule, y: &[crate::ring::Scalar], lam: usize, mu: usize) -> ExactMatrix {
    let wb = z.weight_basis();
    let (lo, ld) = wb.blocks[lam];
    let (mo, md) = wb.blocks[mu];
    let rows: Vec<usize> = (mo..mo + md).collect();
    let cols: Vec<usize> = (lo..lo + ld).collect();
    wb.pinv.select_rows(&rows).mul(&z.act(y).mul(&wb.p.select_cols(&cols)))
}

fn weight_restrict(f: &ExactMatrix, s: &SchurModule, t: &SchurModule, w: usize) -> ExactMatrix {
    let (ws, wt) = (s.weight_basis(), t.weight_basis());
    let (so, sd) = ws.blocks[w];
    let (to, td) = wt.blocks[w];
    let rows: Vec<usize> = (to..to + td).collect();
    let cols: Vec<usize> = (so..so + sd).collect();
    wt.pinv.select_rows(&rows).mul(&f.mul(&ws.p.select_cols(&cols)))
}

/// The complex `Hom(P, Z)` for a resolution `P` of `M` and a complex `Z`:
/// degree `n` is `⊕_{q+k=n} ⊕_λ e_λ Z^q` over the summands `S e_λ` of `P_k`,
/// with `δf = d_Z f − (−1)^n f d_P`.
pub fn hom_complex(res: &FreeResolution, z: &ChainComplex) -> Result<LinearComplex> {
    let alg = res.module.algebra();
    let ring = alg.ring();
    // cells (k, q) with sizes and internal offsets of each summand
    let mut cells: BTreeMap<(i64, i64), (usize, Vec<usize>)> = BTreeMap::new();
    for (k, ws) in res.weights.iter().enumerate() {
        for q in z.degrees() {
            let zq = z.object(q).unwrap();
            let mut offs = Vec::new();
            let mut off = 0;
            for &w in ws {
                offs.push(off);
                off += block(zq, w).1;
            }
            cells.insert((k as i64, q), (off, offs));
        }
    }
    let deg = |(k, q): (i64, i64)| q + k;
    let lo = cells.keys().map(|&c| deg(c)).min().unwrap();
    let hi = cells.keys().map(|&c| deg(c)).max().unwrap();
    let mut cell_off = BTreeMap::new();
    let mut dims = vec![0usize; (hi - lo + 1) as usize];
    for (&c, (size, _)) in &cells {
        let i = (deg(c) - lo) as usize;
        cell_off.insert(c, dims[i]);
        dims[i] += size;
    }
    let mut diffs: Vec<ExactMatrix> =
        (0..dims.len().saturating_sub(1)).map(|i| ExactMatrix::zeros(ring, dims[i + 1], dims[i])).collect();
    for (&(k, q), (_, offs)) in &cells {
        let n = k + q;
        let i = (n - lo) as usize;
        let ws = &res.weights[k as usize];
        let zq = z.object(q).unwrap();
        if let (Some(dz), Some(zq1)) = (z.differential(q), z.object(q + 1)) {
            let (_, toffs) = &cells[&(k, q + 1)];
            for (s, &w) in ws.iter().enumerate() {
                let b = weight_restrict(dz, zq, zq1, w);
                diffs[i].add_block(cell_off[&(k, q + 1)] + toffs[s], cell_off[&(k, q)] + offs[s], &b);
            }
        }
        if let Some(phi) = res.maps.get(k as usize) {
            let (_, toffs) = &cells[&(k + 1, q)];
            let c = ring.from_i64(if n % 2 == 0 { -1 } else { 1 });
            for (i_t, &lam) in ws.iter().enumerate() {
                for (j, &mu) in res.weights[k as usize + 1].iter().enumerate() {
                    let y = alg.to_vector(phi.entry(i_t, j))?;
                    let b = weight_action(zq, &y, lam, mu).scale(&c);
                    diffs[i].add_block(cell_off[&(k + 1, q)] + toffs[j], cell_off[&(k, q)] + offs[i_t], &b);
                }
            }
        }
    }
    LinearComplex::new(ring, lo, dims, diffs)
}

/// `Ext^i(M, N)` for `i = 0, …, max_i` as (free rank, torsion invariants).
pub fn ext_groups(m: &SchurModule, n: &SchurModule, max_i: usize) -> Result<Vec<(usize, Vec<BigInt>)>> {
    m.same_algebra(n)?;
    let res = free_resolution(m, max_i + 1)?;
    let h = derived_hom(&res, &ChainComplex::concentrated(n, 0))?;
    Ok((0..=max_i as i64)
        .map(|i| h.at(i).map_or((0, vec![]), |x| (x.free_rank, x.torsion.clone())))
        .collect())
}

/// Homology of `Hom(P, Z)`: `H^i = Hom_D(M, Z[i])` when `P` is complete.
pub fn derived_hom(res: &FreeResolution, z: &ChainComplex) -> Result<HomologyReport> {
    Ok(linear_homology(&hom_complex(res, z)?))
}

/// The external complex `Hom(C, Y)` for a complex of free functors, using
/// `Hom(Γ^{d,V} e, Y) = e·Y(V)`; degree `n` holds `Hom(C^{−n}, Y)`.
pub fn hom_free_complex(c: &FreeComplex, y: &SchurModule) -> Result<LinearComplex> {
    let ring = y.ring();
    let mut exts: BTreeMap<usize, Extension> = BTreeMap::new();
    let mut sels: Vec<Vec<Vec<usize>>> = Vec::new();
    for t in c.terms() {
        let mut row = Vec::new();
        for s in t.summands() {
            if !exts.contains_key(&s.v) {
                exts.insert(s.v, Extension::new(y, s.v)?);
            }
            let ext = &exts[&s.v];
            let ws = match &s.idem {
                None => None,
                Some(e) => Some(diagonal_weights(e).ok_or_else(|| {
                    Error::ShapeMismatch("external Hom needs weight-idempotent cuts".into())
                })?),
            };
            let mut keep = Vec::new();
            for (k, nu) in ext.weights().iter().enumerate() {
                if ws.as_ref().is_none_or(|ws| ws.contains(&nu.parts)) {
                    keep.extend(ext.block(k));
                }
            }
            row.push(keep);
        }
        sels.push(row);
    }
    // term index i (degree lo + i) maps to Hom degree −(lo + i); list in increasing Hom degree
    let nt = c.terms().len();
    let dims: Vec<usize> = (0..nt).rev().map(|i| sels[i].iter().map(|s| s.len()).sum()).collect();
    let mut diffs = Vec::new();
    for i in (1..nt).rev() {
        // Hom(C^i) → Hom(C^{i−1}) along d: C^{i−1} → C^i
        let phi = &c.differentials()[i - 1];
        let (src, tgt) = (&c.terms()[i], &c.terms()[i - 1]);
        let mut m = ExactMatrix::zeros(ring, sels[i - 1].iter().map(|s| s.len()).sum(), sels[i].iter().map(|s| s.len()).sum());
        let mut ro = 0;
        for (j, tj) in tgt.summands().iter().enumerate() {
            let mut co = 0;
            for (a, sa) in src.summands().iter().enumerate() {
                let full = exts[&tj.v].map_from(&exts[&sa.v], phi.entry(a, j))?;
                let b = full.select_rows(&sels[i - 1][j]).select_cols(&sels[i][a]);
                m.add_block(ro, co, &b);
                co += sels[i][a].len();
            }
            ro += sels[i - 1][j].len();
        }
        diffs.push(m);
    }
    LinearComplex::new(ring, -c.hi(), dims, diffs)
}
