use std::collections::HashMap;

use crate::divided_powers::{compositions, Multiset, SymTensor, Weight};
use crate::error::{Error, Result};
use crate::ring::{ExactMatrix, RingSpec, Scalar};
use crate::schur::SchurModule;

/// A module `M` over `S(n, d)`, `n ≥ d`, evaluated at `k^m` for any `m`.
///
/// `M(k^m)` is the sum over `ν ∈ Λ(m, d)` of the weight space of `M` at the
/// compression of `ν` (its positive parts padded to length `n`). A basis
/// element of `Γ^d Hom(k^m, k^m')` acts through the element of `S(n, d)`
/// obtained by relabelling the supports of its marginals.
#[derive(Clone)]
pub struct Extension {
    module: SchurModule,
    m: usize,
    weights: Vec<Weight>,
    index: HashMap<Vec<usize>, usize>,
    base: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl std::fmt::Debug for Extension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} at k^{} (rank {})", self.module, self.m, self.total)
    }
}

impl Extension {
    pub fn new(module: &SchurModule, m: usize) -> Result<Self> {
        let alg = module.algebra();
        let (n, d) = (alg.n(), alg.d());
        if n < d {
            return Err(Error::RequiresNGeqD { n, d });
        }
        let wb = module.weight_basis();
        let weights = compositions(m, d);
        let mut index = HashMap::with_capacity(weights.len());
        let mut base = Vec::with_capacity(weights.len());
        let mut offsets = Vec::with_capacity(weights.len() + 1);
        let mut total = 0;
        for (k, w) in weights.iter().enumerate() {
            index.insert(w.parts.clone(), k);
            let c = Weight::new(w.positive_parts()).padded(n);
            let b = alg.weight_index(&c).expect("compressed weight lies in Λ(n, d)");
            base.push(b);
            offsets.push(total);
            total += wb.blocks[b].1;
        }
        offsets.push(total);
        Ok(Extension { module: module.clone(), m, weights, index, base, offsets, total })
    }

    pub fn module(&self) -> &SchurModule {
        &self.module
    }

    pub fn ring(&self) -> RingSpec {
        self.module.ring()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.total
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Coordinate range of the weight space `ν`.
    pub fn block(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn block_of(&self, nu: &[usize]) -> Option<usize> {
        self.index.get(nu).copied()
    }

    // relabel supports; returns (compressed basis index, cod block, dom block)
    fn compress(&self, src: &Extension, x: &Multiset) -> (usize, usize, usize) {
        let nu = x.dom_marginal(src.m);
        let mu = x.cod_marginal(self.m);
        let pos = |v: &[usize]| {
            let mut p = vec![usize::MAX; v.len()];
            let mut c = 0;
            for (i, &a) in v.iter().enumerate() {
                if a > 0 {
                    p[i] = c;
                    c += 1;
                }
            }
            p
        };
        let (pi, pj) = (pos(&mu), pos(&nu));
        let y = Multiset::new(x.pairs().iter().map(|&(i, j)| (pi[i], pj[j])).collect());
        let k = self.module.algebra().index_of(&y).expect("compressed multiset in S(n, d)");
        (k, self.index[&mu], src.index[&nu])
    }

    /// Matrix of `M(t): M(k^src.m) → M(k^self.m)` for `t ∈ Γ^d Hom(k^src.m, k^self.m)`.
    pub fn map_from(&self, src: &Extension, t: &SymTensor) -> Result<ExactMatrix> {
        if t.dom() != src.m || t.cod() != self.m || t.degree() != self.module.algebra().d() {
            return Err(Error::ShapeMismatch(format!(
                "tensor of shape {}→{} on extensions at {} and {}",
                t.dom(),
                t.cod(),
                src.m,
                self.m
            )));
        }
        let ring = self.ring();
        let mut trip: Vec<(usize, usize, Scalar)> = Vec::new();
        for (x, c) in t.terms() {
            let (k, r, s) = self.compress(src, x);
            let b = self.module.adapted_block(k);
            let (r0, c0) = (self.offsets[r], src.offsets[s]);
            for (i, j, v) in b.entries() {
                trip.push((r0 + i, c0 + j, ring.mul(v, c)));
            }
        }
        Ok(ExactMatrix::from_triplets(ring, self.total, src.total, trip))
    }

    pub fn act(&self, t: &SymTensor) -> Result<ExactMatrix> {
        self.map_from(self, t)
    }
}

/// Extension of a module map `f: M → N` to `k^m`, given both extensions.
pub fn extend_map(f: &ExactMatrix, src: &Extension, tgt: &Extension) -> Result<ExactMatrix> {
    if src.m != tgt.m || f.shape() != (tgt.module.rank(), src.module.rank()) {
        return Err(Error::ShapeMismatch("module map does not match extensions".into()));
    }
    let (ws, wt) = (src.module.weight_basis(), tgt.module.weight_basis());
    let fa = wt.pinv.mul(f).mul(&ws.p);
    let ring = src.ring();
    let nw = src.module.algebra().weights().len();
    let blocks: Vec<ExactMatrix> = (0..nw)
        .map(|w| {
            let (ro, rd) = wt.blocks[w];
            let (co, cd) = ws.blocks[w];
            fa.select_rows(&(ro..ro + rd).collect::<Vec<_>>())
                .select_cols(&(co..co + cd).collect::<Vec<_>>())
        })
        .collect();
    let mut out = ExactMatrix::zeros(ring, tgt.total, src.total);
    for k in 0..src.weights.len() {
        let b = src.base[k];
        out.add_block(tgt.offsets[k], src.offsets[k], &blocks[b]);
    }
    Ok(out)
}
