use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functor::{eval_free, eval_morphism, FreeFunctor, FunctorMorphism};
use crate::ring::{ExactMatrix, RingSpec};
use crate::schur::{SchurAlgebra, SchurModule};

/// A bounded cochain complex of modules: `objects[k]` sits in degree `lo + k`
/// and `diffs[k]: objects[k] → objects[k + 1]`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    alg: Arc<SchurAlgebra>,
    lo: i64,
    objects: Vec<SchurModule>,
    diffs: Vec<ExactMatrix>,
}

fn check_square_zero(diffs: &[ExactMatrix], lo: i64) -> Result<()> {
    for (k, w) in diffs.windows(2).enumerate() {
        if !w[1].mul(&w[0]).is_zero() {
            return Err(Error::InvariantViolation(format!(
                "d∘d ≠ 0 starting in degree {}",
                lo + k as i64
            )));
        }
    }
    Ok(())
}

impl ChainComplex {
    /// Checks shapes, that the differentials are module maps, and `d∘d = 0`.
    pub fn new(
        alg: Arc<SchurAlgebra>,
        lo: i64,
        objects: Vec<SchurModule>,
        diffs: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(alg, lo, objects, diffs)?;
        let gens = c.alg.generators();
        for (k, f) in c.diffs.iter().enumerate() {
            let (s, t) = (&c.objects[k], &c.objects[k + 1]);
            for &g in &gens {
                if f.mul(s.action(g)) != t.action(g).mul(f) {
                    return Err(Error::InvariantViolation(format!(
                        "differential in degree {} is not a module map",
                        lo + k as i64
                    )));
                }
            }
        }
        Ok(c)
    }

    // shapes and d∘d only
    pub(crate) fn new_unchecked(
        alg: Arc<SchurAlgebra>,
        lo: i64,
        objects: Vec<SchurModule>,
        diffs: Vec<ExactMatrix>,
    ) -> Result<Self> {
        if objects.is_empty() || diffs.len() + 1 != objects.len() {
            return Err(Error::ShapeMismatch("a complex needs one differential between each pair of terms".into()));
        }
        for o in &objects {
            let b = o.algebra();
            if (b.ring(), b.n(), b.d()) != (alg.ring(), alg.n(), alg.d()) {
                return Err(Error::ShapeMismatch(format!("term over {b:?} in a complex over {alg:?}")));
            }
        }
        for (k, f) in diffs.iter().enumerate() {
            if f.shape() != (objects[k + 1].rank(), objects[k].rank()) {
                return Err(Error::ShapeMismatch(format!(
                    "differential in degree {} has the wrong shape",
                    lo + k as i64
                )));
            }
        }
        check_square_zero(&diffs, lo)?;
        Ok(ChainComplex { alg, lo, objects, diffs })
    }

    /// `M` concentrated in degree `deg`.
    pub fn concentrated(m: &SchurModule, deg: i64) -> Self {
        ChainComplex { alg: m.algebra().clone(), lo: deg, objects: vec![m.clone()], diffs: vec![] }
    }

    pub fn algebra(&self) -> &Arc<SchurAlgebra> {
        &self.alg
    }

    pub fn ring(&self) -> RingSpec {
        self.alg.ring()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn object(&self, deg: i64) -> Option<&SchurModule> {
        self.index(deg).map(|k| &self.objects[k])
    }

    /// The differential leaving degree `deg`, if both ends are in range.
    pub fn differential(&self, deg: i64) -> Option<&ExactMatrix> {
        self.index(deg).and_then(|k| self.diffs.get(k))
    }

    pub fn objects(&self) -> &[SchurModule] {
        &self.objects
    }

    pub fn differentials(&self) -> &[ExactMatrix] {
        &self.diffs
    }

    fn index(&self, deg: i64) -> Option<usize> {
        (deg >= self.lo && deg <= self.hi()).then(|| (deg - self.lo) as usize)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.objects.iter().map(|o| o.rank()).collect()
    }

    /// `Σ (−1)^i rank C^i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().zip(self.ranks()).map(|(i, r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    pub fn linear(&self) -> LinearComplex {
        LinearComplex {
            ring: self.ring(),
            lo: self.lo,
            dims: self.ranks(),
            diffs: self.diffs.clone(),
        }
    }

    /// `X[s]`: degree `i` holds `X^{i+s}`, differentials scaled by `(−1)^s`.
    pub fn shift(&self, s: i64) -> ChainComplex {
        let sign = self.ring().from_i64(if s % 2 == 0 { 1 } else { -1 });
        ChainComplex {
            alg: self.alg.clone(),
            lo: self.lo - s,
            objects: self.objects.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// Degreewise Kuhn dual: degree `n` holds `(X^{−n})°` and the differential
    /// is the transpose of `d^{−n−1}`, so dualizing twice returns `X` exactly.
    pub fn kuhn_dual(&self) -> ChainComplex {
        let objects = self.objects.iter().rev().map(|o| o.kuhn_dual()).collect();
        let diffs = self.diffs.iter().rev().map(|d| d.transpose()).collect();
        ChainComplex { alg: self.alg.clone(), lo: -self.hi(), objects, diffs }
    }

    /// Degreewise restriction to `S(n, d)` for smaller `n`, i.e. evaluation at `k^n`.
    pub fn restrict(&self, small: &Arc<SchurAlgebra>) -> Result<ChainComplex> {
        let parts: Vec<(SchurModule, ExactMatrix)> =
            self.objects.iter().map(|o| o.restrict(small)).collect::<Result<_>>()?;
        let mut diffs = Vec::with_capacity(self.diffs.len());
        for (k, d) in self.diffs.iter().enumerate() {
            let target = crate::ring::linalg::ColumnSpace::new(parts[k + 1].1.clone());
            let c = target
                .coords_matrix(&d.mul(&parts[k].1))
                .ok_or_else(|| Error::InvariantViolation("differential leaves the corner".into()))?;
            diffs.push(c);
        }
        let objects = parts.into_iter().map(|p| p.0).collect();
        ChainComplex::new(small.clone(), self.lo, objects, diffs)
    }

    /// Drops zero objects at both ends.
    pub fn trimmed(&self) -> ChainComplex {
        let nz: Vec<usize> = (0..self.objects.len()).filter(|&k| self.objects[k].rank() > 0).collect();
        let (Some(&a), Some(&b)) = (nz.first(), nz.last()) else {
            return ChainComplex::concentrated(&SchurModule::zero(self.alg.clone()), 0);
        };
        ChainComplex {
            alg: self.alg.clone(),
            lo: self.lo + a as i64,
            objects: self.objects[a..=b].to_vec(),
            diffs: self.diffs[a..b].to_vec(),
        }
    }
}

/// A bounded cochain complex of free `k`-modules, without module structure.
#[derive(Clone, Debug)]
pub struct LinearComplex {
    pub ring: RingSpec,
    pub lo: i64,
    pub dims: Vec<usize>,
    pub diffs: Vec<ExactMatrix>,
}

impl LinearComplex {
    pub fn new(ring: RingSpec, lo: i64, dims: Vec<usize>, diffs: Vec<ExactMatrix>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::ShapeMismatch("a complex needs one differential between each pair of terms".into()));
        }
        for (k, f) in diffs.iter().enumerate() {
            if f.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::ShapeMismatch("differential has the wrong shape".into()));
            }
        }
        check_square_zero(&diffs, lo)?;
        Ok(LinearComplex { ring, lo, dims, diffs })
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }
}

/// A bounded complex of free functors with Yoneda differentials.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    lo: i64,
    terms: Vec<FreeFunctor>,
    diffs: Vec<FunctorMorphism>,
}

impl FreeComplex {
    /// Checks composability and `d∘d = 0` symbolically.
    pub fn new(lo: i64, terms: Vec<FreeFunctor>, diffs: Vec<FunctorMorphism>) -> Result<Self> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(Error::ShapeMismatch("a complex needs one differential between each pair of terms".into()));
        }
        for (k, f) in diffs.iter().enumerate() {
            if f.source != terms[k] || f.target != terms[k + 1] {
                return Err(Error::ShapeMismatch(format!("differential {k} does not match its terms")));
            }
        }
        for (k, w) in diffs.windows(2).enumerate() {
            let dd = w[1].after(&w[0])?;
            if dd.entries().iter().flatten().any(|x| !x.is_zero()) {
                return Err(Error::InvariantViolation(format!(
                    "d∘d ≠ 0 starting in degree {}",
                    lo + k as i64
                )));
            }
        }
        Ok(FreeComplex { lo, terms, diffs })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn terms(&self) -> &[FreeFunctor] {
        &self.terms
    }

    pub fn differentials(&self) -> &[FunctorMorphism] {
        &self.diffs
    }

    pub fn ring(&self) -> RingSpec {
        self.terms[0].ring()
    }

    pub fn degree(&self) -> usize {
        self.terms[0].degree()
    }

    /// Evaluation at `k^n` for the algebra's `n`.
    pub fn eval(&self, alg: &Arc<SchurAlgebra>) -> Result<ChainComplex> {
        let objects: Result<Vec<SchurModule>> = self.terms.iter().map(|t| eval_free(t, alg)).collect();
        let diffs: Result<Vec<ExactMatrix>> = self.diffs.iter().map(|f| eval_morphism(f, alg)).collect();
        ChainComplex::new_unchecked(alg.clone(), self.lo, objects?, diffs?)
    }
}
