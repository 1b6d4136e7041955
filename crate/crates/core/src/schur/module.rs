use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::SchurAlgebra;
use crate::error::{Error, Result};
use crate::ring::linalg::{image_basis, inverse, ColumnSpace};
use crate::ring::{ExactMatrix, MatrixJson, RingSpec, Scalar};

/// A basis adapted to the weight decomposition `M = ⊕ e_λ M`.
#[derive(Clone, Debug)]
pub struct WeightBasis {
    /// Columns are the new basis, grouped by weight.
    pub p: ExactMatrix,
    pub pinv: ExactMatrix,
    /// `(offset, dim)` per weight index of the algebra.
    pub blocks: Vec<(usize, usize)>,
}

/// A finite module over a Schur algebra: one action matrix per basis element.
#[derive(Clone)]
pub struct SchurModule {
    alg: Arc<SchurAlgebra>,
    rank: usize,
    action: Arc<Vec<ExactMatrix>>,
    label: Option<String>,
    wb: Arc<OnceLock<WeightBasis>>,
    blocks: Arc<OnceLock<Vec<ExactMatrix>>>,
}

impl std::fmt::Debug for SchurModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SchurModule[{}] over {:?}, rank {}",
            self.label.as_deref().unwrap_or("?"),
            self.alg,
            self.rank
        )
    }
}

impl SchurModule {
    /// Builds a module and verifies that the action is multiplicative and unital.
    pub fn new(
        alg: Arc<SchurAlgebra>,
        rank: usize,
        action: Vec<ExactMatrix>,
        label: Option<String>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(alg, rank, action, label);
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        alg: Arc<SchurAlgebra>,
        rank: usize,
        action: Vec<ExactMatrix>,
        label: Option<String>,
    ) -> Self {
        assert_eq!(action.len(), alg.dim(), "one action matrix per basis element");
        SchurModule {
            alg,
            rank,
            action: Arc::new(action),
            label,
            wb: Arc::new(OnceLock::new()),
            blocks: Arc::new(OnceLock::new()),
        }
    }

    pub fn zero(alg: Arc<SchurAlgebra>) -> Self {
        let ring = alg.ring();
        let action = vec![ExactMatrix::zeros(ring, 0, 0); alg.dim()];
        Self::new_unchecked(alg, 0, action, Some("0".into()))
    }

    /// Verifies: the idempotents act as a complete orthogonal family and
    /// `A(ξ)A(η) = A(ξη)` for every basis pair with matching weights.
    /// Pairs with mismatched weights multiply to zero in the algebra, and
    /// their product vanishes on the module as a consequence of the first
    /// two checks.
    pub fn check(&self) -> Result<()> {
        let alg = &self.alg;
        let ring = alg.ring();
        let bad = |what: String| Err(Error::InvariantViolation(what));
        for a in self.action.iter() {
            if a.shape() != (self.rank, self.rank) {
                return bad("action matrix has the wrong shape".into());
            }
        }
        let nw = alg.weights().len();
        let mut sum = ExactMatrix::zeros(ring, self.rank, self.rank);
        for w in 0..nw {
            let ew = &self.action[alg.idempotent(w)];
            sum = sum.add(ew);
            for v in 0..nw {
                let p = ew.mul(&self.action[alg.idempotent(v)]);
                let ok = if v == w { p == *ew } else { p.is_zero() };
                if !ok {
                    return bad(format!("idempotents {} and {} do not act orthogonally", w, v));
                }
            }
        }
        if !sum.is_identity() {
            return bad("unit does not act as the identity".into());
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                if alg.dom_weight(a) != alg.cod_weight(b) {
                    continue;
                }
                let lhs = self.action[a].mul(&self.action[b]);
                let rhs = self.combine(&alg.mul_basis(a, b));
                if lhs != rhs {
                    return bad(format!(
                        "action not multiplicative on ({}) * ({})",
                        alg.label(a),
                        alg.label(b)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<SchurAlgebra> {
        &self.alg
    }

    pub fn ring(&self) -> RingSpec {
        self.alg.ring()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn action(&self, k: usize) -> &ExactMatrix {
        &self.action[k]
    }

    pub fn actions(&self) -> &[ExactMatrix] {
        &self.action
    }

    fn combine(&self, terms: &[(usize, Scalar)]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.ring(), self.rank, self.rank);
        for (k, c) in terms {
            out = out.add(&self.action[*k].scale(c));
        }
        out
    }

    /// Action of an arbitrary algebra element given in coordinates.
    pub fn act(&self, x: &[Scalar]) -> ExactMatrix {
        let ring = self.ring();
        let terms: Vec<(usize, Scalar)> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !ring.is_zero(c))
            .map(|(k, c)| (k, c.clone()))
            .collect();
        self.combine(&terms)
    }

    pub fn same_algebra(&self, other: &SchurModule) -> Result<()> {
        let (a, b) = (&self.alg, &other.alg);
        if a.ring() != b.ring() {
            return Err(Error::RingMismatch(a.ring().name(), b.ring().name()));
        }
        if (a.n(), a.d()) != (b.n(), b.d()) {
            return Err(Error::ShapeMismatch(format!("modules over {a:?} and {b:?}")));
        }
        Ok(())
    }

    pub fn weight_basis(&self) -> &WeightBasis {
        self.wb.get_or_init(|| self.compute_weight_basis())
    }

    fn compute_weight_basis(&self) -> WeightBasis {
        let alg = &self.alg;
        let ring = self.ring();
        let nw = alg.weights().len();
        let es: Vec<&ExactMatrix> = (0..nw).map(|w| &self.action[alg.idempotent(w)]).collect();
        let diagonal = es.iter().all(|e| e.entries().all(|(i, j, _)| i == j));
        let mut cols: Vec<ExactMatrix> = Vec::with_capacity(nw);
        let mut blocks = Vec::with_capacity(nw);
        let mut off = 0;
        for e in &es {
            let b = if diagonal {
                let idx: Vec<usize> = e.entries().map(|(i, _, _)| i).collect();
                ExactMatrix::identity(ring, self.rank).select_cols(&idx)
            } else {
                image_basis(e)
            };
            blocks.push((off, b.cols()));
            off += b.cols();
            cols.push(b);
        }
        let refs: Vec<&ExactMatrix> = cols.iter().collect();
        let p = if refs.is_empty() {
            ExactMatrix::zeros(ring, self.rank, 0)
        } else {
            ExactMatrix::hstack(&refs)
        };
        let pinv = if diagonal {
            p.transpose()
        } else {
            inverse(&p).expect("weight spaces do not form a basis")
        };
        WeightBasis { p, pinv, blocks }
    }

    /// Action of basis element `k` in the weight basis, restricted to the
    /// block from its domain weight space to its codomain weight space.
    pub fn adapted_block(&self, k: usize) -> &ExactMatrix {
        &self.blocks.get_or_init(|| {
            let wb = self.weight_basis();
            (0..self.alg.dim())
                .map(|k| {
                    let (ro, rd) = wb.blocks[self.alg.cod_weight(k)];
                    let (co, cd) = wb.blocks[self.alg.dom_weight(k)];
                    let rows: Vec<usize> = (ro..ro + rd).collect();
                    let cols: Vec<usize> = (co..co + cd).collect();
                    wb.pinv.select_rows(&rows).mul(&self.action[k].mul(&wb.p.select_cols(&cols)))
                })
                .collect()
        })[k]
    }

    /// Ranks of the weight spaces, in the order of the algebra's weights.
    pub fn weight_dims(&self) -> Vec<usize> {
        self.weight_basis().blocks.iter().map(|b| b.1).collect()
    }

    /// Module with the action conjugated by an invertible change of basis
    /// (columns of `p` are the new basis vectors).
    pub fn change_basis(&self, p: &ExactMatrix, pinv: &ExactMatrix) -> SchurModule {
        let action = self.action.iter().map(|a| pinv.mul(a).mul(p)).collect();
        Self::new_unchecked(self.alg.clone(), self.rank, action, self.label.clone())
    }

    pub fn direct_sum(alg: &Arc<SchurAlgebra>, parts: &[&SchurModule]) -> SchurModule {
        let ring = alg.ring();
        let rank = parts.iter().map(|m| m.rank).sum();
        let action = (0..alg.dim())
            .map(|k| {
                let blocks: Vec<ExactMatrix> = parts.iter().map(|m| m.action[k].clone()).collect();
                ExactMatrix::block_diag(ring, &blocks)
            })
            .collect();
        let labels: Vec<&str> = parts.iter().map(|m| m.label().unwrap_or("?")).collect();
        Self::new_unchecked(alg.clone(), rank, action, Some(labels.join(" ⊕ ")))
    }

    /// Kuhn dual: `ξ` acts by the transpose of the action of `dualize(ξ)`.
    pub fn kuhn_dual(&self) -> SchurModule {
        let action = (0..self.alg.dim())
            .map(|k| self.action[self.alg.dual_index(k)].transpose())
            .collect();
        let label = self.label.as_ref().map(|l| format!("({l})°"));
        Self::new_unchecked(self.alg.clone(), self.rank, action, label)
    }

    /// The submodule spanned by the (independent) columns of `basis`,
    /// failing if the span is not invariant.
    pub fn submodule(&self, basis: &ExactMatrix, label: Option<String>) -> Result<SchurModule> {
        let cs = ColumnSpace::new(basis.clone());
        let mut action = Vec::with_capacity(self.alg.dim());
        for (k, a) in self.action.iter().enumerate() {
            let c = cs.coords_matrix(&a.mul(basis)).ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "subspace not stable under {}",
                    self.alg.label(k)
                ))
            })?;
            action.push(c);
        }
        Ok(Self::new_unchecked(self.alg.clone(), basis.cols(), action, label))
    }

    /// The module structure on a quotient given by a surjection `q` (rows = quotient
    /// coordinates) with chosen section columns `section` (`q·section = I`).
    /// Fails unless `ker q` is stable.
    pub fn quotient_by(
        &self,
        q: &ExactMatrix,
        section: &ExactMatrix,
        label: Option<String>,
    ) -> Result<SchurModule> {
        let ker = crate::ring::kernel_basis(q);
        let mut action = Vec::with_capacity(self.alg.dim());
        for (k, a) in self.action.iter().enumerate() {
            if !q.mul(a).mul(&ker).is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "kernel not stable under {}",
                    self.alg.label(k)
                )));
            }
            action.push(q.mul(a).mul(section));
        }
        Ok(Self::new_unchecked(self.alg.clone(), q.rows(), action, label))
    }

    /// Submodule `ker f` for a module map `f` out of `self`.
    pub fn kernel_of(&self, f: &ExactMatrix, label: Option<String>) -> Result<SchurModule> {
        self.submodule(&crate::ring::kernel_basis(f), label)
    }

    /// Quotient by the image of a module map `f` into `self`. Over Z the
    /// cokernel must be free.
    pub fn cokernel_of(&self, f: &ExactMatrix, label: Option<String>) -> Result<SchurModule> {
        let (q, section) = cokernel_projection(f)?;
        self.quotient_by(&q, &section, label)
    }
}

impl SchurModule {
    /// `eM` as a module over `small = S(n, d)`, where `e` is the idempotent of the
    /// weights supported on the first `n` coordinates; this is evaluation at `k^n`.
    /// Also returns the inclusion `eM → M`.
    pub fn restrict(&self, small: &Arc<SchurAlgebra>) -> Result<(SchurModule, ExactMatrix)> {
        let big = &self.alg;
        if small.ring() != big.ring() || small.d() != big.d() || small.n() > big.n() {
            return Err(Error::ShapeMismatch(format!("cannot restrict from {big:?} to {small:?}")));
        }
        let embed: Vec<usize> = small
            .basis()
            .iter()
            .map(|m| big.index_of(m).expect("corner basis lies in the larger algebra"))
            .collect();
        let ring = big.ring();
        let mut e = ExactMatrix::zeros(ring, self.rank, self.rank);
        for w in 0..small.weights().len() {
            e = e.add(&self.action[embed[small.idempotent(w)]]);
        }
        let b = image_basis(&e);
        let cs = ColumnSpace::new(b.clone());
        let action = embed
            .iter()
            .map(|&k| cs.coords_matrix(&self.action[k].mul(&b)).expect("eM is stable under eSe"))
            .collect();
        let m = Self::new_unchecked(small.clone(), b.cols(), action, self.label.clone());
        Ok((m, b))
    }
}

/// A projection `q` onto the cokernel of `f` with a section, `q·f = 0`.
pub fn cokernel_projection(f: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
    let ring = f.ring();
    let n = f.rows();
    if ring == RingSpec::Integers {
        let s = crate::ring::smith_normal_form(f)?;
        let r = s.rank();
        let tors: Vec<String> = s.diagonal[..r]
            .iter()
            .filter(|d| !num_traits::One::is_one(d.magnitude()))
            .map(|d| d.to_string())
            .collect();
        if !tors.is_empty() {
            return Err(Error::Torsion(tors));
        }
        let rest: Vec<usize> = (r..n).collect();
        return Ok((s.u.select_rows(&rest), s.u_inv.select_cols(&rest)));
    }
    let b = image_basis(f);
    let c = crate::ring::linalg::complement_units(&b);
    let e = ExactMatrix::identity(ring, n).select_cols(&c);
    let full = ExactMatrix::hstack(&[&b, &e]);
    let inv = inverse(&full).expect("image plus complement is a basis");
    let rows: Vec<usize> = (b.cols()..n).collect();
    Ok((inv.select_rows(&rows), e))
}

/// A morphism of modules.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: SchurModule,
    pub target: SchurModule,
    pub matrix: ExactMatrix,
}

impl ModuleMap {
    /// Checks `f A_src(g) = A_tgt(g) f` on the algebra generators (which
    /// suffices for all basis elements).
    pub fn new(source: SchurModule, target: SchurModule, matrix: ExactMatrix) -> Result<Self> {
        source.same_algebra(&target)?;
        if matrix.shape() != (target.rank(), source.rank()) {
            return Err(Error::ShapeMismatch("module map has the wrong shape".into()));
        }
        for g in source.algebra().generators() {
            if matrix.mul(source.action(g)) != target.action(g).mul(&matrix) {
                return Err(Error::InvariantViolation(format!(
                    "map does not commute with {}",
                    source.algebra().label(g)
                )));
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn identity(m: &SchurModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: ExactMatrix::identity(m.ring(), m.rank()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub ring: String,
    pub n: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub algebra: AlgebraJson,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub action: BTreeMap<String, MatrixJson>,
}

impl ModuleJson {
    pub fn from_module(m: &SchurModule) -> Self {
        let alg = m.algebra();
        ModuleJson {
            algebra: AlgebraJson { ring: alg.ring().name(), n: alg.n(), d: alg.d() },
            rank: m.rank(),
            label: m.label.clone(),
            action: (0..alg.dim())
                .map(|k| (alg.label(k), MatrixJson::from_matrix(m.action(k))))
                .collect(),
        }
    }

    /// Rebuilds (and re-verifies) the module.
    pub fn to_module(&self) -> Result<SchurModule> {
        let ring = RingSpec::parse(&self.algebra.ring)?;
        let alg = SchurAlgebra::new(ring, self.algebra.n, self.algebra.d);
        self.to_module_over(&alg)
    }

    pub fn to_module_over(&self, alg: &Arc<SchurAlgebra>) -> Result<SchurModule> {
        let mut action = Vec::with_capacity(alg.dim());
        for k in 0..alg.dim() {
            let mj = self
                .action
                .get(&alg.label(k))
                .ok_or_else(|| Error::Parse(format!("missing action of {}", alg.label(k))))?;
            let mat = mj.to_matrix()?;
            if mat.ring() != alg.ring() {
                return Err(Error::RingMismatch(mat.ring().name(), alg.ring().name()));
            }
            action.push(mat);
        }
        SchurModule::new(alg.clone(), self.rank, action, self.label.clone())
    }
}
