use std::sync::Arc;

use super::extension::Extension;
use crate::divided_powers::{dualize, monoidal_tensor, SymTensor};
use crate::error::{Error, Result};
use crate::ring::linalg::{image_basis, ColumnSpace};
use crate::ring::ExactMatrix;
use crate::schur::SchurModule;

/// Which of the two basic constructions a piece evaluates.
///
/// `Tensor`: `(Γ^{d,V} e ⊗ X)(U) = X(U ⊗ V*)`, coordinates `(u, a) ↦ u·v + a`.
/// `Hom`: `Hom(Γ^{d,V} e, X)(U) = X(V ⊗ U)`, coordinates `(a, u) ↦ a·n + u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Tensor,
    Hom,
}

#[derive(Clone, Debug)]
enum Selection {
    Coords(Vec<usize>),
    Basis(ColumnSpace),
}

impl Selection {
    fn dim(&self) -> usize {
        match self {
            Selection::Coords(c) => c.len(),
            Selection::Basis(cs) => cs.dim(),
        }
    }

    fn embed(&self, m: &ExactMatrix) -> ExactMatrix {
        match self {
            Selection::Coords(c) => m.select_cols(c),
            Selection::Basis(cs) => m.mul(cs.basis()),
        }
    }

    fn project(&self, m: &ExactMatrix) -> Result<ExactMatrix> {
        match self {
            Selection::Coords(c) => Ok(m.select_rows(c)),
            Selection::Basis(cs) => cs
                .coords_matrix(m)
                .ok_or_else(|| Error::InvariantViolation("map leaves the cut summand".into())),
        }
    }
}

/// One summand `Γ^{d,k^v} e ⊗ X` or `Hom(Γ^{d,k^v} e, X)` evaluated at `k^n`,
/// as a module over `S(n, d)`.
#[derive(Clone, Debug)]
pub struct Piece {
    ext: Arc<Extension>,
    v: usize,
    side: Side,
    sel: Selection,
    module: SchurModule,
}

/// The weights `λ` if `e = Σ e_λ` is a sum of distinct weight idempotents.
pub fn diagonal_weights(e: &SymTensor) -> Option<Vec<Vec<usize>>> {
    let ring = e.ring();
    let mut out = Vec::new();
    for (x, c) in e.terms() {
        if !ring.is_one(c) || x.pairs().iter().any(|&(i, j)| i != j) {
            return None;
        }
        out.push(x.dom_marginal(e.dom()));
    }
    Some(out)
}

impl Piece {
    pub fn new(
        x: &SchurModule,
        v: usize,
        e: Option<&SymTensor>,
        side: Side,
        ext: Option<Arc<Extension>>,
    ) -> Result<Piece> {
        let alg = x.algebra();
        let (n, d, ring) = (alg.n(), alg.d(), alg.ring());
        let ext = match ext {
            Some(e) if e.m() == n * v => e,
            _ => Arc::new(Extension::new(x, n * v)?),
        };
        let idn = SymTensor::identity(ring, n, d);
        let sel = match e {
            None => Selection::Coords((0..ext.rank()).collect()),
            Some(e) => match diagonal_weights(e) {
                Some(ws) => {
                    let mut keep = Vec::new();
                    for (k, nu) in ext.weights().iter().enumerate() {
                        let mut marg = vec![0; v];
                        for (idx, &c) in nu.parts.iter().enumerate() {
                            let a = match side {
                                Side::Tensor => idx % v,
                                Side::Hom => idx / n,
                            };
                            marg[a] += c;
                        }
                        if ws.contains(&marg) {
                            keep.extend(ext.block(k));
                        }
                    }
                    Selection::Coords(keep)
                }
                None => {
                    let t = match side {
                        Side::Tensor => monoidal_tensor(&idn, &dualize(e))?,
                        Side::Hom => monoidal_tensor(e, &idn)?,
                    };
                    Selection::Basis(ColumnSpace::new(image_basis(&ext.act(&t)?)))
                }
            },
        };
        let idv = SymTensor::identity(ring, v, d);
        let mut action = Vec::with_capacity(alg.dim());
        for k in 0..alg.dim() {
            let xi = alg.to_tensor(&alg.basis_vector(k));
            let t = match side {
                Side::Tensor => monoidal_tensor(&xi, &idv)?,
                Side::Hom => monoidal_tensor(&idv, &xi)?,
            };
            action.push(sel.project(&sel.embed(&ext.act(&t)?))?);
        }
        let module = SchurModule::new(alg.clone(), sel.dim(), action, None)?;
        Ok(Piece { ext, v, side, sel, module })
    }

    pub fn module(&self) -> &SchurModule {
        &self.module
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn extension(&self) -> &Arc<Extension> {
        &self.ext
    }

    /// Map induced by a Yoneda element `η ∈ Γ^d Hom(k^w, k^v)`.
    ///
    /// For `Tensor` pieces this goes from the piece of `k^v` (`self`) to the
    /// piece of `k^w` (`other`); for `Hom` pieces from `k^w` (`self`) to `k^v`.
    pub fn induced(&self, other: &Piece, eta: &SymTensor) -> Result<ExactMatrix> {
        if self.side != other.side {
            return Err(Error::ShapeMismatch("pieces of different kinds".into()));
        }
        let n = self.module.algebra().n();
        let ring = self.module.ring();
        let d = self.module.algebra().d();
        let t = match self.side {
            Side::Tensor => {
                monoidal_tensor(&SymTensor::identity(ring, n, d), &dualize(eta))?
            }
            Side::Hom => monoidal_tensor(eta, &SymTensor::identity(ring, n, d))?,
        };
        let full = other.ext.map_from(&self.ext, &t)?;
        other.sel.project(&self.sel.embed(&full))
    }

    /// Extension of a module map `f: X → X'` to the corresponding pieces.
    pub fn induced_by_map(&self, other: &Piece, f: &ExactMatrix) -> Result<ExactMatrix> {
        let full = super::extension::extend_map(f, &self.ext, &other.ext)?;
        other.sel.project(&self.sel.embed(&full))
    }
}
