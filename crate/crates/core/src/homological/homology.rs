use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::complex::{ChainComplex, LinearComplex};
use crate::error::Result;
use crate::ring::linalg::{complement_units, inverse, ColumnSpace};
use crate::ring::{image_basis, kernel_basis, smith_normal_form, ExactMatrix, RingSpec};
use crate::schur::{SchurAlgebra, SchurModule};

#[derive(Clone, Debug)]
pub struct HomologyDegree {
    pub degree: i64,
    pub free_rank: usize,
    /// Invariant factors other than units (always empty over a field).
    pub torsion: Vec<BigInt>,
    /// The induced module structure on the torsion-free part.
    pub module: Option<SchurModule>,
}

impl HomologyDegree {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub degrees: Vec<HomologyDegree>,
}

impl HomologyReport {
    pub fn at(&self, deg: i64) -> Option<&HomologyDegree> {
        self.degrees.iter().find(|h| h.degree == deg)
    }

    pub fn free_rank(&self, deg: i64) -> usize {
        self.at(deg).map_or(0, |h| h.free_rank)
    }

    pub fn module(&self, deg: i64) -> Option<&SchurModule> {
        self.at(deg).and_then(|h| h.module.as_ref())
    }

    /// Degrees with nonzero homology.
    pub fn support(&self) -> Vec<i64> {
        self.degrees.iter().filter(|h| !h.is_zero()).map(|h| h.degree).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_empty()
    }

    /// True if all homology outside `deg` vanishes.
    pub fn concentrated_in(&self, deg: i64) -> bool {
        self.support().iter().all(|&d| d == deg)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|h| if h.degree % 2 == 0 { h.free_rank as i64 } else { -(h.free_rank as i64) })
            .sum()
    }
}

struct Cycles {
    free_rank: usize,
    torsion: Vec<BigInt>,
    // projection from cycle coordinates onto homology, and a section
    proj: ExactMatrix,
    sect: ExactMatrix,
    zb: ExactMatrix,
    cs: ColumnSpace,
}

fn cycles(ring: RingSpec, r: usize, d_in: Option<&ExactMatrix>, d_out: Option<&ExactMatrix>) -> Cycles {
    let zb = match d_out {
        Some(d) => kernel_basis(d),
        None => ExactMatrix::identity(ring, r),
    };
    let z = zb.cols();
    let cs = ColumnSpace::new(zb.clone());
    let bz = match d_in {
        Some(d) if z > 0 => cs.coords_matrix(d).expect("boundaries are cycles"),
        _ => ExactMatrix::zeros(ring, z, 0),
    };
    if ring == RingSpec::Integers {
        let s = smith_normal_form(&bz).unwrap();
        let rk = s.rank();
        let torsion = s.diagonal.iter().filter(|d| !d.magnitude().is_one()).cloned().collect();
        let rest: Vec<usize> = (rk..z).collect();
        return Cycles {
            free_rank: z - rk,
            torsion,
            proj: s.u.select_rows(&rest),
            sect: s.u_inv.select_cols(&rest),
            zb,
            cs,
        };
    }
    let bi = image_basis(&bz);
    let comp = complement_units(&bi);
    let e = ExactMatrix::identity(ring, z).select_cols(&comp);
    let full = ExactMatrix::hstack(&[&bi, &e]);
    let inv = inverse(&full).expect("boundaries plus complement form a basis");
    let rows: Vec<usize> = (bi.cols()..z).collect();
    Cycles { free_rank: comp.len(), torsion: vec![], proj: inv.select_rows(&rows), sect: e, zb, cs }
}

fn induced_module(alg: &Arc<SchurAlgebra>, obj: &SchurModule, c: &Cycles) -> Result<SchurModule> {
    let action: Vec<ExactMatrix> = (0..alg.dim())
        .map(|k| {
            let az = c.cs.coords_unchecked(&obj.action(k).mul(&c.zb));
            c.proj.mul(&az).mul(&c.sect)
        })
        .collect();
    SchurModule::new(alg.clone(), c.free_rank, action, None)
}

/// Homology of a complex of modules, optionally with the induced action.
pub fn homology(c: &ChainComplex, with_action: bool) -> Result<HomologyReport> {
    let ring = c.ring();
    let mut degrees = Vec::new();
    for deg in c.degrees() {
        let obj = c.object(deg).unwrap();
        let cy = cycles(ring, obj.rank(), c.differential(deg - 1), c.differential(deg));
        let module = if with_action { Some(induced_module(c.algebra(), obj, &cy)?) } else { None };
        degrees.push(HomologyDegree {
            degree: deg,
            free_rank: cy.free_rank,
            torsion: cy.torsion,
            module,
        });
    }
    Ok(HomologyReport { degrees })
}

pub fn linear_homology(c: &LinearComplex) -> HomologyReport {
    let mut degrees = Vec::new();
    for (k, &r) in c.dims.iter().enumerate() {
        let d_in = if k > 0 { c.diffs.get(k - 1) } else { None };
        let cy = cycles(c.ring, r, d_in, c.diffs.get(k));
        degrees.push(HomologyDegree {
            degree: c.lo + k as i64,
            free_rank: cy.free_rank,
            torsion: cy.torsion,
            module: None,
        });
    }
    HomologyReport { degrees }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyDegreeJson {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

pub fn homology_json(h: &HomologyReport) -> Vec<HomologyDegreeJson> {
    h.degrees
        .iter()
        .map(|d| HomologyDegreeJson {
            degree: d.degree,
            free_rank: d.free_rank,
            torsion: d.torsion.iter().map(|t| t.to_string()).collect(),
        })
        .collect()
}
