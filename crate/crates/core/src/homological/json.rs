use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::ring::MatrixJson;
use crate::schur::{ModuleJson, SchurAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub degrees: [i64; 2],
    pub objects: BTreeMap<i64, ModuleJson>,
    pub differentials: BTreeMap<i64, MatrixJson>,
}

impl ComplexJson {
    pub fn from_complex(c: &ChainComplex) -> Self {
        ComplexJson {
            degrees: [c.lo(), c.hi()],
            objects: c.degrees().map(|i| (i, ModuleJson::from_module(c.object(i).unwrap()))).collect(),
            differentials: c
                .degrees()
                .filter_map(|i| c.differential(i).map(|d| (i, MatrixJson::from_matrix(d))))
                .collect(),
        }
    }

    /// The algebra named by the lowest object.
    pub fn algebra(&self) -> Result<Arc<SchurAlgebra>> {
        let m = self.objects.values().next().ok_or_else(|| Error::Parse("complex JSON has no objects".into()))?;
        let ring = crate::ring::RingSpec::parse(&m.algebra.ring)?;
        Ok(SchurAlgebra::new(ring, m.algebra.n, m.algebra.d))
    }

    pub fn to_complex(&self, alg: &Arc<SchurAlgebra>) -> Result<ChainComplex> {
        let [lo, hi] = self.degrees;
        let missing = |i: i64| Error::Parse(format!("complex JSON lacks degree {i}"));
        let objects: Result<Vec<_>> = (lo..=hi)
            .map(|i| self.objects.get(&i).ok_or_else(|| missing(i))?.to_module_over(alg))
            .collect();
        let diffs: Result<Vec<_>> = (lo..hi)
            .map(|i| self.differentials.get(&i).ok_or_else(|| missing(i))?.to_matrix())
            .collect();
        ChainComplex::new(alg.clone(), lo, objects?, diffs?)
    }
}
