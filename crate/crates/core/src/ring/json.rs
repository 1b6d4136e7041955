use serde::{Deserialize, Serialize};

use super::{ExactMatrix, RingSpec};
use crate::error::{Error, Result};

/// Wire form of an [`ExactMatrix`]; entries are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

pub fn ring_to_json(ring: RingSpec) -> (String, Option<u64>) {
    match ring {
        RingSpec::PrimeField(p) => ("F_p".into(), Some(p)),
        RingSpec::Rationals => ("Q".into(), None),
        RingSpec::Integers => ("Z".into(), None),
    }
}

pub fn ring_from_json(ring: &str, p: Option<u64>) -> Result<RingSpec> {
    match (ring, p) {
        ("F_p", Some(p)) => RingSpec::prime_field(p),
        ("F_p", None) => Err(Error::Parse("F_p ring without p".into())),
        (other, _) => RingSpec::parse(other),
    }
}

impl MatrixJson {
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        let (ring, p) = ring_to_json(m.ring());
        MatrixJson {
            ring,
            p,
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().map(|(i, j, v)| (i, j, v.to_string())).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ExactMatrix> {
        let ring = ring_from_json(&self.ring, self.p)?;
        let mut trip = Vec::with_capacity(self.entries.len());
        for (i, j, s) in &self.entries {
            if *i >= self.rows || *j >= self.cols {
                return Err(Error::Parse(format!("entry ({i},{j}) out of bounds")));
            }
            trip.push((*i, *j, ring.parse_scalar(s)?));
        }
        Ok(ExactMatrix::from_triplets(ring, self.rows, self.cols, trip))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let q = RingSpec::Rationals;
        let m = ExactMatrix::from_rows(q, 2, vec![vec![q.parse_scalar("1/3").unwrap(), q.zero()]]);
        let j = serde_json::to_string(&MatrixJson::from_matrix(&m)).unwrap();
        let back: MatrixJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
        let f3 = ExactMatrix::identity(RingSpec::PrimeField(3), 2);
        let j = MatrixJson::from_matrix(&f3);
        assert_eq!(j.p, Some(3));
        assert_eq!(j.to_matrix().unwrap(), f3);
    }
}
