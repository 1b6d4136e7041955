use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A composition `λ = (λ_1, …, λ_n)` of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub parts: Vec<usize>,
}

impl Weight {
    pub fn new(parts: Vec<usize>) -> Self {
        Weight { parts }
    }

    /// Checks membership in `Λ(n, d)`.
    pub fn checked(parts: Vec<usize>, n: usize, d: usize) -> Result<Self> {
        if parts.len() != n || parts.iter().sum::<usize>() != d {
            return Err(Error::WeightOutOfRange(parts, n, d));
        }
        Ok(Weight { parts })
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    /// Nonzero parts only.
    pub fn positive_parts(&self) -> Vec<usize> {
        self.parts.iter().copied().filter(|&p| p > 0).collect()
    }

    /// Conjugate partition (of the positive parts, in decreasing order).
    pub fn conjugate(&self) -> Weight {
        let mut p = self.positive_parts();
        p.sort_unstable_by(|a, b| b.cmp(a));
        let m = p.first().copied().unwrap_or(0);
        Weight { parts: (1..=m).map(|i| p.iter().filter(|&&x| x >= i).count()).collect() }
    }

    /// Padded to length `n` with zeros (or truncated zeros).
    pub fn padded(&self, n: usize) -> Weight {
        let mut p = self.positive_parts();
        p.resize(n.max(p.len()), 0);
        Weight { parts: p }
    }

    /// For a partition: maps the row-reading index of each Young diagram cell
    /// to its column-reading index (0-based).
    pub fn row_to_col(&self) -> Vec<usize> {
        let lam = self.positive_parts();
        let conj = self.conjugate().parts;
        let mut col_start = vec![0; conj.len() + 1];
        for j in 0..conj.len() {
            col_start[j + 1] = col_start[j] + conj[j];
        }
        let mut out = Vec::with_capacity(self.degree());
        for (i, &li) in lam.iter().enumerate() {
            for j in 0..li {
                out.push(col_start[j] + i);
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        format!("({})", s.join(","))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `Λ(n, d)` in reverse lexicographic order, e.g. `(2,0), (1,1), (0,2)`.
pub fn compositions(n: usize, d: usize) -> Vec<Weight> {
    fn rec(n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Weight>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(Weight::new(cur.clone()));
            cur.pop();
            return;
        }
        for first in (0..=d).rev() {
            cur.push(first);
            rec(n, d - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Weight::new(vec![]));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `d` with all parts positive and exactly `p` parts.
pub fn positive_compositions(p: usize, d: usize) -> Vec<Weight> {
    compositions(p, d).into_iter().filter(|w| w.parts.iter().all(|&x| x > 0)).collect()
}

/// Partitions of `d` in decreasing lexicographic order.
pub fn partitions(d: usize) -> Vec<Weight> {
    fn rec(d: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Weight>) {
        if d == 0 {
            out.push(Weight::new(cur.clone()));
            return;
        }
        for first in (1..=d.min(max)).rev() {
            cur.push(first);
            rec(d - first, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_2_2_order() {
        let w: Vec<Vec<usize>> = compositions(2, 2).into_iter().map(|w| w.parts).collect();
        assert_eq!(w, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(positive_compositions(2, 3).len(), 2);
    }

    #[test]
    fn conjugates_and_reading_orders() {
        assert_eq!(Weight::new(vec![2, 1]).conjugate().parts, vec![2, 1]);
        assert_eq!(Weight::new(vec![3]).conjugate().parts, vec![1, 1, 1]);
        assert_eq!(Weight::new(vec![2, 1]).row_to_col(), vec![0, 2, 1]);
        assert_eq!(Weight::new(vec![3]).row_to_col(), vec![0, 1, 2]);
        assert_eq!(partitions(3).len(), 3);
    }

    #[test]
    fn out_of_range() {
        assert!(Weight::checked(vec![1, 0], 2, 2).is_err());
        assert!(Weight::checked(vec![1, 1], 2, 2).is_ok());
    }
}
