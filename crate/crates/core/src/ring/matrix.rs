use std::fmt;

use super::{RingSpec, Scalar};

/// Sparse matrix over an exact ring, stored by rows with zero suppression.
///
/// Each row is a list of `(column, value)` pairs sorted by column with no
/// zero values. Two matrices compare equal iff they have the same ring,
/// shape and entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

impl ExactMatrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix { ring, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, ring.one())]).collect();
        ExactMatrix { ring, rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(ring: RingSpec, rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i},{j}) out of bounds {rows}x{cols}");
            buckets[i].push((j, v));
        }
        let data = buckets.into_iter().map(|row| normalize_row(&ring, row)).collect();
        ExactMatrix { ring, rows, cols, data }
    }

    pub fn from_i64_rows(ring: RingSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let trip = rows.iter().enumerate().flat_map(|(i, r)| {
            assert_eq!(r.len(), cols, "ragged rows");
            r.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(move |(j, v)| (i, j, ring.from_i64(*v)))
        });
        Self::from_triplets(ring, rows.len(), cols, trip)
    }

    pub fn from_rows(ring: RingSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let trip = rows.into_iter().enumerate().flat_map(|(i, r)| {
            assert_eq!(r.len(), cols, "ragged rows");
            r.into_iter().enumerate().map(move |(j, v)| (i, j, v))
        });
        Self::from_triplets(ring, n, cols, trip)
    }

    pub fn from_columns(ring: RingSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let trip = columns.iter().enumerate().flat_map(|(j, c)| {
            assert_eq!(c.len(), rows, "column length mismatch");
            c.iter().enumerate().map(move |(i, v)| (i, j, v.clone()))
        });
        Self::from_triplets(ring, rows, columns.len(), trip)
    }

    pub(crate) fn from_sparse_rows(
        ring: RingSpec,
        cols: usize,
        data: Vec<Vec<(usize, Scalar)>>,
    ) -> Self {
        let rows = data.len();
        ExactMatrix { ring, rows, cols, data }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.data[i]
    }


    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && self.ring.is_one(&r[0].1))
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => self.ring.zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.ring.zero(); self.rows]; self.cols];
        for (i, j, v) in self.entries() {
            out[j][i] = v.clone();
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.ring.zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            data[j].push((i, v.clone()));
        }
        ExactMatrix { ring: self.ring, rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.ring, other.ring, "ring mismatch in product");
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let ring = self.ring;
        let mut acc: Vec<Option<Scalar>> = vec![None; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let p = ring.mul(a, b);
                    match &mut acc[*j] {
                        Some(s) => *s = ring.add(s, &p),
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for j in touched.drain(..) {
                let v = acc[j].take().unwrap();
                if !ring.is_zero(&v) {
                    out.push((j, v));
                }
            }
            data.push(out);
        }
        ExactMatrix { ring, rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter().fold(self.ring.zero(), |s, (j, a)| {
                    self.ring.add(&s, &self.ring.mul(a, &v[*j]))
                })
            })
            .collect()
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| merge_rows(&self.ring, a, b, None))
            .collect();
        ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        if self.ring.is_zero(c) {
            return Self::zeros(self.ring, self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(j, v)| (*j, self.ring.mul(v, c)))
                    .filter(|(_, v)| !self.ring.is_zero(v))
                    .collect()
            })
            .collect();
        ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> ExactMatrix {
        self.scale(&self.ring.neg(&self.ring.one()))
    }

    pub fn hstack(blocks: &[&ExactMatrix]) -> ExactMatrix {
        let ring = blocks[0].ring;
        let rows = blocks[0].rows;
        let mut data = vec![Vec::new(); rows];
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for (i, r) in b.data.iter().enumerate() {
                data[i].extend(r.iter().map(|(j, v)| (j + off, v.clone())));
            }
            off += b.cols;
        }
        ExactMatrix { ring, rows, cols: off, data }
    }

    pub fn vstack(blocks: &[&ExactMatrix]) -> ExactMatrix {
        let ring = blocks[0].ring;
        let cols = blocks[0].cols;
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        ExactMatrix { ring, rows: data.len(), cols, data }
    }

    pub fn block_diag(ring: RingSpec, blocks: &[ExactMatrix]) -> ExactMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows);
        let mut off = 0;
        for b in blocks {
            for r in &b.data {
                data.push(r.iter().map(|(j, v)| (j + off, v.clone())).collect());
            }
            off += b.cols;
        }
        ExactMatrix { ring, rows, cols, data }
    }

    /// Writes `block` into a copy of `self` with its top-left corner at `(r0, c0)`,
    /// adding to existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for (i, r) in block.data.iter().enumerate() {
            if r.is_empty() {
                continue;
            }
            let shifted: Vec<(usize, Scalar)> =
                r.iter().map(|(j, v)| (j + c0, v.clone())).collect();
            let merged = merge_rows(&self.ring, &self.data[r0 + i], &shifted, None);
            self.data[r0 + i] = merged;
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> ExactMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, c) in cols.iter().enumerate() {
            pos[*c] = k;
        }
        if cols.iter().collect::<std::collections::HashSet<_>>().len() != cols.len() {
            return self.transpose().select_rows(cols).transpose();
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut out: Vec<(usize, Scalar)> = r
                    .iter()
                    .filter(|(j, _)| pos[*j] != usize::MAX)
                    .map(|(j, v)| (pos[*j], v.clone()))
                    .collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        ExactMatrix { ring: self.ring, rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> ExactMatrix {
        let data = rows.iter().map(|i| self.data[*i].clone()).collect();
        ExactMatrix { ring: self.ring, rows: rows.len(), cols: self.cols, data }
    }

    /// Reinterprets the entries in another ring (used for reduction mod p).
    pub fn change_ring(&self, target: RingSpec) -> ExactMatrix {
        let trip = self.entries().map(|(i, j, v)| {
            let q = self.ring.to_rational(v);
            (i, j, target.from_rational(&q).expect("entry not representable"))
        });
        ExactMatrix::from_triplets(target, self.rows, self.cols, trip.collect::<Vec<_>>())
    }
}

pub(crate) fn normalize_row(ring: &RingSpec, mut row: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv = ring.add(lv, &v),
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !ring.is_zero(v));
    out
}

/// Returns `a + c*b` for sorted sparse rows (`c = 1` when `None`).
pub(crate) fn merge_rows(
    ring: &RingSpec,
    a: &[(usize, Scalar)],
    b: &[(usize, Scalar)],
    c: Option<&Scalar>,
) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    let scaled = |v: &Scalar| match c {
        Some(c) => ring.mul(c, v),
        None => v.clone(),
    };
    while i < a.len() || k < b.len() {
        if k == b.len() || (i < a.len() && a[i].0 < b[k].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[k].0 < a[i].0 {
            let v = scaled(&b[k].1);
            if !ring.is_zero(&v) {
                out.push((b[k].0, v));
            }
            k += 1;
        } else {
            let v = ring.add(&a[i].1, &scaled(&b[k].1));
            if !ring.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix<{}> {}x{}", self.ring, self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for r in self.to_dense() {
                let s: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", s.join(" "))?;
            }
        }
        Ok(())
    }
}
