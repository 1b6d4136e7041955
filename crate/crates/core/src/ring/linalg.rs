use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::merge_rows;
use super::snf::{smith_normal_form, Smith};
use super::{ExactMatrix, RingSpec, Scalar};
use crate::error::Result;

type Row = Vec<(usize, Scalar)>;

/// Incremental row echelon basis over a field.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: RingSpec,
    rows: Vec<Row>,
    pivot: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ring: RingSpec) -> Self {
        assert!(ring.is_field(), "echelon form needs a field");
        Echelon { ring, rows: Vec::new(), pivot: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut r: Row) -> Row {
        let mut start = 0;
        loop {
            let hit = r
                .iter()
                .find(|(c, _)| *c >= start && self.pivot.contains_key(c))
                .map(|(c, v)| (*c, self.ring.neg(v)));
            let Some((c, coef)) = hit else { break };
            r = merge_rows(&self.ring, &r, &self.rows[self.pivot[&c]], Some(&coef));
            start = c + 1;
        }
        r
    }

    /// Adds a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, r: Row) -> Option<usize> {
        let r = self.reduce(r);
        let (c, lead) = r.first()?.clone();
        let inv = self.ring.inv(&lead).unwrap();
        let r: Row = r.into_iter().map(|(j, v)| (j, self.ring.mul(&v, &inv))).collect();
        self.pivot.insert(c, self.rows.len());
        self.rows.push(r);
        Some(c)
    }

    pub fn contains(&self, r: Row) -> bool {
        self.reduce(r).is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot.keys().copied().collect();
        p.sort_unstable();
        p
    }
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &ExactMatrix) -> Result<Rref> {
    let ring = m.ring();
    ring.require_field()?;
    let mut ech = Echelon::new(ring);
    for i in 0..m.rows() {
        ech.insert(m.row(i).to_vec());
    }
    let mut rows: Vec<(usize, Row)> = ech
        .rows
        .into_iter()
        .map(|r| (r[0].0, r))
        .collect();
    rows.sort_by_key(|x| x.0);
    for i in (0..rows.len()).rev() {
        let (p, ri) = rows[i].clone();
        for k in 0..i {
            if let Ok(pos) = rows[k].1.binary_search_by_key(&p, |e| e.0) {
                let coef = ring.neg(&rows[k].1[pos].1);
                rows[k].1 = merge_rows(&ring, &rows[k].1, &ri, Some(&coef));
            }
        }
    }
    let pivots: Vec<usize> = rows.iter().map(|x| x.0).collect();
    let rank = pivots.len();
    let mut data: Vec<Row> = rows.into_iter().map(|x| x.1).collect();
    data.resize(m.rows(), Vec::new());
    Ok(Rref {
        reduced: ExactMatrix::from_sparse_rows(ring, m.cols(), data),
        pivots,
        rank,
    })
}

fn as_rationals(m: &ExactMatrix) -> ExactMatrix {
    if m.ring() == RingSpec::Integers {
        m.change_ring(RingSpec::Rationals)
    } else {
        m.clone()
    }
}

/// Rank; over the integers this is the rank over the rationals.
pub fn rank(m: &ExactMatrix) -> usize {
    let q = as_rationals(m);
    let mut ech = Echelon::new(q.ring());
    for i in 0..q.rows() {
        ech.insert(q.row(i).to_vec());
    }
    ech.rank()
}

pub fn smith(m: &ExactMatrix) -> Result<Smith> {
    smith_normal_form(m)
}

/// Columns form a basis (or lattice basis over Z) of the kernel.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    let ring = m.ring();
    if ring == RingSpec::Integers {
        let s = smith_normal_form(m).unwrap();
        let keep: Vec<usize> = (s.rank()..m.cols()).collect();
        return s.v.select_cols(&keep);
    }
    let r = rref(m).unwrap();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.cols()];
        for &p in &r.pivots {
            v[p] = true;
        }
        v
    };
    let free: Vec<usize> = (0..m.cols()).filter(|&j| !is_pivot[j]).collect();
    let fidx: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut trip = Vec::new();
    for (k, &j) in free.iter().enumerate() {
        trip.push((j, k, ring.one()));
    }
    for (ri, &p) in r.pivots.iter().enumerate() {
        for (j, v) in r.reduced.row(ri) {
            if let Some(&k) = fidx.get(j) {
                trip.push((p, k, ring.neg(v)));
            }
        }
    }
    ExactMatrix::from_triplets(ring, m.cols(), free.len(), trip)
}

/// `(free_rank, torsion)` of the cokernel; unit invariant factors are dropped.
pub fn cokernel_invariants(m: &ExactMatrix) -> (usize, Vec<BigInt>) {
    if m.ring() == RingSpec::Integers {
        let s = smith_normal_form(m).unwrap();
        let torsion = s.diagonal.iter().filter(|x| !x.is_one()).cloned().collect();
        (m.rows() - s.rank(), torsion)
    } else {
        (m.rows() - rank(m), Vec::new())
    }
}

pub fn solve(m: &ExactMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let ring = m.ring();
    assert_eq!(b.len(), m.rows(), "solve: rhs length");
    if ring == RingSpec::Integers {
        let s = smith_normal_form(m).unwrap();
        return solve_with_smith(&s, m.cols(), b);
    }
    let bcol = ExactMatrix::from_columns(ring, m.rows(), &[b.to_vec()]);
    let aug = ExactMatrix::hstack(&[m, &bcol]);
    let r = rref(&aug).unwrap();
    if r.pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![ring.zero(); m.cols()];
    for (ri, &p) in r.pivots.iter().enumerate() {
        x[p] = r.reduced.get(ri, m.cols());
    }
    Some(x)
}

fn solve_with_smith(s: &Smith, cols: usize, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let ring = RingSpec::Integers;
    let ub = s.u.mul_vec(b);
    let mut y = vec![ring.zero(); cols];
    for (i, val) in ub.iter().enumerate() {
        let v = ring.to_bigint(val);
        if i < s.rank() {
            let d = &s.diagonal[i];
            if !(&v % d).is_zero() {
                return None;
            }
            y[i] = ring.from_bigint(&(v / d));
        } else if !v.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Columns spanning the column space; a lattice basis over Z.
pub fn image_basis(m: &ExactMatrix) -> ExactMatrix {
    if m.ring() == RingSpec::Integers {
        let s = smith_normal_form(m).unwrap();
        let cols: Vec<usize> = (0..s.rank()).collect();
        let mut b = s.u_inv.select_cols(&cols);
        let scale: Vec<(usize, usize, Scalar)> = s
            .diagonal
            .iter()
            .enumerate()
            .map(|(i, d)| (i, i, RingSpec::Integers.from_bigint(d)))
            .collect();
        b = b.mul(&ExactMatrix::from_triplets(RingSpec::Integers, s.rank(), s.rank(), scale));
        return b;
    }
    let r = rref(&m.transpose()).unwrap();
    // rows of the rref of m^T span the column space of m
    let rows: Vec<usize> = (0..r.rank).collect();
    r.reduced.select_rows(&rows).transpose()
}

/// Indices `j` such that the unit vectors `e_j` complete the columns of `sub`
/// (assumed independent, over a field) to a basis of `k^rows`.
pub fn complement_units(sub: &ExactMatrix) -> Vec<usize> {
    let r = rref(&sub.transpose()).unwrap();
    let mut is_p = vec![false; sub.rows()];
    for &p in &r.pivots {
        is_p[p] = true;
    }
    (0..sub.rows()).filter(|&j| !is_p[j]).collect()
}

pub fn inverse(m: &ExactMatrix) -> Option<ExactMatrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let n = m.rows();
    if n == 0 {
        return Some(m.clone());
    }
    if m.ring() == RingSpec::Integers {
        let s = smith_normal_form(m).unwrap();
        if s.rank() != n || s.diagonal.iter().any(|d| !d.is_one()) {
            return None;
        }
        return Some(s.v.mul(&s.u));
    }
    let aug = ExactMatrix::hstack(&[m, &ExactMatrix::identity(m.ring(), n)]);
    let r = rref(&aug).unwrap();
    if r.rank < n || r.pivots[n - 1] != n - 1 {
        return None;
    }
    let idx: Vec<usize> = (n..2 * n).collect();
    Some(r.reduced.select_cols(&idx))
}

pub fn is_invertible(m: &ExactMatrix) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    if m.ring() == RingSpec::Integers {
        let d = super::snf::det_integer(m);
        return d == BigInt::one() || d == -BigInt::one();
    }
    rank(m) == m.rows()
}

pub use super::snf::det_integer;

/// Coordinates with respect to a fixed family of independent columns.
#[derive(Clone, Debug)]
pub struct ColumnSpace {
    basis: ExactMatrix,
    kind: SpaceKind,
}

#[derive(Clone, Debug)]
enum SpaceKind {
    Field { rows: Vec<usize>, inv: ExactMatrix },
    Integer(Smith),
}

impl ColumnSpace {
    /// `basis` must have independent columns.
    pub fn new(basis: ExactMatrix) -> Self {
        let kind = if basis.ring() == RingSpec::Integers {
            SpaceKind::Integer(smith_normal_form(&basis).unwrap())
        } else {
            let r = rref(&basis.transpose()).unwrap();
            assert_eq!(r.rank, basis.cols(), "ColumnSpace basis is dependent");
            let inv = inverse(&basis.select_rows(&r.pivots)).unwrap();
            SpaceKind::Field { rows: r.pivots, inv }
        };
        ColumnSpace { basis, kind }
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of every column of `m`, or `None` if some column is outside the span.
    pub fn coords_matrix(&self, m: &ExactMatrix) -> Option<ExactMatrix> {
        let c = match &self.kind {
            SpaceKind::Field { rows, inv } => inv.mul(&m.select_rows(rows)),
            SpaceKind::Integer(s) => {
                let cols: Option<Vec<Vec<Scalar>>> = m
                    .columns()
                    .iter()
                    .map(|col| solve_with_smith(s, self.basis.cols(), col))
                    .collect();
                ExactMatrix::from_columns(m.ring(), self.basis.cols(), &cols?)
            }
        };
        if self.basis.mul(&c) == *m {
            Some(c)
        } else {
            None
        }
    }

    /// Coordinates without the membership check (fields only; falls back to the check over Z).
    pub fn coords_unchecked(&self, m: &ExactMatrix) -> ExactMatrix {
        match &self.kind {
            SpaceKind::Field { rows, inv } => inv.mul(&m.select_rows(rows)),
            SpaceKind::Integer(_) => self.coords_matrix(m).expect("vector outside lattice"),
        }
    }

    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let m = ExactMatrix::from_columns(self.basis.ring(), v.len(), &[v.to_vec()]);
        self.coords_matrix(&m).map(|c| c.column(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let f2 = RingSpec::PrimeField(2);
        let r = rref(&ExactMatrix::identity(f2, 3)).unwrap();
        assert_eq!((r.rank, r.pivots), (3, vec![0, 1, 2]));
        let q = RingSpec::Rationals;
        assert_eq!(rref(&ExactMatrix::zeros(q, 2, 5)).unwrap().rank, 0);
        let m = ExactMatrix::from_i64_rows(q, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(rref(&m).unwrap().rank, 1);
        assert!(rref(&ExactMatrix::identity(RingSpec::Integers, 2)).is_err());
    }

    #[test]
    fn kernels() {
        let f2 = RingSpec::PrimeField(2);
        let k = kernel_basis(&ExactMatrix::from_i64_rows(f2, &[vec![1, 1]]));
        assert_eq!(k.column(0), vec![f2.one(), f2.one()]);
        assert_eq!(kernel_basis(&ExactMatrix::identity(f2, 3)).cols(), 0);
        let z = RingSpec::Integers;
        assert_eq!(kernel_basis(&ExactMatrix::from_i64_rows(z, &[vec![2]])).cols(), 0);
    }

    #[test]
    fn cokernels_and_solve() {
        let z = RingSpec::Integers;
        let two = ExactMatrix::from_i64_rows(z, &[vec![2]]);
        assert_eq!(cokernel_invariants(&two), (0, vec![BigInt::from(2)]));
        assert_eq!(cokernel_invariants(&ExactMatrix::zeros(z, 3, 0)), (3, vec![]));
        let d23 = ExactMatrix::from_i64_rows(z, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(cokernel_invariants(&d23), (0, vec![BigInt::from(6)]));
        assert_eq!(solve(&two, &[z.one()]), None);
        let q = RingSpec::Rationals;
        let twoq = ExactMatrix::from_i64_rows(q, &[vec![2]]);
        assert_eq!(solve(&twoq, &[q.one()]).unwrap()[0].to_string(), "1/2");
        let b = vec![q.from_i64(3), q.from_i64(-1)];
        assert_eq!(solve(&ExactMatrix::identity(q, 2), &b), Some(b));
    }

    #[test]
    fn column_space_coords() {
        let q = RingSpec::Rationals;
        let b = ExactMatrix::from_i64_rows(q, &[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let cs = ColumnSpace::new(b);
        let v = vec![q.from_i64(2), q.from_i64(5), q.from_i64(3)];
        assert_eq!(cs.coords(&v), Some(vec![q.from_i64(2), q.from_i64(3)]));
        assert_eq!(cs.coords(&[q.one(), q.zero(), q.zero()]), None);
    }
}
