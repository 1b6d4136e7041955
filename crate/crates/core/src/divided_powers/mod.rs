//! The category of divided powers: morphism spaces `Γ^d Hom(k^m, k^n)`
//! in the orbit-sum basis, with composition, tensor product and duality.
//!
//! Pairs are stored 0-based as `(i, j)` with `i` a codomain index and `j`
//! a domain index, i.e. the elementary matrix `E_ij`. Labels and JSON are
//! 1-based.

mod weight;

pub use weight::{compositions, partitions, positive_compositions, Weight};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{ExactMatrix, RingSpec, Scalar};

pub type Pair = (usize, usize);

/// A sorted multiset of pairs; denotes the sum of its distinct arrangements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset(Vec<Pair>);

impl Multiset {
    pub fn new(mut pairs: Vec<Pair>) -> Self {
        pairs.sort_unstable();
        Multiset(pairs)
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` = number of pairs with codomain index `i`.
    pub fn cod_marginal(&self, n: usize) -> Vec<usize> {
        let mut w = vec![0; n];
        for &(i, _) in &self.0 {
            w[i] += 1;
        }
        w
    }

    pub fn dom_marginal(&self, m: usize) -> Vec<usize> {
        let mut w = vec![0; m];
        for &(_, j) in &self.0 {
            w[j] += 1;
        }
        w
    }

    pub fn dualized(&self) -> Multiset {
        Multiset::new(self.0.iter().map(|&(i, j)| (j, i)).collect())
    }

    pub fn arrangements(&self) -> Vec<Vec<Pair>> {
        arrangements(&self.0)
    }

    /// 1-based `"i.j,i.j,…"`; the empty multiset is `"()"`.
    pub fn label(&self) -> String {
        if self.0.is_empty() {
            return "()".into();
        }
        let s: Vec<String> = self.0.iter().map(|(i, j)| format!("{}.{}", i + 1, j + 1)).collect();
        s.join(",")
    }

    pub fn parse_label(s: &str) -> Result<Multiset> {
        let s = s.trim();
        if s == "()" || s.is_empty() {
            return Ok(Multiset(vec![]));
        }
        let bad = || Error::Parse(format!("bad multiset label '{s}'"));
        let mut pairs = Vec::new();
        for part in s.split(',') {
            let (i, j) = part.trim().split_once('.').ok_or_else(bad)?;
            let i: usize = i.parse().map_err(|_| bad())?;
            let j: usize = j.parse().map_err(|_| bad())?;
            if i == 0 || j == 0 {
                return Err(bad());
            }
            pairs.push((i - 1, j - 1));
        }
        Ok(Multiset::new(pairs))
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All distinct orderings of a sorted slice, starting with the sorted one.
pub fn arrangements<T: Ord + Clone>(sorted: &[T]) -> Vec<Vec<T>> {
    let mut cur = sorted.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Sorted list of all size-`d` multisets of pairs over `[n] × [m]`.
pub fn sym_basis(m: usize, n: usize, d: usize) -> Vec<Multiset> {
    let symbols: Vec<Pair> = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(symbols: &[Pair], start: usize, d: usize, cur: &mut Vec<Pair>, out: &mut Vec<Multiset>) {
        if cur.len() == d {
            out.push(Multiset(cur.clone()));
            return;
        }
        for s in start..symbols.len() {
            cur.push(symbols[s]);
            rec(symbols, s, d, cur, out);
            cur.pop();
        }
    }
    rec(&symbols, 0, d, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// An element of `Γ^d Hom(k^dom, k^cod)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymTensor {
    ring: RingSpec,
    d: usize,
    dom: usize,
    cod: usize,
    coeffs: BTreeMap<Multiset, Scalar>,
}

impl SymTensor {
    pub fn zero(ring: RingSpec, d: usize, dom: usize, cod: usize) -> Self {
        SymTensor { ring, d, dom, cod, coeffs: BTreeMap::new() }
    }

    pub fn from_terms<I>(ring: RingSpec, d: usize, dom: usize, cod: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Multiset, Scalar)>,
    {
        let mut t = SymTensor::zero(ring, d, dom, cod);
        for (m, c) in terms {
            if m.len() != d || m.0.iter().any(|&(i, j)| i >= cod || j >= dom) {
                return Err(Error::ShapeMismatch(format!(
                    "multiset {m} does not index Γ^{d} Hom(k^{dom}, k^{cod})"
                )));
            }
            t.add_term(m, &c);
        }
        Ok(t)
    }

    pub fn basis_element(ring: RingSpec, d: usize, dom: usize, cod: usize, m: Multiset) -> Self {
        let one = ring.one();
        SymTensor::from_terms(ring, d, dom, cod, [(m, one)]).expect("basis element out of range")
    }

    pub(crate) fn add_term(&mut self, m: Multiset, c: &Scalar) {
        if self.ring.is_zero(c) {
            return;
        }
        let ring = self.ring;
        match self.coeffs.get_mut(&m) {
            Some(v) => {
                *v = ring.add(v, c);
                if ring.is_zero(v) {
                    self.coeffs.remove(&m);
                }
            }
            None => {
                self.coeffs.insert(m, c.clone());
            }
        }
    }

    /// `Σ_λ e_λ`, the identity of `k^n`.
    pub fn identity(ring: RingSpec, n: usize, d: usize) -> Self {
        let mut t = SymTensor::zero(ring, d, n, n);
        for w in compositions(n, d) {
            t.add_term(diagonal_multiset(&w), &ring.one());
        }
        t
    }

    /// `Γ^d(f)` for a linear map `f`: the element `f ⊗ … ⊗ f`.
    pub fn tensor_power(f: &ExactMatrix, d: usize) -> Self {
        let ring = f.ring();
        let entries: Vec<(Pair, Scalar)> = f.entries().map(|(i, j, v)| ((i, j), v.clone())).collect();
        let mut t = SymTensor::zero(ring, d, f.cols(), f.rows());
        let mut cur: Vec<usize> = Vec::new();
        fn rec(
            entries: &[(Pair, Scalar)],
            start: usize,
            d: usize,
            cur: &mut Vec<usize>,
            ring: RingSpec,
            t: &mut SymTensor,
        ) {
            if cur.len() == d {
                let mut c = ring.one();
                for &k in cur.iter() {
                    c = ring.mul(&c, &entries[k].1);
                }
                t.add_term(Multiset::new(cur.iter().map(|&k| entries[k].0).collect()), &c);
                return;
            }
            for s in start..entries.len() {
                cur.push(s);
                rec(entries, s, d, cur, ring, t);
                cur.pop();
            }
        }
        rec(&entries, 0, d, &mut cur, ring, &mut t);
        t
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multiset, &Scalar)> + '_ {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, m: &Multiset) -> Scalar {
        self.coeffs.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn check_same_space(&self, other: &SymTensor) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.name(), other.ring.name()));
        }
        if (self.d, self.dom, self.cod) != (other.d, other.dom, other.cod) {
            return Err(Error::ShapeMismatch("symmetric tensors in different spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymTensor) -> Result<SymTensor> {
        self.check_same_space(other)?;
        let mut t = self.clone();
        for (m, c) in &other.coeffs {
            t.add_term(m.clone(), c);
        }
        Ok(t)
    }

    pub fn scale(&self, c: &Scalar) -> SymTensor {
        let mut t = SymTensor::zero(self.ring, self.d, self.dom, self.cod);
        for (m, v) in &self.coeffs {
            t.add_term(m.clone(), &self.ring.mul(c, v));
        }
        t
    }

    /// Coordinates in `sym_basis(dom, cod, d)`.
    pub fn to_vector(&self, index: &HashMap<Multiset, usize>, len: usize) -> Vec<Scalar> {
        let mut v = vec![self.ring.zero(); len];
        for (m, c) in &self.coeffs {
            v[index[m]] = c.clone();
        }
        v
    }
}

impl fmt::Debug for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymTensor<{}> d={} {}->{} [", self.ring, self.d, self.dom, self.cod)?;
        for (i, (m, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*[{m}]")?;
        }
        write!(f, "]")
    }
}

pub fn diagonal_multiset(w: &Weight) -> Multiset {
    let mut pairs = Vec::with_capacity(w.degree());
    for (i, &p) in w.parts.iter().enumerate() {
        for _ in 0..p {
            pairs.push((i, i));
        }
    }
    Multiset(pairs)
}

fn sorted_is(word: &[Pair]) -> bool {
    word.windows(2).all(|w| w[0] <= w[1])
}

fn dom_sorted(m: &Multiset) -> Vec<usize> {
    let mut v: Vec<usize> = m.0.iter().map(|p| p.1).collect();
    v.sort_unstable();
    v
}

fn cod_sorted(m: &Multiset) -> Vec<usize> {
    let mut v: Vec<usize> = m.0.iter().map(|p| p.0).collect();
    v.sort_unstable();
    v
}

/// Product `g ∘ f` of basis elements, as a list of (result multiset, count).
pub(crate) fn compose_basis(mg: &Multiset, mf: &Multiset) -> Vec<(Multiset, u64)> {
    if dom_sorted(mg) != cod_sorted(mf) {
        return Vec::new();
    }
    let ag = mg.arrangements();
    let af = mf.arrangements();
    let mut acc: BTreeMap<Multiset, u64> = BTreeMap::new();
    let d = mg.len();
    let mut word = Vec::with_capacity(d);
    for a in &ag {
        'b: for b in &af {
            word.clear();
            for t in 0..d {
                if a[t].1 != b[t].0 {
                    continue 'b;
                }
                word.push((a[t].0, b[t].1));
            }
            if sorted_is(&word) {
                *acc.entry(Multiset(word.clone())).or_insert(0) += 1;
            }
        }
    }
    acc.into_iter().collect()
}

/// Composition `g ∘ f` in the category of divided powers.
pub fn compose(g: &SymTensor, f: &SymTensor) -> Result<SymTensor> {
    if g.ring != f.ring {
        return Err(Error::RingMismatch(g.ring.name(), f.ring.name()));
    }
    if g.d != f.d || g.dom != f.cod {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose Γ^{} Hom(k^{}, k^{}) after Γ^{} Hom(k^{}, k^{})",
            g.d, g.dom, g.cod, f.d, f.dom, f.cod
        )));
    }
    let ring = g.ring;
    let mut out = SymTensor::zero(ring, g.d, f.dom, g.cod);
    for (mg, cg) in &g.coeffs {
        for (mf, cf) in &f.coeffs {
            let c = ring.mul(cg, cf);
            for (w, k) in compose_basis(mg, mf) {
                out.add_term(w, &ring.mul(&c, &ring.from_i64(k as i64)));
            }
        }
    }
    Ok(out)
}

/// `f ⊗ g` with the Kronecker convention `(i, i') ↦ i·n' + i'`.
pub fn monoidal_tensor(f: &SymTensor, g: &SymTensor) -> Result<SymTensor> {
    if f.ring != g.ring {
        return Err(Error::RingMismatch(f.ring.name(), g.ring.name()));
    }
    if f.d != g.d {
        return Err(Error::ShapeMismatch(format!("degrees {} and {}", f.d, g.d)));
    }
    let ring = f.ring;
    let (n2, m2) = (g.cod, g.dom);
    let mut out = SymTensor::zero(ring, f.d, f.dom * g.dom, f.cod * g.cod);
    let gar: Vec<(Vec<Vec<Pair>>, &Scalar)> =
        g.coeffs.iter().map(|(m, c)| (m.arrangements(), c)).collect();
    for (mf, cf) in &f.coeffs {
        let af = mf.arrangements();
        for (ag, cg) in &gar {
            let c = ring.mul(cf, cg);
            for a in &af {
                for b in ag {
                    let word: Vec<Pair> = a
                        .iter()
                        .zip(b)
                        .map(|(&(i, j), &(i2, j2))| (i * n2 + i2, j * m2 + j2))
                        .collect();
                    if sorted_is(&word) {
                        out.add_term(Multiset(word), &c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The duality `Γ^d Hom(V, W) → Γ^d Hom(W*, V*)`: transpose every pair.
pub fn dualize(f: &SymTensor) -> SymTensor {
    let mut out = SymTensor::zero(f.ring, f.d, f.cod, f.dom);
    for (m, c) in &f.coeffs {
        out.add_term(m.dualized(), c);
    }
    out
}

/// `e_λ` for every `λ ∈ Λ(n, d)`, in the order of [`compositions`].
pub fn weight_idempotents(ring: RingSpec, n: usize, d: usize) -> Vec<(Weight, SymTensor)> {
    compositions(n, d)
        .into_iter()
        .map(|w| {
            let e = SymTensor::basis_element(ring, d, n, n, diagonal_multiset(&w));
            (w, e)
        })
        .collect()
}

/// Basis of `Γ^r(k^v)`: multisets of `(i, 0)` pairs.
pub fn gamma_basis(v: usize, r: usize) -> Vec<Multiset> {
    sym_basis(1, v, r)
}

fn sub_multisets(m: &[Pair], a: usize) -> Vec<(Vec<Pair>, Vec<Pair>)> {
    // group into (symbol, multiplicity)
    let mut groups: Vec<(Pair, usize)> = Vec::new();
    for &p in m {
        match groups.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut out = Vec::new();
    fn rec(
        groups: &[(Pair, usize)],
        g: usize,
        left: usize,
        m1: &mut Vec<Pair>,
        m2: &mut Vec<Pair>,
        out: &mut Vec<(Vec<Pair>, Vec<Pair>)>,
    ) {
        if g == groups.len() {
            if left == 0 {
                out.push((m1.clone(), m2.clone()));
            }
            return;
        }
        let (p, k) = groups[g];
        for take in 0..=k.min(left) {
            let (l1, l2) = (m1.len(), m2.len());
            m1.extend(std::iter::repeat(p).take(take));
            m2.extend(std::iter::repeat(p).take(k - take));
            rec(groups, g + 1, left - take, m1, m2, out);
            m1.truncate(l1);
            m2.truncate(l2);
        }
    }
    rec(&groups, 0, a, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// The inclusion `Γ^{a+b}(k^v) → Γ^a(k^v) ⊗ Γ^b(k^v)`.
///
/// Columns follow `gamma_basis(v, a+b)`; rows are `x·dim Γ^b + y` for
/// `gamma_basis(v, a)[x] ⊗ gamma_basis(v, b)[y]`. Each distinct split of a
/// multiset contributes coefficient 1.
pub fn comultiplication_split(ring: RingSpec, v: usize, a: usize, b: usize) -> ExactMatrix {
    let src = gamma_basis(v, a + b);
    let ba = gamma_basis(v, a);
    let bb = gamma_basis(v, b);
    let ia: HashMap<&Multiset, usize> = ba.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let ib: HashMap<&Multiset, usize> = bb.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut trip = Vec::new();
    for (col, m) in src.iter().enumerate() {
        for (m1, m2) in sub_multisets(&m.0, a) {
            let row = ia[&Multiset(m1)] * bb.len() + ib[&Multiset(m2)];
            trip.push((row, col, ring.one()));
        }
    }
    ExactMatrix::from_triplets(ring, ba.len() * bb.len(), src.len(), trip)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub pairs: Vec<[usize; 2]>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymTensorJson {
    pub ring: String,
    pub d: usize,
    pub dom: usize,
    pub cod: usize,
    pub terms: Vec<TermJson>,
}

impl SymTensorJson {
    pub fn from_tensor(t: &SymTensor) -> Self {
        SymTensorJson {
            ring: t.ring.name(),
            d: t.d,
            dom: t.dom,
            cod: t.cod,
            terms: t
                .coeffs
                .iter()
                .map(|(m, c)| TermJson {
                    pairs: m.0.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<SymTensor> {
        let ring = RingSpec::parse(&self.ring)?;
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.pairs.iter().any(|p| p[0] == 0 || p[1] == 0) {
                return Err(Error::Parse("pair indices are 1-based".into()));
            }
            let m = Multiset::new(t.pairs.iter().map(|p| (p[0] - 1, p[1] - 1)).collect());
            terms.push((m, ring.parse_scalar(&t.coeff)?));
        }
        SymTensor::from_terms(ring, self.d, self.dom, self.cod, terms)
    }
}
