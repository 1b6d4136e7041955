use crate::error::Result;
use crate::ring::linalg::Echelon;
use crate::ring::{solve, ExactMatrix, RingSpec, Scalar};
use crate::schur::SchurModule;

/// A generator `x ∈ e_λ M`, recorded with its weight index.
#[derive(Clone, Debug)]
pub struct WeightGenerator {
    pub weight: usize,
    pub vector: Vec<Scalar>,
}

// all A·x for x of weight w: the columns A(b)x with dom(b) = w
fn orbit(m: &SchurModule, w: usize, x: &[Scalar]) -> Vec<Vec<Scalar>> {
    let alg = m.algebra();
    (0..alg.dim()).filter(|&b| alg.dom_weight(b) == w).map(|b| m.action(b).mul_vec(x)).collect()
}

enum Span {
    Field(Echelon),
    Lattice(RingSpec, usize, Vec<Vec<Scalar>>),
}

impl Span {
    fn new(ring: RingSpec, dim: usize) -> Self {
        if ring.is_field() {
            Span::Field(Echelon::new(ring))
        } else {
            Span::Lattice(ring, dim, Vec::new())
        }
    }

    fn contains(&self, x: &[Scalar]) -> bool {
        match self {
            Span::Field(e) => e.contains(to_row(x)),
            Span::Lattice(ring, dim, cols) => {
                if x.iter().all(|c| ring.is_zero(c)) {
                    return true;
                }
                if cols.is_empty() {
                    return false;
                }
                solve(&ExactMatrix::from_columns(*ring, *dim, cols), x).is_some()
            }
        }
    }

    fn add(&mut self, xs: Vec<Vec<Scalar>>) {
        match self {
            Span::Field(e) => {
                for x in xs {
                    e.insert(to_row(&x));
                }
            }
            Span::Lattice(_, _, cols) => cols.extend(xs),
        }
    }
}

fn to_row(x: &[Scalar]) -> Vec<(usize, Scalar)> {
    x.iter()
        .enumerate()
        .filter(|(_, c)| match c {
            Scalar::Mod(v) => *v != 0,
            Scalar::Rat(r) => !num_traits::Zero::is_zero(r),
        })
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

fn generated_by(m: &SchurModule, gens: &[WeightGenerator]) -> Span {
    let mut span = Span::new(m.ring(), m.rank());
    for g in gens {
        span.add(orbit(m, g.weight, &g.vector));
    }
    span
}

/// A generating set of `M` made of weight vectors taken from the weight basis,
/// scanning weights in the algebra's order, then pruned of redundant members.
pub fn weight_generators(m: &SchurModule) -> Result<Vec<WeightGenerator>> {
    let alg = m.algebra();
    let wb = m.weight_basis();
    let mut gens: Vec<WeightGenerator> = Vec::new();
    let mut span = Span::new(m.ring(), m.rank());
    for w in 0..alg.weights().len() {
        let (off, dim) = wb.blocks[w];
        for c in off..off + dim {
            let x = wb.p.column(c);
            if span.contains(&x) {
                continue;
            }
            span.add(orbit(m, w, &x));
            gens.push(WeightGenerator { weight: w, vector: x });
        }
    }
    let mut k = gens.len();
    while k > 0 {
        k -= 1;
        let mut rest = gens.clone();
        let g = rest.remove(k);
        let span = generated_by(m, &rest);
        if span.contains(&g.vector) {
            gens = rest;
        }
    }
    Ok(gens)
}
