use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ModuleMap, SchurModule};
use crate::error::Result;
use crate::ring::linalg::{is_invertible, rref};
use crate::ring::{kernel_basis, ExactMatrix, RingSpec, Scalar};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Basis of the intertwiners `M → N` as matrices (a lattice basis over Z).
pub fn hom_matrices(m: &SchurModule, n: &SchurModule) -> Result<Vec<ExactMatrix>> {
    m.same_algebra(n)?;
    let alg = m.algebra();
    let ring = alg.ring();
    let (wm, wn) = (m.weight_basis(), n.weight_basis());
    let nw = alg.weights().len();
    let mut var_off = vec![0; nw + 1];
    for w in 0..nw {
        var_off[w + 1] = var_off[w] + wn.blocks[w].1 * wm.blocks[w].1;
    }
    let nvars = var_off[nw];
    if nvars == 0 {
        return Ok(Vec::new());
    }
    let mut eqs: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for g in alg.generators() {
        let (mu, nu) = (alg.cod_weight(g), alg.dom_weight(g));
        if mu == nu && g == alg.idempotent(mu) {
            continue;
        }
        let (om_mu, dm_mu) = wm.blocks[mu];
        let (om_nu, dm_nu) = wm.blocks[nu];
        let (on_mu, dn_mu) = wn.blocks[mu];
        let (on_nu, dn_nu) = wn.blocks[nu];
        if dn_mu == 0 || dm_nu == 0 {
            continue;
        }
        let bm = wm.pinv.mul(m.action(g)).mul(&wm.p);
        let bn = wn.pinv.mul(n.action(g)).mul(&wn.p);
        // F_μ BM[μ,ν] − BN[μ,ν] F_ν = 0, entry (a, b)
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dn_mu * dm_nu];
        for (k, b, v) in bm.entries() {
            if k < om_mu || k >= om_mu + dm_mu || b < om_nu || b >= om_nu + dm_nu {
                continue;
            }
            let (k, b) = (k - om_mu, b - om_nu);
            for a in 0..dn_mu {
                rows[a * dm_nu + b].push((var_off[mu] + a * dm_mu + k, v.clone()));
            }
        }
        for (a, k, v) in bn.entries() {
            if a < on_mu || a >= on_mu + dn_mu || k < on_nu || k >= on_nu + dn_nu {
                continue;
            }
            let (a, k) = (a - on_mu, k - on_nu);
            for b in 0..dm_nu {
                rows[a * dm_nu + b].push((var_off[nu] + k * dm_nu + b, ring.neg(v)));
            }
        }
        eqs.extend(rows.into_iter().filter(|r| !r.is_empty()));
    }
    let sys = ExactMatrix::from_triplets(
        ring,
        eqs.len(),
        nvars,
        eqs.into_iter().enumerate().flat_map(|(i, r)| r.into_iter().map(move |(j, v)| (i, j, v))),
    );
    let ker = if ring == RingSpec::Integers {
        integer_kernel(&sys)
    } else {
        kernel_basis(&sys)
    };
    let out = ker
        .columns()
        .into_iter()
        .map(|col| {
            let mut trip = Vec::new();
            for w in 0..nw {
                let (om, dm) = wm.blocks[w];
                let (on, dn) = wn.blocks[w];
                for a in 0..dn {
                    for b in 0..dm {
                        let v = &col[var_off[w] + a * dm + b];
                        if !ring.is_zero(v) {
                            trip.push((on + a, om + b, v.clone()));
                        }
                    }
                }
            }
            let f = ExactMatrix::from_triplets(ring, n.rank(), m.rank(), trip);
            wn.p.mul(&f).mul(&wm.pinv)
        })
        .collect();
    Ok(out)
}

// Integral kernel: reduce over Q first, then clear denominators and use SNF.
fn integer_kernel(sys: &ExactMatrix) -> ExactMatrix {
    let q = sys.change_ring(RingSpec::Rationals);
    let r = rref(&q).unwrap();
    let rows: Vec<usize> = (0..r.rank).collect();
    let red = r.reduced.select_rows(&rows);
    let mut scaled = Vec::new();
    for i in 0..red.rows() {
        let lcm = red.row(i).iter().fold(num_bigint::BigInt::from(1), |acc, (_, v)| {
            let den = RingSpec::Rationals.to_rational(v).denom().clone();
            num_integer::Integer::lcm(&acc, &den)
        });
        for (j, v) in red.row(i) {
            let x = RingSpec::Rationals.to_rational(v) * num_rational::BigRational::from_integer(lcm.clone());
            scaled.push((i, *j, RingSpec::Integers.from_bigint(x.numer())));
        }
    }
    let z = ExactMatrix::from_triplets(RingSpec::Integers, red.rows(), red.cols(), scaled);
    kernel_basis(&z)
}

pub fn hom_space(m: &SchurModule, n: &SchurModule) -> Result<Vec<ModuleMap>> {
    Ok(hom_matrices(m, n)?
        .into_iter()
        .map(|f| ModuleMap { source: m.clone(), target: n.clone(), matrix: f })
        .collect())
}

pub fn hom_dim(m: &SchurModule, n: &SchurModule) -> Result<usize> {
    Ok(hom_matrices(m, n)?.len())
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Iso(ExactMatrix),
    NotIso(String),
    Unknown { hom_mn: usize, hom_nm: usize },
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }

    pub fn is_not_iso(&self) -> bool {
        matches!(self, IsoVerdict::NotIso(_))
    }
}

fn combination(ring: RingSpec, basis: &[ExactMatrix], coeffs: &[i64]) -> ExactMatrix {
    let mut f = ExactMatrix::zeros(ring, basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            f = f.add(&b.scale(&ring.from_i64(c)));
        }
    }
    f
}

static ISO_SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

/// Sets the seed used by [`is_isomorphic`] for its randomized search.
pub fn set_iso_seed(seed: u64) {
    ISO_SEED.store(seed, Ordering::Relaxed);
}

pub fn is_isomorphic(m: &SchurModule, n: &SchurModule) -> Result<IsoVerdict> {
    is_isomorphic_seeded(m, n, ISO_SEED.load(Ordering::Relaxed))
}

pub fn is_isomorphic_seeded(m: &SchurModule, n: &SchurModule, seed: u64) -> Result<IsoVerdict> {
    m.same_algebra(n)?;
    let ring = m.ring();
    if m.rank() != n.rank() {
        return Ok(IsoVerdict::NotIso(format!("ranks {} and {}", m.rank(), n.rank())));
    }
    if m.weight_dims() != n.weight_dims() {
        return Ok(IsoVerdict::NotIso(format!(
            "weight profiles {:?} and {:?}",
            m.weight_dims(),
            n.weight_dims()
        )));
    }
    if m.rank() == 0 {
        return Ok(IsoVerdict::Iso(ExactMatrix::zeros(ring, 0, 0)));
    }
    let h = hom_matrices(m, n)?;
    let hb = hom_dim(n, m)?;
    if h.len() != hb {
        return Ok(IsoVerdict::NotIso(format!("dim Hom(M,N) = {} but dim Hom(N,M) = {hb}", h.len())));
    }
    if h.is_empty() {
        return Ok(IsoVerdict::NotIso("no nonzero intertwiner".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let found = |f: ExactMatrix| is_invertible(&f).then_some(f);
    match ring {
        RingSpec::PrimeField(p) => {
            let total = (p as f64).powi(h.len() as i32);
            if total <= 4096.0 {
                let mut c = vec![0i64; h.len()];
                loop {
                    // odometer over F_p^h
                    let mut i = 0;
                    while i < c.len() {
                        c[i] += 1;
                        if c[i] < p as i64 {
                            break;
                        }
                        c[i] = 0;
                        i += 1;
                    }
                    if i == c.len() {
                        break;
                    }
                    if let Some(f) = found(combination(ring, &h, &c)) {
                        return Ok(IsoVerdict::Iso(f));
                    }
                }
                return Ok(IsoVerdict::NotIso("no invertible intertwiner exists".into()));
            }
            for _ in 0..200 {
                let c: Vec<i64> = (0..h.len()).map(|_| rng.gen_range(0..p as i64)).collect();
                if let Some(f) = found(combination(ring, &h, &c)) {
                    return Ok(IsoVerdict::Iso(f));
                }
            }
        }
        RingSpec::Rationals => {
            for f in h.iter() {
                if is_invertible(f) {
                    return Ok(IsoVerdict::Iso(f.clone()));
                }
            }
            for _ in 0..60 {
                let c: Vec<i64> = (0..h.len()).map(|_| rng.gen_range(-7..8)).collect();
                if let Some(f) = found(combination(ring, &h, &c)) {
                    return Ok(IsoVerdict::Iso(f));
                }
            }
        }
        RingSpec::Integers => {
            for f in h.iter() {
                if is_invertible(f) {
                    return Ok(IsoVerdict::Iso(f.clone()));
                }
            }
            for _ in 0..300 {
                let c: Vec<i64> = (0..h.len()).map(|_| rng.gen_range(-2..3)).collect();
                if let Some(f) = found(combination(ring, &h, &c)) {
                    return Ok(IsoVerdict::Iso(f));
                }
            }
        }
    }
    Ok(IsoVerdict::Unknown { hom_mn: h.len(), hom_nm: hb })
}
