use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::homological::{
    derived_tensor, derived_tensor_complex, free_resolution, homology, internal_rhom,
    internal_rhom_complex, koszul_resolution_exterior, ChainComplex, FreeComplex, FreeResolution,
    HomologyReport,
};
use crate::ring::RingSpec;
use crate::schur::{
    exterior_module, frobenius_kernel_image, gamma_weight_module, is_isomorphic,
    lambda_weight_module, regular_module, schur_module, symmetric_weight_module,
    tensor_power_module, weyl_module, SchurAlgebra, SchurModule,
};

type BarCache = Mutex<HashMap<(RingSpec, usize), Arc<FreeComplex>>>;

static BARS: OnceLock<BarCache> = OnceLock::new();

/// The bar resolution of `Λ^d` over `ring`, checked for exactness once and cached.
pub fn bar_resolution(ring: RingSpec, d: usize) -> Result<Arc<FreeComplex>> {
    let cache = BARS.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(ring, d)) {
        return Ok(c.clone());
    }
    let r = koszul_resolution_exterior(ring, d, d)?;
    let c = Arc::new(r.complex.expect("exterior resolution keeps its free complex"));
    cache.lock().unwrap().insert((ring, d), c.clone());
    Ok(c)
}

#[derive(Clone, Debug)]
pub struct KoszulResult {
    pub input: String,
    pub output: ChainComplex,
    pub homology: HomologyReport,
    /// Name of the homology when it is a single torsion-free module matching a standard one.
    pub identified: Option<String>,
}

impl KoszulResult {
    pub fn new(input: impl Into<String>, output: ChainComplex) -> Result<Self> {
        let homology = homology(&output, true)?;
        let identified = match homology.support().as_slice() {
            [] => Some("0".to_string()),
            [deg] if homology.at(*deg).is_some_and(|h| h.torsion.is_empty()) => {
                identify(homology.module(*deg).unwrap())?.map(|l| format!("{l} in degree {deg}"))
            }
            _ => None,
        };
        Ok(KoszulResult { input: input.into(), output, homology, identified })
    }

    /// The homology module when it is concentrated in `deg`.
    pub fn concentrated_module(&self, deg: i64) -> Option<&SchurModule> {
        if !self.homology.concentrated_in(deg) {
            return None;
        }
        self.homology.module(deg)
    }
}

fn describe(c: &ChainComplex) -> String {
    match c.objects() {
        [m] if c.lo() == 0 => m.label().unwrap_or("module").to_string(),
        _ => format!("complex in degrees {}..{}", c.lo(), c.hi()),
    }
}

/// Standard modules over `alg`, for naming homology.
pub fn standard_modules(alg: &Arc<SchurAlgebra>) -> Result<Vec<SchurModule>> {
    let (n, d) = (alg.n(), alg.d());
    let mut out = vec![regular_module(alg)?, tensor_power_module(alg)?];
    for w in alg.weights() {
        if w.parts.windows(2).all(|p| p[0] >= p[1]) {
            out.push(gamma_weight_module(alg, &w.parts)?);
            out.push(lambda_weight_module(alg, &w.parts)?);
            out.push(symmetric_weight_module(alg, &w.parts)?);
            if w.parts.iter().filter(|&&x| x > 0).count() <= n && n >= d {
                out.push(weyl_module(alg, &w.parts)?);
                out.push(schur_module(alg, &w.parts)?);
            }
        }
    }
    if d == 2 && alg.ring() == RingSpec::PrimeField(2) {
        out.push(frobenius_kernel_image(alg)?);
    }
    Ok(out)
}

/// Name of a standard module isomorphic to `m`, if any.
pub fn identify(m: &SchurModule) -> Result<Option<String>> {
    if m.rank() == 0 {
        return Ok(Some("0".into()));
    }
    let dims = m.weight_dims();
    for c in standard_modules(m.algebra())? {
        if c.weight_dims() == dims && is_isomorphic(&c, m)?.is_iso() {
            return Ok(Some(c.label().unwrap_or("?").to_string()));
        }
    }
    Ok(None)
}

/// `Λ^d ⊗^L X` over the bar resolution.
pub fn koszul(x: &SchurModule) -> Result<KoszulResult> {
    let bar = bar_resolution(x.ring(), x.algebra().d())?;
    KoszulResult::new(x.label().unwrap_or("module"), derived_tensor(&bar, x)?)
}

pub fn koszul_complex(x: &ChainComplex) -> Result<KoszulResult> {
    let bar = bar_resolution(x.ring(), x.algebra().d())?;
    KoszulResult::new(describe(x), derived_tensor_complex(&bar, x)?)
}

/// `(Λ^d ⊗^L −)^m`; nothing is claimed about the result for `m ≥ 3`.
pub fn koszul_power(x: &ChainComplex, m: usize) -> Result<KoszulResult> {
    let mut c = x.clone();
    for _ in 0..m {
        c = koszul_complex(&c)?.output;
    }
    KoszulResult::new(format!("K^{m}({})", describe(x)), c)
}

/// `RHom(Λ^d, Y)` computed as `(Λ^d ⊗^L Y°)°`.
pub fn koszul_inverse(y: &SchurModule) -> Result<KoszulResult> {
    koszul_inverse_complex(&ChainComplex::concentrated(y, 0))
}

pub fn koszul_inverse_complex(y: &ChainComplex) -> Result<KoszulResult> {
    let k = koszul_complex(&y.kuhn_dual())?;
    KoszulResult::new(format!("RHom(Λ^d, {})", describe(y)), k.output.kuhn_dual())
}

/// `RHom(Λ^d, Y)` as the internal Hom out of the bar resolution.
pub fn koszul_inverse_internal(y: &ChainComplex) -> Result<ChainComplex> {
    let bar = bar_resolution(y.ring(), y.algebra().d())?;
    internal_rhom_complex(&bar, y)
}

fn complete_resolution(x: &SchurModule) -> Result<FreeResolution> {
    let bound = 2 * x.algebra().d() + 2;
    let r = free_resolution(x, bound)?;
    if !r.terminated {
        return Err(Error::ExactnessFailure(format!("no projective resolution of length ≤ {bound}")));
    }
    Ok(r)
}

/// `Λ^d ⊗^L X` through a projective resolution of `X` instead of the bar resolution.
pub fn koszul_via_resolution(x: &SchurModule) -> Result<ChainComplex> {
    let r = complete_resolution(x)?;
    derived_tensor(&r.complex()?, &exterior_module(x.algebra(), x.algebra().d())?)
}

/// `D(X) = RHom(X, Λ^d)` from a projective resolution of `X`.
pub fn contravariant_koszul(x: &SchurModule) -> Result<ChainComplex> {
    let r = complete_resolution(x)?;
    internal_rhom(&r.complex()?, &exterior_module(x.algebra(), x.algebra().d())?)
}

/// `D` on complexes, as `(Λ^d ⊗^L X)°`.
pub fn contravariant_koszul_complex(x: &ChainComplex) -> Result<ChainComplex> {
    Ok(koszul_complex(x)?.output.kuhn_dual())
}
