use std::sync::Arc;

use serde::Serialize;

use super::table::{table_family, tensor_table};
use crate::divided_powers::{binomial, partitions};
use crate::dualities::{koszul, koszul_inverse_complex, ringel_commutes_check, ringel_data, serre_check};
use crate::error::{Error, Result};
use crate::functor::day_tensor_modules;
use crate::homological::{ext_groups, koszul_resolution_exterior, presentation_exterior, presentation_symmetric};
use crate::ring::RingSpec;
use crate::schur::{
    divided_module, exterior_module, frobenius_kernel_image, gamma_weight_module, hom_dim, is_isomorphic,
    lambda_weight_module, permutation_element, schur_module, simple_module, symmetric_group_functor,
    symmetric_module, symmetric_weight_module, weyl_module, SchurAlgebra, SchurModule,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Categorical,
    Koszul,
    Ringel,
    Serre,
    Table,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "categorical" => Suite::Categorical,
            "koszul" => Suite::Koszul,
            "ringel" => Suite::Ringel,
            "serre" => Suite::Serre,
            "table" => Suite::Table,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
    /// A computation raised an internal invariant violation.
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub ring: String,
    pub d: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn has_errors(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == Outcome::Error)
    }
}

struct Runner {
    suite: Suite,
    checks: Vec<Check>,
}

impl Runner {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (outcome, detail) = match f() {
            Ok((true, d)) => (Outcome::Pass, d),
            Ok((false, d)) => (Outcome::Fail, d),
            Err(e @ Error::InvariantViolation(_)) => (Outcome::Error, e.to_string()),
            Err(e) => (Outcome::Fail, e.to_string()),
        };
        self.checks.push(Check { suite: self.suite, name: name.into(), outcome, detail });
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.checks.push(Check { suite: self.suite, name: name.into(), outcome: Outcome::Skipped, detail: why.into() });
    }
}

fn iso(a: &SchurModule, b: &SchurModule) -> Result<bool> {
    Ok(is_isomorphic(a, b)?.is_iso())
}

fn is_partition(p: &[usize]) -> bool {
    p.windows(2).all(|w| w[0] >= w[1])
}

/// `Γ^λ, Λ^λ, S^λ` for the partitions `λ` of `d` (plus `[α]` for `d = 2` over `F_2`).
pub fn standard_family(alg: &Arc<SchurAlgebra>) -> Result<Vec<SchurModule>> {
    let mut out = Vec::new();
    for w in alg.weights().iter().filter(|w| is_partition(&w.parts)) {
        out.push(gamma_weight_module(alg, &w.parts)?);
        out.push(lambda_weight_module(alg, &w.parts)?);
        out.push(symmetric_weight_module(alg, &w.parts)?);
    }
    if alg.d() == 2 && alg.ring() == RingSpec::PrimeField(2) {
        out.push(frobenius_kernel_image(alg)?);
    }
    Ok(out)
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn categorical(r: &mut Runner, ring: RingSpec, d: usize) {
    let alg = SchurAlgebra::new(ring, d, d);
    let n = d;
    r.run("schur algebra dimension and associativity", || {
        let want = binomial(n * n + d - 1, d);
        let assoc = alg.dim() > 60 || alg.check_associative();
        Ok((alg.dim() == want && assoc, format!("dim {} (expected {want})", alg.dim())))
    });
    r.run("weight idempotent decomposition", || {
        let ws = alg.weights();
        let mut total = vec![ring.zero(); alg.dim()];
        let mut ok = true;
        for (i, _) in ws.iter().enumerate() {
            let ei = alg.basis_vector(alg.idempotent(i));
            for (j, _) in ws.iter().enumerate() {
                let ej = alg.basis_vector(alg.idempotent(j));
                let p = alg.mul(&ei, &ej);
                ok &= if i == j { p == ei } else { p.iter().all(|c| ring.is_zero(c)) };
            }
            total = total.iter().zip(&ei).map(|(a, b)| ring.add(a, b)).collect();
        }
        ok &= total == alg.unit();
        let mut ranks = Vec::new();
        for (i, w) in ws.iter().enumerate() {
            let got = (0..alg.dim()).filter(|&k| alg.dom_weight(k) == i).count();
            let want: usize = w.parts.iter().map(|&l| binomial(n + l - 1, l)).product();
            ok &= got == want;
            ranks.push(got);
        }
        Ok((ok, format!("regular module cut into ranks {ranks:?}")))
    });
    r.run("symmetric group corner", || {
        let omega = vec![1; d];
        let g = gamma_weight_module(&alg, &omega)?;
        let fact: usize = (1..=d).product();
        let mut ok = hom_dim(&g, &g)? == fact;
        let rep = symmetric_group_functor(&g)?;
        for (a, s) in rep.perms.iter().enumerate() {
            for (b, t) in rep.perms.iter().enumerate() {
                let st: Vec<usize> = (0..d).map(|i| s[t[i]]).collect();
                let prod = alg.mul_basis(permutation_element(&alg, s), permutation_element(&alg, t));
                let k = permutation_element(&alg, &st);
                ok &= prod.len() == 1 && prod[0].0 == k && ring.is_one(&prod[0].1);
                ok &= rep.matrices[a].mul(&rep.matrices[b]) == rep.matrices[rep.perms.iter().position(|p| *p == st).unwrap()];
            }
        }
        let lam = symmetric_group_functor(&exterior_module(&alg, d)?)?;
        let sym = symmetric_group_functor(&symmetric_module(&alg, d)?)?;
        for (k, p) in lam.perms.iter().enumerate() {
            ok &= lam.dim == 1 && lam.matrices[k].get(0, 0) == ring.from_i64(sign(p));
            ok &= sym.dim == 1 && sym.matrices[k].is_identity();
        }
        Ok((ok, format!("dim End(Γ^ω) = {}", hom_dim(&g, &g)?)))
    });
    r.run("Γ^d is the tensor unit", || {
        let (_, fam) = table_family(ring, d)?;
        let unit = divided_module(&alg, d)?;
        for x in &fam {
            if !iso(&day_tensor_modules(&unit, x)?, x)? {
                return Ok((false, format!("Γ^d ⊗ {} differs", x.label().unwrap_or("?"))));
            }
        }
        Ok((true, format!("{} modules", fam.len())))
    });
}

fn koszul_suite(r: &mut Runner, ring: RingSpec, d: usize) {
    let alg = SchurAlgebra::new(ring, d, d);
    r.run("bar resolutions and presentations are exact", || {
        for n in [2, 3] {
            koszul_resolution_exterior(ring, d, n)?;
            presentation_exterior(ring, d, n)?;
            if n >= d {
                presentation_symmetric(ring, d, n)?;
            }
        }
        Ok((true, "n ∈ {2, 3}".into()))
    });
    r.run("Λ^d ⊗^L Λ^d ≅ S^d", || {
        let k = koszul(&exterior_module(&alg, d)?)?;
        let ok = match k.concentrated_module(0) {
            Some(m) => iso(m, &symmetric_module(&alg, d)?)?,
            None => false,
        };
        Ok((ok, format!("homology in degrees {:?}", k.homology.support())))
    });
    r.run("Λ^d ⊗^L Γ^λ ≅ Λ^λ and Λ^d ⊗^L Λ^λ ≅ S^λ", || {
        for w in alg.weights() {
            let l = &w.parts;
            let a = koszul(&gamma_weight_module(&alg, l)?)?;
            let b = koszul(&lambda_weight_module(&alg, l)?)?;
            let ok = match (a.concentrated_module(0), b.concentrated_module(0)) {
                (Some(x), Some(y)) => {
                    iso(x, &lambda_weight_module(&alg, l)?)? && iso(y, &symmetric_weight_module(&alg, l)?)?
                }
                _ => false,
            };
            if !ok {
                return Ok((false, format!("fails at λ = {l:?}")));
            }
        }
        Ok((true, format!("{} weights", alg.weights().len())))
    });
    r.run("Λ^d ⊗^L W_λ ≅ S_λ'", || {
        for p in partitions(d) {
            let l = p.padded(d).parts;
            let c = p.conjugate().padded(d).parts;
            let k = koszul(&weyl_module(&alg, &l)?)?;
            let ok = match k.concentrated_module(0) {
                Some(m) => iso(m, &schur_module(&alg, &c)?)?,
                None => false,
            };
            if !ok {
                return Ok((false, format!("fails at λ = {l:?}")));
            }
        }
        Ok((true, format!("{} partitions", partitions(d).len())))
    });
    r.run("koszul_inverse ∘ koszul ≅ Id", || {
        let (_, mut fam) = table_family(ring, d)?;
        fam.extend(standard_family(&alg)?);
        for x in &fam {
            let back = koszul_inverse_complex(&koszul(x)?.output)?;
            let ok = match back.concentrated_module(0) {
                Some(m) => iso(m, x)?,
                None => false,
            };
            if !ok {
                return Ok((false, format!("fails on {}", x.label().unwrap_or("?"))));
            }
        }
        Ok((true, format!("{} modules", fam.len())))
    });
    r.run("Ext^i = 0 for i > 2d", || {
        let fam = standard_family(&alg)?;
        let top = 2 * d + 2;
        for x in &fam {
            for y in &fam {
                let e = ext_groups(x, y, top)?;
                if e[2 * d + 1..].iter().any(|(r, t)| *r > 0 || !t.is_empty()) {
                    return Ok((false, format!("Ext({}, {}) = {e:?}", x.label().unwrap_or("?"), y.label().unwrap_or("?"))));
                }
            }
        }
        Ok((true, format!("checked up to i = {top}")))
    });
    if !ring.is_field() {
        r.skip("dim Ext*(W_λ, W_μ) = dim Ext*(S_λ', S_μ')", "dimension comparison needs a field");
        return;
    }
    r.run("dim Ext*(W_λ, W_μ) = dim Ext*(S_λ', S_μ')", || {
        let ps = partitions(d);
        for l in &ps {
            for m in &ps {
                let w = ext_groups(&weyl_module(&alg, &l.padded(d).parts)?, &weyl_module(&alg, &m.padded(d).parts)?, 2 * d)?;
                let s = ext_groups(
                    &schur_module(&alg, &l.conjugate().padded(d).parts)?,
                    &schur_module(&alg, &m.conjugate().padded(d).parts)?,
                    2 * d,
                )?;
                let (w, s): (Vec<usize>, Vec<usize>) = (w.iter().map(|x| x.0).collect(), s.iter().map(|x| x.0).collect());
                if w != s {
                    return Ok((false, format!("λ = {:?}, μ = {:?}: {w:?} vs {s:?}", l.parts, m.parts)));
                }
            }
        }
        Ok((true, format!("{} pairs", ps.len() * ps.len())))
    });
}

fn ringel_suite(r: &mut Runner, ring: RingSpec, d: usize) {
    if !ring.is_field() {
        r.skip("ringel", "the commutation check needs a field");
        return;
    }
    let name = "φ: S(n,d) → End(T) is an algebra isomorphism";
    let data = match ringel_data(ring, d, d) {
        Ok(x) => x,
        Err(e) => return r.run(name, || Err(e)),
    };
    r.run(name, || Ok((true, format!("rank T = {}, dim End(T) = {}", data.t.rank(), data.endo.len()))));
    r.run("RHom(T, −) ∘ eval ≅ eval ∘ RHom(Λ^d, −)", || {
        let alg = data.algebra().clone();
        let mut ms: Vec<SchurModule> =
            alg.weights().iter().map(|w| gamma_weight_module(&alg, &w.parts)).collect::<Result<_>>()?;
        ms.push(exterior_module(&alg, d)?);
        ms.push(symmetric_module(&alg, d)?);
        if d == 2 && matches!(ring, RingSpec::PrimeField(_)) {
            ms.push(simple_module(&alg, &[1, 1])?);
        }
        for m in &ms {
            let rep = ringel_commutes_check(&data, m, 2 * d)?;
            if !rep.pass {
                return Ok((false, format!("{}: {:?}", m.label().unwrap_or("?"), rep.degrees)));
            }
        }
        Ok((true, format!("{} modules", ms.len())))
    });
}

fn serre_suite(r: &mut Runner, ring: RingSpec, d: usize) {
    if !ring.is_field() {
        r.skip("serre", "Serre duality is stated over a field");
        return;
    }
    let alg = SchurAlgebra::new(ring, d, d);
    r.run("Serre duality dimensions and koszul² ≅ S^d ⊗^L −", || {
        let fam = standard_family(&alg)?;
        for x in &fam {
            for y in &fam {
                let rep = serre_check(x, y, -4..=4)?;
                if !rep.pass {
                    return Ok((false, format!("{} / {}: {:?}", x.label().unwrap_or("?"), y.label().unwrap_or("?"), rep)));
                }
            }
        }
        Ok((true, format!("{} pairs, i ∈ [−4, 4]", fam.len() * fam.len())))
    });
}

fn table_suite(r: &mut Runner, ring: RingSpec, d: usize) {
    if !(ring == RingSpec::PrimeField(2) && d == 2) {
        r.skip("golden tensor table", "the golden table is for F2, d = 2");
        return;
    }
    r.run("golden tensor table", || {
        let t = tensor_table(ring, d)?;
        let bad: Vec<String> = t.mismatches().iter().map(|c| format!("{} ⊗ {} = {}", c.row, c.col, c.computed)).collect();
        Ok((t.pass, if bad.is_empty() { "25 cells match".into() } else { bad.join("; ") }))
    });
}

/// Runs a suite at `n = d`.
pub fn verify(suite: Suite, ring: RingSpec, d: usize) -> VerifyReport {
    let all = suite == Suite::All;
    let mut checks = Vec::new();
    let mut go = |s: Suite, f: fn(&mut Runner, RingSpec, usize)| {
        if all || suite == s {
            let mut r = Runner { suite: s, checks: Vec::new() };
            f(&mut r, ring, d);
            checks.extend(r.checks);
        }
    };
    go(Suite::Categorical, categorical);
    go(Suite::Koszul, koszul_suite);
    go(Suite::Ringel, ringel_suite);
    go(Suite::Serre, serre_suite);
    go(Suite::Table, table_suite);
    let pass = checks.iter().all(|c| matches!(c.outcome, Outcome::Pass | Outcome::Skipped));
    VerifyReport { ring: ring.to_string(), d, checks, pass }
}
