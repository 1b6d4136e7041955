use std::sync::Arc;

use spf_core::schur::{
    gamma_weight_module, lambda_weight_module, regular_module, schur_module, simple_module,
    symmetric_weight_module, tensor_power_module, weyl_module, SchurAlgebra, SchurModule,
};
use spf_core::{Error, Result};

/// A module named by `kind:ints`, e.g. `gamma:2,0` or `tensorpower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub kind: String,
    pub ints: Vec<usize>,
}

const KINDS: [&str; 8] = ["gamma", "sym", "lambda", "tensorpower", "schur", "weyl", "regular", "simple"];

impl std::str::FromStr for ModuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let kind = kind.trim();
        if !KINDS.contains(&kind) {
            return Err(Error::Parse(format!("unknown module kind {kind:?}; expected one of {}", KINDS.join(", "))));
        }
        let ints = rest
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let needs_ints = !matches!(kind, "tensorpower" | "regular");
        if needs_ints && ints.is_empty() {
            return Err(Error::Parse(format!("{kind} needs a comma-separated weight")));
        }
        if !needs_ints && !ints.is_empty() {
            return Err(Error::Parse(format!("{kind} takes no integers")));
        }
        Ok(ModuleSpec { kind: kind.to_string(), ints })
    }
}

impl ModuleSpec {
    fn weight(&self, n: usize) -> Result<Vec<usize>> {
        if self.ints.len() > n {
            if self.ints[n..].iter().any(|&x| x > 0) {
                return Err(Error::WeightOutOfRange(self.ints.clone(), n, self.ints.iter().sum()));
            }
            return Ok(self.ints[..n].to_vec());
        }
        let mut w = self.ints.clone();
        w.resize(n, 0);
        Ok(w)
    }

    pub fn build(&self, alg: &Arc<SchurAlgebra>) -> Result<SchurModule> {
        let w = self.weight(alg.n())?;
        match self.kind.as_str() {
            "gamma" => gamma_weight_module(alg, &w),
            "sym" => symmetric_weight_module(alg, &w),
            "lambda" => lambda_weight_module(alg, &w),
            "tensorpower" => tensor_power_module(alg),
            "schur" => schur_module(alg, &w),
            "weyl" => weyl_module(alg, &w),
            "regular" => regular_module(alg),
            "simple" => simple_module(alg, &w),
            _ => unreachable!("kinds are checked when parsing"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let s: ModuleSpec = "gamma:2,0".parse().unwrap();
        assert_eq!(s, ModuleSpec { kind: "gamma".into(), ints: vec![2, 0] });
        assert!("tensorpower".parse::<ModuleSpec>().is_ok());
        assert!("regular:1".parse::<ModuleSpec>().is_err());
        assert!("weyl".parse::<ModuleSpec>().is_err());
        assert!("foo:1".parse::<ModuleSpec>().is_err());
        assert!("sym:1,x".parse::<ModuleSpec>().is_err());
    }

    #[test]
    fn weights_are_padded() {
        let s: ModuleSpec = "weyl:2".parse().unwrap();
        assert_eq!(s.weight(3).unwrap(), vec![2, 0, 0]);
        let t: ModuleSpec = "gamma:1,1,0".parse().unwrap();
        assert_eq!(t.weight(2).unwrap(), vec![1, 1]);
        let u: ModuleSpec = "gamma:1,0,1".parse().unwrap();
        assert!(u.weight(2).is_err());
    }
}
