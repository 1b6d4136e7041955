//! Exact coefficient rings and sparse linear algebra over them.
//!
//! Three rings are supported: prime fields `F_p`, the rationals and the
//! integers. Scalars are tagged values; prime-field elements are reduced
//! residues and rationals are kept in lowest terms by `num-rational`.

pub mod json;
pub mod linalg;
mod matrix;
pub mod snf;

pub use json::MatrixJson;
pub use linalg::{
    cokernel_invariants, image_basis, kernel_basis, rank, rref, solve, ColumnSpace, Echelon,
    Rref,
};
pub use matrix::ExactMatrix;
pub use snf::{smith_normal_form, Smith};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient ring `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    PrimeField(u64),
    Rationals,
    Integers,
}

/// A ring element. Prime-field elements use `Mod`, everything else `Rat`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(RingSpec::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Accepts `F2`, `F_2`, `GF(2)`, `Q`, `Z`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Q" | "q" | "QQ" => return Ok(RingSpec::Rationals),
            "Z" | "z" | "ZZ" => return Ok(RingSpec::Integers),
            _ => {}
        }
        let digits = t
            .strip_prefix("F_")
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| Error::Parse(format!("unknown ring '{s}'")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown ring '{s}'")))?;
        RingSpec::prime_field(p)
    }

    pub fn name(&self) -> String {
        match self {
            RingSpec::PrimeField(p) => format!("F{p}"),
            RingSpec::Rationals => "Q".into(),
            RingSpec::Integers => "Z".into(),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingSpec::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn require_field(&self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::RingNotField(self.name()))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            RingSpec::PrimeField(_) => Scalar::Mod(0),
            _ => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            RingSpec::PrimeField(_) => Scalar::Mod(1),
            _ => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            RingSpec::PrimeField(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u64),
            _ => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            RingSpec::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Mod(r.to_u64().unwrap())
            }
            _ => Scalar::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// Maps a rational into the ring; fails if it does not belong to it.
    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar> {
        match self {
            RingSpec::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let den = v.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::Parse(format!("{v} has no image in F{p}")));
                }
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(&den);
                Ok(self.mul(&num, &self.inv(&den).unwrap()))
            }
            RingSpec::Rationals => Ok(Scalar::Rat(v.clone())),
            RingSpec::Integers => {
                if v.is_integer() {
                    Ok(Scalar::Rat(v.clone()))
                } else {
                    Err(Error::Parse(format!("{v} is not an integer")))
                }
            }
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad scalar '{s}'"));
        let v = if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        } else {
            BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)
        };
        self.from_rational(&v)
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b, self) {
            (Scalar::Mod(x), Scalar::Mod(y), RingSpec::PrimeField(p)) => Scalar::Mod((x + y) % p),
            (Scalar::Rat(x), Scalar::Rat(y), _) => Scalar::Rat(x + y),
            _ => panic!("scalar/ring mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (a, self) {
            (Scalar::Mod(x), RingSpec::PrimeField(p)) => Scalar::Mod((p - x) % p),
            (Scalar::Rat(x), _) => Scalar::Rat(-x),
            _ => panic!("scalar/ring mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b, self) {
            (Scalar::Mod(x), Scalar::Mod(y), RingSpec::PrimeField(p)) => Scalar::Mod(x * y % p),
            (Scalar::Rat(x), Scalar::Rat(y), _) => Scalar::Rat(x * y),
            _ => panic!("scalar/ring mismatch"),
        }
    }

    /// Multiplicative inverse, if it exists in the ring.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (a, self) {
            (Scalar::Mod(x), RingSpec::PrimeField(p)) => Some(Scalar::Mod(pow_mod(*x, p - 2, *p))),
            (Scalar::Rat(x), RingSpec::Rationals) => Some(Scalar::Rat(x.recip())),
            (Scalar::Rat(x), RingSpec::Integers) => {
                if x.abs().is_one() {
                    Some(Scalar::Rat(x.clone()))
                } else {
                    None
                }
            }
            _ => panic!("scalar/ring mismatch"),
        }
    }

    /// Integer representative (integers ring only, or canonical residue).
    pub fn to_bigint(&self, a: &Scalar) -> BigInt {
        match a {
            Scalar::Mod(v) => BigInt::from(*v),
            Scalar::Rat(r) => {
                assert!(r.is_integer(), "non-integral scalar");
                r.numer().clone()
            }
        }
    }

    pub fn to_rational(&self, a: &Scalar) -> BigRational {
        match a {
            Scalar::Mod(v) => BigRational::from_integer(BigInt::from(*v)),
            Scalar::Rat(r) => r.clone(),
        }
    }

    pub fn format(&self, a: &Scalar) -> String {
        a.to_string()
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_is_checked() {
        assert!(RingSpec::prime_field(7).is_ok());
        assert_eq!(RingSpec::prime_field(9), Err(Error::NotPrime(9)));
        assert_eq!(RingSpec::parse("F_2").unwrap(), RingSpec::PrimeField(2));
        assert_eq!(RingSpec::parse("F3").unwrap(), RingSpec::PrimeField(3));
        assert!(RingSpec::parse("F4").is_err());
        assert_eq!(RingSpec::parse("Z").unwrap(), RingSpec::Integers);
    }

    #[test]
    fn field_arithmetic() {
        let f5 = RingSpec::PrimeField(5);
        let a = f5.from_i64(3);
        assert_eq!(f5.mul(&a, &f5.inv(&a).unwrap()), f5.one());
        assert_eq!(f5.neg(&f5.from_i64(0)), f5.zero());
        assert_eq!(f5.parse_scalar("1/2").unwrap(), f5.from_i64(3));
        let q = RingSpec::Rationals;
        assert_eq!(q.parse_scalar("2/4").unwrap().to_string(), "1/2");
        assert!(RingSpec::Integers.parse_scalar("1/2").is_err());
        assert_eq!(RingSpec::Integers.inv(&RingSpec::Integers.from_i64(2)), None);
    }
}
