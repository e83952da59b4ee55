//! Runtime-tagged rig values, for code paths where the rig is chosen at run time.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RigSpec {
    Nat,
    Int,
    Rat,
    ZMod(u64),
}

impl RigSpec {
    pub fn zmod(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Unsupported("modulus must be at least 1".into()));
        }
        Ok(RigSpec::ZMod(m))
    }

    pub fn has_negation(self) -> bool {
        !matches!(self, RigSpec::Nat)
    }

    pub fn zero(self) -> RigValue {
        self.from_u64(0)
    }

    pub fn one(self) -> RigValue {
        self.from_u64(1)
    }

    pub fn from_u64(self, n: u64) -> RigValue {
        match self {
            RigSpec::Nat => RigValue::Nat(BigUint::from(n)),
            RigSpec::Int => RigValue::Int(BigInt::from(n)),
            RigSpec::Rat => RigValue::Rat(BigRational::from_integer(BigInt::from(n))),
            RigSpec::ZMod(m) => RigValue::ZMod { modulus: m, residue: n % m },
        }
    }
}

impl fmt::Display for RigSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigSpec::Nat => write!(f, "nat"),
            RigSpec::Int => write!(f, "int"),
            RigSpec::Rat => write!(f, "rat"),
            RigSpec::ZMod(m) => write!(f, "zmod:{m}"),
        }
    }
}

impl FromStr for RigSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nat" => Ok(RigSpec::Nat),
            "int" => Ok(RigSpec::Int),
            "rat" => Ok(RigSpec::Rat),
            _ => match s.strip_prefix("zmod:") {
                Some(m) => {
                    let m: u64 = m
                        .parse()
                        .map_err(|_| Error::Unsupported(format!("bad modulus in `{s}`")))?;
                    RigSpec::zmod(m)
                }
                None => Err(Error::Unsupported(format!(
                    "unknown rig `{s}` (expected nat|int|rat|zmod:<m>)"
                ))),
            },
        }
    }
}

/// An exact scalar tagged with its rig.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RigValue {
    Nat(BigUint),
    Int(BigInt),
    /// Always in lowest terms with positive denominator.
    Rat(BigRational),
    ZMod { modulus: u64, residue: u64 },
}

impl RigValue {
    pub fn spec(&self) -> RigSpec {
        match self {
            RigValue::Nat(_) => RigSpec::Nat,
            RigValue::Int(_) => RigSpec::Int,
            RigValue::Rat(_) => RigSpec::Rat,
            RigValue::ZMod { modulus, .. } => RigSpec::ZMod(*modulus),
        }
    }

    pub fn zmod(modulus: u64, n: u64) -> Self {
        RigValue::ZMod { modulus, residue: n % modulus }
    }

    pub fn rat(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Unsupported("zero denominator".into()));
        }
        Ok(RigValue::Rat(BigRational::new(num.into(), den.into())))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RigValue::Nat(n) => n.is_zero(),
            RigValue::Int(n) => n.is_zero(),
            RigValue::Rat(q) => q.is_zero(),
            RigValue::ZMod { residue, .. } => *residue == 0,
        }
    }
}

impl fmt::Display for RigValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigValue::Nat(n) => write!(f, "{n}"),
            RigValue::Int(n) => write!(f, "{n}"),
            RigValue::Rat(q) => write!(f, "{q}"),
            RigValue::ZMod { residue, .. } => write!(f, "{residue}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigOp {
    Add,
    Mul,
    Neg,
}

/// One arithmetic step in the rig named by `spec`.
pub fn rig_op(spec: RigSpec, op: RigOp, a: &RigValue, b: Option<&RigValue>) -> Result<RigValue> {
    let check = |v: &RigValue| {
        if v.spec() == spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch(spec.to_string(), v.spec().to_string()))
        }
    };
    check(a)?;
    if let Some(b) = b {
        check(b)?;
    }
    let need_b = || {
        b.ok_or_else(|| Error::Unsupported(format!("{op:?} needs two operands")))
    };
    match op {
        RigOp::Add => binary(a, need_b()?, |x, y| x + y, |x, y| x + y, |x, y| x + y, |x, y| x + y),
        RigOp::Mul => binary(a, need_b()?, |x, y| x * y, |x, y| x * y, |x, y| x * y, |x, y| x * y),
        RigOp::Neg => match a {
            RigValue::Nat(_) => Err(Error::NegationUnsupported(spec.to_string())),
            RigValue::Int(n) => Ok(RigValue::Int(-n)),
            RigValue::Rat(q) => Ok(RigValue::Rat(-q)),
            RigValue::ZMod { modulus, residue } => Ok(RigValue::ZMod {
                modulus: *modulus,
                residue: (modulus - residue) % modulus,
            }),
        },
    }
}

fn binary(
    a: &RigValue,
    b: &RigValue,
    nat: impl Fn(&BigUint, &BigUint) -> BigUint,
    int: impl Fn(&BigInt, &BigInt) -> BigInt,
    rat: impl Fn(&BigRational, &BigRational) -> BigRational,
    wide: impl Fn(u128, u128) -> u128,
) -> Result<RigValue> {
    Ok(match (a, b) {
        (RigValue::Nat(x), RigValue::Nat(y)) => RigValue::Nat(nat(x, y)),
        (RigValue::Int(x), RigValue::Int(y)) => RigValue::Int(int(x, y)),
        (RigValue::Rat(x), RigValue::Rat(y)) => RigValue::Rat(rat(x, y)),
        (
            RigValue::ZMod { modulus, residue: x },
            RigValue::ZMod { residue: y, .. },
        ) => RigValue::ZMod {
            modulus: *modulus,
            residue: (wide(*x as u128, *y as u128) % *modulus as u128) as u64,
        },
        _ => return Err(Error::SpecMismatch(a.spec().to_string(), b.spec().to_string())),
    })
}

/// Reduce `num/den` with a positive denominator; used by the parser.
pub fn reduced_fraction(num: BigInt, den: BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::Unsupported("zero denominator".into()));
    }
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d < BigInt::zero() {
        n = -n;
        d = -d;
    }
    debug_assert!(!d.is_zero() && (d > BigInt::zero() || d == BigInt::one()));
    Ok(BigRational::new_raw(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nat_add() {
        let s = RigSpec::Nat;
        let r = rig_op(s, RigOp::Add, &s.from_u64(2), Some(&s.from_u64(3))).unwrap();
        assert_eq!(r, s.from_u64(5));
    }

    #[test]
    fn zmod_mul() {
        let s = RigSpec::ZMod(5);
        let r = rig_op(s, RigOp::Mul, &s.from_u64(3), Some(&s.from_u64(4))).unwrap();
        assert_eq!(r, RigValue::zmod(5, 2));
    }

    #[test]
    fn nat_neg_fails() {
        let s = RigSpec::Nat;
        assert!(matches!(
            rig_op(s, RigOp::Neg, &s.from_u64(1), None),
            Err(Error::NegationUnsupported(_))
        ));
    }

    #[test]
    fn mismatch() {
        let r = rig_op(RigSpec::Int, RigOp::Add, &RigSpec::Int.one(), Some(&RigSpec::Nat.one()));
        assert!(matches!(r, Err(Error::SpecMismatch(..))));
    }

    #[test]
    fn rationals_are_reduced() {
        let q = RigValue::rat(4, -6).unwrap();
        match q {
            RigValue::Rat(q) => {
                assert_eq!(*q.numer(), BigInt::from(-2));
                assert_eq!(*q.denom(), BigInt::from(3));
            }
            _ => unreachable!(),
        }
        let r = reduced_fraction(BigInt::from(10), BigInt::from(-4)).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(-5), BigInt::from(2)));
    }

    #[test]
    fn spec_round_trip() {
        for s in ["nat", "int", "rat", "zmod:7"] {
            assert_eq!(s.parse::<RigSpec>().unwrap().to_string(), s);
        }
        assert!("zmod:0".parse::<RigSpec>().is_err());
    }
}
