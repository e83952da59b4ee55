//! Scalar rigs: commutative semirings with exact arithmetic.
//!
//! Every algorithm in the crate is generic over [`Rig`]. The four carriers
//! are [`Natural`], [`BigInt`], [`BigRational`] and [`Zm`]; the last one fixes
//! its modulus at compile time so that `zero()` and `one()` need no context.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::value::{RigSpec, RigValue};
use crate::error::{Error, Result};

/// A commutative rig with exact, canonical equality.
pub trait Rig:
    Clone + Eq + Ord + Hash + Debug + Display + Zero + One + Send + Sync + 'static
{
    /// Additive inverse, when the rig has one.
    fn try_neg(&self) -> Option<Self>;

    /// Image of `n` under the unique rig map from the naturals.
    fn from_u64(n: u64) -> Self;

    fn spec() -> RigSpec;

    fn to_value(&self) -> RigValue;

    fn from_value(v: &RigValue) -> Result<Self>;

    fn has_negation() -> bool {
        Self::one().try_neg().is_some()
    }
}

/// A rig with finitely many elements, enumerable in a fixed order.
pub trait FiniteRig: Rig {
    fn elements() -> Vec<Self>;

    fn order() -> u64;

    fn index(&self) -> usize;
}

/// Natural numbers with arbitrary precision.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Natural(pub BigUint);

impl Natural {
    pub fn new(n: u64) -> Self {
        Natural(BigUint::from(n))
    }
}

impl Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl Add for Natural {
    type Output = Natural;
    fn add(self, rhs: Natural) -> Natural {
        Natural(self.0 + rhs.0)
    }
}

impl Mul for Natural {
    type Output = Natural;
    fn mul(self, rhs: Natural) -> Natural {
        Natural(self.0 * rhs.0)
    }
}

impl Zero for Natural {
    fn zero() -> Self {
        Natural(BigUint::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Natural {
    fn one() -> Self {
        Natural(BigUint::one())
    }
}

impl Rig for Natural {
    fn try_neg(&self) -> Option<Self> {
        None
    }
    fn from_u64(n: u64) -> Self {
        Natural::new(n)
    }
    fn spec() -> RigSpec {
        RigSpec::Nat
    }
    fn to_value(&self) -> RigValue {
        RigValue::Nat(self.0.clone())
    }
    fn from_value(v: &RigValue) -> Result<Self> {
        match v {
            RigValue::Nat(n) => Ok(Natural(n.clone())),
            other => Err(Error::SpecMismatch(other.spec().to_string(), "nat".into())),
        }
    }
}

impl Rig for BigInt {
    fn try_neg(&self) -> Option<Self> {
        Some(-self.clone())
    }
    fn from_u64(n: u64) -> Self {
        BigInt::from(n)
    }
    fn spec() -> RigSpec {
        RigSpec::Int
    }
    fn to_value(&self) -> RigValue {
        RigValue::Int(self.clone())
    }
    fn from_value(v: &RigValue) -> Result<Self> {
        match v {
            RigValue::Int(n) => Ok(n.clone()),
            other => Err(Error::SpecMismatch(other.spec().to_string(), "int".into())),
        }
    }
}

impl Rig for BigRational {
    fn try_neg(&self) -> Option<Self> {
        Some(-self.clone())
    }
    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn spec() -> RigSpec {
        RigSpec::Rat
    }
    fn to_value(&self) -> RigValue {
        RigValue::Rat(self.clone())
    }
    fn from_value(v: &RigValue) -> Result<Self> {
        match v {
            RigValue::Rat(q) => Ok(q.clone()),
            other => Err(Error::SpecMismatch(other.spec().to_string(), "rat".into())),
        }
    }
}

/// Residues modulo `M`, always reduced into `[0, M)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Zm<const M: u64>(u64);

impl<const M: u64> Zm<M> {
    pub const fn new(n: u64) -> Self {
        assert!(M >= 1, "modulus must be positive");
        Zm(n % M)
    }

    pub const fn residue(self) -> u64 {
        self.0
    }
}

impl<const M: u64> Debug for Zm<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const M: u64> Display for Zm<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const M: u64> Add for Zm<M> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Zm(((self.0 as u128 + rhs.0 as u128) % M as u128) as u64)
    }
}

impl<const M: u64> Mul for Zm<M> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Zm(((self.0 as u128 * rhs.0 as u128) % M as u128) as u64)
    }
}

impl<const M: u64> Zero for Zm<M> {
    fn zero() -> Self {
        Zm(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const M: u64> One for Zm<M> {
    fn one() -> Self {
        Zm::new(1)
    }
}

impl<const M: u64> Rig for Zm<M> {
    fn try_neg(&self) -> Option<Self> {
        Some(Zm((M - self.0) % M))
    }
    fn from_u64(n: u64) -> Self {
        Zm::new(n)
    }
    fn spec() -> RigSpec {
        RigSpec::ZMod(M)
    }
    fn to_value(&self) -> RigValue {
        RigValue::ZMod { modulus: M, residue: self.0 }
    }
    fn from_value(v: &RigValue) -> Result<Self> {
        match v {
            RigValue::ZMod { modulus, residue } if *modulus == M => Ok(Zm::new(*residue)),
            other => Err(Error::SpecMismatch(
                other.spec().to_string(),
                RigSpec::ZMod(M).to_string(),
            )),
        }
    }
}

impl<const M: u64> FiniteRig for Zm<M> {
    fn elements() -> Vec<Self> {
        (0..M).map(Zm).collect()
    }
    fn order() -> u64 {
        M
    }
    fn index(&self) -> usize {
        self.0 as usize
    }
}

/// `a - b` in a rig with negation; panics otherwise.
pub fn sub<R: Rig>(a: &R, b: &R) -> R {
    a.clone() + b.try_neg().expect("subtraction needs a ring")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_laws<R: Rig>(a: &R, b: &R, c: &R) {
        assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        assert_eq!(
            (a.clone() * b.clone()) * c.clone(),
            a.clone() * (b.clone() * c.clone())
        );
        assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        assert_eq!(a.clone() + R::zero(), a.clone());
        assert_eq!(a.clone() * R::one(), a.clone());
        assert_eq!(a.clone() * R::zero(), R::zero());
    }

    fn exhaustive<const M: u64>() {
        let els = Zm::<M>::elements();
        for a in &els {
            for b in &els {
                for c in &els {
                    check_laws(a, b, c);
                }
            }
            assert_eq!(a.clone() + a.try_neg().unwrap(), Zm::zero());
        }
    }

    #[test]
    fn zmod_laws_exhaustive() {
        exhaustive::<1>();
        exhaustive::<2>();
        exhaustive::<3>();
        exhaustive::<4>();
        exhaustive::<5>();
        exhaustive::<6>();
        exhaustive::<7>();
    }

    #[test]
    fn zmod_one_is_zero_mod_one() {
        assert_eq!(Zm::<1>::one(), Zm::<1>::zero());
    }

    #[test]
    fn naturals_have_no_negation() {
        assert!(Natural::new(1).try_neg().is_none());
        assert!(!Natural::has_negation());
        assert!(BigInt::has_negation());
    }

    #[test]
    fn from_u64_reduces() {
        assert_eq!(Zm::<5>::from_u64(12), Zm::new(2));
        assert_eq!(BigRational::from_u64(3), BigRational::from_integer(3.into()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rat() -> impl Strategy<Value = BigRational> {
            (-20i64..20, 1i64..9).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
        }

        proptest! {
            #[test]
            fn int_laws(a in -50i64..50, b in -50i64..50, c in -50i64..50) {
                check_laws(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c));
            }

            #[test]
            fn nat_laws(a in 0u64..50, b in 0u64..50, c in 0u64..50) {
                check_laws(&Natural::new(a), &Natural::new(b), &Natural::new(c));
            }

            #[test]
            fn rat_laws(a in rat(), b in rat(), c in rat()) {
                check_laws(&a, &b, &c);
            }
        }
    }
}
