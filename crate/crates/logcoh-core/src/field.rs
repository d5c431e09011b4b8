//! Coefficient fields for exact linear algebra.
//!
//! Two implementations: arbitrary-precision rationals (`Rat`) and prime
//! fields `Fp<P>` with a compile-time modulus. Everything downstream is
//! generic over [`Field`], so a computation can be rerun over a prime field
//! when exact rational arithmetic gets too slow.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational numbers, the default coefficient field.
pub type Rat = num_rational::BigRational;

/// An exact coefficient field.
///
/// Beyond the ring operations, a field must divide (`inv`), embed small
/// integers and rationals, and optionally expose an integer lift (used when
/// feeding matrices to integral normal-form routines).
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;

    /// Image of a rational number, if it exists in this field
    /// (it does not when the denominator vanishes here).
    fn from_rat(r: &Rat) -> Option<Self>;

    /// A canonical integer representative, if this element has one.
    /// For rationals: defined exactly on integers. For `Fp`: the least
    /// nonnegative residue.
    fn try_to_bigint(&self) -> Option<BigInt>;
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn from_rat(r: &Rat) -> Option<Self> {
        Some(r.clone())
    }

    fn try_to_bigint(&self) -> Option<BigInt> {
        if self.denom().is_one() {
            Some(self.numer().clone())
        } else {
            None
        }
    }
}

/// The prime field with `P` elements, stored as least nonnegative residues.
///
/// `P` must be prime and small enough that `P * P` fits in a `u128`
/// (any `P < 2^63` works); both are the caller's responsibility.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(value: u64) -> Self {
        Fp(value % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn from_i64(n: i64) -> Self {
        let r = n.rem_euclid(P as i64) as u64;
        Fp(r)
    }

    fn from_rat(r: &Rat) -> Option<Self> {
        let p = BigInt::from(P);
        let num = reduce_mod(r.numer(), &p);
        let den = reduce_mod(r.denom(), &p);
        Fp::<P>(den).inv().map(|d| Fp(num) * d)
    }

    fn try_to_bigint(&self) -> Option<BigInt> {
        Some(BigInt::from(self.0))
    }
}

fn reduce_mod(n: &BigInt, p: &BigInt) -> u64 {
    let mut r = n % p;
    if r.is_negative() {
        r += p;
    }
    r.to_u64().expect("residue fits in u64")
}
