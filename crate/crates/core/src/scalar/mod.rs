//! Exact arithmetic in the coefficient field `ℚ(μ1, …, μn, α, β)`.
//!
//! A [`Scalar`] is a reduced fraction of [`Polynomial`]s whose denominator is
//! monic under graded-lex order, so structural equality is field equality.

mod gcd;
mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

pub use gcd::gcd;
pub use poly::{Monomial, Polynomial};

use crate::error::{Error, Result};

/// An indeterminate of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Alpha,
    Beta,
    /// `μ_i`, 1-based.
    Mu(usize),
}

impl Var {
    pub(crate) fn index(self) -> usize {
        match self {
            Var::Alpha => 0,
            Var::Beta => 1,
            Var::Mu(i) => {
                assert!(i >= 1, "μ indices are 1-based");
                i + 1
            }
        }
    }

    pub(crate) fn from_index(idx: usize) -> Var {
        match idx {
            0 => Var::Alpha,
            1 => Var::Beta,
            i => Var::Mu(i - 1),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Alpha => write!(f, "a"),
            Var::Beta => write!(f, "b"),
            Var::Mu(i) => write!(f, "m{}", i),
        }
    }
}

/// Partial assignment of rational values to indeterminates.
pub type Bindings = BTreeMap<Var, BigRational>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Polynomial,
    den: Polynomial,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Scalar::from_poly(Polynomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Scalar::from_poly(Polynomial::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::from_poly(Polynomial::constant(c))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(Polynomial::var(v))
    }

    pub fn alpha() -> Self {
        Scalar::var(Var::Alpha)
    }

    pub fn beta() -> Self {
        Scalar::var(Var::Beta)
    }

    /// `μ_i`, 1-based.
    pub fn mu(i: usize) -> Self {
        Scalar::var(Var::Mu(i))
    }

    pub fn from_poly(num: Polynomial) -> Self {
        Scalar {
            num,
            den: Polynomial::one(),
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn from_fraction(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_constant() {
            let inv = den.constant_term().recip();
            return Scalar::from_poly(num.scale(&inv));
        }
        let (num, den) = cancel(&num, &den);
        Scalar::normalize_lc(num, den)
    }

    /// `num / den` for coprime inputs: makes `den` monic.
    fn normalize_lc(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::zero();
        }
        let lc = den.leading_coefficient();
        if den.is_constant() {
            return Scalar::from_poly(num.scale(&lc.recip()));
        }
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Re-runs canonicalization; a no-op on any value this type produces.
    pub fn canonicalize(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value if this scalar involves no indeterminates.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.constant_term())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if other.den.is_one() && other.num.is_constant() {
            let inv = other.num.constant_term().recip();
            return Ok(Scalar {
                num: self.num.scale(&inv),
                den: self.den.clone(),
            });
        }
        Ok(Self::canonical(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Substitution homomorphism; unbound indeterminates stay symbolic.
    pub fn specialize(&self, bindings: &Bindings) -> Result<Self> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for (var, value) in bindings {
            num = num.substitute(var.index(), value);
            den = den.substitute(var.index(), value);
        }
        if den.is_zero() {
            return Err(Error::SpecializationPole {
                scalar: self.to_string(),
            });
        }
        Ok(Self::canonical(num, den))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::from_int(c)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Self {
        Scalar::from_rational(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return Scalar::canonical(self.num.add(&rhs.num), self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let (c1, c2) = if g.is_one() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (
                rhs.den.div_exact(&g).expect("gcd divides"),
                self.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = self.num.mul(&c1).add(&rhs.num.mul(&c2));
        // Only factors of g can survive in gcd(num, den).
        if num.is_zero() {
            return Scalar::zero();
        }
        let (num, g) = cancel(&num, &g);
        Scalar::normalize_lc(num, g.mul(&c1).mul(&c2))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.sub(&rhs.num));
        }
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        // Cross-cancel so the product of reduced fractions is already reduced.
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        Scalar::normalize_lc(n1.mul(&n2), d1.mul(&d2))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
        impl<'a> $tra<&'a Scalar> for Scalar {
            fn $ma(&mut self, rhs: &'a Scalar) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $tra<Scalar> for Scalar {
            fn $ma(&mut self, rhs: Scalar) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// `(a / g, b / g)` for `g = gcd(a, b)`.
fn cancel(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    if a.is_constant() || b.is_constant() {
        return (a.clone(), b.clone());
    }
    let g = gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (
            a.div_exact(&g).expect("gcd divides"),
            b.div_exact(&g).expect("gcd divides"),
        )
    }
}

/// Exact binomial coefficient as a rational scalar.
pub fn binomial(n: u32, k: u32) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}
