//! Exact scalars: arbitrary-precision rationals and Gaussian rationals `Q(i)`.
//!
//! Every coefficient in the crate lives in one of these two types. There is no
//! floating-point path anywhere; equality is structural equality of reduced
//! forms.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A reduced fraction `p/q` with `q > 0`.
///
/// Zero is always `0/1`, so two equal values have identical representations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// Build `p/q` in canonical form.
pub fn rat(p: i64, q: i64) -> Result<Rational, ExactError> {
    if q == 0 {
        return Err(ExactError::DivisionByZero);
    }
    Ok(Rational(BigRational::new(BigInt::from(p), BigInt::from(q))))
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Self, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `"p"` or `"p/q"` with optional sign on either part; surrounding
/// whitespace is ignored. Decimal points and exponents are rejected.
impl FromStr for Rational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| ExactError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(bad("empty string"));
        }
        let parse_int = |part: &str| -> Result<BigInt, ExactError> {
            let part = part.trim();
            let digits = part.strip_prefix(['+', '-']).unwrap_or(part);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("expected an integer or p/q"));
            }
            part.parse::<BigInt>()
                .map_err(|_| bad("expected an integer or p/q"))
        };
        match t.split_once('/') {
            None => Ok(Rational::from_bigint(parse_int(t)?)),
            Some((p, q)) => {
                let p = parse_int(p)?;
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(bad("zero denominator"));
                }
                Ok(Rational(BigRational::new(p, q)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $ty::$method(self.clone(), rhs)
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty::$method(self, &rhs)
            }
        }
        impl $trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty::$method(self.clone(), &rhs)
            }
        }
        impl $assign_trait<&$ty> for $ty {
            fn $assign_method(&mut self, rhs: &$ty) {
                let lhs = std::mem::take(self);
                *self = $ty::$method(lhs, rhs);
            }
        }
        impl $assign_trait<$ty> for $ty {
            fn $assign_method(&mut self, rhs: $ty) {
                let lhs = std::mem::take(self);
                *self = $ty::$method(lhs, &rhs);
            }
        }
    };
}

impl Add<&Rational> for Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(self.0 + &rhs.0)
    }
}

impl Sub<&Rational> for Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(self.0 - &rhs.0)
    }
}

impl Mul<&Rational> for Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(self.0 * &rhs.0)
    }
}

/// Panics on division by zero, like the integer operators; use
/// [`Rational::checked_div`] where the divisor is not known to be nonzero.
impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(self.0 / &rhs.0)
    }
}

forward_binop!(Rational, Add, add, AddAssign, add_assign);
forward_binop!(Rational, Sub, sub, SubAssign, sub_assign);
forward_binop!(Rational, Mul, mul, MulAssign, mul_assign);

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.clone() / rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        GaussianRational::real(Rational::one())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::real(Rational::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        g_inv(self)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational::new(&self.re * r, &self.im * r)
    }

    pub fn checked_div(&self, other: &GaussianRational) -> Result<Self, ExactError> {
        Ok(g_mul(self, &g_inv(other)?))
    }
}

/// Exact complex product.
pub fn g_mul(x: &GaussianRational, y: &GaussianRational) -> GaussianRational {
    GaussianRational {
        re: &x.re * &y.re - &x.im * &y.im,
        im: &x.re * &y.im + &x.im * &y.re,
    }
}

/// Multiplicative inverse: conjugate over squared modulus.
pub fn g_inv(x: &GaussianRational) -> Result<GaussianRational, ExactError> {
    if x.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    let n = x.norm_sqr();
    Ok(GaussianRational {
        re: &x.re / &n,
        im: -(&x.im / &n),
    })
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl Add<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: self.re + &rhs.re,
            im: self.im + &rhs.im,
        }
    }
}

impl Sub<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: self.re - &rhs.re,
            im: self.im - &rhs.im,
        }
    }
}

impl Mul<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        g_mul(&self, rhs)
    }
}

forward_binop!(GaussianRational, Add, add, AddAssign, add_assign);
forward_binop!(GaussianRational, Sub, sub, SubAssign, sub_assign);
forward_binop!(GaussianRational, Mul, mul, MulAssign, mul_assign);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = GaussianRational>>(iter: I) -> Self {
        iter.fold(GaussianRational::zero(), |acc, x| acc + x)
    }
}

/// Real values print as plain rationals, purely imaginary ones as `qi`,
/// everything else as `(p+qi)`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, im: &Rational| {
            if im.is_one() {
                write!(f, "i")
            } else if (-im).is_one() {
                write!(f, "-i")
            } else {
                write!(f, "{im}i")
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            imag(f, &self.im)
        } else {
            write!(f, "({}", self.re)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
            imag(f, &self.im)?;
            write!(f, ")")
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `["re", "im"]`.
impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.re)?;
        t.serialize_element(&self.im)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (re, im) = <(Rational, Rational)>::deserialize(deserializer)?;
        Ok(GaussianRational { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        rat(p, d).unwrap()
    }

    fn g(re: Rational, im: Rational) -> GaussianRational {
        GaussianRational::new(re, im)
    }

    #[test]
    fn rat_canonical_forms() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(2, 4).numer(), &BigInt::from(1));
        assert_eq!(q(2, 4).denom(), &BigInt::from(2));
        let r = q(3, -6);
        assert_eq!(r.numer(), &BigInt::from(-1));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = q(0, 5);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(rat(1, 0), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn text_form() {
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!("3".parse::<Rational>().unwrap(), q(3, 1));
        assert_eq!("-1/2".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!(" 4/-8 ".parse::<Rational>().unwrap(), q(-1, 2));
        for bad in ["", "1.5", "1/0", "abc", "1/", "/2", "1e3", "--1"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} accepted");
        }
        let x = g(q(1, 2), q(-3, 1));
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"["1/2","-3"]"#);
        let back: GaussianRational = serde_json::from_str(r#"["1/2","-3"]"#).unwrap();
        assert_eq!(back, x);
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!(x.to_string(), "(1/2-3i)");
    }

    #[test]
    fn g_mul_examples() {
        let i = GaussianRational::i();
        assert_eq!(g_mul(&i, &i), GaussianRational::from_int(-1));
        let a = g(q(1, 1), q(1, 1));
        let b = g(q(1, 1), q(-1, 1));
        assert_eq!(g_mul(&a, &b), GaussianRational::from_int(2));
        let c = g(q(1, 2), q(1, 3));
        assert_eq!(
            g_mul(&c, &GaussianRational::from_int(6)),
            g(q(3, 1), q(2, 1))
        );
    }

    #[test]
    fn g_inv_examples() {
        assert_eq!(g_inv(&GaussianRational::i()).unwrap(), g(q(0, 1), q(-1, 1)));
        assert_eq!(
            g_inv(&GaussianRational::from_int(2)).unwrap(),
            GaussianRational::real(q(1, 2))
        );
        assert_eq!(
            g_inv(&g(q(1, 1), q(1, 1))).unwrap(),
            g(q(1, 2), q(-1, 2))
        );
        assert_eq!(
            g_inv(&GaussianRational::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=12).prop_map(|(p, d)| q(p, d))
    }

    fn gaussian() -> impl Strategy<Value = GaussianRational> {
        (small_rational(), small_rational()).prop_map(|(re, im)| g(re, im))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn field_axioms(x in gaussian(), y in gaussian(), z in gaussian()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
            prop_assert_eq!(x.is_real(), x.im.is_zero());
        }

        #[test]
        fn inverse_round_trip(x in gaussian()) {
            prop_assume!(!x.is_zero());
            let inv = g_inv(&x).unwrap();
            prop_assert_eq!(g_mul(&x, &inv), GaussianRational::one());
            prop_assert_eq!(g_inv(&inv).unwrap(), x);
        }

        #[test]
        fn canonical_form_is_unique(p in -200i64..200, d in 1i64..40, k in 1i64..20) {
            let a = q(p, d);
            let b = q(p * k, d * k);
            prop_assert_eq!(a.numer(), b.numer());
            prop_assert_eq!(a.denom(), b.denom());
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), b);
        }
    }
}
