//! Exact rationals with an `i64` fast path and a `BigRational` fallback, plus
//! Gaussian rationals `a + b i`.
//!
//! Values are always canonical: denominator positive, fraction reduced, and a
//! value that fits in `i64/i64` is stored in the small form. Equality and
//! hashing therefore work structurally.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

/// Arbitrary-precision rational number.
#[derive(Clone)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        if num == 0 {
            return Rational(Repr::Small(0, 1));
        }
        let (mut n, mut d) = if den < 0 {
            match (num.checked_neg(), den.checked_neg()) {
                (Some(n), Some(d)) => (n, d),
                _ => return Self::from_big(BigRational::new(num.into(), den.into())),
            }
        } else {
            (num, den)
        };
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new_raw(n.into(), d.into()))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        // BigRational::new already reduced; demote if it fits.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Rational(Repr::Small(n, d));
        }
        Rational(Repr::Big(r))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => b.clone(),
        }
    }

    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Rational {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    pub fn integer(n: i64) -> Rational {
        Rational(Repr::Small(n, 1))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Numerator and denominator when both fit in `i64`.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small(n, d) => Some((*n, *d)),
            Repr::Big(_) => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Exact value of a finite float.
    pub fn from_f64(x: f64) -> Option<Rational> {
        BigRational::from_float(x).map(Self::from_big)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(Integer::div_floor(n, d)),
            Repr::Big(b) => b.floor().to_integer(),
        }
    }

    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(Integer::div_ceil(n, d)),
            Repr::Big(b) => b.ceil().to_integer(),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Rational {
        if e < 0 {
            return self.recip().pow(-e);
        }
        let mut acc = Rational::one();
        let mut base = self.clone();
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn min_of(a: Rational, b: Rational) -> Rational {
        if a <= b {
            a
        } else {
            b
        }
    }

    pub fn max_of(a: Rational, b: Rational) -> Rational {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn add_impl(&self, o: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &o.0) {
            if b == d {
                return Self::from_i128(*a as i128 + *c as i128, *b as i128);
            }
            let x = (*a as i128) * (*d as i128);
            let y = (*c as i128) * (*b as i128);
            if let Some(s) = x.checked_add(y) {
                return Self::from_i128(s, (*b as i128) * (*d as i128));
            }
        }
        Self::from_big(self.to_big() + o.to_big())
    }

    fn mul_impl(&self, o: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &o.0) {
            if *a == 0 || *c == 0 {
                return Rational::zero();
            }
            return Self::from_i128((*a as i128) * (*c as i128), (*b as i128) * (*d as i128));
        }
        Self::from_big(self.to_big() * o.to_big())
    }

    fn neg_impl(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Self::from_big(-self.to_big()),
            },
            Repr::Big(b) => Self::from_big(-b.clone()),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::integer(n as i64)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::integer(n as i64)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::from(BigInt::from(n))
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from(BigInt::from(n))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl From<&Rational> for BigRational {
    fn from(r: &Rational) -> Self {
        r.to_big()
    }
}

impl PartialEq for Rational {
    fn eq(&self, o: &Self) -> bool {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(h);
                n.hash(h);
                d.hash(h);
            }
            Repr::Big(b) => {
                1u8.hash(h);
                b.numer().hash(h);
                b.denom().hash(h);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error for malformed rational literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal {:?}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `a`, `a/b` and finite decimals such as `-1.25`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((a, b)) = t.split_once('/') {
            let n: BigInt = a.trim().parse().map_err(|_| err())?;
            let d: BigInt = b.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rational::from_bigints(n, d));
        }
        if let Some((ip, fp)) = t.split_once('.') {
            if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            let neg = ip.starts_with('-');
            let ip_digits = ip.trim_start_matches(['-', '+']);
            if !ip_digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            let whole: BigInt = format!("{}{}", if ip_digits.is_empty() { "0" } else { ip_digits }, fp)
                .parse()
                .map_err(|_| err())?;
            let den = num_traits::pow(BigInt::from(10), fp.len());
            let r = Rational::from_bigints(whole, den);
            return Ok(if neg { -r } else { r });
        }
        let n: BigInt = t.parse().map_err(|_| err())?;
        Ok(Rational::from(n))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Lit {
            S(String),
            I(i64),
        }
        match Lit::deserialize(d)? {
            Lit::S(s) => s.parse().map_err(serde::de::Error::custom),
            Lit::I(i) => Ok(Rational::integer(i)),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $body:expr) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(self, o)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                (&self).$m(&o)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                (&self).$m(o)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                self.$m(&o)
            }
        }
        impl $atr<Rational> for Rational {
            fn $am(&mut self, o: Rational) {
                *self = (&*self).$m(&o);
            }
        }
        impl $atr<&Rational> for Rational {
            fn $am(&mut self, o: &Rational) {
                *self = (&*self).$m(o);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, |a, b| a.add_impl(b));
binop!(Sub, sub, SubAssign, sub_assign, |a, b| a.add_impl(&b.neg_impl()));
binop!(Mul, mul, MulAssign, mul_assign, |a, b| a.mul_impl(b));
binop!(Div, div, DivAssign, div_assign, |a, b| a.mul_impl(&b.recip()));

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_impl()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_impl()
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(it: I) -> Rational {
        it.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(it: I) -> Rational {
        it.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(it: I) -> Rational {
        it.fold(Rational::one(), |a, b| a * b)
    }
}

/// Shorthand for `Rational::new(n, d)`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Shorthand for an integer rational.
pub fn qi(n: i64) -> Rational {
    Rational::integer(n)
}

/// Binomial coefficient as an exact rational; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Rational {
    Rational::from(binomial_big(n, k))
}

pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from(acc)
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Gaussian {
        Gaussian { re, im }
    }

    pub fn real(re: Rational) -> Gaussian {
        Gaussian { re, im: Rational::zero() }
    }

    pub fn i() -> Gaussian {
        Gaussian { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Gaussian {
        Gaussian { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        if self.im.is_zero() && o.im.is_zero() {
            return Gaussian::real(self.re * o.re);
        }
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian { re: -self.re, im: -self.im }
    }
}

impl AddAssign for Gaussian {
    fn add_assign(&mut self, o: Gaussian) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::real(Rational::one())
    }
}
