//! Exact rational numbers with an inline machine-word fast path.
//!
//! Values that fit in `i64/i64` stay unboxed; anything larger falls back to
//! [`BigRational`]. The representation is canonical, so derived equality and
//! hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, denominator > 0.
    Small(i64, i64),
    /// Only used when the value does not fit `Small`.
    Big(Box<BigRational>),
}

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Self::zero();
        }
        let neg = (num < 0) != (den < 0);
        let (un, ud) = (num.unsigned_abs(), den.unsigned_abs());
        let g = gcd_u128(un, ud);
        let (un, ud) = (un / g, ud / g);
        if un <= i64::MAX as u128 && ud <= i64::MAX as u128 {
            let n = un as i64;
            Rational(Repr::Small(if neg { -n } else { n }, ud as i64))
        } else {
            let n = BigInt::from(un);
            let n = if neg { -n } else { n };
            Rational(Repr::Big(Box::new(BigRational::new_raw(n, BigInt::from(ud)))))
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced; try to shrink.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if d > 0 {
                return Rational(Repr::Small(n, d));
            }
        }
        Rational(Repr::Big(Box::new(r)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
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

    /// Integer value if this is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "inverse of zero");
                Self::from_i128(*d as i128, *n as i128)
            }
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self - a*b` in one step (the hot operation of every reduction loop).
    pub fn sub_mul(&self, a: &Rational, b: &Rational) -> Rational {
        if let (Repr::Small(sn, sd), Repr::Small(an, ad), Repr::Small(bn, bd)) = (&self.0, &a.0, &b.0) {
            let pn = *an as i128 * *bn as i128;
            let pd = *ad as i128 * *bd as i128;
            if *sd == 1 && pd == 1 {
                return Self::from_i128(*sn as i128 - pn, 1);
            }
            if pn.unsigned_abs() < (1u128 << 62) && pd < (1i128 << 62) {
                let num = *sn as i128 * pd - pn * *sd as i128;
                return Self::from_i128(num, *sd as i128 * pd);
            }
        }
        self - &(a * b)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Self::from_big(r)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, o: &Rational) -> Rational {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Rational::from_i128(*a as i128 + *c as i128, 1);
                }
                if b == d {
                    return Rational::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let num = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                Rational::from_i128(num, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, o: &Rational) -> Rational {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Rational::from_i128(*a as i128 - *c as i128, 1);
                }
                let num = *a as i128 * *d as i128 - *c as i128 * *b as i128;
                Rational::from_i128(num, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() - o.to_big()),
        }
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, o: &Rational) -> Rational {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Rational::from_i128(*a as i128 * *c as i128, 1);
                }
                // cross-cancel first so the products stay small
                let g1 = gcd_u64(a.unsigned_abs(), d.unsigned_abs()).max(1) as i64;
                let g2 = gcd_u64(c.unsigned_abs(), b.unsigned_abs()).max(1) as i64;
                let num = (*a / g1) as i128 * (*c / g2) as i128;
                let den = (*b / g2) as i128 * (*d / g1) as i128;
                Rational::from_i128(num, den)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, o: &Rational) -> Rational {
        self * &o.recip()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) if *n != i64::MIN => Rational(Repr::Small(-n, *d)),
            _ => Rational::from_big(-self.to_big()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
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

/// Parse error for [`Rational::from_str`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError;

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid rational literal")
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| ParseRationalError)?;
        let d: BigInt = d.parse().map_err(|_| ParseRationalError)?;
        if d.is_zero() {
            return Err(ParseRationalError);
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        if d.is_one() {
            if let Some(v) = n.to_i64() {
                return Ok(Rational::from_int(v));
            }
        }
        Ok(Rational::from_big(BigRational::new_raw(n, d)))
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn same(a: &Rational, b: &BigRational) -> bool {
        a.numer() == *b.numer() && a.denom() == *b.denom()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(0, -5), Rational::zero());
        assert_eq!(Rational::new(6, 3).to_string(), "2");
        assert_eq!("-6/4".parse::<Rational>().unwrap(), Rational::new(-3, 2));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let m = Rational::from_int(i64::MAX);
        let s = &m + &m;
        assert_eq!(s.numer(), BigInt::from(i64::MAX) * 2);
        let back = &s - &m;
        assert_eq!(back, m);
        assert!(matches!(back.0, Repr::Small(..)));
        let neg_min = -Rational::from_int(i64::MIN);
        assert_eq!(neg_min.numer(), -BigInt::from(i64::MIN));
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in -1_000_000_000_000i64..1_000_000_000_000, b in 1i64..1_000_000_000,
                                   c in -1_000_000_000_000i64..1_000_000_000_000, d in 1i64..1_000_000_000) {
            let (x, y) = (Rational::new(a, b), Rational::new(c, d));
            let (bx, by) = (big(a, b), big(c, d));
            prop_assert!(same(&(&x + &y), &(&bx + &by)));
            prop_assert!(same(&(&x - &y), &(&bx - &by)));
            prop_assert!(same(&(&x * &y), &(&bx * &by)));
            prop_assert!(same(&x.sub_mul(&y, &x), &(&bx - &by * &bx)));
            if c != 0 {
                prop_assert!(same(&(&x / &y), &(&bx / &by)));
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        }
    }
}
