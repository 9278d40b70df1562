//! Exact numbers of the form `a + b·√d` with rational `a`, `b`.
//!
//! Scaled hosts carry a factor `√n`, so exact densities live in `Q(√n)`.
//! `d` is kept squarefree; `d == 1` means the value is rational and `b` is
//! folded into `a`. Mixing two different radicals is a logic error and
//! panics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Split `n = s² · d` with `d` squarefree.
pub fn squarefree_split(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut s = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= n;
    (s, d)
}

impl Surd {
    pub fn zero() -> Self {
        Surd { a: BigRational::zero(), b: BigRational::zero(), d: 1 }
    }

    pub fn one() -> Self {
        Surd::rational(BigRational::one())
    }

    pub fn rational(a: BigRational) -> Self {
        Surd { a, b: BigRational::zero(), d: 1 }
    }

    pub fn integer(v: i128) -> Self {
        Surd::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Surd::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `√n`, normalized so perfect squares come out rational.
    pub fn sqrt_of(n: u64) -> Self {
        let (s, d) = squarefree_split(n);
        let s = BigRational::from_integer(BigInt::from(s));
        if d == 1 || n == 0 {
            Surd::rational(if n == 0 { BigRational::zero() } else { s })
        } else {
            Surd { a: BigRational::zero(), b: s, d }
        }
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 1;
        }
        self
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> (&BigRational, u64) {
        (&self.b, self.d)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn radical(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (1, d) | (d, 1) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixing radicals √{x} and √{y}"),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.radical(other);
        Surd { a: &self.a + &other.a, b: &self.b + &other.b, d }.normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.radical(other);
        Surd { a: &self.a - &other.a, b: &self.b - &other.b, d }.normalized()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.b.is_zero() && other.b.is_zero() {
            return Surd::rational(&self.a * &other.a);
        }
        let d = self.radical(other);
        let dd = BigRational::from_integer(BigInt::from(d));
        Surd {
            a: &self.a * &other.a + &self.b * &other.b * dd,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        }
        .normalized()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Surd { a: &self.a * r, b: &self.b * r, d: self.d }.normalized()
    }

    pub fn neg(&self) -> Self {
        Surd { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Surd::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Surd::rational(self.a.recip()));
        }
        // 1/(a + b√d) = (a − b√d)/(a² − b²d); the norm is nonzero for squarefree d > 1.
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * dd;
        Some(Surd { a: &self.a / &norm, b: -(&self.b / &norm), d: self.d }.normalized())
    }

    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with b²·d.
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * dd;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            a
        } else {
            a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
        }
    }
}

fn sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum().cmp(&0)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Serialized as a small record with decimal strings so exact values
/// survive a JSON round trip.
#[derive(Serialize, Deserialize)]
struct SurdRepr {
    rational: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sqrt_coeff: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radicand: Option<u64>,
    approx: f64,
}

impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let irr = !self.b.is_zero();
        SurdRepr {
            rational: self.a.to_string(),
            sqrt_coeff: irr.then(|| self.b.to_string()),
            radicand: irr.then_some(self.d),
            approx: self.to_f64(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SurdRepr::deserialize(d)?;
        let a: BigRational = r.rational.parse().map_err(D::Error::custom)?;
        match (r.sqrt_coeff, r.radicand) {
            (Some(b), Some(rad)) => {
                let b: BigRational = b.parse().map_err(D::Error::custom)?;
                let (s, sq) = squarefree_split(rad);
                let b = b * BigRational::from_integer(BigInt::from(s));
                Ok(Surd { a, b, d: sq }.normalized())
            }
            _ => Ok(Surd::rational(a)),
        }
    }
}
