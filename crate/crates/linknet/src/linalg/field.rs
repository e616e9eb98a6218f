//! The three coefficient fields: ℚ, 𝔽_p and ℚ(t).
//!
//! A field is a small context value (a unit struct or a prime) whose
//! elements are a separate associated type. All element operations go
//! through the context so that prime fields do not have to store the
//! modulus in every element.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("cannot parse {text:?} as an element of {field}")]
    Parse { field: String, text: String },
    #[error("{p} is not a prime or exceeds 2^31")]
    BadPrime { p: u64 },
}

/// A field of scalars. The context object carries whatever data the
/// field needs (the prime for 𝔽_p); elements are plain values.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type E: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// None exactly when `a` is zero.
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn from_int(&self, n: i64) -> Self::E;

    /// Canonical textual form, also used in the JSON net schema.
    fn format(&self, a: &Self::E) -> String;
    fn parse(&self, s: &str) -> Result<Self::E, FieldError>;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
    fn div(&self, a: &Self::E, b: &Self::E) -> Option<Self::E> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn name(&self) -> String;
}

/// Serializable description of a field, as it appears in net documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    Prime { p: u64 },
    RationalFunctionsT,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F{p}"),
            FieldSpec::RationalFunctionsT => write!(f, "Q(t)"),
        }
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// The field ℚ with arbitrary-precision arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        parse_rational(s).ok_or_else(|| FieldError::Parse {
            field: "Q".into(),
            text: s.into(),
        })
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// The prime field 𝔽_p for a prime p ≤ 2³¹. Elements are residues in
/// `0..p` stored as `u64`, so products never overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p > (1 << 31) || !is_prime(p) {
            return Err(FieldError::BadPrime { p });
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// All field elements in ascending order, for exhaustive scans.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Extended Euclid on (a, p).
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(s0.rem_euclid(self.p as i128) as u64)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        let n: i64 = s.trim().parse().map_err(|_| FieldError::Parse {
            field: format!("F{}", self.p),
            text: s.into(),
        })?;
        Ok(self.from_int(n))
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
}

// ---------------------------------------------------------------------------
// Polynomials over Q and the field Q(t)
// ---------------------------------------------------------------------------

/// Dense polynomial over ℚ, constant coefficient first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(vec![])
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    /// The monomial t.
    pub fn t() -> Self {
        Poly(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn eval0(&self) -> BigRational {
        self.0.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dl = div.leading().unwrap().clone();
        let dd = div.degree().unwrap();
        let mut rem = self.0.clone();
        let mut quot = vec![
            BigRational::zero();
            self.0.len().saturating_sub(div.0.len()).saturating_add(1)
        ];
        while rem.len() >= div.0.len() && !rem.is_empty() {
            let lead = rem.last().unwrap().clone();
            if lead.is_zero() {
                rem.pop();
                continue;
            }
            let k = rem.len() - 1 - dd;
            let c = &lead / &dl;
            for (i, b) in div.0.iter().enumerate() {
                let v = &rem[k + i] - c.clone() * b;
                rem[k + i] = v;
            }
            quot[k] = c;
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }
}

/// Element of ℚ(t): a reduced fraction with monic denominator, so that
/// equality of elements is equality of representations.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(t)");
        if num.is_zero() {
            return RatFn {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lead = den.leading().unwrap().clone();
        RatFn {
            num: num.scale(&lead.recip()),
            den: den.scale(&lead.recip()),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    /// The monomial t as an element of ℚ(t).
    pub fn t() -> Self {
        RatFn::from_poly(Poly::t())
    }

    /// Evaluation at t = 0, if the denominator does not vanish there.
    pub fn eval0(&self) -> Option<BigRational> {
        let d0 = self.den.eval0();
        if d0.is_zero() {
            None
        } else {
            Some(self.num.eval0() / d0)
        }
    }
}

/// The field ℚ(t) of rational functions in one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RatFns;

impl Field for RatFns {
    type E = RatFn;

    fn zero(&self) -> RatFn {
        RatFn::from_poly(Poly::zero())
    }
    fn one(&self) -> RatFn {
        RatFn::from_poly(Poly::one())
    }
    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        RatFn::new(
            a.num.mul(&b.den).add(&b.num.mul(&a.den)),
            a.den.mul(&b.den),
        )
    }
    fn neg(&self, a: &RatFn) -> RatFn {
        RatFn {
            num: a.num.neg(),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        RatFn::new(a.num.mul(&b.num), a.den.mul(&b.den))
    }
    fn inv(&self, a: &RatFn) -> Option<RatFn> {
        if a.num.is_zero() {
            None
        } else {
            Some(RatFn::new(a.den.clone(), a.num.clone()))
        }
    }
    fn is_zero(&self, a: &RatFn) -> bool {
        a.num.is_zero()
    }
    fn from_int(&self, n: i64) -> RatFn {
        RatFn::from_poly(Poly::constant(Rationals.from_int(n)))
    }
    fn format(&self, a: &RatFn) -> String {
        let fmt_poly = |p: &Poly| -> String {
            if p.is_zero() {
                "0".to_string()
            } else {
                p.coeffs()
                    .iter()
                    .map(|c| Rationals.format(c))
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        format!("{}|{}", fmt_poly(&a.num), fmt_poly(&a.den))
    }
    fn parse(&self, s: &str) -> Result<RatFn, FieldError> {
        let err = || FieldError::Parse {
            field: "Q(t)".into(),
            text: s.into(),
        };
        let parse_poly = |txt: &str| -> Result<Poly, FieldError> {
            let coeffs = txt
                .split(',')
                .map(|c| parse_rational(c).ok_or_else(err))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Poly::from_coeffs(coeffs))
        };
        match s.split_once('|') {
            Some((num, den)) => {
                let den = parse_poly(den)?;
                if den.is_zero() {
                    return Err(err());
                }
                Ok(RatFn::new(parse_poly(num)?, den))
            }
            None => Ok(RatFn::from_poly(parse_poly(s)?)),
        }
    }
    fn name(&self) -> String {
        "Q(t)".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_int(-1), 6);
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(1 << 32).is_err());
    }

    #[test]
    fn rational_parse_format_roundtrip() {
        let q = Rationals;
        for s in ["0", "-3", "5/7", "-12/5"] {
            let e = q.parse(s).unwrap();
            assert_eq!(q.format(&e), s);
        }
        assert_eq!(q.format(&q.parse("4/8").unwrap()), "1/2");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn poly_divrem_and_gcd() {
        let q = Rationals;
        let c = |n: i64| q.from_int(n);
        // (t^2 - 1) / (t - 1) = t + 1
        let p = Poly::from_coeffs(vec![c(-1), c(0), c(1)]);
        let d = Poly::from_coeffs(vec![c(-1), c(1)]);
        let (quot, rem) = p.divrem(&d);
        assert!(rem.is_zero());
        assert_eq!(quot, Poly::from_coeffs(vec![c(1), c(1)]));
        // gcd(t^2 - 1, t^2 + 2t + 1) = t + 1
        let a = Poly::from_coeffs(vec![c(-1), c(0), c(1)]);
        let b = Poly::from_coeffs(vec![c(1), c(2), c(1)]);
        assert_eq!(a.gcd(&b), Poly::from_coeffs(vec![c(1), c(1)]));
    }

    #[test]
    fn ratfn_arithmetic_is_reduced() {
        let k = RatFns;
        let t = RatFn::t();
        // t * (1/t) = 1
        let inv = k.inv(&t).unwrap();
        assert_eq!(k.mul(&t, &inv), k.one());
        // (t^2 - 1)/(t - 1) reduces to t + 1
        let q = Rationals;
        let c = |n: i64| q.from_int(n);
        let e = RatFn::new(
            Poly::from_coeffs(vec![c(-1), c(0), c(1)]),
            Poly::from_coeffs(vec![c(-1), c(1)]),
        );
        assert_eq!(e, RatFn::from_poly(Poly::from_coeffs(vec![c(1), c(1)])));
        // canonical denominators are monic
        let f = RatFn::new(Poly::one(), Poly::from_coeffs(vec![c(2), c(2)]));
        assert_eq!(f.den.leading().unwrap(), &c(1));
    }

    #[test]
    fn ratfn_eval0() {
        let k = RatFns;
        let t = RatFn::t();
        assert_eq!(t.eval0(), Some(Rationals.zero()));
        // 1/(1+t) at 0 is 1
        let e = RatFn::new(Poly::one(), Poly::from_coeffs(vec![Rationals.one(), Rationals.one()]));
        assert_eq!(e.eval0(), Some(Rationals.one()));
        // 1/t has a pole at 0
        assert_eq!(k.inv(&t).unwrap().eval0(), None);
    }
}
