//! Exact integers and rationals, the half-integer lattice, part lists, and
//! the small combinatorial toolkit (lcm, binomials, multinomials,
//! compositions) used by every other module.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("{s:?}: zero denominator")));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(
            BigInt::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?,
        ),
    };
    Ok(parsed)
}

/// A point of the lattice (1/2)Z, stored as the integer `2s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfLatticePoint {
    twice: BigInt,
}

impl HalfLatticePoint {
    pub fn from_twice(twice: impl Into<BigInt>) -> Self {
        HalfLatticePoint { twice: twice.into() }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        HalfLatticePoint { twice: n.into() * 2 }
    }

    pub fn twice(&self) -> &BigInt {
        &self.twice
    }

    pub fn is_integer(&self) -> bool {
        self.twice.is_even()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.twice.clone(), BigInt::from(2))
    }

    /// Index of this point in a table of period `period`: `2s mod 2*period`.
    pub fn residue(&self, period: u64) -> usize {
        let modulus = BigInt::from(period) * 2;
        self.twice
            .mod_floor(&modulus)
            .to_usize()
            .expect("residue fits in usize")
    }

    pub fn abs(&self) -> Self {
        HalfLatticePoint { twice: self.twice.abs() }
    }

    /// Exact conversion from a rational with denominator 1 or 2.
    pub fn from_rational(r: &Rational) -> Result<Self> {
        let doubled = r * int(2);
        if doubled.is_integer() {
            Ok(HalfLatticePoint { twice: doubled.to_integer() })
        } else {
            Err(Error::input(format!("{r} is not on the half-integer lattice")))
        }
    }
}

impl Add for &HalfLatticePoint {
    type Output = HalfLatticePoint;
    fn add(self, rhs: &HalfLatticePoint) -> HalfLatticePoint {
        HalfLatticePoint { twice: &self.twice + &rhs.twice }
    }
}

impl Sub for &HalfLatticePoint {
    type Output = HalfLatticePoint;
    fn sub(self, rhs: &HalfLatticePoint) -> HalfLatticePoint {
        HalfLatticePoint { twice: &self.twice - &rhs.twice }
    }
}

impl Neg for &HalfLatticePoint {
    type Output = HalfLatticePoint;
    fn neg(self) -> HalfLatticePoint {
        HalfLatticePoint { twice: -&self.twice }
    }
}

impl fmt::Display for HalfLatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", &self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfLatticePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HalfLatticePoint::from_rational(&parse_rational(s)?)
    }
}

impl Serialize for HalfLatticePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfLatticePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Ordered list of positive integer parts `d_1, ..., d_m`. Order is kept
/// exactly as given; duplicates are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PartList(Vec<u64>);

impl PartList {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::input("part list must not be empty"));
        }
        if parts.contains(&0) {
            return Err(Error::input("parts must be positive"));
        }
        Ok(PartList(parts))
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> u64 {
        *self.0.last().expect("part list is non-empty")
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Product of the parts.
    pub fn product(&self) -> BigInt {
        self.0.iter().map(|&d| BigInt::from(d)).product()
    }

    /// Half the sum of the parts: the shift between the V and W frames.
    pub fn xi(&self) -> HalfLatticePoint {
        HalfLatticePoint::from_twice(self.sum())
    }

    pub fn lcm(&self) -> u64 {
        lcm_of(&self.0).expect("part list is non-empty")
    }

    /// The first `k` parts, `1 <= k <= m`.
    pub fn prefix(&self, k: usize) -> Result<PartList> {
        if k == 0 || k > self.len() {
            return Err(Error::input(format!("prefix length {k} out of range 1..={}", self.len())));
        }
        Ok(PartList(self.0[..k].to_vec()))
    }

    pub fn with_part(&self, d: u64) -> Result<PartList> {
        let mut parts = self.0.clone();
        parts.push(d);
        PartList::new(parts)
    }
}

impl fmt::Display for PartList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let joined: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", joined.join(","))
    }
}

impl FromStr for PartList {
    type Err = Error;
    /// Parses a comma-separated list such as `1,2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("part {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PartList::new(parts)
    }
}

impl<'de> Deserialize<'de> for PartList {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u64>::deserialize(deserializer)?;
        PartList::new(parts).map_err(serde::de::Error::custom)
    }
}

pub fn lcm_of(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::input("lcm of an empty list"));
    }
    let mut acc = 1u64;
    for &v in values {
        if v == 0 {
            return Err(Error::input("lcm arguments must be positive"));
        }
        acc = (acc / acc.gcd(&v))
            .checked_mul(v)
            .ok_or_else(|| Error::input("lcm overflows u64"))?;
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n! / prod r_i!`; requires `sum(r) == n`.
pub fn multinomial(n: u64, r: &[usize]) -> Result<BigUint> {
    let total: u64 = r.iter().map(|&x| x as u64).sum();
    if total != n {
        return Err(Error::input(format!("multinomial: parts sum to {total}, expected {n}")));
    }
    let mut acc = BigUint::one();
    let mut remaining = n;
    for &x in r {
        acc *= binomial(remaining, x as i64);
        remaining -= x as u64;
    }
    Ok(acc)
}

/// All vectors of `m` nonnegative integers summing to `l`, in
/// lexicographically descending order: `(l,0,..,0)` first, `(0,..,0,l)` last.
///
/// `m == 0` yields the empty vector once when `l == 0` and nothing otherwise.
pub fn compositions(l: usize, m: usize) -> Compositions {
    let next = match m {
        0 if l == 0 => Some(Vec::new()),
        0 => None,
        _ => {
            let mut first = vec![0; m];
            first[0] = l;
            Some(first)
        }
    };
    Compositions { next }
}

#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let m = current.len();
        if m >= 2 {
            if let Some(k) = (0..m - 1).rev().find(|&k| current[k] > 0) {
                let mut succ = current.clone();
                let tail: usize = succ[k + 1..].iter().sum();
                succ[k] -= 1;
                succ[k + 1] = tail + 1;
                for x in &mut succ[k + 2..] {
                    *x = 0;
                }
                self.next = Some(succ);
            }
        }
        Some(current)
    }
}
