//! Ground-truth denumerant counts, independent of the quasi-polynomial
//! machinery: coefficients of `prod_i 1/(1 - t^{d_i})` by sequential
//! convolution, and a brute-force enumerator as a second opinion.
//!
//! Equal parts are distinct coordinates, so `{1,1}` counts `n + 1` ways.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{HalfLatticePoint, PartList};

/// Default bound on the number of candidate vectors [`count_enum`] visits.
pub const DEFAULT_GUARD_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    parts: PartList,
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn parts(&self) -> &PartList {
        &self.parts
    }

    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `p(n)`; zero for negative `n`. Panics past `max_n`.
    pub fn get(&self, n: i64) -> BigUint {
        if n < 0 {
            BigUint::zero()
        } else {
            self.counts[n as usize].clone()
        }
    }

    /// Multiplies the series by `1/(1 - t^d)`, giving the table for the
    /// parts with `d` appended.
    pub fn extend(&self, d: u64) -> Result<CountTable> {
        let parts = self.parts.with_part(d)?;
        let mut counts = self.counts.clone();
        convolve_part(&mut counts, d as usize);
        Ok(CountTable { parts, counts })
    }

    /// `n,count` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            writeln!(out, "{n},{c}").expect("writing to a String");
        }
        out
    }
}

fn convolve_part(counts: &mut [BigUint], d: usize) {
    for n in d..counts.len() {
        let (lo, hi) = counts.split_at_mut(n);
        hi[0] += &lo[n - d];
    }
}

pub fn count_dp(d: &PartList, max_n: usize) -> CountTable {
    let mut counts = vec![BigUint::zero(); max_n + 1];
    counts[0] = BigUint::one();
    for &part in d.parts() {
        convolve_part(&mut counts, part as usize);
    }
    CountTable { parts: d.clone(), counts }
}

pub fn count_enum(d: &PartList, n: u64) -> Result<BigUint> {
    count_enum_with_limit(d, n, DEFAULT_GUARD_LIMIT)
}

/// Counts solutions of `sum x_i d_i = n` by nested iteration over
/// `x_1..x_{m-1}`, solving for the last coordinate. Refuses when
/// `prod (n / d_i + 1)` exceeds `limit`.
pub fn count_enum_with_limit(d: &PartList, n: u64, limit: u128) -> Result<BigUint> {
    let parts = d.parts();
    let work = parts
        .iter()
        .try_fold(1u128, |acc, &p| acc.checked_mul((n / p + 1) as u128))
        .unwrap_or(u128::MAX);
    if work > limit {
        return Err(Error::Capacity { work, limit });
    }
    fn walk(parts: &[u64], remaining: u64) -> u64 {
        match parts {
            [last] => u64::from(remaining.is_multiple_of(*last)),
            [first, rest @ ..] => (0..=remaining / first).map(|x| walk(rest, remaining - x * first)).sum(),
            [] => unreachable!("part lists are non-empty"),
        }
    }
    Ok(BigUint::from(walk(parts, n)))
}

/// `q(s) = p(s - xi)`, zero when `s - xi` is not a nonnegative integer.
pub fn shifted_q(d: &PartList, s: &HalfLatticePoint) -> BigUint {
    let offset = s - &d.xi();
    if !offset.is_integer() || offset.twice().is_negative() {
        return BigUint::zero();
    }
    let n: BigInt = offset.twice().div_floor(&BigInt::from(2));
    let n = n.to_usize().expect("argument fits in memory");
    count_dp(d, n).get(n as i64)
}
