//! Bernoulli numbers and polynomials, and higher-order Bernoulli polynomials
//! `B_n^(m)(s | d)` built from the central coefficients `D_n^(m)(d)`.
//!
//! Convention: `B_1 = -1/2`, i.e. the generating function `t / (e^t - 1)`.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::exactnum::{binomial, compositions, int, multinomial, rat, PartList, Rational};

/// Memo table of Bernoulli numbers. The table only grows; growth happens
/// under the write lock so concurrent readers never see a partial fill.
#[derive(Debug, Default)]
pub struct BernoulliCache {
    numbers: RwLock<Vec<Rational>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        let cache = BernoulliCache::new();
        cache.ensure(n);
        cache
    }

    /// Highest index currently tabulated, if any.
    pub fn capacity(&self) -> Option<usize> {
        self.numbers.read().unwrap().len().checked_sub(1)
    }

    pub fn get(&self, n: usize) -> Rational {
        if let Some(b) = self.numbers.read().unwrap().get(n) {
            return b.clone();
        }
        self.ensure(n);
        self.numbers.read().unwrap()[n].clone()
    }

    fn ensure(&self, n: usize) {
        let mut numbers = self.numbers.write().unwrap();
        // sum_{k<=j} C(j+1, k) B_k = 0
        while numbers.len() <= n {
            let j = numbers.len();
            let b = if j == 0 {
                Rational::one()
            } else if j > 1 && j % 2 == 1 {
                Rational::zero()
            } else {
                let acc: Rational = numbers
                    .iter()
                    .enumerate()
                    .map(|(k, bk)| bk * Rational::from_integer(binomial(j as u64 + 1, k as i64).into()))
                    .sum();
                -acc / int(j as i64 + 1)
            };
            numbers.push(b);
        }
    }
}

static CACHE: LazyLock<BernoulliCache> = LazyLock::new(|| BernoulliCache::with_capacity(32));

pub fn bernoulli_number(n: usize) -> Rational {
    CACHE.get(n)
}

/// `B_n(x) = sum_k C(n,k) B_k x^(n-k)`.
pub fn bernoulli_poly(n: usize, x: &Rational) -> Rational {
    // Horner over descending powers of x.
    let mut acc = Rational::zero();
    for k in 0..=n {
        acc = acc * x + bernoulli_number(k) * big(binomial(n as u64, k as i64));
    }
    acc
}

/// `D_l = 2^l B_l(1/2)`.
pub fn d_scalar(l: usize) -> Rational {
    bernoulli_poly(l, &rat(1, 2)) * pow2(l)
}

/// Table of `D_n^(m)` for `n = 0..=max_n`, for an ordered list of signed
/// weights. Negative weights are allowed so that `B^(m)(s | -d)` can be
/// formed directly.
#[derive(Clone, Debug, PartialEq)]
pub struct DCoefficients {
    weights: Vec<i64>,
    table: Vec<Rational>,
}

impl DCoefficients {
    /// Builds the table by adding one weight at a time:
    /// `D_n^(k) = sum_l C(n,l) w_k^l D_l D_{n-l}^(k-1)`, with `D^(0) = [n == 0]`.
    pub fn recursive(weights: &[i64], max_n: usize) -> Self {
        let mut level: Vec<Rational> = (0..=max_n)
            .map(|n| if n == 0 { Rational::one() } else { Rational::zero() })
            .collect();
        let scalars: Vec<Rational> = (0..=max_n).map(d_scalar).collect();
        for &w in weights {
            let w = int(w);
            let mut powers = vec![Rational::one()];
            for l in 1..=max_n {
                powers.push(&powers[l - 1] * &w);
            }
            level = (0..=max_n)
                .map(|n| {
                    (0..=n)
                        .filter(|l| !scalars[*l].is_zero())
                        .map(|l| {
                            big(binomial(n as u64, l as i64)) * &powers[l] * &scalars[l] * &level[n - l]
                        })
                        .sum()
                })
                .collect();
        }
        DCoefficients { weights: weights.to_vec(), table: level }
    }

    pub fn order(&self) -> usize {
        self.weights.len()
    }

    pub fn max_n(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.table[n]
    }
}

pub fn d_higher_recursive(n: usize, d: &PartList) -> Rational {
    d_higher_recursive_weights(n, &signed(d))
}

pub fn d_higher_recursive_weights(n: usize, weights: &[i64]) -> Rational {
    DCoefficients::recursive(weights, n).get(n).clone()
}

/// Multinomial form: `D_n^(m) = sum_r C(n; r) prod_i d_i^{r_i} D_{r_i}`.
pub fn d_higher_symmetric(n: usize, d: &PartList) -> Rational {
    d_higher_symmetric_weights(n, &signed(d))
}

pub fn d_higher_symmetric_weights(n: usize, weights: &[i64]) -> Rational {
    let scalars: Vec<Rational> = (0..=n).map(d_scalar).collect();
    compositions(n, weights.len())
        .filter(|r| r.iter().all(|&ri| !scalars[ri].is_zero()))
        .map(|r| {
            let coeff = big(multinomial(n as u64, &r).expect("composition sums to n"));
            r.iter().zip(weights).fold(coeff, |acc, (&ri, &w)| {
                acc * Pow::pow(int(w), ri as u32) * &scalars[ri]
            })
        })
        .sum()
}

/// `B_n^(m)(s | d) = sum_l C(n,l) (D_l^(m) / 2^l) (s - xi)^(n-l)`,
/// `xi = (sum d_i) / 2`.
pub fn bernoulli_higher(n: usize, s: &Rational, d: &PartList) -> Rational {
    bernoulli_higher_weights(n, s, &signed(d))
}

pub fn bernoulli_higher_weights(n: usize, s: &Rational, weights: &[i64]) -> Rational {
    let coeffs = DCoefficients::recursive(weights, n);
    let xi = rat(weights.iter().sum(), 2);
    let x = s - xi;
    let mut acc = Rational::zero();
    let mut x_pow = Rational::one();
    // l runs downward so the power of x increases.
    for l in (0..=n).rev() {
        let term = coeffs.get(l) / pow2(l);
        acc += big(binomial(n as u64, l as i64)) * term * &x_pow;
        x_pow *= &x;
    }
    acc
}

fn signed(d: &PartList) -> Vec<i64> {
    d.parts().iter().map(|&x| x as i64).collect()
}

pub(crate) fn big(u: num_bigint::BigUint) -> Rational {
    Rational::from_integer(BigInt::from(u))
}

fn pow2(l: usize) -> Rational {
    Rational::from_integer(BigInt::one() << l)
}
