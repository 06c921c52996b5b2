//! The polynomial part `V_1(s, d)` of the shifted partition function and its
//! constant coefficients `R^m_j`, computed three ways: the explicit umbral
//! expansion, the level-by-level recursion closed by `r^m_m`, and the
//! pivot-split form that the explicit quasi-polynomial is built from.

use std::fmt;

use num_traits::{One, Zero};

use crate::bernoulli::{big, bernoulli_poly};
use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, compositions, factorial, format_rational, int, multinomial, parse_rational, rat,
    PartList, Rational,
};

/// Dense polynomial in `s`, coefficients stored highest power first.
///
/// For a polynomial part of `m` parts, entry `j - 1` holds `R^m_j`, the
/// coefficient of `s^(m-j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn from_descending(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        Polynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `R_j`, 1-based from the leading coefficient.
    pub fn coeff(&self, j: usize) -> &Rational {
        &self.coeffs[j - 1]
    }

    /// Nominal degree (length - 1); leading entries may be zero.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc * s + c)
    }

    /// `p(s + shift)` re-expanded.
    pub fn shifted(&self, shift: &Rational) -> Polynomial {
        let deg = self.degree();
        let mut out = vec![Rational::zero(); deg + 1];
        // coeffs[k] multiplies s^(deg-k); (s+c)^e = sum_t C(e,t) c^(e-t) s^t
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = deg - k;
            let mut c_pow = Rational::one();
            for t in (0..=e).rev() {
                out[deg - t] += c * &c_pow * big(binomial(e as u64, t as i64));
                c_pow *= shift;
            }
        }
        Polynomial { coeffs: out }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(format_rational(c)))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Polynomial> {
        let items = value
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial must be a JSON array".into()))?;
        if items.is_empty() {
            return Err(Error::Parse("polynomial array is empty".into()));
        }
        let coeffs = items
            .iter()
            .map(|v| {
                v.as_str()
                    .ok_or_else(|| Error::Parse("coefficients must be strings".into()))
                    .and_then(parse_rational)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { coeffs })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.degree();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match deg - k {
                0 => format!("{c}"),
                1 => format!("({c})*s"),
                e => format!("({c})*s^{e}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `1 / ((m-1)! * prod d_i)`, the leading coefficient `R^m_1`.
pub fn leading_coefficient(d: &PartList) -> Rational {
    Rational::one() / (big(factorial(d.len() as u64 - 1)) * Rational::from_integer(d.product()))
}

/// Expands the umbral power `(sum_i w_i B(1/2))^l` over the given weights:
/// `sum_r C(l; r) prod_i w_i^{r_i} B_{r_i}(1/2)`.
pub(crate) fn umbral_power(weights: &[u64], l: usize) -> Rational {
    let half_values: Vec<Rational> = (0..=l).map(|k| bernoulli_poly(k, &rat(1, 2))).collect();
    compositions(l, weights.len())
        .filter(|r| r.iter().all(|&ri| !half_values[ri].is_zero()))
        .map(|r| {
            let mut term = big(multinomial(l as u64, &r).expect("composition sums to l"));
            for (&ri, &w) in r.iter().zip(weights) {
                term *= pow(&int(w as i64), ri as i64) * &half_values[ri];
            }
            term
        })
        .sum()
}

/// `R^m_j = C(m-1, j-1) / ((m-1)! pi) * (sum d_i B(1/2))^(j-1)`.
pub fn r_coeff_explicit(j: usize, d: &PartList) -> Result<Rational> {
    let m = d.len();
    if j == 0 || j > m {
        return Err(Error::input(format!("coefficient index {j} out of range 1..={m}")));
    }
    Ok(big(binomial(m as u64 - 1, j as i64 - 1)) * leading_coefficient(d) * umbral_power(d.parts(), j - 1))
}

pub fn v1_explicit(d: &PartList) -> Polynomial {
    let coeffs = (1..=d.len())
        .map(|j| r_coeff_explicit(j, d).expect("index in range"))
        .collect();
    Polynomial { coeffs }
}

/// `W_1(s) = V_1(s + xi)`.
pub fn w1_from_v1(poly: &Polynomial, d: &PartList) -> Polynomial {
    poly.shifted(&d.xi().to_rational())
}

/// The free term `r^m_m = (sum_{i<m} d_i B(1/2))^(m-1) / ((m-1)! pi)`.
pub fn r_mm_constant(d: &PartList) -> Rational {
    let m = d.len();
    leading_coefficient(d) * umbral_power(&d.parts()[..m - 1], m - 1)
}

/// Builds `R^m_j` level by level. For `j < m` each level follows from the
/// previous one; the free term `R^m_m` is closed with `r^m_m`.
pub fn r_coeffs_recursive(d: &PartList) -> Polynomial {
    let parts = d.parts();
    let half: Vec<Rational> = (0..parts.len()).map(|l| bernoulli_poly(l, &rat(1, 2))).collect();
    let mut level = vec![rat(1, parts[0] as i64)];
    for k in 2..=parts.len() {
        let dk = int(parts[k - 1] as i64);
        let mut next = Vec::with_capacity(k);
        for j in 1..k {
            let sum: Rational = (0..j)
                .map(|l| {
                    pow(&dk, l as i64 - 1)
                        * big(binomial((k - 1 - j + l) as u64, l as i64))
                        * &half[l]
                        * &level[j - l - 1]
                })
                .sum();
            next.push(sum / int((k - j) as i64));
        }
        let prefix = PartList::new(parts[..k].to_vec()).expect("non-empty prefix");
        let closure: Rational = (1..k)
            .map(|l| pow(&dk, l as i64 - 1) / int(l as i64) * &half[l] * &level[k - l - 1])
            .sum();
        next.push(r_mm_constant(&prefix) + closure);
        level = next;
    }
    Polynomial { coeffs: level }
}

/// Weight `C(l; r) / z(r)` splitting the symmetric power `(sum d)^l` across
/// pivots. `r` lists the exponents of every position except the 1-based
/// pivot `i`, whose exponent is zero; `z` counts the zero exponents among
/// all `m` positions.
pub fn symmetric_split_weights(l: usize, m: usize, i: usize, r: &[usize]) -> Result<Rational> {
    if l >= m {
        return Err(Error::input(format!("split weight needs l < m, got l = {l}, m = {m}")));
    }
    if i == 0 || i > m {
        return Err(Error::input(format!("pivot {i} out of range 1..={m}")));
    }
    if r.len() + 1 != m {
        return Err(Error::input(format!("expected {} exponents, got {}", m - 1, r.len())));
    }
    let zeros = 1 + r.iter().filter(|&&x| x == 0).count();
    Ok(big(multinomial(l as u64, r)?) / int(zeros as i64))
}

/// The pivot-split form of `V_1`: for each pivot `i`, `1/d_i` times the
/// split umbral power over the remaining parts with exponents shifted
/// down by one.
pub fn v1_split(d: &PartList) -> Polynomial {
    let parts = d.parts();
    let m = parts.len();
    let half: Vec<Rational> = (0..m).map(|l| bernoulli_poly(l, &rat(1, 2))).collect();
    let inv_fact = Rational::one() / big(factorial(m as u64 - 1));
    let coeffs = (0..m)
        .map(|l| {
            let mut acc = Rational::zero();
            for i in 0..m {
                let others: Vec<u64> = (0..m).filter(|&n| n != i).map(|n| parts[n]).collect();
                for r in compositions(l, m - 1) {
                    let mut term = symmetric_split_weights(l, m, i + 1, &r).expect("l < m")
                        / int(parts[i] as i64);
                    for (&rn, &dn) in r.iter().zip(&others) {
                        term *= pow(&int(dn as i64), rn as i64 - 1) * &half[rn];
                    }
                    acc += term;
                }
            }
            acc * big(binomial(m as u64 - 1, l as i64)) * &inv_fact
        })
        .collect();
    Polynomial { coeffs }
}

/// `V_1(s) = r^m_m + sum_{l=1}^{m-1} d_m^(l-1)/l B_l(1/2 + s/d_m) R^{m-1}_{m-l}`,
/// with the level-(m-1) coefficients taken from the explicit expansion.
pub fn v1_compact_eval(d: &PartList, s: &Rational) -> Rational {
    let m = d.len();
    if m == 1 {
        return rat(1, d.last() as i64);
    }
    let prev = v1_explicit(&d.prefix(m - 1).expect("m >= 2"));
    let dm = int(d.last() as i64);
    let x = rat(1, 2) + s / &dm;
    let tail: Rational = (1..m)
        .map(|l| pow(&dm, l as i64 - 1) / int(l as i64) * bernoulli_poly(l, &x) * prev.coeff(m - l))
        .sum();
    r_mm_constant(d) + tail
}

/// Integer power allowing negative exponents.
pub(crate) fn pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}
