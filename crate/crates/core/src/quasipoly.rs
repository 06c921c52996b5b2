//! The shifted partition function `V(s, d)` as a quasi-polynomial
//! `sum_j R^m_j(s) s^(m-j)` with periodic coefficients.
//!
//! Coefficient functions are tabulated on the half-integer lattice: a
//! function of period `T` is a table of `2T` values indexed by `2s mod 2T`,
//! so every half-integer shift is exact index arithmetic.
//!
//! Two constructions are provided:
//! - [`extend_recursive`] adds one part at a time. Coefficients `j < m`
//!   come from averaging the previous level over the shifts
//!   `(p + 1/2) d_m`; the free term is the sum of a part determined by the
//!   previous level and a `d_m`-periodic closure term [`free_term`].
//! - [`build_explicit`] sums, for each pivot part `d_i`, shift-weighted
//!   Bernoulli products over the other parts into a `d_i`-periodic table.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::bernoulli::{big, bernoulli_poly};
use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, compositions, factorial, format_rational, int, lcm_of, multinomial, parse_rational,
    rat, HalfLatticePoint, PartList, Rational,
};
use crate::polypart::{pow, symmetric_split_weights, Polynomial};

/// A function on (1/2)Z with period `T`, stored as `2T` exact values
/// indexed by `2s mod 2T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicFn {
    period: u64,
    values: Vec<Rational>,
}

impl PeriodicFn {
    pub fn new(period: u64, values: Vec<Rational>) -> Result<Self> {
        if period == 0 {
            return Err(Error::input("period must be positive"));
        }
        if values.len() as u64 != 2 * period {
            return Err(Error::input(format!(
                "period {period} needs {} values, got {}",
                2 * period,
                values.len()
            )));
        }
        Ok(PeriodicFn { period, values })
    }

    pub fn zero(period: u64) -> Self {
        PeriodicFn { period, values: vec![Rational::zero(); 2 * period as usize] }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, s: &HalfLatticePoint) -> &Rational {
        &self.values[s.residue(self.period)]
    }

    /// Value at `s = twice / 2`.
    pub fn at_twice(&self, twice: i64) -> &Rational {
        &self.values[twice.rem_euclid(2 * self.period as i64) as usize]
    }

    /// Re-tabulates at a multiple of the current period.
    pub fn retabulate(&self, target: u64) -> Result<PeriodicFn> {
        if target == 0 || !target.is_multiple_of(self.period) {
            return Err(Error::input(format!(
                "target period {target} is not a multiple of {}",
                self.period
            )));
        }
        let values = (0..2 * target as i64).map(|k| self.at_twice(k).clone()).collect();
        Ok(PeriodicFn { period: target, values })
    }

    /// Average over the residues `2s ≡ parity (mod 2)` within one period.
    pub fn mean_on_grid(&self, parity: u64) -> Rational {
        let picked: Vec<&Rational> = self
            .values
            .iter()
            .enumerate()
            .filter(|(k, _)| *k as u64 % 2 == parity % 2)
            .map(|(_, v)| v)
            .collect();
        let n = picked.len() as i64;
        picked.into_iter().sum::<Rational>() / int(n)
    }

    fn add_assign(&mut self, other: &PeriodicFn) {
        debug_assert_eq!(self.period % other.period, 0);
        for (k, v) in self.values.iter_mut().enumerate() {
            *v += other.at_twice(k as i64);
        }
    }

    fn scale(&mut self, c: &Rational) {
        for v in &mut self.values {
            *v *= c;
        }
    }
}

/// Certificate for `V(s, d) = sum_{j=1}^m R_j(s) s^(m-j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPoly {
    parts: PartList,
    coeffs: Vec<PeriodicFn>,
    master_period: u64,
    xi: HalfLatticePoint,
}

impl QuasiPoly {
    pub fn new(parts: PartList, coeffs: Vec<PeriodicFn>, master_period: u64) -> Result<Self> {
        if coeffs.len() != parts.len() {
            return Err(Error::input(format!(
                "{} parts need {} coefficient functions, got {}",
                parts.len(),
                parts.len(),
                coeffs.len()
            )));
        }
        if master_period == 0 || !master_period.is_multiple_of(parts.lcm()) {
            return Err(Error::input(format!(
                "master period {master_period} is not a multiple of lcm {}",
                parts.lcm()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| !master_period.is_multiple_of(c.period)) {
            return Err(Error::input(format!(
                "coefficient period {} does not divide master period {master_period}",
                c.period
            )));
        }
        let xi = parts.xi();
        Ok(QuasiPoly { parts, coeffs, master_period, xi })
    }

    pub fn parts(&self) -> &PartList {
        &self.parts
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    /// `R_j(s)`, the coefficient of `s^(m-j)`, 1-based.
    pub fn coeff(&self, j: usize) -> &PeriodicFn {
        &self.coeffs[j - 1]
    }

    pub fn coeffs(&self) -> &[PeriodicFn] {
        &self.coeffs
    }

    pub fn master_period(&self) -> u64 {
        self.master_period
    }

    pub fn xi(&self) -> &HalfLatticePoint {
        &self.xi
    }

    pub fn eval_v(&self, s: &HalfLatticePoint) -> Rational {
        let x = s.to_rational();
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc * &x + c.at(s))
    }

    pub fn eval_v_twice(&self, twice: i64) -> Rational {
        let x = rat(twice, 2);
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc * &x + c.at_twice(twice))
    }

    /// `W(n) = V(n + xi)`. For `n >= 0` the value must be a nonnegative
    /// integer; anything else is reported as an integrality violation.
    pub fn eval_w(&self, n: i64) -> Result<Rational> {
        let s = &HalfLatticePoint::from_integer(n) + &self.xi;
        let value = self.eval_v(&s);
        if n >= 0 && (!value.is_integer() || value.is_negative()) {
            return Err(Error::Integrality { n, value });
        }
        Ok(value)
    }

    /// `W(n)` as an integer count, for `n >= 0`.
    pub fn count(&self, n: i64) -> Result<BigInt> {
        Ok(self.eval_w(n)?.to_integer())
    }

    /// Re-tabulates every coefficient at `target_period`.
    pub fn align(&self, target_period: u64) -> Result<QuasiPoly> {
        if target_period == 0 || !target_period.is_multiple_of(self.master_period) {
            return Err(Error::input(format!(
                "target period {target_period} is not a multiple of master period {}",
                self.master_period
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.retabulate(target_period))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuasiPoly {
            parts: self.parts.clone(),
            coeffs,
            master_period: target_period,
            xi: self.xi.clone(),
        })
    }

    /// The W-frame constituents: entry `a` is the polynomial in `n` that
    /// equals `W(n)` for `n ≡ a (mod master_period)`.
    pub fn w_constituents(&self) -> Vec<Polynomial> {
        let m = self.m();
        let xi = self.xi.to_rational();
        (0..self.master_period as i64)
            .map(|a| {
                let s = &HalfLatticePoint::from_integer(a) + &self.xi;
                // V restricted to this residue class, as a polynomial in s
                let in_s = Polynomial::from_descending(
                    self.coeffs.iter().map(|c| c.at(&s).clone()).collect(),
                );
                debug_assert_eq!(in_s.degree(), m - 1);
                in_s.shifted(&xi)
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let m = self.m();
        let coefficients: Vec<Value> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let mut values = Map::new();
                for (idx, v) in c.values.iter().enumerate() {
                    values.insert(idx.to_string(), Value::String(format_rational(v)));
                }
                json!({ "power": m - 1 - k, "period": c.period, "values": values })
            })
            .collect();
        json!({
            "parts": self.parts.parts(),
            "master_period": self.master_period,
            "xi": self.xi.to_string(),
            "coefficients": coefficients,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values serialize")
    }

    pub fn from_json(value: &Value) -> Result<QuasiPoly> {
        let bad = |msg: &str| Error::Parse(format!("certificate: {msg}"));
        let parts: PartList = serde_json::from_value(value.get("parts").cloned().ok_or_else(|| bad("missing parts"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let master_period = value
            .get("master_period")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing master_period"))?;
        let xi: HalfLatticePoint = value
            .get("xi")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing xi"))?
            .parse()?;
        if xi != parts.xi() {
            return Err(bad(&format!("xi {xi} does not match parts (expected {})", parts.xi())));
        }
        let items = value
            .get("coefficients")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing coefficients"))?;
        let m = parts.len();
        let mut coeffs = Vec::with_capacity(items.len());
        for (k, item) in items.iter().enumerate() {
            let power = item.get("power").and_then(Value::as_u64).ok_or_else(|| bad("missing power"))?;
            if k >= m || power as usize != m - 1 - k {
                return Err(bad(&format!("coefficient {k} has power {power}")));
            }
            let period = item.get("period").and_then(Value::as_u64).ok_or_else(|| bad("missing period"))?;
            let table = item
                .get("values")
                .and_then(Value::as_object)
                .ok_or_else(|| bad("missing values"))?;
            if period == 0 || table.len() as u64 != 2 * period {
                return Err(bad(&format!("period {period} with {} values", table.len())));
            }
            let values = (0..2 * period)
                .map(|idx| {
                    table
                        .get(&idx.to_string())
                        .and_then(Value::as_str)
                        .ok_or_else(|| bad(&format!("missing residue {idx}")))
                        .and_then(parse_rational)
                })
                .collect::<Result<Vec<_>>>()?;
            coeffs.push(PeriodicFn::new(period, values)?);
        }
        QuasiPoly::new(parts, coeffs, master_period)
    }
}

impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "V(s, {}) with period {}, xi = {}", self.parts, self.master_period, self.xi)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            let vals: Vec<String> = c.values.iter().map(format_rational).collect();
            writeln!(f, "  s^{}: period {} [{}]", self.m() - 1 - k, c.period, vals.join(", "))?;
        }
        Ok(())
    }
}

/// `Psi_d(x)`: 1 when `x / d` is an integer, 0 otherwise (always 0 for
/// half-odd `x`).
pub fn psi(d: u64, x: &HalfLatticePoint) -> Rational {
    let modulus = BigInt::from(2 * d);
    if x.twice().mod_floor(&modulus).is_zero() {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// `d`-periodic indicator `Psi_d(s - shift_twice / 2)`.
fn psi_table(d: u64, shift_twice: i64) -> PeriodicFn {
    let mut table = PeriodicFn::zero(d);
    table.values[shift_twice.rem_euclid(2 * d as i64) as usize] = Rational::one();
    table
}

/// Certificate for a single part: `V(s, {d}) = Psi_d(s - d/2)`.
pub fn base_case(d1: u64) -> Result<QuasiPoly> {
    let parts = PartList::new(vec![d1])?;
    QuasiPoly::new(parts, vec![psi_table(d1, d1 as i64)], d1)
}

/// `B_l(1 - (p + 1/2) d / tau)` for `p = 0..tau/d`.
fn shifted_bernoulli_row(l: usize, d: u64, tau: u64) -> Vec<Rational> {
    (0..tau / d)
        .map(|p| bernoulli_poly(l, &(Rational::one() - rat(((2 * p + 1) * d) as i64, 2 * tau as i64))))
        .collect()
}

/// Distribution of weighted shifts for one summation index: entry `k` of
/// the result is the total weight `tau^(r-1) B_r(1 - (p+1/2) d/tau)` over
/// the `p` whose doubled shift `(2p+1) d` is `≡ k (mod modulus)`.
fn shift_weights(r: usize, d: u64, tau: u64, modulus: u64) -> Vec<Rational> {
    let scale = pow(&int(tau as i64), r as i64 - 1);
    let mut out = vec![Rational::zero(); modulus as usize];
    for (p, b) in shifted_bernoulli_row(r, d, tau).into_iter().enumerate() {
        let k = (((2 * p as u64 + 1) * d) % modulus) as usize;
        out[k] += b * &scale;
    }
    out
}

/// Cyclic convolution of shift distributions.
fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[(i + j) % n] += x * y;
        }
    }
    out
}

/// `sum_p w_l(p) * prev(s - (p + 1/2) d_m)` tabulated at period `tau`,
/// where `weights[p]` already includes every factor except `prev`.
fn shifted_average(prev: &PeriodicFn, weights: &[Rational], dm: u64, tau: u64) -> PeriodicFn {
    let mut out = PeriodicFn::zero(tau);
    for (rho, slot) in out.values.iter_mut().enumerate() {
        for (p, w) in weights.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
            let v = prev.at_twice(rho as i64 - ((2 * p as u64 + 1) * dm) as i64);
            if !v.is_zero() {
                *slot += w * v;
            }
        }
    }
    out
}

/// The part of `R^m_m(s)` carried over from level `m - 1`:
/// `sum_{l=1}^{m-1} tau^(l-1)/l sum_p B_l(1 - (p+1/2) d_m/tau) R^{m-1}_{m-l}(s - (p+1/2) d_m)`.
pub fn carried_free_term(prev: &QuasiPoly, dm: u64) -> Result<PeriodicFn> {
    let d = prev.parts.with_part(dm)?;
    let m = d.len();
    let tau = d.lcm();
    let mut acc = PeriodicFn::zero(tau);
    for l in 1..m {
        let c = pow(&int(tau as i64), l as i64 - 1) / int(l as i64);
        let weights: Vec<Rational> = shifted_bernoulli_row(l, dm, tau).into_iter().map(|b| b * &c).collect();
        acc.add_assign(&shifted_average(prev.coeff(m - l), &weights, dm, tau));
    }
    Ok(acc)
}

/// The `d_m`-periodic closure `r^m_m(s)` of the recursion:
///
/// `1/(m-1)! sum_r C(m-1; r) prod_{i<m} tau_i^(r_i-1) sum_{p_i} B_{r_i}(1 - (p_i+1/2) d_i/tau_i)
///  Psi_{d_m}(s - d_m/2 - sum_{i<m} (p_i+1/2) d_i)`
///
/// with `tau_i = lcm(d_m, d_1, ..., d_i)`.
pub fn free_term(d: &PartList) -> PeriodicFn {
    let parts = d.parts();
    let m = parts.len();
    let dm = d.last();
    if m == 1 {
        return psi_table(dm, dm as i64);
    }
    let modulus = 2 * dm;
    let taus: Vec<u64> = (1..m)
        .map(|i| {
            let mut prefix = vec![dm];
            prefix.extend_from_slice(&parts[..i]);
            lcm_of(&prefix).expect("non-empty")
        })
        .collect();
    let mut cache: HashMap<(usize, usize), Vec<Rational>> = HashMap::new();
    let mut total = vec![Rational::zero(); modulus as usize];
    let inv_fact = Rational::one() / big(factorial(m as u64 - 1));
    for r in compositions(m - 1, m - 1) {
        let mut dist = vec![Rational::zero(); modulus as usize];
        dist[dm as usize] = big(multinomial(m as u64 - 1, &r).expect("sums to m-1")) * &inv_fact;
        for (i, &ri) in r.iter().enumerate() {
            let w = cache
                .entry((i, ri))
                .or_insert_with(|| shift_weights(ri, parts[i], taus[i], modulus));
            dist = convolve(&dist, w);
        }
        for (t, v) in total.iter_mut().zip(dist) {
            *t += v;
        }
    }
    PeriodicFn { period: dm, values: total }
}

/// Extends a certificate for `d_1..d_{m-1}` by the part `d_m`.
pub fn extend_recursive(prev: &QuasiPoly, dm: u64) -> Result<QuasiPoly> {
    let d = prev.parts.with_part(dm)?;
    let m = d.len();
    let tau = d.lcm();
    let mut coeffs = Vec::with_capacity(m);
    for j in 1..m {
        let mut acc = PeriodicFn::zero(tau);
        for l in 0..j {
            let c = pow(&int(tau as i64), l as i64 - 1) * big(binomial((m - 1 - j + l) as u64, l as i64));
            let weights: Vec<Rational> = shifted_bernoulli_row(l, dm, tau).into_iter().map(|b| b * &c).collect();
            acc.add_assign(&shifted_average(prev.coeff(j - l), &weights, dm, tau));
        }
        acc.scale(&rat(1, (m - j) as i64));
        coeffs.push(acc);
    }
    let mut last = carried_free_term(prev, dm)?;
    last.add_assign(&free_term(&d));
    coeffs.push(last);
    QuasiPoly::new(d, coeffs, tau)
}

/// Certificate by the recursion, adding parts in the given order.
pub fn build_recursive(d: &PartList) -> QuasiPoly {
    let parts = d.parts();
    let mut q = base_case(parts[0]).expect("parts are positive");
    for &dm in &parts[1..] {
        q = extend_recursive(&q, dm).expect("parts are positive");
    }
    q
}

/// `tau_{n,i}`: `d_i` on the diagonal, otherwise `lcm(d_1, ..., d_n, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauTable {
    rows: Vec<Vec<u64>>,
}

impl TauTable {
    /// `tau_{n,i}`, both indices 1-based.
    pub fn get(&self, n: usize, i: usize) -> u64 {
        self.rows[i - 1][n - 1]
    }

    /// Row `i - 1` holds `tau_{1,i} .. tau_{m,i}`.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

pub fn tau_table(d: &PartList) -> TauTable {
    let parts = d.parts();
    let m = parts.len();
    let rows = (0..m)
        .map(|i| {
            (0..m)
                .map(|n| {
                    if n == i {
                        parts[i]
                    } else {
                        let mut set = parts[..=n].to_vec();
                        set.push(parts[i]);
                        lcm_of(&set).expect("non-empty")
                    }
                })
                .collect()
        })
        .collect();
    TauTable { rows }
}

/// Certificate by the explicit pivot-symmetrized formula.
///
/// The coefficient of `s^(m-1-l)` is `C(m-1, l)/(m-1)!` times a sum over
/// pivots `i`: each pivot contributes a `d_i`-periodic table holding, for
/// every composition `r` of `l` over the other positions, the split weight
/// `C(l; r)/z(r)` times the product over `n != i` of shift-weighted
/// Bernoulli sums with periods `tau_{n,i}`, all routed through
/// `Psi_{d_i}(s - d_i/2 - sum_n (p_n + 1/2) d_n)`.
pub fn build_explicit(d: &PartList) -> QuasiPoly {
    let parts = d.parts();
    let m = parts.len();
    let tau_m = d.lcm();
    let taus = tau_table(d);
    let inv_fact = Rational::one() / big(factorial(m as u64 - 1));
    let mut coeffs = Vec::with_capacity(m);
    for l in 0..m {
        let mut acc = PeriodicFn::zero(tau_m);
        for i in 0..m {
            let di = parts[i];
            let modulus = 2 * di;
            let others: Vec<usize> = (0..m).filter(|&n| n != i).collect();
            let mut cache: HashMap<(usize, usize), Vec<Rational>> = HashMap::new();
            let mut pivot = vec![Rational::zero(); modulus as usize];
            for r in compositions(l, m - 1) {
                let mut dist = vec![Rational::zero(); modulus as usize];
                dist[di as usize] = symmetric_split_weights(l, m, i + 1, &r).expect("l < m");
                for (&n, &rn) in others.iter().zip(&r) {
                    let w = cache
                        .entry((n, rn))
                        .or_insert_with(|| shift_weights(rn, parts[n], taus.get(n + 1, i + 1), modulus));
                    dist = convolve(&dist, w);
                }
                for (t, v) in pivot.iter_mut().zip(dist) {
                    *t += v;
                }
            }
            acc.add_assign(&PeriodicFn { period: di, values: pivot });
        }
        acc.scale(&(big(binomial(m as u64 - 1, l as i64)) * &inv_fact));
        coeffs.push(acc);
    }
    QuasiPoly::new(d.clone(), coeffs, tau_m).expect("periods divide lcm")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(v: &[u64]) -> PartList {
        PartList::new(v.to_vec()).unwrap()
    }

    fn half(twice: i64) -> HalfLatticePoint {
        HalfLatticePoint::from_twice(twice)
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(3, &HalfLatticePoint::from_integer(6)), int(1));
        assert_eq!(psi(3, &HalfLatticePoint::from_integer(4)), int(0));
        assert_eq!(psi(2, &half(7)), int(0));
        assert_eq!(psi(4, &HalfLatticePoint::from_integer(-8)), int(1));
    }

    #[test]
    fn base_case_examples() {
        let q = base_case(1).unwrap();
        assert_eq!(q.master_period(), 1);
        assert_eq!(q.eval_v(&half(1)), int(1));
        assert_eq!(q.eval_v(&half(5)), int(1));
        assert_eq!(q.eval_v(&half(4)), int(0));
        for n in 0..10 {
            assert_eq!(q.eval_w(n).unwrap(), int(1));
        }
        let q = base_case(2).unwrap();
        for n in 0..10 {
            assert_eq!(q.eval_w(n).unwrap(), int(if n % 2 == 0 { 1 } else { 0 }));
        }
        let q = base_case(3).unwrap();
        assert_eq!(q.eval_v(&half(3)), int(1));
        assert_eq!(q.eval_v(&half(5)), int(0));
    }

    #[test]
    fn extend_examples() {
        let one = base_case(1).unwrap();
        let q = extend_recursive(&one, 1).unwrap();
        for n in 0..20 {
            assert_eq!(q.eval_w(n).unwrap(), int(n + 1));
        }
        let q = extend_recursive(&one, 2).unwrap();
        for n in 0..20 {
            assert_eq!(q.eval_w(n).unwrap(), int(n / 2 + 1));
        }
        // W(n) = n/2 + c(n) with c = 1 on even n, 1/2 on odd n
        let w = q.w_constituents();
        assert_eq!(w.len(), 2);
        assert_eq!(w[0].coefficients(), &[rat(1, 2), int(1)]);
        assert_eq!(w[1].coefficients(), &[rat(1, 2), rat(1, 2)]);
        let q = extend_recursive(&base_case(2).unwrap(), 2).unwrap();
        for n in 0..20 {
            let expected = if n % 2 == 0 { n / 2 + 1 } else { 0 };
            assert_eq!(q.eval_w(n).unwrap(), int(expected));
        }
    }

    #[test]
    fn tau_table_examples() {
        assert_eq!(tau_table(&parts(&[2, 3])).rows(), &[vec![2, 6], vec![6, 3]]);
        let t = tau_table(&parts(&[1, 2, 3]));
        assert_eq!(t.rows()[1], vec![2, 2, 6]);
        assert_eq!(t.get(3, 2), 6);
        assert_eq!(tau_table(&parts(&[5])).rows(), &[vec![5]]);
        let t = tau_table(&parts(&[4, 6, 10, 3]));
        for i in 1..=4 {
            assert_eq!(t.get(i, i), parts(&[4, 6, 10, 3]).parts()[i - 1]);
            if i != 4 {
                assert_eq!(t.get(4, i), 60);
            }
        }
    }

    #[test]
    fn explicit_examples() {
        assert_eq!(build_explicit(&parts(&[1])), base_case(1).unwrap());
        let d = parts(&[1, 2]);
        let e = build_explicit(&d);
        let r = build_recursive(&d);
        for twice in 0..2 * e.master_period() as i64 {
            assert_eq!(e.eval_v(&half(twice)), r.eval_v(&half(twice)));
        }
        assert_eq!(e, r);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(base_case(1).unwrap().eval_v(&half(5)), int(1));
        let q = build_explicit(&parts(&[1, 1]));
        assert_eq!(q.eval_v(&half(0)), int(0));
        let q = build_explicit(&parts(&[1, 2]));
        assert_eq!(q.eval_w(7).unwrap(), int(4));
        for n in 0..=10 {
            assert_eq!(q.eval_v(&half(2 * n + 3)), int(n / 2 + 1));
        }
        assert_eq!(build_explicit(&parts(&[1, 2, 3])).eval_w(5).unwrap(), int(5));
        assert_eq!(build_explicit(&parts(&[2, 4])).eval_w(5).unwrap(), int(0));
    }

    #[test]
    fn eval_w_flags_non_integers() {
        let broken = QuasiPoly::new(
            parts(&[2]),
            vec![PeriodicFn::new(2, vec![rat(1, 2); 4]).unwrap()],
            2,
        )
        .unwrap();
        assert!(matches!(broken.eval_w(0), Err(Error::Integrality { n: 0, .. })));
        assert_eq!(broken.eval_w(-1).unwrap(), rat(1, 2));
    }

    #[test]
    fn align_examples() {
        let q = build_explicit(&parts(&[1, 2]));
        assert_eq!(q.align(2).unwrap(), q);
        let wide = q.align(4).unwrap();
        assert_eq!(wide.coeff(1).values().len(), 8);
        for twice in -10..10 {
            assert_eq!(wide.eval_v(&half(twice)), q.eval_v(&half(twice)));
        }
        let q = build_explicit(&parts(&[2, 3]));
        let wide = q.align(12).unwrap();
        for twice in -30..30 {
            assert_eq!(wide.eval_v(&half(twice)), q.eval_v(&half(twice)));
        }
        assert!(q.align(9).is_err());
        assert!(q.align(0).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let q = build_recursive(&parts(&[2, 3]));
        let json = q.to_json();
        assert_eq!(QuasiPoly::from_json(&json).unwrap(), q);
        let text = q.to_json_string();
        assert!(text.find("\"parts\"").unwrap() < text.find("\"master_period\"").unwrap());
        assert!(text.find("\"xi\"").unwrap() < text.find("\"coefficients\"").unwrap());
        let mut bad = json.clone();
        bad["xi"] = json!("3");
        assert!(QuasiPoly::from_json(&bad).is_err());
        let mut bad = json.clone();
        bad["coefficients"][0]["values"].as_object_mut().unwrap().remove("3");
        assert!(QuasiPoly::from_json(&bad).is_err());
        let mut bad = json;
        bad["master_period"] = json!(4);
        assert!(QuasiPoly::from_json(&bad).is_err());
    }

    #[test]
    fn periodic_fn_validation() {
        assert!(PeriodicFn::new(0, vec![]).is_err());
        assert!(PeriodicFn::new(2, vec![int(1); 3]).is_err());
        let f = PeriodicFn::new(1, vec![int(3), int(5)]).unwrap();
        assert_eq!(f.mean_on_grid(0), int(3));
        assert_eq!(f.mean_on_grid(1), int(5));
        assert!(f.retabulate(0).is_err());
        assert_eq!(f.retabulate(3).unwrap().at_twice(5), &int(5));
    }
}
