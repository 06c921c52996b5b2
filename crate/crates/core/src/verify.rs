//! Property checks over certificates, with minimal counterexamples.
//!
//! Every check scans its arguments in increasing `|argument|`, so the first
//! failure recorded is the smallest one.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, HalfLatticePoint, PartList, Rational};
use crate::oracle::{count_dp, count_enum_with_limit, DEFAULT_GUARD_LIMIT};
use crate::polypart::{r_coeffs_recursive, v1_explicit};
use crate::quasipoly::{build_explicit, build_recursive, QuasiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Explicit,
    Recursive,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Explicit => "explicit",
            Method::Recursive => "recursive",
            Method::Oracle => "oracle",
        }
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explicit" => Ok(Method::Explicit),
            "recursive" => Ok(Method::Recursive),
            "oracle" => Ok(Method::Oracle),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Builds the certificate for `d` with a closed-form method.
pub fn certificate(d: &PartList, method: Method) -> Result<QuasiPoly> {
    match method {
        Method::Explicit => Ok(build_explicit(d)),
        Method::Recursive => Ok(build_recursive(d)),
        Method::Oracle => Err(Error::input("the oracle method does not produce a certificate")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Oracle,
    Recurrence,
    Parity,
    Zeros,
    PathAgreement,
    MeanValue,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Oracle,
        Property::Recurrence,
        Property::Parity,
        Property::Zeros,
        Property::PathAgreement,
        Property::MeanValue,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Oracle => "oracle",
            Property::Recurrence => "recurrence",
            Property::Parity => "parity",
            Property::Zeros => "zeros",
            Property::PathAgreement => "path-agreement",
            Property::MeanValue => "mean-value",
        }
    }

    /// Parses a comma-separated list; `all` selects every property.
    pub fn parse_list(s: &str) -> Result<Vec<Property>> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim) {
            if item == "all" {
                out.extend(Property::ALL);
            } else {
                out.push(item.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown property {s:?}")))
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub method: Method,
    pub argument: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub property: Property,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub parts: PartList,
    pub outcomes: Vec<PropertyOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, property: Property) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| o.property == property)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parts {}", self.parts)?;
        for o in &self.outcomes {
            let status = if o.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  {status} {:<15} ({} checks)", o.property.name(), o.checked)?;
            if let Some(c) = &o.counterexample {
                writeln!(
                    f,
                    "       counterexample [{}] at {}: expected {}, got {}",
                    c.method, c.argument, c.expected, c.actual
                )?;
            }
            if let Some(note) = &o.note {
                writeln!(f, "       note: {note}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub properties: Vec<Property>,
    /// Methods whose certificates are checked; `Oracle` is ignored here.
    pub methods: Vec<Method>,
    /// Upper end of the oracle range; defaults to `3 * lcm + 10`.
    pub n_max: Option<u64>,
    /// Work limit for the brute-force cross-check of the DP counts.
    pub enum_guard: u128,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            properties: Property::ALL.to_vec(),
            methods: vec![Method::Explicit, Method::Recursive],
            n_max: None,
            enum_guard: DEFAULT_GUARD_LIMIT,
        }
    }
}

/// Half-lattice points `2s ∈ [-bound, bound]` ordered by `|s|`, negative first on ties.
fn by_magnitude(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|k| [-k, k]))
}

fn show_twice(twice: i64) -> String {
    HalfLatticePoint::from_twice(twice).to_string()
}

struct Checker<'a> {
    d: &'a PartList,
    certs: Vec<(Method, QuasiPoly)>,
    prev: Vec<Option<QuasiPoly>>,
}

impl<'a> Checker<'a> {
    fn new(d: &'a PartList, methods: &[Method]) -> Self {
        let mut certs = Vec::new();
        let mut prev = Vec::new();
        for &method in methods {
            if method == Method::Oracle {
                continue;
            }
            certs.push((method, certificate(d, method).expect("closed-form method")));
            prev.push((d.len() > 1).then(|| {
                certificate(&d.prefix(d.len() - 1).expect("m > 1"), method).expect("closed-form method")
            }));
        }
        Checker { d, certs, prev }
    }

    fn tau(&self) -> i64 {
        self.d.lcm() as i64
    }

    fn oracle(&self, n_max: Option<u64>, enum_guard: u128) -> PropertyOutcome {
        let n_max = n_max.unwrap_or(3 * self.d.lcm() + 10);
        let table = count_dp(self.d, n_max as usize);
        let mut checked = 0;
        let mut enumerated = 0;
        for n in 0..=n_max {
            // work grows with n, so the first refusal ends the cross-check
            let Ok(brute) = count_enum_with_limit(self.d, n, enum_guard) else { break };
            checked += 1;
            enumerated += 1;
            let dp = table.get(n as i64);
            if brute != dp {
                return fail(Property::Oracle, checked, Method::Oracle, n.to_string(), brute.to_string(), dp.to_string());
            }
        }
        for (method, q) in &self.certs {
            for n in 0..=n_max as i64 {
                checked += 1;
                let expected = table.get(n);
                let actual = match q.eval_w(n) {
                    Ok(v) => v,
                    Err(Error::Integrality { value, .. }) => value,
                    Err(e) => unreachable!("eval_w only fails on integrality: {e}"),
                };
                if actual != Rational::from_integer(BigInt::from(expected.clone())) {
                    return fail(Property::Oracle, checked, *method, n.to_string(), expected.to_string(), format_rational(&actual));
                }
            }
        }
        let note = format!("dp cross-checked by enumeration for n <= {}", enumerated as i64 - 1);
        pass(Property::Oracle, checked, Some(note))
    }

    /// `V(s) - V(s - d_m) = V_{m-1}(s - d_m/2)` over one master period,
    /// and the `tau`-step form `V(s + tau) = V(s) + sum_p V_{m-1}(s + tau - (p + 1/2) d_m)`.
    fn recurrence(&self) -> PropertyOutcome {
        let dm = self.d.last() as i64;
        let tau = self.tau();
        let mut checked = 0;
        for ((method, q), prev) in self.certs.iter().zip(&self.prev) {
            let lower = |twice: i64| prev.as_ref().map_or_else(Rational::zero, |p| p.eval_v_twice(twice));
            for twice in by_magnitude(tau).filter(|t| *t < tau) {
                checked += 1;
                let lhs = q.eval_v_twice(twice) - q.eval_v_twice(twice - 2 * dm);
                let rhs = lower(twice - dm);
                if lhs != rhs {
                    return fail(
                        Property::Recurrence,
                        checked,
                        *method,
                        format!("s = {}", show_twice(twice)),
                        format_rational(&rhs),
                        format_rational(&lhs),
                    );
                }
                checked += 1;
                let lhs = q.eval_v_twice(twice + 2 * tau);
                let rhs: Rational = q.eval_v_twice(twice)
                    + (0..tau / dm)
                        .map(|p| lower(twice + 2 * tau - (2 * p + 1) * dm))
                        .sum::<Rational>();
                if lhs != rhs {
                    return fail(
                        Property::Recurrence,
                        checked,
                        *method,
                        format!("s = {} (tau step)", show_twice(twice)),
                        format_rational(&rhs),
                        format_rational(&lhs),
                    );
                }
            }
        }
        pass(Property::Recurrence, checked, None)
    }

    /// `V(-s) = (-1)^(m-1) V(s)` on the grid `s ∈ xi + Z`, `|s| <= 2 lcm`.
    /// Off-grid points are counted and reported only.
    fn parity(&self) -> PropertyOutcome {
        let bound = 4 * self.tau();
        let grid = self.d.sum() as i64 % 2;
        let odd = self.d.len().is_multiple_of(2);
        let mut checked = 0;
        let mut off_grid = 0usize;
        let mut off_grid_failures = 0usize;
        for (method, q) in &self.certs {
            for twice in by_magnitude(bound) {
                let v = q.eval_v_twice(twice);
                let expected = if odd { -v } else { v };
                let actual = q.eval_v_twice(-twice);
                if twice.rem_euclid(2) != grid {
                    off_grid += 1;
                    off_grid_failures += usize::from(actual != expected);
                    continue;
                }
                checked += 1;
                if actual != expected {
                    return fail(
                        Property::Parity,
                        checked,
                        *method,
                        format!("s = {}", show_twice(twice)),
                        format_rational(&expected),
                        format_rational(&actual),
                    );
                }
            }
        }
        let note = format!("off-grid: {off_grid_failures} of {off_grid} points break parity");
        pass(Property::Parity, checked, Some(note))
    }

    /// Zeros at `s = 0, 1, ..., m/2 - 1` (m even) or `1/2, ..., m/2 - 1` (m odd).
    fn zeros(&self) -> PropertyOutcome {
        let m = self.d.len() as i64;
        let mut checked = 0;
        for (method, q) in &self.certs {
            for twice in (0..=m - 2).filter(|t| (t - m) % 2 == 0) {
                checked += 1;
                let v = q.eval_v_twice(twice);
                if !v.is_zero() {
                    return fail(
                        Property::Zeros,
                        checked,
                        *method,
                        format!("s = {}", show_twice(twice)),
                        "0".into(),
                        format_rational(&v),
                    );
                }
            }
        }
        pass(Property::Zeros, checked, None)
    }

    /// Coefficient tables of every checked certificate agree entry by entry
    /// after alignment to the common period.
    fn path_agreement(&self) -> PropertyOutcome {
        let explicit;
        let reference = match self.certs.iter().find(|(m, _)| *m == Method::Explicit) {
            Some((_, q)) => q,
            None => {
                explicit = build_explicit(self.d);
                &explicit
            }
        };
        let recursive;
        let mut others: Vec<(Method, &QuasiPoly)> =
            self.certs.iter().filter(|(m, _)| *m != Method::Explicit).map(|(m, q)| (*m, q)).collect();
        if others.is_empty() {
            recursive = build_recursive(self.d);
            others.push((Method::Recursive, &recursive));
        }
        let mut checked = 0;
        for (method, q) in others {
            let period = num_integer::lcm(reference.master_period(), q.master_period());
            let a = reference.align(period).expect("multiple of both periods");
            let b = q.align(period).expect("multiple of both periods");
            let m = self.d.len();
            // residues in order of |s| within one period
            for twice in by_magnitude(period as i64).filter(|t| *t < period as i64) {
                for j in 1..=m {
                    checked += 1;
                    let (x, y) = (a.coeff(j).at_twice(twice), b.coeff(j).at_twice(twice));
                    if x != y {
                        return fail(
                            Property::PathAgreement,
                            checked,
                            method,
                            format!("coefficient of s^{} at s = {}", m - j, show_twice(twice)),
                            format_rational(x),
                            format_rational(y),
                        );
                    }
                }
            }
        }
        pass(Property::PathAgreement, checked, None)
    }

    /// The constant coefficients agree between the explicit expansion and
    /// the recursion, and each periodic coefficient averages to them over
    /// the grid.
    fn mean_value(&self) -> PropertyOutcome {
        let explicit = v1_explicit(self.d);
        let recursive = r_coeffs_recursive(self.d);
        let m = self.d.len();
        let mut checked = 0;
        for j in 1..=m {
            checked += 1;
            if explicit.coeff(j) != recursive.coeff(j) {
                return fail(
                    Property::MeanValue,
                    checked,
                    Method::Recursive,
                    format!("constant R_{j}"),
                    format_rational(explicit.coeff(j)),
                    format_rational(recursive.coeff(j)),
                );
            }
        }
        let grid = self.d.sum() % 2;
        for (method, q) in &self.certs {
            for j in 1..=m {
                checked += 1;
                let mean = q.coeff(j).mean_on_grid(grid);
                if &mean != explicit.coeff(j) {
                    return fail(
                        Property::MeanValue,
                        checked,
                        *method,
                        format!("mean of R_{j}(s)"),
                        format_rational(explicit.coeff(j)),
                        format_rational(&mean),
                    );
                }
            }
        }
        pass(Property::MeanValue, checked, None)
    }
}

fn pass(property: Property, checked: usize, note: Option<String>) -> PropertyOutcome {
    PropertyOutcome { property, passed: true, checked, counterexample: None, note }
}

fn fail(
    property: Property,
    checked: usize,
    method: Method,
    argument: String,
    expected: String,
    actual: String,
) -> PropertyOutcome {
    PropertyOutcome {
        property,
        passed: false,
        checked,
        counterexample: Some(Counterexample { method, argument, expected, actual }),
        note: None,
    }
}

pub fn verify(d: &PartList, config: &VerifyConfig) -> VerifyReport {
    let checker = Checker::new(d, &config.methods);
    let outcomes = config
        .properties
        .iter()
        .map(|p| match p {
            Property::Oracle => checker.oracle(config.n_max, config.enum_guard),
            Property::Recurrence => checker.recurrence(),
            Property::Parity => checker.parity(),
            Property::Zeros => checker.zeros(),
            Property::PathAgreement => checker.path_agreement(),
            Property::MeanValue => checker.mean_value(),
        })
        .collect();
    VerifyReport { parts: d.clone(), outcomes }
}

/// Every multiset of at most `max_m` parts from `1..=max_part`, as
/// nondecreasing lists, ordered by size then lexicographically.
pub fn multisets(max_m: usize, max_part: u64) -> Vec<PartList> {
    fn grow(current: &mut Vec<u64>, remaining: usize, max_part: u64, out: &mut Vec<PartList>) {
        if remaining == 0 {
            out.push(PartList::new(current.clone()).expect("non-empty positive parts"));
            return;
        }
        let start = current.last().copied().unwrap_or(1);
        for p in start..=max_part {
            current.push(p);
            grow(current, remaining - 1, max_part, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    for m in 1..=max_m {
        grow(&mut Vec::new(), m, max_part, &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub max_m: usize,
    pub max_part: u64,
    pub reports: Vec<VerifyReport>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerifyReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyReport> {
        self.reports.iter().filter(|r| !r.passed())
    }
}

/// Verifies every multiset in parallel; reports come back in corpus order.
pub fn verify_corpus(max_m: usize, max_part: u64, config: &VerifyConfig) -> Result<CorpusReport> {
    if max_m == 0 || max_part == 0 {
        return Err(Error::input("corpus bounds must be positive"));
    }
    let reports = multisets(max_m, max_part).par_iter().map(|d| verify(d, config)).collect();
    Ok(CorpusReport { max_m, max_part, reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(v: &[u64]) -> PartList {
        PartList::new(v.to_vec()).unwrap()
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(1, 2), vec![parts(&[1]), parts(&[2])]);
        // C(6+k-1, k) summed over k = 1..4
        assert_eq!(multisets(4, 6).len(), 6 + 21 + 56 + 126);
        assert_eq!(multisets(2, 3)[3], parts(&[1, 1]));
    }

    #[test]
    fn magnitude_order() {
        let got: Vec<i64> = by_magnitude(2).collect();
        assert_eq!(got, vec![0, -1, 1, -2, 2]);
    }

    #[test]
    fn property_lists_parse() {
        assert_eq!(Property::parse_list("zeros,oracle").unwrap(), vec![Property::Oracle, Property::Zeros]);
        assert_eq!(Property::parse_list("all").unwrap().len(), 6);
        assert!(Property::parse_list("zeros,bogus").is_err());
        assert_eq!("path-agreement".parse::<Property>().unwrap(), Property::PathAgreement);
    }

    #[test]
    fn small_sets_pass_everything() {
        for d in [parts(&[1, 1]), parts(&[1, 2, 3]), parts(&[3, 2])] {
            let report = verify(&d, &VerifyConfig::default());
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn oracle_method_has_no_certificate() {
        assert!(certificate(&parts(&[1]), Method::Oracle).is_err());
    }

    #[test]
    fn corpus_rejects_empty_bounds() {
        assert!(verify_corpus(0, 3, &VerifyConfig::default()).is_err());
    }

    #[test]
    fn corrupted_certificate_yields_minimal_counterexample() {
        let d = parts(&[1, 2]);
        let good = build_explicit(&d);
        let mut json = good.to_json();
        // constant term on odd n: 2s = 2n + 3 ≡ 1 (mod 4)
        json["coefficients"][1]["values"]["1"] = serde_json::json!("3/4");
        let bad = QuasiPoly::from_json(&json).unwrap();
        let checker = Checker { d: &d, certs: vec![(Method::Explicit, bad)], prev: vec![Some(build_explicit(&parts(&[1])))] };
        let outcome = checker.oracle(Some(20), 1000);
        assert!(!outcome.passed);
        let c = outcome.counterexample.unwrap();
        assert_eq!(c.argument, "1");
        assert_eq!(c.expected, "1");
        assert_eq!(c.actual, "2");
    }
}
