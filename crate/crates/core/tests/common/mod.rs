//! Independent oracles shared by the integration tests.

use num_bigint::BigInt;
use num_traits::One;
use rpf_core::exactnum::{factorial, int};
use rpf_core::Rational;

/// Truncated power series with exact coefficients.
#[derive(Clone, Debug)]
struct Series(Vec<Rational>);

impl Series {
    fn exp(a: &Rational, order: usize) -> Series {
        let mut c = vec![Rational::one()];
        for k in 1..=order {
            c.push(&c[k - 1] * a / int(k as i64));
        }
        Series(c)
    }

    /// `(e^{w t} - 1) / t = sum_k w^(k+1) t^k / (k+1)!`
    fn exp_minus_one_over_t(w: i64, order: usize) -> Series {
        let mut c = Vec::with_capacity(order + 1);
        let mut w_pow = int(w);
        for k in 0..=order {
            c.push(&w_pow / Rational::from_integer(BigInt::from(factorial(k as u64 + 1))));
            w_pow *= int(w);
        }
        Series(c)
    }

    fn div(&self, other: &Series) -> Series {
        let n = self.0.len();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.0[k].clone();
            for (j, o) in out.iter().enumerate() {
                acc -= o * &other.0[k - j];
            }
            out.push(acc / &other.0[0]);
        }
        Series(out)
    }
}

/// `n!` times the `t^n` coefficient of `(prod w) t^m e^{st} / prod (e^{w t} - 1)`.
pub fn genfunc_coefficient(n: usize, s: &Rational, weights: &[i64]) -> Rational {
    let mut series = Series::exp(s, n);
    for &w in weights {
        series = series.div(&Series::exp_minus_one_over_t(w, n));
    }
    let scale: i64 = weights.iter().product();
    &series.0[n] * int(scale) * Rational::from_integer(BigInt::from(factorial(n as u64)))
}

