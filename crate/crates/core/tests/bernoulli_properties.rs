use num_traits::{One, Zero};
use rpf_core::bernoulli::{
    bernoulli_higher, bernoulli_higher_weights, bernoulli_poly, d_higher_recursive,
    d_higher_symmetric, DCoefficients,
};
use rpf_core::exactnum::{int, rat};
use rpf_core::verify::multisets;
use rpf_core::{PartList, Rational};

mod common;

use common::genfunc_coefficient;

fn sample_sets() -> Vec<PartList> {
    multisets(3, 4)
}

fn signed(d: &PartList) -> Vec<i64> {
    d.parts().iter().map(|&x| x as i64).collect()
}

#[test]
fn series_oracle_sanity() {
    // single part d = 1: coefficients are B_n(s)
    for n in 0..6 {
        let s = rat(2, 3);
        assert_eq!(genfunc_coefficient(n, &s, &[1]), bernoulli_poly(n, &s));
    }
}

#[test]
fn higher_order_matches_generating_function() {
    let samples = [rat(0, 1), rat(3, 2), rat(-7, 3)];
    for d in sample_sets() {
        for n in 0..=8 {
            for s in &samples {
                assert_eq!(
                    bernoulli_higher(n, s, &d),
                    genfunc_coefficient(n, s, &signed(&d)),
                    "n={n} s={s} d={d}"
                );
            }
        }
    }
}

#[test]
fn higher_order_spec_example() {
    let d = PartList::new(vec![1, 2]).unwrap();
    let s = rat(3, 2);
    let expected = genfunc_coefficient(2, &s, &[1, 2]);
    assert_eq!(bernoulli_higher(2, &s, &d), expected);
    // s - xi = 0, so the value is D_2^(2) / 4 = (1 + 4) * (-1/3) / 4
    assert_eq!(expected, rat(-5, 12));
}

#[test]
fn norlund_reflection() {
    let samples = [rat(1, 2), rat(5, 3), rat(-2, 1)];
    for d in sample_sets() {
        let neg: Vec<i64> = signed(&d).into_iter().map(|w| -w).collect();
        let total = int(d.sum() as i64);
        for n in 0..=8 {
            for s in &samples {
                let lhs = bernoulli_higher_weights(n, s, &neg);
                assert_eq!(lhs, genfunc_coefficient(n, s, &neg), "series route, n={n} d={d}");
                assert_eq!(lhs, bernoulli_higher(n, &(s + &total), &d), "n={n} s={s} d={d}");
            }
        }
    }
}

#[test]
fn multiplication_theorem() {
    for n in 0..=8usize {
        for m in 1..=6i64 {
            for x in [rat(0, 1), rat(1, 2), rat(1, 3)] {
                let lhs: Rational = (0..m).map(|r| bernoulli_poly(n, &(&x + rat(r, m)))).sum();
                let rhs = bernoulli_poly(n, &(&x * int(m))) / rpow(m, n as i64 - 1);
                assert_eq!(lhs, rhs, "n={n} m={m} x={x}");
            }
        }
    }
}

fn rpow(base: i64, e: i64) -> Rational {
    let b = if e < 0 { rat(1, base) } else { int(base) };
    (0..e.abs()).fold(Rational::one(), |acc, _| acc * &b)
}

#[test]
fn recursive_and_symmetric_d_coefficients_agree() {
    for d in multisets(4, 5) {
        let table = DCoefficients::recursive(&signed(&d), 8);
        for n in 0..=8 {
            let sym = d_higher_symmetric(n, &d);
            assert_eq!(table.get(n), &sym, "n={n} d={d}");
            assert_eq!(d_higher_recursive(n, &d), sym);
            if n % 2 == 1 {
                assert!(sym.is_zero(), "odd D_{n} nonzero for {d}");
            }
        }
        assert!(table.get(0).is_one());
    }
}
