use proptest::prelude::*;
use rpf_core::bernoulli::bernoulli_higher;
use rpf_core::exactnum::{factorial, int, rat};
use rpf_core::polypart::{
    leading_coefficient, r_coeffs_recursive, r_mm_constant, v1_compact_eval, v1_explicit, v1_split,
    w1_from_v1,
};
use rpf_core::verify::multisets;
use rpf_core::{PartList, Rational};

fn parts(v: &[u64]) -> PartList {
    PartList::new(v.to_vec()).unwrap()
}

fn sample_points() -> [Rational; 5] {
    [rat(-7, 2), int(0), rat(1, 3), rat(5, 2), int(11)]
}

#[test]
fn explicit_and_recursive_agree_on_corpus() {
    for d in multisets(5, 6) {
        assert_eq!(v1_explicit(&d), r_coeffs_recursive(&d), "{d}");
    }
}

#[test]
fn recursion_agrees_for_unsorted_orders() {
    for v in [[6u64, 1, 4, 2, 5], [5, 5, 2, 6, 3], [3, 1, 2, 1, 6]] {
        let d = parts(&v);
        assert_eq!(v1_explicit(&d), r_coeffs_recursive(&d), "{d}");
    }
}

#[test]
fn leading_coefficient_and_zero_second_coefficient() {
    for d in multisets(4, 6) {
        let v1 = v1_explicit(&d);
        assert_eq!(v1.coeff(1), &leading_coefficient(&d));
        if d.len() >= 2 {
            assert_eq!(v1.coeff(2), &int(0), "{d}");
        }
    }
}

/// `V_1(s) - V_1(s - d_m) = V_1(s - d_m/2; d^{m-1})` as polynomials.
#[test]
fn polynomial_recurrence() {
    for d in multisets(5, 6).into_iter().filter(|d| d.len() >= 2) {
        let m = d.len();
        let dm = int(d.last() as i64);
        let v = v1_explicit(&d);
        let lower = v1_explicit(&d.prefix(m - 1).unwrap());
        // checking m + 1 points pins down a degree m - 1 identity
        for k in 0..=m as i64 {
            let s = rat(2 * k - 3, 3);
            assert_eq!(
                v.eval(&s) - v.eval(&(&s - &dm)),
                lower.eval(&(&s - &dm / int(2))),
                "{d} at {s}"
            );
        }
    }
}

/// `V_1(s) = B_{m-1}^(m)(s + xi | d) / ((m-1)! pi)`.
#[test]
fn matches_higher_order_bernoulli_form() {
    for d in multisets(4, 5) {
        let m = d.len();
        let v = v1_explicit(&d);
        let xi = d.xi().to_rational();
        let norm = Rational::from_integer(factorial(m as u64 - 1).into()) * Rational::from_integer(d.product());
        for s in sample_points() {
            assert_eq!(v.eval(&s), bernoulli_higher(m - 1, &(&s + &xi), &d) / &norm, "{d}");
        }
    }
}

#[test]
fn compact_form_matches_explicit() {
    for d in multisets(4, 6) {
        let v = v1_explicit(&d);
        for s in sample_points() {
            assert_eq!(v1_compact_eval(&d, &s), v.eval(&s), "{d} at {s}");
        }
    }
}

#[test]
fn split_form_matches_explicit() {
    for d in multisets(4, 6) {
        assert_eq!(v1_split(&d), v1_explicit(&d), "{d}");
    }
}

#[test]
fn free_term_of_two_parts_vanishes() {
    for d in multisets(2, 6).into_iter().filter(|d| d.len() == 2) {
        assert_eq!(r_mm_constant(&d), int(0));
    }
}

#[test]
fn w1_is_the_non_oscillating_part() {
    // floor(n/2) + 1 = W_1(n) + (-1)^n / 4 for {1,2}
    let d = parts(&[1, 2]);
    let w1 = w1_from_v1(&v1_explicit(&d), &d);
    assert_eq!(w1.coefficients(), &[rat(1, 2), rat(3, 4)]);
    for n in 0..20i64 {
        let wave = if n % 2 == 0 { rat(1, 4) } else { rat(-1, 4) };
        assert_eq!(int(n / 2 + 1) - w1.eval(&int(n)), wave);
    }
}

proptest! {
    #[test]
    fn explicit_is_permutation_invariant(v in prop::collection::vec(1u64..7, 1..6), seed in any::<u64>()) {
        let d = parts(&v);
        let mut w = v.clone();
        let k = (seed % w.len() as u64) as usize;
        w.rotate_left(k);
        let last = w.len() - 1;
        w.swap(0, last);
        let e = parts(&w);
        prop_assert_eq!(v1_explicit(&d), v1_explicit(&e));
        prop_assert_eq!(r_coeffs_recursive(&d), v1_explicit(&e));
    }
}
