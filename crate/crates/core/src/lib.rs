//! Exact quasi-polynomial formulas for the restricted partition function
//! (denumerant) `p(n, d)`: the number of nonnegative integer solutions of
//! `x_1 d_1 + ... + x_m d_m = n`.
//!
//! The shifted function `V(s, d) = p(s - xi, d)`, `xi = (d_1 + ... + d_m)/2`,
//! is built as a quasi-polynomial in two independent ways (a recursion over
//! the parts and an explicit pivot-symmetrized sum of Bernoulli
//! polynomials) and checked against a dynamic-programming count.
//!
//! ```
//! use rpf_core::{build_explicit, PartList};
//!
//! let d: PartList = "1,2,3".parse().unwrap();
//! let q = build_explicit(&d);
//! assert_eq!(q.count(5).unwrap(), 5.into());
//! ```

pub mod bernoulli;
pub mod error;
pub mod exactnum;
pub mod oracle;
pub mod polypart;
pub mod quasipoly;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{HalfLatticePoint, PartList, Rational};
pub use oracle::{count_dp, count_enum, CountTable};
pub use polypart::{r_coeffs_recursive, v1_explicit, Polynomial};
pub use quasipoly::{build_explicit, build_recursive, extend_recursive, PeriodicFn, QuasiPoly};
pub use verify::{verify, verify_corpus, Method, Property, VerifyConfig, VerifyReport};
