//! Exact rational arithmetic: vectors, matrices, linear solves and a small
//! simplex kernel for feasibility questions.
//!
//! Everything here is built on arbitrary-precision rationals. Nothing in the
//! crate ever touches floating point.

mod linalg;
mod lp;
mod matrix;
mod vector;

pub use linalg::{
    orthogonal_complement, project_onto_complement, rank, row_basis, solve_linear, LinearSolution,
};
pub use lp::{lp_feasible, lp_maximize, strict_point, LpOutcome};
pub use matrix::QMatrix;
pub use vector::QVector;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Input(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales `v` by a positive rational so that it becomes a primitive integer
/// vector (coprime integer entries). The zero vector is returned unchanged.
pub fn primitive(v: &QVector) -> QVector {
    if v.is_zero() {
        return v.clone();
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    QVector::new(
        ints.into_iter()
            .map(|x| Rational::from_integer(x / &g))
            .collect(),
    )
}

/// Primitive representative of the line spanned by `v`, with the first
/// nonzero coordinate positive.
pub fn direction_class(v: &QVector) -> QVector {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => -p,
        _ => p,
    }
}
