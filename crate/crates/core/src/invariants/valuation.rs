use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactmath::{int, QVector};
use crate::matroid::CoxeterMatroid;
use crate::polyhedral::{indicator_counterexample, Body, SignedPolyhedralSum};

use super::cones::f_invariant;
use super::ginv::g_invariant;
use super::interlace::{interlace_polynomial, InterlaceMode};
use super::sums::{FormalSum, Linear, UniPolynomial};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum InvariantKind {
    G,
    Interlace,
    F,
}

impl FromStr for InvariantKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g" => Ok(InvariantKind::G),
            "interlace" => Ok(InvariantKind::Interlace),
            "f" => Ok(InvariantKind::F),
            other => Err(Error::Input(format!(
                "unknown invariant {other:?} (expected g, interlace or f)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuationReport {
    /// The indicator functions do not cancel; nonzero at `witness`.
    NotARelation { witness: QVector },
    Holds,
    /// The invariant does not vanish on the relation.
    Fails { residual: String },
}

impl ValuationReport {
    pub fn holds(&self) -> bool {
        matches!(self, ValuationReport::Holds)
    }
}

fn residual<V: Linear + std::fmt::Debug>(
    terms: &[(i64, CoxeterMatroid)],
    f: impl Fn(&CoxeterMatroid) -> Result<V>,
    zero: V,
) -> Result<ValuationReport> {
    let mut acc = zero;
    for (c, m) in terms {
        acc.add_scaled(&int(*c), &f(m)?);
    }
    Ok(if acc.is_zero() {
        ValuationReport::Holds
    } else {
        ValuationReport::Fails {
            residual: format!("{acc:?}"),
        }
    })
}

/// Checks that `sum a_i 1_{P(M_i)} = 0`, then that the invariant vanishes on
/// `sum a_i M_i`.
pub fn verify_valuation_relation(
    terms: &[(i64, CoxeterMatroid)],
    kind: InvariantKind,
) -> Result<ValuationReport> {
    let Some((_, first)) = terms.first() else {
        return Ok(ValuationReport::Holds);
    };
    let q0 = first.quotient();
    for (_, m) in terms {
        let q = m.quotient();
        if q.group().root_system().label() != q0.group().root_system().label() || q.subset() != q0.subset() {
            return Err(Error::TypeMismatch("matroids of different types in one relation".into()));
        }
    }
    let mut sum = SignedPolyhedralSum::new();
    for (c, m) in terms {
        sum.push(*c, Body::Polytope(m.base_polytope()?));
    }
    if let Some(witness) = indicator_counterexample(&sum)? {
        return Ok(ValuationReport::NotARelation { witness });
    }
    match kind {
        InvariantKind::G => residual(terms, g_invariant, FormalSum::new()),
        InvariantKind::Interlace => residual(
            terms,
            |m| interlace_polynomial(m, InterlaceMode::Definition),
            UniPolynomial::zero(),
        ),
        InvariantKind::F => residual(
            terms,
            |m| f_invariant(&Body::Polytope(m.base_polytope()?), m.quotient().group()),
            FormalSum::new(),
        ),
    }
}
