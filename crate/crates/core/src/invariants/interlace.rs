use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::coxeter::{CosetId, Quotient, RootType};
use crate::error::{Error, Result};
use crate::exactmath::{rat, Rational};
use crate::matroid::CoxeterMatroid;

use super::ginv::g_invariant;
use super::sums::UniPolynomial;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum InterlaceMode {
    /// `sum_{A} x^{d_M(A)}` over all subsets `A`.
    Definition,
    /// Read off the `G`-invariant.
    ViaG,
}

impl FromStr for InterlaceMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "definition" => Ok(InterlaceMode::Definition),
            "via_g" | "via-g" => Ok(InterlaceMode::ViaG),
            other => Err(Error::Input(format!(
                "unknown interlace mode {other:?} (expected definition or via_g)"
            ))),
        }
    }
}

fn check_delta_quotient(q: &Quotient) -> Result<usize> {
    let rs = q.group().root_system();
    let n = rs.rank();
    let expected: Vec<usize> = (0..n - 1).collect();
    if rs.kind() != RootType::B || q.subset() != expected.as_slice() {
        return Err(Error::TypeMismatch(format!(
            "delta-matroids need type B with I = [n] minus n, got {} with I = {:?}",
            rs.label(),
            q.subset().iter().map(|i| i + 1).collect::<Vec<_>>()
        )));
    }
    Ok(n)
}

/// The subset of `[n]` (0-based) encoded by a coset of the delta quotient:
/// the coordinates where its weight point is negative.
pub fn subset_of_coset(q: &Quotient, b: CosetId) -> Result<Vec<usize>> {
    check_delta_quotient(q)?;
    Ok(q.delta(b).iter().enumerate().filter(|(_, x)| x.is_negative()).map(|(i, _)| i).collect())
}

fn coset_of_subset(q: &Quotient, n: usize, set: &[usize]) -> Result<CosetId> {
    if let Some(&i) = set.iter().find(|&&i| i >= n) {
        return Err(Error::Input(format!("element {} is outside [{n}]", i + 1)));
    }
    let point = (0..n)
        .map(|i| if set.contains(&i) { rat(-1, 2) } else { rat(1, 2) })
        .collect();
    q.find_delta(&point)
        .ok_or_else(|| Error::Internal("subset has no matching weight point".into()))
}

/// The Coxeter matroid of type `(B_n, [n] minus n)` with the given feasible
/// sets (0-based subsets of `[n]`).
pub fn delta_matroid(q: Arc<Quotient>, sets: &[Vec<usize>]) -> Result<CoxeterMatroid> {
    let n = check_delta_quotient(&q)?;
    let bases = sets
        .iter()
        .map(|s| coset_of_subset(&q, n, s))
        .collect::<Result<Vec<_>>>()?;
    CoxeterMatroid::new(q, &bases)
}

/// Feasible sets of a delta-matroid, in coset order.
pub fn subsets_of(m: &CoxeterMatroid) -> Result<Vec<Vec<usize>>> {
    m.bases().iter().map(|&b| subset_of_coset(m.quotient(), b)).collect()
}

pub fn interlace_polynomial(m: &CoxeterMatroid, mode: InterlaceMode) -> Result<UniPolynomial> {
    let q = m.quotient();
    let n = check_delta_quotient(q)?;
    match mode {
        InterlaceMode::Definition => {
            let masks: Vec<u32> = subsets_of(m)?
                .iter()
                .map(|s| s.iter().map(|i| 1u32 << i).sum())
                .collect();
            let mut out = UniPolynomial::zero();
            for a in 0u32..1 << n {
                let d = masks.iter().map(|b| (a ^ b).count_ones()).min().expect("nonempty");
                out.add_term(d, Rational::one());
            }
            Ok(out)
        }
        InterlaceMode::ViaG => {
            let g = g_invariant(m)?;
            let half_n = rat(n as i64, 2);
            let fact: i64 = (1..=n as i64).product();
            let mut out = UniPolynomial::zero();
            for (&b, c) in g.iter() {
                let e = &half_n - q.delta(b).coordinate_sum();
                if !e.is_integer() || e.is_negative() {
                    return Err(Error::Internal(format!("exponent {e} is not a nonnegative integer")));
                }
                let e: u32 = e.to_integer().try_into().expect("small exponent");
                out.add_term(e, c / Rational::from_integer(fact.into()));
            }
            if !out.is_integral() {
                return Err(Error::Internal(format!("non-integral interlace polynomial {out}")));
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterGroup, RootSystem};

    fn delta_quotient(n: usize) -> Arc<Quotient> {
        let g = Arc::new(CoxeterGroup::new(RootSystem::new(RootType::B, n).unwrap()).unwrap());
        Arc::new(Quotient::new(g, &(0..n - 1).collect::<Vec<_>>()).unwrap())
    }

    #[test]
    fn bottom_is_empty_set() {
        let q = delta_quotient(2);
        assert_eq!(subset_of_coset(&q, q.bottom()).unwrap(), Vec::<usize>::new());
        assert_eq!(subset_of_coset(&q, q.top()).unwrap(), vec![0, 1]);
    }

    #[test]
    fn cube_and_singleton() {
        for n in 2..=3 {
            let q = delta_quotient(n);
            let cube = CoxeterMatroid::full(q.clone());
            let single = delta_matroid(q.clone(), &[vec![]]).unwrap();
            let binom = UniPolynomial::from_coeffs(&[1, 1]).pow(n as u32);
            for mode in [InterlaceMode::Definition, InterlaceMode::ViaG] {
                assert_eq!(
                    interlace_polynomial(&cube, mode).unwrap(),
                    UniPolynomial::from_coeffs(&[1 << n])
                );
                assert_eq!(interlace_polynomial(&single, mode).unwrap(), binom);
            }
        }
    }

    #[test]
    fn triangle() {
        let q = delta_quotient(2);
        let m = delta_matroid(q, &[vec![], vec![0], vec![1]]).unwrap();
        let d = interlace_polynomial(&m, InterlaceMode::Definition).unwrap();
        assert_eq!(d, UniPolynomial::from_coeffs(&[3, 1]));
        assert_eq!(interlace_polynomial(&m, InterlaceMode::ViaG).unwrap(), d);
    }

    #[test]
    fn wrong_type() {
        let g = Arc::new(CoxeterGroup::new(RootSystem::new(RootType::A, 2).unwrap()).unwrap());
        let q = Arc::new(Quotient::new(g, &[0]).unwrap());
        let m = CoxeterMatroid::full(q);
        assert!(matches!(
            interlace_polynomial(&m, InterlaceMode::Definition),
            Err(Error::TypeMismatch(_))
        ));
    }
}
