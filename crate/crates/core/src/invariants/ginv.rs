use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coxeter::{CosetId, Quotient};
use crate::error::{Error, Result};
use crate::exactmath::{int, Rational};
use crate::matroid::{schubert, CoxeterMatroid};
use crate::polyhedral::{tightly_contains, Body};

use super::cones::reference_cone;
use super::sums::{FormalSum, Linear};

/// `sum_w U_{w^{-1} min^w(M)}`, by a sweep over the group.
pub fn g_invariant(m: &CoxeterMatroid) -> Result<FormalSum<CosetId>> {
    let mut out = FormalSum::new();
    for w in m.quotient().group().ids() {
        out.add_term(m.pulled_back_min(w)?, Rational::one());
    }
    Ok(out)
}

/// The same invariant computed geometrically: the coefficient of `U_B`
/// counts the `w` for which `w (C + delta_B)` tightly contains the base
/// polytope, `C` being the chamber cone.
pub fn g_invariant_via_tc(m: &CoxeterMatroid) -> Result<FormalSum<CosetId>> {
    let q = m.quotient();
    let g = q.group();
    let p = Body::Polytope(m.base_polytope()?);
    let chamber = reference_cone(g.root_system(), &[])?;
    let moved: Vec<_> = g
        .ids()
        .map(|w| chamber.transform(g.matrix(w)))
        .collect::<Result<_>>()?;
    let counts: Vec<usize> = (0..q.len())
        .into_par_iter()
        .map(|b| {
            g.ids()
                .filter(|&w| tightly_contains(&moved[w].with_apex(&g.act(w, q.delta(b))), &p))
                .count()
        })
        .collect();
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(b, c)| (b, int(c as i64)))
        .collect())
}

/// Rows `G(Omega_B)` of the Schubert matroids, indexed by coset.
#[derive(Clone, Debug)]
pub struct SchubertMatrix {
    quotient: Arc<Quotient>,
    rows: Vec<FormalSum<CosetId>>,
}

impl SchubertMatrix {
    pub fn quotient(&self) -> &Arc<Quotient> {
        &self.quotient
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, b: CosetId) -> &FormalSum<CosetId> {
        &self.rows[b]
    }

    pub fn entry(&self, b: CosetId, c: CosetId) -> Rational {
        self.rows[b].get(&c)
    }

    /// Dense form, rows and columns in coset order.
    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.len())
            .map(|b| (0..self.len()).map(|c| self.entry(b, c)).collect())
            .collect()
    }

    fn diagonal(&self, b: CosetId) -> Result<Rational> {
        let d = self.entry(b, b);
        if d.is_zero() {
            return Err(Error::Internal(format!("zero diagonal entry at coset {b}")));
        }
        Ok(d)
    }
}

pub fn schubert_matrix(q: Arc<Quotient>) -> Result<SchubertMatrix> {
    let rows = (0..q.len())
        .map(|b| g_invariant(&schubert(q.clone(), b)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(SchubertMatrix { quotient: q, rows })
}

/// The unique linear map `psi` on `U_B` with `psi(G(Omega_B)) = g(Omega_B)`,
/// given the values `g(Omega_B)` in coset order.
pub fn specialize<V: Linear>(sm: &SchubertMatrix, g_on_schuberts: &[V]) -> Result<Vec<V>> {
    let n = sm.len();
    if g_on_schuberts.len() != n {
        return Err(Error::Input(format!(
            "expected {n} values, one per Schubert matroid, got {}",
            g_on_schuberts.len()
        )));
    }
    let mut psi: Vec<V> = Vec::with_capacity(n);
    for b in 0..n {
        let mut v = g_on_schuberts[b].clone();
        for (&c, coeff) in sm.row(b).iter() {
            if c < b {
                v.add_scaled(&-coeff.clone(), &psi[c]);
            } else if c > b {
                return Err(Error::Internal(format!("row {b} reaches the later coset {c}")));
            }
        }
        let d = sm.diagonal(b)?;
        let mut scaled = v.zero_like();
        scaled.add_scaled(&(Rational::one() / d), &v);
        psi.push(scaled);
    }
    for b in 0..n {
        let mut check = g_on_schuberts[b].zero_like();
        for (&c, coeff) in sm.row(b).iter() {
            check.add_scaled(coeff, &psi[c]);
        }
        if check != g_on_schuberts[b] {
            return Err(Error::Internal(format!("specialization fails to reproduce row {b}")));
        }
    }
    Ok(psi)
}

/// Coefficients `lambda_B` with `G(M) = sum lambda_B G(Omega_B)`.
pub fn schubert_decompose(m: &CoxeterMatroid, sm: &SchubertMatrix) -> Result<FormalSum<CosetId>> {
    if !Arc::ptr_eq(m.quotient(), sm.quotient()) {
        return Err(Error::TypeMismatch("matroid and Schubert matrix use different quotients".into()));
    }
    let target = g_invariant(m)?;
    let n = sm.len();
    let mut lambda = vec![Rational::zero(); n];
    for c in (0..n).rev() {
        let mut rest = target.get(&c);
        for b in c + 1..n {
            if !lambda[b].is_zero() {
                rest -= &lambda[b] * sm.entry(b, c);
            }
        }
        lambda[c] = rest / sm.diagonal(c)?;
    }
    let out: FormalSum<CosetId> = lambda.into_iter().enumerate().collect();
    let mut residual = target.clone();
    for (&b, l) in out.iter() {
        residual.add_scaled(&-l.clone(), sm.row(b));
    }
    if !residual.is_empty() {
        return Err(Error::Internal("Schubert decomposition leaves a residual".into()));
    }
    Ok(out)
}
