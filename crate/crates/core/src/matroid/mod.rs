//! Coxeter matroids: recognition, base polytopes, Schubert matroids,
//! isomorphism and intersection stability.

mod stability;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::coxeter::{CosetId, ElemId, Quotient};
use crate::error::{Error, Result};
use crate::exactmath::QVector;
use crate::polyhedral::{non_root_edges, VPolytope};

pub use stability::{check_intersection_stability, root_cone_slice, StabilityReport, StabilityWitness};

/// Which characterisation [`is_coxeter_matroid`] uses.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RecognitionMode {
    /// A unique twisted-Bruhat minimum for every twist.
    Bruhat,
    /// Every edge of the weight-point hull is parallel to a root.
    Polytope,
    /// Both, failing loudly if they disagree.
    Both,
}

impl FromStr for RecognitionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruhat" => Ok(RecognitionMode::Bruhat),
            "polytope" => Ok(RecognitionMode::Polytope),
            "both" => Ok(RecognitionMode::Both),
            other => Err(Error::Input(format!(
                "unknown recognition mode {other:?} (expected bruhat, polytope or both)"
            ))),
        }
    }
}

impl fmt::Display for RecognitionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecognitionMode::Bruhat => "bruhat",
            RecognitionMode::Polytope => "polytope",
            RecognitionMode::Both => "both",
        })
    }
}

fn normalize_bases(q: &Quotient, bases: &[CosetId]) -> Result<Vec<CosetId>> {
    if bases.is_empty() {
        return Err(Error::Input("a set of bases must be nonempty".into()));
    }
    if let Some(&b) = bases.iter().find(|&&b| b >= q.len()) {
        return Err(Error::Input(format!("coset index {b} out of range")));
    }
    let mut v = bases.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// `≤^w`-minimal elements of `bases`.
pub fn minimal_elements(q: &Quotient, bases: &[CosetId], w: ElemId) -> Vec<CosetId> {
    let wi = q.group().inverse(w);
    let moved: Vec<CosetId> = bases.iter().map(|&b| q.act(wi, b)).collect();
    (0..bases.len())
        .filter(|&i| !(0..bases.len()).any(|j| j != i && q.leq(moved[j], moved[i])))
        .map(|i| bases[i])
        .collect()
}

fn bruhat_test(q: &Quotient, bases: &[CosetId]) -> bool {
    q.group().ids().all(|w| minimal_elements(q, bases, w).len() == 1)
}

fn polytope_test(q: &Quotient, bases: &[CosetId]) -> Result<bool> {
    let p = VPolytope::new(bases.iter().map(|&b| q.delta(b).clone()).collect())?;
    if p.vertices().len() != bases.len() {
        return Err(Error::Internal("a weight point is not a vertex of the hull".into()));
    }
    Ok(non_root_edges(&p, q.group().root_system())?.is_empty())
}

/// Is `bases ⊆ W/W_I` a Coxeter matroid?
pub fn is_coxeter_matroid(q: &Quotient, bases: &[CosetId], mode: RecognitionMode) -> Result<bool> {
    let bases = normalize_bases(q, bases)?;
    match mode {
        RecognitionMode::Bruhat => Ok(bruhat_test(q, &bases)),
        RecognitionMode::Polytope => polytope_test(q, &bases),
        RecognitionMode::Both => {
            let a = bruhat_test(q, &bases);
            let b = polytope_test(q, &bases)?;
            if a != b {
                return Err(Error::Internal(format!(
                    "recognition disagrees on {bases:?}: bruhat says {a}, polytope says {b}"
                )));
            }
            Ok(a)
        }
    }
}

/// A Coxeter matroid of type `(Phi, I)`: a nonempty set of cosets in
/// `W/W_I`, stored sorted by coset index.
#[derive(Clone, Debug)]
pub struct CoxeterMatroid {
    quotient: Arc<Quotient>,
    bases: Vec<CosetId>,
}

impl PartialEq for CoxeterMatroid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.quotient, &other.quotient) && self.bases == other.bases
    }
}

impl Eq for CoxeterMatroid {}

impl CoxeterMatroid {
    /// Validates with the Bruhat criterion.
    pub fn new(quotient: Arc<Quotient>, bases: &[CosetId]) -> Result<Self> {
        let m = Self::new_unchecked(quotient, bases)?;
        if !bruhat_test(&m.quotient, &m.bases) {
            let w = m
                .quotient
                .group()
                .ids()
                .find(|&w| minimal_elements(&m.quotient, &m.bases, w).len() != 1)
                .expect("failing twist");
            return Err(Error::NotAMatroid(format!(
                "bases {:?} have {} minimal elements under the order twisted by {:?}",
                m.bases,
                minimal_elements(&m.quotient, &m.bases, w).len(),
                m.quotient.group().word(w).iter().map(|i| i + 1).collect::<Vec<_>>()
            )));
        }
        Ok(m)
    }

    /// No matroid check; used to feed arbitrary sets to recognition code.
    pub fn new_unchecked(quotient: Arc<Quotient>, bases: &[CosetId]) -> Result<Self> {
        let bases = normalize_bases(&quotient, bases)?;
        Ok(CoxeterMatroid { quotient, bases })
    }

    /// All of `W/W_I`.
    pub fn full(quotient: Arc<Quotient>) -> Self {
        let bases = (0..quotient.len()).collect();
        CoxeterMatroid { quotient, bases }
    }

    pub fn singleton(quotient: Arc<Quotient>, b: CosetId) -> Result<Self> {
        Self::new_unchecked(quotient, &[b])
    }

    pub fn quotient(&self) -> &Arc<Quotient> {
        &self.quotient
    }

    pub fn bases(&self) -> &[CosetId] {
        &self.bases
    }

    pub fn contains(&self, b: CosetId) -> bool {
        self.bases.binary_search(&b).is_ok()
    }

    /// The unique `≤^w`-minimal basis.
    pub fn min_w(&self, w: ElemId) -> Result<CosetId> {
        let mins = minimal_elements(&self.quotient, &self.bases, w);
        match mins.as_slice() {
            [b] => Ok(*b),
            _ => Err(Error::NotAMatroid(format!(
                "{} minimal elements under the order twisted by {:?}",
                mins.len(),
                self.quotient.group().word(w).iter().map(|i| i + 1).collect::<Vec<_>>()
            ))),
        }
    }

    /// `w^{-1} min^w(M)`, the untwisted minimum of `w^{-1} M`.
    pub fn pulled_back_min(&self, w: ElemId) -> Result<CosetId> {
        let b = self.min_w(w)?;
        Ok(self.quotient.act(self.quotient.group().inverse(w), b))
    }

    /// The basis whose weight point maximises `<w rho, ->`.
    pub fn min_w_geometric(&self, w: ElemId) -> Result<CosetId> {
        let q = &self.quotient;
        let y = q.group().act(w, &q.group().root_system().rho());
        let vals: Vec<_> = self.bases.iter().map(|&b| y.dot(q.delta(b))).collect();
        let best = vals.iter().max().expect("nonempty");
        let hits: Vec<CosetId> = (0..vals.len())
            .filter(|&i| vals[i] == *best)
            .map(|i| self.bases[i])
            .collect();
        match hits.as_slice() {
            [b] => Ok(*b),
            _ => Err(Error::NotAMatroid(format!(
                "weight functional ties between bases {hits:?}"
            ))),
        }
    }

    pub fn base_polytope(&self) -> Result<VPolytope> {
        let p = VPolytope::new(self.bases.iter().map(|&b| self.quotient.delta(b).clone()).collect())?;
        if p.vertices().len() != self.bases.len() {
            return Err(Error::Internal("a weight point is not a vertex of the base polytope".into()));
        }
        Ok(p)
    }

    pub fn weight_points(&self) -> Vec<QVector> {
        self.bases.iter().map(|&b| self.quotient.delta(b).clone()).collect()
    }

    /// `w M`
    pub fn act(&self, w: ElemId) -> CoxeterMatroid {
        let mut bases: Vec<CosetId> = self.bases.iter().map(|&b| self.quotient.act(w, b)).collect();
        bases.sort_unstable();
        CoxeterMatroid {
            quotient: self.quotient.clone(),
            bases,
        }
    }

    /// Lexicographically least basis list in the `W`-orbit.
    pub fn canonical_form(&self) -> CoxeterMatroid {
        self.quotient
            .group()
            .ids()
            .map(|w| self.act(w))
            .min_by(|a, b| a.bases.cmp(&b.bases))
            .expect("nonempty group")
    }

    pub fn isomorphic(&self, other: &CoxeterMatroid) -> bool {
        Arc::ptr_eq(&self.quotient, &other.quotient)
            && self.bases.len() == other.bases.len()
            && self.canonical_form().bases == other.canonical_form().bases
    }

    pub fn intersection(&self, other: &CoxeterMatroid) -> Result<CoxeterMatroid> {
        let common: Vec<CosetId> = self.bases.iter().copied().filter(|&b| other.contains(b)).collect();
        CoxeterMatroid::new(self.quotient.clone(), &common)
    }
}

/// The Schubert matroid `Omega_B = {B' : B <= B'}`.
pub fn schubert(q: Arc<Quotient>, b: CosetId) -> Result<CoxeterMatroid> {
    if b >= q.len() {
        return Err(Error::Input(format!("coset index {b} out of range")));
    }
    let bases: Vec<CosetId> = (0..q.len()).filter(|&c| q.leq(b, c)).collect();
    CoxeterMatroid::new_unchecked(q, &bases)
}
