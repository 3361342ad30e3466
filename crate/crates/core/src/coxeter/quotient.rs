use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactmath::QVector;

use super::{CoxeterGroup, ElemId};

/// Index of a coset inside its [`Quotient`]. Cosets are numbered by the
/// `(length, word)` order of their minimal representatives, which is a linear
/// extension of the Bruhat order; `0` is the bottom coset `e W_I`.
pub type CosetId = usize;

/// A parabolic coset `B = u W_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub id: CosetId,
    /// Minimal-length representative.
    pub min_rep: ElemId,
    /// `min_rep . varpi_{[n] \ I}`
    pub delta: QVector,
}

/// The coset space `W / W_I` with its Bruhat order and `W`-action.
#[derive(Debug)]
pub struct Quotient {
    group: Arc<CoxeterGroup>,
    subset: Vec<usize>,
    cosets: Vec<Coset>,
    coset_of: Vec<CosetId>,
    by_delta: HashMap<QVector, CosetId>,
    leq: Vec<Vec<bool>>,
    act: Vec<Vec<CosetId>>,
}

impl Quotient {
    /// `subset` holds 0-based simple-root indices.
    pub fn new(group: Arc<CoxeterGroup>, subset: &[usize]) -> Result<Self> {
        let n = group.rank();
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if let Some(&bad) = subset.iter().find(|&&i| i >= n) {
            return Err(Error::Input(format!(
                "parabolic index {} out of range for rank {n}",
                bad + 1
            )));
        }
        let rs = group.root_system();
        let complement: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
        let weight = rs.weight_sum(&complement);

        let min_rep_of = |mut w: ElemId| loop {
            match subset
                .iter()
                .map(|&i| group.mul_simple_right(w, i))
                .find(|&ws| group.length(ws) < group.length(w))
            {
                Some(ws) => w = ws,
                None => return w,
            }
        };

        let mut rep_to_coset: HashMap<ElemId, CosetId> = HashMap::new();
        let mut cosets = Vec::new();
        for w in group.ids() {
            let rep = min_rep_of(w);
            if rep == w {
                rep_to_coset.insert(w, cosets.len());
                cosets.push(Coset {
                    id: cosets.len(),
                    min_rep: w,
                    delta: group.act(w, &weight),
                });
            }
        }
        let coset_of: Vec<CosetId> = group.ids().map(|w| rep_to_coset[&min_rep_of(w)]).collect();
        let by_delta: HashMap<QVector, CosetId> =
            cosets.iter().map(|c| (c.delta.clone(), c.id)).collect();
        if by_delta.len() != cosets.len() {
            return Err(Error::Internal("two cosets share a weight point".into()));
        }

        let m = cosets.len();
        let leq = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| group.bruhat_leq(cosets[a].min_rep, cosets[b].min_rep))
                    .collect()
            })
            .collect();

        // act[w][B] = w B, built along reduced words: w = w' s_i.
        let simple_act: Vec<Vec<CosetId>> = (0..n)
            .map(|i| {
                cosets
                    .iter()
                    .map(|c| coset_of[group.mul_simple_left(i, c.min_rep)])
                    .collect()
            })
            .collect();
        let mut act: Vec<Vec<CosetId>> = Vec::with_capacity(group.order());
        act.push((0..m).collect());
        for w in group.ids().skip(1) {
            let word = group.word(w);
            let last = *word.last().expect("nonidentity");
            let prefix = group.mul_simple_right(w, last);
            let row = (0..m).map(|b| act[prefix][simple_act[last][b]]).collect();
            act.push(row);
        }

        Ok(Quotient {
            group,
            subset,
            cosets,
            coset_of,
            by_delta,
            leq,
            act,
        })
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    /// Sorted 0-based indices of `I`.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn coset(&self, b: CosetId) -> &Coset {
        &self.cosets[b]
    }

    pub fn delta(&self, b: CosetId) -> &QVector {
        &self.cosets[b].delta
    }

    pub fn min_rep(&self, b: CosetId) -> ElemId {
        self.cosets[b].min_rep
    }

    /// The coset `w W_I`.
    pub fn coset_of(&self, w: ElemId) -> CosetId {
        self.coset_of[w]
    }

    pub fn coset_of_word(&self, word: &[usize]) -> Result<CosetId> {
        Ok(self.coset_of(self.group.from_word(word)?))
    }

    pub fn find_delta(&self, v: &QVector) -> Option<CosetId> {
        self.by_delta.get(v).copied()
    }

    pub fn bottom(&self) -> CosetId {
        0
    }

    pub fn top(&self) -> CosetId {
        self.coset_of(self.group.longest())
    }

    /// `w B`
    pub fn act(&self, w: ElemId, b: CosetId) -> CosetId {
        self.act[w][b]
    }

    /// Untwisted Bruhat order on minimal representatives.
    pub fn leq(&self, a: CosetId, b: CosetId) -> bool {
        self.leq[a][b]
    }

    /// `a <=^w b`, i.e. `w^{-1} a <= w^{-1} b`.
    pub fn leq_twisted(&self, a: CosetId, b: CosetId, twist: Option<ElemId>) -> bool {
        match twist {
            None => self.leq(a, b),
            Some(w) => {
                let wi = self.group.inverse(w);
                self.leq(self.act(wi, a), self.act(wi, b))
            }
        }
    }

    /// `|W_I|`
    pub fn stabilizer_order(&self) -> usize {
        self.group.order() / self.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{RootSystem, RootType};
    use crate::exactmath::rat;

    fn quotient(k: RootType, n: usize, subset: &[usize]) -> Quotient {
        let g = Arc::new(CoxeterGroup::new(RootSystem::new(k, n).unwrap()).unwrap());
        Quotient::new(g, subset).unwrap()
    }

    #[test]
    fn coset_counts() {
        assert_eq!(quotient(RootType::A, 2, &[0]).len(), 3);
        assert_eq!(quotient(RootType::A, 3, &[0, 2]).len(), 6);
        assert_eq!(quotient(RootType::B, 3, &[0, 1]).len(), 8);
        for (k, n) in [(RootType::A, 3), (RootType::C, 3), (RootType::D, 4)] {
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(quotient(k, n, &all).len(), 1);
        }
    }

    #[test]
    fn b2_delta_points_form_a_square() {
        let q = quotient(RootType::B, 2, &[0]);
        assert_eq!(q.len(), 4);
        let h = rat(1, 2);
        let mut pts: Vec<QVector> = q.cosets().iter().map(|c| c.delta.clone()).collect();
        pts.sort();
        let mut expected = vec![];
        for a in [-&h, h.clone()] {
            for b in [-&h, h.clone()] {
                expected.push(QVector::new(vec![a.clone(), b]));
            }
        }
        expected.sort();
        assert_eq!(pts, expected);
        assert_eq!(q.delta(q.bottom()), &QVector::new(vec![h.clone(), h]));
    }

    #[test]
    fn min_reps_have_no_descents_in_subset() {
        let q = quotient(RootType::B, 3, &[0, 2]);
        let g = q.group();
        let rs = g.root_system();
        for c in q.cosets() {
            for &i in q.subset() {
                assert!(rs.is_positive_root(&g.act(c.min_rep, &rs.simple_roots()[i])));
            }
        }
    }

    #[test]
    fn quotient_order_is_a_partial_order() {
        for (k, n, s) in [
            (RootType::A, 3, vec![]),
            (RootType::A, 3, vec![1]),
            (RootType::B, 3, vec![0]),
            (RootType::B, 3, vec![0, 1]),
        ] {
            let q = quotient(k, n, &s);
            if q.len() > 24 {
                continue;
            }
            let m = q.len();
            for a in 0..m {
                assert!(q.leq(a, a));
                for b in 0..m {
                    if a != b {
                        assert!(!(q.leq(a, b) && q.leq(b, a)));
                    }
                    for c in 0..m {
                        if q.leq(a, b) && q.leq(b, c) {
                            assert!(q.leq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_order_matches_element_level_definition() {
        let q = quotient(RootType::A, 3, &[0]);
        let g = q.group().clone();
        for w in g.ids() {
            let wi = g.inverse(w);
            for a in 0..q.len() {
                for b in 0..q.len() {
                    // some u in a, u' in b with w^{-1}u <= w^{-1}u'
                    let oracle = g.ids().filter(|&u| q.coset_of(u) == a).any(|u| {
                        g.ids()
                            .filter(|&u2| q.coset_of(u2) == b)
                            .any(|u2| g.bruhat_leq(g.mul(wi, u), g.mul(wi, u2)))
                    });
                    assert_eq!(q.leq_twisted(a, b, Some(w)), oracle);
                }
            }
        }
    }

    #[test]
    fn delta_is_equivariant() {
        for (k, n, s) in [(RootType::A, 3, vec![1]), (RootType::C, 3, vec![0])] {
            let q = quotient(k, n, &s);
            let g = q.group();
            for w in g.ids() {
                for c in q.cosets() {
                    assert_eq!(g.act(w, &c.delta), *q.delta(q.act(w, c.id)));
                    assert_eq!(q.act(w, c.id), q.coset_of(g.mul(w, c.min_rep)));
                }
            }
        }
    }

    #[test]
    fn trivial_quotient_and_bad_index() {
        let q = quotient(RootType::A, 2, &[0, 1]);
        assert_eq!(q.bottom(), q.top());
        let g = Arc::new(CoxeterGroup::new(RootSystem::new(RootType::A, 2).unwrap()).unwrap());
        assert!(matches!(Quotient::new(g, &[3]), Err(Error::Input(_))));
    }
}
