use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::exactmath::{QMatrix, QVector};

use super::RootSystem;

/// Index of an element inside its [`CoxeterGroup`]. Elements are numbered in
/// `(length, reduced word)` lexicographic order, so `0` is the identity.
pub type ElemId = usize;

/// Largest group the enumeration accepts.
pub const MAX_GROUP_ORDER: usize = 1152;

/// One element of the reflection group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    /// Action on the ambient space.
    pub matrix: QMatrix,
    /// Lexicographically least reduced word (0-based generator indices).
    pub word: Vec<usize>,
    pub length: usize,
}

/// The finite reflection group `W` of a root system, fully enumerated.
///
/// Elements are identified by their matrices. Multiplication goes through
/// the permutation each element induces on the root set, which is faithful
/// and far cheaper than rational matrix products.
#[derive(Debug)]
pub struct CoxeterGroup {
    rs: RootSystem,
    elements: Vec<GroupElement>,
    index: HashMap<QMatrix, ElemId>,
    perms: Vec<Vec<u16>>,
    perm_index: HashMap<Vec<u16>, ElemId>,
    right: Vec<Vec<ElemId>>,
    left: Vec<Vec<ElemId>>,
    inverse: Vec<ElemId>,
}

fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    // (a o b)[r] = a[b[r]]
    b.iter().map(|&r| a[r as usize]).collect()
}

impl CoxeterGroup {
    /// Breadth-first enumeration by right multiplication with the simple
    /// reflections.
    pub fn new(rs: RootSystem) -> Result<Self> {
        let n = rs.rank();
        let roots = rs.all_roots();
        let npos = rs.positive_roots().len();
        let root_index: HashMap<QVector, u16> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i as u16))
            .collect();
        let perm_of = |m: &QMatrix| -> Result<Vec<u16>> {
            roots
                .iter()
                .map(|r| {
                    root_index
                        .get(&m.mul_vec(r))
                        .copied()
                        .ok_or_else(|| Error::Internal("matrix does not preserve the roots".into()))
                })
                .collect()
        };
        let gens: Vec<QMatrix> = (0..n).map(|i| rs.simple_reflection(i)).collect();
        let gen_perms: Vec<Vec<u16>> = gens.iter().map(&perm_of).collect::<Result<_>>()?;

        let d = rs.ambient_dim();
        let mut elements = vec![GroupElement {
            matrix: QMatrix::identity(d),
            word: vec![],
            length: 0,
        }];
        let mut perms = vec![(0..roots.len() as u16).collect::<Vec<u16>>()];
        let mut perm_index: HashMap<Vec<u16>, ElemId> = HashMap::new();
        perm_index.insert(perms[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for i in 0..n {
                let p = compose(&perms[w], &gen_perms[i]);
                if perm_index.contains_key(&p) {
                    continue;
                }
                if elements.len() >= MAX_GROUP_ORDER {
                    return Err(Error::Capacity(format!(
                        "group order exceeds {MAX_GROUP_ORDER}"
                    )));
                }
                let mut word = elements[w].word.clone();
                word.push(i);
                let id = elements.len();
                elements.push(GroupElement {
                    matrix: elements[w].matrix.mul(&gens[i]),
                    word,
                    length: elements[w].length + 1,
                });
                perm_index.insert(p.clone(), id);
                perms.push(p);
                queue.push_back(id);
            }
        }

        // Sort by (length, word) and renumber.
        let mut order: Vec<ElemId> = (0..elements.len()).collect();
        order.sort_by(|&a, &b| {
            (elements[a].length, &elements[a].word).cmp(&(elements[b].length, &elements[b].word))
        });
        let elements: Vec<GroupElement> = order.iter().map(|&i| elements[i].clone()).collect();
        let perms: Vec<Vec<u16>> = order.iter().map(|&i| perms[i].clone()).collect();
        let perm_index: HashMap<Vec<u16>, ElemId> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let index: HashMap<QMatrix, ElemId> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.matrix.clone(), i))
            .collect();

        for (id, p) in perms.iter().enumerate() {
            let inversions = p[..npos].iter().filter(|&&r| r as usize >= npos).count();
            if inversions != elements[id].length {
                return Err(Error::Internal(format!(
                    "length {} of {:?} differs from its inversion count {}",
                    elements[id].length, elements[id].word, inversions
                )));
            }
        }

        let lookup = |p: &Vec<u16>| perm_index[p];
        let right = perms
            .iter()
            .map(|p| gen_perms.iter().map(|g| lookup(&compose(p, g))).collect())
            .collect();
        let left = perms
            .iter()
            .map(|p| gen_perms.iter().map(|g| lookup(&compose(g, p))).collect())
            .collect();
        let inverse = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0u16; p.len()];
                for (i, &r) in p.iter().enumerate() {
                    inv[r as usize] = i as u16;
                }
                lookup(&inv)
            })
            .collect();

        Ok(CoxeterGroup {
            rs,
            elements,
            index,
            perms,
            perm_index,
            right,
            left,
            inverse,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    /// All elements sorted by `(length, word)`.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, w: ElemId) -> &GroupElement {
        &self.elements[w]
    }

    pub fn ids(&self) -> std::ops::Range<ElemId> {
        0..self.elements.len()
    }

    pub fn length(&self, w: ElemId) -> usize {
        self.elements[w].length
    }

    pub fn word(&self, w: ElemId) -> &[usize] {
        &self.elements[w].word
    }

    pub fn matrix(&self, w: ElemId) -> &QMatrix {
        &self.elements[w].matrix
    }

    pub fn find_matrix(&self, m: &QMatrix) -> Option<ElemId> {
        self.index.get(m).copied()
    }

    /// Product of the simple reflections in `word` (0-based, need not be
    /// reduced).
    pub fn from_word(&self, word: &[usize]) -> Result<ElemId> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.rank() {
                return Err(Error::Input(format!(
                    "generator {} out of range for rank {}",
                    i + 1,
                    self.rank()
                )));
            }
            w = self.right[w][i];
        }
        Ok(w)
    }

    /// `w s_i`
    pub fn mul_simple_right(&self, w: ElemId, i: usize) -> ElemId {
        self.right[w][i]
    }

    /// `s_i w`
    pub fn mul_simple_left(&self, i: usize, w: ElemId) -> ElemId {
        self.left[w][i]
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.perm_index[&compose(&self.perms[a], &self.perms[b])]
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        self.inverse[w]
    }

    pub fn act(&self, w: ElemId, v: &QVector) -> QVector {
        self.elements[w].matrix.mul_vec(v)
    }

    /// Untwisted Bruhat order by the lifting recursion on left descents.
    pub fn bruhat_leq(&self, u: ElemId, v: ElemId) -> bool {
        let (mut u, mut v) = (u, v);
        loop {
            let lv = self.length(v);
            let lu = self.length(u);
            if lu > lv {
                return false;
            }
            if lv == 0 {
                return u == self.identity();
            }
            if lu == lv {
                return u == v;
            }
            let s = (0..self.rank())
                .find(|&i| self.length(self.left[v][i]) < lv)
                .expect("nonidentity element has a left descent");
            let su = self.left[u][s];
            if self.length(su) < lu {
                u = su;
            }
            v = self.left[v][s];
        }
    }

    /// `u <=^w v`, i.e. `w^{-1} u <= w^{-1} v`.
    pub fn bruhat_leq_twisted(&self, u: ElemId, v: ElemId, twist: Option<ElemId>) -> bool {
        match twist {
            None => self.bruhat_leq(u, v),
            Some(w) => {
                let wi = self.inverse(w);
                self.bruhat_leq(self.mul(wi, u), self.mul(wi, v))
            }
        }
    }

    /// 0-Hecke product: `T_u T_v = sign * T_z`. Folds the reduced word of
    /// `v` into `u`; a step that would shorten the element leaves it fixed
    /// and flips the sign.
    pub fn demazure_product(&self, u: ElemId, v: ElemId) -> (i8, ElemId) {
        let mut z = u;
        let mut sign = 1i8;
        for &i in self.word(v) {
            let zs = self.right[z][i];
            if self.length(zs) > self.length(z) {
                z = zs;
            } else {
                sign = -sign;
            }
        }
        (sign, z)
    }

    /// Longest element.
    pub fn longest(&self) -> ElemId {
        self.elements.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::RootType;
    use std::collections::HashSet;

    fn group(k: RootType, n: usize) -> CoxeterGroup {
        CoxeterGroup::new(RootSystem::new(k, n).unwrap()).unwrap()
    }

    /// All reduced words of `w`, by peeling right descents.
    fn reduced_words(g: &CoxeterGroup, w: ElemId) -> Vec<Vec<usize>> {
        if w == g.identity() {
            return vec![vec![]];
        }
        let mut out = vec![];
        for i in 0..g.rank() {
            let ws = g.mul_simple_right(w, i);
            if g.length(ws) < g.length(w) {
                for mut word in reduced_words(g, ws) {
                    word.push(i);
                    out.push(word);
                }
            }
        }
        out
    }

    /// Subword criterion: `u <= v` iff some reduced word of `v` has a subword
    /// that is a reduced word for `u`.
    fn subword_leq(g: &CoxeterGroup, u: ElemId, v: ElemId) -> bool {
        let lu = g.length(u);
        reduced_words(g, v).iter().any(|word| {
            (0u32..1 << word.len()).any(|mask| {
                if mask.count_ones() as usize != lu {
                    return false;
                }
                let sub: Vec<usize> = (0..word.len())
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| word[k])
                    .collect();
                g.from_word(&sub).unwrap() == u
            })
        })
    }

    #[test]
    fn group_orders() {
        assert_eq!(group(RootType::A, 1).order(), 2);
        let a2 = group(RootType::A, 2);
        assert_eq!(a2.order(), 6);
        assert_eq!(a2.length(a2.longest()), 3);
        let b2 = group(RootType::B, 2);
        assert_eq!(b2.order(), 8);
        assert_eq!(b2.length(b2.longest()), 4);
        assert_eq!(group(RootType::A, 3).order(), 24);
        assert_eq!(group(RootType::B, 3).order(), 48);
        assert_eq!(group(RootType::D, 4).order(), 192);
    }

    #[test]
    fn enumeration_is_sorted_and_closed() {
        let g = group(RootType::B, 3);
        let els = g.elements();
        assert!(els.windows(2).all(|p| (p[0].length, &p[0].word) < (p[1].length, &p[1].word)));
        let distinct: HashSet<&QMatrix> = els.iter().map(|e| &e.matrix).collect();
        assert_eq!(distinct.len(), els.len());
        for w in g.ids() {
            for i in 0..g.rank() {
                let m = els[w].matrix.mul(&g.root_system().simple_reflection(i));
                assert_eq!(g.find_matrix(&m), Some(g.mul_simple_right(w, i)));
            }
            assert_eq!(g.from_word(g.word(w)).unwrap(), w);
            assert_eq!(g.mul(w, g.inverse(w)), g.identity());
        }
    }

    #[test]
    fn elements_preserve_the_inner_product() {
        let g = group(RootType::C, 3);
        for e in g.elements() {
            assert_eq!(e.matrix.transpose().mul(&e.matrix), QMatrix::identity(3));
        }
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        for (k, n) in [(RootType::A, 2), (RootType::A, 3), (RootType::B, 2)] {
            let g = group(k, n);
            for u in g.ids() {
                for v in g.ids() {
                    assert_eq!(g.bruhat_leq(u, v), subword_leq(&g, u, v), "{k}{n} {u} {v}");
                }
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let g = group(RootType::A, 2);
        let s1 = g.from_word(&[0]).unwrap();
        let s2 = g.from_word(&[1]).unwrap();
        let top = g.from_word(&[0, 1, 0]).unwrap();
        for v in g.ids() {
            assert!(g.bruhat_leq(g.identity(), v));
        }
        assert!(!g.bruhat_leq(s1, s2));
        assert!(g.bruhat_leq(s1, top));
        // twisting by w: u <=^w v iff w^{-1}u <= w^{-1}v
        assert!(g.bruhat_leq_twisted(s1, g.identity(), Some(s1)));
    }

    #[test]
    fn demazure_examples() {
        let g = group(RootType::A, 2);
        let s1 = g.from_word(&[0]).unwrap();
        let s2 = g.from_word(&[1]).unwrap();
        assert_eq!(g.demazure_product(s1, s1), (-1, s1));
        for w in g.ids() {
            assert_eq!(g.demazure_product(g.identity(), w), (1, w));
        }
        assert_eq!(g.demazure_product(s1, s2), (1, g.from_word(&[0, 1]).unwrap()));
    }

    #[test]
    fn demazure_is_independent_of_reduced_word() {
        let g = group(RootType::A, 2);
        for u in g.ids() {
            for v in g.ids() {
                let expected = g.demazure_product(u, v);
                for word in reduced_words(&g, v) {
                    let mut z = u;
                    let mut sign = 1i8;
                    for i in word {
                        let zs = g.mul_simple_right(z, i);
                        if g.length(zs) > g.length(z) {
                            z = zs;
                        } else {
                            sign = -sign;
                        }
                    }
                    assert_eq!((sign, z), expected);
                }
            }
        }
    }

    #[test]
    fn demazure_dominates_both_factors_in_s4() {
        let g = group(RootType::A, 3);
        for u in g.ids() {
            for v in g.ids() {
                let (_, z) = g.demazure_product(u, v);
                assert!(g.bruhat_leq(u, z) && g.bruhat_leq(v, z));
            }
        }
    }

    #[test]
    fn bad_generator_is_rejected() {
        let g = group(RootType::A, 2);
        assert!(matches!(g.from_word(&[2]), Err(Error::Input(_))));
    }
}
