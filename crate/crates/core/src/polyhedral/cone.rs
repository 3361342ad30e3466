use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    lp_feasible, orthogonal_complement, primitive, project_onto_complement, row_basis, QMatrix, QVector, Rational,
};

use super::hrep::{check_budget, for_each_subset, Constraint, HRep};

/// A translated polyhedral cone `apex + Cone(rays) + span(lineality)`.
///
/// Always kept in canonical form: the lineality basis is the reduced row
/// echelon basis of the lineality space scaled to primitive integer rows;
/// rays are the extreme rays modulo lineality, projected onto the orthogonal
/// complement of the lineality space, primitive and sorted; the apex is
/// projected onto that complement as well. Two cones describe the same set
/// iff their canonical forms are equal.
#[derive(Clone)]
pub struct AffineCone {
    apex: QVector,
    rays: Vec<QVector>,
    lineality: Vec<QVector>,
    hrep: OnceLock<HRep>,
}

impl PartialEq for AffineCone {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for AffineCone {}

impl Hash for AffineCone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for AffineCone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffineCone {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for AffineCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineCone")
            .field("apex", &self.apex)
            .field("rays", &self.rays)
            .field("lineality", &self.lineality)
            .finish()
    }
}

/// Is `x` in `Cone(gens) + span(lin)`?
pub(crate) fn in_cone(gens: &[QVector], lin: &[QVector], x: &QVector) -> Result<bool> {
    let g = gens.len();
    let nvars = g + lin.len();
    if nvars == 0 {
        return Ok(x.is_zero());
    }
    let ineqs: Vec<Constraint> = (0..g)
        .map(|j| (-QVector::unit(nvars, j), Rational::zero()))
        .collect();
    let eqs: Vec<Constraint> = (0..x.dim())
        .map(|c| (gens.iter().chain(lin).map(|v| v[c].clone()).collect(), x[c].clone()))
        .collect();
    Ok(lp_feasible(nvars, &ineqs, &eqs)?.is_some())
}

impl AffineCone {
    pub fn new(apex: QVector, generators: Vec<QVector>, lineality: Vec<QVector>) -> Result<Self> {
        let d = apex.dim();
        if let Some(v) = generators.iter().chain(&lineality).find(|v| v.dim() != d) {
            return Err(Error::Input(format!(
                "cone vector {v} has dimension {} but the apex has dimension {d}",
                v.dim()
            )));
        }
        let gens: Vec<QVector> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let mut lin_gens = lineality;
        for g in &gens {
            if in_cone(&gens, &lin_gens, &-g)? {
                lin_gens.push(g.clone());
            }
        }
        let lin: Vec<QVector> = row_basis(&lin_gens, d).iter().map(primitive).collect();

        let projected: BTreeSet<QVector> = gens
            .iter()
            .map(|g| primitive(&project_onto_complement(g, &lin)))
            .filter(|g| !g.is_zero())
            .collect();
        let mut rays: Vec<QVector> = projected.into_iter().collect();
        let mut i = 0;
        while i < rays.len() {
            let others: Vec<QVector> = rays
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| r.clone())
                .collect();
            if in_cone(&others, &[], &rays[i])? {
                rays.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(AffineCone {
            apex: project_onto_complement(&apex, &lin),
            rays,
            lineality: lin,
            hrep: OnceLock::new(),
        })
    }

    /// The whole space translated to nothing in particular.
    pub fn whole_space(dim: usize) -> Self {
        AffineCone {
            apex: QVector::zeros(dim),
            rays: vec![],
            lineality: (0..dim).map(|i| QVector::unit(dim, i)).collect(),
            hrep: OnceLock::new(),
        }
    }

    fn key(&self) -> (&QVector, &Vec<QVector>, &Vec<QVector>) {
        (&self.apex, &self.rays, &self.lineality)
    }

    pub fn dim(&self) -> usize {
        self.apex.dim()
    }

    /// Canonical apex (orthogonal to the lineality space).
    pub fn apex(&self) -> &QVector {
        &self.apex
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[QVector] {
        &self.lineality
    }

    /// Dimension of the cone itself.
    pub fn cone_dim(&self) -> usize {
        self.lineality.len() + self.pointed_dim()
    }

    fn pointed_dim(&self) -> usize {
        row_basis(&self.rays, self.dim()).len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Same cone, apex moved to `v` (then reduced modulo lineality).
    pub fn with_apex(&self, v: &QVector) -> AffineCone {
        AffineCone {
            apex: project_onto_complement(v, &self.lineality),
            rays: self.rays.clone(),
            lineality: self.lineality.clone(),
            hrep: OnceLock::new(),
        }
    }

    /// Image under an invertible linear map.
    pub fn transform(&self, m: &QMatrix) -> Result<AffineCone> {
        AffineCone::new(
            m.mul_vec(&self.apex),
            self.rays.iter().map(|r| m.mul_vec(r)).collect(),
            self.lineality.iter().map(|l| m.mul_vec(l)).collect(),
        )
    }

    /// Halfspace description. Inequalities are the facets `<n, x> <= <n, apex>`,
    /// equalities cut out the linear span of the cone through the apex.
    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| self.compute_hrep().expect("cone facets within budget"))
    }

    fn facet_normals(&self) -> Result<Vec<QVector>> {
        let d = self.dim();
        let span: Vec<QVector> = self.rays.iter().chain(&self.lineality).cloned().collect();
        let complement = orthogonal_complement(&span, d);
        let p = self.pointed_dim();
        if p == 0 {
            return Ok(vec![]);
        }
        check_budget(self.rays.len(), p - 1, "cone facet enumeration")?;
        let mut normals = BTreeSet::new();
        for_each_subset(self.rays.len(), p - 1, |subset| {
            let mut rows: Vec<QVector> = subset.iter().map(|&i| self.rays[i].clone()).collect();
            rows.extend(self.lineality.iter().cloned());
            rows.extend(complement.iter().cloned());
            let ns = orthogonal_complement(&rows, d);
            if ns.len() != 1 {
                return Ok(true);
            }
            let n = primitive(&ns[0]);
            let vals: Vec<Rational> = self.rays.iter().map(|r| n.dot(r)).collect();
            if vals.iter().all(|v| !v.is_positive()) {
                normals.insert(n);
            } else if vals.iter().all(|v| !v.is_negative()) {
                normals.insert(-n);
            }
            Ok(true)
        })?;
        Ok(normals.into_iter().collect())
    }

    fn compute_hrep(&self) -> Result<HRep> {
        let d = self.dim();
        let span: Vec<QVector> = self.rays.iter().chain(&self.lineality).cloned().collect();
        let eqs = orthogonal_complement(&span, d)
            .into_iter()
            .map(|n| {
                let n = primitive(&n);
                let b = n.dot(&self.apex);
                (n, b)
            })
            .collect();
        let ineqs = self
            .facet_normals()?
            .into_iter()
            .map(|n| {
                let b = n.dot(&self.apex);
                (n, b)
            })
            .collect();
        Ok(HRep { dim: d, eqs, ineqs })
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.hrep().contains(x)
    }

    /// Membership by linear programming, independent of the facet list.
    pub fn contains_lp(&self, x: &QVector) -> Result<bool> {
        in_cone(&self.rays, &self.lineality, &(x - &self.apex))
    }

    /// Is the direction `r` in the recession cone?
    pub fn contains_direction(&self, r: &QVector) -> bool {
        let h = self.hrep();
        h.eqs.iter().all(|(a, _)| a.dot(r).is_zero()) && h.ineqs.iter().all(|(a, _)| !a.dot(r).is_positive())
    }

    /// Does `x` lie on the flat `apex + span(lineality)`?
    pub fn on_lineality_flat(&self, x: &QVector) -> bool {
        project_onto_complement(&(x - &self.apex), &self.lineality).is_zero()
    }

    /// Set containment `other ⊆ self`.
    pub fn contains_cone(&self, other: &AffineCone) -> bool {
        self.contains(&other.apex)
            && other.rays.iter().all(|r| self.contains_direction(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains_direction(l) && self.contains_direction(&-l))
    }

    /// Nonempty faces as sets of ray indices, from the minimal face
    /// `apex + span(lineality)` (empty set) up to the cone itself.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let h = self.hrep();
        let facet_sets: Vec<Vec<usize>> = h
            .ineqs
            .iter()
            .map(|(n, _)| (0..self.rays.len()).filter(|&i| n.dot(&self.rays[i]).is_zero()).collect())
            .collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert((0..self.rays.len()).collect());
        sets.insert(vec![]);
        let mut frontier = facet_sets.clone();
        for f in &facet_sets {
            sets.insert(f.clone());
        }
        while let Some(s) = frontier.pop() {
            for f in &facet_sets {
                let meet: Vec<usize> = s.iter().copied().filter(|i| f.contains(i)).collect();
                if sets.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let mut faces: Vec<Vec<usize>> = sets.into_iter().collect();
        faces.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        faces
    }

    /// Affine tangent cones of this cone, one per face.
    pub fn tangent_cones(&self) -> Result<Vec<AffineCone>> {
        self.faces()
            .into_iter()
            .map(|face| {
                let mut lin = self.lineality.clone();
                lin.extend(face.iter().map(|&i| self.rays[i].clone()));
                AffineCone::new(self.apex.clone(), self.rays.clone(), lin)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn v(c: &[i64]) -> QVector {
        QVector::from_ints(c)
    }

    #[test]
    fn lineality_is_detected() {
        // halfplane y >= 0 written with redundant generators
        let c = AffineCone::new(v(&[3, 0]), vec![v(&[1, 0]), v(&[-1, 0]), v(&[1, 1]), v(&[2, 2])], vec![]).unwrap();
        assert_eq!(c.lineality(), &[v(&[1, 0])]);
        assert_eq!(c.rays(), &[v(&[0, 1])]);
        assert_eq!(c.apex(), &v(&[0, 0]));
        assert_eq!(c.hrep().ineqs, vec![(v(&[0, -1]), rat(0, 1))]);
    }

    #[test]
    fn non_extreme_rays_are_dropped() {
        let c = AffineCone::new(v(&[0, 0]), vec![v(&[1, 0]), v(&[1, 1]), v(&[0, 1])], vec![]).unwrap();
        assert_eq!(c.rays(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(c.hrep().ineqs.len(), 2);
    }

    #[test]
    fn equal_sets_have_equal_forms() {
        let a = AffineCone::new(v(&[0, 0]), vec![v(&[1, 0]), v(&[0, 2])], vec![]).unwrap();
        let b = AffineCone::new(v(&[0, 0]), vec![v(&[0, 1]), v(&[3, 0]), v(&[1, 1])], vec![]).unwrap();
        assert_eq!(a, b);
        let line1 = AffineCone::new(v(&[0, 1]), vec![], vec![v(&[1, 0])]).unwrap();
        let line2 = AffineCone::new(v(&[5, 1]), vec![v(&[-2, 0]), v(&[2, 0])], vec![]).unwrap();
        assert_eq!(line1, line2);
    }

    #[test]
    fn membership_routes_agree() {
        let c = AffineCone::new(v(&[1, 0, 0]), vec![v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[0, 0, 1]), v(&[0, 0, -1])], vec![]).unwrap();
        for x in -2..3 {
            for y in -2..3 {
                for z in -1..2 {
                    let p = v(&[x, y, z]);
                    assert_eq!(c.contains(&p), c.contains_lp(&p).unwrap(), "{p}");
                }
            }
        }
    }

    #[test]
    fn faces_of_a_quadrant_with_a_line() {
        let c = AffineCone::new(v(&[0, 0, 0]), vec![v(&[1, 0, 0]), v(&[0, 1, 0])], vec![v(&[0, 0, 1])]).unwrap();
        assert_eq!(c.faces().len(), 4);
        let tcs = c.tangent_cones().unwrap();
        assert_eq!(tcs[0], c);
        assert_eq!(tcs[3], AffineCone::whole_space(3));
    }

    #[test]
    fn containment_of_cones() {
        let big = AffineCone::new(v(&[0, 0]), vec![v(&[1, 0]), v(&[0, 1])], vec![]).unwrap();
        let small = AffineCone::new(v(&[1, 1]), vec![v(&[1, 1])], vec![]).unwrap();
        assert!(big.contains_cone(&small));
        assert!(!small.contains_cone(&big));
    }
}
