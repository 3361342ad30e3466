use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{lp_feasible, orthogonal_complement, primitive, row_basis, QMatrix, QVector, Rational};

use super::hrep::{check_budget, for_each_subset, normalize_halfspace, Constraint, HRep};

/// A facet: `<normal, x> <= offset` on the polytope with equality exactly on
/// `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: QVector,
    pub offset: Rational,
    pub vertices: Vec<usize>,
}

/// A nonempty face of a [`VPolytope`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Sorted indices into the parent's vertex list.
    pub vertices: Vec<usize>,
    /// Attains its maximum over the parent exactly on `vertices`.
    pub functional: QVector,
    pub dim: usize,
}

/// A bounded polytope given by its vertices.
#[derive(Clone, Debug)]
pub struct VPolytope {
    vertices: Vec<QVector>,
    facets: OnceLock<Vec<Facet>>,
    hrep: OnceLock<HRep>,
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for VPolytope {}

impl Hash for VPolytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

/// Is `x` a convex combination of `points`?
pub(crate) fn in_convex_hull(points: &[QVector], x: &QVector) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let m = points.len();
    let d = x.dim();
    let ineqs: Vec<Constraint> = (0..m)
        .map(|j| (-QVector::unit(m, j), Rational::zero()))
        .collect();
    let mut eqs: Vec<Constraint> = (0..d)
        .map(|c| (points.iter().map(|p| p[c].clone()).collect(), x[c].clone()))
        .collect();
    eqs.push((QVector::new(vec![Rational::one(); m]), Rational::one()));
    Ok(lp_feasible(m, &ineqs, &eqs)?.is_some())
}

/// Rank of the affine span of `points`.
pub(crate) fn affine_rank(points: &[QVector]) -> usize {
    match points.first() {
        None => 0,
        Some(p0) => {
            let diffs: Vec<QVector> = points[1..].iter().map(|p| p - p0).collect();
            row_basis(&diffs, p0.dim()).len()
        }
    }
}

impl VPolytope {
    /// Convex hull of `points`. Repeated points and points that are not
    /// vertices are dropped; the remaining vertices keep their input order.
    pub fn new(points: Vec<QVector>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Input("a polytope needs at least one point".into()));
        };
        let d = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != d) {
            return Err(Error::Input(format!(
                "point {p} has dimension {} but the first point has dimension {d}",
                p.dim()
            )));
        }
        let mut seen = BTreeSet::new();
        let distinct: Vec<QVector> = points.into_iter().filter(|p| seen.insert(p.clone())).collect();
        let mut keep = vec![true; distinct.len()];
        for i in 0..distinct.len() {
            let others: Vec<QVector> = (0..distinct.len())
                .filter(|&j| j != i && keep[j])
                .map(|j| distinct[j].clone())
                .collect();
            if in_convex_hull(&others, &distinct[i])? {
                keep[i] = false;
            }
        }
        let vertices = distinct
            .into_iter()
            .zip(keep)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();
        Ok(VPolytope {
            vertices,
            facets: OnceLock::new(),
            hrep: OnceLock::new(),
        })
    }

    pub fn point(p: QVector) -> Self {
        VPolytope {
            vertices: vec![p],
            facets: OnceLock::new(),
            hrep: OnceLock::new(),
        }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.vertices)
    }

    /// Canonical basis of the linear space parallel to the affine hull.
    pub fn direction_space(&self) -> Vec<QVector> {
        let p0 = &self.vertices[0];
        let diffs: Vec<QVector> = self.vertices[1..].iter().map(|p| p - p0).collect();
        row_basis(&diffs, self.dim())
    }

    /// Equations of the affine hull.
    pub fn hull_equations(&self) -> Vec<Constraint> {
        let p0 = &self.vertices[0];
        orthogonal_complement(&self.direction_space(), self.dim())
            .into_iter()
            .map(|n| {
                let n = primitive(&n);
                let b = n.dot(p0);
                (n, b)
            })
            .collect()
    }

    /// Membership by linear programming.
    pub fn contains(&self, x: &QVector) -> Result<bool> {
        in_convex_hull(&self.vertices, x)
    }

    /// Image under a linear map.
    pub fn transform(&self, m: &QMatrix) -> Result<VPolytope> {
        VPolytope::new(self.vertices.iter().map(|v| m.mul_vec(v)).collect())
    }

    pub fn translate(&self, t: &QVector) -> VPolytope {
        VPolytope {
            vertices: self.vertices.iter().map(|v| v + t).collect(),
            facets: OnceLock::new(),
            hrep: OnceLock::new(),
        }
    }

    /// Facets relative to the affine hull, found by trying every set of
    /// `affine_dim` vertices as a hyperplane through them.
    pub fn facets(&self) -> Result<&[Facet]> {
        if let Some(f) = self.facets.get() {
            return Ok(f);
        }
        let f = self.compute_facets()?;
        Ok(self.facets.get_or_init(|| f))
    }

    fn compute_facets(&self) -> Result<Vec<Facet>> {
        let k = self.affine_dim();
        if k == 0 {
            return Ok(vec![]);
        }
        let d = self.dim();
        let m = self.vertices.len();
        check_budget(m, k, "facet enumeration")?;
        let hull_normals: Vec<QVector> = self.hull_equations().into_iter().map(|(a, _)| a).collect();
        let mut found: BTreeMap<Vec<usize>, Facet> = BTreeMap::new();
        for_each_subset(m, k, |subset| {
            let base = &self.vertices[subset[0]];
            let mut span: Vec<QVector> = subset[1..].iter().map(|&i| &self.vertices[i] - base).collect();
            span.extend(hull_normals.iter().cloned());
            let normals = orthogonal_complement(&span, d);
            if normals.len() != 1 {
                return Ok(true);
            }
            let n = primitive(&normals[0]);
            let c = n.dot(base);
            let values: Vec<Rational> = self.vertices.iter().map(|v| n.dot(v)).collect();
            let (normal, offset) = if values.iter().all(|x| *x <= c) {
                (n, c)
            } else if values.iter().all(|x| *x >= c) {
                (-&n, -c)
            } else {
                return Ok(true);
            };
            let on: Vec<usize> = (0..m).filter(|&j| normal.dot(&self.vertices[j]) == offset).collect();
            found.entry(on.clone()).or_insert(Facet {
                normal,
                offset,
                vertices: on,
            });
            Ok(true)
        })?;
        Ok(found.into_values().collect())
    }

    /// Halfspace description: hull equations plus facet inequalities.
    pub fn hrep(&self) -> Result<&HRep> {
        if let Some(h) = self.hrep.get() {
            return Ok(h);
        }
        let ineqs = self
            .facets()?
            .iter()
            .map(|f| normalize_halfspace(&f.normal, &f.offset))
            .collect();
        let h = HRep {
            dim: self.dim(),
            eqs: self.hull_equations(),
            ineqs,
        };
        Ok(self.hrep.get_or_init(|| h))
    }

    /// Every nonempty face, including the polytope itself, sorted by
    /// `(dim, vertices)`.
    pub fn faces(&self) -> Result<Vec<Face>> {
        let facets = self.facets()?;
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(all);
        let mut frontier: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
        for f in &frontier {
            sets.insert(f.clone());
        }
        while let Some(s) = frontier.pop() {
            for f in facets {
                let meet: Vec<usize> = s.iter().copied().filter(|i| f.vertices.contains(i)).collect();
                if !meet.is_empty() && sets.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|vs| {
                let functional = facets
                    .iter()
                    .filter(|f| vs.iter().all(|i| f.vertices.contains(i)))
                    .fold(QVector::zeros(self.dim()), |acc, f| &acc + &f.normal);
                let pts: Vec<QVector> = vs.iter().map(|&i| self.vertices[i].clone()).collect();
                Face {
                    dim: affine_rank(&pts),
                    vertices: vs,
                    functional,
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        Ok(faces)
    }

    /// Vertex index pairs of the one-dimensional faces.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>> {
        if self.vertices.len() == 2 {
            return Ok(vec![(0, 1)]);
        }
        Ok(self
            .faces()?
            .into_iter()
            .filter(|f| f.dim == 1)
            .map(|f| (f.vertices[0], f.vertices[1]))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{lp_maximize, rat, LpOutcome};

    fn poly(pts: &[&[i64]]) -> VPolytope {
        VPolytope::new(pts.iter().map(|p| QVector::from_ints(p)).collect()).unwrap()
    }

    fn cube(d: usize) -> VPolytope {
        let pts = (0..1u32 << d)
            .map(|m| (0..d).map(|i| (m >> i & 1) as i64).collect::<Vec<_>>())
            .map(|c| QVector::from_ints(&c))
            .collect();
        VPolytope::new(pts).unwrap()
    }

    /// Face test by linear programming: a vertex subset is exposed iff some
    /// functional is maximised on exactly those vertices. Enumerated over all
    /// subsets.
    fn exposed_subsets(p: &VPolytope) -> BTreeSet<Vec<usize>> {
        let m = p.vertices().len();
        let d = p.dim();
        let mut out = BTreeSet::new();
        for mask in 1u32..1 << m {
            let inside: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let outside: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 0).collect();
            // variables (y, t, s): <y,v_i> = t on inside, <y,v_j> + s <= t outside, s <= 1; maximise s
            let v = |i: usize, ty: i64, ts: i64| {
                let mut row = p.vertices()[i].clone().into_inner();
                row.push(rat(ty, 1));
                row.push(rat(ts, 1));
                QVector::new(row)
            };
            let eqs: Vec<Constraint> = inside.iter().map(|&i| (v(i, -1, 0), Rational::zero())).collect();
            let mut ineqs: Vec<Constraint> = outside.iter().map(|&j| (v(j, -1, 1), Rational::zero())).collect();
            ineqs.push((QVector::unit(d + 2, d + 1), Rational::one()));
            let exposed = if outside.is_empty() {
                true
            } else {
                match lp_maximize(d + 2, &ineqs, &eqs, &QVector::unit(d + 2, d + 1)).unwrap() {
                    LpOutcome::Optimal { value, .. } => value > Rational::zero(),
                    _ => false,
                }
            };
            if exposed {
                out.insert(inside);
            }
        }
        out
    }

    #[test]
    fn duplicates_and_interior_points_are_dropped() {
        let p = poly(&[&[0, 0], &[2, 0], &[1, 0], &[0, 2], &[2, 0]]);
        assert_eq!(p.vertices().len(), 3);
        assert!(VPolytope::new(vec![]).is_err());
        assert!(VPolytope::new(vec![QVector::from_ints(&[1]), QVector::from_ints(&[1, 2])]).is_err());
    }

    #[test]
    fn face_counts() {
        assert_eq!(poly(&[&[0, 0]]).faces().unwrap().len(), 1);
        assert_eq!(poly(&[&[0, 0], &[1, 0]]).faces().unwrap().len(), 3);
        assert_eq!(cube(2).faces().unwrap().len(), 9);
        assert_eq!(cube(3).faces().unwrap().len(), 27);
    }

    #[test]
    fn faces_match_exposed_subset_oracle() {
        for p in [
            cube(2),
            cube(3),
            poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            // a pentagon lying in a plane of R^3
            poly(&[&[0, 0, 1], &[2, 0, 1], &[3, 1, 1], &[1, 3, 1], &[-1, 1, 1]]),
        ] {
            let ours: BTreeSet<Vec<usize>> = p.faces().unwrap().into_iter().map(|f| f.vertices).collect();
            assert_eq!(ours, exposed_subsets(&p));
        }
    }

    #[test]
    fn face_functionals_expose_their_faces() {
        let p = poly(&[&[0, 0, 1], &[2, 0, 1], &[3, 1, 1], &[1, 3, 1], &[-1, 1, 1]]);
        for f in p.faces().unwrap() {
            let vals: Vec<Rational> = p.vertices().iter().map(|v| f.functional.dot(v)).collect();
            let max = vals.iter().max().unwrap();
            let argmax: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == *max).collect();
            assert_eq!(argmax, f.vertices);
        }
    }

    #[test]
    fn hrep_agrees_with_lp_membership() {
        let p = poly(&[&[0, 0, 1], &[2, 0, 1], &[3, 1, 1], &[1, 3, 1], &[-1, 1, 1]]);
        let h = p.hrep().unwrap();
        for x in -2..5 {
            for y in -2..5 {
                for z in 0..3 {
                    let q = QVector::from_ints(&[x, y, z]);
                    assert_eq!(h.contains(&q), p.contains(&q).unwrap());
                }
            }
        }
    }
}
