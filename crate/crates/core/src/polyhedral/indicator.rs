use std::collections::BTreeSet;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactmath::{orthogonal_complement, primitive, row_basis, strict_point, QVector, Rational};

use super::hrep::{normalize_hyperplane, Constraint};
use super::{AffineCone, Body, VPolytope};

/// Largest hyperplane arrangement the relation checker will refine.
pub const MAX_HYPERPLANES: usize = 64;
/// Largest number of arrangement faces the relation checker will visit.
pub const MAX_CELLS: usize = 200_000;

/// `sum_i a_i 1_{P_i}` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedPolyhedralSum {
    terms: Vec<(i64, Body)>,
}

impl SignedPolyhedralSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: Vec<(i64, Body)>) -> Self {
        SignedPolyhedralSum { terms }
    }

    pub fn push(&mut self, coeff: i64, body: impl Into<Body>) {
        self.terms.push((coeff, body.into()));
    }

    pub fn terms(&self) -> &[(i64, Body)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn extend(&mut self, other: &SignedPolyhedralSum) {
        self.terms.extend(other.terms.iter().cloned());
    }

    pub fn negated(&self) -> SignedPolyhedralSum {
        SignedPolyhedralSum {
            terms: self.terms.iter().map(|(c, b)| (-c, b.clone())).collect(),
        }
    }

    fn dim(&self) -> Result<Option<usize>> {
        let Some((_, first)) = self.terms.first() else {
            return Ok(None);
        };
        let d = first.dim();
        if self.terms.iter().any(|(_, b)| b.dim() != d) {
            return Err(Error::Input("bodies of different dimensions in one sum".into()));
        }
        Ok(Some(d))
    }
}

/// `sum_F (-1)^{dim F} 1_{C_F + v_F}` over all faces of a polytope.
pub fn brianchon_gram(q: &VPolytope) -> Result<SignedPolyhedralSum> {
    let mut out = SignedPolyhedralSum::new();
    for face in q.faces()? {
        let sign = if face.dim % 2 == 0 { 1 } else { -1 };
        out.push(sign, tangent_cone(q, &face.vertices)?);
    }
    Ok(out)
}

/// Tangent cone `Cone(v' - v : v in F, v' in P)` of `p` at the face with the
/// given vertex indices, anchored at its first vertex.
pub fn tangent_cone(p: &VPolytope, face: &[usize]) -> Result<AffineCone> {
    let v0 = &p.vertices()[face[0]];
    let mut gens: Vec<QVector> = p.vertices().iter().map(|v| v - v0).collect();
    gens.extend(face.iter().map(|&i| v0 - &p.vertices()[i]));
    AffineCone::new(v0.clone(), gens, vec![])
}

/// Value of the indicator combination at `x`, using linear-programming
/// membership.
pub fn indicator_eval(s: &SignedPolyhedralSum, x: &QVector) -> Result<i64> {
    let mut total = 0;
    for (c, b) in s.terms() {
        if b.dim() != x.dim() {
            return Err(Error::Input("evaluation point has the wrong dimension".into()));
        }
        if b.contains_lp(x)? {
            total += c;
        }
    }
    Ok(total)
}

/// Decides whether `sum a_i 1_{P_i}` vanishes identically.
pub fn verify_indicator_relation(s: &SignedPolyhedralSum) -> Result<bool> {
    Ok(indicator_counterexample(s)?.is_none())
}

/// A point where the combination is nonzero, or `None` if it vanishes.
///
/// Every body is an intersection of closed halfspaces and hyperplanes from a
/// finite arrangement, so the combination is constant on each relatively
/// open face of that arrangement. All faces inside the affine hull of the
/// bodies are enumerated by refining sign vectors one hyperplane at a time,
/// with a strict linear program producing a relative-interior point of each.
pub fn indicator_counterexample(s: &SignedPolyhedralSum) -> Result<Option<QVector>> {
    let Some(d) = s.dim()? else {
        return Ok(None);
    };

    let mut points: Vec<QVector> = vec![];
    let mut directions: Vec<QVector> = vec![];
    for (_, b) in s.terms() {
        match b {
            Body::Polytope(p) => points.extend(p.vertices().iter().cloned()),
            Body::Cone(c) => {
                points.push(c.apex().clone());
                directions.extend(c.rays().iter().cloned());
                directions.extend(c.lineality().iter().cloned());
            }
        }
    }
    let p0 = points[0].clone();
    directions.extend(points[1..].iter().map(|p| p - &p0));
    let span = row_basis(&directions, d);
    let hull: Vec<Constraint> = orthogonal_complement(&span, d)
        .into_iter()
        .map(|n| {
            let n = primitive(&n);
            let b = n.dot(&p0);
            (n, b)
        })
        .collect();

    // Hyperplanes of every body, restricted to the hull.
    let mut planes: BTreeSet<Constraint> = BTreeSet::new();
    for (_, b) in s.terms() {
        let h = b.hrep()?;
        for (a, rhs) in h.eqs.iter().chain(&h.ineqs) {
            let along = project_onto(a, &span);
            let shift = (a - &along).dot(&p0);
            if let Some(plane) = normalize_hyperplane(&along, &(rhs - shift)) {
                planes.insert(plane);
            }
        }
    }
    if planes.len() > MAX_HYPERPLANES {
        return Err(Error::Capacity(format!(
            "{} hyperplanes exceed the arrangement limit of {MAX_HYPERPLANES}",
            planes.len()
        )));
    }
    let planes: Vec<Constraint> = planes.into_iter().collect();

    let value_at = |x: &QVector| -> Result<i64> {
        let mut total = 0;
        for (c, b) in s.terms() {
            if b.contains(x)? {
                total += c;
            }
        }
        Ok(total)
    };

    struct Node {
        strict: Vec<Constraint>,
        eqs: Vec<Constraint>,
        witness: QVector,
    }
    let mut stack = vec![(
        0usize,
        Node {
            strict: vec![],
            eqs: hull.clone(),
            witness: p0,
        },
    )];
    let mut visited = 0usize;
    while let Some((level, node)) = stack.pop() {
        visited += 1;
        if visited > MAX_CELLS {
            return Err(Error::Capacity(format!(
                "hyperplane arrangement has more than {MAX_CELLS} faces"
            )));
        }
        if level == planes.len() {
            if value_at(&node.witness)? != 0 {
                return Ok(Some(node.witness));
            }
            continue;
        }
        let (a, b) = &planes[level];
        let current = (a.dot(&node.witness) - b).signum();
        for sign in [-1i32, 0, 1] {
            let mut strict = node.strict.clone();
            let mut eqs = node.eqs.clone();
            match sign {
                -1 => strict.push((a.clone(), b.clone())),
                1 => strict.push((-a, -b)),
                _ => eqs.push((a.clone(), b.clone())),
            }
            let witness = if Rational::from_integer(sign.into()) == current {
                Some(node.witness.clone())
            } else {
                strict_point(d, &strict, &[], &eqs)?
            };
            if let Some(witness) = witness {
                stack.push((level + 1, Node { strict, eqs, witness }));
            }
        }
    }
    Ok(None)
}

/// Orthogonal projection of `a` onto `span(basis)`.
fn project_onto(a: &QVector, basis: &[QVector]) -> QVector {
    a - &crate::exactmath::project_onto_complement(a, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> QVector {
        QVector::from_ints(c)
    }

    fn poly(pts: &[&[i64]]) -> VPolytope {
        VPolytope::new(pts.iter().map(|p| v(p)).collect()).unwrap()
    }

    fn bg_minus_self(q: &VPolytope) -> SignedPolyhedralSum {
        let mut s = brianchon_gram(q).unwrap();
        s.push(-1, q.clone());
        s
    }

    #[test]
    fn tangent_cone_examples() {
        let seg = poly(&[&[0, 0], &[1, 0]]);
        let ray = tangent_cone(&seg, &[0]).unwrap();
        assert_eq!(ray.rays(), &[v(&[1, 0])]);
        assert!(ray.lineality().is_empty());

        let square = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(tangent_cone(&square, &[0, 1, 2, 3]).unwrap(), AffineCone::whole_space(2));

        let triangle = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let half = tangent_cone(&triangle, &[0, 1]).unwrap();
        assert_eq!(half.lineality(), &[v(&[1, 0])]);
        assert_eq!(half.rays(), &[v(&[0, 1])]);
        assert_eq!(half.apex(), &v(&[0, 0]));
    }

    #[test]
    fn trivial_relations() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let mut s = SignedPolyhedralSum::new();
        s.push(1, p.clone());
        s.push(-1, p);
        assert!(verify_indicator_relation(&s).unwrap());
        let mut s = SignedPolyhedralSum::new();
        s.push(1, poly(&[&[0, 0]]));
        s.push(-1, poly(&[&[1, 0]]));
        assert!(!verify_indicator_relation(&s).unwrap());
        assert!(verify_indicator_relation(&SignedPolyhedralSum::new()).unwrap());
    }

    #[test]
    fn inclusion_exclusion_of_two_segments() {
        let mut s = SignedPolyhedralSum::new();
        s.push(1, poly(&[&[0, 0], &[0, 1]]));
        s.push(1, poly(&[&[0, 0], &[0, -1]]));
        s.push(-1, poly(&[&[0, 1], &[0, -1]]));
        s.push(-1, poly(&[&[0, 0]]));
        assert!(verify_indicator_relation(&s).unwrap());
        // dropping the intersection breaks it exactly at the origin
        let broken = SignedPolyhedralSum::from_terms(s.terms()[..3].to_vec());
        assert_eq!(indicator_counterexample(&broken).unwrap(), Some(v(&[0, 0])));
    }

    #[test]
    fn brianchon_gram_small_polytopes() {
        let point = poly(&[&[2, 3]]);
        let bg = brianchon_gram(&point).unwrap();
        assert_eq!(bg.len(), 1);
        assert!(verify_indicator_relation(&bg_minus_self(&point)).unwrap());

        let segment = poly(&[&[0, 0], &[1, 0]]);
        let bg = brianchon_gram(&segment).unwrap();
        assert_eq!(bg.terms().iter().map(|t| t.0).collect::<Vec<_>>(), vec![1, 1, -1]);
        assert_eq!(indicator_eval(&bg, &v(&[0, 0])).unwrap(), 1);
        assert_eq!(indicator_eval(&bg, &v(&[3, 0])).unwrap(), 0);
        assert_eq!(indicator_eval(&bg, &v(&[0, 1])).unwrap(), 0);
        assert!(verify_indicator_relation(&bg_minus_self(&segment)).unwrap());

        let triangle = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let bg = brianchon_gram(&triangle).unwrap();
        let signs: Vec<i64> = bg.terms().iter().map(|t| t.0).collect();
        assert_eq!(signs, vec![1, 1, 1, -1, -1, -1, 1]);
        let bary = QVector::new(vec![Rational::new(1.into(), 3.into()); 2]);
        assert_eq!(indicator_eval(&bg, &bary).unwrap(), 1);
        assert!(verify_indicator_relation(&bg_minus_self(&triangle)).unwrap());
    }

    #[test]
    fn cube_in_higher_ambient_space() {
        let cube = poly(&[
            &[0, 0, 0, 1],
            &[1, 0, 0, 1],
            &[0, 1, 0, 1],
            &[1, 1, 0, 1],
            &[0, 0, 1, 1],
            &[1, 0, 1, 1],
            &[0, 1, 1, 1],
            &[1, 1, 1, 1],
        ]);
        assert!(verify_indicator_relation(&bg_minus_self(&cube)).unwrap());
    }

    #[test]
    fn brianchon_gram_is_not_trivially_satisfied() {
        let triangle = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let mut s = brianchon_gram(&triangle).unwrap();
        s.push(-1, poly(&[&[0, 0], &[1, 0]]));
        let x = indicator_counterexample(&s).unwrap().unwrap();
        assert_ne!(indicator_eval(&s, &x).unwrap(), 0);
    }

    #[test]
    fn witness_points_agree_with_lp_evaluation() {
        let triangle = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        let bg = brianchon_gram(&triangle).unwrap();
        for x in -1..4 {
            for y in -1..4 {
                let p = v(&[x, y]);
                let inside = triangle.contains(&p).unwrap() as i64;
                assert_eq!(indicator_eval(&bg, &p).unwrap(), inside);
            }
        }
    }
}
