use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{lp_feasible, QMatrix, QVector, Rational};

use super::hrep::{Constraint, HRep};
use super::{AffineCone, VPolytope};

/// A polytope or a translated cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Body {
    Polytope(VPolytope),
    Cone(AffineCone),
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Polytope(p) => p.dim(),
            Body::Cone(c) => c.dim(),
        }
    }

    pub fn hrep(&self) -> Result<&HRep> {
        match self {
            Body::Polytope(p) => p.hrep(),
            Body::Cone(c) => Ok(c.hrep()),
        }
    }

    /// Membership through the halfspace description.
    pub fn contains(&self, x: &QVector) -> Result<bool> {
        Ok(self.hrep()?.contains(x))
    }

    /// Membership through a linear program over the generators.
    pub fn contains_lp(&self, x: &QVector) -> Result<bool> {
        match self {
            Body::Polytope(p) => p.contains(x),
            Body::Cone(c) => c.contains_lp(x),
        }
    }

    pub fn transform(&self, m: &QMatrix) -> Result<Body> {
        Ok(match self {
            Body::Polytope(p) => Body::Polytope(p.transform(m)?),
            Body::Cone(c) => Body::Cone(c.transform(m)?),
        })
    }
}

impl From<VPolytope> for Body {
    fn from(p: VPolytope) -> Self {
        Body::Polytope(p)
    }
}

impl From<AffineCone> for Body {
    fn from(c: AffineCone) -> Self {
        Body::Cone(c)
    }
}

/// Does `cone` tightly contain `body`: `body ⊆ cone` and `body` meets the
/// flat `apex + lineal(cone)`?
///
/// For a polytope inside the cone, the sum of the facet functionals
/// (shifted to vanish at the apex) is nonpositive on the polytope and zero
/// exactly on that flat, so the flat is met iff some vertex lies on it.
/// For a cone inside the cone, the same functional is maximised at the apex.
pub fn tightly_contains(cone: &AffineCone, body: &Body) -> bool {
    match body {
        Body::Polytope(p) => {
            p.vertices().iter().all(|v| cone.contains(v))
                && p.vertices().iter().any(|v| cone.on_lineality_flat(v))
        }
        Body::Cone(c) => cone.contains_cone(c) && cone.on_lineality_flat(c.apex()),
    }
}

/// Same decision with a linear program for each half of the definition;
/// slower, kept as an independent route.
pub fn tightly_contains_lp(cone: &AffineCone, p: &VPolytope) -> Result<bool> {
    for v in p.vertices() {
        if !cone.contains_lp(v)? {
            return Ok(false);
        }
    }
    // sum lambda_j v_j - apex in span(lineality), lambda in the simplex
    let m = p.vertices().len();
    let l = cone.lineality().len();
    let nvars = m + l;
    let d = cone.dim();
    let ineqs: Vec<Constraint> = (0..m)
        .map(|j| (-QVector::unit(nvars, j), Rational::zero()))
        .collect();
    let mut eqs: Vec<Constraint> = (0..d)
        .map(|c| {
            let row: QVector = p
                .vertices()
                .iter()
                .map(|v| v[c].clone())
                .chain(cone.lineality().iter().map(|x| -x[c].clone()))
                .collect();
            (row, cone.apex()[c].clone())
        })
        .collect();
    let mut sum = QVector::zeros(nvars);
    for j in 0..m {
        sum[j] = Rational::one();
    }
    eqs.push((sum, Rational::one()));
    Ok(lp_feasible(nvars, &ineqs, &eqs)?.is_some())
}

/// A functional in the relative interior of the polar cone
/// `{y : <y, r> <= 0 for rays r, <y, l> = 0 for lineality l}`, restricted to
/// the linear span of the cone.
pub fn polar_interior_point(cone: &AffineCone) -> Result<QVector> {
    let d = cone.dim();
    let ineqs: Vec<Constraint> = cone.rays().iter().map(|r| (r.clone(), -Rational::one())).collect();
    let mut eqs: Vec<Constraint> = cone.lineality().iter().map(|l| (l.clone(), Rational::zero())).collect();
    eqs.extend(cone.hrep().eqs.iter().map(|(a, _)| (a.clone(), Rational::zero())));
    lp_feasible(d, &ineqs, &eqs)?
        .ok_or_else(|| Error::Internal("canonical rays of a cone are not pointed".into()))
}

/// The unique translate of `cone` (its apex is ignored) that tightly contains
/// `body`, if any.
///
/// A functional `y` from the interior of the polar cone is maximised over the
/// body; any tight translate must put a maximiser on its lineality flat, so
/// anchoring at one maximiser decides the question.
pub fn tight_translate(cone: &AffineCone, body: &Body) -> Result<Option<AffineCone>> {
    let candidate = match body {
        Body::Polytope(p) => {
            let y = polar_interior_point(cone)?;
            let best = p
                .vertices()
                .iter()
                .max_by(|a, b| y.dot(a).cmp(&y.dot(b)))
                .expect("nonempty polytope");
            cone.with_apex(best)
        }
        Body::Cone(c) => cone.with_apex(c.apex()),
    };
    Ok(tightly_contains(&candidate, body).then_some(candidate))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> QVector {
        QVector::from_ints(c)
    }

    fn poly(pts: &[&[i64]]) -> Body {
        Body::Polytope(VPolytope::new(pts.iter().map(|p| v(p)).collect()).unwrap())
    }

    fn cone(apex: &[i64], gens: &[&[i64]]) -> AffineCone {
        AffineCone::new(v(apex), gens.iter().map(|g| v(g)).collect(), vec![]).unwrap()
    }

    #[test]
    fn counterexample_cone() {
        let c = cone(&[0, 0], &[&[1, 0], &[1, 1]]);
        assert!(tightly_contains(&c, &poly(&[&[0, 0]])));
        assert!(!tightly_contains(&c, &poly(&[&[0, 0], &[0, 1]])));
        assert!(!tightly_contains(&c, &poly(&[&[0, 0], &[0, -1]])));
        assert!(!tightly_contains(&c, &poly(&[&[0, 1], &[0, -1]])));
        // contained but misses the apex
        assert!(!tightly_contains(&c, &poly(&[&[1, 0], &[2, 1]])));
    }

    #[test]
    fn translate_examples() {
        let whole = AffineCone::whole_space(2);
        let t = tight_translate(&whole, &poly(&[&[3, 4], &[1, 1]])).unwrap().unwrap();
        assert_eq!(t.apex(), &v(&[0, 0]));

        let quad = cone(&[0, 0], &[&[1, 0], &[0, 1]]);
        let t = tight_translate(&quad, &poly(&[&[1, 1], &[2, 1]])).unwrap().unwrap();
        assert_eq!(t.apex(), &v(&[1, 1]));

        let ray = cone(&[0, 0], &[&[1, 0]]);
        assert!(tight_translate(&ray, &poly(&[&[0, 0], &[0, 1]])).unwrap().is_none());
    }

    #[test]
    fn translate_matches_exhaustive_anchor_search() {
        let cones = [
            cone(&[0, 0], &[&[1, 0], &[0, 1]]),
            cone(&[0, 0], &[&[1, 0], &[1, 1]]),
            cone(&[0, 0], &[&[1, -1]]),
            AffineCone::new(v(&[0, 0]), vec![v(&[0, 1])], vec![v(&[1, 0])]).unwrap(),
        ];
        let bodies = [
            poly(&[&[0, 0]]),
            poly(&[&[1, 1], &[2, 1]]),
            poly(&[&[0, 0], &[1, 0], &[0, 1]]),
            poly(&[&[0, 0], &[1, -1]]),
            poly(&[&[0, 0], &[2, 1], &[1, 2]]),
        ];
        for c in &cones {
            for b in &bodies {
                let Body::Polytope(p) = b else { unreachable!() };
                // anchors at every vertex and every lattice point nearby
                let mut anchors: Vec<QVector> = p.vertices().to_vec();
                for x in -2..4 {
                    for y in -2..4 {
                        anchors.push(v(&[x, y]));
                    }
                }
                let hits: std::collections::BTreeSet<AffineCone> = anchors
                    .iter()
                    .map(|a| c.with_apex(a))
                    .filter(|t| tightly_contains(t, b))
                    .collect();
                assert!(hits.len() <= 1);
                let ours = tight_translate(c, b).unwrap();
                assert_eq!(ours, hits.into_iter().next(), "{c:?} {b:?}");
                if let Some(t) = ours {
                    assert!(tightly_contains_lp(&t, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn lp_route_agrees() {
        let c = cone(&[0, 0], &[&[1, 0], &[1, 1]]);
        for b in [&[&[0, 0][..]][..], &[&[0, 0], &[0, 1]], &[&[1, 0], &[2, 1]], &[&[0, 0], &[3, 1]]] {
            let Body::Polytope(p) = poly(b) else { unreachable!() };
            assert_eq!(tightly_contains(&c, &Body::Polytope(p.clone())), tightly_contains_lp(&c, &p).unwrap());
        }
    }

    #[test]
    fn cone_in_cone() {
        let big = AffineCone::new(v(&[0, 0]), vec![v(&[0, 1])], vec![v(&[1, 0])]).unwrap();
        let small = cone(&[5, 0], &[&[1, 1], &[-1, 1]]);
        assert!(tightly_contains(&big, &Body::Cone(small.clone())));
        assert!(!tightly_contains(&big, &Body::Cone(cone(&[5, 1], &[&[1, 1]]))));
        let t = tight_translate(&big, &Body::Cone(small)).unwrap().unwrap();
        assert_eq!(t, big);
    }
}
