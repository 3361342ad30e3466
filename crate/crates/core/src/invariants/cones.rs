use std::cmp::Ordering;
use std::sync::Arc;

use rayon::prelude::*;

use crate::coxeter::{CoxeterGroup, ElemId, Quotient, RootSystem};
use crate::error::{Error, Result};
use crate::exactmath::{int, project_onto_complement, QVector};
use crate::polyhedral::{is_extended_deformation, tight_translate, AffineCone, Body};

use super::sums::FormalSum;

/// `Cone(-alpha_j : j) + span(alpha_i : i in subset)` at the origin.
pub fn reference_cone(rs: &RootSystem, subset: &[usize]) -> Result<AffineCone> {
    let simple = rs.simple_roots();
    let gens = (0..rs.rank())
        .filter(|j| !subset.contains(j))
        .map(|j| -&simple[j])
        .collect();
    let lin = subset.iter().map(|&i| simple[i].clone()).collect();
    AffineCone::new(QVector::zeros(rs.ambient_dim()), gens, lin)
}

/// A translated cone of the fan: `w_B C_I + apex`, apex taken modulo the
/// lineality space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeLabel {
    pub subset: Vec<usize>,
    /// Reduced word of the minimal representative `w_B`.
    pub word: Vec<usize>,
    pub apex: QVector,
}

impl Ord for ConeLabel {
    fn cmp(&self, o: &Self) -> Ordering {
        (&self.subset, self.word.len(), &self.word, &self.apex).cmp(&(&o.subset, o.word.len(), &o.word, &o.apex))
    }
}

impl PartialOrd for ConeLabel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A `W`-orbit of translated cones: `(I, v)` with `v` reduced modulo
/// `span(alpha_i : i in I)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    pub subset: Vec<usize>,
    pub apex: QVector,
}

/// A cone of the fan that has a translate tightly containing the body.
#[derive(Clone, Debug)]
pub struct ConeHit {
    pub label: ConeLabel,
    pub cone: AffineCone,
    pub orbit: OrbitLabel,
    /// `|W_I|`
    pub stabilizer_order: usize,
}

struct FanCone {
    subset: Vec<usize>,
    rep: ElemId,
    stabilizer_order: usize,
    cone: AffineCone,
}

fn fan_cones(g: &Arc<CoxeterGroup>) -> Result<Vec<FanCone>> {
    let n = g.rank();
    let mut out = vec![];
    for mask in 0u32..1 << n {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let q = Quotient::new(g.clone(), &subset)?;
        let base = reference_cone(g.root_system(), &subset)?;
        for c in q.cosets() {
            out.push(FanCone {
                subset: subset.clone(),
                rep: c.min_rep,
                stabilizer_order: q.stabilizer_order(),
                cone: base.transform(g.matrix(c.min_rep))?,
            });
        }
    }
    Ok(out)
}

/// Every cone of the fan with a translate tightly containing `body`, with
/// that translate.
pub fn tight_cone_hits(body: &Body, g: &Arc<CoxeterGroup>) -> Result<Vec<ConeHit>> {
    let rs = g.root_system();
    if body.dim() != rs.ambient_dim() {
        return Err(Error::Input(format!(
            "body lives in dimension {}, the root system in {}",
            body.dim(),
            rs.ambient_dim()
        )));
    }
    if !is_extended_deformation(body, rs)? {
        return Err(Error::NotADeformation(
            "input is not an extended deformation of the permutohedron".into(),
        ));
    }
    let fan = fan_cones(g)?;
    let found: Vec<Option<ConeHit>> = fan
        .par_iter()
        .map(|fc| -> Result<Option<ConeHit>> {
            let Some(t) = tight_translate(&fc.cone, body)? else {
                return Ok(None);
            };
            let simple = rs.simple_roots();
            let span: Vec<QVector> = fc.subset.iter().map(|&i| simple[i].clone()).collect();
            let pulled = g.act(g.inverse(fc.rep), t.apex());
            Ok(Some(ConeHit {
                label: ConeLabel {
                    subset: fc.subset.clone(),
                    word: g.word(fc.rep).to_vec(),
                    apex: t.apex().clone(),
                },
                orbit: OrbitLabel {
                    subset: fc.subset.clone(),
                    apex: project_onto_complement(&pulled, &span),
                },
                cone: t,
                stabilizer_order: fc.stabilizer_order,
            }))
        })
        .collect::<Result<_>>()?;
    let mut hits: Vec<ConeHit> = found.into_iter().flatten().collect();
    hits.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(hits)
}

/// The universal valuation: the sum of the tightly containing translated
/// cones of the fan, each with coefficient one.
pub fn f_invariant(body: &Body, g: &Arc<CoxeterGroup>) -> Result<FormalSum<ConeLabel>> {
    Ok(tight_cone_hits(body, g)?.into_iter().map(|h| (h.label, int(1))).collect())
}

/// `sum_{(I,v)} (sum_{w in W} tc(w (C_I + v))(P)) U_{I,v}`. Each tightly
/// containing cone is reached by `|W_I|` group elements.
pub fn g_plus_invariant(body: &Body, g: &Arc<CoxeterGroup>) -> Result<FormalSum<OrbitLabel>> {
    Ok(tight_cone_hits(body, g)?
        .into_iter()
        .map(|h| (h.orbit, int(h.stabilizer_order as i64)))
        .collect())
}

/// Number of distinct tightly containing cones in each orbit class.
pub fn g_plus_distinct(body: &Body, g: &Arc<CoxeterGroup>) -> Result<FormalSum<OrbitLabel>> {
    Ok(tight_cone_hits(body, g)?.into_iter().map(|h| (h.orbit, int(1))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::RootType;
    use crate::polyhedral::{tangent_cone, VPolytope};
    use std::collections::BTreeSet;

    fn group(k: RootType, n: usize) -> Arc<CoxeterGroup> {
        Arc::new(CoxeterGroup::new(RootSystem::new(k, n).unwrap()).unwrap())
    }

    fn permutohedron(g: &CoxeterGroup) -> VPolytope {
        let rho = g.root_system().rho();
        VPolytope::new(g.ids().map(|w| g.act(w, &rho)).collect()).unwrap()
    }

    #[test]
    fn point_hits_every_cone() {
        let g = group(RootType::A, 2);
        let p = QVector::from_ints(&[1, 0, -1]);
        let f = f_invariant(&Body::Polytope(VPolytope::point(p.clone())), &g).unwrap();
        assert_eq!(f.len(), 6 + 3 + 3 + 1);
        let gp = g_plus_invariant(&Body::Polytope(VPolytope::point(QVector::zeros(3))), &g).unwrap();
        let distinct = g_plus_distinct(&Body::Polytope(VPolytope::point(QVector::zeros(3))), &g).unwrap();
        assert_eq!(gp.len(), 4);
        for (l, c) in gp.iter() {
            assert_eq!(c, &int(6));
            let expected = match l.subset.len() {
                0 => 6,
                1 => 3,
                _ => 1,
            };
            assert_eq!(distinct.get(l), int(expected));
        }
    }

    #[test]
    fn permutohedron_support_is_its_faces() {
        let g = group(RootType::A, 2);
        let p = permutohedron(&g);
        let hits = tight_cone_hits(&Body::Polytope(p.clone()), &g).unwrap();
        assert_eq!(hits.len(), 13);
        let cones: BTreeSet<AffineCone> = hits.into_iter().map(|h| h.cone).collect();
        let tangents: BTreeSet<AffineCone> = p
            .faces()
            .unwrap()
            .iter()
            .map(|f| tangent_cone(&p, &f.vertices).unwrap())
            .collect();
        assert_eq!(cones, tangents);
    }

    #[test]
    fn invariance_of_g_plus() {
        let g = group(RootType::B, 2);
        let p = VPolytope::new(vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[1, 1])]).unwrap();
        let base = g_plus_invariant(&Body::Polytope(p.clone()), &g).unwrap();
        for w in g.ids() {
            let moved = Body::Polytope(p.transform(g.matrix(w)).unwrap());
            assert_eq!(g_plus_invariant(&moved, &g).unwrap(), base);
        }
    }

    #[test]
    fn rejects_non_deformations() {
        let g = group(RootType::B, 2);
        let p = VPolytope::new(vec![QVector::from_ints(&[0, 0]), QVector::from_ints(&[1, 2])]).unwrap();
        assert!(matches!(
            f_invariant(&Body::Polytope(p), &g),
            Err(Error::NotADeformation(_))
        ));
    }
}
