use crate::coxeter::{CosetId, Quotient};
use crate::error::Result;
use crate::exactmath::QVector;
use crate::polyhedral::{enumerate_vertices, non_root_edges, Constraint, VPolytope};

/// A weight point `v` whose root-cone slice is not a base polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityWitness {
    pub coset: CosetId,
    pub point: QVector,
    /// Vertices of the slice that are not weight points.
    pub stray_vertices: Vec<QVector>,
    /// Edges of the slice that are not parallel to a root.
    pub bad_edges: Vec<(QVector, QVector)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub stable: bool,
    pub witnesses: Vec<StabilityWitness>,
}

/// Vertices of `(v - Cone(alpha_1, ..., alpha_n)) ∩ P_{W/W_I}` for the weight
/// point `v` of coset `b`.
pub fn root_cone_slice(q: &Quotient, b: CosetId) -> Result<Vec<QVector>> {
    let rs = q.group().root_system();
    let full = VPolytope::new(q.cosets().iter().map(|c| c.delta.clone()).collect())?;
    let h = full.hrep()?;
    let v = q.delta(b);
    let mut ineqs: Vec<Constraint> = h.ineqs.clone();
    ineqs.extend(rs.fundamental_weights().iter().map(|w| (w.clone(), w.dot(v))));
    enumerate_vertices(full.dim(), &h.eqs, &ineqs)
}

/// Slices the full orbit polytope by the negative root cone at every weight
/// point and checks that each slice is again a base polytope: its vertices
/// are weight points and its edges are parallel to roots.
pub fn check_intersection_stability(q: &Quotient) -> Result<StabilityReport> {
    let rs = q.group().root_system();
    let mut witnesses = vec![];
    for c in q.cosets() {
        let verts = root_cone_slice(q, c.id)?;
        let stray: Vec<QVector> = verts.iter().filter(|x| q.find_delta(x).is_none()).cloned().collect();
        let slice = VPolytope::new(verts)?;
        let bad_edges: Vec<(QVector, QVector)> = non_root_edges(&slice, rs)?
            .into_iter()
            .map(|(i, j)| (slice.vertices()[i].clone(), slice.vertices()[j].clone()))
            .collect();
        if !stray.is_empty() || !bad_edges.is_empty() {
            witnesses.push(StabilityWitness {
                coset: c.id,
                point: c.delta.clone(),
                stray_vertices: stray,
                bad_edges,
            });
        }
    }
    Ok(StabilityReport {
        stable: witnesses.is_empty(),
        witnesses,
    })
}
