use std::collections::BTreeSet;

use crate::coxeter::RootSystem;
use crate::error::Result;
use crate::exactmath::{direction_class, project_onto_complement, row_basis, QVector};

use super::{Body, VPolytope};

/// Direction classes (primitive, first nonzero coordinate positive) of the
/// edges of `p`.
pub fn edge_directions(p: &VPolytope) -> Result<BTreeSet<QVector>> {
    Ok(p.edges()?
        .into_iter()
        .map(|(i, j)| direction_class(&(&p.vertices()[j] - &p.vertices()[i])))
        .collect())
}

/// Edge directions of `p` that are not parallel to any root.
pub fn non_root_edges(p: &VPolytope, rs: &RootSystem) -> Result<Vec<(usize, usize)>> {
    let roots = rs.root_directions();
    Ok(p.edges()?
        .into_iter()
        .filter(|&(i, j)| !roots.contains(&direction_class(&(&p.vertices()[j] - &p.vertices()[i]))))
        .collect())
}

/// Is `body` an extended deformation of the permutohedron of `rs`?
///
/// A polytope qualifies iff every edge is parallel to a root. A cone
/// qualifies iff its lineality space is spanned by roots and every extreme
/// ray is, modulo lineality, parallel to a root: its polar cone is then cut
/// out by reflection hyperplanes and so is a union of Coxeter cones.
pub fn is_extended_deformation(body: &Body, rs: &RootSystem) -> Result<bool> {
    if body.dim() != rs.ambient_dim() {
        return Ok(false);
    }
    match body {
        Body::Polytope(p) => Ok(non_root_edges(p, rs)?.is_empty()),
        Body::Cone(c) => {
            let d = rs.ambient_dim();
            let lin = c.lineality();
            let inside: Vec<QVector> = rs
                .positive_roots()
                .iter()
                .filter(|a| project_onto_complement(a, lin).is_zero())
                .cloned()
                .collect();
            if row_basis(&inside, d).len() != lin.len() {
                return Ok(false);
            }
            let classes: BTreeSet<QVector> = rs
                .positive_roots()
                .iter()
                .map(|a| project_onto_complement(a, lin))
                .filter(|a| !a.is_zero())
                .map(|a| direction_class(&a))
                .collect();
            Ok(c.rays().iter().all(|r| classes.contains(&direction_class(r))))
        }
    }
}
