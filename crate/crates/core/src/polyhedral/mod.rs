//! Exact polytopes and translated cones: faces, tangent cones, tight
//! containment, Brianchon-Gram sums and indicator-function relations.

mod cone;
mod containment;
mod deformation;
mod hrep;
mod indicator;
mod polytope;

pub use cone::AffineCone;
pub use containment::{polar_interior_point, tight_translate, tightly_contains, tightly_contains_lp, Body};
pub use deformation::{edge_directions, is_extended_deformation, non_root_edges};
pub use hrep::{enumerate_vertices, normalize_halfspace, normalize_hyperplane, Constraint, HRep, MAX_SUBSETS};
pub use indicator::{
    brianchon_gram, indicator_counterexample, indicator_eval, tangent_cone, verify_indicator_relation,
    SignedPolyhedralSum, MAX_CELLS, MAX_HYPERPLANES,
};
pub use polytope::{Face, Facet, VPolytope};
