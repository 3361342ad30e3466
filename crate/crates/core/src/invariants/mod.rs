//! Valuative invariants of Coxeter matroids and generalized permutohedra.

mod cones;
mod ginv;
mod interlace;
mod sums;
mod valuation;

pub use cones::{f_invariant, g_plus_distinct, g_plus_invariant, reference_cone, tight_cone_hits, ConeHit, ConeLabel, OrbitLabel};
pub use ginv::{
    g_invariant, g_invariant_via_tc, schubert_decompose, schubert_matrix, specialize, SchubertMatrix,
};
pub use interlace::{
    delta_matroid, interlace_polynomial, subset_of_coset, subsets_of, InterlaceMode,
};
pub use sums::{FormalSum, Linear, UniPolynomial};
pub use valuation::{verify_valuation_relation, InvariantKind, ValuationReport};
