#![allow(dead_code)]

use std::sync::Arc;

use coxval::coxeter::{CosetId, CoxeterGroup, Quotient, RootSystem, RootType};
use coxval::matroid::CoxeterMatroid;

pub fn group(kind: RootType, rank: usize) -> Arc<CoxeterGroup> {
    Arc::new(CoxeterGroup::new(RootSystem::new(kind, rank).unwrap()).unwrap())
}

pub fn quotient(kind: RootType, rank: usize, subset: &[usize]) -> Arc<Quotient> {
    Arc::new(Quotient::new(group(kind, rank), subset).unwrap())
}

/// `(B_n, [n] minus n)`, whose cosets are the subsets of `[n]`.
pub fn delta_quotient(n: usize) -> Arc<Quotient> {
    quotient(RootType::B, n, &(0..n - 1).collect::<Vec<_>>())
}

pub fn subsets_of_mask(len: usize, mask: u64) -> Vec<CosetId> {
    (0..len).filter(|i| mask >> i & 1 == 1).collect()
}

/// Every Coxeter matroid of the quotient, by exhaustive enumeration.
pub fn all_matroids(q: &Arc<Quotient>) -> Vec<CoxeterMatroid> {
    (1u64..1 << q.len())
        .filter_map(|mask| CoxeterMatroid::new(q.clone(), &subsets_of_mask(q.len(), mask)).ok())
        .collect()
}

/// Subsets of `[rank]` as 0-based index lists.
pub fn all_subsets(rank: usize) -> Vec<Vec<usize>> {
    (0u32..1 << rank)
        .map(|m| (0..rank).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}
