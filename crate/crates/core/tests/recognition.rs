mod common;

use std::collections::BTreeSet;

use common::{all_matroids, all_subsets, delta_quotient, quotient, subsets_of_mask};
use coxval::coxeter::RootType;
use coxval::matroid::{is_coxeter_matroid, schubert, CoxeterMatroid, RecognitionMode};
use coxval::Error;

#[test]
fn modes_agree_on_every_subset_of_small_quotients() {
    let mut quotients: Vec<_> = all_subsets(2).iter().map(|s| quotient(RootType::A, 2, s)).collect();
    quotients.push(delta_quotient(2));
    for q in quotients {
        let mut count = 0;
        for mask in 1u64..1 << q.len() {
            let set = subsets_of_mask(q.len(), mask);
            if is_coxeter_matroid(&q, &set, RecognitionMode::Both).unwrap() {
                count += 1;
            }
        }
        assert!(count >= q.len());
    }
}

#[test]
fn delta_matroids_on_two_elements() {
    // the square minus at most one corner, plus edges and points; diagonals fail
    let q = delta_quotient(2);
    let valid = all_matroids(&q);
    let sizes: Vec<usize> = valid.iter().map(|m| m.bases().len()).collect();
    assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 4);
    assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 4);
    assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 1);
    // in B2 both the sides and the diagonals of the square are roots
    assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 6);
}

#[test]
fn min_w_matches_geometric_oracle() {
    for q in [quotient(RootType::A, 2, &[]), quotient(RootType::B, 2, &[]), delta_quotient(2)] {
        for m in all_matroids(&q) {
            for w in q.group().ids() {
                assert_eq!(m.min_w(w).unwrap(), m.min_w_geometric(w).unwrap());
            }
        }
    }
}

#[test]
fn non_matroids_report_multiple_minima() {
    let q = quotient(RootType::A, 2, &[]);
    for mask in 1u64..1 << q.len() {
        let set = subsets_of_mask(q.len(), mask);
        if !is_coxeter_matroid(&q, &set, RecognitionMode::Bruhat).unwrap() {
            let m = CoxeterMatroid::new_unchecked(q.clone(), &set).unwrap();
            assert!(q.group().ids().any(|w| matches!(m.min_w(w), Err(Error::NotAMatroid(_)))));
            assert!(matches!(CoxeterMatroid::new(q.clone(), &set), Err(Error::NotAMatroid(_))));
        }
    }
}

#[test]
fn schubert_matroids_are_upper_sets() {
    for (k, n, s) in [
        (RootType::A, 3, vec![]),
        (RootType::A, 3, vec![0, 2]),
        (RootType::B, 3, vec![0, 1]),
        (RootType::D, 4, vec![0, 1, 2]),
    ] {
        let q = quotient(k, n, &s);
        for b in 0..q.len() {
            let om = schubert(q.clone(), b).unwrap();
            assert!(om.contains(b));
            for &c in om.bases() {
                for d in 0..q.len() {
                    if q.leq(c, d) {
                        assert!(om.contains(d));
                    }
                }
            }
            assert!(is_coxeter_matroid(&q, om.bases(), RecognitionMode::Both).unwrap());
        }
    }
}

#[test]
fn base_polytope_equivariance() {
    let q = quotient(RootType::B, 2, &[]);
    for m in all_matroids(&q).into_iter().step_by(7) {
        let p = m.base_polytope().unwrap();
        for w in q.group().ids() {
            let a: BTreeSet<_> = m.act(w).base_polytope().unwrap().vertices().iter().cloned().collect();
            let b: BTreeSet<_> = p.transform(q.group().matrix(w)).unwrap().vertices().iter().cloned().collect();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn canonical_forms_are_orbit_invariants() {
    let q = quotient(RootType::A, 2, &[0]);
    let all = all_matroids(&q);
    for m in &all {
        let c = m.canonical_form();
        assert_eq!(c.canonical_form(), c);
        for w in q.group().ids() {
            assert_eq!(m.act(w).canonical_form(), c);
        }
    }
    // points, edges and the triangle
    let classes: BTreeSet<Vec<usize>> = all.iter().map(|m| m.canonical_form().bases().to_vec()).collect();
    assert_eq!(classes.len(), 3);
}
