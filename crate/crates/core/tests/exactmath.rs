use coxval::exactmath::{
    format_rational, int, lp_feasible, lp_maximize, parse_rational, rat, solve_linear, LpOutcome, QMatrix, QVector,
};
use coxval::polyhedral::Constraint;
use proptest::prelude::*;

fn small_vec(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, dim)
}

proptest! {
    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn solve_linear_solves(rows in prop::collection::vec(small_vec(3), 3), x in small_vec(3)) {
        let a = QMatrix::from_rows(&rows.iter().map(|r| QVector::from_ints(r)).collect::<Vec<_>>(), 3);
        let x = QVector::from_ints(&x);
        let b = a.mul_vec(&x);
        let sol = solve_linear(&a, &b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul_vec(&sol.particular), b);
    }

    #[test]
    fn lp_optimum_on_a_box(obj in small_vec(3), lo in small_vec(3)) {
        // box [lo, lo + 2]^3: the optimum picks the better end per coordinate
        let mut ineqs: Vec<Constraint> = vec![];
        for (i, &l) in lo.iter().enumerate() {
            ineqs.push((QVector::unit(3, i), int(l + 2)));
            ineqs.push((-QVector::unit(3, i), int(-l)));
        }
        let c = QVector::from_ints(&obj);
        let expected: i64 = (0..3).map(|i| obj[i] * if obj[i] > 0 { lo[i] + 2 } else { lo[i] }).sum();
        match lp_maximize(3, &ineqs, &[], &c).unwrap() {
            LpOutcome::Optimal { point, value } => {
                prop_assert_eq!(value.clone(), int(expected));
                prop_assert_eq!(c.dot(&point), value);
                for (a, b) in &ineqs {
                    prop_assert!(a.dot(&point) <= *b);
                }
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn feasible_points_satisfy_constraints(rows in prop::collection::vec(small_vec(2), 1..6), p in small_vec(2)) {
        // constraints built to contain p
        let p = QVector::from_ints(&p);
        let ineqs: Vec<Constraint> = rows.iter().map(|r| {
            let a = QVector::from_ints(r);
            let b = a.dot(&p);
            (a, b)
        }).collect();
        let x = lp_feasible(2, &ineqs, &[]).unwrap().expect("p is feasible");
        for (a, b) in &ineqs {
            prop_assert!(a.dot(&x) <= *b);
        }
    }
}

#[test]
fn infeasible_and_unbounded() {
    let ineqs: Vec<Constraint> = vec![(QVector::from_ints(&[1]), int(0)), (QVector::from_ints(&[-1]), int(-1))];
    assert!(lp_feasible(1, &ineqs, &[]).unwrap().is_none());
    let up = lp_maximize(1, &[(QVector::from_ints(&[-1]), int(0))], &[], &QVector::from_ints(&[1])).unwrap();
    assert!(matches!(up, LpOutcome::Unbounded));
}
