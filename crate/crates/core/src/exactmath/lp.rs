//! Dense two-phase simplex over the rationals with Bland's anti-cycling rule.
//!
//! Constraints are `<a, x> <= b` (inequalities) and `<a, x> = b`
//! (equalities) over free variables `x`. Free variables are split as
//! `x = p - q` with `p, q >= 0`.

use num_traits::{One, Signed, Zero};

use super::{QVector, Rational};
use crate::error::{Error, Result};

/// Result of [`lp_maximize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { point: QVector, value: Rational },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    obj: Vec<Rational>,
    obj_rhs: Rational,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (j, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    self.rows[i][j] -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (j, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    self.obj[j] -= &f * pv;
                }
            }
            self.obj_rhs -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Sets the objective to minimise `cost . vars` and expresses it in terms
    /// of the current non-basic variables.
    fn set_objective(&mut self, cost: &[Rational]) {
        self.obj = cost.to_vec();
        self.obj_rhs = Rational::zero();
        for i in 0..self.rows.len() {
            let cb = cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.obj.len() {
                if !self.rows[i][j].is_zero() {
                    self.obj[j] -= &cb * &self.rows[i][j];
                }
            }
            self.obj_rhs -= &cb * &self.rhs[i];
        }
    }

    /// Runs simplex iterations on columns `< allowed`. Returns false when the
    /// objective is unbounded below.
    fn run(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

fn check_dims(dim: usize, cons: &[(QVector, Rational)]) -> Result<()> {
    for (a, _) in cons {
        if a.dim() != dim {
            return Err(Error::Input(format!(
                "constraint of dimension {} in a {}-dimensional program",
                a.dim(),
                dim
            )));
        }
    }
    Ok(())
}

/// Core solver. `objective = None` means feasibility only.
fn solve(
    dim: usize,
    ineqs: &[(QVector, Rational)],
    eqs: &[(QVector, Rational)],
    objective: Option<&QVector>,
) -> Result<LpOutcome> {
    check_dims(dim, ineqs)?;
    check_dims(dim, eqs)?;
    if let Some(c) = objective {
        check_dims(dim, &[(c.clone(), Rational::zero())])?;
    }
    let m = ineqs.len() + eqs.len();
    let n_slack = ineqs.len();
    // columns: p (dim) | q (dim) | slacks | artificials
    let n_struct = 2 * dim + n_slack;
    let n_cols = n_struct + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (k, (a, b)) in ineqs.iter().chain(eqs).enumerate() {
        let mut row = vec![Rational::zero(); n_cols];
        for j in 0..dim {
            row[j] = a[j].clone();
            row[dim + j] = -a[j].clone();
        }
        if k < n_slack {
            row[2 * dim + k] = Rational::one();
        }
        let mut b = b.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
        }
        row[n_struct + k] = Rational::one();
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n_struct..n_cols).collect(),
        obj: vec![],
        obj_rhs: Rational::zero(),
    };

    // Phase one: minimise the sum of artificials.
    let mut cost = vec![Rational::zero(); n_cols];
    for c in cost.iter_mut().skip(n_struct) {
        *c = Rational::one();
    }
    t.set_objective(&cost);
    t.run(n_cols);
    if !t.obj_rhs.is_zero() {
        return Ok(LpOutcome::Infeasible);
    }
    // Drive artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n_struct {
            match (0..n_struct).find(|&j| !t.rows[i][j].is_zero()) {
                Some(c) => {
                    t.pivot(i, c);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut value = Rational::zero();
    if let Some(c) = objective {
        let mut cost = vec![Rational::zero(); n_cols];
        for j in 0..dim {
            cost[j] = -c[j].clone();
            cost[dim + j] = c[j].clone();
        }
        t.set_objective(&cost);
        if !t.run(n_struct) {
            return Ok(LpOutcome::Unbounded);
        }
        value = t.obj_rhs.clone();
    }

    let mut vars = vec![Rational::zero(); n_cols];
    for (r, &b) in t.basis.iter().enumerate() {
        vars[b] = t.rhs[r].clone();
    }
    let point: QVector = (0..dim).map(|j| &vars[j] - &vars[dim + j]).collect();
    Ok(LpOutcome::Optimal { point, value })
}

/// Finds a point with `<a, x> <= b` for every inequality and `<a, x> = b`
/// for every equality, or `None` when none exists. Deterministic.
pub fn lp_feasible(
    dim: usize,
    ineqs: &[(QVector, Rational)],
    eqs: &[(QVector, Rational)],
) -> Result<Option<QVector>> {
    Ok(match solve(dim, ineqs, eqs, None)? {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    })
}

/// Maximises `<objective, x>` subject to the constraints.
pub fn lp_maximize(
    dim: usize,
    ineqs: &[(QVector, Rational)],
    eqs: &[(QVector, Rational)],
    objective: &QVector,
) -> Result<LpOutcome> {
    solve(dim, ineqs, eqs, Some(objective))
}

/// Finds a point satisfying every `strict` inequality strictly together with
/// the non-strict `ineqs` and the equalities.
///
/// Reduced to one LP: maximise a slack `t <= 1` added to each strict row and
/// accept iff the optimum is positive.
pub fn strict_point(
    dim: usize,
    strict: &[(QVector, Rational)],
    ineqs: &[(QVector, Rational)],
    eqs: &[(QVector, Rational)],
) -> Result<Option<QVector>> {
    check_dims(dim, strict)?;
    if strict.is_empty() {
        return lp_feasible(dim, ineqs, eqs);
    }
    let lift = |a: &QVector, t: Rational| a.concat(&QVector::new(vec![t]));
    let mut all: Vec<(QVector, Rational)> = strict
        .iter()
        .map(|(a, b)| (lift(a, Rational::one()), b.clone()))
        .collect();
    check_dims(dim, ineqs)?;
    check_dims(dim, eqs)?;
    all.extend(ineqs.iter().map(|(a, b)| (lift(a, Rational::zero()), b.clone())));
    all.push((lift(&QVector::zeros(dim), Rational::one()), Rational::one()));
    let eqs: Vec<_> = eqs
        .iter()
        .map(|(a, b)| (lift(a, Rational::zero()), b.clone()))
        .collect();
    let mut objective = QVector::zeros(dim + 1);
    objective[dim] = Rational::one();
    match solve(dim + 1, &all, &eqs, Some(&objective))? {
        LpOutcome::Optimal { point, value } if value.is_positive() => {
            Ok(Some(point.iter().take(dim).cloned().collect()))
        }
        _ => Ok(None),
    }
}
