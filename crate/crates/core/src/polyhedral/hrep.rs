use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{direction_class, orthogonal_complement, primitive, solve_linear, QMatrix, QVector, Rational};

/// `(a, b)` read as `<a, x> <= b` or `<a, x> = b` depending on context.
pub type Constraint = (QVector, Rational);

/// Largest number of candidate subsets a brute-force enumeration may visit.
pub const MAX_SUBSETS: u64 = 4_000_000;

/// Halfspace description `{x : eqs hold, ineqs hold}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub eqs: Vec<Constraint>,
    pub ineqs: Vec<Constraint>,
}

impl HRep {
    pub fn contains(&self, x: &QVector) -> bool {
        self.eqs.iter().all(|(a, b)| a.dot(x) == *b) && self.ineqs.iter().all(|(a, b)| a.dot(x) <= *b)
    }
}

/// Canonical form of the hyperplane `<a, x> = b` (primitive normal with
/// positive leading coordinate). `None` for a zero normal.
pub fn normalize_hyperplane(a: &QVector, b: &Rational) -> Option<Constraint> {
    if a.is_zero() {
        return None;
    }
    let n = direction_class(a);
    let (i, ai) = a.iter().enumerate().find(|(_, x)| !x.is_zero()).unwrap();
    let scale = &n[i] / ai;
    Some((n, b * scale))
}

/// Scales `(a, b)` by a positive rational so that `a` is a primitive
/// integer vector.
pub fn normalize_halfspace(a: &QVector, b: &Rational) -> Constraint {
    if a.is_zero() {
        return (a.clone(), b.clone());
    }
    let p = primitive(a);
    let (i, ai) = a.iter().enumerate().find(|(_, x)| !x.is_zero()).unwrap();
    let scale = (&p[i] / ai).abs();
    (p, b * scale)
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    r
}

/// Calls `f` on every increasing `k`-subset of `0..n`; stops when `f`
/// returns `false`.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Result<bool>) -> Result<()> {
    if k > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx)? {
            return Ok(());
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return Ok(());
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub(crate) fn check_budget(n: usize, k: usize, what: &str) -> Result<()> {
    if binomial(n, k) > MAX_SUBSETS {
        return Err(Error::Capacity(format!(
            "{what}: {n} choose {k} candidate subsets exceeds the limit of {MAX_SUBSETS}"
        )));
    }
    Ok(())
}

/// Vertices of `{x : eqs, ineqs}` by brute force over subsets of inequalities
/// made tight. Returns them sorted; an unbounded region yields only its
/// vertices (possibly none).
pub fn enumerate_vertices(dim: usize, eqs: &[Constraint], ineqs: &[Constraint]) -> Result<Vec<QVector>> {
    let eq_normals: Vec<QVector> = eqs.iter().map(|(a, _)| a.clone()).collect();
    let free = orthogonal_complement(&eq_normals, dim).len();
    check_budget(ineqs.len(), free, "vertex enumeration")?;
    let feasible = |x: &QVector| {
        eqs.iter().all(|(a, b)| a.dot(x) == *b) && ineqs.iter().all(|(a, b)| a.dot(x) <= *b)
    };
    let mut found = BTreeSet::new();
    for_each_subset(ineqs.len(), free, |subset| {
        let rows: Vec<QVector> = eqs
            .iter()
            .map(|(a, _)| a.clone())
            .chain(subset.iter().map(|&i| ineqs[i].0.clone()))
            .collect();
        let rhs: QVector = eqs
            .iter()
            .map(|(_, b)| b.clone())
            .chain(subset.iter().map(|&i| ineqs[i].1.clone()))
            .collect();
        let m = QMatrix::from_rows(&rows, dim);
        if let Some(sol) = solve_linear(&m, &rhs)? {
            if sol.kernel.is_empty() && feasible(&sol.particular) {
                found.insert(sol.particular);
            }
        }
        Ok(true)
    })?;
    Ok(found.into_iter().collect())
}
