use num_traits::{One, Zero};

use super::{QMatrix, QVector, Rational};
use crate::error::{Error, Result};

/// Solution set of `A x = b`: `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: QVector,
    pub kernel: Vec<QVector>,
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..rows[i].len() {
                    if !rows[r][j].is_zero() {
                        let d = &f * &rows[r][j];
                        rows[i][j] -= d;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Exact solve of `A x = b`. Returns `None` when the system is inconsistent.
pub fn solve_linear(a: &QMatrix, b: &QVector) -> Result<Option<LinearSolution>> {
    if a.rows() != b.dim() {
        return Err(Error::Input(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.rows(),
            b.dim()
        )));
    }
    let n = a.cols();
    let mut rows: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| {
            let mut r: Vec<Rational> = a.row(i).into_inner();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = QVector::zeros(n);
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][n].clone();
    }
    Ok(Some(LinearSolution {
        particular,
        kernel: kernel_from_rref(&rows, &pivots, n),
    }))
}

fn kernel_from_rref(rows: &[Vec<Rational>], pivots: &[usize], n: usize) -> Vec<QVector> {
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = QVector::zeros(n);
        v[free] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Rank of a family of vectors of dimension `dim`.
pub fn rank(vectors: &[QVector], dim: usize) -> usize {
    row_basis(vectors, dim).len()
}

/// Canonical basis (nonzero rows of the reduced row echelon form) of the
/// span of `vectors`.
pub fn row_basis(vectors: &[QVector], dim: usize) -> Vec<QVector> {
    let mut rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| {
            debug_assert_eq!(v.dim(), dim);
            v.coords().to_vec()
        })
        .collect();
    rref(&mut rows, dim);
    rows.into_iter().map(QVector::new).collect()
}

/// Basis of `{x : <x, v> = 0 for all v in vectors}`.
pub fn orthogonal_complement(vectors: &[QVector], dim: usize) -> Vec<QVector> {
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let pivots = rref(&mut rows, dim);
    kernel_from_rref(&rows, &pivots, dim)
}

/// Orthogonal projection of `x` onto the orthogonal complement of
/// `span(subspace)`.
pub fn project_onto_complement(x: &QVector, subspace: &[QVector]) -> QVector {
    let basis = row_basis(subspace, x.dim());
    if basis.is_empty() {
        return x.clone();
    }
    let k = basis.len();
    let mut gram = QMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, basis[i].dot(&basis[j]));
        }
    }
    let rhs: QVector = basis.iter().map(|b| b.dot(x)).collect();
    let sol = solve_linear(&gram, &rhs)
        .expect("square system")
        .expect("gram matrix of a basis is invertible");
    let mut out = x.clone();
    for (c, b) in sol.particular.iter().zip(&basis) {
        if !c.is_zero() {
            out = out.add_scaled(&-c.clone(), b);
        }
    }
    out
}
