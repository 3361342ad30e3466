use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{direction_class, int, solve_linear, QMatrix, QVector, Rational};

/// Cartan type of a crystallographic root system.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(RootType::A),
            "B" | "b" => Ok(RootType::B),
            "C" | "c" => Ok(RootType::C),
            "D" | "d" => Ok(RootType::D),
            other => Err(Error::Configuration(format!(
                "unsupported root system type {other:?} (expected A, B, C or D)"
            ))),
        }
    }
}

/// A crystallographic root system in standard coordinates.
///
/// * `A_n` lives in the sum-zero hyperplane of `Q^{n+1}`:
///   `alpha_i = e_i - e_{i+1}`.
/// * `B_n`, `C_n`, `D_n` live in `Q^n` with `alpha_i = e_i - e_{i+1}` for
///   `i < n` and last simple root `e_n`, `2 e_n`, `e_{n-1} + e_n`
///   respectively.
///
/// The inner product is the Euclidean one in these coordinates. Simple roots
/// and fundamental weights are indexed from 0 internally; user-facing formats
/// number them from 1.
#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: RootType,
    rank: usize,
    ambient_dim: usize,
    simple_roots: Vec<QVector>,
    positive_roots: Vec<QVector>,
    fundamental_weights: Vec<QVector>,
    gram: QMatrix,
    positive_set: HashSet<QVector>,
}

fn e(dim: usize, i: usize) -> QVector {
    QVector::unit(dim, i)
}

impl RootSystem {
    pub fn new(kind: RootType, rank: usize) -> Result<Self> {
        let supported = match kind {
            RootType::A => (1..=5).contains(&rank),
            RootType::B | RootType::C => (2..=4).contains(&rank),
            RootType::D => (3..=4).contains(&rank),
        };
        if !supported {
            return Err(Error::Configuration(format!(
                "{kind}{rank} is not supported (A1-A5, B2-B4, C2-C4, D3-D4)"
            )));
        }
        let n = rank;
        let ambient_dim = if kind == RootType::A { n + 1 } else { n };
        let d = ambient_dim;
        let diff = |i: usize, j: usize| &e(d, i) - &e(d, j);
        let sum = |i: usize, j: usize| &e(d, i) + &e(d, j);

        let mut simple_roots: Vec<QVector> = (0..n.min(d - 1)).map(|i| diff(i, i + 1)).collect();
        match kind {
            RootType::A => {}
            RootType::B => {
                simple_roots.truncate(n - 1);
                simple_roots.push(e(d, n - 1));
            }
            RootType::C => {
                simple_roots.truncate(n - 1);
                simple_roots.push(e(d, n - 1).scale(&int(2)));
            }
            RootType::D => {
                simple_roots.truncate(n - 1);
                simple_roots.push(sum(n - 2, n - 1));
            }
        }

        let mut positive_roots = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                positive_roots.push(diff(i, j));
                if kind != RootType::A {
                    positive_roots.push(sum(i, j));
                }
            }
            match kind {
                RootType::B => positive_roots.push(e(d, i)),
                RootType::C => positive_roots.push(e(d, i).scale(&int(2))),
                _ => {}
            }
        }

        let fundamental_weights = solve_weights(&simple_roots)?;
        let positive_set = positive_roots.iter().cloned().collect();
        Ok(RootSystem {
            kind,
            rank,
            ambient_dim,
            simple_roots,
            positive_roots,
            fundamental_weights,
            gram: QMatrix::identity(ambient_dim),
            positive_set,
        })
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn simple_roots(&self) -> &[QVector] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[QVector] {
        &self.positive_roots
    }

    pub fn fundamental_weights(&self) -> &[QVector] {
        &self.fundamental_weights
    }

    /// Matrix of the inner product in ambient coordinates (the identity).
    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// Positive roots followed by their negatives.
    pub fn all_roots(&self) -> Vec<QVector> {
        let mut roots = self.positive_roots.clone();
        roots.extend(self.positive_roots.iter().map(|r| -r));
        roots
    }

    pub fn is_positive_root(&self, v: &QVector) -> bool {
        self.positive_set.contains(v)
    }

    pub fn coroot(alpha: &QVector) -> QVector {
        alpha.scale(&(int(2) / alpha.dot(alpha)))
    }

    /// Reflection of `x` in the hyperplane orthogonal to `alpha`.
    pub fn reflect(alpha: &QVector, x: &QVector) -> QVector {
        let c = int(2) * x.dot(alpha) / alpha.dot(alpha);
        x.add_scaled(&-c, alpha)
    }

    pub fn reflection_matrix(&self, alpha: &QVector) -> QMatrix {
        let d = self.ambient_dim;
        let cols: Vec<QVector> = (0..d).map(|j| Self::reflect(alpha, &e(d, j))).collect();
        QMatrix::from_columns(&cols, d)
    }

    pub fn simple_reflection(&self, i: usize) -> QMatrix {
        self.reflection_matrix(&self.simple_roots[i])
    }

    /// `sum_{i in subset} varpi_i`.
    pub fn weight_sum(&self, subset: &[usize]) -> QVector {
        subset.iter().fold(QVector::zeros(self.ambient_dim), |acc, &i| {
            &acc + &self.fundamental_weights[i]
        })
    }

    /// `rho = sum_i varpi_i`, a regular dominant weight.
    pub fn rho(&self) -> QVector {
        self.weight_sum(&(0..self.rank).collect::<Vec<_>>())
    }

    /// Normalised direction classes of the roots (one per `+-` pair).
    pub fn root_directions(&self) -> HashSet<QVector> {
        self.positive_roots.iter().map(direction_class).collect()
    }

    /// Short label such as `B3`.
    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }
}

/// Fundamental weights in the span of the simple roots, from
/// `<varpi_i, alpha_j^vee> = delta_ij`.
fn solve_weights(simple: &[QVector]) -> Result<Vec<QVector>> {
    let n = simple.len();
    let d = simple[0].dim();
    // varpi_i = sum_k c_k alpha_k ; sum_k c_k <alpha_k, alpha_j^vee> = delta_ij
    let coroots: Vec<QVector> = simple.iter().map(RootSystem::coroot).collect();
    let mut cartan_t = QMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            cartan_t.set(j, k, simple[k].dot(&coroots[j]));
        }
    }
    (0..n)
        .map(|i| {
            let mut rhs = QVector::zeros(n);
            rhs[i] = Rational::one();
            let sol = solve_linear(&cartan_t, &rhs)?
                .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
            let mut w = QVector::zeros(d);
            for (c, a) in sol.particular.iter().zip(simple) {
                if !c.is_zero() {
                    w = w.add_scaled(c, a);
                }
            }
            Ok(w)
        })
        .collect()
}
