//! JSON documents. Indices of simple reflections and of ground-set
//! elements are 1-based; rationals are `"p/q"` strings.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CosetId, CoxeterGroup, Quotient, RootSystem, RootType};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_rational, QVector, Rational};
use crate::invariants::{ConeLabel, FormalSum, OrbitLabel, UniPolynomial};
use crate::matroid::CoxeterMatroid;
use crate::polyhedral::{AffineCone, Body, VPolytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootSystemDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
}

impl RootSystemDoc {
    pub fn of(rs: &RootSystem) -> Self {
        RootSystemDoc {
            kind: rs.kind().to_string(),
            rank: rs.rank(),
        }
    }

    pub fn build(&self) -> Result<RootSystem> {
        RootSystem::new(self.kind.parse::<RootType>()?, self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordDoc {
    pub word: Vec<usize>,
}

impl WordDoc {
    pub fn of(word: &[usize]) -> Self {
        WordDoc {
            word: word.iter().map(|i| i + 1).collect(),
        }
    }

    pub fn zero_based(&self) -> Result<Vec<usize>> {
        self.word
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::Input("generator indices start at 1".into()))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetDoc {
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidDoc {
    pub root_system: RootSystemDoc,
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub bases: Vec<WordDoc>,
}

/// A delta-matroid given by its feasible sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaMatroidDoc {
    pub n: usize,
    pub feasible: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDoc {
    pub vertices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDoc {
    pub apex: Vec<String>,
    pub generators: Vec<Vec<String>>,
    #[serde(default)]
    pub lineality: Vec<Vec<String>>,
}

/// A polytope or a cone, tagged by its key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyDoc {
    Polytope(PolytopeDoc),
    Cone(ConeDoc),
}

/// Input of the cone-valued invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronInput {
    pub root_system: RootSystemDoc,
    #[serde(flatten)]
    pub body: BodyDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationTermDoc {
    pub coeff: i64,
    pub matroid: MatroidDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub terms: Vec<RelationTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc<L> {
    pub label: L,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormalSumDoc<L> {
    pub kind: String,
    pub terms: Vec<TermDoc<L>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeLabelDoc {
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub word: Vec<usize>,
    pub apex: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitLabelDoc {
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub apex: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDoc {
    pub terms: BTreeMap<String, String>,
}

pub fn vector_doc(v: &QVector) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn parse_vector(v: &[String]) -> Result<QVector> {
    v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>>>().map(QVector::new)
}

fn parse_vectors(vs: &[Vec<String>]) -> Result<Vec<QVector>> {
    vs.iter().map(|v| parse_vector(v)).collect()
}

pub fn one_based(subset: &[usize]) -> Vec<usize> {
    subset.iter().map(|i| i + 1).collect()
}

/// 1-based, any order, no repeats, within `[rank]`; returned 0-based and
/// sorted.
pub fn zero_based_subset(subset: &[usize], rank: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(subset.len());
    for &i in subset {
        if i == 0 || i > rank {
            return Err(Error::Input(format!("index {i} is outside [{rank}]")));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Input("repeated index in a subset".into()));
    }
    Ok(out)
}

/// Shares groups and quotients between documents so that matroids of the
/// same type can be compared and combined.
#[derive(Default)]
pub struct Workspace {
    groups: HashMap<(String, usize), Arc<CoxeterGroup>>,
    quotients: HashMap<(String, usize, Vec<usize>), Arc<Quotient>>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn group(&mut self, rs: &RootSystemDoc) -> Result<Arc<CoxeterGroup>> {
        let key = (rs.kind.clone(), rs.rank);
        if let Some(g) = self.groups.get(&key) {
            return Ok(g.clone());
        }
        let g = Arc::new(CoxeterGroup::new(rs.build()?)?);
        self.groups.insert(key, g.clone());
        Ok(g)
    }

    /// `subset` is 1-based.
    pub fn quotient(&mut self, rs: &RootSystemDoc, subset: &[usize]) -> Result<Arc<Quotient>> {
        let g = self.group(rs)?;
        let s = zero_based_subset(subset, g.rank())?;
        let key = (rs.kind.clone(), rs.rank, s.clone());
        if let Some(q) = self.quotients.get(&key) {
            return Ok(q.clone());
        }
        let q = Arc::new(Quotient::new(g, &s)?);
        self.quotients.insert(key, q.clone());
        Ok(q)
    }

    pub fn matroid(&mut self, doc: &MatroidDoc, checked: bool) -> Result<CoxeterMatroid> {
        let q = self.quotient(&doc.root_system, &doc.subset)?;
        let bases = doc
            .bases
            .iter()
            .map(|w| q.coset_of_word(&w.zero_based()?))
            .collect::<Result<Vec<CosetId>>>()?;
        if checked {
            CoxeterMatroid::new(q, &bases)
        } else {
            CoxeterMatroid::new_unchecked(q, &bases)
        }
    }
}

pub fn coset_doc(q: &Quotient, b: CosetId) -> WordDoc {
    WordDoc::of(q.group().word(q.min_rep(b)))
}

pub fn matroid_doc(m: &CoxeterMatroid) -> MatroidDoc {
    let q = m.quotient();
    MatroidDoc {
        root_system: RootSystemDoc::of(q.group().root_system()),
        subset: one_based(q.subset()),
        bases: m.bases().iter().map(|&b| coset_doc(q, b)).collect(),
    }
}

pub fn polytope_doc(p: &VPolytope) -> PolytopeDoc {
    PolytopeDoc {
        vertices: p.vertices().iter().map(vector_doc).collect(),
    }
}

pub fn cone_doc(c: &AffineCone) -> ConeDoc {
    ConeDoc {
        apex: vector_doc(c.apex()),
        generators: c.rays().iter().map(vector_doc).collect(),
        lineality: c.lineality().iter().map(vector_doc).collect(),
    }
}

pub fn parse_polytope(doc: &PolytopeDoc) -> Result<VPolytope> {
    VPolytope::new(parse_vectors(&doc.vertices)?)
}

pub fn parse_cone(doc: &ConeDoc) -> Result<AffineCone> {
    AffineCone::new(parse_vector(&doc.apex)?, parse_vectors(&doc.generators)?, parse_vectors(&doc.lineality)?)
}

pub fn parse_body(doc: &BodyDoc) -> Result<Body> {
    Ok(match doc {
        BodyDoc::Polytope(p) => Body::Polytope(parse_polytope(p)?),
        BodyDoc::Cone(c) => Body::Cone(parse_cone(c)?),
    })
}

pub fn coset_sum_doc(q: &Quotient, s: &FormalSum<CosetId>) -> FormalSumDoc<WordDoc> {
    FormalSumDoc {
        kind: "coset".into(),
        terms: s
            .iter()
            .map(|(&b, c)| TermDoc {
                label: coset_doc(q, b),
                coeff: format_rational(c),
            })
            .collect(),
    }
}

pub fn cone_sum_doc(s: &FormalSum<ConeLabel>) -> FormalSumDoc<ConeLabelDoc> {
    FormalSumDoc {
        kind: "cone".into(),
        terms: s
            .iter()
            .map(|(l, c)| TermDoc {
                label: ConeLabelDoc {
                    subset: one_based(&l.subset),
                    word: one_based(&l.word),
                    apex: vector_doc(&l.apex),
                },
                coeff: format_rational(c),
            })
            .collect(),
    }
}

pub fn orbit_sum_doc(s: &FormalSum<OrbitLabel>) -> FormalSumDoc<OrbitLabelDoc> {
    FormalSumDoc {
        kind: "orbit".into(),
        terms: s
            .iter()
            .map(|(l, c)| TermDoc {
                label: OrbitLabelDoc {
                    subset: one_based(&l.subset),
                    apex: vector_doc(&l.apex),
                },
                coeff: format_rational(c),
            })
            .collect(),
    }
}

pub fn polynomial_doc(p: &UniPolynomial) -> PolynomialDoc {
    PolynomialDoc {
        terms: p.terms().map(|(e, c)| (e.to_string(), format_rational(c))).collect(),
    }
}

pub fn parse_polynomial(doc: &PolynomialDoc) -> Result<UniPolynomial> {
    let mut p = UniPolynomial::zero();
    for (e, c) in &doc.terms {
        let e: u32 = e
            .parse()
            .map_err(|_| Error::Input(format!("bad exponent {e:?}")))?;
        p.add_term(e, parse_rational(c)?);
    }
    Ok(p)
}
