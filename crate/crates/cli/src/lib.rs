//! Command-line front end for `coxval`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use coxval::coxeter::RootType;
use coxval::exactmath::format_rational;
use coxval::invariants::{
    delta_matroid, f_invariant, g_invariant, g_invariant_via_tc, g_plus_distinct, g_plus_invariant,
    interlace_polynomial, schubert_decompose, schubert_matrix, verify_valuation_relation, InterlaceMode,
    InvariantKind, ValuationReport,
};
use coxval::io::*;
use coxval::matroid::{check_intersection_stability, is_coxeter_matroid, schubert, RecognitionMode};
use coxval::polyhedral::{brianchon_gram, verify_indicator_relation, Body};
use coxval::Error;

#[derive(Parser, Debug)]
#[command(name = "coxval", version, about = "Exact computations for Coxeter matroids and their valuative invariants")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for the parallel sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct TypeArgs {
    /// Root system type: A, B, C or D.
    #[arg(long = "type")]
    pub kind: String,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Args, Debug, Clone)]
pub struct QuotientArgs {
    #[command(flatten)]
    pub root: TypeArgs,
    /// Parabolic subset, comma separated and 1-based; empty for the trivial
    /// subgroup.
    #[arg(long = "I", default_value = "")]
    pub subset: String,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// JSON input file, `-` for standard input.
    #[arg(short = 'i', long = "input")]
    pub path: Option<PathBuf>,
    /// Inline JSON input.
    #[arg(long = "json")]
    pub inline: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the elements of a Weyl group with their lengths.
    Group(TypeArgs),
    /// Decide whether a set of cosets is a Coxeter matroid.
    MatroidCheck {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "both")]
        mode: String,
    },
    /// The coset-valued invariant of a Coxeter matroid.
    Ginvariant {
        #[command(flatten)]
        input: InputArgs,
        /// `combinatorial` (Bruhat minima) or `geometric` (tight containment).
        #[arg(long, default_value = "combinatorial")]
        method: String,
    },
    /// Translated cones of the fan tightly containing a polytope or cone.
    Finvariant {
        #[command(flatten)]
        input: InputArgs,
    },
    /// The orbit-class invariant of a polytope or cone.
    Gplus {
        #[command(flatten)]
        input: InputArgs,
        /// Count distinct cones per orbit class instead of group elements.
        #[arg(long)]
        distinct: bool,
    },
    /// The Schubert matroid above a coset.
    Schubert {
        #[command(flatten)]
        quotient: QuotientArgs,
        /// Word of a representative, comma separated and 1-based.
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Coefficients of the invariant on every Schubert matroid.
    SchubertMatrix(QuotientArgs),
    /// Expansion of the invariant of a matroid in Schubert invariants.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Interlace polynomial of a delta-matroid.
    Interlace {
        #[command(flatten)]
        input: InputArgs,
        /// `definition`, `via_g` or `both`.
        #[arg(long, default_value = "both")]
        mode: String,
    },
    /// Check a linear relation among matroid polytopes and an invariant on it.
    SubdivisionVerify {
        #[command(flatten)]
        input: InputArgs,
        /// `g`, `interlace` or `f`.
        #[arg(long, default_value = "g")]
        invariant: String,
    },
    /// Check whether root-cone slices of the orbit polytope are base polytopes.
    Stability(QuotientArgs),
    /// Signed tangent-cone expansion of a polytope.
    BrianchonGram {
        #[command(flatten)]
        input: InputArgs,
    },
}

/// Failure of one invocation.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or schema-violating input; exit status 2.
    Malformed(String),
    /// Error raised by the library; exit status 1, or 2 for input errors.
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) | CliError::Domain(Error::Input(_)) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn document(&self) -> ErrorDoc {
        let (kind, message) = match self {
            CliError::Malformed(m) => ("malformed_input".to_string(), m.clone()),
            CliError::Domain(e) => (e.kind().to_string(), e.to_string()),
        };
        ErrorDoc {
            error: ErrorBody { kind, message },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDoc {
    pub error: ErrorBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub word: Vec<usize>,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub root_system: RootSystemDoc,
    pub order: usize,
    pub elements: Vec<ElementDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub mode: String,
    pub is_coxeter_matroid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchubertMatrixDoc {
    pub root_system: RootSystemDoc,
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub cosets: Vec<WordDoc>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationReportDoc {
    pub is_relation: bool,
    pub holds: bool,
    pub witness: Option<Vec<String>>,
    pub residual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub coset: WordDoc,
    pub point: Vec<String>,
    pub stray_vertices: Vec<Vec<String>>,
    pub bad_edges: Vec<[Vec<String>; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityDoc {
    pub stable: bool,
    pub witnesses: Vec<WitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignedConeDoc {
    pub coeff: i64,
    pub cone: ConeDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BrianchonGramDoc {
    pub terms: Vec<SignedConeDoc>,
    pub verified: bool,
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CliError::Malformed(format!("bad {what} entry {t:?}")))
        })
        .collect()
}

fn read_input<T: for<'de> Deserialize<'de>>(input: &InputArgs) -> Result<T, CliError> {
    let text = match (&input.path, &input.inline) {
        (_, Some(s)) => s.clone(),
        (Some(p), None) if p.as_os_str() == "-" => {
            std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Malformed(e.to_string()))?
        }
        (Some(p), None) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", p.display())))?,
        (None, None) => return Err(CliError::Malformed("no input given".into())),
    };
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("invalid input document: {e}")))
}

fn root_doc(args: &TypeArgs) -> RootSystemDoc {
    RootSystemDoc {
        kind: args.kind.clone(),
        rank: args.rank,
    }
}

/// Interlace input: feasible sets or a matroid document of the delta type.
#[derive(Deserialize)]
#[serde(untagged)]
enum InterlaceInput {
    Delta(DeltaMatroidDoc),
    Matroid(MatroidDoc),
}

/// Formats the output of one command; `Ok` holds the full document text.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let mut ws = Workspace::new();
    let text_mode = cli.format == Format::Text;
    let out = match &cli.command {
        Command::Group(args) => {
            let g = ws.group(&root_doc(args))?;
            let doc = GroupDoc {
                root_system: root_doc(args),
                order: g.order(),
                elements: g
                    .ids()
                    .map(|w| ElementDoc {
                        word: one_based(g.word(w)),
                        length: g.length(w),
                    })
                    .collect(),
            };
            if text_mode {
                let mut s = format!("{} order {}\n", g.root_system().label(), doc.order);
                for e in &doc.elements {
                    writeln!(s, "{:>3}  {}", e.length, render_word(&e.word)).unwrap();
                }
                s
            } else {
                to_json(&doc)
            }
        }
        Command::MatroidCheck { input, mode } => {
            let doc: MatroidDoc = read_input(input)?;
            let mode: RecognitionMode = mode.parse()?;
            let m = ws.matroid(&doc, false)?;
            let ok = is_coxeter_matroid(m.quotient(), m.bases(), mode)?;
            let doc = CheckDoc {
                mode: mode.to_string(),
                is_coxeter_matroid: ok,
            };
            if text_mode {
                format!("{}\n", if ok { "Coxeter matroid" } else { "not a Coxeter matroid" })
            } else {
                to_json(&doc)
            }
        }
        Command::Ginvariant { input, method } => {
            let m = ws.matroid(&read_input(input)?, true)?;
            let g = match method.as_str() {
                "combinatorial" => g_invariant(&m)?,
                "geometric" => g_invariant_via_tc(&m)?,
                other => {
                    return Err(CliError::Malformed(format!(
                        "unknown method {other:?} (expected combinatorial or geometric)"
                    )))
                }
            };
            render_sum(text_mode, coset_sum_doc(m.quotient(), &g), |l| render_word(&l.word))
        }
        Command::Finvariant { input } => {
            let doc: PolyhedronInput = read_input(input)?;
            let g = ws.group(&doc.root_system)?;
            let f = f_invariant(&parse_body(&doc.body)?, &g)?;
            render_sum(text_mode, cone_sum_doc(&f), |l| {
                format!("I={} w={} apex={}", render_set(&l.subset), render_word(&l.word), render_vec(&l.apex))
            })
        }
        Command::Gplus { input, distinct } => {
            let doc: PolyhedronInput = read_input(input)?;
            let g = ws.group(&doc.root_system)?;
            let body = parse_body(&doc.body)?;
            let s = if *distinct {
                g_plus_distinct(&body, &g)?
            } else {
                g_plus_invariant(&body, &g)?
            };
            render_sum(text_mode, orbit_sum_doc(&s), |l| {
                format!("I={} apex={}", render_set(&l.subset), render_vec(&l.apex))
            })
        }
        Command::Schubert { quotient, word } => {
            let q = ws.quotient(&root_doc(&quotient.root), &parse_list(&quotient.subset, "I")?)?;
            let w = WordDoc {
                word: parse_list(word, "word")?,
            };
            let b = q.coset_of_word(&w.zero_based()?)?;
            let m = schubert(q, b)?;
            let doc = matroid_doc(&m);
            if text_mode {
                doc.bases.iter().map(|b| format!("{}\n", render_word(&b.word))).collect()
            } else {
                to_json(&doc)
            }
        }
        Command::SchubertMatrix(args) => {
            let q = ws.quotient(&root_doc(&args.root), &parse_list(&args.subset, "I")?)?;
            let sm = schubert_matrix(q.clone())?;
            let doc = SchubertMatrixDoc {
                root_system: root_doc(&args.root),
                subset: one_based(q.subset()),
                cosets: (0..q.len()).map(|b| coset_doc(&q, b)).collect(),
                rows: sm
                    .to_dense()
                    .iter()
                    .map(|r| r.iter().map(format_rational).collect())
                    .collect(),
            };
            if text_mode {
                let mut s = String::new();
                for (c, row) in doc.cosets.iter().zip(&doc.rows) {
                    writeln!(s, "{:<12} {}", render_word(&c.word), row.join(" ")).unwrap();
                }
                s
            } else {
                to_json(&doc)
            }
        }
        Command::Decompose { input } => {
            let m = ws.matroid(&read_input(input)?, true)?;
            let sm = schubert_matrix(m.quotient().clone())?;
            let lambda = schubert_decompose(&m, &sm)?;
            render_sum(text_mode, coset_sum_doc(m.quotient(), &lambda), |l| render_word(&l.word))
        }
        Command::Interlace { input, mode } => {
            let m = match read_input::<InterlaceInput>(input)? {
                InterlaceInput::Matroid(doc) => ws.matroid(&doc, true)?,
                InterlaceInput::Delta(doc) => {
                    if doc.n < 2 {
                        return Err(CliError::Domain(Error::Configuration(
                            "delta-matroids need n >= 2".into(),
                        )));
                    }
                    let rs = RootSystemDoc {
                        kind: RootType::B.to_string(),
                        rank: doc.n,
                    };
                    let q = ws.quotient(&rs, &(1..doc.n).collect::<Vec<_>>())?;
                    let sets = doc
                        .feasible
                        .iter()
                        .map(|s| zero_based_subset(s, doc.n))
                        .collect::<Result<Vec<_>, _>>()?;
                    delta_matroid(q, &sets)?
                }
            };
            let p = match mode.as_str() {
                "both" => {
                    let a = interlace_polynomial(&m, InterlaceMode::Definition)?;
                    let b = interlace_polynomial(&m, InterlaceMode::ViaG)?;
                    if a != b {
                        return Err(CliError::Domain(Error::Internal(format!(
                            "interlace modes disagree: {a} versus {b}"
                        ))));
                    }
                    a
                }
                other => interlace_polynomial(&m, other.parse()?)?,
            };
            if text_mode {
                format!("{p}\n")
            } else {
                to_json(&polynomial_doc(&p))
            }
        }
        Command::SubdivisionVerify { input, invariant } => {
            let doc: RelationDoc = read_input(input)?;
            let kind: InvariantKind = invariant.parse()?;
            let terms = doc
                .terms
                .iter()
                .map(|t| Ok((t.coeff, ws.matroid(&t.matroid, true)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let report = verify_valuation_relation(&terms, kind)?;
            let doc = match &report {
                ValuationReport::NotARelation { witness } => RelationReportDoc {
                    is_relation: false,
                    holds: false,
                    witness: Some(vector_doc(witness)),
                    residual: None,
                },
                ValuationReport::Holds => RelationReportDoc {
                    is_relation: true,
                    holds: true,
                    witness: None,
                    residual: None,
                },
                ValuationReport::Fails { residual } => RelationReportDoc {
                    is_relation: true,
                    holds: false,
                    witness: None,
                    residual: Some(residual.clone()),
                },
            };
            if text_mode {
                match report {
                    ValuationReport::NotARelation { witness } => {
                        format!("not a relation: indicator sum is nonzero at {witness}\n")
                    }
                    ValuationReport::Holds => "relation holds\n".into(),
                    ValuationReport::Fails { residual } => format!("relation fails: residual {residual}\n"),
                }
            } else {
                to_json(&doc)
            }
        }
        Command::Stability(args) => {
            let q = ws.quotient(&root_doc(&args.root), &parse_list(&args.subset, "I")?)?;
            let report = check_intersection_stability(&q)?;
            let doc = StabilityDoc {
                stable: report.stable,
                witnesses: report
                    .witnesses
                    .iter()
                    .map(|w| WitnessDoc {
                        coset: coset_doc(&q, w.coset),
                        point: vector_doc(&w.point),
                        stray_vertices: w.stray_vertices.iter().map(vector_doc).collect(),
                        bad_edges: w.bad_edges.iter().map(|(a, b)| [vector_doc(a), vector_doc(b)]).collect(),
                    })
                    .collect(),
            };
            if text_mode {
                let mut s = format!("{}\n", if doc.stable { "stable" } else { "not stable" });
                for w in &doc.witnesses {
                    writeln!(
                        s,
                        "at {} ({}): {} stray vertices, {} non-root edges",
                        render_vec(&w.point),
                        render_word(&w.coset.word),
                        w.stray_vertices.len(),
                        w.bad_edges.len()
                    )
                    .unwrap();
                }
                s
            } else {
                to_json(&doc)
            }
        }
        Command::BrianchonGram { input } => {
            let p = parse_polytope(&read_input(input)?)?;
            let sum = brianchon_gram(&p)?;
            let mut check = sum.clone();
            check.push(-1, p);
            let doc = BrianchonGramDoc {
                verified: verify_indicator_relation(&check)?,
                terms: sum
                    .terms()
                    .iter()
                    .map(|(c, b)| match b {
                        Body::Cone(k) => SignedConeDoc {
                            coeff: *c,
                            cone: cone_doc(k),
                        },
                        Body::Polytope(_) => unreachable!("tangent cones only"),
                    })
                    .collect(),
            };
            if text_mode {
                let mut s = String::new();
                for t in &doc.terms {
                    writeln!(
                        s,
                        "{:+} apex={} rays={} lineality={}",
                        t.coeff,
                        render_vec(&t.cone.apex),
                        t.cone.generators.len(),
                        t.cone.lineality.len()
                    )
                    .unwrap();
                }
                writeln!(s, "verified: {}", doc.verified).unwrap();
                s
            } else {
                to_json(&doc)
            }
        }
    };
    Ok(out)
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
    s.push('\n');
    s
}

fn render_word(w: &[usize]) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
    }
}

fn render_set(s: &[usize]) -> String {
    format!("{{{}}}", s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
}

fn render_vec(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn render_sum<L: Serialize>(text_mode: bool, doc: FormalSumDoc<L>, label: impl Fn(&L) -> String) -> String {
    if !text_mode {
        return to_json(&doc);
    }
    let mut s = String::new();
    for t in &doc.terms {
        writeln!(s, "{:>8}  {}", t.coeff, label(&t.label)).unwrap();
    }
    s
}

/// Parses arguments, runs the command and returns the exit status together
/// with the document to print.
pub fn run(cli: &Cli) -> (u8, String) {
    if cli.jobs == 0 {
        let err = CliError::Malformed("--jobs must be at least 1".into());
        return (err.exit_code(), to_json(&err.document()));
    }
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    match execute(cli) {
        Ok(out) => (0, out),
        Err(e) => (e.exit_code(), to_json(&e.document())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn lists_parse() {
        assert_eq!(parse_list("", "I").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_list("1, 3", "I").unwrap(), vec![1, 3]);
        assert!(parse_list("x", "I").is_err());
    }
}
