//! JSON documents. Polynomials and forms are strings in the library's literal
//! syntax; matrices are row-major grids of such strings.

use std::path::Path;

use mfchern::chern::Connection;
use mfchern::exterior::{parse_form, FormMatrix};
use mfchern::mf::{Complex, Homotopy, MatFac, MfError, StrictMorphism};
use mfchern::ring::{MonomialOrder, PolyMatrix, RingCtx, RingMap};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

type Grid = Vec<Vec<String>>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Input(String),
    /// A well-formed input that fails a validity requirement (exit code 1).
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            _ => 2,
        }
    }

    fn at(self, path: &str) -> CliError {
        match self {
            CliError::Input(m) => CliError::Parse {
                path: path.into(),
                message: m,
            },
            CliError::Invalid(m) => CliError::Invalid(format!("{path}: {m}")),
            other => other,
        }
    }
}

/// Validity failures are verification results; everything else is bad input.
pub fn mf_error(e: MfError) -> CliError {
    match e {
        MfError::NotFactorization { .. } | MfError::NotStrict(_) | MfError::NotComplex { .. } => {
            CliError::Invalid(e.to_string())
        }
        other => CliError::Input(other.to_string()),
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatFacDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    pub f: String,
    #[serde(rename = "A")]
    pub a: Grid,
    #[serde(rename = "B")]
    pub b: Grid,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    #[allow(dead_code)]
    kind: String,
    source: MatFacDoc,
    target: MatFacDoc,
    alpha0: Grid,
    alpha1: Grid,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomotopyDoc {
    #[allow(dead_code)]
    kind: String,
    source: MatFacDoc,
    target: MatFacDoc,
    alpha0: Grid,
    alpha1: Grid,
    beta0: Grid,
    beta1: Grid,
    h0: Grid,
    h1: Grid,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingMapDoc {
    #[allow(dead_code)]
    kind: String,
    source_vars: Vec<String>,
    target_vars: Vec<String>,
    #[serde(default)]
    order: Option<String>,
    images: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    #[allow(dead_code)]
    kind: String,
    vars: Vec<String>,
    #[serde(default)]
    order: Option<String>,
    lowest_degree: i64,
    ranks: Vec<usize>,
    differentials: Vec<Grid>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    #[allow(dead_code)]
    kind: String,
    left: MatFacDoc,
    right: MatFacDoc,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaDoc {
    gamma0: Grid,
    gamma1: Grid,
}

// one document is alive at a time, so the size spread is harmless
#[allow(clippy::large_enum_variant)]
pub enum Document {
    MatFac(MatFac),
    Morphism(StrictMorphism),
    Homotopy {
        h: Homotopy,
        alpha: StrictMorphism,
        beta: StrictMorphism,
    },
    RingMap(RingMap),
    Complex(Complex),
    Pair(MatFac, MatFac),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::MatFac(_) => "matfac",
            Document::Morphism(_) => "morphism",
            Document::Homotopy { .. } => "homotopy",
            Document::RingMap(_) => "ringmap",
            Document::Complex(_) => "complex",
            Document::Pair(..) => "pair",
        }
    }
}

fn ring(vars: &[String], order: Option<&str>) -> Result<RingCtx, CliError> {
    let order: MonomialOrder = order
        .map_or(Ok(MonomialOrder::default()), str::parse)
        .map_err(input)?;
    RingCtx::new(vars, order).map_err(input)
}

/// Parses a grid; an empty grid has no column count, so `shape` supplies it.
fn matrix(
    grid: &Grid,
    ctx: &RingCtx,
    shape: (usize, usize),
    what: &str,
) -> Result<PolyMatrix, CliError> {
    let m = if grid.is_empty() {
        PolyMatrix::zeros(0, shape.1, ctx.nvars())
    } else {
        PolyMatrix::parse(grid, ctx).map_err(|e| CliError::Input(format!("{what}: {e}")))?
    };
    if (m.rows(), m.cols()) != shape {
        return Err(CliError::Input(format!(
            "{what} is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            shape.0,
            shape.1
        )));
    }
    Ok(m)
}

impl MatFacDoc {
    pub fn to_matfac(&self) -> Result<MatFac, CliError> {
        if let Some(k) = self.kind.as_deref().filter(|&k| k != "matfac") {
            return Err(CliError::Input(format!(
                "expected a matfac document, found kind `{k}`"
            )));
        }
        let ctx = ring(&self.vars, self.order.as_deref())?;
        MatFac::parse(ctx, &self.f, &self.a, &self.b).map_err(mf_error)
    }

    pub fn from_matfac(m: &MatFac) -> Self {
        let ctx = m.ctx();
        let order = ctx.order();
        MatFacDoc {
            kind: Some("matfac".into()),
            vars: ctx.vars().to_vec(),
            order: (order != MonomialOrder::default()).then(|| order.name().to_string()),
            f: ctx.print(m.potential()),
            a: m.a().to_strings(ctx),
            b: m.b().to_strings(ctx),
        }
    }
}

fn typed<T: DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(input)
}

fn morphism(
    source: &MatFacDoc,
    target: &MatFacDoc,
    g0: &Grid,
    g1: &Grid,
) -> Result<StrictMorphism, CliError> {
    let (m, n) = (source.to_matfac()?, target.to_matfac()?);
    let a0 = matrix(g0, m.ctx(), (n.r0(), m.r0()), "alpha0")?;
    let a1 = matrix(g1, m.ctx(), (n.r1(), m.r1()), "alpha1")?;
    StrictMorphism::new(m, n, a0, a1).map_err(mf_error)
}

pub fn parse_document(v: Value) -> Result<Document, CliError> {
    let kind = match v.get("kind") {
        None => "matfac".to_string(),
        Some(Value::String(k)) => k.clone(),
        Some(other) => {
            return Err(CliError::Input(format!(
                "`kind` must be a string, found {other}"
            )))
        }
    };
    match kind.as_str() {
        "matfac" => Ok(Document::MatFac(typed::<MatFacDoc>(v)?.to_matfac()?)),
        "morphism" => {
            let d: MorphismDoc = typed(v)?;
            Ok(Document::Morphism(morphism(
                &d.source, &d.target, &d.alpha0, &d.alpha1,
            )?))
        }
        "homotopy" => {
            let d: HomotopyDoc = typed(v)?;
            let alpha = morphism(&d.source, &d.target, &d.alpha0, &d.alpha1)?;
            let beta = morphism(&d.source, &d.target, &d.beta0, &d.beta1)?;
            let (m, n) = (alpha.source(), alpha.target());
            let h = Homotopy {
                h0: matrix(&d.h0, m.ctx(), (n.r1(), m.r0()), "h0")?,
                h1: matrix(&d.h1, m.ctx(), (n.r0(), m.r1()), "h1")?,
            };
            Ok(Document::Homotopy { h, alpha, beta })
        }
        "ringmap" => {
            let d: RingMapDoc = typed(v)?;
            let source = ring(&d.source_vars, d.order.as_deref())?;
            let target = ring(&d.target_vars, d.order.as_deref())?;
            Ok(Document::RingMap(
                RingMap::parse(source, target, &d.images).map_err(input)?,
            ))
        }
        "complex" => {
            let d: ComplexDoc = typed(v)?;
            let ctx = ring(&d.vars, d.order.as_deref())?;
            if d.differentials.len() + 1 != d.ranks.len().max(1) {
                return Err(CliError::Input(format!(
                    "{} ranks need {} differentials, got {}",
                    d.ranks.len(),
                    d.ranks.len().saturating_sub(1),
                    d.differentials.len()
                )));
            }
            let diffs = d
                .differentials
                .iter()
                .enumerate()
                .map(|(k, g)| {
                    matrix(
                        g,
                        &ctx,
                        (d.ranks[k + 1], d.ranks[k]),
                        &format!("differential {k}"),
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Document::Complex(
                Complex::new(ctx, d.lowest_degree, d.ranks, diffs).map_err(mf_error)?,
            ))
        }
        "pair" => {
            let d: PairDoc = typed(v)?;
            Ok(Document::Pair(d.left.to_matfac()?, d.right.to_matfac()?))
        }
        other => Err(CliError::Input(format!("unknown document kind `{other}`"))),
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: p.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: p,
        message: e.to_string(),
    })
}

pub fn load(path: &Path) -> Result<Document, CliError> {
    parse_document(read_json(path)?).map_err(|e| e.at(&path.display().to_string()))
}

pub fn load_matfac(path: &Path) -> Result<MatFac, CliError> {
    match load(path)? {
        Document::MatFac(m) => Ok(m),
        other => Err(CliError::Parse {
            path: path.display().to_string(),
            message: format!("expected a matfac document, found {}", other.kind()),
        }),
    }
}

fn forms(
    grid: &Grid,
    ctx: &RingCtx,
    shape: (usize, usize),
    what: &str,
) -> Result<FormMatrix, CliError> {
    let rows = grid
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_form(s, ctx))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    let m = if rows.is_empty() {
        FormMatrix::zeros(0, shape.1, ctx.nvars())
    } else {
        FormMatrix::from_rows(rows, ctx.nvars()).map_err(input)?
    };
    if (m.rows(), m.cols()) != shape {
        return Err(CliError::Input(format!(
            "{what} is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            shape.0,
            shape.1
        )));
    }
    Ok(m)
}

/// A connection document `{"gamma0": .., "gamma1": ..}` of 1-form matrices on `m`.
pub fn load_connection(path: &Path, m: &MatFac) -> Result<Connection, CliError> {
    let p = path.display().to_string();
    let d: GammaDoc = typed(read_json(path)?).map_err(|e| e.at(&p))?;
    let build = || -> Result<Connection, CliError> {
        let g0 = forms(&d.gamma0, m.ctx(), (m.r0(), m.r0()), "gamma0")?;
        let g1 = forms(&d.gamma1, m.ctx(), (m.r1(), m.r1()), "gamma1")?;
        Connection::new(m, g0, g1).map_err(input)
    };
    build().map_err(|e| e.at(&p))
}

pub fn render(m: &MatFac) -> String {
    let mut s =
        serde_json::to_string_pretty(&MatFacDoc::from_matfac(m)).expect("documents serialize");
    s.push('\n');
    s
}
