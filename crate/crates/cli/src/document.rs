//! The JSON exchange format.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "field": "Q",
//!   "dim": 3,
//!   "g": [[1, 2, [[3, "1"]]]],
//!   "n": [[1, 2, [[3, 1]]]],
//!   "product": [[1, 2, [[3, "-1/2"]]]],
//!   "grading": [[1, 0], [0, 1], [1, 1]]
//! }
//! ```
//!
//! Indices are 1-based. Bracket entries need `i < j`; the antisymmetric
//! completion is implied. Anything not listed is zero.

use std::collections::BTreeSet;

use postlie::catalog::CatalogObject;
use postlie::lie::LieError;
use postlie::{BilinearProduct, Field, LieAlgebra, PaPair, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u32,
    },
}

impl FieldSpec {
    pub fn of(field: Field) -> Self {
        match field {
            Field::Rational => FieldSpec::Named("Q".into()),
            Field::Prime(m) => FieldSpec::Prime { p: m.get() },
        }
    }

    pub fn resolve(&self) -> Result<Field, DocumentError> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(Field::Rational),
            FieldSpec::Named(s) => Err(field_error(
                "field",
                format!("expected \"Q\" or {{\"Fp\": p}}, got {s:?}"),
            )),
            FieldSpec::Prime { p } => Field::prime(*p).map_err(|e| field_error("field", e.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

/// `[i, j, [[k, coeff], …]]`
pub type Entry = (usize, usize, Vec<(usize, Coeff)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub schema: u32,
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<Vec<i64>>>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: strip_location(&e.to_string()),
        })?;
        if doc.schema != SCHEMA_VERSION {
            return Err(field_error(
                "schema",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", doc.schema),
            ));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_object(obj: &CatalogObject, source: Option<String>) -> Self {
        match obj {
            CatalogObject::Algebra(a) => Self {
                schema: SCHEMA_VERSION,
                field: FieldSpec::of(a.field()),
                dim: a.dim(),
                source,
                g: Some(bracket_entries(a)),
                n: None,
                product: None,
                grading: None,
            },
            CatalogObject::Pair(p) => Self::from_pair(p, source),
        }
    }

    pub fn from_pair(p: &PaPair, source: Option<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            field: FieldSpec::of(p.field()),
            dim: p.dim(),
            source,
            g: Some(bracket_entries(p.g())),
            n: Some(bracket_entries(p.n())),
            product: Some(product_entries(p.product())),
            grading: None,
        }
    }

    pub fn load(&self) -> Result<Loaded, DocumentError> {
        let field = self.field.resolve()?;
        let d = self.dim;
        if d == 0 {
            return Err(field_error("dim", "must be at least 1"));
        }
        let g = self
            .g
            .as_deref()
            .map(|e| bracket_tensor(field, d, "g", e))
            .transpose()?;
        let n = self
            .n
            .as_deref()
            .map(|e| bracket_tensor(field, d, "n", e))
            .transpose()?;
        let product = match self.product.as_deref() {
            Some(entries) => Some(product_tensor(field, d, entries)?),
            None => None,
        };
        if let Some(gr) = &self.grading {
            if gr.len() != d {
                return Err(field_error(
                    "grading",
                    format!("{} degrees for dimension {d}", gr.len()),
                ));
            }
            let rank = gr.first().map_or(0, Vec::len);
            if let Some(i) = gr.iter().position(|v| v.len() != rank) {
                return Err(field_error(
                    format!("grading[{i}]"),
                    format!("expected {rank} coordinates"),
                ));
            }
        }
        Ok(Loaded {
            field,
            dim: d,
            g,
            n,
            product,
            grading: self.grading.clone(),
        })
    }
}

/// serde_json appends " at line L column C"; the location is reported
/// separately.
fn strip_location(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn coeff_out(s: &Scalar) -> Coeff {
    match s.residue() {
        Some(r) => Coeff::Int(i64::from(r)),
        None => Coeff::Text(s.to_string()),
    }
}

fn bracket_entries(a: &LieAlgebra) -> Vec<Entry> {
    let d = a.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let terms = nonzero_terms(a.bracket_basis(i, j));
            if !terms.is_empty() {
                out.push((i + 1, j + 1, terms));
            }
        }
    }
    out
}

fn product_entries(p: &BilinearProduct) -> Vec<Entry> {
    let d = p.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let terms = nonzero_terms(p.basis_product(i, j));
            if !terms.is_empty() {
                out.push((i + 1, j + 1, terms));
            }
        }
    }
    out
}

fn nonzero_terms(v: &[Scalar]) -> Vec<(usize, Coeff)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k + 1, coeff_out(c)))
        .collect()
}

fn parse_coeff(field: Field, c: &Coeff, path: &str) -> Result<Scalar, DocumentError> {
    match c {
        Coeff::Int(i) => Ok(field.from_i64(*i)),
        Coeff::Text(t) => field.parse(t).map_err(|e| field_error(path, e.to_string())),
    }
}

fn check_index(i: usize, d: usize, path: &str) -> Result<usize, DocumentError> {
    if (1..=d).contains(&i) {
        Ok(i - 1)
    } else {
        Err(field_error(path, format!("index {i} outside 1..={d}")))
    }
}

/// Dense `d³` tensor from sparse entries; `antisymmetric` adds `[e_j,e_i]`.
fn dense(
    field: Field,
    d: usize,
    name: &str,
    entries: &[Entry],
    antisymmetric: bool,
) -> Result<Vec<Scalar>, DocumentError> {
    let mut t = vec![field.zero(); d * d * d];
    let mut seen = BTreeSet::new();
    for (pos, (i, j, terms)) in entries.iter().enumerate() {
        let path = format!("{name}[{pos}]");
        let i0 = check_index(*i, d, &path)?;
        let j0 = check_index(*j, d, &path)?;
        if antisymmetric && i0 >= j0 {
            return Err(field_error(path, format!("bracket entries need i < j, got ({i}, {j})")));
        }
        if !seen.insert((i0, j0)) {
            return Err(field_error(path, format!("duplicate entry ({i}, {j})")));
        }
        let mut ks = BTreeSet::new();
        for (tpos, (k, c)) in terms.iter().enumerate() {
            let tpath = format!("{path}[2][{tpos}]");
            let k0 = check_index(*k, d, &tpath)?;
            if !ks.insert(k0) {
                return Err(field_error(tpath, format!("duplicate component e{k}")));
            }
            let value = parse_coeff(field, c, &tpath)?;
            t[(i0 * d + j0) * d + k0] = value.clone();
            if antisymmetric {
                t[(j0 * d + i0) * d + k0] = -value;
            }
        }
    }
    Ok(t)
}

fn bracket_tensor(field: Field, d: usize, name: &str, entries: &[Entry]) -> Result<Vec<Scalar>, DocumentError> {
    dense(field, d, name, entries, true)
}

fn product_tensor(field: Field, d: usize, entries: &[Entry]) -> Result<BilinearProduct, DocumentError> {
    let t = dense(field, d, "product", entries, false)?;
    BilinearProduct::new(field, d, t).map_err(|e| field_error("product", e.to_string()))
}

/// A parsed document with dense tensors. Brackets are not yet checked for
/// the Jacobi identity.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub field: Field,
    pub dim: usize,
    pub g: Option<Vec<Scalar>>,
    pub n: Option<Vec<Scalar>>,
    pub product: Option<BilinearProduct>,
    pub grading: Option<Vec<Vec<i64>>>,
}

impl Loaded {
    /// The bracket named `which`, abelian when absent.
    pub fn algebra(&self, which: &str) -> Result<LieAlgebra, LieError> {
        let t = match which {
            "g" => &self.g,
            _ => &self.n,
        };
        match t {
            Some(c) => LieAlgebra::try_new(self.field, self.dim, c.clone()),
            None => Ok(LieAlgebra::abelian(self.field, self.dim)),
        }
    }

    pub fn product_or_zero(&self) -> BilinearProduct {
        self.product
            .clone()
            .unwrap_or_else(|| BilinearProduct::zero(self.field, self.dim))
    }
}
