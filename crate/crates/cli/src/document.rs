//! Versioned output documents and their JSON, TeX and CSV renderings.

use std::fmt::Write as _;

use ftri_core::serde_int;
use ftri_core::{BivarPoly, ConjectureReport, FTriangle, RootSystemSpec};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tex,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: u32,
    pub spec: RootSystemSpec,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Payload {
    FTriangle(FTriangle),
    MTriangle(MTrianglePayload),
    FVectors(FVectorsPayload),
    Invariants(InvariantsPayload),
    Report(ConjectureReport),
    Partial(PartialReport),
}

/// `m[i][j]` is the coefficient of `x^i y^j`, `j <= i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MTrianglePayload {
    pub n: usize,
    pub coxeter_order: Vec<usize>,
    pub lattice_size: usize,
    #[serde(with = "serde_int::rows")]
    pub m: Vec<Vec<BigInt>>,
}

impl MTrianglePayload {
    pub fn from_poly(n: usize, coxeter_order: Vec<usize>, lattice_size: usize, m: &BivarPoly) -> Self {
        let m = (0..=n).map(|i| (0..=i).map(|j| m.coeff(i, j)).collect()).collect();
        MTrianglePayload {
            n,
            coxeter_order,
            lattice_size,
            m,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVectorsPayload {
    pub n: usize,
    #[serde(with = "serde_int::seq")]
    pub f: Vec<BigInt>,
    #[serde(with = "serde_int::seq")]
    pub positive: Vec<BigInt>,
    #[serde(with = "serde_int::seq")]
    pub natural: Vec<BigInt>,
    #[serde(with = "serde_int::seq")]
    pub h: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInvariants {
    #[serde(rename = "type")]
    pub ty: String,
    pub coxeter_number: u64,
    pub exponents: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsPayload {
    pub n: usize,
    pub components: Vec<ComponentInvariants>,
    /// Coefficients of the zeta polynomial in increasing degree, as exact fractions.
    pub zeta: Vec<String>,
    /// Zeta polynomial evaluated at 1..=5.
    #[serde(with = "serde_int::seq")]
    pub zeta_values: Vec<BigInt>,
    #[serde(with = "serde_int")]
    pub cardinality: BigInt,
    #[serde(with = "serde_int")]
    pub mobius_number: BigInt,
    #[serde(with = "serde_int::seq")]
    pub h_vector: Vec<BigInt>,
}

/// What was finished before the time budget ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialReport {
    pub n: usize,
    pub coxeter_order: Vec<usize>,
    pub stage: String,
    pub f_triangle: FTriangle,
    pub lhs: BivarPoly,
}

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("format {format:?} is not available for {kind} output")]
    Unsupported { format: Format, kind: &'static str },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl OutputDocument {
    pub fn new(spec: RootSystemSpec, payload: Payload) -> Self {
        OutputDocument {
            schema_version: SCHEMA_VERSION,
            spec,
            payload,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::FTriangle(_) => "f_triangle",
            Payload::MTriangle(_) => "m_triangle",
            Payload::FVectors(_) => "f_vectors",
            Payload::Invariants(_) => "invariants",
            Payload::Report(_) => "report",
            Payload::Partial(_) => "partial",
        }
    }

    pub fn render(&self, format: Format) -> Result<String, RenderError> {
        let unsupported = || RenderError::Unsupported {
            format,
            kind: self.kind(),
        };
        match (format, &self.payload) {
            (Format::Json, _) => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                Ok(s)
            }
            (Format::Tex, Payload::FTriangle(f)) => Ok(bmatrix(&f.rows())),
            (Format::Tex, Payload::MTriangle(m)) => Ok(bmatrix(&m.m)),
            (Format::Tex, Payload::FVectors(v)) => {
                let mut s = String::new();
                for (name, row) in [("f", &v.f), ("positive", &v.positive), ("natural", &v.natural), ("h", &v.h)] {
                    writeln!(s, "% {name}").unwrap();
                    s.push_str(&bmatrix(std::slice::from_ref(row)));
                }
                Ok(s)
            }
            (Format::Csv, Payload::FTriangle(f)) => {
                let mut s = String::from("k,l,value\n");
                for (k, row) in f.rows().iter().enumerate() {
                    for (l, v) in row.iter().enumerate() {
                        writeln!(s, "{k},{l},{v}").unwrap();
                    }
                }
                Ok(s)
            }
            (Format::Csv, Payload::MTriangle(m)) => {
                let mut s = String::from("i,j,value\n");
                for (i, row) in m.m.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        writeln!(s, "{i},{j},{v}").unwrap();
                    }
                }
                Ok(s)
            }
            (Format::Csv, Payload::FVectors(v)) => {
                let mut s = String::from("k,f,positive,natural,h\n");
                for k in 0..=v.n {
                    writeln!(s, "{k},{},{},{},{}", v.f[k], v.positive[k], v.natural[k], v.h[k]).unwrap();
                }
                Ok(s)
            }
            _ => Err(unsupported()),
        }
    }
}

/// Triangular rows as a `bmatrix`, one row per line.
pub fn bmatrix(rows: &[Vec<BigInt>]) -> String {
    let mut s = String::from("\\begin{bmatrix}\n");
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str("  ");
        s.push_str(&cells.join("&"));
        if i + 1 < rows.len() {
            s.push_str("\\\\");
        }
        s.push('\n');
    }
    s.push_str("\\end{bmatrix}\n");
    s
}
