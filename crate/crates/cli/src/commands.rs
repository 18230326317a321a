//! Subcommand implementations, independent of argument parsing.

use std::path::Path;
use std::time::Duration;

use ftri_core::{
    conjecture_lhs, f_triangle, h_vector_of, natural_f_vector, positive_f_vector, spec_invariant_formulas,
    verify_conjecture_with, Budget, FTriangle, NCLattice, RootSystemSpec, VerifyOptions,
};
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cache::{self, Cache};
use crate::document::{
    ComponentInvariants, FVectorsPayload, InvariantsPayload, MTrianglePayload, OutputDocument, PartialReport, Payload,
};

/// Lattices predicted to be larger than this need `--allow-large` or `--max-seconds`.
pub const DEFAULT_LATTICE_LIMIT: u128 = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Mismatch = 1,
    Usage = 2,
    Timeout = 3,
    Internal = 4,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ftri_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Render(#[from] crate::document::RenderError),
}

impl CliError {
    pub fn status(&self) -> Status {
        use ftri_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Render(_) => Status::Usage,
            CliError::Core(E::Timeout { .. }) => Status::Timeout,
            CliError::Core(
                E::InvalidType(_)
                | E::Parse { .. }
                | E::InvalidNode { .. }
                | E::InvalidOrdering(_)
                | E::TooLarge { .. },
            ) => Status::Usage,
            _ => Status::Internal,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub cache: Option<Cache>,
    pub allow_large: bool,
    pub max_seconds: Option<f64>,
    pub timings: bool,
}

impl Settings {
    fn budget(&self) -> Budget {
        match self.max_seconds {
            Some(s) => Budget::with_timeout(Duration::from_secs_f64(s.max(0.0))),
            None => Budget::unlimited(),
        }
    }
}

pub fn parse_spec(text: &str) -> Result<RootSystemSpec, CliError> {
    text.parse().map_err(|e: ftri_core::Error| CliError::Usage(e.to_string()))
}

fn resolve_order(spec: &RootSystemSpec, order: Option<&[usize]>) -> Result<Vec<usize>, CliError> {
    let n = spec.rank();
    let order = order.map_or_else(|| (1..=n).collect(), <[usize]>::to_vec);
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (1..=n).collect::<Vec<_>>() {
        return Err(ftri_core::Error::InvalidOrdering(order).into());
    }
    Ok(order)
}

fn check_size(spec: &RootSystemSpec, settings: &Settings) -> Result<(), CliError> {
    if settings.allow_large || settings.max_seconds.is_some() {
        return Ok(());
    }
    let size = spec_invariant_formulas(spec)?.cardinality;
    if size > BigInt::from(DEFAULT_LATTICE_LIMIT) {
        return Err(CliError::Usage(format!(
            "the lattice for {spec} has {size} elements (limit {DEFAULT_LATTICE_LIMIT}); \
             pass --allow-large or --max-seconds to build it"
        )));
    }
    Ok(())
}

fn triangle(spec: &RootSystemSpec, settings: &Settings) -> Result<FTriangle, CliError> {
    if let Some(f) = settings.cache.as_ref().and_then(|c| c.load_triangle(spec)) {
        return Ok(f);
    }
    let f = f_triangle(spec)?;
    if let Some(c) = &settings.cache {
        c.store_triangle(spec, &f)?;
    }
    Ok(f)
}

fn lattice(spec: &RootSystemSpec, order: &[usize], settings: &Settings, budget: &Budget) -> Result<NCLattice, CliError> {
    if let Some(l) = settings.cache.as_ref().and_then(|c| c.load_lattice(spec, order)) {
        return Ok(l);
    }
    check_size(spec, settings)?;
    let l = NCLattice::for_spec(spec, Some(order), budget)?;
    if let Some(c) = &settings.cache {
        c.store_lattice(spec, order, &l)?;
    }
    Ok(l)
}

pub fn ftriangle(spec: &RootSystemSpec, settings: &Settings) -> Result<OutputDocument, CliError> {
    let f = triangle(spec, settings)?;
    Ok(OutputDocument::new(spec.clone(), Payload::FTriangle(f)))
}

pub fn fvectors(spec: &RootSystemSpec, settings: &Settings) -> Result<OutputDocument, CliError> {
    let f = triangle(spec, settings)?;
    let full = f.diagonal();
    let payload = FVectorsPayload {
        n: spec.rank(),
        h: h_vector_of(&full),
        positive: positive_f_vector(&f).f,
        natural: natural_f_vector(&f)?.f,
        f: full.f,
    };
    Ok(OutputDocument::new(spec.clone(), Payload::FVectors(payload)))
}

pub fn mtriangle(spec: &RootSystemSpec, order: Option<&[usize]>, settings: &Settings) -> Result<OutputDocument, CliError> {
    let order = resolve_order(spec, order)?;
    let l = lattice(spec, &order, settings, &settings.budget())?;
    let payload = MTrianglePayload::from_poly(spec.rank(), order, l.len(), &l.m_triangle());
    Ok(OutputDocument::new(spec.clone(), Payload::MTriangle(payload)))
}

pub fn invariants(spec: &RootSystemSpec) -> Result<OutputDocument, CliError> {
    let formulas = spec_invariant_formulas(spec)?;
    let components = spec
        .components()
        .iter()
        .map(|t| {
            let inv = t.invariants();
            ComponentInvariants {
                ty: t.to_string(),
                coxeter_number: inv.coxeter_number,
                exponents: inv.exponents,
            }
        })
        .collect();
    let zeta_values = (1..=5).map(|m| formulas.zeta_at(m)).collect::<Result<_, _>>()?;
    let payload = InvariantsPayload {
        n: spec.rank(),
        components,
        zeta: formulas.zeta.coeffs().iter().map(|c| c.to_string()).collect(),
        zeta_values,
        cardinality: formulas.cardinality,
        mobius_number: formulas.mobius_number,
        h_vector: ftri_core::h_vector(spec)?,
    };
    Ok(OutputDocument::new(spec.clone(), Payload::Invariants(payload)))
}

/// Runs the full check. A timeout is not an error here: the finished part is
/// returned as a partial document with [`Status::Timeout`].
pub fn verify(
    spec: &RootSystemSpec,
    order: Option<&[usize]>,
    settings: &Settings,
) -> Result<(OutputDocument, Status), CliError> {
    let order = resolve_order(spec, order)?;
    let budget = settings.budget();
    let partial = |stage: String| -> Result<(OutputDocument, Status), CliError> {
        let f = triangle(spec, settings)?;
        let payload = PartialReport {
            n: spec.rank(),
            coxeter_order: order.clone(),
            stage,
            lhs: conjecture_lhs(&f)?,
            f_triangle: f,
        };
        Ok((OutputDocument::new(spec.clone(), Payload::Partial(payload)), Status::Timeout))
    };

    let l = match lattice(spec, &order, settings, &budget) {
        Ok(l) => l,
        Err(CliError::Core(ftri_core::Error::Timeout { stage })) => return partial(stage),
        Err(e) => return Err(e),
    };
    let opts = VerifyOptions {
        coxeter_order: Some(order.clone()),
        budget,
        lattice: Some(&l),
    };
    let mut report = match verify_conjecture_with(spec, &opts) {
        Ok(r) => r,
        Err(ftri_core::Error::Timeout { stage }) => return partial(stage),
        Err(e) => return Err(e.into()),
    };
    if !settings.timings {
        report.timings = None;
    }
    let status = if report.passed() { Status::Ok } else { Status::Mismatch };
    Ok((OutputDocument::new(spec.clone(), Payload::Report(report)), status))
}

#[derive(Clone, Debug)]
pub struct SweepLine {
    pub spec: String,
    pub status: Status,
    pub detail: String,
}

/// Verifies each spec on a pool of `jobs` threads. With `out_dir`, each
/// document is written to `<out_dir>/<spec>.json`. Lines come back in input order.
pub fn sweep(specs: &[String], settings: &Settings, jobs: usize, out_dir: Option<&Path>) -> Result<Vec<SweepLine>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let lines = pool.install(|| {
        specs
            .par_iter()
            .map(|text| sweep_one(text, settings, out_dir))
            .collect()
    });
    Ok(lines)
}

fn sweep_one(text: &str, settings: &Settings, out_dir: Option<&Path>) -> SweepLine {
    let result = parse_spec(text).and_then(|spec| {
        let (doc, status) = verify(&spec, None, settings)?;
        if let Some(dir) = out_dir {
            let body = doc.render(crate::document::Format::Json)?;
            cache::write_atomic(&dir.join(format!("{spec}.json")), body.as_bytes())?;
        }
        let detail = match &doc.payload {
            Payload::Report(r) => format!("lattice size {}", r.lattice_size),
            Payload::Partial(p) => format!("stopped during {}", p.stage),
            _ => String::new(),
        };
        Ok((spec.to_string(), status, detail))
    });
    match result {
        Ok((spec, status, detail)) => SweepLine { spec, status, detail },
        Err(e) => SweepLine {
            spec: text.to_string(),
            status: e.status(),
            detail: e.to_string(),
        },
    }
}

impl std::fmt::Display for SweepLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let word = match self.status {
            Status::Ok => "verified",
            Status::Mismatch => "MISMATCH",
            Status::Usage => "invalid",
            Status::Timeout => "timeout",
            Status::Internal => "error",
        };
        write!(f, "{}\t{}\t{}", self.spec, word, self.detail)
    }
}

/// Overall exit status of a sweep: any mismatch wins, then errors, then timeouts.
pub fn sweep_status(lines: &[SweepLine]) -> Status {
    let has = |s| lines.iter().any(|l| l.status == s);
    [Status::Mismatch, Status::Internal, Status::Usage, Status::Timeout]
        .into_iter()
        .find(|&s| has(s))
        .unwrap_or(Status::Ok)
}
