//! Exact comparison of F-triangles with M-triangles.
//!
//! The left side `(1-y)^n F((x+y)/(1-y), y/(1-y))` and the right side
//! `M(-x, -y/x)` are both honest polynomials: the first because `F` is
//! supported on `k + l <= n`, the second because `μ(a, b)` only lives on
//! pairs with `rk a <= rk b`. Disagreements are reported as data.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::cartan::{CartanType, RootSystemSpec};
use crate::error::{Error, Result};
use crate::nc::{is_self_dual_m_triangle, NCLattice};
use crate::poly::{BivarPoly, UniPoly};
use crate::serde_int;
use crate::triangle::{f_triangle, h_vector, FTriangle};

/// Left-hand side, expanded as `Σ f_{k,l} (x+y)^k y^l (1-y)^{n-k-l}`.
pub fn conjecture_lhs(f: &FTriangle) -> Result<BivarPoly> {
    f.poly().conjecture_substitution(f.rank())
}

/// Right-hand side `Σ_{a<=b} μ(a,b) (-1)^{rk a + rk b} x^{rk b - rk a} y^{rk a}`.
pub fn conjecture_rhs(lattice: &NCLattice) -> BivarPoly {
    let n = lattice.rank();
    let mut grid = vec![0i128; (n + 1) * (n + 1)];
    for (a, b, mu) in lattice.intervals() {
        let (ra, rb) = (lattice.element_rank(a), lattice.element_rank(b));
        let sign = if (ra + rb) % 2 == 0 { 1 } else { -1 };
        grid[(rb - ra) * (n + 1) + ra] += sign * i128::from(mu);
    }
    BivarPoly::from_rows(
        grid.chunks(n + 1)
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )
}

/// `M(-x, -y/x)` computed from the M-triangle itself.
pub fn m_triangle_transform(m: &BivarPoly) -> Result<BivarPoly> {
    let mut acc = BivarPoly::zero();
    for (i, j, c) in m.terms() {
        if j > i {
            return Err(Error::Invariant(format!(
                "M-triangle has a term x^{i} y^{j} with rk a > rk b"
            )));
        }
        let signed = if (i + j) % 2 == 0 { c.clone() } else { -c.clone() };
        acc = &acc + &BivarPoly::monomial(signed, i - j, j);
    }
    Ok(acc)
}

/// Checks that `(y-1)^n F((x+1)/(y-1), 1/(y-1))` equals the left-hand side.
pub fn alternative_form_check(f: &FTriangle) -> Result<bool> {
    Ok(f.poly().alternative_substitution(f.rank())? == conjecture_lhs(f)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub k: usize,
    pub l: usize,
    #[serde(with = "serde_int")]
    pub lhs: BigInt,
    #[serde(with = "serde_int")]
    pub rhs: BigInt,
}

/// Consequences of the conjecture that can be checked on their own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// h-vector of the fan equals the rank generating function of the lattice.
    pub h_vector_is_rank_function: bool,
    /// `f_{n,0} = (-1)^n μ(0, 1)`.
    pub positive_clusters_match_mobius: bool,
    /// `M(x, y) = (xy)^n M(1/y, 1/x)`.
    pub m_triangle_self_dual: bool,
    /// `F(-1, y) = y^n` and `M(1, y) = y^n`.
    pub boundary_values: bool,
    /// Both sides multiply over products of root systems.
    pub multiplicative: bool,
}

impl Evidence {
    pub fn all(&self) -> bool {
        self.h_vector_is_rank_function
            && self.positive_clusters_match_mobius
            && self.m_triangle_self_dual
            && self.boundary_values
            && self.multiplicative
    }
}

/// Wall-clock cost of each stage, in microseconds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub f_triangle_us: u64,
    pub lattice_us: u64,
    pub comparison_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub spec: RootSystemSpec,
    pub n: usize,
    pub coxeter_order: Vec<usize>,
    pub lattice_size: usize,
    pub lhs: BivarPoly,
    pub rhs: BivarPoly,
    pub verified: bool,
    pub mismatches: Vec<Mismatch>,
    pub evidence: Evidence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl ConjectureReport {
    /// Conjecture and every evidence check hold.
    pub fn passed(&self) -> bool {
        self.verified && self.evidence.all()
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions<'a> {
    /// Node labels in the order the simple reflections are multiplied.
    pub coxeter_order: Option<Vec<usize>>,
    pub budget: Budget,
    /// A lattice built earlier for the same spec and ordering.
    pub lattice: Option<&'a NCLattice>,
}

pub fn verify_conjecture(spec: &RootSystemSpec) -> Result<ConjectureReport> {
    verify_conjecture_with(spec, &VerifyOptions::default())
}

pub fn verify_conjecture_with(spec: &RootSystemSpec, opts: &VerifyOptions<'_>) -> Result<ConjectureReport> {
    let n = spec.rank();
    let order: Vec<usize> = opts.coxeter_order.clone().unwrap_or_else(|| (1..=n).collect());

    let started = Instant::now();
    let f = f_triangle(spec)?;
    let lhs = conjecture_lhs(&f)?;
    let f_time = started.elapsed();

    let started = Instant::now();
    let built;
    let lattice = match opts.lattice {
        Some(l) => l,
        None => {
            built = NCLattice::for_spec(spec, Some(&order), &opts.budget)?;
            &built
        }
    };
    if lattice.rank() != n {
        return Err(Error::Invariant(format!(
            "lattice of rank {} supplied for {spec}",
            lattice.rank()
        )));
    }
    let lattice_time = started.elapsed();

    let started = Instant::now();
    let rhs = conjecture_rhs(lattice);
    let mismatches = diff(&lhs, &rhs);
    let m = lattice.m_triangle();
    let evidence = evidence(spec, &f, lattice, &m, &opts.budget)?;
    let comparison_time = started.elapsed();

    Ok(ConjectureReport {
        spec: spec.clone(),
        n,
        coxeter_order: order,
        lattice_size: lattice.len(),
        lhs,
        rhs,
        verified: mismatches.is_empty(),
        mismatches,
        evidence,
        timings: Some(Timings {
            f_triangle_us: f_time.as_micros() as u64,
            lattice_us: lattice_time.as_micros() as u64,
            comparison_us: comparison_time.as_micros() as u64,
        }),
    })
}

fn diff(lhs: &BivarPoly, rhs: &BivarPoly) -> Vec<Mismatch> {
    let rows = lhs.degree_x().max(rhs.degree_x()).map_or(0, |d| d + 1);
    let cols = lhs.degree_y().max(rhs.degree_y()).map_or(0, |d| d + 1);
    let mut out = Vec::new();
    for k in 0..rows {
        for l in 0..cols {
            let (a, b) = (lhs.coeff(k, l), rhs.coeff(k, l));
            if a != b {
                out.push(Mismatch { k, l, lhs: a, rhs: b });
            }
        }
    }
    out
}

fn y_power(n: usize) -> UniPoly {
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    UniPoly::new(c)
}

fn evidence(
    spec: &RootSystemSpec,
    f: &FTriangle,
    lattice: &NCLattice,
    m: &BivarPoly,
    budget: &Budget,
) -> Result<Evidence> {
    let n = spec.rank();

    let h = UniPoly::new(h_vector(spec)?);
    let h_vector_is_rank_function = h == lattice.rank_generating_function();

    let mu = BigInt::from(lattice.mobius_number());
    let signed_mu = if n.is_multiple_of(2) { mu } else { -mu };
    let positive_clusters_match_mobius = f.entry(n, 0) == signed_mu;

    let m_triangle_self_dual = is_self_dual_m_triangle(m, n);

    let boundary_values =
        f.poly().eval_x(&-BigInt::one()) == y_power(n) && m.eval_x(&BigInt::one()) == y_power(n);

    let multiplicative = multiplicativity(spec, f, m, budget)?;

    Ok(Evidence {
        h_vector_is_rank_function,
        positive_clusters_match_mobius,
        m_triangle_self_dual,
        boundary_values,
        multiplicative,
    })
}

/// Both transformations respect products: checked against `A1` for every
/// spec and, for reducible specs, the M-triangle of the product lattice is
/// compared with the product of component M-triangles.
fn multiplicativity(spec: &RootSystemSpec, f: &FTriangle, m: &BivarPoly, budget: &Budget) -> Result<bool> {
    let a1: RootSystemSpec = CartanType::a(1).into();
    let f_a1 = f_triangle(&a1)?;
    let m_a1 = NCLattice::for_spec(&a1, None, budget)?.m_triangle();

    let lhs_product = conjecture_lhs(&f.product(&f_a1))?;
    let lhs_factors = &conjecture_lhs(f)? * &conjecture_lhs(&f_a1)?;
    let rhs_product = m_triangle_transform(&(m * &m_a1))?;
    let rhs_factors = &m_triangle_transform(m)? * &m_triangle_transform(&m_a1)?;
    let mut ok = lhs_product == lhs_factors && rhs_product == rhs_factors;

    if spec.components().len() > 1 {
        let mut m_components = BivarPoly::one();
        let mut f_components = BivarPoly::one();
        for &t in spec.components() {
            let single: RootSystemSpec = t.into();
            m_components = &m_components * &NCLattice::for_spec(&single, None, budget)?.m_triangle();
            f_components = &f_components * f_triangle(&single)?.poly();
        }
        ok &= m_components == *m && f_components == *f.poly();
    }
    Ok(ok)
}
