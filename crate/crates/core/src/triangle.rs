//! F-triangles and f-vectors of cluster fans.
//!
//! Both are computed together by induction on the Dynkin diagram. For an
//! irreducible system on nodes `I`:
//!
//! * `∂_x f(I) = (h+2)/2 · Σ_i f(I∖{i})` with `f(0) = 1` fixes the f-vector;
//! * `∂_y F(I) = Σ_i F(I∖{i})` fixes every part of `F` that involves `y`;
//! * the remaining `y`-free part follows from `F(x, x) = f(x)`.
//!
//! Products of root systems multiply. Intermediate values are rational; every
//! result is checked to be a nonnegative integer polynomial.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanType, RootSystemSpec};
use crate::error::{Error, Result};
use crate::poly::{BivarPoly, RationalUniPoly, UniPoly};
use crate::serde_int;

/// Cone counts `f_{k,l}` by number of positive (`k`) and negative simple (`l`)
/// spanning roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTriangle {
    rank: usize,
    poly: BivarPoly,
}

impl FTriangle {
    /// Wraps a polynomial after checking the triangle support and sign conditions.
    pub fn new(rank: usize, poly: BivarPoly) -> Result<Self> {
        for (k, l, c) in poly.terms() {
            if k + l > rank {
                return Err(Error::Invariant(format!(
                    "f_{{{k},{l}}} = {c} lies outside the triangle of rank {rank}"
                )));
            }
            if c.is_negative() {
                return Err(Error::Invariant(format!("f_{{{k},{l}}} = {c} is negative")));
            }
        }
        Ok(FTriangle { rank, poly })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn poly(&self) -> &BivarPoly {
        &self.poly
    }

    pub fn entry(&self, k: usize, l: usize) -> BigInt {
        self.poly.coeff(k, l)
    }

    /// Row `k` holds `f_{k,0} .. f_{k,n-k}`.
    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..=self.rank)
            .map(|k| (0..=self.rank - k).map(|l| self.entry(k, l)).collect())
            .collect()
    }

    /// The f-vector `F(x, x)`.
    pub fn diagonal(&self) -> FVector {
        FVector::from_poly(self.rank, &self.poly.diagonal())
    }

    pub fn product(&self, other: &FTriangle) -> FTriangle {
        FTriangle {
            rank: self.rank + other.rank,
            poly: &self.poly * &other.poly,
        }
    }

    /// `F(x, y) = (-1)^n F(-1-x, -1-y)`.
    pub fn is_dehn_sommerville_symmetric(&self) -> bool {
        self.poly.reflect(self.rank).is_ok_and(|r| r == self.poly)
    }
}

#[derive(Serialize, Deserialize)]
struct TriangleRepr {
    n: usize,
    #[serde(with = "serde_int::rows")]
    f: Vec<Vec<BigInt>>,
}

impl Serialize for FTriangle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TriangleRepr {
            n: self.rank,
            f: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FTriangle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TriangleRepr::deserialize(d)?;
        FTriangle::new(repr.n, BivarPoly::from_rows(repr.f)).map_err(serde::de::Error::custom)
    }
}

/// Numbers of cones `f_0 .. f_n` by dimension (or a specialization of them).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub n: usize,
    #[serde(with = "serde_int::seq")]
    pub f: Vec<BigInt>,
}

impl FVector {
    fn from_poly(rank: usize, p: &UniPoly) -> FVector {
        FVector {
            n: rank,
            f: (0..=rank).map(|k| p.coeff(k)).collect(),
        }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.f
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.f.clone())
    }

    pub fn product(&self, other: &FVector) -> FVector {
        FVector::from_poly(self.n + other.n, &(&self.to_poly() * &other.to_poly()))
    }
}

/// Memo table for the recursion, keyed on irreducible types. Products are
/// not stored; multiplying component results is cheap.
#[derive(Default)]
pub struct TriangleMemo {
    table: Mutex<HashMap<CartanType, (FTriangle, FVector)>>,
}

impl TriangleMemo {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide memo used by the free functions of this module.
    pub fn global() -> &'static TriangleMemo {
        static GLOBAL: OnceLock<TriangleMemo> = OnceLock::new();
        GLOBAL.get_or_init(TriangleMemo::new)
    }

    pub fn len(&self) -> usize {
        self.table.lock().expect("memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn f_triangle(&self, spec: &RootSystemSpec) -> Result<FTriangle> {
        let mut acc = FTriangle {
            rank: 0,
            poly: BivarPoly::one(),
        };
        for &t in spec.components() {
            acc = acc.product(&self.irreducible(t)?.0);
        }
        Ok(acc)
    }

    pub fn f_vector(&self, spec: &RootSystemSpec) -> Result<FVector> {
        let mut acc = FVector {
            n: 0,
            f: vec![BigInt::one()],
        };
        for &t in spec.components() {
            acc = acc.product(&self.irreducible(t)?.1);
        }
        Ok(acc)
    }

    fn irreducible(&self, t: CartanType) -> Result<(FTriangle, FVector)> {
        if let Some(hit) = self.table.lock().expect("memo poisoned").get(&t) {
            return Ok(hit.clone());
        }
        let computed = self.compute(t)?;
        self.table
            .lock()
            .expect("memo poisoned")
            .entry(t)
            .or_insert(computed.clone());
        Ok(computed)
    }

    fn compute(&self, t: CartanType) -> Result<(FTriangle, FVector)> {
        let n = t.rank();
        let h = t.invariants().coxeter_number;

        let mut child_triangles = BivarPoly::zero();
        let mut child_fvectors = UniPoly::zero();
        for i in t.diagram().nodes() {
            let rest = t.delete_node(i)?;
            child_triangles = &child_triangles + self.f_triangle(&rest)?.poly();
            child_fvectors = &child_fvectors + &self.f_vector(&rest)?.to_poly();
        }

        // f = 1 + (h+2)/2 ∫ Σ f(children) dx
        let factor = BigRational::new(BigInt::from(h + 2), BigInt::from(2));
        let f_rational = &RationalUniPoly::one()
            + &child_fvectors.to_rational().antiderivative().scale(&factor);
        let f = f_rational
            .try_integral()
            .ok_or_else(|| Error::Invariant(format!("f-vector of {t} is not integral: {f_rational}")))?;
        let fvec = FVector::from_poly(n, &f);
        if fvec.f.iter().any(|c| c.is_negative()) || f.degree() != Some(n) {
            return Err(Error::Invariant(format!("f-vector of {t} is malformed: {f}")));
        }

        // G = ∫ Σ F(children) dy, then F(x, 0) = f(x) - G(x, x)
        let g = child_triangles.to_rational().antiderivative_y();
        let positive_part = &f_rational - &g.diagonal();
        let full = &g + &positive_part.in_x();
        let poly = full
            .try_integral()
            .ok_or_else(|| Error::Invariant(format!("F-triangle of {t} is not integral: {full}")))?;
        let triangle = FTriangle::new(n, poly)?;
        Ok((triangle, fvec))
    }
}

/// F-triangle of a root system, by the recursion on the Dynkin diagram.
pub fn f_triangle(spec: &RootSystemSpec) -> Result<FTriangle> {
    TriangleMemo::global().f_triangle(spec)
}

/// f-vector of a root system, by its own recursion (independent of `f_triangle`).
pub fn f_vector(spec: &RootSystemSpec) -> Result<FVector> {
    TriangleMemo::global().f_vector(spec)
}

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// Closed-form type-A triangle:
/// `f_{k,l} = (l+1)/(k+l+1) · C(n, k+l) · C(n+k, n)`.
pub fn closed_form_a(n: usize) -> FTriangle {
    let mut rows = Vec::new();
    for k in 0..=n {
        let row = (0..=n - k)
            .map(|l| {
                let num = BigInt::from(l + 1) * binom(n, k + l) * binom(n + k, n);
                let den = BigInt::from(k + l + 1);
                assert!((&num % &den).is_zero(), "type A closed form not integral");
                num / den
            })
            .collect();
        rows.push(row);
    }
    FTriangle::new(n, BivarPoly::from_rows(rows)).expect("closed form is a valid triangle")
}

/// Closed-form type-B triangle: `f_{k,l} = C(n, k+l) · C(n+k-1, n-1)`,
/// with the conventions `B_0 = A_0` and `B_1 = A_1`.
pub fn closed_form_b(n: usize) -> FTriangle {
    if n == 0 {
        return closed_form_a(0);
    }
    let rows = (0..=n)
        .map(|k| (0..=n - k).map(|l| binom(n, k + l) * binom(n + k - 1, n - 1)).collect())
        .collect();
    FTriangle::new(n, BivarPoly::from_rows(rows)).expect("closed form is a valid triangle")
}

/// Closed-form type-A f-vector: `f_k = 1/(k+1) · C(n, k) · C(n+k+2, k)`.
pub fn closed_form_f_vector_a(n: usize) -> FVector {
    let f = (0..=n)
        .map(|k| binom(n, k) * binom(n + k + 2, k) / BigInt::from(k + 1))
        .collect();
    FVector { n, f }
}

/// Closed-form type-B f-vector: `f_k = C(n, k) · C(n+k, k)`.
pub fn closed_form_f_vector_b(n: usize) -> FVector {
    let f = (0..=n).map(|k| binom(n, k) * binom(n + k, k)).collect();
    FVector { n, f }
}

/// Positive cones by dimension: `F(x, 0)`.
pub fn positive_f_vector(triangle: &FTriangle) -> FVector {
    FVector::from_poly(triangle.rank, &triangle.poly.eval_y(&BigInt::zero()))
}

/// Natural cones by dimension: `F(x, -1)`. Entries count cones, so a negative
/// one is reported as an invariant violation.
pub fn natural_f_vector(triangle: &FTriangle) -> Result<FVector> {
    let v = FVector::from_poly(triangle.rank, &triangle.poly.eval_y(&-BigInt::one()));
    if let Some(bad) = v.f.iter().find(|c| c.is_negative()) {
        return Err(Error::Invariant(format!("natural f-vector has negative entry {bad}")));
    }
    Ok(v)
}

/// h-vector `Σ_k f_k y^k (1-y)^{n-k}` of an f-vector.
pub fn h_vector_of(fvec: &FVector) -> Vec<BigInt> {
    let n = fvec.n;
    let y = UniPoly::linear(BigInt::zero(), BigInt::one());
    let one_minus_y = UniPoly::linear(BigInt::one(), -BigInt::one());
    let mut acc = UniPoly::zero();
    for (k, fk) in fvec.f.iter().enumerate() {
        let term = &y.pow(k) * &one_minus_y.pow(n - k);
        acc = &acc + &term.scale(fk);
    }
    (0..=n).map(|k| acc.coeff(k)).collect()
}

/// h-vector (generalized Narayana numbers) of a root system.
pub fn h_vector(spec: &RootSystemSpec) -> Result<Vec<BigInt>> {
    let h = h_vector_of(&f_vector(spec)?);
    if h.iter().any(|c| c.is_negative()) {
        return Err(Error::Invariant(format!("h-vector of {spec} has a negative entry")));
    }
    Ok(h)
}
