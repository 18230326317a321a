//! Dense exact polynomials in one and two variables.
//!
//! Degrees never exceed the rank of a root system (at most a handful), so a
//! dense layout is used throughout. Coefficients are big integers, or big
//! rationals for intermediate results of integration.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::serde_int;

/// Bound on coefficient types: an exact commutative ring.
pub trait Coefficient: Clone + PartialEq + Num + Neg<Output = Self> {}

impl<T: Clone + PartialEq + Num + Neg<Output = T>> Coefficient for T {}

/// Univariate polynomial, coefficient of `t^k` at index `k`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Univariate<C> {
    coeffs: Vec<C>,
}

pub type UniPoly = Univariate<BigInt>;
pub type RationalUniPoly = Univariate<BigRational>;

impl<C: Coefficient> Univariate<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Univariate { coeffs }
    }

    pub fn zero() -> Self {
        Univariate { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// `a + b t`
    pub fn linear(a: C, b: C) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, t: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        let mut k = C::zero();
        for c in self.coeffs.iter() {
            out.push(c.clone() * k.clone());
            k = k + C::one();
        }
        if !out.is_empty() {
            out.remove(0);
        }
        Self::new(out)
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Univariate<D> {
        Univariate::new(self.coeffs.iter().map(f).collect())
    }

    /// The same polynomial viewed as a bivariate one in `x`.
    pub fn in_x(&self) -> Bivariate<C> {
        Bivariate::from_rows(self.coeffs.iter().map(|c| vec![c.clone()]).collect())
    }

    /// The same polynomial viewed as a bivariate one in `y`.
    pub fn in_y(&self) -> Bivariate<C> {
        Bivariate::from_rows(vec![self.coeffs.clone()])
    }
}

impl RationalUniPoly {
    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![BigRational::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / BigRational::from_integer(BigInt::from(k + 1)));
        }
        Self::new(out)
    }

    pub fn try_integral(&self) -> Option<UniPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Univariate::new)
    }
}

impl UniPoly {
    pub fn to_rational(&self) -> RationalUniPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl<C: Coefficient> Add for &Univariate<C> {
    type Output = Univariate<C>;
    fn add(self, rhs: Self) -> Univariate<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Univariate::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<C: Coefficient> Sub for &Univariate<C> {
    type Output = Univariate<C>;
    fn sub(self, rhs: Self) -> Univariate<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Univariate::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<C: Coefficient> Mul for &Univariate<C> {
    type Output = Univariate<C>;
    fn mul(self, rhs: Self) -> Univariate<C> {
        if self.is_zero() || rhs.is_zero() {
            return Univariate::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Univariate::new(out)
    }
}

impl<C: Coefficient + Signed + fmt::Display> fmt::Display for Univariate<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().map(|(k, c)| (c, k, 0));
        write_terms(f, terms, "t", "")
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_int::seq::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Univariate::new(serde_int::seq::deserialize(d)?))
    }
}

/// Bivariate polynomial; the coefficient of `x^k y^l` is stored at row `k`,
/// column `l` of a dense `(deg_x + 1) x (deg_y + 1)` array. All-zero trailing
/// rows and columns are trimmed, so the zero polynomial is `0 x 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bivariate<C> {
    rows: usize,
    cols: usize,
    coeffs: Vec<C>,
}

pub type BivarPoly = Bivariate<BigInt>;
pub type RationalBivarPoly = Bivariate<BigRational>;

impl<C: Coefficient> Bivariate<C> {
    pub fn zero() -> Self {
        Bivariate {
            rows: 0,
            cols: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    /// `c x^k y^l`
    pub fn monomial(c: C, k: usize, l: usize) -> Self {
        let mut p = Self::with_shape(k + 1, l + 1);
        p.coeffs[k * (l + 1) + l] = c;
        p.trimmed()
    }

    /// Builds from possibly ragged rows; `rows[k][l]` is the coefficient of `x^k y^l`.
    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut p = Self::with_shape(rows.len(), cols);
        for (k, row) in rows.into_iter().enumerate() {
            for (l, c) in row.into_iter().enumerate() {
                p.coeffs[k * cols + l] = c;
            }
        }
        p.trimmed()
    }

    fn with_shape(rows: usize, cols: usize) -> Self {
        Bivariate {
            rows,
            cols,
            coeffs: vec![C::zero(); rows * cols],
        }
    }

    fn trimmed(mut self) -> Self {
        while self.rows > 0
            && (0..self.cols).all(|l| self.coeffs[(self.rows - 1) * self.cols + l].is_zero())
        {
            self.rows -= 1;
        }
        let mut cols = self.cols;
        while cols > 0 && (0..self.rows).all(|k| self.coeffs[k * self.cols + cols - 1].is_zero()) {
            cols -= 1;
        }
        if self.rows == 0 || cols == 0 {
            return Self::zero();
        }
        if cols != self.cols || self.coeffs.len() != self.rows * self.cols {
            let mut out = Self::with_shape(self.rows, cols);
            for k in 0..self.rows {
                for l in 0..cols {
                    out.coeffs[k * cols + l] = self.coeffs[k * self.cols + l].clone();
                }
            }
            return out;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.rows == 0
    }

    pub fn coeff(&self, k: usize, l: usize) -> C {
        if k < self.rows && l < self.cols {
            self.coeffs[k * self.cols + l].clone()
        } else {
            C::zero()
        }
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.rows.checked_sub(1)
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.cols.checked_sub(1)
    }

    /// Nonzero terms as `(k, l, coefficient)`, ordered by `k` then `l`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        let cols = self.cols;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i / cols, i % cols, c))
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(k, l, _)| k + l).max()
    }

    /// Rectangular coefficient rows, `rows()[k][l]`.
    pub fn rows(&self) -> Vec<Vec<C>> {
        (0..self.rows)
            .map(|k| self.coeffs[k * self.cols..(k + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn scale(&self, s: &C) -> Self {
        Bivariate {
            rows: self.rows,
            cols: self.cols,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
        .trimmed()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Bivariate<D> {
        Bivariate {
            rows: self.rows,
            cols: self.cols,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
        .trimmed()
    }

    pub fn derivative_y(&self) -> Self {
        let mut out = Self::with_shape(self.rows, self.cols.saturating_sub(1));
        for (k, l, c) in self.terms() {
            if l > 0 {
                out.coeffs[k * out.cols + l - 1] = c.clone() * from_usize::<C>(l);
            }
        }
        out.trimmed()
    }

    /// Substitutes `y := x`.
    pub fn diagonal(&self) -> Univariate<C> {
        let mut out = vec![C::zero(); (self.rows + self.cols).saturating_sub(1)];
        for (k, l, c) in self.terms() {
            out[k + l] = out[k + l].clone() + c.clone();
        }
        Univariate::new(out)
    }

    /// Substitutes `y := v`, leaving a polynomial in `x`.
    pub fn eval_y(&self, v: &C) -> Univariate<C> {
        Univariate::new(
            self.rows()
                .into_iter()
                .map(|row| Univariate::new(row).eval(v))
                .collect(),
        )
    }

    /// Substitutes `x := v`, leaving a polynomial in `y`.
    pub fn eval_x(&self, v: &C) -> Univariate<C> {
        let mut out = Univariate::zero();
        let mut power = C::one();
        for row in self.rows() {
            out = &out + &Univariate::new(row).scale(&power);
            power = power * v.clone();
        }
        out
    }

    /// `Σ c_{k,l} X^k Y^l W^{n-k-l}` for polynomials `X`, `Y`, `W`.
    ///
    /// Requires every term to satisfy `k + l <= n`.
    pub fn homogeneous_substitute(
        &self,
        n: usize,
        sub_x: &Self,
        sub_y: &Self,
        sub_w: &Self,
    ) -> Result<Self> {
        if let Some(d) = self.total_degree().filter(|&d| d > n) {
            return Err(Error::DegreeBound { degree: d, bound: n });
        }
        let powers = |p: &Self| {
            let mut out = vec![Self::one()];
            for i in 0..n {
                let next = &out[i] * p;
                out.push(next);
            }
            out
        };
        let (px, py, pw) = (powers(sub_x), powers(sub_y), powers(sub_w));
        let mut acc = Self::zero();
        for (k, l, c) in self.terms() {
            let term = &(&px[k] * &py[l]) * &pw[n - k - l];
            acc = &acc + &term.scale(c);
        }
        Ok(acc)
    }

    /// `(-1)^n p(-1-x, -1-y)`; requires total degree at most `n`.
    pub fn reflect(&self, n: usize) -> Result<Self> {
        let minus_one = -C::one();
        let sx = &Self::constant(minus_one.clone()) - &Self::x();
        let sy = &Self::constant(minus_one.clone()) - &Self::y();
        let out = self.homogeneous_substitute(n, &sx, &sy, &Self::one())?;
        Ok(if n % 2 == 1 { -&out } else { out })
    }

    /// `(1-y)^n p((x+y)/(1-y), y/(1-y))`, expanded as
    /// `Σ c_{k,l} (x+y)^k y^l (1-y)^{n-k-l}`.
    pub fn conjecture_substitution(&self, n: usize) -> Result<Self> {
        let x_plus_y = &Self::x() + &Self::y();
        let one_minus_y = &Self::one() - &Self::y();
        self.homogeneous_substitute(n, &x_plus_y, &Self::y(), &one_minus_y)
    }

    /// `(y-1)^n p((x+1)/(y-1), 1/(y-1))`, expanded as
    /// `Σ c_{k,l} (x+1)^k (y-1)^{n-k-l}`.
    pub fn alternative_substitution(&self, n: usize) -> Result<Self> {
        let x_plus_one = &Self::x() + &Self::one();
        let y_minus_one = &Self::y() - &Self::one();
        self.homogeneous_substitute(n, &x_plus_one, &Self::one(), &y_minus_one)
    }
}

fn from_usize<C: Coefficient>(n: usize) -> C {
    let mut out = C::zero();
    for _ in 0..n {
        out = out + C::one();
    }
    out
}

impl RationalBivarPoly {
    /// Antiderivative in `y` with no `y`-free part: `c x^k y^l` becomes
    /// `c/(l+1) x^k y^{l+1}`.
    pub fn antiderivative_y(&self) -> Self {
        let mut out = Self::with_shape(self.rows, self.cols + 1);
        for (k, l, c) in self.terms() {
            out.coeffs[k * out.cols + l + 1] = c / BigRational::from_integer(BigInt::from(l + 1));
        }
        out.trimmed()
    }

    /// Integer polynomial if every coefficient is integral.
    pub fn try_integral(&self) -> Option<BivarPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(Bivariate {
            rows: self.rows,
            cols: self.cols,
            coeffs,
        })
    }
}

impl BivarPoly {
    pub fn to_rational(&self) -> RationalBivarPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Builds from small integer rows; convenient for literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    /// Exact division of every coefficient by `d`, if possible.
    pub fn try_div_exact(&self, d: &BigInt) -> Option<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(d);
                r.is_zero().then_some(q)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(
            Bivariate {
                rows: self.rows,
                cols: self.cols,
                coeffs,
            }
            .trimmed(),
        )
    }
}

impl<C: Coefficient> Add for &Bivariate<C> {
    type Output = Bivariate<C>;
    fn add(self, rhs: Self) -> Bivariate<C> {
        combine(self, rhs, |a, b| a + b)
    }
}

impl<C: Coefficient> Sub for &Bivariate<C> {
    type Output = Bivariate<C>;
    fn sub(self, rhs: Self) -> Bivariate<C> {
        combine(self, rhs, |a, b| a - b)
    }
}

impl<C: Coefficient> Neg for &Bivariate<C> {
    type Output = Bivariate<C>;
    fn neg(self) -> Bivariate<C> {
        self.map(|c| -c.clone())
    }
}

fn combine<C: Coefficient>(a: &Bivariate<C>, b: &Bivariate<C>, op: impl Fn(C, C) -> C) -> Bivariate<C> {
    let rows = a.rows.max(b.rows);
    let cols = a.cols.max(b.cols);
    let mut out = Bivariate::with_shape(rows, cols);
    for k in 0..rows {
        for l in 0..cols {
            out.coeffs[k * cols + l] = op(a.coeff(k, l), b.coeff(k, l));
        }
    }
    out.trimmed()
}

impl<C: Coefficient> Mul for &Bivariate<C> {
    type Output = Bivariate<C>;
    fn mul(self, rhs: Self) -> Bivariate<C> {
        if self.is_zero() || rhs.is_zero() {
            return Bivariate::zero();
        }
        let cols = self.cols + rhs.cols - 1;
        let mut out = Bivariate::<C>::with_shape(self.rows + rhs.rows - 1, cols);
        for (k1, l1, a) in self.terms() {
            for (k2, l2, b) in rhs.terms() {
                let i = (k1 + k2) * cols + l1 + l2;
                out.coeffs[i] = out.coeffs[i].clone() + a.clone() * b.clone();
            }
        }
        out.trimmed()
    }
}

impl<C: Coefficient + Signed + fmt::Display> fmt::Display for Bivariate<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&C, usize, usize)> = self.terms().map(|(k, l, c)| (c, k, l)).collect();
        terms.sort_by_key(|&(_, k, l)| (k + l, l));
        write_terms(f, terms.into_iter(), "x", "y")
    }
}

fn write_terms<'a, C: Coefficient + Signed + fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a C, usize, usize)>,
    var_a: &str,
    var_b: &str,
) -> fmt::Result {
    let mut first = true;
    for (c, a, b) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let mag = c.abs();
        let has_var = a + b > 0;
        if !has_var || !mag.is_one() {
            write!(f, "{mag}")?;
        }
        for (v, e) in [(var_a, a), (var_b, b)] {
            match e {
                0 => {}
                1 => f.write_str(v)?,
                _ => write!(f, "{v}^{e}")?,
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_int::rows::serialize(&self.rows(), s)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Bivariate::from_rows(serde_int::rows::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(rows: &[&[i64]]) -> BivarPoly {
        BivarPoly::from_i64_rows(rows)
    }

    fn q(rows: &[&[i64]]) -> RationalBivarPoly {
        p(rows).to_rational()
    }

    // F(A2) = 1 + 3x + 2x^2 + 2y + 2xy + y^2
    fn f_a2() -> BivarPoly {
        p(&[&[1, 2, 1], &[3, 2], &[2]])
    }

    #[test]
    fn ring_operations() {
        let x = BivarPoly::x();
        let y = BivarPoly::y();
        let one = BivarPoly::one();
        assert_eq!(&(&one + &x) * &(&one + &y), p(&[&[1, 1], &[1, 1]]));
        let s = &(&one + &x) + &y;
        assert_eq!(&s + &BivarPoly::zero(), s);
        assert_eq!(s.pow(2), p(&[&[1, 2, 1], &[2, 2], &[1]]));
        assert_eq!(s.scale(&BigInt::from(3)), p(&[&[3, 3], &[3]]));
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn canonical_trimming() {
        let a = p(&[&[1, 0, 0], &[0, 0, 0], &[]]);
        assert_eq!(a, BivarPoly::one());
        assert_eq!(a.rows(), vec![vec![BigInt::from(1)]]);
        assert_eq!(p(&[&[0]]), BivarPoly::zero());
        assert_eq!(BivarPoly::zero().total_degree(), None);
    }

    #[test]
    fn antiderivative_examples() {
        // 2 + 2x + 2y  ->  2y + 2xy + y^2
        assert_eq!(q(&[&[2, 2], &[2]]).antiderivative_y(), q(&[&[0, 2, 1], &[0, 2]]));
        assert!(RationalBivarPoly::zero().antiderivative_y().is_zero());
        assert_eq!(q(&[&[0, 0, 3]]).antiderivative_y(), q(&[&[0, 0, 0, 1]]));
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(f_a2().diagonal(), UniPoly::new(vec![1.into(), 5.into(), 5.into()]));
        assert_eq!(p(&[&[0], &[0, 1]]).diagonal(), UniPoly::new(vec![0.into(), 0.into(), 1.into()]));
        assert_eq!(BivarPoly::constant(7.into()).diagonal(), UniPoly::constant(7.into()));
    }

    #[test]
    fn reflect_examples() {
        let f_a1 = p(&[&[1, 1], &[1]]);
        assert_eq!(f_a1.reflect(1).unwrap(), f_a1);
        assert_eq!(BivarPoly::one().reflect(0).unwrap(), BivarPoly::one());
        assert_eq!(f_a2().reflect(2).unwrap(), f_a2());
        assert_eq!(
            f_a2().reflect(1),
            Err(Error::DegreeBound { degree: 2, bound: 1 })
        );
    }

    #[test]
    fn conjecture_substitution_examples() {
        let f_a1 = p(&[&[1, 1], &[1]]);
        // (1 - y) + (x + y) + y
        assert_eq!(f_a1.conjecture_substitution(1).unwrap(), p(&[&[1, 1], &[1]]));
        assert_eq!(BivarPoly::one().conjecture_substitution(0).unwrap(), BivarPoly::one());
        assert_eq!(
            f_a2().conjecture_substitution(2).unwrap(),
            p(&[&[1, 3, 1], &[3, 3], &[2]])
        );
        assert!(f_a2().conjecture_substitution(1).is_err());
    }

    #[test]
    fn alternative_substitution_matches_on_symmetric_input() {
        assert_eq!(
            f_a2().alternative_substitution(2).unwrap(),
            f_a2().conjecture_substitution(2).unwrap()
        );
    }

    #[test]
    fn evaluations() {
        let f = f_a2();
        // F(x, -1) = x + 2x^2
        assert_eq!(f.eval_y(&BigInt::from(-1)), UniPoly::new(vec![0.into(), 1.into(), 2.into()]));
        // F(0, y) = (1 + y)^2
        assert_eq!(f.eval_x(&BigInt::zero()), UniPoly::new(vec![1.into(), 2.into(), 1.into()]));
        // F(-1, y) = y^2
        assert_eq!(f.eval_x(&BigInt::from(-1)), UniPoly::new(vec![0.into(), 0.into(), 1.into()]));
    }

    #[test]
    fn display() {
        assert_eq!(f_a2().to_string(), "1 + 3x + 2y + 2x^2 + 2xy + y^2");
        assert_eq!(p(&[&[1], &[-1, 1]]).to_string(), "1 - x + xy");
        assert_eq!(BivarPoly::zero().to_string(), "0");
        assert_eq!(p(&[&[-2]]).to_string(), "-2");
    }

    #[test]
    fn json_round_trip_with_large_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let a = BivarPoly::from_rows(vec![vec![BigInt::from(-3), big.clone()], vec![BigInt::from(1)]]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, format!("[[-3,\"{big}\"],[1,0]]"));
        let back: BivarPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }

    fn arb_poly(max_total: usize) -> impl Strategy<Value = BivarPoly> {
        proptest::collection::vec(-20i64..20, (max_total + 1) * (max_total + 1)).prop_map(move |v| {
            let rows = (0..=max_total)
                .map(|k| {
                    (0..=max_total - k)
                        .map(|l| BigInt::from(v[k * (max_total + 1) + l]))
                        .collect()
                })
                .collect();
            BivarPoly::from_rows(rows)
        })
    }

    proptest! {
        #[test]
        fn reflect_is_an_involution(n in 0usize..6, seed in arb_poly(5)) {
            // restrict to total degree <= n
            let terms: Vec<_> = seed.terms().filter(|(k, l, _)| k + l <= n)
                .map(|(k, l, c)| BivarPoly::monomial(c.clone(), k, l)).collect();
            let f = terms.iter().fold(BivarPoly::zero(), |a, t| &a + t);
            prop_assert_eq!(f.reflect(n).unwrap().reflect(n).unwrap(), f);
        }

        #[test]
        fn antiderivative_inverts_derivative(f in arb_poly(4)) {
            let r = f.to_rational();
            prop_assert_eq!(r.antiderivative_y().derivative_y(), r);
        }

        #[test]
        fn substitution_at_y_zero_is_x_part(f in arb_poly(4)) {
            let lhs = f.conjecture_substitution(4).unwrap();
            prop_assert_eq!(lhs.eval_y(&BigInt::zero()), f.eval_y(&BigInt::zero()));
        }

        #[test]
        fn multiplication_commutes_and_distributes(a in arb_poly(3), b in arb_poly(3), c in arb_poly(2)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
