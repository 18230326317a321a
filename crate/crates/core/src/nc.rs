//! Noncrossing partition lattices: the interval `[1, c]` in absolute order.
//!
//! The interval is enumerated rank by rank from the identity, multiplying by
//! reflections and keeping products that climb one rank while staying below
//! `c`. The whole group is never listed, which keeps the exceptional types
//! within reach.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::budget::Budget;
use crate::cartan::{CartanType, RootSystemSpec};
use crate::error::{Error, Result};
use crate::poly::{BivarPoly, RationalUniPoly, UniPoly};
use crate::weyl::{GroupElement, ReflectionRep};

/// The lattice `[1, c]` with ranks, order relation and Möbius function.
///
/// Elements are sorted by rank, then by matrix entries, so the identity comes
/// first and `c` last. `up[a]` lists (ascending) every `b` with `a <= b`,
/// and `mobius[a][j]` is `μ(a, up[a][j])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NCLattice {
    rank: usize,
    elements: Vec<GroupElement>,
    ranks: Vec<usize>,
    up: Vec<Vec<u32>>,
    mobius: Vec<Vec<i64>>,
}

impl NCLattice {
    /// Builds `[1, c]` with no time limit.
    pub fn build(rep: &ReflectionRep, c: &GroupElement) -> Result<NCLattice> {
        Self::build_within(rep, c, &Budget::unlimited())
    }

    pub fn build_within(rep: &ReflectionRep, c: &GroupElement, budget: &Budget) -> Result<NCLattice> {
        let n = rep.rank();
        let found = c.abs_length();
        if found != n {
            return Err(Error::NotCoxeterElement { found, expected: n });
        }

        let mut levels: Vec<Vec<GroupElement>> = vec![vec![rep.identity()]];
        for k in 0..n {
            budget.check("enumerating the interval")?;
            let mut next: Vec<GroupElement> = levels[k]
                .par_iter()
                .flat_map_iter(|w| {
                    let skip = budget.expired();
                    rep.reflections().iter().filter_map(move |t| {
                        if skip {
                            return None;
                        }
                        let z = w.mul(t);
                        (z.abs_length() == k + 1 && c.rank_of_difference(&z) == n - k - 1).then_some(z)
                    })
                })
                .collect();
            budget.check("enumerating the interval")?;
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                return Err(Error::Grading(format!("no elements of rank {}", k + 1)));
            }
            levels.push(next);
        }
        if levels[n] != [c.clone()] {
            return Err(Error::Grading(format!(
                "rank {n} holds {} elements, expected only the Coxeter element",
                levels[n].len()
            )));
        }

        let ranks: Vec<usize> = levels
            .iter()
            .enumerate()
            .flat_map(|(k, l)| std::iter::repeat_n(k, l.len()))
            .collect();
        let elements: Vec<GroupElement> = levels.into_iter().flatten().collect();
        let index: HashMap<&GroupElement, u32> =
            elements.iter().enumerate().map(|(i, g)| (g, i as u32)).collect();

        budget.check("computing cover relations")?;
        let covers: Vec<Vec<u32>> = elements
            .par_iter()
            .enumerate()
            .map(|(a, w)| {
                let mut out: Vec<u32> = rep
                    .reflections()
                    .iter()
                    .filter_map(|t| index.get(&w.mul(t)).copied())
                    .filter(|&z| ranks[z as usize] == ranks[a] + 1)
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        for (a, cov) in covers.iter().enumerate() {
            if cov.is_empty() && ranks[a] < n {
                return Err(Error::Grading(format!("element {a} of rank {} has no upper cover", ranks[a])));
            }
        }
        let up = upsets(&covers, &ranks, budget)?;
        let mobius = mobius_rows(&up, budget)?;
        Ok(NCLattice {
            rank: n,
            elements,
            ranks,
            up,
            mobius,
        })
    }

    /// Lattice for `spec` and a Coxeter ordering of its node labels
    /// (Bourbaki order when `None`).
    pub fn for_spec(spec: &RootSystemSpec, ordering: Option<&[usize]>, budget: &Budget) -> Result<NCLattice> {
        let rep = ReflectionRep::new(spec);
        let c = match ordering {
            Some(o) => rep.coxeter_element(o)?,
            None => rep.default_coxeter_element(),
        };
        Self::build_within(&rep, &c, budget)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element_rank(&self, a: usize) -> usize {
        self.ranks[a]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].binary_search(&(b as u32)).is_ok()
    }

    /// `μ(a, b)`, or `None` when `a` is not below `b`.
    pub fn mobius(&self, a: usize, b: usize) -> Option<i64> {
        self.up[a]
            .binary_search(&(b as u32))
            .ok()
            .map(|j| self.mobius[a][j])
    }

    /// Every `(a, b, μ(a, b))` with `a <= b`.
    pub fn intervals(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.up.iter().enumerate().flat_map(move |(a, row)| {
            row.iter()
                .zip(&self.mobius[a])
                .map(move |(&b, &m)| (a, b as usize, m))
        })
    }

    /// Number of pairs `a <= b`.
    pub fn num_intervals(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// Cheap shape checks, used on lattices read back from disk: sorted by
    /// rank, bounded, up-sets start at the element itself, Möbius rows have
    /// the right length and `μ(a, a) = 1`.
    pub fn validate(&self) -> Result<()> {
        let len = self.len();
        if len == 0 || self.ranks[0] != 0 || self.ranks[len - 1] != self.rank {
            return Err(Error::Grading("missing bottom or top".into()));
        }
        if self.ranks.windows(2).any(|w| w[0] > w[1]) || self.up.len() != len || self.mobius.len() != len {
            return Err(Error::Grading("elements are not sorted by rank".into()));
        }
        if self.up[0].len() != len {
            return Err(Error::Grading("identity is not the minimum".into()));
        }
        for a in 0..len {
            if !self.leq(a, len - 1) || self.up[a].first() != Some(&(a as u32)) {
                return Err(Error::Grading(format!("element {a} is not below the top")));
            }
            if self.mobius[a].len() != self.up[a].len() || self.mobius[a][0] != 1 {
                return Err(Error::Grading(format!("malformed Möbius row {a}")));
            }
        }
        Ok(())
    }

    /// `M(x, y) = Σ_{a <= b} μ(a, b) x^{rk b} y^{rk a}`.
    pub fn m_triangle(&self) -> BivarPoly {
        let n = self.rank;
        let mut grid = vec![0i128; (n + 1) * (n + 1)];
        for (a, b, m) in self.intervals() {
            grid[self.ranks[b] * (n + 1) + self.ranks[a]] += i128::from(m);
        }
        BivarPoly::from_rows(
            grid.chunks(n + 1)
                .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// `Σ_a y^{rk a}`.
    pub fn rank_generating_function(&self) -> UniPoly {
        let mut counts = vec![BigInt::zero(); self.rank + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        UniPoly::new(counts)
    }

    /// Number of multichains `a_1 <= ... <= a_{m-1}`; `Z(1) = 1`, `Z(2) = |L|`.
    pub fn zeta_bruteforce(&self, m: usize) -> BigInt {
        if m <= 1 {
            return BigInt::one();
        }
        let mut counts = vec![BigInt::one(); self.len()];
        for _ in 2..m {
            let mut next = vec![BigInt::zero(); self.len()];
            for (a, row) in self.up.iter().enumerate() {
                for &b in row {
                    next[b as usize] += &counts[a];
                }
            }
            counts = next;
        }
        counts.into_iter().sum()
    }

    /// `μ(0, 1)`.
    pub fn mobius_number(&self) -> i64 {
        self.mobius(self.bottom(), self.top()).expect("bottom is below top")
    }
}

/// Up-sets from cover relations, processed from the top rank downwards.
fn upsets(covers: &[Vec<u32>], ranks: &[usize], budget: &Budget) -> Result<Vec<Vec<u32>>> {
    let len = covers.len();
    let words = len.div_ceil(64);
    let mut bits: Vec<Vec<u64>> = vec![Vec::new(); len];
    let mut start = len;
    while start > 0 {
        budget.check("computing the order relation")?;
        let r = ranks[start - 1];
        let mut lo = start - 1;
        while lo > 0 && ranks[lo - 1] == r {
            lo -= 1;
        }
        let (below, above) = bits.split_at_mut(start);
        below[lo..start]
            .par_iter_mut()
            .enumerate()
            .for_each(|(off, slot)| {
                let a = lo + off;
                let mut set = vec![0u64; words];
                set[a / 64] |= 1 << (a % 64);
                for &z in &covers[a] {
                    for (w, v) in set.iter_mut().zip(&above[z as usize - start]) {
                        *w |= v;
                    }
                }
                *slot = set;
            });
        start = lo;
    }
    Ok(bits
        .into_iter()
        .map(|set| {
            let mut out = Vec::new();
            for (wi, &w) in set.iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let bit = w.trailing_zeros() as usize;
                    out.push((wi * 64 + bit) as u32);
                    w &= w - 1;
                }
            }
            out
        })
        .collect())
}

/// `μ(a, ·)` for every `a`, pushing `μ(a, z)` forward to every `b > z`.
fn mobius_rows(up: &[Vec<u32>], budget: &Budget) -> Result<Vec<Vec<i64>>> {
    budget.check("computing the Möbius function")?;
    let len = up.len();
    let rows: Vec<Option<Vec<i64>>> = (0..len)
        .into_par_iter()
        .map_init(
            || vec![0i64; len],
            |acc, a| {
                if budget.expired() {
                    return None;
                }
                let row = &up[a];
                let mut out = Vec::with_capacity(row.len());
                for &z in row {
                    let z = z as usize;
                    let mu = if z == a { 1 } else { -acc[z] };
                    out.push(mu);
                    if mu != 0 {
                        for &b in &up[z][1..] {
                            acc[b as usize] += mu;
                        }
                    }
                }
                for &b in row {
                    acc[b as usize] = 0;
                }
                Some(out)
            },
        )
        .collect();
    budget.check("computing the Möbius function")?;
    Ok(rows.into_iter().map(|r| r.expect("budget checked")).collect())
}

/// Closed-form lattice invariants in terms of `h` and the exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFormulas {
    /// Zeta polynomial in `X`.
    pub zeta: RationalUniPoly,
    pub cardinality: BigInt,
    pub mobius_number: BigInt,
}

impl LatticeFormulas {
    pub fn zeta_at(&self, m: usize) -> Result<BigInt> {
        let v = self.zeta.eval(&BigRational::from_integer(BigInt::from(m)));
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::Invariant(format!("Z({m}) = {v} is not an integer")))
        }
    }

    fn product(&self, other: &LatticeFormulas) -> LatticeFormulas {
        LatticeFormulas {
            zeta: &self.zeta * &other.zeta,
            cardinality: &self.cardinality * &other.cardinality,
            mobius_number: &self.mobius_number * &other.mobius_number,
        }
    }
}

/// `Z(X) = Π (hX - e_i + 1)/(e_i + 1)`, `#L = Π (h + e_i + 1)/(e_i + 1)` and
/// `μ(0, 1) = (-1)^n Π (h + e_i - 1)/(e_i + 1)`.
pub fn invariant_formulas(t: CartanType) -> Result<LatticeFormulas> {
    let inv = t.invariants();
    let h = BigInt::from(inv.coxeter_number);
    let mut zeta = RationalUniPoly::one();
    let mut card = BigRational::one();
    let mut mob = BigRational::one();
    for &e in &inv.exponents {
        let e = BigInt::from(e);
        let den = BigRational::from_integer(&e + 1);
        let factor = RationalUniPoly::linear(
            BigRational::from_integer(1 - &e) / &den,
            BigRational::from_integer(h.clone()) / &den,
        );
        zeta = &zeta * &factor;
        card *= BigRational::from_integer(&h + &e + 1) / &den;
        mob *= BigRational::from_integer(&h + &e - 1) / &den;
    }
    if t.rank() % 2 == 1 {
        mob = -mob;
    }
    let integral = |v: BigRational, what: &str| {
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::Invariant(format!("{what} of {t} is not integral: {v}")))
        }
    };
    Ok(LatticeFormulas {
        zeta,
        cardinality: integral(card, "cardinality")?,
        mobius_number: integral(mob, "Möbius number")?,
    })
}

/// Formulas for a product of root systems (everything multiplies).
pub fn spec_invariant_formulas(spec: &RootSystemSpec) -> Result<LatticeFormulas> {
    let mut acc = LatticeFormulas {
        zeta: RationalUniPoly::one(),
        cardinality: BigInt::one(),
        mobius_number: BigInt::one(),
    };
    for &t in spec.components() {
        acc = acc.product(&invariant_formulas(t)?);
    }
    Ok(acc)
}

/// `M(x, y) = (xy)^n M(1/y, 1/x)`: coefficient `(i, j)` equals `(n-j, n-i)`.
pub fn is_self_dual_m_triangle(m: &BivarPoly, n: usize) -> bool {
    m.terms().all(|(i, j, c)| i <= n && j <= n && m.coeff(n - j, n - i) == *c)
        && m.degree_x().is_none_or(|d| d <= n)
        && m.degree_y().is_none_or(|d| d <= n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(s: &str) -> NCLattice {
        NCLattice::for_spec(&s.parse().unwrap(), None, &Budget::unlimited()).unwrap()
    }

    #[test]
    fn small_lattices() {
        let a1 = lattice("A1");
        assert_eq!(a1.len(), 2);
        assert_eq!(a1.mobius_number(), -1);
        let a2 = lattice("A2");
        assert_eq!(a2.len(), 5);
        assert_eq!(a2.ranks(), &[0, 1, 1, 1, 2]);
        assert_eq!(lattice("A3").len(), 14);
        let empty = lattice("A0");
        assert_eq!(empty.len(), 1);
        assert_eq!(empty.m_triangle(), BivarPoly::one());
        for l in [&a1, &a2] {
            l.validate().unwrap();
        }
    }

    #[test]
    fn m_triangle_examples() {
        assert_eq!(lattice("A1").m_triangle(), BivarPoly::from_i64_rows(&[&[1], &[-1, 1]]));
        assert_eq!(
            lattice("A2").m_triangle(),
            BivarPoly::from_i64_rows(&[&[1], &[-3, 3], &[2, -3, 1]])
        );
        for s in ["A3", "B3", "G2", "D4"] {
            let l = lattice(s);
            let col = l.m_triangle().eval_x(&BigInt::one());
            // M(1, y) = y^n
            let mut top = vec![BigInt::zero(); l.rank() + 1];
            top[l.rank()] = BigInt::one();
            assert_eq!(col, UniPoly::new(top), "{s}");
        }
    }

    #[test]
    fn formula_examples() {
        let a2 = invariant_formulas(CartanType::a(2)).unwrap();
        assert_eq!(a2.cardinality, 5.into());
        assert_eq!(a2.mobius_number, 2.into());
        assert_eq!(a2.zeta_at(2).unwrap(), 5.into());
        assert_eq!(a2.zeta_at(3).unwrap(), 12.into());
        let a3 = invariant_formulas(CartanType::a(3)).unwrap();
        assert_eq!(a3.cardinality, 14.into());
        assert_eq!(a3.mobius_number, (-5).into());
        let g2 = invariant_formulas("G2".parse().unwrap()).unwrap();
        assert_eq!(g2.cardinality, 8.into());
        let e6 = invariant_formulas("E6".parse().unwrap()).unwrap();
        assert_eq!(e6.cardinality, 833.into());
        let e8 = invariant_formulas("E8".parse().unwrap()).unwrap();
        assert_eq!(e8.cardinality, 25080.into());
    }

    #[test]
    fn zeta_counts() {
        let a2 = lattice("A2");
        assert_eq!(a2.zeta_bruteforce(1), 1.into());
        assert_eq!(a2.zeta_bruteforce(2), 5.into());
        assert_eq!(a2.zeta_bruteforce(3), 12.into());
        assert_eq!(a2.num_intervals(), 12);
    }

    #[test]
    fn rank_generating_functions() {
        let ints = |v: &[i64]| UniPoly::new(v.iter().map(|&c| BigInt::from(c)).collect());
        assert_eq!(lattice("A1").rank_generating_function(), ints(&[1, 1]));
        assert_eq!(lattice("A2").rank_generating_function(), ints(&[1, 3, 1]));
        assert_eq!(lattice("A3").rank_generating_function(), ints(&[1, 6, 6, 1]));
    }

    #[test]
    fn leq_agrees_with_length_criterion() {
        let spec: RootSystemSpec = "B3".parse().unwrap();
        let rep = ReflectionRep::new(&spec);
        let l = NCLattice::build(&rep, &rep.default_coxeter_element()).unwrap();
        for a in 0..l.len() {
            for b in 0..l.len() {
                assert_eq!(l.leq(a, b), rep.absolute_leq(&l.elements()[a], &l.elements()[b]));
            }
        }
    }

    #[test]
    fn self_duality() {
        for s in ["A3", "B3", "D4", "G2", "A2xA1"] {
            let l = lattice(s);
            assert!(is_self_dual_m_triangle(&l.m_triangle(), l.rank()), "{s}");
        }
        let skew = BivarPoly::from_i64_rows(&[&[1], &[-1, 2]]);
        assert!(!is_self_dual_m_triangle(&skew, 1));
    }

    #[test]
    fn rejects_non_coxeter_element() {
        let rep = ReflectionRep::new(&"A2".parse().unwrap());
        let s1 = rep.simple_reflections()[0].clone();
        assert_eq!(
            NCLattice::build(&rep, &s1),
            Err(Error::NotCoxeterElement { found: 1, expected: 2 })
        );
    }

    #[test]
    fn zero_budget_times_out() {
        let budget = Budget::with_timeout(std::time::Duration::ZERO);
        let r = NCLattice::for_spec(&"A3".parse().unwrap(), None, &budget);
        assert!(matches!(r, Err(Error::Timeout { .. })));
    }

    #[test]
    fn serde_round_trip() {
        let l = lattice("B2");
        let text = serde_json::to_string(&l).unwrap();
        let back: NCLattice = serde_json::from_str(&text).unwrap();
        assert_eq!(back, l);
    }
}
