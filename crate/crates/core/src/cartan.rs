//! Finite crystallographic Dynkin diagrams in Bourbaki numbering.
//!
//! Irreducible types are described by [`CartanType`]; finite products of them
//! by [`RootSystemSpec`], whose canonical string (`"D4xA2"`) is used as a
//! memoization and cache key throughout the crate.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// An irreducible finite crystallographic type such as `A3` or `E6`.
///
/// Low-rank coincidences are normalized on construction: `B1` and `C1`
/// become `A1`, `C2` becomes `B2` and `D3` becomes `A3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let invalid = || Error::InvalidType(format!("{}{}", family.letter(), rank));
        let (family, rank) = match (family, rank) {
            (_, 0) => return Err(invalid()),
            (Family::A, n) => (Family::A, n),
            (Family::B | Family::C, 1) => (Family::A, 1),
            (Family::B | Family::C, 2) => (Family::B, 2),
            (Family::B, n) => (Family::B, n),
            (Family::C, n) => (Family::C, n),
            (Family::D, 3) => (Family::A, 3),
            (Family::D, n) if n >= 4 => (Family::D, n),
            (Family::E, n) if (6..=8).contains(&n) => (Family::E, n),
            (Family::F, 4) => (Family::F, 4),
            (Family::G, 2) => (Family::G, 2),
            _ => return Err(invalid()),
        };
        Ok(CartanType { family, rank })
    }

    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n).expect("A_n needs n >= 1")
    }

    pub fn b(n: usize) -> Self {
        Self::new(Family::B, n).expect("B_n needs n >= 1")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every irreducible type of rank at most `max_rank` (C kept distinct from B).
    pub fn all_up_to_rank(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for n in 1..=max_rank {
            for (family, lo) in [
                (Family::A, 1),
                (Family::B, 2),
                (Family::C, 3),
                (Family::D, 4),
                (Family::E, 6),
                (Family::F, 4),
                (Family::G, 2),
            ] {
                if n < lo {
                    continue;
                }
                if let Ok(t) = CartanType::new(family, n) {
                    if t.family == family && t.rank == n {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    /// Coxeter number and exponents, from the standard tables.
    pub fn invariants(&self) -> CoxeterInvariants {
        let n = self.rank as u64;
        let (h, exponents): (u64, Vec<u64>) = match self.family {
            Family::A => (n + 1, (1..=n).collect()),
            Family::B | Family::C => (2 * n, (0..n).map(|i| 2 * i + 1).collect()),
            Family::D => {
                let mut e: Vec<u64> = (0..n - 1).map(|i| 2 * i + 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                (2 * n - 2, e)
            }
            Family::E => match n {
                6 => (12, vec![1, 4, 5, 7, 8, 11]),
                7 => (18, vec![1, 5, 7, 9, 11, 13, 17]),
                _ => (30, vec![1, 7, 11, 13, 17, 19, 23, 29]),
            },
            Family::F => (12, vec![1, 5, 7, 11]),
            Family::G => (6, vec![1, 5]),
        };
        CoxeterInvariants {
            coxeter_number: h,
            exponents,
        }
    }

    /// Number of positive roots, `n h / 2`.
    pub fn num_positive_roots(&self) -> usize {
        self.rank * self.invariants().coxeter_number as usize / 2
    }

    /// The Bourbaki-labelled Dynkin diagram.
    pub fn diagram(&self) -> DynkinDiagram {
        let n = self.rank;
        let path = |len: usize| -> Vec<Edge> { (1..len).map(|i| Edge::simple(i, i + 1)).collect() };
        let edges = match self.family {
            Family::A => path(n),
            Family::B => {
                let mut e = path(n - 1);
                e.push(Edge::multiple(n - 1, n, 2));
                e
            }
            Family::C => {
                let mut e = path(n - 1);
                e.push(Edge::multiple(n, n - 1, 2));
                e
            }
            Family::D => {
                let mut e = path(n - 1);
                e.push(Edge::simple(n - 2, n));
                e
            }
            Family::E => {
                let mut e = vec![Edge::simple(1, 3), Edge::simple(2, 4)];
                e.extend((3..n).map(|i| Edge::simple(i, i + 1)));
                e
            }
            Family::F => vec![
                Edge::simple(1, 2),
                Edge::multiple(2, 3, 2),
                Edge::simple(3, 4),
            ],
            Family::G => vec![Edge::multiple(2, 1, 3)],
        };
        DynkinDiagram { rank: n, edges }
    }

    /// Cartan matrix `a[i][j] = 2 (α_i, α_j) / (α_i, α_i)` (0-based indices),
    /// so that `s_i(α_j) = α_j - a[i][j] α_i`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.diagram().cartan_matrix()
    }

    /// Restriction of the root system to the nodes other than `node`.
    pub fn delete_node(&self, node: usize) -> Result<RootSystemSpec> {
        if node == 0 || node > self.rank {
            return Err(Error::InvalidNode {
                ty: self.to_string(),
                node,
            });
        }
        let diagram = self.diagram();
        let components = diagram
            .components_without(node)
            .iter()
            .map(|(nodes, edges)| classify(nodes, edges))
            .collect::<Result<Vec<_>>>()?;
        Ok(RootSystemSpec::from_components(components))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_char)
            .ok_or_else(|| Error::InvalidType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        let t = CartanType::new(family, rank)?;
        Ok(t)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Coxeter number `h` and the sorted exponents `e_1 <= ... <= e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterInvariants {
    pub coxeter_number: u64,
    pub exponents: Vec<u64>,
}

/// A bond of a Dynkin diagram. For multiple bonds the arrow points from
/// `long` to `short`; for simple bonds the order is irrelevant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub long: usize,
    pub short: usize,
    pub multiplicity: u8,
}

impl Edge {
    fn simple(a: usize, b: usize) -> Self {
        Edge {
            long: a,
            short: b,
            multiplicity: 1,
        }
    }

    fn multiple(long: usize, short: usize, multiplicity: u8) -> Self {
        Edge {
            long,
            short,
            multiplicity,
        }
    }

    fn touches(&self, node: usize) -> bool {
        self.long == node || self.short == node
    }

    fn other(&self, node: usize) -> usize {
        if self.long == node {
            self.short
        } else {
            self.long
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinDiagram {
    rank: usize,
    edges: Vec<Edge>,
}

impl DynkinDiagram {
    pub fn nodes(&self) -> impl Iterator<Item = usize> {
        1..=self.rank
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| e.touches(node))
            .map(|e| e.other(node))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for e in &self.edges {
            let (l, s) = (e.long - 1, e.short - 1);
            a[l][s] = -1;
            a[s][l] = -i64::from(e.multiplicity);
        }
        a
    }

    /// Connected components after removing `node`, as (sorted node list, edges).
    fn components_without(&self, node: usize) -> Vec<(Vec<usize>, Vec<Edge>)> {
        let mut seen: BTreeSet<usize> = BTreeSet::from([node]);
        let mut out = Vec::new();
        for start in self.nodes() {
            if seen.contains(&start) {
                continue;
            }
            let mut stack = vec![start];
            let mut nodes = Vec::new();
            seen.insert(start);
            while let Some(v) = stack.pop() {
                nodes.push(v);
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            nodes.sort_unstable();
            let edges = self
                .edges
                .iter()
                .filter(|e| nodes.contains(&e.long) && nodes.contains(&e.short))
                .copied()
                .collect();
            out.push((nodes, edges));
        }
        out
    }

    /// Type of this (connected) diagram.
    pub fn classify(&self) -> Result<CartanType> {
        let nodes: Vec<usize> = self.nodes().collect();
        classify(&nodes, &self.edges)
    }
}

/// Identify a connected Dynkin diagram given by its nodes and edges.
fn classify(nodes: &[usize], edges: &[Edge]) -> Result<CartanType> {
    let k = nodes.len();
    let bad = || Error::Invariant(format!("unclassifiable diagram on nodes {nodes:?}"));
    if k == 0 || edges.len() + 1 != k {
        return Err(bad());
    }
    let degree = |v: usize| edges.iter().filter(|e| e.touches(v)).count();
    if let Some(multi) = edges.iter().find(|e| e.multiplicity > 1) {
        return match (multi.multiplicity, k) {
            (3, 2) => CartanType::new(Family::G, 2),
            (2, 2) => CartanType::new(Family::B, 2),
            (2, 4) if degree(multi.long) == 2 && degree(multi.short) == 2 => {
                CartanType::new(Family::F, 4)
            }
            (2, _) if degree(multi.short) == 1 => CartanType::new(Family::B, k),
            (2, _) if degree(multi.long) == 1 => CartanType::new(Family::C, k),
            _ => Err(bad()),
        };
    }
    let branch: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) >= 3).collect();
    match branch.as_slice() {
        [] => CartanType::new(Family::A, k),
        [b] if degree(*b) == 3 => {
            let mut arms: Vec<usize> = edges
                .iter()
                .filter(|e| e.touches(*b))
                .map(|e| arm_length(edges, *b, e.other(*b)))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => CartanType::new(Family::D, k),
                [1, 2, 2] => CartanType::new(Family::E, 6),
                [1, 2, 3] => CartanType::new(Family::E, 7),
                [1, 2, 4] => CartanType::new(Family::E, 8),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

fn arm_length(edges: &[Edge], from: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, first, 1);
    loop {
        let next = edges
            .iter()
            .filter(|e| e.touches(cur))
            .map(|e| e.other(cur))
            .find(|&w| w != prev);
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
                len += 1;
            }
            None => return len,
        }
    }
}

/// A finite product of irreducible root systems, kept in canonical order:
/// decreasing rank, then family letter. The empty product is the rank-0
/// system, written `A0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RootSystemSpec {
    components: Vec<CartanType>,
}

impl RootSystemSpec {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_components(mut components: Vec<CartanType>) -> Self {
        components.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.family.cmp(&b.family)));
        RootSystemSpec { components }
    }

    pub fn irreducible(t: CartanType) -> Self {
        RootSystemSpec {
            components: vec![t],
        }
    }

    pub fn components(&self) -> &[CartanType] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|t| t.rank).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn as_irreducible(&self) -> Option<CartanType> {
        match self.components.as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    /// Product with another spec.
    pub fn times(&self, other: &RootSystemSpec) -> RootSystemSpec {
        let mut all = self.components.clone();
        all.extend_from_slice(&other.components);
        Self::from_components(all)
    }

    /// Block-diagonal Cartan matrix, components in canonical order.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for t in &self.components {
            let block = t.cartan_matrix();
            for (i, row) in block.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    a[offset + i][offset + j] = v;
                }
            }
            offset += t.rank;
        }
        a
    }
}

impl From<CartanType> for RootSystemSpec {
    fn from(t: CartanType) -> Self {
        RootSystemSpec::irreducible(t)
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("A0");
        }
        for (i, t) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    /// Parses `'x'`-separated components, case-insensitively. Rank-0 pieces
    /// (`A0`, `B0`) contribute nothing and `D2` expands to `A1xA1`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(parse_err("empty string"));
        }
        let mut components = Vec::new();
        for piece in trimmed.split(['x', 'X']) {
            let piece = piece.trim();
            let mut chars = piece.chars();
            let family = chars
                .next()
                .and_then(Family::from_char)
                .ok_or_else(|| parse_err("expected components like A3, B2, D4, E6, F4, G2 joined by 'x'"))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| parse_err("component rank must be a number"))?;
            match (family, rank) {
                (_, 0) => {}
                (Family::D, 2) => components.extend([CartanType::a(1), CartanType::a(1)]),
                _ => components.push(CartanType::new(family, rank).map_err(|_| {
                    parse_err("admissible types are A(n>=1), B(n>=2), C(n>=3), D(n>=4), E6-E8, F4, G2")
                })?),
            }
        }
        Ok(RootSystemSpec::from_components(components))
    }
}

impl Serialize for RootSystemSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootSystemSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
