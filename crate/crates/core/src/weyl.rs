//! Weyl groups in their reflection representation on the root lattice.
//!
//! Group elements are integer matrices acting on coordinates in the basis of
//! simple roots. Reflection length is read off as the rank of `g - 1`, the
//! codimension of the fixed space, which for Weyl groups equals the minimal
//! number of reflections whose product is `g`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::RootSystemSpec;
use crate::error::{Error, Result};

/// A square integer matrix in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    n: usize,
    entries: Vec<i64>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        GroupElement { n, entries }
    }

    pub fn from_entries(n: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), n * n, "matrix of size {n} needs {} entries", n * n);
        GroupElement { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        GroupElement { n, entries: out }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElement::identity(self.n)
    }

    /// Rank of `self - other`.
    pub fn rank_of_difference(&self, other: &GroupElement) -> usize {
        let diff: Vec<i128> = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| i128::from(a - b))
            .collect();
        integer_rank(diff, self.n)
    }

    /// Reflection length: `n - dim(fixed space)`.
    pub fn abs_length(&self) -> usize {
        self.rank_of_difference(&GroupElement::identity(self.n))
    }

    /// Multiplicative order (the identity has order 1).
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.mul(self);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i64]> = self.entries.chunks(self.n.max(1)).collect();
        write!(f, "GroupElement{rows:?}")
    }
}

/// Rank of a square integer matrix by fraction-free (Bareiss) elimination.
fn integer_rank(mut m: Vec<i128>, n: usize) -> usize {
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| m[r * n + col] != 0) else {
            continue;
        };
        if p != rank {
            for c in 0..n {
                m.swap(p * n + c, rank * n + c);
            }
        }
        let pivot = m[rank * n + col];
        for r in rank + 1..n {
            let lead = m[r * n + col];
            for c in col + 1..n {
                let v = pivot * m[r * n + c] - lead * m[rank * n + c];
                debug_assert_eq!(v % prev, 0);
                m[r * n + c] = v / prev;
            }
            m[r * n + col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Simple reflections, positive roots and reflections of a Weyl group.
#[derive(Clone, Debug)]
pub struct ReflectionRep {
    spec: RootSystemSpec,
    cartan: Vec<Vec<i64>>,
    simple_reflections: Vec<GroupElement>,
    positive_roots: Vec<Vec<i64>>,
    reflections: Vec<GroupElement>,
}

impl ReflectionRep {
    pub fn new(spec: &RootSystemSpec) -> Self {
        let cartan = spec.cartan_matrix();
        let n = cartan.len();
        let simple_reflections: Vec<GroupElement> = (0..n)
            .map(|i| {
                let mut s = GroupElement::identity(n);
                for (e, a) in s.entries[i * n..(i + 1) * n].iter_mut().zip(&cartan[i]) {
                    *e -= a;
                }
                s
            })
            .collect();

        // Orbit of the simple roots under simple reflections, carrying the
        // reflection of each root along: s_{s_j β} = s_j s_β s_j.
        let mut found: BTreeMap<Vec<i64>, GroupElement> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for (i, s) in simple_reflections.iter().enumerate() {
            let mut root = vec![0; n];
            root[i] = 1;
            found.insert(root.clone(), s.clone());
            queue.push_back(root);
        }
        while let Some(root) = queue.pop_front() {
            let refl = found[&root].clone();
            for s in &simple_reflections {
                let image = s.apply(&root);
                if image.iter().any(|&c| c < 0) || found.contains_key(&image) {
                    continue;
                }
                found.insert(image.clone(), s.mul(&refl).mul(s));
                queue.push_back(image);
            }
        }
        let mut roots: Vec<(Vec<i64>, GroupElement)> = found.into_iter().collect();
        roots.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| a.0.cmp(&b.0))
        });
        let (positive_roots, reflections) = roots.into_iter().unzip();
        ReflectionRep {
            spec: spec.clone(),
            cartan,
            simple_reflections,
            positive_roots,
            reflections,
        }
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_reflections(&self) -> &[GroupElement] {
        &self.simple_reflections
    }

    /// Positive roots ordered by height, then coordinates.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// One reflection per positive root, in the same order.
    pub fn reflections(&self) -> &[GroupElement] {
        &self.reflections
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.rank())
    }

    pub fn abs_length(&self, g: &GroupElement) -> usize {
        g.abs_length()
    }

    /// `v <= w` in absolute order: `l_T(v) + l_T(v^{-1} w) = l_T(w)`, using
    /// `l_T(v^{-1} w) = rank(w - v)`.
    pub fn absolute_leq(&self, v: &GroupElement, w: &GroupElement) -> bool {
        v.abs_length() + w.rank_of_difference(v) == w.abs_length()
    }

    /// Product `s_{o_1} ... s_{o_n}` for an ordering `o` of the node labels `1..=n`.
    pub fn coxeter_element(&self, ordering: &[usize]) -> Result<GroupElement> {
        let n = self.rank();
        let mut seen = vec![false; n];
        if ordering.len() != n {
            return Err(Error::InvalidOrdering(ordering.to_vec()));
        }
        for &i in ordering {
            if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::InvalidOrdering(ordering.to_vec()));
            }
        }
        Ok(ordering
            .iter()
            .fold(self.identity(), |acc, &i| acc.mul(&self.simple_reflections[i - 1])))
    }

    /// Coxeter element in Bourbaki node order.
    pub fn default_coxeter_element(&self) -> GroupElement {
        let order: Vec<usize> = (1..=self.rank()).collect();
        self.coxeter_element(&order).expect("identity ordering is valid")
    }

    /// Every group element, or `None` once more than `limit` have been found.
    pub fn enumerate_group(&self, limit: usize) -> Option<Vec<GroupElement>> {
        let mut seen: HashSet<GroupElement> = HashSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(g) = queue.pop_front() {
            for s in &self.simple_reflections {
                let h = g.mul(s);
                if seen.insert(h.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push_back(h);
                }
            }
        }
        let mut all: Vec<GroupElement> = seen.into_iter().collect();
        all.sort();
        Some(all)
    }
}
