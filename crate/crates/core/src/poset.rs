//! Finite posets as explicit order tables.
//!
//! Element identity is positional; labels are kept only for input and
//! output. Input relations are closed reflexively and transitively, so
//! callers may supply a Hasse diagram, a full order, or anything in
//! between. Antisymmetry failure after closure is an error.

use crate::error::{Error, Result};
use itertools::Itertools;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// Row-major n*n table; `leq[i*n+j]` means element i <= element j.
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Build a poset from labels and a list of `(x, y)` pairs meaning
    /// `x <= y`. The relation is closed reflexively and transitively.
    pub fn new(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(x, y) in pairs {
            assert!(x < n && y < n, "pair index out of range");
            leq[x * n + y] = true;
        }
        // Floyd-Warshall style transitive closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::NotAntisymmetric(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    /// Build from labeled pairs, resolving labels to positions.
    pub fn from_labeled_pairs(labels: Vec<String>, pairs: &[(String, String)]) -> Result<Self> {
        let index = |l: &String| -> Result<usize> {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.clone()))
        };
        let mut resolved = Vec::with_capacity(pairs.len());
        for (x, y) in pairs {
            resolved.push((index(x)?, index(y)?));
        }
        FinitePoset::new(labels, &resolved)
    }

    /// A poset already known to be reflexive, transitive and antisymmetric.
    pub(crate) fn from_closed_leq(labels: Vec<String>, leq: Vec<bool>) -> Self {
        debug_assert_eq!(labels.len() * labels.len(), leq.len());
        FinitePoset { labels, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.labels.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.labels.len()
    }

    /// Lower covers of `i`: maximal elements strictly below it.
    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        self.elements()
            .filter(|&j| self.lt(j, i) && !self.elements().any(|k| self.lt(j, k) && self.lt(k, i)))
            .collect()
    }

    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        self.elements()
            .filter(|&j| self.lt(i, j) && !self.elements().any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    /// Height of an element: length of the longest chain below it.
    pub fn height(&self, i: usize) -> usize {
        let mut h = vec![0usize; self.len()];
        // Elements sorted by number of elements below give a linear extension.
        let order = self.linear_extension();
        for &x in &order {
            h[x] = self
                .elements()
                .filter(|&y| self.lt(y, x))
                .map(|y| h[y] + 1)
                .max()
                .unwrap_or(0);
        }
        h[i]
    }

    /// Indices sorted so that x < y implies x comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&i| self.elements().filter(|&j| self.leq(j, i)).count());
        order
    }

    /// Is the subset (as a sorted index list) downward closed?
    pub fn is_downset(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&i| self.elements().all(|j| !self.leq(j, i) || subset.contains(&j)))
    }

    /// Apply a permutation: new element `i` is old element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> FinitePoset {
        let n = self.len();
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(perm[i], perm[j]);
            }
        }
        FinitePoset { labels, leq }
    }

    /// Canonical key: the lexicographically minimal flattened order table
    /// over all permutations of the elements. Deterministic across runs,
    /// equal for isomorphic posets.
    pub fn canonical_key(&self) -> Vec<bool> {
        let n = self.len();
        if n == 0 {
            return Vec::new();
        }
        let mut best: Option<Vec<bool>> = None;
        for perm in (0..n).permutations(n) {
            let mut key = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    key[i * n + j] = self.leq(perm[i], perm[j]);
                }
            }
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
        best.unwrap()
    }

    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        self.len() == other.len() && self.canonical_key() == other.canonical_key()
    }
}

/// Cartesian product of posets with componentwise order. Labels are
/// tuples of the factor labels. The empty product is the one-point poset.
pub fn product_poset(factors: &[&FinitePoset]) -> FinitePoset {
    let mut labels = vec![String::new()];
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for f in factors {
        let mut next_labels = Vec::new();
        let mut next_tuples = Vec::new();
        for (t, l) in tuples.iter().zip(&labels) {
            for i in f.elements() {
                let mut t2 = t.clone();
                t2.push(i);
                next_tuples.push(t2);
                if l.is_empty() {
                    next_labels.push(f.label(i).to_string());
                } else {
                    next_labels.push(format!("{l},{}", f.label(i)));
                }
            }
        }
        tuples = next_tuples;
        labels = next_labels;
    }
    let n = tuples.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = tuples[i]
                .iter()
                .zip(&tuples[j])
                .enumerate()
                .all(|(k, (&a, &b))| factors[k].leq(a, b));
        }
    }
    FinitePoset {
        labels: labels.iter().map(|l| format!("({l})")).collect(),
        leq,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinitePoset {
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::new(labels, &pairs).unwrap()
    }

    #[test]
    fn closure_makes_hasse_input_work() {
        let p = chain(4);
        assert!(p.leq(0, 3));
        assert!(!p.leq(3, 0));
    }

    #[test]
    fn antisymmetry_violation_is_detected() {
        let err = FinitePoset::new(
            vec!["x".into(), "y".into()],
            &[(0, 1), (1, 0)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAntisymmetric(_, _)));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = FinitePoset::new(vec!["x".into(), "x".into()], &[]).unwrap_err();
        assert!(matches!(err, Error::DuplicateLabel(_)));
    }

    #[test]
    fn canonical_key_is_permutation_invariant() {
        let p = FinitePoset::new(
            vec!["0".into(), "a".into(), "b".into(), "1".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let q = p.permuted(&[3, 1, 0, 2]);
        assert_eq!(p.canonical_key(), q.canonical_key());
        assert!(p.is_isomorphic(&q));
    }

    #[test]
    fn covers_and_height() {
        let p = chain(3);
        assert_eq!(p.lower_covers(2), vec![1]);
        assert_eq!(p.upper_covers(0), vec![1]);
        assert_eq!(p.height(2), 2);
    }

    #[test]
    fn product_of_two_chains_is_a_grid() {
        let c = chain(2);
        let g = product_poset(&[&c, &c]);
        assert_eq!(g.len(), 4);
        // exactly one bottom and one top
        let bottoms = g.elements().filter(|&i| g.elements().all(|j| g.leq(i, j))).count();
        assert_eq!(bottoms, 1);
    }

    #[test]
    fn empty_product_is_a_point() {
        let p = product_poset(&[]);
        assert_eq!(p.len(), 1);
    }
}
