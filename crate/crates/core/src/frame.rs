//! Finite frames, i.e. finite distributive lattices with a Heyting
//! implication table.
//!
//! All structure is tabulated at construction time: binary meets and
//! joins, the implication x -> y (largest z with z /\ x <= y), bottom,
//! top, and the join-irreducible elements. `build_frame` validates the
//! lattice and distributivity laws exhaustively, so everything
//! downstream can index into the tables without re-checking.

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use itertools::Itertools;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    name: String,
    poset: FinitePoset,
    meet: Vec<u16>,
    join: Vec<u16>,
    heyting: Vec<u16>,
    bottom: usize,
    top: usize,
    join_irreducibles: Vec<usize>,
}

/// Build a frame from a validated poset, checking that every pair has a
/// greatest lower bound and least upper bound and that meets distribute
/// over joins.
pub fn build_frame(name: impl Into<String>, poset: FinitePoset) -> Result<Frame> {
    let n = poset.len();
    if n == 0 {
        return Err(Error::Invalid("a frame needs at least one element".into()));
    }
    // Bitset rows of down-sets and up-sets. The glb of x and y, when it
    // exists, is the unique lower bound b with down(b) = down(x) & down(y):
    // down(b) is always contained in the bound set, so it suffices to
    // compare popcounts.
    let words = n.div_ceil(64);
    let mut down = vec![0u64; n * words];
    let mut up = vec![0u64; n * words];
    for x in 0..n {
        for z in 0..n {
            if poset.leq(z, x) {
                down[x * words + z / 64] |= 1 << (z % 64);
            }
            if poset.leq(x, z) {
                up[x * words + z / 64] |= 1 << (z % 64);
            }
        }
    }
    let popcount_down: Vec<u32> = (0..n)
        .map(|x| down[x * words..(x + 1) * words].iter().map(|w| w.count_ones()).sum())
        .collect();
    let popcount_up: Vec<u32> = (0..n)
        .map(|x| up[x * words..(x + 1) * words].iter().map(|w| w.count_ones()).sum())
        .collect();
    let bound_of = |rows: &[u64], popcounts: &[u32], x: usize, y: usize| -> Option<usize> {
        let mut pc = 0u32;
        let mut buf = [0u64; 8];
        let wide; // spill for very large frames
        let inter: &[u64] = if words <= 8 {
            for w in 0..words {
                buf[w] = rows[x * words + w] & rows[y * words + w];
                pc += buf[w].count_ones();
            }
            &buf[..words]
        } else {
            let v: Vec<u64> = (0..words)
                .map(|w| rows[x * words + w] & rows[y * words + w])
                .collect();
            pc = v.iter().map(|w| w.count_ones()).sum();
            wide = v;
            &wide
        };
        for (w, &bits) in inter.iter().enumerate() {
            let mut bits = bits;
            while bits != 0 {
                let b = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if popcounts[b] == pc {
                    return Some(b);
                }
            }
        }
        None
    };

    let mut meet = vec![0u16; n * n];
    let mut join = vec![0u16; n * n];
    for x in 0..n {
        for y in 0..n {
            match bound_of(&down, &popcount_down, x, y) {
                Some(m) => meet[x * n + y] = m as u16,
                None => {
                    return Err(Error::NotLattice {
                        x: poset.label(x).into(),
                        y: poset.label(y).into(),
                        kind: "greatest lower bound",
                    })
                }
            }
            match bound_of(&up, &popcount_up, x, y) {
                Some(j) => join[x * n + y] = j as u16,
                None => {
                    return Err(Error::NotLattice {
                        x: poset.label(x).into(),
                        y: poset.label(y).into(),
                        kind: "least upper bound",
                    })
                }
            }
        }
    }

    // Bottom and top exist in any finite lattice: fold the tables.
    let mut bottom = 0usize;
    let mut top = 0usize;
    for x in 1..n {
        bottom = meet[bottom * n + x] as usize;
        top = join[top * n + x] as usize;
    }

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = meet[x * n + join[y * n + z] as usize];
                let rhs = join[(meet[x * n + y] as usize) * n + meet[x * n + z] as usize];
                if lhs != rhs {
                    return Err(Error::NotDistributive {
                        x: poset.label(x).into(),
                        y: poset.label(y).into(),
                        z: poset.label(z).into(),
                    });
                }
            }
        }
    }

    // heyting(x, y) = join of { z : z /\ x <= y }; distributivity makes
    // that set closed under joins, so the fold lands inside it.
    let mut heyting = vec![0u16; n * n];
    for x in 0..n {
        for y in 0..n {
            let mut h = bottom;
            for z in 0..n {
                if poset.leq(meet[z * n + x] as usize, y) {
                    h = join[h * n + z] as usize;
                }
            }
            heyting[x * n + y] = h as u16;
        }
    }

    let mut join_irreducibles = Vec::new();
    for j in 0..n {
        if j == bottom {
            continue;
        }
        let mut below = bottom;
        for x in 0..n {
            if x != j && poset.leq(x, j) {
                below = join[below * n + x] as usize;
            }
        }
        if below != j {
            join_irreducibles.push(j);
        }
    }

    let frame = Frame {
        name: name.into(),
        poset,
        meet,
        join,
        heyting,
        bottom,
        top,
        join_irreducibles,
    };
    debug_assert!(frame.check_residuation());
    Ok(frame)
}

impl Frame {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn label(&self, x: usize) -> &str {
        self.poset.label(x)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.poset.elements()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    /// Heyting implication x -> y.
    #[inline]
    pub fn imp(&self, x: usize, y: usize) -> usize {
        self.heyting[x * self.len() + y] as usize
    }

    /// Pseudocomplement x* = x -> 0.
    pub fn pseudocomplement(&self, x: usize) -> usize {
        self.imp(x, self.bottom)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_of(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |a, b| self.join(a, b))
    }

    pub fn meet_of(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |a, b| self.meet(a, b))
    }

    /// The complement of x, if one exists. Distributivity makes it unique.
    pub fn complement(&self, x: usize) -> Option<usize> {
        self.elements()
            .find(|&c| self.meet(x, c) == self.bottom && self.join(x, c) == self.top)
    }

    /// Every element complemented?
    pub fn is_boolean(&self) -> bool {
        self.elements().all(|x| self.complement(x).is_some())
    }

    /// Nonzero elements that are not joins of strictly smaller elements.
    pub fn join_irreducibles(&self) -> &[usize] {
        &self.join_irreducibles
    }

    /// Join-irreducibles below x; their join recovers x in a finite
    /// distributive lattice.
    pub fn irreducibles_below(&self, x: usize) -> Vec<usize> {
        self.join_irreducibles
            .iter()
            .copied()
            .filter(|&j| self.leq(j, x))
            .collect()
    }

    /// The join-irreducibles as a poset of their own (Birkhoff dual).
    pub fn irreducible_poset(&self) -> FinitePoset {
        let js = &self.join_irreducibles;
        let labels = js.iter().map(|&j| self.label(j).to_string()).collect();
        let mut pairs = Vec::new();
        for (a, &x) in js.iter().enumerate() {
            for (b, &y) in js.iter().enumerate() {
                if self.leq(x, y) {
                    pairs.push((a, b));
                }
            }
        }
        FinitePoset::new(labels, &pairs).expect("restriction of a partial order")
    }

    /// Exhaustive residuation law: z /\ x <= y iff z <= (x -> y).
    pub fn check_residuation(&self) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| {
                let h = self.imp(x, y);
                self.elements()
                    .all(|z| (self.leq(self.meet(z, x), y)) == self.leq(z, h))
            })
        })
    }

    pub fn canonical_key(&self) -> Vec<bool> {
        self.poset.canonical_key()
    }

    /// Search for an order isomorphism onto `other`, returned as a map
    /// from self-indices to other-indices. Order isomorphisms between
    /// lattices automatically preserve meet and join.
    ///
    /// Backtracking over elements grouped by (height, degree) invariants;
    /// corpus frames are small, so correctness beats cleverness.
    pub fn find_isomorphism(&self, other: &Frame) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let n = self.len();
        let inv = |f: &Frame, x: usize| {
            (
                f.poset().height(x),
                f.poset().lower_covers(x).len(),
                f.poset().upper_covers(x).len(),
                f.elements().filter(|&y| f.leq(y, x)).count(),
                f.elements().filter(|&y| f.leq(x, y)).count(),
            )
        };
        let self_inv: Vec<_> = self.elements().map(|x| inv(self, x)).collect();
        let other_inv: Vec<_> = other.elements().map(|x| inv(other, x)).collect();
        {
            let mut a = self_inv.clone();
            let mut b = other_inv.clone();
            a.sort();
            b.sort();
            if a != b {
                return None;
            }
        }
        // Assign poorly-populated invariant classes first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| {
            (
                self_inv.iter().filter(|&&v| v == self_inv[x]).count(),
                std::cmp::Reverse(self_inv[x].3),
            )
        });
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            pos: usize,
            order: &[usize],
            s: &Frame,
            o: &Frame,
            s_inv: &[(usize, usize, usize, usize, usize)],
            o_inv: &[(usize, usize, usize, usize, usize)],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if pos == order.len() {
                return true;
            }
            let x = order[pos];
            for y in o.elements() {
                if used[y] || o_inv[y] != s_inv[x] {
                    continue;
                }
                let consistent = order[..pos].iter().all(|&x2| {
                    let y2 = map[x2];
                    s.leq(x, x2) == o.leq(y, y2) && s.leq(x2, x) == o.leq(y2, y)
                });
                if !consistent {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if go(pos + 1, order, s, o, s_inv, o_inv, map, used) {
                    return true;
                }
                map[x] = usize::MAX;
                used[y] = false;
            }
            false
        }
        if go(0, &order, self, other, &self_inv, &other_inv, &mut map, &mut used) {
            debug_assert!(is_order_isomorphism(self, other, &map));
            Some(map)
        } else {
            None
        }
    }
}

pub(crate) fn is_order_isomorphism(a: &Frame, b: &Frame, map: &[usize]) -> bool {
    a.len() == b.len()
        && map.iter().copied().sorted().eq(0..b.len())
        && a.elements().all(|x| {
            a.elements()
                .all(|y| a.leq(x, y) == b.leq(map[x], map[y]))
        })
}

/// Build the frame on a subset of `frame` under the induced order, with
/// no relationship to the ambient operations implied. Used for upsets,
/// downsets and other induced sublattices; fails if the induced order is
/// not a distributive lattice.
pub fn induced_frame(frame: &Frame, subset: &[usize], name: impl Into<String>) -> Result<Frame> {
    let labels = subset.iter().map(|&x| frame.label(x).to_string()).collect();
    let mut pairs = Vec::new();
    for (i, &x) in subset.iter().enumerate() {
        for (j, &y) in subset.iter().enumerate() {
            if frame.leq(x, y) {
                pairs.push((i, j));
            }
        }
    }
    build_frame(name, FinitePoset::new(labels, &pairs)?)
}

/// Downset frame D(P) of a poset: elements are the downsets ordered by
/// inclusion. This realises Birkhoff duality; the join-irreducibles are
/// exactly the principal downsets.
pub fn downset_frame(name: impl Into<String>, p: &FinitePoset) -> Frame {
    let k = p.len();
    assert!(k <= 20, "downset frame only materialised for small posets");
    let mut downsets: Vec<u32> = Vec::new();
    for mask in 0u32..(1 << k) {
        let closed = (0..k).all(|i| {
            mask & (1 << i) == 0 || (0..k).all(|j| !p.leq(j, i) || mask & (1 << j) != 0)
        });
        if closed {
            downsets.push(mask);
        }
    }
    downsets.sort_by_key(|m| (m.count_ones(), *m));
    let labels: Vec<String> = downsets
        .iter()
        .map(|&m| {
            let names: Vec<&str> = (0..k).filter(|&i| m & (1 << i) != 0).map(|i| p.label(i)).collect();
            format!("{{{}}}", names.join(" "))
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, &a) in downsets.iter().enumerate() {
        for (j, &b) in downsets.iter().enumerate() {
            if a & b == a {
                pairs.push((i, j));
            }
        }
    }
    let poset = FinitePoset::new(labels, &pairs).expect("inclusion order");
    build_frame(name, poset).expect("downset lattices are distributive")
}

/// Shared handle used throughout; frames are immutable once built.
pub type FrameRef = Arc<Frame>;

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn chain(n: usize) -> FrameRef {
        let labels = match n {
            2 => vec!["0".into(), "1".into()],
            3 => vec!["0".into(), "a".into(), "1".into()],
            _ => (0..n).map(|i| format!("c{i}")).collect(),
        };
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Arc::new(build_frame(format!("chain{n}"), FinitePoset::new(labels, &pairs).unwrap()).unwrap())
    }

    pub fn square() -> FrameRef {
        let labels = vec!["0".into(), "a".into(), "b".into(), "1".into()];
        let pairs = vec![(0, 1), (0, 2), (1, 3), (2, 3)];
        Arc::new(build_frame("2^2", FinitePoset::new(labels, &pairs).unwrap()).unwrap())
    }

    pub fn cube() -> FrameRef {
        let labels: Vec<String> = (0..8u32)
            .map(|m| format!("s{m:03b}"))
            .collect();
        let mut pairs = Vec::new();
        for a in 0..8u32 {
            for b in 0..8u32 {
                if a & b == a {
                    pairs.push((a as usize, b as usize));
                }
            }
        }
        Arc::new(build_frame("2^3", FinitePoset::new(labels, &pairs).unwrap()).unwrap())
    }

    pub fn trivial() -> FrameRef {
        Arc::new(build_frame("1", FinitePoset::new(vec!["*".into()], &[]).unwrap()).unwrap())
    }

    /// Three incomparable atoms under one top: a lattice, not distributive.
    pub fn diamond_m3() -> FinitePoset {
        let labels = vec!["0".into(), "x".into(), "y".into(), "z".into(), "1".into()];
        let pairs = vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)];
        FinitePoset::new(labels, &pairs).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn chain3_builds() {
        let f = chain(3);
        assert_eq!(f.len(), 3);
        assert_eq!(f.bottom(), 0);
        assert_eq!(f.top(), 2);
        assert_eq!(f.meet(1, 2), 1);
        assert_eq!(f.join(0, 1), 1);
    }

    #[test]
    fn m3_is_not_distributive() {
        let err = build_frame("M3", diamond_m3()).unwrap_err();
        assert!(matches!(err, Error::NotDistributive { .. }));
    }

    #[test]
    fn pentagon_lacking_bounds_is_not_a_lattice() {
        // two maximal elements: pair of tops has no lub
        let p = FinitePoset::new(vec!["0".into(), "x".into(), "y".into()], &[(0, 1), (0, 2)]).unwrap();
        let err = build_frame("V", p).unwrap_err();
        assert!(matches!(err, Error::NotLattice { .. }));
    }

    #[test]
    fn single_element_frame_has_bottom_equal_top() {
        let f = trivial();
        assert_eq!(f.bottom(), f.top());
        assert!(f.is_boolean());
        assert!(f.join_irreducibles().is_empty());
    }

    #[test]
    fn complement_in_square() {
        let f = square();
        let a = f.index_of("a").unwrap();
        let b = f.index_of("b").unwrap();
        assert_eq!(f.complement(a), Some(b));
        assert_eq!(f.complement(f.bottom()), Some(f.top()));
    }

    #[test]
    fn chain3_has_no_complement_for_middle() {
        let f = chain(3);
        assert_eq!(f.complement(1), None);
        assert!(!f.is_boolean());
    }

    #[test]
    fn square_is_boolean() {
        assert!(square().is_boolean());
    }

    #[test]
    fn join_irreducibles_of_chain3_and_cube() {
        let f = chain(3);
        assert_eq!(f.join_irreducibles(), &[1, 2]);
        let c = cube();
        let js = c.join_irreducibles();
        assert_eq!(js.len(), 3);
        for &j in js {
            assert_eq!(c.poset().height(j), 1); // atoms
        }
    }

    #[test]
    fn heyting_residuation_holds() {
        for f in [chain(4), square(), cube()] {
            assert!(f.check_residuation());
        }
    }

    #[test]
    fn every_element_is_join_of_irreducibles_below() {
        for f in [chain(4), square(), cube()] {
            for x in f.elements() {
                assert_eq!(f.join_of(f.irreducibles_below(x)), x);
            }
        }
    }

    #[test]
    fn iso_distinguishes_chain4_from_square() {
        let c = chain(4);
        let s = square();
        assert!(c.find_isomorphism(&s).is_none());
        assert!(c.find_isomorphism(&c).is_some());
    }

    #[test]
    fn iso_finds_relabeling_of_square() {
        let s = square();
        let labels = vec!["bot".into(), "q".into(), "p".into(), "top".into()];
        let pairs = vec![(0, 1), (0, 2), (1, 3), (2, 3)];
        let t = build_frame("sq2", FinitePoset::new(labels, &pairs).unwrap()).unwrap();
        let map = s.find_isomorphism(&t).unwrap();
        assert!(is_order_isomorphism(&s, &t, &map));
    }

    #[test]
    fn downset_frame_of_two_antichain_is_square() {
        let p = FinitePoset::new(vec!["p".into(), "q".into()], &[]).unwrap();
        let f = downset_frame("D", &p);
        assert_eq!(f.len(), 4);
        assert!(f.find_isomorphism(&square()).is_some());
    }
}
