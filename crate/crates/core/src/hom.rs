//! Frame homomorphisms, right adjoints, density, and subframe
//! generation.
//!
//! In a finite frame every join is finite, so preserving bottom, top and
//! binary meets/joins makes a map a frame homomorphism. Validation is
//! exhaustive over pairs: the frames in play have at most a few hundred
//! elements and O(n^2) table walks are trivial.

use crate::error::{Error, Result};
use crate::frame::{Frame, FrameRef};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameHom {
    source: FrameRef,
    target: FrameRef,
    map: Vec<u16>,
}

/// An order-preserving map; the shape of right adjoints, which preserve
/// meets but usually not joins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: FrameRef,
    target: FrameRef,
    map: Vec<u16>,
}

/// Check a candidate mapping for the frame homomorphism laws.
pub fn validate_hom(source: FrameRef, target: FrameRef, map: Vec<usize>) -> Result<FrameHom> {
    if map.len() != source.len() {
        return Err(Error::NotHomomorphism(format!(
            "mapping has {} entries for a {}-element source",
            map.len(),
            source.len()
        )));
    }
    if let Some(&x) = map.iter().find(|&&x| x >= target.len()) {
        return Err(Error::NotHomomorphism(format!("image index {x} out of range")));
    }
    if map[source.bottom()] != target.bottom() {
        return Err(Error::NotHomomorphism("bottom not preserved".into()));
    }
    if map[source.top()] != target.top() {
        return Err(Error::NotHomomorphism("top not preserved".into()));
    }
    for x in source.elements() {
        for y in source.elements() {
            if map[source.meet(x, y)] != target.meet(map[x], map[y]) {
                return Err(Error::NotHomomorphism(format!(
                    "meet not preserved at ({}, {})",
                    source.label(x),
                    source.label(y)
                )));
            }
            if map[source.join(x, y)] != target.join(map[x], map[y]) {
                return Err(Error::NotHomomorphism(format!(
                    "join not preserved at ({}, {})",
                    source.label(x),
                    source.label(y)
                )));
            }
        }
    }
    Ok(FrameHom {
        source,
        target,
        map: map.into_iter().map(|x| x as u16).collect(),
    })
}

impl FrameHom {
    pub fn identity(frame: &FrameRef) -> FrameHom {
        FrameHom {
            source: frame.clone(),
            target: frame.clone(),
            map: frame.elements().map(|x| x as u16).collect(),
        }
    }

    pub fn source(&self) -> &FrameRef {
        &self.source
    }

    pub fn target(&self) -> &FrameRef {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn table(&self) -> Vec<usize> {
        self.map.iter().map(|&x| x as usize).collect()
    }

    /// g after self; sources and targets must line up.
    pub fn then(&self, g: &FrameHom) -> FrameHom {
        assert_eq!(
            self.target.as_ref(),
            g.source.as_ref(),
            "composition endpoint mismatch"
        );
        FrameHom {
            source: self.source.clone(),
            target: g.target.clone(),
            map: self.map.iter().map(|&x| g.map[x as usize]).collect(),
        }
    }

    /// f_*(b) = join of { a : f(a) <= b }. The adjunction
    /// f(a) <= b iff a <= f_*(b) is checked in debug builds.
    pub fn right_adjoint(&self) -> MonotoneMap {
        let map: Vec<u16> = self
            .target
            .elements()
            .map(|b| {
                self.source
                    .join_of(self.source.elements().filter(|&a| self.target.leq(self.apply(a), b)))
                    as u16
            })
            .collect();
        let adj = MonotoneMap {
            source: self.target.clone(),
            target: self.source.clone(),
            map,
        };
        debug_assert!(self.target.elements().all(|b| self
            .source
            .elements()
            .all(|a| self.target.leq(self.apply(a), b) == self.source.leq(a, adj.apply(b)))));
        adj
    }

    /// f(x) = 0 implies x = 0.
    pub fn is_dense(&self) -> bool {
        self.source
            .elements()
            .all(|x| self.apply(x) != self.target.bottom() || x == self.source.bottom())
    }

    /// f(x) = 1 implies x = 1.
    pub fn is_codense(&self) -> bool {
        self.source
            .elements()
            .all(|x| self.apply(x) != self.target.top() || x == self.source.top())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&y| {
            let fresh = !seen[y as usize];
            seen[y as usize] = true;
            fresh
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &y in &self.map {
            seen[y as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.map.iter().map(|&y| y as usize).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }
}

impl MonotoneMap {
    pub fn source(&self) -> &FrameRef {
        &self.source
    }

    pub fn target(&self) -> &FrameRef {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn is_monotone(&self) -> bool {
        self.source.elements().all(|x| {
            self.source
                .elements()
                .all(|y| !self.source.leq(x, y) || self.target.leq(self.apply(x), self.apply(y)))
        })
    }
}

/// Smallest subset of `frame` containing `seed`, bottom and top, closed
/// under binary meet and join. Returned sorted. This is a closure
/// operator: inflationary, monotone, idempotent.
pub fn subframe_generated(frame: &Frame, seed: &[usize]) -> Vec<usize> {
    let mut member = vec![false; frame.len()];
    member[frame.bottom()] = true;
    member[frame.top()] = true;
    for &s in seed {
        member[s] = true;
    }
    loop {
        let current: Vec<usize> = (0..frame.len()).filter(|&x| member[x]).collect();
        let mut grew = false;
        for &x in &current {
            for &y in &current {
                for z in [frame.meet(x, y), frame.join(x, y)] {
                    if !member[z] {
                        member[z] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return current;
        }
    }
}

/// Present a subframe (a sorted element subset closed under meet, join,
/// bottom, top) as a frame of its own together with the inclusion hom.
pub fn subframe_as_frame(
    frame: &FrameRef,
    subset: &[usize],
    name: impl Into<String>,
) -> (FrameRef, FrameHom) {
    let labels = subset.iter().map(|&x| frame.label(x).to_string()).collect();
    let mut pairs = Vec::new();
    for (i, &x) in subset.iter().enumerate() {
        for (j, &y) in subset.iter().enumerate() {
            if frame.leq(x, y) {
                pairs.push((i, j));
            }
        }
    }
    let poset = crate::poset::FinitePoset::new(labels, &pairs).expect("restricted order");
    let sub = Arc::new(crate::frame::build_frame(name, poset).expect("subframe of a frame"));
    let incl = validate_hom(sub.clone(), frame.clone(), subset.to_vec())
        .expect("inclusion of a subframe closed under the operations");
    (sub, incl)
}

/// All frame homomorphisms from `source` to `target`.
///
/// A hom is determined by its values on join-irreducibles (every element
/// is the join of the irreducibles below it), so we backtrack over
/// irreducible assignments in a linear-extension order, pruning by
/// monotonicity, and validate each completed extension.
pub fn enumerate_frame_homs(source: &FrameRef, target: &FrameRef) -> Vec<FrameHom> {
    let js: Vec<usize> = {
        let mut js = source.join_irreducibles().to_vec();
        js.sort_by_key(|&j| source.poset().height(j));
        js
    };
    let mut homs = Vec::new();
    let mut assign: Vec<usize> = vec![0; js.len()];
    fn go(
        pos: usize,
        js: &[usize],
        assign: &mut Vec<usize>,
        source: &FrameRef,
        target: &FrameRef,
        homs: &mut Vec<FrameHom>,
    ) {
        if pos == js.len() {
            let map: Vec<usize> = source
                .elements()
                .map(|x| {
                    target.join_of(
                        js.iter()
                            .enumerate()
                            .filter(|&(_, &j)| source.leq(j, x))
                            .map(|(k, _)| assign[k]),
                    )
                })
                .collect();
            if let Ok(h) = validate_hom(source.clone(), target.clone(), map) {
                homs.push(h);
            }
            return;
        }
        for v in target.elements() {
            let ok = (0..pos).all(|k| {
                (!source.leq(js[k], js[pos]) || target.leq(assign[k], v))
                    && (!source.leq(js[pos], js[k]) || target.leq(v, assign[k]))
            });
            if ok {
                assign[pos] = v;
                go(pos + 1, js, assign, source, target, homs);
            }
        }
    }
    go(0, &js, &mut assign, source, target, &mut homs);
    homs.sort_by(|a, b| a.map.cmp(&b.map));
    homs.dedup();
    homs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::fixtures::*;

    #[test]
    fn identity_is_valid_dense_codense() {
        let f = chain(3);
        let id = FrameHom::identity(&f);
        assert!(validate_hom(f.clone(), f.clone(), id.table()).is_ok());
        assert!(id.is_dense() && id.is_codense());
    }

    #[test]
    fn chain3_to_two_collapsing_up_is_valid() {
        let c3 = chain(3);
        let c2 = chain(2);
        let h = validate_hom(c3.clone(), c2.clone(), vec![0, 1, 1]).unwrap();
        assert!(h.is_dense());
        assert!(!h.is_codense());
    }

    #[test]
    fn chain3_to_two_collapsing_down() {
        let c3 = chain(3);
        let c2 = chain(2);
        let h = validate_hom(c3.clone(), c2.clone(), vec![0, 0, 1]).unwrap();
        assert!(h.is_codense());
        assert!(!h.is_dense());
    }

    #[test]
    fn constant_zero_is_rejected() {
        let c3 = chain(3);
        let c2 = chain(2);
        let err = validate_hom(c3, c2, vec![0, 0, 0]).unwrap_err();
        assert!(matches!(err, Error::NotHomomorphism(_)));
    }

    #[test]
    fn right_adjoint_of_identity_and_of_quotient() {
        let c3 = chain(3);
        let id = FrameHom::identity(&c3);
        let adj = id.right_adjoint();
        assert!(c3.elements().all(|x| adj.apply(x) == x));

        let c2 = chain(2);
        let q = validate_hom(c3.clone(), c2.clone(), vec![0, 1, 1]).unwrap();
        let qs = q.right_adjoint();
        assert_eq!(qs.apply(0), 0);
        assert_eq!(qs.apply(1), 2);
        assert!(qs.is_monotone());
    }

    #[test]
    fn adjoint_composites_are_deflationary_and_inflationary() {
        let c3 = chain(3);
        let c2 = chain(2);
        for h in enumerate_frame_homs(&c3, &c2) {
            let hs = h.right_adjoint();
            for b in c2.elements() {
                assert!(c2.leq(h.apply(hs.apply(b)), b));
            }
            for a in c3.elements() {
                assert!(c3.leq(a, hs.apply(h.apply(a))));
            }
        }
    }

    #[test]
    fn subframe_generated_is_a_closure_operator() {
        let s = square();
        let a = s.index_of("a").unwrap();
        let gen_a = subframe_generated(&s, &[a]);
        assert_eq!(gen_a, vec![0, a, 3]);
        assert_eq!(subframe_generated(&s, &[]), vec![0, 3]);
        // idempotent
        assert_eq!(subframe_generated(&s, &gen_a), gen_a);
        // a and b generate everything
        let b = s.index_of("b").unwrap();
        assert_eq!(subframe_generated(&s, &[a, b]).len(), 4);
    }

    #[test]
    fn hom_enumeration_matches_raw_search_on_tiny_frames() {
        // oracle: try every map table
        fn raw(source: &FrameRef, target: &FrameRef) -> usize {
            let n = source.len();
            let m = target.len();
            let total = (m as u64).pow(n as u32);
            (0..total)
                .filter(|&code| {
                    let mut c = code;
                    let map: Vec<usize> = (0..n)
                        .map(|_| {
                            let v = (c % m as u64) as usize;
                            c /= m as u64;
                            v
                        })
                        .collect();
                    validate_hom(source.clone(), target.clone(), map).is_ok()
                })
                .count()
        }
        for s in [chain(2), chain(3), square()] {
            for t in [chain(2), chain(3), square()] {
                assert_eq!(enumerate_frame_homs(&s, &t).len(), raw(&s, &t), "{} -> {}", s.name(), t.name());
            }
        }
    }

    #[test]
    fn codense_from_zero_dimensional_is_injective_on_corpus() {
        // zero-dimensional: every element a join of complemented elements
        let zd = |f: &FrameRef| {
            f.elements().all(|x| {
                let comps: Vec<usize> = f
                    .elements()
                    .filter(|&c| f.complement(c).is_some() && f.leq(c, x))
                    .collect();
                f.join_of(comps) == x
            })
        };
        for s in [chain(2), square(), cube()] {
            assert!(zd(&s));
            for t in [chain(2), chain(3), square(), cube()] {
                for h in enumerate_frame_homs(&s, &t) {
                    if h.is_codense() {
                        assert!(h.is_injective());
                    }
                }
            }
        }
    }
}
