//! Exhaustive enumeration of posets and frames up to isomorphism.
//!
//! Posets are generated in natural labelings by repeatedly attaching a
//! new maximal element whose strict down-set is a down-set of the
//! existing poset; every naturally labeled poset arises exactly once, and
//! canonical keys collapse the labelings to isomorphism classes. Frames
//! come out of Birkhoff duality: the downset lattices of the enumerated
//! posets, deduplicated again by canonical key. The direct filter
//! "posets that happen to be distributive lattices" is kept as the
//! independent counting oracle.

use crate::error::{Error, Result};
use crate::frame::{build_frame, downset_frame, Frame, FrameRef};
use crate::poset::FinitePoset;
use std::collections::HashSet;
use std::sync::Arc;

pub const ENUMERATION_BOUND: usize = 7;

/// All posets on exactly `n` elements, one per isomorphism class,
/// ordered by canonical key.
pub fn enumerate_posets(n: usize) -> Vec<FinitePoset> {
    struct Gen {
        n: usize,
        keys: HashSet<Vec<bool>>,
        out: Vec<(Vec<bool>, FinitePoset)>,
    }
    impl Gen {
        fn run(&mut self, k: usize, leq: &mut Vec<bool>) {
            let n = self.n;
            if k == n {
                let labels = (0..n).map(|i| format!("p{i}")).collect();
                let p = FinitePoset::from_closed_leq(labels, leq.clone());
                let key = p.canonical_key();
                if self.keys.insert(key.clone()) {
                    self.out.push((key, p));
                }
                return;
            }
            for mask in 0u32..(1 << k) {
                let closed = (0..k).all(|i| {
                    mask & (1 << i) == 0
                        || (0..k).all(|j| !leq[j * n + i] || mask & (1 << j) != 0)
                });
                if !closed {
                    continue;
                }
                for i in 0..k {
                    leq[i * n + k] = mask & (1 << i) != 0;
                }
                leq[k * n + k] = true;
                self.run(k + 1, leq);
                for i in 0..k {
                    leq[i * n + k] = false;
                }
                leq[k * n + k] = false;
            }
        }
    }

    if n == 0 {
        return vec![FinitePoset::from_closed_leq(Vec::new(), Vec::new())];
    }
    assert!(n <= 7, "poset enumeration is desk-scale only");
    let mut gen = Gen {
        n,
        keys: HashSet::new(),
        out: Vec::new(),
    };
    let mut leq = vec![false; n * n];
    gen.run(0, &mut leq);
    gen.out.sort_by(|a, b| a.0.cmp(&b.0));
    gen.out.into_iter().map(|(_, p)| p).collect()
}

/// One frame per isomorphism class with at most `max_size` elements, in
/// deterministic order (size, then canonical key). Birkhoff route:
/// downset lattices of all small posets.
pub fn enumerate_frames(max_size: usize) -> Result<Vec<FrameRef>> {
    if max_size > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded {
            what: "frame enumeration",
            size: max_size,
            bound: ENUMERATION_BOUND,
        });
    }
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut found: Vec<(usize, Vec<bool>, Frame)> = Vec::new();
    // |D(P)| >= |P| + 1 for nonempty P, so generator posets stay small.
    for k in 0..max_size.max(1) {
        for p in enumerate_posets(k) {
            let frame = downset_frame("tmp", &p);
            if frame.len() > max_size {
                continue;
            }
            let key = frame.canonical_key();
            if seen.insert(key.clone()) {
                found.push((frame.len(), key, frame));
            }
        }
    }
    found.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(i, (size, _, mut frame))| {
            frame.set_name(format!("F{size}_{i}"));
            Arc::new(frame)
        })
        .collect())
}

/// Counting oracle: posets on exactly `n` elements that are distributive
/// lattices. By Birkhoff duality this must agree with the number of
/// frames of size n produced by `enumerate_frames`.
pub fn count_distributive_lattice_posets(n: usize) -> usize {
    enumerate_posets(n)
        .into_iter()
        .filter(|p| build_frame("probe", p.clone()).is_ok())
        .count()
}

/// A stable human-readable name for the isomorphism class of a frame:
/// chains and Boolean algebras get their usual names, everything else is
/// matched against the enumeration order.
pub fn iso_class_name(f: &Frame) -> String {
    let n = f.len();
    if f.elements().all(|x| f.elements().all(|y| f.leq(x, y) || f.leq(y, x))) {
        return format!("chain{n}");
    }
    if n.is_power_of_two() && f.is_boolean() {
        return format!("2^{}", n.trailing_zeros());
    }
    if let Ok(frames) = enumerate_frames(n.min(ENUMERATION_BOUND)) {
        for g in frames {
            if g.len() == n && f.find_isomorphism(&g).is_some() {
                return g.name().to_string();
            }
        }
    }
    format!("size{n}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_match_oeis() {
        // unlabeled posets on n points: 1, 1, 2, 5, 16, 63
        assert_eq!(enumerate_posets(0).len(), 1);
        assert_eq!(enumerate_posets(1).len(), 1);
        assert_eq!(enumerate_posets(2).len(), 2);
        assert_eq!(enumerate_posets(3).len(), 5);
        assert_eq!(enumerate_posets(4).len(), 16);
        assert_eq!(enumerate_posets(5).len(), 63);
    }

    #[test]
    fn frame_counts_up_to_six() {
        let frames = enumerate_frames(6).unwrap();
        let mut by_size = [0usize; 7];
        for f in &frames {
            by_size[f.len()] += 1;
        }
        assert_eq!(&by_size[1..7], &[1, 1, 1, 2, 3, 5]);
    }

    #[test]
    fn frame_count_max_four() {
        let frames = enumerate_frames(4).unwrap();
        assert_eq!(frames.len(), 5); // 1 + 1 + 1 + 2
    }

    #[test]
    fn max_size_one_yields_single_frame() {
        let frames = enumerate_frames(1).unwrap();
        assert_eq!(frames.len(), 1);
        assert_eq!(frames[0].len(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_frames(9),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn birkhoff_route_agrees_with_direct_filter_oracle() {
        let frames = enumerate_frames(6).unwrap();
        for n in 1..=6 {
            let via_birkhoff = frames.iter().filter(|f| f.len() == n).count();
            assert_eq!(via_birkhoff, count_distributive_lattice_posets(n), "size {n}");
        }
    }

    #[test]
    fn enumerated_frames_are_pairwise_non_isomorphic() {
        let frames = enumerate_frames(5).unwrap();
        for (i, f) in frames.iter().enumerate() {
            for g in &frames[..i] {
                assert!(f.find_isomorphism(g).is_none());
            }
            assert!(f.find_isomorphism(f).is_some());
        }
    }
}
