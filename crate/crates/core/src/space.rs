//! Finite T0 spaces, Skula biframes, the spatial functor, and sobriety.
//!
//! Topologies are stored extensionally as families of point bitmasks;
//! the spaces in play have at most a handful of points.

use crate::biframe::{validate_biframe, Biframe};
use crate::enumerate::enumerate_posets;
use crate::error::{Error, Result};
use crate::frame::{build_frame, FrameRef};
use crate::poset::FinitePoset;
use std::collections::HashSet;
use std::sync::Arc;

pub const SPACE_POINT_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    /// Sorted bitmasks over the points; always contains 0 and the full set.
    opens: Vec<u32>,
}

impl FiniteSpace {
    pub fn new(points: Vec<String>, opens: Vec<u32>) -> Result<FiniteSpace> {
        let n = points.len();
        if n > SPACE_POINT_CAP {
            return Err(Error::BoundExceeded {
                what: "finite space",
                size: n,
                bound: SPACE_POINT_CAP,
            });
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::DuplicateLabel(p.clone()));
            }
        }
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut opens = opens;
        opens.sort_unstable();
        opens.dedup();
        if opens.iter().any(|&u| u & !full != 0) {
            return Err(Error::Invalid("open set mentions an unknown point".into()));
        }
        if !opens.contains(&0) || !opens.contains(&full) {
            return Err(Error::Invalid(
                "a topology contains the empty set and the whole space".into(),
            ));
        }
        for &u in &opens {
            for &v in &opens {
                if !opens.contains(&(u & v)) || !opens.contains(&(u | v)) {
                    return Err(Error::Invalid(
                        "opens are not closed under intersection and union".into(),
                    ));
                }
            }
        }
        Ok(FiniteSpace { points, opens })
    }

    pub fn from_labeled(points: Vec<String>, open_sets: &[Vec<String>]) -> Result<FiniteSpace> {
        let mut opens = Vec::with_capacity(open_sets.len() + 2);
        for set in open_sets {
            let mut mask = 0u32;
            for label in set {
                let i = points
                    .iter()
                    .position(|p| p == label)
                    .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
                mask |= 1 << i;
            }
            opens.push(mask);
        }
        FiniteSpace::new(points, opens)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn opens(&self) -> &[u32] {
        &self.opens
    }

    pub fn full_mask(&self) -> u32 {
        if self.points.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.points.len()) - 1
        }
    }

    pub fn open_labels(&self, mask: u32) -> Vec<String> {
        (0..self.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| self.points[i].clone())
            .collect()
    }

    /// T0: distinct points are separated by some open set.
    pub fn is_t0(&self) -> bool {
        self.t0_violation().is_none()
    }

    fn t0_violation(&self) -> Option<(usize, usize)> {
        for x in 0..self.len() {
            for y in (x + 1)..self.len() {
                if self
                    .opens
                    .iter()
                    .all(|&u| (u >> x) & 1 == (u >> y) & 1)
                {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn require_t0(&self) -> Result<()> {
        match self.t0_violation() {
            None => Ok(()),
            Some((x, y)) => Err(Error::NotT0(self.points[x].clone(), self.points[y].clone())),
        }
    }

    pub fn closed_sets(&self) -> Vec<u32> {
        let full = self.full_mask();
        let mut closed: Vec<u32> = self.opens.iter().map(|&u| full & !u).collect();
        closed.sort_unstable();
        closed
    }

    /// Topological closure of a point set.
    pub fn closure(&self, set: u32) -> u32 {
        self.closed_sets()
            .into_iter()
            .filter(|&c| c & set == set)
            .fold(self.full_mask(), |a, b| a & b)
    }

    /// Search for a homeomorphism onto `other` as a point permutation.
    pub fn find_homeomorphism(&self, other: &FiniteSpace) -> Option<Vec<usize>> {
        use itertools::Itertools;
        if self.len() != other.len() || self.opens.len() != other.opens.len() {
            return None;
        }
        let n = self.len();
        for perm in (0..n).permutations(n) {
            let mut mapped: Vec<u32> = Vec::with_capacity(self.opens.len());
            for &u in &self.opens {
                let mut v = 0u32;
                for i in 0..n {
                    if u & (1 << i) != 0 {
                        v |= 1 << perm[i];
                    }
                }
                mapped.push(v);
            }
            mapped.sort_unstable();
            if mapped == other.opens {
                return Some(perm);
            }
        }
        None
    }
}

/// The frame of open sets ordered by inclusion.
pub fn open_set_frame(x: &FiniteSpace) -> FrameRef {
    let mut opens = x.opens().to_vec();
    opens.sort_by_key(|m| (m.count_ones(), *m));
    let labels: Vec<String> = opens
        .iter()
        .map(|&m| format!("{{{}}}", x.open_labels(m).join(" ")))
        .collect();
    let mut pairs = Vec::new();
    for (i, &a) in opens.iter().enumerate() {
        for (j, &b) in opens.iter().enumerate() {
            if a & b == a {
                pairs.push((i, j));
            }
        }
    }
    let poset = FinitePoset::new(labels, &pairs).expect("inclusion order");
    Arc::new(build_frame(format!("O({})", x.points().join("")), poset).expect("topologies are frames"))
}

/// Close a family of subsets under finite intersections and unions,
/// including the empty set and the whole space.
fn generated_topology(full: u32, subbasis: &[u32]) -> Vec<u32> {
    let mut sets: HashSet<u32> = subbasis.iter().copied().collect();
    sets.insert(0);
    sets.insert(full);
    loop {
        let current: Vec<u32> = sets.iter().copied().collect();
        let before = sets.len();
        for &a in &current {
            for &b in &current {
                sets.insert(a & b);
                sets.insert(a | b);
            }
        }
        if sets.len() == before {
            let mut out: Vec<u32> = sets.into_iter().collect();
            out.sort_unstable();
            return out;
        }
    }
}

/// The Skula biframe of a T0 space: total part the join of the topology
/// and its co-topology (generated by the closed sets), first part the
/// topology, second part the co-topology.
pub fn skula(x: &FiniteSpace) -> Result<Biframe> {
    x.require_t0()?;
    let full = x.full_mask();
    let upsilon = generated_topology(full, &x.closed_sets());
    let mut sigma_basis: Vec<u32> = x.opens().to_vec();
    sigma_basis.extend(upsilon.iter().copied());
    let sigma = generated_topology(full, &sigma_basis);

    let mut sorted = sigma.clone();
    sorted.sort_by_key(|m| (m.count_ones(), *m));
    let labels: Vec<String> = sorted
        .iter()
        .map(|&m| format!("{{{}}}", x.open_labels(m).join(" ")))
        .collect();
    let mut pairs = Vec::new();
    for (i, &a) in sorted.iter().enumerate() {
        for (j, &b) in sorted.iter().enumerate() {
            if a & b == a {
                pairs.push((i, j));
            }
        }
    }
    let poset = FinitePoset::new(labels, &pairs)?;
    let total = Arc::new(build_frame(format!("Sk({})", x.points().join("")), poset)?);
    let index_of: std::collections::HashMap<u32, usize> =
        sorted.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let part1: Vec<usize> = x.opens().iter().map(|&m| index_of[&m]).collect();
    let part2: Vec<usize> = upsilon.iter().map(|&m| index_of[&m]).collect();
    let b = validate_biframe(total, part1, part2)?;
    debug_assert!(b.is_str0d());
    Ok(b)
}

/// Prime elements of a frame: p != 1 with x /\ y <= p implying x <= p or
/// y <= p. In bijection with frame homomorphisms into 2.
pub fn points_of_frame(f: &FrameRef) -> Vec<usize> {
    f.elements()
        .filter(|&p| {
            p != f.top()
                && f.elements().all(|x| {
                    f.elements()
                        .all(|y| !f.leq(f.meet(x, y), p) || f.leq(x, p) || f.leq(y, p))
                })
        })
        .collect()
}

/// The space attached to a strictly zero-dimensional biframe: points are
/// the primes of the total part, opens are the images of first-part
/// elements under x -> { p : x not<= p }.
pub fn space_from_biframe(m: &Biframe) -> Result<FiniteSpace> {
    m.require_str0d()?;
    let total = m.total();
    let primes = points_of_frame(total);
    if primes.len() > SPACE_POINT_CAP {
        return Err(Error::BoundExceeded {
            what: "spatial functor",
            size: primes.len(),
            bound: SPACE_POINT_CAP,
        });
    }
    let labels: Vec<String> = primes.iter().map(|&p| total.label(p).to_string()).collect();
    let opens: Vec<u32> = m
        .part1()
        .iter()
        .map(|&x| {
            let mut mask = 0u32;
            for (i, &p) in primes.iter().enumerate() {
                if !total.leq(x, p) {
                    mask |= 1 << i;
                }
            }
            mask
        })
        .collect();
    let space = FiniteSpace::new(labels, opens)?;
    space.require_t0()?;
    Ok(space)
}

/// Sobriety of a finite T0 space: every irreducible closed set has a
/// unique generic point. Cross-checked against the clear-element
/// criterion: every prime element of the first part of the Skula biframe
/// is clarifiable.
pub fn is_sober(x: &FiniteSpace) -> Result<bool> {
    x.require_t0()?;
    let closed = x.closed_sets();
    let mut direct = true;
    'outer: for &c in &closed {
        if c == 0 {
            continue;
        }
        let irreducible = !closed.iter().any(|&a| {
            a & c == a && a != c && closed.iter().any(|&b| b & c == b && b != c && a | b == c)
        });
        if !irreducible {
            continue;
        }
        let mut generic = None;
        for p in 0..x.len() {
            if x.closure(1 << p) == c {
                if generic.is_some() {
                    direct = false;
                    break 'outer;
                }
                generic = Some(p);
            }
        }
        if generic.is_none() {
            direct = false;
            break;
        }
    }

    // via the Skula biframe: prime elements of the first part clarifiable
    let sk = skula(x)?;
    let analysis = crate::clear::ClearAnalysis::new(&sk)?;
    let (p1, incl) = sk.part1_frame();
    let via_clear = points_of_frame(&p1)
        .into_iter()
        .all(|p| analysis.clear_element_for(incl.apply(p)).is_some());

    if direct != via_clear {
        return Err(Error::RemarkViolation(format!(
            "irreducible-closed-set sobriety = {direct}, clarifiable-primes = {via_clear}"
        )));
    }
    Ok(direct)
}

/// All T0 spaces with exactly `n` points up to homeomorphism: finite T0
/// topologies are the downset topologies of posets (specialisation
/// order), so the poset enumerator drives this too.
pub fn enumerate_spaces(n: usize) -> Result<Vec<FiniteSpace>> {
    if n > SPACE_POINT_CAP {
        return Err(Error::BoundExceeded {
            what: "space enumeration",
            size: n,
            bound: SPACE_POINT_CAP,
        });
    }
    let mut out = Vec::new();
    for p in enumerate_posets(n) {
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let mut opens = Vec::new();
        for mask in 0u32..=full {
            // up-sets of the specialisation order are the opens
            let up_closed = (0..n).all(|i| {
                mask & (1 << i) == 0 || (0..n).all(|j| !p.leq(i, j) || mask & (1 << j) != 0)
            });
            if up_closed {
                opens.push(mask);
            }
        }
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        out.push(FiniteSpace::new(labels, opens)?);
    }
    Ok(out)
}

/// The Sierpinski space: two points, one of them open.
pub fn sierpinski() -> FiniteSpace {
    FiniteSpace::new(vec!["x".into(), "y".into()], vec![0b00, 0b01, 0b11]).unwrap()
}
