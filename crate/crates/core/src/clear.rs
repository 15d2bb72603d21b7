//! Closure on strictly zero-dimensional biframes, clear and clarifiable
//! elements, the congruentiality theorem, and the congruence-frame
//! recognizer.
//!
//! Clearness of an element is decided four independent ways (maximality
//! among elements with the same closure, Booleanness of the closed
//! quotient's first part, clearness of the distinguished congruence, and
//! the clear-congruence formula); the four answers are asserted to agree
//! on every input. The recognizer searches over fixed-point subframes
//! rather than endo-maps — every admissible map is determined by its
//! fixed points — with the exhaustive map search kept as an oracle.

use crate::biframe::{coreflection_chi, validate_biframe, Biframe, Coreflection};
use crate::congruence::clear_congruence;
use crate::enumerate::iso_class_name;
use crate::error::{Error, Result};
use crate::frame::{Frame, FrameRef};
use crate::hom::subframe_generated;

/// Clearness analysis of one element of a strictly zero-dimensional
/// biframe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClearnessReport {
    pub element: usize,
    /// The largest first-part element below it.
    pub closure: usize,
    pub is_clear: bool,
    pub is_clarifiable: bool,
    /// The clear element sharing this element's closure, when one exists.
    pub witness_clear: Option<usize>,
    /// The four equivalent conditions, evaluated independently.
    pub condition_flags: [bool; 4],
}

/// Shared context for clear-element computations over one biframe: the
/// coreflection is computed once and reused.
pub struct ClearAnalysis {
    m: Biframe,
    core: Coreflection,
}

impl ClearAnalysis {
    pub fn new(m: &Biframe) -> Result<ClearAnalysis> {
        m.require_str0d()?;
        let core = coreflection_chi(m)?;
        Ok(ClearAnalysis {
            m: m.clone(),
            core,
        })
    }

    pub fn biframe(&self) -> &Biframe {
        &self.m
    }

    pub fn coreflection(&self) -> &Coreflection {
        &self.core
    }

    /// cl(x): the largest closed (first-part) element below x. The route
    /// through the coreflection, cl(x) = chi(cl(chi_*(x))), must agree.
    pub fn closure(&self, x: usize) -> usize {
        let total = self.m.total();
        let direct = total.join_of(self.m.part1().iter().copied().filter(|&c| total.leq(c, x)));
        debug_assert!(self.m.in_part1(direct));
        debug_assert_eq!(direct, {
            let star = self.core.chi_star(x);
            let closed = crate::congruence::closure_cl(&star);
            self.core.chi.apply(self.core.cf.index_of(&closed))
        });
        direct
    }

    /// The clear element with closure c, when the set of elements with
    /// that closure has a maximum; c must lie in the first part.
    pub fn clear_element_for(&self, c: usize) -> Option<usize> {
        assert!(self.m.in_part1(c), "closure argument must be a closed element");
        let total = self.m.total();
        let share: Vec<usize> = total.elements().filter(|&x| self.closure(x) == c).collect();
        let w = total.join_of(share.iter().copied());
        (self.closure(w) == c).then_some(w)
    }

    pub fn clearness_report(&self, x: usize) -> Result<ClearnessReport> {
        let total = self.m.total();
        let c = self.closure(x);

        // (1) x is the largest element with its closure
        let cond1 = total
            .elements()
            .all(|y| self.closure(y) != c || total.leq(y, x));

        // (2) the first part of M / nabla_x is Boolean
        let cond2 = {
            let quot = crate::category::closed_quotient(&self.m, x)?;
            let (p1, _) = quot.part1_frame();
            p1.is_boolean()
        };

        // (3) chi_*(x) is a clear congruence on the first part
        let star = self.core.chi_star(x);
        let base = self.core.cf.base();
        let cond3 = star == clear_congruence(base, star.apply(base.bottom()));

        // (4) chi_*(x) is the clear congruence at cl(x)
        let c_in_part1 = self
            .m
            .part1()
            .binary_search(&c)
            .expect("closure lands in the first part");
        let cond4 = star == clear_congruence(base, c_in_part1);

        let flags = [cond1, cond2, cond3, cond4];
        if flags.iter().any(|&f| f != cond1) {
            return Err(Error::ConditionDisagreement {
                element: total.label(x).into(),
                flags,
            });
        }

        let witness = self.clear_element_for(c);
        let report = ClearnessReport {
            element: x,
            closure: c,
            is_clear: cond1,
            is_clarifiable: witness.is_some(),
            witness_clear: witness,
            condition_flags: flags,
        };
        debug_assert!(!report.is_clear || report.is_clarifiable);
        debug_assert!(report.is_clarifiable == report.witness_clear.is_some());
        Ok(report)
    }

    /// The congruentiality theorem, both sides: chi an isomorphism, and
    /// every closed element clarifiable. The answers must coincide.
    pub fn is_congruential(&self) -> Result<bool> {
        let via_chi = self.core.is_iso();
        let via_clear = self
            .m
            .part1()
            .iter()
            .all(|&c| self.clear_element_for(c).is_some());
        if via_chi != via_clear {
            return Err(Error::TheoremViolation(format!(
                "chi iso = {via_chi} but all closed elements clarifiable = {via_clear}"
            )));
        }
        Ok(via_chi)
    }
}

/// One-shot wrappers over `ClearAnalysis`.
pub fn biframe_cl(m: &Biframe, x: usize) -> Result<usize> {
    Ok(ClearAnalysis::new(m)?.closure(x))
}

pub fn clearness_report(m: &Biframe, x: usize) -> Result<ClearnessReport> {
    ClearAnalysis::new(m)?.clearness_report(x)
}

pub fn clear_element_for(m: &Biframe, c: usize) -> Result<Option<usize>> {
    Ok(ClearAnalysis::new(m)?.clear_element_for(c))
}

pub fn is_congruential(m: &Biframe) -> Result<bool> {
    ClearAnalysis::new(m)?.is_congruential()
}

pub const RECOGNIZER_BOUND: usize = 16;

/// A successful recognition of M as a congruence frame.
#[derive(Debug, Clone)]
pub struct RecognizerWitness {
    /// The closure-style endo-map on M.
    pub c_map: Vec<usize>,
    /// Its fixed points: the subframe playing the role of L.
    pub fixed_points: Vec<usize>,
    /// Bijection M -> C L carrying the inclusion of L to nabla_L
    /// (the inverse of the coreflection's total part).
    pub iso: Vec<usize>,
    /// The frame L itself.
    pub first_part: FrameRef,
    pub first_part_iso_class: String,
}

/// A witness that M is a quotient of a congruence frame: the fibre-maximum
/// condition is not required.
#[derive(Debug, Clone)]
pub struct QuotientWitness {
    pub c_map: Vec<usize>,
    pub fixed_points: Vec<usize>,
    pub first_part: FrameRef,
}

/// All subframes of `frame` whose elements are complemented, walked as a
/// closure system seeded from {0, 1}.
fn complemented_subframes(frame: &FrameRef) -> Vec<Vec<usize>> {
    let center: Vec<usize> = frame
        .elements()
        .filter(|&x| frame.complement(x).is_some())
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    let start = subframe_generated(frame, &[]);
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        for &x in &center {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = s.clone();
            seed.push(x);
            let t = subframe_generated(frame, &seed);
            // meets and joins of complemented elements are complemented,
            // so the closure stays inside the center
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    out
}

fn witness_biframe(frame: &FrameRef, fixed: &[usize]) -> Option<Biframe> {
    let complements: Vec<usize> = fixed.iter().map(|&x| frame.complement(x).unwrap()).collect();
    let part2 = subframe_generated(frame, &complements);
    let union: Vec<usize> = fixed.iter().chain(part2.iter()).copied().collect();
    if subframe_generated(frame, &union).len() != frame.len() {
        return None;
    }
    let b = validate_biframe(frame.clone(), fixed.to_vec(), part2).ok()?;
    b.is_str0d().then_some(b)
}

/// Recognize whether M is a congruence frame: search for a subframe L of
/// complemented elements that together with its complements generates M
/// and makes (M, L, <L^c>) a congruential strictly zero-dimensional
/// biframe. Empty result means M is not a congruence frame.
pub fn recognize_congruence_frame(frame: &FrameRef) -> Result<Vec<RecognizerWitness>> {
    recognize_congruence_frame_bounded(frame, RECOGNIZER_BOUND)
}

pub fn recognize_congruence_frame_bounded(
    frame: &FrameRef,
    bound: usize,
) -> Result<Vec<RecognizerWitness>> {
    if frame.len() > bound {
        return Err(Error::BoundExceeded {
            what: "congruence-frame recognizer",
            size: frame.len(),
            bound,
        });
    }
    let mut out = Vec::new();
    for fixed in complemented_subframes(frame) {
        let Some(b) = witness_biframe(frame, &fixed) else {
            continue;
        };
        let analysis = ClearAnalysis::new(&b)?;
        if !analysis.is_congruential()? {
            continue;
        }
        let c_map: Vec<usize> = frame.elements().map(|x| analysis.closure(x)).collect();
        validate_witness_conditions(frame, &c_map, &fixed, true)?;
        let core = analysis.coreflection();
        let mut iso = vec![usize::MAX; frame.len()];
        for u in core.source.total().elements() {
            iso[core.chi.apply(u)] = u;
        }
        // the iso must carry the inclusion of L to nabla_L
        for (i, &a) in fixed.iter().enumerate() {
            if iso[a] != core.cf.nabla_index(i) {
                return Err(Error::TheoremViolation(
                    "recognizer iso does not carry L into the closed congruences".into(),
                ));
            }
        }
        let first_part = core.cf.base().clone();
        let first_part_iso_class = iso_class_name(&first_part);
        out.push(RecognizerWitness {
            c_map,
            fixed_points: fixed,
            iso,
            first_part,
            first_part_iso_class,
        });
    }
    Ok(out)
}

/// The relaxed recognizer: fibre maxima (equivalently congruentiality)
/// not required, which characterises quotients of congruence frames.
pub fn recognize_quotient_of_congruence_frame(frame: &FrameRef) -> Result<Vec<QuotientWitness>> {
    recognize_quotient_bounded(frame, RECOGNIZER_BOUND)
}

pub fn recognize_quotient_bounded(frame: &FrameRef, bound: usize) -> Result<Vec<QuotientWitness>> {
    if frame.len() > bound {
        return Err(Error::BoundExceeded {
            what: "congruence-frame quotient recognizer",
            size: frame.len(),
            bound,
        });
    }
    let mut out = Vec::new();
    for fixed in complemented_subframes(frame) {
        let Some(b) = witness_biframe(frame, &fixed) else {
            continue;
        };
        let analysis = ClearAnalysis::new(&b)?;
        let c_map: Vec<usize> = frame.elements().map(|x| analysis.closure(x)).collect();
        validate_witness_conditions(frame, &c_map, &fixed, false)?;
        out.push(QuotientWitness {
            c_map,
            fixed_points: fixed,
            first_part: analysis.coreflection().cf.base().clone(),
        });
    }
    Ok(out)
}

/// The three witness conditions on the closure map: idempotent,
/// deflationary meet-semilattice homomorphism with complemented fixed
/// points generating M alongside their complements; with
/// `require_fibre_max`, every fibre has a maximum.
fn validate_witness_conditions(
    frame: &FrameRef,
    c_map: &[usize],
    fixed: &[usize],
    require_fibre_max: bool,
) -> Result<()> {
    let fail = |msg: &str| Err(Error::TheoremViolation(format!("recognizer witness: {msg}")));
    for x in frame.elements() {
        if !frame.leq(c_map[x], x) || c_map[c_map[x]] != c_map[x] {
            return fail("closure map is not deflationary and idempotent");
        }
        for y in frame.elements() {
            if c_map[frame.meet(x, y)] != frame.meet(c_map[x], c_map[y]) {
                return fail("closure map does not preserve meets");
            }
        }
    }
    if c_map[frame.top()] != frame.top() {
        return fail("closure map does not fix the top");
    }
    let fixed_check: Vec<usize> = frame.elements().filter(|&x| c_map[x] == x).collect();
    if fixed_check != fixed {
        return fail("fixed points differ from the searched subframe");
    }
    if fixed.iter().any(|&x| frame.complement(x).is_none()) {
        return fail("a fixed point is not complemented");
    }
    let mut gens: Vec<usize> = fixed.to_vec();
    gens.extend(fixed.iter().map(|&x| frame.complement(x).unwrap()));
    if subframe_generated(frame, &gens).len() != frame.len() {
        return fail("fixed points and complements do not generate");
    }
    if require_fibre_max {
        for &v in fixed {
            let fibre: Vec<usize> = frame.elements().filter(|&x| c_map[x] == v).collect();
            let m = frame.join_of(fibre.iter().copied());
            if c_map[m] != v {
                return fail("a fibre of the closure map has no maximum");
            }
        }
    }
    Ok(())
}

/// Exhaustive endo-map oracle for the recognizer (`|M|` small): every
/// idempotent, deflationary, unital meet-preserving map with complemented
/// fixed points that generate together with their complements.
pub fn recognizer_map_oracle(frame: &FrameRef, require_fibre_max: bool) -> Vec<Vec<usize>> {
    clear_oracle_impl::admissible_cmaps(frame, require_fibre_max)
}

/// Group a frame's recognizer witnesses into the shape reported by the
/// CLI: present or not, plus iso classes of the first parts.
pub fn first_part_iso_classes(witnesses: &[RecognizerWitness]) -> Vec<String> {
    let mut names: Vec<String> = witnesses.iter().map(|w| w.first_part_iso_class.clone()).collect();
    names.sort();
    names.dedup();
    names
}

pub(crate) mod clear_oracle_impl {
    use super::*;

    /// Enumerate all deflationary maps and filter by the witness laws.
    pub fn admissible_cmaps(frame: &FrameRef, require_fibre_max: bool) -> Vec<Vec<usize>> {
        let n = frame.len();
        let downs: Vec<Vec<usize>> = frame
            .elements()
            .map(|x| frame.elements().filter(|&y| frame.leq(y, x)).collect())
            .collect();
        let mut out = Vec::new();
        let mut table = vec![0usize; n];
        fn go(
            pos: usize,
            frame: &Frame,
            downs: &[Vec<usize>],
            table: &mut Vec<usize>,
            require_fibre_max: bool,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = frame.len();
            if pos == n {
                if check_cmap(frame, table, require_fibre_max) {
                    out.push(table.clone());
                }
                return;
            }
            for &v in &downs[pos] {
                table[pos] = v;
                go(pos + 1, frame, downs, table, require_fibre_max, out);
            }
        }
        go(0, frame, &downs, &mut table, require_fibre_max, &mut out);
        out
    }

    fn check_cmap(frame: &Frame, c: &[usize], require_fibre_max: bool) -> bool {
        let n = frame.len();
        if c[frame.top()] != frame.top() {
            return false;
        }
        for x in 0..n {
            if c[c[x]] != c[x] {
                return false;
            }
            for y in 0..n {
                if c[frame.meet(x, y)] != frame.meet(c[x], c[y]) {
                    return false;
                }
            }
        }
        let fixed: Vec<usize> = (0..n).filter(|&x| c[x] == x).collect();
        if fixed.iter().any(|&x| frame.complement(x).is_none()) {
            return false;
        }
        let mut gens = fixed.clone();
        gens.extend(fixed.iter().map(|&x| frame.complement(x).unwrap()));
        if subframe_generated(frame, &gens).len() != n {
            return false;
        }
        if require_fibre_max {
            for &v in &fixed {
                let fibre: Vec<usize> = (0..n).filter(|&x| c[x] == v).collect();
                let m = frame.join_of(fibre.iter().copied());
                if c[m] != v {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biframe::congruence_biframe;
    use crate::congruence::{congruence_lattice, delta, nabla};
    use crate::frame::fixtures::*;

    fn c_chain3() -> (Biframe, crate::congruence::CongruenceFrame) {
        let cf = congruence_lattice(&chain(3)).unwrap();
        (congruence_biframe(&cf), cf)
    }

    #[test]
    fn closure_on_c_chain3() {
        let (b, cf) = c_chain3();
        let analysis = ClearAnalysis::new(&b).unwrap();
        // closed elements are their own closure
        for &c in b.part1() {
            assert_eq!(analysis.closure(c), c);
        }
        // cl(Delta_a) = nabla_0 (the dense congruence closes to the bottom)
        let da = cf.delta_index(1);
        assert_eq!(analysis.closure(da), cf.nabla_index(0));
        assert_eq!(analysis.closure(b.total().top()), b.total().top());
    }

    #[test]
    fn clearness_on_c_chain3() {
        let (b, cf) = c_chain3();
        let analysis = ClearAnalysis::new(&b).unwrap();
        let da = cf.delta_index(1);
        let n0 = cf.nabla_index(0);
        let na = cf.nabla_index(1);

        let top_report = analysis.clearness_report(b.total().top()).unwrap();
        assert!(top_report.is_clear);

        let da_report = analysis.clearness_report(da).unwrap();
        assert!(da_report.is_clear);
        assert_eq!(da_report.closure, n0);

        let n0_report = analysis.clearness_report(n0).unwrap();
        assert!(!n0_report.is_clear); // Delta_a shares its closure and is larger
        assert!(n0_report.is_clarifiable);
        assert_eq!(n0_report.witness_clear, Some(da));

        // clear element for nabla_0 is Delta_a; for nabla_a it is nabla_a
        assert_eq!(analysis.clear_element_for(n0), Some(da));
        assert_eq!(analysis.clear_element_for(na), Some(na));
    }

    #[test]
    fn four_conditions_agree_on_every_corpus_element() {
        for f in [chain(2), chain(3), chain(4), square()] {
            let cf = congruence_lattice(&f).unwrap();
            let b = congruence_biframe(&cf);
            let analysis = ClearAnalysis::new(&b).unwrap();
            for x in b.total().elements() {
                let r = analysis.clearness_report(x).unwrap();
                assert!(r.condition_flags.iter().all(|&c| c == r.is_clear));
            }
        }
    }

    #[test]
    fn clear_elements_are_upward_closed() {
        for f in [chain(3), square()] {
            let cf = congruence_lattice(&f).unwrap();
            let b = congruence_biframe(&cf);
            let analysis = ClearAnalysis::new(&b).unwrap();
            for x in b.total().elements() {
                if analysis.clearness_report(x).unwrap().is_clear {
                    for y in b.total().elements() {
                        if b.total().leq(x, y) {
                            assert!(analysis.clearness_report(y).unwrap().is_clear);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn congruence_biframes_are_congruential() {
        for f in [trivial(), chain(2), chain(3), square()] {
            let cf = congruence_lattice(&f).unwrap();
            let b = congruence_biframe(&cf);
            assert!(is_congruential(&b).unwrap());
        }
    }

    #[test]
    fn chain3_is_not_a_congruence_frame() {
        let w = recognize_congruence_frame(&chain(3)).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn two_is_a_congruence_frame() {
        let w = recognize_congruence_frame(&chain(2)).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].fixed_points, vec![0, 1]);
        assert_eq!(w[0].first_part_iso_class, "chain2");
    }

    #[test]
    fn square_has_three_witnesses() {
        let sq = square();
        let w = recognize_congruence_frame(&sq).unwrap();
        assert_eq!(w.len(), 3);
        let classes = first_part_iso_classes(&w);
        assert_eq!(classes, vec!["2^2".to_string(), "chain3".to_string()]);
        // fixed-point sets: {0,a,1}, {0,b,1}, all
        let sets: Vec<Vec<usize>> = w.iter().map(|x| x.fixed_points.clone()).collect();
        let a = sq.index_of("a").unwrap();
        let bb = sq.index_of("b").unwrap();
        assert!(sets.contains(&vec![0, a, 3]));
        assert!(sets.contains(&vec![0, bb, 3]));
        assert!(sets.contains(&vec![0, a, bb, 3]));
    }

    #[test]
    fn cube_is_a_congruence_frame() {
        let w = recognize_congruence_frame(&cube()).unwrap();
        assert!(!w.is_empty());
    }

    #[test]
    fn quotient_recognizer_is_a_superset() {
        for f in [chain(2), chain(3), square(), chain(4)] {
            let full = recognize_congruence_frame(&f).unwrap();
            let relaxed = recognize_quotient_of_congruence_frame(&f).unwrap();
            let full_sets: Vec<Vec<usize>> = full.iter().map(|w| w.fixed_points.clone()).collect();
            let relaxed_sets: Vec<Vec<usize>> =
                relaxed.iter().map(|w| w.fixed_points.clone()).collect();
            for s in &full_sets {
                assert!(relaxed_sets.contains(s));
            }
        }
    }

    #[test]
    fn subframe_search_agrees_with_map_oracle() {
        for f in [trivial(), chain(2), chain(3), square(), chain(4)] {
            for require_max in [true, false] {
                let maps = recognizer_map_oracle(&f, require_max);
                let witnesses: Vec<Vec<usize>> = if require_max {
                    recognize_congruence_frame(&f)
                        .unwrap()
                        .into_iter()
                        .map(|w| w.c_map)
                        .collect()
                } else {
                    recognize_quotient_of_congruence_frame(&f)
                        .unwrap()
                        .into_iter()
                        .map(|w| w.c_map)
                        .collect()
                };
                let mut a = maps;
                let mut b = witnesses;
                a.sort();
                b.sort();
                assert_eq!(a, b, "oracle mismatch on {} (max={require_max})", f.name());
            }
        }
    }

    #[test]
    fn recognizer_iso_carries_l_to_nabla() {
        let sq = square();
        for w in recognize_congruence_frame(&sq).unwrap() {
            let cf = congruence_lattice(&w.first_part).unwrap();
            for (i, &a) in w.fixed_points.iter().enumerate() {
                assert_eq!(w.iso[a], cf.nabla_index(i));
            }
        }
    }

    #[test]
    fn witness_cmaps_fix_exactly_the_first_part() {
        let (b, _) = c_chain3();
        let analysis = ClearAnalysis::new(&b).unwrap();
        let _ = delta(&chain(3), 1);
        let _ = nabla(&chain(3), 1);
        for &c in b.part1() {
            assert_eq!(analysis.closure(c), c);
        }
    }
}
