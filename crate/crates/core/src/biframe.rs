//! Biframes, strict zero-dimensionality, congruence biframes, and the
//! congruential coreflection.
//!
//! Parts are stored as element subsets of the total frame; the subframe
//! inclusions are the setting everything here works in. The chirality is
//! fixed: the first part carries the complemented generators.

use crate::congruence::{
    congruence_lattice, nabla_extension, Congruence, CongruenceFrame,
};
use crate::error::{Error, Result};
use crate::frame::FrameRef;
use crate::hom::{subframe_as_frame, subframe_generated, validate_hom, FrameHom};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biframe {
    total: FrameRef,
    part1: Vec<usize>,
    part2: Vec<usize>,
}

/// Check that the two parts are subframes that together generate the
/// total frame.
pub fn validate_biframe(total: FrameRef, part1: Vec<usize>, part2: Vec<usize>) -> Result<Biframe> {
    let mut part1 = part1;
    let mut part2 = part2;
    part1.sort_unstable();
    part1.dedup();
    part2.sort_unstable();
    part2.dedup();
    for (which, part) in [(1u8, &part1), (2u8, &part2)] {
        if part.iter().any(|&x| x >= total.len()) {
            return Err(Error::PartNotSubframe {
                part: which,
                reason: "element out of range".into(),
            });
        }
        if subframe_generated(&total, part) != *part {
            return Err(Error::PartNotSubframe {
                part: which,
                reason: "not closed under meet, join, bottom, top".into(),
            });
        }
    }
    let union: Vec<usize> = part1.iter().chain(part2.iter()).copied().collect();
    if subframe_generated(&total, &union).len() != total.len() {
        return Err(Error::PartsDoNotGenerate);
    }
    Ok(Biframe { total, part1, part2 })
}

impl Biframe {
    pub fn total(&self) -> &FrameRef {
        &self.total
    }

    pub fn part1(&self) -> &[usize] {
        &self.part1
    }

    pub fn part2(&self) -> &[usize] {
        &self.part2
    }

    pub fn in_part1(&self, x: usize) -> bool {
        self.part1.binary_search(&x).is_ok()
    }

    pub fn in_part2(&self, x: usize) -> bool {
        self.part2.binary_search(&x).is_ok()
    }

    /// Strict zero-dimensionality: every first-part element has a
    /// complement lying in the second part, and those complements
    /// generate the second part.
    pub fn is_str0d(&self) -> bool {
        self.str0d_reason().is_none()
    }

    fn str0d_reason(&self) -> Option<String> {
        let mut complements = Vec::with_capacity(self.part1.len());
        for &a in &self.part1 {
            match self.total.complement(a) {
                Some(c) if self.in_part2(c) => complements.push(c),
                Some(_) => {
                    return Some(format!(
                        "complement of {} is not in the second part",
                        self.total.label(a)
                    ))
                }
                None => {
                    return Some(format!(
                        "first-part element {} has no complement",
                        self.total.label(a)
                    ))
                }
            }
        }
        if subframe_generated(&self.total, &complements) != self.part2 {
            return Some("complements of the first part do not generate the second".into());
        }
        None
    }

    pub fn require_str0d(&self) -> Result<()> {
        match self.str0d_reason() {
            None => Ok(()),
            Some(reason) => Err(Error::NotStr0d(reason)),
        }
    }

    /// The first part as a standalone frame with its inclusion.
    pub fn part1_frame(&self) -> (FrameRef, FrameHom) {
        subframe_as_frame(&self.total, &self.part1, format!("P({})", self.total.name()))
    }

    pub fn part2_frame(&self) -> (FrameRef, FrameHom) {
        subframe_as_frame(&self.total, &self.part2, format!("P2({})", self.total.name()))
    }

    pub fn is_trivial(&self) -> bool {
        self.total.is_trivial()
    }
}

/// A biframe homomorphism: a frame homomorphism of total parts that
/// preserves both parts. `h1`/`h2` are the restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiframeHom {
    source: Biframe,
    target: Biframe,
    hom: FrameHom,
}

pub fn validate_bihom(source: Biframe, target: Biframe, map: Vec<usize>) -> Result<BiframeHom> {
    let hom = validate_hom(source.total().clone(), target.total().clone(), map)?;
    for &a in source.part1() {
        if !target.in_part1(hom.apply(a)) {
            return Err(Error::NotHomomorphism(format!(
                "first part not preserved at {}",
                source.total().label(a)
            )));
        }
    }
    for &a in source.part2() {
        if !target.in_part2(hom.apply(a)) {
            return Err(Error::NotHomomorphism(format!(
                "second part not preserved at {}",
                source.total().label(a)
            )));
        }
    }
    Ok(BiframeHom { source, target, hom })
}

impl BiframeHom {
    pub fn identity(b: &Biframe) -> BiframeHom {
        BiframeHom {
            source: b.clone(),
            target: b.clone(),
            hom: FrameHom::identity(b.total()),
        }
    }

    pub fn source(&self) -> &Biframe {
        &self.source
    }

    pub fn target(&self) -> &Biframe {
        &self.target
    }

    /// The total part h0.
    pub fn hom(&self) -> &FrameHom {
        &self.hom
    }

    pub fn apply(&self, x: usize) -> usize {
        self.hom.apply(x)
    }

    pub fn then(&self, g: &BiframeHom) -> BiframeHom {
        assert_eq!(self.target, g.source, "composition endpoint mismatch");
        BiframeHom {
            source: self.source.clone(),
            target: g.target.clone(),
            hom: self.hom.then(&g.hom),
        }
    }

    /// The restriction h1 as a map between part1 index lists.
    pub fn part1_restriction(&self) -> Vec<usize> {
        self.source
            .part1()
            .iter()
            .map(|&a| {
                self.target
                    .part1()
                    .binary_search(&self.hom.apply(a))
                    .expect("validated bihom preserves part 1")
            })
            .collect()
    }

    pub fn is_h1_injective(&self) -> bool {
        let r = self.part1_restriction();
        let mut seen = vec![false; self.target.part1().len()];
        r.into_iter().all(|y| {
            let fresh = !seen[y];
            seen[y] = true;
            fresh
        })
    }

    pub fn is_h1_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.part1().len()];
        for y in self.part1_restriction() {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_h2_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.part2().len()];
        for &a in self.source.part2() {
            if let Ok(i) = self.target.part2().binary_search(&self.hom.apply(a)) {
                seen[i] = true;
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// An isomorphism of biframes: bijective total part mapping each part
    /// onto the corresponding part.
    pub fn is_iso(&self) -> bool {
        self.hom.is_bijective()
            && self.source.part1().len() == self.target.part1().len()
            && self.source.part2().len() == self.target.part2().len()
            && self.is_h1_surjective()
            && self.is_h2_surjective()
    }
}

/// Density of a biframe homomorphism is density of its total part. For a
/// strictly zero-dimensional source this must agree with injectivity of
/// the first part, which is asserted.
pub fn is_dense_bihom(h: &BiframeHom) -> bool {
    let dense = h.hom().is_dense();
    if h.source().is_str0d() {
        assert_eq!(
            dense,
            h.is_h1_injective(),
            "density and first-part injectivity disagree on a str0d source"
        );
    }
    dense
}

/// Surjectivity of a biframe homomorphism: both parts surjective. For a
/// strictly zero-dimensional source, first-part surjectivity suffices;
/// the two routes are asserted to agree.
pub fn is_biframe_surjection(h: &BiframeHom) -> bool {
    let surj = h.is_h1_surjective() && h.is_h2_surjective();
    if h.source().is_str0d() {
        assert_eq!(
            surj,
            h.is_h1_surjective(),
            "first-part surjectivity must suffice for a str0d source"
        );
    }
    surj
}

/// The congruence biframe (C L, nabla L, Delta L).
pub fn congruence_biframe(cf: &CongruenceFrame) -> Biframe {
    let part1: Vec<usize> = cf.base().elements().map(|a| cf.nabla_index(a)).collect();
    let deltas: Vec<usize> = cf.base().elements().map(|a| cf.delta_index(a)).collect();
    let part2 = subframe_generated(cf.lattice(), &deltas);
    let b = validate_biframe(cf.lattice().clone(), part1, part2)
        .expect("the congruence biframe is a biframe");
    debug_assert!(b.is_str0d());
    b
}

/// Convenience entry point from a bare frame.
pub fn congruence_biframe_of(frame: &FrameRef) -> Result<Biframe> {
    Ok(congruence_biframe(&congruence_lattice(frame)?))
}

/// Quotient of a biframe by a congruence on its total part; parts map to
/// their images. The quotient homomorphism is a biframe surjection.
pub fn biframe_quotient(b: &Biframe, theta: &Congruence) -> (Biframe, BiframeHom) {
    assert_eq!(b.total().as_ref(), theta.frame().as_ref());
    let (qf, q) = crate::congruence::quotient(b.total(), theta);
    let image = |part: &[usize]| -> Vec<usize> {
        let mut img: Vec<usize> = part.iter().map(|&x| q.apply(x)).collect();
        img.sort_unstable();
        img.dedup();
        img
    };
    let qb = validate_biframe(qf, image(b.part1()), image(b.part2()))
        .expect("images of parts under a quotient form a biframe");
    let h = validate_bihom(b.clone(), qb.clone(), q.table())
        .expect("quotient map is a biframe homomorphism");
    debug_assert!(is_biframe_surjection(&h));
    (qb, h)
}

/// The congruential coreflection chi: C(M1) -> M of a strictly
/// zero-dimensional biframe, built from the universal property of nabla:
/// chi(nabla_a) = a. Returns the hom together with the congruence frame
/// of the first part it is defined on.
pub struct Coreflection {
    pub cf: Arc<CongruenceFrame>,
    pub source: Biframe,
    pub chi: BiframeHom,
}

pub fn coreflection_chi(m: &Biframe) -> Result<Coreflection> {
    m.require_str0d()?;
    let (p1, incl) = m.part1_frame();
    let cf = congruence_lattice(&p1)?;
    let h0 = nabla_extension(&cf, &incl)?;
    let source = congruence_biframe(&cf);
    let chi = validate_bihom(source.clone(), m.clone(), h0.table())
        .map_err(|e| Error::TheoremViolation(format!("chi is not a biframe hom: {e}")))?;
    // chi_1 is an isomorphism by the triangle identities, and chi is a
    // dense quotient.
    debug_assert!(chi.is_h1_injective() && chi.is_h1_surjective());
    debug_assert!(is_dense_bihom(&chi));
    Ok(Coreflection {
        cf: Arc::new(cf),
        source,
        chi,
    })
}

impl Coreflection {
    /// chi_* evaluated at an element of the total part: the distinguished
    /// congruence of that element, as a congruence on the first part.
    pub fn chi_star(&self, m: usize) -> Congruence {
        let adj = self.chi.hom().right_adjoint();
        self.cf.cong(adj.apply(m)).clone()
    }

    /// Is chi an isomorphism, i.e. is the biframe congruential?
    pub fn is_iso(&self) -> bool {
        self.chi.is_iso()
    }
}

/// chi_* for a single element without keeping the coreflection around.
pub fn chi_star(m: &Biframe, x: usize) -> Result<Congruence> {
    Ok(coreflection_chi(m)?.chi_star(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{delta, nabla, Congruence};
    use crate::frame::fixtures::*;

    fn square_biframe() -> Biframe {
        let sq = square();
        let a = sq.index_of("a").unwrap();
        let b = sq.index_of("b").unwrap();
        validate_biframe(sq.clone(), vec![0, a, 3], vec![0, b, 3]).unwrap()
    }

    #[test]
    fn square_with_two_axes_is_valid_and_str0d() {
        let b = square_biframe();
        assert!(b.is_str0d());
    }

    #[test]
    fn degenerate_biframe_total_everywhere() {
        let c3 = chain(3);
        let all: Vec<usize> = c3.elements().collect();
        let b = validate_biframe(c3.clone(), all.clone(), all).unwrap();
        assert!(!b.is_str0d()); // a has no complement
    }

    #[test]
    fn parts_must_generate() {
        let sq = square();
        let a = sq.index_of("a").unwrap();
        let err = validate_biframe(sq.clone(), vec![0, a, 3], vec![0, 3]).unwrap_err();
        assert!(matches!(err, Error::PartsDoNotGenerate));
    }

    #[test]
    fn part_must_be_subframe() {
        let sq = square();
        let a = sq.index_of("a").unwrap();
        let b = sq.index_of("b").unwrap();
        let err = validate_biframe(sq.clone(), vec![a, 3], vec![0, b, 3]).unwrap_err();
        assert!(matches!(err, Error::PartNotSubframe { part: 1, .. }));
    }

    #[test]
    fn chain3_with_trivial_part2_is_not_str0d() {
        let c3 = chain(3);
        let b = validate_biframe(c3.clone(), vec![0, 1, 2], vec![0, 2]);
        // part1 = chain3 generates, part2 = {0,1} is a subframe
        let b = b.unwrap();
        assert!(!b.is_str0d());
        assert!(b.require_str0d().is_err());
    }

    #[test]
    fn congruence_biframe_of_two_and_chain3() {
        let cf2 = congruence_lattice(&chain(2)).unwrap();
        let b2 = congruence_biframe(&cf2);
        assert_eq!(b2.total().len(), 2);
        assert_eq!(b2.part1().len(), 2);
        assert_eq!(b2.part2().len(), 2);

        let cf3 = congruence_lattice(&chain(3)).unwrap();
        let b3 = congruence_biframe(&cf3);
        assert_eq!(b3.total().len(), 4);
        assert_eq!(b3.part1().len(), 3);
        assert_eq!(b3.part2().len(), 3);
        assert!(b3.is_str0d());
        // part1 is a 3-chain, part2 is a 3-chain
        let (p1, _) = b3.part1_frame();
        assert!(p1.find_isomorphism(&chain(3)).is_some());
        let (p2, _) = b3.part2_frame();
        assert!(p2.find_isomorphism(&chain(3)).is_some());

        let cft = congruence_lattice(&trivial()).unwrap();
        let bt = congruence_biframe(&cft);
        assert!(bt.is_trivial());
    }

    #[test]
    fn biframe_quotient_by_identity_and_all() {
        let b = square_biframe();
        let (qb, qh) = biframe_quotient(&b, &Congruence::identity(b.total()));
        assert!(qh.is_iso());
        assert_eq!(qb.total().len(), 4);
        let (qb, _) = biframe_quotient(&b, &Congruence::all(b.total()));
        assert!(qb.is_trivial());
    }

    #[test]
    fn closed_quotient_of_congruence_biframe_is_str0d_over_quotient() {
        let c3 = chain(3);
        let cf = congruence_lattice(&c3).unwrap();
        let b = congruence_biframe(&cf);
        let na = cf.nabla_index(1);
        let theta = nabla(b.total(), na);
        let (qb, _) = biframe_quotient(&b, &theta);
        assert!(qb.is_str0d());
        let (p1, _) = qb.part1_frame();
        assert!(p1.find_isomorphism(&chain(2)).is_some());
    }

    #[test]
    fn coreflection_of_congruence_biframe_is_iso() {
        for f in [chain(2), chain(3), square()] {
            let cf = congruence_lattice(&f).unwrap();
            let b = congruence_biframe(&cf);
            let c = coreflection_chi(&b).unwrap();
            assert!(c.is_iso());
        }
    }

    #[test]
    fn coreflection_of_square_biframe_is_iso_onto_c_chain3() {
        let b = square_biframe();
        let c = coreflection_chi(&b).unwrap();
        // P(b) is a 3-chain, so the source is C(chain3) with 4 elements
        assert_eq!(c.source.total().len(), 4);
        assert!(c.is_iso());
        assert!(is_dense_bihom(&c.chi));
    }

    #[test]
    fn chi_star_at_bottom_top_and_fixed_points() {
        let c3 = chain(3);
        let cf = congruence_lattice(&c3).unwrap();
        let b = congruence_biframe(&cf);
        let c = coreflection_chi(&b).unwrap();
        let bot = b.total().bottom();
        let top = b.total().top();
        assert!(c.chi_star(bot).is_identity());
        assert!(c.chi_star(top).is_all());
        // chi is an iso here, so chi_* is its inverse: at Delta_a we get
        // the congruence delta_a on the first part (which is iso to chain3).
        let da_total = cf.delta_index(1);
        let star = c.chi_star(da_total);
        let (p1, _) = b.part1_frame();
        assert_eq!(star, delta(&p1, p1.index_of("Na").unwrap()));
    }

    #[test]
    fn chi_star_preserves_first_parts() {
        // chi_*(a) = nabla_a for first-part elements a
        let b = square_biframe();
        let c = coreflection_chi(&b).unwrap();
        for (i, &a) in b.part1().iter().enumerate() {
            let star = c.chi_star(a);
            assert_eq!(star, nabla(c.cf.base(), i));
        }
    }
}
