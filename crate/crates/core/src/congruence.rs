//! Frame congruences as nuclei, the congruence frame C L, closure,
//! clear congruences, quotients, and the congruence functor.
//!
//! A congruence is stored as its nucleus table (inflationary, idempotent,
//! meet-preserving endo-map); the equivalence-relation view is derived on
//! demand. Congruence order is *relation inclusion* throughout — the
//! reverse of nucleus-image-set inclusion — so every formula reads like
//! the lattice C L it lives in.

use crate::error::{Error, Result};
use crate::frame::{build_frame, FrameRef};
use crate::hom::{subframe_generated, validate_hom, FrameHom};
use crate::poset::FinitePoset;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    frame: FrameRef,
    nucleus: Vec<u16>,
}

impl Congruence {
    /// Validate a nucleus table: inflationary, idempotent, meet-preserving.
    pub fn from_nucleus(frame: FrameRef, table: Vec<usize>) -> Result<Congruence> {
        if table.len() != frame.len() {
            return Err(Error::Invalid("nucleus table has wrong length".into()));
        }
        for x in frame.elements() {
            if table[x] >= frame.len() {
                return Err(Error::Invalid("nucleus image out of range".into()));
            }
            if !frame.leq(x, table[x]) {
                return Err(Error::Invalid(format!(
                    "nucleus is not inflationary at {}",
                    frame.label(x)
                )));
            }
            if table[table[x]] != table[x] {
                return Err(Error::Invalid(format!(
                    "nucleus is not idempotent at {}",
                    frame.label(x)
                )));
            }
        }
        for x in frame.elements() {
            for y in frame.elements() {
                if table[frame.meet(x, y)] != frame.meet(table[x], table[y]) {
                    return Err(Error::Invalid(format!(
                        "nucleus does not preserve the meet of {} and {}",
                        frame.label(x),
                        frame.label(y)
                    )));
                }
            }
        }
        Ok(Congruence {
            frame,
            nucleus: table.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// The diagonal congruence (identity nucleus).
    pub fn identity(frame: &FrameRef) -> Congruence {
        Congruence {
            frame: frame.clone(),
            nucleus: frame.elements().map(|x| x as u16).collect(),
        }
    }

    /// The all-relation (constant-top nucleus).
    pub fn all(frame: &FrameRef) -> Congruence {
        Congruence {
            frame: frame.clone(),
            nucleus: vec![frame.top() as u16; frame.len()],
        }
    }

    /// Recover a congruence from an equivalence relation given as an
    /// n*n boolean table. Fails if the relation is not an equivalence
    /// that is a sublattice of L x L, i.e. not a congruence.
    pub fn from_relation(frame: FrameRef, rel: &[bool]) -> Result<Congruence> {
        let n = frame.len();
        if rel.len() != n * n {
            return Err(Error::Invalid("relation table has wrong size".into()));
        }
        let r = |x: usize, y: usize| rel[x * n + y];
        for x in 0..n {
            if !r(x, x) {
                return Err(Error::Invalid("relation is not reflexive".into()));
            }
            for y in 0..n {
                if r(x, y) != r(y, x) {
                    return Err(Error::Invalid("relation is not symmetric".into()));
                }
                for z in 0..n {
                    if r(x, y) && r(y, z) && !r(x, z) {
                        return Err(Error::Invalid("relation is not transitive".into()));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !r(x, y) {
                    continue;
                }
                for u in 0..n {
                    for v in 0..n {
                        if r(u, v)
                            && (!r(frame.meet(x, u), frame.meet(y, v))
                                || !r(frame.join(x, u), frame.join(y, v)))
                        {
                            return Err(Error::Invalid(
                                "relation is not a sublattice of L x L".into(),
                            ));
                        }
                    }
                }
            }
        }
        let mut table = vec![0usize; n];
        for x in 0..n {
            let class = (0..n).filter(|&y| r(x, y));
            let m = frame.join_of(class);
            if !r(x, m) {
                return Err(Error::Invalid(
                    "equivalence class is not closed under joins".into(),
                ));
            }
            table[x] = m;
        }
        Congruence::from_nucleus(frame, table)
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.nucleus[x] as usize
    }

    pub fn nucleus_table(&self) -> Vec<usize> {
        self.nucleus.iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn nucleus_key(&self) -> Vec<u16> {
        self.nucleus.clone()
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.nucleus[x] == self.nucleus[y]
    }

    pub fn relation(&self) -> Vec<bool> {
        let n = self.frame.len();
        let mut rel = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                rel[x * n + y] = self.related(x, y);
            }
        }
        rel
    }

    /// Equivalence classes, each sorted, ordered by smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.frame.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; n];
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let class: Vec<usize> = (x..n).filter(|&y| self.related(x, y)).collect();
            for &y in &class {
                seen[y] = true;
            }
            out.push(class);
        }
        out
    }

    /// Number of related pairs; strictly monotone in relation inclusion.
    pub fn pair_count(&self) -> usize {
        self.classes().iter().map(|c| c.len() * c.len()).sum()
    }

    /// Relation inclusion, equivalently the pointwise nucleus order.
    pub fn leq(&self, other: &Congruence) -> bool {
        debug_assert_eq!(self.frame.as_ref(), other.frame.as_ref());
        self.frame
            .elements()
            .all(|x| self.frame.leq(self.apply(x), other.apply(x)))
    }

    /// Meet in C L: intersection of relations, pointwise on nuclei.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        debug_assert_eq!(self.frame.as_ref(), other.frame.as_ref());
        let table: Vec<usize> = self
            .frame
            .elements()
            .map(|x| self.frame.meet(self.apply(x), other.apply(x)))
            .collect();
        Congruence::from_nucleus(self.frame.clone(), table)
            .expect("pointwise meet of nuclei is a nucleus")
    }

    /// Join in C L: alternate the two nuclei to a common fixpoint.
    pub fn join(&self, other: &Congruence) -> Congruence {
        debug_assert_eq!(self.frame.as_ref(), other.frame.as_ref());
        let table: Vec<usize> = self
            .frame
            .elements()
            .map(|x| {
                let mut v = x;
                loop {
                    let next = self.apply(other.apply(v));
                    if next == v {
                        return v;
                    }
                    v = next;
                }
            })
            .collect();
        Congruence::from_nucleus(self.frame.clone(), table)
            .expect("alternating iteration of nuclei converges to a nucleus")
    }

    /// Elements fixed by the nucleus, in ascending order. These form the
    /// quotient frame.
    pub fn fixpoints(&self) -> Vec<usize> {
        self.frame.elements().filter(|&x| self.apply(x) == x).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.frame.elements().all(|x| self.apply(x) == x)
    }

    pub fn is_all(&self) -> bool {
        self.frame.elements().all(|x| self.apply(x) == self.frame.top())
    }

    /// Canonical partition vector: block ids in order of first occurrence.
    pub fn partition_vector(&self) -> Vec<usize> {
        let n = self.frame.len();
        let mut out = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            if out[x] != usize::MAX {
                continue;
            }
            for y in x..n {
                if self.related(x, y) {
                    out[y] = next;
                }
            }
            next += 1;
        }
        out
    }
}

/// Closed congruence: x related to y iff x \/ a = y \/ a.
pub fn nabla(frame: &FrameRef, a: usize) -> Congruence {
    let table: Vec<usize> = frame.elements().map(|x| frame.join(x, a)).collect();
    Congruence::from_nucleus(frame.clone(), table).expect("x -> x \\/ a is a nucleus")
}

/// Open congruence: the least congruence identifying a with 1.
pub fn delta(frame: &FrameRef, a: usize) -> Congruence {
    let c = congruence_from_pairs(frame, &[(a, frame.top())]);
    // Closed form: the nucleus x -> (a -> x). Both routes must agree.
    debug_assert!(frame.elements().all(|x| c.apply(x) == frame.imp(a, x)));
    c
}

/// Least congruence containing the given pairs.
///
/// Worklist closure: every new identification (x, y) forces the
/// identifications (x /\ z, y /\ z) and (x \/ z, y \/ z) for all z;
/// symmetry and transitivity are kept by union-find. Consequences of
/// pairs already equivalent follow from consequences of the merging
/// edges, so only merges enqueue work and the loop terminates after at
/// most n - 1 merges.
pub fn congruence_from_pairs(frame: &FrameRef, pairs: &[(usize, usize)]) -> Congruence {
    let n = frame.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
    while let Some((x, y)) = queue.pop_front() {
        let rx = find(&mut parent, x);
        let ry = find(&mut parent, y);
        if rx == ry {
            continue;
        }
        parent[rx] = ry;
        for z in 0..n {
            queue.push_back((frame.meet(x, z), frame.meet(y, z)));
            queue.push_back((frame.join(x, z), frame.join(y, z)));
        }
    }
    let mut table = vec![0usize; n];
    let mut class_join: HashMap<usize, usize> = HashMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        let j = class_join.get(&r).copied().unwrap_or(frame.bottom());
        class_join.insert(r, frame.join(j, x));
    }
    for x in 0..n {
        let r = find(&mut parent, x);
        table[x] = class_join[&r];
    }
    // The class join must land in the class, otherwise the closure missed
    // a consequence — that would be a bug, not bad input.
    for x in 0..n {
        debug_assert_eq!(
            find(&mut parent, table[x]),
            find(&mut parent, x),
            "class join escaped its class"
        );
    }
    Congruence::from_nucleus(frame.clone(), table)
        .expect("closure of pairs under the congruence laws is a congruence")
}

/// The kernel congruence of a frame homomorphism: x ~ y iff f(x) = f(y).
/// Its nucleus is the composite f_* . f: the triangle identity
/// f . f_* . f = f makes f_*(f(x)) the largest element of the class of x.
pub fn kernel(f: &FrameHom) -> Congruence {
    let adj = f.right_adjoint();
    let table: Vec<usize> = f.source().elements().map(|x| adj.apply(f.apply(x))).collect();
    let c = Congruence::from_nucleus(f.source().clone(), table)
        .expect("kernels of frame homomorphisms are congruences");
    debug_assert!(f
        .source()
        .elements()
        .all(|x| f.source().elements().all(|y| c.related(x, y) == (f.apply(x) == f.apply(y)))));
    c
}

/// cl(C) = the largest closed congruence below C, concretely nabla at
/// j_C(0). The compositional route through the right adjoint of the
/// nabla homomorphism is `CongruenceFrame::closure_via_adjoint`.
pub fn closure_cl(c: &Congruence) -> Congruence {
    nabla(c.frame(), c.apply(c.frame().bottom()))
}

/// Is C dense, i.e. cl(C) = 0?
pub fn is_dense_congruence(c: &Congruence) -> bool {
    c.apply(c.frame().bottom()) == c.frame().bottom()
}

/// The clear congruence at a: the largest congruence with closure
/// nabla_a. Closed form: the double relative pseudocomplement nucleus
/// x -> ((x -> a) -> a), validated here; maximality is cross-checked
/// against the brute-force maximum in `CongruenceFrame::clear_congruence_brute`.
pub fn clear_congruence(frame: &FrameRef, a: usize) -> Congruence {
    let table: Vec<usize> = frame
        .elements()
        .map(|x| frame.imp(frame.imp(x, a), a))
        .collect();
    let c = Congruence::from_nucleus(frame.clone(), table)
        .expect("double relative pseudocomplement is a nucleus");
    debug_assert_eq!(c.apply(frame.bottom()), a, "closure of the clear congruence");
    c
}

/// The largest dense congruence on L.
pub fn dense_top(frame: &FrameRef) -> Congruence {
    clear_congruence(frame, frame.bottom())
}

/// Quotient frame L/C on the fixpoints of the nucleus, with the quotient
/// homomorphism. The kernel of the quotient map is C again.
pub fn quotient(frame: &FrameRef, c: &Congruence) -> (FrameRef, FrameHom) {
    assert_eq!(frame.as_ref(), c.frame().as_ref());
    let fixed = c.fixpoints();
    let labels: Vec<String> = fixed.iter().map(|&x| frame.label(x).to_string()).collect();
    let mut pairs = Vec::new();
    for (i, &x) in fixed.iter().enumerate() {
        for (j, &y) in fixed.iter().enumerate() {
            if frame.leq(x, y) {
                pairs.push((i, j));
            }
        }
    }
    let poset = FinitePoset::new(labels, &pairs).expect("restricted order");
    let q_frame = Arc::new(
        build_frame(format!("{}/~", frame.name()), poset).expect("nucleus fixpoints form a frame"),
    );
    let pos: HashMap<usize, usize> = fixed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let map: Vec<usize> = frame.elements().map(|x| pos[&c.apply(x)]).collect();
    let q = validate_hom(frame.clone(), q_frame.clone(), map).expect("nucleus application is a frame hom");
    debug_assert!(q.is_surjective());
    debug_assert!(kernel(&q) == *c);
    (q_frame, q)
}

/// C f (C): the congruence on the target generated by the image of C.
pub fn cong_image(f: &FrameHom, c: &Congruence) -> Congruence {
    debug_assert_eq!(f.source().as_ref(), c.frame().as_ref());
    let mut pairs = Vec::new();
    for x in f.source().elements() {
        for y in f.source().elements() {
            if x < y && c.related(x, y) {
                pairs.push((f.apply(x), f.apply(y)));
            }
        }
    }
    congruence_from_pairs(f.target(), &pairs)
}

/// C f_* (D): the preimage of D under f x f, which is already a
/// congruence. Right adjoint to `cong_image`.
///
/// The preimage nucleus is f_* . j_D . f: for any y in the class of x
/// one has f(y) <= j_D(f(x)), so the class join is f_*(j_D(f(x))), and
/// that element stays in the class because f(f_*(b)) <= b.
pub fn cong_preimage(f: &FrameHom, d: &Congruence) -> Congruence {
    debug_assert_eq!(f.target().as_ref(), d.frame().as_ref());
    let adj = f.right_adjoint();
    let table: Vec<usize> = f
        .source()
        .elements()
        .map(|x| adj.apply(d.apply(f.apply(x))))
        .collect();
    let c = Congruence::from_nucleus(f.source().clone(), table)
        .expect("preimages of congruences under frame homs are congruences");
    debug_assert!(f.source().elements().all(|x| {
        f.source()
            .elements()
            .all(|y| c.related(x, y) == d.related(f.apply(x), f.apply(y)))
    }));
    c
}

/// The congruence frame C L: all congruences on a base frame arranged as
/// a frame of their own under relation inclusion.
#[derive(Debug, Clone)]
pub struct CongruenceFrame {
    base: FrameRef,
    lattice: FrameRef,
    congs: Vec<Congruence>,
    nabla_idx: Vec<usize>,
    delta_idx: Vec<usize>,
    index: HashMap<Vec<u16>, usize>,
}

/// Enumerate all congruences on L and assemble the frame C L.
///
/// Congruences are enumerated through their nucleus image sets: the
/// subsets S containing 1, closed under binary meets, with x -> s in S
/// for every x in L and s in S. Such sets are exactly the fixpoint sets
/// of nuclei; the induced minimal-cover map is validated to be
/// meet-preserving when each congruence is built. The search walks the
/// closure system breadth-first from the closure of the empty set,
/// extending each closed set by one element at a time, which reaches
/// every closed set.
pub fn congruence_lattice(base: &FrameRef) -> Result<CongruenceFrame> {
    let jcount = base.join_irreducibles().len();
    if jcount > crate::JOIN_IRREDUCIBLE_CAP {
        return Err(Error::BoundExceeded {
            what: "congruence lattice (join-irreducibles of the base)",
            size: jcount,
            bound: crate::JOIN_IRREDUCIBLE_CAP,
        });
    }
    let n = base.len();
    let close = |seed: &[usize]| -> Vec<u16> {
        let mut member = vec![false; n];
        member[base.top()] = true;
        for &s in seed {
            member[s] = true;
        }
        loop {
            let current: Vec<usize> = (0..n).filter(|&x| member[x]).collect();
            let mut grew = false;
            for &s in &current {
                for &t in &current {
                    let m = base.meet(s, t);
                    if !member[m] {
                        member[m] = true;
                        grew = true;
                    }
                }
                for x in 0..n {
                    let h = base.imp(x, s);
                    if !member[h] {
                        member[h] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                return (0..n).filter(|&x| member[x]).map(|x| x as u16).collect();
            }
        }
    };

    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut queue: VecDeque<Vec<u16>> = VecDeque::new();
    let start = close(&[]);
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        let in_s: HashSet<u16> = s.iter().copied().collect();
        for x in 0..n as u16 {
            if in_s.contains(&x) {
                continue;
            }
            let mut seed: Vec<usize> = s.iter().map(|&v| v as usize).collect();
            seed.push(x as usize);
            let t = close(&seed);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }

    let mut congs: Vec<Congruence> = Vec::with_capacity(seen.len());
    for s in seen {
        let member: HashSet<usize> = s.iter().map(|&v| v as usize).collect();
        let table: Vec<usize> = base
            .elements()
            .map(|x| base.meet_of(member.iter().copied().filter(|&m| base.leq(x, m))))
            .collect();
        congs.push(Congruence::from_nucleus(base.clone(), table)?);
    }
    congs.sort_by_key(|c| (c.pair_count(), c.nucleus_key()));

    let index: HashMap<Vec<u16>, usize> = congs
        .iter()
        .enumerate()
        .map(|(i, c)| (c.nucleus_key(), i))
        .collect();

    let nabla_idx: Vec<usize> = base
        .elements()
        .map(|a| index[&nabla(base, a).nucleus_key()])
        .collect();
    let delta_idx: Vec<usize> = base
        .elements()
        .map(|a| index[&delta(base, a).nucleus_key()])
        .collect();

    // Labels: prefer the nabla/delta notation, fall back to a counter.
    let m = congs.len();
    let mut labels: Vec<String> = vec![String::new(); m];
    for a in base.elements().rev() {
        labels[delta_idx[a]] = format!("D{}", base.label(a));
    }
    for a in base.elements().rev() {
        labels[nabla_idx[a]] = format!("N{}", base.label(a));
    }
    for (i, l) in labels.iter_mut().enumerate() {
        if l.is_empty() {
            *l = format!("t{i}");
        }
    }

    let mut pairs = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if congs[i].leq(&congs[j]) {
                pairs.push((i, j));
            }
        }
    }
    let poset = FinitePoset::new(labels, &pairs)?;
    let lattice = Arc::new(build_frame(format!("C({})", base.name()), poset)?);

    let cf = CongruenceFrame {
        base: base.clone(),
        lattice,
        congs,
        nabla_idx,
        delta_idx,
        index,
    };
    cf.check_invariants()?;
    Ok(cf)
}

impl CongruenceFrame {
    pub fn base(&self) -> &FrameRef {
        &self.base
    }

    /// The frame C L itself; element i is `self.cong(i)`.
    pub fn lattice(&self) -> &FrameRef {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.congs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn congs(&self) -> &[Congruence] {
        &self.congs
    }

    pub fn cong(&self, i: usize) -> &Congruence {
        &self.congs[i]
    }

    pub fn index_of(&self, c: &Congruence) -> usize {
        *self
            .index
            .get(&c.nucleus_key())
            .expect("congruence not found in the lattice; wrong base frame?")
    }

    pub fn nabla_index(&self, a: usize) -> usize {
        self.nabla_idx[a]
    }

    pub fn delta_index(&self, a: usize) -> usize {
        self.delta_idx[a]
    }

    /// The injective frame homomorphism a -> nabla_a from L into C L.
    pub fn nabla_hom(&self) -> FrameHom {
        validate_hom(self.base.clone(), self.lattice.clone(), self.nabla_idx.clone())
            .expect("nabla is a frame homomorphism")
    }

    /// cl(C) as an element of the lattice via the defining composite
    /// nabla after its right adjoint. Cross-check route for `closure_cl`.
    pub fn closure_via_adjoint(&self, c: &Congruence) -> Congruence {
        let nab = self.nabla_hom();
        let adj = nab.right_adjoint();
        let a = adj.apply(self.index_of(c));
        self.congs[self.nabla_idx[a]].clone()
    }

    /// Largest closed congruence below C.
    pub fn closure_cl(&self, c: &Congruence) -> Congruence {
        let direct = closure_cl(c);
        debug_assert_eq!(direct, self.closure_via_adjoint(c));
        direct
    }

    /// Brute-force maximum over all congruences with closure nabla_a; the
    /// oracle for the closed-form `clear_congruence`.
    pub fn clear_congruence_brute(&self, a: usize) -> Congruence {
        let with_closure: Vec<&Congruence> = self
            .congs
            .iter()
            .filter(|c| c.apply(self.base.bottom()) == a)
            .collect();
        with_closure
            .iter()
            .find(|c| with_closure.iter().all(|d| d.leq(c)))
            .expect("the congruences with a given closure have a maximum")
            .to_owned()
            .clone()
    }

    /// Smoothness: C equals its double pseudocomplement in C L.
    pub fn is_smooth(&self, c: &Congruence) -> bool {
        let lat = &self.lattice;
        let x = self.index_of(c);
        let star = lat.pseudocomplement(x);
        lat.pseudocomplement(star) == x
    }

    fn check_invariants(&self) -> Result<()> {
        let nab = self.nabla_hom();
        if !nab.is_injective() {
            return Err(Error::TheoremViolation("nabla is not injective".into()));
        }
        for a in self.base.elements() {
            let n_i = self.nabla_idx[a];
            let d_i = self.delta_idx[a];
            if self.lattice.meet(n_i, d_i) != self.lattice.bottom()
                || self.lattice.join(n_i, d_i) != self.lattice.top()
            {
                return Err(Error::TheoremViolation(format!(
                    "nabla_{0} and delta_{0} are not complements",
                    self.base.label(a)
                )));
            }
        }
        let gens: Vec<usize> = self
            .nabla_idx
            .iter()
            .chain(self.delta_idx.iter())
            .copied()
            .collect();
        if subframe_generated(&self.lattice, &gens).len() != self.congs.len() {
            return Err(Error::TheoremViolation(
                "closed and open congruences do not generate C L".into(),
            ));
        }
        Ok(())
    }
}

/// The frame homomorphism C f : C L -> C M induced on congruence
/// lattices, tabulated through `cong_image`.
pub fn cong_functor_hom(f: &FrameHom, cf_src: &CongruenceFrame, cf_tgt: &CongruenceFrame) -> FrameHom {
    assert_eq!(f.source().as_ref(), cf_src.base().as_ref());
    assert_eq!(f.target().as_ref(), cf_tgt.base().as_ref());
    let map: Vec<usize> = cf_src
        .congs()
        .iter()
        .map(|c| cf_tgt.index_of(&cong_image(f, c)))
        .collect();
    validate_hom(cf_src.lattice().clone(), cf_tgt.lattice().clone(), map)
        .expect("C f is a frame homomorphism")
}

/// Third isomorphism theorem, concretely: congruences above C correspond
/// to congruences on L/C by D -> image of D under the quotient map.
/// Returns the pairs (lattice index of D, D/C) in lattice order.
pub fn third_iso(cf: &CongruenceFrame, c: &Congruence) -> Vec<(usize, Congruence)> {
    let (_, q) = quotient(cf.base(), c);
    cf.congs()
        .iter()
        .enumerate()
        .filter(|(_, d)| c.leq(d))
        .map(|(i, d)| (i, cong_image(&q, d)))
        .collect()
}

/// Independent oracle: enumerate set partitions of L directly and keep
/// those whose induced relation is a sublattice of L x L. Returns
/// canonical partition vectors.
pub fn brute_force_congruences(frame: &FrameRef, bound: usize) -> Result<Vec<Vec<usize>>> {
    let n = frame.len();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "brute-force congruence oracle",
            size: n,
            bound,
        });
    }
    let mut out = Vec::new();
    // Restricted growth strings enumerate set partitions canonically.
    let mut rgs = vec![0usize; n];
    loop {
        if partition_is_congruence(frame, &rgs) {
            out.push(rgs.clone());
        }
        // next RGS
        let mut i = n;
        loop {
            if i == 1 {
                return Ok(out);
            }
            i -= 1;
            let max_prev = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prev {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

pub const BRUTE_FORCE_BOUND: usize = 5;

fn partition_is_congruence(frame: &FrameRef, block: &[usize]) -> bool {
    let n = frame.len();
    for x in 0..n {
        for y in 0..n {
            if block[x] != block[y] {
                continue;
            }
            for u in 0..n {
                for v in 0..n {
                    if block[u] == block[v]
                        && (block[frame.meet(x, u)] != block[frame.meet(y, v)]
                            || block[frame.join(x, u)] != block[frame.join(y, v)])
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The unique frame homomorphism C L -> M with h(nabla_a) = g(a), for a
/// map g whose image consists of complemented elements. Every congruence
/// is the join of the meets nabla_b /\ delta_a below it, and such a meet
/// must map to g(b) /\ g(a)^c.
pub fn nabla_extension(cf: &CongruenceFrame, g: &FrameHom) -> Result<FrameHom> {
    assert_eq!(g.source().as_ref(), cf.base().as_ref());
    let target = g.target().clone();
    let complements: Vec<usize> = cf
        .base()
        .elements()
        .map(|a| {
            target.complement(g.apply(a)).ok_or_else(|| {
                Error::Invalid(format!(
                    "image of {} under g is not complemented",
                    cf.base().label(a)
                ))
            })
        })
        .collect::<Result<_>>()?;
    let lat = cf.lattice();
    let mut map = Vec::with_capacity(cf.len());
    for ci in 0..cf.len() {
        let mut acc = target.bottom();
        for a in cf.base().elements() {
            for b in cf.base().elements() {
                let gen = lat.meet(cf.nabla_index(b), cf.delta_index(a));
                if lat.leq(gen, ci) {
                    acc = target.join(acc, target.meet(g.apply(b), complements[a]));
                }
            }
        }
        map.push(acc);
    }
    let h = validate_hom(cf.lattice().clone(), target, map).map_err(|e| {
        Error::TheoremViolation(format!("nabla extension is not a frame hom: {e}"))
    })?;
    for a in cf.base().elements() {
        if h.apply(cf.nabla_index(a)) != g.apply(a) {
            return Err(Error::TheoremViolation(
                "nabla extension does not restrict to g".into(),
            ));
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::fixtures::*;

    #[test]
    fn nabla_on_chain3() {
        let c3 = chain(3);
        let c = nabla(&c3, 1);
        assert_eq!(c.classes(), vec![vec![0, 1], vec![2]]);
        assert!(nabla(&c3, 0).is_identity());
        assert!(nabla(&c3, 2).is_all());
    }

    #[test]
    fn delta_on_chain3() {
        let c3 = chain(3);
        let c = delta(&c3, 1);
        assert_eq!(c.classes(), vec![vec![0], vec![1, 2]]);
        assert_eq!(c.nucleus_table(), vec![0, 2, 2]);
        assert!(delta(&c3, 2).is_identity());
        assert!(delta(&c3, 0).is_all());
    }

    #[test]
    fn generated_congruence_matches_nabla_in_both_views() {
        let c3 = chain(3);
        let generated = congruence_from_pairs(&c3, &[(0, 1)]);
        let direct = nabla(&c3, 1);
        assert_eq!(generated, direct);
        assert_eq!(generated.relation(), direct.relation());
        assert!(congruence_from_pairs(&c3, &[]).is_identity());
        assert!(congruence_from_pairs(&c3, &[(0, 2)]).is_all());
    }

    #[test]
    fn generated_congruence_is_least_above_pairs() {
        // oracle: meet of all congruences containing the pair
        for f in [chain(3), chain(4), square()] {
            let cf = congruence_lattice(&f).unwrap();
            for x in f.elements() {
                for y in f.elements() {
                    let gen = congruence_from_pairs(&f, &[(x, y)]);
                    let least = cf
                        .congs()
                        .iter()
                        .filter(|c| c.related(x, y))
                        .fold(Congruence::all(&f), |acc, c| acc.meet(c));
                    assert_eq!(gen, least);
                }
            }
        }
    }

    #[test]
    fn congruence_lattice_sizes() {
        assert_eq!(congruence_lattice(&chain(2)).unwrap().len(), 2);
        assert_eq!(congruence_lattice(&chain(3)).unwrap().len(), 4);
        assert_eq!(congruence_lattice(&square()).unwrap().len(), 4);
        assert_eq!(congruence_lattice(&trivial()).unwrap().len(), 1);
    }

    #[test]
    fn congruence_lattice_of_chain3_is_boolean() {
        let cf = congruence_lattice(&chain(3)).unwrap();
        assert!(cf.lattice().is_boolean());
    }

    #[test]
    fn oracle_agreement_small() {
        for f in [chain(2), chain(3), chain(4), square(), trivial()] {
            let cf = congruence_lattice(&f).unwrap();
            let mut from_nuclei: Vec<Vec<usize>> =
                cf.congs().iter().map(|c| c.partition_vector()).collect();
            let mut brute = brute_force_congruences(&f, BRUTE_FORCE_BOUND).unwrap();
            from_nuclei.sort();
            brute.sort();
            assert_eq!(from_nuclei, brute, "oracle mismatch on {}", f.name());
        }
    }

    #[test]
    fn closure_of_dense_and_closed_congruences() {
        let c3 = chain(3);
        let cf = congruence_lattice(&c3).unwrap();
        let d = delta(&c3, 1);
        assert!(closure_cl(&d).is_identity()); // delta_a is dense
        assert!(is_dense_congruence(&d));
        let nb = nabla(&c3, 1);
        assert_eq!(cf.closure_cl(&nb), nb);
        assert_eq!(closure_cl(&Congruence::all(&c3)), nabla(&c3, 2));
    }

    #[test]
    fn closure_routes_agree_everywhere() {
        for f in [chain(3), chain(4), square()] {
            let cf = congruence_lattice(&f).unwrap();
            for c in cf.congs() {
                assert_eq!(closure_cl(c), cf.closure_via_adjoint(c));
            }
        }
    }

    #[test]
    fn clear_congruence_examples() {
        let c3 = chain(3);
        // partial_0 = the largest dense congruence = delta_a on chain3
        let d = dense_top(&c3);
        assert_eq!(d, delta(&c3, 1));
        assert_eq!(d.classes(), vec![vec![0], vec![1, 2]]);
        // partial_1 = all
        assert!(clear_congruence(&c3, 2).is_all());
        // Boolean frame: dense top is the identity
        assert!(dense_top(&square()).is_identity());
        assert!(dense_top(&cube()).is_identity());
    }

    #[test]
    fn clear_congruence_matches_brute_force_maximum() {
        for f in [chain(3), chain(4), square(), cube()] {
            let cf = congruence_lattice(&f).unwrap();
            for a in f.elements() {
                assert_eq!(clear_congruence(&f, a), cf.clear_congruence_brute(a));
            }
        }
    }

    #[test]
    fn clear_quotients_are_boolean() {
        for f in [chain(3), chain(4), square()] {
            for a in f.elements() {
                let (qf, _) = quotient(&f, &clear_congruence(&f, a));
                assert!(qf.is_boolean());
            }
        }
    }

    #[test]
    fn quotient_by_nabla_is_the_upset() {
        let c3 = chain(3);
        let (qf, q) = quotient(&c3, &nabla(&c3, 1));
        assert_eq!(qf.len(), 2);
        assert_eq!(q.apply(0), 0); // 0 -> class of a
        assert_eq!(q.apply(1), 0);
        assert_eq!(q.apply(2), 1);
        let (qf2, _) = quotient(&c3, &delta(&c3, 1));
        assert_eq!(qf2.len(), 2);
        let (qf3, _) = quotient(&c3, &Congruence::identity(&c3));
        assert_eq!(qf3.len(), 3);
    }

    #[test]
    fn quotient_isomorphic_to_upset_and_downset() {
        for f in [chain(4), square(), cube()] {
            for a in f.elements() {
                let (up_frame, _) = quotient(&f, &nabla(&f, a));
                let upset: Vec<usize> = f.elements().filter(|&x| f.leq(a, x)).collect();
                let expect = crate::frame::induced_frame(&f, &upset, "up").unwrap();
                assert!(up_frame.find_isomorphism(&expect).is_some());

                let (down_frame, _) = quotient(&f, &delta(&f, a));
                let downset: Vec<usize> = f.elements().filter(|&x| f.leq(x, a)).collect();
                let expect = crate::frame::induced_frame(&f, &downset, "down").unwrap();
                assert!(down_frame.find_isomorphism(&expect).is_some());
            }
        }
    }

    #[test]
    fn cong_image_of_nabla_is_nabla_of_image() {
        let c3 = chain(3);
        let c2 = chain(2);
        let q = validate_hom(c3.clone(), c2.clone(), vec![0, 1, 1]).unwrap();
        assert_eq!(cong_image(&q, &nabla(&c3, 1)), nabla(&c2, 1));
        let id = FrameHom::identity(&c3);
        let c = delta(&c3, 1);
        assert_eq!(cong_image(&id, &c), c);
    }

    #[test]
    fn cong_image_along_inclusion_of_diagonal() {
        let c3 = chain(3);
        let c2 = chain(2);
        let incl = validate_hom(c2.clone(), c3.clone(), vec![0, 2]).unwrap();
        assert!(cong_image(&incl, &Congruence::identity(&c2)).is_identity());
    }

    #[test]
    fn cong_preimage_examples() {
        let c3 = chain(3);
        let c2 = chain(2);
        let q = validate_hom(c3.clone(), c2.clone(), vec![0, 1, 1]).unwrap();
        let ker = cong_preimage(&q, &Congruence::identity(&c2));
        assert_eq!(ker, delta(&c3, 1));
        assert_eq!(ker, kernel(&q));
        assert!(cong_preimage(&q, &Congruence::all(&c2)).is_all());
    }

    #[test]
    fn image_preimage_adjunction() {
        let c3 = chain(3);
        let sq = square();
        for f in crate::hom::enumerate_frame_homs(&c3, &sq) {
            let cf_s = congruence_lattice(&c3).unwrap();
            let cf_t = congruence_lattice(&sq).unwrap();
            for c in cf_s.congs() {
                for d in cf_t.congs() {
                    assert_eq!(cong_image(&f, c).leq(d), c.leq(&cong_preimage(&f, d)));
                }
            }
        }
    }

    #[test]
    fn third_iso_counts() {
        let c3 = chain(3);
        let cf = congruence_lattice(&c3).unwrap();
        for a in [1usize] {
            let nb = nabla(&c3, a);
            let above = third_iso(&cf, &nb);
            assert_eq!(above.len(), 2);
            let d = delta(&c3, a);
            assert_eq!(third_iso(&cf, &d).len(), 2);
        }
        let id = Congruence::identity(&c3);
        assert_eq!(third_iso(&cf, &id).len(), cf.len());
    }

    #[test]
    fn third_iso_is_an_order_isomorphism_onto_quotient_congruences() {
        for f in [chain(3), square(), chain(4)] {
            let cf = congruence_lattice(&f).unwrap();
            for c in cf.congs() {
                let (qf, _) = quotient(&f, c);
                let cf_q = congruence_lattice(&qf).unwrap();
                let pairs = third_iso(&cf, c);
                assert_eq!(pairs.len(), cf_q.len());
                // injective and order-preserving both ways
                for (i, ci) in &pairs {
                    for (j, cj) in &pairs {
                        assert_eq!(cf.cong(*i).leq(cf.cong(*j)), ci.leq(cj));
                    }
                }
            }
        }
    }

    #[test]
    fn all_congruences_on_finite_frames_are_smooth() {
        for f in [chain(3), square(), chain(4)] {
            let cf = congruence_lattice(&f).unwrap();
            for c in cf.congs() {
                assert!(cf.is_smooth(c));
            }
        }
    }

    #[test]
    fn structure_law_on_small_frames() {
        for f in [trivial(), chain(2), chain(3), chain(4), square(), cube()] {
            let cf = congruence_lattice(&f).unwrap();
            assert_eq!(cf.len(), 1 << f.join_irreducibles().len());
            assert!(cf.lattice().is_boolean());
        }
    }

    #[test]
    fn related_iff_joining_nablas_coincide() {
        // (a,b) in C iff nabla_a \/ C = nabla_b \/ C
        for f in [chain(3), square()] {
            let cf = congruence_lattice(&f).unwrap();
            for c in cf.congs() {
                for a in f.elements() {
                    for b in f.elements() {
                        let lhs = c.related(a, b);
                        let rhs = nabla(&f, a).join(c) == nabla(&f, b).join(c);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn nabla_adjoint_of_delta_is_zero() {
        let c3 = chain(3);
        let cf = congruence_lattice(&c3).unwrap();
        let adj = cf.nabla_hom().right_adjoint();
        let delta_a = cf.index_of(&delta(&c3, 1));
        assert_eq!(adj.apply(delta_a), 0);
    }

    #[test]
    fn brute_force_counts() {
        assert_eq!(brute_force_congruences(&chain(2), 5).unwrap().len(), 2);
        assert_eq!(brute_force_congruences(&chain(3), 5).unwrap().len(), 4);
        assert_eq!(brute_force_congruences(&trivial(), 5).unwrap().len(), 1);
        assert!(matches!(
            brute_force_congruences(&cube(), 5),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn nabla_extension_universal_property() {
        // g: chain3 -> 2^2 sending a to a complemented element
        let c3 = chain(3);
        let sq = square();
        let a = sq.index_of("a").unwrap();
        let g = validate_hom(c3.clone(), sq.clone(), vec![0, a, 3]).unwrap();
        let cf = congruence_lattice(&c3).unwrap();
        let h = nabla_extension(&cf, &g).unwrap();
        for x in c3.elements() {
            assert_eq!(h.apply(cf.nabla_index(x)), g.apply(x));
        }
        // uniqueness among all frame homs
        let all = crate::hom::enumerate_frame_homs(cf.lattice(), &sq);
        let matching: Vec<_> = all
            .iter()
            .filter(|h2| c3.elements().all(|x| h2.apply(cf.nabla_index(x)) == g.apply(x)))
            .collect();
        assert_eq!(matching.len(), 1);
        assert_eq!(matching[0], &h);
    }
}
