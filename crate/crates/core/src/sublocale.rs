//! Sublocales, nuclei, and the coframe operations of `S(L)`.
//!
//! A sublocale of a finite frame `L` is a subset containing the top that is
//! closed under binary meets and under `a → (−)` for every `a ∈ L`. Meets of
//! sublocales are intersections; the join of a family is the set of all
//! meets of subsets of the union. The difference `S ∖ T` is the co-Heyting
//! operation: the least `R` with `S ⊆ T ∨ R`.

use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::element_set::ElementSet;
use crate::lattice::{Elem, FiniteFrame};
use crate::mutation::{self, Mutant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SublocaleError {
    #[error("sublocales belong to different frames")]
    MixedFrames,
    #[error("member set has universe {got}, frame has {expected} elements")]
    WrongUniverse { expected: usize, got: usize },
    #[error("the top element is missing")]
    MissingTop,
    #[error("not closed under meets: {a} ∧ {b} = {meet} is missing")]
    NotMeetClosed { a: Elem, b: Elem, meet: Elem },
    #[error("not closed under the Heyting arrow: {a} → {s} = {arrow} is missing")]
    NotHeytingClosed { a: Elem, s: Elem, arrow: Elem },
    #[error("the sublocale has no complement in S(L)")]
    NotComplemented,
}

/// A sublocale of a [`FiniteFrame`], stored as its member set.
#[derive(Clone)]
pub struct Sublocale {
    frame: FiniteFrame,
    members: ElementSet,
}

impl Sublocale {
    /// Validates `members` against both sublocale conditions.
    pub fn new(frame: &FiniteFrame, members: ElementSet) -> Result<Self, SublocaleError> {
        validate_members(frame, &members)?;
        Ok(Self::from_members_unchecked(frame, members))
    }

    pub(crate) fn from_members_unchecked(frame: &FiniteFrame, members: ElementSet) -> Self {
        Self {
            frame: frame.clone(),
            members,
        }
    }

    /// `L` itself, the top of `S(L)`.
    pub fn whole(frame: &FiniteFrame) -> Self {
        Self::from_members_unchecked(frame, frame.all())
    }

    /// `{1}`, the bottom of `S(L)`, written `0` in reports.
    pub fn zero(frame: &FiniteFrame) -> Self {
        Self::from_members_unchecked(frame, ElementSet::from_ids(frame.size(), [frame.top()]))
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.frame.size()
    }

    pub fn is_subset(&self, other: &Sublocale) -> bool {
        self.members.is_subset(&other.members)
    }

    fn check_same_frame(&self, other: &Sublocale) -> Result<(), SublocaleError> {
        if self.frame.same_as(&other.frame) {
            Ok(())
        } else {
            Err(SublocaleError::MixedFrames)
        }
    }

    /// `ν_S(a) = ⋀{s ∈ S | s ≥ a}`
    pub fn reflect(&self, a: Elem) -> Elem {
        let f = &self.frame;
        f.meet_all(self.members.iter().filter(|&s| f.leq(a, s)))
    }

    pub fn nucleus(&self) -> Nucleus {
        Nucleus {
            frame: self.frame.clone(),
            image: self.frame.elements().map(|a| self.reflect(a)).collect(),
        }
    }

    /// The meet (intersection) in `S(L)`.
    pub fn meet(&self, other: &Sublocale) -> Result<Sublocale, SublocaleError> {
        self.check_same_frame(other)?;
        Ok(Self::from_members_unchecked(
            &self.frame,
            self.members.intersection(&other.members),
        ))
    }

    /// The join in `S(L)`.
    pub fn join(&self, other: &Sublocale) -> Result<Sublocale, SublocaleError> {
        sublocale_join(&self.frame, &[self.clone(), other.clone()])
    }

    /// `S̄ = 𝔠(⋀S)`
    pub fn closure(&self) -> Sublocale {
        closed_sublocale(&self.frame, self.frame.meet_all(self.members.iter()))
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }

    pub fn is_open(&self) -> bool {
        self.frame.elements().any(|a| open_sublocale(&self.frame, a) == *self)
    }

    /// Boolean sublocales are exactly `𝔟(⋀S)`.
    pub fn is_boolean(&self) -> bool {
        boolean_sublocale(&self.frame, self.frame.meet_all(self.members.iter())) == *self
    }

    /// `0 ∈ S`
    pub fn is_dense(&self) -> bool {
        self.contains(self.frame.bottom())
    }

    /// `ν_S(a) = 1` only for `a = 1`.
    pub fn is_codense(&self) -> bool {
        let top = self.frame.top();
        self.frame
            .elements()
            .all(|a| a == top || self.reflect(a) != top)
    }

    /// The sublocale as a frame in its own right, with the embedding back into `L`.
    pub fn to_frame(&self) -> SublocaleFrame {
        let embedding = self.members.to_vec();
        let mut position = vec![None; self.frame.size()];
        for (i, &a) in embedding.iter().enumerate() {
            position[a] = Some(i);
        }
        let f = &self.frame;
        let frame = FiniteFrame::from_order(embedding.len(), |i, j| f.leq(embedding[i], embedding[j]))
            .expect("a sublocale is a frame");
        let labels = embedding.iter().map(|&a| Some(f.label(a))).collect();
        SublocaleFrame {
            frame: frame.with_labels(labels),
            embedding,
            position,
        }
    }
}

impl PartialEq for Sublocale {
    fn eq(&self, other: &Self) -> bool {
        self.frame.same_as(&other.frame) && self.members == other.members
    }
}

impl Eq for Sublocale {}

impl Hash for Sublocale {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Sublocale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublocale{}", self.members)
    }
}

impl fmt::Display for Sublocale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(f, "{{")?;
        for (i, a) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.frame.label(a))?;
        }
        write!(f, "}}")
    }
}

/// A sublocale re-indexed as a standalone frame.
#[derive(Clone, Debug)]
pub struct SublocaleFrame {
    pub frame: FiniteFrame,
    /// local id → ambient id
    pub embedding: Vec<Elem>,
    position: Vec<Option<usize>>,
}

impl SublocaleFrame {
    pub fn to_ambient(&self, local: Elem) -> Elem {
        self.embedding[local]
    }

    pub fn to_local(&self, ambient: Elem) -> Option<Elem> {
        self.position[ambient]
    }

    /// Re-indexes a set of ambient ids lying inside the sublocale.
    pub fn localize(&self, ambient: &ElementSet) -> Option<ElementSet> {
        let mut out = ElementSet::empty(self.frame.size());
        for a in ambient.iter() {
            out.insert(self.to_local(a)?);
        }
        Some(out)
    }

    pub fn globalize(&self, local: &ElementSet, ambient_size: usize) -> ElementSet {
        ElementSet::from_ids(ambient_size, local.iter().map(|i| self.embedding[i]))
    }
}

pub fn validate_members(frame: &FiniteFrame, members: &ElementSet) -> Result<(), SublocaleError> {
    if members.universe() != frame.size() {
        return Err(SublocaleError::WrongUniverse {
            expected: frame.size(),
            got: members.universe(),
        });
    }
    if !members.contains(frame.top()) {
        return Err(SublocaleError::MissingTop);
    }
    let list = members.to_vec();
    for (i, &a) in list.iter().enumerate() {
        for &b in &list[i + 1..] {
            let meet = frame.meet(a, b);
            if !members.contains(meet) {
                return Err(SublocaleError::NotMeetClosed { a, b, meet });
            }
        }
    }
    for a in frame.elements() {
        for &s in &list {
            let arrow = frame.heyting(a, s);
            if !members.contains(arrow) {
                return Err(SublocaleError::NotHeytingClosed { a, s, arrow });
            }
        }
    }
    Ok(())
}

/// Closes `set ∪ {1}` under binary meets.
pub fn meet_closure(frame: &FiniteFrame, set: &ElementSet) -> ElementSet {
    let mut members = set.clone();
    members.insert(frame.top());
    let mut list = members.to_vec();
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for j in 0..i {
            let m = frame.meet(x, list[j]);
            if members.insert(m) {
                list.push(m);
            }
        }
        i += 1;
    }
    members
}

/// `{a → x | a ∈ L, x ∈ set}`
fn heyting_closure(frame: &FiniteFrame, set: &ElementSet) -> ElementSet {
    let mut out = set.clone();
    for x in set.iter() {
        for a in frame.elements() {
            out.insert(frame.heyting(a, x));
        }
    }
    out
}

/// The smallest sublocale containing `seed`.
pub fn generate_sublocale(frame: &FiniteFrame, seed: &ElementSet) -> Sublocale {
    let mut current = seed.clone();
    loop {
        let next = meet_closure(frame, &heyting_closure(frame, &current));
        if next == current {
            return Sublocale::from_members_unchecked(frame, current);
        }
        current = next;
    }
}

/// `𝔬(a) = {a → b | b ∈ L}`
pub fn open_sublocale(frame: &FiniteFrame, a: Elem) -> Sublocale {
    let members = ElementSet::from_ids(frame.size(), frame.elements().map(|b| frame.heyting(a, b)));
    Sublocale::from_members_unchecked(frame, members)
}

/// `𝔠(a) = ↑a`
pub fn closed_sublocale(frame: &FiniteFrame, a: Elem) -> Sublocale {
    Sublocale::from_members_unchecked(frame, frame.up_set(a))
}

/// `𝔟(a) = {b → a | b ∈ L}`
pub fn boolean_sublocale(frame: &FiniteFrame, a: Elem) -> Sublocale {
    let members = ElementSet::from_ids(frame.size(), frame.elements().map(|b| frame.heyting(b, a)));
    Sublocale::from_members_unchecked(frame, members)
}

fn join_members(frame: &FiniteFrame, union: &ElementSet) -> ElementSet {
    if mutation::is_active(Mutant::JoinWithoutMeetClosure) {
        let mut out = union.clone();
        out.insert(frame.top());
        return out;
    }
    meet_closure(frame, union)
}

/// `⋁ᵢSᵢ = {⋀A | A ⊆ ⋃ᵢSᵢ}`; the empty join is `{1}`.
pub fn sublocale_join(frame: &FiniteFrame, parts: &[Sublocale]) -> Result<Sublocale, SublocaleError> {
    let mut union = ElementSet::empty(frame.size());
    for part in parts {
        if !part.frame.same_as(frame) {
            return Err(SublocaleError::MixedFrames);
        }
        union.union_with(&part.members);
    }
    Ok(Sublocale::from_members_unchecked(frame, join_members(frame, &union)))
}

/// `⋂ᵢSᵢ`; the empty meet is `L`.
pub fn sublocale_meet(frame: &FiniteFrame, parts: &[Sublocale]) -> Result<Sublocale, SublocaleError> {
    let mut inter = frame.all();
    for part in parts {
        if !part.frame.same_as(frame) {
            return Err(SublocaleError::MixedFrames);
        }
        inter.intersect_with(&part.members);
    }
    Ok(Sublocale::from_members_unchecked(frame, inter))
}

/// `S ∖ T`, the least `R` with `S ⊆ T ∨ R`.
///
/// Writes `T = ⋂{𝔬(a) ∨ 𝔠(b) ⊇ T}` and returns `⋁ S ∩ 𝔠(a) ∩ 𝔬(b)` over
/// the same pairs, since `𝔠(a) ∩ 𝔬(b)` is the complement of `𝔬(a) ∨ 𝔠(b)`.
pub fn difference(s: &Sublocale, t: &Sublocale) -> Result<Sublocale, SublocaleError> {
    s.check_same_frame(t)?;
    let frame = &s.frame;
    if mutation::is_active(Mutant::DifferenceWithoutDecomposition) {
        let raw = s.members.difference(&t.members);
        return Ok(Sublocale::from_members_unchecked(frame, meet_closure(frame, &raw)));
    }
    let mut union = ElementSet::empty(frame.size());
    for (join, piece) in frame.complemented_pairs() {
        if t.members.is_subset(join) {
            union.union_with(&s.members.intersection(piece));
        }
    }
    Ok(Sublocale::from_members_unchecked(frame, join_members(frame, &union)))
}

/// `S# = L ∖ S`
pub fn supplement(s: &Sublocale) -> Sublocale {
    difference(&Sublocale::whole(&s.frame), s).expect("same frame")
}

/// The complement of `S` in `S(L)`, if there is one. When it exists it is
/// the supplement.
pub fn complement_of(s: &Sublocale) -> Result<Sublocale, SublocaleError> {
    let candidate = supplement(s);
    let meet = s.meet(&candidate)?;
    let join = s.join(&candidate)?;
    if meet.is_zero() && join.is_whole() {
        Ok(candidate)
    } else {
        Err(SublocaleError::NotComplemented)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NucleusError {
    #[error("table has {got} entries, frame has {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("entry {0} is not a frame element")]
    OutOfRange(Elem),
    #[error("not inflationary at {0}")]
    NotInflationary(Elem),
    #[error("not idempotent at {0}")]
    NotIdempotent(Elem),
    #[error("does not preserve the meet of {0} and {1}")]
    NotMeetPreserving(Elem, Elem),
}

/// An inflationary, idempotent, binary-meet-preserving self-map of a frame.
#[derive(Clone)]
pub struct Nucleus {
    frame: FiniteFrame,
    image: Vec<Elem>,
}

impl Nucleus {
    pub fn new(frame: &FiniteFrame, image: Vec<Elem>) -> Result<Self, NucleusError> {
        if image.len() != frame.size() {
            return Err(NucleusError::WrongLength {
                expected: frame.size(),
                got: image.len(),
            });
        }
        if let Some(&bad) = image.iter().find(|&&x| x >= frame.size()) {
            return Err(NucleusError::OutOfRange(bad));
        }
        for a in frame.elements() {
            if !frame.leq(a, image[a]) {
                return Err(NucleusError::NotInflationary(a));
            }
            if image[image[a]] != image[a] {
                return Err(NucleusError::NotIdempotent(a));
            }
            for b in a + 1..frame.size() {
                if image[frame.meet(a, b)] != frame.meet(image[a], image[b]) {
                    return Err(NucleusError::NotMeetPreserving(a, b));
                }
            }
        }
        Ok(Self {
            frame: frame.clone(),
            image,
        })
    }

    pub fn identity(frame: &FiniteFrame) -> Self {
        Self {
            frame: frame.clone(),
            image: frame.elements().collect(),
        }
    }

    pub fn constant_top(frame: &FiniteFrame) -> Self {
        Self {
            frame: frame.clone(),
            image: vec![frame.top(); frame.size()],
        }
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.image
    }

    /// The image `ν[L]`.
    pub fn sublocale(&self) -> Sublocale {
        Sublocale::from_members_unchecked(
            &self.frame,
            ElementSet::from_ids(self.frame.size(), self.image.iter().copied()),
        )
    }
}

impl fmt::Debug for Nucleus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Nucleus").field(&self.image).finish()
    }
}

pub fn nucleus_to_sublocale(nucleus: &Nucleus) -> Sublocale {
    nucleus.sublocale()
}

pub fn sublocale_to_nucleus(s: &Sublocale) -> Nucleus {
    s.nucleus()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::verify_frame;

    fn chain3() -> FiniteFrame {
        FiniteFrame::chain(3)
    }

    fn square() -> FiniteFrame {
        verify_frame(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn set(f: &FiniteFrame, ids: &[Elem]) -> ElementSet {
        ElementSet::from_ids(f.size(), ids.iter().copied())
    }

    fn sub(f: &FiniteFrame, ids: &[Elem]) -> Sublocale {
        Sublocale::new(f, set(f, ids)).unwrap()
    }

    #[test]
    fn validation_reports_the_failed_condition() {
        let f = chain3();
        assert_eq!(
            Sublocale::new(&f, set(&f, &[0])).unwrap_err(),
            SublocaleError::MissingTop
        );
        let b = square();
        // {p, q, 1} misses p ∧ q = 0
        assert!(matches!(
            Sublocale::new(&b, set(&b, &[1, 2, 3])),
            Err(SublocaleError::NotMeetClosed { a: 1, b: 2, meet: 0 })
        ));
        // {a, 1} in the 5-chain 0<1<2<3<4 with a=2: 3 → 2 = 2, 1 → 2 = 4 ... all fine; use {1,4}
        // in the square: {0, 1}? 1 missing top -> use {0, 3}: p → 0 = q missing
        assert!(matches!(
            Sublocale::new(&b, set(&b, &[0, 3])),
            Err(SublocaleError::NotHeytingClosed { .. })
        ));
    }

    #[test]
    fn nucleus_examples() {
        let f = chain3();
        assert!(Nucleus::identity(&f).sublocale().is_whole());
        assert!(Nucleus::constant_top(&f).sublocale().is_zero());
        let s = sub(&f, &[0, 2]);
        let nu = s.nucleus();
        assert_eq!(nu.apply(1), 2);
        assert_eq!(nu.apply(0), 0);
        assert_eq!(nucleus_to_sublocale(&nu), s);
        assert!(Nucleus::new(&f, nu.table().to_vec()).is_ok());
    }

    #[test]
    fn nucleus_rejections() {
        let f = chain3();
        assert_eq!(
            Nucleus::new(&f, vec![0, 0, 2]).unwrap_err(),
            NucleusError::NotInflationary(1)
        );
        assert!(matches!(
            Nucleus::new(&f, vec![0, 1]),
            Err(NucleusError::WrongLength { .. })
        ));
        // 0 ↦ 1 ↦ 2 is inflationary but not idempotent
        assert_eq!(
            Nucleus::new(&f, vec![1, 2, 2]).unwrap_err(),
            NucleusError::NotIdempotent(0)
        );
        let b = square();
        // p ↦ 1, q ↦ q, 0 ↦ 0: ν(p ∧ q) = 0 but ν(p) ∧ ν(q) = q
        assert_eq!(
            Nucleus::new(&b, vec![0, 3, 2, 3]).unwrap_err(),
            NucleusError::NotMeetPreserving(1, 2)
        );
    }

    #[test]
    fn generation_examples() {
        let f = chain3();
        assert!(generate_sublocale(&f, &set(&f, &[])).is_zero());
        assert_eq!(generate_sublocale(&f, &set(&f, &[0])).members().to_vec(), vec![0, 2]);
        assert!(generate_sublocale(&f, &f.all()).is_whole());
    }

    #[test]
    fn open_closed_boolean_examples() {
        let f = chain3();
        assert_eq!(open_sublocale(&f, 1).members().to_vec(), vec![0, 2]);
        assert!(closed_sublocale(&f, 0).is_whole());
        assert!(closed_sublocale(&f, 2).is_zero());
        assert_eq!(boolean_sublocale(&f, 0).members().to_vec(), vec![0, 2]);
        assert_eq!(boolean_sublocale(&f, 1).members().to_vec(), vec![1, 2]);
        for a in f.elements() {
            for s in [open_sublocale(&f, a), closed_sublocale(&f, a), boolean_sublocale(&f, a)] {
                validate_members(&f, s.members()).unwrap();
            }
            assert!(boolean_sublocale(&f, a).to_frame().frame.is_boolean());
        }
    }

    #[test]
    fn join_and_meet_examples() {
        let f = chain3();
        let s = sub(&f, &[0, 2]);
        let t = sub(&f, &[1, 2]);
        assert!(s.join(&t).unwrap().is_whole());
        assert_eq!(s.join(&Sublocale::zero(&f)).unwrap(), s);
        assert!(sublocale_meet(&f, &[]).unwrap().is_whole());
        assert!(sublocale_join(&f, &[]).unwrap().is_zero());
        let other = chain3();
        assert_eq!(
            sublocale_join(&f, &[s.clone(), Sublocale::whole(&other)]).unwrap_err(),
            SublocaleError::MixedFrames
        );
        assert_eq!(s.meet(&Sublocale::whole(&other)).unwrap_err(), SublocaleError::MixedFrames);
    }

    #[test]
    fn closure_density_codensity() {
        let f = chain3();
        for a in f.elements() {
            assert!(boolean_sublocale(&f, f.bottom()).is_dense());
            let _ = a;
        }
        let t = sub(&f, &[1, 2]);
        assert_eq!(t.closure(), t);
        assert!(t.is_closed());
        let whole = Sublocale::whole(&f);
        assert!(whole.is_dense() && whole.is_codense());
        // {0, 1} is dense; ν(a) = 1 with a ≠ 1, so not codense
        let s = sub(&f, &[0, 2]);
        assert!(s.is_dense() && !s.is_codense());
    }

    #[test]
    fn difference_examples() {
        let f = chain3();
        let closed_a = closed_sublocale(&f, 1);
        let open_a = open_sublocale(&f, 1);
        assert_eq!(complement_of(&closed_a).unwrap(), open_a);
        assert_eq!(complement_of(&open_a).unwrap(), closed_a);
        let whole = Sublocale::whole(&f);
        assert!(difference(&closed_a, &whole).unwrap().is_zero());
        assert_eq!(difference(&whole, &closed_a).unwrap(), open_a);
        assert_eq!(supplement(&Sublocale::zero(&f)), whole);
    }

    #[test]
    fn sublocale_frame_embedding() {
        let b = square();
        let s = boolean_sublocale(&b, 1);
        let sf = s.to_frame();
        assert_eq!(sf.frame.size(), 2);
        assert_eq!(sf.embedding, vec![1, 3]);
        assert_eq!(sf.to_local(3), Some(1));
        assert_eq!(sf.to_local(0), None);
        let local = sf.localize(s.members()).unwrap();
        assert_eq!(sf.globalize(&local, 4), *s.members());
    }

    #[test]
    fn display_uses_zero_for_the_bottom() {
        let f = chain3();
        assert_eq!(Sublocale::zero(&f).to_string(), "0");
        assert_eq!(sub(&f, &[1, 2]).to_string(), "{1,2}");
    }
}
