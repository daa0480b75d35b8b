//! Finite lattices and finite frames.
//!
//! Elements are dense identifiers `0..size`. A [`FiniteLattice`] is built
//! from a generating order relation (usually the cover relation), closed
//! reflexively and transitively, then checked for antisymmetry and for the
//! existence of all binary meets and joins. A [`FiniteFrame`] is a lattice
//! that additionally passed the distributivity scan; for finite lattices
//! binary distributivity already gives the infinite law
//! `a ∧ ⋁B = ⋁{a ∧ b | b ∈ B}`.
//!
//! All tables (order, meet, join, Heyting arrow) are computed once at
//! construction. Frames are immutable and cheap to clone.

use std::fmt;
use std::ops::{Deref, Range};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::element_set::ElementSet;
use crate::mutation::{self, Mutant};

/// Identifier of an element of a finite lattice.
pub type Elem = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Meet => f.write_str("meet"),
            BoundKind::Join => f.write_str("join"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("a frame needs at least one element")]
    Empty,
    #[error("relation mentions element {id}, but only {size} elements are declared")]
    UnknownElement { id: usize, size: usize },
    #[error("not a poset: {a} ≤ {b} and {b} ≤ {a} for distinct elements")]
    NonPoset { a: Elem, b: Elem },
    #[error("not a lattice: {a} and {b} have no {kind}")]
    NonLattice { a: Elem, b: Elem, kind: BoundKind },
    #[error("not distributive: {a} ∧ ({b} ∨ {c}) ≠ ({a} ∧ {b}) ∨ ({a} ∧ {c})")]
    NonDistributive { a: Elem, b: Elem, c: Elem },
}

/// A validated finite lattice, not necessarily distributive.
#[derive(Clone)]
pub struct FiniteLattice {
    size: usize,
    // up[a] = { b : a ≤ b }, down[a] = { b : b ≤ a }
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    meet: Vec<u32>,
    join: Vec<u32>,
    top: Elem,
    bottom: Elem,
}

impl FiniteLattice {
    /// Builds the lattice generated by `pairs` (each `(i, j)` read as `i ≤ j`).
    pub fn from_relation(size: usize, pairs: &[(Elem, Elem)]) -> Result<Self, FrameError> {
        if size == 0 {
            return Err(FrameError::Empty);
        }
        let mut up: Vec<FixedBitSet> = (0..size)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(size);
                row.insert(i);
                row
            })
            .collect();
        for &(i, j) in pairs {
            for id in [i, j] {
                if id >= size {
                    return Err(FrameError::UnknownElement { id, size });
                }
            }
            up[i].insert(j);
        }
        // Warshall closure, one pivot at a time.
        for k in 0..size {
            let pivot = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&pivot);
                }
            }
        }
        Self::from_closed_order(up)
    }

    /// Builds the lattice whose order is the reflexive-transitive closure of `leq`.
    pub fn from_order<F: Fn(Elem, Elem) -> bool>(size: usize, leq: F) -> Result<Self, FrameError> {
        let mut pairs = Vec::new();
        for i in 0..size {
            for j in 0..size {
                if i != j && leq(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        Self::from_relation(size, &pairs)
    }

    fn from_closed_order(up: Vec<FixedBitSet>) -> Result<Self, FrameError> {
        let size = up.len();
        let mut down: Vec<FixedBitSet> = (0..size).map(|_| FixedBitSet::with_capacity(size)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                if j != i && up[j].contains(i) {
                    return Err(FrameError::NonPoset { a: i.min(j), b: i.max(j) });
                }
                down[j].insert(i);
            }
        }

        let mut meet = vec![0u32; size * size];
        let mut join = vec![0u32; size * size];
        for a in 0..size {
            for b in a..size {
                let m = Self::extremal(&down, a, b).ok_or(FrameError::NonLattice {
                    a,
                    b,
                    kind: BoundKind::Meet,
                })?;
                let j = Self::extremal(&up, a, b).ok_or(FrameError::NonLattice {
                    a,
                    b,
                    kind: BoundKind::Join,
                })?;
                meet[a * size + b] = m as u32;
                meet[b * size + a] = m as u32;
                join[a * size + b] = j as u32;
                join[b * size + a] = j as u32;
            }
        }
        let top = (0..size).find(|&t| down[t].count_ones(..) == size).ok_or(
            FrameError::NonLattice {
                a: 0,
                b: 0,
                kind: BoundKind::Join,
            },
        )?;
        let bottom = (0..size).find(|&t| up[t].count_ones(..) == size).ok_or(
            FrameError::NonLattice {
                a: 0,
                b: 0,
                kind: BoundKind::Meet,
            },
        )?;
        Ok(Self {
            size,
            up,
            down,
            meet,
            join,
            top,
            bottom,
        })
    }

    // The element of toward[a] ∩ toward[b] whose own cone contains all of it:
    // the greatest lower bound when `toward` is `down`, the least upper bound
    // when it is `up`.
    fn extremal(toward: &[FixedBitSet], a: Elem, b: Elem) -> Option<Elem> {
        let mut common = toward[a].clone();
        common.intersect_with(&toward[b]);
        common.ones().find(|&c| common.is_subset(&toward[c]))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> Range<Elem> {
        0..self.size
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size + b] as Elem
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size + b] as Elem
    }

    /// Meet of a finite family; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a finite family; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `↑a`
    pub fn up_set(&self, a: Elem) -> ElementSet {
        ElementSet::from_bits(self.up[a].clone())
    }

    /// `↓a`
    pub fn down_set(&self, a: Elem) -> ElementSet {
        ElementSet::from_bits(self.down[a].clone())
    }

    /// Elements strictly above `a` with nothing in between.
    pub fn upper_covers(&self, a: Elem) -> Vec<Elem> {
        self.up[a]
            .ones()
            .filter(|&b| b != a)
            .filter(|&b| !self.up[a].ones().any(|c| c != a && c != b && self.leq(c, b)))
            .collect()
    }

    /// The Hasse diagram as `(lower, upper)` pairs, sorted.
    pub fn cover_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut pairs: Vec<(Elem, Elem)> = self
            .elements()
            .flat_map(|a| self.upper_covers(a).into_iter().map(move |b| (a, b)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// First triple violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
    pub fn binary_distributivity_violation(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in b + 1..self.size {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First `(a, B)` violating `a ∧ ⋁B = ⋁{a ∧ b | b ∈ B}`, scanning every
    /// subset `B`. Exponential in the size; meant for small lattices.
    pub fn subset_distributivity_violation(&self) -> Option<(Elem, ElementSet)> {
        assert!(self.size <= 20, "subset scan is exponential; refusing size {}", self.size);
        for mask in 0u64..(1u64 << self.size) {
            let family: Vec<Elem> = (0..self.size).filter(|i| mask >> i & 1 == 1).collect();
            let sup = self.join_all(family.iter().copied());
            for a in self.elements() {
                let lhs = self.meet(a, sup);
                let rhs = self.join_all(family.iter().map(|&b| self.meet(a, b)));
                if lhs != rhs {
                    return Some((a, ElementSet::from_ids(self.size, family)));
                }
            }
        }
        None
    }
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("size", &self.size)
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

struct FrameData {
    lattice: FiniteLattice,
    heyting: Vec<u32>,
    labels: Vec<Option<String>>,
    /// `(𝔬(a) ∨ 𝔠(b), 𝔠(a) ∩ 𝔬(b))` for all distinct pairs, filled on demand.
    complemented: OnceLock<Vec<(ElementSet, ElementSet)>>,
}

/// A finite frame (equivalently, a finite distributive lattice).
///
/// Clones share the same tables; two frames are "the same frame" for
/// sublocale purposes only when they share storage (see [`FiniteFrame::same_as`]).
#[derive(Clone)]
pub struct FiniteFrame {
    data: Arc<FrameData>,
}

/// Validates a generating order on `size` elements as a frame.
///
/// `covers` holds pairs `(i, j)` meaning `i ≤ j` (normally `j` covers `i`).
pub fn verify_frame(size: usize, covers: &[(Elem, Elem)]) -> Result<FiniteFrame, FrameError> {
    FiniteFrame::from_lattice(FiniteLattice::from_relation(size, covers)?)
}

impl FiniteFrame {
    pub fn from_lattice(lattice: FiniteLattice) -> Result<Self, FrameError> {
        if let Some((a, b, c)) = lattice.binary_distributivity_violation() {
            return Err(FrameError::NonDistributive { a, b, c });
        }
        let n = lattice.size;
        let mut heyting = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let arrow = lattice.join_all((0..n).filter(|&c| lattice.leq(lattice.meet(a, c), b)));
                heyting[a * n + b] = arrow as u32;
            }
        }
        Ok(Self {
            data: Arc::new(FrameData {
                lattice,
                heyting,
                labels: vec![None; n],
                complemented: OnceLock::new(),
            }),
        })
    }

    pub fn from_covers(size: usize, covers: &[(Elem, Elem)]) -> Result<Self, FrameError> {
        verify_frame(size, covers)
    }

    pub fn from_order<F: Fn(Elem, Elem) -> bool>(size: usize, leq: F) -> Result<Self, FrameError> {
        Self::from_lattice(FiniteLattice::from_order(size, leq)?)
    }

    /// The chain `0 < 1 < … < len-1`.
    pub fn chain(len: usize) -> Self {
        let covers: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        verify_frame(len, &covers).expect("chains are frames")
    }

    /// Returns a copy carrying display labels. Missing entries fall back to ids.
    pub fn with_labels(&self, labels: Vec<Option<String>>) -> Self {
        let mut labels = labels;
        labels.resize(self.size(), None);
        Self {
            data: Arc::new(FrameData {
                lattice: self.data.lattice.clone(),
                heyting: self.data.heyting.clone(),
                labels,
                complemented: OnceLock::new(),
            }),
        }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.data.lattice
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.data.labels
    }

    pub fn label(&self, a: Elem) -> String {
        self.data.labels[a].clone().unwrap_or_else(|| a.to_string())
    }

    /// True when both handles share storage.
    pub fn same_as(&self, other: &FiniteFrame) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    /// `a → b`: the largest `c` with `a ∧ c ≤ b`.
    pub fn heyting(&self, a: Elem, b: Elem) -> Elem {
        self.data.heyting[a * self.size() + b] as Elem
    }

    /// `a* = a → 0`
    pub fn pseudocomplement(&self, a: Elem) -> Elem {
        self.heyting(a, self.bottom())
    }

    /// Every complemented sublocale `𝔬(a) ∨ 𝔠(b)` with its complement
    /// `𝔠(a) ∩ 𝔬(b)`, deduplicated.
    pub(crate) fn complemented_pairs(&self) -> &[(ElementSet, ElementSet)] {
        self.data.complemented.get_or_init(|| {
            let n = self.size();
            let mut pairs = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    let mut join = ElementSet::empty(n);
                    let mut piece = ElementSet::empty(n);
                    for x in 0..n {
                        let hx = self.heyting(a, x);
                        if self.meet(hx, self.join(b, x)) == x {
                            join.insert(x);
                        }
                        if self.leq(a, x) && self.heyting(b, x) == x {
                            piece.insert(x);
                        }
                    }
                    pairs.push((join, piece));
                }
            }
            pairs.sort();
            pairs.dedup();
            pairs
        })
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.size())
    }

    /// Elements `p ≠ 1` such that `p = x ∧ y` forces `p ∈ {x, y}`.
    pub fn primes(&self) -> ElementSet {
        let n = self.size();
        let mut reducible = FixedBitSet::with_capacity(n);
        reducible.insert(self.top());
        for x in 0..n {
            for y in x + 1..n {
                let m = self.meet(x, y);
                if m != x && m != y {
                    reducible.insert(m);
                }
            }
        }
        reducible.toggle_range(..);
        ElementSet::from_bits(reducible)
    }

    pub fn is_prime(&self, p: Elem) -> bool {
        self.primes().contains(p)
    }

    /// Primes `p` with `⋀{x | x > p} > p`; in a finite frame these are the
    /// completely meet-irreducible elements.
    pub fn covered_primes(&self) -> ElementSet {
        let mut covered = self.primes();
        for p in covered.clone().iter() {
            let above = self.meet_all(self.up_set(p).iter().filter(|&x| x != p));
            if above == p {
                covered.remove(p);
            }
        }
        if mutation::is_active(Mutant::CoveredPrimeUnderreport) {
            if let Some(first) = covered.first() {
                covered.remove(first);
            }
        }
        covered
    }

    /// For all `a ≰ b` there is `c` with `a ∨ c = 1` and `b ∨ c ≠ 1`.
    pub fn is_subfit(&self) -> bool {
        let top = self.top();
        self.elements().all(|a| {
            self.elements().all(|b| {
                self.leq(a, b)
                    || self
                        .elements()
                        .any(|c| self.join(a, c) == top && self.join(b, c) != top)
            })
        })
    }

    /// Every prime is maximal among the elements below the top.
    pub fn maximal_primes_only(&self) -> bool {
        let top = self.top();
        self.primes()
            .iter()
            .all(|p| !self.elements().any(|x| self.lt(p, x) && x != top))
    }

    /// `a = ⋀{p ∈ points | a ≤ p}` for every element `a`.
    pub fn every_element_meet_of(&self, points: &ElementSet) -> bool {
        self.elements()
            .all(|a| self.meet_all(points.iter().filter(|&p| self.leq(a, p))) == a)
    }

    /// Every element is a meet of primes.
    pub fn is_spatial(&self) -> bool {
        self.every_element_meet_of(&self.primes())
    }

    /// Every element is a meet of covered primes.
    pub fn is_td_spatial(&self) -> bool {
        self.every_element_meet_of(&self.covered_primes())
    }

    /// Every prime is covered.
    pub fn primes_covered(&self) -> bool {
        self.primes() == self.covered_primes()
    }

    /// Spatial with all primes covered.
    pub fn is_strongly_td_spatial(&self) -> bool {
        self.is_spatial() && self.primes_covered()
    }

    /// Every element has a complement.
    pub fn is_boolean(&self) -> bool {
        self.elements().all(|a| {
            let c = self.pseudocomplement(a);
            self.join(a, c) == self.top()
        })
    }

    /// Atoms: covers of the bottom.
    pub fn atoms(&self) -> ElementSet {
        ElementSet::from_ids(self.size(), self.upper_covers(self.bottom()))
    }
}

impl Deref for FiniteFrame {
    type Target = FiniteLattice;

    fn deref(&self) -> &FiniteLattice {
        &self.data.lattice
    }
}

impl fmt::Debug for FiniteFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteFrame")
            .field("size", &self.size())
            .field("covers", &self.cover_pairs())
            .finish()
    }
}
