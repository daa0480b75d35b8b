//! Finite topological spaces, their frames of opens, spectra of frames, and
//! the subspace-to-sublocale map `Ω′`.

use itertools::Itertools;
use thiserror::Error;

use crate::element_set::ElementSet;
use crate::lattice::{Elem, FiniteFrame};
use crate::sublocale::{Nucleus, Sublocale};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("open set has universe {got}, space has {expected} points")]
    WrongUniverse { expected: usize, got: usize },
    #[error("the empty set is not open")]
    MissingEmpty,
    #[error("the whole space is not open")]
    MissingWhole,
    #[error("union of {0} and {1} is not open")]
    NotUnionClosed(ElementSet, ElementSet),
    #[error("intersection of {0} and {1} is not open")]
    NotIntersectionClosed(ElementSet, ElementSet),
}

/// A topology on the points `0..points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    points: usize,
    /// sorted by size, then lexicographically; `opens[0]` is `∅`
    opens: Vec<ElementSet>,
}

fn sort_opens(opens: &mut Vec<ElementSet>) {
    opens.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    opens.dedup();
}

impl FiniteSpace {
    /// Rejects families that are not topologies; nothing is repaired.
    pub fn new(points: usize, opens: Vec<ElementSet>) -> Result<Self, SpaceError> {
        let mut opens = opens;
        if let Some(bad) = opens.iter().find(|u| u.universe() != points) {
            return Err(SpaceError::WrongUniverse {
                expected: points,
                got: bad.universe(),
            });
        }
        sort_opens(&mut opens);
        if !opens.contains(&ElementSet::empty(points)) {
            return Err(SpaceError::MissingEmpty);
        }
        if !opens.contains(&ElementSet::full(points)) {
            return Err(SpaceError::MissingWhole);
        }
        for (i, u) in opens.iter().enumerate() {
            for v in &opens[i + 1..] {
                if !opens.contains(&u.union(v)) {
                    return Err(SpaceError::NotUnionClosed(u.clone(), v.clone()));
                }
                if !opens.contains(&u.intersection(v)) {
                    return Err(SpaceError::NotIntersectionClosed(u.clone(), v.clone()));
                }
            }
        }
        Ok(Self { points, opens })
    }

    /// The topology generated by a subbasis.
    pub fn generated_by(points: usize, subbasis: &[ElementSet]) -> Self {
        let mut family = vec![ElementSet::empty(points), ElementSet::full(points)];
        family.extend(subbasis.iter().cloned());
        sort_opens(&mut family);
        for op in [ElementSet::intersection, ElementSet::union] {
            loop {
                let mut added = false;
                let snapshot = family.clone();
                for (i, u) in snapshot.iter().enumerate() {
                    for v in &snapshot[i + 1..] {
                        let w = op(u, v);
                        if !family.contains(&w) {
                            family.push(w);
                            added = true;
                        }
                    }
                }
                if !added {
                    break;
                }
            }
            sort_opens(&mut family);
        }
        Self::new(points, family).expect("generated family is a topology")
    }

    pub fn discrete(points: usize) -> Self {
        let singletons: Vec<_> = (0..points).map(|x| ElementSet::from_ids(points, [x])).collect();
        Self::generated_by(points, &singletons)
    }

    pub fn indiscrete(points: usize) -> Self {
        Self::generated_by(points, &[])
    }

    /// Two points; `1` is open, `0` is closed.
    pub fn sierpinski() -> Self {
        Self::generated_by(2, &[ElementSet::from_ids(2, [1])])
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn opens(&self) -> &[ElementSet] {
        &self.opens
    }

    pub fn is_open(&self, set: &ElementSet) -> bool {
        self.opens.contains(set)
    }

    /// The smallest open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> ElementSet {
        let mut out = ElementSet::full(self.points);
        for u in self.opens.iter().filter(|u| u.contains(x)) {
            out.intersect_with(u);
        }
        out
    }

    /// `cl{x}`
    pub fn point_closure(&self, x: usize) -> ElementSet {
        ElementSet::from_ids(
            self.points,
            (0..self.points).filter(|&y| self.neighbourhood(y).contains(x)),
        )
    }

    /// Specialization preorder: `x ≤ y` iff `x ∈ cl{y}`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.neighbourhood(x).contains(y)
    }

    pub fn is_t0(&self) -> bool {
        (0..self.points)
            .tuple_combinations()
            .all(|(x, y)| self.neighbourhood(x) != self.neighbourhood(y))
    }

    /// Every point has a neighbourhood `U` with `U ∖ {x}` open. The smallest
    /// neighbourhood is the one to test.
    pub fn is_td(&self) -> bool {
        (0..self.points).all(|x| {
            let mut u = self.neighbourhood(x);
            u.remove(x);
            self.is_open(&u)
        })
    }

    /// Every prime open is `X ∖ cl{x}` for exactly one point `x`.
    pub fn is_sober(&self) -> bool {
        let om = omega(self);
        om.frame.primes().iter().all(|p| {
            let open = &om.opens[p];
            (0..self.points)
                .filter(|&x| ElementSet::full(self.points).difference(&self.point_closure(x)) == *open)
                .count()
                == 1
        })
    }

    /// Every nonempty subset has a point isolated in it.
    pub fn is_scattered(&self) -> bool {
        let n = self.points;
        assert!(n <= 16, "scatteredness scan limited to 16 points");
        (1u32..(1 << n)).all(|mask| {
            let a = ElementSet::from_ids(n, (0..n).filter(|i| mask >> i & 1 == 1));
            let isolated = a.iter().any(|x| self.neighbourhood(x).intersection(&a).len() == 1);
            isolated
        })
    }

    pub fn is_discrete(&self) -> bool {
        self.opens.len() == 1 << self.points
    }

    /// The topology generated by the opens and their complements.
    pub fn skula(&self) -> Self {
        let full = ElementSet::full(self.points);
        let mut subbasis = self.opens.clone();
        subbasis.extend(self.opens.iter().map(|u| full.difference(u)));
        Self::generated_by(self.points, &subbasis)
    }
}

/// `Ω(X)` with the element ↔ open correspondence.
#[derive(Clone, Debug)]
pub struct OmegaFrame {
    pub frame: FiniteFrame,
    /// element id → open set
    pub opens: Vec<ElementSet>,
}

impl OmegaFrame {
    pub fn element_of(&self, open: &ElementSet) -> Option<Elem> {
        self.opens.iter().position(|u| u == open)
    }
}

pub fn omega(space: &FiniteSpace) -> OmegaFrame {
    let opens = space.opens.clone();
    let frame = FiniteFrame::from_order(opens.len(), |i, j| opens[i].is_subset(&opens[j]))
        .expect("open sets of a space form a frame");
    OmegaFrame { frame, opens }
}

/// A spectrum with the point ↔ prime correspondence.
#[derive(Clone, Debug)]
pub struct SpectrumSpace {
    pub space: FiniteSpace,
    /// point id → prime element
    pub primes: Vec<Elem>,
}

fn spectrum_on(frame: &FiniteFrame, points: &ElementSet) -> SpectrumSpace {
    let primes = points.to_vec();
    let n = primes.len();
    let opens = frame
        .elements()
        .map(|a| ElementSet::from_ids(n, (0..n).filter(|&i| !frame.leq(a, primes[i]))))
        .collect();
    SpectrumSpace {
        space: FiniteSpace::new(n, opens).expect("Σ-sets form a topology"),
        primes,
    }
}

/// `(pt(L), {Σ_a})`
pub fn spectrum(frame: &FiniteFrame) -> SpectrumSpace {
    spectrum_on(frame, &frame.primes())
}

/// `(pt_D(L), {Σ′_a})`
pub fn spectrum_td(frame: &FiniteFrame) -> SpectrumSpace {
    spectrum_on(frame, &frame.covered_primes())
}

/// Whether `a ↦ Σ_a` (over the given spectrum) is an order isomorphism onto
/// the opens, i.e. the spatialization surjection is injective.
pub fn spatialization_is_iso(frame: &FiniteFrame, spec: &SpectrumSpace) -> bool {
    let n = spec.primes.len();
    let sigma = |a: Elem| ElementSet::from_ids(n, (0..n).filter(|&i| !frame.leq(a, spec.primes[i])));
    frame.elements().all(|a| {
        frame
            .elements()
            .all(|b| frame.leq(a, b) == sigma(a).is_subset(&sigma(b)))
    })
}

/// The sublocale of `Ω(X)` induced by the subspace `a`: the image of
/// `U ↦ ⋃{V open | V ∩ A = U ∩ A}`.
pub fn omega_prime(om: &OmegaFrame, a: &ElementSet) -> Sublocale {
    let table: Vec<Elem> = om
        .opens
        .iter()
        .map(|u| {
            let trace = u.intersection(a);
            let mut big = ElementSet::empty(a.universe());
            for v in om.opens.iter().filter(|v| v.intersection(a) == trace) {
                big.union_with(v);
            }
            om.element_of(&big).expect("unions of opens are open")
        })
        .collect();
    Nucleus::new(&om.frame, table)
        .expect("subspace restriction is a nucleus")
        .sublocale()
}

/// A point bijection `σ` with `U` open in `x` iff `σ[U]` open in `y`.
pub fn homeomorphism(x: &FiniteSpace, y: &FiniteSpace) -> Option<Vec<usize>> {
    if x.points != y.points || x.opens.len() != y.opens.len() {
        return None;
    }
    assert!(x.points <= 8, "homeomorphism search limited to 8 points");
    (0..x.points).permutations(x.points).find(|perm| {
        x.opens
            .iter()
            .all(|u| y.is_open(&ElementSet::from_ids(y.points, u.iter().map(|i| perm[i]))))
    })
}

/// Every topology on `n ≤ 4` points.
pub fn all_topologies(n: usize) -> Vec<FiniteSpace> {
    assert!(n <= 4, "topology enumeration limited to 4 points");
    let subsets: Vec<ElementSet> = (0u32..(1 << n))
        .map(|m| ElementSet::from_ids(n, (0..n).filter(|i| m >> i & 1 == 1)))
        .collect();
    // ∅ and X are mandatory; the remaining subsets are free
    let free: Vec<&ElementSet> = subsets.iter().skip(1).take(subsets.len().saturating_sub(2)).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut family = vec![ElementSet::empty(n), ElementSet::full(n)];
        family.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| (*s).clone()));
        if let Ok(space) = FiniteSpace::new(n, family) {
            out.push(space);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::verify_frame;

    #[test]
    fn rejects_non_topologies() {
        let x = |ids: &[usize]| ElementSet::from_ids(3, ids.iter().copied());
        assert_eq!(
            FiniteSpace::new(3, vec![x(&[0, 1, 2])]).unwrap_err(),
            SpaceError::MissingEmpty
        );
        assert!(matches!(
            FiniteSpace::new(3, vec![x(&[]), x(&[0]), x(&[1]), x(&[0, 1, 2])]),
            Err(SpaceError::NotUnionClosed(..))
        ));
        assert!(matches!(
            FiniteSpace::new(3, vec![x(&[]), x(&[0, 1]), x(&[1, 2]), x(&[0, 1, 2])]),
            Err(SpaceError::NotUnionClosed(..)) | Err(SpaceError::NotIntersectionClosed(..))
        ));
    }

    #[test]
    fn omega_examples() {
        let s = omega(&FiniteSpace::sierpinski()).frame;
        assert_eq!(s.size(), 3);
        assert_eq!(s.primes().len(), 2);
        let d = omega(&FiniteSpace::discrete(2)).frame;
        assert!(d.is_boolean() && d.size() == 4);
        assert_eq!(omega(&FiniteSpace::discrete(1)).frame.size(), 2);
    }

    #[test]
    fn spectrum_examples() {
        let chain = FiniteFrame::chain(3);
        let sp = spectrum(&chain);
        assert!(homeomorphism(&sp.space, &FiniteSpace::sierpinski()).is_some());
        let square = verify_frame(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(spectrum(&square).space.is_discrete());
        assert_eq!(spectrum(&FiniteFrame::chain(1)).space.points(), 0);
        assert!(sp.space.is_sober());
        assert!(spectrum_td(&chain).space.is_td());
        assert!(spatialization_is_iso(&chain, &sp));
    }

    #[test]
    fn separation_axioms() {
        let s = FiniteSpace::sierpinski();
        assert!(s.is_t0() && s.is_td() && s.is_sober());
        let i = FiniteSpace::indiscrete(2);
        assert!(!i.is_t0() && !i.is_td() && !i.is_sober());
        assert!(s.skula().is_discrete());
        assert!(!i.skula().is_discrete());
        assert!(s.is_scattered());
        assert!(!i.is_scattered());
    }

    #[test]
    fn omega_prime_examples() {
        let s = FiniteSpace::sierpinski();
        let om = omega(&s);
        assert!(omega_prime(&om, &ElementSet::full(2)).is_whole());
        assert!(omega_prime(&om, &ElementSet::empty(2)).is_zero());
        // the closed point 0: its prime is the open {1}
        let sub = omega_prime(&om, &ElementSet::from_ids(2, [0]));
        let p = om.element_of(&ElementSet::from_ids(2, [1])).unwrap();
        assert_eq!(sub, crate::sublocale::boolean_sublocale(&om.frame, p));
    }

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| all_topologies(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }
}
