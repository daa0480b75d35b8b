//! Frames from posets. Every finite distributive lattice is the lattice of
//! downsets of its poset of join-irreducibles, so sampling posets samples
//! all finite frames.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element_set::ElementSet;
use crate::lattice::FiniteFrame;
use crate::topology::{omega, FiniteSpace};

/// A finite partial order, stored as its full `≤` relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
}

impl Poset {
    /// The order generated by the given strict relations `i < j`; `None`
    /// when they contain a cycle.
    pub fn from_relations(n: usize, lt: &[(usize, usize)]) -> Option<Self> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in lt {
            leq[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let antisymmetric = (0..n).tuple_combinations().all(|(i, j)| !(leq[i * n + j] && leq[j * n + i]));
        antisymmetric.then_some(Self { n, leq })
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relations(n, &[]).expect("no relations")
    }

    pub fn chain(n: usize) -> Self {
        let lt: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(n, &lt).expect("acyclic")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    /// All downsets, sorted by size then lexicographically.
    pub fn downsets(&self) -> Vec<ElementSet> {
        let n = self.n;
        assert!(n <= 20, "downset enumeration limited to 20 points");
        let mut out: Vec<ElementSet> = (0u32..(1 << n))
            .filter(|&m| {
                (0..n).all(|j| m >> j & 1 == 0 || (0..n).all(|i| !self.leq(i, j) || m >> i & 1 == 1))
            })
            .map(|m| ElementSet::from_ids(n, (0..n).filter(|i| m >> i & 1 == 1)))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// A canonical relabelling: the lexicographically least `≤` matrix over
    /// all permutations.
    pub fn canonical_form(&self) -> Vec<bool> {
        let n = self.n;
        (0..n)
            .permutations(n)
            .map(|p| {
                let mut m = vec![false; n * n];
                for i in 0..n {
                    for j in 0..n {
                        m[p[i] * n + p[j]] = self.leq(i, j);
                    }
                }
                m
            })
            .min()
            .unwrap_or_default()
    }
}

/// The frame of downsets of `poset`, ordered by inclusion. The empty downset
/// is element 0 and the whole poset is the last element.
pub fn downset_lattice(poset: &Poset) -> FiniteFrame {
    let downsets = poset.downsets();
    FiniteFrame::from_order(downsets.len(), |a, b| downsets[a].is_subset(&downsets[b]))
        .expect("downset lattices are distributive")
}

/// A naturally labelled random poset: each pair `i < j` is related with
/// probability 1/2, then closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> Poset {
    let lt: Vec<_> = (0..n)
        .tuple_combinations()
        .filter(|_| rng.random_bool(0.5))
        .collect();
    Poset::from_relations(n, &lt).expect("natural labelling is acyclic")
}

/// A random frame from a poset of `1..=bound` points.
pub fn random_frame<R: Rng>(rng: &mut R, bound: usize) -> FiniteFrame {
    assert!(bound >= 1, "poset bound must be at least 1");
    let k = rng.random_range(1..=bound);
    downset_lattice(&random_poset(rng, k))
}

/// `count` frames from a fixed seed.
pub fn random_frames(seed: u64, bound: usize, count: usize) -> Vec<FiniteFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_frame(&mut rng, bound)).collect()
}

/// One representative of each isomorphism class of `n`-point posets.
pub fn all_posets_up_to_iso(n: usize) -> Vec<Poset> {
    assert!(n <= 5, "poset enumeration limited to 5 points");
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    // every poset has a natural labelling, so strict relations i < j suffice
    for mask in 0u64..(1 << pairs.len()) {
        let lt: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let poset = Poset::from_relations(n, &lt).expect("acyclic");
        if seen.insert(poset.canonical_form()) {
            out.push(poset);
        }
    }
    out
}

/// Named frames used throughout the tests and the CLI.
pub fn fixtures() -> Vec<(&'static str, FiniteFrame)> {
    let antichain_plus_top = Poset::from_relations(3, &[(0, 2), (1, 2)]).expect("acyclic");
    vec![
        ("2-chain", FiniteFrame::chain(2)),
        ("3-chain", FiniteFrame::chain(3)),
        ("boolean-2x2", downset_lattice(&Poset::antichain(2))),
        ("sierpinski", omega(&FiniteSpace::sierpinski()).frame),
        ("antichain-plus-top", downset_lattice(&antichain_plus_top)),
    ]
}

pub fn fixture(name: &str) -> Option<FiniteFrame> {
    fixtures().into_iter().find(|(n, _)| *n == name).map(|(_, f)| f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn downset_examples() {
        assert_eq!(downset_lattice(&Poset::antichain(0)).size(), 1);
        assert_eq!(downset_lattice(&Poset::chain(1)).size(), 2);
        assert_eq!(downset_lattice(&Poset::chain(3)).size(), 4);
        let square = downset_lattice(&Poset::antichain(2));
        assert!(square.is_boolean() && square.size() == 4);
        assert_eq!(fixture("antichain-plus-top").unwrap().size(), 5);
    }

    #[test]
    fn cycles_rejected() {
        assert!(Poset::from_relations(2, &[(0, 1), (1, 0)]).is_none());
    }

    #[test]
    fn poset_counts() {
        // numbers of unlabelled posets
        let counts: Vec<usize> = (0..=4).map(|n| all_posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let a = random_frames(42, 5, 20);
        let b = random_frames(42, 5, 20);
        assert!(a.iter().zip(&b).all(|(x, y)| x.cover_pairs() == y.cover_pairs()));
        assert!(random_frames(7, 1, 10).iter().all(|f| f.size() == 2));
    }
}
