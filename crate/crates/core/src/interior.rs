//! Interior operators on finite lattices: deflationary, monotone, idempotent
//! self-maps. Their images are exactly the join-closed subsets containing
//! the bottom.

use rand::Rng;
use thiserror::Error;

use crate::element_set::ElementSet;
use crate::lattice::{Elem, FiniteLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InteriorError {
    #[error("table has {got} entries, lattice has {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("value {0} out of range")]
    OutOfRange(Elem),
    #[error("ι({0}) is not below {0}")]
    NotDeflationary(Elem),
    #[error("{0} ≤ {1} but ι({0}) ≰ ι({1})")]
    NotMonotone(Elem, Elem),
    #[error("ι(ι({0})) ≠ ι({0})")]
    NotIdempotent(Elem),
    #[error("image is not closed under joins or misses the bottom")]
    ImageNotJoinClosed,
}

#[derive(Clone)]
pub struct InteriorOperator {
    lattice: FiniteLattice,
    map: Vec<Elem>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InteriorReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl InteriorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Subfamilies of `items` worth checking: all of them when there are at
/// most 12, otherwise those of size ≤ 2.
fn families(items: &[Elem]) -> Vec<Vec<Elem>> {
    if items.len() <= 12 {
        (0u32..(1 << items.len()))
            .map(|m| (0..items.len()).filter(|i| m >> i & 1 == 1).map(|i| items[i]).collect())
            .collect()
    } else {
        let mut out = vec![vec![]];
        for (i, &a) in items.iter().enumerate() {
            out.push(vec![a]);
            out.extend(items[i + 1..].iter().map(|&b| vec![a, b]));
        }
        out
    }
}

impl InteriorOperator {
    pub fn new(lattice: &FiniteLattice, map: Vec<Elem>) -> Result<Self, InteriorError> {
        let n = lattice.size();
        if map.len() != n {
            return Err(InteriorError::WrongLength { expected: n, got: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= n) {
            return Err(InteriorError::OutOfRange(bad));
        }
        for a in lattice.elements() {
            if !lattice.leq(map[a], a) {
                return Err(InteriorError::NotDeflationary(a));
            }
            if map[map[a]] != map[a] {
                return Err(InteriorError::NotIdempotent(a));
            }
            for b in lattice.elements() {
                if lattice.leq(a, b) && !lattice.leq(map[a], map[b]) {
                    return Err(InteriorError::NotMonotone(a, b));
                }
            }
        }
        Ok(Self { lattice: lattice.clone(), map })
    }

    /// `ι(x) = ⋁{y ∈ image : y ≤ x}`.
    pub fn from_image(lattice: &FiniteLattice, image: &ElementSet) -> Result<Self, InteriorError> {
        let closed = image.contains(lattice.bottom())
            && image.iter().all(|a| image.iter().all(|b| image.contains(lattice.join(a, b))));
        if !closed {
            return Err(InteriorError::ImageNotJoinClosed);
        }
        let map = lattice
            .elements()
            .map(|x| lattice.join_all(image.iter().filter(|&y| lattice.leq(y, x))))
            .collect();
        Self::new(lattice, map)
    }

    /// The interior operator whose image is the join-closure of a random
    /// subset together with the bottom.
    pub fn random<R: Rng>(rng: &mut R, lattice: &FiniteLattice) -> Self {
        let mut image = ElementSet::from_ids(
            lattice.size(),
            lattice.elements().filter(|_| rng.random_bool(0.4)),
        );
        image.insert(lattice.bottom());
        loop {
            let snapshot = image.to_vec();
            let mut grew = false;
            for &a in &snapshot {
                for &b in &snapshot {
                    grew |= image.insert(lattice.join(a, b));
                }
            }
            if !grew {
                break;
            }
        }
        Self::from_image(lattice, &image).expect("join-closed with bottom")
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn image(&self) -> ElementSet {
        ElementSet::from_ids(self.lattice.size(), self.map.iter().copied())
    }

    /// Greatest image element below every member of `family`, by scan.
    fn image_glb(&self, family: &[Elem]) -> Option<Elem> {
        let l = &self.lattice;
        let lower: Vec<Elem> = self
            .image()
            .iter()
            .filter(|&y| family.iter().all(|&x| l.leq(y, x)))
            .collect();
        lower.iter().copied().find(|&y| lower.iter().all(|&z| l.leq(z, y)))
    }

    /// Joins in the image are host joins; meets in the image are
    /// `ι(⋀ xᵢ)`.
    pub fn check_interior1(&self) -> InteriorReport {
        let l = &self.lattice;
        let image = self.image().to_vec();
        let mut report = InteriorReport::default();
        for family in families(&image) {
            let join = l.join_all(family.iter().copied());
            report.check(self.image().contains(join), || {
                format!("join of {family:?} leaves the image")
            });
            let meet = self.apply(l.meet_all(family.iter().copied()));
            report.check(self.image_glb(&family) == Some(meet), || {
                format!("image meet of {family:?} is not ι(⋀) = {meet}")
            });
        }
        report
    }

    /// `x ↦ ι(x)` onto the image preserves meets, and preserves finite
    /// joins whenever `ι` does on the host.
    pub fn check_interior2(&self) -> InteriorReport {
        let l = &self.lattice;
        let all: Vec<Elem> = l.elements().collect();
        let mut report = InteriorReport::default();
        let joins_preserved = all.iter().all(|&a| {
            all.iter()
                .all(|&b| self.apply(l.join(a, b)) == l.join(self.apply(a), self.apply(b)))
        });
        for family in families(&all) {
            let lhs = self.apply(l.meet_all(family.iter().copied()));
            let mapped: Vec<Elem> = family.iter().map(|&x| self.apply(x)).collect();
            report.check(self.image_glb(&mapped) == Some(lhs), || {
                format!("ι does not preserve the meet of {family:?}")
            });
            if joins_preserved && family.len() <= 2 {
                let lhs = self.apply(l.join_all(family.iter().copied()));
                report.check(lhs == l.join_all(mapped.iter().copied()), || {
                    format!("ι does not preserve the join of {family:?}")
                });
            }
        }
        report
    }

    /// Whether `ι(a ∨ b) = ι(a) ∨ ι(b)` for all `a, b`.
    pub fn preserves_binary_joins(&self) -> bool {
        let l = &self.lattice;
        l.elements().all(|a| {
            l.elements()
                .all(|b| self.apply(l.join(a, b)) == l.join(self.apply(a), self.apply(b)))
        })
    }
}
