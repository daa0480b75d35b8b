//! The assembly `S(L)`: every sublocale of a finite frame, indexed.
//!
//! Sublocales are listed in lexicographic order of their member sets, so
//! index 0 is always `L` itself when `L` has a bottom below everything else
//! (member lists start at 0). Lookups go through a hash index.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

use crate::element_set::ElementSet;
use crate::lattice::{FiniteFrame, FiniteLattice, FrameError};
use crate::sublocale::{self, generate_sublocale, Sublocale};

pub const DEFAULT_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblyError {
    #[error("assembly cap {cap} exceeded ({reached} sublocales found so far)")]
    CapExceeded { cap: usize, reached: usize },
}

pub struct Assembly {
    frame: FiniteFrame,
    members: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
    join_table: OnceLock<Vec<Option<u32>>>,
    difference_table: OnceLock<Vec<Option<u32>>>,
}

/// Enumerates `S(L)` by frontier expansion: start from `{1}`, add one
/// element at a time and re-close.
pub fn enumerate_assembly(frame: &FiniteFrame, cap: usize) -> Result<Assembly, AssemblyError> {
    let zero = Sublocale::zero(frame).members().clone();
    let mut seen: HashMap<ElementSet, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone(), ());
    queue.push_back(zero);
    if cap == 0 {
        return Err(AssemblyError::CapExceeded { cap, reached: 1 });
    }
    while let Some(current) = queue.pop_front() {
        for a in frame.elements() {
            if current.contains(a) {
                continue;
            }
            let mut seed = current.clone();
            seed.insert(a);
            let next = generate_sublocale(frame, &seed).members().clone();
            if !seen.contains_key(&next) {
                if seen.len() >= cap {
                    return Err(AssemblyError::CapExceeded {
                        cap,
                        reached: seen.len() + 1,
                    });
                }
                seen.insert(next.clone(), ());
                queue.push_back(next);
            }
        }
    }
    Ok(Assembly::from_member_sets(frame, seen.into_keys().collect()))
}

impl Assembly {
    /// Builds an assembly from an already complete list of member sets.
    pub(crate) fn from_member_sets(frame: &FiniteFrame, mut members: Vec<ElementSet>) -> Self {
        members.sort();
        members.dedup();
        let index = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            frame: frame.clone(),
            members,
            index,
            join_table: OnceLock::new(),
            difference_table: OnceLock::new(),
        }
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self, i: usize) -> &ElementSet {
        &self.members[i]
    }

    pub fn get(&self, i: usize) -> Sublocale {
        Sublocale::from_members_unchecked(&self.frame, self.members[i].clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = Sublocale> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    pub fn index_of_members(&self, members: &ElementSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn index_of(&self, s: &Sublocale) -> Option<usize> {
        if !s.frame().same_as(&self.frame) {
            return None;
        }
        self.index_of_members(s.members())
    }

    pub fn whole(&self) -> usize {
        self.index_of_members(&self.frame.all()).expect("L is a sublocale")
    }

    pub fn zero(&self) -> usize {
        self.index_of(&Sublocale::zero(&self.frame)).expect("{1} is a sublocale")
    }

    pub fn is_subset(&self, i: usize, j: usize) -> bool {
        self.members[i].is_subset(&self.members[j])
    }

    /// Index of the intersection; always present.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index_of_members(&self.members[i].intersection(&self.members[j]))
            .expect("intersections of sublocales are sublocales")
    }

    /// Index of `Sᵢ ∨ Sⱼ` as computed by the join formula, or `None` when the
    /// computed set is not a sublocale of this assembly.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let n = self.len();
        let table = self.join_table.get_or_init(|| {
            let mut t = vec![None; n * n];
            for a in 0..n {
                for b in a..n {
                    let r = self
                        .get(a)
                        .join(&self.get(b))
                        .ok()
                        .and_then(|s| self.index_of_members(s.members()))
                        .map(|x| x as u32);
                    t[a * n + b] = r;
                    t[b * n + a] = r;
                }
            }
            t
        });
        table[i * n + j].map(|x| x as usize)
    }

    /// Index of `Sᵢ ∖ Sⱼ`, or `None` when the computed set is not a sublocale.
    pub fn difference(&self, i: usize, j: usize) -> Option<usize> {
        let n = self.len();
        let table = self.difference_table.get_or_init(|| {
            let mut t = vec![None; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = sublocale::difference(&self.get(a), &self.get(b))
                        .ok()
                        .and_then(|s| self.index_of_members(s.members()))
                        .map(|x| x as u32);
                }
            }
            t
        });
        table[i * n + j].map(|x| x as usize)
    }

    /// Join of a family of indices, folding the binary join.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> Option<usize> {
        let mut acc = self.zero();
        for i in items {
            acc = self.join(acc, i)?;
        }
        Some(acc)
    }

    /// `S(L)^op` as a frame: element `i ≤ j` iff `Sⱼ ⊆ Sᵢ`.
    pub fn as_frame(&self) -> Result<FiniteFrame, FrameError> {
        self.subfamily_frame(&ElementSet::full(self.len())).map(|(f, _)| f)
    }

    /// The reverse-inclusion frame on a subfamily, with local → assembly
    /// index map.
    pub fn subfamily_frame(&self, family: &ElementSet) -> Result<(FiniteFrame, Vec<usize>), FrameError> {
        let ids = family.to_vec();
        let frame = FiniteFrame::from_order(ids.len(), |a, b| self.is_subset(ids[b], ids[a]))?;
        Ok((frame, ids))
    }

    /// The inclusion-ordered lattice on a subfamily.
    pub fn subfamily_lattice(&self, family: &ElementSet) -> Result<(FiniteLattice, Vec<usize>), FrameError> {
        let ids = family.to_vec();
        let lattice = FiniteLattice::from_order(ids.len(), |a, b| self.is_subset(ids[a], ids[b]))?;
        Ok((lattice, ids))
    }

    /// All assembly indices as a set.
    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }
}

/// Reference enumeration: filter all `2^|L|` subsets through validation.
pub fn enumerate_by_filter(frame: &FiniteFrame) -> Vec<ElementSet> {
    let n = frame.size();
    assert!(n <= 20, "subset filter limited to 20 elements");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let set = ElementSet::from_ids(n, (0..n).filter(|i| mask >> i & 1 == 1));
        if sublocale::validate_members(frame, &set).is_ok() {
            out.push(set);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::verify_frame;

    fn square() -> FiniteFrame {
        verify_frame(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_assembly(&FiniteFrame::chain(3), DEFAULT_CAP).unwrap().len(), 4);
        assert_eq!(enumerate_assembly(&FiniteFrame::chain(2), DEFAULT_CAP).unwrap().len(), 2);
        assert_eq!(enumerate_assembly(&FiniteFrame::chain(1), DEFAULT_CAP).unwrap().len(), 1);
        assert_eq!(enumerate_assembly(&square(), DEFAULT_CAP).unwrap().len(), 4);
    }

    #[test]
    fn three_chain_members() {
        let f = FiniteFrame::chain(3);
        let a = enumerate_assembly(&f, DEFAULT_CAP).unwrap();
        let lists: Vec<Vec<usize>> = (0..a.len()).map(|i| a.members(i).to_vec()).collect();
        assert_eq!(lists, vec![vec![0, 1, 2], vec![0, 2], vec![1, 2], vec![2]]);
        assert_eq!(a.whole(), 0);
        assert_eq!(a.zero(), 3);
    }

    #[test]
    fn agrees_with_filter() {
        for f in [FiniteFrame::chain(3), FiniteFrame::chain(4), square()] {
            let a = enumerate_assembly(&f, DEFAULT_CAP).unwrap();
            let listed: Vec<ElementSet> = (0..a.len()).map(|i| a.members(i).clone()).collect();
            assert_eq!(listed, enumerate_by_filter(&f));
        }
    }

    #[test]
    fn cap_is_reported() {
        let err = enumerate_assembly(&FiniteFrame::chain(4), 3).err().unwrap();
        assert!(matches!(err, AssemblyError::CapExceeded { cap: 3, reached: 4 }));
    }

    #[test]
    fn tables_and_reverse_frame() {
        let f = FiniteFrame::chain(3);
        let a = enumerate_assembly(&f, DEFAULT_CAP).unwrap();
        // {0,2} ∨ {1,2} = L
        assert_eq!(a.join(1, 2), Some(0));
        assert_eq!(a.meet(1, 2), 3);
        assert_eq!(a.difference(0, 2), Some(1));
        let op = a.as_frame().unwrap();
        assert_eq!(op.bottom(), a.whole());
        assert_eq!(op.top(), a.zero());
        assert!(op.is_boolean());
    }
}
