use std::collections::BTreeSet;

use locale_lab::assembly::{enumerate_assembly, DEFAULT_CAP};
use locale_lab::structures::spatialization;
use locale_lab::sublocale::boolean_sublocale;
use locale_lab::topology::{all_topologies, homeomorphism, omega, omega_prime, spectrum, spectrum_td, FiniteSpace};
use locale_lab::{ElementSet, FiniteFrame, Sublocale};

fn subsets_of_points(n: usize) -> Vec<ElementSet> {
    (0u32..1 << n).map(|m| ElementSet::from_ids(n, (0..n).filter(|i| m >> i & 1 == 1))).collect()
}

#[test]
fn opens_of_small_spaces() {
    let s = omega(&FiniteSpace::sierpinski()).frame;
    assert_eq!(s.size(), 3);
    assert_eq!(s.primes().len(), 2);
    let d = omega(&FiniteSpace::discrete(2)).frame;
    assert!(d.size() == 4 && d.is_boolean());
    let one = omega(&FiniteSpace::discrete(1)).frame;
    assert_eq!(one.size(), 2);
}

#[test]
fn spectra_of_small_frames() {
    let sp = spectrum(&FiniteFrame::chain(3));
    assert!(homeomorphism(&sp.space, &FiniteSpace::sierpinski()).is_some());
    let b = omega(&FiniteSpace::discrete(2)).frame;
    assert!(homeomorphism(&spectrum(&b).space, &FiniteSpace::discrete(2)).is_some());
    assert_eq!(spectrum(&FiniteFrame::chain(1)).space.points(), 0);
}

#[test]
fn separation_examples() {
    assert!(FiniteSpace::sierpinski().is_td());
    assert!(!FiniteSpace::indiscrete(2).is_t0());
    for x in (0..=4).flat_map(all_topologies) {
        if x.is_t0() {
            assert!(x.is_td() && x.is_sober());
        }
        assert_eq!(x.is_td(), x.skula().is_discrete());
    }
}

#[test]
fn induced_sublocale_examples() {
    let x = FiniteSpace::sierpinski();
    let om = omega(&x);
    let f = &om.frame;
    assert_eq!(omega_prime(&om, &ElementSet::full(2)), Sublocale::whole(f));
    assert_eq!(omega_prime(&om, &ElementSet::empty(2)), Sublocale::zero(f));
    // the prime of a closed point is the complement of that point
    let closed_point = (0..2).find(|&p| x.point_closure(p).len() == 1).unwrap();
    let prime = om.element_of(&ElementSet::from_ids(2, [1 - closed_point])).unwrap();
    assert_eq!(omega_prime(&om, &ElementSet::from_ids(2, [closed_point])), boolean_sublocale(f, prime));
}

/// Induced sublocales: distinct subspaces give distinct sublocales exactly
/// for T_D spaces, and every spatial sublocale is induced.
#[test]
fn induced_sublocales_exhaustive() {
    for x in (0..=4).flat_map(all_topologies) {
        let om = omega(&x);
        let images: Vec<Sublocale> = subsets_of_points(x.points()).iter().map(|a| omega_prime(&om, a)).collect();
        let distinct: BTreeSet<ElementSet> = images.iter().map(|s| s.members().clone()).collect();
        assert_eq!(distinct.len() == images.len(), x.is_td(), "{x:?}");
        let assembly = enumerate_assembly(&om.frame, DEFAULT_CAP).unwrap();
        let spatial: BTreeSet<ElementSet> =
            assembly.iter().filter(|s| spatialization(s) == *s).map(|s| s.members().clone()).collect();
        assert_eq!(distinct, spatial);
    }
}

#[test]
fn sober_t0_spaces_are_their_spectra() {
    for x in (0..=4).flat_map(all_topologies).filter(FiniteSpace::is_t0) {
        let f = omega(&x).frame;
        assert!(homeomorphism(&spectrum(&f).space, &x).is_some(), "{x:?}");
        assert!(homeomorphism(&spectrum_td(&f).space, &x).is_some(), "{x:?}");
    }
}

#[test]
fn topology_counts() {
    let counts: Vec<usize> = (0..=4).map(|n| all_topologies(n).len()).collect();
    assert_eq!(counts, [1, 1, 4, 29, 355]);
}
