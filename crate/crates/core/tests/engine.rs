mod common;

use locale_lab::assembly::{enumerate_assembly, DEFAULT_CAP};
use locale_lab::generate::{fixture, random_frames};
use locale_lab::structures::{
    essential_primes, is_d_sublocale, lift_surjection, meet_closure_m, pt_d_set, sp_d, AdjointPair, PrimeSubset,
    Spectrum, Subsystems,
};
use locale_lab::sublocale::{
    boolean_sublocale, closed_sublocale, complement_of, generate_sublocale, open_sublocale, sublocale_join,
};
use locale_lab::{ElementSet, FiniteFrame, FrameError, Nucleus, Sublocale};

const BOT: usize = 0;
const A: usize = 1;
const TOP: usize = 2;

fn c3() -> FiniteFrame {
    FiniteFrame::chain(3)
}

fn set(f: &FiniteFrame, ids: &[usize]) -> ElementSet {
    ElementSet::from_ids(f.size(), ids.iter().copied())
}

fn sub(f: &FiniteFrame, ids: &[usize]) -> Sublocale {
    Sublocale::new(f, set(f, ids)).unwrap()
}

fn boolean() -> FiniteFrame {
    fixture("boolean-2x2").unwrap()
}

#[test]
fn non_distributive_lattices_are_rejected() {
    // M3: 0 < x, y, z < 4
    let m3 = FiniteFrame::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]);
    assert!(matches!(m3, Err(FrameError::NonDistributive { .. })));
    let n5 = FiniteFrame::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]);
    assert!(matches!(n5, Err(FrameError::NonDistributive { .. })));
}

#[test]
fn heyting_and_pseudocomplement_examples() {
    let f = c3();
    assert_eq!(f.heyting(A, BOT), BOT);
    assert_eq!(f.pseudocomplement(A), BOT);
    let b = boolean();
    let atoms = b.atoms().to_vec();
    assert_eq!(atoms.len(), 2);
    assert_eq!(b.pseudocomplement(atoms[0]), atoms[1]);
    assert_eq!(b.pseudocomplement(b.bottom()), b.top());
}

#[test]
fn heyting_matches_scan_on_random_frames() {
    for f in random_frames(11, 5, 40) {
        let t = common::Tables::new(&f);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.heyting(a, b), t.imp[a][b]);
                assert_eq!(f.meet(a, b), t.meet[a][b]);
            }
            assert_eq!(f.heyting(a, a), f.top());
            assert_eq!(f.heyting(f.top(), a), a);
        }
    }
}

#[test]
fn primes_examples() {
    let f = c3();
    assert_eq!(f.primes(), set(&f, &[BOT, A]));
    assert_eq!(f.covered_primes(), set(&f, &[BOT, A]));
    let b = boolean();
    let coatoms: Vec<usize> = b.elements().filter(|&x| b.upper_covers(x) == vec![b.top()]).collect();
    assert_eq!(b.primes().to_vec(), coatoms);
    assert!(FiniteFrame::chain(1).primes().is_empty());
}

#[test]
fn primes_and_covered_primes_match_oracles() {
    let frames = random_frames(3, 4, 60);
    for f in frames.iter().filter(|f| f.size() <= 14) {
        let primes = ElementSet::from_ids(f.size(), common::primes(f));
        assert_eq!(f.primes(), primes);
        assert_eq!(f.covered_primes(), ElementSet::from_ids(f.size(), common::covered_primes(f)));
        // finite meets are attained
        assert_eq!(f.covered_primes(), primes);
    }
}

#[test]
fn subfitness_matches_definition() {
    assert!(!c3().is_subfit());
    assert!(boolean().is_subfit());
    assert!(FiniteFrame::chain(2).is_subfit());
    for f in random_frames(4, 5, 60) {
        assert_eq!(f.is_subfit(), common::subfit(&f), "{f:?}");
    }
}

#[test]
fn primes_maximal_examples() {
    assert!(!c3().maximal_primes_only());
    assert!(boolean().maximal_primes_only());
    assert!(FiniteFrame::chain(2).maximal_primes_only());
}

#[test]
fn nuclei_and_generation() {
    let f = c3();
    assert_eq!(Nucleus::identity(&f).sublocale(), Sublocale::whole(&f));
    assert_eq!(Nucleus::constant_top(&f).sublocale(), Sublocale::zero(&f));
    assert_eq!(sub(&f, &[BOT, TOP]).reflect(A), TOP);
    assert_eq!(generate_sublocale(&f, &ElementSet::empty(3)), Sublocale::zero(&f));
    assert_eq!(generate_sublocale(&f, &set(&f, &[BOT])), sub(&f, &[BOT, TOP]));
    assert_eq!(generate_sublocale(&f, &f.all()), Sublocale::whole(&f));
}

#[test]
fn open_closed_boolean_examples() {
    let f = c3();
    assert_eq!(open_sublocale(&f, A), sub(&f, &[BOT, TOP]));
    assert_eq!(closed_sublocale(&f, BOT), Sublocale::whole(&f));
    assert_eq!(closed_sublocale(&f, TOP), Sublocale::zero(&f));
    assert_eq!(boolean_sublocale(&f, BOT), sub(&f, &[BOT, TOP]));
    assert_eq!(boolean_sublocale(&f, A), sub(&f, &[A, TOP]));
    assert!(boolean_sublocale(&f, BOT).is_dense());
    assert_eq!(sub(&f, &[A, TOP]).closure(), closed_sublocale(&f, A));
    assert!(sub(&f, &[A, TOP]).is_closed());
    assert!(Sublocale::whole(&f).is_dense() && Sublocale::whole(&f).is_codense());
    assert_eq!(complement_of(&closed_sublocale(&f, A)).unwrap(), open_sublocale(&f, A));
}

#[test]
fn joins() {
    let f = c3();
    let j = sub(&f, &[BOT, TOP]).join(&sub(&f, &[A, TOP])).unwrap();
    assert_eq!(j, Sublocale::whole(&f));
    let s = sub(&f, &[A, TOP]);
    assert_eq!(s.join(&Sublocale::zero(&f)).unwrap(), s);
    assert_eq!(sublocale_join(&f, &[]).unwrap(), Sublocale::zero(&f));
}

#[test]
fn assembly_sizes() {
    assert_eq!(enumerate_assembly(&c3(), DEFAULT_CAP).unwrap().len(), 4);
    assert_eq!(enumerate_assembly(&FiniteFrame::chain(2), DEFAULT_CAP).unwrap().len(), 2);
    assert_eq!(enumerate_assembly(&boolean(), DEFAULT_CAP).unwrap().len(), 4);
}

#[test]
fn assembly_matches_filter_on_random_frames() {
    for f in random_frames(9, 5, 30).iter().filter(|f| f.size() <= 16) {
        let a = enumerate_assembly(f, DEFAULT_CAP).unwrap();
        let mut got: Vec<_> = (0..a.len()).map(|i| a.members(i).clone()).collect();
        got.sort();
        assert_eq!(got, common::sublocales_by_filter(f));
    }
}

#[test]
fn points_of_sublocales() {
    let f = c3();
    assert!(pt_d_set(&Sublocale::zero(&f)).is_empty());
    assert_eq!(pt_d_set(&sub(&f, &[BOT, TOP])), set(&f, &[BOT]));
    let empty = PrimeSubset::new(&f, ElementSet::empty(3), Spectrum::TD).unwrap();
    assert_eq!(meet_closure_m(&empty), Sublocale::zero(&f));
    let zero = PrimeSubset::new(&f, set(&f, &[BOT]), Spectrum::TD).unwrap();
    assert_eq!(meet_closure_m(&zero), sub(&f, &[BOT, TOP]));
    assert!(PrimeSubset::new(&f, set(&f, &[TOP]), Spectrum::Classical).is_err());
}

#[test]
fn subsystems_examples() {
    let f = c3();
    let a = enumerate_assembly(&f, DEFAULT_CAP).unwrap();
    let s = Subsystems::compute(&a);
    let c: Vec<Sublocale> = s.c.iter().map(|i| a.get(i)).collect();
    assert_eq!(c.len(), 3);
    for want in [Sublocale::zero(&f), sub(&f, &[A, TOP]), Sublocale::whole(&f)] {
        assert!(c.contains(&want));
    }
    assert_eq!(s.b, a.all());
    assert_eq!(s.d, a.all());

    let b = boolean();
    let a = enumerate_assembly(&b, DEFAULT_CAP).unwrap();
    let s = Subsystems::compute(&a);
    assert!(s.c == s.b && s.b == a.all());
}

#[test]
fn every_finite_sublocale_is_d_and_sp_d_whole() {
    for f in random_frames(5, 5, 30) {
        let a = enumerate_assembly(&f, DEFAULT_CAP).unwrap();
        assert!(a.iter().all(|s| is_d_sublocale(&s)));
        assert_eq!(sp_d(&Sublocale::whole(&f)).unwrap(), Sublocale::whole(&f));
        assert_eq!(sp_d(&Sublocale::zero(&f)).unwrap(), Sublocale::zero(&f));
    }
}

#[test]
fn images_and_preimages_on_three_chain() {
    let f = c3();
    let a = enumerate_assembly(&f, DEFAULT_CAP).unwrap();
    for s in a.iter() {
        let (pair, sf) = AdjointPair::onto_sublocale(&s);
        assert!(pair.adjunction_holds());
        assert!(pair.is_d_homomorphism());
        let whole = Sublocale::whole(&sf.frame);
        assert_eq!(pair.image(&whole).unwrap(), s);
        assert_eq!(pair.right_adjoint(sf.frame.top()), f.top());
        let target = enumerate_assembly(&sf.frame, DEFAULT_CAP).unwrap();
        for t in target.iter() {
            for u in a.iter() {
                let img = pair.image(&t).unwrap();
                assert_eq!(img.is_subset(&u), t.is_subset(&pair.preimage(&u, &target)));
            }
        }
    }
    assert!(AdjointPair::identity(&f).is_d_homomorphism());
}

#[test]
fn lift_onto_closed_sublocale_of_three_chain() {
    let f = c3();
    let s = closed_sublocale(&f, A);
    let lift = lift_surjection(&s, DEFAULT_CAP).unwrap();
    assert!(lift.square_commutes());
    assert!(lift.preserves_meets());
    for t in enumerate_assembly(&f, DEFAULT_CAP).unwrap().iter() {
        let image = lift.apply(&t).unwrap();
        let inter = t.meet(&s).unwrap();
        assert_eq!(lift.sublocale_frame.globalize(image.members(), 3), *inter.members());
    }
    let whole = lift_surjection(&Sublocale::whole(&f), DEFAULT_CAP).unwrap();
    assert!(whole.pair.adjunction_holds());
}

#[test]
fn primes_are_their_own_essential_primes() {
    for f in random_frames(6, 5, 40) {
        for p in f.primes().iter() {
            assert!(essential_primes(&f, p).unwrap().contains(p));
        }
    }
}
