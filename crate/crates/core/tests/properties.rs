use locale_lab::assembly::{enumerate_assembly, DEFAULT_CAP};
use locale_lab::formats::{parse_frame, parse_space, write_frame, write_space};
use locale_lab::generate::random_frames;
use locale_lab::interior::InteriorOperator;
use locale_lab::sublocale::{difference, supplement};
use locale_lab::topology::{all_topologies, homeomorphism};
use locale_lab::FiniteFrame;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn frame(bound: usize) -> impl Strategy<Value = FiniteFrame> {
    any::<u64>().prop_map(move |seed| random_frames(seed, bound, 1).remove(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residuation(f in frame(5)) {
        for a in f.elements() {
            for b in f.elements() {
                let h = f.heyting(a, b);
                for c in f.elements() {
                    prop_assert_eq!(f.leq(f.meet(a, c), b), f.leq(c, h));
                }
            }
        }
    }

    #[test]
    fn frames_are_distributive_over_subsets(f in frame(4)) {
        prop_assert!(f.binary_distributivity_violation().is_none());
        prop_assert!(f.subset_distributivity_violation().is_none());
    }

    #[test]
    fn meet_irreducible_iff_prime_ideal_form(f in frame(5)) {
        for p in f.elements() {
            let ideal_form = p != f.top()
                && f.elements().all(|a| f.elements().all(|b| !f.leq(f.meet(a, b), p) || f.leq(a, p) || f.leq(b, p)));
            prop_assert_eq!(f.is_prime(p), ideal_form);
        }
    }

    #[test]
    fn every_element_is_a_meet_of_primes(f in frame(5)) {
        prop_assert!(f.every_element_meet_of(&f.primes()));
        prop_assert!(f.is_spatial() && f.is_td_spatial() && f.is_strongly_td_spatial());
    }

    #[test]
    fn nucleus_round_trip(f in frame(4)) {
        let a = enumerate_assembly(&f, DEFAULT_CAP).unwrap();
        for s in a.iter() {
            let nu = s.nucleus();
            prop_assert_eq!(&nu.sublocale(), &s);
            for x in f.elements() {
                prop_assert!(f.leq(x, nu.apply(x)));
                prop_assert_eq!(nu.apply(nu.apply(x)), nu.apply(x));
                for y in f.elements() {
                    prop_assert_eq!(nu.apply(f.meet(x, y)), f.meet(nu.apply(x), nu.apply(y)));
                }
            }
        }
    }

    #[test]
    fn difference_is_least_remainder(f in frame(4)) {
        let a = enumerate_assembly(&f, DEFAULT_CAP).unwrap();
        prop_assume!(a.len() <= 24);
        for s in a.iter() {
            prop_assert_eq!(supplement(&s), difference(&a.get(a.whole()), &s).unwrap());
            for t in a.iter() {
                let d = difference(&s, &t).unwrap();
                prop_assert!(s.is_subset(&t.join(&d).unwrap()));
                for r in a.iter() {
                    if s.is_subset(&t.join(&r).unwrap()) {
                        prop_assert!(d.is_subset(&r));
                    }
                }
            }
        }
    }

    #[test]
    fn frame_text_round_trips(f in frame(5)) {
        let text = write_frame(&f);
        let back = parse_frame(&text).unwrap();
        prop_assert_eq!(back.size(), f.size());
        for a in f.elements() {
            for b in f.elements() {
                prop_assert_eq!(back.leq(a, b), f.leq(a, b));
            }
        }
        prop_assert_eq!(write_frame(&back), text);
    }

    #[test]
    fn random_interior_operators_are_interior(f in frame(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let op = InteriorOperator::random(&mut rng, f.lattice());
        prop_assert!(op.check_interior1().passed());
        prop_assert!(op.check_interior2().passed());
        let again = InteriorOperator::from_image(f.lattice(), &op.image()).unwrap();
        prop_assert!(f.elements().all(|x| again.apply(x) == op.apply(x)));
    }
}

#[test]
fn space_text_round_trips() {
    for x in all_topologies(3) {
        let back = parse_space(&write_space(&x)).unwrap();
        assert_eq!(back.opens(), x.opens());
        assert!(homeomorphism(&back, &x).is_some());
    }
}
