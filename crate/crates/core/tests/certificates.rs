mod support;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{
    g, random_concordance, random_knot, random_long_knot, random_long_unknot, random_slicing,
};
use vkc::{
    kishino, transport_closure_to_long, transport_long_to_closure, validate_certificate,
    Certificate, Claim, Counters, Failure, Move, Verdict,
};

fn cert(text: &str) -> Certificate {
    text.parse().unwrap()
}

#[test]
fn kishino_examples() {
    let r = validate_certificate(&kishino::certificate(), Claim::Concordance);
    assert!(r.ok);
    assert_eq!(r.verdict, Verdict::Concordance);
    assert_eq!(
        r.counters,
        Counters {
            saddles: 1,
            births: 0,
            deaths: 1
        }
    );
    let r = validate_certificate(&kishino::disk_certificate(), Claim::SliceDisk);
    assert!(r.ok);
    assert_eq!(
        r.counters,
        Counters {
            saddles: 1,
            births: 0,
            deaths: 2
        }
    );
    // the concordance is not a disk and vice versa
    assert!(!validate_certificate(&kishino::certificate(), Claim::SliceDisk).ok);
    assert!(!validate_certificate(&kishino::disk_certificate(), Claim::Concordance).ok);
}

#[test]
fn text_form_round_trips() {
    let c = kishino::certificate();
    assert_eq!(c.to_string().parse::<Certificate>().unwrap(), c);
    assert!("saddle c1=0 p=0 c2=0 q=1\nend: ()"
        .parse::<Certificate>()
        .is_err());
    assert!("start: ()\nbirth".parse::<Certificate>().is_err());
    assert!("start: ()\nend: ()\nbirth".parse::<Certificate>().is_err());
}

#[test]
fn failures_are_classified() {
    let count = cert("start: O1+U1+\nr1- x=1\nbirth\nend: ();()");
    let r = validate_certificate(&count, Claim::Concordance);
    assert!(matches!(r.failure, Some(Failure::CountRule { .. })));
    assert!(!r.failure.unwrap().is_claim_shape());

    let sphere = cert("start: O1+U1+\nr1- x=1\nbirth\nsaddle c1=0 p=0 c2=1 q=0\nsaddle c1=0 p=0 c2=0 q=0\ndeath c=1\nend: ()");
    assert!(validate_certificate(&sphere, Claim::Concordance).ok);

    let shape = cert("start: O1+U1+;()\nr1- x=1\nend: ();()");
    assert!(validate_certificate(&shape, Claim::Concordance)
        .failure
        .unwrap()
        .is_claim_shape());

    let bad_step = cert("start: O1+U2+O3+U1+O2+U3+\nr1- x=1\nend: ()");
    assert!(matches!(
        validate_certificate(&bad_step, Claim::Concordance).failure,
        Some(Failure::Step { index: 0, .. })
    ));

    let wrong_end = cert("start: O1+U1+\nend: ()");
    assert!(matches!(
        validate_certificate(&wrong_end, Claim::Concordance).failure,
        Some(Failure::EndMismatch { .. })
    ));
}

#[test]
fn transports_of_kishino() {
    let c = kishino::certificate();
    let long = c.start.cut(0, 0).unwrap();
    let moved = transport_closure_to_long(&c, &long).unwrap();
    let r = validate_certificate(&moved, Claim::Concordance);
    assert!(r.ok, "{:?}", r.failure);
    assert_eq!(
        r.counters,
        Counters {
            saddles: 2,
            births: 0,
            deaths: 2
        }
    );
    assert_eq!(moved.start, long);
    assert_eq!(moved.end, g("L:"));
    // and back: the long certificate closes up
    let closed = transport_long_to_closure(&moved).unwrap();
    let r = validate_certificate(&closed, Claim::Concordance);
    assert!(r.ok, "{:?}", r.failure);
    assert_eq!(
        r.counters,
        Counters {
            saddles: 2,
            births: 0,
            deaths: 2
        }
    );
}

#[test]
fn transport_from_another_cut() {
    // a cut elsewhere closes to a rotation of the certificate start
    let c = kishino::certificate();
    let long = c.start.cut(0, 3).unwrap();
    let moved = transport_closure_to_long(&c, &long).unwrap();
    assert!(validate_certificate(&moved, Claim::Concordance).ok);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn generated_concordances_validate(seed in any::<u64>(), long in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = if long { random_long_knot(&mut rng, 3) } else { random_knot(&mut rng, 3) };
        let c = random_concordance(&mut rng, &start, 6);
        let r = validate_certificate(&c, Claim::Concordance);
        prop_assert!(r.ok, "{}\n{:?}", c, r.failure);
        prop_assert_eq!(r.counters, c.counters());
    }

    #[test]
    fn long_certificates_must_slice(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = random_long_knot(&mut rng, 3);
        let c = random_concordance(&mut rng, &start, 6);
        prop_assert_eq!(transport_long_to_closure(&c).is_ok(), c.end.crossing_count() == 0);
    }

    #[test]
    fn long_to_closure_preserves_counters(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let steps = rng.gen_range(0..3);
        let start = random_long_unknot(&mut rng, steps, 4);
        let Some(c) = random_slicing(&mut rng, &start, 6) else { return Ok(()) };
        prop_assert!(validate_certificate(&c, Claim::Concordance).ok);
        let closed = transport_long_to_closure(&c).unwrap();
        let r = validate_certificate(&closed, Claim::Concordance);
        prop_assert!(r.ok, "{}\n{:?}", closed, r.failure);
        prop_assert_eq!(r.counters, c.counters());
        prop_assert_eq!(closed.start, start.closure().unwrap());
    }

    #[test]
    fn closure_to_long_adds_a_saddle_and_a_death(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let steps = rng.gen_range(0..3);
        let long = random_long_unknot(&mut rng, steps, 4);
        let round = long.closure().unwrap();
        if let Some(c) = random_slicing(&mut rng, &round, 6) {
            prop_assert!(validate_certificate(&c, Claim::Concordance).ok);
            let moved = transport_closure_to_long(&c, &long).unwrap();
            let r = validate_certificate(&moved, Claim::Concordance);
            prop_assert!(r.ok, "{}\n{:?}", moved, r.failure);
            let k = c.counters();
            prop_assert_eq!(r.counters, Counters { saddles: k.saddles + 1, births: k.births, deaths: k.deaths + 1 });
        }
    }

    #[test]
    fn extra_cobordism_steps_break_the_count(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = random_knot(&mut rng, 3);
        let mut c = random_concordance(&mut rng, &start, 6);
        c.steps.push(Move::Birth);
        c.end = vkc::apply_move(&c.end, &Move::Birth).unwrap();
        let r = validate_certificate(&c, Claim::Concordance);
        let count_rule = matches!(r.failure, Some(Failure::CountRule { .. }));
        prop_assert!(count_rule);
    }
}
