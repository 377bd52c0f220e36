mod support;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{g, scramble};
use vkc::{
    canonical_form, kishino, reduce, search_equivalent, search_slice, validate_certificate, Claim,
    Move, MoveKind, SearchBudget, SearchStatus,
};

fn kishino_budget() -> SearchBudget {
    SearchBudget {
        max_crossings: 8,
        max_saddles: 1,
        max_births: 0,
        max_deaths: 1,
        max_depth: 14,
        ..SearchBudget::default()
    }
}

fn small() -> SearchBudget {
    SearchBudget {
        max_crossings: 5,
        max_depth: 4,
        max_nodes: 50_000,
        ..SearchBudget::default()
    }
}

#[test]
fn slice_examples() {
    let o = search_slice(&g("()"), &SearchBudget::default());
    assert_eq!(o.status, SearchStatus::Found);
    assert!(o.certificate.unwrap().steps.is_empty());

    let o = search_slice(&g("O1+U1+"), &SearchBudget::default());
    assert_eq!(o.certificate.unwrap().steps, vec![Move::R1Delete { x: 1 }]);

    let o = search_slice(&kishino::diagram(), &kishino_budget());
    assert_eq!(o.status, SearchStatus::Found);
    let c = o.certificate.unwrap();
    let r = validate_certificate(&c, Claim::Concordance);
    assert!(r.ok);
    assert_eq!(
        (r.counters.saddles, r.counters.births, r.counters.deaths),
        (1, 0, 1)
    );
}

#[test]
fn kishino_needs_its_saddle() {
    let no_saddle = SearchBudget {
        max_saddles: 0,
        max_deaths: 0,
        max_depth: 6,
        ..kishino_budget()
    };
    assert_eq!(
        search_slice(&kishino::diagram(), &no_saddle).status,
        SearchStatus::Exhausted
    );
}

#[test]
fn trefoil_is_not_sliced_in_a_small_budget() {
    let budget = SearchBudget {
        max_crossings: 7,
        max_saddles: 2,
        max_births: 2,
        max_deaths: 2,
        max_depth: 6,
        max_nodes: 1_000_000,
        ..SearchBudget::default()
    };
    let o = search_slice(&g("O1+U2+O3+U1+O2+U3+"), &budget);
    assert_eq!(o.status, SearchStatus::Exhausted, "{}", o.record());
}

#[test]
fn equivalence_examples() {
    let t = g("O1+U2+O3+U1+O2+U3+");
    let o = search_equivalent(&t, &t, &small());
    assert_eq!(o.status, SearchStatus::Found);
    assert!(o.certificate.unwrap().steps.is_empty());

    let o = search_equivalent(&g("O1-U1-"), &g("()"), &small());
    assert_eq!(o.certificate.unwrap().steps.len(), 1);

    let o = search_equivalent(&g("O1+O2+U1+U2+"), &g("()"), &small());
    assert_eq!(o.status, SearchStatus::Exhausted);

    // and in the other direction, through insertions
    let o = search_equivalent(&g("()"), &g("O1+U2-O2-U1+"), &small());
    let c = o.certificate.unwrap();
    assert!(c.steps.iter().all(|m| m.kind().is_reidemeister()));
    assert!(validate_certificate(&c, Claim::Concordance).ok);
}

#[test]
fn reduce_examples() {
    let t = g("O1+U2+O3+U1+O2+U3+");
    let r = reduce(&t, &small());
    assert_eq!(r.best.crossing_count(), 3);
    assert_eq!(r.genus_bound, 0);

    let v = g("O1+O2+U1+U2+");
    let r = reduce(&v, &small());
    assert_eq!(canonical_form(&r.best), canonical_form(&v));
    assert_eq!(r.genus_bound, 1);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let kinks = (0..3).fold(g("()"), |d, _| {
        let m =
            support::random_move(&mut rng, &d, vkc::MoveKinds::of(&[MoveKind::R1Insert])).unwrap();
        vkc::apply_move(&d, &m).unwrap()
    });
    assert_eq!(kinks.crossing_count(), 3);
    let r = reduce(&kinks, &small());
    assert_eq!(r.best, g("()"));
    assert_eq!(r.genus_bound, 0);
    assert!(validate_certificate(&r.certificate, Claim::Concordance).ok);
}

#[test]
fn workers_do_not_change_outcomes() {
    for workers in [2, 4] {
        let b = SearchBudget {
            workers,
            ..kishino_budget()
        };
        let one = search_slice(&kishino::diagram(), &kishino_budget());
        let many = search_slice(&kishino::diagram(), &b);
        assert_eq!(one.status, many.status);
        assert_eq!(one.certificate, many.certificate);
        assert_eq!(one.stats.nodes, many.stats.nodes);
    }
}

#[test]
fn node_cap_is_reported() {
    let b = SearchBudget {
        max_nodes: 5,
        ..kishino_budget()
    };
    let o = search_slice(&kishino::diagram(), &b);
    assert_eq!(o.status, SearchStatus::BudgetHit);
    assert!(o.certificate.is_none());
    assert!(o.stats.nodes <= 5);
    assert!(o.record().starts_with("status=budget-hit nodes="));
}

#[test]
fn capped_reduction_is_not_reported_exhausted() {
    let d = g("O1+O2+U1+U2+O3+U3+");
    let b = SearchBudget {
        max_depth: 4,
        max_nodes: 300,
        ..SearchBudget::default()
    };
    let r = reduce(&d, &b);
    assert_eq!(r.status, SearchStatus::BudgetHit);
    assert_eq!(r.stats.nodes, 300);
    assert_eq!(r.best.crossing_count(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn searches_are_deterministic_and_sound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = scramble(&mut rng, &g("()"), 2, 4);
        let b = SearchBudget { max_crossings: 5, max_depth: 5, max_nodes: 20_000, ..SearchBudget::default() };
        let first = search_slice(&d, &b);
        let again = search_slice(&d, &b);
        prop_assert_eq!(first.status, again.status);
        prop_assert_eq!(&first.certificate, &again.certificate);
        let parallel = search_slice(&d, &SearchBudget { workers: 4, ..b });
        prop_assert_eq!(first.status, parallel.status);
        if let Some(c) = &parallel.certificate {
            prop_assert!(validate_certificate(c, Claim::Concordance).ok);
        }
        if let Some(c) = &first.certificate {
            prop_assert!(validate_certificate(c, Claim::Concordance).ok);
            // a larger budget still finds a certificate
            let bigger = SearchBudget { max_depth: 7, max_crossings: 6, max_nodes: 200_000, ..b };
            prop_assert!(bigger.dominates(&b));
            prop_assert_eq!(search_slice(&d, &bigger).status, SearchStatus::Found);
        }
    }

    #[test]
    fn reduction_certificates_replay(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = scramble(&mut rng, &g("()"), 3, 6);
        let r = reduce(&d, &SearchBudget { max_crossings: 6, max_depth: 8, max_nodes: 20_000, ..SearchBudget::default() });
        prop_assert!(r.best.crossing_count() <= d.crossing_count());
        let end = r.certificate.replay(&Default::default()).unwrap().pop().unwrap();
        prop_assert_eq!(canonical_form(&end), canonical_form(&r.best));
        prop_assert!(r.certificate.steps.iter().all(|m| m.kind().is_reidemeister()));
    }
}
