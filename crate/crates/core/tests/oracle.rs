mod common;

use common::*;
use tsa_core::cli::Document;
use tsa_core::engine::{t_minimize, weighted_from_moore, SuccinctAutomaton, DEFAULT_CAP};
use tsa_core::field::Field;
use tsa_core::moore::{equiv_exact, words_up_to};
use tsa_core::oracle::{
    no_smaller_afa_check, raw_run, verify_succinct, verify_weighted, AfaSearch, Outcome,
};
use tsa_core::set_monads::{Alternating, Antichain};
use tsa_core::{Alphabet, Equivalence, MooreMachine, Strategy};

fn aa2() -> SuccinctAutomaton<Alternating> {
    match fixture("aa2.json") {
        Document::Alternating(s) => s,
        other => panic!("{}", other.kind()),
    }
}

fn unary(output: Vec<bool>, next: Vec<usize>) -> MooreMachine<bool> {
    let trans = next.into_iter().map(|t| vec![t]).collect();
    MooreMachine::from_table(Alphabet::new(["a"]).unwrap(), 0, output, trans).unwrap()
}

#[test]
fn figure_pairs_verify() {
    let report = verify_succinct(&moore_bool("aa1.json"), &aa2(), 6, DEFAULT_CAP).unwrap();
    assert!(
        report.checks.iter().all(|c| c.outcome == Outcome::Passed),
        "{report}"
    );

    let q = Field::Rational;
    let wa1 = weighted_from_moore(&moore_scalar("wa1.json", q), q).unwrap();
    let Document::Weighted(wa2) = fixture("wa2.json") else {
        panic!()
    };
    let report = verify_weighted(&wa1, &wa2, 8).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn corrupted_transition_fails_on_a_shortest_word() {
    let m = moore_bool("aa1.json");
    let good = aa2();
    let b = good.alphabet().index_of("b").unwrap();
    let bad = good.with_transition(2, b, Antichain::top()).unwrap();
    let report = verify_succinct(&m, &bad, 6, DEFAULT_CAP).unwrap();
    assert!(!report.passed());
    let shortest = words_up_to(2, 6)
        .find(|w| m.run(w).unwrap() != bad.run(w).unwrap())
        .unwrap();
    for check in &report.checks {
        let Outcome::Failed(w) = &check.outcome else {
            panic!("{} did not fail", check.name)
        };
        assert_eq!(w.len(), shortest.len(), "{}", check.name);
        assert_ne!(m.run(w).unwrap(), raw_run(&bad, w));
    }
    assert_eq!(report.first_failure().unwrap().1, &shortest);
}

#[test]
fn even_length_language_has_no_two_state_afa() {
    assert_eq!(
        no_smaller_afa_check(&moore_bool("ca1.json"), 2, DEFAULT_CAP).unwrap(),
        AfaSearch::NotExists
    );
}

#[test]
fn single_word_language_over_one_letter() {
    let just_a = unary(vec![false, true, false], vec![1, 2, 2]);
    assert_eq!(
        no_smaller_afa_check(&just_a, 1, DEFAULT_CAP).unwrap(),
        AfaSearch::NotExists
    );
    let AfaSearch::Exists(s) = no_smaller_afa_check(&just_a, 2, DEFAULT_CAP).unwrap() else {
        panic!("no 2-state AFA for {{a}}")
    };
    assert!(equiv_exact(&just_a, &s.determinize(DEFAULT_CAP).unwrap())
        .unwrap()
        .is_equal());

    let a_plus = unary(vec![false, true], vec![1, 1]);
    assert!(matches!(
        no_smaller_afa_check(&a_plus, 1, DEFAULT_CAP).unwrap(),
        AfaSearch::Exists(_)
    ));
}

#[test]
fn minimized_automata_witness_their_own_size() {
    let mut r = rng(21);
    let mut checked = 0;
    while checked < 10 {
        let m = random_dfa(&mut r, 3);
        let min = t_minimize(&m, Alternating, Strategy::MonotoneMaximal, DEFAULT_CAP).unwrap();
        let k = min.generators();
        if k == 0 || k > 2 {
            continue;
        }
        let AfaSearch::Exists(s) = no_smaller_afa_check(&m, k, DEFAULT_CAP).unwrap() else {
            panic!("no {k}-state AFA although one was constructed")
        };
        assert_eq!(
            equiv_exact(&m, &s.determinize(DEFAULT_CAP).unwrap()).unwrap(),
            Equivalence::Equal
        );
        checked += 1;
    }
}

#[test]
fn search_beyond_the_cap_is_refused() {
    let err = no_smaller_afa_check(&moore_bool("aa1.json"), 3, DEFAULT_CAP).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}
