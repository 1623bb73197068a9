mod common;

use common::*;
use tsa_core::cli::Document;
use tsa_core::engine::{
    free_representation, free_representation_canonical, is_redundant, isolated_report,
    lift_machine, observable_quotient, reduce_generators, t_minimize, weighted_from_moore,
    weighted_t_minimize, GeneratorSet, SuccinctAutomaton, TAutomaton, DEFAULT_CAP,
};
use tsa_core::field::{observation_basis, vec_redundancy, Field, VecElem, VectorMonad};
use tsa_core::moore::equiv_bounded;
use tsa_core::oracle::naive_redundancy;
use tsa_core::set_monads::{
    Alternating, Antichain, Caba, CabaElem, GroupElem, GroupMonad, Powerset,
};
use tsa_core::{AlgebraHandle, Alphabet, Equivalence, Monad, MooreMachine, Strategy, Word};

fn quotient<M: Monad>(m: &MooreMachine<M::Out>, monad: M) -> TAutomaton<M> {
    observable_quotient(&lift_machine(m, monad, DEFAULT_CAP).unwrap())
}

fn base_index<M: Monad>(t: &TAutomaton<M>, name: &str) -> usize {
    t.base_names().iter().position(|n| n == name).unwrap()
}

fn class<M: Monad>(t: &TAutomaton<M>, name: &str) -> usize {
    t.unit_class(base_index(t, name))
}

fn position<M: Monad>(t: &TAutomaton<M>, gs: &GeneratorSet<M>, name: &str) -> usize {
    gs.gens().iter().position(|&g| g == class(t, name)).unwrap()
}

fn word(m: &Alphabet, text: &str) -> Word {
    m.parse_word(text).unwrap()
}

fn jsl_figure(alphabet: &Alphabet) -> SuccinctAutomaton<Powerset> {
    SuccinctAutomaton::new(
        Powerset,
        alphabet.clone(),
        vec!["x".into(), "y".into()],
        vec![0],
        vec![false, true],
        vec![vec![vec![1], vec![0, 1]], vec![vec![0], vec![0, 1]]],
    )
    .unwrap()
}

fn succinct<M: Monad>(
    doc: Document,
    pick: impl Fn(Document) -> Option<SuccinctAutomaton<M>>,
) -> SuccinctAutomaton<M> {
    pick(doc).expect("document of another kind")
}

#[test]
fn intro_dfa_reads_third_symbol_from_the_right() {
    let m = moore_bool("intro_dfa.json");
    let a = m.alphabet().clone();
    assert!(m.run(&word(&a, "abb")).unwrap());
    assert!(!m.run(&word(&a, "baa")).unwrap());
    assert_eq!(m.run(&Word::empty()).unwrap(), *m.output(m.initial()));
    assert_eq!(m.reachable().0.len(), 8);
    assert_eq!(minimal_size(&m), 8);
    assert_eq!(minimal_size(&moore_bool("aa1.json")), 5);
}

#[test]
fn unreachable_sink_is_dropped_and_bisimilar_states_merge() {
    let jsl = moore_bool("jsl.json");
    let (r, map) = jsl.reachable();
    assert_eq!(r.names(), ["x", "y", "z"]);
    assert_eq!(map[3], None);

    let ab = Alphabet::new(["a", "b"]).unwrap();
    let m = MooreMachine::from_table(
        ab,
        0,
        vec![false, true, true],
        vec![vec![1, 2], vec![0, 0], vec![0, 0]],
    )
    .unwrap();
    let (q, classes) = m.minimize();
    assert_eq!(q.len(), 2);
    assert_eq!(classes[1], classes[2]);
}

#[test]
fn bounded_comparison_finds_first_difference() {
    let ab = Alphabet::new(["a", "b"]).unwrap();
    let a = word(&ab, "a");
    let ba = word(&ab, "ba");
    let f = |w: &Word| *w == a;
    let g = |w: &Word| *w == a || *w == ba;
    assert_eq!(equiv_bounded(2, 2, f, g), Equivalence::Counterexample(ba));
    assert_eq!(equiv_bounded(2, 3, |_| 0, |_| 0), Equivalence::Equal);
}

#[test]
fn powerset_bind_and_nfa_run() {
    let f = |x: usize| if x == 0 { vec![0] } else { vec![0, 1] };
    assert_eq!(Powerset.bind(&vec![0, 1], 2, &f), vec![0, 1]);
    let nfa = succinct(fixture("intro_nfa.json"), |d| match d {
        Document::Powerset(s) => Some(s),
        _ => None,
    });
    let c = word(nfa.alphabet(), "abb")
        .symbols()
        .iter()
        .fold(vec![0], |c, &a| nfa.step(&c, a));
    assert!(c.contains(&3));
    assert!(nfa.observe(&c));
}

#[test]
fn jsl_generators_are_the_join_irreducibles() {
    let t = quotient(&moore_bool("jsl.json"), Powerset);
    assert_eq!(t.len(), 4);
    let (x, y, z) = (class(&t, "x"), class(&t, "y"), class(&t, "z"));
    let bot = t.class_of(&vec![]).unwrap();
    assert_eq!(t.sharp(&[x, y], &vec![0, 1]), z);
    assert_eq!(t.sharp(&[x, y], &vec![]), bot);

    let report = isolated_report(&t, Strategy::MonotoneMaximal, DEFAULT_CAP).unwrap();
    let mut isolated = report.isolated.clone();
    isolated.sort();
    let mut expected = vec![x, y];
    expected.sort();
    assert_eq!(isolated, expected);
    assert!(report.generates);
    assert_eq!(
        isolated_report(&t, Strategy::Naive, DEFAULT_CAP).unwrap(),
        report
    );

    let full = GeneratorSet::full(&t);
    let zp = full.gens().iter().position(|&g| g == z).unwrap();
    let witness = is_redundant(&t, &full, zp, Strategy::MonotoneMaximal, DEFAULT_CAP)
        .unwrap()
        .unwrap();
    assert_eq!(
        t.sharp(
            &[0, 1, 2, 3]
                .iter()
                .filter(|&&c| c != z)
                .copied()
                .collect::<Vec<_>>(),
            &witness
        ),
        z
    );
    let bp = full.gens().iter().position(|&g| g == bot).unwrap();
    assert_eq!(
        naive_redundancy(&t, &full, bp, DEFAULT_CAP).unwrap(),
        Some(vec![])
    );

    let gs = reduce_generators(
        &t,
        full,
        Strategy::MonotoneMaximal,
        DEFAULT_CAP,
        &mut |_, _| {},
    )
    .unwrap();
    let mut kept = gs.gens().to_vec();
    kept.sort();
    assert_eq!(kept, expected);
    let from_base = reduce_generators(
        &t,
        GeneratorSet::from_base(&t),
        Strategy::MonotoneMaximal,
        DEFAULT_CAP,
        &mut |_, _| {},
    )
    .unwrap();
    let nfa = free_representation(&t, &from_base);
    assert!(isomorphism(&nfa, &jsl_figure(t.alphabet())).is_some());
}

#[test]
fn singleton_generator_is_never_redundant() {
    let t = quotient(&moore_bool("jsl.json"), Powerset);
    let gs = reduce_generators(
        &t,
        GeneratorSet::from_base(&t),
        Strategy::MonotoneMaximal,
        DEFAULT_CAP,
        &mut |_, _| {},
    )
    .unwrap();
    let x = class(&t, "x");
    let y = gs.gens().iter().position(|&g| g != x).unwrap();
    let single = gs.remove(&t, y, &vec![]);
    assert_eq!(single.gens(), [x]);
    assert_eq!(naive_redundancy(&t, &single, 0, DEFAULT_CAP).unwrap(), None);
}

#[test]
fn afa_example_redundancies() {
    let m = moore_bool("aa1.json");
    let t = quotient(&m, Alternating);
    let gs = GeneratorSet::from_base(&t);
    assert_eq!(gs.len(), 5);

    let p3 = position(&t, &gs, "q3");
    let fast = is_redundant(&t, &gs, p3, Strategy::MonotoneMaximal, DEFAULT_CAP)
        .unwrap()
        .unwrap();
    let naive = naive_redundancy(&t, &gs, p3, DEFAULT_CAP).unwrap().unwrap();
    let mut others = gs.gens().to_vec();
    others.remove(p3);
    let q3 = class(&t, "q3");
    assert_eq!(t.sharp(&others, &fast), q3);
    assert_eq!(t.sharp(&others, &naive), q3);
    let q0q1_or_q2 = Antichain::from_clauses([0b011, 0b100]);
    let named = [class(&t, "q0"), class(&t, "q1"), class(&t, "q2")];
    assert_eq!(t.sharp(&named, &q0q1_or_q2), q3);

    let p0 = position(&t, &gs, "q0");
    assert_eq!(naive_redundancy(&t, &gs, p0, DEFAULT_CAP).unwrap(), None);
    assert_eq!(
        is_redundant(&t, &gs, p0, Strategy::MonotoneMaximal, DEFAULT_CAP).unwrap(),
        None
    );

    let reduced = reduce_generators(
        &t,
        gs,
        Strategy::MonotoneMaximal,
        DEFAULT_CAP,
        &mut |_, _| {},
    )
    .unwrap();
    let mut names = reduced.names().to_vec();
    names.sort();
    assert_eq!(names, ["q0", "q1", "q2"]);
    let afa = free_representation_canonical(&t, &reduced).unwrap();
    let aa2 = succinct(fixture("aa2.json"), |d| match d {
        Document::Alternating(s) => Some(s),
        _ => None,
    });
    assert!(isomorphism(&afa, &aa2).is_some());
}

#[test]
fn caba_example_expresses_q2_as_not_q1() {
    let t = quotient(&moore_bool("ca1.json"), Caba);
    let gs = GeneratorSet::from_base(&t);
    let p2 = position(&t, &gs, "q2");
    let witness = is_redundant(&t, &gs, p2, Strategy::MonotoneMaximal, DEFAULT_CAP)
        .unwrap()
        .unwrap();
    let mut others = gs.gens().to_vec();
    others.remove(p2);
    let not_q1 = CabaElem::new(2, [0b00, 0b01]).unwrap();
    let q2 = class(&t, "q2");
    assert_eq!(t.sharp(&others, &not_q1), q2);
    assert_eq!(t.sharp(&others, &witness), q2);

    let min = t_minimize(
        &moore_bool("ca1.json"),
        Caba,
        Strategy::MonotoneMaximal,
        DEFAULT_CAP,
    )
    .unwrap();
    let ca2 = succinct(fixture("ca2.json"), |d| match d {
        Document::Caba(s) => Some(s),
        _ => None,
    });
    assert!(isomorphism(&min.automaton, &ca2).is_some());
}

fn group_ga1() -> (MooreMachine<usize>, GroupMonad) {
    let monad = GroupMonad::new(perm_ab());
    let group = monad.group().clone();
    let m = moore_tokens("ga1.json").map_outputs(|t| group.output_index(&t.to_string()).unwrap());
    (m, monad)
}

#[test]
fn group_example_removes_q2_then_q4() {
    let (m, monad) = group_ga1();
    let t = quotient(&m, monad);
    let gs = GeneratorSet::from_base(&t);
    let p2 = position(&t, &gs, "q2");
    let w = is_redundant(&t, &gs, p2, Strategy::Orbit, DEFAULT_CAP)
        .unwrap()
        .unwrap();
    let gs = gs.remove(&t, p2, &w);
    let redundant: Vec<&str> = (0..gs.len())
        .filter(|&p| {
            is_redundant(&t, &gs, p, Strategy::Orbit, DEFAULT_CAP)
                .unwrap()
                .is_some()
        })
        .map(|p| gs.names()[p].as_str())
        .collect();
    assert_eq!(redundant, ["q3", "q4"]);
    let p4 = position(&t, &gs, "q4");
    let w = is_redundant(&t, &gs, p4, Strategy::Orbit, DEFAULT_CAP)
        .unwrap()
        .unwrap();
    let gs = gs.remove(&t, p4, &w);
    assert_eq!(gs.names(), ["q0", "q1", "q3"]);
    assert!(gs.split_epi_failure(&t).is_none());
    assert!((0..3).all(|p| naive_redundancy(&t, &gs, p, DEFAULT_CAP).unwrap().is_none()));
}

#[test]
fn group_example_matches_figure_and_reads_bb() {
    let (m, monad) = group_ga1();
    let min = t_minimize(&m, monad, Strategy::Orbit, DEFAULT_CAP).unwrap();
    let ga2 = succinct(fixture("ga2.json"), |d| match d {
        Document::Group(s) => Some(s),
        _ => None,
    });
    assert!(isomorphism(&min.automaton, &ga2).is_some());

    let group = ga2.monad().group();
    let swap = group.index_of("(ab)").unwrap();
    let b = ga2.alphabet().index_of("b").unwrap();
    let c1 = ga2.step(ga2.initial(), b);
    assert_eq!(c1, GroupElem { g: swap, x: 1 });
    let c2 = ga2.step(&c1, b);
    assert_eq!(c2, GroupElem { g: swap, x: 2 });
    assert_eq!(group.outputs()[ga2.observe(&c2)], "b");
}

#[test]
fn vector_bind_and_observe_are_linear() {
    let q = Field::Rational;
    let v = VectorMonad::new(q);
    let u = VecElem::from_terms([(0, q.from_i64(1)), (1, q.from_i64(2))]);
    let f = |x: usize| {
        if x == 0 {
            VecElem::from_terms([(0, q.from_i64(1))])
        } else {
            VecElem::from_terms([(0, q.from_i64(1)), (1, q.from_i64(1))])
        }
    };
    assert_eq!(
        v.bind(&u, 2, &f),
        VecElem::from_terms([(0, q.from_i64(3)), (1, q.from_i64(2))])
    );
    assert_eq!(v.observe(&u, &|_| q.from_i64(1)), q.from_i64(3));
}

#[test]
fn weighted_examples() {
    let q = Field::Rational;
    let wa2 = match fixture("wa2.json") {
        Document::Weighted(w) => w,
        other => panic!("{}", other.kind()),
    };
    assert_eq!(wa2.run(&word(wa2.alphabet(), "c")).unwrap(), q.from_i64(3));
    assert_eq!(wa2.run(&Word::empty()).unwrap(), wa2.observe(wa2.initial()));

    let wa1 = weighted_from_moore(&moore_scalar("wa1.json", q), q).unwrap();
    assert_eq!(wa1.run(&word(wa1.alphabet(), "aa")).unwrap(), q.from_i64(1));
    let min = weighted_t_minimize(&wa1).unwrap();
    assert!(isomorphism(&min.automaton, &wa2).is_some());

    let basis = observation_basis(&wa1);
    assert_eq!(basis.words.len(), 3);
    let rows = &basis.rows;
    let sum: Vec<_> = (0..3)
        .map(|j| &(&rows[1][j] + &rows[2][j]) + &rows[2][j])
        .collect();
    assert_eq!(rows[3], sum);
}

#[test]
fn zero_rows_and_zero_automata() {
    let q = Field::Rational;
    let ab = Alphabet::new(["a", "b"]).unwrap();
    let m = MooreMachine::from_table(
        ab,
        0,
        vec![q.zero(), q.zero()],
        vec![vec![1, 0], vec![1, 1]],
    )
    .unwrap();
    let w = weighted_from_moore(&m, q).unwrap();
    let basis = observation_basis(&w);
    assert!(basis.rows.iter().flatten().all(|s| s.is_zero()));
    let min = weighted_t_minimize(&w).unwrap();
    assert_eq!(min.generators(), 0);
    assert!(min.automaton.initial().is_zero());

    let rows = vec![vec![q.from_i64(1), q.zero()], vec![q.zero(), q.zero()]];
    assert_eq!(vec_redundancy(q, &rows, 1), Some(VecElem::zero()));
    assert_eq!(vec_redundancy(q, &rows, 0), None);
}

#[test]
fn gf2_minimization_is_no_larger_than_the_dfa() {
    let f = Field::Prime(2);
    let m = moore_bool("intro_dfa.json").map_outputs(|&b| f.from_i64(b as i64));
    let min = t_minimize(&m, VectorMonad::new(f), Strategy::Linear, DEFAULT_CAP).unwrap();
    assert!(min.generators() <= 8);
    let det = min.automaton.determinize(DEFAULT_CAP).unwrap();
    assert!(tsa_core::moore::equiv_exact(&m, &det).unwrap().is_equal());
}

#[test]
fn intro_dfa_has_four_generators_over_powerset() {
    let min = t_minimize(
        &moore_bool("intro_dfa.json"),
        Powerset,
        Strategy::MonotoneMaximal,
        DEFAULT_CAP,
    )
    .unwrap();
    assert_eq!(min.generators(), 4);
    let nfa = min.automaton.determinize(DEFAULT_CAP).unwrap();
    assert_eq!(nfa.minimize().0.len(), 8);
}

#[test]
fn unit_only_representations_are_deterministic() {
    let m = moore_bool("aa1.json");
    let t = quotient(&m, Powerset);
    let s = free_representation(&t, &GeneratorSet::full(&t));
    assert_eq!(s.len(), t.len());
    let det = s.determinize(DEFAULT_CAP).unwrap();
    assert!(det.len() <= t.len());
    assert!(tsa_core::moore::equiv_exact(&m, &det).unwrap().is_equal());

    let d = SuccinctAutomaton::from_moore(Alternating, &m);
    let back = d.determinize(DEFAULT_CAP).unwrap();
    assert_eq!(back.len(), m.len());
    assert!(tsa_core::moore::equiv_exact(&m, &back).unwrap().is_equal());
}
