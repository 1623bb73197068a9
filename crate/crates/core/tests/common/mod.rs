#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tsa_core::cli::{Document, GroupDocument, Token};
use tsa_core::engine::SuccinctAutomaton;
use tsa_core::field::{Field, Scalar};
use tsa_core::set_monads::{FiniteGroup, GroupMonad};
use tsa_core::{Alphabet, Monad, MooreMachine};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn fixture(name: &str) -> Document {
    Document::parse(&fixture_text(name)).unwrap()
}

pub fn moore_tokens(name: &str) -> MooreMachine<Token> {
    match fixture(name) {
        Document::Moore(m) => m,
        other => panic!("{name} is a {} document", other.kind()),
    }
}

pub fn moore_bool(name: &str) -> MooreMachine<bool> {
    moore_tokens(name).map_outputs(|t| match t {
        Token::Bool(b) => *b,
        Token::Text(s) => panic!("non-boolean output {s}"),
    })
}

pub fn moore_scalar(name: &str, field: Field) -> MooreMachine<Scalar> {
    moore_tokens(name)
        .try_map_outputs(|t| field.parse_scalar(&t.to_string()))
        .unwrap()
}

pub fn perm_ab() -> FiniteGroup {
    GroupDocument::parse(&fixture_text("perm_ab.json")).unwrap()
}

/// The swap group on `{a, b}` fixing both boolean outputs.
pub fn swap_fixing_outputs() -> GroupMonad {
    GroupMonad::new(
        FiniteGroup::swap_pair(["a", "b"], vec!["false".into(), "true".into()], vec![0, 1])
            .unwrap(),
    )
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A DFA over `{a, b}` with 1 to `max_states` states, uniform transitions
/// and fair-coin outputs; state 0 is initial.
pub fn random_dfa(rng: &mut impl Rng, max_states: usize) -> MooreMachine<bool> {
    let n = rng.gen_range(1..=max_states);
    let trans = (0..n)
        .map(|_| (0..2).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let output = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    MooreMachine::from_table(Alphabet::new(["a", "b"]).unwrap(), 0, output, trans).unwrap()
}

pub fn minimal_size<O: Clone + Eq + std::hash::Hash>(m: &MooreMachine<O>) -> usize {
    m.reachable().0.minimize().0.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// A bijection `pi` with `a` renamed along `pi` equal to `b`, if any.
pub fn isomorphism<M: Monad>(
    a: &SuccinctAutomaton<M>,
    b: &SuccinctAutomaton<M>,
) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() || a.alphabet() != b.alphabet() {
        return None;
    }
    let m = a.monad();
    permutations(n).into_iter().find(|pi| {
        let rename = |u: &M::Elem| m.bind(u, n, &|x| m.unit(n, pi[x]));
        rename(a.initial()) == *b.initial()
            && (0..n).all(|q| {
                a.output(q) == b.output(pi[q])
                    && (0..a.alphabet().len()).all(|s| rename(a.next(q, s)) == *b.next(pi[q], s))
            })
    })
}
