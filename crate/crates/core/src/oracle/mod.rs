//! Brute-force verifiers. Every instance gets a second, deliberately naive
//! semantics (plain sets of sets, dense vectors) that shares no code with the
//! canonical forms it is used to check.

mod raw;

use std::collections::{BTreeMap, VecDeque};
use std::fmt::{self, Debug};

use crate::engine::{
    weighted_equiv, GeneratorSet, SuccinctAutomaton, TAutomaton, WeightedAutomaton,
};
use crate::error::{Error, Result};
use crate::monad::Monad;
use crate::moore::{equiv_exact, words_up_to, Alphabet, Equivalence, MooreMachine, Word};
use crate::set_monads::Alternating;

/// Independent semantics for a monad instance.
pub trait Oracle: Monad {
    type Raw: Clone + Eq + Ord + Debug;

    fn to_raw(&self, u: &Self::Elem, base: usize) -> Self::Raw;

    fn canonicalize(&self, r: &Self::Raw, base: usize) -> Self::Elem;

    /// Every raw element over `base`, in a fixed order.
    fn raw_all(&self, base: usize, cap: usize) -> Result<Vec<Self::Raw>>;

    fn raw_unit(&self, base: usize, x: usize) -> Self::Raw;

    /// `μ ∘ T(f)` computed from the set-level definition.
    fn raw_kleisli(
        &self,
        u: &Self::Raw,
        base: usize,
        target: usize,
        f: &dyn Fn(usize) -> Self::Raw,
    ) -> Self::Raw;

    fn raw_observe(
        &self,
        u: &Self::Raw,
        base: usize,
        out: &dyn Fn(usize) -> Self::Out,
    ) -> Self::Out;

    fn raw_step(
        &self,
        u: &Self::Raw,
        base: usize,
        symbol: usize,
        dynamics: &dyn Fn(usize, usize) -> Self::Raw,
    ) -> Self::Raw {
        self.raw_kleisli(u, base, base, &|x| dynamics(x, symbol))
    }
}

/// Output of `s` on `w`, computed with the raw semantics.
pub fn raw_run<M: Oracle>(s: &SuccinctAutomaton<M>, w: &Word) -> M::Out {
    let m = s.monad();
    let n = s.len();
    let trans: Vec<Vec<M::Raw>> = s
        .transitions()
        .iter()
        .map(|row| row.iter().map(|u| m.to_raw(u, n)).collect())
        .collect();
    let config = w.symbols().iter().fold(m.to_raw(s.initial(), n), |c, &a| {
        m.raw_step(&c, n, a, &|x, b| trans[x][b].clone())
    });
    m.raw_observe(&config, n, &|x| s.output(x).clone())
}

/// Exhaustive redundancy test: the first element of `T(G \ {r})`, in raw
/// enumeration order, whose evaluation lands in the class of `r`.
pub fn naive_redundancy<M: Oracle>(
    t: &TAutomaton<M>,
    gs: &GeneratorSet<M>,
    position: usize,
    cap: usize,
) -> Result<Option<M::Elem>> {
    let mut others = gs.gens().to_vec();
    let target = others.remove(position);
    naive_express(t, &others, target, cap)
}

/// The first raw element over `gens` whose evaluation lands in `target`.
pub fn naive_express<M: Oracle>(
    t: &TAutomaton<M>,
    gens: &[usize],
    target: usize,
    cap: usize,
) -> Result<Option<M::Elem>> {
    let m = t.monad();
    let n = t.base_len();
    let reps: Vec<M::Raw> = gens.iter().map(|&c| m.to_raw(t.rep(c), n)).collect();
    let k = reps.len();
    for u in m.raw_all(k, cap)? {
        let image = m.raw_kleisli(&u, k, n, &|j| reps[j].clone());
        if t.class_of(&m.canonicalize(&image, n)) == Some(target) {
            return Ok(Some(m.canonicalize(&u, k)));
        }
    }
    Ok(None)
}

/// Result of a single check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    /// The word on which the two sides first disagree.
    Failed(Word),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationCheck {
    pub name: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub alphabet: Alphabet,
    pub checks: Vec<VerificationCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<(&str, &Word)> {
        self.checks.iter().find_map(|c| match &c.outcome {
            Outcome::Failed(w) => Some((c.name.as_str(), w)),
            _ => None,
        })
    }

    fn push(&mut self, name: String, outcome: Outcome) {
        self.checks.push(VerificationCheck { name, outcome });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.outcome {
                Outcome::Passed => writeln!(f, "{}: pass", c.name)?,
                Outcome::Failed(w) => {
                    writeln!(f, "{}: FAIL on {}", c.name, w.display(&self.alphabet))?
                }
                Outcome::Skipped(why) => writeln!(f, "{}: skipped ({why})", c.name)?,
            }
        }
        Ok(())
    }
}

fn bounded<O: PartialEq>(
    k: usize,
    depth: usize,
    mut f: impl FnMut(&Word) -> O,
    mut g: impl FnMut(&Word) -> O,
) -> Outcome {
    words_up_to(k, depth)
        .find(|w| f(w) != g(w))
        .map_or(Outcome::Passed, Outcome::Failed)
}

fn exact_outcome(e: Result<Equivalence>) -> Result<Outcome> {
    match e {
        Ok(Equivalence::Equal) => Ok(Outcome::Passed),
        Ok(Equivalence::Counterexample(w)) => Ok(Outcome::Failed(w)),
        Err(Error::CapExceeded { .. }) => {
            Ok(Outcome::Skipped("determinization above the cap".into()))
        }
        Err(e) => Err(e),
    }
}

/// Compares `s` against `m` on every word up to `depth` using the raw
/// semantics, then exactly through the determinization of `s` when it fits
/// under `cap`.
pub fn verify_succinct<M: Oracle>(
    m: &MooreMachine<M::Out>,
    s: &SuccinctAutomaton<M>,
    depth: usize,
    cap: usize,
) -> Result<VerificationReport> {
    if m.alphabet() != s.alphabet() {
        return Err(Error::input("automata have different alphabets"));
    }
    let mut report = VerificationReport {
        alphabet: m.alphabet().clone(),
        checks: Vec::new(),
    };
    let k = m.alphabet().len();
    let outcome = bounded(
        k,
        depth,
        |w| m.run(w).expect("enumerated words are over the alphabet"),
        |w| raw_run(s, w),
    );
    report.push(format!("bounded(depth {depth})"), outcome);
    let exact = s.determinize(cap).and_then(|d| equiv_exact(m, &d));
    report.push("exact".into(), exact_outcome(exact)?);
    Ok(report)
}

/// Compares two weighted automata on every word up to `depth` with dense
/// vector arithmetic, then exactly through observation rows.
pub fn verify_weighted(
    a: &WeightedAutomaton,
    b: &WeightedAutomaton,
    depth: usize,
) -> Result<VerificationReport> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::input("automata have different alphabets"));
    }
    let mut report = VerificationReport {
        alphabet: a.alphabet().clone(),
        checks: Vec::new(),
    };
    let outcome = bounded(
        a.alphabet().len(),
        depth,
        |w| raw_run(a, w),
        |w| raw_run(b, w),
    );
    report.push(format!("bounded(depth {depth})"), outcome);
    report.push("exact".into(), exact_outcome(weighted_equiv(a, b))?);
    Ok(report)
}

/// Outcome of the exhaustive search for a small alternating automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AfaSearch {
    Exists(SuccinctAutomaton<Alternating>),
    NotExists,
}

/// Searches every alternating automaton with `k` states over the alphabet of
/// `lang` (all initial formulas, outputs and transition formulas) for one
/// accepting the language of `lang`.
pub fn no_smaller_afa_check(lang: &MooreMachine<bool>, k: usize, cap: usize) -> Result<AfaSearch> {
    let alt = Alternating;
    let alphabet = lang.alphabet().clone();
    let symbols = alphabet.len();
    let formulas = alt.raw_all(k, cap)?;
    let slots = 1 + k * symbols;
    let total = (0..slots).try_fold(1u128 << k, |acc, _| acc.checked_mul(formulas.len() as u128));
    match total {
        Some(t) if t <= cap as u128 => {}
        other => {
            return Err(Error::cap(
                format!("{k}-state alternating automata"),
                other,
                cap,
            ))
        }
    }
    let (target, _) = lang.minimize();
    let depth = target.len() + 1;
    let mut digits = vec![0usize; slots];
    loop {
        for outputs in 0u64..1 << k {
            let out = |x: usize| outputs >> x & 1 == 1;
            let init = &formulas[digits[0]];
            let trans = |x: usize, a: usize| formulas[digits[1 + x * symbols + a]].clone();
            let accepts = |w: &Word| {
                let c = w
                    .symbols()
                    .iter()
                    .fold(init.clone(), |c, &a| alt.raw_step(&c, k, a, &trans));
                alt.raw_observe(&c, k, &out)
            };
            let prefilter = words_up_to(symbols, depth).all(|w| {
                accepts(&w)
                    == target
                        .run(&w)
                        .expect("enumerated words are over the alphabet")
            });
            if !prefilter {
                continue;
            }
            let det = raw_determinize(&alt, k, &alphabet, init.clone(), &out, &trans, cap)?;
            if equiv_exact(&target, &det)?.is_equal() {
                let names: Vec<String> = (0..k).map(|x| format!("q{x}")).collect();
                let s = SuccinctAutomaton::new(
                    alt,
                    alphabet,
                    names,
                    alt.canonicalize(init, k),
                    (0..k).map(out).collect(),
                    (0..k)
                        .map(|x| {
                            (0..symbols)
                                .map(|a| alt.canonicalize(&trans(x, a), k))
                                .collect()
                        })
                        .collect(),
                )?;
                return Ok(AfaSearch::Exists(s));
            }
        }
        let Some(i) = digits.iter().position(|&d| d + 1 < formulas.len()) else {
            return Ok(AfaSearch::NotExists);
        };
        digits[i] += 1;
        for d in &mut digits[..i] {
            *d = 0;
        }
    }
}

fn raw_determinize<M: Oracle>(
    m: &M,
    base: usize,
    alphabet: &Alphabet,
    initial: M::Raw,
    out: &dyn Fn(usize) -> M::Out,
    trans: &dyn Fn(usize, usize) -> M::Raw,
    cap: usize,
) -> Result<MooreMachine<M::Out>> {
    let mut index = BTreeMap::from([(initial.clone(), 0)]);
    let mut configs = vec![initial];
    let mut rows = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::new();
        for a in 0..alphabet.len() {
            let next = m.raw_step(&configs[i], base, a, trans);
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if configs.len() >= cap {
                        return Err(Error::cap("raw determinization", None, cap));
                    }
                    index.insert(next.clone(), configs.len());
                    configs.push(next);
                    queue.push_back(configs.len() - 1);
                    configs.len() - 1
                }
            };
            row.push(j);
        }
        rows.push(row);
    }
    let outputs = configs
        .iter()
        .map(|c| m.raw_observe(c, base, out))
        .collect();
    let names = (0..configs.len()).map(|i| format!("c{i}")).collect();
    MooreMachine::new(alphabet.clone(), names, 0, outputs, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, VectorMonad};
    use crate::set_monads::{Caba, Powerset};

    #[test]
    fn raw_counts() {
        assert_eq!(Powerset.raw_all(3, 100).unwrap().len(), 8);
        assert_eq!(Alternating.raw_all(2, 100).unwrap().len(), 6);
        assert_eq!(Alternating.raw_all(3, 100).unwrap().len(), 20);
        assert_eq!(Alternating.raw_all(4, 1000).unwrap().len(), 168);
        assert_eq!(Caba.raw_all(2, 100).unwrap().len(), 16);
        assert_eq!(
            VectorMonad::new(Field::Prime(3))
                .raw_all(2, 100)
                .unwrap()
                .len(),
            9
        );
        assert!(VectorMonad::new(Field::Rational).raw_all(1, 100).is_err());
    }

    #[test]
    fn raw_and_canonical_agree_on_enumerations() {
        let alt = Alternating;
        for u in alt.enumerate(3, 100).unwrap() {
            assert_eq!(alt.canonicalize(&alt.to_raw(&u, 3), 3), u);
        }
        let c = Caba;
        for u in c.enumerate(2, 100).unwrap() {
            assert_eq!(c.canonicalize(&c.to_raw(&u, 2), 2), u);
        }
    }

    #[test]
    fn raw_alternating_unit_law() {
        let alt = Alternating;
        for u in alt.raw_all(2, 100).unwrap() {
            assert_eq!(alt.raw_kleisli(&u, 2, 2, &|x| alt.raw_unit(2, x)), u);
        }
    }
}
