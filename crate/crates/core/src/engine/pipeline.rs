use super::{
    free_representation_canonical, lift_machine, observable_quotient, reduce_generators,
    GeneratorSet, SuccinctAutomaton, WeightedAutomaton,
};
use crate::error::{Error, Result};
use crate::field::{
    basis_of, observation_basis, vec_redundancy, Field, Scalar, VecElem, VectorMonad,
};
use crate::monad::{Monad, Strategy};
use crate::moore::{Equivalence, MooreMachine};

/// Default bound on materialized carriers and determinizations.
pub const DEFAULT_CAP: usize = 100_000;

/// A minimized succinct automaton with the sizes seen along the way.
#[derive(Clone, Debug)]
pub struct Minimization<M: Monad> {
    pub automaton: SuccinctAutomaton<M>,
    /// States of the input automaton.
    pub states_in: usize,
    /// Size of the observable quotient (for weighted input: the dimension
    /// of the observation space).
    pub carrier: usize,
    /// Size of `T(R)` before quotienting (equal to `carrier` for weighted input).
    pub lifted: usize,
}

impl<M: Monad> Minimization<M> {
    pub fn generators(&self) -> usize {
        self.automaton.len()
    }

    pub fn summary(&self) -> String {
        format!(
            "states_in={} carrier={} generators={}",
            self.states_in,
            self.carrier,
            self.generators()
        )
    }
}

/// Reachable part, full lift, observable quotient, generator reduction
/// starting from the units of the reachable states, then the free
/// representation over the surviving generators.
pub fn t_minimize<M: Monad>(
    m: &MooreMachine<M::Out>,
    monad: M,
    strategy: Strategy,
    cap: usize,
) -> Result<Minimization<M>> {
    let lifted = lift_machine(m, monad, cap)?;
    let quotient = observable_quotient(&lifted);
    let start = GeneratorSet::from_base(&quotient);
    let gs = reduce_generators(&quotient, start, strategy, cap, &mut |_, _| {})?;
    Ok(Minimization {
        automaton: free_representation_canonical(&quotient, &gs)?,
        states_in: m.len(),
        carrier: quotient.len(),
        lifted: lifted.len(),
    })
}

/// A deterministic machine with field outputs as a weighted automaton with
/// every transition of weight one.
pub fn weighted_from_moore(m: &MooreMachine<Scalar>, field: Field) -> Result<WeightedAutomaton> {
    if let Some(bad) = m.outputs().iter().find(|o| !field.contains(o)) {
        return Err(Error::input(format!("output {bad} is not in {field}")));
    }
    Ok(SuccinctAutomaton::from_moore(VectorMonad::new(field), m))
}

/// Minimizes a weighted automaton without materializing configurations.
///
/// The reachable states are the initial generators and the observation
/// basis replaces the observable quotient; a state is dropped when its row
/// is a combination of the rows of the other remaining states, and the
/// combination is substituted for it in every remaining transition.
pub fn weighted_t_minimize(w: &WeightedAutomaton) -> Result<Minimization<VectorMonad>> {
    let monad = *w.monad();
    let field = monad.field();
    let basis = observation_basis(w);
    let n = w.len();
    let mut kept = reachable_support(w);
    let mut index = vec![usize::MAX; n];
    for (i, &q) in kept.iter().enumerate() {
        index[q] = i;
    }
    let k0 = kept.len();
    let reindex = |u: &VecElem| monad.bind(u, k0, &|x| monad.unit(k0, index[x]));
    let mut initial = reindex(w.initial());
    let mut trans: Vec<Vec<VecElem>> = w
        .transitions()
        .iter()
        .enumerate()
        .map(|(q, row)| {
            if index[q] == usize::MAX {
                Vec::new()
            } else {
                row.iter().map(&reindex).collect()
            }
        })
        .collect();
    for r in (0..n).rev() {
        let Some(position) = kept.iter().position(|&q| q == r) else {
            continue;
        };
        let rows: Vec<Vec<Scalar>> = kept.iter().map(|&q| basis.rows[q].clone()).collect();
        let Some(witness) = vec_redundancy(field, &rows, position) else {
            continue;
        };
        let k = kept.len() - 1;
        let e = |j: usize| match j.cmp(&position) {
            std::cmp::Ordering::Less => monad.unit(k, j),
            std::cmp::Ordering::Equal => witness.clone(),
            std::cmp::Ordering::Greater => monad.unit(k, j - 1),
        };
        initial = monad.bind(&initial, k, &e);
        for &q in &kept {
            for t in trans[q].iter_mut() {
                *t = monad.bind(t, k, &e);
            }
        }
        kept.remove(position);
    }
    let automaton = SuccinctAutomaton::new(
        monad,
        w.alphabet().clone(),
        kept.iter().map(|&q| w.names()[q].clone()).collect(),
        initial,
        kept.iter().map(|&q| w.output(q).clone()).collect(),
        kept.iter().map(|&q| trans[q].clone()).collect(),
    )?;
    Ok(Minimization {
        automaton,
        states_in: n,
        carrier: basis.words.len(),
        lifted: basis.words.len(),
    })
}

/// States reachable from the support of the initial configuration along
/// transition supports, in index order.
fn reachable_support(w: &WeightedAutomaton) -> Vec<usize> {
    let mut seen = vec![false; w.len()];
    let mut stack: Vec<usize> = w.initial().terms().map(|(x, _)| x).collect();
    while let Some(q) = stack.pop() {
        if std::mem::replace(&mut seen[q], true) {
            continue;
        }
        for u in &w.transitions()[q] {
            stack.extend(u.terms().map(|(x, _)| x).filter(|&x| !seen[x]));
        }
    }
    (0..w.len()).filter(|&q| seen[q]).collect()
}

/// Exact equivalence of two weighted automata over the same alphabet and
/// field, via the observation basis of their difference.
///
/// A counterexample is a basis word on which the two weights differ.
pub fn weighted_equiv(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<Equivalence> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::input("automata have different alphabets"));
    }
    let field = a.monad().field();
    if b.monad().field() != field {
        return Err(Error::input("automata are over different fields"));
    }
    let shift = a.len();
    let mut outputs = a.outputs().to_vec();
    outputs.extend(b.outputs().iter().cloned());
    let mut trans: Vec<Vec<VecElem>> = a.transitions().to_vec();
    for row in b.transitions() {
        trans.push(
            row.iter()
                .map(|v| VecElem::from_terms(v.terms().map(|(x, c)| (x + shift, c.clone()))))
                .collect(),
        );
    }
    let basis = basis_of(field, &outputs, &trans);
    let start: Vec<(usize, Scalar)> = a
        .initial()
        .terms()
        .map(|(x, c)| (x, c.clone()))
        .chain(b.initial().terms().map(|(x, c)| (x + shift, -c)))
        .collect();
    for (j, word) in basis.words.iter().enumerate() {
        let value = start
            .iter()
            .fold(field.zero(), |acc, (x, c)| &acc + &(c * &basis.rows[*x][j]));
        if !value.is_zero() {
            return Ok(Equivalence::Counterexample(word.clone()));
        }
    }
    Ok(Equivalence::Equal)
}
