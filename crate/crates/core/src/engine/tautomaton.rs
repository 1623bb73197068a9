use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::monad::{AlgebraHandle, Carrier, Monad};
use crate::moore::{refine_partition, Alphabet, MooreMachine};

/// A deterministic automaton whose states form a finite algebra for a monad.
///
/// Every state is a class of elements of `T(R)`, where `R` is the state set
/// of the reachable input machine; `class_of` covers all of `T(R)` and each
/// class keeps one representative.
#[derive(Clone, Debug)]
pub struct TAutomaton<M: Monad> {
    monad: M,
    alphabet: Alphabet,
    base_names: Vec<String>,
    reps: Vec<M::Elem>,
    class_of: HashMap<M::Elem, usize>,
    initial: usize,
    output: Vec<M::Out>,
    trans: Vec<Vec<usize>>,
    lifted_size: usize,
}

/// Materializes all of `T(R)` for the reachable part `R` of `m`.
///
/// The initial state is `η(i)`, outputs come from `observe` and transitions
/// from `succ_step` with the machine's transitions as dynamics.
pub fn lift_machine<M: Monad>(
    m: &MooreMachine<M::Out>,
    monad: M,
    cap: usize,
) -> Result<TAutomaton<M>> {
    if !monad.is_finite() {
        return Err(Error::Unsupported(format!(
            "the {} monad has infinite configuration sets and cannot be lifted",
            monad.name()
        )));
    }
    let (r, _) = m.reachable();
    let n = r.len();
    match monad.count(n) {
        Some(c) if c <= cap as u128 => {}
        other => {
            return Err(Error::cap(
                format!("T(R) for {n} reachable states"),
                other,
                cap,
            ))
        }
    }
    let elems = monad.enumerate(n, cap)?;
    let class_of: HashMap<M::Elem, usize> = elems
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let output = elems
        .iter()
        .map(|u| monad.observe(u, &|x| r.output(x).clone()))
        .collect();
    let dynamics = |x: usize, a: usize| monad.unit(n, r.next(x, a));
    let trans = elems
        .iter()
        .map(|u| {
            (0..r.alphabet().len())
                .map(|a| class_of[&monad.succ_step(u, n, a, &dynamics)])
                .collect()
        })
        .collect();
    let initial = class_of[&monad.unit(n, r.initial())];
    Ok(TAutomaton {
        alphabet: r.alphabet().clone(),
        base_names: r.names().to_vec(),
        lifted_size: elems.len(),
        reps: elems,
        class_of,
        initial,
        output,
        trans,
        monad,
    })
}

/// Identifies states with equal languages.
///
/// The quotient's algebra maps an element over classes to representatives,
/// binds, and takes the class of the result.
pub fn observable_quotient<M: Monad>(t: &TAutomaton<M>) -> TAutomaton<M> {
    let classes = refine_partition(&t.output, &t.trans);
    let count = classes.iter().max().map_or(0, |m| m + 1);
    let mut first = vec![usize::MAX; count];
    for (c, &k) in classes.iter().enumerate() {
        if first[k] == usize::MAX {
            first[k] = c;
        }
    }
    TAutomaton {
        monad: t.monad.clone(),
        alphabet: t.alphabet.clone(),
        base_names: t.base_names.clone(),
        reps: first.iter().map(|&c| t.reps[c].clone()).collect(),
        class_of: t
            .class_of
            .iter()
            .map(|(e, &c)| (e.clone(), classes[c]))
            .collect(),
        initial: classes[t.initial],
        output: first.iter().map(|&c| t.output[c].clone()).collect(),
        trans: first
            .iter()
            .map(|&c| t.trans[c].iter().map(|&d| classes[d]).collect())
            .collect(),
        lifted_size: t.lifted_size,
    }
}

impl<M: Monad> TAutomaton<M> {
    pub fn monad(&self) -> &M {
        &self.monad
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of carrier elements.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Size of `T(R)` before any quotient.
    pub fn lifted_size(&self) -> usize {
        self.lifted_size
    }

    pub fn base_len(&self) -> usize {
        self.base_names.len()
    }

    pub fn base_names(&self) -> &[String] {
        &self.base_names
    }

    pub fn rep(&self, c: usize) -> &M::Elem {
        &self.reps[c]
    }

    /// The carrier element an element of `T(R)` belongs to.
    pub fn class_of(&self, u: &M::Elem) -> Option<usize> {
        self.class_of.get(u).copied()
    }

    /// Carrier element of the unit at base state `x`.
    pub fn unit_class(&self, x: usize) -> usize {
        self.class_of[&self.monad.unit(self.base_len(), x)]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn outputs(&self) -> &[M::Out] {
        &self.output
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.trans
    }

    /// Display name of a carrier element, from its representative.
    pub fn element_name(&self, c: usize) -> String {
        self.monad.display(&self.reps[c], &self.base_names)
    }

    /// The underlying deterministic machine on carrier elements.
    pub fn to_moore(&self) -> MooreMachine<M::Out> {
        let names = (0..self.len()).map(|c| self.element_name(c)).collect();
        MooreMachine::new(
            self.alphabet.clone(),
            names,
            self.initial,
            self.output.clone(),
            self.trans.clone(),
        )
        .expect("carrier transitions are total")
    }
}

impl<M: Monad> AlgebraHandle<M> for TAutomaton<M> {
    fn monad(&self) -> &M {
        &self.monad
    }

    fn carrier_size(&self) -> usize {
        self.reps.len()
    }

    fn apply(&self, u: &M::Elem) -> usize {
        self.class_of[&self
            .monad
            .bind(u, self.base_len(), &|c| self.reps[c].clone())]
    }

    fn sharp(&self, g: &[usize], u: &M::Elem) -> usize {
        self.class_of[&self
            .monad
            .bind(u, self.base_len(), &|x| self.reps[g[x]].clone())]
    }
}

impl<M: Monad> Carrier<M> for TAutomaton<M> {
    fn alphabet_len(&self) -> usize {
        self.alphabet.len()
    }

    fn output(&self, c: usize) -> &M::Out {
        &self.output[c]
    }

    fn next(&self, c: usize, symbol: usize) -> usize {
        self.trans[c][symbol]
    }
}
