use std::collections::{HashMap, VecDeque};

use super::{GeneratorSet, TAutomaton};
use crate::error::{Error, Result};
use crate::field::VectorMonad;
use crate::monad::Monad;
use crate::moore::{Alphabet, MooreMachine, Word};

/// An automaton with states `G` whose transitions land in `T(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccinctAutomaton<M: Monad> {
    monad: M,
    alphabet: Alphabet,
    names: Vec<String>,
    initial: M::Elem,
    output: Vec<M::Out>,
    trans: Vec<Vec<M::Elem>>,
}

/// Weighted automata are the succinct automata of the vector-space monad.
pub type WeightedAutomaton = SuccinctAutomaton<VectorMonad>;

impl<M: Monad> SuccinctAutomaton<M> {
    pub fn new(
        monad: M,
        alphabet: Alphabet,
        names: Vec<String>,
        initial: M::Elem,
        output: Vec<M::Out>,
        trans: Vec<Vec<M::Elem>>,
    ) -> Result<Self> {
        let n = names.len();
        if output.len() != n || trans.len() != n {
            return Err(Error::input(
                "outputs and transitions must cover every state",
            ));
        }
        if !monad.fits(&initial, n) {
            return Err(Error::input(
                "initial configuration mentions an unknown state",
            ));
        }
        for (q, row) in trans.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::input(format!(
                    "state `{}` needs one transition per symbol",
                    names[q]
                )));
            }
            if row.iter().any(|u| !monad.fits(u, n)) {
                return Err(Error::input(format!(
                    "a transition of `{}` mentions an unknown state",
                    names[q]
                )));
            }
        }
        Ok(SuccinctAutomaton {
            monad,
            alphabet,
            names,
            initial,
            output,
            trans,
        })
    }

    /// A deterministic machine read as a succinct automaton whose
    /// configurations are all units.
    pub fn from_moore(monad: M, m: &MooreMachine<M::Out>) -> Self {
        let n = m.len();
        SuccinctAutomaton {
            initial: monad.unit(n, m.initial()),
            trans: m
                .transitions()
                .iter()
                .map(|row| row.iter().map(|&t| monad.unit(n, t)).collect())
                .collect(),
            alphabet: m.alphabet().clone(),
            names: m.names().to_vec(),
            output: m.outputs().to_vec(),
            monad,
        }
    }

    pub fn monad(&self) -> &M {
        &self.monad
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> &M::Elem {
        &self.initial
    }

    pub fn output(&self, q: usize) -> &M::Out {
        &self.output[q]
    }

    pub fn outputs(&self) -> &[M::Out] {
        &self.output
    }

    pub fn next(&self, q: usize, symbol: usize) -> &M::Elem {
        &self.trans[q][symbol]
    }

    pub fn transitions(&self) -> &[Vec<M::Elem>] {
        &self.trans
    }

    pub fn with_initial(&self, initial: M::Elem) -> Result<Self> {
        Self::new(
            self.monad.clone(),
            self.alphabet.clone(),
            self.names.clone(),
            initial,
            self.output.clone(),
            self.trans.clone(),
        )
    }

    pub fn with_transition(&self, q: usize, symbol: usize, target: M::Elem) -> Result<Self> {
        let mut trans = self.trans.clone();
        trans[q][symbol] = target;
        Self::new(
            self.monad.clone(),
            self.alphabet.clone(),
            self.names.clone(),
            self.initial.clone(),
            self.output.clone(),
            trans,
        )
    }

    /// Configuration reached from `config` on `symbol`.
    pub fn step(&self, config: &M::Elem, symbol: usize) -> M::Elem {
        self.monad
            .succ_step(config, self.len(), symbol, &|x, a| self.trans[x][a].clone())
    }

    pub fn observe(&self, config: &M::Elem) -> M::Out {
        self.monad.observe(config, &|x| self.output[x].clone())
    }

    /// Output after reading `w` from the initial configuration.
    pub fn run(&self, w: &Word) -> Result<M::Out> {
        if let Some(&bad) = w.symbols().iter().find(|&&a| a >= self.alphabet.len()) {
            return Err(Error::input(format!(
                "symbol index {bad} is not in the alphabet"
            )));
        }
        let config = w
            .symbols()
            .iter()
            .fold(self.initial.clone(), |c, &a| self.step(&c, a));
        Ok(self.observe(&config))
    }

    /// The deterministic machine on configurations reachable from the
    /// initial one, explored breadth-first.
    pub fn determinize(&self, cap: usize) -> Result<MooreMachine<M::Out>> {
        let mut index: HashMap<M::Elem, usize> = HashMap::from([(self.initial.clone(), 0)]);
        let mut configs = vec![self.initial.clone()];
        let mut trans: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in 0..self.alphabet.len() {
                let next = self.step(&configs[i], a);
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        if configs.len() >= cap {
                            return Err(Error::cap("determinization", None, cap));
                        }
                        index.insert(next.clone(), configs.len());
                        configs.push(next);
                        queue.push_back(configs.len() - 1);
                        configs.len() - 1
                    }
                };
                row.push(j);
            }
            trans.push(row);
        }
        let output = configs.iter().map(|c| self.observe(c)).collect();
        let names = configs
            .iter()
            .map(|c| self.monad.display(c, &self.names))
            .collect();
        MooreMachine::new(self.alphabet.clone(), names, 0, output, trans)
    }

    /// Human-readable rendering of a configuration over this automaton's states.
    pub fn display(&self, config: &M::Elem) -> String {
        self.monad.display(config, &self.names)
    }
}

/// The succinct automaton read off a generator set using its stored
/// decompositions: initial configuration `decompose(initial)`, transitions
/// `decompose(δ(g, a))`.
pub fn free_representation<M: Monad>(
    t: &TAutomaton<M>,
    gs: &GeneratorSet<M>,
) -> SuccinctAutomaton<M> {
    build(t, gs, |c| Ok(gs.decompose(c).clone())).expect("stored decompositions are total")
}

/// Like [`free_representation`], but with each needed decomposition
/// replaced by the monad's canonical one when it exists.
pub fn free_representation_canonical<M: Monad>(
    t: &TAutomaton<M>,
    gs: &GeneratorSet<M>,
) -> Result<SuccinctAutomaton<M>> {
    let mut cache: HashMap<usize, M::Elem> = HashMap::new();
    let mut lookup = |c: usize| -> Result<M::Elem> {
        if let Some(u) = cache.get(&c) {
            return Ok(u.clone());
        }
        let u = t
            .monad()
            .decompose_maximal(t, gs.gens(), c)?
            .unwrap_or_else(|| gs.decompose(c).clone());
        cache.insert(c, u.clone());
        Ok(u)
    };
    build(t, gs, &mut lookup)
}

fn build<M: Monad>(
    t: &TAutomaton<M>,
    gs: &GeneratorSet<M>,
    mut decompose: impl FnMut(usize) -> Result<M::Elem>,
) -> Result<SuccinctAutomaton<M>> {
    let initial = decompose(t.initial())?;
    let mut trans = Vec::with_capacity(gs.len());
    for &g in gs.gens() {
        let row = t.transitions()[g]
            .iter()
            .map(|&c| decompose(c))
            .collect::<Result<Vec<_>>>()?;
        trans.push(row);
    }
    Ok(SuccinctAutomaton {
        monad: t.monad().clone(),
        alphabet: t.alphabet().clone(),
        names: gs.names().to_vec(),
        initial,
        output: gs.gens().iter().map(|&g| t.outputs()[g].clone()).collect(),
        trans,
    })
}
