use std::collections::HashSet;

use super::TAutomaton;
use crate::error::{Error, Result};
use crate::monad::{AlgebraHandle, Monad, Strategy};

/// Generators for a carrier, with a right inverse of their free extension.
///
/// `decompose[c]` is an element over generator positions `0..len()` that
/// evaluates to carrier element `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet<M: Monad> {
    gens: Vec<usize>,
    names: Vec<String>,
    decompose: Vec<M::Elem>,
}

impl<M: Monad> GeneratorSet<M> {
    /// Every carrier element, each decomposing as its own unit.
    pub fn full(t: &TAutomaton<M>) -> Self {
        let n = t.len();
        GeneratorSet {
            gens: (0..n).collect(),
            names: (0..n).map(|c| t.element_name(c)).collect(),
            decompose: (0..n).map(|c| t.monad().unit(n, c)).collect(),
        }
    }

    /// The classes of the units of the base states, in base order without
    /// repeats. Each carrier element decomposes as the image of its
    /// representative.
    pub fn from_base(t: &TAutomaton<M>) -> Self {
        let mut gens = Vec::new();
        let mut names = Vec::new();
        let mut position = vec![0; t.base_len()];
        for (x, slot) in position.iter_mut().enumerate() {
            let c = t.unit_class(x);
            *slot = match gens.iter().position(|&g| g == c) {
                Some(p) => p,
                None => {
                    gens.push(c);
                    names.push(t.base_names()[x].clone());
                    gens.len() - 1
                }
            };
        }
        let m = t.monad();
        let k = gens.len();
        let decompose = (0..t.len())
            .map(|c| m.bind(t.rep(c), k, &|x| m.unit(k, position[x])))
            .collect();
        GeneratorSet {
            gens,
            names,
            decompose,
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Carrier elements of the generators, in order.
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn decompose(&self, c: usize) -> &M::Elem {
        &self.decompose[c]
    }

    /// First carrier element whose decomposition does not evaluate back to
    /// it, if any.
    pub fn split_epi_failure(&self, t: &TAutomaton<M>) -> Option<usize> {
        (0..t.len()).find(|&c| t.sharp(&self.gens, &self.decompose[c]) != c)
    }

    /// Drops the generator at `position`, substituting `witness` (an element
    /// over the remaining generators) for it in every decomposition.
    pub fn remove(&self, t: &TAutomaton<M>, position: usize, witness: &M::Elem) -> Self {
        let m = t.monad();
        let k = self.gens.len() - 1;
        let e = |j: usize| match j.cmp(&position) {
            std::cmp::Ordering::Less => m.unit(k, j),
            std::cmp::Ordering::Equal => witness.clone(),
            std::cmp::Ordering::Greater => m.unit(k, j - 1),
        };
        let mut gens = self.gens.clone();
        gens.remove(position);
        let mut names = self.names.clone();
        names.remove(position);
        GeneratorSet {
            gens,
            names,
            decompose: self.decompose.iter().map(|d| m.bind(d, k, &e)).collect(),
        }
    }
}

/// Whether the generator at `position` is a combination of the others.
///
/// Returns the witness, an element over the remaining generators (in order),
/// or `None` when the generator is isolated.
pub fn is_redundant<M: Monad>(
    t: &TAutomaton<M>,
    gs: &GeneratorSet<M>,
    position: usize,
    strategy: Strategy,
    cap: usize,
) -> Result<Option<M::Elem>> {
    let target = gs.gens[position];
    let mut others = gs.gens.clone();
    others.remove(position);
    express(t, &others, target, strategy, cap)
}

/// Finds an element over `gens` evaluating to `target`.
pub fn express<M: Monad>(
    t: &TAutomaton<M>,
    gens: &[usize],
    target: usize,
    strategy: Strategy,
    cap: usize,
) -> Result<Option<M::Elem>> {
    let m = t.monad();
    if strategy == Strategy::Naive {
        return Ok(m
            .enumerate(gens.len(), cap)?
            .into_iter()
            .find(|u| t.sharp(gens, u) == target));
    }
    if strategy != m.fast_strategy() {
        return Err(Error::StrategyMismatch {
            strategy: strategy.name().to_string(),
            monad: m.name().to_string(),
        });
    }
    m.decompose_maximal(t, gens, target)
}

/// Removes redundant generators until all remaining ones are isolated.
///
/// Generators are scanned once, from the last to the first. An isolated
/// generator stays isolated after later removals, so nothing is re-tested.
/// `on_removal` sees the generator set after every removal together with the
/// carrier element that was dropped.
pub fn reduce_generators<M: Monad>(
    t: &TAutomaton<M>,
    start: GeneratorSet<M>,
    strategy: Strategy,
    cap: usize,
    on_removal: &mut dyn FnMut(&GeneratorSet<M>, usize),
) -> Result<GeneratorSet<M>> {
    let mut gs = start;
    for position in (0..gs.len()).rev() {
        if let Some(witness) = is_redundant(t, &gs, position, strategy, cap)? {
            let dropped = gs.gens[position];
            gs = gs.remove(t, position, &witness);
            on_removal(&gs, dropped);
        }
    }
    Ok(gs)
}

/// Isolated elements of the whole carrier, and whether they generate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedReport {
    pub isolated: Vec<usize>,
    /// When true, every minimal generator set has exactly `isolated.len()`
    /// elements.
    pub generates: bool,
}

pub fn isolated_report<M: Monad>(
    t: &TAutomaton<M>,
    strategy: Strategy,
    cap: usize,
) -> Result<IsolatedReport> {
    let n = t.len();
    let mut isolated = Vec::new();
    for c in 0..n {
        let others: Vec<usize> = (0..n).filter(|&d| d != c).collect();
        if express(t, &others, c, strategy, cap)?.is_none() {
            isolated.push(c);
        }
    }
    let generates = if strategy == Strategy::Naive {
        let reached: HashSet<usize> = t
            .monad()
            .enumerate(isolated.len(), cap)?
            .iter()
            .map(|u| t.sharp(&isolated, u))
            .collect();
        reached.len() == n
    } else {
        let mut all = true;
        for c in 0..n {
            if express(t, &isolated, c, strategy, cap)?.is_none() {
                all = false;
                break;
            }
        }
        all
    };
    Ok(IsolatedReport {
        isolated,
        generates,
    })
}
