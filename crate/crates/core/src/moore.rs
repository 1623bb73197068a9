//! Deterministic Moore machines over a finite alphabet.
//!
//! States are dense indices `0..n`; display names are carried along as
//! metadata only. All operations are pure and return fresh machines.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

/// An ordered, duplicate-free, non-empty list of symbol names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::input("alphabet must not be empty"));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::input("alphabet symbols must be non-empty strings"));
            }
            if symbols[..i].contains(s) {
                return Err(Error::input(format!("duplicate alphabet symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    /// Parses a word written either as one character per symbol (when every
    /// symbol is a single character) or as symbols separated by spaces or commas.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let single_chars = self.symbols.iter().all(|s| s.chars().count() == 1);
        let separated = text.contains(|c: char| c.is_whitespace() || c == ',');
        let tokens: Vec<String> = if separated || !single_chars {
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.index_of(t)
                    .ok_or_else(|| Error::input(format!("symbol `{t}` is not in the alphabet")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// A finite word, stored as symbol indices into an [`Alphabet`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "ε");
        }
        let single = self
            .alphabet
            .symbols()
            .iter()
            .all(|s| s.chars().count() == 1);
        for (i, &s) in self.word.0.iter().enumerate() {
            if i > 0 && !single {
                write!(f, " ")?;
            }
            write!(f, "{}", self.alphabet.symbol(s))?;
        }
        Ok(())
    }
}

/// All words over `k` symbols of length at most `max_len`, in length-then-lex order.
pub fn words_up_to(k: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| {
        let total = k.checked_pow(len as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut n| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = n % k;
                n /= k;
            }
            Word(w)
        })
    })
}

/// A deterministic automaton with outputs on states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreMachine<O> {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: usize,
    output: Vec<O>,
    trans: Vec<Vec<usize>>,
}

impl<O: Clone> MooreMachine<O> {
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: usize,
        output: Vec<O>,
        trans: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::input("a machine needs at least one state"));
        }
        if initial >= n {
            return Err(Error::input(format!(
                "initial state {initial} out of range"
            )));
        }
        if output.len() != n || trans.len() != n {
            return Err(Error::input(
                "outputs and transitions must cover every state",
            ));
        }
        for (q, row) in trans.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::input(format!(
                    "state `{}` needs one transition per symbol",
                    names[q]
                )));
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= n) {
                return Err(Error::input(format!(
                    "transition target {bad} out of range"
                )));
            }
        }
        Ok(MooreMachine {
            alphabet,
            names,
            initial,
            output,
            trans,
        })
    }

    /// Builds a machine with generated names `0..n`.
    pub fn from_table(
        alphabet: Alphabet,
        initial: usize,
        output: Vec<O>,
        trans: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let names = (0..output.len()).map(|i| i.to_string()).collect();
        Self::new(alphabet, names, initial, output, trans)
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

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn output(&self, q: usize) -> &O {
        &self.output[q]
    }

    pub fn outputs(&self) -> &[O] {
        &self.output
    }

    pub fn next(&self, q: usize, symbol: usize) -> usize {
        self.trans[q][symbol]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.trans
    }

    pub fn with_initial(&self, initial: usize) -> Self {
        assert!(initial < self.len());
        MooreMachine {
            initial,
            ..self.clone()
        }
    }

    pub fn map_outputs<P: Clone>(&self, f: impl FnMut(&O) -> P) -> MooreMachine<P> {
        MooreMachine {
            alphabet: self.alphabet.clone(),
            names: self.names.clone(),
            initial: self.initial,
            output: self.output.iter().map(f).collect(),
            trans: self.trans.clone(),
        }
    }

    pub fn try_map_outputs<P: Clone>(
        &self,
        f: impl FnMut(&O) -> Result<P>,
    ) -> Result<MooreMachine<P>> {
        Ok(MooreMachine {
            alphabet: self.alphabet.clone(),
            names: self.names.clone(),
            initial: self.initial,
            output: self.output.iter().map(f).collect::<Result<_>>()?,
            trans: self.trans.clone(),
        })
    }

    /// State reached from `from` after reading `word`.
    pub fn delta(&self, from: usize, word: &[usize]) -> usize {
        word.iter().fold(from, |q, &a| self.trans[q][a])
    }

    /// Output after reading `word` from the initial state.
    pub fn run(&self, word: &Word) -> Result<O> {
        if let Some(&bad) = word.0.iter().find(|&&a| a >= self.alphabet.len()) {
            return Err(Error::input(format!(
                "symbol index {bad} is not in the alphabet"
            )));
        }
        Ok(self.output[self.delta(self.initial, &word.0)].clone())
    }

    /// Restriction to the states reachable from the initial state.
    ///
    /// States are renumbered in breadth-first order (symbols in alphabet
    /// order); the returned map sends old indices to new ones.
    pub fn reachable(&self) -> (MooreMachine<O>, Vec<Option<usize>>) {
        let mut map = vec![None; self.len()];
        let mut order = vec![self.initial];
        map[self.initial] = Some(0);
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &t in &self.trans[q] {
                if map[t].is_none() {
                    map[t] = Some(order.len());
                    order.push(t);
                }
            }
        }
        let machine = MooreMachine {
            alphabet: self.alphabet.clone(),
            names: order.iter().map(|&q| self.names[q].clone()).collect(),
            initial: 0,
            output: order.iter().map(|&q| self.output[q].clone()).collect(),
            trans: order
                .iter()
                .map(|&q| self.trans[q].iter().map(|&t| map[t].unwrap()).collect())
                .collect(),
        };
        (machine, map)
    }
}

impl<O: Clone + Eq + Hash> MooreMachine<O> {
    /// Observable quotient by Moore partition refinement.
    ///
    /// Returns the quotient and the class of every original state. Classes
    /// are numbered by first occurrence in state order; each class keeps the
    /// name of its first member.
    pub fn minimize(&self) -> (MooreMachine<O>, Vec<usize>) {
        let classes = refine_partition(&self.output, &self.trans);
        let count = classes.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; count];
        for (q, &c) in classes.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = q;
            }
        }
        let machine = MooreMachine {
            alphabet: self.alphabet.clone(),
            names: rep.iter().map(|&q| self.names[q].clone()).collect(),
            initial: classes[self.initial],
            output: rep.iter().map(|&q| self.output[q].clone()).collect(),
            trans: rep
                .iter()
                .map(|&q| self.trans[q].iter().map(|&t| classes[t]).collect())
                .collect(),
        };
        (machine, classes)
    }
}

/// Moore's partition refinement: start from the partition by output, split
/// by successor classes until stable. Classes are numbered by first
/// occurrence, so the result is canonical for a given state order.
pub(crate) fn refine_partition<O: Eq + Hash>(output: &[O], trans: &[Vec<usize>]) -> Vec<usize> {
    let n = output.len();
    let mut classes = Vec::with_capacity(n);
    {
        let mut ids: HashMap<&O, usize> = HashMap::new();
        for o in output {
            let next = ids.len();
            classes.push(*ids.entry(o).or_insert(next));
        }
    }
    let mut count = classes.iter().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::with_capacity(count * 2);
        let mut next_classes = Vec::with_capacity(n);
        for q in 0..n {
            let mut sig = Vec::with_capacity(trans[q].len() + 1);
            sig.push(classes[q]);
            sig.extend(trans[q].iter().map(|&t| classes[t]));
            let next = ids.len();
            next_classes.push(*ids.entry(sig).or_insert(next));
        }
        let next_count = ids.len();
        classes = next_classes;
        if next_count == count {
            return classes;
        }
        count = next_count;
    }
}

/// Result of an equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    Counterexample(Word),
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

/// Compares two word functions on every word of length at most `max_len`,
/// in length-then-lex order, returning the first disagreement.
pub fn equiv_bounded<O: PartialEq>(
    symbols: usize,
    max_len: usize,
    mut f: impl FnMut(&Word) -> O,
    mut g: impl FnMut(&Word) -> O,
) -> Equivalence {
    for w in words_up_to(symbols, max_len) {
        if f(&w) != g(&w) {
            return Equivalence::Counterexample(w);
        }
    }
    Equivalence::Equal
}

/// Exact language equivalence of two machines over the same alphabet.
///
/// Decides with a Hopcroft-Karp union-find over the product; on failure the
/// counterexample is the shortest (then lexicographically least) word.
pub fn equiv_exact<O: Clone + Eq>(
    m1: &MooreMachine<O>,
    m2: &MooreMachine<O>,
) -> Result<Equivalence> {
    if m1.alphabet != m2.alphabet {
        return Err(Error::input("machines have different alphabets"));
    }
    let n1 = m1.len();
    let mut uf = UnionFind::new(n1 + m2.len());
    let mut todo = vec![(m1.initial, m2.initial)];
    uf.union(m1.initial, n1 + m2.initial);
    let mut equal = true;
    while let Some((p, q)) = todo.pop() {
        if m1.output[p] != m2.output[q] {
            equal = false;
            break;
        }
        for a in 0..m1.alphabet.len() {
            let (p2, q2) = (m1.trans[p][a], m2.trans[q][a]);
            if uf.union(p2, n1 + q2) {
                todo.push((p2, q2));
            }
        }
    }
    if equal {
        return Ok(Equivalence::Equal);
    }
    Ok(shortest_difference(m1, m2).map_or(Equivalence::Equal, Equivalence::Counterexample))
}

/// Breadth-first search over the product; pairs are first reached by their
/// shortlex-least word, so the first mismatch gives the shortlex-least
/// counterexample.
fn shortest_difference<O: Clone + Eq>(m1: &MooreMachine<O>, m2: &MooreMachine<O>) -> Option<Word> {
    let n2 = m2.len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; m1.len() * n2];
    let start = m1.initial * n2 + m2.initial;
    let mut seen = vec![false; m1.len() * n2];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        let (p, q) = (pair / n2, pair % n2);
        if m1.output[p] != m2.output[q] {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some((prev, a)) = parent[cur] {
                word.push(a);
                cur = prev;
            }
            word.reverse();
            return Some(Word(word));
        }
        for a in 0..m1.alphabet.len() {
            let next = m1.trans[p][a] * n2 + m2.trans[q][a];
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((pair, a));
                queue.push_back(next);
            }
        }
    }
    None
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
