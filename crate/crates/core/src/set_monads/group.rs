use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::monad::{Carrier, Monad, Strategy};
use crate::moore::Alphabet;

/// A finite group with left actions on an alphabet and on a set of outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    alphabet: Vec<String>,
    alphabet_action: Vec<Vec<usize>>,
    outputs: Vec<String>,
    output_action: Vec<Vec<usize>>,
}

/// A named generator: its permutation of the domain, then its action on
/// symbols and on outputs.
pub type PermutationGenerator = (String, Vec<usize>, Vec<usize>, Vec<usize>);

impl FiniteGroup {
    /// Builds a group from a multiplication table (`mul[g][h] = g·h`) and the
    /// permutation every element induces on the alphabet and on the outputs.
    pub fn from_table(
        names: Vec<String>,
        mul: Vec<Vec<usize>>,
        alphabet: Vec<String>,
        alphabet_action: Vec<Vec<usize>>,
        outputs: Vec<String>,
        output_action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::input("a group needs at least one element"));
        }
        if mul.len() != n
            || mul
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&p| p >= n))
        {
            return Err(Error::input(
                "multiplication table must be square over the elements",
            ));
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if mul[mul[g][h]][k] != mul[g][mul[h][k]] {
                        return Err(Error::input(format!(
                            "multiplication is not associative at ({}, {}, {})",
                            names[g], names[h], names[k]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::input("multiplication table has no identity"))?;
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                    .ok_or_else(|| Error::input(format!("element `{}` has no inverse", names[g])))
            })
            .collect::<Result<Vec<_>>>()?;
        check_action(
            &names,
            &mul,
            identity,
            &alphabet_action,
            alphabet.len(),
            "alphabet",
        )?;
        check_action(
            &names,
            &mul,
            identity,
            &output_action,
            outputs.len(),
            "output",
        )?;
        Ok(FiniteGroup {
            names,
            mul,
            identity,
            inverse,
            alphabet,
            alphabet_action,
            outputs,
            output_action,
        })
    }

    /// Closes a list of generators into a group. Each generator is given by
    /// a permutation of some finite domain together with its action on the
    /// alphabet and on the outputs; the domain permutation must determine
    /// both actions.
    ///
    /// The identity is named `e`, generators keep their names and other
    /// elements are named by the product that first reaches them.
    pub fn from_generators(
        alphabet: Vec<String>,
        outputs: Vec<String>,
        generators: Vec<PermutationGenerator>,
    ) -> Result<Self> {
        let domain = generators.first().map_or(0, |g| g.1.len());
        for (name, perm, on_alpha, on_out) in &generators {
            for (p, len, what) in [
                (perm, domain, "domain"),
                (on_alpha, alphabet.len(), "alphabet"),
                (on_out, outputs.len(), "output"),
            ] {
                if !is_permutation(p, len) {
                    return Err(Error::input(format!(
                        "generator `{name}` is not a permutation of the {what}"
                    )));
                }
            }
        }
        type Triple = (Vec<usize>, Vec<usize>, Vec<usize>);
        let ident: Triple = (
            (0..domain).collect(),
            (0..alphabet.len()).collect(),
            (0..outputs.len()).collect(),
        );
        let compose = |g: &Triple, h: &Triple| -> Triple {
            (
                h.0.iter().map(|&i| g.0[i]).collect(),
                h.1.iter().map(|&i| g.1[i]).collect(),
                h.2.iter().map(|&i| g.2[i]).collect(),
            )
        };
        let mut elems: Vec<Triple> = vec![ident];
        let mut names = vec!["e".to_string()];
        let mut by_perm: HashMap<Vec<usize>, usize> = HashMap::from([(elems[0].0.clone(), 0)]);
        let gens: Vec<(String, Triple)> = generators
            .into_iter()
            .map(|(n, p, a, o)| (n, (p, a, o)))
            .collect();
        let mut queue: VecDeque<(usize, usize)> = (0..gens.len()).map(|gi| (0, gi)).collect();
        while let Some((from, gi)) = queue.pop_front() {
            let (gname, g) = &gens[gi];
            let next = compose(g, &elems[from]);
            match by_perm.get(&next.0) {
                Some(&i) => {
                    if elems[i] != next {
                        return Err(Error::input(
                            "generator actions are inconsistent with the domain permutations",
                        ));
                    }
                }
                None => {
                    let name = if from == 0 {
                        gname.clone()
                    } else {
                        format!("{gname}*{}", names[from])
                    };
                    by_perm.insert(next.0.clone(), elems.len());
                    names.push(name);
                    elems.push(next);
                    let new = elems.len() - 1;
                    for gj in 0..gens.len() {
                        queue.push_back((new, gj));
                    }
                }
            }
            if elems.len() > 10_000 {
                return Err(Error::cap("group closure", None, 10_000));
            }
        }
        let n = elems.len();
        let mul = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| by_perm[&compose(&elems[g], &elems[h]).0])
                    .collect()
            })
            .collect();
        let alphabet_action = elems.iter().map(|t| t.1.clone()).collect();
        let output_action = elems.iter().map(|t| t.2.clone()).collect();
        Self::from_table(
            names,
            mul,
            alphabet,
            alphabet_action,
            outputs,
            output_action,
        )
    }

    /// The symmetric group on a two-letter alphabet acting on outputs as the
    /// given permutation for the swap.
    pub fn swap_pair(
        alphabet: [&str; 2],
        outputs: Vec<String>,
        output_swap: Vec<usize>,
    ) -> Result<Self> {
        Self::from_generators(
            alphabet.iter().map(|s| s.to_string()).collect(),
            outputs,
            vec![(
                format!("({}{})", alphabet[0], alphabet[1]),
                vec![1, 0],
                vec![1, 0],
                output_swap,
            )],
        )
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn output_index(&self, token: &str) -> Option<usize> {
        self.outputs.iter().position(|o| o == token)
    }

    pub fn act_symbol(&self, g: usize, symbol: usize) -> usize {
        self.alphabet_action[g][symbol]
    }

    pub fn act_output(&self, g: usize, output: usize) -> usize {
        self.output_action[g][output]
    }

    /// The same group with its alphabet reordered to match `alphabet`.
    pub fn aligned_to(&self, alphabet: &Alphabet) -> Result<Self> {
        if alphabet.len() != self.alphabet.len() {
            return Err(Error::input(
                "group alphabet differs from the automaton alphabet",
            ));
        }
        let pos: Vec<usize> = alphabet
            .symbols()
            .iter()
            .map(|s| {
                self.alphabet
                    .iter()
                    .position(|t| t == s)
                    .ok_or_else(|| Error::input(format!("group does not act on symbol `{s}`")))
            })
            .collect::<Result<_>>()?;
        let mut back = vec![0; pos.len()];
        for (new, &old) in pos.iter().enumerate() {
            back[old] = new;
        }
        let action = self
            .alphabet_action
            .iter()
            .map(|perm| pos.iter().map(|&old| back[perm[old]]).collect())
            .collect();
        Ok(FiniteGroup {
            alphabet: alphabet.symbols().to_vec(),
            alphabet_action: action,
            ..self.clone()
        })
    }
}

fn is_permutation(p: &[usize], len: usize) -> bool {
    let mut seen = vec![false; len];
    p.len() == len
        && p.iter()
            .all(|&i| i < len && !std::mem::replace(&mut seen[i], true))
}

fn check_action(
    names: &[String],
    mul: &[Vec<usize>],
    identity: usize,
    action: &[Vec<usize>],
    len: usize,
    what: &str,
) -> Result<()> {
    if action.len() != names.len() || action.iter().any(|p| !is_permutation(p, len)) {
        return Err(Error::input(format!(
            "{what} action must give a permutation for every group element"
        )));
    }
    if action[identity].iter().enumerate().any(|(i, &j)| i != j) {
        return Err(Error::input(format!(
            "identity does not act trivially on the {what}"
        )));
    }
    for g in 0..names.len() {
        for h in 0..names.len() {
            for x in 0..len {
                if action[mul[g][h]][x] != action[g][action[h][x]] {
                    return Err(Error::input(format!(
                        "{what} action is not compatible with multiplication at ({}, {})",
                        names[g], names[h]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A pair `(g, x)`: base element `x` translated by group element `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub g: usize,
    pub x: usize,
}

/// The monad `G × (-)`, whose algebras are left `G`-actions. Outputs are
/// indices into the group's output set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMonad {
    group: Arc<FiniteGroup>,
}

impl GroupMonad {
    pub fn new(group: FiniteGroup) -> Self {
        GroupMonad {
            group: Arc::new(group),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
}

impl Monad for GroupMonad {
    type Elem = GroupElem;
    type Out = usize;

    fn name(&self) -> &'static str {
        "group"
    }

    fn unit(&self, _base: usize, x: usize) -> GroupElem {
        GroupElem {
            g: self.group.identity,
            x,
        }
    }

    fn bind(&self, u: &GroupElem, _target: usize, f: &dyn Fn(usize) -> GroupElem) -> GroupElem {
        let inner = f(u.x);
        GroupElem {
            g: self.group.mul(u.g, inner.g),
            x: inner.x,
        }
    }

    fn observe(&self, u: &GroupElem, out: &dyn Fn(usize) -> usize) -> usize {
        self.group.act_output(u.g, out(u.x))
    }

    /// From `(g, q)` on `a`, the base machine reads `g⁻¹·a`, and the result
    /// is translated back by `g`.
    fn succ_step(
        &self,
        u: &GroupElem,
        _base: usize,
        symbol: usize,
        dynamics: &dyn Fn(usize, usize) -> GroupElem,
    ) -> GroupElem {
        let read = self.group.act_symbol(self.group.inverse(u.g), symbol);
        let step = dynamics(u.x, read);
        GroupElem {
            g: self.group.mul(u.g, step.g),
            x: step.x,
        }
    }

    fn count(&self, base: usize) -> Option<u128> {
        Some(self.group.order() as u128 * base as u128)
    }

    fn enumerate(&self, base: usize, cap: usize) -> Result<Vec<GroupElem>> {
        let total = self.group.order() * base;
        if total > cap {
            return Err(Error::cap("group enumeration", Some(total as u128), cap));
        }
        Ok((0..self.group.order())
            .flat_map(|g| (0..base).map(move |x| GroupElem { g, x }))
            .collect())
    }

    fn support(&self, u: &GroupElem) -> Vec<usize> {
        vec![u.x]
    }

    fn fits(&self, u: &GroupElem, base: usize) -> bool {
        u.x < base && u.g < self.group.order()
    }

    fn fast_strategy(&self) -> Strategy {
        Strategy::Orbit
    }

    /// The first `(g, x)` with `g·x = target`, scanning group elements in
    /// table order and generators in list order.
    fn decompose_maximal(
        &self,
        carrier: &dyn Carrier<Self>,
        gens: &[usize],
        target: usize,
    ) -> Result<Option<GroupElem>> {
        for g in 0..self.group.order() {
            for x in 0..gens.len() {
                let u = GroupElem { g, x };
                if carrier.sharp(gens, &u) == target {
                    return Ok(Some(u));
                }
            }
        }
        Ok(None)
    }

    fn display(&self, u: &GroupElem, names: &[String]) -> String {
        if u.g == self.group.identity {
            names[u.x].clone()
        } else {
            format!("{}·{}", self.group.names[u.g], names[u.x])
        }
    }

    fn sample_elem(&self, base: usize, rng: &mut dyn RngCore) -> GroupElem {
        GroupElem {
            g: rng.gen_range(0..self.group.order()),
            x: rng.gen_range(0..base),
        }
    }

    fn sample_output(&self, rng: &mut dyn RngCore) -> usize {
        rng.gen_range(0..self.group.outputs.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_ab() -> FiniteGroup {
        let outputs = vec!["⊥".to_string(), "a".to_string(), "b".to_string()];
        FiniteGroup::swap_pair(["a", "b"], outputs, vec![0, 2, 1]).unwrap()
    }

    #[test]
    fn swap_group_has_two_elements() {
        let g = perm_ab();
        assert_eq!(g.names(), &["e".to_string(), "(ab)".to_string()]);
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.inverse(1), 1);
        assert_eq!(g.act_output(1, 1), 2);
        assert_eq!(g.act_output(1, 0), 0);
    }

    #[test]
    fn closure_of_two_generators_is_the_full_symmetric_group() {
        let alphabet: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let g = FiniteGroup::from_generators(
            alphabet,
            vec!["o".to_string()],
            vec![
                ("s".to_string(), vec![1, 0, 2], vec![1, 0, 2], vec![0]),
                ("t".to_string(), vec![1, 2, 0], vec![1, 2, 0], vec![0]),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn inconsistent_actions_are_rejected() {
        let err = FiniteGroup::from_generators(
            vec!["a".to_string(), "b".to_string()],
            vec!["o".to_string()],
            vec![("s".to_string(), vec![0, 1], vec![1, 0], vec![0])],
        );
        assert!(err.is_err());
        let bad_table = FiniteGroup::from_table(
            vec!["e".into(), "x".into()],
            vec![vec![0, 1], vec![1, 1]],
            vec![],
            vec![vec![], vec![]],
            vec![],
            vec![vec![], vec![]],
        );
        assert!(bad_table.is_err());
    }

    #[test]
    fn identity_acts_trivially_on_observations() {
        let m = GroupMonad::new(perm_ab());
        let out = |x: usize| x % 3;
        assert_eq!(m.observe(&m.unit(3, 2), &out), 2);
        assert_eq!(m.observe(&GroupElem { g: 1, x: 2 }, &out), 1);
    }

    #[test]
    fn alignment_reorders_the_alphabet_action() {
        let g = perm_ab();
        let flipped = g.aligned_to(&Alphabet::new(["b", "a"]).unwrap()).unwrap();
        assert_eq!(flipped.act_symbol(1, 0), 1);
        assert!(g.aligned_to(&Alphabet::new(["a", "c"]).unwrap()).is_err());
    }
}
