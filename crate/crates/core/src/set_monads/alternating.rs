use std::collections::HashMap;

use rand::{Rng, RngCore};

use super::bits;
use crate::error::{Error, Result};
use crate::monad::{Carrier, Monad, Strategy};

/// Dedekind numbers: the number of antichains in the subset lattice of an
/// `n`-element set, for `n = 0..=8`.
const DEDEKIND: [u128; 9] = [
    2,
    3,
    6,
    20,
    168,
    7581,
    7828354,
    2414682040998,
    56130437228687557907788,
];

/// An upward-closed family of subsets, stored as its minimal members.
///
/// Each clause is a bitmask over the base (at most 64 elements). Read as a
/// monotone DNF: the empty antichain is false, `{∅}` is true.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain(Vec<u64>);

impl Antichain {
    /// The minimal members of the given clauses, in canonical order.
    pub fn from_clauses(clauses: impl IntoIterator<Item = u64>) -> Self {
        let mut all: Vec<u64> = clauses.into_iter().collect();
        all.sort_unstable_by_key(|c| (c.count_ones(), *c));
        all.dedup();
        let mut kept: Vec<u64> = Vec::with_capacity(all.len());
        for c in all {
            if !kept.iter().any(|&k| k & !c == 0) {
                kept.push(c);
            }
        }
        kept.sort_unstable();
        Antichain(kept)
    }

    pub fn bottom() -> Self {
        Antichain(Vec::new())
    }

    pub fn top() -> Self {
        Antichain(vec![0])
    }

    pub fn clauses(&self) -> &[u64] {
        &self.0
    }

    /// Clauses as sorted index lists, ordered lexicographically.
    pub fn clause_lists(&self) -> Vec<Vec<usize>> {
        let mut lists: Vec<Vec<usize>> = self.0.iter().map(|&c| bits(c).collect()).collect();
        lists.sort();
        lists
    }

    pub fn contains_set(&self, set: u64) -> bool {
        self.0.iter().any(|&c| c & !set == 0)
    }
}

/// Conjunction of two monotone DNFs.
fn conjoin(a: &Antichain, b: &Antichain) -> Antichain {
    Antichain::from_clauses(a.0.iter().flat_map(|&x| b.0.iter().map(move |&y| x | y)))
}

/// Alternation: `T(S)` is the set of upsets of the subset lattice of `S`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Alternating;

impl Monad for Alternating {
    type Elem = Antichain;
    type Out = bool;

    fn name(&self) -> &'static str {
        "alternating"
    }

    fn unit(&self, _base: usize, x: usize) -> Antichain {
        assert!(x < 64, "alternating configurations hold at most 64 states");
        Antichain(vec![1 << x])
    }

    /// Outer clauses are read disjunctively and their members conjunctively:
    /// each clause becomes the conjunction of the images of its members.
    fn bind(&self, u: &Antichain, _target: usize, f: &dyn Fn(usize) -> Antichain) -> Antichain {
        let mut images: HashMap<usize, Antichain> = HashMap::new();
        let mut clauses = Vec::new();
        for &c in &u.0 {
            let mut acc = Antichain::top();
            for x in bits(c) {
                let fx = images.entry(x).or_insert_with(|| f(x));
                acc = conjoin(&acc, fx);
                if acc.0.is_empty() {
                    break;
                }
            }
            clauses.extend(acc.0);
        }
        Antichain::from_clauses(clauses)
    }

    fn observe(&self, u: &Antichain, out: &dyn Fn(usize) -> bool) -> bool {
        u.0.iter().any(|&c| bits(c).all(out))
    }

    fn count(&self, base: usize) -> Option<u128> {
        DEDEKIND.get(base).copied()
    }

    fn enumerate(&self, base: usize, cap: usize) -> Result<Vec<Antichain>> {
        let total = self.count(base);
        if total.is_none_or(|t| t > cap as u128) {
            return Err(Error::cap("antichain enumeration", total, cap));
        }
        let mut out = Vec::with_capacity(total.unwrap_or(0) as usize);
        let mut chosen = Vec::new();
        extend_antichains(1u64 << base, 0, &mut chosen, &mut out);
        Ok(out)
    }

    fn support(&self, u: &Antichain) -> Vec<usize> {
        bits(u.0.iter().fold(0, |m, &c| m | c)).collect()
    }

    fn fits(&self, u: &Antichain, base: usize) -> bool {
        base <= 64 && u.0.iter().all(|&c| base == 64 || c >> base == 0)
    }

    fn fast_strategy(&self) -> Strategy {
        Strategy::MonotoneMaximal
    }

    /// Every clause over `gens` whose conjunction lies below `target`,
    /// except those whose conjunction is already the bottom element.
    fn decompose_maximal(
        &self,
        carrier: &dyn Carrier<Self>,
        gens: &[usize],
        target: usize,
    ) -> Result<Option<Antichain>> {
        let k = gens.len();
        if k > 20 {
            return Err(Error::cap(
                "clause search",
                1u128.checked_shl(k as u32),
                1 << 20,
            ));
        }
        let mut ext = gens.to_vec();
        ext.push(target);
        let bottom = carrier.sharp(gens, &Antichain::bottom());
        let mut absorbed = Vec::new();
        for c in 0..1u64 << k {
            let probe = Antichain::from_clauses([c, 1 << k]);
            if carrier.sharp(&ext, &probe) != target {
                continue;
            }
            if carrier.sharp(gens, &Antichain(vec![c])) != bottom {
                absorbed.push(c);
            }
        }
        let u = Antichain::from_clauses(absorbed);
        Ok((carrier.sharp(gens, &u) == target).then_some(u))
    }

    fn display(&self, u: &Antichain, names: &[String]) -> String {
        if u.0.is_empty() {
            return "⊥".to_string();
        }
        let clauses: Vec<String> = u
            .clause_lists()
            .iter()
            .map(|c| match c.len() {
                0 => "⊤".to_string(),
                1 => names[c[0]].clone(),
                _ => {
                    let parts: Vec<&str> = c.iter().map(|&x| names[x].as_str()).collect();
                    format!("({})", parts.join(" ∧ "))
                }
            })
            .collect();
        clauses.join(" ∨ ")
    }

    fn sample_elem(&self, base: usize, rng: &mut dyn RngCore) -> Antichain {
        let n = rng.gen_range(0..=3);
        Antichain::from_clauses((0..n).map(|_| rng.gen_range(0..1u64 << base)))
    }

    fn sample_output(&self, rng: &mut dyn RngCore) -> bool {
        rng.gen_bool(0.5)
    }
}

/// Depth-first generation of all antichains among the masks `0..limit`.
///
/// Masks are added in increasing order, so a new mask can only be a superset
/// of an already chosen one, never a subset.
fn extend_antichains(limit: u64, start: u64, chosen: &mut Vec<u64>, out: &mut Vec<Antichain>) {
    out.push(Antichain(chosen.clone()));
    for s in start..limit {
        if chosen.iter().any(|&c| c & !s == 0) {
            continue;
        }
        chosen.push(s);
        extend_antichains(limit, s + 1, chosen, out);
        chosen.pop();
    }
}
