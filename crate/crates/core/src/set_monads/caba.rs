use rand::{Rng, RngCore};

use super::bits;
use crate::error::{Error, Result};
use crate::monad::{Carrier, Monad, Strategy};

/// A full DNF over a base of `base` variables: the set of valuations (as
/// bitmasks of the true variables) that satisfy it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CabaElem {
    base: usize,
    vals: Vec<u64>,
}

impl CabaElem {
    pub fn new(base: usize, vals: impl IntoIterator<Item = u64>) -> Result<Self> {
        if base > 32 {
            return Err(Error::input("CABA configurations hold at most 32 states"));
        }
        let mut vals: Vec<u64> = vals.into_iter().collect();
        if let Some(&v) = vals.iter().find(|&&v| v >> base != 0) {
            return Err(Error::input(format!(
                "valuation {v:#b} mentions a state outside the base"
            )));
        }
        vals.sort_unstable();
        vals.dedup();
        Ok(CabaElem { base, vals })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn valuations(&self) -> &[u64] {
        &self.vals
    }

    pub fn contains(&self, valuation: u64) -> bool {
        self.vals.binary_search(&valuation).is_ok()
    }
}

/// Complete atomic boolean algebras: `T(S) = 2^(2^S)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Caba;

impl Monad for Caba {
    type Elem = CabaElem;
    type Out = bool;

    fn name(&self) -> &'static str {
        "caba"
    }

    fn unit(&self, base: usize, x: usize) -> CabaElem {
        assert!(base <= 32 && x < base);
        CabaElem {
            base,
            vals: (0..1u64 << base).filter(|w| w >> x & 1 == 1).collect(),
        }
    }

    /// `W` belongs to the result iff the set of `x` with `W ∈ f(x)` belongs to `u`.
    fn bind(&self, u: &CabaElem, target: usize, f: &dyn Fn(usize) -> CabaElem) -> CabaElem {
        assert!(target <= 32);
        let images: Vec<CabaElem> = (0..u.base).map(f).collect();
        let vals = (0..1u64 << target)
            .filter(|&w| {
                let preimage = images
                    .iter()
                    .enumerate()
                    .filter(|(_, fx)| fx.contains(w))
                    .fold(0u64, |m, (x, _)| m | 1 << x);
                u.contains(preimage)
            })
            .collect();
        CabaElem { base: target, vals }
    }

    /// True iff the exact set of accepting base elements is a valuation of `u`.
    fn observe(&self, u: &CabaElem, out: &dyn Fn(usize) -> bool) -> bool {
        let accepting = (0..u.base)
            .filter(|&x| out(x))
            .fold(0u64, |m, x| m | 1 << x);
        u.contains(accepting)
    }

    fn count(&self, base: usize) -> Option<u128> {
        1u128.checked_shl(1u32.checked_shl(base as u32)?)
    }

    fn enumerate(&self, base: usize, cap: usize) -> Result<Vec<CabaElem>> {
        let total = self.count(base);
        if total.is_none_or(|t| t > cap as u128) {
            return Err(Error::cap("CABA enumeration", total, cap));
        }
        let n = 1u64 << (1u64 << base);
        Ok((0..n)
            .map(|code| CabaElem {
                base,
                vals: bits(code).map(|w| w as u64).collect(),
            })
            .collect())
    }

    fn support(&self, u: &CabaElem) -> Vec<usize> {
        (0..u.base).collect()
    }

    fn fits(&self, u: &CabaElem, base: usize) -> bool {
        u.base == base
    }

    fn fast_strategy(&self) -> Strategy {
        Strategy::MonotoneMaximal
    }

    /// Every valuation over `gens` whose full conjunction lies below `target`.
    fn decompose_maximal(
        &self,
        carrier: &dyn Carrier<Self>,
        gens: &[usize],
        target: usize,
    ) -> Result<Option<CabaElem>> {
        let k = gens.len();
        if k > 16 {
            return Err(Error::cap(
                "valuation search",
                1u128.checked_shl(k as u32),
                1 << 16,
            ));
        }
        let mut ext = gens.to_vec();
        ext.push(target);
        let with_target: Vec<u64> = (0..1u64 << k).map(|v| v | 1 << k).collect();
        let mut below = Vec::new();
        for w in 0..1u64 << k {
            let mut vals = with_target.clone();
            vals.push(w);
            let probe = CabaElem::new(k + 1, vals)?;
            if carrier.sharp(&ext, &probe) == target {
                below.push(w);
            }
        }
        let u = CabaElem {
            base: k,
            vals: below,
        };
        Ok((carrier.sharp(gens, &u) == target).then_some(u))
    }

    fn display(&self, u: &CabaElem, names: &[String]) -> String {
        if u.vals.is_empty() {
            return "⊥".to_string();
        }
        let clauses: Vec<String> = u
            .vals
            .iter()
            .map(|&w| {
                if u.base == 0 {
                    return "⊤".to_string();
                }
                let lits: Vec<String> = (0..u.base)
                    .map(|x| {
                        if w >> x & 1 == 1 {
                            names[x].clone()
                        } else {
                            format!("¬{}", names[x])
                        }
                    })
                    .collect();
                if lits.len() == 1 {
                    lits[0].clone()
                } else {
                    format!("({})", lits.join(" ∧ "))
                }
            })
            .collect();
        clauses.join(" ∨ ")
    }

    fn sample_elem(&self, base: usize, rng: &mut dyn RngCore) -> CabaElem {
        CabaElem {
            base,
            vals: (0..1u64 << base).filter(|_| rng.gen_bool(0.5)).collect(),
        }
    }

    fn sample_output(&self, rng: &mut dyn RngCore) -> bool {
        rng.gen_bool(0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_is_every_valuation_making_x_true() {
        assert_eq!(Caba.unit(2, 0).valuations(), &[0b01, 0b11]);
    }

    #[test]
    fn observe_uses_the_exact_accepting_set() {
        let u = CabaElem::new(3, [0b100]).unwrap();
        assert!(Caba.observe(&u, &|x| x == 2));
        assert!(!Caba.observe(&u, &|x| x >= 1));
    }

    #[test]
    fn sixteen_elements_over_two() {
        assert_eq!(Caba.enumerate(2, 100).unwrap().len(), 16);
        assert_eq!(Caba.count(3), Some(256));
        assert!(Caba.enumerate(5, 100_000).is_err());
    }

    #[test]
    fn negated_conjunction_is_the_empty_valuation() {
        let names = vec!["q0".to_string(), "q1".to_string()];
        let u = CabaElem::new(2, [0]).unwrap();
        assert_eq!(Caba.display(&u, &names), "(¬q0 ∧ ¬q1)");
    }
}
