use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::monad::{Carrier, Monad, Strategy};

/// Non-determinism: `T(S)` is the set of subsets of `S`, as sorted index lists.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Powerset;

impl Monad for Powerset {
    type Elem = Vec<usize>;
    type Out = bool;

    fn name(&self) -> &'static str {
        "powerset"
    }

    fn unit(&self, _base: usize, x: usize) -> Vec<usize> {
        vec![x]
    }

    fn bind(&self, u: &Vec<usize>, _target: usize, f: &dyn Fn(usize) -> Vec<usize>) -> Vec<usize> {
        let mut out: Vec<usize> = u.iter().flat_map(|&x| f(x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn observe(&self, u: &Vec<usize>, out: &dyn Fn(usize) -> bool) -> bool {
        u.iter().any(|&x| out(x))
    }

    fn count(&self, base: usize) -> Option<u128> {
        1u128.checked_shl(base as u32)
    }

    fn enumerate(&self, base: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
        let total = self.count(base);
        if base >= 64 || total.is_none_or(|t| t > cap as u128) {
            return Err(Error::cap("powerset enumeration", total, cap));
        }
        Ok((0..1u64 << base)
            .map(|m| super::bits(m).collect())
            .collect())
    }

    fn support(&self, u: &Vec<usize>) -> Vec<usize> {
        u.clone()
    }

    fn fast_strategy(&self) -> Strategy {
        Strategy::MonotoneMaximal
    }

    /// All generators below `target` in the join order.
    fn decompose_maximal(
        &self,
        carrier: &dyn Carrier<Self>,
        gens: &[usize],
        target: usize,
    ) -> Result<Option<Vec<usize>>> {
        let below: Vec<usize> = (0..gens.len())
            .filter(|&i| carrier.sharp(&[gens[i], target], &vec![0, 1]) == target)
            .collect();
        Ok((carrier.sharp(gens, &below) == target).then_some(below))
    }

    fn display(&self, u: &Vec<usize>, names: &[String]) -> String {
        if u.is_empty() {
            return "∅".to_string();
        }
        let items: Vec<&str> = u.iter().map(|&x| names[x].as_str()).collect();
        format!("{{{}}}", items.join(", "))
    }

    fn sample_elem(&self, base: usize, rng: &mut dyn RngCore) -> Vec<usize> {
        (0..base).filter(|_| rng.gen_bool(0.5)).collect()
    }

    fn sample_output(&self, rng: &mut dyn RngCore) -> bool {
        rng.gen_bool(0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bind_is_union_of_images() {
        let f = |x: usize| if x == 0 { vec![0] } else { vec![0, 1] };
        assert_eq!(Powerset.bind(&vec![0, 1], 2, &f), vec![0, 1]);
        assert_eq!(Powerset.bind(&vec![], 2, &f), Vec::<usize>::new());
    }

    #[test]
    fn enumerates_all_subsets() {
        let all = Powerset.enumerate(3, 100).unwrap();
        assert_eq!(all.len(), 8);
        assert!(Powerset.enumerate(10, 100).is_err());
    }
}
