use std::collections::BTreeSet;

use super::Oracle;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar, VecElem, VectorMonad};
use crate::set_monads::{Alternating, Antichain, Caba, CabaElem, GroupElem, GroupMonad, Powerset};

type Family = BTreeSet<BTreeSet<usize>>;

fn all_subsets(base: usize) -> Vec<BTreeSet<usize>> {
    (0u64..1 << base)
        .map(|m| (0..base).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

fn to_mask(set: &BTreeSet<usize>) -> u64 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

fn from_mask(mask: u64, base: usize) -> BTreeSet<usize> {
    (0..base).filter(|&i| mask >> i & 1 == 1).collect()
}

fn check_count(what: &str, count: Option<u128>, cap: usize) -> Result<()> {
    match count {
        Some(c) if c <= cap as u128 => Ok(()),
        other => Err(Error::cap(what, other, cap)),
    }
}

fn pow(b: u128, e: usize) -> Option<u128> {
    (0..e).try_fold(1u128, |acc, _| acc.checked_mul(b))
}

impl Oracle for Powerset {
    type Raw = BTreeSet<usize>;

    fn to_raw(&self, u: &Vec<usize>, _base: usize) -> Self::Raw {
        u.iter().copied().collect()
    }

    fn canonicalize(&self, r: &Self::Raw, _base: usize) -> Vec<usize> {
        r.iter().copied().collect()
    }

    fn raw_all(&self, base: usize, cap: usize) -> Result<Vec<Self::Raw>> {
        check_count("raw subsets", pow(2, base), cap)?;
        Ok(all_subsets(base))
    }

    fn raw_unit(&self, _base: usize, x: usize) -> Self::Raw {
        BTreeSet::from([x])
    }

    fn raw_kleisli(
        &self,
        u: &Self::Raw,
        _base: usize,
        _target: usize,
        f: &dyn Fn(usize) -> Self::Raw,
    ) -> Self::Raw {
        let mut out = BTreeSet::new();
        for &x in u {
            out.extend(f(x));
        }
        out
    }

    fn raw_observe(&self, u: &Self::Raw, _base: usize, out: &dyn Fn(usize) -> bool) -> bool {
        u.iter().any(|&x| out(x))
    }
}

/// Upsets are kept fully materialized: every subset of the base that
/// satisfies the monotone formula.
impl Oracle for Alternating {
    type Raw = Family;

    fn to_raw(&self, u: &Antichain, base: usize) -> Family {
        all_subsets(base)
            .into_iter()
            .filter(|w| u.clauses().iter().any(|&c| c & !to_mask(w) == 0))
            .collect()
    }

    fn canonicalize(&self, r: &Family, _base: usize) -> Antichain {
        let minimal = r
            .iter()
            .filter(|w| !r.iter().any(|v| v != *w && v.is_subset(w)))
            .map(to_mask);
        Antichain::from_clauses(minimal)
    }

    /// Decides membership from the largest subsets down, admitting a subset
    /// only when all its one-larger supersets are already members.
    fn raw_all(&self, base: usize, cap: usize) -> Result<Vec<Family>> {
        if base > 6 {
            return Err(Error::cap(
                format!("raw upsets over {base} elements"),
                None,
                cap,
            ));
        }
        let mut order: Vec<u64> = (0u64..1 << base).collect();
        order.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
        let mut found = Vec::new();
        let mut chosen = vec![false; 1 << base];
        upsets(&order, 0, base, &mut chosen, &mut found, cap)?;
        Ok(found)
    }

    fn raw_unit(&self, base: usize, x: usize) -> Family {
        all_subsets(base)
            .into_iter()
            .filter(|w| w.contains(&x))
            .collect()
    }

    fn raw_kleisli(
        &self,
        u: &Family,
        base: usize,
        target: usize,
        f: &dyn Fn(usize) -> Family,
    ) -> Family {
        let images: Vec<Family> = (0..base).map(f).collect();
        all_subsets(target)
            .into_iter()
            .filter(|w| u.iter().any(|v| v.iter().all(|&x| images[x].contains(w))))
            .collect()
    }

    fn raw_observe(&self, u: &Family, base: usize, out: &dyn Fn(usize) -> bool) -> bool {
        let accepting: BTreeSet<usize> = (0..base).filter(|&x| out(x)).collect();
        u.contains(&accepting)
    }
}

fn upsets(
    order: &[u64],
    i: usize,
    base: usize,
    chosen: &mut [bool],
    found: &mut Vec<Family>,
    cap: usize,
) -> Result<()> {
    if i == order.len() {
        if found.len() >= cap {
            return Err(Error::cap("raw upset enumeration", None, cap));
        }
        found.push(
            (0..chosen.len())
                .filter(|&m| chosen[m])
                .map(|m| from_mask(m as u64, base))
                .collect(),
        );
        return Ok(());
    }
    let m = order[i];
    upsets(order, i + 1, base, chosen, found, cap)?;
    let closed = (0..base)
        .filter(|&b| m >> b & 1 == 0)
        .all(|b| chosen[(m | 1 << b) as usize]);
    if closed {
        chosen[m as usize] = true;
        upsets(order, i + 1, base, chosen, found, cap)?;
        chosen[m as usize] = false;
    }
    Ok(())
}

/// A family of valuations, read as the predicate "the valuation is listed".
impl Oracle for Caba {
    type Raw = Family;

    fn to_raw(&self, u: &CabaElem, base: usize) -> Family {
        u.valuations().iter().map(|&v| from_mask(v, base)).collect()
    }

    fn canonicalize(&self, r: &Family, base: usize) -> CabaElem {
        CabaElem::new(base, r.iter().map(to_mask)).expect("raw valuations fit the base")
    }

    fn raw_all(&self, base: usize, cap: usize) -> Result<Vec<Family>> {
        let subsets = all_subsets(base);
        check_count("raw valuation families", pow(2, subsets.len()), cap)?;
        Ok((0u64..1 << subsets.len())
            .map(|code| {
                subsets
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| code >> i & 1 == 1)
                    .map(|(_, s)| s.clone())
                    .collect()
            })
            .collect())
    }

    fn raw_unit(&self, base: usize, x: usize) -> Family {
        all_subsets(base)
            .into_iter()
            .filter(|w| w.contains(&x))
            .collect()
    }

    fn raw_kleisli(
        &self,
        u: &Family,
        base: usize,
        target: usize,
        f: &dyn Fn(usize) -> Family,
    ) -> Family {
        let images: Vec<Family> = (0..base).map(f).collect();
        all_subsets(target)
            .into_iter()
            .filter(|w| {
                let preimage: BTreeSet<usize> =
                    (0..base).filter(|&x| images[x].contains(w)).collect();
                u.contains(&preimage)
            })
            .collect()
    }

    fn raw_observe(&self, u: &Family, base: usize, out: &dyn Fn(usize) -> bool) -> bool {
        let accepting: BTreeSet<usize> = (0..base).filter(|&x| out(x)).collect();
        u.contains(&accepting)
    }
}

impl Oracle for GroupMonad {
    type Raw = (usize, usize);

    fn to_raw(&self, u: &GroupElem, _base: usize) -> (usize, usize) {
        (u.g, u.x)
    }

    fn canonicalize(&self, r: &(usize, usize), _base: usize) -> GroupElem {
        GroupElem { g: r.0, x: r.1 }
    }

    fn raw_all(&self, base: usize, cap: usize) -> Result<Vec<(usize, usize)>> {
        let order = self.group().table().len();
        check_count("raw group pairs", Some((order * base) as u128), cap)?;
        Ok((0..order)
            .flat_map(|g| (0..base).map(move |x| (g, x)))
            .collect())
    }

    fn raw_unit(&self, _base: usize, x: usize) -> (usize, usize) {
        let table = self.group().table();
        let e = (0..table.len())
            .find(|&e| (0..table.len()).all(|g| table[e][g] == g))
            .expect("groups have an identity");
        (e, x)
    }

    fn raw_kleisli(
        &self,
        u: &(usize, usize),
        _base: usize,
        _target: usize,
        f: &dyn Fn(usize) -> (usize, usize),
    ) -> (usize, usize) {
        let (h, y) = f(u.1);
        (self.group().table()[u.0][h], y)
    }

    fn raw_observe(&self, u: &(usize, usize), _base: usize, out: &dyn Fn(usize) -> usize) -> usize {
        self.group().act_output(u.0, out(u.1))
    }

    fn raw_step(
        &self,
        u: &(usize, usize),
        _base: usize,
        symbol: usize,
        dynamics: &dyn Fn(usize, usize) -> (usize, usize),
    ) -> (usize, usize) {
        let group = self.group();
        let table = group.table();
        let (e, _) = self.raw_unit(0, 0);
        let inv = (0..table.len())
            .find(|&h| table[u.0][h] == e)
            .expect("groups have inverses");
        let (h, y) = dynamics(u.1, group.act_symbol(inv, symbol));
        (table[u.0][h], y)
    }
}

/// Dense coordinate vectors.
impl Oracle for VectorMonad {
    type Raw = Vec<Scalar>;

    fn to_raw(&self, u: &VecElem, base: usize) -> Vec<Scalar> {
        let f = self.field();
        (0..base)
            .map(|x| u.get(x).cloned().unwrap_or_else(|| f.zero()))
            .collect()
    }

    fn canonicalize(&self, r: &Vec<Scalar>, _base: usize) -> VecElem {
        VecElem::from_terms(r.iter().cloned().enumerate())
    }

    fn raw_all(&self, base: usize, cap: usize) -> Result<Vec<Vec<Scalar>>> {
        let Field::Prime(p) = self.field() else {
            return Err(Error::Unsupported(
                "vectors over the rationals cannot be enumerated".into(),
            ));
        };
        check_count("raw vectors", pow(p as u128, base), cap)?;
        let f = self.field();
        let mut all = vec![Vec::new()];
        for _ in 0..base {
            all = all
                .into_iter()
                .flat_map(|v: Vec<Scalar>| {
                    (0..p as i64).map(move |c| {
                        let mut w = v.clone();
                        w.push(f.from_i64(c));
                        w
                    })
                })
                .collect();
        }
        Ok(all)
    }

    fn raw_unit(&self, base: usize, x: usize) -> Vec<Scalar> {
        let f = self.field();
        (0..base)
            .map(|y| if y == x { f.one() } else { f.zero() })
            .collect()
    }

    fn raw_kleisli(
        &self,
        u: &Vec<Scalar>,
        _base: usize,
        target: usize,
        f: &dyn Fn(usize) -> Vec<Scalar>,
    ) -> Vec<Scalar> {
        let mut sum = vec![self.field().zero(); target];
        for (x, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (s, d) in sum.iter_mut().zip(f(x)) {
                *s = &*s + &(c * &d);
            }
        }
        sum
    }

    fn raw_observe(&self, u: &Vec<Scalar>, _base: usize, out: &dyn Fn(usize) -> Scalar) -> Scalar {
        u.iter()
            .enumerate()
            .fold(self.field().zero(), |acc, (x, c)| &acc + &(c * &out(x)))
    }
}
