use std::collections::BTreeMap;

use rand::{Rng, RngCore};

use super::{linear, Field, Scalar};
use crate::error::{Error, Result};
use crate::monad::{Carrier, Monad, Strategy};

/// A finitely supported vector: base index to non-zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VecElem(BTreeMap<usize, Scalar>);

impl VecElem {
    pub fn zero() -> Self {
        VecElem(BTreeMap::new())
    }

    /// Sums repeated indices and drops zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = VecElem::zero();
        for (x, c) in terms {
            v.add_term(x, &c);
        }
        v
    }

    pub fn add_term(&mut self, x: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get(&x) {
            Some(old) => {
                let sum = old + c;
                if sum.is_zero() {
                    self.0.remove(&x);
                } else {
                    self.0.insert(x, sum);
                }
            }
            None => {
                self.0.insert(x, c.clone());
            }
        }
    }

    pub fn get(&self, x: usize) -> Option<&Scalar> {
        self.0.get(&x)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(&x, c)| (x, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dense coordinates over `0..n`.
    pub fn to_dense(&self, field: Field, n: usize) -> Vec<Scalar> {
        (0..n)
            .map(|x| self.0.get(&x).cloned().unwrap_or_else(|| field.zero()))
            .collect()
    }
}

/// The free vector space monad over an exact field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VectorMonad {
    field: Field,
}

impl VectorMonad {
    pub fn new(field: Field) -> Self {
        VectorMonad { field }
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

impl Monad for VectorMonad {
    type Elem = VecElem;
    type Out = Scalar;

    fn name(&self) -> &'static str {
        "vector"
    }

    fn unit(&self, _base: usize, x: usize) -> VecElem {
        VecElem(BTreeMap::from([(x, self.field.one())]))
    }

    fn bind(&self, u: &VecElem, _target: usize, f: &dyn Fn(usize) -> VecElem) -> VecElem {
        let mut out = VecElem::zero();
        for (x, c) in u.terms() {
            for (y, d) in f(x).terms() {
                out.add_term(y, &(c * d));
            }
        }
        out
    }

    fn observe(&self, u: &VecElem, out: &dyn Fn(usize) -> Scalar) -> Scalar {
        u.terms()
            .fold(self.field.zero(), |acc, (x, c)| &acc + &(c * &out(x)))
    }

    fn is_finite(&self) -> bool {
        matches!(self.field, Field::Prime(_))
    }

    fn count(&self, base: usize) -> Option<u128> {
        match self.field {
            Field::Rational => None,
            Field::Prime(p) => (p as u128).checked_pow(base as u32),
        }
    }

    fn enumerate(&self, base: usize, cap: usize) -> Result<Vec<VecElem>> {
        let Field::Prime(p) = self.field else {
            return Err(Error::Unsupported(
                "vectors over the rationals cannot be enumerated".to_string(),
            ));
        };
        let total = self.count(base);
        if total.is_none_or(|t| t > cap as u128) {
            return Err(Error::cap("vector enumeration", total, cap));
        }
        let total = total.unwrap_or(0) as u64;
        Ok((0..total)
            .map(|mut code| {
                let mut terms = Vec::new();
                for x in 0..base {
                    terms.push((x, Scalar::Mod { value: code % p, p }));
                    code /= p;
                }
                VecElem::from_terms(terms)
            })
            .collect())
    }

    fn support(&self, u: &VecElem) -> Vec<usize> {
        u.0.keys().copied().collect()
    }

    fn fast_strategy(&self) -> Strategy {
        Strategy::Linear
    }

    /// Coordinates of `target` over `gens`, from observation rows of the
    /// carrier's languages (free coordinates set to zero).
    fn decompose_maximal(
        &self,
        carrier: &dyn Carrier<Self>,
        gens: &[usize],
        target: usize,
    ) -> Result<Option<VecElem>> {
        let n = carrier.carrier_size();
        let k = carrier.alphabet_len();
        let outputs: Vec<Scalar> = (0..n).map(|c| carrier.output(c).clone()).collect();
        let trans: Vec<Vec<VecElem>> = (0..n)
            .map(|c| (0..k).map(|a| self.unit(n, carrier.next(c, a))).collect())
            .collect();
        let basis = linear::basis_of(self.field, &outputs, &trans);
        let rows: Vec<Vec<Scalar>> = gens.iter().map(|&g| basis.rows[g].clone()).collect();
        Ok(linear::solve(self.field, &rows, &basis.rows[target]).map(VecElem::from_terms_dense))
    }

    fn display(&self, u: &VecElem, names: &[String]) -> String {
        if u.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (x, c)) in u.terms().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            match (i, sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                _ => out.push_str(&format!(" {sign} ")),
            }
            if mag.is_one() {
                out.push_str(&names[x]);
            } else {
                out.push_str(&format!("{mag}·{}", names[x]));
            }
        }
        out
    }

    fn sample_elem(&self, base: usize, rng: &mut dyn RngCore) -> VecElem {
        VecElem::from_terms((0..base).map(|x| (x, self.sample_output(rng))))
    }

    fn sample_output(&self, rng: &mut dyn RngCore) -> Scalar {
        match self.field {
            Field::Rational => {
                let n = rng.gen_range(-4i64..=4);
                let d = rng.gen_range(1i64..=3);
                self.field.from_i64(n).div(&self.field.from_i64(d))
            }
            Field::Prime(p) => Scalar::Mod {
                value: rng.gen_range(0..p),
                p,
            },
        }
    }
}

impl VecElem {
    pub(crate) fn from_terms_dense(coeffs: Vec<Scalar>) -> Self {
        VecElem::from_terms(coeffs.into_iter().enumerate())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    #[test]
    fn bind_is_linear_extension() {
        let v = VectorMonad::new(Field::Rational);
        let u = VecElem::from_terms([(0, q(1)), (1, q(2))]);
        let f = |x: usize| {
            if x == 0 {
                VecElem::from_terms([(0, q(1))])
            } else {
                VecElem::from_terms([(0, q(1)), (1, q(1))])
            }
        };
        assert_eq!(
            v.bind(&u, 2, &f),
            VecElem::from_terms([(0, q(3)), (1, q(2))])
        );
    }

    #[test]
    fn observe_is_weighted_sum() {
        let v = VectorMonad::new(Field::Rational);
        let u = VecElem::from_terms([(1, q(1)), (2, q(2))]);
        assert_eq!(v.observe(&u, &|_| q(1)), q(3));
    }

    #[test]
    fn zero_coefficients_vanish() {
        let u = VecElem::from_terms([(0, q(2)), (0, q(-2)), (1, q(0))]);
        assert!(u.is_zero());
    }

    #[test]
    fn rationals_do_not_enumerate() {
        let v = VectorMonad::new(Field::Rational);
        assert!(matches!(v.enumerate(1, 10), Err(Error::Unsupported(_))));
        assert_eq!(
            VectorMonad::new(Field::Prime(2))
                .enumerate(2, 10)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn display_formal_sum() {
        let v = VectorMonad::new(Field::Rational);
        let names: Vec<String> = ["q0", "q1", "q2"].iter().map(|s| s.to_string()).collect();
        let u = VecElem::from_terms([(1, q(1)), (2, q(2))]);
        assert_eq!(v.display(&u, &names), "q1 + 2·q2");
        let w = VecElem::from_terms([(0, q(-1)), (2, q(-2))]);
        assert_eq!(v.display(&w, &names), "-q0 - 2·q2");
    }
}
