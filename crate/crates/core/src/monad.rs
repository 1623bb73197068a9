//! The contract every monad instance implements, free extensions into
//! algebras, and the shipped law checker.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Debug};
use std::hash::Hash;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::moore::{words_up_to, Alphabet, MooreMachine};

/// How a redundancy query is answered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Enumerate every element of `T(G \ {r})` and evaluate it.
    Naive,
    /// Evaluate the single largest candidate (powerset, alternating, CABA).
    MonotoneMaximal,
    /// Scan `g · x` over the group and the remaining generators.
    Orbit,
    /// Solve a linear system over observation rows (vector spaces).
    Linear,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Naive => "naive",
            Strategy::MonotoneMaximal => "monotone-maximal",
            Strategy::Orbit => "orbit",
            Strategy::Linear => "linear",
        }
    }
}

/// A monad on finite index sets `S = {0, .., n-1}`, with elements kept in a
/// canonical form so that structural and semantic equality coincide.
pub trait Monad: Clone + Debug {
    type Elem: Clone + Eq + Hash + Ord + Debug;
    type Out: Clone + Eq + Hash + Debug;

    fn name(&self) -> &'static str;

    /// The unit `η(x)` as an element over a base of size `base`.
    fn unit(&self, base: usize, x: usize) -> Self::Elem;

    /// Kleisli extension: substitutes `f(x)` (an element over `target`) for
    /// every `x` in `u`, then flattens.
    fn bind(&self, u: &Self::Elem, target: usize, f: &dyn Fn(usize) -> Self::Elem) -> Self::Elem;

    /// Output of a configuration, given the output of every base element.
    fn observe(&self, u: &Self::Elem, out: &dyn Fn(usize) -> Self::Out) -> Self::Out;

    /// One step of a configuration on `symbol`.
    fn succ_step(
        &self,
        u: &Self::Elem,
        base: usize,
        symbol: usize,
        dynamics: &dyn Fn(usize, usize) -> Self::Elem,
    ) -> Self::Elem {
        self.bind(u, base, &|x| dynamics(x, symbol))
    }

    /// False for instances whose `T(S)` is infinite.
    fn is_finite(&self) -> bool {
        true
    }

    /// `|T(S)|` for `|S| = base`, or `None` when it does not fit in a `u128`
    /// (or is infinite).
    fn count(&self, base: usize) -> Option<u128>;

    /// Every element of `T(S)`, in a fixed order.
    fn enumerate(&self, base: usize, cap: usize) -> Result<Vec<Self::Elem>>;

    /// Base indices mentioned by `u`.
    fn support(&self, u: &Self::Elem) -> Vec<usize>;

    /// Whether `u` is a well-formed element over a base of size `base`.
    fn fits(&self, u: &Self::Elem, base: usize) -> bool {
        self.support(u).iter().all(|&x| x < base)
    }

    /// The strategy `fast` redundancy resolves to for this instance.
    fn fast_strategy(&self) -> Strategy;

    /// The canonical decomposition of `target` over `gens` used by the fast
    /// strategy and by the free representation, or `None` if `target` is not
    /// generated by `gens`.
    fn decompose_maximal(
        &self,
        carrier: &dyn Carrier<Self>,
        gens: &[usize],
        target: usize,
    ) -> Result<Option<Self::Elem>>;

    /// Human-readable rendering using the given names for base elements.
    fn display(&self, u: &Self::Elem, names: &[String]) -> String;

    fn sample_elem(&self, base: usize, rng: &mut dyn RngCore) -> Self::Elem;

    fn sample_output(&self, rng: &mut dyn RngCore) -> Self::Out;
}

/// An Eilenberg-Moore algebra on a finite carrier `0..carrier_size()`.
pub trait AlgebraHandle<M: Monad> {
    fn monad(&self) -> &M;

    fn carrier_size(&self) -> usize;

    /// The structure map, applied to an element over the carrier.
    fn apply(&self, u: &M::Elem) -> usize;

    /// The free extension of `g`, evaluated at `u` (an element over
    /// `0..g.len()`).
    fn sharp(&self, g: &[usize], u: &M::Elem) -> usize {
        let m = self.monad();
        let n = self.carrier_size();
        self.apply(&m.bind(u, n, &|x| m.unit(n, g[x])))
    }
}

/// An algebra that is also the state space of a deterministic automaton.
pub trait Carrier<M: Monad>: AlgebraHandle<M> {
    fn alphabet_len(&self) -> usize;
    fn output(&self, c: usize) -> &M::Out;
    fn next(&self, c: usize, symbol: usize) -> usize;
}

/// `g♯(u)`: the free extension of `g` into `alg`, evaluated at `u`.
pub fn sharp_eval<M: Monad>(g: &[usize], alg: &dyn AlgebraHandle<M>, u: &M::Elem) -> usize {
    alg.sharp(g, u)
}

/// The free algebra `T(S)` on an enumerated finite base.
pub struct FreeAlgebra<M: Monad> {
    monad: M,
    base: usize,
    elems: Vec<M::Elem>,
    index: HashMap<M::Elem, usize>,
}

impl<M: Monad> FreeAlgebra<M> {
    pub fn new(monad: M, base: usize, cap: usize) -> Result<Self> {
        let elems = monad.enumerate(base, cap)?;
        let index = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        Ok(FreeAlgebra {
            monad,
            base,
            elems,
            index,
        })
    }

    pub fn elems(&self) -> &[M::Elem] {
        &self.elems
    }

    pub fn index_of(&self, u: &M::Elem) -> Option<usize> {
        self.index.get(u).copied()
    }
}

impl<M: Monad> AlgebraHandle<M> for FreeAlgebra<M> {
    fn monad(&self) -> &M {
        &self.monad
    }

    fn carrier_size(&self) -> usize {
        self.elems.len()
    }

    fn apply(&self, u: &M::Elem) -> usize {
        let flat = self.monad.bind(u, self.base, &|c| self.elems[c].clone());
        self.index[&flat]
    }
}

/// One law of the suite and how it fared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: String,
    pub base: usize,
    pub cases: usize,
    pub failure: Option<String>,
}

/// Outcome of [`check_monad_laws`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub monad: String,
    /// `(base size, number of enumerated elements)`; `None` when sampled.
    pub sizes: Vec<(usize, Option<usize>)>,
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.failure.is_some())
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "monad: {}", self.monad)?;
        for (base, count) in &self.sizes {
            match count {
                Some(n) => writeln!(f, "base {base}: {n} elements")?,
                None => writeln!(f, "base {base}: sampled")?,
            }
        }
        for c in &self.checks {
            let status = if c.failure.is_none() { "pass" } else { "FAIL" };
            write!(f, "{status} {} (base {}, {} cases)", c.law, c.base, c.cases)?;
            if let Some(why) = &c.failure {
                write!(f, ": {why}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all laws hold"
            } else {
                "law violated"
            }
        )
    }
}

/// Settings for [`check_monad_laws`].
#[derive(Clone, Copy, Debug)]
pub struct LawConfig {
    pub max_base: usize,
    pub cap: usize,
    /// Per-law case budget; exhaustive checks stay below it.
    pub budget: usize,
    /// Number of random elements per base when enumeration is unavailable.
    pub samples: usize,
    pub seed: u64,
}

impl LawConfig {
    pub fn new(max_base: usize) -> Self {
        LawConfig {
            max_base,
            cap: 100_000,
            budget: 2_000,
            samples: 200,
            seed: 0x5eed,
        }
    }
}

/// Checks unit, associativity, enumeration, extension and observation laws
/// on every base size `1..=max_base`.
///
/// Finite instances are checked exhaustively where the case count fits the
/// budget and on a seeded sample otherwise; infinite instances are always
/// sampled.
pub fn check_monad_laws<M: Monad>(monad: &M, config: LawConfig) -> Result<LawReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = LawReport {
        monad: monad.name().to_string(),
        sizes: Vec::new(),
        checks: Vec::new(),
    };
    for base in 1..=config.max_base {
        let enumerated = if monad.is_finite() {
            Some(monad.enumerate(base, config.cap)?)
        } else {
            None
        };
        report.sizes.push((base, enumerated.as_ref().map(Vec::len)));
        let elems = match &enumerated {
            Some(all) => all.clone(),
            None => (0..config.samples)
                .map(|_| monad.sample_elem(base, &mut rng))
                .collect(),
        };
        let mut checker = Checker {
            monad,
            base,
            elems: &elems,
            exhaustive: enumerated.is_some(),
            config,
            rng: &mut rng,
            checks: &mut report.checks,
        };
        checker.run()?;
    }
    Ok(report)
}

struct Checker<'a, M: Monad> {
    monad: &'a M,
    base: usize,
    elems: &'a [M::Elem],
    exhaustive: bool,
    config: LawConfig,
    rng: &'a mut ChaCha8Rng,
    checks: &'a mut Vec<LawCheck>,
}

type Kleisli<E> = Vec<E>;

impl<M: Monad> Checker<'_, M> {
    fn record(&mut self, law: &str, cases: usize, failure: Option<String>) {
        self.checks.push(LawCheck {
            law: law.to_string(),
            base: self.base,
            cases,
            failure,
        });
    }

    /// Kleisli maps `S -> T(S)` to test with: all of them when few enough,
    /// otherwise a seeded sample.
    fn functions(&mut self) -> Vec<Kleisli<M::Elem>> {
        let k = self.elems.len();
        let total = (k as u128).checked_pow(self.base as u32);
        match total {
            Some(t) if self.exhaustive && t <= self.config.budget as u128 => (0..t as usize)
                .map(|mut code| {
                    (0..self.base)
                        .map(|_| {
                            let e = self.elems[code % k].clone();
                            code /= k;
                            e
                        })
                        .collect()
                })
                .collect(),
            _ => {
                let n = self.config.budget.min(64);
                (0..n)
                    .map(|_| {
                        (0..self.base)
                            .map(|_| self.elems[self.rng.gen_range(0..k)].clone())
                            .collect()
                    })
                    .collect()
            }
        }
    }

    fn pick(&mut self) -> M::Elem {
        self.elems[self.rng.gen_range(0..self.elems.len())].clone()
    }

    fn run(&mut self) -> Result<()> {
        let m = self.monad;
        let n = self.base;
        let funcs = self.functions();
        let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
        let show = |u: &M::Elem| m.display(u, &names);

        if self.exhaustive {
            let distinct: HashSet<&M::Elem> = self.elems.iter().collect();
            let failure = (distinct.len() != self.elems.len())
                .then(|| "enumeration contains duplicates".to_string());
            self.record("enumeration is duplicate-free", self.elems.len(), failure);
            if let Some(expected) = m.count(n) {
                let failure = (expected != self.elems.len() as u128).then(|| {
                    format!(
                        "count says {expected}, enumeration has {}",
                        self.elems.len()
                    )
                });
                self.record("enumeration matches count", 1, failure);
            }
        }

        let mut cases = 0;
        let mut failure = None;
        'left: for f in &funcs {
            for x in 0..n {
                cases += 1;
                let lhs = m.bind(&m.unit(n, x), n, &|y| f[y].clone());
                if lhs != f[x] {
                    failure = Some(format!(
                        "bind(unit(s{x}), f) = {} but f(s{x}) = {}",
                        show(&lhs),
                        show(&f[x])
                    ));
                    break 'left;
                }
            }
        }
        self.record("left unit", cases, failure);

        let mut cases = 0;
        let mut failure = None;
        for u in self.elems {
            cases += 1;
            let lhs = m.bind(u, n, &|y| m.unit(n, y));
            if &lhs != u {
                failure = Some(format!("bind({}, unit) = {}", show(u), show(&lhs)));
                break;
            }
        }
        self.record("right unit", cases, failure);

        let budget = self.config.budget;
        let triples: Vec<(M::Elem, usize, usize)> =
            if self.exhaustive && self.elems.len() * funcs.len() * funcs.len() <= budget {
                let mut all = Vec::new();
                for u in self.elems {
                    for i in 0..funcs.len() {
                        for j in 0..funcs.len() {
                            all.push((u.clone(), i, j));
                        }
                    }
                }
                all
            } else {
                (0..budget)
                    .map(|_| {
                        let u = self.pick();
                        (
                            u,
                            self.rng.gen_range(0..funcs.len()),
                            self.rng.gen_range(0..funcs.len()),
                        )
                    })
                    .collect()
            };
        let index: HashSet<&M::Elem> = self.elems.iter().collect();
        let mut failure = None;
        let mut closure_failure = None;
        for (u, i, j) in &triples {
            let (f, g) = (&funcs[*i], &funcs[*j]);
            let inner = m.bind(u, n, &|y| f[y].clone());
            let lhs = m.bind(&inner, n, &|y| g[y].clone());
            let rhs = m.bind(u, n, &|y| m.bind(&f[y], n, &|z| g[z].clone()));
            if lhs != rhs {
                failure = Some(format!(
                    "associativity fails at u = {}: {} vs {}",
                    show(u),
                    show(&lhs),
                    show(&rhs)
                ));
                break;
            }
            if self.exhaustive && closure_failure.is_none() && !index.contains(&inner) {
                closure_failure = Some(format!("bind result {} is not enumerated", show(&inner)));
            }
        }
        self.record("associativity", triples.len(), failure);
        if self.exhaustive {
            self.record(
                "enumeration is closed under bind",
                triples.len(),
                closure_failure,
            );
        }

        self.check_extension(&funcs)?;

        let mut cases = 0;
        let mut failure = None;
        for _ in 0..16 {
            let outs: Vec<M::Out> = (0..n).map(|_| m.sample_output(self.rng)).collect();
            for (x, expected) in outs.iter().enumerate() {
                cases += 1;
                let got = m.observe(&m.unit(n, x), &|y| outs[y].clone());
                if &got != expected {
                    failure = Some(format!(
                        "observe(unit(s{x})) = {got:?}, output is {expected:?}"
                    ));
                }
            }
        }
        self.record("observe after unit", cases, failure);

        self.check_coherence()?;
        Ok(())
    }

    /// `g♯ ∘ bind(-, h) = (g♯ ∘ h)♯` on the free algebra over the base.
    fn check_extension(&mut self, funcs: &[Kleisli<M::Elem>]) -> Result<()> {
        if !self.exhaustive {
            return Ok(());
        }
        let m = self.monad;
        let n = self.base;
        let alg = FreeAlgebra::new(m.clone(), n, self.config.cap)?;
        let k = alg.carrier_size();
        // The free algebra over an n-element base, used as a base in turn, can
        // blow up for the double-powerset instance; keep it to small carriers.
        if k > 20 {
            return Ok(());
        }
        let rounds = (self.config.budget / self.elems.len().max(1)).clamp(1, 8);
        let mut cases = 0;
        let mut failure = None;
        'outer: for round in 0..rounds {
            let g: Vec<usize> = (0..n).map(|_| self.rng.gen_range(0..k)).collect();
            let h = &funcs[round % funcs.len()];
            for u in self.elems {
                cases += 1;
                let lhs = sharp_eval(&g, &alg, &m.bind(u, n, &|y| h[y].clone()));
                let pointwise: Vec<usize> = h.iter().map(|hy| sharp_eval(&g, &alg, hy)).collect();
                let rhs = sharp_eval(&pointwise, &alg, u);
                if lhs != rhs {
                    failure = Some(format!("extension is not a homomorphism at {:?}", u));
                    break 'outer;
                }
            }
        }
        self.record("free extension is a homomorphism", cases, failure);
        let mut failure = None;
        for x in 0..k {
            let back = alg.apply(&m.unit(k, x));
            if back != x {
                failure = Some(format!("apply(unit({x})) = {back}"));
                break;
            }
        }
        self.record("algebra unit law", k, failure);
        Ok(())
    }

    /// Folding `succ_step` over a random Moore machine reproduces its run.
    fn check_coherence(&mut self) -> Result<()> {
        let m = self.monad;
        let n = self.base;
        let alphabet = Alphabet::new(["a", "b"])?;
        let mut cases = 0;
        let mut failure = None;
        'outer: for _ in 0..8 {
            let trans: Vec<Vec<usize>> = (0..n)
                .map(|_| (0..2).map(|_| self.rng.gen_range(0..n)).collect())
                .collect();
            let outs: Vec<M::Out> = (0..n).map(|_| m.sample_output(self.rng)).collect();
            let init = self.rng.gen_range(0..n);
            let machine =
                MooreMachine::from_table(alphabet.clone(), init, outs.clone(), trans.clone())?;
            for w in words_up_to(2, 4) {
                cases += 1;
                let mut config = m.unit(n, init);
                for &a in w.symbols() {
                    config = m.succ_step(&config, n, a, &|x, s| m.unit(n, trans[x][s]));
                }
                let got = m.observe(&config, &|x| outs[x].clone());
                let expected = machine.run(&w)?;
                if got != expected {
                    failure = Some(format!(
                        "word {} gives {got:?}, machine gives {expected:?}",
                        w.display(&alphabet)
                    ));
                    break 'outer;
                }
            }
        }
        self.record("succ_step follows the machine", cases, failure);
        Ok(())
    }
}
