use std::fmt;

use super::document::{Document, Token};
use crate::engine::{
    t_minimize, weighted_equiv, weighted_from_moore, weighted_t_minimize, Minimization,
    WeightedAutomaton,
};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar, VectorMonad};
use crate::monad::{check_monad_laws, LawConfig, LawReport, Monad, Strategy};
use crate::moore::{equiv_exact, words_up_to, Alphabet, Equivalence, MooreMachine, Word};
use crate::oracle::{verify_succinct, verify_weighted, Oracle, VerificationReport};
use crate::set_monads::{Alternating, Caba, FiniteGroup, GroupMonad, Powerset};

/// The monad a command works with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonadKind {
    Powerset,
    Alternating,
    Caba,
    Group,
    Vector,
}

impl MonadKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "powerset" => Ok(MonadKind::Powerset),
            "alternating" => Ok(MonadKind::Alternating),
            "caba" => Ok(MonadKind::Caba),
            "group" => Ok(MonadKind::Group),
            "vector" => Ok(MonadKind::Vector),
            other => Err(Error::input(format!(
                "unknown monad `{other}`; use powerset, alternating, caba, group or vector"
            ))),
        }
    }
}

/// `naive` always enumerates; `fast` picks the instance's own strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyChoice {
    Naive,
    Fast,
}

impl StrategyChoice {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "naive" => Ok(StrategyChoice::Naive),
            "fast" => Ok(StrategyChoice::Fast),
            other => Err(Error::input(format!(
                "unknown strategy `{other}`; use naive or fast"
            ))),
        }
    }

    fn resolve<M: Monad>(self, monad: &M) -> Strategy {
        match self {
            StrategyChoice::Naive => Strategy::Naive,
            StrategyChoice::Fast => monad.fast_strategy(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeOptions {
    pub monad: MonadKind,
    pub strategy: StrategyChoice,
    pub cap: usize,
    /// Depth of the bounded check run after minimizing, if any.
    pub verify: Option<usize>,
    /// Field for weighted minimization of deterministic input.
    pub field: Option<Field>,
    pub group: Option<FiniteGroup>,
}

impl MinimizeOptions {
    pub fn new(monad: MonadKind, cap: usize) -> Self {
        MinimizeOptions {
            monad,
            strategy: StrategyChoice::Fast,
            cap,
            verify: None,
            field: None,
            group: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeOutcome {
    pub document: Document,
    pub summary: String,
    pub verification: Option<VerificationReport>,
}

/// Any document as a deterministic machine over output tokens.
pub fn to_moore(doc: &Document, cap: usize) -> Result<MooreMachine<Token>> {
    Ok(match doc {
        Document::Moore(m) => m.clone(),
        Document::Powerset(s) => s.determinize(cap)?.map_outputs(|&b| Token::Bool(b)),
        Document::Alternating(s) => s.determinize(cap)?.map_outputs(|&b| Token::Bool(b)),
        Document::Caba(s) => s.determinize(cap)?.map_outputs(|&b| Token::Bool(b)),
        Document::Group(s) => {
            let outs = s.monad().group().outputs();
            s.determinize(cap)?
                .map_outputs(|&o| Token::Text(outs[o].clone()))
        }
        Document::Weighted(s) => s
            .determinize(cap)?
            .map_outputs(|c| Token::Text(c.to_string())),
    })
}

fn booleans(m: &MooreMachine<Token>, monad: &str) -> Result<MooreMachine<bool>> {
    m.try_map_outputs(|t| match t {
        Token::Bool(b) => Ok(*b),
        Token::Text(s) => Err(Error::input(format!(
            "the {monad} monad needs boolean outputs, found `{s}`"
        ))),
    })
}

fn group_outputs(m: &MooreMachine<Token>, group: &FiniteGroup) -> Result<MooreMachine<usize>> {
    m.try_map_outputs(|t| {
        let s = t.to_string();
        group
            .output_index(&s)
            .ok_or_else(|| Error::input(format!("output `{s}` is not acted on by the group")))
    })
}

fn scalars(m: &MooreMachine<Token>, field: Field) -> Result<MooreMachine<Scalar>> {
    m.try_map_outputs(|t| match t {
        Token::Bool(b) => Ok(field.from_i64(*b as i64)),
        Token::Text(s) => field.parse_scalar(s),
    })
}

fn run_pipeline<M: Oracle>(
    m: &MooreMachine<M::Out>,
    monad: M,
    opts: &MinimizeOptions,
) -> Result<(Minimization<M>, Option<VerificationReport>)> {
    let strategy = opts.strategy.resolve(&monad);
    let result = t_minimize(m, monad, strategy, opts.cap)?;
    let report = match opts.verify {
        Some(depth) => Some(verify_succinct(m, &result.automaton, depth, opts.cap)?),
        None => None,
    };
    Ok((result, report))
}

fn weighted_pipeline(
    w: &WeightedAutomaton,
    opts: &MinimizeOptions,
) -> Result<(Minimization<VectorMonad>, Option<VerificationReport>)> {
    if opts.strategy == StrategyChoice::Naive {
        return Err(Error::StrategyMismatch {
            strategy: "naive".into(),
            monad: "vector".into(),
        });
    }
    let result = weighted_t_minimize(w)?;
    let report = match opts.verify {
        Some(depth) => Some(verify_weighted(w, &result.automaton, depth)?),
        None => None,
    };
    Ok((result, report))
}

/// Minimizes a document with the requested monad. Succinct input is
/// determinized first; weighted input requires the vector monad.
pub fn minimize(doc: &Document, opts: &MinimizeOptions) -> Result<MinimizeOutcome> {
    fn done<M: Monad>(
        r: (Minimization<M>, Option<VerificationReport>),
        wrap: impl FnOnce(crate::engine::SuccinctAutomaton<M>) -> Document,
    ) -> MinimizeOutcome {
        let (min, verification) = r;
        MinimizeOutcome {
            summary: min.summary(),
            document: wrap(min.automaton),
            verification,
        }
    }
    if let Document::Weighted(w) = doc {
        if opts.monad != MonadKind::Vector {
            return Err(Error::input(
                "weighted documents can only be minimized with the vector monad",
            ));
        }
        return Ok(done(weighted_pipeline(w, opts)?, Document::Weighted));
    }
    let m = to_moore(doc, opts.cap)?;
    Ok(match opts.monad {
        MonadKind::Powerset => done(
            run_pipeline(&booleans(&m, "powerset")?, Powerset, opts)?,
            Document::Powerset,
        ),
        MonadKind::Alternating => done(
            run_pipeline(&booleans(&m, "alternating")?, Alternating, opts)?,
            Document::Alternating,
        ),
        MonadKind::Caba => done(
            run_pipeline(&booleans(&m, "caba")?, Caba, opts)?,
            Document::Caba,
        ),
        MonadKind::Group => {
            let group = match (&opts.group, doc) {
                (Some(g), _) => g.aligned_to(m.alphabet())?,
                (None, Document::Group(s)) => s.monad().group().clone(),
                (None, _) => {
                    return Err(Error::input("the group monad needs a group (--group-file)"))
                }
            };
            let typed = group_outputs(&m, &group)?;
            done(
                run_pipeline(&typed, GroupMonad::new(group), opts)?,
                Document::Group,
            )
        }
        MonadKind::Vector => {
            let field = opts.field.unwrap_or(Field::Rational);
            let w = weighted_from_moore(&scalars(&m, field)?, field)?;
            done(weighted_pipeline(&w, opts)?, Document::Weighted)
        }
    })
}

/// The deterministic machine of reachable configurations, optionally
/// minimized.
pub fn determinize(doc: &Document, cap: usize, then_minimize: bool) -> Result<Document> {
    let m = to_moore(doc, cap)?;
    Ok(Document::Moore(if then_minimize {
        m.minimize().0
    } else {
        m
    }))
}

fn run_word(doc: &Document, w: &Word) -> Result<Token> {
    Ok(match doc {
        Document::Moore(m) => m.run(w)?,
        Document::Powerset(s) => Token::Bool(s.run(w)?),
        Document::Alternating(s) => Token::Bool(s.run(w)?),
        Document::Caba(s) => Token::Bool(s.run(w)?),
        Document::Group(s) => Token::Text(s.monad().group().outputs()[s.run(w)?].clone()),
        Document::Weighted(s) => Token::Text(s.run(w)?.to_string()),
    })
}

/// Output of the document on a word written over its alphabet.
pub fn run(doc: &Document, word: &str) -> Result<String> {
    let w = doc.alphabet().parse_word(word)?;
    Ok(run_word(doc, &w)?.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMode {
    Bounded(usize),
    Exact,
}

/// Result of comparing two documents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivOutcome {
    pub alphabet: Alphabet,
    pub equivalence: Equivalence,
    /// Outputs of both sides on the counterexample.
    pub outputs: Option<(String, String)>,
}

impl EquivOutcome {
    pub fn is_equal(&self) -> bool {
        self.equivalence.is_equal()
    }
}

impl fmt::Display for EquivOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.equivalence, &self.outputs) {
            (Equivalence::Counterexample(w), Some((a, b))) => write!(
                f,
                "counterexample: {} (left {a}, right {b})",
                w.display(&self.alphabet)
            ),
            _ => write!(f, "equal"),
        }
    }
}

fn as_weighted(doc: &Document, field: Field, cap: usize) -> Result<WeightedAutomaton> {
    match doc {
        Document::Weighted(w) => Ok(w.clone()),
        other => weighted_from_moore(&scalars(&to_moore(other, cap)?, field)?, field),
    }
}

fn first_difference(
    k: usize,
    n: usize,
    mut agree: impl FnMut(&Word) -> Result<bool>,
) -> Result<Equivalence> {
    for w in words_up_to(k, n) {
        if !agree(&w)? {
            return Ok(Equivalence::Counterexample(w));
        }
    }
    Ok(Equivalence::Equal)
}

/// Compares two documents of any kinds over the same alphabet.
///
/// Exact comparison determinizes succinct sides under `cap`; when either
/// side is weighted both are compared as weighted automata.
pub fn equiv(a: &Document, b: &Document, mode: EquivMode, cap: usize) -> Result<EquivOutcome> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::input("documents have different alphabets"));
    }
    let field = match (a, b) {
        (Document::Weighted(w), _) | (_, Document::Weighted(w)) => Some(w.monad().field()),
        _ => None,
    };
    let equivalence = match (mode, field) {
        (EquivMode::Bounded(n), Some(f)) => {
            let (wa, wb) = (as_weighted(a, f, cap)?, as_weighted(b, f, cap)?);
            first_difference(a.alphabet().len(), n, |w| Ok(wa.run(w)? == wb.run(w)?))?
        }
        (EquivMode::Bounded(n), None) => first_difference(a.alphabet().len(), n, |w| {
            Ok(run_word(a, w)? == run_word(b, w)?)
        })?,
        (EquivMode::Exact, Some(f)) => {
            weighted_equiv(&as_weighted(a, f, cap)?, &as_weighted(b, f, cap)?)?
        }
        (EquivMode::Exact, None) => equiv_exact(&to_moore(a, cap)?, &to_moore(b, cap)?)?,
    };
    let outputs = match &equivalence {
        Equivalence::Counterexample(w) => Some(match field {
            Some(f) => (
                as_weighted(a, f, cap)?.run(w)?.to_string(),
                as_weighted(b, f, cap)?.run(w)?.to_string(),
            ),
            None => (run_word(a, w)?.to_string(), run_word(b, w)?.to_string()),
        }),
        Equivalence::Equal => None,
    };
    Ok(EquivOutcome {
        alphabet: a.alphabet().clone(),
        equivalence,
        outputs,
    })
}

/// Runs the law suite on base sizes `1..=base`.
pub fn check_laws(
    kind: MonadKind,
    base: usize,
    field: Option<Field>,
    group: Option<FiniteGroup>,
    cap: usize,
) -> Result<LawReport> {
    let config = LawConfig {
        cap,
        ..LawConfig::new(base)
    };
    match kind {
        MonadKind::Powerset => check_monad_laws(&Powerset, config),
        MonadKind::Alternating => check_monad_laws(&Alternating, config),
        MonadKind::Caba => check_monad_laws(&Caba, config),
        MonadKind::Group => {
            let group = match group {
                Some(g) => g,
                None => {
                    FiniteGroup::swap_pair(["a", "b"], vec!["a".into(), "b".into()], vec![1, 0])?
                }
            };
            check_monad_laws(&GroupMonad::new(group), config)
        }
        MonadKind::Vector => {
            check_monad_laws(&VectorMonad::new(field.unwrap_or(Field::Rational)), config)
        }
    }
}
