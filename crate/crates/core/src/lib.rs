//! Succinct automata with side-effects.
//!
//! A deterministic Moore machine is lifted into a finite algebra for a monad
//! (powerset, alternating formulas, complete atomic boolean algebras, group
//! actions, vector spaces), quotiented by language, and re-expressed over a
//! minimal set of generators. The result is an equivalent automaton whose
//! transitions land in configurations of the monad, such as an NFA, an AFA
//! or a weighted automaton, and which is never larger than the minimal
//! deterministic machine.

pub mod cli;
pub mod engine;
pub mod error;
pub mod field;
pub mod monad;
pub mod moore;
pub mod oracle;
pub mod set_monads;

pub use error::{Error, Result};
pub use monad::{AlgebraHandle, Carrier, Monad, Strategy};
pub use moore::{Alphabet, Equivalence, MooreMachine, Word};
