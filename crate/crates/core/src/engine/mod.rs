//! Lifted automata, observable quotients, generator reduction and the
//! minimization pipelines built from them.

mod generators;
mod pipeline;
mod succinct;
mod tautomaton;

pub use generators::{
    express, is_redundant, isolated_report, reduce_generators, GeneratorSet, IsolatedReport,
};
pub use pipeline::{
    t_minimize, weighted_equiv, weighted_from_moore, weighted_t_minimize, Minimization, DEFAULT_CAP,
};
pub use succinct::{
    free_representation, free_representation_canonical, SuccinctAutomaton, WeightedAutomaton,
};
pub use tautomaton::{lift_machine, observable_quotient, TAutomaton};
