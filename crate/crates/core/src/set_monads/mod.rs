//! Monads whose `T(S)` is finite for finite `S`.

mod alternating;
mod caba;
mod group;
mod powerset;

pub use alternating::{Alternating, Antichain};
pub use caba::{Caba, CabaElem};
pub use group::{FiniteGroup, GroupElem, GroupMonad, PermutationGenerator};
pub use powerset::Powerset;

/// Indices of the set bits of `mask`, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(i)
    })
}
