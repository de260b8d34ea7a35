//! Möbius algebra, holonomy transport and monodromy of Riccati foliations.
//!
//! Fiber coordinate `z = z₂/z₁`. The monodromy of a deck generator `g` is
//! `J(p) ∘ T⁻¹`, where `J` is the Jacobian action at the basepoint and `T`
//! the transport from `p` to `g(p)`.

mod group;
mod holonomy;
mod mobius;
mod tables;
mod transport;

pub use group::{
    group_classify, group_classify_labeled, GroupClass, GroupEvidence, MobiusGroupReport, Witness, DEFAULT_WORD_BOUND,
    MAX_WORD_BOUND,
};
pub use holonomy::{
    compare, constant_coefficient_oracle, generator_monodromy, generator_monodromy_with, standard_conjugators,
    match_tolerance, surface_monodromy, HolonomyResult, MatchKind, MatchReport, ERROR_MARGIN, MATCH_TOL,
};
pub use mobius::{conjugator, expm_tracefree, CMat, Mobius, MobiusClass, MAX_FINITE_ORDER};
pub use tables::{table_entry, table_instances, verify_instances, verify_tables, TableEntry, TableReport, TableRow};
pub use transport::{holonomy_transport, Transport, DEFAULT_TOL, MAX_HALVINGS};

pub fn mobius_compose(f: &Mobius, g: &Mobius) -> Mobius {
    f.compose(g)
}

pub fn mobius_classify(f: &Mobius) -> MobiusClass {
    f.classify()
}

#[cfg(test)]
mod tests;
