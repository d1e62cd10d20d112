//! Lower central series toolkit for finitely presented groups.
//!
//! Given a finite presentation G = F/R, this crate computes the lower central
//! factors γ_n(G)/γ_{n+1}(G) as abelian-group invariants. The pipeline:
//! free-group words and a presentation parser ([`freegroup`]), Hall basic
//! commutators and shape-filtered bases ([`hall`]), a collection process with
//! a Magnus-embedding cross-check ([`collect`]), exact integer lattice
//! arithmetic ([`zlattice`]), the stagewise relative-basic-commutator engine
//! ([`relative`]), and brute-force finite-group oracles ([`oracle`]).

pub mod cli;
pub mod collect;
pub mod freegroup;
pub mod hall;
pub mod oracle;
pub mod relative;
pub mod zlattice;
