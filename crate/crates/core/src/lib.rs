//! Finite quantum-logic lattices, state-property systems, Hilbert-space
//! models and axiom checkers.

pub mod closure;
pub mod lattice;
pub mod report;
pub mod sps;
pub mod axioms;
pub mod hilbert;
pub mod demo;
pub mod product;
pub mod io;
pub mod cli;
