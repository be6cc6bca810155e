//! Exact decision procedures for simultaneous triangularizability of
//! finitely generated matrix semigroups over the rationals, prime fields and
//! the rational quaternions.

pub mod cli;
pub mod closure;
pub mod linalg;
pub mod scalars;
pub mod testkit;
pub mod triangularize;
