//! Exact mixed and Buchsbaum-Rim multiplicities of monomial data.
//!
//! Everything is computed by counting monomials: lengths of graded pieces of
//! `M = G / B` with `G = k[x_1..x_d, T_1..T_p]` and `B` a monomial ideal.

pub mod corpus;
pub mod error;
pub mod graded;
pub mod harness;
pub mod module;
pub mod monomial;
pub mod multiplicity;
pub mod oracle;
pub mod sequences;

pub use error::{CoreError, Result};
pub use graded::{fill_table, rees_piece, Engine, FunctionKind, LengthTable, Setup, Source};
pub use module::{length_between, BiMonomial, Length, Mode, MonomialModule, RingContext, Slice};
pub use monomial::{Monomial, MonomialIdeal};
