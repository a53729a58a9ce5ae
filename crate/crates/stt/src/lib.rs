//! Set-theoretic types: a complete semantic-subtyping engine and a small
//! checked functional language built on top of it.
//!
//! Types denote sets of values. The language has integer intervals, atomic
//! tags, pairs, records, and functions, closed under union, intersection,
//! negation, and contractive recursion. Subtyping is set inclusion, decided
//! by reducing `S <: T` to emptiness of `S & not T`.
//!
//! The crate is organized as:
//!
//! - [`syntax`]: lexer, parser, printer, and well-formedness checks;
//! - [`types`]: the internal type representation (binary decision diagrams
//!   over constructor atoms) and the set-theoretic operations;
//! - [`subtype`]: the emptiness / subtyping decision procedure;
//! - [`typing`]: expression typing, overloaded-function formation checks,
//!   and the application / projection / record operators on types;
//! - [`eval`]: a strict evaluator with most-specific branch dispatch;
//! - [`witness`]: example values inhabiting non-empty types;
//! - [`oracle`]: an independent, brute-force membership checker used to
//!   cross-validate the engine on small universes of values.

pub mod syntax;
pub mod types;
pub mod subtype;
pub mod print;
pub mod cli;
pub mod eval;
pub mod oracle;
pub mod typing;
pub mod witness;
