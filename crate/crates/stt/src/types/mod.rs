//! The internal type representation and its set-theoretic operations.

pub mod bdd;
pub mod descr;
pub mod engine;
pub mod leaves;

pub use descr::{ArrowAtom, Descr, FieldTy, ProdAtom, RecordAtom, TypeId};
pub use engine::{Config, Engine, ANY, EMPTY};
