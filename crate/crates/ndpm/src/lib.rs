//! Non-deterministic pointer machines and their operator-algebra counterpart.
//!
//! The crate has three layers:
//!
//! * binary words over `{0,1,⋆}` with circular indexing, their slice-graph
//!   and 6x6 block-matrix forms ([`words`], [`integer`]);
//! * the machine model: p read-only pointers on a circular tape, a
//!   non-deterministic transition relation, universal acceptance
//!   ([`machine`], [`transform`], [`stconn`]);
//! * the encoding of a machine as an observation, a matrix over the
//!   nonnegative group algebra of permutations of `{0,..,p}`, whose product
//!   with the word's matrix decides acceptance through nilpotency
//!   ([`perm`], [`algebra`], [`observation`], [`nilpotency`]).
//!
//! [`suite`] bundles the cross-validation batteries the `suite` subcommand
//! and the acceptance tests run.

pub mod algebra;
pub mod cli;
pub mod format;
pub mod integer;
pub mod machine;
pub mod nilpotency;
pub mod observation;
pub mod perm;
pub mod stconn;
pub mod suite;
pub mod transform;
pub mod words;

pub use machine::{Configuration, Machine, PseudoConfig, RunResult, Verdict};
pub use words::{BinaryWord, Symbol};
