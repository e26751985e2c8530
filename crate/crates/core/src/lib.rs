//! Exact verification engine for signified and signed graph homomorphisms.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf`]: arithmetic in GF(p) and GF(p²) with quadratic-character queries.
//! * [`sgraph`]: the signified graph model, resigning, equivalence and anti-twins.
//! * [`targets`]: constructors for the target families (AT, ZS_k, SP_q, Tr(SP_q), K₄*).
//! * [`props`]: successor properties, automorphism certificates and orbit computation.
//! * [`homsearch`]: backtracking homomorphism search and exact chromatic numbers.
//! * [`witnesses`]: lower-bound witness graphs, isomorphism and the 4-regular catalog.
//! * [`campaign`]: planar_code ingest and exhaustive signature-class campaigns.
//! * [`acceptance`]: the end-to-end certificate checks, shared by tests and the CLI.
//!
//! Data-parallel loops go through [`Exec`], which runs on rayon when the
//! `parallel` feature is enabled and falls back to plain iterators otherwise.

pub mod acceptance;
pub mod bits;
pub mod campaign;
mod error;
mod exec;
pub mod gf;
pub mod homsearch;
pub mod oracle;
pub mod props;
pub mod sgraph;
pub mod targets;
pub mod witnesses;

pub use error::{Error, Result};
pub use exec::{init_pool, Exec};
pub use sgraph::{Mapping, Sign, SignifiedGraph};
