//! Boundaried kernelization toolkit.
//!
//! A *boundaried graph* is a graph together with a set of boundary vertices at
//! which an unknown partner graph may later be glued. This crate implements
//! reduction pipelines that shrink annotated boundaried graphs while changing
//! the optimum of every possible gluing by a fixed, reported offset, for four
//! vertex-deletion problems:
//!
//! * multiway cut with at most `s` undeletable terminals ([`smwc`]),
//! * multiway cut with deletable terminals ([`dtmwc`]),
//! * odd cycle transversal ([`oct`]),
//! * vertex cover parameterized by an odd cycle transversal ([`vc_oct`]).
//!
//! The pipelines are backed by vertex min-cut machinery ([`flow`]), randomized
//! linear representations of gammoids with representative-family computation
//! ([`matroid`]), and cut covers ([`cutcover`]). Everything is checkable: the
//! [`oracle`] module solves small instances exactly and decides gluing
//! equivalence by enumerating or sampling partner graphs.
//!
//! Each major capability has a runnable demo under `examples/`:
//!
//! ```text
//! cargo run --example glue_and_bypass
//! cargo run --example min_cuts_and_linkage
//! cargo run --example gammoid_representative_sets
//! cargo run --example cut_covers
//! cargo run --example kernelize_smwc
//! cargo run --example kernelize_dtmwc
//! cargo run --example kernelize_oct
//! cargo run --example kernelize_vc_oct
//! cargo run --example verify_gluing
//! ```
//!
//! The `bkernel` binary exposes the same pipelines over `bkg` files with the
//! subcommands `kernelize`, `verify-equivalence` and `solve-exact`.

pub mod cutcover;
pub mod dtmwc;
pub mod error;
pub mod flow;
pub mod graph;
pub mod io;
pub mod mask;
pub mod matroid;
pub mod oct;
pub mod oracle;
pub mod report;
pub mod smwc;
pub mod vc_oct;

pub use error::{Error, Result};
pub use graph::{Abg, Annotation, Graph, VertexId};
