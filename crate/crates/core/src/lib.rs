//! Cops and robber on graphs embedded in surfaces.
//!
//! * [`graph`]: simple graphs, graph6, generators, isomorphism.
//! * [`solver`]: retrograde analysis of the k-cop game, cop numbers,
//!   dismantling, strategy extraction.
//! * [`game`]: play-outs, strategy transfer along covers, exhaustive
//!   verification of cop strategies.
//! * [`embedding`]: signed rotation systems, faces, Euler genus,
//!   orientability, minimum genus search, crosscaps.
//! * [`covering`]: weak covers and orientable double covers.
//! * [`bounds`]: surface cop-number bounds.
//! * [`harness`]: corpus pipelines and reports.

pub mod bounds;
pub mod covering;
pub mod embedding;
pub mod error;
pub mod game;
pub mod graph;
pub mod harness;
pub mod solver;

pub use covering::{check_weak_cover, double_cover, CoveringMap};
pub use embedding::{EmbeddingScheme, GenusMode};
pub use error::{Error, Result};
pub use graph::{Family, Graph, VertexSet};
pub use solver::{cop_number, solve_k_copwin, CopStrategy, SolveResult};
