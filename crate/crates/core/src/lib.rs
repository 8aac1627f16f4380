//! Diversity-aware re-ranking with personalized determinantal point processes.
//!
//! The crate is organized around the re-ranking pipeline:
//!
//! - [`similarity`] — item–item similarity matrices built from genre metadata
//!   or interaction co-occurrence, plus an on-the-fly genre lookup view.
//! - [`kernel`] — the DPP kernel `L` assembled from relevance scores, a
//!   similarity source, and the relevance/diversity trade-off `alpha`. Rows
//!   are materialized lazily so the serving path never builds the full matrix.
//! - [`dpp`] — greedy MAP inference over the kernel (the re-ranking core),
//!   with a direct-determinant oracle and an exhaustive solver for testing.
//! - [`personalization`] — per-user diversity propensity from the Shannon
//!   entropy of genre history, normalized into `f_u` and scaled into `alpha_u`.
//! - [`ranker`] — upstream relevance scorers: item-based collaborative
//!   filtering and a popularity fallback.
//! - [`eval`] — the offline experiment protocol: preprocessing, splits,
//!   precision/ILD metrics, and multi-model comparison reports.
//! - [`synthetic`] — seeded generators for catalogs, kernels, and interaction
//!   corpora used by the harness and benchmarks.

pub mod dpp;
pub mod error;
pub mod eval;
pub mod ids;
pub mod kernel;
pub mod lines;
pub mod matrix;
pub mod personalization;
pub mod ranker;
pub mod similarity;
pub mod synthetic;

pub use error::{Error, Result};
pub use ids::{ItemId, UserId};
