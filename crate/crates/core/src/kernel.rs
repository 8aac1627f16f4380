//! The DPP kernel `L`: diagonal `q_i^2`, off-diagonal `alpha * q_i * q_j * S_ij`.
//!
//! Serving builds kernels per request with personalized `alpha` and real-time
//! scores, so rows are materialized lazily through [`KernelSpec::kernel_row`];
//! the dense form exists for tests, oracles, and small offline runs. With `S`
//! PSD and unit-diagonal and `alpha` in `[0, 1]`, `L = D (alpha S + (1-alpha) I) D`
//! with `D = diag(q)`, so `L` is PSD.

use crate::error::{Error, Result};
use crate::ids::ItemId;
use crate::matrix::SquareMat;
use crate::similarity::{GenreSet, ItemCatalog, SimilarityMatrix};

/// Default candidate cap for dense kernel materialization.
pub const DENSE_KERNEL_CAP: usize = 2048;

/// Floor applied to non-positive relevance scores. The kernel squares `q`, so
/// a zero diagonal would silently make an item unselectable.
pub const MIN_RELEVANCE: f64 = 1e-6;

/// Per-candidate relevance scores, clamped strictly positive.
#[derive(Debug, Clone)]
pub struct RelevanceScores {
    ids: Vec<ItemId>,
    q: Vec<f64>,
}

impl RelevanceScores {
    /// Pairs candidate ids with raw scores. Non-finite scores are rejected;
    /// scores at or below zero are clamped to [`MIN_RELEVANCE`] with a warning.
    pub fn new(ids: Vec<ItemId>, raw: Vec<f64>) -> Result<Self> {
        if ids.len() != raw.len() {
            return Err(Error::Argument(format!(
                "{} ids but {} scores",
                ids.len(),
                raw.len()
            )));
        }
        let mut clamped = 0usize;
        let mut q = Vec::with_capacity(raw.len());
        for (id, &v) in ids.iter().zip(&raw) {
            if !v.is_finite() {
                return Err(Error::Numeric(format!("non-finite relevance score for item {id}")));
            }
            if v <= 0.0 {
                clamped += 1;
                q.push(MIN_RELEVANCE);
            } else {
                q.push(v);
            }
        }
        if clamped > 0 {
            tracing::warn!(clamped, "clamped non-positive relevance scores to {MIN_RELEVANCE}");
        }
        Ok(Self { ids, q })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[ItemId] {
        &self.ids
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }
}

/// Pairwise similarity between candidate positions of one request.
///
/// Implementations must be symmetric with unit self-similarity and values in
/// `[0, 1]`; the greedy loop validates materialized entries for finiteness.
pub trait CandidateSimilarity: Sync {
    fn similarity(&self, i: usize, j: usize) -> f64;
}

/// Candidate similarity backed by a dense [`SimilarityMatrix`]. Candidates
/// missing from the matrix index get similarity 0 everywhere (maximally
/// diverse), keeping new items rankable.
pub struct MatrixSimilarity<'a> {
    matrix: &'a SimilarityMatrix,
    rows: Vec<Option<usize>>,
}

impl<'a> MatrixSimilarity<'a> {
    pub fn new(matrix: &'a SimilarityMatrix, candidates: &[ItemId]) -> Self {
        let rows: Vec<Option<usize>> = candidates.iter().map(|id| matrix.position(id)).collect();
        warn_unknown(candidates, &rows);
        Self { matrix, rows }
    }
}

impl CandidateSimilarity for MatrixSimilarity<'_> {
    #[inline]
    fn similarity(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 1.0;
        }
        match (self.rows[i], self.rows[j]) {
            (Some(a), Some(b)) => self.matrix.get(a, b),
            _ => 0.0,
        }
    }
}

/// Candidate similarity computed on the fly from catalog genre sets
/// (the in-memory index used by the serving path).
pub struct GenreSimilarity<'a> {
    genres: Vec<Option<&'a GenreSet>>,
}

impl<'a> GenreSimilarity<'a> {
    pub fn new(catalog: &'a ItemCatalog, candidates: &[ItemId]) -> Self {
        let genres: Vec<Option<&GenreSet>> =
            candidates.iter().map(|id| catalog.genres_of(id)).collect();
        warn_unknown(candidates, &genres);
        Self { genres }
    }
}

impl CandidateSimilarity for GenreSimilarity<'_> {
    #[inline]
    fn similarity(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 1.0;
        }
        match (self.genres[i], self.genres[j]) {
            (Some(a), Some(b)) => a.jaccard(b),
            _ => 0.0,
        }
    }
}

fn warn_unknown<T>(candidates: &[ItemId], resolved: &[Option<T>]) {
    let unknown = resolved.iter().filter(|r| r.is_none()).count();
    if unknown > 0 {
        let first = candidates
            .iter()
            .zip(resolved)
            .find(|(_, r)| r.is_none())
            .map(|(id, _)| id.as_str())
            .unwrap_or_default();
        tracing::warn!(
            unknown,
            first,
            "candidates missing from similarity index; treating their similarity as 0"
        );
    }
}

/// One re-ranking instance: relevance scores, a similarity source, and the
/// trade-off `alpha`. Immutable per request; row materialization is pure.
pub struct KernelSpec<'a, S: CandidateSimilarity> {
    scores: &'a RelevanceScores,
    alpha: f64,
    sim: S,
}

impl<'a, S: CandidateSimilarity> KernelSpec<'a, S> {
    /// `alpha` outside `[0, 1]` is rejected: it would void the PSD guarantee.
    pub fn new(scores: &'a RelevanceScores, alpha: f64, sim: S) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Argument(format!("alpha {alpha} outside [0, 1]")));
        }
        Ok(Self { scores, alpha, sim })
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn scores(&self) -> &RelevanceScores {
        &self.scores
    }

    pub fn q(&self) -> &[f64] {
        self.scores.q()
    }

    /// Kernel diagonal `q_i^2`.
    pub fn diagonal(&self) -> Vec<f64> {
        self.scores.q().iter().map(|q| q * q).collect()
    }

    /// Materializes kernel row `j` into `out` without building the full `L`:
    /// `out[i] = alpha * q_i * q_j * S_ij` for `i != j` and `q_j^2` at `i = j`.
    pub fn fill_kernel_row(&self, j: usize, out: &mut Vec<f64>) {
        let q = self.scores.q();
        assert!(j < q.len(), "kernel row {j} out of range for {} candidates", q.len());
        out.clear();
        out.reserve(q.len());
        let qj = q[j];
        for (i, &qi) in q.iter().enumerate() {
            if i == j {
                out.push(qj * qj);
            } else {
                out.push(self.alpha * qi * qj * self.sim.similarity(i, j));
            }
        }
    }

    /// Row `j` of the kernel as a fresh vector.
    pub fn kernel_row(&self, j: usize) -> Vec<f64> {
        let mut out = Vec::new();
        self.fill_kernel_row(j, &mut out);
        out
    }

    /// Dense `L` for tests, oracles, and small offline runs. Each row is
    /// produced by the same code path as [`KernelSpec::kernel_row`], so dense
    /// and lazy entries agree bit-for-bit.
    pub fn build_dense_kernel(&self) -> Result<SquareMat> {
        self.build_dense_kernel_with_cap(DENSE_KERNEL_CAP)
    }

    pub fn build_dense_kernel_with_cap(&self, cap: usize) -> Result<SquareMat> {
        let n = self.len();
        if n > cap {
            return Err(Error::Size(format!(
                "{n} candidates exceed the dense kernel cap of {cap}; use the lazy kernel_row path"
            )));
        }
        let mut m = SquareMat::zeros(n);
        let mut row = Vec::new();
        for j in 0..n {
            self.fill_kernel_row(j, &mut row);
            for (i, &v) in row.iter().enumerate() {
                // Row j holds L_ji; L is symmetric so this fills column j too.
                m.set(j, i, v);
            }
        }
        Ok(m)
    }
}
