//! Greedy MAP inference over the DPP kernel.
//!
//! [`fast_greedy_map`] is the serving-path algorithm: each round it selects
//! the candidate with the largest marginal log-determinant gain, maintained
//! incrementally through per-candidate residual norms and orthogonalization
//! coefficients, costing `O(k^2 M)` overall and touching only the k selected
//! kernel rows plus the diagonal. [`naive_greedy_map`] re-derives every gain
//! by direct determinant evaluation and [`exhaustive_map`] enumerates subsets
//! outright; both exist as independent oracles for the fast path.

use crate::error::{Error, Result};
use crate::kernel::{CandidateSimilarity, KernelSpec};
use crate::matrix::{cholesky_log_det, SquareMat};

/// Residual-norm threshold below which a candidate is numerically exhausted:
/// adding it cannot increase the determinant beyond rounding noise. Guards
/// rank-deficient kernels (duplicate items, `alpha = 1`) from log-of-zero.
pub const EXHAUSTION_EPS: f64 = 1e-10;

/// Result of a greedy MAP run.
///
/// `items` are positions into the candidate list, in selection order; callers
/// map them back to item ids. When the kernel is numerically exhausted before
/// `k` picks, remaining slots are filled by descending relevance and counted
/// in `fallback_fill`; `gains` covers only the true greedy steps.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub items: Vec<usize>,
    pub gains: Vec<f64>,
    pub fallback_fill: usize,
}

impl Selection {
    /// Number of genuine greedy selections (excludes fallback fill).
    pub fn greedy_len(&self) -> usize {
        self.items.len() - self.fallback_fill
    }
}

/// Greedy MAP inference with incremental gain updates.
///
/// Each round selects `argmax_i d_i^2`, the marginal determinant ratio
/// `det(L_{Y+i}) / det(L_Y)`. After selecting `j`, every remaining candidate
/// updates `e_i = (L_ji - <c_j, c_i>) / d_j`, appends `e_i` to its coefficient
/// row, and shrinks `d_i^2` by `e_i^2`. Ties break toward higher relevance,
/// then lower candidate index.
pub fn fast_greedy_map<S: CandidateSimilarity>(
    spec: &KernelSpec<'_, S>,
    k: usize,
) -> Result<Selection> {
    let m = spec.len();
    if k < 1 {
        return Err(Error::Argument("k must be at least 1".into()));
    }
    if m == 0 {
        return Err(Error::Argument("no candidates to re-rank".into()));
    }

    let q = spec.q();
    let target = k.min(m);
    let mut d2 = spec.diagonal();
    // Flat orthogonalization coefficients, one row of up to `target` entries
    // per candidate.
    let mut coef = vec![0.0f64; m * target];
    let mut picked = vec![false; m];
    let mut items = Vec::with_capacity(target);
    let mut gains = Vec::with_capacity(target);
    let mut row = Vec::with_capacity(m);

    for step in 0..target {
        let Some(j) = argmax_remaining(&d2, q, &picked) else {
            break;
        };
        if d2[j] < EXHAUSTION_EPS {
            break;
        }
        picked[j] = true;
        items.push(j);
        gains.push(d2[j].ln());

        if step + 1 == target {
            break;
        }

        spec.fill_kernel_row(j, &mut row);
        let dj = d2[j].sqrt();
        let cj = coef[j * target..j * target + step].to_vec();
        for i in 0..m {
            if picked[i] {
                continue;
            }
            let lji = row[i];
            if !lji.is_finite() {
                return Err(Error::Numeric(format!(
                    "non-finite kernel entry for item pair ({}, {})",
                    spec.scores().ids()[j],
                    spec.scores().ids()[i]
                )));
            }
            let ci = &mut coef[i * target..i * target + step + 1];
            let mut dot = 0.0;
            for (a, b) in cj.iter().zip(ci.iter()) {
                dot += a * b;
            }
            let e = (lji - dot) / dj;
            ci[step] = e;
            d2[i] -= e * e;
        }
    }

    fill_by_relevance(&mut items, q, &picked, target);
    let fallback_fill = items.len() - gains.len();
    Ok(Selection {
        items,
        gains,
        fallback_fill,
    })
}

/// Greedy MAP by direct determinant recomputation (oracle for the fast path).
///
/// Each round evaluates `log det(L_{Y+i}) - log det(L_Y)` for every remaining
/// candidate with a fresh Cholesky factorization. Same tie-breaking and
/// exhaustion policy as [`fast_greedy_map`]. Intended for oracle-scale inputs;
/// cost grows as `O(M k^4)`.
pub fn naive_greedy_map(l: &SquareMat, k: usize) -> Result<Selection> {
    let m = l.n();
    if k < 1 {
        return Err(Error::Argument("k must be at least 1".into()));
    }
    if m == 0 {
        return Err(Error::Argument("no candidates to re-rank".into()));
    }
    for i in 0..m {
        for j in 0..m {
            if !l.at(i, j).is_finite() {
                return Err(Error::Numeric(format!(
                    "non-finite kernel entry at ({i}, {j})"
                )));
            }
        }
    }
    // Relevance for tie-breaking is recoverable from the diagonal: q_i^2.
    let q: Vec<f64> = (0..m).map(|i| l.at(i, i).max(0.0).sqrt()).collect();
    let log_eps = EXHAUSTION_EPS.ln();

    let target = k.min(m);
    let mut picked = vec![false; m];
    let mut selected: Vec<usize> = Vec::with_capacity(target);
    let mut items = Vec::with_capacity(target);
    let mut gains = Vec::with_capacity(target);
    let mut log_det_y = 0.0;

    for _ in 0..target {
        let mut best: Option<(f64, f64, usize, f64)> = None; // gain, q, idx, logdet
        for i in 0..m {
            if picked[i] {
                continue;
            }
            selected.push(i);
            let sub = l.principal_submatrix(&selected);
            selected.pop();
            let log_det_new = cholesky_log_det(&sub)?;
            let gain = log_det_new - log_det_y;
            let better = match best {
                None => true,
                Some((bg, bq, _, _)) => gain > bg || (gain == bg && q[i] > bq),
            };
            if better {
                best = Some((gain, q[i], i, log_det_new));
            }
        }
        let Some((gain, _, j, log_det_new)) = best else {
            break;
        };
        if gain < log_eps {
            break;
        }
        picked[j] = true;
        selected.push(j);
        items.push(j);
        gains.push(gain);
        log_det_y = log_det_new;
    }

    fill_by_relevance(&mut items, &q, &picked, target);
    let fallback_fill = items.len() - gains.len();
    Ok(Selection {
        items,
        gains,
        fallback_fill,
    })
}

/// Exact MAP by subset enumeration: the size-`k` subset maximizing
/// `det(L_Y)`, ties resolved toward the lexicographically smallest index set.
/// Desk-scale only.
pub fn exhaustive_map(l: &SquareMat, k: usize) -> Result<(Vec<usize>, f64)> {
    let m = l.n();
    if m > 15 || k > 5 {
        return Err(Error::Argument(format!(
            "exhaustive search is capped at 15 candidates and k = 5 (got M = {m}, k = {k})"
        )));
    }
    if k < 1 || k > m {
        return Err(Error::Argument(format!(
            "k = {k} outside [1, {m}] for exhaustive search"
        )));
    }

    let mut best_set: Option<Vec<usize>> = None;
    let mut best_det = f64::NEG_INFINITY;
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        let det = cholesky_log_det(&l.principal_submatrix(&combo))?.exp();
        // Lexicographic enumeration order makes "first strictly greater win"
        // resolve ties toward the smallest index set.
        if best_set.is_none() || det > best_det {
            best_det = det;
            best_set = Some(combo.clone());
        }
        if !next_combination(&mut combo, m) {
            break;
        }
    }
    Ok((best_set.expect("at least one combination"), best_det))
}

/// Advances `combo` to the next k-combination of `0..m` in lexicographic
/// order; returns false when exhausted.
fn next_combination(combo: &mut [usize], m: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] != i + m - k {
            combo[i] += 1;
            for j in (i + 1)..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn argmax_remaining(d2: &[f64], q: &[f64], picked: &[bool]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in 0..d2.len() {
        if picked[i] {
            continue;
        }
        match best {
            None => best = Some(i),
            Some(b) => {
                if d2[i] > d2[b] || (d2[i] == d2[b] && q[i] > q[b]) {
                    best = Some(i);
                }
            }
        }
    }
    best
}

/// Fills remaining slots by descending relevance (ties to the lower index) so
/// the list-length contract holds even on numerically exhausted kernels.
fn fill_by_relevance(items: &mut Vec<usize>, q: &[f64], picked: &[bool], target: usize) {
    if items.len() >= target {
        return;
    }
    let mut rest: Vec<usize> = (0..q.len()).filter(|&i| !picked[i]).collect();
    rest.sort_by(|&a, &b| q[b].partial_cmp(&q[a]).unwrap().then(a.cmp(&b)));
    items.extend(rest.into_iter().take(target - items.len()));
}

/// Sort-by-relevance order with the greedy tie-breaking (the `alpha = 0`
/// reduction of the DPP objective).
pub fn relevance_order(q: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..q.len()).collect();
    idx.sort_by(|&a, &b| q[b].partial_cmp(&q[a]).unwrap().then(a.cmp(&b)));
    idx.truncate(k.min(q.len()));
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ids::ItemId;
    use crate::kernel::{MatrixSimilarity, RelevanceScores};
    use crate::similarity::SimilarityMatrix;
    use approx::assert_relative_eq;

    fn ids(n: usize) -> Vec<ItemId> {
        (0..n).map(|i| ItemId::from(format!("i{i}"))).collect()
    }

    fn spec_fixture(
        q: Vec<f64>,
        sim: Vec<f64>,
        alpha: f64,
    ) -> (RelevanceScores, SimilarityMatrix, f64) {
        let n = q.len();
        let scores = RelevanceScores::new(ids(n), q).unwrap();
        let s =
            SimilarityMatrix::from_values(ids(n), SquareMat::from_rows(n, sim).unwrap()).unwrap();
        (scores, s, alpha)
    }

    /// The worked 3-item instance: items 1 and 2 share a genre, item 3 is
    /// independent; greedy must pick {1, 3} (0-based {0, 2}).
    fn three_item() -> (RelevanceScores, SimilarityMatrix, f64) {
        spec_fixture(
            vec![0.9, 0.8, 0.7],
            vec![1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            0.9,
        )
    }

    #[test]
    fn k_one_picks_max_relevance() {
        let (scores, s, alpha) = three_item();
        let spec = KernelSpec::new(&scores, alpha, MatrixSimilarity::new(&s, scores.ids())).unwrap();
        let sel = fast_greedy_map(&spec, 1).unwrap();
        assert_eq!(sel.items, vec![0]);
        assert_eq!(sel.fallback_fill, 0);
    }

    #[test]
    fn k_one_tie_breaks_to_lower_index() {
        let (scores, s, alpha) = spec_fixture(
            vec![0.5, 0.9, 0.9],
            vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            0.5,
        );
        let spec = KernelSpec::new(&scores, alpha, MatrixSimilarity::new(&s, scores.ids())).unwrap();
        let sel = fast_greedy_map(&spec, 1).unwrap();
        assert_eq!(sel.items, vec![1]);
    }

    #[test]
    fn alpha_zero_reduces_to_relevance_sort() {
        let (scores, s, _) = spec_fixture(
            vec![0.3, 0.9, 0.5, 0.7],
            vec![
                1.0, 0.5, 0.5, 0.5, //
                0.5, 1.0, 0.5, 0.5, //
                0.5, 0.5, 1.0, 0.5, //
                0.5, 0.5, 0.5, 1.0,
            ],
            0.0,
        );
        let spec = KernelSpec::new(&scores, 0.0, MatrixSimilarity::new(&s, scores.ids())).unwrap();
        let sel = fast_greedy_map(&spec, 4).unwrap();
        assert_eq!(sel.items, relevance_order(scores.q(), 4));
        assert_eq!(sel.items, vec![1, 3, 2, 0]);
    }

    #[test]
    fn three_item_worked_example() {
        let (scores, s, alpha) = three_item();
        let spec = KernelSpec::new(&scores, alpha, MatrixSimilarity::new(&s, scores.ids())).unwrap();
        let sel = fast_greedy_map(&spec, 2).unwrap();
        assert_eq!(sel.items, vec![0, 2]);
        assert_relative_eq!(sel.gains[0], 0.81_f64.ln(), epsilon = 1e-12);
        // Second gain is the determinant ratio of the independent item.
        assert_relative_eq!(sel.gains[1], 0.49_f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn naive_matches_on_worked_example() {
        let (scores, s, alpha) = three_item();
        let spec = KernelSpec::new(&scores, alpha, MatrixSimilarity::new(&s, scores.ids())).unwrap();
        let l = spec.build_dense_kernel().unwrap();
        let sel = naive_greedy_map(&l, 2).unwrap();
        assert_eq!(sel.items, vec![0, 2]);
    }

    #[test]
    fn naive_diagonal_orders_by_diagonal() {
        let l = SquareMat::from_rows(3, vec![4.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 9.0]).unwrap();
        let sel = naive_greedy_map(&l, 2).unwrap();
        assert_eq!(sel.items, vec![2, 0]);
    }

    #[test]
    fn naive_k_equals_n_returns_full_permutation() {
        let l = SquareMat::from_rows(3, vec![4.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 9.0]).unwrap();
        let sel = naive_greedy_map(&l, 3).unwrap();
        let mut sorted = sel.items.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
        assert_eq!(sel.items.len(), 3);
    }

    #[test]
    fn exhaustive_three_item_worked_example() {
        let (scores, s, alpha) = three_item();
        let spec = KernelSpec::new(&scores, alpha, MatrixSimilarity::new(&s, scores.ids())).unwrap();
        let l = spec.build_dense_kernel().unwrap();
        let (set, det) = exhaustive_map(&l, 2).unwrap();
        assert_eq!(set, vec![0, 2]);
        assert_relative_eq!(det, 0.3969, epsilon = 1e-12);
    }

    #[test]
    fn exhaustive_tie_breaks_lexicographically() {
        let mut values = vec![0.0; 16];
        for i in 0..4 {
            values[i * 4 + i] = 1.0;
        }
        let l = SquareMat::from_rows(4, values).unwrap();
        let (set, det) = exhaustive_map(&l, 2).unwrap();
        assert_eq!(set, vec![0, 1]);
        assert_relative_eq!(det, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn exhaustive_whole_set_is_det_l() {
        let (scores, s, alpha) = three_item();
        let spec = KernelSpec::new(&scores, alpha, MatrixSimilarity::new(&s, scores.ids())).unwrap();
        let l = spec.build_dense_kernel().unwrap();
        let (set, det) = exhaustive_map(&l, 3).unwrap();
        assert_eq!(set, vec![0, 1, 2]);
        let direct = cholesky_log_det(&l).unwrap().exp();
        assert_relative_eq!(det, direct, epsilon = 1e-12);
    }

    #[test]
    fn exhaustive_rejects_oversized_instances() {
        let l = SquareMat::zeros(16);
        assert!(matches!(exhaustive_map(&l, 2), Err(Error::Argument(_))));
        let l = SquareMat::zeros(10);
        assert!(matches!(exhaustive_map(&l, 6), Err(Error::Argument(_))));
    }

    #[test]
    fn rank_deficient_kernel_falls_back_to_relevance() {
        // alpha = 1 with identical genre sets: rank-one kernel, only one
        // genuine greedy pick is possible.
        let (scores, s, _) = spec_fixture(
            vec![1.0, 1.0, 0.9],
            vec![1.0; 9],
            1.0,
        );
        let spec = KernelSpec::new(&scores, 1.0, MatrixSimilarity::new(&s, scores.ids())).unwrap();
        let sel = fast_greedy_map(&spec, 3).unwrap();
        assert_eq!(sel.items, vec![0, 1, 2]);
        assert_eq!(sel.fallback_fill, 2);
        assert_eq!(sel.gains.len(), 1);
        assert_relative_eq!(sel.gains[0], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn invalid_arguments_are_rejected() {
        let (scores, s, alpha) = three_item();
        let spec = KernelSpec::new(&scores, alpha, MatrixSimilarity::new(&s, scores.ids())).unwrap();
        assert!(matches!(fast_greedy_map(&spec, 0), Err(Error::Argument(_))));
        assert!(matches!(naive_greedy_map(&SquareMat::zeros(0), 1), Err(Error::Argument(_))));
    }

    #[test]
    fn k_larger_than_candidates_returns_everything() {
        let (scores, s, alpha) = three_item();
        let spec = KernelSpec::new(&scores, alpha, MatrixSimilarity::new(&s, scores.ids())).unwrap();
        let sel = fast_greedy_map(&spec, 10).unwrap();
        assert_eq!(sel.items.len(), 3);
        let mut sorted = sel.items.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn non_psd_kernel_is_a_numeric_error_in_naive() {
        let l = SquareMat::from_rows(2, vec![1.0, 2.0, 2.0, 1.0]).unwrap();
        assert!(matches!(naive_greedy_map(&l, 2), Err(Error::Numeric(_))));
    }
}
