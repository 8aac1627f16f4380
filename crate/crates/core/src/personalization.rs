//! Per-user diversity propensity.
//!
//! A user's genre history defines a distribution `P(g|u)`; its Shannon
//! entropy `H(u)` (natural log throughout — the normalization offset `l` is
//! an absolute quantity, so the base must be fixed) is normalized into
//! `f_u = (H - H_min + l) / (H_max - H_min + l)` and scaled into the
//! personalized trade-off `alpha_u = f_u * alpha_0`. Cold users fall back to
//! the shared `alpha_0`. Population extrema are computed offline on a
//! schedule; events update profiles nearline against the frozen snapshot.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ids::{ItemId, UserId};
use crate::similarity::{GenreSet, ItemCatalog};

/// Per-user genre history. Multi-genre items contribute fractionally
/// (`1/|genres|` per genre) so the genre distribution stays normalized.
#[derive(Debug, Clone)]
pub struct UserProfile {
    user_id: UserId,
    genre_counts: HashMap<u16, f64>,
    interaction_count: u64,
}

impl UserProfile {
    pub fn new(user_id: UserId) -> Self {
        Self {
            user_id,
            genre_counts: HashMap::new(),
            interaction_count: 0,
        }
    }

    pub fn from_genre_counts(
        user_id: UserId,
        genre_counts: HashMap<u16, f64>,
        interaction_count: u64,
    ) -> Self {
        Self {
            user_id,
            genre_counts,
            interaction_count,
        }
    }

    pub fn user_id(&self) -> &UserId {
        &self.user_id
    }

    pub fn interaction_count(&self) -> u64 {
        self.interaction_count
    }

    pub fn genre_counts(&self) -> &HashMap<u16, f64> {
        &self.genre_counts
    }

    pub fn is_empty(&self) -> bool {
        self.interaction_count == 0
    }

    /// Folds one interaction over `genres` into the profile.
    pub fn add_interaction(&mut self, genres: &GenreSet) {
        let share = 1.0 / genres.len() as f64;
        for &g in genres.ids() {
            *self.genre_counts.entry(g).or_insert(0.0) += share;
        }
        self.interaction_count += 1;
    }
}

/// Shannon entropy of the profile's genre distribution, in nats.
///
/// `None` is the cold-start signal for an empty profile; callers route those
/// users to `alpha_0` rather than treating it as an error.
pub fn compute_entropy(profile: &UserProfile) -> Option<f64> {
    let total: f64 = profile.genre_counts.values().sum();
    if total <= 0.0 {
        return None;
    }
    let mut h = 0.0;
    for &count in profile.genre_counts.values() {
        if count > 0.0 {
            let p = count / total;
            h -= p * p.ln();
        }
    }
    // Rounding can leave a hair below zero for degenerate distributions.
    Some(h.max(0.0))
}

/// Population entropy extrema over users passing the cold-start threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyStats {
    pub h_min: f64,
    pub h_max: f64,
    pub population_size: usize,
}

/// Computes `H_min`/`H_max` over qualifying users (at least
/// `min_interactions` interactions and a non-empty profile).
pub fn compute_population_stats<'a, I>(profiles: I, min_interactions: u64) -> Result<EntropyStats>
where
    I: IntoIterator<Item = &'a UserProfile>,
{
    let mut h_min = f64::INFINITY;
    let mut h_max = f64::NEG_INFINITY;
    let mut population = 0usize;
    for profile in profiles {
        if profile.interaction_count() < min_interactions {
            continue;
        }
        let Some(h) = compute_entropy(profile) else {
            continue;
        };
        h_min = h_min.min(h);
        h_max = h_max.max(h);
        population += 1;
    }
    if population == 0 {
        return Err(Error::Config(
            "no users pass the cold-start threshold; cannot compute entropy stats".into(),
        ));
    }
    Ok(EntropyStats {
        h_min,
        h_max,
        population_size: population,
    })
}

/// Shared personalization parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PersonalizationParams {
    /// Shared relevance/diversity trade-off; `alpha_u = f_u * alpha_0`.
    pub alpha_0: f64,
    /// Normalization offset in nats; larger values flatten personalization
    /// (`l -> inf` reduces to plain DPP with `alpha_0`).
    pub l: f64,
    /// Users below this interaction count are served the cold-start `alpha_0`.
    pub cold_start_min_interactions: u64,
}

impl PersonalizationParams {
    pub fn new(alpha_0: f64, l: f64, cold_start_min_interactions: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_0) {
            return Err(Error::Argument(format!("alpha_0 {alpha_0} outside [0, 1]")));
        }
        if !l.is_finite() || l < 0.0 {
            return Err(Error::Argument(format!("normalization offset l {l} must be >= 0")));
        }
        Ok(Self {
            alpha_0,
            l,
            cold_start_min_interactions,
        })
    }
}

impl Default for PersonalizationParams {
    fn default() -> Self {
        Self {
            alpha_0: 0.6,
            l: 0.0,
            cold_start_min_interactions: 5,
        }
    }
}

/// Parameterized min-max normalization of an entropy value.
///
/// When the population is degenerate (`h_max = h_min`) and `l = 0`, the ratio
/// is 0/0; we define `f_u = 1` so personalization degrades to plain DPP,
/// matching the `l -> inf` limit. Results are clamped to `[0, 1]` because
/// nearline updates can push `H` outside the frozen snapshot's range.
pub fn normalize_f(h: f64, stats: &EntropyStats, l: f64) -> Result<f64> {
    if !l.is_finite() || l < 0.0 {
        return Err(Error::Argument(format!("normalization offset l {l} must be >= 0")));
    }
    let denom = stats.h_max - stats.h_min + l;
    if denom <= 0.0 {
        return Ok(1.0);
    }
    Ok(((h - stats.h_min + l) / denom).clamp(0.0, 1.0))
}

/// A user's resolved personalization values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaAssignment {
    /// Entropy of the profile (0 when empty).
    pub h: f64,
    /// Normalized propensity actually applied (1 for cold-start users).
    pub f: f64,
    pub alpha: f64,
    pub cold_start: bool,
}

/// Resolves `alpha_u` for one profile against frozen population stats.
pub fn assign_alpha(
    profile: &UserProfile,
    stats: &EntropyStats,
    params: &PersonalizationParams,
) -> AlphaAssignment {
    let entropy = compute_entropy(profile);
    let cold = profile.interaction_count() < params.cold_start_min_interactions
        || entropy.is_none();
    if cold {
        return AlphaAssignment {
            h: entropy.unwrap_or(0.0),
            f: 1.0,
            alpha: params.alpha_0,
            cold_start: true,
        };
    }
    let h = entropy.expect("non-empty profile");
    let f = normalize_f(h, stats, params.l).expect("params validated");
    AlphaAssignment {
        h,
        f,
        alpha: f * params.alpha_0,
        cold_start: false,
    }
}

/// The personalized trade-off `alpha_u` for one user.
pub fn alpha_for_user(
    profile: &UserProfile,
    stats: &EntropyStats,
    params: &PersonalizationParams,
) -> f64 {
    assign_alpha(profile, stats, params).alpha
}

/// Interaction event kinds carried on the nearline stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Download,
    Rating,
}

/// Which event kinds contribute to genre profiles. The source system may log
/// several kinds; deployments choose what counts as an "interaction".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventFilter {
    #[default]
    All,
    Downloads,
    Ratings,
}

impl EventFilter {
    pub fn accepts(&self, kind: EventKind) -> bool {
        match self {
            EventFilter::All => true,
            EventFilter::Downloads => kind == EventKind::Download,
            EventFilter::Ratings => kind == EventKind::Rating,
        }
    }
}

/// One record on the JSON-lines event stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionEvent {
    pub user_id: UserId,
    pub item_id: ItemId,
    pub ts: i64,
    pub event: EventKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

/// Parses one JSON-lines event record.
pub fn parse_event_line(line: &str) -> Result<InteractionEvent> {
    serde_json::from_str(line).map_err(|e| Error::Parse(format!("bad event record: {e}")))
}

/// Folds an event into the profile: fractional genre attribution and a +1
/// interaction count. Duplicate events double-count by design; deduplication
/// belongs to ingestion. Unknown items leave the profile untouched and error
/// so the caller can dead-letter the event.
pub fn apply_event(
    profile: &mut UserProfile,
    event: &InteractionEvent,
    catalog: &ItemCatalog,
) -> Result<()> {
    let Some(genres) = catalog.genres_of(&event.item_id) else {
        return Err(Error::Ingest(format!(
            "event references unknown item {}",
            event.item_id
        )));
    };
    profile.add_interaction(genres);
    Ok(())
}

/// Builds profiles for a batch of `(user, item)` interactions, skipping and
/// counting interactions whose item is missing from the catalog.
pub fn build_profiles<I>(
    interactions: I,
    catalog: &ItemCatalog,
) -> (HashMap<UserId, UserProfile>, usize)
where
    I: IntoIterator<Item = (UserId, ItemId)>,
{
    let mut profiles: HashMap<UserId, UserProfile> = HashMap::new();
    let mut dead_lettered = 0usize;
    for (user, item) in interactions {
        let Some(genres) = catalog.genres_of(&item) else {
            dead_lettered += 1;
            continue;
        };
        profiles
            .entry(user.clone())
            .or_insert_with(|| UserProfile::new(user))
            .add_interaction(genres);
    }
    (profiles, dead_lettered)
}

/// One row of the serving alpha-index snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSnapshotRecord {
    pub user_id: UserId,
    #[serde(rename = "H")]
    pub h: f64,
    pub f_u: f64,
    pub alpha_u: f64,
    pub interaction_count: u64,
}

/// Writes the alpha-index snapshot CSV (`user_id, H, f_u, alpha_u,
/// interaction_count`). `comments` are embedded as `#` lines ahead of the
/// header so artifacts carry the config that produced them.
pub fn write_alpha_snapshot(
    path: impl AsRef<Path>,
    records: &[AlphaSnapshotRecord],
    comments: &[String],
) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    for comment in comments {
        writeln!(file, "# {comment}")?;
    }
    let mut w = csv::Writer::from_writer(file);
    for record in records {
        w.serialize(record)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an alpha-index snapshot CSV, skipping `#` comment lines.
pub fn read_alpha_snapshot(path: impl AsRef<Path>) -> Result<Vec<AlphaSnapshotRecord>> {
    let path = path.as_ref();
    let file = File::open(path)
        .map_err(|e| Error::Ingest(format!("cannot open snapshot {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(file);
    let mut records = Vec::new();
    for row in reader.deserialize() {
        let record: AlphaSnapshotRecord =
            row.map_err(|e| Error::Parse(format!("bad snapshot row: {e}")))?;
        if !record.h.is_finite() || !record.alpha_u.is_finite() || !record.f_u.is_finite() {
            return Err(Error::Parse(format!(
                "non-finite snapshot values for user {}",
                record.user_id
            )));
        }
        records.push(record);
    }
    Ok(records)
}

/// Histogram of the population entropy distribution (an ingestion-level
/// analogue of the usual "how varied are our users" report).
#[derive(Debug, Clone, Serialize)]
pub struct EntropyHistogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub fractions: Vec<f64>,
}

pub fn entropy_histogram(entropies: &[f64], bins: usize) -> EntropyHistogram {
    let bins = bins.max(1);
    let hi = entropies
        .iter()
        .copied()
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let width = hi / bins as f64;
    let mut counts = vec![0u64; bins];
    for &h in entropies {
        let idx = ((h / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let total = entropies.len().max(1) as f64;
    let fractions = counts.iter().map(|&c| c as f64 / total).collect();
    let bin_edges = (0..=bins).map(|i| i as f64 * width).collect();
    EntropyHistogram {
        bin_edges,
        counts,
        fractions,
    }
}

/// Writes the histogram as `bin_lo,bin_hi,count,fraction` CSV.
pub fn write_entropy_histogram(
    path: impl AsRef<Path>,
    hist: &EntropyHistogram,
    comments: &[String],
) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    for comment in comments {
        writeln!(file, "# {comment}")?;
    }
    writeln!(file, "bin_lo,bin_hi,count,fraction")?;
    for i in 0..hist.counts.len() {
        writeln!(
            file,
            "{},{},{},{}",
            hist.bin_edges[i],
            hist.bin_edges[i + 1],
            hist.counts[i],
            hist.fractions[i]
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn profile_with(counts: &[(u16, f64)], interactions: u64) -> UserProfile {
        UserProfile::from_genre_counts(
            UserId::from("u"),
            counts.iter().copied().collect(),
            interactions,
        )
    }

    #[test]
    fn uniform_entropy_is_log_of_support() {
        let p = profile_with(&[(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)], 4);
        assert_relative_eq!(compute_entropy(&p).unwrap(), 4.0_f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn single_genre_entropy_is_zero() {
        let p = profile_with(&[(0, 7.0)], 7);
        assert_eq!(compute_entropy(&p).unwrap(), 0.0);
    }

    #[test]
    fn skewed_counts_entropy() {
        let p = profile_with(&[(0, 3.0), (1, 1.0)], 4);
        assert_relative_eq!(compute_entropy(&p).unwrap(), 0.5623, epsilon = 1e-4);
    }

    #[test]
    fn empty_profile_signals_cold_start() {
        let p = UserProfile::new(UserId::from("u"));
        assert!(compute_entropy(&p).is_none());
    }

    #[test]
    fn entropy_is_scale_invariant() {
        let a = profile_with(&[(0, 3.0), (1, 1.0)], 4);
        let b = profile_with(&[(0, 6.0), (1, 2.0)], 8);
        assert_relative_eq!(
            compute_entropy(&a).unwrap(),
            compute_entropy(&b).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn population_stats_are_extrema() {
        let profiles = vec![
            profile_with(&[(0, 5.0)], 5),
            profile_with(&[(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)], 8),
            profile_with(&[(0, 2.0), (1, 1.0)], 6),
        ];
        let stats = compute_population_stats(&profiles, 1).unwrap();
        assert_eq!(stats.h_min, 0.0);
        assert_relative_eq!(stats.h_max, 4.0_f64.ln(), epsilon = 1e-12);
        assert_eq!(stats.population_size, 3);
    }

    #[test]
    fn singleton_population_collapses() {
        let profiles = vec![profile_with(&[(0, 2.0), (1, 1.0)], 6)];
        let stats = compute_population_stats(&profiles, 1).unwrap();
        assert_eq!(stats.h_min, stats.h_max);
        assert_eq!(stats.population_size, 1);
    }

    #[test]
    fn cold_users_are_excluded_from_stats() {
        let profiles = vec![
            profile_with(&[(0, 1.0)], 1),                                // cold
            profile_with(&[(0, 1.0), (1, 1.0)], 2),                      // cold
            profile_with(&[(0, 3.0), (1, 3.0)], 6),                      // warm, ln 2
            profile_with(&[(0, 4.0), (1, 1.0)], 5),                      // warm
            profile_with(&[(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)], 1),  // cold
        ];
        let stats = compute_population_stats(&profiles, 5).unwrap();
        assert_eq!(stats.population_size, 2);
        assert_relative_eq!(stats.h_max, 2.0_f64.ln(), epsilon = 1e-12);
        let h_skew = compute_entropy(&profiles[3]).unwrap();
        assert_relative_eq!(stats.h_min, h_skew, epsilon = 1e-12);
    }

    #[test]
    fn no_qualifying_users_is_a_configuration_error() {
        let profiles = vec![profile_with(&[(0, 1.0)], 1)];
        assert!(matches!(
            compute_population_stats(&profiles, 5),
            Err(Error::Config(_))
        ));
    }

    fn stats(h_min: f64, h_max: f64) -> EntropyStats {
        EntropyStats {
            h_min,
            h_max,
            population_size: 10,
        }
    }

    #[test]
    fn normalize_lower_end_is_zero() {
        assert_eq!(normalize_f(0.0, &stats(0.0, 2.0), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn l_equal_h_min_is_max_normalization() {
        let f = normalize_f(1.0, &stats(0.5, 2.0), 0.5).unwrap();
        assert_relative_eq!(f, 0.5, epsilon = 1e-12);
        assert_relative_eq!(f, 1.0 / 2.0, epsilon = 1e-12); // H / h_max
    }

    #[test]
    fn huge_l_flattens_to_one() {
        for h in [0.0, 0.3, 1.7] {
            let f = normalize_f(h, &stats(0.0, 2.0), 1e6).unwrap();
            assert!((f - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn negative_l_is_an_argument_error() {
        assert!(matches!(
            normalize_f(1.0, &stats(0.0, 2.0), -0.1),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn degenerate_population_defaults_to_one() {
        assert_eq!(normalize_f(1.0, &stats(1.0, 1.0), 0.0).unwrap(), 1.0);
    }

    #[test]
    fn out_of_range_entropy_is_clamped() {
        assert_eq!(normalize_f(5.0, &stats(0.0, 2.0), 0.0).unwrap(), 1.0);
        assert_eq!(normalize_f(0.0, &stats(1.0, 2.0), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn alpha_is_f_times_alpha_0() {
        // f = 0.5 at H = 1 over [0, 2]: alpha = 0.5 * 0.6.
        let params = PersonalizationParams::new(0.6, 0.0, 1).unwrap();
        let p = profile_with(&[(0, 0.5), (1, 0.5)], 4); // H = ln 2
        let s = stats(0.0, 2.0 * 2.0_f64.ln());
        let alpha = alpha_for_user(&p, &s, &params);
        assert_relative_eq!(alpha, 0.3, epsilon = 1e-12);
    }

    #[test]
    fn new_user_gets_alpha_0() {
        let params = PersonalizationParams::new(0.6, 0.0, 5).unwrap();
        let p = UserProfile::new(UserId::from("new"));
        let a = assign_alpha(&p, &stats(0.0, 2.0), &params);
        assert_eq!(a.alpha, 0.6);
        assert!(a.cold_start);
    }

    #[test]
    fn max_entropy_user_gets_alpha_0_at_l_zero() {
        let params = PersonalizationParams::new(0.6, 0.0, 1).unwrap();
        let p = profile_with(&[(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)], 8);
        let s = stats(0.0, 4.0_f64.ln());
        assert_relative_eq!(alpha_for_user(&p, &s, &params), 0.6, epsilon = 1e-12);
    }

    fn two_genre_catalog() -> ItemCatalog {
        ItemCatalog::from_entries(vec![
            (ItemId::from("solo"), String::new(), vec!["A"]),
            (ItemId::from("pair"), String::new(), vec!["A", "B"]),
        ])
        .unwrap()
    }

    fn event(item: &str) -> InteractionEvent {
        InteractionEvent {
            user_id: UserId::from("u"),
            item_id: ItemId::from(item),
            ts: 0,
            event: EventKind::Download,
            value: None,
        }
    }

    #[test]
    fn first_event_seeds_the_profile() {
        let catalog = two_genre_catalog();
        let mut p = UserProfile::new(UserId::from("u"));
        apply_event(&mut p, &event("solo"), &catalog).unwrap();
        assert_eq!(p.interaction_count(), 1);
        assert_eq!(p.genre_counts().len(), 1);
        assert_eq!(p.genre_counts().values().sum::<f64>(), 1.0);
    }

    #[test]
    fn multi_genre_events_attribute_fractionally() {
        let catalog = two_genre_catalog();
        let mut p = UserProfile::new(UserId::from("u"));
        apply_event(&mut p, &event("solo"), &catalog).unwrap();
        apply_event(&mut p, &event("pair"), &catalog).unwrap();
        assert_eq!(p.interaction_count(), 2);
        let a = catalog.genres_of(&ItemId::from("solo")).unwrap().ids()[0];
        assert_relative_eq!(p.genre_counts()[&a], 1.5, epsilon = 1e-12);
        let total: f64 = p.genre_counts().values().sum();
        assert_relative_eq!(total, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn unknown_item_rejects_event_and_preserves_profile() {
        let catalog = two_genre_catalog();
        let mut p = UserProfile::new(UserId::from("u"));
        apply_event(&mut p, &event("solo"), &catalog).unwrap();
        let before = p.clone();
        let err = apply_event(&mut p, &event("ghost"), &catalog).unwrap_err();
        assert!(matches!(err, Error::Ingest(_)));
        assert_eq!(p.interaction_count(), before.interaction_count());
        assert_eq!(p.genre_counts(), before.genre_counts());
    }

    #[test]
    fn event_lines_round_trip() {
        let line = r#"{"user_id":"u9","item_id":"i3","ts":978300760,"event":"download"}"#;
        let e = parse_event_line(line).unwrap();
        assert_eq!(e.user_id.as_str(), "u9");
        assert_eq!(e.event, EventKind::Download);
        assert!(e.value.is_none());

        let rated = r#"{"user_id":"u9","item_id":"i3","ts":1,"event":"rating","value":4.5}"#;
        assert_eq!(parse_event_line(rated).unwrap().value, Some(4.5));

        assert!(parse_event_line("not json").is_err());
    }

    #[test]
    fn snapshot_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("alpha.csv");
        let records = vec![
            AlphaSnapshotRecord {
                user_id: UserId::from("u1"),
                h: 1.2,
                f_u: 0.8,
                alpha_u: 0.48,
                interaction_count: 12,
            },
            AlphaSnapshotRecord {
                user_id: UserId::from("u2"),
                h: 0.0,
                f_u: 0.0,
                alpha_u: 0.0,
                interaction_count: 9,
            },
        ];
        write_alpha_snapshot(&path, &records, &["made by a test".into()]).unwrap();
        let back = read_alpha_snapshot(&path).unwrap();
        assert_eq!(back, records);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# made by a test\n"));
        assert!(text.contains("user_id,H,f_u,alpha_u,interaction_count"));
    }

    #[test]
    fn histogram_covers_all_mass() {
        let hist = entropy_histogram(&[0.0, 0.5, 1.0, 1.0, 2.0], 4);
        assert_eq!(hist.counts.iter().sum::<u64>(), 5);
        assert_relative_eq!(hist.fractions.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert_eq!(hist.bin_edges.len(), 5);
    }

    #[test]
    fn event_filter_selects_kinds() {
        assert!(EventFilter::All.accepts(EventKind::Rating));
        assert!(EventFilter::Downloads.accepts(EventKind::Download));
        assert!(!EventFilter::Downloads.accepts(EventKind::Rating));
        assert!(!EventFilter::Ratings.accepts(EventKind::Download));
    }
}
