//! Item–item similarity construction.
//!
//! Two constructions are provided: genre overlap (Jaccard over genre label
//! sets, which collapses to a same-genre indicator for single-genre items)
//! and interaction co-occurrence (cosine over binary user-incidence vectors).
//! Both produce matrices with unit diagonal and entries in `[0, 1]`, and both
//! are positive semi-definite, which the kernel layer relies on.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::ids::{ItemId, UserId};
use crate::lines::{data_line, LineStats};
use crate::matrix::SquareMat;

/// A set of interned genre ids, kept sorted for merge-based set operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GenreSet(Vec<u16>);

impl GenreSet {
    fn from_unsorted(mut ids: Vec<u16>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ids(&self) -> &[u16] {
        &self.0
    }

    pub fn intersection_size(&self, other: &GenreSet) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// Jaccard overlap `|A ∩ B| / |A ∪ B|`; 1.0 for two identical sets.
    pub fn jaccard(&self, other: &GenreSet) -> f64 {
        if self.is_empty() && other.is_empty() {
            return 0.0;
        }
        let inter = self.intersection_size(other);
        let union = self.0.len() + other.0.len() - inter;
        inter as f64 / union as f64
    }
}

#[derive(Debug, Clone)]
pub struct CatalogItem {
    pub id: ItemId,
    pub title: String,
    genres: GenreSet,
}

impl CatalogItem {
    pub fn genres(&self) -> &GenreSet {
        &self.genres
    }
}

/// Item metadata: ids, titles, and interned genre sets.
///
/// Immutable after construction; shared freely across request handlers.
#[derive(Debug, Clone)]
pub struct ItemCatalog {
    items: Vec<CatalogItem>,
    genre_names: Vec<String>,
    id_index: HashMap<ItemId, usize>,
}

impl ItemCatalog {
    /// Builds a catalog from `(id, title, genre labels)` entries.
    ///
    /// Every item must carry at least one genre label and ids must be unique.
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ItemId, String, Vec<S>)>,
        S: AsRef<str>,
    {
        let mut genre_names: Vec<String> = Vec::new();
        let mut genre_index: HashMap<String, u16> = HashMap::new();
        let mut items = Vec::new();
        let mut id_index = HashMap::new();

        for (id, title, genres) in entries {
            let labels: BTreeSet<&str> = genres
                .iter()
                .map(|g| g.as_ref().trim())
                .filter(|g| !g.is_empty())
                .collect();
            if labels.is_empty() {
                return Err(Error::Ingest(format!("item {id} has an empty genre set")));
            }
            let mut interned = Vec::with_capacity(labels.len());
            for label in labels {
                let next = genre_names.len() as u16;
                let gid = *genre_index.entry(label.to_owned()).or_insert_with(|| {
                    genre_names.push(label.to_owned());
                    next
                });
                interned.push(gid);
            }
            let pos = items.len();
            if id_index.insert(id.clone(), pos).is_some() {
                return Err(Error::Ingest(format!("duplicate item id {id} in catalog")));
            }
            items.push(CatalogItem {
                id,
                title,
                genres: GenreSet::from_unsorted(interned),
            });
        }

        Ok(Self {
            items,
            genre_names,
            id_index,
        })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[CatalogItem] {
        &self.items
    }

    pub fn get(&self, id: &ItemId) -> Option<&CatalogItem> {
        self.id_index.get(id).map(|&i| &self.items[i])
    }

    pub fn genres_of(&self, id: &ItemId) -> Option<&GenreSet> {
        self.get(id).map(|item| &item.genres)
    }

    pub fn genre_names(&self) -> &[String] {
        &self.genre_names
    }

    pub fn genre_name(&self, gid: u16) -> &str {
        &self.genre_names[gid as usize]
    }

    /// Genre-overlap similarity between two catalog items, `None` if either
    /// id is unknown.
    pub fn jaccard(&self, a: &ItemId, b: &ItemId) -> Option<f64> {
        Some(self.genres_of(a)?.jaccard(self.genres_of(b)?))
    }
}

/// Symmetric item–item similarity with unit diagonal and entries in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct SimilarityMatrix {
    ids: Vec<ItemId>,
    index: HashMap<ItemId, usize>,
    values: SquareMat,
}

impl SimilarityMatrix {
    /// Wraps precomputed values, verifying symmetry, unit diagonal, and range.
    pub fn from_values(ids: Vec<ItemId>, values: SquareMat) -> Result<Self> {
        if values.n() != ids.len() {
            return Err(Error::Argument(format!(
                "similarity matrix order {} does not match {} ids",
                values.n(),
                ids.len()
            )));
        }
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::Argument(format!("duplicate item id {id}")));
            }
        }
        let m = Self { ids, index, values };
        m.check_invariants()?;
        Ok(m)
    }

    fn check_invariants(&self) -> Result<()> {
        const TOL: f64 = 1e-12;
        let n = self.values.n();
        for i in 0..n {
            if (self.values.at(i, i) - 1.0).abs() > TOL {
                return Err(Error::Numeric(format!(
                    "similarity diagonal at {} is {}, expected 1",
                    self.ids[i],
                    self.values.at(i, i)
                )));
            }
            for j in 0..n {
                let v = self.values.at(i, j);
                if !v.is_finite() || v < -TOL || v > 1.0 + TOL {
                    return Err(Error::Numeric(format!(
                        "similarity S[{},{}] = {v} outside [0, 1]",
                        self.ids[i], self.ids[j]
                    )));
                }
                if (v - self.values.at(j, i)).abs() > TOL {
                    return Err(Error::Numeric(format!(
                        "similarity not symmetric at ({}, {})",
                        self.ids[i], self.ids[j]
                    )));
                }
            }
        }
        Ok(())
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

    pub fn position(&self, id: &ItemId) -> Option<usize> {
        self.index.get(id).copied()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values.at(i, j)
    }

    pub fn get_by_ids(&self, a: &ItemId, b: &ItemId) -> Option<f64> {
        Some(self.get(self.position(a)?, self.position(b)?))
    }

    pub fn values(&self) -> &SquareMat {
        &self.values
    }
}

/// Builds the genre-overlap similarity matrix over the whole catalog.
///
/// `S_ij` is the Jaccard overlap of the two items' genre sets, which reduces
/// to the same-genre 0/1 indicator when every item carries a single genre.
pub fn build_genre_similarity(catalog: &ItemCatalog) -> Result<SimilarityMatrix> {
    if catalog.is_empty() {
        return Err(Error::Config("cannot build similarity from an empty catalog".into()));
    }
    let n = catalog.len();
    let mut values = SquareMat::zeros(n);
    for i in 0..n {
        values.set(i, i, 1.0);
        for j in (i + 1)..n {
            let s = catalog.items[i].genres.jaccard(&catalog.items[j].genres);
            values.set(i, j, s);
            values.set(j, i, s);
        }
    }
    let ids = catalog.items.iter().map(|it| it.id.clone()).collect();
    SimilarityMatrix::from_values(ids, values)
}

/// Builds interaction-based similarity: cosine over binary user-incidence
/// vectors. Items sharing no raters get similarity 0.
pub fn build_interaction_similarity(interactions: &[(UserId, ItemId)]) -> Result<SimilarityMatrix> {
    if interactions.is_empty() {
        return Err(Error::Argument(
            "cannot build interaction similarity from zero interactions".into(),
        ));
    }

    // Item order is first appearance in the interaction stream.
    let mut ids: Vec<ItemId> = Vec::new();
    let mut item_pos: HashMap<ItemId, usize> = HashMap::new();
    let mut user_ids: HashMap<UserId, u32> = HashMap::new();
    let mut raters: Vec<HashSet<u32>> = Vec::new();

    for (user, item) in interactions {
        let next_user = user_ids.len() as u32;
        let uid = *user_ids.entry(user.clone()).or_insert(next_user);
        let pos = *item_pos.entry(item.clone()).or_insert_with(|| {
            ids.push(item.clone());
            raters.push(HashSet::new());
            ids.len() - 1
        });
        raters[pos].insert(uid);
    }

    let n = ids.len();
    let mut values = SquareMat::zeros(n);
    for i in 0..n {
        values.set(i, i, 1.0);
        for j in (i + 1)..n {
            let inter = raters[i].intersection(&raters[j]).count();
            let s = if inter == 0 {
                0.0
            } else {
                let denom = ((raters[i].len() * raters[j].len()) as f64).sqrt();
                (inter as f64 / denom).clamp(0.0, 1.0)
            };
            values.set(i, j, s);
            values.set(j, i, s);
        }
    }
    SimilarityMatrix::from_values(ids, values)
}

/// Loads an item catalog from a metadata file.
///
/// Accepts MovieLens `movies.dat` (`item_id::title::genre1|genre2`) and the
/// tab-separated equivalent. Malformed lines are skipped and counted; callers
/// enforce their own abort thresholds.
pub fn load_catalog(path: impl AsRef<Path>) -> Result<(ItemCatalog, LineStats)> {
    let path = path.as_ref();
    let file = File::open(path)
        .map_err(|e| Error::Ingest(format!("cannot open catalog {}: {e}", path.display())))?;
    let mut stats = LineStats::default();
    let mut entries: Vec<(ItemId, String, Vec<String>)> = Vec::new();

    for raw in BufReader::new(file).lines() {
        let raw = raw?;
        let Some(line) = data_line(&raw) else { continue };
        stats.total += 1;
        match parse_catalog_line(line) {
            Some(entry) => entries.push(entry),
            None => {
                stats.malformed += 1;
                tracing::warn!(line, "skipping malformed catalog line");
            }
        }
    }

    let catalog = ItemCatalog::from_entries(entries)?;
    Ok((catalog, stats))
}

fn parse_catalog_line(line: &str) -> Option<(ItemId, String, Vec<String>)> {
    let fields: Vec<&str> = if line.contains("::") {
        line.splitn(3, "::").collect()
    } else {
        line.splitn(3, '\t').collect()
    };
    if fields.len() != 3 {
        return None;
    }
    let id = fields[0].trim();
    if id.is_empty() {
        return None;
    }
    let genres: Vec<String> = fields[2]
        .split('|')
        .map(|g| g.trim().to_owned())
        .filter(|g| !g.is_empty())
        .collect();
    if genres.is_empty() {
        return None;
    }
    Some((ItemId::from(id), fields[1].trim().to_owned(), genres))
}
