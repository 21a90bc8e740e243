//! Hypernym-depth lexicon keyed by stem.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, LazyLock};

use crate::error::{Error, Result};
use crate::textprep::porter_stem;

/// WordNet 3.0 single-word lemmas with their min/max hypernym path lengths
/// (root = 0), as `lemma<TAB>min<TAB>max`.
pub const BUNDLED_TAXONOMY_TSV: &str = include_str!("../../data/taxonomy.tsv");

static BUNDLED: LazyLock<Arc<Taxonomy>> = LazyLock::new(|| {
    Arc::new(Taxonomy::from_tsv(BUNDLED_TAXONOMY_TSV).expect("bundled taxonomy parses"))
});

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Taxonomy {
    by_stem: HashMap<String, (u32, u32)>,
}

impl Taxonomy {
    /// Parses the TSV and indexes it by the Porter stem of each lemma. When
    /// several lemmas share a stem, the minimum of their minimum depths and
    /// the maximum of their maximum depths are kept.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut by_stem: HashMap<String, (u32, u32)> = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = || Error::Schema(format!("taxonomy line {}: `{line}`", lineno + 1));
            let mut cols = line.split('\t');
            let (Some(lemma), Some(lo), Some(hi), None) =
                (cols.next(), cols.next(), cols.next(), cols.next())
            else {
                return Err(bad());
            };
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            let stem = porter_stem(&lemma.trim().to_lowercase());
            by_stem
                .entry(stem)
                .and_modify(|(a, b)| {
                    *a = (*a).min(lo);
                    *b = (*b).max(hi);
                })
                .or_insert((lo, hi));
        }
        Ok(Taxonomy { by_stem })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&text)
    }

    pub fn bundled() -> Arc<Taxonomy> {
        Arc::clone(&BUNDLED)
    }

    pub fn len(&self) -> usize {
        self.by_stem.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_stem.is_empty()
    }

    /// `(min_depth, max_depth)` for a stem; `(0, 0)` when unknown.
    pub fn depths(&self, stem: &str) -> (u32, u32) {
        self.by_stem.get(stem).copied().unwrap_or((0, 0))
    }
}

pub fn wordnet_depths(stem: &str, taxonomy: &Taxonomy) -> (u32, u32) {
    taxonomy.depths(stem)
}
