//! Canonical feature layout: names, indices and groups.

use std::ops::Range;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::textprep::Upos;

pub const NUM_FEATURES: usize = 66;

pub const IDF: usize = 0;
pub const STEM_LENGTH: usize = 1;
pub const WN_DEPTH_MIN: usize = 2;
pub const WN_DEPTH_MAX: usize = 3;
pub const TRANSFER_PROB: usize = 4;

/// First index of the OP and PC usage blocks (25 features each).
pub const OP_BLOCK: usize = 5;
pub const PC_BLOCK: usize = 30;

/// Offsets inside a usage block.
pub mod side {
    pub const POS: usize = 0;
    pub const SUBJECT: usize = 16;
    pub const OBJECT: usize = 17;
    pub const OTHER: usize = 18;
    pub const TF: usize = 19;
    pub const NTF: usize = 20;
    pub const N_SURFACE_FORMS: usize = 21;
    pub const LOCATION: usize = 22;
    pub const IN_QUOTES: usize = 23;
    pub const IS_ENTITY: usize = 24;
    pub const LEN: usize = 25;
}

pub const IN_BOTH: usize = 55;
pub const UNIQ_SF_OP: usize = 56;
pub const UNIQ_SF_PC: usize = 57;
pub const JS_POS: usize = 58;
pub const JS_DEP: usize = 59;
pub const OP_LEN: usize = 60;
pub const PC_LEN: usize = 61;
pub const LEN_DIFF: usize = 62;
pub const AVG_WORD_LEN_DIFF: usize = 63;
pub const JS_POS_DOCS: usize = 64;
pub const PC_DEPTH: usize = 65;

fn side_names(prefix: &str, label: &str) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = Upos::ALL
        .iter()
        .map(|u| {
            (
                format!("{prefix}_pos_{}", u.as_str().to_lowercase()),
                format!("{label} {}", u.as_str()),
            )
        })
        .collect();
    for (name, human) in [
        ("subject", "subject"),
        ("object", "object"),
        ("other", "other"),
        ("tf", "term frequency"),
        ("ntf", "normalized term frequency"),
        ("n_surface_forms", "# of surface forms"),
        ("location", "location"),
        ("in_quotes", "in quotes"),
        ("is_entity", "is entity"),
    ] {
        v.push((format!("{prefix}_{name}"), format!("{label} {human}")));
    }
    v
}

static NAMES: LazyLock<Vec<(String, String)>> = LazyLock::new(|| {
    let head = [
        ("idf", "Inverse document frequency"),
        ("stem_length", "Stem length"),
        ("wn_depth_min", "Wordnet depth (min)"),
        ("wn_depth_max", "Wordnet depth (max)"),
        ("transfer_prob", "Stem transfer probability"),
    ];
    let relation = [
        ("in_both", "In both OP and PC"),
        ("uniq_sf_op_only", "# of unique surface forms in OP"),
        ("uniq_sf_pc_only", "# of unique surface forms in PC"),
        ("js_pos", "Stem POS distribution difference"),
        ("js_dep", "Stem dependency distribution difference"),
    ];
    let general = [
        ("op_len", "OP length"),
        ("pc_len", "PC length"),
        ("abs_len_diff", "Length difference"),
        ("avg_word_len_diff", "Avg. word length difference"),
        ("js_pos_docs", "OP/PC POS distribution difference"),
        ("pc_depth", "Depth of the PC in the thread"),
    ];
    let own = |xs: &[(&str, &str)]| -> Vec<(String, String)> {
        xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    };
    let mut v = own(&head);
    v.extend(side_names("op", "OP"));
    v.extend(side_names("pc", "PC"));
    v.extend(own(&relation));
    v.extend(own(&general));
    assert_eq!(v.len(), NUM_FEATURES);
    v
});

/// Machine names in canonical order (the feature CSV header).
pub fn feature_names() -> impl ExactSizeIterator<Item = &'static str> {
    NAMES.iter().map(|(n, _)| n.as_str())
}

pub fn feature_name(index: usize) -> &'static str {
    &NAMES[index].0
}

/// Human-readable row label, e.g. `"OP ADP"`.
pub fn feature_label(index: usize) -> &'static str {
    &NAMES[index].1
}

/// The five feature groups used for ablations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureGroup {
    NonContextual,
    OpUsage,
    PcUsage,
    OpPcRelation,
    General,
}

impl FeatureGroup {
    pub const ALL: [FeatureGroup; 5] = [
        FeatureGroup::NonContextual,
        FeatureGroup::OpUsage,
        FeatureGroup::PcUsage,
        FeatureGroup::OpPcRelation,
        FeatureGroup::General,
    ];

    pub fn range(self) -> Range<usize> {
        match self {
            FeatureGroup::NonContextual => 0..5,
            FeatureGroup::OpUsage => 5..30,
            FeatureGroup::PcUsage => 30..55,
            FeatureGroup::OpPcRelation => 55..60,
            FeatureGroup::General => 60..66,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureGroup::NonContextual => "non_contextual",
            FeatureGroup::OpUsage => "op_usage",
            FeatureGroup::PcUsage => "pc_usage",
            FeatureGroup::OpPcRelation => "op_pc_relation",
            FeatureGroup::General => "general",
        }
    }
}

impl FromStr for FeatureGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FeatureGroup::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

/// Feature indices covered by `groups`, ascending.
pub fn group_indices(groups: &[FeatureGroup]) -> Vec<usize> {
    (0..NUM_FEATURES)
        .filter(|i| groups.iter().any(|g| g.range().contains(i)))
        .collect()
}

/// Feature indices outside `groups`, ascending.
pub fn indices_without(groups: &[FeatureGroup]) -> Vec<usize> {
    (0..NUM_FEATURES)
        .filter(|i| !groups.iter().any(|g| g.range().contains(i)))
        .collect()
}
