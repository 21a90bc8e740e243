//! Corpus statistics, the 66 per-stem features, and min-max scaling.

mod js;
mod names;
mod profile;
mod roles;
mod scaler;
mod stats;
mod table;
mod taxonomy;
mod vector;

pub use js::{js_distance, js_divergence};
pub use names::*;
pub use profile::{doc_pos_distribution, mean_token_chars, side_profiles, side_usage, SideProfile};
pub use roles::{dep_role, is_listed_entity, DepRole, ENTITY_TYPES};
pub use scaler::{apply_scaler, fit_scaler, MinMaxScaler};
pub use stats::{build_corpus_stats, CorpusStats};
pub use table::{csv_header, read_feature_csv, write_feature_csv};
pub use taxonomy::{wordnet_depths, Taxonomy, BUNDLED_TAXONOMY_TSV};
pub use vector::{
    featurize_all, featurize_triple, featurize_triple_with, pair_features, relation_features,
    rows_by_triple, CandidateRow, FeatureVector, FeaturizeOptions,
};
