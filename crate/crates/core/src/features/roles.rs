use serde::{Deserialize, Serialize};

/// Coarse grammatical role derived from a dependency label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepRole {
    Subject,
    Object,
    Other,
}

impl DepRole {
    pub const ALL: [DepRole; 3] = [DepRole::Subject, DepRole::Object, DepRole::Other];

    pub fn index(self) -> usize {
        self as usize
    }
}

const SUBJECT_LABELS: [&str; 6] = ["nsubj", "nsubjpass", "csubj", "csubjpass", "agent", "expl"];
const OBJECT_LABELS: [&str; 4] = ["dobj", "dative", "attr", "oprd"];

pub fn dep_role(label: &str) -> DepRole {
    if SUBJECT_LABELS.contains(&label) {
        DepRole::Subject
    } else if OBJECT_LABELS.contains(&label) {
        DepRole::Object
    } else {
        DepRole::Other
    }
}

/// Entity types that count for the "is entity" features.
pub const ENTITY_TYPES: [&str; 11] = [
    "PERSON",
    "NORP",
    "FAC",
    "ORG",
    "GPE",
    "LOC",
    "PRODUCT",
    "EVENT",
    "WORK_OF_ART",
    "LAW",
    "LANGUAGE",
];

pub fn is_listed_entity(ent: &str) -> bool {
    ENTITY_TYPES.contains(&ent)
}
