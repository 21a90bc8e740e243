use std::collections::{BTreeSet, HashMap};

use super::names::side;
use super::roles::DepRole;
use crate::textprep::{AnnotatedDoc, Upos};

/// Usage aggregates of one stem within one side (OP or PC) of a triple.
#[derive(Debug, Clone, PartialEq)]
pub struct SideProfile {
    pub pos_dist: [f64; Upos::COUNT],
    pub dep_dist: [f64; 3],
    pub tf: u32,
    pub ntf: f64,
    /// Distinct lowercased surface forms.
    pub surface_forms: BTreeSet<String>,
    /// Mean fraction of the side's tokens that follow an occurrence.
    pub location: f64,
    pub in_quotes: u32,
    /// Entity-tagged occurrences over the side's token count.
    pub entity_frac: f64,
}

impl SideProfile {
    /// Defaults for a stem that does not occur on this side.
    pub fn absent() -> Self {
        SideProfile {
            pos_dist: [1.0 / Upos::COUNT as f64; Upos::COUNT],
            dep_dist: [1.0 / 3.0; 3],
            tf: 0,
            ntf: 0.0,
            surface_forms: BTreeSet::new(),
            location: 0.5,
            in_quotes: 0,
            entity_frac: 0.0,
        }
    }

    pub fn is_present(&self) -> bool {
        self.tf > 0
    }

    pub fn n_surface_forms(&self) -> usize {
        self.surface_forms.len()
    }

    /// Writes the 25-feature usage block.
    pub fn write_block(&self, out: &mut [f64]) {
        out[side::POS..side::POS + Upos::COUNT].copy_from_slice(&self.pos_dist);
        out[side::SUBJECT] = self.dep_dist[DepRole::Subject.index()];
        out[side::OBJECT] = self.dep_dist[DepRole::Object.index()];
        out[side::OTHER] = self.dep_dist[DepRole::Other.index()];
        out[side::TF] = self.tf as f64;
        out[side::NTF] = self.ntf;
        out[side::N_SURFACE_FORMS] = self.n_surface_forms() as f64;
        out[side::LOCATION] = self.location;
        out[side::IN_QUOTES] = self.in_quotes as f64;
        out[side::IS_ENTITY] = self.entity_frac;
    }
}

#[derive(Default)]
struct Acc {
    pos: [u32; Upos::COUNT],
    dep: [u32; 3],
    tf: u32,
    forms: BTreeSet<String>,
    after_sum: f64,
    quotes: u32,
    entities: u32,
}

/// Profiles for every stem occurring in `doc`, in one pass.
pub fn side_profiles(doc: &AnnotatedDoc) -> HashMap<String, SideProfile> {
    let len = doc.len();
    let mut accs: HashMap<&str, Acc> = HashMap::new();
    for tok in &doc.tokens {
        let acc = accs.entry(tok.stem.as_str()).or_default();
        acc.pos[tok.pos.index()] += 1;
        acc.dep[tok.dep_role.index()] += 1;
        acc.tf += 1;
        acc.forms.insert(tok.lower.clone());
        acc.after_sum += (len - 1 - tok.index) as f64 / len as f64;
        acc.quotes += u32::from(tok.in_quotes);
        acc.entities += u32::from(tok.is_entity);
    }
    accs.into_iter()
        .map(|(stem, a)| {
            let tf = a.tf as f64;
            (
                stem.to_string(),
                SideProfile {
                    pos_dist: a.pos.map(|c| c as f64 / tf),
                    dep_dist: a.dep.map(|c| c as f64 / tf),
                    tf: a.tf,
                    ntf: tf / len as f64,
                    surface_forms: a.forms,
                    location: a.after_sum / tf,
                    in_quotes: a.quotes,
                    entity_frac: a.entities as f64 / len as f64,
                },
            )
        })
        .collect()
}

/// Profile of a single stem; absent-side defaults when it does not occur.
pub fn side_usage(stem: &str, doc: &AnnotatedDoc) -> SideProfile {
    side_profiles(doc)
        .remove(stem)
        .unwrap_or_else(SideProfile::absent)
}

/// POS distribution over all of a document's tokens; uniform when empty.
pub fn doc_pos_distribution(doc: &AnnotatedDoc) -> [f64; Upos::COUNT] {
    if doc.is_empty() {
        return [1.0 / Upos::COUNT as f64; Upos::COUNT];
    }
    let mut counts = [0u32; Upos::COUNT];
    for t in &doc.tokens {
        counts[t.pos.index()] += 1;
    }
    let n = doc.len() as f64;
    counts.map(|c| c as f64 / n)
}

/// Mean characters per token; 0 for an empty document.
pub fn mean_token_chars(doc: &AnnotatedDoc) -> f64 {
    if doc.is_empty() {
        return 0.0;
    }
    let chars: usize = doc.tokens.iter().map(|t| t.surface.chars().count()).sum();
    chars as f64 / doc.len() as f64
}
