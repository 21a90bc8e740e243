//! Turning normalized texts into [`AnnotatedDoc`]s, either with the builtin
//! rule-based annotator or from token annotations in the exchange format
//! produced by an external tagging pipeline.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::ConversationTriple;
use crate::error::{Error, Result};
use crate::features::{dep_role, is_listed_entity, DepRole};
use crate::textprep::{
    builtin_tag, mark_quotes, normalize_text, stem_of, tokenize, AnnotatedDoc, DocKind,
    NormalizedText, Token, Upos,
};

/// One token of the exchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeToken {
    pub text: String,
    pub upos: String,
    #[serde(default)]
    pub dep: String,
    #[serde(default)]
    pub ent: String,
}

/// One line of the exchange file: `{"doc_id": .., "tokens": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeDoc {
    pub doc_id: String,
    pub tokens: Vec<ExchangeToken>,
}

/// One line of the adapter's input file: `{"doc_id": .., "text": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocRecord {
    pub doc_id: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedTriple {
    pub triple_id: String,
    pub op: AnnotatedDoc,
    pub pc: AnnotatedDoc,
    pub explanation: AnnotatedDoc,
    pub pc_depth: u32,
    pub created_at: i64,
}

fn build_doc(parts: Vec<(String, Upos, DepRole, bool)>) -> AnnotatedDoc {
    let flags = mark_quotes(&parts.iter().map(|p| p.0.as_str()).collect::<Vec<_>>());
    let tokens = parts
        .into_iter()
        .zip(flags)
        .enumerate()
        .map(|(index, ((surface, pos, dep_role, is_entity), in_quotes))| {
            let lower = surface.to_lowercase();
            Token {
                stem: stem_of(&lower),
                lower,
                surface,
                index,
                in_quotes,
                pos,
                dep_role,
                is_entity,
            }
        })
        .collect();
    AnnotatedDoc { tokens }
}

/// Builtin annotation: rule-based tokenizer and tagger, every dependency role
/// `Other`, no entities.
pub fn annotate_builtin(text: &NormalizedText) -> AnnotatedDoc {
    let raw = tokenize(text.as_str());
    let surfaces: Vec<&str> = raw.iter().map(|t| t.text.as_str()).collect();
    let tags = builtin_tag(&surfaces);
    build_doc(
        raw.into_iter()
            .zip(tags)
            .map(|(t, pos)| (t.text, pos, DepRole::Other, false))
            .collect(),
    )
}

/// Annotation from exchange tokens. `SPACE` tokens and whitespace-only texts
/// are dropped; dependency labels are mapped to roles and entity types are
/// filtered to the listed set.
pub fn annotate_exchange(tokens: &[ExchangeToken]) -> AnnotatedDoc {
    build_doc(
        tokens
            .iter()
            .filter(|t| !t.text.trim().is_empty())
            .filter_map(|t| {
                let pos = Upos::from_exchange(&t.upos)?;
                Some((
                    t.text.clone(),
                    pos,
                    dep_role(&t.dep),
                    is_listed_entity(&t.ent),
                ))
            })
            .collect(),
    )
}

pub fn doc_id(triple_id: &str, kind: DocKind) -> String {
    let suffix = match kind {
        DocKind::Op => "op",
        DocKind::Pc => "pc",
        DocKind::Explanation => "exp",
    };
    format!("{triple_id}:{suffix}")
}

/// Normalized texts of every triple, in the adapter's input format.
pub fn adapter_documents(triples: &[ConversationTriple]) -> Vec<DocRecord> {
    triples
        .iter()
        .flat_map(|t| {
            [
                (DocKind::Op, &t.op_text),
                (DocKind::Pc, &t.pc_text),
                (DocKind::Explanation, &t.explanation_text),
            ]
            .into_iter()
            .map(|(kind, text)| DocRecord {
                doc_id: doc_id(&t.triple_id, kind),
                text: normalize_text(text, kind).into_string(),
            })
        })
        .collect()
}

/// Where token annotations come from.
#[derive(Debug, Clone, Default)]
pub enum Annotator {
    #[default]
    Builtin,
    Exchange(HashMap<String, Vec<ExchangeToken>>),
}

impl Annotator {
    pub fn from_exchange_file(path: &Path) -> Result<Self> {
        let docs: Vec<ExchangeDoc> = crate::io::read_jsonl(path)?;
        Ok(Annotator::Exchange(
            docs.into_iter().map(|d| (d.doc_id, d.tokens)).collect(),
        ))
    }

    pub fn annotate(&self, triple_id: &str, kind: DocKind, raw: &str) -> Result<AnnotatedDoc> {
        match self {
            Annotator::Builtin => Ok(annotate_builtin(&normalize_text(raw, kind))),
            Annotator::Exchange(map) => {
                let id = doc_id(triple_id, kind);
                map.get(&id)
                    .map(|toks| annotate_exchange(toks))
                    .ok_or_else(|| Error::Schema(format!("no exchange annotation for `{id}`")))
            }
        }
    }

    pub fn annotate_triple(&self, triple: &ConversationTriple) -> Result<AnnotatedTriple> {
        let id = &triple.triple_id;
        Ok(AnnotatedTriple {
            triple_id: id.clone(),
            op: self.annotate(id, DocKind::Op, &triple.op_text)?,
            pc: self.annotate(id, DocKind::Pc, &triple.pc_text)?,
            explanation: self.annotate(id, DocKind::Explanation, &triple.explanation_text)?,
            pc_depth: triple.pc_depth,
            created_at: triple.created_at,
        })
    }
}
