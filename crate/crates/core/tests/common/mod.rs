#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use echotrace::annotate::{AnnotatedTriple, Annotator};
use echotrace::corpus::ConversationTriple;
use echotrace::io::read_jsonl;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn mini_triples() -> Vec<ConversationTriple> {
    read_jsonl(&fixture("mini_triples.jsonl")).unwrap()
}

pub fn mini_annotated() -> Vec<AnnotatedTriple> {
    let annotator = Annotator::from_exchange_file(&fixture("mini_exchange.jsonl")).unwrap();
    mini_triples()
        .iter()
        .map(|t| annotator.annotate_triple(t).unwrap())
        .collect()
}
