//! Dump ingestion, triple reconstruction and time-based splitting.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;

use chrono::{DateTime, Months};
use log::warn;
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Placeholder bodies left behind when content is deleted or removed.
pub const DELETED_PLACEHOLDERS: [&str; 2] = ["[deleted]", "[removed]"];

/// Surface forms that mark a comment as awarding a delta.
pub const DELTA_TOKENS: [&str; 4] = ["Δ", "δ", "&;#8710;", "!delta"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Submission {
    pub id: String,
    pub author: String,
    #[serde(rename = "created_utc", deserialize_with = "de_timestamp")]
    pub created_at: i64,
    #[serde(default)]
    pub title: String,
    #[serde(rename = "selftext", default)]
    pub body: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comment {
    pub id: String,
    pub author: String,
    #[serde(rename = "created_utc", deserialize_with = "de_timestamp")]
    pub created_at: i64,
    #[serde(default)]
    pub body: String,
    pub parent_id: String,
    #[serde(rename = "link_id")]
    pub thread_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversationTriple {
    pub triple_id: String,
    pub op_text: String,
    pub pc_text: String,
    pub explanation_text: String,
    #[serde(skip_serializing, default)]
    pub op_author: String,
    /// Comments from the thread root down to the PC; a top-level PC is 1.
    pub pc_depth: u32,
    /// Timestamp of the explanation.
    #[serde(rename = "created_utc")]
    pub created_at: i64,
}

/// Dumps store `created_utc` as an integer, a float or a numeric string.
fn de_timestamp<'de, D: Deserializer<'de>>(de: D) -> Result<i64, D::Error> {
    use serde::de::Error as _;
    match Value::deserialize(de)? {
        Value::Number(n) => n
            .as_i64()
            .or_else(|| n.as_f64().map(|f| f as i64))
            .ok_or_else(|| D::Error::custom("bad timestamp")),
        Value::String(s) => s
            .trim()
            .parse::<f64>()
            .map(|f| f as i64)
            .map_err(D::Error::custom),
        _ => Err(D::Error::custom("timestamp must be a number or string")),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dump {
    pub submissions: Vec<Submission>,
    pub comments: Vec<Comment>,
    /// Lines that were not valid JSON or did not match either schema.
    pub skipped: usize,
}

fn parse_line(line: &str, dump: &mut Dump) -> bool {
    let Ok(value) = serde_json::from_str::<Value>(line) else {
        return false;
    };
    let Some(obj) = value.as_object() else {
        return false;
    };
    if obj.contains_key("parent_id") {
        match serde_json::from_value::<Comment>(value) {
            Ok(c) if !c.id.is_empty() && c.created_at > 0 => {
                dump.comments.push(c);
                true
            }
            _ => false,
        }
    } else if obj.contains_key("title") {
        match serde_json::from_value::<Submission>(value) {
            Ok(s) if !s.id.is_empty() && s.created_at > 0 => {
                dump.submissions.push(s);
                true
            }
            _ => false,
        }
    } else {
        false
    }
}

/// Parses a JSONL dump holding submissions, comments, or both. Each line is
/// classified by its keys (`parent_id` → comment, `title` → submission).
pub fn load_dump(path: &Path) -> Result<Dump> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut dump = Dump::default();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        if !parse_line(&line, &mut dump) {
            dump.skipped += 1;
        }
    }
    if dump.submissions.is_empty() && dump.comments.is_empty() {
        return Err(Error::EmptyCorpus(path.to_path_buf()));
    }
    if dump.skipped > 0 {
        warn!("{}: skipped {} malformed lines", path.display(), dump.skipped);
    }
    Ok(dump)
}

/// Strips a `t1_` / `t3_` style type prefix.
fn bare_id(id: &str) -> &str {
    match id.as_bytes() {
        [b't', d, b'_', ..] if d.is_ascii_digit() => &id[3..],
        _ => id,
    }
}

fn is_comment_ref(id: &str) -> bool {
    id.starts_with("t1_")
}

fn is_deleted(text: &str) -> bool {
    DELETED_PLACEHOLDERS.contains(&text.trim())
}

pub fn contains_delta(body: &str) -> bool {
    DELTA_TOKENS.iter().any(|t| body.contains(t))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractReport {
    pub triples: usize,
    /// Candidate explanations whose thread or parent chain could not be resolved.
    pub dangling: usize,
    /// Triples dropped because one of the three texts was deleted or removed.
    pub deleted: usize,
    /// Threads in which the OP wrote more than one explanation (all are kept).
    pub threads_with_multiple_explanations: usize,
}

/// Number of comments on the path from the top-level comment down to
/// `comment`, inclusive. `None` if the chain dangles or loops.
pub fn comment_depth(comment: &Comment, by_id: &HashMap<&str, &Comment>) -> Option<u32> {
    let mut depth = 1u32;
    let mut cur = comment;
    while is_comment_ref(&cur.parent_id) {
        cur = by_id.get(bare_id(&cur.parent_id))?;
        depth += 1;
        if depth as usize > by_id.len() + 1 {
            return None;
        }
    }
    Some(depth)
}

/// Reconstructs (OP, PC, explanation) triples: an explanation is a comment by
/// the submission's author that contains a delta token and replies to a
/// comment written by someone else.
pub fn extract_triples(
    submissions: &[Submission],
    comments: &[Comment],
) -> (Vec<ConversationTriple>, ExtractReport) {
    let subs: HashMap<&str, &Submission> =
        submissions.iter().map(|s| (s.id.as_str(), s)).collect();
    let by_id: HashMap<&str, &Comment> = comments.iter().map(|c| (c.id.as_str(), c)).collect();

    let mut report = ExtractReport::default();
    let mut per_thread: BTreeMap<&str, usize> = BTreeMap::new();
    let mut triples = Vec::new();

    for exp in comments {
        if !contains_delta(&exp.body) {
            continue;
        }
        let Some(sub) = subs.get(bare_id(&exp.thread_id)) else {
            report.dangling += 1;
            continue;
        };
        if sub.author != exp.author || is_deleted(&sub.author) {
            continue;
        }
        if !is_comment_ref(&exp.parent_id) {
            continue;
        }
        let Some(pc) = by_id.get(bare_id(&exp.parent_id)) else {
            report.dangling += 1;
            continue;
        };
        if pc.author == sub.author {
            continue;
        }
        let Some(pc_depth) = comment_depth(pc, &by_id) else {
            report.dangling += 1;
            continue;
        };
        if [&sub.title, &sub.body, &pc.body, &exp.body]
            .into_iter()
            .any(|t| is_deleted(t))
        {
            report.deleted += 1;
            continue;
        }
        *per_thread.entry(sub.id.as_str()).or_default() += 1;
        triples.push(ConversationTriple {
            triple_id: exp.id.clone(),
            op_text: format!("{}\n{}", sub.title, sub.body),
            pc_text: pc.body.clone(),
            explanation_text: exp.body.clone(),
            op_author: sub.author.clone(),
            pc_depth,
            created_at: exp.created_at,
        });
    }
    report.triples = triples.len();
    report.threads_with_multiple_explanations = per_thread.values().filter(|&&n| n > 1).count();
    (triples, report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCorpus {
    pub train: Vec<ConversationTriple>,
    pub validation: Vec<ConversationTriple>,
    pub test: Vec<ConversationTriple>,
}

impl SplitCorpus {
    pub fn len(&self) -> usize {
        self.train.len() + self.validation.len() + self.test.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn months_before(ts: i64, months: u32) -> Result<i64> {
    let dt = DateTime::from_timestamp(ts, 0)
        .ok_or_else(|| Error::InvalidConfig(format!("timestamp {ts} out of range")))?;
    dt.checked_sub_months(Months::new(months))
        .map(|d| d.timestamp())
        .ok_or_else(|| Error::InvalidConfig("split window underflows the calendar".into()))
}

/// Splits by calendar windows anchored at the latest timestamp: the last
/// `test_months` form the test set, the `validation_months` before that the
/// validation set, and everything earlier the training set. A timestamp on a
/// boundary goes to the later split. Input order is kept within each split.
pub fn split_by_time(
    triples: &[ConversationTriple],
    test_months: u32,
    validation_months: u32,
) -> Result<SplitCorpus> {
    let latest = triples
        .iter()
        .map(|t| t.created_at)
        .max()
        .ok_or(Error::EmptyTrainingSet)?;
    let test_start = months_before(latest, test_months)?;
    let validation_start = months_before(test_start, validation_months)?;

    let mut split = SplitCorpus::default();
    for t in triples {
        let bucket = if t.created_at >= test_start {
            &mut split.test
        } else if t.created_at >= validation_start {
            &mut split.validation
        } else {
            &mut split.train
        };
        bucket.push(t.clone());
    }
    let populated = [&split.train, &split.validation, &split.test]
        .iter()
        .filter(|s| !s.is_empty())
        .count();
    if populated == 1 {
        warn!("all {} triples fall in a single split window", triples.len());
    }
    Ok(split)
}
