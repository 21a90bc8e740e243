//! Feature-matrix CSV: `triple_id,stem,label,` followed by the 66 canonical
//! feature names.

use std::path::Path;

use super::names::{feature_names, NUM_FEATURES};
use super::vector::{CandidateRow, FeatureVector};
use crate::error::{Error, Result};

pub fn csv_header() -> Vec<&'static str> {
    let mut h = vec!["triple_id", "stem", "label"];
    h.extend(feature_names());
    h
}

pub fn write_feature_csv(path: &Path, rows: &[CandidateRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(csv_header())?;
    let mut record: Vec<String> = Vec::with_capacity(3 + NUM_FEATURES);
    for r in rows {
        record.clear();
        record.push(r.triple_id.clone());
        record.push(r.stem.clone());
        record.push(r.label.to_string());
        // `{}` on f64 prints the shortest representation that round-trips
        record.extend(r.features.iter().map(|x| x.to_string()));
        w.write_record(&record)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?;
    crate::io::write_atomic(path, &bytes)
}

pub fn read_feature_csv(path: &Path) -> Result<Vec<CandidateRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| match e.kind() {
        csv::ErrorKind::Io(_) => Error::io(path, std::io::Error::other(e.to_string())),
        _ => Error::Csv(e),
    })?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != csv_header() {
        return Err(Error::Schema(format!(
            "{}: unexpected feature CSV header",
            path.display()
        )));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let bad = |what: &str| Error::Schema(format!("{}: bad {what} in row", path.display()));
        let label: u8 = rec[2].parse().map_err(|_| bad("label"))?;
        if label > 1 {
            return Err(bad("label"));
        }
        let values = rec
            .iter()
            .skip(3)
            .map(|v| v.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("feature value"))?;
        rows.push(CandidateRow {
            triple_id: rec[0].to_string(),
            stem: rec[1].to_string(),
            label,
            features: FeatureVector::try_from(values.as_slice())?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn csv_round_trip_is_lossless(
            vals in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), NUM_FEATURES),
            stem in "[a-z,\"'.]{1,6}",
            label in 0u8..2,
        ) {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("f.csv");
            let row = CandidateRow {
                triple_id: "t,1".into(),
                stem,
                label,
                features: FeatureVector::try_from(vals.as_slice()).unwrap(),
            };
            write_feature_csv(&path, std::slice::from_ref(&row)).unwrap();
            let back = read_feature_csv(&path).unwrap();
            prop_assert_eq!(back, vec![row]);
        }
    }

    #[test]
    fn wrong_header_is_schema_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        std::fs::write(&path, "a,b,c\n1,2,3\n").unwrap();
        assert!(matches!(read_feature_csv(&path), Err(Error::Schema(_))));
    }
}
