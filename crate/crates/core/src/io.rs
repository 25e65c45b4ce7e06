//! Line-delimited JSON reading and writing for scenes, annotations and
//! predictions, plus the prediction document types.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ids::{EntityId, MarkableId};

/// Per-markable referent scores as produced by an external model or by the
/// synthetic generator, with optional count and decoded set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkablePrediction {
    pub markable_id: MarkableId,
    /// One score in [0, 1] per view entity, ordered by ascending entity id.
    pub scores: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoded: Option<BTreeSet<EntityId>>,
}

/// All predictions for one dialogue.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictionDocument {
    pub dialogue_id: String,
    pub predictions: Vec<MarkablePrediction>,
}

/// Reads one JSON document per line, skipping blank lines. Parse failures
/// carry the path and 1-based line number.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    let reader = BufReader::new(file);
    let mut items = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let item = serde_json::from_str(&line).map_err(|source| Error::Parse {
            path: path.to_owned(),
            line: i + 1,
            source,
        })?;
        items.push(item);
    }
    Ok(items)
}

/// Writes one compact JSON document per line with trailing newlines, so
/// identical inputs produce byte-identical files.
pub fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    for item in items {
        let line = serde_json::to_string(item).map_err(|source| Error::Parse {
            path: path.to_owned(),
            line: 0,
            source,
        })?;
        writer
            .write_all(line.as_bytes())
            .and_then(|()| writer.write_all(b"\n"))
            .map_err(|source| Error::Io {
                path: path.to_owned(),
                source,
            })?;
    }
    writer.flush().map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<PredictionDocument> {
        vec![PredictionDocument {
            dialogue_id: "d0".into(),
            predictions: vec![
                MarkablePrediction {
                    markable_id: "m0".into(),
                    scores: vec![0.9, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1],
                    count: Some(1),
                    decoded: None,
                },
                MarkablePrediction {
                    markable_id: "m1".into(),
                    scores: vec![0.0; 7],
                    count: None,
                    decoded: Some([EntityId::from("e0")].into_iter().collect()),
                },
            ],
        }]
    }

    #[test]
    fn round_trips_and_skips_blank_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("predictions.jsonl");
        write_jsonl(&path, &sample()).unwrap();

        let mut text = std::fs::read_to_string(&path).unwrap();
        text.push('\n');
        std::fs::write(&path, &text).unwrap();

        let back: Vec<PredictionDocument> = read_jsonl(&path).unwrap();
        assert_eq!(back, sample());
    }

    #[test]
    fn optional_fields_are_omitted_when_absent() {
        let json = serde_json::to_string(&sample()[0]).unwrap();
        assert!(!json.contains(r#""count":null"#));
        assert!(!json.contains(r#""decoded":null"#));
        assert!(json.contains(r#""count":1"#));
    }

    #[test]
    fn writes_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.jsonl");
        let b = dir.path().join("b.jsonl");
        write_jsonl(&a, &sample()).unwrap();
        write_jsonl(&b, &sample()).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }

    #[test]
    fn parse_errors_carry_path_and_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("broken.jsonl");
        std::fs::write(&path, "{\"dialogue_id\":\"d0\",\"predictions\":[]}\nnot json\n").unwrap();
        let err = read_jsonl::<PredictionDocument>(&path).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("broken.jsonl"), "{message}");
        assert!(message.contains("line 2"), "{message}");
    }

    #[test]
    fn missing_file_errors_with_path() {
        let err = read_jsonl::<PredictionDocument>(Path::new("/nonexistent/x.jsonl")).unwrap_err();
        assert!(err.to_string().contains("x.jsonl"));
    }
}
