//! One function per subcommand. Inputs are loaded and sorted first, all
//! results are computed in memory, artifacts are flushed last.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use spotcheck_core::annotation::validate_document;
use spotcheck_core::io::{read_jsonl, PredictionDocument};
use spotcheck_core::lexicon::Lexicon;
use spotcheck_core::metrics::agreement::TokenAgreementMode;
use spotcheck_core::metrics::distribution::referent_distribution;
use spotcheck_core::metrics::split::{rotation_split, SPLIT_BINS};
use spotcheck_core::metrics::resolution::{entity_accuracy, exact_match};
use spotcheck_core::metrics::tables::{
    absolute_difference_table, satisfy_valid_table, Grouping,
};
use spotcheck_core::pipeline::{
    corpus_token_agreement, decode_predictions, flatten_referents, gold_referents,
    relation_cases, term_values, CorpusReferents, CountSource, Decoder, ReferentSource,
};
use spotcheck_core::scene::Attribute;
use spotcheck_core::synth::{generate_corpus, Consistency};
use spotcheck_core::{DialogueDocument, Error, Result, ScenePair};

use crate::artifact::{fixed2, fixed4, Artifacts, Csv};
use crate::IoArgs;

/// Dialogues generated per `generate` run: two full passes over the
/// canonical relations.
const GENERATE_DIALOGUES: usize = 48;

pub struct Outcome {
    pub code: u8,
    pub summary: Vec<String>,
}

impl Outcome {
    fn ok(summary: Vec<String>) -> Result<Outcome> {
        Ok(Outcome { code: 0, summary })
    }
}

fn require<'a>(path: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    path.as_deref()
        .ok_or_else(|| Error::invalid(format!("--{flag} is required for this command")))
}

fn one_annotations(io: &IoArgs) -> Result<&Path> {
    match io.annotations.as_slice() {
        [one] => Ok(one),
        [] => Err(Error::invalid("--annotations is required for this command")),
        more => Err(Error::invalid(format!(
            "expected one --annotations file, got {}",
            more.len()
        ))),
    }
}

fn load_docs(path: &Path) -> Result<Vec<DialogueDocument>> {
    let mut docs: Vec<DialogueDocument> = read_jsonl(path)?;
    docs.sort_by(|a, b| a.dialogue_id.cmp(&b.dialogue_id));
    Ok(docs)
}

fn load_scenes(path: &Path) -> Result<Vec<ScenePair>> {
    let mut scenes: Vec<ScenePair> = read_jsonl(path)?;
    scenes.sort_by(|a, b| a.scene_id.cmp(&b.scene_id));
    Ok(scenes)
}

fn load_predictions(path: &Path) -> Result<Vec<PredictionDocument>> {
    let mut predictions: Vec<PredictionDocument> = read_jsonl(path)?;
    predictions.sort_by(|a, b| a.dialogue_id.cmp(&b.dialogue_id));
    for doc in &mut predictions {
        doc.predictions.sort_by(|a, b| a.markable_id.cmp(&b.markable_id));
    }
    Ok(predictions)
}

fn load_lexicon(path: &Option<PathBuf>) -> Result<Lexicon> {
    match path {
        Some(p) => Lexicon::load(p),
        None => Ok(Lexicon::default()),
    }
}

/// Referents to test: decoded when score files are given, gold otherwise.
fn choose_referents(
    io: &IoArgs,
    docs: &[DialogueDocument],
    scenes: &[ScenePair],
    decoder: Decoder,
    count_source: CountSource,
) -> Result<Option<CorpusReferents>> {
    match &io.predictions {
        Some(path) => {
            let predictions = load_predictions(path)?;
            let (decoded, _) =
                decode_predictions(docs, scenes, &predictions, decoder, count_source)?;
            Ok(Some(decoded))
        }
        None => Ok(None),
    }
}

pub fn generate(io: &IoArgs, seed: u64) -> Result<Outcome> {
    let corpus = generate_corpus(seed, GENERATE_DIALOGUES, Consistency::Satisfying)?;
    let mut artifacts = Artifacts::new(&io.out);
    artifacts.push_jsonl("scenes.jsonl", &corpus.scenes)?;
    artifacts.push_jsonl("annotations.jsonl", &corpus.documents)?;
    artifacts.push_jsonl("predictions.jsonl", &corpus.predictions)?;
    let written = artifacts.write_all()?;
    Outcome::ok(vec![format!(
        "generated {} dialogues into {} files under {}",
        corpus.documents.len(),
        written.len(),
        io.out.display()
    )])
}

pub fn validate(io: &IoArgs) -> Result<Outcome> {
    let docs = load_docs(one_annotations(io)?)?;
    let scenes = match &io.scenes {
        Some(path) => load_scenes(path)?,
        None => Vec::new(),
    };
    let scene_index: BTreeMap<&str, &ScenePair> =
        scenes.iter().map(|s| (s.scene_id.as_str(), s)).collect();

    let mut records = Vec::new();
    let mut record = |dialogue: &str, rule: &str, location: String, detail: String| {
        records.push(serde_json::json!({
            "dialogue_id": dialogue,
            "rule": rule,
            "location": location,
            "detail": detail,
        }));
    };

    for scene in &scenes {
        for violation in scene.violations() {
            record("", "scene", format!("scene {}", scene.scene_id), violation);
        }
    }
    let mut seen = BTreeMap::new();
    for doc in &docs {
        if let Some(previous) = seen.insert(doc.dialogue_id.as_str(), ()) {
            let _ = previous;
            record(
                &doc.dialogue_id,
                "duplicate-dialogue",
                format!("dialogue {}", doc.dialogue_id),
                "dialogue id appears more than once".to_owned(),
            );
        }
        let scene = scene_index.get(doc.scene_id.as_str()).copied();
        if !scenes.is_empty() && scene.is_none() {
            record(
                &doc.dialogue_id,
                "unknown-scene",
                format!("dialogue {}", doc.dialogue_id),
                format!("references scene {} not in --scenes", doc.scene_id),
            );
        }
        let report = validate_document(doc, scene);
        for violation in report.violations {
            record(
                &doc.dialogue_id,
                &violation.rule,
                violation.location,
                violation.detail,
            );
        }
    }

    let violation_count = records.len();
    let mut artifacts = Artifacts::new(&io.out);
    artifacts.push_jsonl("validation.jsonl", &records)?;
    artifacts.write_all()?;
    Ok(Outcome {
        code: if violation_count == 0 { 0 } else { 1 },
        summary: vec![format!(
            "{violation_count} violations across {} dialogues",
            docs.len()
        )],
    })
}

pub fn decode(io: &IoArgs, decoder: Decoder, count_source: CountSource) -> Result<Outcome> {
    let docs = load_docs(one_annotations(io)?)?;
    let scenes = load_scenes(require(&io.scenes, "scenes")?)?;
    let predictions = load_predictions(require(&io.predictions, "predictions")?)?;
    let (referents, filled) =
        decode_predictions(&docs, &scenes, &predictions, decoder, count_source)?;
    let markables: usize = referents.values().map(|sets| sets.len()).sum();
    let mut artifacts = Artifacts::new(&io.out);
    artifacts.push_jsonl("decoded.jsonl", &filled)?;
    artifacts.write_all()?;
    Outcome::ok(vec![format!(
        "decoded {markables} markables across {} dialogues",
        filled.len()
    )])
}

pub fn evaluate(io: &IoArgs, decoder: Decoder, count_source: CountSource) -> Result<Outcome> {
    let docs = load_docs(one_annotations(io)?)?;
    let scenes = load_scenes(require(&io.scenes, "scenes")?)?;
    let predictions = load_predictions(require(&io.predictions, "predictions")?)?;
    let (decoded, _) = decode_predictions(&docs, &scenes, &predictions, decoder, count_source)?;
    let decoded = flatten_referents(&decoded);
    let gold = flatten_referents(&gold_referents(&docs));
    let accuracy = entity_accuracy(&decoded, &gold)?;
    let exact = exact_match(&decoded, &gold)?;

    let mut csv = Csv::new(&["metric", "value"]);
    csv.row(&["entity_accuracy", &fixed4(accuracy)]);
    csv.row(&["exact_match", &fixed4(exact)]);
    let mut artifacts = Artifacts::new(&io.out);
    artifacts.push("evaluation.csv", csv.into_bytes());
    artifacts.write_all()?;
    Outcome::ok(vec![
        format!("entity_accuracy {}", fixed4(accuracy)),
        format!("exact_match {}", fixed4(exact)),
    ])
}

pub fn test_relations(
    io: &IoArgs,
    decoder: Decoder,
    count_source: CountSource,
    group: Grouping,
    emit_cases: bool,
) -> Result<Outcome> {
    let docs = load_docs(one_annotations(io)?)?;
    let scenes = load_scenes(require(&io.scenes, "scenes")?)?;
    let decoded = choose_referents(io, &docs, &scenes, decoder, count_source)?;
    let source = match &decoded {
        Some(referents) => ReferentSource::Decoded(referents),
        None => ReferentSource::Gold,
    };
    let cases = relation_cases(&docs, &scenes, source)?;
    let table = satisfy_valid_table(&cases, group);

    let mut csv = Csv::new(&["group", "cases", "satisfy_rate", "valid_rate"]);
    for row in &table.rows {
        csv.row(&[
            row.key.label().to_owned(),
            row.case_count.to_string(),
            fixed2(row.satisfy_rate),
            fixed2(row.valid_rate),
        ]);
    }
    let mut artifacts = Artifacts::new(&io.out);
    artifacts.push("table.csv", csv.into_bytes());
    if emit_cases {
        artifacts.push_jsonl("cases.jsonl", &cases)?;
    }
    artifacts.write_all()?;

    let satisfied = cases.iter().filter(|c| c.result.satisfy).count();
    let valid = cases.iter().filter(|c| c.result.valid).count();
    Outcome::ok(vec![format!(
        "{} cases: {} satisfied, {} valid",
        cases.len(),
        satisfied,
        valid
    )])
}

pub fn analyze(
    io: &IoArgs,
    decoder: Decoder,
    count_source: CountSource,
    emit_cases: bool,
) -> Result<Outcome> {
    let docs = load_docs(one_annotations(io)?)?;
    let scenes = load_scenes(require(&io.scenes, "scenes")?)?;
    let lexicon = load_lexicon(&io.lexicon)?;
    let decoded = choose_referents(io, &docs, &scenes, decoder, count_source)?;
    let source = match &decoded {
        Some(referents) => ReferentSource::Decoded(referents),
        None => ReferentSource::Gold,
    };
    let cases = relation_cases(&docs, &scenes, source)?;

    let mut artifacts = Artifacts::new(&io.out);
    for (name, grouping) in [
        ("strength_table.csv", Grouping::Strength),
        ("factor_table.csv", Grouping::Factor),
    ] {
        let table = satisfy_valid_table(&cases, grouping);
        let mut csv = Csv::new(&["group", "cases", "satisfy_rate", "valid_rate"]);
        for row in &table.rows {
            csv.row(&[
                row.key.label().to_owned(),
                row.case_count.to_string(),
                fixed2(row.satisfy_rate),
                fixed2(row.valid_rate),
            ]);
        }
        artifacts.push(name, csv.into_bytes());
    }

    let mut diff = Csv::new(&["value", "strength", "cases", "mean_abs_difference"]);
    for row in absolute_difference_table(&cases) {
        diff.row(&[
            row.value.label().to_owned(),
            row.strength.label().to_owned(),
            row.count.to_string(),
            row.mean_abs_difference.map_or_else(|| "na".to_owned(), fixed2),
        ]);
    }
    artifacts.push("abs_difference.csv", diff.into_bytes());

    let mut distances: Option<Csv> = io
        .predictions
        .is_some()
        .then(|| Csv::new(&["attribute", "term", "distance"]));
    for (attribute, file) in [
        (Attribute::Color, "color_distribution.csv"),
        (Attribute::Size, "size_distribution.csv"),
    ] {
        let values = term_values(&docs, &scenes, &lexicon, attribute, source)?;
        let mut csv = Csv::new(&["term", "bin_index", "bin_start", "bin_end", "count"]);
        for (term, values) in &values {
            let histogram = referent_distribution(values, attribute)?;
            let width = histogram.bin_width();
            for (i, count) in histogram.counts.iter().enumerate() {
                let start = histogram.min + width * i as f64;
                csv.row(&[
                    term.clone(),
                    i.to_string(),
                    format!("{start}"),
                    format!("{}", start + width),
                    count.to_string(),
                ]);
            }
        }
        artifacts.push(file, csv.into_bytes());

        if let Some(csv) = distances.as_mut() {
            let gold_values =
                term_values(&docs, &scenes, &lexicon, attribute, ReferentSource::Gold)?;
            for (term, decoded_values) in &values {
                let empty = Vec::new();
                let gold_for_term = gold_values.get(term).unwrap_or(&empty);
                let d = spotcheck_core::metrics::distribution::distribution_distance(
                    &referent_distribution(gold_for_term, attribute)?,
                    &referent_distribution(decoded_values, attribute)?,
                )?;
                csv.row(&[attribute.to_string(), term.clone(), format!("{d:.6}")]);
            }
        }
    }
    if let Some(csv) = distances {
        artifacts.push("distribution_distance.csv", csv.into_bytes());
    }

    if emit_cases {
        artifacts.push_jsonl("cases.jsonl", &cases)?;
    }
    let written = artifacts.write_all()?;
    Outcome::ok(vec![format!(
        "analyzed {} cases into {} files under {}",
        cases.len(),
        written.len(),
        io.out.display()
    )])
}

pub fn agreement(io: &IoArgs) -> Result<Outcome> {
    let [first, second] = io.annotations.as_slice() else {
        return Err(Error::invalid(
            "agreement needs exactly two --annotations files",
        ));
    };
    let docs_a = load_docs(first)?;
    let docs_b = load_docs(second)?;
    let mut csv = Csv::new(&["mode", "percent", "kappa"]);
    let mut summary = Vec::new();
    for (label, mode) in [
        ("coverage", TokenAgreementMode::Coverage),
        ("span_starts", TokenAgreementMode::SpanStarts),
    ] {
        let report = corpus_token_agreement(&docs_a, &docs_b, mode)?;
        csv.row(&[label, &fixed2(report.percent), &fixed4(report.kappa)]);
        summary.push(format!(
            "{label}: {}% agreement, kappa {}",
            fixed2(report.percent),
            fixed4(report.kappa)
        ));
    }
    let mut artifacts = Artifacts::new(&io.out);
    artifacts.push("agreement.csv", csv.into_bytes());
    artifacts.write_all()?;
    Outcome::ok(summary)
}

pub fn split(io: &IoArgs) -> Result<Outcome> {
    let docs = load_docs(one_annotations(io)?)?;
    let ids: Vec<&str> = docs.iter().map(|d| d.dialogue_id.as_str()).collect();
    let mut artifacts = Artifacts::new(&io.out);
    for round in 0..SPLIT_BINS as usize {
        let sets = rotation_split(&ids, round)?;
        artifacts.push_json(&format!("split_round_{round}.json"), &sets)?;
    }
    let written = artifacts.write_all()?;
    Outcome::ok(vec![format!(
        "split {} dialogues into {} round manifests",
        ids.len(),
        written.len()
    )])
}
