//! Glue between documents, scenes, decoders and metrics: builds relation
//! test cases from annotated corpora, decodes prediction files and prepares
//! agreement and distribution inputs.

use std::collections::{BTreeMap, BTreeSet};

use crate::annotation::{
    filter_testable, modification_strength, CanonicalRelation, DialogueDocument,
};
use crate::error::{Error, Result};
use crate::ids::{EntityId, MarkableId};
use crate::io::PredictionDocument;
use crate::lexicon::Lexicon;
use crate::metrics::agreement::{cohen_kappa, token_labels, AgreementReport, TokenAgreementMode};
use crate::metrics::resolution::ReferentSets;
use crate::metrics::tables::{
    comparative_value_class, ignorable_object, CaseFactors, CaseRecord,
};
use crate::referent::{heuristic_count, threshold_predict, topk_predict};
use crate::relations::{evaluate, RelationContext};
use crate::scene::{Attribute, Entity, ScenePair, View};

/// Referent sets per dialogue, then per markable.
pub type CorpusReferents = BTreeMap<String, ReferentSets>;

/// Which referents the relation tests run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferentSource<'a> {
    /// The annotation's own gold referents.
    Gold,
    /// Externally decoded referent sets.
    Decoded(&'a CorpusReferents),
}

/// Decoding rule for score vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decoder {
    Threshold,
    TopK,
}

impl std::str::FromStr for Decoder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "threshold" => Ok(Decoder::Threshold),
            "topk" => Ok(Decoder::TopK),
            other => Err(Error::invalid(format!("unknown decoder {other:?}"))),
        }
    }
}

/// Where the referent count for top-k decoding comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountSource {
    File,
    Heuristic,
    Gold,
}

impl std::str::FromStr for CountSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "file" => Ok(CountSource::File),
            "heuristic" => Ok(CountSource::Heuristic),
            "gold" => Ok(CountSource::Gold),
            other => Err(Error::invalid(format!("unknown count source {other:?}"))),
        }
    }
}

fn scene_index(scenes: &[ScenePair]) -> BTreeMap<&str, &ScenePair> {
    scenes.iter().map(|s| (s.scene_id.as_str(), s)).collect()
}

fn scene_for<'a>(
    index: &BTreeMap<&str, &'a ScenePair>,
    doc: &DialogueDocument,
) -> Result<&'a ScenePair> {
    index.get(doc.scene_id.as_str()).copied().ok_or_else(|| {
        Error::misaligned(format!(
            "dialogue {} references unknown scene {}",
            doc.dialogue_id, doc.scene_id
        ))
    })
}

/// Flattens per-dialogue referent sets into one aligned map keyed
/// `dialogue_id/markable_id`, the shape the resolution metrics consume.
pub fn flatten_referents(referents: &CorpusReferents) -> ReferentSets {
    let mut out = ReferentSets::new();
    for (dialogue, sets) in referents {
        for (markable, ids) in sets {
            out.insert(
                MarkableId::from(format!("{dialogue}/{markable}")),
                ids.clone(),
            );
        }
    }
    out
}

/// Gold referents for every markable of every dialogue.
pub fn gold_referents(docs: &[DialogueDocument]) -> CorpusReferents {
    docs.iter()
        .map(|doc| {
            let sets = doc
                .markables
                .iter()
                .map(|m| (m.id.clone(), m.referents.clone()))
                .collect();
            (doc.dialogue_id.clone(), sets)
        })
        .collect()
}

fn referents_for<'a>(
    source: &'a ReferentSource,
    gold: &'a CorpusReferents,
    dialogue_id: &str,
    markable_id: &MarkableId,
) -> Result<&'a BTreeSet<EntityId>> {
    let map = match source {
        ReferentSource::Gold => gold,
        ReferentSource::Decoded(decoded) => decoded,
    };
    map.get(dialogue_id)
        .and_then(|sets| sets.get(markable_id))
        .ok_or_else(|| {
            Error::misaligned(format!(
                "no referent set for markable {markable_id} in dialogue {dialogue_id}"
            ))
        })
}

fn resolve_union(
    view: &View,
    ids: impl Iterator<Item = EntityId>,
) -> Result<Vec<Entity>> {
    let set: BTreeSet<EntityId> = ids.collect();
    view.resolve(&set)
}

/// Evaluates every testable relation instance of the corpus against the
/// chosen referents, producing one record per (expression, relation).
pub fn relation_cases(
    docs: &[DialogueDocument],
    scenes: &[ScenePair],
    source: ReferentSource,
) -> Result<Vec<CaseRecord>> {
    let index = scene_index(scenes);
    let gold = gold_referents(docs);
    let mut cases = Vec::new();
    for doc in docs {
        let scene = scene_for(&index, doc)?;
        for expr in filter_testable(doc) {
            let speaker = doc
                .speaker_of(expr.utterance)
                .expect("testable expressions have a speaker");
            let view = scene.view(speaker);
            let gather = |ids: &[MarkableId]| -> Result<Vec<Entity>> {
                let mut referents = Vec::new();
                for m in ids {
                    referents.extend(
                        referents_for(&source, &gold, &doc.dialogue_id, m)?
                            .iter()
                            .cloned(),
                    );
                }
                resolve_union(view, referents.into_iter())
            };
            let subjects = gather(&expr.subjects)?;
            let objects = gather(&expr.objects)?;
            let mut gold_subject_ids = Vec::new();
            for m in &expr.subjects {
                gold_subject_ids
                    .extend(referents_for(&ReferentSource::Gold, &gold, &doc.dialogue_id, m)?
                        .iter()
                        .cloned());
            }
            let gold_subjects = resolve_union(view, gold_subject_ids.into_iter())?;
            let strength = modification_strength(expr, doc);
            let inter = |ids: &[MarkableId]| {
                ids.iter().any(|id| {
                    doc.markable(id)
                        .map(|m| m.utterance != expr.utterance)
                        .unwrap_or(false)
                })
            };
            let ctx = RelationContext {
                subjects,
                objects,
                no_object: expr.no_object,
                view_entities: view.entities.clone(),
            };
            for relation in expr.canonical.iter().copied() {
                let result = evaluate(relation, &ctx);
                let factors = CaseFactors {
                    inter_utterance_subject: inter(&expr.subjects),
                    inter_utterance_object: inter(&expr.objects),
                    no_object: expr.no_object,
                    has_objects: !expr.objects.is_empty(),
                    ignorable: (!expr.objects.is_empty())
                        .then(|| ignorable_object(relation, &gold_subjects, &view.entities))
                        .flatten(),
                };
                let abs_difference = comparative_value_class(relation)
                    .filter(|_| result.valid && !ctx.subjects.is_empty() && !ctx.objects.is_empty())
                    .map(|class| {
                        let attr = match relation {
                            CanonicalRelation::Left | CanonicalRelation::Right => Attribute::X,
                            CanonicalRelation::Above | CanonicalRelation::Below => Attribute::Y,
                            CanonicalRelation::Lighter | CanonicalRelation::Darker => {
                                Attribute::Color
                            }
                            _ => Attribute::Size,
                        };
                        let mean = |es: &[Entity]| {
                            es.iter().map(|e| e.attribute(attr)).sum::<f64>() / es.len() as f64
                        };
                        (class, (mean(&ctx.subjects) - mean(&ctx.objects)).abs())
                    });
                cases.push(CaseRecord {
                    dialogue_id: doc.dialogue_id.clone(),
                    expression_id: expr.id.clone(),
                    relation,
                    strength,
                    factors,
                    result,
                    abs_difference,
                });
            }
        }
    }
    Ok(cases)
}

/// Decodes score files into referent sets, filling the `decoded` field.
/// Returns the per-dialogue referent map and the filled documents, in input
/// order.
pub fn decode_predictions(
    docs: &[DialogueDocument],
    scenes: &[ScenePair],
    predictions: &[PredictionDocument],
    decoder: Decoder,
    count_source: CountSource,
) -> Result<(CorpusReferents, Vec<PredictionDocument>)> {
    let index = scene_index(scenes);
    let doc_index: BTreeMap<&str, &DialogueDocument> =
        docs.iter().map(|d| (d.dialogue_id.as_str(), d)).collect();
    let mut referents = CorpusReferents::new();
    let mut filled = Vec::with_capacity(predictions.len());
    for pdoc in predictions {
        let doc = doc_index.get(pdoc.dialogue_id.as_str()).ok_or_else(|| {
            Error::misaligned(format!(
                "predictions reference unknown dialogue {}",
                pdoc.dialogue_id
            ))
        })?;
        let scene = scene_for(&index, doc)?;
        let mut out = pdoc.clone();
        let entry = referents.entry(doc.dialogue_id.clone()).or_default();
        for pred in &mut out.predictions {
            let markable = doc.markable(&pred.markable_id).ok_or_else(|| {
                Error::misaligned(format!(
                    "predictions reference unknown markable {} in dialogue {}",
                    pred.markable_id, pdoc.dialogue_id
                ))
            })?;
            let speaker = doc.speaker_of(markable.utterance).ok_or_else(|| {
                Error::misaligned(format!(
                    "markable {} sits in a missing utterance",
                    pred.markable_id
                ))
            })?;
            let view = scene.view(speaker);
            let ids: Vec<EntityId> = view.entities.iter().map(|e| e.id.clone()).collect();
            let decoded = match decoder {
                Decoder::Threshold => threshold_predict(&pred.scores, &ids)?,
                Decoder::TopK => {
                    let k = match count_source {
                        CountSource::File => pred.count.ok_or_else(|| {
                            Error::invalid(format!(
                                "markable {} has no count but --count-source is file",
                                pred.markable_id
                            ))
                        })?,
                        CountSource::Heuristic => heuristic_count(&pred.scores),
                        CountSource::Gold => markable.referents.len(),
                    };
                    topk_predict(&pred.scores, &ids, k)?
                }
            };
            pred.decoded = Some(decoded.clone());
            entry.insert(pred.markable_id.clone(), decoded);
        }
        filled.push(out);
    }
    Ok((referents, filled))
}

/// Attribute values of the referents behind every markable mentioning a
/// lexicon term, keyed by term.
pub fn term_values(
    docs: &[DialogueDocument],
    scenes: &[ScenePair],
    lexicon: &Lexicon,
    attribute: Attribute,
    source: ReferentSource,
) -> Result<BTreeMap<String, Vec<f64>>> {
    let index = scene_index(scenes);
    let gold = gold_referents(docs);
    let mut values: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for doc in docs {
        let scene = scene_for(&index, doc)?;
        for markable in &doc.markables {
            let Some(utterance) = doc.utterance(markable.utterance) else {
                continue;
            };
            let tokens: Vec<&str> = markable
                .span
                .positions()
                .into_iter()
                .filter_map(|p| utterance.tokens.get(p).map(String::as_str))
                .collect();
            let Some(term) = lexicon.extract_attribute_term(&tokens, attribute) else {
                continue;
            };
            let view = scene.view(utterance.speaker);
            let ids = referents_for(&source, &gold, &doc.dialogue_id, &markable.id)?;
            let entry = values.entry(term.to_owned()).or_default();
            for id in ids {
                if let Some(entity) = view.entity(id) {
                    entry.push(entity.attribute(attribute));
                }
            }
        }
    }
    Ok(values)
}

/// Spatial-expression spans of a document, as (utterance, span) pairs.
pub fn expression_spans(doc: &DialogueDocument) -> Vec<(usize, crate::annotation::TokenSpan)> {
    doc.expressions
        .iter()
        .map(|e| (e.utterance, e.span.clone()))
        .collect()
}

/// Token-level agreement between two annotation files over their common
/// dialogue structure. Dialogues are matched by id and must agree on
/// utterance tokenization.
pub fn corpus_token_agreement(
    first: &[DialogueDocument],
    second: &[DialogueDocument],
    mode: TokenAgreementMode,
) -> Result<AgreementReport> {
    let by_id: BTreeMap<&str, &DialogueDocument> =
        second.iter().map(|d| (d.dialogue_id.as_str(), d)).collect();
    let mut labels_a = Vec::new();
    let mut labels_b = Vec::new();
    for doc_a in first {
        let doc_b = by_id.get(doc_a.dialogue_id.as_str()).ok_or_else(|| {
            Error::misaligned(format!(
                "dialogue {} is missing from the second annotation file",
                doc_a.dialogue_id
            ))
        })?;
        let tokens_match = doc_a.utterances.len() == doc_b.utterances.len()
            && doc_a
                .utterances
                .iter()
                .zip(&doc_b.utterances)
                .all(|(a, b)| a.tokens == b.tokens);
        if !tokens_match {
            return Err(Error::misaligned(format!(
                "dialogue {} is tokenized differently in the two files",
                doc_a.dialogue_id
            )));
        }
        labels_a.extend(token_labels(
            &expression_spans(doc_a),
            &doc_a.utterances,
            mode,
        )?);
        labels_b.extend(token_labels(
            &expression_spans(doc_b),
            &doc_b.utterances,
            mode,
        )?);
    }
    cohen_kappa(&labels_a, &labels_b)
}
