//! Browser bindings: thin JSON-string wrappers over the core toolkit so a
//! static page can generate scene pairs, run the relation test battery, and
//! decode referent scores without a server round trip.
//!
//! Every function takes and returns plain strings. Failures come back as a
//! `{"error":{"kind":...,"message":...}}` document instead of an exception,
//! mirroring the CLI's error records, so the page can handle both shapes
//! with one code path. The same functions compile natively, which is where
//! the unit tests run.

use std::collections::BTreeSet;

use wasm_bindgen::prelude::*;

use spotcheck_core::ids::EntityId;
use spotcheck_core::referent::{heuristic_count, threshold_predict, topk_predict};
use spotcheck_core::scene::{generate_scene_pair, Player, ScenePair};
use spotcheck_core::{evaluate, CanonicalRelation, RelationContext};

fn error_json(kind: &str, message: impl std::fmt::Display) -> String {
    serde_json::json!({
        "error": { "kind": kind, "message": message.to_string() }
    })
    .to_string()
}

/// Builds a fresh overlapping scene pair and returns the scene document as
/// JSON. Deterministic per seed; `shared_count` must be 4, 5, or 6.
#[wasm_bindgen]
pub fn scene_json(seed: u64, shared_count: u32) -> String {
    match generate_scene_pair(seed, shared_count as usize) {
        Ok(pair) => serde_json::to_string(&pair)
            .unwrap_or_else(|e| error_json("serialize", e)),
        Err(e) => error_json("invalid-argument", e),
    }
}

/// Runs all 24 canonical relation tests against a selection inside one view
/// of a scene document. `subjects` and `objects` are JSON arrays of entity
/// ids; `no_object` marks an expression with no object group. Returns
/// `{"rows":[{"relation","category","satisfy","valid"},...]}`.
#[wasm_bindgen]
pub fn relation_report(
    scene: &str,
    player: &str,
    subjects: &str,
    objects: &str,
    no_object: bool,
) -> String {
    match relation_report_inner(scene, player, subjects, objects, no_object) {
        Ok(report) => report,
        Err(message) => message,
    }
}

fn relation_report_inner(
    scene: &str,
    player: &str,
    subjects: &str,
    objects: &str,
    no_object: bool,
) -> Result<String, String> {
    let pair: ScenePair =
        serde_json::from_str(scene).map_err(|e| error_json("parse", e))?;
    let player: Player = player
        .parse()
        .map_err(|e| error_json("invalid-argument", e))?;
    let view = pair.view(player);
    let subject_ids = parse_id_set(subjects)?;
    let object_ids = parse_id_set(objects)?;
    if subject_ids.is_empty() {
        return Err(error_json("invalid-argument", "subjects must be non-empty"));
    }
    let context = RelationContext {
        subjects: view
            .resolve(&subject_ids)
            .map_err(|e| error_json("invalid-argument", e))?,
        objects: view
            .resolve(&object_ids)
            .map_err(|e| error_json("invalid-argument", e))?,
        no_object,
        view_entities: view.entities.clone(),
    };
    let rows: Vec<serde_json::Value> = CanonicalRelation::ALL
        .into_iter()
        .map(|relation| {
            let result = evaluate(relation, &context);
            serde_json::json!({
                "relation": relation.to_string(),
                "category": relation.category().label(),
                "satisfy": result.satisfy,
                "valid": result.valid,
            })
        })
        .collect();
    Ok(serde_json::json!({ "rows": rows }).to_string())
}

/// Decodes a seven-score vector against entity ids under both rules:
/// threshold at 0.5 and top-k. Returns
/// `{"threshold":[...],"topk":[...],"count":n}` where `count` is the
/// rounded score sum used when no explicit count is available.
#[wasm_bindgen]
pub fn decode_report(scores: &str, entity_ids: &str, k: u32) -> String {
    match decode_report_inner(scores, entity_ids, k) {
        Ok(report) => report,
        Err(message) => message,
    }
}

fn decode_report_inner(scores: &str, entity_ids: &str, k: u32) -> Result<String, String> {
    let scores: Vec<f64> =
        serde_json::from_str(scores).map_err(|e| error_json("parse", e))?;
    let ids: Vec<EntityId> =
        serde_json::from_str(entity_ids).map_err(|e| error_json("parse", e))?;
    let threshold = threshold_predict(&scores, &ids)
        .map_err(|e| error_json("invalid-argument", e))?;
    let topk = topk_predict(&scores, &ids, k as usize)
        .map_err(|e| error_json("invalid-argument", e))?;
    Ok(serde_json::json!({
        "threshold": threshold,
        "topk": topk,
        "count": heuristic_count(&scores),
    })
    .to_string())
}

fn parse_id_set(ids: &str) -> Result<BTreeSet<EntityId>, String> {
    serde_json::from_str(ids).map_err(|e| error_json("parse", e))
}
