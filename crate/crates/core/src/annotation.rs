//! Annotation data model: dialogues, markables, spatial expressions,
//! modifiers, canonical relations and the document validator.
//!
//! Spatial expressions are treated as predicates whose arguments are
//! markables, split into subject and object roles. Arguments may live in
//! earlier utterances (argument ellipsis) but never in later ones.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ids::{EntityId, ExpressionId, MarkableId, ModifierId};
use crate::scene::{Player, ScenePair, VIEW_SIZE};

/// A token span inside a single utterance: either a half-open `[start, end)`
/// index pair or an explicit index set for non-contiguous spans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TokenSpan {
    Range(usize, usize),
    Indices { indices: BTreeSet<usize> },
}

impl TokenSpan {
    pub fn range(start: usize, end: usize) -> Self {
        TokenSpan::Range(start, end)
    }

    pub fn indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        TokenSpan::Indices {
            indices: indices.into_iter().collect(),
        }
    }

    pub fn positions(&self) -> Vec<usize> {
        match self {
            TokenSpan::Range(start, end) => (*start..*end).collect(),
            TokenSpan::Indices { indices } => indices.iter().copied().collect(),
        }
    }

    /// First token index covered, if the span is non-empty.
    pub fn start(&self) -> Option<usize> {
        match self {
            TokenSpan::Range(start, end) => (start < end).then_some(*start),
            TokenSpan::Indices { indices } => indices.first().copied(),
        }
    }

    /// One past the last token index covered.
    pub fn max_end(&self) -> Option<usize> {
        match self {
            TokenSpan::Range(start, end) => (start < end).then_some(*end),
            TokenSpan::Indices { indices } => indices.last().map(|i| i + 1),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.start().is_none()
    }
}

/// The 24 canonical relations, in five categories.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalRelation {
    Left,
    Right,
    Above,
    Below,
    Horizontal,
    Vertical,
    Diagonal,
    Near,
    Far,
    Alone,
    Interior,
    Exterior,
    Lighter,
    Lightest,
    Darker,
    Darkest,
    SameColor,
    DifferentColor,
    Smaller,
    Smallest,
    Larger,
    Largest,
    SameSize,
    DifferentSize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationCategory {
    Direction,
    Proximity,
    Region,
    ColorComparison,
    SizeComparison,
}

impl RelationCategory {
    pub const ALL: [RelationCategory; 5] = [
        RelationCategory::Direction,
        RelationCategory::Proximity,
        RelationCategory::Region,
        RelationCategory::ColorComparison,
        RelationCategory::SizeComparison,
    ];

    /// Short label used in emitted tables.
    pub fn label(&self) -> &'static str {
        match self {
            RelationCategory::Direction => "direction",
            RelationCategory::Proximity => "proximity",
            RelationCategory::Region => "region",
            RelationCategory::ColorComparison => "color",
            RelationCategory::SizeComparison => "size",
        }
    }
}

impl CanonicalRelation {
    pub const ALL: [CanonicalRelation; 24] = [
        CanonicalRelation::Left,
        CanonicalRelation::Right,
        CanonicalRelation::Above,
        CanonicalRelation::Below,
        CanonicalRelation::Horizontal,
        CanonicalRelation::Vertical,
        CanonicalRelation::Diagonal,
        CanonicalRelation::Near,
        CanonicalRelation::Far,
        CanonicalRelation::Alone,
        CanonicalRelation::Interior,
        CanonicalRelation::Exterior,
        CanonicalRelation::Lighter,
        CanonicalRelation::Lightest,
        CanonicalRelation::Darker,
        CanonicalRelation::Darkest,
        CanonicalRelation::SameColor,
        CanonicalRelation::DifferentColor,
        CanonicalRelation::Smaller,
        CanonicalRelation::Smallest,
        CanonicalRelation::Larger,
        CanonicalRelation::Largest,
        CanonicalRelation::SameSize,
        CanonicalRelation::DifferentSize,
    ];

    pub fn category(&self) -> RelationCategory {
        use CanonicalRelation::*;
        match self {
            Left | Right | Above | Below | Horizontal | Vertical | Diagonal => {
                RelationCategory::Direction
            }
            Near | Far | Alone => RelationCategory::Proximity,
            Interior | Exterior => RelationCategory::Region,
            Lighter | Lightest | Darker | Darkest | SameColor | DifferentColor => {
                RelationCategory::ColorComparison
            }
            Smaller | Smallest | Larger | Largest | SameSize | DifferentSize => {
                RelationCategory::SizeComparison
            }
        }
    }

    /// The serialized snake_case name, e.g. `same_color`.
    pub fn name(&self) -> &'static str {
        use CanonicalRelation::*;
        match self {
            Left => "left",
            Right => "right",
            Above => "above",
            Below => "below",
            Horizontal => "horizontal",
            Vertical => "vertical",
            Diagonal => "diagonal",
            Near => "near",
            Far => "far",
            Alone => "alone",
            Interior => "interior",
            Exterior => "exterior",
            Lighter => "lighter",
            Lightest => "lightest",
            Darker => "darker",
            Darkest => "darkest",
            SameColor => "same_color",
            DifferentColor => "different_color",
            Smaller => "smaller",
            Smallest => "smallest",
            Larger => "larger",
            Largest => "largest",
            SameSize => "same_size",
            DifferentSize => "different_size",
        }
    }
}

impl std::fmt::Display for CanonicalRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CanonicalRelation {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        CanonicalRelation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| crate::error::Error::invalid(format!("unknown relation {s:?}")))
    }
}

/// The six modification types. Each modifier carries exactly one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModificationType {
    Subtlety,
    Extremity,
    Uncertainty,
    Certainty,
    Neutrality,
    Negation,
}

impl ModificationType {
    pub const ALL: [ModificationType; 6] = [
        ModificationType::Subtlety,
        ModificationType::Extremity,
        ModificationType::Uncertainty,
        ModificationType::Certainty,
        ModificationType::Neutrality,
        ModificationType::Negation,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ModificationType::Subtlety => "subtlety",
            ModificationType::Extremity => "extremity",
            ModificationType::Uncertainty => "uncertainty",
            ModificationType::Certainty => "certainty",
            ModificationType::Neutrality => "neutrality",
            ModificationType::Negation => "negation",
        }
    }
}

/// Modification strength classes used by the stratified analyses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    Strong,
    Neutral,
    Weak,
}

impl Strength {
    pub const ALL: [Strength; 3] = [Strength::Strong, Strength::Neutral, Strength::Weak];

    pub fn label(&self) -> &'static str {
        match self {
            Strength::Strong => "strong",
            Strength::Neutral => "neutral",
            Strength::Weak => "weak",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Utterance {
    pub index: usize,
    pub speaker: Player,
    pub tokens: Vec<String>,
}

/// A referring expression with its gold referents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Markable {
    pub id: MarkableId,
    pub utterance: usize,
    pub span: TokenSpan,
    #[serde(default)]
    pub referents: BTreeSet<EntityId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpressionKind {
    Attribute,
    Relation,
}

/// A spatial attribute or relation predicate over markable arguments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpatialExpression {
    pub id: ExpressionId,
    pub kind: ExpressionKind,
    pub utterance: usize,
    pub span: TokenSpan,
    #[serde(default)]
    pub subjects: Vec<MarkableId>,
    #[serde(default)]
    pub objects: Vec<MarkableId>,
    #[serde(default)]
    pub no_object: bool,
    #[serde(default)]
    pub unannotatable: bool,
    #[serde(default)]
    pub canonical: BTreeSet<CanonicalRelation>,
    #[serde(default)]
    pub modifiers: Vec<ModifierId>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModifierAnnotation {
    pub id: ModifierId,
    pub utterance: usize,
    pub span: TokenSpan,
    #[serde(rename = "type")]
    pub mod_type: ModificationType,
    pub modificand: ExpressionId,
}

/// One dialogue with its complete annotation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DialogueDocument {
    pub dialogue_id: String,
    pub scene_id: String,
    pub utterances: Vec<Utterance>,
    #[serde(default)]
    pub markables: Vec<Markable>,
    #[serde(default)]
    pub expressions: Vec<SpatialExpression>,
    #[serde(default)]
    pub modifiers: Vec<ModifierAnnotation>,
}

impl DialogueDocument {
    pub fn utterance(&self, index: usize) -> Option<&Utterance> {
        self.utterances.iter().find(|u| u.index == index)
    }

    pub fn speaker_of(&self, utterance: usize) -> Option<Player> {
        self.utterance(utterance).map(|u| u.speaker)
    }

    pub fn markable(&self, id: &MarkableId) -> Option<&Markable> {
        self.markables.iter().find(|m| &m.id == id)
    }

    pub fn modifier(&self, id: &ModifierId) -> Option<&ModifierAnnotation> {
        self.modifiers.iter().find(|m| &m.id == id)
    }

    /// Modifiers attached to an expression, resolved through its id list.
    pub fn modifiers_of<'a>(
        &'a self,
        expr: &'a SpatialExpression,
    ) -> impl Iterator<Item = &'a ModifierAnnotation> {
        expr.modifiers.iter().filter_map(|id| self.modifier(id))
    }
}

/// A single invariant violation found by [`validate_document`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Stable rule identifier, e.g. `dangling-subject`.
    pub rule: String,
    /// Where the violation was found, e.g. `expression x3`.
    pub location: String,
    pub detail: String,
}

impl Violation {
    fn new(rule: &str, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            rule: rule.to_owned(),
            location: location.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

/// Checks every document invariant, collecting all violations instead of
/// stopping at the first. Scene-dependent checks (referents within the
/// speaker's view) run only when the scene pair is supplied.
pub fn validate_document(doc: &DialogueDocument, scene: Option<&ScenePair>) -> ValidationReport {
    let mut v = Vec::new();

    for (i, utt) in doc.utterances.iter().enumerate() {
        if utt.index != i {
            v.push(Violation::new(
                "utterance-index-gap",
                format!("utterance {}", utt.index),
                format!("expected index {i}"),
            ));
        }
    }

    let utterance_len =
        |index: usize| doc.utterance(index).map(|u| u.tokens.len());

    let check_span = |span: &TokenSpan, utterance: usize, location: &str, v: &mut Vec<Violation>| {
        match utterance_len(utterance) {
            None => v.push(Violation::new(
                "dangling-utterance",
                location,
                format!("utterance {utterance} does not exist"),
            )),
            Some(len) => {
                if span.is_empty() {
                    v.push(Violation::new("empty-span", location, "span covers no tokens"));
                } else if span.max_end().unwrap_or(0) > len {
                    v.push(Violation::new(
                        "span-outside-utterance",
                        location,
                        format!(
                            "span ends at {} but utterance {utterance} has {len} tokens",
                            span.max_end().unwrap_or(0)
                        ),
                    ));
                }
            }
        }
    };

    let mut seen = BTreeSet::new();
    for m in &doc.markables {
        let loc = format!("markable {}", m.id);
        if !seen.insert(m.id.as_str().to_owned()) {
            v.push(Violation::new("duplicate-id", &loc, "markable id reused"));
        }
        check_span(&m.span, m.utterance, &loc, &mut v);
        if m.referents.len() > VIEW_SIZE {
            v.push(Violation::new(
                "too-many-referents",
                &loc,
                format!("{} referents, view holds {VIEW_SIZE}", m.referents.len()),
            ));
        }
        if let (Some(scene), Some(speaker)) = (scene, doc.speaker_of(m.utterance)) {
            let view_ids = scene.view(speaker).entity_ids();
            for r in &m.referents {
                if !view_ids.contains(r) {
                    v.push(Violation::new(
                        "referent-outside-view",
                        &loc,
                        format!("referent {r} is not visible to speaker {speaker}"),
                    ));
                }
            }
        }
    }

    let mut seen = BTreeSet::new();
    for e in &doc.expressions {
        let loc = format!("expression {}", e.id);
        if !seen.insert(e.id.as_str().to_owned()) {
            v.push(Violation::new("duplicate-id", &loc, "expression id reused"));
        }
        check_span(&e.span, e.utterance, &loc, &mut v);
        if e.no_object && !e.objects.is_empty() {
            v.push(Violation::new(
                "object-with-no-object-flag",
                &loc,
                "no_object is set but objects are annotated",
            ));
        }
        if e.unannotatable && (!e.subjects.is_empty() || !e.objects.is_empty()) {
            v.push(Violation::new(
                "unannotatable-with-arguments",
                &loc,
                "unannotatable expressions must carry no arguments",
            ));
        }
        for (role, rule, ids) in [
            ("subject", "dangling-subject", &e.subjects),
            ("object", "dangling-object", &e.objects),
        ] {
            for id in ids.iter() {
                match doc.markable(id) {
                    None => v.push(Violation::new(
                        rule,
                        &loc,
                        format!("{role} markable {id} does not exist"),
                    )),
                    Some(m) => {
                        if m.utterance > e.utterance {
                            v.push(Violation::new(
                                "argument-in-later-utterance",
                                &loc,
                                format!(
                                    "{role} {id} is in utterance {} after the expression's {}",
                                    m.utterance, e.utterance
                                ),
                            ));
                        }
                    }
                }
            }
        }
        for id in &e.modifiers {
            match doc.modifier(id) {
                None => v.push(Violation::new(
                    "dangling-modifier-ref",
                    &loc,
                    format!("modifier {id} does not exist"),
                )),
                Some(m) if m.modificand != e.id => v.push(Violation::new(
                    "modifier-link-mismatch",
                    &loc,
                    format!("modifier {id} names a different modificand"),
                )),
                Some(_) => {}
            }
        }
    }

    let expression_ids: BTreeSet<&str> =
        doc.expressions.iter().map(|e| e.id.as_str()).collect();
    let mut seen = BTreeSet::new();
    for m in &doc.modifiers {
        let loc = format!("modifier {}", m.id);
        if !seen.insert(m.id.as_str().to_owned()) {
            v.push(Violation::new("duplicate-id", &loc, "modifier id reused"));
        }
        check_span(&m.span, m.utterance, &loc, &mut v);
        if !expression_ids.contains(m.modificand.as_str()) {
            v.push(Violation::new(
                "dangling-modificand",
                &loc,
                format!("modificand {} does not exist", m.modificand),
            ));
        }
    }

    ValidationReport { violations: v }
}

/// Keeps the relation expressions that the canonical relation tests can use:
/// annotatable, not negated, and with every argument markable uttered by the
/// expression's own speaker (so one player's observation covers them all).
pub fn filter_testable<'a>(doc: &'a DialogueDocument) -> Vec<&'a SpatialExpression> {
    doc.expressions
        .iter()
        .filter(|e| e.kind == ExpressionKind::Relation && !e.unannotatable)
        .filter(|e| {
            !doc.modifiers_of(e)
                .any(|m| m.mod_type == ModificationType::Negation)
        })
        .filter(|e| {
            let speaker = doc.speaker_of(e.utterance);
            speaker.is_some()
                && e.subjects.iter().chain(e.objects.iter()).all(|id| {
                    doc.markable(id)
                        .and_then(|m| doc.speaker_of(m.utterance))
                        == speaker
                })
        })
        .collect()
}

/// Classifies an expression's modification strength.
///
/// Extremity and certainty modifiers make it strong, subtlety and
/// uncertainty weak; anything else (neutrality, or no modifier at all) is
/// neutral. When both a strong- and a weak-class modifier attach, the one
/// whose span starts nearest the expression's first token decides, and a
/// distance tie falls to weak.
pub fn modification_strength(expr: &SpatialExpression, doc: &DialogueDocument) -> Strength {
    let class_of = |t: ModificationType| match t {
        ModificationType::Extremity | ModificationType::Certainty => Some(Strength::Strong),
        ModificationType::Subtlety | ModificationType::Uncertainty => Some(Strength::Weak),
        ModificationType::Neutrality | ModificationType::Negation => None,
    };

    let expr_start = expr.span.start().unwrap_or(0);
    let mut best: Option<(usize, usize, Strength)> = None;
    for m in doc.modifiers_of(expr) {
        let Some(class) = class_of(m.mod_type) else {
            continue;
        };
        let utt_distance = m.utterance.abs_diff(expr.utterance);
        let token_distance = m.span.start().unwrap_or(0).abs_diff(expr_start);
        let key = (utt_distance, token_distance, class);
        best = match best {
            None => Some(key),
            Some(cur) => {
                let closer = key.0 < cur.0
                    || (key.0 == cur.0 && key.1 < cur.1)
                    || (key.0 == cur.0 && key.1 == cur.1 && class == Strength::Weak);
                Some(if closer { key } else { cur })
            }
        };
    }
    best.map(|(_, _, s)| s).unwrap_or(Strength::Neutral)
}

/// Convenience map from utterance index to speaker.
pub fn speaker_map(doc: &DialogueDocument) -> BTreeMap<usize, Player> {
    doc.utterances.iter().map(|u| (u.index, u.speaker)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ids::MarkableId;

    fn sample_doc() -> DialogueDocument {
        DialogueDocument {
            dialogue_id: "d0".into(),
            scene_id: "scene-x".into(),
            utterances: vec![
                Utterance {
                    index: 0,
                    speaker: Player::A,
                    tokens: ["the", "dark", "dot", "is", "slightly", "left", "of", "the", "pair"]
                        .map(str::to_owned)
                        .to_vec(),
                },
                Utterance {
                    index: 1,
                    speaker: Player::B,
                    tokens: ["i", "see", "it"].map(str::to_owned).to_vec(),
                },
            ],
            markables: vec![
                Markable {
                    id: "m0".into(),
                    utterance: 0,
                    span: TokenSpan::range(0, 3),
                    referents: ["s0"].map(EntityId::from).into_iter().collect(),
                },
                Markable {
                    id: "m1".into(),
                    utterance: 0,
                    span: TokenSpan::range(7, 9),
                    referents: ["s1", "s2"].map(EntityId::from).into_iter().collect(),
                },
            ],
            expressions: vec![SpatialExpression {
                id: "x0".into(),
                kind: ExpressionKind::Relation,
                utterance: 0,
                span: TokenSpan::range(5, 6),
                subjects: vec!["m0".into()],
                objects: vec!["m1".into()],
                no_object: false,
                unannotatable: false,
                canonical: [CanonicalRelation::Left].into_iter().collect(),
                modifiers: vec!["n0".into()],
            }],
            modifiers: vec![ModifierAnnotation {
                id: "n0".into(),
                utterance: 0,
                span: TokenSpan::range(4, 5),
                mod_type: ModificationType::Subtlety,
                modificand: "x0".into(),
            }],
        }
    }

    #[test]
    fn well_formed_document_is_clean() {
        let report = validate_document(&sample_doc(), None);
        assert!(report.is_clean(), "{:?}", report.violations);
    }

    #[test]
    fn dangling_subject_is_reported() {
        let mut doc = sample_doc();
        doc.expressions[0].subjects = vec![MarkableId::from("missing")];
        let report = validate_document(&doc, None);
        assert!(report.has_rule("dangling-subject"));
    }

    #[test]
    fn bad_spans_and_links_are_reported() {
        let mut doc = sample_doc();
        doc.modifiers[0].span = TokenSpan::range(20, 22);
        doc.modifiers[0].modificand = "made-up".into();
        let report = validate_document(&doc, None);
        assert!(report.has_rule("span-outside-utterance"));
        assert!(report.has_rule("dangling-modificand"));
    }

    #[test]
    fn later_utterance_argument_is_reported() {
        let mut doc = sample_doc();
        doc.markables[1].utterance = 1;
        doc.markables[1].span = TokenSpan::range(0, 2);
        let report = validate_document(&doc, None);
        assert!(report.has_rule("argument-in-later-utterance"));
    }

    #[test]
    fn filter_drops_negated_expressions() {
        let mut doc = sample_doc();
        assert_eq!(filter_testable(&doc).len(), 1);
        doc.modifiers[0].mod_type = ModificationType::Negation;
        assert!(filter_testable(&doc).is_empty());
    }

    #[test]
    fn filter_drops_cross_speaker_arguments() {
        let mut doc = sample_doc();
        doc.markables[1].utterance = 1;
        doc.markables[1].span = TokenSpan::range(0, 2);
        // Argument now belongs to speaker B while the expression is A's.
        doc.expressions[0].utterance = 1;
        doc.expressions[0].span = TokenSpan::range(0, 1);
        assert!(filter_testable(&doc).is_empty());
    }

    #[test]
    fn filter_is_idempotent_subset() {
        let doc = sample_doc();
        let once: Vec<_> = filter_testable(&doc).iter().map(|e| e.id.clone()).collect();
        let again: Vec<_> = filter_testable(&doc).iter().map(|e| e.id.clone()).collect();
        assert_eq!(once, again);
        assert!(once.iter().all(|id| doc.expressions.iter().any(|e| &e.id == id)));
    }

    #[test]
    fn strength_classes() {
        let mut doc = sample_doc();
        assert_eq!(modification_strength(&doc.expressions[0], &doc), Strength::Weak);
        doc.modifiers[0].mod_type = ModificationType::Extremity;
        assert_eq!(modification_strength(&doc.expressions[0], &doc), Strength::Strong);
        doc.expressions[0].modifiers.clear();
        assert_eq!(modification_strength(&doc.expressions[0], &doc), Strength::Neutral);
    }

    #[test]
    fn strength_conflict_resolved_by_distance_then_weak() {
        let mut doc = sample_doc();
        // "slightly" at token 4 (weak) plus "very" far away at token 0 (strong).
        doc.modifiers.push(ModifierAnnotation {
            id: "n1".into(),
            utterance: 0,
            span: TokenSpan::range(0, 1),
            mod_type: ModificationType::Extremity,
            modificand: "x0".into(),
        });
        doc.expressions[0].modifiers.push("n1".into());
        assert_eq!(modification_strength(&doc.expressions[0], &doc), Strength::Weak);

        // Equal distance: weak still wins.
        doc.modifiers[1].span = TokenSpan::range(6, 7);
        assert_eq!(modification_strength(&doc.expressions[0], &doc), Strength::Weak);
    }

    #[test]
    fn token_span_round_trip() {
        let range = TokenSpan::range(2, 5);
        let json = serde_json::to_string(&range).unwrap();
        assert_eq!(json, "[2,5]");
        assert_eq!(serde_json::from_str::<TokenSpan>(&json).unwrap(), range);

        let sparse = TokenSpan::indices([1, 4, 7]);
        let json = serde_json::to_string(&sparse).unwrap();
        assert_eq!(json, r#"{"indices":[1,4,7]}"#);
        assert_eq!(serde_json::from_str::<TokenSpan>(&json).unwrap(), sparse);
    }
}
