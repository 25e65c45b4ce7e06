//! Aggregation tables over relation test cases: satisfy/valid rates by
//! grouping, linguistic-factor classification and the comparative
//! absolute-difference summary.

use serde::{Deserialize, Serialize};

use crate::annotation::{CanonicalRelation, RelationCategory, Strength};
use crate::error::{Error, Result};
use crate::ids::ExpressionId;
use crate::relations::{evaluate, RelationContext, TestResult};
use crate::scene::Entity;

/// Linguistic-factor flags for one case, per-expression structure that the
/// stratified analysis groups on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFactors {
    /// Some subject markable sits in a different utterance than the
    /// expression.
    pub inter_utterance_subject: bool,
    /// Some object markable sits in a different utterance.
    pub inter_utterance_object: bool,
    /// The expression was annotated as having no object argument.
    pub no_object: bool,
    /// The expression actually carries object markables.
    pub has_objects: bool,
    /// Whether dropping the annotated objects still satisfies the relation
    /// on gold referents; `None` when the relation has no object-free form.
    pub ignorable: Option<bool>,
}

/// One evaluated relation instance, carrying everything the analysis tables
/// group on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub dialogue_id: String,
    pub expression_id: ExpressionId,
    pub relation: CanonicalRelation,
    pub strength: Strength,
    pub factors: CaseFactors,
    pub result: TestResult,
    /// For the eight pairwise comparatives: |mean(S.v) - mean(O.v)|,
    /// populated only on valid cases with both argument sets nonempty.
    pub abs_difference: Option<(ValueClass, f64)>,
}

/// Attribute family for the absolute-difference summary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueClass {
    XyValue,
    Color,
    Size,
}

impl ValueClass {
    pub const ALL: [ValueClass; 3] = [ValueClass::XyValue, ValueClass::Color, ValueClass::Size];

    pub fn label(&self) -> &'static str {
        match self {
            ValueClass::XyValue => "xy-value",
            ValueClass::Color => "color",
            ValueClass::Size => "size",
        }
    }
}

/// How to group cases into table rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grouping {
    Relation,
    Category,
    Strength,
    Factor,
}

impl std::str::FromStr for Grouping {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relation" => Ok(Grouping::Relation),
            "category" => Ok(Grouping::Category),
            "strength" => Ok(Grouping::Strength),
            "factor" => Ok(Grouping::Factor),
            other => Err(Error::invalid(format!("unknown grouping {other:?}"))),
        }
    }
}

/// Linguistic-factor classes. A case can fall into several at once, so the
/// factor table rows overlap; `All` counts every case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    All,
    InterUtteranceSubject,
    InterUtteranceObject,
    NoObject,
    IgnorableObject,
    UnignorableObject,
}

impl Factor {
    pub const ALL: [Factor; 6] = [
        Factor::All,
        Factor::InterUtteranceSubject,
        Factor::InterUtteranceObject,
        Factor::NoObject,
        Factor::IgnorableObject,
        Factor::UnignorableObject,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Factor::All => "all",
            Factor::InterUtteranceSubject => "inter-utterance-subject",
            Factor::InterUtteranceObject => "inter-utterance-object",
            Factor::NoObject => "no-object",
            Factor::IgnorableObject => "ignorable-object",
            Factor::UnignorableObject => "unignorable-object",
        }
    }

    fn matches(&self, case: &CaseRecord) -> bool {
        let f = &case.factors;
        match self {
            Factor::All => true,
            Factor::InterUtteranceSubject => f.inter_utterance_subject,
            Factor::InterUtteranceObject => f.inter_utterance_object,
            Factor::NoObject => f.no_object,
            // Object cases split into ignorable and the rest; a relation
            // without an object-free form can never ignore its objects.
            Factor::IgnorableObject => f.has_objects && f.ignorable == Some(true),
            Factor::UnignorableObject => f.has_objects && f.ignorable != Some(true),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GroupKey {
    Relation(CanonicalRelation),
    Category(RelationCategory),
    Strength(Strength),
    Factor(Factor),
}

impl GroupKey {
    pub fn label(&self) -> &'static str {
        match self {
            GroupKey::Relation(r) => r.name(),
            GroupKey::Category(c) => c.label(),
            GroupKey::Strength(s) => s.label(),
            GroupKey::Factor(f) => f.label(),
        }
    }

    fn matches(&self, case: &CaseRecord) -> bool {
        match self {
            GroupKey::Relation(r) => case.relation == *r,
            GroupKey::Category(c) => case.relation.category() == *c,
            GroupKey::Strength(s) => case.strength == *s,
            GroupKey::Factor(f) => f.matches(case),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub key: GroupKey,
    pub case_count: usize,
    /// Percentage of all cases in the row that satisfy, in [0, 100].
    pub satisfy_rate: f64,
    /// Percentage of all cases in the row that are valid, in [0, 100].
    pub valid_rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisTable {
    pub grouping: Grouping,
    pub rows: Vec<TableRow>,
}

/// Every key a grouping can produce, in fixed emission order. Rows exist
/// even when no case falls into them, so table shapes are stable.
fn keys_for(grouping: Grouping) -> Vec<GroupKey> {
    match grouping {
        Grouping::Relation => CanonicalRelation::ALL
            .into_iter()
            .map(GroupKey::Relation)
            .collect(),
        Grouping::Category => RelationCategory::ALL
            .into_iter()
            .map(GroupKey::Category)
            .collect(),
        Grouping::Strength => Strength::ALL.into_iter().map(GroupKey::Strength).collect(),
        Grouping::Factor => Factor::ALL.into_iter().map(GroupKey::Factor).collect(),
    }
}

/// Aggregates satisfy/valid rates per group. Rates are percentages of all
/// cases in the group, valid or not.
pub fn satisfy_valid_table(cases: &[CaseRecord], grouping: Grouping) -> AnalysisTable {
    let rows = keys_for(grouping)
        .into_iter()
        .map(|key| {
            let group: Vec<&CaseRecord> =
                cases.iter().filter(|c| key.matches(c)).collect();
            let count = group.len();
            let rate = |pred: fn(&TestResult) -> bool| {
                if count == 0 {
                    0.0
                } else {
                    group.iter().filter(|c| pred(&c.result)).count() as f64 * 100.0
                        / count as f64
                }
            };
            TableRow {
                satisfy_rate: rate(|r| r.satisfy),
                valid_rate: rate(|r| r.valid),
                case_count: count,
                key,
            }
        })
        .collect();
    AnalysisTable { grouping, rows }
}

/// Would the relation still hold with the annotated objects dropped?
///
/// Re-runs the test on the gold subjects in object-free form. Returns `None`
/// for the pairwise comparatives, which have no object-free reading.
pub fn ignorable_object(
    relation: CanonicalRelation,
    gold_subjects: &[Entity],
    view_entities: &[Entity],
) -> Option<bool> {
    use CanonicalRelation::*;
    if matches!(relation, Lighter | Darker | Smaller | Larger) {
        return None;
    }
    let ctx = RelationContext {
        subjects: gold_subjects.to_vec(),
        objects: Vec::new(),
        no_object: true,
        view_entities: view_entities.to_vec(),
    };
    Some(evaluate(relation, &ctx).satisfy)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbsDiffRow {
    pub value: ValueClass,
    pub strength: Strength,
    /// Number of valid comparative cases entering the mean.
    pub count: usize,
    /// Mean absolute difference of subject and object attribute means;
    /// `None` when the cell is empty.
    pub mean_abs_difference: Option<f64>,
}

/// Summarizes how far apart subject and object means sit for the pairwise
/// comparatives, stratified by modification strength. Only valid cases with
/// a recorded difference contribute.
pub fn absolute_difference_table(cases: &[CaseRecord]) -> Vec<AbsDiffRow> {
    let mut rows = Vec::new();
    for value in ValueClass::ALL {
        for strength in Strength::ALL {
            let diffs: Vec<f64> = cases
                .iter()
                .filter(|c| c.result.valid && c.strength == strength)
                .filter_map(|c| match c.abs_difference {
                    Some((v, d)) if v == value => Some(d),
                    _ => None,
                })
                .collect();
            let count = diffs.len();
            rows.push(AbsDiffRow {
                value,
                strength,
                count,
                mean_abs_difference: (count > 0)
                    .then(|| diffs.iter().sum::<f64>() / count as f64),
            });
        }
    }
    rows
}

/// The value class a comparative relation contributes to, if any.
pub fn comparative_value_class(relation: CanonicalRelation) -> Option<ValueClass> {
    use CanonicalRelation::*;
    match relation {
        Left | Right | Above | Below => Some(ValueClass::XyValue),
        Lighter | Darker => Some(ValueClass::Color),
        Smaller | Larger => Some(ValueClass::Size),
        _ => None,
    }
}
