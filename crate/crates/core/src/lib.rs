//! Spatial grounding toolkit for two-player circular-view reference games.
//!
//! The crate models paired 7-entity views, span-level dialogue annotations
//! with markables, spatial expressions and modifiers, and a battery of 24
//! canonical relation tests that check whether a set of referents is
//! geometrically and perceptually consistent with what was said about it.
//! On top sit referent decoders for model score files, agreement and
//! resolution metrics, stratified satisfy/valid analyses, and a synthetic
//! corpus generator whose gold annotations provably pass (or provably fail)
//! their own tests.
//!
//! Entry points:
//! - [`scene`]: entities, views, scene validation and generation.
//! - [`annotation`]: dialogue documents, testability filtering, modifier
//!   strength.
//! - [`relations`]: the 24 canonical tests over a [`relations::RelationContext`].
//! - [`referent`]: threshold and top-k decoding, count heuristics, score
//!   perturbation.
//! - [`metrics`]: accuracy, kappa, token agreement, stratified tables,
//!   attribute distributions and the rotation split.
//! - [`pipeline`]: corpus-level glue producing test cases and decoded
//!   referent sets.
//! - [`synth`]: fuzzing contexts and full corpus generation.

pub mod annotation;
pub mod error;
pub mod ids;
pub mod io;
pub mod lexicon;
pub mod metrics;
pub mod pipeline;
pub mod referent;
pub mod relations;
pub mod scene;
pub mod synth;

pub use annotation::{
    filter_testable, modification_strength, validate_document, CanonicalRelation,
    DialogueDocument, ExpressionKind, Markable, ModificationType, ModifierAnnotation,
    RelationCategory, SpatialExpression, Strength, TokenSpan, Utterance,
};
pub use error::{Error, Result};
pub use ids::{EntityId, ExpressionId, MarkableId, ModifierId};
pub use lexicon::Lexicon;
pub use relations::{evaluate, RelationContext, TestResult};
pub use scene::{Attribute, Entity, Player, ScenePair, View};
