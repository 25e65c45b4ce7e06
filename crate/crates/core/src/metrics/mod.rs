//! Evaluation and analysis computations: resolution accuracy, annotator
//! agreement, satisfy/valid aggregation tables, stratified analyses,
//! attribute distributions and rotation splits.

pub mod agreement;
pub mod distribution;
pub mod resolution;
pub mod split;
pub mod tables;

pub use agreement::{cohen_kappa, token_agreement, token_labels, AgreementReport, TokenAgreementMode};
pub use distribution::{distribution_distance, referent_distribution, Histogram};
pub use resolution::{entity_accuracy, exact_match};
pub use split::{rotation_split, stable_bin, SplitSets};
pub use tables::{
    absolute_difference_table, ignorable_object, satisfy_valid_table, AbsDiffRow, AnalysisTable,
    CaseFactors, CaseRecord, GroupKey, Grouping, TableRow, ValueClass,
};
