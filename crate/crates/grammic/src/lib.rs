//! Computational algebra for the plactic and grammic monoids.
//!
//! Words over an ordered alphabet build Young tableaux by Schensted
//! insertion; discarding the bumped letters instead yields an action of the
//! free monoid on nondecreasing rows, viewed as vectors in N^k. This crate
//! provides the canonical forms, the induced equivalences and their
//! deciders, a ground string-rewriting engine with derivation certificates,
//! and a brute-force harness that enumerates and compares congruence
//! classes at desk scale.

pub mod action;
pub mod error;
pub mod explore;
pub mod rewrite;
pub mod tableau;
pub mod three_letter;
pub mod words;

pub use action::{
    affine_tail, bottom_row, grammic_eq_bounded, grid_points, nonvanishing_threshold,
    quick_inequivalent, Fingerprint, GrammicOutcome, GrammicWitness, RowVector,
};
pub use error::{Error, Result};
pub use explore::{
    compare_partitions, conjecture4, enumerate_classes, projection_scan, ClassPartition,
    ConjectureReport, PartitionComparison, ProjectionReport, Relation,
};
pub use rewrite::{
    derivation, min_extra_derivation, min_grammic_rule_count, neighbors, rewrite_eq, Derivation,
    DerivationStep, Direction, RewriteRule, Rule4Variant, RuleKind, RuleSet, SearchLimits,
};
pub use tableau::{
    build_tableau, build_tableau_by_columns, column_insert, column_normal_form, plactic_eq,
    row_insert, row_normal_form, Column, Row, YoungTableau,
};
pub use three_letter::{class_3_multiplicity, extract_params, grammic_eq3, TableauParams};
pub use words::{
    erase, parikh, project, words_of_length, Alphabet, ParikhVector, Word, WordSpace,
};
