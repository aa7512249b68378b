//! Perfect colorings of infinite multipath graphs.
//!
//! A multipath is an infinite sequence of `n`-vertex blocks (independent
//! sets or cliques) in which consecutive blocks are completely joined. A
//! vertex coloring is perfect when the number of `j`-colored neighbors of an
//! `i`-colored vertex depends only on the pair `(i, j)`; the counts form the
//! parameter matrix of the coloring. Because neighborhoods only see block
//! membership, periodic colorings are captured exactly by periodic sequences
//! of per-block color-count profiles, which is the representation used
//! throughout.
//!
//! The crate provides:
//! - [`multipath`]: families, periodic colorings, parameter matrices,
//!   verification, and canonical forms;
//! - [`finite`]: finite graphs, perfect-coloring checks, and lexicographic
//!   products for cross-validation on cycles;
//! - [`equivalence`]: color equivalence, gluing, and reducedness;
//! - [`constructions`]: the coloring series, lifts, disjunctive products,
//!   semicoloring conjugation, and the propagation engine;
//! - [`enumeration`]: brute-force and theorem-driven catalogs, the
//!   classifier, and catalog diffing.

pub mod constructions;
pub mod enumeration;
pub mod equivalence;
pub mod finite;
pub mod multipath;

pub use constructions::{
    conjugate_semicolorings, disjunctive_multipath, lift_block_monochrome, matched_check,
    propagate, series_cyclic, series_mirror, three_periodic_complete, ConjugationError,
    ConstructionError, ContradictionReason, MirrorType, Parity, PropagateOutcome, Semicoloring,
};
pub use enumeration::{
    brute_force_enumerate, brute_force_enumerate_jobs, catalog_diff, classify, series_within,
    summary_csv, theorem_enumerate, Bounds, Catalog, ClassLabel, ClassifyError, ColoringClass,
    EnumerationError, Evidence, SearchBudget,
};
pub use equivalence::{
    equivalence_partition, equivalent_colors_matrix, equivalent_colors_semantic, glue, is_reduced,
    ColoredGraph, ColoredStructure, EquivalenceError,
};
pub use finite::{
    cycle_product_coloring, disjunctive_finite, lexicographic_product, verify_perfect_finite,
    DisjunctiveError, EdgeListError, FiniteGraph, FiniteNotPerfect, GraphError, VertexColoring,
};
pub use multipath::{
    BlockKind, BlockProfile, ColorAbsent, ColoringError, Family, NotPerfect, NotSquare,
    ParameterMatrix, PeriodicColoring,
};
