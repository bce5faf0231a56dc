//! Controllability categorization for Boolean control networks.
//!
//! Given a BCN in algebraic form, every ordered state pair is classified by
//! whether its sets of reachable and unreachable step counts are finite:
//! unreachable, transient, primitive or imprimitive. The graph-theoretic
//! classifier in [`categorizer`] is paired with a brute-force Boolean power
//! oracle in [`oracle`].
//!
//! ```
//! use bcncat_core::{Analysis, Bcn, CategorizeOptions, Category, categorize_all};
//!
//! let bcn = Bcn::from_delta(1, 1, vec![1, 2, 2, 1]).unwrap();
//! let ctx = Analysis::from_bcn(&bcn);
//! let c = categorize_all(&ctx, CategorizeOptions::default());
//! assert_eq!(c.get(1, 0), Category::Primitive);
//! ```

pub mod algebra;
pub mod bitmatrix;
pub mod categorizer;
pub mod digraph;
pub mod error;
pub mod oracle;

pub use algebra::{build_l, compute_m, stp, Bcn, DenseMatrix, LogicalMatrix, TruthTableSystem};
pub use bitmatrix::{bool_pow, compute_f, BoolMatrix};
pub use categorizer::{
    categorize_all, categorize_pair, condensation_category_matrix, enumerate_condensation_paths,
    eta_for_path, residues_for_path, Analysis, CategorizeOptions, Category, CategoryMatrix,
    PairAnalysis, PathAnalysis, ResidueSet,
};
pub use digraph::{
    build_digraph, condense, frobenius_normal_form, is_irreducible, is_primitive, loop_number,
    primitivity, scc_decompose, Condensation, FrobeniusForm, Primitivity, SccDecomposition,
    SccType, TransitionDigraph,
};
pub use error::{Error, Result};
pub use oracle::{
    classify_by_powers, frobenius_schur_index, k_fixed_time_controllable, power_trace,
    power_trace_capped, time_step_sets, PowerTrace, TimeStepSets, DEFAULT_ORACLE_CAP,
};
