//! Exact linear algebra over `GF(p)` and the rationals, built around one
//! fact: for square matrices over a field, `AB = I` implies `BA = I`.
//!
//! - [`field`]: scalars with exact equality.
//! - [`matrix`], [`text`]: dense matrices, the `1 + (n−1)` block split, and
//!   the matrix file format.
//! - [`elementary`]: row operations with explicit inverses.
//! - [`certify`]: kernel, rank, Gauss–Jordan, and replayable certificates
//!   that a one-sided inverse is two-sided.
//! - [`oracle`]: exhaustive and seeded randomized sweeps.
//! - [`shift`]: the shift operators, where the implication fails in
//!   infinite dimension.
//! - [`cli`]: the `twosided` command.

pub mod certify;
pub mod cli;
pub mod elementary;
pub mod error;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod rng;
pub mod shift;
pub mod text;

pub use certify::{
    left_inverse, prove_two_sided, rank, reduce_first_column, solve_homogeneous, verify_certificate,
    CertBase, CertLevel, Certificate, Inversion, SingularReport, Verdict,
};
pub use elementary::ElementaryOp;
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, Literal};
pub use matrix::{BlockParts, Matrix, Vector};
pub use oracle::{
    enumerate_matrices, exhaustive_dedekind_check, exhaustive_dedekind_check_parallel, random_dedekind_check,
    ExhaustReport, RandomInvertiblePairs,
};
pub use shift::{dedekind_counterexample_report, shift_apply, FinSuppVector, ShiftOp, ShiftReport};
