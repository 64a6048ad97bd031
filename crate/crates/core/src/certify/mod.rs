//! Certification of the local rank hypothesis for all in-scope primes at once:
//! reduce `x^{2m} g_{d,n} f_n` with κ symbolic, extract an element of the ideal of
//! maximal minors, strip allowed factors and record a re-checkable certificate.

pub mod cert;
mod dec;
pub mod fold;
pub mod minors;
pub mod modular;
pub mod plan;
pub mod strip;

pub use cert::{canonical_json, certify, certify_matrix, matrix_fingerprint, recheck, spot_check, Certificate, Diagnostics, MinorRecord, Timing, Verdict};
pub use fold::{fold_minors, FoldStep, Folded};
pub use minors::{minor_candidates, probe, rank_profile, Probe};
pub use modular::{det_poly, word_primes};
pub use plan::{build_column_at, build_columns, build_columns_until, column_poly, plan, table_bounds, BuiltMatrix, ColumnPlan, ColumnSpec, Overrides, SkipEntry};
pub use strip::{strip_factors, target_poly, verdict_holds, ResidualPrime, Stripped};
