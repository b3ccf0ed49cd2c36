//! Independent numerical oracle for `beta` and the per-formula audit of the
//! printed closed forms against it.

pub mod audit;
pub mod oracle;
pub mod report;

pub use audit::{audit, registry, registry_for, standard_grid, FormulaId, DEFAULT_SAMPLES};
pub use oracle::{
    darboux_residual, frenet_residual, oracle, oracle_frenet, oracle_sphere_darboux, OracleDarboux, OracleFrenet,
    OracleInvariants,
};
pub use report::{FormulaReport, Sample, Verdict, VerificationReport};
