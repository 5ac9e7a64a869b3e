//! Zero-way quantum deficit for two-qubit states.
//!
//! The deficit is the smallest entropy increase produced by completely
//! dephasing both qubits in some product basis:
//!
//! ```text
//! Δ∅(ρ) = min over (U_A, U_B) of H(diag(U_A⊗U_B ρ U_A†⊗U_B†)) − S(ρ)
//! ```
//!
//! [`optimizer`] performs that minimization, [`info`] provides the entropic
//! quantities it is compared against, [`families`] builds the named state
//! families, and [`analytic`] holds closed-form results for the `ρ_a` and
//! `σ_{a,t}` families used to cross-check the numerics.

pub mod analytic;
pub mod error;
pub mod families;
pub mod info;
pub mod optimizer;
pub mod qmat;

pub use error::{Error, Result};
pub use families::FamilySpec;
pub use info::{InfoSummary, ProbDist};
pub use optimizer::{deficit_zero_way, BasisPair, DeficitResult, OptimizerConfig};
pub use qmat::{Complex64, DensityMatrix, Mat2, Mat4, QubitUnitary, Subsystem, UnitaryAngles};
