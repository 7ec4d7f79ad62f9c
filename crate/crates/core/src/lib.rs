//! Fixed-basis eavesdropping on qubit strings encoded in mutually unbiased
//! bases: Eve's information gain, Bob's conjugate-basis disturbance, and the
//! entropic inequality relating them.
//!
//! The modules build on each other bottom-up:
//!
//! * [`linalg`]: dense complex matrices, Jacobi eigensolver, partial trace,
//!   entropies, and the Hadamard change of basis.
//! * [`attack`]: Eve's interaction as a Kraus-vector table, its conjugate
//!   rewriting, and the XOR error distribution Bob sees.
//! * [`symmetrize`]: the XOR-symmetrized attack, its purifications and the
//!   σ state whose spectrum equals the error distribution.
//! * [`bounds`]: Holevo χ, measured mutual information, accessible
//!   information brackets, and the audit report.
//! * [`zoo`]: built-in and seeded random attacks.
//! * [`harness`]: JSON scenario and campaign configs, CSV/JSON reports.

pub mod attack;
pub mod bounds;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod rng;
pub mod symmetrize;
pub mod zoo;

pub use attack::{AttackChannel, Basis, ErrorDistribution};
pub use bounds::{audit_attack, compute_report, BoundsReport, Ensemble, Povm};
pub use error::{Error, Result};
pub use symmetrize::{symmetrize, PurificationSet, SigmaAnalysis, SymmetrizedChannel};
pub use zoo::{make_attack, random_attack, AttackKind, AttackSpec};
