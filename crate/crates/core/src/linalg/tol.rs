//! Numerical tolerances shared across the crate.

/// Hermiticity check on inputs.
pub const HERM: f64 = 1e-9;
/// Unit-trace check on density matrices.
pub const TRACE: f64 = 1e-9;
/// Eigenvalues down to -PSD count as zero.
pub const PSD: f64 = 1e-10;
/// Eigendecomposition reconstruction and orthonormality.
pub const EIG: f64 = 1e-10;
/// Jacobi stops once the off-diagonal Frobenius mass falls below this
/// fraction of max(1, ‖A‖_F).
pub const JACOBI_OFF: f64 = 1e-14;
/// Kraus-vector unitarity residual.
pub const UNIT: f64 = 1e-9;
/// Distribution sums.
pub const DIST_SUM: f64 = 1e-9;
/// POVM completeness.
pub const POVM_SUM: f64 = 1e-8;
/// Inverse square roots drop eigenvalues below this.
pub const SUPPORT: f64 = 1e-12;
/// Slack allowed on the information-disturbance inequalities.
pub const THEOREM: f64 = 1e-9;

/// Largest supported qubit count for channels and transforms.
pub const N_MAX: usize = 4;
/// Largest joint dimension `eve_dim · 2^n` for random attacks.
pub const MAX_JOINT_DIM: usize = 512;
