use super::eigen::hermitian_eigenvalues;
use super::matrix::{ComplexMatrix, StateVector, ZERO};
use super::tol;
use crate::error::{Error, Result};

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keep {
    Left,
    Right,
}

impl DensityMatrix {
    /// Validates hermiticity, trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermiticity_defect();
        if defect > tol::HERM {
            return Err(Error::NotHermitian { asymmetry: defect });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol::TRACE || trace.im.abs() > tol::TRACE {
            return Err(Error::NotADensityMatrix(format!("trace {trace}")));
        }
        let smallest = hermitian_eigenvalues(&matrix)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if smallest < -tol::PSD {
            return Err(Error::NotADensityMatrix(format!(
                "smallest eigenvalue {smallest:e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// For matrices positive by construction (sums of outer products) whose
    /// trace is guaranteed by an upstream invariant.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_hermitian(tol::HERM));
        Self { matrix }
    }

    pub fn pure(v: &StateVector) -> Result<Self> {
        if !v.is_normalized(tol::TRACE) {
            return Err(Error::NotADensityMatrix(format!(
                "state has squared norm {}",
                v.norm_sqr()
            )));
        }
        Ok(Self::from_trusted(ComplexMatrix::outer(v, v)))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_trusted(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// Σ_k w_k ρ_k; weights are assumed to be a distribution.
    pub fn mixture(weights: &[f64], states: &[DensityMatrix]) -> Result<Self> {
        let dim = states
            .first()
            .map(|s| s.dim())
            .ok_or_else(|| Error::DimensionMismatch("empty mixture".into()))?;
        if weights.len() != states.len() || states.iter().any(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch(
                "mixture components disagree".into(),
            ));
        }
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (&w, s) in weights.iter().zip(states) {
            acc = &acc + &s.matrix.scale_real(w);
        }
        Ok(Self::from_trusted(acc))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_trusted(self.matrix.kron(&other.matrix))
    }
}

/// Reduced state on one factor of a `dim_left ⊗ dim_right` bipartition.
pub fn partial_trace(
    rho: &DensityMatrix,
    dim_left: usize,
    dim_right: usize,
    keep: Keep,
) -> Result<DensityMatrix> {
    partial_trace_matrix(rho.matrix(), dim_left, dim_right, keep).map(DensityMatrix::from_trusted)
}

pub(crate) fn partial_trace_matrix(
    m: &ComplexMatrix,
    dim_left: usize,
    dim_right: usize,
    keep: Keep,
) -> Result<ComplexMatrix> {
    let dim = dim_left * dim_right;
    if !m.is_square() || m.rows() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} state is not {dim_left}⊗{dim_right}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(match keep {
        Keep::Left => ComplexMatrix::from_fn(dim_left, dim_left, |a, b| {
            (0..dim_right).fold(ZERO, |s, k| s + m[(a * dim_right + k, b * dim_right + k)])
        }),
        Keep::Right => ComplexMatrix::from_fn(dim_right, dim_right, |a, b| {
            (0..dim_left).fold(ZERO, |s, k| s + m[(k * dim_right + a, k * dim_right + b)])
        }),
    })
}

/// −Σ λ log₂ λ over eigenvalues; non-positive eigenvalues contribute 0.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&hermitian_eigenvalues(rho.matrix())?))
}

pub(crate) fn entropy_of_spectrum(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Shannon entropy in bits. Entries down to `-tol::PSD` are clipped to 0.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if let Some(bad) = p.iter().find(|&&x| x < -tol::PSD || !x.is_finite()) {
        return Err(Error::NotADistribution(format!("entry {bad}")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > tol::DIST_SUM {
        return Err(Error::NotADistribution(format!("entries sum to {sum}")));
    }
    Ok(entropy_of_spectrum(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::C64;

    fn bell() -> StateVector {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::from_real(&[h, 0.0, 0.0, h])
    }

    #[test]
    fn bell_reduces_to_maximally_mixed() {
        let rho = DensityMatrix::pure(&bell()).unwrap();
        let left = partial_trace(&rho, 2, 2, Keep::Left).unwrap();
        assert!(
            left.matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed(2).matrix())
                < 1e-15
        );
    }

    #[test]
    fn product_state_keep_each_side() {
        let a = DensityMatrix::new(
            ComplexMatrix::from_vec(
                2,
                2,
                vec![
                    C64::new(0.7, 0.0),
                    C64::new(0.1, 0.2),
                    C64::new(0.1, -0.2),
                    C64::new(0.3, 0.0),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let b = DensityMatrix::maximally_mixed(3);
        let ab = a.tensor(&b);
        let l = partial_trace(&ab, 2, 3, Keep::Left).unwrap();
        let r = partial_trace(&ab, 2, 3, Keep::Right).unwrap();
        assert!(l.matrix().max_abs_diff(a.matrix()) < 1e-15);
        assert!(r.matrix().max_abs_diff(b.matrix()) < 1e-15);
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            partial_trace(&rho, 2, 3, Keep::Left),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn entropy_examples() {
        let pure = DensityMatrix::pure(&bell()).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);
        assert!(
            (von_neumann_entropy(&DensityMatrix::maximally_mixed(2)).unwrap() - 1.0).abs() < 1e-15
        );
        assert!(
            (von_neumann_entropy(&DensityMatrix::maximally_mixed(4)).unwrap() - 2.0).abs() < 1e-15
        );
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy(&[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(shannon_entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert_eq!(shannon_entropy(&[0.25; 4]).unwrap(), 2.0);
        assert_eq!(shannon_entropy(&[1.0 + 5e-11, -5e-11]).unwrap(), 0.0);
    }

    #[test]
    fn shannon_rejects_bad_sums() {
        assert!(matches!(
            shannon_entropy(&[0.5, 0.6]),
            Err(Error::NotADistribution(_))
        ));
        assert!(matches!(
            shannon_entropy(&[1.2, -0.2]),
            Err(Error::NotADistribution(_))
        ));
    }

    #[test]
    fn density_validation() {
        let not_herm = ComplexMatrix::from_real_rows(&[&[0.5, 0.3], &[0.0, 0.5]]).unwrap();
        assert!(matches!(
            DensityMatrix::new(not_herm),
            Err(Error::NotHermitian { .. })
        ));
        let bad_trace = ComplexMatrix::identity(2);
        assert!(DensityMatrix::new(bad_trace).is_err());
        let negative = ComplexMatrix::diagonal(&[1.5, -0.5]);
        assert!(DensityMatrix::new(negative).is_err());
    }
}
