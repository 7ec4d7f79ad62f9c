//! Eve's interaction as a table of Kraus vectors.
//!
//! An attack maps `|0⟩_E ⊗ |i⟩ ↦ Σ_j |E_ij⟩ ⊗ |j⟩`. Only this slice of the
//! unitary is stored; it is all that the information quantities depend on.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::bits::sign;
use crate::linalg::{
    mub_transform, tol, BitString, ComplexMatrix, DensityMatrix, StateVector, C64,
};

/// Basis Alice encodes in when the table is read row-wise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Basis {
    B,
    BConjugate,
}

impl Basis {
    pub fn toggled(self) -> Self {
        match self {
            Basis::B => Basis::BConjugate,
            Basis::BConjugate => Basis::B,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AttackChannel {
    n: usize,
    eve_dim: usize,
    /// Row-major over (i, j): entry `i * 2^n + j` is `|E_ij⟩`.
    kraus: Vec<StateVector>,
    basis: Basis,
}

impl AttackChannel {
    /// Validates sizes and the unitarity condition Σ_j ⟨E_ij|E_kj⟩ = δ_ik.
    pub fn from_kraus(
        n: usize,
        eve_dim: usize,
        kraus: Vec<StateVector>,
        basis: Basis,
    ) -> Result<Self> {
        check_qubits(n)?;
        if eve_dim == 0 {
            return Err(Error::DimensionMismatch(
                "eve_dim must be at least 1".into(),
            ));
        }
        let dim = 1usize << n;
        if kraus.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} Kraus vectors, got {}",
                dim * dim,
                kraus.len()
            )));
        }
        if let Some(v) = kraus.iter().find(|v| v.dim() != eve_dim) {
            return Err(Error::DimensionMismatch(format!(
                "Kraus vector of dimension {} in a channel with eve_dim {eve_dim}",
                v.dim()
            )));
        }
        let ch = Self {
            n,
            eve_dim,
            kraus,
            basis,
        };
        let residual = ch.unitarity_residual();
        if residual > tol::UNIT {
            return Err(Error::NotUnitary { residual });
        }
        Ok(ch)
    }

    /// `kraus[i][j] = (I_E ⊗ ⟨j|) U (|ancilla⟩ ⊗ |i⟩)` with the apparatus as
    /// the left (most significant) tensor factor.
    pub fn from_unitary(u: &ComplexMatrix, ancilla: &StateVector, n: usize) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        let eve_dim = ancilla.dim();
        if eve_dim == 0 || !u.is_square() || u.rows() != eve_dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, expected {}-dimensional for eve_dim {eve_dim} and n={n}",
                u.rows(),
                u.cols(),
                eve_dim * dim
            )));
        }
        let residual = u.unitarity_residual();
        if residual > tol::UNIT {
            return Err(Error::NotUnitary { residual });
        }
        if !ancilla.is_normalized(tol::UNIT) {
            return Err(Error::DimensionMismatch(format!(
                "ancilla has squared norm {}",
                ancilla.norm_sqr()
            )));
        }
        let mut kraus = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            let input = ancilla.kron(&StateVector::basis(dim, i));
            let output = u.apply(&input)?;
            for j in 0..dim {
                kraus.push(StateVector::new(
                    (0..eve_dim).map(|e| output[e * dim + j]).collect(),
                ));
            }
        }
        Self::from_kraus(n, eve_dim, kraus, Basis::B)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn eve_dim(&self) -> usize {
        self.eve_dim
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn kraus(&self, i: usize, j: usize) -> &StateVector {
        &self.kraus[i * self.dim() + j]
    }

    pub fn kraus_at(&self, i: BitString, j: BitString) -> Result<&StateVector> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.kraus(i.value(), j.value()))
    }

    /// max_{i,k} |Σ_j ⟨E_ij|E_kj⟩ − δ_ik|
    pub fn unitarity_residual(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for i in 0..dim {
            for k in i..dim {
                let g: C64 = (0..dim)
                    .map(|j| self.kraus(i, j).inner(self.kraus(k, j)))
                    .sum();
                let target = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }

    /// Largest entrywise deviation between two tables of the same shape.
    pub fn max_kraus_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.n, self.eve_dim), (other.n, other.eve_dim));
        self.kraus
            .iter()
            .zip(&other.kraus)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// The same interaction read in the other basis:
    /// `E'_ls = 2^{-n} Σ_{ij} (−1)^{s·j + i·l} E_ij`.
    pub fn to_conjugate_basis(&self) -> Self {
        let dim = self.dim();
        let norm = 1.0 / dim as f64;
        let mut kraus = Vec::with_capacity(dim * dim);
        for l in 0..dim {
            for s in 0..dim {
                let mut acc = StateVector::zeros(self.eve_dim);
                for i in 0..dim {
                    for j in 0..dim {
                        let w = norm * sign(s, j) * sign(i, l);
                        acc.add_scaled(C64::new(w, 0.0), self.kraus(i, j));
                    }
                }
                kraus.push(acc);
            }
        }
        Self {
            n: self.n,
            eve_dim: self.eve_dim,
            kraus,
            basis: self.basis.toggled(),
        }
    }

    fn in_conjugate_basis(&self) -> std::borrow::Cow<'_, Self> {
        match self.basis {
            Basis::B => std::borrow::Cow::Owned(self.to_conjugate_basis()),
            Basis::BConjugate => std::borrow::Cow::Borrowed(self),
        }
    }

    /// ρ_Eve^i = Σ_j |E_ij⟩⟨E_ij|
    pub fn eve_state(&self, i: BitString) -> Result<DensityMatrix> {
        self.check_index(i)?;
        Ok(self.eve_state_unchecked(i.value()))
    }

    pub(crate) fn eve_state_unchecked(&self, i: usize) -> DensityMatrix {
        let mut acc = ComplexMatrix::zeros(self.eve_dim, self.eve_dim);
        for j in 0..self.dim() {
            let v = self.kraus(i, j);
            acc = &acc + &ComplexMatrix::outer(v, v);
        }
        DensityMatrix::from_trusted(acc)
    }

    /// Bob's state when Alice sends `|ī⟩`, written in the computational
    /// representation: `Σ_{j,l} ⟨Ē_il|Ē_ij⟩ |j̄⟩⟨l̄|`.
    pub fn bob_conjugate_state(&self, i: BitString) -> Result<DensityMatrix> {
        self.check_index(i)?;
        let conj = self.in_conjugate_basis();
        let dim = self.dim();
        let i = i.value();
        let coeffs =
            ComplexMatrix::from_fn(dim, dim, |j, l| conj.kraus(i, l).inner(conj.kraus(i, j)));
        let m = mub_transform(self.n)?;
        Ok(DensityMatrix::from_trusted(&(&m * &coeffs) * &m))
    }

    /// `p(B = A ⊕ c | b̄) = 2^{-n} Σ_i ‖Ē_{i, i⊕c}‖²`.
    pub fn xor_error_distribution(&self) -> ErrorDistribution {
        let conj = self.in_conjugate_basis();
        let dim = self.dim();
        let probs = (0..dim)
            .map(|c| {
                (0..dim)
                    .map(|i| conj.kraus(i, i ^ c).norm_sqr())
                    .sum::<f64>()
                    / dim as f64
            })
            .collect();
        ErrorDistribution { n: self.n, probs }
    }

    fn check_index(&self, i: BitString) -> Result<()> {
        if i.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}-bit index for a {}-qubit channel",
                i.n(),
                self.n
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("qubit count must be at least 1".into()));
    }
    if n > tol::N_MAX {
        return Err(Error::DimensionTooLarge(format!(
            "n={n} exceeds n_max={}",
            tol::N_MAX
        )));
    }
    Ok(())
}

/// Distribution of the XOR difference between Bob's conjugate-basis outcome
/// and Alice's string.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorDistribution {
    n: usize,
    probs: Vec<f64>,
}

impl ErrorDistribution {
    pub fn new(n: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1usize << n {
            return Err(Error::DimensionMismatch(format!(
                "{} probabilities for n={n}",
                probs.len()
            )));
        }
        if let Some(bad) = probs
            .iter()
            .find(|&&p| !(-tol::PSD..=1.0 + tol::PSD).contains(&p))
        {
            return Err(Error::NotADistribution(format!("entry {bad}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol::DIST_SUM {
            return Err(Error::NotADistribution(format!("entries sum to {sum}")));
        }
        Ok(Self { n, probs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Total error probability Σ_{c≠0} p(c), clipped to [0, 1].
    pub fn delta(&self) -> f64 {
        self.probs[1..].iter().sum::<f64>().clamp(0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: usize, v: usize) -> BitString {
        BitString::new(n, v).unwrap()
    }

    fn identity_channel(n: usize) -> AttackChannel {
        let u = ComplexMatrix::identity(1 << n);
        AttackChannel::from_unitary(&u, &StateVector::basis(1, 0), n).unwrap()
    }

    // CNOT with the system qubit as control and a 2-dim apparatus as target,
    // on H_E ⊗ H_A ordered |e, a⟩ → index 2e + a.
    fn cnot_unitary() -> ComplexMatrix {
        let mut u = ComplexMatrix::zeros(4, 4);
        for e in 0..2 {
            for a in 0..2 {
                let out = 2 * (e ^ a) + a;
                u[(out, 2 * e + a)] = C64::new(1.0, 0.0);
            }
        }
        u
    }

    #[test]
    fn identity_unitary_gives_delta_table() {
        let ch = identity_channel(2);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_eq!(ch.kraus(i, j)[0], C64::new(expected, 0.0));
            }
        }
    }

    #[test]
    fn cnot_probe_from_unitary() {
        let ch =
            AttackChannel::from_unitary(&cnot_unitary(), &StateVector::basis(2, 0), 1).unwrap();
        assert_eq!(ch.kraus(0, 0), &StateVector::basis(2, 0));
        assert_eq!(ch.kraus(1, 1), &StateVector::basis(2, 1));
        assert_eq!(ch.kraus(0, 1), &StateVector::zeros(2));
        assert_eq!(ch.kraus(1, 0), &StateVector::zeros(2));
    }

    #[test]
    fn non_unitary_rejected() {
        let u = ComplexMatrix::diagonal(&[1.0, 0.5]);
        assert!(matches!(
            AttackChannel::from_unitary(&u, &StateVector::basis(1, 0), 1),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn wrong_unitary_size_rejected() {
        let u = ComplexMatrix::identity(3);
        assert!(matches!(
            AttackChannel::from_unitary(&u, &StateVector::basis(1, 0), 1),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn from_kraus_rejects_non_unitary_table() {
        let kraus = vec![StateVector::basis(1, 0); 4];
        assert!(matches!(
            AttackChannel::from_kraus(1, 1, kraus, Basis::B),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn identity_is_fixed_by_conjugation() {
        let ch = identity_channel(1);
        let conj = ch.to_conjugate_basis();
        assert_eq!(conj.basis(), Basis::BConjugate);
        assert!(conj.max_kraus_diff(&identity_channel(1)) < 1e-15);
    }

    #[test]
    fn cnot_probe_conjugate_table() {
        let ch =
            AttackChannel::from_unitary(&cnot_unitary(), &StateVector::basis(2, 0), 1).unwrap();
        let conj = ch.to_conjugate_basis();
        for l in 0..2 {
            for s in 0..2 {
                let sgn = if (l ^ s) == 0 { 0.5 } else { -0.5 };
                let expected = StateVector::from_real(&[0.5, sgn]);
                assert!(conj.kraus(l, s).max_abs_diff(&expected) < 1e-15);
            }
        }
    }

    #[test]
    fn conjugation_round_trip_and_matrix_route() {
        let mut rng = crate::rng::SeededRng::new(17);
        let u = rng.random_unitary(8);
        let ch = AttackChannel::from_unitary(&u, &StateVector::basis(2, 0), 2).unwrap();
        assert_eq!(ch.eve_dim(), 2);
        let conj = ch.to_conjugate_basis();
        assert!(conj.unitarity_residual() < 1e-9);
        assert!(conj.to_conjugate_basis().max_kraus_diff(&ch) <= 1e-12);

        // Matrix route: E'_ls = Σ_ij ⟨s̄|j⟩⟨i|l̄⟩ E_ij with M[i][k] = ⟨i|k̄⟩ real.
        let m = mub_transform(2).unwrap();
        for l in 0..4 {
            for s in 0..4 {
                let mut acc = StateVector::zeros(2);
                for i in 0..4 {
                    for j in 0..4 {
                        acc.add_scaled(m[(j, s)] * m[(i, l)], ch.kraus(i, j));
                    }
                }
                assert!(acc.max_abs_diff(conj.kraus(l, s)) < 1e-14);
            }
        }
    }

    #[test]
    fn eve_states_of_cnot_probe() {
        let ch =
            AttackChannel::from_unitary(&cnot_unitary(), &StateVector::basis(2, 0), 1).unwrap();
        let r0 = ch.eve_state(bits(1, 0)).unwrap();
        let r1 = ch.eve_state(bits(1, 1)).unwrap();
        assert_eq!(r0.matrix(), &ComplexMatrix::diagonal(&[1.0, 0.0]));
        assert_eq!(r1.matrix(), &ComplexMatrix::diagonal(&[0.0, 1.0]));
        assert!(ch.eve_state(bits(2, 0)).is_err());
    }

    #[test]
    fn bob_sees_no_disturbance_without_eve() {
        let ch = identity_channel(2);
        let m = mub_transform(2).unwrap();
        for i in 0..4 {
            let rho = ch.bob_conjugate_state(bits(2, i)).unwrap();
            let expected = ComplexMatrix::outer(&m.column(i), &m.column(i));
            assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn bob_state_conjugate_diagonal() {
        let mut rng = crate::rng::SeededRng::new(5);
        let u = rng.random_unitary(8);
        let ch = AttackChannel::from_unitary(&u, &StateVector::basis(2, 0), 2).unwrap();
        let conj = ch.to_conjugate_basis();
        let m = mub_transform(2).unwrap();
        for i in 0..4 {
            let rho = ch.bob_conjugate_state(bits(2, i)).unwrap();
            assert!((rho.trace() - 1.0).abs() < 1e-10);
            let in_conj = &(&m * rho.matrix()) * &m;
            for j in 0..4 {
                assert!((in_conj[(j, j)].re - conj.kraus(i, j).norm_sqr()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn identity_error_distribution() {
        let ed = identity_channel(2).xor_error_distribution();
        assert_eq!(ed.probs(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(ed.delta(), 0.0);
    }

    #[test]
    fn intercept_resend_error_distribution() {
        let kraus = (0..2)
            .flat_map(|i| {
                (0..2).map(move |j| {
                    if i == j {
                        StateVector::basis(2, i)
                    } else {
                        StateVector::zeros(2)
                    }
                })
            })
            .collect();
        let ch = AttackChannel::from_kraus(1, 2, kraus, Basis::B).unwrap();
        let ed = ch.xor_error_distribution();
        assert!((ed.probs()[0] - 0.5).abs() < 1e-15);
        assert!((ed.probs()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn error_distribution_validation() {
        assert!(ErrorDistribution::new(1, vec![0.5, 0.5]).is_ok());
        assert!(ErrorDistribution::new(1, vec![0.5, 0.6]).is_err());
        assert!(ErrorDistribution::new(2, vec![0.5, 0.5]).is_err());
        assert!(ErrorDistribution::new(1, vec![1.1, -0.1]).is_err());
    }

    #[test]
    fn zero_eve_dim_rejected() {
        assert!(AttackChannel::from_kraus(1, 0, vec![], Basis::B).is_err());
    }
}
