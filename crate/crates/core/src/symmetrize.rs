//! XOR-symmetrized attack and the σ state whose spectrum is the error
//! distribution.
//!
//! The symmetrized table adds an `n`-qubit register `|m⟩` to the apparatus:
//!
//! ```text
//! |E^s_ij⟩ = 2^{-n/2} Σ_m (−1)^{m·(i⊕j)} |m⟩ ⊗ |E_{i⊕m, j⊕m}⟩
//! ```
//!
//! Its purifications `|φ_i⟩ = Σ_j |E^s_ij⟩ ⊗ |i⊕j⟩` have a Gram matrix that
//! depends on `i ⊕ j` only, so `σ_ij = 2^{-n} ⟨φ_j|φ_i⟩` is diagonalized by
//! the Hadamard vectors and its eigenvalues are the XOR error probabilities.

use crate::attack::{AttackChannel, ErrorDistribution};
use crate::error::{Error, Result};
use crate::linalg::bits::sign;
use crate::linalg::matrix::ZERO;
use crate::linalg::{
    hermitian_eigenvalues, tol, BitString, ComplexMatrix, DensityMatrix, StateVector, C64,
};

/// Agreement required between representatives of the same `i ⊕ j` class.
const TRANSLATION_TOL: f64 = 1e-10;
/// Agreement required between the Fourier and eigensolver spectra of σ.
const MULTISET_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SymmetrizedChannel {
    n: usize,
    eve_dim: usize,
    /// Entry `i * 2^n + j` is `|E^s_ij⟩ ∈ C^{2^n} ⊗ C^{eve_dim}`.
    kraus_sym: Vec<StateVector>,
}

impl SymmetrizedChannel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eve_dim(&self) -> usize {
        self.eve_dim
    }

    /// Dimension of the enlarged apparatus, `2^n · eve_dim`.
    pub fn dim(&self) -> usize {
        (1 << self.n) * self.eve_dim
    }

    pub fn kraus(&self, i: usize, j: usize) -> &StateVector {
        &self.kraus_sym[i * (1 << self.n) + j]
    }

    pub fn unitarity_residual(&self) -> f64 {
        let dim = 1usize << self.n;
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

    /// ρ^i_{Eve,sym} = Σ_j |E^s_ij⟩⟨E^s_ij|
    pub fn eve_state_sym(&self, i: BitString) -> Result<DensityMatrix> {
        self.check_index(i)?;
        Ok(self.eve_state_sym_unchecked(i.value()))
    }

    pub(crate) fn eve_state_sym_unchecked(&self, i: usize) -> DensityMatrix {
        let dim = self.dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for j in 0..1usize << self.n {
            let v = self.kraus(i, j);
            acc = &acc + &ComplexMatrix::outer(v, v);
        }
        DensityMatrix::from_trusted(acc)
    }

    /// Measures the added register on input `i` and returns the probability
    /// of outcome `m` with the normalized post-measurement apparatus state.
    pub fn project_ancilla(&self, i: BitString, m: BitString) -> Result<(f64, DensityMatrix)> {
        self.check_index(i)?;
        self.check_index(m)?;
        let (i, m) = (i.value(), m.value());
        let e = self.eve_dim;
        let mut acc = ComplexMatrix::zeros(e, e);
        for j in 0..1usize << self.n {
            let block =
                StateVector::new(self.kraus(i, j).amplitudes()[m * e..(m + 1) * e].to_vec());
            acc = &acc + &ComplexMatrix::outer(&block, &block);
        }
        let prob = acc.trace().re;
        if prob <= 0.0 {
            return Err(Error::OutOfRange(format!(
                "ancilla outcome {m} has probability {prob}"
            )));
        }
        Ok((
            prob,
            DensityMatrix::from_trusted(acc.scale_real(prob.recip())),
        ))
    }
}

pub fn symmetrize(ch: &AttackChannel) -> SymmetrizedChannel {
    let n = ch.n();
    let dim = ch.dim();
    let e = ch.eve_dim();
    let amp = (dim as f64).sqrt().recip();
    let mut kraus_sym = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut v = StateVector::zeros(dim * e);
            for m in 0..dim {
                let w = amp * sign(m, i ^ j);
                let src = ch.kraus(i ^ m, j ^ m);
                for k in 0..e {
                    v[m * e + k] = src[k] * w;
                }
            }
            kraus_sym.push(v);
        }
    }
    let sym = SymmetrizedChannel {
        n,
        eve_dim: e,
        kraus_sym,
    };
    debug_assert!(sym.unitarity_residual() <= tol::UNIT);
    sym
}

#[derive(Clone, Debug)]
pub struct PurificationSet {
    n: usize,
    /// Dimension of the enlarged apparatus the vectors extend.
    apparatus_dim: usize,
    /// `|φ_i⟩` with index `a * 2^n + p` for apparatus index `a`, register `p`.
    vectors: Vec<StateVector>,
}

impl PurificationSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apparatus_dim(&self) -> usize {
        self.apparatus_dim
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    /// The apparatus component of `|φ_i⟩` at register value `p`, which is
    /// `|E^s_{i, i⊕p}⟩`.
    fn block(&self, i: usize, p: usize) -> StateVector {
        let dim = 1usize << self.n;
        StateVector::new(
            (0..self.apparatus_dim)
                .map(|a| self.vectors[i][a * dim + p])
                .collect(),
        )
    }
}

/// `|φ_i⟩ = Σ_j |E^s_ij⟩ ⊗ |i⊕j⟩`
pub fn purification_vectors(sym: &SymmetrizedChannel) -> PurificationSet {
    let dim = 1usize << sym.n;
    let vectors = (0..dim)
        .map(|i| {
            let mut acc = StateVector::zeros(sym.dim() * dim);
            for j in 0..dim {
                acc.add_scaled(
                    C64::new(1.0, 0.0),
                    &sym.kraus(i, j).kron(&StateVector::basis(dim, i ^ j)),
                );
            }
            acc
        })
        .collect();
    PurificationSet {
        n: sym.n,
        apparatus_dim: sym.dim(),
        vectors,
    }
}

#[derive(Clone, Debug)]
pub struct SigmaAnalysis {
    pub n: usize,
    pub sigma: DensityMatrix,
    /// `f(t)`, indexed by `t = i ⊕ j`.
    pub f_values: Vec<C64>,
    /// Eigenvalue on the Hadamard vector `|μ_l⟩`, indexed by `l`.
    pub lambda: Vec<f64>,
}

pub fn sigma_matrix(pur: &PurificationSet) -> Result<SigmaAnalysis> {
    let dim = 1usize << pur.n;
    let scale = 1.0 / dim as f64;
    let sigma = ComplexMatrix::from_fn(dim, dim, |i, j| {
        pur.vectors[j].inner(&pur.vectors[i]) * scale
    });

    let blocks: Vec<Vec<StateVector>> = (0..dim)
        .map(|i| (0..dim).map(|p| pur.block(i, p)).collect())
        .collect();
    let f_pair =
        |i: usize, j: usize| -> C64 { (0..dim).map(|u| blocks[j][u].inner(&blocks[i][u])).sum() };

    let mut f_values = vec![ZERO; dim];
    for (t, f) in f_values.iter_mut().enumerate() {
        let reference = f_pair(t, 0);
        for i in 0..dim {
            let j = i ^ t;
            let deviation = (f_pair(i, j) - reference)
                .norm()
                .max((sigma[(i, j)] - reference * scale).norm() * dim as f64);
            if deviation > TRANSLATION_TOL {
                return Err(Error::TranslationInvarianceViolated { t, deviation });
            }
        }
        *f = reference;
    }

    let lambda = fourier_spectrum(&f_values);
    Ok(SigmaAnalysis {
        n: pur.n,
        sigma: DensityMatrix::from_trusted(sigma),
        f_values,
        lambda,
    })
}

/// `λ_l = 2^{-n} Σ_t f(t) (−1)^{t·l}` (real part).
pub fn fourier_spectrum(f_values: &[C64]) -> Vec<f64> {
    let dim = f_values.len();
    (0..dim)
        .map(|l| {
            f_values
                .iter()
                .enumerate()
                .map(|(t, f)| f.re * sign(t, l))
                .sum::<f64>()
                / dim as f64
        })
        .collect()
}

/// `f(t)` from the original table,
/// `2^{-n} Σ_{v,u} ⟨E_{v, v⊕u}|E_{v⊕t, v⊕t⊕u}⟩`.
///
/// Independent of the symmetrized and purified vectors; used to cross-check
/// [`sigma_matrix`].
pub fn f_values_from_channel(ch: &AttackChannel) -> Vec<C64> {
    let dim = ch.dim();
    (0..dim)
        .map(|t| {
            let mut acc = ZERO;
            for v in 0..dim {
                for u in 0..dim {
                    acc += ch.kraus(v, v ^ u).inner(ch.kraus(v ^ t, v ^ t ^ u));
                }
            }
            acc / dim as f64
        })
        .collect()
}

/// Largest deviation of the Fourier eigenvalues from the error distribution
/// and from the eigensolver's spectrum of σ (compared as sorted multisets).
pub fn sigma_spectrum_check(sa: &SigmaAnalysis, ed: &ErrorDistribution) -> Result<f64> {
    if sa.n != ed.n() {
        return Err(Error::DimensionMismatch(format!(
            "sigma for n={} against error distribution for n={}",
            sa.n,
            ed.n()
        )));
    }
    let identity_dev = sa
        .lambda
        .iter()
        .zip(ed.probs())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let mut fourier = sa.lambda.clone();
    fourier.sort_by(|a, b| b.total_cmp(a));
    let solver = hermitian_eigenvalues(sa.sigma.matrix())?;
    let multiset_dev = fourier
        .iter()
        .zip(&solver)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    debug_assert!(
        multiset_dev <= MULTISET_TOL,
        "Fourier vs eigensolver {multiset_dev:e}"
    );
    Ok(identity_dev.max(multiset_dev))
}
