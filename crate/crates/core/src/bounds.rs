//! Information quantities about Eve's ensemble and the bounds they obey.
//!
//! Eve's accessible information is bracketed, never point-estimated: the
//! lower end is the best of a pretty good measurement and seeded random
//! projective measurements, the upper end is `min(χ, χ_sym, H(A⊕B|b̄))`.

use serde::Serialize;

use crate::attack::{AttackChannel, ErrorDistribution};
use crate::error::{Error, Result};
use crate::linalg::density::entropy_of_spectrum;
use crate::linalg::{
    hermitian_eigendecomposition, hermitian_eigenvalues, tol, von_neumann_entropy, ComplexMatrix,
    DensityMatrix,
};
use crate::rng::SeededRng;
use crate::symmetrize::{purification_vectors, sigma_matrix, sigma_spectrum_check, symmetrize};

#[derive(Clone, Debug)]
pub struct Ensemble {
    priors: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl Ensemble {
    pub fn new(priors: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if priors.len() != states.len() || states.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "{} priors for {} states",
                priors.len(),
                states.len()
            )));
        }
        let dim = states[0].dim();
        if states.iter().any(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch(
                "ensemble states differ in dimension".into(),
            ));
        }
        if priors.iter().any(|&p| p < -tol::PSD || !p.is_finite()) {
            return Err(Error::NotADistribution("negative prior".into()));
        }
        let sum: f64 = priors.iter().sum();
        if (sum - 1.0).abs() > tol::DIST_SUM {
            return Err(Error::NotADistribution(format!("priors sum to {sum}")));
        }
        Ok(Self { priors, states })
    }

    pub fn uniform(states: Vec<DensityMatrix>) -> Result<Self> {
        let p = 1.0 / states.len().max(1) as f64;
        Self::new(vec![p; states.len()], states)
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn average(&self) -> DensityMatrix {
        DensityMatrix::mixture(&self.priors, &self.states).expect("validated ensemble")
    }
}

#[derive(Clone, Debug)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    /// Checks each element is Hermitian and PSD and that they sum to the
    /// identity.
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = elements
            .first()
            .map(|e| e.rows())
            .ok_or_else(|| Error::InvalidPovm("no elements".into()))?;
        let mut total = ComplexMatrix::zeros(dim, dim);
        for (k, e) in elements.iter().enumerate() {
            if !e.is_square() || e.rows() != dim {
                return Err(Error::InvalidPovm(format!(
                    "element {k} has the wrong shape"
                )));
            }
            if !e.is_hermitian(tol::HERM) {
                return Err(Error::InvalidPovm(format!("element {k} is not Hermitian")));
            }
            let smallest = hermitian_eigenvalues(e)?.last().copied().unwrap_or(0.0);
            if smallest < -tol::PSD {
                return Err(Error::InvalidPovm(format!(
                    "element {k} has eigenvalue {smallest:e}"
                )));
            }
            total = &total + e;
        }
        let residual = total.max_abs_diff(&ComplexMatrix::identity(dim));
        if residual > tol::POVM_SUM {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {residual:e}"
            )));
        }
        Ok(Self { elements })
    }

    fn from_trusted(elements: Vec<ComplexMatrix>) -> Self {
        Self { elements }
    }

    /// Rank-one projectors onto the columns of a unitary.
    pub fn projective(basis: &ComplexMatrix) -> Self {
        Self::from_trusted(
            (0..basis.cols())
                .map(|c| {
                    let v = basis.column(c);
                    ComplexMatrix::outer(&v, &v)
                })
                .collect(),
        )
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }
}

/// S(Σ p_i ρ_i) − Σ p_i S(ρ_i)
pub fn holevo_chi(ens: &Ensemble) -> Result<f64> {
    let mut chi = von_neumann_entropy(&ens.average())?;
    for (&p, rho) in ens.priors.iter().zip(&ens.states) {
        if p > 0.0 {
            chi -= p * von_neumann_entropy(rho)?;
        }
    }
    Ok(chi.max(0.0))
}

/// tr(X ρ) = Σ_rc X_rc ρ_cr, clipped at zero.
fn born_probability(x: &ComplexMatrix, rho: &ComplexMatrix) -> f64 {
    let d = x.rows();
    let mut acc = 0.0;
    for r in 0..d {
        for c in 0..d {
            acc += (x[(r, c)] * rho[(c, r)]).re;
        }
    }
    acc.max(0.0)
}

/// I(A : E[X]) = H(A) + H(E[X]) − H(A, E[X]) with p(α|i) = tr(X_α ρ_i).
pub fn mutual_information_of_measurement(ens: &Ensemble, x: &Povm) -> Result<f64> {
    if x.dim() != ens.dim() {
        return Err(Error::InvalidPovm(format!(
            "POVM acts on dimension {}, ensemble on {}",
            x.dim(),
            ens.dim()
        )));
    }
    let outcomes = x.elements.len();
    let mut joint = Vec::with_capacity(ens.states.len() * outcomes);
    let mut marginal = vec![0.0; outcomes];
    for (&p, rho) in ens.priors.iter().zip(&ens.states) {
        for (a, e) in x.elements.iter().enumerate() {
            let q = p * born_probability(e, rho.matrix());
            joint.push(q);
            marginal[a] += q;
        }
    }
    let info = entropy_of_spectrum(&ens.priors) + entropy_of_spectrum(&marginal)
        - entropy_of_spectrum(&joint);
    Ok(info.max(0.0))
}

/// Square-root measurement `X_i = ρ̄^{-1/2} p_i ρ_i ρ̄^{-1/2}`, padded with an
/// equal share of the projector off the support of ρ̄.
pub fn pretty_good_measurement(ens: &Ensemble) -> Result<Povm> {
    let avg = ens.average();
    let spec = hermitian_eigendecomposition(avg.matrix())?;
    let d = avg.dim();
    let mut inv_sqrt = ComplexMatrix::zeros(d, d);
    let mut support = ComplexMatrix::zeros(d, d);
    for (k, &lambda) in spec.eigenvalues.iter().enumerate() {
        if lambda < tol::SUPPORT {
            continue;
        }
        let v = spec.eigenvectors.column(k);
        let proj = ComplexMatrix::outer(&v, &v);
        inv_sqrt = &inv_sqrt + &proj.scale_real(lambda.sqrt().recip());
        support = &support + &proj;
    }
    let pad = (&ComplexMatrix::identity(d) - &support).scale_real(1.0 / ens.states.len() as f64);
    let elements = ens
        .priors
        .iter()
        .zip(&ens.states)
        .map(|(&p, rho)| {
            let core = &(&inv_sqrt * &rho.matrix().scale_real(p)) * &inv_sqrt;
            let x = &core + &pad;
            // Exact hermiticity; the products above leave ~1e-17 asymmetry.
            (&x + &x.adjoint()).scale_real(0.5)
        })
        .collect();
    Ok(Povm::from_trusted(elements))
}

/// Success probability Σ_i p_i tr(X_i ρ_i) of guessing the label.
pub fn success_probability(ens: &Ensemble, x: &Povm) -> f64 {
    ens.priors
        .iter()
        .zip(&ens.states)
        .zip(&x.elements)
        .map(|((&p, rho), e)| p * born_probability(e, rho.matrix()))
        .sum()
}

/// Best measured information over the pretty good measurement and
/// `samples` random orthonormal-basis measurements drawn from `seed`.
pub fn accessible_info_lower_bound(ens: &Ensemble, samples: usize, seed: u64) -> Result<f64> {
    let mut best = mutual_information_of_measurement(ens, &pretty_good_measurement(ens)?)?;
    let mut rng = SeededRng::new(seed);
    for _ in 0..samples {
        let basis = rng.random_unitary(ens.dim());
        best = best.max(mutual_information_of_measurement(
            ens,
            &Povm::projective(&basis),
        )?);
    }
    Ok(best)
}

/// H(A ⊕ B | b̄)
pub fn xor_entropy_bound(ed: &ErrorDistribution) -> f64 {
    entropy_of_spectrum(ed.probs())
}

/// 4 N √δ
pub fn boykin_bound(ed: &ErrorDistribution) -> f64 {
    4.0 * ed.n() as f64 * ed.delta().sqrt()
}

/// h₂(δ) + N δ
pub fn corollary_bound(delta: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::OutOfRange(format!("delta={delta} is not in [0, 1]")));
    }
    Ok(entropy_of_spectrum(&[delta, 1.0 - delta]) + n as f64 * delta)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub eve_dim: usize,
    pub delta: f64,
    pub error_dist: ErrorDistribution,
    pub h_xor: f64,
    pub chi_orig: f64,
    pub chi_sym: f64,
    pub i_lower: f64,
    pub boykin_rhs: f64,
    pub corollary_rhs: f64,
    pub slack_main: f64,
    pub slack_measured: f64,
    pub spectrum_deviation: f64,
}

impl BoundsReport {
    /// Upper end of the accessible-information bracket.
    pub fn i_upper(&self) -> f64 {
        self.chi_orig.min(self.chi_sym).min(self.h_xor)
    }

    pub fn satisfies_theorem(&self) -> bool {
        self.slack_main >= -tol::THEOREM
            && self.slack_measured >= -tol::THEOREM
            && self.spectrum_deviation <= tol::THEOREM
    }
}

/// Computes every report field without checking the inequalities.
pub fn compute_report(ch: &AttackChannel, samples: usize, seed: u64) -> Result<BoundsReport> {
    let dim = ch.dim();
    let error_dist = ch.xor_error_distribution();
    let delta = error_dist.delta();
    let h_xor = xor_entropy_bound(&error_dist);

    let eve = Ensemble::uniform((0..dim).map(|i| ch.eve_state_unchecked(i)).collect())?;
    let chi_orig = holevo_chi(&eve)?;
    let i_lower = accessible_info_lower_bound(&eve, samples, seed)?;

    let sym = symmetrize(ch);
    let eve_sym = Ensemble::uniform((0..dim).map(|i| sym.eve_state_sym_unchecked(i)).collect())?;
    let chi_sym = holevo_chi(&eve_sym)?;

    let sigma = sigma_matrix(&purification_vectors(&sym))?;
    let spectrum_deviation = sigma_spectrum_check(&sigma, &error_dist)?;

    Ok(BoundsReport {
        n: ch.n(),
        eve_dim: ch.eve_dim(),
        delta,
        h_xor,
        chi_orig,
        chi_sym,
        i_lower,
        boykin_rhs: boykin_bound(&error_dist),
        corollary_rhs: corollary_bound(delta, ch.n())?,
        slack_main: h_xor - chi_sym,
        slack_measured: h_xor - i_lower,
        spectrum_deviation,
        error_dist,
    })
}

/// [`compute_report`] plus the theorem checks; a violation carries the
/// offending report.
pub fn audit_attack(ch: &AttackChannel, samples: usize, seed: u64) -> Result<BoundsReport> {
    let report = compute_report(ch, samples, seed)?;
    if report.satisfies_theorem() {
        Ok(report)
    } else {
        Err(Error::TheoremViolation(Box::new(report)))
    }
}
