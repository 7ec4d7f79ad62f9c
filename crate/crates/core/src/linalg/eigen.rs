//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation acts on one (p, q) plane. The off-diagonal entry
//! `a_pq = |a_pq| e^{iφ}` is first made real by the phase `diag(1, e^{-iφ})`
//! and then annihilated by an ordinary real plane rotation. The product of
//! the two is unitary, so the sweep is a sequence of unitary similarity
//! transforms and the accumulated product holds the eigenvectors.

use super::matrix::{ComplexMatrix, C64, ZERO};
use super::tol;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted descending, with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// V Λ V†
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let lambda = ComplexMatrix::diagonal(&self.eigenvalues);
        &(v * &lambda) * &v.adjoint()
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

pub fn hermitian_eigendecomposition(a: &ComplexMatrix) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let defect = a.hermiticity_defect();
    if defect > tol::HERM {
        return Err(Error::NotHermitian { asymmetry: defect });
    }

    let n = a.rows();
    // Symmetrize so the working copy is exactly Hermitian.
    let mut w = ComplexMatrix::from_fn(n, n, |r, c| (a[(r, c)] + a[(c, r)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol::JACOBI_OFF * w.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&w) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut w, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|k| w[(k, k)].re).collect();
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]).then(x.cmp(&y)));

    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, sorted descending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigendecomposition(a).map(|s| s.eigenvalues)
}

fn rotate(w: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = w[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;
    // Skip entries already negligible next to both diagonal entries.
    if b < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        w[(p, q)] = ZERO;
        w[(q, p)] = ZERO;
        return;
    }

    let phase = apq / b; // e^{iφ}
    let zeta = (aqq - app) / (2.0 * b);
    let t = if zeta.abs() > 1e150 {
        -0.5 / zeta
    } else {
        let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
        -sign / (zeta.abs() + (zeta * zeta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G = diag(1, e^{-iφ}) · [[c, -s], [s, c]] on the (p, q) plane.
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(-s, 0.0);
    let g_qp = phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = w.rows();
    // W ← W G
    for k in 0..n {
        let wkp = w[(k, p)];
        let wkq = w[(k, q)];
        w[(k, p)] = wkp * g_pp + wkq * g_qp;
        w[(k, q)] = wkp * g_pq + wkq * g_qq;
    }
    // W ← G† W
    for k in 0..n {
        let wpk = w[(p, k)];
        let wqk = w[(q, k)];
        w[(p, k)] = g_pp.conj() * wpk + g_qp.conj() * wqk;
        w[(q, k)] = g_pq.conj() * wpk + g_qq.conj() * wqk;
    }
    w[(p, q)] = ZERO;
    w[(q, p)] = ZERO;
    w[(p, p)] = C64::new(w[(p, p)].re, 0.0);
    w[(q, q)] = C64::new(w[(q, q)].re, 0.0);
    // V ← V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}
