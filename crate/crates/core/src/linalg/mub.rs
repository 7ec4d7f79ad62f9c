use super::bits::sign;
use super::matrix::{ComplexMatrix, C64};
use super::tol;
use crate::error::{Error, Result};

/// Change of basis from the computational basis to its conjugate:
/// `M[i][k] = ⟨i|k̄⟩ = 2^{-n/2} (−1)^{i·k}`. Column `k` is `|k̄⟩`.
///
/// M is real, symmetric and its own inverse.
pub fn mub_transform(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange("mub_transform needs n >= 1".into()));
    }
    if n > tol::N_MAX {
        return Err(Error::DimensionTooLarge(format!(
            "mub_transform n={n} exceeds n_max={}",
            tol::N_MAX
        )));
    }
    let dim = 1usize << n;
    let half_pow = 0.5f64.powi((n / 2) as i32);
    let amp = if n.is_multiple_of(2) {
        half_pow
    } else {
        std::f64::consts::FRAC_1_SQRT_2 * half_pow
    };
    Ok(ComplexMatrix::from_fn(dim, dim, |i, k| {
        C64::new(amp * sign(i, k), 0.0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_hadamard() {
        let m = mub_transform(1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]]).unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn involution() {
        for n in 1..=4 {
            let m = mub_transform(n).unwrap();
            let sq = &m * &m;
            assert!(sq.max_abs_diff(&ComplexMatrix::identity(1 << n)) <= 1e-12);
            assert_eq!(m, m.adjoint());
        }
    }

    #[test]
    fn two_qubit_corner_entry() {
        // 3·3 = 1·1 + 1·1 ≡ 0 (mod 2)
        let m = mub_transform(2).unwrap();
        assert_eq!(m[(3, 3)], C64::new(0.5, 0.0));
        assert_eq!(m[(1, 3)], C64::new(-0.5, 0.0));
    }

    #[test]
    fn unbiased_with_computational_basis() {
        for n in 1..=4 {
            let m = mub_transform(n).unwrap();
            let d = (1usize << n) as f64;
            assert!(m
                .entries()
                .iter()
                .all(|z| (z.norm_sqr() - 1.0 / d).abs() <= 1e-15));
        }
    }

    #[test]
    fn bounds() {
        assert!(matches!(mub_transform(5), Err(Error::DimensionTooLarge(_))));
        assert!(mub_transform(0).is_err());
    }
}
