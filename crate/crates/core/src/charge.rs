//! Single-site operators of the truncated charge basis.
//!
//! The local Hilbert space keeps Cooper-pair numbers |n| <= n_max, so every
//! operator is a dense complex matrix of odd dimension d = 2*n_max + 1.
//! Charge n lives at row/column index n + n_max. Charge states pushed past
//! the cutoff are annihilated (hard truncation, no periodic wrap), which
//! leaves a shift defect localized at the extremal charges.
//!
//! Sign conventions: e^{i phi} raises charge, e^{i phi}|n> = |n+1>, and
//! cos(phi + pi/2) is stored exactly as built from shifts (it equals
//! -sin phi). Code that wants the operator +sin phi_j should use
//! [`cos_kphi`] with delta = -pi/2, which [`sin_phi`] wraps.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, the working representation of all local operators.
pub type CMatrix = Array2<Complex64>;

/// Hermitian single-site operator on the truncated charge basis.
#[derive(Debug, Clone)]
pub struct ChargeOperator {
    /// Charge cutoff; the matrix dimension is 2*n_max + 1.
    pub n_max: i64,
    pub matrix: CMatrix,
}

impl ChargeOperator {
    /// Local Hilbert-space dimension d = 2*n_max + 1.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Dimension of the truncated basis for a given cutoff.
pub fn basis_dim(n_max: i64) -> usize {
    (2 * n_max + 1) as usize
}

fn check_cutoff(n_max: i64) -> Result<()> {
    if n_max < 1 {
        return Err(Error::InvalidArgument(format!(
            "charge cutoff n_max must be >= 1, got {n_max}"
        )));
    }
    Ok(())
}

/// Charge-number operator n = diag(-n_max ... n_max).
pub fn number_operator(n_max: i64) -> Result<ChargeOperator> {
    check_cutoff(n_max)?;
    let d = basis_dim(n_max);
    let mut m = CMatrix::zeros((d, d));
    for k in 0..d {
        m[[k, k]] = Complex64::new(k as f64 - n_max as f64, 0.0);
    }
    Ok(ChargeOperator { n_max, matrix: m })
}

/// Truncated charge shift e^{i k phi}: |n> -> |n+k>, annihilating states
/// that would leave the cutoff. Negative k gives the conjugate transpose.
pub fn exp_iphi(k: i64, n_max: i64) -> Result<CMatrix> {
    check_cutoff(n_max)?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "exp_iphi requires a nonzero shift k".into(),
        ));
    }
    if k.unsigned_abs() as i64 > 2 * n_max {
        return Err(Error::InvalidArgument(format!(
            "shift k = {k} exceeds 2*n_max = {}; the truncated operator would be zero",
            2 * n_max
        )));
    }
    let d = basis_dim(n_max);
    let ka = k.unsigned_abs() as usize;
    let mut m = CMatrix::zeros((d, d));
    for col in 0..d - ka {
        // raising part sits on the ka-th subdiagonal: row = col + ka
        m[[col + ka, col]] = Complex64::new(1.0, 0.0);
    }
    if k < 0 {
        m = conj_transpose(&m);
    }
    Ok(m)
}

/// Josephson potential operator cos(k phi + delta), Hermitian by construction:
/// (e^{i delta} e^{i k phi} + e^{-i delta} e^{-i k phi}) / 2.
pub fn cos_kphi(k: i64, delta: f64, n_max: i64) -> Result<ChargeOperator> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "cos_kphi requires k >= 1, got {k}"
        )));
    }
    let up = exp_iphi(k, n_max)?;
    let down = conj_transpose(&up);
    let half = Complex64::new(0.5, 0.0);
    let phase = Complex64::from_polar(1.0, delta);
    let m = up.mapv(|z| z * phase * half) + down.mapv(|z| z * phase.conj() * half);
    Ok(ChargeOperator { n_max, matrix: m })
}

/// Operator sin(phi), i.e. cos_kphi(1, -pi/2). See the module docs for the
/// sign convention.
pub fn sin_phi(n_max: i64) -> Result<ChargeOperator> {
    cos_kphi(1, -std::f64::consts::FRAC_PI_2, n_max)
}

/// Operator cos(phi).
pub fn cos_phi(n_max: i64) -> Result<ChargeOperator> {
    cos_kphi(1, 0.0, n_max)
}

/// Charge parity e^{i pi n} = diag((-1)^n).
pub fn parity_operator(n_max: i64) -> Result<ChargeOperator> {
    check_cutoff(n_max)?;
    Ok(ChargeOperator {
        n_max,
        matrix: number_phase(1.0, n_max)?,
    })
}

/// Diagonal phase operator e^{i alpha pi n}. For alpha = 1 this is the
/// charge parity; general alpha feeds the string operators.
pub fn number_phase(alpha: f64, n_max: i64) -> Result<CMatrix> {
    check_cutoff(n_max)?;
    let d = basis_dim(n_max);
    let mut m = CMatrix::zeros((d, d));
    for k in 0..d {
        let n = k as f64 - n_max as f64;
        m[[k, k]] = Complex64::from_polar(1.0, alpha * std::f64::consts::PI * n);
    }
    Ok(m)
}

/// Charge conjugation C: |n> -> |-n>, the anti-diagonal permutation.
/// Satisfies C n C = -n and C e^{i phi} C = e^{-i phi}.
pub fn charge_conjugation(n_max: i64) -> Result<ChargeOperator> {
    check_cutoff(n_max)?;
    let d = basis_dim(n_max);
    let mut m = CMatrix::zeros((d, d));
    for k in 0..d {
        m[[d - 1 - k, k]] = Complex64::new(1.0, 0.0);
    }
    Ok(ChargeOperator { n_max, matrix: m })
}

/// Conjugate transpose of a dense complex matrix.
pub fn conj_transpose(m: &CMatrix) -> CMatrix {
    m.t().mapv(|z| z.conj())
}

/// Largest entry-wise deviation from Hermiticity, max |M - M^dagger|.
pub fn hermiticity_error(m: &CMatrix) -> f64 {
    let mt = conj_transpose(m);
    (m - &mt).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Frobenius norm.
pub fn frobenius_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry magnitude.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn number_operator_small() {
        let n = number_operator(1).unwrap();
        assert_eq!(n.dim(), 3);
        for (k, want) in [-1.0, 0.0, 1.0].iter().enumerate() {
            assert_eq!(n.matrix[[k, k]], c(*want, 0.0));
        }
    }

    #[test]
    fn number_operator_traceless_and_dim17() {
        for n_max in [1, 3, 8] {
            let n = number_operator(n_max).unwrap();
            let tr: Complex64 = (0..n.dim()).map(|k| n.matrix[[k, k]]).sum();
            assert_eq!(tr, c(0.0, 0.0));
        }
        assert_eq!(number_operator(8).unwrap().dim(), 17);
    }

    #[test]
    fn number_operator_rejects_bad_cutoff() {
        assert!(number_operator(0).is_err());
        assert!(number_operator(-2).is_err());
    }

    #[test]
    fn exp_iphi_is_the_raising_shift() {
        let e = exp_iphi(1, 1).unwrap();
        // ones at (|0> <- |-1>) and (|1> <- |0>)
        let mut want = CMatrix::zeros((3, 3));
        want[[1, 0]] = c(1.0, 0.0);
        want[[2, 1]] = c(1.0, 0.0);
        assert_eq!(e, want);
    }

    #[test]
    fn exp_iphi_rejects_oversize_shift() {
        assert!(exp_iphi(3, 1).is_err());
        assert!(exp_iphi(-5, 2).is_err());
        assert!(exp_iphi(0, 2).is_err());
        assert!(exp_iphi(4, 2).is_ok());
    }

    #[test]
    fn canonical_commutator_on_interior_rows() {
        // rows |n| <= n_max - k of [n, e^{ik phi}] - k e^{ik phi} vanish exactly
        for n_max in [1, 2, 4] {
            for k in 1..=2 {
                if k > 2 * n_max {
                    continue;
                }
                let n = number_operator(n_max).unwrap().matrix;
                let e = exp_iphi(k, n_max).unwrap();
                let comm = n.dot(&e) - e.dot(&n);
                let diff = &comm - &e.mapv(|z| z * c(k as f64, 0.0));
                let d = basis_dim(n_max);
                for row in 0..d {
                    let charge = row as i64 - n_max;
                    if charge.abs() <= n_max - k {
                        for col in 0..d {
                            assert_eq!(diff[[row, col]], c(0.0, 0.0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn truncated_shift_defect() {
        // e^{i phi} e^{-i phi} = I minus the projector on the top charge state
        let e = exp_iphi(1, 2).unwrap();
        let prod = e.dot(&conj_transpose(&e));
        let d = 5;
        let mut want = CMatrix::eye(d);
        want[[0, 0]] = c(0.0, 0.0); // |n> = |-n_max> never produced by raising
        assert_eq!(prod, want);
    }

    #[test]
    fn cos_phi_entries() {
        let m = cos_kphi(1, 0.0, 1).unwrap().matrix;
        let mut want = CMatrix::zeros((3, 3));
        for k in 0..2 {
            want[[k + 1, k]] = c(0.5, 0.0);
            want[[k, k + 1]] = c(0.5, 0.0);
        }
        assert_eq!(m, want);
    }

    #[test]
    fn cos_phi_plus_half_pi_is_minus_sin() {
        let m = cos_kphi(1, std::f64::consts::FRAC_PI_2, 2).unwrap().matrix;
        let s = sin_phi(2).unwrap().matrix;
        let diff = &m + &s;
        assert!(max_abs(&diff) < 1e-15, "cos(phi + pi/2) should equal -sin phi");
        // lower shift diagonal carries +i/2, upper -i/2
        assert!((m[[1, 0]] - c(0.0, 0.5)).norm() < 1e-15);
        assert!((m[[0, 1]] - c(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn cos_2phi_selection_rule() {
        let m = cos_kphi(2, 0.0, 2).unwrap().matrix;
        for row in 0..5i64 {
            for col in 0..5i64 {
                if (row - col).abs() != 2 {
                    assert_eq!(m[[row as usize, col as usize]], c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn charge_conjugation_involution_and_action() {
        for n_max in [1, 3] {
            let cc = charge_conjugation(n_max).unwrap().matrix;
            let d = basis_dim(n_max);
            assert_eq!(cc.dot(&cc), CMatrix::eye(d));

            let n = number_operator(n_max).unwrap().matrix;
            let cnc = cc.dot(&n).dot(&cc);
            assert_eq!(cnc, n.mapv(|z| -z));

            let e_up = exp_iphi(1, n_max).unwrap();
            let e_dn = exp_iphi(-1, n_max).unwrap();
            assert_eq!(cc.dot(&e_up).dot(&cc), e_dn);
        }
    }

    #[test]
    fn parity_times_conjugation_squares_to_identity() {
        for n_max in [1, 2, 5] {
            let p = parity_operator(n_max).unwrap().matrix;
            let cc = charge_conjugation(n_max).unwrap().matrix;
            let o = p.dot(&cc);
            let sq = o.dot(&o);
            assert!(max_abs(&(&sq - &CMatrix::eye(basis_dim(n_max)))) < 1e-15);
        }
    }

    #[test]
    fn z2_action_on_cosines() {
        // (parity C) cos(k phi + delta) (parity C)^{-1} = cos(k phi + k pi - delta)
        let n_max = 3;
        let p = parity_operator(n_max).unwrap().matrix;
        let cc = charge_conjugation(n_max).unwrap().matrix;
        let o = p.dot(&cc);
        let o_inv = conj_transpose(&o);
        for k in 1..=2i64 {
            for delta in [0.0, 0.4, std::f64::consts::FRAC_PI_2, -1.1] {
                let lhs = o
                    .dot(&cos_kphi(k, delta, n_max).unwrap().matrix)
                    .dot(&o_inv);
                let rhs = cos_kphi(k, k as f64 * std::f64::consts::PI - delta, n_max)
                    .unwrap()
                    .matrix;
                assert!(
                    max_abs(&(&lhs - &rhs)) < 1e-14,
                    "k={k} delta={delta} mismatch"
                );
            }
        }
        // the Ising potential operators are left exactly invariant
        for (k, delta) in [(1, std::f64::consts::FRAC_PI_2), (2, 0.0)] {
            let m = cos_kphi(k, delta, n_max).unwrap().matrix;
            let conj = o.dot(&m).dot(&o_inv);
            assert!(max_abs(&(&conj - &m)) < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn cos_kphi_hermitian(k in 1i64..5, n_max in 2i64..6, delta in -3.2f64..3.2) {
            prop_assume!(k <= 2 * n_max);
            let m = cos_kphi(k, delta, n_max).unwrap().matrix;
            prop_assert!(hermiticity_error(&m) < 1e-14);
        }

        #[test]
        fn parity_conjugation_product_squares_exactly(n_max in 1i64..8) {
            let p = parity_operator(n_max).unwrap().matrix;
            let cc = charge_conjugation(n_max).unwrap().matrix;
            let o = p.dot(&cc);
            let sq = o.dot(&o);
            prop_assert!(max_abs(&(&sq - &CMatrix::eye(basis_dim(n_max)))) < 1e-15);
        }
    }
}
