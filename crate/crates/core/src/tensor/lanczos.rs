//! Hermitian Lanczos iteration for the lowest eigenpair.
//!
//! Small Krylov blocks with full reorthogonalization, restarted from the
//! current Ritz vector until the explicit residual |H x - E x| meets the
//! tolerance. Memory stays at `block` vectors, which matters for the large
//! two-site problems in the DMRG inner loop.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub struct LanczosOutcome {
    pub eigenvalue: f64,
    pub vector: Array1<Complex64>,
    pub residual: f64,
    pub matvecs: usize,
}

fn norm(v: &Array1<Complex64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn dot(a: &Array1<Complex64>, b: &Array1<Complex64>) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Lowest eigenpair of the Hermitian operator given by `matvec`, started
/// from `v0`. Converged when ||H x - E x|| <= tol * max(1, |E|).
pub fn lowest_eigenpair(
    mut matvec: impl FnMut(&Array1<Complex64>) -> Array1<Complex64>,
    v0: &Array1<Complex64>,
    tol: f64,
    max_matvecs: usize,
    block: usize,
) -> Result<LanczosOutcome> {
    let dim = v0.len();
    let n0 = norm(v0);
    if !(n0 > 0.0) || !n0.is_finite() {
        return Err(Error::InvalidArgument(
            "Lanczos needs a nonzero, finite start vector".into(),
        ));
    }
    let block = block.clamp(2, dim.max(2));
    let mut v = v0.mapv(|z| z / n0);
    let mut matvecs = 0usize;
    let mut best_val = f64::INFINITY;
    let mut best_res = f64::INFINITY;

    loop {
        let mut basis: Vec<Array1<Complex64>> = vec![v.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();

        for j in 0..block {
            let mut w = matvec(&basis[j]);
            matvecs += 1;
            let alpha = dot(&basis[j], &w).re;
            alphas.push(alpha);
            // full reorthogonalization against the stored block
            for u in &basis {
                let c = dot(u, &w);
                w.zip_mut_with(u, |wi, ui| *wi -= c * ui);
            }
            for u in &basis {
                let c = dot(u, &w);
                w.zip_mut_with(u, |wi, ui| *wi -= c * ui);
            }
            let beta = norm(&w);
            let scale = alphas.iter().fold(1.0f64, |m, a| m.max(a.abs()));
            if beta <= 1e-14 * scale || j + 1 == block || basis.len() == dim {
                break;
            }
            betas.push(beta);
            basis.push(w.mapv(|z| z / beta));
        }

        // tridiagonal Ritz problem
        let m = alphas.len();
        let mut t = Array2::<f64>::zeros((m, m));
        for (i, &a) in alphas.iter().enumerate() {
            t[[i, i]] = a;
        }
        for (i, &b) in betas.iter().enumerate() {
            t[[i, i + 1]] = b;
            t[[i + 1, i]] = b;
        }
        let (vals, vecs) = t.eigh(UPLO::Lower)?;
        let theta = vals[0];
        let mut ritz = Array1::<Complex64>::zeros(dim);
        for (i, u) in basis.iter().enumerate() {
            let c = Complex64::new(vecs[[i, 0]], 0.0);
            ritz.zip_mut_with(u, |r, ui| *r += c * ui);
        }
        let rn = norm(&ritz);
        ritz.mapv_inplace(|z| z / rn);

        let hx = matvec(&ritz);
        matvecs += 1;
        let mut res_vec = hx;
        res_vec.zip_mut_with(&ritz, |r, x| *r -= Complex64::new(theta, 0.0) * x);
        let residual = norm(&res_vec);

        if theta < best_val || residual < best_res {
            best_val = theta;
            best_res = residual;
        }
        if residual <= tol * theta.abs().max(1.0) {
            return Ok(LanczosOutcome {
                eigenvalue: theta,
                vector: ritz,
                residual,
                matvecs,
            });
        }
        if matvecs >= max_matvecs {
            return Err(Error::NonConvergence { residual });
        }
        v = ritz;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_matvec(h: &Array2<Complex64>) -> impl FnMut(&Array1<Complex64>) -> Array1<Complex64> + '_ {
        move |v| h.dot(v)
    }

    #[test]
    fn two_by_two_offdiagonal() {
        let mut h = Array2::<Complex64>::zeros((2, 2));
        h[[0, 1]] = Complex64::new(1.0, 0.0);
        h[[1, 0]] = Complex64::new(1.0, 0.0);
        let v0 = Array1::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.0)]);
        let out = lowest_eigenpair(dense_matvec(&h), &v0, 1e-12, 100, 8).unwrap();
        assert!((out.eigenvalue + 1.0).abs() < 1e-12);
        assert!((out.vector[0].norm() - (0.5f64).sqrt()).abs() < 1e-8);
    }

    #[test]
    fn diagonal_with_degenerate_tail() {
        let n = 40;
        let mut h = Array2::<Complex64>::zeros((n, n));
        for i in 0..n {
            h[[i, i]] = Complex64::new(i as f64 * 0.5 - 3.0, 0.0);
        }
        let v0 = Array1::from_shape_fn(n, |i| Complex64::new(1.0 + (i as f64 * 0.7).sin(), 0.1));
        let out = lowest_eigenpair(dense_matvec(&h), &v0, 1e-11, 500, 12).unwrap();
        assert!((out.eigenvalue + 3.0).abs() < 1e-9);
        assert!(out.residual < 1e-10);
    }

    #[test]
    fn reports_nonconvergence() {
        let n = 60;
        let h = Array2::from_shape_fn((n, n), |(i, j)| {
            Complex64::new(
                ((i * 7 + j * 3) as f64).sin(),
                if i < j { 0.2 } else if i > j { -0.2 } else { 0.0 },
            )
        });
        let h = &h + &h.t().mapv(|z| z.conj());
        let v0 = Array1::from_elem(n, Complex64::new(1.0, 0.0));
        let res = lowest_eigenpair(dense_matvec(&h), &v0, 1e-14, 4, 3);
        assert!(matches!(res, Err(Error::NonConvergence { .. })));
    }
}
