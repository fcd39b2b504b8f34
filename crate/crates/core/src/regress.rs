use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Least-squares fit by Householder QR.
pub(crate) struct OlsFit {
    pub coef: Vec<f64>,
    pub rss: f64,
}

/// Solves `min |y - Xβ|²`. Columns that are (numerically) linear
/// combinations of earlier ones give a rank error.
pub(crate) fn ols(design: DMatrix<f64>, y: &[f64]) -> Result<OlsFit> {
    let (n, k) = design.shape();
    if n < k {
        return Err(Error::Rank(format!("{n} observations for {k} regressors")));
    }
    let yv = DVector::from_column_slice(y);
    let scale: Vec<f64> = design
        .column_iter()
        .map(|c| c.norm())
        .collect();
    if let Some(j) = scale.iter().position(|&s| s == 0.0) {
        return Err(Error::Rank(format!("regressor {j} is identically zero")));
    }
    // equilibrate columns so the rank test is scale-free
    let mut x = design.clone();
    for (j, s) in scale.iter().enumerate() {
        x.column_mut(j).unscale_mut(*s);
    }
    let qr = x.qr();
    let r = qr.r();
    for j in 0..k {
        if r[(j, j)].abs() < 1e-9 {
            return Err(Error::Rank(format!("regressor {j} is collinear with earlier ones")));
        }
    }
    let qty = qr.q().transpose() * &yv;
    let beta = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| Error::Rank("singular triangular factor".into()))?;
    let coef: Vec<f64> = beta.iter().zip(&scale).map(|(b, s)| b / s).collect();
    let fitted = &design * DVector::from_column_slice(&coef);
    let rss = (yv - fitted).norm_squared();
    Ok(OlsFit { coef, rss })
}
