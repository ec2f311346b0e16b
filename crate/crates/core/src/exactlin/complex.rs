//! Floating-point linear algebra over the complex numbers, used only where
//! exact rational data is unavailable (irrational roots).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub fn cmatrix_from_rows(rows: &[Vec<Complex64>]) -> CMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    CMatrix::from_fn(r, c, |i, j| rows[i][j])
}

/// Numerical rank: singular values above `tol * sigma_max`.
pub fn numeric_rank(a: &CMatrix, tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let sv = a.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// Unit vector spanning the numerical null space of a square matrix
/// (right singular vector of the smallest singular value).
pub fn null_vector(a: &CMatrix) -> DVector<Complex64> {
    let n = a.ncols();
    // pad to square so the thin SVD carries a full V
    let mut sq = CMatrix::zeros(n.max(a.nrows()), n);
    sq.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
    let svd = sq.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .expect("non-empty");
    vt.row(idx).transpose().map(|z| z.conj())
}

/// Least-squares solution of `A x = b` and its relative residual
/// `|Ax - b| / max(|b|, 1e-300)`.
pub fn least_squares(a: &CMatrix, b: &[Complex64]) -> (Vec<Complex64>, f64) {
    let bv = DVector::from_column_slice(b);
    let bn = bv.norm().max(1e-300);
    if a.ncols() == 0 {
        return (Vec::new(), 1.0);
    }
    // equilibrate columns, then refine: the SVD solve alone can lose several
    // digits on Vandermonde-like systems
    let scale: Vec<f64> = a.column_iter().map(|c| c.norm().max(1e-300)).collect();
    let mut s = a.clone();
    for (j, f) in scale.iter().enumerate() {
        s.column_mut(j).unscale_mut(*f);
    }
    let svd = s.clone().svd(true, true);
    let tol = 1e-13 * svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let solve = |r: &DVector<Complex64>| svd.solve(r, tol).unwrap_or_else(|_| DVector::zeros(s.ncols()));
    let mut y = solve(&bv);
    let mut res = (&s * &y - &bv).norm();
    for _ in 0..3 {
        let cand = &y - solve(&(&s * &y - &bv));
        let r = (&s * &cand - &bv).norm();
        if r >= res {
            break;
        }
        y = cand;
        res = r;
    }
    let x: Vec<Complex64> = y.iter().zip(&scale).map(|(z, f)| z / *f).collect();
    (x, res / bn)
}

/// Whether `target` lies numerically in the row span of `rows`.
pub fn in_row_span(rows: &[Vec<Complex64>], target: &[Complex64], tol: f64) -> bool {
    if target.iter().all(|z| z.norm() == 0.0) {
        return true;
    }
    if rows.is_empty() {
        return false;
    }
    // normalize rows so the residual is scale free
    let scaled: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| {
            let n = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
            r.iter().map(|z| z / n).collect()
        })
        .collect();
    let a = cmatrix_from_rows(&scaled).transpose();
    least_squares(&a, target).1 <= tol
}
