//! Catalecticant matrices and what they say about border rank.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::rat::factorial;
use crate::exactlin::{int, Rat, RatMatrix};
use crate::forms::{monomial_rank, monomials, veronese_coords, Form, Line};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("the zero form has no border rank")]
    ZeroForm,
    #[error("contraction degree {k} outside 0..={d}")]
    BadDegree { k: u32, d: u32 },
    #[error("point {0} of the set lies on the line")]
    PointOnLine(usize),
    #[error("ambient dimension mismatch")]
    Mismatch,
}

/// Matrix of `G -> G(d)F` on dual forms of degree `k`. Row `a` is the
/// degree-`(d-k)` monomial `x^a`, column `b` the dual monomial `y^b`.
#[derive(Clone, Debug)]
pub struct CatMatrix {
    pub k: u32,
    pub matrix: RatMatrix,
    pub row_index: Vec<Vec<u32>>,
    pub col_index: Vec<Vec<u32>>,
}

pub fn cat_matrix(f: &Form, k: u32) -> Result<CatMatrix, CatError> {
    let d = f.degree();
    if k > d {
        return Err(CatError::BadDegree { k, d });
    }
    let n = f.nvars();
    let rows = monomials(n, d - k);
    let cols = monomials(n, k);
    let mut mat = RatMatrix::zeros(rows.len(), cols.len());
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in cols.iter().enumerate() {
            let g: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let c = &f.coeffs()[monomial_rank(&g)];
            if c.is_zero() {
                continue;
            }
            let w = g
                .iter()
                .zip(a)
                .fold(BigInt::from(1), |acc, (&x, &y)| acc * factorial(x) / factorial(y));
            mat[(i, j)] = c * Rat::from_integer(w);
        }
    }
    Ok(CatMatrix { k, matrix: mat, row_index: rows, col_index: cols })
}

/// `rank cat_k(F)` for `k = 0..=d`.
pub fn catalecticant_ranks(f: &Form) -> Vec<usize> {
    (0..=f.degree()).map(|k| cat_matrix(f, k).expect("k <= d").matrix.rank()).collect()
}

/// Largest catalecticant rank. A lower bound for the border rank, equal to
/// it when the evincing scheme is regular enough.
pub fn border_rank_estimate(f: &Form) -> Result<usize, CatError> {
    if f.is_zero() {
        return Err(CatError::ZeroForm);
    }
    Ok(catalecticant_ranks(f).into_iter().max().unwrap_or(1))
}

/// Basis of the degree-`k` apolar piece `{G : G(d)F = 0}`, as dual forms.
pub fn apolar_piece(f: &Form, k: u32) -> Result<Vec<Form>, CatError> {
    let cm = cat_matrix(f, k)?;
    Ok(cm
        .matrix
        .kernel_basis()
        .into_iter()
        .map(|v| Form::from_coeffs(f.m(), k, v))
        .collect())
}

/// Whether `nu_d(E)` is independent of the span of `nu_d(line)`: the stacked
/// matrix of `d + 1` points of the rational normal curve and the points of
/// `E` has full rank `d + 1 + #E`.
pub fn independence_check(line: &Line, e: &[Vec<Rat>], d: u32) -> Result<bool, CatError> {
    let mut rows = Vec::with_capacity(d as usize + 1 + e.len());
    for j in 0..=d {
        let p = line.point(&int(1), &int(j as i64));
        rows.push(veronese_coords(&p, d).expect("nonzero line point"));
    }
    for (i, p) in e.iter().enumerate() {
        if p.len() != line.m() + 1 {
            return Err(CatError::Mismatch);
        }
        if line.contains(p) {
            return Err(CatError::PointOnLine(i));
        }
        rows.push(veronese_coords(p, d).map_err(|_| CatError::PointOnLine(i))?);
    }
    let n = rows.len();
    Ok(RatMatrix::from_rows(rows).rank() == n)
}
