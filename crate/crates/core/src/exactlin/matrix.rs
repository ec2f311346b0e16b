//! Dense matrices over the rationals with exact elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::rat::{weight, Rat};
use super::upoly::UPoly;
use super::LinalgError;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Result of [`RatMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: RatMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Panics when the rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RatMatrix { rows: r, cols: c, data }
    }

    pub fn from_cols(cols: Vec<Vec<Rat>>) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RatMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        let data = vals.iter().map(|&v| super::rat::int(v)).collect();
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, e: usize) -> RatMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).fold(Rat::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        if self.rows == 0 {
            return other.clone();
        }
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn push_row(&mut self, row: Vec<Rat>) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form in exact arithmetic. Among the rows able to
    /// supply a pivot, the one whose pivot entry has the smallest bit size is
    /// chosen, which keeps intermediate fractions short.
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let best = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by_key(|&i| weight(&a[(i, c)]));
            let Some(p) = best else { continue };
            a.swap_rows(r, p);
            let inv = a[(r, c)].recip();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let v = &a[(r, j)] * &inv;
                    a[(r, j)] = v;
                }
            }
            let pivot_row: Vec<Rat> = a.row(r)[c..].to_vec();
            for i in 0..rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for (off, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let j = c + off;
                        let v = &a[(i, j)] - &f * pv;
                        a[(i, j)] = v;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        Rref { reduced: a, rank: r, pivot_cols }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        if self.rows > self.cols {
            self.transpose().rref().rank
        } else {
            self.rref().rank
        }
    }

    /// Basis of the right null space. Each vector has its first nonzero entry
    /// equal to 1; vectors are ordered by their free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let Rref { reduced, rank, pivot_cols } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &pc) in pivot_cols.iter().enumerate().take(rank) {
                    v[pc] = -reduced[(i, f)].clone();
                }
                normalize_leading(&mut v);
                v
            })
            .collect()
    }

    /// Some exact solution of `A x = b` with free variables set to zero.
    pub fn solve_exact(&self, b: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Rref { reduced, rank, pivot_cols } = aug.rref();
        if pivot_cols.last() == Some(&self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &pc) in pivot_cols.iter().enumerate().take(rank) {
            x[pc] = reduced[(i, self.cols)].clone();
        }
        Ok(x)
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        let cols = (0..b.cols)
            .map(|j| self.solve_exact(&b.col(j)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RatMatrix::from_cols(cols))
    }

    pub fn inverse(&self) -> Result<RatMatrix, LinalgError> {
        assert_eq!(self.rows, self.cols);
        if self.rank() < self.rows {
            return Err(LinalgError::Singular);
        }
        self.solve_matrix(&Self::identity(self.rows))
    }

    /// Characteristic polynomial `det(xI - A)` via Faddeev-LeVerrier.
    pub fn charpoly(&self) -> UPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = Self::zeros(n, n);
        let mut c_prev = Rat::one();
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] += &c_prev;
            }
            m = next;
            let am = self.mul(&m);
            let c = -am.trace() / Rat::from_integer((k as i64).into());
            coeffs[n - k] = c.clone();
            c_prev = c;
        }
        UPoly::new(coeffs)
    }
}

pub(crate) fn normalize_leading(v: &mut [Rat]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x = &*x / &lead;
            }
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::{int, rat};

    #[test]
    fn rref_identity_and_proportional() {
        let r = RatMatrix::identity(2).rref();
        assert_eq!((r.rank, r.pivot_cols), (2, vec![0, 1]));
        let r = RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]).rref();
        assert_eq!((r.rank, r.pivot_cols.clone()), (1, vec![0]));
        assert_eq!(r.reduced, RatMatrix::from_i64(2, 2, &[1, 2, 0, 0]));
    }

    #[test]
    fn rank_with_known_row_space() {
        let base = RatMatrix::from_i64(3, 7, &[
            1, 0, 2, -1, 3, 0, 1, //
            0, 1, 1, 4, -2, 5, 0, //
            2, -3, 0, 1, 1, 1, 7,
        ]);
        let mut rows = base.to_rows();
        let s01: Vec<Rat> = rows[0].iter().zip(&rows[1]).map(|(a, b)| a + b).collect();
        let s012: Vec<Rat> = s01.iter().zip(&rows[2]).map(|(a, b)| a + b).collect();
        rows.push(s01);
        rows.push(s012);
        let a = RatMatrix::from_rows(rows);
        assert_eq!(a.rank(), 3);
        assert_eq!(a.kernel_basis().len(), 4);
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
        let k = RatMatrix::from_i64(1, 2, &[1, -1]).kernel_basis();
        assert_eq!(k, vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![rat(3, 2), int(-7), int(0)];
        assert_eq!(RatMatrix::identity(3).solve_exact(&b).unwrap(), b);
        let x = RatMatrix::from_i64(1, 2, &[1, 1]).solve_exact(&[int(2)]).unwrap();
        assert_eq!(x, vec![int(2), int(0)]);
        let inconsistent = RatMatrix::from_i64(2, 1, &[1, 1]).solve_exact(&[int(1), int(2)]);
        assert_eq!(inconsistent, Err(LinalgError::NoSolution));
    }

    #[test]
    fn charpoly_of_companion() {
        // companion matrix of x^3 - 6x^2 + 11x - 6
        let a = RatMatrix::from_i64(3, 3, &[0, 0, 6, 1, 0, -11, 0, 1, 6]);
        assert_eq!(a.charpoly(), UPoly::from_i64(&[-6, 11, -6, 1]));
        assert_eq!(RatMatrix::identity(2).charpoly(), UPoly::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn inverse_round_trip() {
        let a = RatMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        assert_eq!(a.mul(&a.inverse().unwrap()), RatMatrix::identity(2));
        assert_eq!(RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]).inverse(), Err(LinalgError::Singular));
    }
}
