//! Sylvester's algorithm for binary forms.
//!
//! A binary form `Q = sum c_i L1^(d-i) L2^i` is handled through its Hankel
//! matrices `H_r[i][j] = a_(i+j)` with `a_i = c_i / binom(d, i)`. A kernel
//! vector `k` of `H_r` is the dual form `K = sum k_j y0^(r-j) y1^j`, and
//! `K` annihilates `(u L1 + v L2)^d` exactly when `K(u, v) = 0`. So a linear
//! factor `a y0 + b y1` of `K` corresponds to the point `b L1 - a L2`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::complex::least_squares;
use crate::exactlin::rat::{binomial, to_f64};
use crate::exactlin::{int, CxApprox, Rat, RatMatrix, RootPolicy, UPoly};
use crate::forms::{Form, Line};
use crate::schemes::{Coords, PointMult, Scheme0Dim};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BinaryError {
    #[error("the zero form")]
    ZeroForm,
    #[error("degree must be at least 1")]
    DegreeTooSmall,
    #[error("border rank {sbr} is not below (d+2)/2 for d = {d}; the decomposition is not unique")]
    NotSubgeneric { sbr: usize, d: u32 },
    #[error("interpolation residual {0:e} too large")]
    IllConditioned(f64),
    #[error("degree {0} too large for the brute-force oracle")]
    DegreeTooLarge(u32),
}

/// Coefficients in the basis `L1^(d-i) L2^i` of a line, or of `x0, x1` when
/// no line is attached.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    d: u32,
    coords: Vec<Rat>,
    line: Option<Line>,
}

impl BinaryForm {
    pub fn new(coords: Vec<Rat>, line: Option<Line>) -> Self {
        assert!(!coords.is_empty(), "a binary form needs d + 1 >= 1 coefficients");
        BinaryForm { d: (coords.len() - 1) as u32, coords, line }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect(), None)
    }

    /// A form in two variables read as a binary form.
    pub fn from_form(f: &Form) -> Self {
        assert_eq!(f.m(), 1, "not a binary form");
        Self::new(f.coeffs().to_vec(), None)
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn line(&self) -> Option<&Line> {
        self.line.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coords.iter().map(|x| x * c).collect(), self.line.clone())
    }

    /// Ambient dimension of the points this form talks about.
    pub fn m(&self) -> usize {
        self.line.as_ref().map_or(1, Line::m)
    }

    pub fn to_form(&self) -> Form {
        match &self.line {
            Some(l) => l.expand(&self.coords),
            None => Form::from_coeffs(1, self.d, self.coords.clone()),
        }
    }

    /// `u L1 + v L2` in ambient coordinates.
    pub fn point(&self, u: &Rat, v: &Rat) -> Vec<Rat> {
        match &self.line {
            Some(l) => l.point(u, v),
            None => vec![u.clone(), v.clone()],
        }
    }

    fn point_coords(&self, root: &Coords) -> Coords {
        match root {
            Coords::Exact(uv) => Coords::Exact(self.point(&uv[0], &uv[1])),
            Coords::Approx(uv) => {
                let (u, v) = (uv[0].to_c64(), uv[1].to_c64());
                let p = match &self.line {
                    Some(l) => l.point_c(u, v),
                    None => vec![u, v],
                };
                Coords::Approx(p.into_iter().map(|z| CxApprox::from_c64(z).with_tol(uv[0].tol)).collect())
            }
        }
    }

    pub fn hankel(&self, r: u32) -> RatMatrix {
        let a: Vec<Rat> = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| c / Rat::from_integer(binomial(self.d, i as u32)))
            .collect();
        let (rows, cols) = ((self.d - r + 1) as usize, (r + 1) as usize);
        let mut h = RatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                h[(i, j)] = a[i + j].clone();
            }
        }
        h
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SylvesterResult {
    pub sbr: usize,
    pub sr: usize,
    /// Coefficients `k_0..k_sbr` of the chosen kernel element.
    pub kernel: Vec<Rat>,
    pub kernel_dim: usize,
    pub square_free: bool,
}

/// `p(z) = K(z, 1)` in ascending powers, and the multiplicity of the root
/// `(1:0)`.
fn dehomogenize(k: &[Rat]) -> (UPoly, usize) {
    let r = k.len() - 1;
    let jmin = k.iter().position(|x| !x.is_zero()).unwrap_or(r + 1);
    let coeffs = (0..=r).map(|i| k[r - i].clone()).collect();
    (UPoly::new(coeffs), jmin)
}

/// Whether the binary form `sum k_j y0^(r-j) y1^j` has `r` distinct roots.
pub fn binary_square_free(k: &[Rat]) -> bool {
    let (p, jmin) = dehomogenize(k);
    !p.is_zero() && jmin <= 1 && p.is_square_free()
}

/// No common root, counting the root at infinity.
fn coprime(a: &[Rat], b: &[Rat]) -> bool {
    let (pa, ja) = dehomogenize(a);
    let (pb, jb) = dehomogenize(b);
    !(ja > 0 && jb > 0) && pa.gcd(&pb).degree() == Some(0)
}

/// Roots `(u:v)` of a binary form with multiplicities, each `(u, v)`
/// normalized to first nonzero entry 1.
pub fn binary_roots(k: &[Rat], policy: &RootPolicy) -> Vec<(Coords, usize)> {
    let (p, jmin) = dehomogenize(k);
    let mut out = Vec::new();
    if jmin > 0 {
        out.push((Coords::Exact(vec![Rat::one(), Rat::zero()]), jmin));
    }
    for (f, e) in p.square_free_factors() {
        let (rat_roots, rest) = f.split_rational_roots(policy);
        for z in rat_roots {
            out.push((Coords::Exact(vec![z, Rat::one()]), e));
        }
        if rest.degree().unwrap_or(0) > 0 {
            for (z, _) in rest.numeric_roots(policy) {
                let c = vec![z.with_tol(policy.eq_tol.max(1e-8)), CxApprox::real(1.0)];
                out.push((Coords::Approx(c).canonical(), e));
            }
        }
    }
    out
}

/// Moment-curve combinations `sum t^i b_i` of a kernel basis, used to pick a
/// deterministic generic element.
fn moment_combinations(basis: &[Vec<Rat>], limit: i64) -> impl Iterator<Item = Vec<Rat>> + '_ {
    let ts = (1..=limit).flat_map(|t| [t, -t]);
    ts.map(move |t| {
        let n = basis[0].len();
        let mut v = vec![Rat::zero(); n];
        let mut w = Rat::one();
        for b in basis {
            for (x, y) in v.iter_mut().zip(b) {
                *x += &w * y;
            }
            w *= int(t);
        }
        v
    })
}

pub fn sylvester_analyze(q: &BinaryForm) -> Result<SylvesterResult, BinaryError> {
    if q.is_zero() {
        return Err(BinaryError::ZeroForm);
    }
    let d = q.degree();
    if d == 0 {
        return Err(BinaryError::DegreeTooSmall);
    }
    for r in 1..=d {
        let ker = q.hankel(r).kernel_basis();
        if ker.is_empty() {
            continue;
        }
        let r_us = r as usize;
        if ker.len() == 1 {
            let square_free = binary_square_free(&ker[0]);
            let sr = if square_free { r_us } else { d as usize - r_us + 2 };
            return Ok(SylvesterResult { sbr: r_us, sr, kernel: ker[0].clone(), kernel_dim: 1, square_free });
        }
        // a pencil without base points contains square-free members
        let pick = moment_combinations(&ker, 64).find(|v| binary_square_free(v));
        let (kernel, square_free) = match pick {
            Some(v) => (v, true),
            None => (ker[0].clone(), false),
        };
        return Ok(SylvesterResult { sbr: r_us, sr: r_us, kernel, kernel_dim: ker.len(), square_free });
    }
    unreachable!("H_d has a kernel")
}

fn require_subgeneric(q: &BinaryForm) -> Result<SylvesterResult, BinaryError> {
    let s = sylvester_analyze(q)?;
    if 2 * s.sbr >= q.degree() as usize + 2 {
        return Err(BinaryError::NotSubgeneric { sbr: s.sbr, d: q.degree() });
    }
    Ok(s)
}

fn second_point(root: &Coords) -> Coords {
    match root {
        Coords::Exact(uv) => Coords::Exact(vec![-uv[1].clone(), uv[0].clone()]),
        Coords::Approx(uv) => Coords::Approx(vec![
            CxApprox::from_c64(-uv[1].to_c64().conj()),
            CxApprox::from_c64(uv[0].to_c64().conj()),
        ]),
    }
}

fn scheme_from_roots(q: &BinaryForm, roots: &[(Coords, usize)]) -> Scheme0Dim {
    let parts = roots
        .iter()
        .map(|(root, e)| {
            let p = q.point_coords(root);
            if *e == 1 {
                PointMult::simple(p)
            } else {
                PointMult::jet(p, *e, q.point_coords(&second_point(root)))
            }
        })
        .collect();
    Scheme0Dim::new(q.m(), parts)
}

/// The unique scheme of degree `sbr(Q)` on the line whose span contains `Q`.
pub fn canonical_scheme(q: &BinaryForm, policy: &RootPolicy) -> Result<Scheme0Dim, BinaryError> {
    let s = require_subgeneric(q)?;
    Ok(scheme_from_roots(q, &binary_roots(&s.kernel, policy)))
}

/// One term `l^(d - d_i) m` of a generalized decomposition. `l` holds the
/// line coordinates `(u, v)` of `l = u L1 + v L2`, `m` the coefficients of a
/// binary form of degree `d_i` in the same basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GenTerm {
    pub l: Coords,
    pub m: Coords,
    pub d_i: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenDecomp {
    pub d: u32,
    pub terms: Vec<GenTerm>,
}

impl GenDecomp {
    /// `sum (d_i + 1)`.
    pub fn s(&self) -> usize {
        self.terms.iter().map(|t| t.d_i + 1).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.iter().all(|t| t.l.is_exact() && t.m.is_exact())
    }

    /// Coefficients of `sum l_i^(d-d_i) m_i` in the line basis.
    pub fn reconstruct(&self) -> Option<Vec<Rat>> {
        let mut acc = vec![Rat::zero(); self.d as usize + 1];
        for t in &self.terms {
            let (l, m) = (t.l.exact()?, t.m.exact()?);
            let col = term_columns(self.d, t.d_i, &l[0], &l[1]);
            for (c, mu) in col.iter().zip(m) {
                for (a, x) in acc.iter_mut().zip(c) {
                    *a += mu * x;
                }
            }
        }
        Some(acc)
    }

    pub fn reconstruct_c(&self) -> Vec<Complex64> {
        let mut acc = vec![Complex64::zero(); self.d as usize + 1];
        for t in &self.terms {
            let (l, m) = (t.l.to_c64(), t.m.to_c64());
            for (c, mu) in term_columns_c(self.d, t.d_i, l[0], l[1]).iter().zip(&m) {
                for (a, x) in acc.iter_mut().zip(c) {
                    *a += mu * x;
                }
            }
        }
        acc
    }
}

/// Columns `l^(d - di) L1^(di - j) L2^j`, `j = 0..=di`, in the line basis.
pub(crate) fn term_columns(d: u32, di: usize, u: &Rat, v: &Rat) -> Vec<Vec<Rat>> {
    let n = d as usize - di;
    let lp: Vec<Rat> = (0..=n)
        .map(|i| {
            Rat::from_integer(binomial(n as u32, i as u32))
                * num_traits::pow(u.clone(), n - i)
                * num_traits::pow(v.clone(), i)
        })
        .collect();
    (0..=di)
        .map(|j| {
            let mut col = vec![Rat::zero(); d as usize + 1];
            for (i, c) in lp.iter().enumerate() {
                col[i + j] = c.clone();
            }
            col
        })
        .collect()
}

pub(crate) fn term_columns_c(d: u32, di: usize, u: Complex64, v: Complex64) -> Vec<Vec<Complex64>> {
    let n = d as usize - di;
    let lp: Vec<Complex64> = (0..=n)
        .map(|i| u.powu((n - i) as u32) * v.powu(i as u32) * to_f64(&Rat::from_integer(binomial(n as u32, i as u32))))
        .collect();
    (0..=di)
        .map(|j| {
            let mut col = vec![Complex64::zero(); d as usize + 1];
            for (i, c) in lp.iter().enumerate() {
                col[i + j] = *c;
            }
            col
        })
        .collect()
}

/// `Q = sum l_i^(d - d_i) m_i` with the `l_i` the roots of the minimal
/// kernel element and `d_i + 1` their multiplicities.
pub fn generalized_decomposition(q: &BinaryForm, policy: &RootPolicy) -> Result<GenDecomp, BinaryError> {
    let s = require_subgeneric(q)?;
    let mut roots = binary_roots(&s.kernel, policy);
    roots.sort_by(|a, b| a.0.order(&b.0));
    let d = q.degree();
    if roots.iter().all(|(r, _)| r.is_exact()) {
        let mut cols = Vec::new();
        for (r, e) in &roots {
            let uv = r.exact().expect("exact");
            cols.extend(term_columns(d, e - 1, &uv[0], &uv[1]));
        }
        let x = RatMatrix::from_cols(cols)
            .solve_exact(q.coords())
            .map_err(|_| BinaryError::IllConditioned(f64::INFINITY))?;
        let mut at = 0;
        let terms = roots
            .into_iter()
            .map(|(l, e)| {
                let m = Coords::Exact(x[at..at + e].to_vec());
                at += e;
                GenTerm { l, m, d_i: e - 1 }
            })
            .collect();
        return Ok(GenDecomp { d, terms });
    }
    let mut cols = Vec::new();
    for (r, e) in &roots {
        let uv = r.to_c64();
        cols.extend(term_columns_c(d, e - 1, uv[0], uv[1]));
    }
    let a = DMatrix::from_fn(d as usize + 1, cols.len(), |i, j| cols[j][i]);
    let b: Vec<Complex64> = q.coords().iter().map(|c| Complex64::new(to_f64(c), 0.0)).collect();
    let (x, res) = least_squares(&a, &b);
    if res > policy.residual_tol {
        return Err(BinaryError::IllConditioned(res));
    }
    let mut at = 0;
    let terms = roots
        .into_iter()
        .map(|(l, e)| {
            let m = Coords::Approx(x[at..at + e].iter().map(|&z| CxApprox::from_c64(z)).collect());
            at += e;
            GenTerm { l, m, d_i: e - 1 }
        })
        .collect();
    Ok(GenDecomp { d, terms })
}

/// A set of `sr(Q)` distinct points on the line whose span contains `Q`,
/// together with the apolar form they are the roots of. When
/// `sbr(Q) < sr(Q)` the form is chosen coprime to the minimal kernel
/// element, so the points avoid the canonical scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct RankScheme {
    pub kernel: Vec<Rat>,
    pub scheme: Scheme0Dim,
}

pub fn rank_scheme(q: &BinaryForm, policy: &RootPolicy) -> Result<RankScheme, BinaryError> {
    let s = sylvester_analyze(q)?;
    let kernel = if s.square_free {
        s.kernel.clone()
    } else {
        let ker = q.hankel(s.sr as u32).kernel_basis();
        let pick = moment_combinations(&ker, 256).find(|v| binary_square_free(v) && coprime(v, &s.kernel));
        pick.ok_or(BinaryError::IllConditioned(f64::INFINITY))?
    };
    let scheme = scheme_from_roots(q, &binary_roots(&kernel, policy));
    Ok(RankScheme { kernel, scheme })
}

/// Symmetric rank by direct search: the least `r` such that some member of
/// the kernel of `H_r` has distinct roots. Kernel members are enumerated
/// over small integer combinations of the kernel basis, sparsest first.
/// Only meant as a test oracle.
pub fn binary_brute_rank(q: &BinaryForm) -> Result<usize, BinaryError> {
    if q.is_zero() {
        return Err(BinaryError::ZeroForm);
    }
    let d = q.degree();
    if d > 8 {
        return Err(BinaryError::DegreeTooLarge(d));
    }
    if d == 0 {
        return Err(BinaryError::DegreeTooSmall);
    }
    const WEIGHTS: [i64; 5] = [1, -1, 2, -2, 3];
    for r in 1..=d {
        let ker = q.hankel(r).kernel_basis();
        let n = ker.len();
        let mut budget = 60_000usize;
        for size in 1..=n {
            let mut found = false;
            for_each_subset(n, size, &mut |sub| {
                // first coefficient fixed to 1: projective combinations
                let mut digits = vec![0usize; size - 1];
                loop {
                    if budget == 0 {
                        return true;
                    }
                    budget -= 1;
                    let mut v = ker[sub[0]].clone();
                    for (slot, &bi) in digits.iter().zip(&sub[1..]) {
                        let w = int(WEIGHTS[*slot]);
                        for (x, y) in v.iter_mut().zip(&ker[bi]) {
                            *x += &w * y;
                        }
                    }
                    if binary_square_free(&v) {
                        found = true;
                        return true;
                    }
                    let mut i = 0;
                    while i < digits.len() {
                        digits[i] += 1;
                        if digits[i] < WEIGHTS.len() {
                            break;
                        }
                        digits[i] = 0;
                        i += 1;
                    }
                    if i == digits.len() {
                        return false;
                    }
                }
            });
            if found {
                return Ok(r as usize);
            }
        }
    }
    Ok(d as usize)
}

/// Calls `f` on each `size`-subset of `0..n` until it returns true.
fn for_each_subset(n: usize, size: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            if rec(i + 1, n, size, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, size, &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::forms::LinearForm;

    fn mono(d: u32, k: u32) -> BinaryForm {
        let mut c = vec![0i64; d as usize + 1];
        c[k as usize] = 1;
        BinaryForm::from_i64(&c)
    }

    #[test]
    fn hankel_of_a_power_has_rank_one() {
        // (x0 + 2 x1)^4
        let f = LinearForm::from_i64(&[1, 2]).power(4);
        let q = BinaryForm::from_form(&f);
        for r in 0..=4 {
            assert_eq!(q.hankel(r).rank(), 1);
        }
        let s = sylvester_analyze(&q).unwrap();
        assert_eq!((s.sbr, s.sr), (1, 1));
        // K = 2 y0 - y1 vanishes at (1, 2)
        assert_eq!(s.kernel, vec![int(1), rat(-1, 2)]);
    }

    #[test]
    fn sylvester_examples() {
        let s = sylvester_analyze(&mono(5, 1)).unwrap();
        assert_eq!((s.sbr, s.sr), (2, 5));
        assert!(!s.square_free);
        let s = sylvester_analyze(&BinaryForm::from_i64(&[1, 0, 0, 1])).unwrap();
        assert_eq!((s.sbr, s.sr), (2, 2));
        assert!(s.square_free);
        assert_eq!(s.kernel, vec![int(0), int(1), int(0)]);
        assert_eq!(sylvester_analyze(&BinaryForm::from_i64(&[0, 0])), Err(BinaryError::ZeroForm));
        assert_eq!(sylvester_analyze(&BinaryForm::from_i64(&[1])), Err(BinaryError::DegreeTooSmall));
    }

    #[test]
    fn roots_map_to_points_by_the_stated_convention() {
        // K = y0 - 3 y1 = (a, b) = (1, -3) annihilates -3 L1 - L2 ~ (3 : 1)
        let roots = binary_roots(&[int(1), int(-3)], &RootPolicy::default());
        assert_eq!(roots, vec![(Coords::Exact(vec![int(3), int(1)]), 1)]);
        let q = BinaryForm::from_form(&LinearForm::from_i64(&[3, 1]).power(5));
        let z = canonical_scheme(&q, &RootPolicy::default()).unwrap();
        assert_eq!(z.parts, vec![PointMult::simple(Coords::Exact(vec![int(1), rat(1, 3)]))]);
    }

    #[test]
    fn canonical_scheme_examples() {
        let pol = RootPolicy::default();
        let z = canonical_scheme(&mono(6, 0), &pol).unwrap();
        assert_eq!(z.parts, vec![PointMult::simple(Coords::from_i64(&[1, 0]))]);
        let z = canonical_scheme(&mono(6, 1), &pol).unwrap();
        assert_eq!(z.parts, vec![PointMult::jet(Coords::from_i64(&[1, 0]), 2, Coords::from_i64(&[0, 1]))]);
        // x0^5 (x1 + 2 x0) + (x0 + x1)^6
        let a = LinearForm::from_i64(&[1, 0]).to_form().pow(5).mul(&LinearForm::from_i64(&[2, 1]).to_form());
        let q = BinaryForm::from_form(&a.add(&LinearForm::from_i64(&[1, 1]).power(6)));
        let z = canonical_scheme(&q, &pol).unwrap();
        assert_eq!(z.degree(), 3);
        assert_eq!(z.parts.iter().map(|p| p.mult).collect::<Vec<_>>(), vec![2, 1]);
        assert!(matches!(canonical_scheme(&mono(4, 2), &pol), Err(BinaryError::NotSubgeneric { .. })));
    }

    #[test]
    fn generalized_decompositions() {
        let pol = RootPolicy::default();
        let g = generalized_decomposition(&mono(5, 1), &pol).unwrap();
        assert_eq!(g.terms.len(), 1);
        assert_eq!(g.terms[0].l, Coords::from_i64(&[1, 0]));
        assert_eq!(g.terms[0].m, Coords::from_i64(&[0, 1]));
        assert_eq!(g.terms[0].d_i, 1);
        assert_eq!(g.s(), 2);

        let cubes = BinaryForm::from_i64(&[1, 0, 0, 1]);
        let g = generalized_decomposition(&cubes, &pol).unwrap();
        assert!(g.terms.iter().all(|t| t.d_i == 0));
        assert_eq!(g.reconstruct().unwrap(), cubes.coords());

        let a = LinearForm::from_i64(&[1, 0]).to_form().pow(5).mul(&LinearForm::from_i64(&[2, 1]).to_form());
        let q = BinaryForm::from_form(&a.add(&LinearForm::from_i64(&[1, 1]).power(6)).scale(&rat(3, 7)));
        let g = generalized_decomposition(&q, &pol).unwrap();
        assert_eq!(g.s(), 3);
        assert_eq!(g.reconstruct().unwrap(), q.coords());
    }

    #[test]
    fn irrational_roots_take_the_numeric_path() {
        // (r x0 + x1)^5 + (-r x0 + x1)^5 with r^2 = 2
        let q = BinaryForm::from_i64(&[0, 40, 0, 40, 0, 2]);
        let s = sylvester_analyze(&q).unwrap();
        assert_eq!((s.sbr, s.sr), (2, 2));
        let g = generalized_decomposition(&q, &RootPolicy::default()).unwrap();
        assert!(!g.is_exact());
        assert_eq!(g.s(), 2);
        let r = g.reconstruct_c();
        for (a, b) in r.iter().zip(q.coords()) {
            assert!((a - to_f64(b)).norm() < 1e-8 * 40.0);
        }
    }

    #[test]
    fn rank_scheme_avoids_the_canonical_scheme() {
        let pol = RootPolicy::default();
        let q = mono(5, 1);
        let rs = rank_scheme(&q, &pol).unwrap();
        assert_eq!(rs.scheme.degree(), 5);
        assert!(rs.scheme.is_reduced());
        let z1 = canonical_scheme(&q, &pol).unwrap();
        assert_eq!(z1.common_supports(&rs.scheme, 1e-8), 0);
    }

    #[test]
    fn brute_rank_examples() {
        for d in 2..=8 {
            let mut c = vec![0i64; d as usize + 1];
            c[0] = 1;
            c[d as usize] = 1;
            assert_eq!(binary_brute_rank(&BinaryForm::from_i64(&c)).unwrap(), 2);
            let q = BinaryForm::from_form(&LinearForm::from_i64(&[1, 1]).power(d));
            assert_eq!(binary_brute_rank(&q).unwrap(), 1);
        }
        assert_eq!(binary_brute_rank(&mono(9, 1)), Err(BinaryError::DegreeTooLarge(9)));
    }
}
