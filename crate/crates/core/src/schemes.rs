//! Zero-dimensional curvilinear schemes: points with multiplicities, each
//! multiple point being a jet along a line through its support.
//!
//! Schemes are recovered from a graded piece of their ideal through
//! multiplication matrices on the quotient ring, which is where the
//! multiplicity and tangent data come from.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactlin::complex::{cmatrix_from_rows, in_row_span, null_vector, numeric_rank};
use crate::exactlin::matrix::normalize_leading;
use crate::exactlin::rat::to_f64;
use crate::exactlin::{int, CxApprox, Rat, RatMatrix, RootPolicy, Rref};
use crate::forms::{monomial_count, monomial_rank, monomials, Form};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("no generators")]
    NoGenerators,
    #[error("the generators do not cut out a zero-dimensional scheme")]
    NotZeroDimensional,
    #[error("scheme has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("a multiple point is not curvilinear")]
    NotCurvilinear,
    #[error("unsupported scheme: {0}")]
    Unsupported(String),
}

/// Homogeneous coordinates, exact or floating.
#[derive(Clone, Debug, PartialEq)]
pub enum Coords {
    Exact(Vec<Rat>),
    Approx(Vec<CxApprox>),
}

impl Coords {
    pub fn from_i64(v: &[i64]) -> Self {
        Coords::Exact(v.iter().map(|&x| int(x)).collect())
    }

    pub fn len(&self) -> usize {
        match self {
            Coords::Exact(v) => v.len(),
            Coords::Approx(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coords::Exact(_))
    }

    pub fn exact(&self) -> Option<&[Rat]> {
        match self {
            Coords::Exact(v) => Some(v),
            Coords::Approx(_) => None,
        }
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        match self {
            Coords::Exact(v) => v.iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect(),
            Coords::Approx(v) => v.iter().map(|z| z.to_c64()).collect(),
        }
    }

    /// Representative with first nonzero coordinate 1. For floating data
    /// "nonzero" means above `1e-9` of the largest modulus.
    pub fn canonical(&self) -> Coords {
        match self {
            Coords::Exact(v) => {
                let mut v = v.clone();
                normalize_leading(&mut v);
                Coords::Exact(v)
            }
            Coords::Approx(v) => {
                let top = v.iter().map(CxApprox::norm).fold(0.0, f64::max);
                let lead = v.iter().find(|z| z.norm() > 1e-9 * top).map(|z| z.to_c64());
                match lead {
                    Some(l) => Coords::Approx(
                        v.iter()
                            .map(|z| {
                                let q = z.to_c64() / l;
                                CxApprox::from_c64(q).with_tol(z.tol)
                            })
                            .collect(),
                    ),
                    None => self.clone(),
                }
            }
        }
    }

    /// Projective equality: exact for exact pairs, otherwise all 2x2 minors
    /// below `tol` after normalization.
    pub fn same_point(&self, o: &Coords, tol: f64) -> bool {
        if let (Coords::Exact(a), Coords::Exact(b)) = (self, o) {
            return RatMatrix::from_rows(vec![a.clone(), b.clone()]).rank() == 1;
        }
        let (a, b) = (unit(&self.to_c64()), unit(&o.to_c64()));
        (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] * b[j] - a[j] * b[i]).norm() <= tol))
    }

    /// Exact before approximate, then lexicographic.
    pub fn order(&self, o: &Coords) -> Ordering {
        match (self, o) {
            (Coords::Exact(a), Coords::Exact(b)) => a.cmp(b),
            (Coords::Exact(_), Coords::Approx(_)) => Ordering::Less,
            (Coords::Approx(_), Coords::Exact(_)) => Ordering::Greater,
            (Coords::Approx(a), Coords::Approx(b)) => {
                for (x, y) in a.iter().zip(b) {
                    let c = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }
        }
    }
}

fn unit(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
    v.iter().map(|z| z / n).collect()
}

/// Canonical second point of the line through `p` and `w`: the first row of
/// the reduced echelon form of that line not proportional to `p`.
pub fn canonical_direction(p: &Coords, w: &Coords) -> Coords {
    match (p, w) {
        (Coords::Exact(pv), Coords::Exact(wv)) => {
            let r = RatMatrix::from_rows(vec![pv.clone(), wv.clone()]).rref();
            let r0 = Coords::Exact(r.reduced.row(0).to_vec());
            if r0.same_point(p, 0.0) {
                Coords::Exact(r.reduced.row(1).to_vec())
            } else {
                r0
            }
        }
        _ => {
            // remove the component along p, then scale
            let (pc, wc) = (unit(&p.to_c64()), w.to_c64());
            let dot: Complex64 = pc.iter().zip(&wc).map(|(a, b)| a.conj() * b).sum();
            let v: Vec<CxApprox> = wc.iter().zip(&pc).map(|(b, a)| CxApprox::from_c64(b - dot * a)).collect();
            Coords::Approx(v).canonical()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointMult {
    pub point: Coords,
    pub mult: usize,
    /// Second point of the tangent line, present when `mult >= 2`.
    pub direction: Option<Coords>,
}

impl PointMult {
    pub fn simple(point: Coords) -> Self {
        PointMult { point: point.canonical(), mult: 1, direction: None }
    }

    pub fn jet(point: Coords, mult: usize, direction: Coords) -> Self {
        let point = point.canonical();
        let direction = Some(canonical_direction(&point, &direction));
        PointMult { point, mult, direction }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scheme0Dim {
    pub m: usize,
    pub parts: Vec<PointMult>,
}

impl Scheme0Dim {
    pub fn new(m: usize, mut parts: Vec<PointMult>) -> Self {
        parts.sort_by(|a, b| a.point.order(&b.point));
        Scheme0Dim { m, parts }
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|p| p.mult).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.parts.iter().all(|p| p.mult == 1)
    }

    pub fn is_curvilinear(&self) -> bool {
        self.parts.iter().all(|p| p.mult == 1 || p.direction.is_some())
    }

    pub fn is_exact(&self) -> bool {
        self.parts.iter().all(|p| p.point.is_exact() && p.direction.as_ref().is_none_or(Coords::is_exact))
    }

    /// Parts of `self` whose support also supports a part of `o`.
    pub fn common_supports(&self, o: &Scheme0Dim, tol: f64) -> usize {
        self.parts
            .iter()
            .filter(|a| o.parts.iter().any(|b| a.point.same_point(&b.point, tol)))
            .count()
    }

    /// Same parts up to order: supports, multiplicities and tangent lines.
    pub fn same_as(&self, o: &Scheme0Dim, tol: f64) -> bool {
        self.m == o.m
            && self.parts.len() == o.parts.len()
            && self.parts.iter().all(|a| {
                o.parts.iter().any(|b| {
                    a.mult == b.mult
                        && a.point.same_point(&b.point, tol)
                        && match (&a.direction, &b.direction) {
                            (None, None) => true,
                            (Some(x), Some(y)) => {
                                span_rank(&[&a.point, x, y], tol) == 2
                            }
                            _ => false,
                        }
                })
            })
    }
}

/// Applies `x -> A x` to every support and direction.
pub fn transform(z: &Scheme0Dim, a: &RatMatrix) -> Scheme0Dim {
    let map = |c: &Coords| match c {
        Coords::Exact(v) => Coords::Exact(a.mul_vec(v)),
        Coords::Approx(v) => {
            let x: Vec<Complex64> = v.iter().map(|z| z.to_c64()).collect();
            Coords::Approx(
                (0..a.rows())
                    .map(|i| {
                        let s: Complex64 = a.row(i).iter().zip(&x).map(|(r, z)| z * to_f64(r)).sum();
                        CxApprox::from_c64(s)
                    })
                    .collect(),
            )
        }
    };
    let parts = z
        .parts
        .iter()
        .map(|p| match &p.direction {
            None => PointMult { point: map(&p.point).canonical(), mult: p.mult, direction: None },
            Some(w) => PointMult::jet(map(&p.point), p.mult, map(w)),
        })
        .collect();
    Scheme0Dim::new(a.rows() - 1, parts)
}

fn span_rank(vs: &[&Coords], tol: f64) -> usize {
    if vs.iter().all(|c| c.is_exact()) {
        let rows = vs.iter().map(|c| c.exact().expect("exact").to_vec()).collect();
        RatMatrix::from_rows(rows).rank()
    } else {
        let rows: Vec<Vec<Complex64>> = vs.iter().map(|c| unit(&c.to_c64())).collect();
        numeric_rank(&cmatrix_from_rows(&rows), tol)
    }
}

/// Linearly general position: every proper subspace `R` meets `Z` in degree
/// at most `dim R + 1`. Only subspaces spanned by supports and tangent
/// directions need to be tried.
pub fn lgp_check(z: &Scheme0Dim) -> Result<bool, SchemeError> {
    if !z.is_curvilinear() {
        return Err(SchemeError::NotCurvilinear);
    }
    let tol = 1e-8;
    let mut gens: Vec<&Coords> = Vec::new();
    for p in &z.parts {
        gens.push(&p.point);
        if let Some(w) = &p.direction {
            gens.push(w);
        }
    }
    let n = gens.len();
    let max_size = z.m.min(n);
    let mut subset = Vec::new();
    fn rec(
        start: usize,
        max_size: usize,
        gens: &[&Coords],
        subset: &mut Vec<usize>,
        z: &Scheme0Dim,
        tol: f64,
    ) -> bool {
        if !subset.is_empty() {
            let basis: Vec<&Coords> = subset.iter().map(|&i| gens[i]).collect();
            let r = span_rank(&basis, tol);
            if r <= z.m {
                let inside = |c: &Coords| {
                    let mut v = basis.clone();
                    v.push(c);
                    span_rank(&v, tol) == r
                };
                let deg: usize = z
                    .parts
                    .iter()
                    .map(|p| {
                        if !inside(&p.point) {
                            0
                        } else if p.direction.as_ref().is_some_and(&inside) {
                            p.mult
                        } else {
                            1
                        }
                    })
                    .sum();
                if deg > r {
                    return false;
                }
            }
        }
        if subset.len() == max_size {
            return true;
        }
        for i in start..gens.len() {
            subset.push(i);
            let ok = rec(i + 1, max_size, gens, subset, z, tol);
            subset.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    Ok(rec(0, max_size, &gens, &mut subset, z, tol))
}

/// Rows spanning `<nu_d(part)>`: the Taylor coefficients of order
/// `0..mult` of `t -> nu_d(p + t w)`.
pub fn jet_rows(part: &PointMult, d: u32) -> Result<Vec<Vec<Rat>>, SchemeError> {
    let p = part.point.exact().ok_or_else(|| SchemeError::Unsupported("inexact point".into()))?;
    let zero = vec![Rat::zero(); p.len()];
    let w = match (&part.direction, part.mult) {
        (_, 1) => zero.as_slice(),
        (Some(Coords::Exact(w)), _) => w.as_slice(),
        (Some(_), _) => return Err(SchemeError::Unsupported("inexact direction".into())),
        (None, _) => return Err(SchemeError::NotCurvilinear),
    };
    let e = part.mult;
    let mons = monomials(p.len(), d);
    let mut rows = vec![vec![Rat::zero(); mons.len()]; e];
    for (col, a) in mons.iter().enumerate() {
        let mut poly = vec![Rat::one()];
        for (i, &k) in a.iter().enumerate() {
            for _ in 0..k {
                let mut next = vec![Rat::zero(); (poly.len() + 1).min(e)];
                for (j, c) in poly.iter().enumerate() {
                    next[j] += c * &p[i];
                    if j + 1 < e {
                        next[j + 1] += c * &w[i];
                    }
                }
                poly = next;
            }
        }
        for (j, c) in poly.into_iter().enumerate() {
            rows[j][col] = c;
        }
    }
    Ok(rows)
}

pub fn jet_rows_c(part: &PointMult, d: u32) -> Result<Vec<Vec<Complex64>>, SchemeError> {
    let p = part.point.to_c64();
    let w = match (&part.direction, part.mult) {
        (_, 1) => vec![Complex64::zero(); p.len()],
        (Some(w), _) => w.to_c64(),
        (None, _) => return Err(SchemeError::NotCurvilinear),
    };
    let e = part.mult;
    let mons = monomials(p.len(), d);
    let mut rows = vec![vec![Complex64::zero(); mons.len()]; e];
    for (col, a) in mons.iter().enumerate() {
        let mut poly = vec![Complex64::one()];
        for (i, &k) in a.iter().enumerate() {
            for _ in 0..k {
                let mut next = vec![Complex64::zero(); (poly.len() + 1).min(e)];
                for (j, c) in poly.iter().enumerate() {
                    next[j] += c * p[i];
                    if j + 1 < e {
                        next[j + 1] += c * w[i];
                    }
                }
                poly = next;
            }
        }
        for (j, c) in poly.into_iter().enumerate() {
            rows[j][col] = c;
        }
    }
    Ok(rows)
}

/// Whether `target` (in the coordinates of [`crate::forms::veronese_coords`])
/// lies in `<nu_d(Z)>`. Exact when everything is exact, otherwise a
/// least-squares residual test at `tol`.
pub fn scheme_span_contains(z: &Scheme0Dim, d: u32, target: &Coords, tol: f64) -> Result<bool, SchemeError> {
    if !z.is_curvilinear() {
        return Err(SchemeError::NotCurvilinear);
    }
    if let (true, Coords::Exact(t)) = (z.is_exact(), target) {
        let mut rows = Vec::new();
        for p in &z.parts {
            rows.extend(jet_rows(p, d)?);
        }
        if rows.is_empty() {
            return Ok(t.iter().all(Zero::is_zero));
        }
        let a = RatMatrix::from_rows(rows.clone());
        let r = a.rank();
        rows.push(t.clone());
        return Ok(RatMatrix::from_rows(rows).rank() == r);
    }
    let mut rows = Vec::new();
    for p in &z.parts {
        rows.extend(jet_rows_c(p, d)?);
    }
    Ok(in_row_span(&rows, &target.to_c64(), tol))
}

/// `h_Z(D)`: the number of conditions `Z` imposes on forms of degree `D`.
pub fn hilbert_function(z: &Scheme0Dim, deg: u32) -> Result<usize, SchemeError> {
    if z.is_exact() {
        let mut rows = Vec::new();
        for p in &z.parts {
            rows.extend(jet_rows(p, deg)?);
        }
        return Ok(if rows.is_empty() { 0 } else { RatMatrix::from_rows(rows).rank() });
    }
    let mut rows = Vec::new();
    for p in &z.parts {
        rows.extend(jet_rows_c(p, deg)?);
    }
    Ok(numeric_rank(&cmatrix_from_rows(&rows), 1e-9))
}

/// Smallest `D` with `h_Z(D) = deg Z`.
pub fn regularity_index(z: &Scheme0Dim) -> Result<u32, SchemeError> {
    let s = z.degree();
    let mut deg = 0;
    while hilbert_function(z, deg)? < s {
        deg += 1;
    }
    Ok(deg)
}

#[derive(Clone, Copy, Debug)]
pub struct LocusOptions {
    pub seed: u64,
    pub policy: RootPolicy,
}

impl Default for LocusOptions {
    fn default() -> Self {
        LocusOptions { seed: 0x5eed, policy: RootPolicy::default() }
    }
}

/// Degree-`deg` piece of an ideal, as a reduced row echelon basis.
struct Piece {
    deg: u32,
    rref: Rref,
}

impl Piece {
    fn codim(&self) -> usize {
        self.rref.reduced.cols() - self.rref.rank
    }

    fn rows(&self) -> impl Iterator<Item = &[Rat]> {
        (0..self.rref.rank).map(|i| self.rref.reduced.row(i))
    }

    fn standard(&self) -> Vec<usize> {
        (0..self.rref.reduced.cols()).filter(|c| !self.rref.pivot_cols.contains(c)).collect()
    }

    /// Coordinates of `v` modulo the piece, on the standard monomials.
    fn normal_form(&self, v: &[Rat], std: &[usize]) -> Vec<Rat> {
        std.iter()
            .map(|&j| {
                let mut x = v[j].clone();
                for (r, &pc) in self.rref.pivot_cols.iter().enumerate() {
                    if !v[pc].is_zero() {
                        x -= &v[pc] * &self.rref.reduced[(r, j)];
                    }
                }
                x
            })
            .collect()
    }
}

fn piece_from_rows(nvars: usize, deg: u32, rows: Vec<Vec<Rat>>) -> Piece {
    let cols = monomial_count(nvars, deg);
    let mat = if rows.is_empty() { RatMatrix::zeros(1, cols) } else { RatMatrix::from_rows(rows) };
    Piece { deg, rref: mat.rref() }
}

fn next_piece(nvars: usize, p: &Piece) -> Piece {
    let mons = monomials(nvars, p.deg);
    let width = monomial_count(nvars, p.deg + 1);
    let mut rows = Vec::new();
    for r in p.rows() {
        for i in 0..nvars {
            let mut v = vec![Rat::zero(); width];
            for (a, c) in mons.iter().zip(r) {
                if !c.is_zero() {
                    let mut b = a.clone();
                    b[i] += 1;
                    v[monomial_rank(&b)] = c.clone();
                }
            }
            rows.push(v);
        }
    }
    piece_from_rows(nvars, p.deg + 1, rows)
}

/// Common zero scheme of dual forms of one degree, required to have degree
/// `expected`. Points with rational coordinates are exact, including the
/// tangent data of multiple points; simple points with irrational
/// coordinates are approximate.
pub fn zero_locus(gens: &[Form], expected: usize, opts: &LocusOptions) -> Result<Scheme0Dim, SchemeError> {
    let first = gens.first().ok_or(SchemeError::NoGenerators)?;
    let (m, k) = (first.m(), first.degree());
    let nvars = m + 1;
    let rows: Vec<Vec<Rat>> = gens.iter().map(|g| g.coeffs().to_vec()).collect();
    let mut cur = piece_from_rows(nvars, k, rows);
    let mut nxt = next_piece(nvars, &cur);
    let mut extra = 0;
    while cur.codim() != nxt.codim() {
        extra += 1;
        if extra > 4 {
            return Err(if nxt.codim() > cur.codim() {
                SchemeError::NotZeroDimensional
            } else {
                SchemeError::DegreeMismatch { expected, found: nxt.codim() }
            });
        }
        cur = nxt;
        nxt = next_piece(nvars, &cur);
    }
    let c = cur.codim();
    if c != expected {
        return Err(SchemeError::DegreeMismatch { expected, found: c });
    }
    let (std0, std1) = (cur.standard(), nxt.standard());
    let mons0 = monomials(nvars, cur.deg);
    let width1 = monomial_count(nvars, nxt.deg);
    // T_i: multiplication by y_i from degree D to D+1 of the quotient
    let t: Vec<RatMatrix> = (0..nvars)
        .map(|i| {
            let cols = std0
                .iter()
                .map(|&b| {
                    let mut e = mons0[b].clone();
                    e[i] += 1;
                    let mut v = vec![Rat::zero(); width1];
                    v[monomial_rank(&e)] = Rat::one();
                    nxt.normal_form(&v, &std1)
                })
                .collect();
            RatMatrix::from_cols(cols)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..12 {
        let h: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-6..=6)).collect();
        let th = t.iter().zip(&h).fold(RatMatrix::zeros(c, c), |acc, (ti, &hi)| acc.add(&ti.scale(&int(hi))));
        let Ok(th_inv) = th.inverse() else { continue };
        let mi: Vec<RatMatrix> = t.iter().map(|ti| th_inv.mul(ti)).collect();
        let coef: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-9..=9)).collect();
        let mc = mi.iter().zip(&coef).fold(RatMatrix::zeros(c, c), |acc, (x, &a)| acc.add(&x.scale(&int(a))));
        match points_from_matrices(&mi, &mc, &opts.policy)? {
            Some(parts) => return Ok(Scheme0Dim::new(m, parts)),
            None => continue,
        }
    }
    Err(SchemeError::Unsupported("no separating projection found".into()))
}

/// Reads the points off commuting multiplication matrices. `None` asks the
/// caller for another random projection.
fn points_from_matrices(
    mi: &[RatMatrix],
    mc: &RatMatrix,
    policy: &RootPolicy,
) -> Result<Option<Vec<PointMult>>, SchemeError> {
    let c = mc.rows();
    let mut parts = Vec::new();
    for (f, e) in mc.charpoly().square_free_factors() {
        let (roots, rest) = f.split_rational_roots(policy);
        for lam in roots {
            let mut shifted = mc.clone();
            for i in 0..c {
                shifted[(i, i)] -= &lam;
            }
            let ker = shifted.pow(e).kernel_basis();
            if ker.len() != e {
                return Ok(None);
            }
            let basis = RatMatrix::from_cols(ker);
            let x: Vec<RatMatrix> = mi
                .iter()
                .map(|a| basis.solve_matrix(&a.mul(&basis)).expect("invariant subspace"))
                .collect();
            let e_rat = int(e as i64);
            let p: Vec<Rat> = x.iter().map(|xi| xi.trace() / &e_rat).collect();
            let n: Vec<RatMatrix> = x
                .iter()
                .zip(&p)
                .map(|(xi, pi)| xi.sub(&RatMatrix::identity(e).scale(pi)))
                .collect();
            if n.iter().any(|ni| !ni.pow(e).is_zero()) {
                // two points share this eigenvalue
                return Ok(None);
            }
            if e == 1 {
                parts.push(PointMult::simple(Coords::Exact(p)));
                continue;
            }
            let top: Vec<RatMatrix> = n.iter().map(|ni| ni.pow(e - 1)).collect();
            let Some(j) = top.iter().position(|t| !t.is_zero()) else {
                return Err(SchemeError::NotCurvilinear);
            };
            let (r, s) = (0..e)
                .flat_map(|r| (0..e).map(move |s| (r, s)))
                .find(|&(r, s)| !top[j][(r, s)].is_zero())
                .expect("nonzero entry");
            let below = n[j].pow(e - 2);
            let w: Vec<Rat> = n.iter().map(|ni| ni.mul(&below)[(r, s)].clone() / &top[j][(r, s)]).collect();
            // the jet lies on a line iff all nilpotent parts are proportional
            if n.iter().zip(&w).any(|(ni, wi)| *ni != n[j].scale(wi)) {
                return Err(SchemeError::Unsupported("multiple point not contained in a line".into()));
            }
            parts.push(PointMult::jet(Coords::Exact(p), e, Coords::Exact(w)));
        }
        if rest.degree().unwrap_or(0) > 0 {
            if e > 1 {
                return Err(SchemeError::Unsupported("multiple point with irrational coordinates".into()));
            }
            let to_c = |a: &RatMatrix| DMatrix::from_fn(c, c, |i, j| Complex64::new(to_f64(&a[(i, j)]), 0.0));
            let mcc = to_c(mc);
            let mic: Vec<DMatrix<Complex64>> = mi.iter().map(to_c).collect();
            for (lam, _) in rest.numeric_roots(policy) {
                let mut a = mcc.clone();
                for i in 0..c {
                    a[(i, i)] -= lam.to_c64();
                }
                let v = null_vector(&a);
                let vv = v.dotc(&v);
                let p: Vec<CxApprox> = mic
                    .iter()
                    .map(|x| CxApprox::from_c64(v.dotc(&(x * &v)) / vv).with_tol(policy.eq_tol.max(1e-8)))
                    .collect();
                parts.push(PointMult::simple(Coords::Approx(p)));
            }
        }
    }
    debug_assert_eq!(parts.iter().map(|p| p.mult).sum::<usize>(), c);
    Ok(Some(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalecticant::apolar_piece;
    use crate::exactlin::rat;

    fn pt(v: &[i64]) -> Coords {
        Coords::from_i64(v)
    }

    #[test]
    fn coordinate_point_from_linear_generators() {
        let gens = vec![Form::monomial(&[0, 1, 0]), Form::monomial(&[0, 0, 1])];
        let z = zero_locus(&gens, 1, &LocusOptions::default()).unwrap();
        assert_eq!(z.parts, vec![PointMult::simple(pt(&[1, 0, 0]))]);
    }

    #[test]
    fn double_point_plus_simple_point() {
        let f = Form::monomial(&[4, 1, 0]).add(&Form::monomial(&[0, 0, 5]));
        let gens = apolar_piece(&f, 3).unwrap();
        let z = zero_locus(&gens, 3, &LocusOptions::default()).unwrap();
        assert_eq!(z.degree(), 3);
        assert_eq!(
            z.parts,
            vec![PointMult::simple(pt(&[0, 0, 1])), PointMult::jet(pt(&[1, 0, 0]), 2, pt(&[0, 1, 0]))]
        );
        // each generator vanishes at (0:0:1) and to second order along the jet
        for g in &gens {
            assert!(g.eval(&[int(0), int(0), int(1)]).is_zero());
            assert!(g.coeff(&[3, 0, 0]).is_zero());
            assert!(g.coeff(&[2, 1, 0]).is_zero());
        }
    }

    #[test]
    fn empty_and_positive_dimensional_loci() {
        let gens = vec![Form::monomial(&[1, 0, 0]), Form::monomial(&[0, 1, 0]), Form::monomial(&[0, 0, 1])];
        assert_eq!(
            zero_locus(&gens, 2, &LocusOptions::default()),
            Err(SchemeError::DegreeMismatch { expected: 2, found: 0 })
        );
        let gens = vec![Form::monomial(&[0, 0, 1])];
        assert_eq!(zero_locus(&gens, 2, &LocusOptions::default()), Err(SchemeError::NotZeroDimensional));
    }

    #[test]
    fn irrational_points_are_approximate() {
        // y0^2 - 2 y1^2 and y2 in P^2
        let g1 = Form::from_terms(2, 2, &[(vec![2, 0, 0], int(1)), (vec![0, 2, 0], int(-2))]);
        let g2 = Form::monomial(&[0, 0, 1]).mul(&Form::monomial(&[1, 0, 0]));
        let g3 = Form::monomial(&[0, 0, 1]).mul(&Form::monomial(&[0, 1, 0]));
        let g4 = Form::monomial(&[0, 0, 2]);
        let z = zero_locus(&[g1, g2, g3, g4], 2, &LocusOptions::default()).unwrap();
        assert_eq!(z.degree(), 2);
        let s2 = 2f64.sqrt();
        let want = [[s2, -1.0, 0.0], [s2, 1.0, 0.0]];
        for w in want {
            let c = Coords::Approx(w.iter().map(|&x| CxApprox::real(x)).collect());
            assert!(z.parts.iter().any(|p| p.point.same_point(&c, 1e-8)), "{z:?}");
        }
    }

    #[test]
    fn lgp_examples() {
        let z = Scheme0Dim::new(2, vec![PointMult::simple(pt(&[1, 0, 0])), PointMult::simple(pt(&[0, 1, 0])), PointMult::simple(pt(&[0, 0, 1]))]);
        assert!(lgp_check(&z).unwrap());
        let z = Scheme0Dim::new(2, vec![PointMult::simple(pt(&[1, 0, 0])), PointMult::simple(pt(&[0, 1, 0])), PointMult::simple(pt(&[1, 1, 0]))]);
        assert!(!lgp_check(&z).unwrap());
        let z = Scheme0Dim::new(2, vec![PointMult::jet(pt(&[1, 0, 0]), 2, pt(&[0, 1, 0])), PointMult::simple(pt(&[1, 3, 0]))]);
        assert!(!lgp_check(&z).unwrap());
        let z = Scheme0Dim::new(2, vec![PointMult::jet(pt(&[1, 0, 0]), 2, pt(&[0, 1, 0])), PointMult::simple(pt(&[0, 0, 1]))]);
        assert!(lgp_check(&z).unwrap());
        let bad = Scheme0Dim { m: 2, parts: vec![PointMult { point: pt(&[1, 0, 0]), mult: 2, direction: None }] };
        assert_eq!(lgp_check(&bad), Err(SchemeError::NotCurvilinear));
    }

    #[test]
    fn span_examples() {
        let one = Scheme0Dim::new(1, vec![PointMult::simple(pt(&[1, 2]))]);
        let v = Coords::Exact(crate::forms::veronese_coords(&[int(1), int(2)], 3).unwrap());
        assert!(scheme_span_contains(&one, 3, &v, 1e-8).unwrap());
        let dbl = Scheme0Dim::new(1, vec![PointMult::jet(pt(&[1, 0]), 2, pt(&[0, 1]))]);
        assert!(scheme_span_contains(&dbl, 3, &pt(&[0, 1, 0, 0]), 1e-8).unwrap());
        assert!(!scheme_span_contains(&dbl, 3, &pt(&[0, 0, 1, 0]), 1e-8).unwrap());
        let two = Scheme0Dim::new(2, vec![PointMult::simple(pt(&[1, 0, 0])), PointMult::simple(pt(&[0, 1, 0]))]);
        let third = Coords::Exact(crate::forms::veronese_coords(&[int(1), int(1), int(1)], 3).unwrap());
        assert!(!scheme_span_contains(&two, 3, &third, 1e-8).unwrap());
    }

    #[test]
    fn hilbert_function_of_collinear_points() {
        let z = Scheme0Dim::new(2, vec![PointMult::simple(pt(&[1, 0, 0])), PointMult::simple(pt(&[0, 1, 0])), PointMult::simple(pt(&[1, 1, 0]))]);
        assert_eq!(hilbert_function(&z, 1).unwrap(), 2);
        assert_eq!(regularity_index(&z).unwrap(), 2);
    }

    #[test]
    fn canonical_direction_is_independent_of_representative() {
        let p = pt(&[1, 2, 0]);
        let a = canonical_direction(&p, &pt(&[0, 1, 3]));
        let b = canonical_direction(&p, &Coords::Exact(vec![int(2), int(5), int(3)]));
        let c = canonical_direction(&Coords::Exact(vec![rat(1, 2), int(1), int(0)]), &pt(&[0, -2, -6]));
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}
