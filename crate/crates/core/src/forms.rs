//! Homogeneous forms, linear forms, lines of linear forms and the apolarity
//! action.
//!
//! A [`Form`] of degree `d` in `m + 1` variables stores one coefficient per
//! degree-`d` monomial, ordered graded-lexicographically: exponent vectors in
//! descending lexicographic order, so for `m = 2, d = 2` the order is
//! `x0^2, x0x1, x0x2, x1^2, x1x2, x2^2`. The same layout is used for dual
//! forms in the variables `y0..ym`, which act on forms by differentiation:
//! `y^b` acts as `d^b/dx^b`, so `y^b . x^g = g!/(g-b)! x^(g-b)`.
//!
//! A point of `P^m` is identified with the linear form having the same
//! coefficient vector, and `nu_d(p)` with the `d`-th power of that form.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::rat::{factorial, multinomial, to_f64};
use crate::exactlin::{Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("tensor entries differ under permutation at index {0:?}")]
    NotSymmetric(Vec<usize>),
    #[error("line basis is linearly dependent")]
    DependentBasis,
    #[error("ambient mismatch: {0}")]
    Mismatch(String),
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of degree-`d` monomials in `nvars` variables.
pub fn monomial_count(nvars: usize, d: u32) -> usize {
    if nvars == 0 {
        return usize::from(d == 0);
    }
    binom(nvars - 1 + d as usize, nvars - 1)
}

/// Degree-`d` exponent vectors in `nvars` variables, graded-lex order.
pub fn monomials(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if nvars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(nvars - 1, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(monomial_count(nvars, d));
    if nvars > 0 {
        rec(nvars, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Position of an exponent vector in [`monomials`].
pub fn monomial_rank(exps: &[u32]) -> usize {
    let n = exps.len();
    let mut rem: u32 = exps.iter().sum();
    let mut idx = 0;
    for (i, &a) in exps.iter().enumerate().take(n.saturating_sub(1)) {
        let tail = n - i - 1;
        // vectors with a larger entry here come first
        for v in (a + 1)..=rem {
            idx += monomial_count(tail, rem - v);
        }
        rem -= a;
    }
    idx
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    m: usize,
    d: u32,
    coeffs: Vec<Rat>,
}

impl Form {
    pub fn zero(m: usize, d: u32) -> Self {
        Form { m, d, coeffs: vec![Rat::zero(); monomial_count(m + 1, d)] }
    }

    pub fn from_coeffs(m: usize, d: u32, coeffs: Vec<Rat>) -> Self {
        assert_eq!(coeffs.len(), monomial_count(m + 1, d), "coefficient count");
        Form { m, d, coeffs }
    }

    pub fn from_terms(m: usize, d: u32, terms: &[(Vec<u32>, Rat)]) -> Self {
        let mut f = Self::zero(m, d);
        for (e, c) in terms {
            assert_eq!(e.len(), m + 1);
            assert_eq!(e.iter().sum::<u32>(), d, "inhomogeneous term");
            f.coeffs[monomial_rank(e)] += c;
        }
        f
    }

    /// Single monomial with coefficient one.
    pub fn monomial(exps: &[u32]) -> Self {
        let d = exps.iter().sum();
        Self::from_terms(exps.len() - 1, d, &[(exps.to_vec(), Rat::one())])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.m + 1
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u32]) -> &Rat {
        &self.coeffs[monomial_rank(exps)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> Vec<(Vec<u32>, Rat)> {
        monomials(self.m + 1, self.d)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, c.clone()))
            .collect()
    }

    fn check_same(&self, o: &Form) {
        assert_eq!((self.m, self.d), (o.m, o.d), "forms live in different spaces");
    }

    pub fn add(&self, o: &Form) -> Form {
        self.check_same(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Form { m: self.m, d: self.d, coeffs }
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.check_same(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        Form { m: self.m, d: self.d, coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Form {
        Form { m: self.m, d: self.d, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, o: &Form) -> Form {
        assert_eq!(self.m, o.m);
        let mut out = Form::zero(self.m, self.d + o.d);
        let (ta, tb) = (self.terms(), o.terms());
        for (ea, ca) in &ta {
            for (eb, cb) in &tb {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.coeffs[monomial_rank(&e)] += ca * cb;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Form {
        let mut acc = Form::from_coeffs(self.m, 0, vec![Rat::one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, p: &[Rat]) -> Rat {
        assert_eq!(p.len(), self.m + 1);
        self.terms().iter().fold(Rat::zero(), |acc, (e, c)| acc + c * monomial_value(e, p))
    }

    pub fn eval_c(&self, p: &[Complex64]) -> Complex64 {
        self.terms()
            .iter()
            .map(|(e, c)| monomial_value_c(e, p) * to_f64(c))
            .sum()
    }

    /// Coordinates of the form as a point of `P^N` in the basis dual to
    /// [`veronese_coords`]: `f_a / multinomial(a)`. With this scaling,
    /// `power_of_linear(p, d).veronese_point() == veronese_coords(p, d)`.
    pub fn veronese_point(&self) -> Vec<Rat> {
        monomials(self.m + 1, self.d)
            .iter()
            .zip(&self.coeffs)
            .map(|(e, c)| c / Rat::from_integer(multinomial(e)))
            .collect()
    }

    pub fn from_veronese_point(m: usize, d: u32, p: &[Rat]) -> Form {
        let coeffs = monomials(m + 1, d)
            .iter()
            .zip(p)
            .map(|(e, c)| c * Rat::from_integer(multinomial(e)))
            .collect();
        Form::from_coeffs(m, d, coeffs)
    }
}

pub(crate) fn monomial_value(e: &[u32], p: &[Rat]) -> Rat {
    e.iter().zip(p).fold(Rat::one(), |acc, (&k, x)| {
        if k == 0 {
            acc
        } else {
            acc * num_traits::pow(x.clone(), k as usize)
        }
    })
}

pub(crate) fn monomial_value_c(e: &[u32], p: &[Complex64]) -> Complex64 {
    e.iter().zip(p).fold(Complex64::one(), |acc, (&k, x)| acc * x.powu(k))
}

/// A nonzero linear form `sum c_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<Rat>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self, FormsError> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(FormsError::ZeroPoint);
        }
        Ok(LinearForm { coeffs })
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| crate::exactlin::int(v)).collect()).expect("nonzero linear form")
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Projective representative with first nonzero coefficient 1.
    pub fn canonical(&self) -> LinearForm {
        let mut c = self.coeffs.clone();
        crate::exactlin::matrix::normalize_leading(&mut c);
        LinearForm { coeffs: c }
    }

    pub fn to_form(&self) -> Form {
        Form::from_coeffs(self.m(), 1, self.coeffs.clone())
    }

    pub fn scale(&self, c: &Rat) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn power(&self, d: u32) -> Form {
        power_of_linear(self, d)
    }
}

/// The expansion of `L^d` with multinomial coefficients.
pub fn power_of_linear(l: &LinearForm, d: u32) -> Form {
    let m = l.m();
    let coeffs = monomials(m + 1, d)
        .iter()
        .map(|e| Rat::from_integer(multinomial(e)) * monomial_value(e, &l.coeffs))
        .collect();
    Form::from_coeffs(m, d, coeffs)
}

/// A line of `P^m`, i.e. a pencil of linear forms.
#[derive(Clone, Debug)]
pub struct Line {
    basis: [LinearForm; 2],
    canonical: RatMatrix,
}

impl PartialEq for Line {
    fn eq(&self, o: &Line) -> bool {
        self.canonical == o.canonical
    }
}

impl Eq for Line {}

impl Line {
    pub fn new(l1: LinearForm, l2: LinearForm) -> Result<Line, FormsError> {
        if l1.m() != l2.m() {
            return Err(FormsError::Mismatch("line basis forms in different spaces".into()));
        }
        let mat = RatMatrix::from_rows(vec![l1.coeffs.clone(), l2.coeffs.clone()]);
        let r = mat.rref();
        if r.rank < 2 {
            return Err(FormsError::DependentBasis);
        }
        Ok(Line { basis: [l1, l2], canonical: r.reduced })
    }

    /// Line whose basis is its own reduced row echelon matrix.
    pub fn canonical_line(&self) -> Line {
        let (a, b) = self.canonical_rows();
        Line::new(LinearForm { coeffs: a }, LinearForm { coeffs: b }).expect("independent rows")
    }

    pub fn basis(&self) -> &[LinearForm; 2] {
        &self.basis
    }

    pub fn canonical_matrix(&self) -> &RatMatrix {
        &self.canonical
    }

    pub fn canonical_rows(&self) -> (Vec<Rat>, Vec<Rat>) {
        (self.canonical.row(0).to_vec(), self.canonical.row(1).to_vec())
    }

    pub fn m(&self) -> usize {
        self.basis[0].m()
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        let mut mat = self.canonical.clone();
        mat.push_row(p.to_vec());
        mat.rank() == 2
    }

    pub fn contains_c(&self, p: &[Complex64], tol: f64) -> bool {
        let rows: Vec<Vec<Complex64>> = (0..2)
            .map(|i| self.canonical.row(i).iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect())
            .collect();
        crate::exactlin::complex::in_row_span(&rows, p, tol)
    }

    /// `u L1 + v L2` in the ambient coordinates.
    pub fn point(&self, u: &Rat, v: &Rat) -> Vec<Rat> {
        self.basis[0].coeffs.iter().zip(&self.basis[1].coeffs).map(|(a, b)| u * a + v * b).collect()
    }

    pub fn point_c(&self, u: Complex64, v: Complex64) -> Vec<Complex64> {
        self.basis[0]
            .coeffs
            .iter()
            .zip(&self.basis[1].coeffs)
            .map(|(a, b)| u * to_f64(a) + v * to_f64(b))
            .collect()
    }

    /// `(u, v)` with `p = u L1 + v L2`, if `p` lies on the line.
    pub fn coords_of(&self, p: &[Rat]) -> Option<(Rat, Rat)> {
        let a = RatMatrix::from_cols(vec![self.basis[0].coeffs.clone(), self.basis[1].coeffs.clone()]);
        a.solve_exact(p).ok().map(|x| (x[0].clone(), x[1].clone()))
    }

    /// The forms `L1^(d-j) L2^j`, `j = 0..=d`.
    pub fn binary_basis(&self, d: u32) -> Vec<Form> {
        let (f1, f2) = (self.basis[0].to_form(), self.basis[1].to_form());
        (0..=d).map(|j| f1.pow(d - j).mul(&f2.pow(j))).collect()
    }

    /// `sum c_j L1^(d-j) L2^j`.
    pub fn expand(&self, coords: &[Rat]) -> Form {
        let d = (coords.len() - 1) as u32;
        self.binary_basis(d)
            .iter()
            .zip(coords)
            .fold(Form::zero(self.m(), d), |acc, (b, c)| acc.add(&b.scale(c)))
    }
}

/// Coordinates of `F` in the basis `L1^(d-j) L2^j` of the line's binary
/// forms, or `None` when `F` is not a binary form on the line.
pub fn membership_in_line_powers(f: &Form, line: &Line) -> Option<Vec<Rat>> {
    if f.m() != line.m() {
        return None;
    }
    let cols: Vec<Vec<Rat>> = line.binary_basis(f.degree()).into_iter().map(|b| b.coeffs).collect();
    RatMatrix::from_cols(cols).solve_exact(f.coeffs()).ok()
}

/// `G(d)F` for a dual form `G` of degree `k <= d`.
pub fn apolar_contract(g: &Form, f: &Form) -> Result<Form, FormsError> {
    if g.m() != f.m() {
        return Err(FormsError::Mismatch("dual form and form in different spaces".into()));
    }
    if g.degree() > f.degree() {
        return Err(FormsError::Mismatch("dual degree exceeds form degree".into()));
    }
    let mut out = Form::zero(f.m(), f.degree() - g.degree());
    let ft = f.terms();
    for (b, gc) in g.terms() {
        for (gam, fc) in &ft {
            if gam.iter().zip(&b).any(|(x, y)| x < y) {
                continue;
            }
            let rest: Vec<u32> = gam.iter().zip(&b).map(|(x, y)| x - y).collect();
            let w = gam
                .iter()
                .zip(&rest)
                .fold(BigInt::one(), |acc, (&x, &r)| acc * factorial(x) / factorial(r));
            out.coeffs[monomial_rank(&rest)] += &gc * fc * Rat::from_integer(w);
        }
    }
    Ok(out)
}

/// All degree-`d` monomials evaluated at `p`, graded-lex order.
pub fn veronese_coords(p: &[Rat], d: u32) -> Result<Vec<Rat>, FormsError> {
    if p.iter().all(Zero::is_zero) {
        return Err(FormsError::ZeroPoint);
    }
    Ok(monomials(p.len(), d).iter().map(|e| monomial_value(e, p)).collect())
}

pub fn veronese_coords_c(p: &[Complex64], d: u32) -> Vec<Complex64> {
    monomials(p.len(), d).iter().map(|e| monomial_value_c(e, p)).collect()
}

/// Dense symmetric `order`-way array over `nvars` indices, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor {
    pub nvars: usize,
    pub order: u32,
    pub entries: Vec<Rat>,
}

impl SymTensor {
    fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.order as usize];
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.nvars;
            flat /= self.nvars;
        }
        idx
    }

    fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.nvars + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Rat {
        &self.entries[self.ravel(idx)]
    }
}

fn index_type(idx: &[usize], nvars: usize) -> Vec<u32> {
    let mut e = vec![0u32; nvars];
    for &i in idx {
        e[i] += 1;
    }
    e
}

/// Form whose `x^a` coefficient is `multinomial(a)` times the tensor entry of
/// index type `a`.
pub fn from_symmetric_tensor(t: &SymTensor) -> Result<Form, FormsError> {
    assert!(t.nvars >= 1);
    assert_eq!(t.entries.len(), t.nvars.pow(t.order));
    for flat in 0..t.entries.len() {
        let idx = t.unravel(flat);
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        if t.entries[flat] != t.entries[t.ravel(&sorted)] {
            return Err(FormsError::NotSymmetric(idx));
        }
    }
    let m = t.nvars - 1;
    let coeffs = monomials(t.nvars, t.order)
        .iter()
        .map(|e| {
            let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
            t.get(&idx) * Rat::from_integer(multinomial(e))
        })
        .collect();
    Ok(Form::from_coeffs(m, t.order, coeffs))
}

pub fn to_symmetric_tensor(f: &Form) -> SymTensor {
    let nvars = f.nvars();
    let n = nvars.pow(f.degree());
    let vp = f.veronese_point();
    let mut t = SymTensor { nvars, order: f.degree(), entries: vec![Rat::zero(); n] };
    for flat in 0..n {
        let e = index_type(&t.unravel(flat), nvars);
        t.entries[flat] = vp[monomial_rank(&e)].clone();
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, rat};

    fn x(m: usize, e: &[u32]) -> Form {
        assert_eq!(e.len(), m + 1);
        Form::monomial(e)
    }

    #[test]
    fn monomial_order_and_rank() {
        let mons = monomials(3, 2);
        assert_eq!(mons, vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]);
        for n in 1..5 {
            for d in 0..6 {
                for (i, e) in monomials(n, d).iter().enumerate() {
                    assert_eq!(monomial_rank(e), i);
                }
            }
        }
    }

    #[test]
    fn powers_of_linear_forms() {
        assert_eq!(power_of_linear(&LinearForm::from_i64(&[1, 0]), 3), x(1, &[3, 0]));
        let sq = power_of_linear(&LinearForm::from_i64(&[1, 1]), 2);
        assert_eq!(sq, Form::from_terms(1, 2, &[(vec![2, 0], int(1)), (vec![1, 1], int(2)), (vec![0, 2], int(1))]));
        let cube = power_of_linear(&LinearForm::from_i64(&[1, 0, 2]), 3);
        let expect = Form::from_terms(
            2,
            3,
            &[(vec![3, 0, 0], int(1)), (vec![2, 0, 1], int(6)), (vec![1, 0, 2], int(12)), (vec![0, 0, 3], int(8))],
        );
        assert_eq!(cube, expect);
    }

    #[test]
    fn contraction_examples() {
        let d = 5;
        let f = x(2, &[d, 0, 0]);
        let y0 = x(2, &[1, 0, 0]);
        let y1 = x(2, &[0, 1, 0]);
        assert_eq!(apolar_contract(&y0, &f).unwrap(), x(2, &[d - 1, 0, 0]).scale(&int(d as i64)));
        assert!(apolar_contract(&y1, &f).unwrap().is_zero());
        let g = x(1, &[1, 1]);
        let cube = power_of_linear(&LinearForm::from_i64(&[1, 1]), 3);
        let got = apolar_contract(&g, &cube).unwrap();
        assert_eq!(got, LinearForm::from_i64(&[6, 6]).to_form());
    }

    #[test]
    fn veronese_examples() {
        let v = |p: &[i64], d| veronese_coords(&p.iter().map(|&a| int(a)).collect::<Vec<_>>(), d).unwrap();
        assert_eq!(v(&[1, 0], 2), vec![int(1), int(0), int(0)]);
        assert_eq!(v(&[1, 1], 2), vec![int(1), int(1), int(1)]);
        let expect: Vec<Rat> = [1, 2, 3, 4, 6, 9].iter().map(|&a| int(a)).collect();
        assert_eq!(v(&[1, 2, 3], 2), expect);
        assert_eq!(veronese_coords(&[int(0), int(0)], 2), Err(FormsError::ZeroPoint));
    }

    #[test]
    fn tensor_examples() {
        let diag = SymTensor { nvars: 2, order: 2, entries: vec![int(1), int(0), int(0), int(1)] };
        assert_eq!(from_symmetric_tensor(&diag).unwrap(), x(1, &[2, 0]).add(&x(1, &[0, 2])));
        let rank1 = SymTensor { nvars: 2, order: 3, entries: vec![int(1); 8] };
        assert_eq!(from_symmetric_tensor(&rank1).unwrap(), power_of_linear(&LinearForm::from_i64(&[1, 1]), 3));
        // entry 1 at every permutation of (0,0,1)
        let mut e = vec![int(0); 8];
        for flat in [1usize, 2, 4] {
            e[flat] = int(1);
        }
        let t = SymTensor { nvars: 2, order: 3, entries: e };
        assert_eq!(from_symmetric_tensor(&t).unwrap(), x(1, &[2, 1]).scale(&int(3)));
        let mut bad = t.clone();
        bad.entries[1] = int(2);
        assert!(matches!(from_symmetric_tensor(&bad), Err(FormsError::NotSymmetric(_))));
    }

    #[test]
    fn line_membership_examples() {
        let line = Line::new(LinearForm::from_i64(&[1, 0, 0]), LinearForm::from_i64(&[0, 1, 0])).unwrap();
        let f = power_of_linear(&LinearForm::from_i64(&[1, 1, 0]), 2);
        assert_eq!(membership_in_line_powers(&f, &line), Some(vec![int(1), int(2), int(1)]));
        assert_eq!(membership_in_line_powers(&x(2, &[0, 0, 3]), &line), None);

        let l1 = LinearForm::from_i64(&[1, 0, 1]);
        let l2 = LinearForm::from_i64(&[0, 1, -1]);
        let f = l1.power(4).sub(&l1.to_form().pow(3).mul(&l2.to_form()).scale(&int(4)));
        let line = Line::new(l1, l2).unwrap();
        assert_eq!(membership_in_line_powers(&f, &line), Some(vec![int(1), int(-4), int(0), int(0), int(0)]));
    }

    #[test]
    fn line_equality_is_projective() {
        let a = Line::new(LinearForm::from_i64(&[1, 0, 0]), LinearForm::from_i64(&[0, 1, 0])).unwrap();
        let b = Line::new(LinearForm::from_i64(&[2, 3, 0]), LinearForm::from_i64(&[1, -1, 0])).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(&[rat(1, 2), int(7), int(0)]));
        assert!(!a.contains(&[int(0), int(0), int(1)]));
        assert_eq!(
            Line::new(LinearForm::from_i64(&[1, 2]), LinearForm::from_i64(&[2, 4])).unwrap_err(),
            FormsError::DependentBasis
        );
    }
}
