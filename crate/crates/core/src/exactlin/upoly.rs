//! Univariate polynomials over the rationals, coefficients in ascending order.

use num_complex::Complex64;
use num_traits::{FromPrimitive, One, Zero};

use super::rat::{convergents, int, to_f64, Rat};
use super::roots::{poly_roots, CxApprox, RootPolicy};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { coeffs: vec![Rat::one()] }
    }

    /// `x - r`
    pub fn linear_root(r: &Rat) -> Self {
        UPoly { coeffs: vec![-r.clone(), Rat::one()] }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_c(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * int(i as i64))
            .collect();
        Self::new(c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rat::zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        Self::new(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = &rem[k + j] - &c * dc;
                rem[k + j] = v;
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (Self::new(q), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_square_free(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Yun's square-free factorization: `self = lc * prod f_i^{e_i}` with the
    /// `f_i` monic, square-free and pairwise coprime. Factors of degree zero
    /// are omitted.
    pub fn square_free_factors(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divrem(&a0).0;
        let mut c = fp.divrem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.divrem(&a).0;
            c = d.divrem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Splits off the rational roots (each counted once) of a square-free
    /// polynomial. Numerical roots are snapped to continued-fraction
    /// convergents and confirmed by exact evaluation, so every returned root
    /// is exact. The cofactor holds the remaining irrational roots.
    pub fn split_rational_roots(&self, policy: &RootPolicy) -> (Vec<Rat>, UPoly) {
        let mut rest = self.clone();
        let mut found = Vec::new();
        loop {
            let Some(deg) = rest.degree() else { break };
            if deg == 0 {
                break;
            }
            if deg == 1 {
                let c = &rest.coeffs;
                found.push(-&c[0] / &c[1]);
                rest = UPoly::new(vec![c[1].clone()]);
                break;
            }
            let mut hit = None;
            for (z, _) in rest.numeric_roots(policy) {
                if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                    continue;
                }
                if let Some(r) = convergents(z.re, 1_000_000_000_000)
                    .into_iter()
                    .find(|r| rest.eval(r).is_zero())
                {
                    hit = Some(r);
                    break;
                }
            }
            match hit {
                Some(r) => {
                    rest = rest.divrem(&UPoly::linear_root(&r)).0;
                    found.push(r);
                }
                None => break,
            }
        }
        found.sort();
        (found, rest)
    }

    /// Complex roots with multiplicities, via [`poly_roots`].
    pub fn numeric_roots(&self, policy: &RootPolicy) -> Vec<(CxApprox, usize)> {
        let c: Vec<CxApprox> = self.coeffs.iter().map(|x| CxApprox::real(to_f64(x))).collect();
        let mut roots = poly_roots(&c, policy).unwrap_or_default();
        let dp = self.derivative();
        for (z, mult) in roots.iter_mut() {
            if *mult == 1 {
                let w = self.polish_simple_root(&dp, z.to_c64());
                *z = CxApprox::from_c64(w).with_tol(z.tol);
            }
        }
        roots
    }

    /// Newton steps towards a simple root, with `p(z)` evaluated exactly at
    /// the current float iterate so cancellation in large coefficients does
    /// not limit the accuracy.
    fn polish_simple_root(&self, dp: &UPoly, mut z: Complex64) -> Complex64 {
        for _ in 0..4 {
            let (Some(re), Some(im)) = (Rat::from_f64(z.re), Rat::from_f64(z.im)) else {
                return z;
            };
            let (pr, pi) = self.eval_gaussian(&re, &im);
            let fz = Complex64::new(to_f64(&pr), to_f64(&pi));
            let dz = dp.eval_c(z);
            if fz.norm() == 0.0 || dz.norm() == 0.0 {
                break;
            }
            let step = fz / dz;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            let next = z - step;
            if next == z {
                break;
            }
            z = next;
        }
        z
    }

    /// Exact value at `re + i im`, as a (real, imaginary) pair.
    fn eval_gaussian(&self, re: &Rat, im: &Rat) -> (Rat, Rat) {
        self.coeffs.iter().rev().fold((Rat::zero(), Rat::zero()), |(a, b), c| {
            (&a * re - &b * im + c, &a * im + &b * re)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::rat;

    #[test]
    fn division_and_gcd() {
        let a = UPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = UPoly::from_i64(&[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, UPoly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        let g = UPoly::from_i64(&[1, 2, 1]).gcd(&a);
        assert_eq!(g, UPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn yun_factorization() {
        // (x-1)^3 (x+2)^2 (x-5)
        let f = UPoly::linear_root(&int(1))
            .pow(3)
            .mul(&UPoly::linear_root(&int(-2)).pow(2))
            .mul(&UPoly::linear_root(&int(5)))
            .scale(&int(7));
        let sf = f.square_free_factors();
        assert_eq!(
            sf,
            vec![
                (UPoly::linear_root(&int(5)), 1),
                (UPoly::linear_root(&int(-2)), 2),
                (UPoly::linear_root(&int(1)), 3)
            ]
        );
        assert!(!f.is_square_free());
        assert!(UPoly::from_i64(&[-2, 0, 1]).is_square_free());
    }

    #[test]
    fn rational_roots_are_exact() {
        let f = UPoly::linear_root(&rat(-3, 7))
            .mul(&UPoly::linear_root(&rat(11, 5)))
            .mul(&UPoly::from_i64(&[-2, 0, 1]));
        let (roots, rest) = f.split_rational_roots(&RootPolicy::default());
        assert_eq!(roots, vec![rat(-3, 7), rat(11, 5)]);
        assert_eq!(rest.monic(), UPoly::from_i64(&[-2, 0, 1]));
    }
}
