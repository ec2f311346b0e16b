//! Floating complex scalars and polynomial root finding.
//!
//! Roots come from the eigenvalues of the companion matrix (complex Schur
//! form), each polished by one Newton step. Roots closer than
//! `cluster_tol` are merged. A wider group of roots is also merged when its
//! centroid passes a derivative test, i.e. `|p^(j)(c)/j!|` is negligible for
//! every `j` below the group size; this is how a triple root, which the
//! eigensolver scatters by roughly `eps^(1/3)`, is reported once with
//! multiplicity 3.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::LinalgError;

pub const DEFAULT_EQ_TOL: f64 = 1e-9;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;

/// Complex approximation with its own equality tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CxApprox {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

impl CxApprox {
    pub fn new(re: f64, im: f64) -> Self {
        CxApprox { re, im, tol: DEFAULT_EQ_TOL }
    }

    pub fn real(re: f64) -> Self {
        Self::new(re, 0.0)
    }

    pub fn with_tol(self, tol: f64) -> Self {
        CxApprox { tol, ..self }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn from_c64(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Tolerance equality: distance at most the larger of the two tolerances.
    pub fn approx_eq(&self, other: &CxApprox) -> bool {
        (self.to_c64() - other.to_c64()).norm() <= self.tol.max(other.tol)
    }
}

/// Numerical knobs shared by every floating-point step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootPolicy {
    pub cluster_tol: f64,
    pub eq_tol: f64,
    pub residual_tol: f64,
}

impl Default for RootPolicy {
    fn default() -> Self {
        RootPolicy {
            cluster_tol: DEFAULT_CLUSTER_TOL,
            eq_tol: DEFAULT_EQ_TOL,
            residual_tol: DEFAULT_RESIDUAL_TOL,
        }
    }
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Taylor coefficients `p^(j)(z)/j!` for `j = 0..count`, by repeated
/// synthetic division by `x - z`.
fn taylor_at(c: &[Complex64], z: Complex64, count: usize) -> Vec<Complex64> {
    let mut work = c.to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if work.is_empty() {
            out.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let n = work.len() - 1;
        let mut q = vec![Complex64::new(0.0, 0.0); n];
        let mut acc = Complex64::new(0.0, 0.0);
        for i in (1..=n).rev() {
            acc = work[i] + acc * z;
            q[i - 1] = acc;
        }
        out.push(work[0] + acc * z);
        work = q;
    }
    out
}

/// All complex roots of `sum coeffs[i] x^i`, with multiplicities.
///
/// Coefficients are in ascending order. Trailing (numerically) zero
/// coefficients are dropped first. The output is sorted lexicographically on
/// `(re, im)` of the cluster centroids and the multiplicities sum to the
/// trimmed degree.
pub fn poly_roots(coeffs: &[CxApprox], policy: &RootPolicy) -> Result<Vec<(CxApprox, usize)>, LinalgError> {
    let scale = coeffs.iter().map(CxApprox::norm).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return Err(LinalgError::ZeroPolynomial);
    }
    let mut c: Vec<Complex64> = coeffs.iter().map(|z| z.to_c64() / scale).collect();
    while c.last().is_some_and(|z| z.norm() <= 1e-14) {
        c.pop();
    }
    if c.len() == 1 {
        return Ok(Vec::new());
    }
    // roots at zero are peeled off exactly
    let zeros = c.iter().take_while(|z| z.norm() == 0.0).count();
    let reduced: Vec<Complex64> = c[zeros..].to_vec();
    let mut raw: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); zeros];
    let n = reduced.len() - 1;
    if n > 0 {
        let lead = reduced[n];
        let mut comp = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..n {
            comp[(i, n - 1)] = -reduced[i] / lead;
        }
        let eig = comp.schur().eigenvalues().ok_or(LinalgError::NoConvergence)?;
        let dc: Vec<Complex64> = reduced.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
        for z in eig.iter() {
            // one Newton polish, kept only if it does not increase the residual
            let pz = horner(&reduced, *z);
            let dz = horner(&dc, *z);
            let mut best = *z;
            if dz.norm() > 0.0 {
                let cand = z - pz / dz;
                if cand.is_finite() && horner(&reduced, cand).norm() < pz.norm() {
                    best = cand;
                }
            }
            raw.push(best);
        }
    }
    Ok(cluster(&c, raw, policy))
}

fn cmp_c(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// A `k`-fold root at `c` scattered into points within radius `r` leaves
/// `|p^(j)(c)/j!|` of order `binom(k, j) r^(k-j)`, while the value itself must
/// vanish to working precision. Two distinct roots `2r` apart fail the second
/// test since `|p(c)| ~ r^2`.
fn certifies_multiple(c: &[Complex64], group: &[Complex64], centre: Complex64) -> bool {
    let k = group.len();
    let r = group.iter().map(|z| (z - centre).norm()).fold(0.0, f64::max);
    let tay = taylor_at(c, centre, k);
    if tay[0].norm() > 1e-12 {
        return false;
    }
    let mut binom = 1.0;
    for (j, t) in tay.iter().enumerate().skip(1) {
        binom = binom * (k + 1 - j) as f64 / j as f64;
        if t.norm() > 4.0 * binom * r.powi((k - j) as i32) + 1e-12 {
            return false;
        }
    }
    true
}

/// Newton on `p^(k-1)`, which has a simple root at a `k`-fold root of `p`.
fn refine(c: &[Complex64], mut z: Complex64, k: usize) -> Complex64 {
    if k < 2 {
        return z;
    }
    for _ in 0..4 {
        let t = taylor_at(c, z, k + 1);
        let den = t[k] * k as f64;
        if den.norm() == 0.0 {
            break;
        }
        let step = t[k - 1] / den;
        if !step.is_finite() || step.norm() > 1e-3 * (1.0 + z.norm()) {
            break;
        }
        z -= step;
    }
    z
}

fn cluster(c: &[Complex64], raw: Vec<Complex64>, policy: &RootPolicy) -> Vec<(CxApprox, usize)> {
    let n = raw.len();
    // union-find over raw roots
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (raw[i] - raw[j]).norm() <= policy.cluster_tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if seen[r] == usize::MAX {
            seen[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[seen[r]].push(i);
    }
    let centroid = |g: &[usize]| g.iter().map(|&i| raw[i]).sum::<Complex64>() / g.len() as f64;
    // second pass: merge nearby groups whose joint centroid certifies a multiple root
    let wide = 1e-4;
    let mut merged = true;
    while merged {
        merged = false;
        for a in 0..groups.len() {
            let ca = centroid(&groups[a]);
            let near: Vec<usize> = (0..groups.len())
                .filter(|&b| b != a && (centroid(&groups[b]) - ca).norm() <= wide * (1.0 + ca.norm()))
                .collect();
            if near.is_empty() {
                continue;
            }
            let mut joint = groups[a].clone();
            for &b in &near {
                joint.extend(&groups[b]);
            }
            let cj = centroid(&joint);
            if certifies_multiple(c, &joint.iter().map(|&i| raw[i]).collect::<Vec<_>>(), cj) {
                groups[a] = joint;
                let mut near = near;
                near.sort_unstable_by(|x, y| y.cmp(x));
                for b in near {
                    groups.remove(b);
                }
                merged = true;
                break;
            }
        }
    }
    let mut out: Vec<(Complex64, usize)> = groups.iter().map(|g| (refine(c, centroid(g), g.len()), g.len())).collect();
    out.sort_by(|a, b| cmp_c(&a.0, &b.0));
    out.into_iter().map(|(z, m)| (CxApprox::from_c64(z), m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_of(c: &[f64]) -> Vec<(CxApprox, usize)> {
        let c: Vec<CxApprox> = c.iter().map(|&x| CxApprox::real(x)).collect();
        poly_roots(&c, &RootPolicy::default()).unwrap()
    }

    #[test]
    fn simple_real_roots() {
        let r = roots_of(&[-1.0, 0.0, 1.0]);
        assert_eq!(r.len(), 2);
        assert!(r[0].0.approx_eq(&CxApprox::real(-1.0)) && r[0].1 == 1);
        assert!(r[1].0.approx_eq(&CxApprox::real(1.0)) && r[1].1 == 1);
    }

    #[test]
    fn repeated_roots_cluster() {
        let r = roots_of(&[0.0, 0.0, 1.0]);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].1, 2);
        assert!(r[0].0.norm() < 1e-12);
        let r = roots_of(&[-1.0, 3.0, -3.0, 1.0]);
        assert_eq!(r.len(), 1, "{r:?}");
        assert_eq!(r[0].1, 3);
        assert!((r[0].0.re - 1.0).abs() < 1e-7);
    }

    #[test]
    fn close_but_distinct_roots_stay_apart() {
        // (x - 1)(x - 1.001)
        let r = roots_of(&[1.001, -2.001, 1.0]);
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn complex_pair_and_zero_poly() {
        let r = roots_of(&[1.0, 0.0, 1.0]);
        assert_eq!(r.len(), 2);
        assert!(r[0].0.approx_eq(&CxApprox::new(0.0, -1.0)));
        assert!(r[1].0.approx_eq(&CxApprox::new(0.0, 1.0)));
        let z = poly_roots(&[CxApprox::real(0.0)], &RootPolicy::default());
        assert_eq!(z, Err(LinalgError::ZeroPolynomial));
    }

    #[test]
    fn residuals_are_small() {
        let c = [6.0, -5.0, -2.0, 1.0];
        for (z, _) in roots_of(&c) {
            let cz: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            assert!(horner(&cz, z.to_c64()).norm() <= 1e-6 * 6.0);
        }
    }
}
