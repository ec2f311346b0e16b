use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{decompose, DecomposeOptions, Outcome};
use crate::binary::sylvester_analyze;
use crate::exactlin::{int, rat, CxApprox};
use crate::forms::Form;
use crate::schemes::{lgp_check, scheme_span_contains, Coords, PointMult, Scheme0Dim};

const SPAN_TOL: f64 = 1e-8;
const REDRAW_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("needs m >= 2 and d >= 4, got m = {m}, d = {d}")]
    Degenerate { m: usize, d: u32 },
    #[error("deg Z = {deg} exceeds d = {d}")]
    DegreeTooLarge { deg: usize, d: u32 },
    #[error("binary part is not subgeneric: 2 sbr(Q) = {} >= d + 2 = {}", 2 * sbr, d + 2)]
    NotSubgeneric { sbr: usize, d: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub trials: usize,
    /// Candidates that were distinct from `Z`, of degree at most `deg Z`.
    pub tested: usize,
    /// Candidates whose span contains `F`.
    pub alternatives: Vec<Scheme0Dim>,
    /// A fresh decomposition under another random chart agreed exactly.
    pub redecompose_identical: bool,
    pub lgp: bool,
}

impl ProbeReport {
    pub fn unique(&self) -> bool {
        self.alternatives.is_empty() && self.redecompose_identical
    }
}

fn shift(p: &Coords, rng: &mut ChaCha8Rng) -> Coords {
    match p {
        Coords::Exact(v) => Coords::Exact(
            v.iter().map(|c| c + rat(rng.gen_range(-4..=4), rng.gen_range(1..=8))).collect(),
        ),
        c => Coords::Approx(
            c.to_c64()
                .into_iter()
                .map(|z| CxApprox::from_c64(z + rng.gen_range(-0.5..0.5)))
                .collect(),
        ),
    }
}

fn combine(a: &Coords, b: &Coords, s: i64, t: i64) -> Coords {
    match (a, b) {
        (Coords::Exact(x), Coords::Exact(y)) => {
            Coords::Exact(x.iter().zip(y).map(|(p, q)| p * int(s) + q * int(t)).collect())
        }
        _ => Coords::Approx(
            a.to_c64()
                .into_iter()
                .zip(b.to_c64())
                .map(|(p, q)| CxApprox::from_c64(p * s as f64 + q * t as f64))
                .collect(),
        ),
    }
}

fn random_direction(p: &Coords, rng: &mut ChaCha8Rng) -> Coords {
    let n = p.len();
    loop {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let c = Coords::from_i64(&w);
        if w.iter().any(|&x| x != 0) && !c.same_point(p, SPAN_TOL) {
            return c;
        }
    }
}

fn with_mult(p: &Coords, e: usize, rng: &mut ChaCha8Rng) -> PointMult {
    if e <= 1 {
        PointMult::simple(p.clone())
    } else {
        PointMult::jet(p.clone(), e, random_direction(p, rng))
    }
}

fn candidate(z: &Scheme0Dim, rng: &mut ChaCha8Rng) -> Option<Scheme0Dim> {
    let n = z.parts.len();
    let deg = z.degree();
    let mut parts = z.parts.clone();
    match rng.gen_range(0..3) {
        0 => {
            // move one or more supports, keeping the jet shape
            let k = rng.gen_range(1..=n);
            for _ in 0..k {
                let i = rng.gen_range(0..n);
                let p = shift(&parts[i].point, rng);
                parts[i] = with_mult(&p, parts[i].mult, rng);
            }
        }
        1 => {
            // replace the scheme by points and jets on a line through two supports
            if n < 2 {
                return None;
            }
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let (a, b) = (&z.parts[i].point, &z.parts[j].point);
            let budget = rng.gen_range(2..=deg.max(2));
            let keep = rng.gen_range(0..=n.saturating_sub(2));
            parts = z.parts.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, p)| p.clone()).take(keep).collect();
            let mut left = budget.saturating_sub(parts.iter().map(|p| p.mult).sum::<usize>()).max(1);
            while left > 0 {
                let (s, t) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                if s == 0 && t == 0 {
                    continue;
                }
                let e = rng.gen_range(1..=left);
                let p = combine(a, b, s, t);
                let dir = combine(a, b, t, -s);
                parts.push(if e == 1 { PointMult::simple(p) } else { PointMult::jet(p, e, dir) });
                left -= e;
            }
        }
        _ => {
            // drop a part or alter one jet
            let i = rng.gen_range(0..n);
            if rng.gen_bool(0.5) || parts[i].mult == 1 {
                if rng.gen_bool(0.5) && n > 1 {
                    parts.remove(i);
                } else {
                    let p = parts[i].point.clone();
                    parts[i] = with_mult(&p, rng.gen_range(1..=parts[i].mult + 1), rng);
                }
            } else {
                let p = parts[i].point.clone();
                parts[i] = PointMult::jet(p.clone(), parts[i].mult, random_direction(&p, rng));
            }
        }
    }
    for (k, p) in parts.iter().enumerate() {
        if is_origin(&p.point) || parts[..k].iter().any(|q| q.point.same_point(&p.point, SPAN_TOL)) {
            return None;
        }
    }
    let c = Scheme0Dim::new(z.m, parts);
    (c.degree() <= deg && !c.same_as(z, SPAN_TOL)).then_some(c)
}

fn is_origin(p: &Coords) -> bool {
    p.to_c64().iter().all(|z| z.norm() < 1e-12)
}

fn same_outcome(a: &Outcome, b: &Outcome) -> bool {
    match (a, b) {
        (Outcome::Generic(x), Outcome::Generic(y)) => x.sbr == y.sbr && x.z.same_as(&y.z, SPAN_TOL),
        (Outcome::Decomposed(x), Outcome::Decomposed(y)) => {
            let d = x.d();
            let mut px: Vec<Form> = x.addenda.iter().map(|a| a.power(d)).collect();
            let mut py: Vec<Form> = y.addenda.iter().map(|a| a.power(d)).collect();
            let key = |f: &Form| f.coeffs().iter().map(crate::exactlin::format_rat).collect::<Vec<_>>();
            px.sort_by_key(key);
            py.sort_by_key(key);
            x.line == y.line
                && px == py
                && x.q.to_form() == y.q.to_form()
                && (x.sbr, x.sr) == (y.sbr, y.sr)
                && x.z.same_as(&y.z, SPAN_TOL)
        }
        _ => false,
    }
}

/// Searches for a curvilinear scheme other than the evincing one, of no
/// larger degree, whose span contains `F`, and re-runs [`decompose`] under a
/// different random chart.
pub fn uniqueness_probe(f: &Form, outcome: &Outcome, trials: usize, seed: u64) -> Result<ProbeReport, ProbeError> {
    let (m, d) = (f.m(), f.degree());
    if m < 2 || d < 4 {
        return Err(ProbeError::Degenerate { m, d });
    }
    let z = match outcome {
        Outcome::Generic(g) => &g.z,
        Outcome::Decomposed(w) => {
            if let Ok(s) = sylvester_analyze(&w.q) {
                if 2 * s.sbr >= d as usize + 2 {
                    return Err(ProbeError::NotSubgeneric { sbr: s.sbr, d });
                }
            }
            &w.z
        }
    };
    if z.degree() > d as usize {
        return Err(ProbeError::DegreeTooLarge { deg: z.degree(), d });
    }
    let target = Coords::Exact(f.veronese_point());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut alternatives = Vec::new();
    for _ in 0..trials {
        let Some(c) = candidate(z, &mut rng) else { continue };
        tested += 1;
        if scheme_span_contains(&c, d, &target, SPAN_TOL).unwrap_or(false) {
            alternatives.push(c);
        }
    }
    let opts = DecomposeOptions { seed: seed ^ REDRAW_SALT, ..DecomposeOptions::default() };
    let redecompose_identical = decompose(f, &opts).is_ok_and(|o| same_outcome(&o, outcome));
    Ok(ProbeReport { trials, tested, alternatives, redecompose_identical, lgp: lgp_check(z).unwrap_or(false) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sum_has_no_alternative() {
        let f = Form::monomial(&[5, 0, 0]).add(&Form::monomial(&[0, 5, 0])).add(&Form::monomial(&[0, 0, 5]));
        let o = decompose(&f, &DecomposeOptions::default()).unwrap();
        let r = uniqueness_probe(&f, &o, 200, 3).unwrap();
        assert!(r.tested > 100);
        assert!(r.unique(), "{r:?}");
        assert!(r.lgp);
    }

    #[test]
    fn worked_example_has_no_alternative() {
        let f = Form::monomial(&[4, 1, 0]).add(&Form::monomial(&[0, 0, 5]));
        let o = decompose(&f, &DecomposeOptions::default()).unwrap();
        let r = uniqueness_probe(&f, &o, 200, 5).unwrap();
        assert!(r.unique(), "{r:?}");
    }

    #[test]
    fn gates() {
        let f = Form::monomial(&[3, 0, 0]).add(&Form::monomial(&[0, 3, 0]));
        let g = Form::monomial(&[5, 0, 0]).add(&Form::monomial(&[0, 5, 0])).add(&Form::monomial(&[0, 0, 5]));
        let o = decompose(&g, &DecomposeOptions::default()).unwrap();
        assert_eq!(uniqueness_probe(&f, &o, 1, 0), Err(ProbeError::Degenerate { m: 2, d: 3 }));
    }
}
