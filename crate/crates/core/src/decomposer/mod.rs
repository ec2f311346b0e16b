//! Recovery of the structure `F = Q + c_1 M_1^d + ... + c_t M_t^d`, where `Q`
//! is a binary form on a line `l` and the `M_i` are points off `l`.
//!
//! The evincing scheme `Z` of `F` is cut out by a graded piece of the apolar
//! ideal. Its non-reduced part lies on `l` and gives the line; its simple
//! points off `l` give the `M_i`. The remaining coefficients come from one
//! exact linear solve.

mod generate;
mod probe;
mod verify;

pub use generate::{generate_generic_instance, generate_instance, GenerateError, GenerateParams};
pub use probe::{uniqueness_probe, ProbeError, ProbeReport};
pub use verify::{mutations, verify, Clause, ClauseStatus, VerificationReport};

use thiserror::Error;

use crate::binary::{generalized_decomposition, rank_scheme, sylvester_analyze, BinaryForm, GenDecomp};
use crate::catalecticant::{apolar_piece, catalecticant_ranks};
use crate::exactlin::rat::nth_root_exact;
use crate::exactlin::{Rat, RatMatrix, RootPolicy};
use crate::forms::{power_of_linear, Form, LinearForm, Line};
use crate::schemes::{lgp_check, zero_locus, Coords, LocusOptions, Scheme0Dim};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecomposeError {
    #[error("the zero form")]
    ZeroForm,
    #[error("needs m >= 2 and d >= 4, got m = {m}, d = {d}")]
    Degenerate { m: usize, d: u32 },
    #[error("out of regime: {0}")]
    OutOfRegime(String),
}

fn oor(msg: impl Into<String>) -> DecomposeError {
    DecomposeError::OutOfRegime(msg.into())
}

/// `coeff * form^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Addendum {
    pub form: LinearForm,
    pub coeff: Rat,
}

impl Addendum {
    pub fn power(&self, d: u32) -> Form {
        power_of_linear(&self.form, d).scale(&self.coeff)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WDecomposition {
    pub line: Line,
    pub addenda: Vec<Addendum>,
    /// Binary part, in the basis of `line`.
    pub q: BinaryForm,
    pub gen: GenDecomp,
    pub sbr: usize,
    /// `t + sr(Q)`; not certified independently.
    pub sr: usize,
    pub z: Scheme0Dim,
    pub s1: Scheme0Dim,
}

impl WDecomposition {
    pub fn t(&self) -> usize {
        self.addenda.len()
    }

    pub fn d(&self) -> u32 {
        self.q.degree()
    }

    pub fn m(&self) -> usize {
        self.line.m()
    }

    pub fn reconstruct(&self) -> Form {
        let d = self.d();
        self.addenda.iter().fold(self.q.to_form(), |acc, a| acc.add(&a.power(d)))
    }

    fn on_line(&self, c: &Coords) -> bool {
        match c {
            Coords::Exact(v) => self.line.contains(v),
            Coords::Approx(_) => self.line.contains_c(&c.to_c64(), 1e-8),
        }
    }

    /// Part of `Z` on the line.
    pub fn z1(&self) -> Scheme0Dim {
        let parts = self.z.parts.iter().filter(|p| self.on_line(&p.point)).cloned().collect();
        Scheme0Dim::new(self.z.m, parts)
    }

    /// Part of `Z` off the line.
    pub fn s2(&self) -> Scheme0Dim {
        let parts = self.z.parts.iter().filter(|p| !self.on_line(&p.point)).cloned().collect();
        Scheme0Dim::new(self.z.m, parts)
    }
}

/// `F` whose evincing scheme is reduced and in linearly general position.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericCase {
    pub z: Scheme0Dim,
    pub sbr: usize,
    pub lgp: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Decomposed(WDecomposition),
    Generic(GenericCase),
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    /// Seeds the random chart and projection used for scheme extraction.
    pub seed: u64,
    pub policy: RootPolicy,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { seed: 1, policy: RootPolicy::default() }
    }
}

/// What the generator knows about an instance.
#[derive(Clone, Debug, PartialEq)]
pub enum GroundTruth {
    Structured(WDecomposition),
    Generic { points: Vec<LinearForm>, z: Scheme0Dim },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Structured { t: usize, profile: Vec<usize> },
    Generic { s: usize },
    /// Read from a file without generation metadata.
    Plain,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub form: Form,
    pub ground_truth: Option<GroundTruth>,
    pub seed: u64,
    pub kind: InstanceKind,
}

/// Border rank estimate `s` and the degree at which the apolar ideal
/// both has the right Hilbert function and is generated. With `K` the set
/// of `k` where `rank cat_k(F) = s`, that degree is `min K + 1`, and it must
/// itself lie in `K`.
pub fn regime_degree(f: &Form) -> Result<(usize, u32), DecomposeError> {
    let d = f.degree();
    let ranks = catalecticant_ranks(f);
    let s = ranks[1..d as usize].iter().copied().max().unwrap_or(1);
    let ks: Vec<u32> = (1..d).filter(|&k| ranks[k as usize] == s).collect();
    let (lo, hi) = (ks[0], *ks.last().expect("nonempty"));
    if lo + 1 > hi {
        return Err(oor(format!(
            "catalecticant ranks {:?} reach {s} only at k = {lo}; the apolar ideal is not determined in degree {}",
            ranks,
            lo + 1
        )));
    }
    Ok((s, lo + 1))
}

pub fn decompose(f: &Form, opts: &DecomposeOptions) -> Result<Outcome, DecomposeError> {
    if f.is_zero() {
        return Err(DecomposeError::ZeroForm);
    }
    let (m, d) = (f.m(), f.degree());
    if m < 2 || d < 4 {
        return Err(DecomposeError::Degenerate { m, d });
    }
    let (s, k) = regime_degree(f)?;
    let gens = apolar_piece(f, k).map_err(|e| oor(e.to_string()))?;
    let lopts = LocusOptions { seed: opts.seed, policy: opts.policy };
    let z = zero_locus(&gens, s, &lopts).map_err(|e| oor(format!("scheme extraction: {e}")))?;

    if z.is_reduced() {
        let lgp = lgp_check(&z).map_err(|e| oor(e.to_string()))?;
        if lgp {
            return Ok(Outcome::Generic(GenericCase { z, sbr: s, lgp }));
        }
        return Err(oor("reduced evincing scheme not in linearly general position"));
    }

    let mut line: Option<Line> = None;
    for p in z.parts.iter().filter(|p| p.mult > 1) {
        let (Some(pv), Some(Coords::Exact(w))) = (p.point.exact(), &p.direction) else {
            return Err(oor("multiple point with inexact data"));
        };
        let here = Line::new(LinearForm::new(pv.to_vec()).expect("nonzero"), LinearForm::new(w.clone()).expect("nonzero"))
            .map_err(|e| oor(e.to_string()))?
            .canonical_line();
        match &line {
            None => line = Some(here),
            Some(l) if *l == here => {}
            Some(_) => return Err(oor("multiple points on distinct lines")),
        }
    }
    let line = line.expect("non-reduced scheme has a multiple point");

    let mut off = Vec::new();
    for p in &z.parts {
        match &p.point {
            Coords::Exact(v) if !line.contains(v) => off.push(LinearForm::new(v.clone()).expect("nonzero")),
            Coords::Exact(_) => {}
            Coords::Approx(v) => {
                if !line.contains_c(&v.iter().map(|z| z.to_c64()).collect::<Vec<_>>(), 1e-8) {
                    return Err(oor("point off the line with irrational coordinates"));
                }
            }
        }
    }
    let t = off.len();
    if 2 * t > d as usize - 1 {
        return Err(oor(format!("t = {t} exceeds (d-1)/2")));
    }

    let mut cols: Vec<Vec<Rat>> = off.iter().map(|l| power_of_linear(l, d).coeffs().to_vec()).collect();
    cols.extend(line.binary_basis(d).into_iter().map(|b| b.coeffs().to_vec()));
    let x = RatMatrix::from_cols(cols)
        .solve_exact(f.coeffs())
        .map_err(|_| oor("F minus the powers of the off-line points is not binary on the line"))?;
    let mut addenda = Vec::with_capacity(t);
    for (l, c) in off.iter().zip(&x) {
        if num_traits::Zero::is_zero(c) {
            return Err(oor("an off-line point of the scheme carries no weight"));
        }
        addenda.push(match nth_root_exact(c, d) {
            Some(r) => Addendum { form: l.scale(&r), coeff: Rat::from_integer(1.into()) },
            None => Addendum { form: l.clone(), coeff: c.clone() },
        });
    }
    let q = BinaryForm::new(x[t..].to_vec(), Some(line.clone()));
    if q.is_zero() {
        return Err(oor("binary part vanishes"));
    }
    let sq = sylvester_analyze(&q).map_err(|e| oor(e.to_string()))?;
    if sq.sbr >= sq.sr {
        return Err(oor("binary part has no rank jump"));
    }
    let gen = generalized_decomposition(&q, &opts.policy).map_err(|e| oor(e.to_string()))?;
    let s1 = rank_scheme(&q, &opts.policy).map_err(|e| oor(e.to_string()))?.scheme;
    Ok(Outcome::Decomposed(WDecomposition {
        line,
        addenda,
        q,
        gen,
        sbr: t + sq.sbr,
        sr: t + sq.sr,
        z,
        s1,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::schemes::PointMult;

    #[test]
    fn worked_example() {
        let f = Form::monomial(&[4, 1, 0]).add(&Form::monomial(&[0, 0, 5]));
        let Outcome::Decomposed(w) = decompose(&f, &DecomposeOptions::default()).unwrap() else {
            panic!("expected a decomposition")
        };
        let x2 = Line::new(LinearForm::from_i64(&[1, 0, 0]), LinearForm::from_i64(&[0, 1, 0])).unwrap();
        assert_eq!(w.line, x2);
        assert_eq!(w.addenda, vec![Addendum { form: LinearForm::from_i64(&[0, 0, 1]), coeff: int(1) }]);
        assert_eq!(w.q.coords(), &[int(0), int(1), int(0), int(0), int(0), int(0)]);
        assert_eq!((w.sbr, w.sr), (3, 6));
        assert_eq!(w.gen.terms.len(), 1);
        assert_eq!(w.gen.terms[0].l, Coords::from_i64(&[1, 0]));
        assert_eq!(w.gen.terms[0].m, Coords::from_i64(&[0, 1]));
        assert_eq!(w.gen.terms[0].d_i, 1);
        assert_eq!(w.reconstruct(), f);
    }

    #[test]
    fn power_sum_is_generic() {
        let f = Form::monomial(&[5, 0, 0]).add(&Form::monomial(&[0, 5, 0])).add(&Form::monomial(&[0, 0, 5]));
        let Outcome::Generic(g) = decompose(&f, &DecomposeOptions::default()).unwrap() else {
            panic!("expected the generic case")
        };
        assert_eq!(g.sbr, 3);
        assert!(g.lgp);
        assert_eq!(
            g.z.parts,
            vec![
                PointMult::simple(Coords::from_i64(&[0, 0, 1])),
                PointMult::simple(Coords::from_i64(&[0, 1, 0])),
                PointMult::simple(Coords::from_i64(&[1, 0, 0]))
            ]
        );
    }

    #[test]
    fn degenerate_inputs_are_refused() {
        let f = Form::monomial(&[2, 1, 0]);
        assert_eq!(decompose(&f, &DecomposeOptions::default()), Err(DecomposeError::Degenerate { m: 2, d: 3 }));
        let f = Form::monomial(&[4, 1]);
        assert_eq!(decompose(&f, &DecomposeOptions::default()), Err(DecomposeError::Degenerate { m: 1, d: 5 }));
        assert_eq!(decompose(&Form::zero(2, 5), &DecomposeOptions::default()), Err(DecomposeError::ZeroForm));
    }

    #[test]
    fn non_negative_even_weights_are_absorbed() {
        // 16 x2^4 is (2 x2)^4; -x2^4 keeps its coefficient
        let base = Form::monomial(&[3, 1, 0]);
        let f = base.add(&Form::monomial(&[0, 0, 4]).scale(&int(16)));
        let Outcome::Decomposed(w) = decompose(&f, &DecomposeOptions::default()).unwrap() else { panic!() };
        assert_eq!(w.addenda[0], Addendum { form: LinearForm::from_i64(&[0, 0, 2]), coeff: int(1) });
        let f = base.sub(&Form::monomial(&[0, 0, 4]));
        let Outcome::Decomposed(w) = decompose(&f, &DecomposeOptions::default()).unwrap() else { panic!() };
        assert_eq!(w.addenda[0], Addendum { form: LinearForm::from_i64(&[0, 0, 1]), coeff: int(-1) });
    }
}
