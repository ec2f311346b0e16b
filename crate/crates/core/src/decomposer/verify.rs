use std::fmt;

use num_traits::One;

use super::{Addendum, WDecomposition};
use crate::binary::{canonical_scheme, sylvester_analyze, BinaryForm};
use crate::catalecticant::independence_check;
use crate::exactlin::rat::to_f64;
use crate::exactlin::{int, Rat, RootPolicy};
use crate::forms::{Form, LinearForm, Line};
use crate::schemes::{scheme_span_contains, Coords, PointMult, Scheme0Dim};

const SPAN_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseStatus {
    Pass,
    Fail,
    /// The clause's hypothesis does not hold; this does not count as a pass.
    NotApplicable,
}

impl fmt::Display for ClauseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClauseStatus::Pass => "PASS",
            ClauseStatus::Fail => "FAIL",
            ClauseStatus::NotApplicable => "N/A",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub id: char,
    pub status: ClauseStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub clauses: Vec<Clause>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.status == ClauseStatus::Pass)
    }

    pub fn status(&self, id: char) -> Option<ClauseStatus> {
        self.clauses.iter().find(|c| c.id == id).map(|c| c.status)
    }

    pub fn failing(&self) -> Vec<char> {
        self.clauses.iter().filter(|c| c.status != ClauseStatus::Pass).map(|c| c.id).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "({}) {} {}", c.id, c.status, c.detail)?;
        }
        Ok(())
    }
}

fn clause(id: char, ok: bool, detail: impl Into<String>) -> Clause {
    let status = if ok { ClauseStatus::Pass } else { ClauseStatus::Fail };
    Clause { id, status, detail: detail.into() }
}

fn gen_matches(w: &WDecomposition) -> bool {
    if w.gen.d != w.d() {
        return false;
    }
    match w.gen.reconstruct() {
        Some(c) => c == w.q.coords(),
        None => {
            let r = w.gen.reconstruct_c();
            let scale = w.q.coords().iter().map(|c| to_f64(c).abs()).fold(1.0, f64::max);
            r.iter().zip(w.q.coords()).all(|(a, b)| (a - to_f64(b)).norm() <= SPAN_TOL * scale)
        }
    }
}

/// Checks every structural claim a decomposition makes about `F`.
pub fn verify(f: &Form, w: &WDecomposition) -> VerificationReport {
    let policy = RootPolicy::default();
    let d = f.degree();
    let t = w.t();
    let mut out = Vec::new();

    let same_space = w.m() == f.m() && w.d() == d;
    out.push(clause('a', same_space && w.reconstruct() == *f, "F = Q + sum c_i M_i^d, exact"));
    out.push(clause('b', 2 * t < d as usize, format!("t = {t} <= (d-1)/2")));

    let sq = sylvester_analyze(&w.q).ok();
    out.push(clause(
        'c',
        w.gen.s() + t == w.sbr && gen_matches(w),
        format!("sum (d_i+1) = {} = sbr - t, generalized decomposition reconstructs Q", w.gen.s()),
    ));

    out.push(match &sq {
        Some(s) if s.sbr < s.sr => clause(
            'd',
            s.sbr + s.sr == d as usize + 2 && w.sr == t + s.sr,
            format!("sbr(Q) = {}, sr(Q) = {}, sum = d + 2; sr = t + sr(Q) = {} per theorem", s.sbr, s.sr, t + s.sr),
        ),
        Some(s) => Clause {
            id: 'd',
            status: ClauseStatus::NotApplicable,
            detail: format!("sbr(Q) = {} is not below sr(Q) = {}", s.sbr, s.sr),
        },
        None => clause('d', false, "binary part is zero"),
    });

    let z1 = w.z1();
    let s2 = w.s2();
    let canon = canonical_scheme(&w.q, &policy).ok();
    let e_ok = w.z.degree() == w.sbr
        && canon.as_ref().is_some_and(|c| c.same_as(&z1, SPAN_TOL))
        && s2.is_reduced()
        && s2.parts.len() == t
        && w.addenda.iter().all(|a| {
            let p = Coords::Exact(a.form.coeffs().to_vec());
            s2.parts.iter().any(|q| q.point.same_point(&p, SPAN_TOL))
        });
    out.push(clause('e', e_ok, format!("deg Z = {} = sbr, Z on the line is the canonical scheme of Q", w.z.degree())));

    let sr_q = sq.as_ref().map_or(0, |s| s.sr);
    let on_line = w.s1.parts.iter().all(|p| match &p.point {
        Coords::Exact(v) => w.line.contains(v),
        c => w.line.contains_c(&c.to_c64(), SPAN_TOL),
    });
    let f_ok = w.s1.is_reduced()
        && on_line
        && w.s1.degree() == sr_q
        && z1.common_supports(&w.s1, SPAN_TOL) == 0
        && z1.degree() + w.s1.degree() == d as usize + 2;
    out.push(clause(
        'f',
        f_ok,
        format!("deg Z1 + deg S1 = {} + {} = d + 2, Z1 and S1 disjoint", z1.degree(), w.s1.degree()),
    ));

    let span = |z: &Scheme0Dim, g: &Form| {
        scheme_span_contains(z, d, &Coords::Exact(g.veronese_point()), SPAN_TOL).unwrap_or(false)
    };
    let qf = w.q.to_form();
    let g_ok = same_space && span(&w.z, f) && span(&z1, &qf) && span(&w.s1, &qf);
    out.push(clause('g', g_ok, "F in <nu_d(Z)>, Q in <nu_d(Z1)> and <nu_d(S1)>"));

    let pts: Vec<Vec<Rat>> = w.addenda.iter().map(|a| a.form.coeffs().to_vec()).collect();
    let h_ok = pts.iter().all(|p| !w.line.contains(p))
        && (pts.is_empty() || independence_check(&w.line, &pts, d).unwrap_or(false));
    out.push(clause('h', h_ok, "every M_i off the line, nu_d(M_i) independent of the curve"));

    VerificationReport { clauses: out }
}

/// Single-field corruptions of a decomposition, each of which must be caught
/// by [`verify`].
pub fn mutations(w: &WDecomposition) -> Vec<(&'static str, WDecomposition)> {
    let mut out = Vec::new();
    let m = w.m();

    let mut x = w.clone();
    let mut fake: Vec<i64> = (0..=m as i64).map(|i| i + 2).collect();
    fake[0] = 1;
    x.addenda.push(Addendum { form: LinearForm::from_i64(&fake), coeff: int(1) });
    out.push(("fake addendum", x));

    let mut x = w.clone();
    let mut c = w.q.coords().to_vec();
    c[0] += Rat::one();
    x.q = BinaryForm::new(c, w.q.line().cloned());
    out.push(("binary part perturbed", x));

    let mut x = w.clone();
    let (r0, _) = w.line.canonical_rows();
    let off = (0..=m)
        .map(|j| (0..=m).map(|i| int(i64::from(i == j))).collect::<Vec<Rat>>())
        .find(|e| !w.line.contains(e))
        .expect("a line is not all of space");
    let new_line = Line::new(LinearForm::new(r0).expect("nonzero"), LinearForm::new(off).expect("nonzero"))
        .expect("independent");
    x.line = new_line.clone();
    x.q = BinaryForm::new(w.q.coords().to_vec(), Some(new_line));
    out.push(("line changed", x));

    let mut x = w.clone();
    x.sbr += 1;
    out.push(("sbr + 1", x));

    let mut x = w.clone();
    x.sr += 1;
    out.push(("sr + 1", x));

    let mut x = w.clone();
    let moved = match &x.z.parts[0].point {
        Coords::Exact(v) => {
            let mut v = v.clone();
            let n = v.len();
            v[n - 1] += int(3);
            Coords::Exact(v)
        }
        c => {
            let mut v = c.to_c64();
            let n = v.len();
            v[n - 1] += 3.0;
            Coords::Approx(v.into_iter().map(crate::exactlin::CxApprox::from_c64).collect())
        }
    };
    let first = &x.z.parts[0];
    x.z.parts[0] = match &first.direction {
        None => PointMult::simple(moved),
        Some(dir) => PointMult::jet(moved, first.mult, dir.clone()),
    };
    out.push(("scheme point moved", x));

    let mut x = w.clone();
    x.z.parts.pop();
    out.push(("scheme part dropped", x));

    let mut x = w.clone();
    if let Some(term) = x.gen.terms.first_mut() {
        term.m = match &term.m {
            Coords::Exact(v) => Coords::Exact(v.iter().map(|c| c + Rat::one()).collect()),
            c => Coords::Approx(c.to_c64().into_iter().map(|z| crate::exactlin::CxApprox::from_c64(z + 1.0)).collect()),
        };
    }
    out.push(("generalized term perturbed", x));

    let mut x = w.clone();
    x.s1.parts.pop();
    out.push(("rank point dropped", x));

    out
}
