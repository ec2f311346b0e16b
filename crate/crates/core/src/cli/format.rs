//! Line-oriented instance files.
//!
//! ```text
//! waringlab-instance v1
//! m 2
//! d 5
//! seed 7
//! kind structured t 1 profile 2
//! form
//! 1/1 4 1 0
//! 1/1 0 0 5
//! end
//! ground-truth structured
//! line 1/1 0/1 0/1 ; 0/1 1/1 0/1
//! ...
//! end
//! ```
//!
//! Form terms are `coefficient e0 ... em`, nonzero terms only, in monomial
//! order. Scalars are `p/q` or `~re,im` (optionally `@tol`). A `report`
//! block is kept verbatim.

use std::fmt::Write as _;

use thiserror::Error;

use crate::binary::{BinaryForm, GenDecomp, GenTerm};
use crate::decomposer::{
    Addendum, GenericCase, GroundTruth, Instance, InstanceKind, Outcome, WDecomposition,
};
use crate::exactlin::roots::DEFAULT_EQ_TOL;
use crate::exactlin::{format_rat, parse_rat, CxApprox, Rat};
use crate::forms::{monomial_rank, Form, LinearForm, Line};
use crate::schemes::{Coords, PointMult, Scheme0Dim};

pub const HEADER: &str = "waringlab-instance v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub decomposition: Option<Outcome>,
    pub report: Option<Vec<String>>,
}

impl InstanceFile {
    pub fn new(instance: Instance) -> Self {
        InstanceFile { instance, decomposition: None, report: None }
    }
}

fn coords_tokens(c: &Coords) -> String {
    match c {
        Coords::Exact(v) => v.iter().map(format_rat).collect::<Vec<_>>().join(" "),
        Coords::Approx(v) => v
            .iter()
            .map(|z| {
                let mut s = format!("~{:?},{:?}", z.re, z.im);
                if z.tol != DEFAULT_EQ_TOL {
                    let _ = write!(s, "@{:?}", z.tol);
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn rats_tokens(v: &[Rat]) -> String {
    v.iter().map(format_rat).collect::<Vec<_>>().join(" ")
}

fn write_part(out: &mut String, key: &str, p: &PointMult) {
    let _ = write!(out, "{key} {} mult {}", coords_tokens(&p.point), p.mult);
    if let Some(w) = &p.direction {
        let _ = write!(out, " dir {}", coords_tokens(w));
    }
    out.push('\n');
}

fn write_scheme(out: &mut String, key: &str, z: &Scheme0Dim) {
    for p in &z.parts {
        write_part(out, key, p);
    }
}

fn write_structured(out: &mut String, w: &WDecomposition) {
    let [l1, l2] = w.line.basis();
    let _ = writeln!(out, "line {} ; {}", rats_tokens(l1.coeffs()), rats_tokens(l2.coeffs()));
    let _ = writeln!(out, "sbr {}", w.sbr);
    let _ = writeln!(out, "sr {}", w.sr);
    for a in &w.addenda {
        let _ = writeln!(out, "addendum {} : {}", format_rat(&a.coeff), rats_tokens(a.form.coeffs()));
    }
    let _ = writeln!(out, "binary {}", rats_tokens(w.q.coords()));
    for t in &w.gen.terms {
        let _ = writeln!(out, "gen-term {} : {} : {}", coords_tokens(&t.l), coords_tokens(&t.m), t.d_i);
    }
    write_scheme(out, "z-part", &w.z);
    write_scheme(out, "s1-part", &w.s1);
}

pub fn serialize(f: &InstanceFile) -> String {
    let inst = &f.instance;
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "m {}", inst.form.m());
    let _ = writeln!(out, "d {}", inst.form.degree());
    let _ = writeln!(out, "seed {}", inst.seed);
    match &inst.kind {
        InstanceKind::Structured { t, profile } => {
            let p = profile.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            let _ = writeln!(out, "kind structured t {t} profile {p}");
        }
        InstanceKind::Generic { s } => {
            let _ = writeln!(out, "kind generic s {s}");
        }
        InstanceKind::Plain => out.push_str("kind plain\n"),
    }
    out.push_str("form\n");
    for (e, c) in inst.form.terms() {
        let exps = e.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{} {exps}", format_rat(&c));
    }
    out.push_str("end\n");
    match &inst.ground_truth {
        Some(GroundTruth::Structured(w)) => {
            out.push_str("ground-truth structured\n");
            write_structured(&mut out, w);
            out.push_str("end\n");
        }
        Some(GroundTruth::Generic { points, z }) => {
            out.push_str("ground-truth generic\n");
            for p in points {
                let _ = writeln!(out, "point {}", rats_tokens(p.coeffs()));
            }
            write_scheme(&mut out, "z-part", z);
            out.push_str("end\n");
        }
        None => {}
    }
    match &f.decomposition {
        Some(Outcome::Decomposed(w)) => {
            out.push_str("decomposition structured\n");
            write_structured(&mut out, w);
            out.push_str("end\n");
        }
        Some(Outcome::Generic(g)) => {
            out.push_str("decomposition generic\n");
            let _ = writeln!(out, "sbr {}", g.sbr);
            let _ = writeln!(out, "lgp {}", g.lgp);
            write_scheme(&mut out, "z-part", &g.z);
            out.push_str("end\n");
        }
        None => {}
    }
    if let Some(r) = &f.report {
        out.push_str("report\n");
        for l in r {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Result<&'a str, ParseError> {
        let l = self.peek().ok_or_else(|| ParseError { line: self.pos + 1, msg: "unexpected end of file".into() })?;
        self.pos += 1;
        Ok(l)
    }

    fn keyed(&mut self, key: &str) -> Result<&'a str, ParseError> {
        let l = self.next()?;
        l.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| self.err(format!("expected '{key} ...', found '{l}'")))
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, ParseError> {
        let v = self.keyed(key)?;
        v.parse().map_err(|_| self.err(format!("bad {key} value '{v}'")))
    }
}

fn rat_token(l: &Lines, s: &str) -> Result<Rat, ParseError> {
    if !s.contains('/') {
        return Err(l.err(format!("expected p/q, found '{s}'")));
    }
    parse_rat(s).ok_or_else(|| l.err(format!("bad rational '{s}'")))
}

fn rats(l: &Lines, s: &str) -> Result<Vec<Rat>, ParseError> {
    s.split(' ').map(|t| rat_token(l, t)).collect()
}

fn approx_token(l: &Lines, s: &str) -> Result<CxApprox, ParseError> {
    let bad = || l.err(format!("bad approximate scalar '{s}'"));
    let body = s.strip_prefix('~').ok_or_else(bad)?;
    let (z, tol) = match body.split_once('@') {
        Some((z, t)) => (z, Some(t.parse::<f64>().map_err(|_| bad())?)),
        None => (body, None),
    };
    let (re, im) = z.split_once(',').ok_or_else(bad)?;
    let c = CxApprox::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?);
    Ok(tol.map_or(c, |t| c.with_tol(t)))
}

fn coords(l: &Lines, s: &str) -> Result<Coords, ParseError> {
    if s.is_empty() {
        return Err(l.err("empty coordinate list"));
    }
    if s.starts_with('~') {
        Ok(Coords::Approx(s.split(' ').map(|t| approx_token(l, t)).collect::<Result<_, _>>()?))
    } else {
        Ok(Coords::Exact(rats(l, s)?))
    }
}

fn linear(l: &Lines, s: &str, m: usize) -> Result<LinearForm, ParseError> {
    let v = rats(l, s)?;
    if v.len() != m + 1 {
        return Err(l.err(format!("expected {} coefficients, found {}", m + 1, v.len())));
    }
    LinearForm::new(v).map_err(|e| l.err(e.to_string()))
}

fn part(l: &Lines, s: &str, m: usize) -> Result<PointMult, ParseError> {
    let (pt, rest) = s.split_once(" mult ").ok_or_else(|| l.err("expected '... mult e'"))?;
    let (e, dir) = match rest.split_once(" dir ") {
        Some((e, d)) => (e, Some(coords(l, d)?)),
        None => (rest, None),
    };
    let e: usize = e.parse().map_err(|_| l.err(format!("bad multiplicity '{e}'")))?;
    let p = coords(l, pt)?;
    if p.len() != m + 1 {
        return Err(l.err("point has the wrong number of coordinates"));
    }
    match (e, dir) {
        (0, _) => Err(l.err("multiplicity 0")),
        (1, None) => Ok(PointMult::simple(p)),
        (e, Some(w)) if e > 1 => Ok(PointMult { point: p, mult: e, direction: Some(w) }),
        _ => Err(l.err("a direction is given exactly for multiple points")),
    }
}

fn parse_structured(l: &mut Lines, m: usize, d: u32) -> Result<WDecomposition, ParseError> {
    let rows = l.keyed("line")?;
    let (a, b) = rows.split_once(" ; ").ok_or_else(|| l.err("expected 'line L1 ; L2'"))?;
    let line = Line::new(linear(l, a, m)?, linear(l, b, m)?).map_err(|e| l.err(e.to_string()))?;
    let sbr = l.number("sbr")?;
    let sr = l.number("sr")?;
    let mut addenda = Vec::new();
    while l.peek().is_some_and(|s| s.starts_with("addendum ")) {
        let s = l.keyed("addendum")?;
        let (c, f) = s.split_once(" : ").ok_or_else(|| l.err("expected 'addendum c : M'"))?;
        addenda.push(Addendum { coeff: rat_token(l, c)?, form: linear(l, f, m)? });
    }
    let q = l.keyed("binary")?;
    let q = rats(l, q)?;
    if q.len() != d as usize + 1 {
        return Err(l.err("binary part has the wrong length"));
    }
    let mut terms = Vec::new();
    while l.peek().is_some_and(|s| s.starts_with("gen-term ")) {
        let s = l.keyed("gen-term")?;
        let f: Vec<&str> = s.split(" : ").collect();
        let [u, mm, di] = f[..] else { return Err(l.err("expected 'gen-term l : m : d_i'")) };
        let d_i = di.parse().map_err(|_| l.err(format!("bad d_i '{di}'")))?;
        terms.push(GenTerm { l: coords(l, u)?, m: coords(l, mm)?, d_i });
    }
    let z = parse_parts(l, "z-part", m)?;
    let s1 = parse_parts(l, "s1-part", m)?;
    Ok(WDecomposition {
        q: BinaryForm::new(q, Some(line.clone())),
        line,
        addenda,
        gen: GenDecomp { d, terms },
        sbr,
        sr,
        z,
        s1,
    })
}

fn parse_parts(l: &mut Lines, key: &str, m: usize) -> Result<Scheme0Dim, ParseError> {
    let mut parts = Vec::new();
    let prefix = format!("{key} ");
    while l.peek().is_some_and(|s| s.starts_with(&prefix)) {
        let s = l.keyed(key)?;
        parts.push(part(l, s, m)?);
    }
    Ok(Scheme0Dim::new(m, parts))
}

fn expect(l: &mut Lines, want: &str) -> Result<(), ParseError> {
    let s = l.next()?;
    if s == want {
        Ok(())
    } else {
        Err(l.err(format!("expected '{want}', found '{s}'")))
    }
}

pub fn parse(text: &str) -> Result<InstanceFile, ParseError> {
    let body = text.strip_suffix('\n').ok_or(ParseError { line: 0, msg: "missing final newline".into() })?;
    let mut l = Lines { lines: body.split('\n').collect(), pos: 0 };
    expect(&mut l, HEADER)?;
    let m: usize = l.number("m")?;
    let d: u32 = l.number("d")?;
    let seed: u64 = l.number("seed")?;
    let kind = l.keyed("kind")?;
    let toks: Vec<&str> = kind.split(' ').collect();
    let bad_kind = |l: &Lines| l.err(format!("bad kind '{kind}'"));
    let kind = match toks[..] {
        ["plain"] => InstanceKind::Plain,
        ["generic", "s", s] => InstanceKind::Generic { s: s.parse().map_err(|_| bad_kind(&l))? },
        ["structured", "t", t, "profile", p] => InstanceKind::Structured {
            t: t.parse().map_err(|_| bad_kind(&l))?,
            profile: p.split(',').map(str::parse).collect::<Result<_, _>>().map_err(|_| bad_kind(&l))?,
        },
        _ => return Err(bad_kind(&l)),
    };

    expect(&mut l, "form")?;
    let mut terms: Vec<(Vec<u32>, Rat)> = Vec::new();
    loop {
        let s = l.next()?;
        if s == "end" {
            break;
        }
        let mut it = s.split(' ');
        let c = rat_token(&l, it.next().unwrap_or(""))?;
        let e: Vec<u32> = it.map(str::parse).collect::<Result<_, _>>().map_err(|_| l.err("bad exponent"))?;
        if e.len() != m + 1 || e.iter().sum::<u32>() != d {
            return Err(l.err(format!("exponents must be {} numbers summing to {d}", m + 1)));
        }
        if num_traits::Zero::is_zero(&c) {
            return Err(l.err("zero coefficient"));
        }
        if let Some((prev, _)) = terms.last() {
            if monomial_rank(prev) >= monomial_rank(&e) {
                return Err(l.err("terms out of order or repeated"));
            }
        }
        terms.push((e, c));
    }
    let form = Form::from_terms(m, d, &terms);

    let mut ground_truth = None;
    if l.peek().is_some_and(|s| s.starts_with("ground-truth ")) {
        ground_truth = Some(match l.keyed("ground-truth")? {
            "structured" => GroundTruth::Structured(parse_structured(&mut l, m, d)?),
            "generic" => {
                let mut points = Vec::new();
                while l.peek().is_some_and(|s| s.starts_with("point ")) {
                    let s = l.keyed("point")?;
                    points.push(linear(&l, s, m)?);
                }
                GroundTruth::Generic { points, z: parse_parts(&mut l, "z-part", m)? }
            }
            k => return Err(l.err(format!("unknown ground truth kind '{k}'"))),
        });
        expect(&mut l, "end")?;
    }

    let mut decomposition = None;
    if l.peek().is_some_and(|s| s.starts_with("decomposition ")) {
        decomposition = Some(match l.keyed("decomposition")? {
            "structured" => Outcome::Decomposed(parse_structured(&mut l, m, d)?),
            "generic" => {
                let sbr = l.number("sbr")?;
                let lgp = l.number("lgp")?;
                Outcome::Generic(GenericCase { sbr, lgp, z: parse_parts(&mut l, "z-part", m)? })
            }
            k => return Err(l.err(format!("unknown decomposition kind '{k}'"))),
        });
        expect(&mut l, "end")?;
    }

    let mut report = None;
    if l.peek() == Some("report") {
        l.next()?;
        let mut r = Vec::new();
        loop {
            let s = l.next()?;
            if s == "end" {
                break;
            }
            r.push(s.to_string());
        }
        report = Some(r);
    }
    if let Some(s) = l.peek() {
        return Err(l.err(format!("unexpected trailing content '{s}'")));
    }
    let file = InstanceFile { instance: Instance { form, ground_truth, seed, kind }, decomposition, report };
    if serialize(&file) != text {
        return Err(ParseError { line: 0, msg: "non-canonical encoding (unreduced scalar or unsorted scheme parts)".into() });
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposer::{decompose, generate_instance, DecomposeOptions, GenerateParams};

    #[test]
    fn round_trip_generated() {
        let inst = generate_instance(&GenerateParams { m: 2, d: 5, t: 1, profile: vec![2], seed: 7 }).unwrap();
        let mut file = InstanceFile::new(inst);
        file.decomposition = Some(decompose(&file.instance.form, &DecomposeOptions::default()).unwrap());
        file.report = Some(vec!["(a) PASS".into(), String::new(), "free text".into()]);
        let text = serialize(&file);
        let back = parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn approximate_tokens() {
        let l = Lines { lines: vec![], pos: 0 };
        let c = coords(&l, "~1.5,-0.25 ~0.1,0.0@1e-6").unwrap();
        let Coords::Approx(v) = &c else { panic!() };
        assert_eq!(v[0], CxApprox::new(1.5, -0.25));
        assert_eq!(v[1].tol, 1e-6);
        assert_eq!(coords_tokens(&c), "~1.5,-0.25 ~0.1,0.0@1e-6");
    }

    #[test]
    fn truncated_and_malformed() {
        let inst = generate_instance(&GenerateParams { m: 2, d: 5, t: 1, profile: vec![2], seed: 7 }).unwrap();
        let text = serialize(&InstanceFile::new(inst));
        let cut = &text[..text.len() / 2];
        assert!(parse(cut).is_err());
        assert!(parse(&text.replace("m 2", "m x")).is_err());
        assert!(parse(&text.replace("form\n", "form\n1/1 9 9 9\n")).is_err());
        assert!(parse(&format!("{text}junk\n")).is_err());
        assert!(parse(&text.replacen("1/1", "2/2", 1)).is_err());
    }
}
