//! The `waringlab` command line.

pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::binary::{canonical_scheme, generalized_decomposition, sylvester_analyze, BinaryForm};
use crate::catalecticant::{border_rank_estimate, catalecticant_ranks};
use crate::decomposer::{
    decompose, generate_generic_instance, generate_instance, uniqueness_probe, verify, DecomposeError,
    DecomposeOptions, GenerateParams, GroundTruth, Outcome, WDecomposition,
};
use crate::exactlin::{format_rat, parse_rat, RootPolicy};
use crate::schemes::{Coords, Scheme0Dim};
use format::{parse, serialize, InstanceFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    GenericCase = 2,
    OutOfRegime = 3,
    ParseError = 4,
    InvariantBreach = 5,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Parser, Debug)]
#[command(name = "waringlab", version, about = "Waring decompositions F = Q + M_1^d + ... + M_t^d")]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct TolArgs {
    /// Root clustering tolerance.
    #[arg(long, global = true, default_value_t = RootPolicy::default().cluster_tol)]
    cluster_tol: f64,
    /// Largest accepted relative residual of a numeric solve.
    #[arg(long, global = true, default_value_t = RootPolicy::default().residual_tol)]
    residual_tol: f64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Draw a random instance with known decomposition.
    Generate {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        d: u32,
        #[arg(short, default_value_t = 0)]
        t: usize,
        /// Root multiplicities of the binary part, e.g. `2,1`.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        profile: Vec<usize>,
        /// Instead: a sum of this many powers in general position.
        #[arg(long, value_name = "S")]
        generic: Option<usize>,
        #[arg(long, env = "WARINGLAB_SEED", default_value_t = 0)]
        seed: u64,
        /// Output file, `-` for stdout; defaults to `instance-m<m>-d<d>-seed<seed>.txt`.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decompose an instance and append the decomposition and report.
    Decompose {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, env = "WARINGLAB_SEED", default_value_t = 1)]
        seed: u64,
    },
    /// Check a stored decomposition (or the ground truth) against the form.
    Verify { input: PathBuf },
    /// Sylvester analysis of a binary form given by its coefficients.
    Sylvester {
        /// Coefficients of x0^d, x0^(d-1) x1, ..., x1^d.
        #[arg(required = true, allow_hyphen_values = true)]
        coeffs: Vec<String>,
    },
    /// Catalecticant ranks and the border rank estimate.
    Rank { input: PathBuf },
    /// Search for competing schemes and re-decompose under another chart.
    Probe {
        input: PathBuf,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, env = "WARINGLAB_SEED", default_value_t = 1)]
        seed: u64,
    },
}

struct Failure(ExitCode, String);

fn decompose_failure(e: DecomposeError) -> Failure {
    match e {
        DecomposeError::ZeroForm => Failure(ExitCode::ParseError, e.to_string()),
        _ => Failure(ExitCode::OutOfRegime, e.to_string()),
    }
}

type Res = Result<ExitCode, Failure>;

fn read_instance(path: &PathBuf) -> Result<InstanceFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(ExitCode::ParseError, format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure(ExitCode::ParseError, format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure(ExitCode::ParseError, format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure(ExitCode::ParseError, e.to_string())),
    }
}

fn coords_text(c: &Coords) -> String {
    match c {
        Coords::Exact(v) => format!("({})", v.iter().map(format_rat).collect::<Vec<_>>().join(", ")),
        Coords::Approx(v) => format!(
            "~({})",
            v.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn scheme_text(z: &Scheme0Dim) -> Vec<String> {
    z.parts
        .iter()
        .map(|p| match &p.direction {
            None => format!("  point {}", coords_text(&p.point)),
            Some(w) => format!("  point {} mult {} along {}", coords_text(&p.point), p.mult, coords_text(w)),
        })
        .collect()
}

fn decomposition_report(f: &crate::forms::Form, w: &WDecomposition) -> (Vec<String>, bool) {
    let (r0, r1) = w.line.canonical_rows();
    let row = |v: &[crate::exactlin::Rat]| v.iter().map(format_rat).collect::<Vec<_>>().join(" ");
    let mut lines = vec![
        format!("Decomposed: t = {}, sbr = {}, sr = {} (sr per theorem: t + sr(Q))", w.t(), w.sbr, w.sr),
        format!("line spanned by ({}) and ({})", row(&r0), row(&r1)),
    ];
    for a in &w.addenda {
        lines.push(format!("addendum {} * ({})^{}", format_rat(&a.coeff), row(a.form.coeffs()), w.d()));
    }
    lines.push(format!("binary part {}", row(w.q.coords())));
    for t in &w.gen.terms {
        lines.push(format!("gen term l = {} m = {} d_i = {}", coords_text(&t.l), coords_text(&t.m), t.d_i));
    }
    lines.push("evincing scheme Z:".into());
    lines.extend(scheme_text(&w.z));
    let report = verify(f, w);
    lines.extend(report.to_string().lines().map(str::to_string));
    let passed = report.passed();
    lines.push(format!("verify: {}", if passed { "all clauses PASS" } else { "FAILED" }));
    (lines, passed)
}

fn generic_report(g: &crate::decomposer::GenericCase) -> Vec<String> {
    let mut lines = vec![
        "GenericCase, Z reduced LGP, unique by LGP criterion".to_string(),
        format!("sbr = {}, deg Z = {}", g.sbr, g.z.degree()),
    ];
    lines.extend(scheme_text(&g.z));
    lines
}

fn sylvester_lines(q: &BinaryForm, policy: &RootPolicy, out: &mut dyn Write) -> Result<(), Failure> {
    let mut w = |s: &str| {
        let _ = writeln!(out, "{s}");
    };
    let s = sylvester_analyze(q).map_err(|e| Failure(ExitCode::ParseError, e.to_string()))?;
    w(&format!("sbr={} sr={}", s.sbr, s.sr));
    let k = s.kernel.iter().map(format_rat).collect::<Vec<_>>().join(" ");
    w(&format!("kernel {k} ({})", if s.square_free { "square-free" } else { "repeated roots" }));
    match generalized_decomposition(q, policy) {
        Ok(g) => {
            for t in &g.terms {
                w(&format!("gen term l = {} m = {} d_i = {}", coords_text(&t.l), coords_text(&t.m), t.d_i));
            }
        }
        Err(e) => w(&format!("generalized decomposition unavailable: {e}")),
    }
    match canonical_scheme(q, policy) {
        Ok(z) => {
            w("canonical scheme:");
            for l in scheme_text(&z) {
                w(&l);
            }
        }
        Err(e) => w(&format!("canonical scheme unavailable: {e}")),
    }
    Ok(())
}

fn run_cmd(cmd: Cmd, policy: RootPolicy, out: &mut dyn Write) -> Res {
    let w = |out: &mut dyn Write, s: &str| {
        let _ = writeln!(out, "{s}");
    };
    match cmd {
        Cmd::Generate { m, d, t, profile, generic, seed, output } => {
            if m < 2 {
                return Err(Failure(ExitCode::ParseError, format!("-m must be at least 2, got {m}")));
            }
            if d < 4 {
                return Err(Failure(ExitCode::ParseError, format!("-d must be at least 4, got {d}")));
            }
            let inst = match generic {
                Some(s) => generate_generic_instance(m, d, s, seed),
                None => generate_instance(&GenerateParams { m, d, t, profile, seed }),
            }
            .map_err(|e| Failure(ExitCode::OutOfRegime, e.to_string()))?;
            let summary = match &inst.ground_truth {
                Some(GroundTruth::Structured(g)) => format!("{m} {d} {} {} {} {}", g.t(), g.sbr, g.sbr, g.sr),
                Some(GroundTruth::Generic { points, .. }) => format!("{m} {d} 0 {0} {0} -", points.len()),
                None => unreachable!("generated instances carry ground truth"),
            };
            let text = serialize(&InstanceFile::new(inst));
            if output.as_deref() == Some(std::path::Path::new("-")) {
                emit(out, &None, &text)?;
            } else {
                let path = output.unwrap_or_else(|| PathBuf::from(format!("instance-m{m}-d{d}-seed{seed}.txt")));
                emit(out, &Some(path), &text)?;
                w(out, &summary);
            }
            Ok(ExitCode::Success)
        }
        Cmd::Decompose { input, output, seed } => {
            let mut file = read_instance(&input)?;
            let f = file.instance.form.clone();
            if f.m() == 1 {
                sylvester_lines(&BinaryForm::from_form(&f), &policy, out)?;
                return Ok(ExitCode::Success);
            }
            let outcome = decompose(&f, &DecomposeOptions { seed, policy }).map_err(decompose_failure)?;
            let (lines, code) = match &outcome {
                Outcome::Decomposed(wd) => {
                    let (l, ok) = decomposition_report(&f, wd);
                    (l, if ok { ExitCode::Success } else { ExitCode::InvariantBreach })
                }
                Outcome::Generic(g) => (generic_report(g), ExitCode::GenericCase),
            };
            file.decomposition = Some(outcome);
            file.report = Some(lines.clone());
            match &output {
                Some(_) => {
                    emit(out, &output, &serialize(&file))?;
                    for l in &lines {
                        w(out, l);
                    }
                }
                None => emit(out, &None, &serialize(&file))?,
            }
            Ok(code)
        }
        Cmd::Verify { input } => {
            let file = read_instance(&input)?;
            let f = &file.instance.form;
            let wd = match (&file.decomposition, &file.instance.ground_truth) {
                (Some(Outcome::Decomposed(x)), _) => x,
                (Some(Outcome::Generic(g)), _) => {
                    for l in generic_report(g) {
                        w(out, &l);
                    }
                    return Ok(ExitCode::GenericCase);
                }
                (None, Some(GroundTruth::Structured(x))) => x,
                _ => return Err(Failure(ExitCode::ParseError, "no decomposition to verify".into())),
            };
            let report = verify(f, wd);
            let _ = write!(out, "{report}");
            Ok(if report.passed() { ExitCode::Success } else { ExitCode::InvariantBreach })
        }
        Cmd::Sylvester { coeffs } => {
            let c = coeffs
                .iter()
                .map(|s| parse_rat(s).ok_or_else(|| Failure(ExitCode::ParseError, format!("bad coefficient '{s}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            if c.len() < 2 {
                return Err(Failure(ExitCode::ParseError, "need a binary form of degree at least 1".into()));
            }
            sylvester_lines(&BinaryForm::new(c, None), &policy, out)?;
            Ok(ExitCode::Success)
        }
        Cmd::Rank { input } => {
            let file = read_instance(&input)?;
            let f = &file.instance.form;
            let ranks = catalecticant_ranks(f);
            w(out, &format!("catalecticant ranks {ranks:?}"));
            let s = border_rank_estimate(f).map_err(|e| Failure(ExitCode::ParseError, e.to_string()))?;
            w(out, &format!("border rank estimate {s}"));
            Ok(ExitCode::Success)
        }
        Cmd::Probe { input, trials, seed } => {
            let file = read_instance(&input)?;
            let f = &file.instance.form;
            let outcome = decompose(f, &DecomposeOptions { seed, policy }).map_err(decompose_failure)?;
            let r = uniqueness_probe(f, &outcome, trials, seed).map_err(|e| Failure(ExitCode::OutOfRegime, e.to_string()))?;
            w(out, &format!(
                "trials {} tested {} alternatives {} redecompose identical {} lgp {}",
                r.trials,
                r.tested,
                r.alternatives.len(),
                r.redecompose_identical,
                r.lgp
            ));
            for z in &r.alternatives {
                w(out, "alternative scheme:");
                for l in scheme_text(z) {
                    w(out, &l);
                }
            }
            Ok(if r.unique() { ExitCode::Success } else { ExitCode::InvariantBreach })
        }
    }
}

/// Runs the command line on `args` (program name first) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { ExitCode::ParseError.code() } else { ExitCode::Success.code() };
        }
    };
    let policy = RootPolicy {
        cluster_tol: cli.tol.cluster_tol,
        residual_tol: cli.tol.residual_tol,
        ..RootPolicy::default()
    };
    match run_cmd(cli.cmd, policy, out) {
        Ok(c) => c.code(),
        Err(Failure(c, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            c.code()
        }
    }
}
