//! Acceptance run. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use waringlab::binary::{binary_brute_rank, sylvester_analyze, BinaryForm};
use waringlab::catalecticant::independence_check;
use waringlab::decomposer::{
    decompose, generate_generic_instance, generate_instance, mutations, uniqueness_probe, verify, Addendum,
    DecomposeOptions, GenerateError, GenerateParams, GroundTruth, Outcome, WDecomposition,
};
use waringlab::exactlin::rat::to_f64;
use waringlab::exactlin::{int, Rat};
use waringlab::forms::{Form, LinearForm, Line};
use waringlab::schemes::Coords;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// pinned tolerances and budgets
const RESIDUAL_TOL: f64 = 1e-8;
const C1_BUDGET: Duration = Duration::from_secs(5);
const C2_BUDGET: Duration = Duration::from_secs(60);
const C3_PER_INSTANCE: Duration = Duration::from_secs(10);
const C5_PER_INSTANCE: Duration = Duration::from_secs(30);
const C7_BUDGET: Duration = Duration::from_secs(30);

struct Outcome1 {
    ok: bool,
    detail: String,
}

fn result(ok: bool, detail: impl Into<String>) -> Outcome1 {
    Outcome1 { ok, detail: detail.into() }
}

fn decomposed(f: &Form, seed: u64) -> Option<WDecomposition> {
    match decompose(f, &DecomposeOptions { seed, ..DecomposeOptions::default() }) {
        Ok(Outcome::Decomposed(w)) => Some(w),
        _ => None,
    }
}

fn sorted_powers(addenda: &[Addendum], d: u32) -> Vec<Vec<Rat>> {
    let mut v: Vec<Vec<Rat>> = addenda.iter().map(|a| a.power(d).coeffs().to_vec()).collect();
    v.sort();
    v
}

fn criterion_1() -> Outcome1 {
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    for d in 2..=8u32 {
        for k in 1..d {
            cases += 1;
            let mut c = vec![0i64; d as usize + 1];
            c[k as usize] = 1;
            let q = BinaryForm::from_i64(&c);
            let s = sylvester_analyze(&q).expect("nonzero");
            let brute = binary_brute_rank(&q).expect("d <= 8");
            let identity = s.sbr >= s.sr || s.sbr + s.sr == d as usize + 2;
            if s.sr != brute || !identity {
                bad.push(format!("x0^{}x1^{k}: sylvester sr {} brute {brute}", d - k, s.sr));
            }
        }
    }
    let t = start.elapsed();
    result(bad.is_empty() && t < C1_BUDGET, format!("{cases} monomials, {} mismatches {bad:?}, {t:.2?}", bad.len()))
}

fn profiles(max_sum: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() && cur[0] >= 2 {
            out.push(cur.clone());
        }
        for e in (1..=cap.min(left)).rev() {
            cur.push(e);
            rec(left - e, e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_sum, max_sum, &mut Vec::new(), &mut out);
    out
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Regularity index of `t` general points together with a curvilinear
/// scheme of degree `e` on a line, in `P^m`.
fn predicted_regularity(m: usize, s: usize, e: usize) -> usize {
    let mut g = 0;
    while binom(m + g, g) < s {
        g += 1;
    }
    g.max(e - 1)
}

/// Parameter sets for the bound test: every admissible profile, with `t`
/// running past `(d-1)/2`. Sets whose configuration cannot be recovered from
/// catalecticants at all are left out; the rejection rule is about `t`.
fn population() -> Vec<(GenerateParams, bool)> {
    let mut all = Vec::new();
    for m in 2..=3usize {
        for d in 4..=8u32 {
            for p in profiles((d as usize).div_ceil(2)) {
                let e: usize = p.iter().sum();
                if 2 * e >= d as usize + 2 {
                    continue;
                }
                for t in 0..=4usize {
                    let valid = 2 * t < d as usize;
                    if valid && 2 * predicted_regularity(m, t + e, e) > d as usize - 1 {
                        continue;
                    }
                    all.push((GenerateParams { m, d, t, profile: p.clone(), seed: 0 }, valid));
                }
            }
        }
    }
    let step = all.len() as f64 / 100.0;
    (0..100)
        .map(|i| {
            let (mut p, v) = all[(i as f64 * step) as usize].clone();
            p.seed = 1000 + i as u64;
            (p, v)
        })
        .collect()
}

fn criterion_2() -> Outcome1 {
    let start = Instant::now();
    let pop = population();
    let (mut rejected, mut accepted) = (0, 0);
    let mut bad = Vec::new();
    for (p, valid) in &pop {
        let tag = format!("(m={}, d={}, t={}, {:?})", p.m, p.d, p.t, p.profile);
        match (generate_instance(p), valid) {
            (Err(GenerateError::RegimeViolation(msg)), false) => {
                rejected += 1;
                if !msg.contains("t ≤ (d−1)/2") {
                    bad.push(format!("{tag} rejected for another reason: {msg}"));
                }
            }
            (Err(e), true) => bad.push(format!("{tag} wrongly rejected: {e}")),
            (Ok(_), false) => bad.push(format!("{tag} accepted with t > (d-1)/2")),
            (Ok(inst), true) => {
                accepted += 1;
                let d = p.d as usize;
                match decomposed(&inst.form, 1) {
                    Some(w) if w.t() == p.t && w.sbr + w.sr == 2 * p.t + d + 2 && w.sbr + w.sr <= 2 * d + 1 && w.sbr < w.sr => {}
                    Some(w) => bad.push(format!("{tag}: decomposed sbr {} sr {} t {}", w.sbr, w.sr, w.t())),
                    None => bad.push(format!("{tag}: not decomposed")),
                }
            }
        }
    }
    let t = start.elapsed();
    result(
        bad.is_empty() && t < C2_BUDGET,
        format!("{} sets, {accepted} accepted, {rejected} rejected, {t:.2?} {bad:?}", pop.len()),
    )
}

fn criterion_3() -> Outcome1 {
    let sets: [(usize, u32, usize, &[usize]); 5] =
        [(2, 5, 1, &[2]), (2, 7, 2, &[2]), (2, 7, 1, &[2, 1]), (3, 6, 1, &[2]), (3, 7, 2, &[2, 1])];
    let mut bad = Vec::new();
    let mut worst = Duration::ZERO;
    let mut n = 0;
    for (m, d, t, profile) in sets {
        for seed in 0..50u64 {
            n += 1;
            let start = Instant::now();
            let p = GenerateParams { m, d, t, profile: profile.to_vec(), seed };
            let tag = format!("(m={m}, d={d}, t={t}, {profile:?}) seed {seed}");
            let inst = match generate_instance(&p) {
                Ok(i) => i,
                Err(e) => {
                    bad.push(format!("{tag}: {e}"));
                    continue;
                }
            };
            let Some(GroundTruth::Structured(gt)) = &inst.ground_truth else { unreachable!() };
            let Some(w) = decomposed(&inst.form, seed + 17) else {
                bad.push(format!("{tag}: not decomposed"));
                continue;
            };
            let residual_ok = w.gen.is_exact() || {
                let r = w.gen.reconstruct_c();
                let scale = w.q.coords().iter().map(|c| to_f64(c).abs()).fold(1.0, f64::max);
                r.iter()
                    .zip(w.q.coords())
                    .all(|(a, b)| (a - to_f64(b)).norm() <= RESIDUAL_TOL * scale)
            };
            let ok = w.line == gt.line
                && sorted_powers(&w.addenda, d) == sorted_powers(&gt.addenda, d)
                && w.q.to_form() == gt.q.to_form()
                && (w.sbr, w.sr) == (gt.sbr, gt.sr)
                && residual_ok
                && verify(&inst.form, &w).passed();
            worst = worst.max(start.elapsed());
            if !ok {
                bad.push(format!("{tag}: mismatch, failing clauses {:?}", verify(&inst.form, &w).failing()));
            }
        }
    }
    result(
        bad.is_empty() && worst < C3_PER_INSTANCE,
        format!("{n} instances, {} failures, slowest {worst:.2?} {bad:?}", bad.len()),
    )
}

fn criterion_4() -> Outcome1 {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = 0;
    let mut n = 0;
    for m in 2..=3usize {
        for d in 3..=6u32 {
            let mut done = 0;
            while done < 100 {
                let v = |rng: &mut ChaCha8Rng| -> Vec<Rat> { (0..=m).map(|_| int(rng.gen_range(-5..=5))).collect() };
                let (Ok(a), Ok(b)) = (LinearForm::new(v(&mut rng)), LinearForm::new(v(&mut rng))) else {
                    continue;
                };
                let Ok(line) = Line::new(a, b) else { continue };
                let k = rng.gen_range(1..=d as usize);
                let mut e: Vec<Vec<Rat>> = Vec::new();
                while e.len() < k {
                    let p = v(&mut rng);
                    if line.contains(&p)
                        || e.iter().any(|q| Coords::Exact(q.clone()).same_point(&Coords::Exact(p.clone()), 0.0))
                    {
                        continue;
                    }
                    e.push(p);
                }
                done += 1;
                n += 1;
                if !independence_check(&line, &e, d).unwrap_or(false) {
                    failures += 1;
                }
            }
        }
    }
    result(failures == 0, format!("{n} configurations, {failures} dependent"))
}

fn criterion_5() -> Outcome1 {
    let mut bad = Vec::new();
    let mut worst = Duration::ZERO;
    for i in 0..25u64 {
        let d = 5 + (i % 3) as u32;
        let s = 2 + (i as usize / 3) % ((d as usize).div_ceil(2) - 1);
        let start = Instant::now();
        let inst = match generate_generic_instance(2, d, s, 500 + i) {
            Ok(x) => x,
            Err(e) => {
                bad.push(format!("d={d} s={s}: {e}"));
                continue;
            }
        };
        let Some(GroundTruth::Generic { z: gz, .. }) = &inst.ground_truth else { unreachable!() };
        let o = match decompose(&inst.form, &DecomposeOptions::default()) {
            Ok(o @ Outcome::Generic(_)) => o,
            other => {
                bad.push(format!("d={d} s={s}: {other:?}"));
                continue;
            }
        };
        let Outcome::Generic(g) = &o else { unreachable!() };
        let report = match uniqueness_probe(&inst.form, &o, 500, 900 + i) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("d={d} s={s}: {e}"));
                continue;
            }
        };
        worst = worst.max(start.elapsed());
        if !(g.z.same_as(gz, 0.0) && g.lgp && report.unique()) {
            bad.push(format!(
                "d={d} s={s}: {} alternatives, redecompose identical {}",
                report.alternatives.len(),
                report.redecompose_identical
            ));
        }
    }
    result(bad.is_empty() && worst < C5_PER_INSTANCE, format!("25 instances, slowest {worst:.2?} {bad:?}"))
}

fn criterion_6() -> Outcome1 {
    let f = Form::monomial(&[4, 1, 0]).add(&Form::monomial(&[0, 0, 5]));
    let Some(w) = decomposed(&f, 1) else { return result(false, "not decomposed") };
    let line = Line::new(LinearForm::from_i64(&[1, 0, 0]), LinearForm::from_i64(&[0, 1, 0])).expect("independent");
    let gen_ok = w.gen.terms.len() == 1
        && w.gen.terms[0].l == Coords::from_i64(&[1, 0])
        && w.gen.terms[0].m == Coords::from_i64(&[0, 1])
        && w.gen.terms[0].d_i == 1;
    let report = verify(&f, &w);
    let ok = w.line == line
        && w.addenda == vec![Addendum { form: LinearForm::from_i64(&[0, 0, 1]), coeff: int(1) }]
        && w.q.to_form() == Form::monomial(&[4, 1, 0])
        && (w.sbr, w.sr) == (3, 6)
        && gen_ok
        && report.passed();
    result(ok, format!("t={} sbr={} sr={} clauses {:?}", w.t(), w.sbr, w.sr, report.failing()))
}

fn criterion_7() -> Outcome1 {
    let start = Instant::now();
    let sets: [(usize, u32, usize, &[usize]); 4] = [(2, 5, 1, &[2]), (2, 7, 1, &[2, 1]), (3, 6, 1, &[2]), (2, 7, 2, &[2])];
    let mut bad = Vec::new();
    let mut checked = 0;
    for i in 0..20u64 {
        let (m, d, t, profile) = sets[i as usize % sets.len()];
        let Ok(inst) = generate_instance(&GenerateParams { m, d, t, profile: profile.to_vec(), seed: 70 + i }) else {
            bad.push(format!("instance {i} not generated"));
            continue;
        };
        let Some(w) = decomposed(&inst.form, 1) else {
            bad.push(format!("instance {i} not decomposed"));
            continue;
        };
        for (name, x) in mutations(&w) {
            checked += 1;
            if verify(&inst.form, &x).passed() {
                bad.push(format!("instance {i}: '{name}' undetected"));
            }
        }
    }
    let t = start.elapsed();
    result(bad.is_empty() && t < C7_BUDGET, format!("{checked} mutants, {t:.2?} {bad:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome1); 7] = [
        ("sylvester consistency on binary monomials", criterion_1),
        ("regime bound sbr + sr = 2t + d + 2 <= 2d + 1", criterion_2),
        ("round-trip recovery of generated instances", criterion_3),
        ("independence of nu_d(E) from the rational normal curve", criterion_4),
        ("uniqueness of reduced schemes in linearly general position", criterion_5),
        ("worked example x0^4 x1 + x2^5", criterion_6),
        ("mutation robustness of verify", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let r = run();
        println!("criterion {}: {} {name}: {}", i + 1, if r.ok { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.ok);
    }
    println!("acceptance: {} of 7 criteria pass", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
