use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Addendum, GroundTruth, Instance, InstanceKind, WDecomposition};
use crate::binary::{
    binary_roots, canonical_scheme, generalized_decomposition, rank_scheme, sylvester_analyze, term_columns, BinaryForm,
};
use crate::catalecticant::{border_rank_estimate, independence_check};
use crate::exactlin::{int, Rat, RootPolicy};
use crate::forms::{power_of_linear, Form, LinearForm, Line};
use crate::schemes::{lgp_check, regularity_index, Coords, PointMult, Scheme0Dim};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("regime violation: {0}")]
    RegimeViolation(String),
}

fn violation(msg: impl Into<String>) -> GenerateError {
    GenerateError::RegimeViolation(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerateParams {
    pub m: usize,
    pub d: u32,
    pub t: usize,
    /// Root multiplicities of the minimal apolar form of `Q`.
    pub profile: Vec<usize>,
    pub seed: u64,
}

const ATTEMPTS: usize = 200;
const RANGE: i64 = 3;

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-RANGE..=RANGE)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(int).collect();
        }
    }
}

fn check_common(m: usize, d: u32) -> Result<(), GenerateError> {
    if m < 2 {
        return Err(violation(format!("m >= 2 required, got m = {m}")));
    }
    if d < 4 {
        return Err(violation(format!("d >= 4 required, got d = {d}")));
    }
    Ok(())
}

/// Draws a line, a binary form on it with the requested root profile and
/// `t` points off it, and returns `F = Q + sum M_i^d` with full ground truth.
/// Draws are repeated until the evincing scheme is regular enough for
/// catalecticant recovery.
pub fn generate_instance(p: &GenerateParams) -> Result<Instance, GenerateError> {
    let (m, d, t) = (p.m, p.d, p.t);
    check_common(m, d)?;
    if 2 * t > d as usize - 1 {
        return Err(violation(format!("t ≤ (d−1)/2 fails: t = {t}, d = {d}")));
    }
    if p.profile.is_empty() || p.profile.contains(&0) || !p.profile.iter().any(|&e| e >= 2) {
        return Err(violation("profile needs positive entries with some e_i >= 2"));
    }
    let e_sum: usize = p.profile.iter().sum();
    if 2 * e_sum >= d as usize + 2 {
        return Err(violation(format!("sbr(Q) < (d+2)/2 fails: sum of profile = {e_sum}, d = {d}")));
    }
    let s = t + e_sum;
    let policy = RootPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut profile = p.profile.clone();
    profile.sort_unstable_by(|a, b| b.cmp(a));

    for _ in 0..ATTEMPTS {
        let Ok(line) = Line::new(
            LinearForm::new(random_vec(&mut rng, m + 1)).expect("nonzero"),
            LinearForm::new(random_vec(&mut rng, m + 1)).expect("nonzero"),
        ) else {
            continue;
        };
        let line = line.canonical_line();

        // Q = sum l_i^(d - e_i + 1) m_i, roots distinct, m_i prime to l_i
        let mut roots: Vec<(Rat, Rat)> = Vec::new();
        let mut coords = vec![Rat::from_integer(0.into()); d as usize + 1];
        let mut ok = true;
        for &e in &profile {
            let (u, v) = {
                let uv = random_vec(&mut rng, 2);
                (uv[0].clone(), uv[1].clone())
            };
            if roots.iter().any(|(a, b)| a * &v == b * &u) {
                ok = false;
                break;
            }
            let mi = random_vec(&mut rng, e);
            // l = u L1 + v L2 vanishes at (L1, L2) = (-v, u)
            let at: Rat = mi
                .iter()
                .enumerate()
                .map(|(j, c)| c * num_traits::pow(-v.clone(), e - 1 - j) * num_traits::pow(u.clone(), j))
                .sum();
            if at == Rat::from_integer(0.into()) {
                ok = false;
                break;
            }
            for (col, mu) in term_columns(d, e - 1, &u, &v).iter().zip(&mi) {
                for (a, x) in coords.iter_mut().zip(col) {
                    *a += mu * x;
                }
            }
            roots.push((u, v));
        }
        if !ok {
            continue;
        }
        let q = BinaryForm::new(coords, Some(line.clone()));
        let Ok(sq) = sylvester_analyze(&q) else { continue };
        if sq.sbr != e_sum || sq.square_free {
            continue;
        }
        let mut got: Vec<usize> = binary_roots(&sq.kernel, &policy).iter().map(|r| r.1).collect();
        got.sort_unstable_by(|a, b| b.cmp(a));
        if got != profile {
            continue;
        }

        let mut points: Vec<LinearForm> = Vec::new();
        for _ in 0..t {
            let v = random_vec(&mut rng, m + 1);
            if line.contains(&v) {
                ok = false;
                break;
            }
            let l = LinearForm::new(v).expect("nonzero");
            if points.iter().any(|o| o.canonical() == l.canonical()) {
                ok = false;
                break;
            }
            points.push(l);
        }
        if !ok {
            continue;
        }
        let pts: Vec<Vec<Rat>> = points.iter().map(|l| l.coeffs().to_vec()).collect();
        if t > 0 && !independence_check(&line, &pts, d).unwrap_or(false) {
            continue;
        }
        let Ok(z1) = canonical_scheme(&q, &policy) else { continue };
        let mut parts = z1.parts.clone();
        parts.extend(pts.iter().map(|v| PointMult::simple(Coords::Exact(v.clone()))));
        let z = Scheme0Dim::new(m, parts);
        let Ok(ri) = regularity_index(&z) else { continue };
        if 2 * ri > d - 1 {
            continue;
        }
        if e_sum <= 2 && !lgp_check(&z).unwrap_or(false) {
            continue;
        }
        let form = points.iter().fold(q.to_form(), |acc, l| acc.add(&power_of_linear(l, d)));
        if border_rank_estimate(&form).ok() != Some(s) {
            continue;
        }
        let Ok(gen) = generalized_decomposition(&q, &policy) else { continue };
        let Ok(s1) = rank_scheme(&q, &policy) else { continue };
        let w = WDecomposition {
            line,
            addenda: points.into_iter().map(|form| Addendum { form, coeff: int(1) }).collect(),
            q,
            gen,
            sbr: s,
            sr: t + sq.sr,
            z,
            s1: s1.scheme,
        };
        return Ok(Instance {
            form,
            ground_truth: Some(GroundTruth::Structured(w)),
            seed: p.seed,
            kind: InstanceKind::Structured { t, profile: p.profile.clone() },
        });
    }
    Err(violation(format!(
        "no configuration with catalecticant regularity 2 reg(Z) <= d - 1 found in {ATTEMPTS} draws"
    )))
}

/// `F = sum_{i<s} M_i^d` for `s` random points in linearly general
/// position, regular enough to be recovered from catalecticants.
pub fn generate_generic_instance(m: usize, d: u32, s: usize, seed: u64) -> Result<Instance, GenerateError> {
    check_common(m, d)?;
    if s == 0 {
        return Err(violation("s >= 1 required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let points: Vec<LinearForm> =
            (0..s).map(|_| LinearForm::new(random_vec(&mut rng, m + 1)).expect("nonzero")).collect();
        let z = Scheme0Dim::new(
            m,
            points.iter().map(|l| PointMult::simple(Coords::Exact(l.coeffs().to_vec()))).collect(),
        );
        let distinct = (0..s).all(|i| (0..i).all(|j| !z.parts[i].point.same_point(&z.parts[j].point, 0.0)));
        if !distinct || !lgp_check(&z).unwrap_or(false) {
            continue;
        }
        let Ok(ri) = regularity_index(&z) else { continue };
        if 2 * ri > d - 1 {
            continue;
        }
        let form = points.iter().fold(Form::zero(m, d), |acc, l| acc.add(&power_of_linear(l, d)));
        if border_rank_estimate(&form).ok() != Some(s) {
            continue;
        }
        return Ok(Instance {
            form,
            ground_truth: Some(GroundTruth::Generic { points, z }),
            seed,
            kind: InstanceKind::Generic { s },
        });
    }
    Err(violation(format!("no regular configuration of {s} points found in {ATTEMPTS} draws")))
}
