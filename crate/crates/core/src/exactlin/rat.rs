//! Rational scalars and small combinatorial helpers.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar. `BigRational` keeps the fraction reduced with a
/// positive denominator, and zero is stored as `0/1`.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `p/q` token, always with an explicit denominator.
pub fn format_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Bit size used to pick cheap pivots during elimination.
pub(crate) fn weight(x: &Rat) -> u64 {
    x.numer().bits() + x.denom().bits()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_usize(n: usize, k: usize) -> usize {
    binomial(n as u32, k as u32).to_usize().expect("binomial overflow")
}

/// `d! / (a_0! ... a_m!)` for an exponent vector summing to `d`.
pub fn multinomial(exps: &[u32]) -> BigInt {
    let d: u32 = exps.iter().sum();
    let mut acc = factorial(d);
    for &e in exps {
        acc /= factorial(e);
    }
    acc
}

/// Exact `n`-th root of a rational if one exists. Even roots return the
/// non-negative branch; negative inputs have no even root.
pub fn nth_root_exact(x: &Rat, n: u32) -> Option<Rat> {
    if n == 0 {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    if x.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let num = x.numer().abs();
    let den = x.denom().clone();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if rn.pow(n) != num || rd.pow(n) != den {
        return None;
    }
    let r = Rat::new(rn, rd);
    Some(if x.numer().sign() == Sign::Minus { -r } else { r })
}

/// Best rational approximations of `x` from its continued fraction,
/// denominators bounded by `max_den`.
pub fn convergents(x: f64, max_den: i64) -> Vec<Rat> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = match BigInt::from_f64_exact(a) {
            Some(v) => v,
            None => break,
        };
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(Rat::new(h2.clone(), k2.clone()));
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

trait FromF64Exact: Sized {
    fn from_f64_exact(x: f64) -> Option<Self>;
}

impl FromF64Exact for BigInt {
    fn from_f64_exact(x: f64) -> Option<Self> {
        if x.abs() > 1e15 {
            return None;
        }
        Some(BigInt::from(x as i64))
    }
}
