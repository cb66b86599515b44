//! Dense univariate polynomials over `Q`, coefficients in ascending order.
//!
//! The zero polynomial is the empty vector; every other polynomial has a
//! nonzero last coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn constant(c: BigRational) -> Poly {
    let mut p = vec![c];
    trim(&mut p);
    p
}

pub(crate) fn monomial(c: BigRational, degree: usize) -> Poly {
    if c.is_zero() {
        return Vec::new();
    }
    let mut p = vec![BigRational::zero(); degree + 1];
    p[degree] = c;
    p
}

pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Poly = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = Vec::with_capacity(len);
    for k in 0..len {
        let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(k);
        out.push(match y {
            Some(y) => x - y,
            None => x,
        });
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[BigRational]) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn scale(a: &[BigRational], c: &BigRational) -> Poly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                rem[shift + k] -= &c * bk;
            }
        }
        quot[shift] = c;
        // the leading term cancels exactly
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn make_monic(a: &[BigRational]) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(lead) if lead.is_one() => a.to_vec(),
        Some(lead) => {
            let inv = lead.recip();
            scale(a, &inv)
        }
    }
}

/// Monic greatest common divisor.
pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = make_monic(&r);
    }
    make_monic(&x)
}

/// Returns `s` with `s * a == 1 (mod m)`, or `None` when `a` is not a unit.
pub(crate) fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Poly> {
    let (_, a) = divrem(a, m);
    if a.is_empty() {
        return None;
    }
    // extended Euclid tracking only the coefficient of `a`
    let mut r0: Poly = m.to_vec();
    let mut r1: Poly = a;
    let mut s0: Poly = Vec::new();
    let mut s1: Poly = constant(BigRational::one());
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = r0[0].recip();
    let (_, s) = divrem(&scale(&s0, &inv), m);
    Some(s)
}

pub(crate) fn from_ints(coeffs: &[BigInt]) -> Poly {
    let mut p: Poly = coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    trim(&mut p);
    p
}

/// Exact division of integer polynomials; `None` if the division leaves a remainder
/// or produces non-integral coefficients.
pub(crate) fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (q, r) = divrem(&from_ints(a), &from_ints(b));
    if !r.is_empty() {
        return None;
    }
    q.into_iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

pub(crate) fn is_integral(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_integer())
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if !d.is_positive() {
        return None;
    }
    let r = BigRational::new(n.clone(), d.clone());
    // canonical text only: the pair must already be in lowest terms
    (r.numer() == &n && r.denom() == &d).then_some(r)
}
