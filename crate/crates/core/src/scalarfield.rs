//! Exact coefficient arithmetic.
//!
//! Two coefficient fields are supported:
//!
//! * [`FieldMode::RootOfUnity`]: the cyclotomic field `Q(q)` where `q = exp(-i pi / h)` is a
//!   primitive `2h`-th root of unity. Elements are polynomials in `q` of degree below
//!   `phi(2h)`, reduced modulo the cyclotomic polynomial `Phi_{2h}`. Reducing modulo
//!   `x^h + 1` instead would introduce zero divisors whenever `2h` is not a prime power.
//! * [`FieldMode::GenericQ`]: the rational function field `Q(q)` with `q` transcendental,
//!   used to cross-check identities that do not depend on `q` being a root of unity.
//!
//! No floating point is involved anywhere; equality is coefficient-wise equality of the
//! canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{self, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldMode {
    RootOfUnity,
    GenericQ,
}

#[derive(Debug)]
pub struct FieldSpec {
    mode: FieldMode,
    h: Option<u32>,
    /// `Phi_{2h}` with integer coefficients, ascending; empty in generic mode.
    modulus: Vec<BigInt>,
    modulus_q: Poly,
    /// `q^e mod Phi_{2h}` for `e` in `0..2h`.
    q_powers: Vec<Poly>,
}

/// Shared handle to a [`FieldSpec`]. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.mode == other.0.mode && self.0.h == other.0.h)
    }
}

impl Eq for Field {}

/// Cyclotomic polynomial `Phi_m`, by exact division of `x^m - 1` by `Phi_e` for every
/// proper divisor `e` of `m`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    fn rec(m: u32, memo: &mut BTreeMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        for e in (1..m).filter(|e| m % e == 0) {
            let phi_e = rec(e, memo);
            num = poly::int_exact_div(&num, &phi_e).expect("cyclotomic factor divides x^m - 1");
        }
        memo.insert(m, num.clone());
        num
    }
    rec(m, &mut BTreeMap::new())
}

pub fn euler_totient(m: u32) -> u32 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u32
}

/// Builds the coefficient field. `h` is required (and must be at least 3) in
/// root-of-unity mode and ignored in generic mode.
pub fn make_field(mode: FieldMode, h: Option<u32>) -> Result<Field> {
    match mode {
        FieldMode::GenericQ => Ok(Field::generic()),
        FieldMode::RootOfUnity => {
            let h = h.ok_or_else(|| Error::InvalidParameter("root-of-unity mode needs h".into()))?;
            Field::root_of_unity(h)
        }
    }
}

impl Field {
    pub fn root_of_unity(h: u32) -> Result<Field> {
        if h < 3 {
            return Err(Error::InvalidParameter(format!("h = {h} < 3")));
        }
        let modulus = cyclotomic_polynomial(2 * h);
        let modulus_q = poly::from_ints(&modulus);
        let degree = modulus.len() - 1;
        let mut q_powers = Vec::with_capacity(2 * h as usize);
        let mut cur = poly::constant(BigRational::one());
        for _ in 0..2 * h {
            q_powers.push(cur.clone());
            let shifted = {
                let mut s = vec![BigRational::zero()];
                s.extend(cur.iter().cloned());
                poly::trim(&mut s);
                s
            };
            cur = if shifted.len() > degree {
                poly::divrem(&shifted, &modulus_q).1
            } else {
                shifted
            };
        }
        Ok(Field(Arc::new(FieldSpec {
            mode: FieldMode::RootOfUnity,
            h: Some(h),
            modulus,
            modulus_q,
            q_powers,
        })))
    }

    pub fn generic() -> Field {
        Field(Arc::new(FieldSpec {
            mode: FieldMode::GenericQ,
            h: None,
            modulus: Vec::new(),
            modulus_q: Vec::new(),
            q_powers: Vec::new(),
        }))
    }

    pub fn mode(&self) -> FieldMode {
        self.0.mode
    }

    pub fn h(&self) -> Option<u32> {
        self.0.h
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.0.mode == FieldMode::RootOfUnity
    }

    /// `Phi_{2h}` coefficients (ascending). Empty in generic mode.
    pub fn modulus(&self) -> &[BigInt] {
        &self.0.modulus
    }

    /// Extension degree `phi(2h)`; `None` in generic mode.
    pub fn degree(&self) -> Option<usize> {
        self.is_root_of_unity().then(|| self.0.modulus.len() - 1)
    }

    /// Short label used in cache keys and reports: `h<value>` or `generic`.
    pub fn label(&self) -> String {
        match self.0.h {
            Some(h) => format!("h{h}"),
            None => "generic".to_string(),
        }
    }

    pub fn zero(&self) -> Scalar {
        let value = match self.0.mode {
            FieldMode::RootOfUnity => Value::Cyclo(Vec::new()),
            FieldMode::GenericQ => Value::Ratio {
                num: Vec::new(),
                den: poly::constant(BigRational::one()),
            },
        };
        Scalar { field: self.clone(), value }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(&self, c: BigRational) -> Scalar {
        let value = match self.0.mode {
            FieldMode::RootOfUnity => Value::Cyclo(poly::constant(c)),
            FieldMode::GenericQ => Value::Ratio {
                num: poly::constant(c),
                den: poly::constant(BigRational::one()),
            },
        };
        Scalar { field: self.clone(), value }
    }

    /// Builds `sum_e c_e q^e` from integer exponents and coefficients.
    pub fn from_laurent(&self, terms: &BTreeMap<i64, BigInt>) -> Scalar {
        match self.0.mode {
            FieldMode::RootOfUnity => {
                let period = 2 * self.0.h.unwrap() as i64;
                let mut acc: Poly = Vec::new();
                let mut folded: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (e, c) in terms {
                    *folded.entry(e.rem_euclid(period) as usize).or_default() += c;
                }
                for (e, c) in folded {
                    if !c.is_zero() {
                        let term = poly::scale(&self.0.q_powers[e], &BigRational::from_integer(c));
                        acc = poly::add(&acc, &term);
                    }
                }
                Scalar { field: self.clone(), value: Value::Cyclo(acc) }
            }
            FieldMode::GenericQ => {
                let nonzero: Vec<(&i64, &BigInt)> =
                    terms.iter().filter(|(_, c)| !c.is_zero()).collect();
                let Some(&(&low, _)) = nonzero.first() else {
                    return self.zero();
                };
                let shift = low.min(0);
                let top = nonzero.last().map(|(e, _)| **e).unwrap();
                let mut num = vec![BigRational::zero(); (top - shift) as usize + 1];
                for (e, c) in nonzero {
                    num[(e - shift) as usize] = BigRational::from_integer(c.clone());
                }
                poly::trim(&mut num);
                let den = poly::monomial(BigRational::one(), (-shift) as usize);
                Scalar::ratio(self.clone(), num, den)
            }
        }
    }

    /// `q^m`. In root-of-unity mode uses `q^{2h} = 1`; in generic mode negative powers
    /// are `1 / q^{|m|}`.
    pub fn q_power(&self, m: i64) -> Scalar {
        match self.0.mode {
            FieldMode::RootOfUnity => {
                let period = 2 * self.0.h.unwrap() as i64;
                let e = m.rem_euclid(period) as usize;
                Scalar { field: self.clone(), value: Value::Cyclo(self.0.q_powers[e].clone()) }
            }
            FieldMode::GenericQ => {
                let one = BigRational::one();
                let (num, den) = if m >= 0 {
                    (poly::monomial(one.clone(), m as usize), poly::constant(one))
                } else {
                    (poly::constant(one.clone()), poly::monomial(one, (-m) as usize))
                };
                Scalar { field: self.clone(), value: Value::Ratio { num, den } }
            }
        }
    }

    pub fn q(&self) -> Scalar {
        self.q_power(1)
    }

    /// The q-integer `[m] = (q^m - q^-m) / (q - q^-1)`, evaluated as the power sum
    /// `sign(m) * sum_{j=0}^{|m|-1} q^{|m|-1-2j}` (no division).
    pub fn q_int(&self, m: i64) -> Scalar {
        let a = m.abs();
        let sign = if m < 0 { -1 } else { 1 };
        let mut terms = BTreeMap::new();
        for j in 0..a {
            *terms.entry(a - 1 - 2 * j).or_insert_with(BigInt::zero) += BigInt::from(sign);
        }
        self.from_laurent(&terms)
    }

    /// `[m]! = [1][2]...[m]`.
    pub fn q_factorial(&self, m: u32) -> Scalar {
        (1..=m as i64).fold(self.one(), |acc, j| &acc * &self.q_int(j))
    }

    pub fn decode(&self, text: &ScalarText) -> Result<Scalar> {
        let parse_all = |xs: &[String]| -> Result<Poly> {
            xs.iter()
                .map(|s| {
                    poly::parse_rational(s)
                        .ok_or_else(|| Error::Decode(format!("bad rational {s:?}")))
                })
                .collect()
        };
        match (self.0.mode, text) {
            (FieldMode::RootOfUnity, ScalarText::Cyclotomic(cs)) => {
                let d = self.degree().unwrap();
                if cs.len() != d {
                    return Err(Error::Decode(format!("expected {d} coefficients, got {}", cs.len())));
                }
                let mut p = parse_all(cs)?;
                poly::trim(&mut p);
                Ok(Scalar { field: self.clone(), value: Value::Cyclo(p) })
            }
            (FieldMode::GenericQ, ScalarText::Rational(n, d)) => {
                let num = parse_all(n)?;
                let den = parse_all(d)?;
                if num.last().is_some_and(|c| c.is_zero()) || den.last().is_some_and(|c| c.is_zero()) {
                    return Err(Error::Decode("trailing zero coefficient".into()));
                }
                if den.is_empty() {
                    return Err(Error::Decode("zero denominator".into()));
                }
                let s = Scalar::ratio(self.clone(), num.clone(), den.clone());
                match &s.value {
                    Value::Ratio { num: n2, den: d2 } if *n2 == num && *d2 == den => Ok(s),
                    _ => Err(Error::Decode("rational function not in canonical form".into())),
                }
            }
            _ => Err(Error::Decode("encoding does not match field mode".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    /// Polynomial in `q` of degree `< phi(2h)`, trimmed.
    Cyclo(Poly),
    /// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0 / 1`.
    Ratio { num: Poly, den: Poly },
}

/// Exact element of the coefficient field.
#[derive(Clone)]
pub struct Scalar {
    field: Field,
    value: Value,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.value.hash(state)
    }
}

/// Canonical text encoding: `"num/den"` strings, ascending powers of `q`.
/// Root-of-unity scalars carry exactly `phi(2h)` entries; generic scalars carry the
/// numerator and (monic) denominator coefficient arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Cyclotomic(Vec<String>),
    Rational(Vec<String>, Vec<String>),
}

impl Scalar {
    fn ratio(field: Field, num: Poly, den: Poly) -> Scalar {
        debug_assert!(!den.is_empty());
        if num.is_empty() {
            return field.zero();
        }
        let g = poly::gcd(&num, &den);
        let (mut num, mut den) = if g.len() > 1 {
            (poly::divrem(&num, &g).0, poly::divrem(&den, &g).0)
        } else {
            (num, den)
        };
        let lead = den.last().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = poly::scale(&num, &inv);
            den = poly::scale(&den, &inv);
        }
        Scalar { field, value: Value::Ratio { num, den } }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Cyclo(p) => p.is_empty(),
            Value::Ratio { num, .. } => num.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Cyclo(p) => p.len() == 1 && p[0].is_one(),
            Value::Ratio { num, den } => den.len() == 1 && num.len() == 1 && num[0].is_one(),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Cyclo(a), Value::Cyclo(b)) => Value::Cyclo(poly::add(a, b)),
            (Value::Ratio { num: a, den: b }, Value::Ratio { num: c, den: d }) => {
                if a.is_empty() {
                    return Ok(other.clone());
                }
                if c.is_empty() {
                    return Ok(self.clone());
                }
                let (num, den) = if b == d {
                    (poly::add(a, c), b.clone())
                } else {
                    (poly::add(&poly::mul(a, d), &poly::mul(c, b)), poly::mul(b, d))
                };
                return Ok(Scalar::ratio(self.field.clone(), num, den));
            }
            _ => return Err(Error::MixedFields),
        };
        Ok(Scalar { field: self.field.clone(), value })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        match (&self.value, &other.value) {
            (Value::Cyclo(a), Value::Cyclo(b)) => {
                let prod = poly::mul(a, b);
                let reduced = if prod.len() > self.field.degree().unwrap() {
                    poly::divrem(&prod, &self.field.0.modulus_q).1
                } else {
                    prod
                };
                Ok(Scalar { field: self.field.clone(), value: Value::Cyclo(reduced) })
            }
            (Value::Ratio { num: a, den: b }, Value::Ratio { num: c, den: d }) => {
                // cross-cancel before multiplying to keep degrees small
                let g1 = poly::gcd(a, d);
                let g2 = poly::gcd(c, b);
                let (a, d) = (poly::divrem(a, &g1).0, poly::divrem(d, &g1).0);
                let (c, b) = (poly::divrem(c, &g2).0, poly::divrem(b, &g2).0);
                let num = poly::mul(&a, &c);
                let den = poly::mul(&b, &d);
                let lead = den.last().unwrap().recip();
                Ok(Scalar {
                    field: self.field.clone(),
                    value: Value::Ratio { num: poly::scale(&num, &lead), den: poly::scale(&den, &lead) },
                })
            }
            _ => Err(Error::MixedFields),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.value {
            Value::Cyclo(a) => {
                let inv = poly::inverse_mod(a, &self.field.0.modulus_q)
                    .expect("nonzero element of a field is a unit");
                Ok(Scalar { field: self.field.clone(), value: Value::Cyclo(inv) })
            }
            Value::Ratio { num, den } => Ok(Scalar::ratio(self.field.clone(), den.clone(), num.clone())),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Rational value if the scalar lies in the prime field `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Cyclo(p) => match p.len() {
                0 => Some(BigRational::zero()),
                1 => Some(p[0].clone()),
                _ => None,
            },
            Value::Ratio { num, den } => (den.len() == 1 && num.len() <= 1)
                .then(|| num.first().cloned().unwrap_or_else(BigRational::zero)),
        }
    }

    /// Coefficients in the basis `1, q, ..., q^{d-1}` (root-of-unity mode only).
    pub fn coefficients(&self) -> Option<Vec<BigRational>> {
        match &self.value {
            Value::Cyclo(p) => {
                let d = self.field.degree().unwrap();
                let mut out = p.clone();
                out.resize(d, BigRational::zero());
                Some(out)
            }
            Value::Ratio { .. } => None,
        }
    }

    pub fn encode(&self) -> ScalarText {
        match &self.value {
            Value::Cyclo(_) => ScalarText::Cyclotomic(
                self.coefficients().unwrap().iter().map(poly::fmt_rational).collect(),
            ),
            Value::Ratio { num, den } => ScalarText::Rational(
                num.iter().map(poly::fmt_rational).collect(),
                den.iter().map(poly::fmt_rational).collect(),
            ),
        }
    }

    /// True if every coefficient is an integer (numerator side in generic mode).
    pub fn is_integral(&self) -> bool {
        match &self.value {
            Value::Cyclo(p) => poly::is_integral(p),
            Value::Ratio { num, den } => den.len() == 1 && poly::is_integral(num),
        }
    }
}

fn fmt_poly(p: &[BigRational], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (e, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match (e, a.is_one()) {
            (0, _) => write!(f, "{a}")?,
            (_, true) => {}
            (_, false) => write!(f, "{a}*")?,
        }
        match e {
            0 => {}
            1 => write!(f, "q")?,
            _ => write!(f, "q^{e}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Cyclo(p) => fmt_poly(p, f),
            Value::Ratio { num, den } => {
                if den.len() == 1 {
                    fmt_poly(num, f)
                } else {
                    write!(f, "(")?;
                    fmt_poly(num, f)?;
                    write!(f, ")/(")?;
                    fmt_poly(den, f)?;
                    write!(f, ")")
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar[{}]({})", self.field.label(), self)
    }
}

// Operator forms panic on mixed fields; use the `checked_*` methods to get an error.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar addition across fields")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar subtraction across fields")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar multiplication across fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let value = match &self.value {
            Value::Cyclo(p) => Value::Cyclo(poly::neg(p)),
            Value::Ratio { num, den } => Value::Ratio { num: poly::neg(num), den: den.clone() },
        };
        Scalar { field: self.field.clone(), value }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Independent route to `Phi_m`: product of `(x^d - 1)^{mu(m/d)}` over divisors,
    /// computed as the numerator / denominator split.
    fn phi_by_mobius(m: u32) -> Vec<BigInt> {
        fn mobius(n: u32) -> i32 {
            let mut n = n;
            let mut k = 0;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    k += 1;
                }
                p += 1;
            }
            if n > 1 {
                k += 1;
            }
            if k % 2 == 0 { 1 } else { -1 }
        }
        let mut num = ints(&[1]);
        let mut den = ints(&[1]);
        for d in (1..=m).filter(|d| m % d == 0) {
            let mut f = vec![BigInt::zero(); d as usize + 1];
            f[0] = BigInt::from(-1);
            f[d as usize] = BigInt::one();
            let fq = poly::from_ints(&f);
            match mobius(m / d) {
                1 => num = poly::mul(&poly::from_ints(&num), &fq).iter().map(|c| c.to_integer()).collect(),
                -1 => den = poly::mul(&poly::from_ints(&den), &fq).iter().map(|c| c.to_integer()).collect(),
                _ => {}
            }
        }
        poly::int_exact_div(&num, &den).unwrap()
    }

    #[test]
    fn phi_8_and_phi_6() {
        let f = Field::root_of_unity(4).unwrap();
        assert_eq!(f.modulus(), &ints(&[1, 0, 0, 0, 1])[..]);
        assert_eq!(f.degree(), Some(4));
        let f = Field::root_of_unity(3).unwrap();
        assert_eq!(f.modulus(), &ints(&[1, -1, 1])[..]);
        assert_eq!(f.degree(), Some(2));
    }

    #[test]
    fn cyclotomic_matches_mobius_product() {
        for h in 3..=15 {
            assert_eq!(cyclotomic_polynomial(2 * h), phi_by_mobius(2 * h), "h = {h}");
            assert_eq!(cyclotomic_polynomial(2 * h).len() - 1, euler_totient(2 * h) as usize);
        }
    }

    #[test]
    fn phi_divides_x_h_plus_one() {
        for h in 3..=12u32 {
            let phi = cyclotomic_polynomial(2 * h);
            let mut xh1 = vec![BigInt::zero(); h as usize + 1];
            xh1[0] = BigInt::one();
            xh1[h as usize] = BigInt::one();
            assert!(poly::int_exact_div(&xh1, &phi).is_some(), "h = {h}");
            assert_eq!(phi.last(), Some(&BigInt::one()));
        }
    }

    #[test]
    fn small_h_rejected() {
        assert!(matches!(Field::root_of_unity(2), Err(Error::InvalidParameter(_))));
        assert!(make_field(FieldMode::RootOfUnity, None).is_err());
        assert_eq!(make_field(FieldMode::GenericQ, None).unwrap().mode(), FieldMode::GenericQ);
    }

    #[test]
    fn q_powers_at_h() {
        for h in 3..=8 {
            let f = Field::root_of_unity(h).unwrap();
            assert_eq!(f.q_power(h as i64), f.from_int(-1));
            assert_eq!(f.q_power(2 * h as i64), f.one());
        }
    }

    #[test]
    fn q_inverse_h4() {
        let f = Field::root_of_unity(4).unwrap();
        let qinv = f.q_power(-1);
        let expected = ["0/1", "0/1", "0/1", "-1/1"].map(String::from).to_vec();
        assert_eq!(qinv.encode(), ScalarText::Cyclotomic(expected));
        assert_eq!(f.q().inv().unwrap(), qinv);
    }

    #[test]
    fn q_int_values_h4() {
        let f = Field::root_of_unity(4).unwrap();
        assert!(f.q_int(0).is_zero());
        assert!(f.q_int(1).is_one());
        assert!(f.q_int(4).is_zero());
        // [2] = q + q^-1 = q - q^3 mod x^4 + 1
        let two = &f.q() - &f.q_power(3);
        assert_eq!(f.q_int(2), two);
        assert_eq!(f.q_factorial(2), two);
        assert!(f.q_factorial(0).is_one());
        assert!(f.q_factorial(1).is_one());
        assert!(f.q_factorial(4).is_zero());
        assert_eq!(f.q_int(-1), f.from_int(-1));
    }

    #[test]
    fn generic_q_ints_never_vanish() {
        let f = Field::generic();
        for m in 1..20 {
            assert!(!f.q_int(m).is_zero());
            assert_eq!(f.q_int(-m), -f.q_int(m));
        }
        // (q - q^-1)[m] = q^m - q^-m
        let lhs = &(&f.q() - &f.q_power(-1)) * &f.q_int(5);
        assert_eq!(lhs, &f.q_power(5) - &f.q_power(-5));
    }

    #[test]
    fn phi_vanishes_at_q() {
        for h in 3..=9 {
            let f = Field::root_of_unity(h).unwrap();
            let mut acc = f.zero();
            for (e, c) in f.modulus().iter().enumerate() {
                let c = f.from_rational(BigRational::from_integer(c.clone()));
                acc += &(&c * &f.q_power(e as i64));
            }
            assert!(acc.is_zero(), "h = {h}");
        }
    }

    #[test]
    fn division_by_zero_and_mixed_fields() {
        let f = Field::root_of_unity(5).unwrap();
        let g = Field::root_of_unity(6).unwrap();
        assert!(matches!(f.zero().inv(), Err(Error::DivisionByZero)));
        assert!(matches!(f.one().checked_div(&f.q_int(5)), Err(Error::DivisionByZero)));
        assert!(matches!(f.one().checked_add(&g.one()), Err(Error::MixedFields)));
        assert!(matches!(f.one().checked_mul(&Field::generic().one()), Err(Error::MixedFields)));
    }

    #[test]
    fn encoding_round_trip() {
        let f = Field::root_of_unity(6).unwrap();
        let x = &f.q_int(2).inv().unwrap() + &f.from_rational(BigRational::new(3.into(), 7.into()));
        let text = x.encode();
        let json = serde_json::to_string(&text).unwrap();
        let back: ScalarText = serde_json::from_str(&json).unwrap();
        assert_eq!(f.decode(&back).unwrap(), x);

        let g = Field::generic();
        let y = g.q_int(3).inv().unwrap();
        let json = serde_json::to_string(&y.encode()).unwrap();
        let back: ScalarText = serde_json::from_str(&json).unwrap();
        assert_eq!(g.decode(&back).unwrap(), y);
        assert!(f.decode(&y.encode()).is_err());
    }
}
