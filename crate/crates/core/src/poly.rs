//! Dense polynomials over the integers.
//!
//! [`IntPoly`] stores coefficients in ascending order of degree and is always
//! kept canonical: no trailing zero coefficients, and the zero polynomial is
//! the empty vector.
//!
//! Two text forms are supported, both emitted and parsed bit-exactly:
//!
//! * the list form `[c0, c1, c2]` ([`IntPoly::to_list_string`]),
//! * the pretty form `c0 + c1*q + c2*q^2` (`Display`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Operand length (in coefficients) at or below which multiplication falls
/// back to the schoolbook method.
pub const KARATSUBA_THRESHOLD: usize = 64;

/// Operands with at most this many nonzero terms are multiplied term by term.
const SPARSE_TERMS: usize = 8;

#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        IntPoly { coeffs }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` standing for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Substitute `q -> q^e`.
    pub fn inflate(&self, e: usize) -> Self {
        assert!(e >= 1, "inflation factor must be positive");
        if self.is_zero() || e == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * e] = c.clone();
        }
        IntPoly { coeffs }
    }

    pub fn mul_with_threshold(&self, other: &Self, threshold: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        for (sparse, dense) in [(self, other), (other, self)] {
            if sparse.nonzero_terms() <= SPARSE_TERMS {
                return IntPoly::from_coeffs(sparse_mul(&sparse.coeffs, &dense.coeffs));
            }
        }
        IntPoly::from_coeffs(karatsuba(&self.coeffs, &other.coeffs, threshold.max(1)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact long division over the integers.
    ///
    /// Fails with [`Error::NotDivisible`] as soon as a leading-coefficient
    /// division is inexact, or when the final remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let Some(db) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Some(da) = self.degree() else {
            return Ok(Self::zero());
        };
        if da < db {
            return Err(Error::NotDivisible {
                remainder: self.clone(),
            });
        }
        let lead = &divisor.coeffs[db];
        let lead_is_one = lead.is_one();
        // Sparse view of the divisor below its leading term.
        let lower: Vec<(usize, &BigInt)> = divisor.coeffs[..db]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();

        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let top = std::mem::take(&mut rem[i + db]);
            if top.is_zero() {
                continue;
            }
            let qc = if lead_is_one {
                top
            } else {
                let (qc, r) = top.div_rem(lead);
                if !r.is_zero() {
                    rem[i + db] = top;
                    return Err(Error::NotDivisible {
                        remainder: IntPoly::from_coeffs(rem),
                    });
                }
                qc
            };
            for &(j, c) in &lower {
                rem[i + j] -= &qc * c;
            }
            quot[i] = qc;
        }
        let rem = IntPoly::from_coeffs(rem);
        if rem.is_zero() {
            Ok(IntPoly::from_coeffs(quot))
        } else {
            Err(Error::NotDivisible { remainder: rem })
        }
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.content().is_one())
    }

    /// `[c0, c1, ...]`; the zero polynomial is `[]`.
    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        format!("[{}]", parts.join(", "))
    }
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
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
    out
}

fn sparse_mul(sparse: &[BigInt], dense: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); sparse.len() + dense.len() - 1];
    for (i, x) in sparse.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (o, y) in out[i..].iter_mut().zip(dense) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    out
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn karatsuba(a: &[BigInt], b: &[BigInt], threshold: usize) -> Vec<BigInt> {
    if a.len().min(b.len()) <= threshold {
        return schoolbook(a, b);
    }
    let m = a.len().max(b.len()) / 2;
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    if a.len() <= m || b.len() <= m {
        // Unbalanced: cut the long operand only.
        let (long, short) = if a.len() > b.len() { (a, b) } else { (b, a) };
        let (lo, hi) = long.split_at(m);
        for (i, c) in karatsuba(lo, short, threshold).into_iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in karatsuba(hi, short, threshold).into_iter().enumerate() {
            out[i + m] += c;
        }
        return out;
    }
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let z0 = karatsuba(a0, b0, threshold);
    let z2 = karatsuba(a1, b1, threshold);
    let mut z1 = karatsuba(&add_slices(a0, a1), &add_slices(b0, b1), threshold);
    for (i, c) in z0.iter().enumerate() {
        z1[i] -= c;
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] -= c;
    }
    for (i, c) in z0.into_iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in z1.into_iter().enumerate() {
        if !c.is_zero() {
            out[i + m] += c;
        }
    }
    for (i, c) in z2.into_iter().enumerate() {
        out[i + 2 * m] += c;
    }
    out
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::from_coeffs(add_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        IntPoly::from_coeffs(out)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        self.mul_with_threshold(rhs, KARATSUBA_THRESHOLD)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl std::iter::Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial {input:?}: {reason}")]
pub struct ParsePolyError {
    input: String,
    reason: String,
}

impl FromStr for IntPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| ParsePolyError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| fail("missing ']'"))?;
            if inner.trim().is_empty() {
                return Ok(IntPoly::zero());
            }
            let coeffs = inner
                .split(',')
                .map(|c| c.trim().parse::<BigInt>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| fail("bad coefficient"))?;
            return Ok(IntPoly::from_coeffs(coeffs));
        }

        let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input"));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !cur.ends_with('^') && !cur.ends_with('*') {
                if i > 0 {
                    if cur.is_empty() {
                        return Err(fail("dangling sign"));
                    }
                    terms.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(fail("dangling sign"));
        }
        terms.push((neg, cur));

        let mut coeffs: Vec<BigInt> = Vec::new();
        for (neg, body) in terms {
            let (coef, exp) = parse_term(&body).ok_or_else(|| fail("bad term"))?;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            if neg {
                coeffs[exp] -= coef;
            } else {
                coeffs[exp] += coef;
            }
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

fn parse_term(body: &str) -> Option<(BigInt, usize)> {
    let (coef, mono) = match body.split_once('*') {
        Some((c, m)) => (c.parse::<BigInt>().ok()?, Some(m)),
        None if body.starts_with('q') => (BigInt::one(), Some(body)),
        None => (body.parse::<BigInt>().ok()?, None),
    };
    let exp = match mono {
        None => 0,
        Some("q") => 1,
        Some(m) => m.strip_prefix("q^")?.parse::<usize>().ok()?,
    };
    Some((coef, exp))
}

impl TryFrom<String> for IntPoly {
    type Error = ParsePolyError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<IntPoly> for String {
    fn from(p: IntPoly) -> String {
        p.to_string()
    }
}

/// Outcome of an `A ≡ 0 (mod B)` claim in Z[q] (integers embed as constants).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceWitness {
    pub dividend: IntPoly,
    pub modulus: IntPoly,
    pub quotient: Option<IntPoly>,
    /// Nonzero partial remainder when the division failed.
    pub remainder: Option<IntPoly>,
}

impl CongruenceWitness {
    pub fn check(dividend: IntPoly, modulus: IntPoly) -> Result<Self> {
        match dividend.div_exact(&modulus) {
            Ok(q) => Ok(CongruenceWitness {
                dividend,
                modulus,
                quotient: Some(q),
                remainder: None,
            }),
            Err(Error::NotDivisible { remainder }) => Ok(CongruenceWitness {
                dividend,
                modulus,
                quotient: None,
                remainder: Some(remainder),
            }),
            Err(e) => Err(e),
        }
    }

    pub fn holds(&self) -> bool {
        self.quotient
            .as_ref()
            .is_some_and(|q| (q * &self.modulus) == self.dividend)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[1, 1]) + &p(&[1, -1]), p(&[2]));
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(&p(&[1, 1, 1]) * &p(&[1, 1]), p(&[1, 2, 2, 1]));
        assert!((&p(&[1, 1]) - &p(&[1, 1])).is_zero());
        assert_eq!((&p(&[0, 0, 3]) - &p(&[0, 0, 3])).coeffs().len(), 0);
    }

    #[test]
    fn zero_degree_is_none() {
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn divexact_examples() {
        assert_eq!(p(&[1, 0, 0, 0, -1]).div_exact(&p(&[1, -1])).unwrap(), p(&[1, 1, 1, 1]));
        assert_eq!(p(&[0, 1, 1]).div_exact(&p(&[1, 1])).unwrap(), p(&[0, 1]));
        match p(&[1, 0, 1]).div_exact(&p(&[1, 1])) {
            Err(Error::NotDivisible { remainder }) => assert_eq!(remainder, p(&[2])),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(p(&[1]).div_exact(&IntPoly::zero()), Err(Error::DivisionByZero));
        assert!(IntPoly::zero().div_exact(&p(&[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn divexact_non_monic() {
        // (2 + 2q)(3 - q) = 6 + 4q - 2q^2
        assert_eq!(p(&[6, 4, -2]).div_exact(&p(&[2, 2])).unwrap(), p(&[3, -1]));
        // leading 3 / 2 is inexact
        assert!(matches!(
            p(&[1, 3]).div_exact(&p(&[1, 2])),
            Err(Error::NotDivisible { .. })
        ));
        // integer congruences are the degree-0 case
        assert_eq!(p(&[120]).div_exact(&p(&[12])).unwrap(), p(&[10]));
        assert!(p(&[7]).div_exact(&p(&[2])).is_err());
    }

    #[test]
    fn eval_examples() {
        let one = BigInt::one();
        assert_eq!(p(&[1, 1, 1]).eval(&one), BigInt::from(3));
        assert_eq!(p(&[1, 0, 1]).eval(&one), BigInt::from(2));
        assert_eq!(p(&[1, 1, 2, 1, 1]).eval(&one), BigInt::from(6));
        assert_eq!(p(&[1, 1, 2, 1, 1]).eval_at_one(), BigInt::from(6));
        assert_eq!(p(&[1, -3, 2]).eval(&BigInt::from(-2)), BigInt::from(15));
    }

    #[test]
    fn primitivity() {
        assert!(p(&[1, 0, 1]).is_primitive().unwrap());
        assert!(!p(&[2, 2]).is_primitive().unwrap());
        assert!(!p(&[3]).is_primitive().unwrap());
        assert!(p(&[-1]).is_primitive().unwrap());
        assert_eq!(IntPoly::zero().is_primitive(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn text_forms() {
        let a = p(&[1, 1, 2, 1, 1]);
        assert_eq!(a.to_string(), "1 + q + 2*q^2 + q^3 + q^4");
        assert_eq!(a.to_list_string(), "[1, 1, 2, 1, 1]");
        assert_eq!(p(&[-1, 1]).to_string(), "-1 + q");
        assert_eq!(p(&[0, -1, 0, -5]).to_string(), "-q - 5*q^3");
        assert_eq!(p(&[1, -1, 1]).to_string(), "1 - q + q^2");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::zero().to_list_string(), "[]");

        for s in ["1 + q + 2*q^2 + q^3 + q^4", "-q - 5*q^3", "0", "-1 + q", "7"] {
            assert_eq!(s.parse::<IntPoly>().unwrap().to_string(), s);
        }
        assert_eq!("[1, 1, 2, 1, 1]".parse::<IntPoly>().unwrap(), a);
        assert_eq!("[]".parse::<IntPoly>().unwrap(), IntPoly::zero());
        assert_eq!("[3, 0, 0]".parse::<IntPoly>().unwrap(), p(&[3]));
        assert_eq!("q^2 + 2*q^2 - 1".parse::<IntPoly>().unwrap(), p(&[-1, 0, 3]));
        assert!("1 +".parse::<IntPoly>().is_err());
        assert!("q^x".parse::<IntPoly>().is_err());
        assert!("[1, a]".parse::<IntPoly>().is_err());
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a = IntPoly::from_coeffs((0..300).map(|i| BigInt::from((i * 7919) % 101 - 50)).collect());
        let b = IntPoly::from_coeffs((0..170).map(|i| BigInt::from((i * 104729) % 97 - 48)).collect());
        let slow = IntPoly::from_coeffs(schoolbook(a.coeffs(), b.coeffs()));
        for t in [1, 2, 8, 64] {
            assert_eq!(a.mul_with_threshold(&b, t), slow);
        }
    }

    #[test]
    fn pow_and_inflate() {
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
        assert!(p(&[4, 5]).pow(0).is_one());
        assert_eq!(p(&[1, 1]).inflate(4), p(&[1, 0, 0, 0, 1]));
        assert_eq!(p(&[1, 2]).shift(2), p(&[0, 0, 1, 2]));
    }

    #[test]
    fn witness() {
        let w = CongruenceWitness::check(p(&[0, 1, 1]), p(&[1, 1])).unwrap();
        assert!(w.holds());
        assert_eq!(w.quotient, Some(p(&[0, 1])));
        let w = CongruenceWitness::check(p(&[1, 0, 1]), p(&[1, 1])).unwrap();
        assert!(!w.holds());
        assert_eq!(w.remainder, Some(p(&[2])));
    }
}
