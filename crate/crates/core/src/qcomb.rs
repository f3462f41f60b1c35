//! Carry sets, binomial and q-binomial coefficients, q-Lucas reduction and
//! p-adic valuations.
//!
//! The q-binomial coefficient is available through two independent routes:
//! [`qbinom`] runs the product formula with interleaved exact divisions, and
//! [`qbinom_factored`] lists the cyclotomic factors `Φ_d` for `d` in the carry
//! set `D_{n,k}`. The two are kept separate on purpose and compared in tests.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{cyclotomic_arc, CycloFactorization};
use crate::error::{invalid, Result};
use crate::poly::IntPoly;

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(invalid("euler_phi is defined for n >= 1"));
    }
    Ok(factorize(n).into_iter().map(|(p, e)| (p - 1) * p.pow(e - 1)).product())
}

/// Totient of a big integer whose prime factors are all below `bound`.
/// Used for `φ(C(2n,n))`, whose primes never exceed `2n`.
pub(crate) fn euler_phi_smooth(m: &BigInt, bound: u64) -> BigInt {
    let mut rest = m.clone();
    let mut phi = BigInt::one();
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        let pb = BigInt::from(p);
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            phi *= (&pb - 1u32) * pb.pow(e - 1);
        }
    }
    assert!(rest.is_one(), "{m} has a prime factor above {bound}");
    phi
}

fn floor_div(a: i64, d: i64) -> i64 {
    a.div_euclid(d)
}

/// `⌊n/d⌋ > ⌊k/d⌋ + ⌊(n-k)/d⌋`.
pub fn in_dset(n: u64, k: i64, d: u64) -> bool {
    if k < 0 || k > n as i64 || d < 2 {
        return false;
    }
    let (n, d) = (n as i64, d as i64);
    floor_div(n, d) > floor_div(k, d) + floor_div(n - k, d)
}

/// The carry set `D_{n,k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSet {
    pub n: u64,
    pub k: i64,
    pub members: Vec<u64>,
}

impl DSet {
    pub fn contains(&self, d: u64) -> bool {
        self.members.binary_search(&d).is_ok()
    }
}

impl fmt::Display for DSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn dset(n: u64, k: i64) -> DSet {
    let members = (2..=n).filter(|&d| in_dset(n, k, d)).collect();
    DSet { n, k, members }
}

/// `C(n,k)`, zero outside `0 <= k <= n`.
pub fn binom(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `[C(n,0), ..., C(n,n)]`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..n {
        c = c * (n - i) / (i + 1);
        row.push(c.clone());
    }
    row
}

/// Gaussian binomial by the product formula, multiplying in `q^{n+1-j} - 1`
/// and dividing out `q^j - 1` at every step.
pub fn qbinom(n: u64, k: i64) -> IntPoly {
    if k < 0 || k as u64 > n {
        return IntPoly::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = IntPoly::one();
    let minus_one = IntPoly::one();
    for j in 1..=k {
        let num = &IntPoly::monomial(1, (n + 1 - j) as usize) - &minus_one;
        let den = &IntPoly::monomial(1, j as usize) - &minus_one;
        acc = (&acc * &num)
            .div_exact(&den)
            .unwrap_or_else(|e| panic!("q-binomial product formula failed at ({n},{k}), j={j}: {e}"));
    }
    acc
}

/// `∏_{d ∈ D_{n,k}} Φ_d`.
pub fn qbinom_factored(n: u64, k: i64) -> Result<CycloFactorization> {
    if k < 0 || k as u64 > n {
        return Err(invalid(format!("qbinom_factored needs 0 <= k <= n (got n={n}, k={k})")));
    }
    Ok(dset(n, k).members.into_iter().map(|d| (d, 1)).collect())
}

/// Checks `qbinom(x1 d + x2, y1 d + y2) ≡ C(x1,y1) qbinom(x2,y2) (mod Φ_d)`.
pub fn qlucas_check(d: u64, x1: u64, x2: u64, y1: u64, y2: u64) -> Result<bool> {
    if d < 2 {
        return Err(invalid("q-Lucas needs d >= 2"));
    }
    if x2 >= d || y2 >= d {
        return Err(invalid(format!(
            "q-Lucas needs x2, y2 < d (got x2={x2}, y2={y2}, d={d})"
        )));
    }
    let lhs = qbinom(x1 * d + x2, (y1 * d + y2) as i64);
    let rhs = qbinom(x2, y2 as i64).scale(&binom(x1, y1 as i64));
    Ok(reduce_mod_cyclic(&(&lhs - &rhs), d)
        .div_exact(&*cyclotomic_arc(d)?)
        .is_ok())
}

/// Remainder modulo `q^d - 1`, which is divisible by `Φ_d`.
fn reduce_mod_cyclic(p: &IntPoly, d: u64) -> IntPoly {
    let mut folded = vec![BigInt::zero(); d as usize];
    for (i, c) in p.coeffs().iter().enumerate() {
        folded[i % d as usize] += c;
    }
    IntPoly::from_coeffs(folded)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValuationRecord {
    pub p: u64,
    pub value: Valuation,
}

impl fmt::Display for ValuationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu_{} = {}", self.p, self.value)
    }
}

/// `ν_p(C(n,k))` read off the carry set: the number of `α >= 1` with
/// `p^α ∈ D_{n,k}`. Out-of-range `k` gives `C(n,k) = 0` and hence `+∞`.
pub fn nu_p_binom(n: u64, k: i64, p: u64) -> Result<ValuationRecord> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    if k < 0 || k as u64 > n {
        return Ok(ValuationRecord {
            p,
            value: Valuation::Infinite,
        });
    }
    let mut count = 0;
    let mut pa = p;
    while pa <= n {
        if in_dset(n, k, pa) {
            count += 1;
        }
        match pa.checked_mul(p) {
            Some(next) => pa = next,
            None => break,
        }
    }
    Ok(ValuationRecord {
        p,
        value: Valuation::Finite(count),
    })
}

pub fn nu_p_int(m: &BigInt, p: u64) -> Result<ValuationRecord> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    if m.is_zero() {
        return Ok(ValuationRecord {
            p,
            value: Valuation::Infinite,
        });
    }
    let pb = BigInt::from(p);
    let mut rest = m.clone();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        rest = q;
        e += 1;
    }
    Ok(ValuationRecord {
        p,
        value: Valuation::Finite(e),
    })
}
