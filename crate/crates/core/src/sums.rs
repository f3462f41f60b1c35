//! Alternating binomial sums, in integer mode and in q mode.
//!
//! Integer mode works with plain integers throughout, so very large
//! exponents stay cheap. q mode carries the weight `q^{C(k,2)}` with
//! `C(k,2) = k(k-1)/2`, which is a nonnegative integer for every integer `k`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::poly::IntPoly;
use crate::qcomb::{binom, binomial_row, in_dset, is_prime, qbinom};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Integer,
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumValue {
    Integer(BigInt),
    Poly(IntPoly),
}

impl SumValue {
    /// Integers embed as constant polynomials.
    pub fn to_poly(&self) -> IntPoly {
        match self {
            SumValue::Integer(v) => IntPoly::from(v.clone()),
            SumValue::Poly(p) => p.clone(),
        }
    }

    pub fn at_one(&self) -> BigInt {
        match self {
            SumValue::Integer(v) => v.clone(),
            SumValue::Poly(p) => p.eval_at_one(),
        }
    }

    pub fn expect_integer(self) -> BigInt {
        match self {
            SumValue::Integer(v) => v,
            SumValue::Poly(p) => panic!("expected an integer sum, got polynomial {p}"),
        }
    }

    pub fn expect_poly(self) -> IntPoly {
        match self {
            SumValue::Poly(p) => p,
            SumValue::Integer(v) => panic!("expected a polynomial sum, got integer {v}"),
        }
    }
}

impl fmt::Display for SumValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumValue::Integer(v) => write!(f, "{v}"),
            SumValue::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// Which terms of `Σ (-1)^k C(2n,k)^r` to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    /// `p | C(2n,k)`
    PDivides,
    /// `p ∤ C(2n,k)`
    PNotDivides,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleFamily {
    /// `C(6n,3n+k)^r C(4n,2n+k)^s C(2n,n+k)^t`
    SixFourTwo,
    /// `C(8n,4n+k)^r C(4n,2n+k)^s C(2n,n+k)^t`
    EightFourTwo,
}

impl TripleFamily {
    pub fn top(self, n: u64) -> u64 {
        match self {
            TripleFamily::SixFourTwo => 6 * n,
            TripleFamily::EightFourTwo => 8 * n,
        }
    }
}

/// A fully specified sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumSpec {
    Power {
        n: u64,
        r: u64,
    },
    Gjz {
        ns: Vec<u64>,
    },
    Triple {
        family: TripleFamily,
        n: u64,
        r: u64,
        s: u64,
        t: u64,
    },
    Pattern {
        n: u64,
        r: u64,
        p: u64,
        indices: BTreeSet<u32>,
    },
}

impl SumSpec {
    pub fn evaluate(&self, mode: Mode) -> Result<SumValue> {
        match self {
            SumSpec::Power { n, r } => {
                check_exponents(&[*n, *r])?;
                Ok(match mode {
                    Mode::Integer => SumValue::Integer(alt_power_sum(*n, *r)),
                    Mode::Q => SumValue::Poly(q_power_sum(*n, *r, |_| true)),
                })
            }
            SumSpec::Gjz { ns } => gjz_sum(ns, mode),
            SumSpec::Triple { family, n, r, s, t } => {
                check_exponents(&[*n, *r, *s, *t])?;
                Ok(triple_sum(*family, *n, *r, *s, *t, mode))
            }
            SumSpec::Pattern { n, r, p, indices } => pattern_sum(*n, *r, *p, indices, mode),
        }
    }
}

fn check_exponents(vals: &[u64]) -> Result<()> {
    if vals.contains(&0) {
        return Err(invalid("sum parameters must be positive"));
    }
    Ok(())
}

/// `k(k-1)/2`, valid for negative `k` too.
pub fn q_weight(k: i64) -> usize {
    let w = k * (k - 1) / 2;
    debug_assert!(w >= 0);
    w as usize
}

fn sign(k: i64) -> bool {
    k.rem_euclid(2) == 1
}

fn pow_u64(b: &BigInt, r: u64) -> BigInt {
    num_traits::pow(b.clone(), usize::try_from(r).expect("exponent fits usize"))
}

/// `Σ_{k=0}^{2n} (-1)^k C(2n,k)^r`.
pub fn alt_power_sum(n: u64, r: u64) -> BigInt {
    power_terms(n, r)
        .into_iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (k, t)| if k % 2 == 1 { acc - t } else { acc + t })
}

/// `C(2n,k)^r` for `k = 0..=2n`, computing only the left half.
fn power_terms(n: u64, r: u64) -> Vec<BigInt> {
    let row = binomial_row(2 * n);
    let half: Vec<BigInt> = row[..=n as usize].iter().map(|c| pow_u64(c, r)).collect();
    let mut out = half.clone();
    out.extend(half.into_iter().rev().skip(1));
    out
}

fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(invalid(format!("{p} is not prime")))
    }
}

/// `p | C(2n,k)` iff some `p^α` lies in `D_{2n,k}`.
fn p_divides_central_row(n: u64, k: i64, p: u64) -> bool {
    prime_powers_upto(p, 2 * n).any(|pa| in_dset(2 * n, k, pa))
}

fn prime_powers_upto(p: u64, bound: u64) -> impl Iterator<Item = u64> {
    std::iter::successors(Some(p), move |&x| x.checked_mul(p)).take_while(move |&x| x <= bound)
}

pub fn alt_power_sum_filtered(n: u64, r: u64, p: u64, filter: Filter) -> Result<BigInt> {
    ensure_prime(p)?;
    let terms = power_terms(n, r);
    let mut acc = BigInt::zero();
    for (k, t) in terms.into_iter().enumerate() {
        let divides = p_divides_central_row(n, k as i64, p);
        let keep = match filter {
            Filter::PDivides => divides,
            Filter::PNotDivides => !divides,
        };
        if keep {
            if k % 2 == 1 {
                acc -= t;
            } else {
                acc += t;
            }
        }
    }
    Ok(acc)
}

/// `h = ⌊log_p(2n)⌋ + 1`, the number of base-`p` digits of `2n`.
pub fn digit_count(p: u64, two_n: u64) -> u32 {
    prime_powers_upto(p, two_n).count() as u32 + 1
}

/// Sum over `k ∈ [0,2n]` with `p^α ∈ D_{2n,k}` for every `α ∈ indices`.
pub fn pattern_sum(n: u64, r: u64, p: u64, indices: &BTreeSet<u32>, mode: Mode) -> Result<SumValue> {
    ensure_prime(p)?;
    check_exponents(&[n, r])?;
    if indices.is_empty() {
        return Err(invalid("pattern index set must be nonempty"));
    }
    let h = digit_count(p, 2 * n);
    if let Some(bad) = indices.iter().find(|&&a| a == 0 || a > h) {
        return Err(invalid(format!("pattern index {bad} outside 1..={h}")));
    }
    let powers: Vec<Option<u64>> = indices.iter().map(|&a| p.checked_pow(a)).collect();
    let selected = move |k: i64| powers.iter().all(|pa| pa.is_some_and(|pa| in_dset(2 * n, k, pa)));
    Ok(match mode {
        Mode::Integer => {
            let mut acc = BigInt::zero();
            for (k, t) in power_terms(n, r).into_iter().enumerate() {
                if selected(k as i64) {
                    if k % 2 == 1 {
                        acc -= t;
                    } else {
                        acc += t;
                    }
                }
            }
            SumValue::Integer(acc)
        }
        Mode::Q => SumValue::Poly(q_power_sum(n, r, selected)),
    })
}

fn q_power_sum(n: u64, r: u64, selected: impl Fn(i64) -> bool) -> IntPoly {
    let mut cache = PowerCache::default();
    let mut acc = IntPoly::zero();
    for k in 0..=(2 * n) as i64 {
        if !selected(k) {
            continue;
        }
        let term = cache.get(2 * n, k, r).shift(q_weight(k));
        acc = if sign(k) { &acc - &term } else { &acc + &term };
    }
    acc
}

/// Memoized `qbinom(N, M)^e`, keyed by the symmetric representative of `M`.
#[derive(Default)]
struct PowerCache {
    map: HashMap<(u64, i64, u64), IntPoly>,
}

impl PowerCache {
    fn get(&mut self, top: u64, bottom: i64, e: u64) -> &IntPoly {
        let bottom = if (0..=top as i64).contains(&bottom) {
            bottom.min(top as i64 - bottom)
        } else {
            -1
        };
        self.map
            .entry((top, bottom, e))
            .or_insert_with(|| qbinom(top, bottom).pow(e))
    }
}

/// `Σ_{k=-n1}^{n1} (-1)^k [q^{C(k,2)}] ∏_i qbinom(n_i + n_{i+1}, n_i + k)`,
/// with `n_{h+1} = n_1`.
pub fn gjz_sum(ns: &[u64], mode: Mode) -> Result<SumValue> {
    if ns.is_empty() {
        return Err(invalid("composition must be nonempty"));
    }
    check_exponents(ns)?;
    let h = ns.len();
    let n1 = ns[0] as i64;
    let pairs: Vec<(u64, u64)> = (0..h).map(|i| (ns[i], ns[(i + 1) % h])).collect();
    Ok(match mode {
        Mode::Integer => {
            let mut acc = BigInt::zero();
            for k in -n1..=n1 {
                let term: BigInt = pairs.iter().map(|&(a, b)| binom(a + b, a as i64 + k)).product();
                if sign(k) {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            SumValue::Integer(acc)
        }
        Mode::Q => {
            let mut cache = PowerCache::default();
            let mut acc = IntPoly::zero();
            for k in -n1..=n1 {
                let mut term = IntPoly::one();
                for &(a, b) in &pairs {
                    term = &term * cache.get(a + b, a as i64 + k, 1);
                    if term.is_zero() {
                        break;
                    }
                }
                let term = term.shift(q_weight(k));
                acc = if sign(k) { &acc - &term } else { &acc + &term };
            }
            SumValue::Poly(acc)
        }
    })
}

/// `Σ_{k=-n}^{n} (-1)^k [q^{C(k,2)}] qbinom(A, A/2+k)^r qbinom(4n,2n+k)^s
/// qbinom(2n,n+k)^t` with `A = 6n` or `8n`.
pub fn triple_sum(family: TripleFamily, n: u64, r: u64, s: u64, t: u64, mode: Mode) -> SumValue {
    let top = family.top(n);
    let factors = [(top, top / 2, r), (4 * n, 2 * n, s), (2 * n, n, t)];
    let n = n as i64;
    match mode {
        Mode::Integer => {
            let mut acc = BigInt::zero();
            for k in -n..=n {
                let term: BigInt = factors
                    .iter()
                    .map(|&(a, c, e)| pow_u64(&binom(a, c as i64 + k), e))
                    .product();
                if sign(k) {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            SumValue::Integer(acc)
        }
        Mode::Q => {
            // The product is symmetric in k -> -k, so pair the two weights.
            let mut cache = PowerCache::default();
            let mut acc = IntPoly::zero();
            for k in 0..=n {
                let mut prod = IntPoly::one();
                for &(a, c, e) in &factors {
                    prod = &prod * cache.get(a, c as i64 + k, e);
                }
                let weight = if k == 0 {
                    IntPoly::one()
                } else {
                    &IntPoly::monomial(1, q_weight(k)) + &IntPoly::monomial(1, q_weight(-k))
                };
                let term = &weight * &prod;
                acc = if sign(k) { &acc - &term } else { &acc + &term };
            }
            SumValue::Poly(acc)
        }
    }
}
