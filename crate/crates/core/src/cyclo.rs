//! Cyclotomic polynomials, q-integers and factored products of cyclotomics.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{invalid, Result};
use crate::poly::IntPoly;
use crate::qcomb::{euler_phi, is_prime};

/// `[n]_{q^step} = 1 + q^step + ... + q^{(n-1) step}`.
pub fn q_int(n: u64, step: u64) -> Result<IntPoly> {
    if n == 0 || step == 0 {
        return Err(invalid(format!("q_int needs n, step >= 1 (got n={n}, step={step})")));
    }
    let n = n as usize;
    let step = step as usize;
    let mut coeffs = vec![BigInt::default(); (n - 1) * step + 1];
    for i in 0..n {
        coeffs[i * step] = BigInt::one();
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared handle to the memoized `Φ_d`.
pub fn cyclotomic_arc(d: u64) -> Result<Arc<IntPoly>> {
    if d == 0 {
        return Err(invalid("cyclotomic index must be >= 1"));
    }
    if let Some(p) = cache().read().unwrap().get(&d) {
        return Ok(Arc::clone(p));
    }
    // Computed outside the lock; racing threads may duplicate the work, and
    // whichever insert lands first wins.
    let poly = Arc::new(compute_cyclotomic(d)?);
    let mut guard = cache().write().unwrap();
    Ok(Arc::clone(guard.entry(d).or_insert(poly)))
}

/// `Φ_d(q)`, with `Φ_1 = q - 1`.
pub fn cyclotomic(d: u64) -> Result<IntPoly> {
    cyclotomic_arc(d).map(|p| (*p).clone())
}

fn compute_cyclotomic(d: u64) -> Result<IntPoly> {
    let mut acc = &IntPoly::monomial(1, d as usize) - &IntPoly::one();
    if d == 1 {
        return Ok(acc);
    }
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        acc = acc.div_exact(&*cyclotomic_arc(e)?)?;
    }
    Ok(acc)
}

/// `Φ_{p^α}` written as `[p]_{q^{p^{α-1}}}`.
pub fn prime_power_form(p: u64, alpha: u32) -> Result<IntPoly> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    if alpha == 0 {
        return Err(invalid("prime power exponent must be >= 1"));
    }
    let step = p
        .checked_pow(alpha - 1)
        .ok_or_else(|| invalid("prime power overflows u64"))?;
    q_int(p, step)
}

/// `∏ Φ_d^{m_d}`, kept unexpanded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycloFactorization {
    factors: BTreeMap<u64, u32>,
}

impl CycloFactorization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiplies in `Φ_d^m`. Indices must be >= 1.
    pub fn push(&mut self, d: u64, m: u32) {
        assert!(d >= 1, "cyclotomic index must be >= 1");
        if m > 0 {
            *self.factors.entry(d).or_insert(0) += m;
        }
    }

    pub fn multiplicity(&self, d: u64) -> u32 {
        self.factors.get(&d).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&d, &m)| (d, m))
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.iter()
            .map(|(d, m)| u64::from(m) * euler_phi(d).expect("index >= 1"))
            .sum()
    }

    pub fn expand(&self) -> IntPoly {
        let mut parts: Vec<IntPoly> = Vec::new();
        for (d, m) in self.iter() {
            let phi = cyclotomic_arc(d).expect("index >= 1");
            for _ in 0..m {
                parts.push((*phi).clone());
            }
        }
        product_tree(parts)
    }
}

impl FromIterator<(u64, u32)> for CycloFactorization {
    fn from_iter<I: IntoIterator<Item = (u64, u32)>>(iter: I) -> Self {
        let mut f = CycloFactorization::new();
        for (d, m) in iter {
            f.push(d, m);
        }
        f
    }
}

impl fmt::Display for CycloFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(d, m)| {
                if m == 1 {
                    format!("Phi_{d}")
                } else {
                    format!("Phi_{d}^{m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Expanded product of a factorization; the empty product is 1.
pub fn expand(f: &CycloFactorization) -> IntPoly {
    f.expand()
}

/// Balanced pairwise product, which keeps operand degrees even.
pub(crate) fn product_tree(mut parts: Vec<IntPoly>) -> IntPoly {
    if parts.is_empty() {
        return IntPoly::one();
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a * &b),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap()
}
