//! Claim drivers.
//!
//! Every driver builds the modulus (or valuation bound) a claim predicts,
//! evaluates the matching sum, and returns a [`VerificationReport`] carrying
//! the witness. Drivers verify statements at finite instances; they do not
//! replay proofs.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{cyclotomic_arc, q_int};
use crate::error::{invalid, Error, Result};
use crate::poly::{CongruenceWitness, IntPoly};
use crate::qcomb::{
    binom, euler_phi, euler_phi_smooth, in_dset, is_prime, nu_p_binom, nu_p_int, qbinom, Valuation, ValuationRecord,
};
use crate::report::{ClaimId, Expectation, Params, Relation, Status, TheoremCase, VerificationReport, Witness};
use crate::sums::{
    alt_power_sum, alt_power_sum_filtered, digit_count, gjz_sum, pattern_sum, triple_sum, Filter, Mode, TripleFamily,
};

/// Default cap on the exponent used by the full-modulus valuation variant.
pub const DEFAULT_EXPONENT_BUDGET: u64 = 100_000;

pub fn check_congruence(dividend: IntPoly, modulus: IntPoly) -> Result<CongruenceWitness> {
    CongruenceWitness::check(dividend, modulus)
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Holds
    } else {
        Status::Fails
    }
}

fn congruence_report(
    claim: ClaimId,
    params: Params,
    dividend: IntPoly,
    modulus: IntPoly,
    note: String,
    started: Instant,
) -> Result<VerificationReport> {
    let witness = check_congruence(dividend, modulus.clone())?;
    Ok(VerificationReport {
        case: TheoremCase {
            claim,
            params,
            expected: Expectation::Divisible { modulus },
            note,
        },
        status: status_of(witness.holds()),
        witness: Witness::Congruence(witness),
        elapsed: started.elapsed(),
    })
}

#[allow(clippy::too_many_arguments)]
fn valuation_report(
    claim: ClaimId,
    params: Params,
    p: u64,
    sum: &BigInt,
    bound: u64,
    relation: Relation,
    note: String,
    started: Instant,
) -> Result<VerificationReport> {
    let observed = nu_p_int(sum, p)?;
    let ok = match relation {
        Relation::Exactly => observed.value == Valuation::Finite(bound),
        Relation::AtLeast => observed.value >= Valuation::Finite(bound),
    };
    Ok(VerificationReport {
        case: TheoremCase {
            claim,
            params,
            expected: Expectation::Valuation {
                p,
                value: bound,
                relation,
            },
            note,
        },
        status: status_of(ok),
        witness: Witness::Valuation {
            observed,
            required: ValuationRecord {
                p,
                value: Valuation::Finite(bound),
            },
        },
        elapsed: started.elapsed(),
    })
}

fn not_applicable(claim: ClaimId, params: Params, note: String, started: Instant) -> VerificationReport {
    VerificationReport {
        case: TheoremCase {
            claim,
            params,
            expected: Expectation::NotApplicable,
            note,
        },
        status: Status::NotApplicable,
        witness: Witness::None,
        elapsed: started.elapsed(),
    }
}

fn sign_power(n: u64) -> BigInt {
    if n % 2 == 1 {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// `[2]_{q^{2^e}} = 1 + q^{2^e} = Φ_{2^{e+1}}`.
pub fn two_q_pow2(e: u32) -> IntPoly {
    q_int(2, 1 << e).expect("positive arguments")
}

/// Which of the three triple-product congruences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Conj2Part {
    C1,
    C2,
    C3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityClaim {
    Eq1 {
        n: u64,
    },
    Eq2 {
        n: u64,
    },
    Calkin {
        n: u64,
        r: u64,
    },
    Gjz {
        ns: Vec<u64>,
    },
    GjzQ {
        ns: Vec<u64>,
    },
    Conj2 {
        part: Conj2Part,
        mode: Mode,
        n: u64,
        r: u64,
        s: u64,
        t: u64,
    },
}

pub fn verify_identity(claim: &IdentityClaim) -> Result<VerificationReport> {
    let started = Instant::now();
    match claim {
        IdentityClaim::Eq1 { n } | IdentityClaim::Eq2 { n } => {
            if *n == 0 {
                return Err(invalid("n must be positive"));
            }
            let n = *n;
            let (id, r, rhs) = match claim {
                IdentityClaim::Eq1 { .. } => (ClaimId::Eq1, 2, sign_power(n) * binom(2 * n, n as i64)),
                _ => (
                    ClaimId::Eq2,
                    3,
                    sign_power(n) * binom(2 * n, n as i64) * binom(3 * n, n as i64),
                ),
            };
            let lhs = alt_power_sum(n, r);
            Ok(VerificationReport {
                case: TheoremCase {
                    claim: id,
                    params: Params::new().with("n", n),
                    expected: Expectation::Equals { value: rhs.clone() },
                    note: String::new(),
                },
                status: status_of(lhs == rhs),
                witness: Witness::Equality { lhs, rhs },
                elapsed: started.elapsed(),
            })
        }
        IdentityClaim::Calkin { n, r } => {
            if *n == 0 || *r == 0 {
                return Err(invalid("n and r must be positive"));
            }
            let sum = alt_power_sum(*n, *r);
            congruence_report(
                ClaimId::Calkin,
                Params::new().with("n", *n).with("r", *r),
                sum.into(),
                binom(2 * n, *n as i64).into(),
                String::new(),
                started,
            )
        }
        IdentityClaim::Gjz { ns } | IdentityClaim::GjzQ { ns } => {
            let (id, mode) = match claim {
                IdentityClaim::Gjz { .. } => (ClaimId::Gjz, Mode::Integer),
                _ => (ClaimId::Gjzq, Mode::Q),
            };
            let dividend = gjz_sum(ns, mode)?.to_poly();
            let n1 = ns[0];
            let modulus_for = |j: usize| match mode {
                Mode::Integer => IntPoly::from(binom(n1 + ns[j], n1 as i64)),
                Mode::Q => qbinom(n1 + ns[j], n1 as i64),
            };
            // n_h is the checked subscript; each n_r reading is reported too.
            let alt: Vec<String> = (0..ns.len())
                .filter(|&j| dividend.div_exact(&modulus_for(j)).is_ok())
                .map(|j| (j + 1).to_string())
                .collect();
            let note = format!(
                "modulus subscript n_h; alternate n_r variant divides for r in {{{}}}",
                alt.join(",")
            );
            congruence_report(
                id,
                Params::new().with("ns", ns.as_slice()),
                dividend,
                modulus_for(ns.len() - 1),
                note,
                started,
            )
        }
        IdentityClaim::Conj2 { part, mode, n, r, s, t } => {
            let (n, r, s, t) = (*n, *r, *s, *t);
            if [n, r, s, t].contains(&0) {
                return Err(invalid("n, r, s, t must be positive"));
            }
            let params = Params::new().with("n", n).with("r", r).with("s", s).with("t", t);
            let id = match (part, mode) {
                (Conj2Part::C1, Mode::Integer) => ClaimId::Cj2c1,
                (Conj2Part::C2, Mode::Integer) => ClaimId::Cj2c2,
                (Conj2Part::C3, Mode::Integer) => ClaimId::Cj2c3,
                (Conj2Part::C1, Mode::Q) => ClaimId::Cj2c1q,
                (Conj2Part::C2, Mode::Q) => ClaimId::Cj2c2q,
                (Conj2Part::C3, Mode::Q) => ClaimId::Cj2c3q,
            };
            if id == ClaimId::Cj2c3 && (r, s, t) == (1, 1, 1) {
                return Ok(not_applicable(
                    id,
                    params,
                    "(r,s,t) = (1,1,1) is excluded".into(),
                    started,
                ));
            }
            let (family, top, bottom, factor) = match part {
                Conj2Part::C1 => (TripleFamily::SixFourTwo, 6 * n, n, 2u32),
                Conj2Part::C2 => (TripleFamily::SixFourTwo, 6 * n, 3 * n, 6),
                Conj2Part::C3 => (TripleFamily::EightFourTwo, 8 * n, 3 * n, 2),
            };
            let modulus = match mode {
                Mode::Integer => IntPoly::from(binom(top, bottom as i64) * factor),
                Mode::Q => qbinom(top, bottom as i64),
            };
            let dividend = triple_sum(family, n, r, s, t, *mode).to_poly();
            congruence_report(id, params, dividend, modulus, String::new(), started)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Thm1Variant {
    /// `r = 2 + φ(p^{γ+1})` and `r = 2 + 2φ(p^{γ+1})` for each prime.
    PerPrime,
    /// The smallest `r > 2` with `r ≡ 2 (mod φ(C(2n,n)) C(2n,n))`.
    FullModulus,
}

/// Primes dividing `C(2n,n)` with their valuations, ascending.
pub fn central_prime_valuations(n: u64) -> Vec<(u64, u64)> {
    (2..=2 * n)
        .filter(|&p| is_prime(p))
        .filter_map(|p| {
            let gamma = nu_p_binom(2 * n, n as i64, p).ok()?.value.finite()?;
            (gamma > 0).then_some((p, gamma))
        })
        .collect()
}

/// The exponent the full-modulus variant uses.
pub fn full_modulus_exponent(n: u64) -> BigInt {
    let central = binom(2 * n, n as i64);
    let modulus = euler_phi_smooth(&central, 2 * n) * &central;
    // r = 2 + modulus is the least r > 2 in the residue class of 2.
    modulus + 2u32
}

pub fn verify_thm1(n: u64, variant: Thm1Variant, budget: u64) -> Result<Vec<VerificationReport>> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let primes = central_prime_valuations(n);
    let mut reports = Vec::new();
    match variant {
        Thm1Variant::PerPrime => {
            for (p, gamma) in primes {
                let period = euler_phi(
                    p.checked_pow(gamma as u32 + 1)
                        .ok_or_else(|| invalid("prime power overflows u64"))?,
                )?;
                for r in [2 + period, 2 + 2 * period] {
                    let started = Instant::now();
                    let sum = alt_power_sum(n, r);
                    reports.push(valuation_report(
                        ClaimId::Thm1,
                        Params::new()
                            .with("n", n)
                            .with("p", p)
                            .with("r", r)
                            .with("gamma", gamma)
                            .with("variant", "per_prime"),
                        p,
                        &sum,
                        gamma,
                        Relation::Exactly,
                        format!("r = 2 + {}*phi({p}^{})", (r - 2) / period, gamma + 1),
                        started,
                    )?);
                }
            }
        }
        Thm1Variant::FullModulus => {
            let exponent = full_modulus_exponent(n);
            let r = match u64::try_from(&exponent) {
                Ok(r) if r <= budget => r,
                _ => {
                    return Err(Error::InfeasibleScale {
                        exponent: exponent.to_string(),
                        budget,
                    })
                }
            };
            let started = Instant::now();
            let sum = alt_power_sum(n, r);
            for (p, gamma) in primes {
                reports.push(valuation_report(
                    ClaimId::Thm1,
                    Params::new()
                        .with("n", n)
                        .with("p", p)
                        .with("r", r)
                        .with("gamma", gamma)
                        .with("variant", "full_modulus"),
                    p,
                    &sum,
                    gamma,
                    Relation::Exactly,
                    "r = 2 + phi(C(2n,n))*C(2n,n)".into(),
                    started,
                )?);
            }
        }
    }
    Ok(reports)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Thm2Claim {
    T2c1,
    T2c2,
    T2c3,
}

/// Branches of the 8n/3n congruence, in guard order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum T2c3Branch {
    /// `t >= 2`: extra factor `[2]_{q^{2^α}}`.
    TAtLeastTwo,
    /// `s >= 2`, or `r >= 2` with `n ≡ 3·2^α (mod 2^{α+2})`: `[2]_{q^{2^{α+1}}}`.
    SOrRThreeTimes,
    /// `r >= 2` with `n ≡ 2^α (mod 2^{α+2})`: `[2]_{q^{2^{α+2}}}`.
    ROnce,
}

impl T2c3Branch {
    /// Exponent `e` in the extra factor `[2]_{q^{2^e}}`.
    pub fn pow2_exponent(self, alpha: u32) -> u32 {
        match self {
            T2c3Branch::TAtLeastTwo => alpha,
            T2c3Branch::SOrRThreeTimes => alpha + 1,
            T2c3Branch::ROnce => alpha + 2,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            T2c3Branch::TAtLeastTwo => "t>=2",
            T2c3Branch::SOrRThreeTimes => "s>=2 or (r>=2 and n=3*2^a mod 2^(a+2))",
            T2c3Branch::ROnce => "r>=2 and n=2^a mod 2^(a+2)",
        }
    }
}

pub fn two_adic(n: u64) -> u32 {
    n.trailing_zeros()
}

pub fn three_adic(mut n: u64) -> u32 {
    let mut b = 0;
    while n > 0 && n.is_multiple_of(3) {
        n /= 3;
        b += 1;
    }
    b
}

/// Every branch whose guard holds, in guard order.
pub fn t2c3_branches(n: u64, r: u64, s: u64, t: u64) -> Vec<T2c3Branch> {
    let alpha = two_adic(n);
    let residue = n % (1u64 << (alpha + 2));
    let unit = 1u64 << alpha;
    let mut out = Vec::new();
    if t >= 2 {
        out.push(T2c3Branch::TAtLeastTwo);
    }
    if s >= 2 || (r >= 2 && residue == 3 * unit) {
        out.push(T2c3Branch::SOrRThreeTimes);
    }
    if r >= 2 && residue == unit {
        out.push(T2c3Branch::ROnce);
    }
    out
}

fn thm2_params(n: u64, r: u64, s: u64, t: u64) -> Params {
    Params::new().with("n", n).with("r", r).with("s", s).with("t", t)
}

fn check_positive(vals: &[u64]) -> Result<()> {
    if vals.contains(&0) {
        Err(invalid("n, r, s, t must be positive"))
    } else {
        Ok(())
    }
}

/// Modulus `[2]_{q^{2^α}} qbinom(6n, n)`.
pub fn t2c1_modulus(n: u64) -> IntPoly {
    &two_q_pow2(two_adic(n)) * &qbinom(6 * n, n as i64)
}

/// Modulus `[2]_{q^{2^α}} [3]_{q^{3^β}} qbinom(6n, 3n)` (the checked form).
pub fn t2c2_modulus(n: u64) -> IntPoly {
    let three = q_int(3, 3u64.pow(three_adic(n))).expect("positive");
    &(&two_q_pow2(two_adic(n)) * &three) * &qbinom(6 * n, 3 * n as i64)
}

/// Alternate form with the `[3]` factor at exponent `2^α`, `[2]_{q^{2^α}} [3]_{q^{2^α}} qbinom(6n, 3n)`.
pub fn t2c2_alternate_modulus(n: u64) -> IntPoly {
    let alpha = two_adic(n);
    let three = q_int(3, 1u64 << alpha).expect("positive");
    &(&two_q_pow2(alpha) * &three) * &qbinom(6 * n, 3 * n as i64)
}

pub fn t2c3_modulus(n: u64, branch: T2c3Branch) -> IntPoly {
    &two_q_pow2(branch.pow2_exponent(two_adic(n))) * &qbinom(8 * n, 3 * n as i64)
}

pub fn verify_thm2(n: u64, r: u64, s: u64, t: u64, claim: Thm2Claim) -> Result<VerificationReport> {
    check_positive(&[n, r, s, t])?;
    let family = match claim {
        Thm2Claim::T2c3 => TripleFamily::EightFourTwo,
        _ => TripleFamily::SixFourTwo,
    };
    let started = Instant::now();
    if claim == Thm2Claim::T2c3 && t2c3_branches(n, r, s, t).is_empty() {
        return Ok(not_applicable(
            ClaimId::T2c3,
            thm2_params(n, r, s, t),
            "no branch guard holds for (r,s,t)".into(),
            started,
        ));
    }
    let sum = triple_sum(family, n, r, s, t, Mode::Q).expect_poly();
    verify_thm2_with_sum(n, r, s, t, claim, sum, started)
}

/// As [`verify_thm2`], reusing an already computed q-mode triple sum.
pub fn verify_thm2_with_sum(
    n: u64,
    r: u64,
    s: u64,
    t: u64,
    claim: Thm2Claim,
    sum: IntPoly,
    started: Instant,
) -> Result<VerificationReport> {
    let alpha = two_adic(n);
    let beta = three_adic(n);
    let params = thm2_params(n, r, s, t);
    match claim {
        Thm2Claim::T2c1 => congruence_report(
            ClaimId::T2c1,
            params,
            sum,
            t2c1_modulus(n),
            format!("alpha={alpha}"),
            started,
        ),
        Thm2Claim::T2c2 => {
            let alternate = sum.div_exact(&t2c2_alternate_modulus(n)).is_ok();
            congruence_report(
                ClaimId::T2c2,
                params,
                sum,
                t2c2_modulus(n),
                format!(
                    "alpha={alpha} beta={beta}; factor [3]_{{q^{{3^beta}}}}; alternate [3]_{{q^{{2^alpha}}}} variant {}",
                    if alternate { "also divides" } else { "does not divide" }
                ),
                started,
            )
        }
        Thm2Claim::T2c3 => {
            let branches = t2c3_branches(n, r, s, t);
            let Some(&branch) = branches.first() else {
                return Ok(not_applicable(
                    ClaimId::T2c3,
                    params,
                    "no branch guard holds for (r,s,t)".into(),
                    started,
                ));
            };
            let mut note = format!(
                "alpha={alpha}; branch {} -> [2]_{{q^{}}}",
                branch.describe(),
                1u64 << branch.pow2_exponent(alpha)
            );
            if branches.len() > 1 {
                let rest: Vec<&str> = branches[1..].iter().map(|b| b.describe()).collect();
                note += &format!("; also eligible: {}", rest.join(", "));
            }
            congruence_report(ClaimId::T2c3, params, sum, t2c3_modulus(n, branch), note, started)
        }
    }
}

/// Checks a specific (eligible) branch of the 8n/3n congruence.
pub fn verify_t2c3_branch(
    n: u64,
    r: u64,
    s: u64,
    t: u64,
    branch: T2c3Branch,
    sum: &IntPoly,
) -> Result<VerificationReport> {
    let started = Instant::now();
    if !t2c3_branches(n, r, s, t).contains(&branch) {
        return Err(invalid(format!("branch {} is not eligible", branch.describe())));
    }
    congruence_report(
        ClaimId::T2c3,
        thm2_params(n, r, s, t),
        sum.clone(),
        t2c3_modulus(n, branch),
        format!("alpha={}; branch {}", two_adic(n), branch.describe()),
        started,
    )
}

/// Nonempty subsets of `1..=h`, ordered by their bitmask.
pub fn nonempty_subsets(h: u32) -> Vec<BTreeSet<u32>> {
    (1u64..(1 << h))
        .map(|mask| (1..=h).filter(|&a| mask >> (a - 1) & 1 == 1).collect())
        .collect()
}

fn index_param(set: &BTreeSet<u32>) -> crate::report::ParamValue {
    crate::report::ParamValue::List(set.iter().map(|&a| i64::from(a)).collect())
}

/// `∏_{α ∈ I} Φ_{p^α}^r · ∏_{β ∉ I, p^β ∈ D_{2n,n}} Φ_{p^β}`.
pub fn lemma24_modulus(n: u64, p: u64, r: u64, indices: &BTreeSet<u32>) -> Result<IntPoly> {
    let h = digit_count(p, 2 * n);
    let mut acc = IntPoly::one();
    for beta in 1..=h {
        let pb = p
            .checked_pow(beta)
            .ok_or_else(|| invalid("prime power overflows u64"))?;
        let phi = cyclotomic_arc(pb)?;
        if indices.contains(&beta) {
            acc = &acc * &phi.pow(r);
        } else if in_dset(2 * n, n as i64, pb) {
            acc = &acc * &*phi;
        }
    }
    Ok(acc)
}

/// Intermediate checks for the valuation argument.
pub fn verify_lemmas(n: u64, p: u64, r: u64) -> Result<Vec<VerificationReport>> {
    if n == 0 || r == 0 {
        return Err(invalid("n and r must be positive"));
    }
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let gamma = nu_p_binom(2 * n, n as i64, p)?
        .value
        .finite()
        .expect("central binomial is nonzero");
    let base = Params::new().with("n", n).with("p", p);
    let mut out = Vec::new();

    let started = Instant::now();
    let s = alt_power_sum_filtered(n, 2, p, Filter::PNotDivides)?;
    out.push(valuation_report(
        ClaimId::Lemma21,
        base.clone().with("r", 2u64),
        p,
        &s,
        gamma,
        Relation::Exactly,
        "terms with p not dividing C(2n,k), r=2".into(),
        started,
    )?);

    let started = Instant::now();
    let divides = alt_power_sum_filtered(n, r, p, Filter::PDivides)?;
    out.push(valuation_report(
        ClaimId::Lemma22,
        base.clone().with("r", r),
        p,
        &divides,
        r - 1 + gamma,
        Relation::AtLeast,
        "terms with p dividing C(2n,k)".into(),
        started,
    )?);

    let h = digit_count(p, 2 * n);
    let subsets = nonempty_subsets(h);
    let started = Instant::now();
    let mut alternating = BigInt::zero();
    for set in &subsets {
        let started = Instant::now();
        let params = base.clone().with("r", r).with("I", index_param(set));
        let int_sum = pattern_sum(n, r, p, set, Mode::Integer)?.expect_integer();
        if set.len() % 2 == 1 {
            alternating += &int_sum;
        } else {
            alternating -= &int_sum;
        }
        out.push(valuation_report(
            ClaimId::Lemma23,
            params.clone(),
            p,
            &int_sum,
            (r - 1) * set.len() as u64 + gamma,
            Relation::AtLeast,
            format!("h={h}"),
            started,
        )?);

        let started = Instant::now();
        let q_sum = pattern_sum(n, r, p, set, Mode::Q)?.expect_poly();
        out.push(congruence_report(
            ClaimId::Lemma24,
            params,
            q_sum,
            lemma24_modulus(n, p, r, set)?,
            format!("h={h}"),
            started,
        )?);
    }

    out.push(VerificationReport {
        case: TheoremCase {
            claim: ClaimId::InclusionExclusion,
            params: base.with("r", r),
            expected: Expectation::Equals { value: divides.clone() },
            note: format!("alternating sum over {} nonempty index sets", subsets.len()),
        },
        status: status_of(alternating == divides),
        witness: Witness::Equality {
            lhs: alternating,
            rhs: divides,
        },
        elapsed: started.elapsed(),
    });
    Ok(out)
}

pub fn verify_qlucas(d: u64, x1: u64, x2: u64, y1: u64, y2: u64) -> Result<VerificationReport> {
    let started = Instant::now();
    if d < 2 || x2 >= d || y2 >= d {
        return Err(invalid("q-Lucas needs d >= 2 and x2, y2 < d"));
    }
    let lhs = qbinom(x1 * d + x2, (y1 * d + y2) as i64);
    let rhs = qbinom(x2, y2 as i64).scale(&binom(x1, y1 as i64));
    congruence_report(
        ClaimId::Qlucas,
        Params::new()
            .with("d", d)
            .with("x1", x1)
            .with("x2", x2)
            .with("y1", y1)
            .with("y2", y2),
        &lhs - &rhs,
        (*cyclotomic_arc(d)?).clone(),
        String::new(),
        started,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdWindow {
    pub gcd: BigInt,
    pub divisible_by_central: bool,
}

/// `gcd(|S(n,r)| : m <= r < m + w)` with `gcd(0, x) = |x|`.
pub fn gcd_window(n: u64, m: u64, w: u64) -> Result<GcdWindow> {
    if n == 0 || m == 0 {
        return Err(invalid("n and m must be positive"));
    }
    if w < 2 {
        return Err(invalid("gcd window needs w >= 2"));
    }
    let g = (m..m + w).fold(BigInt::zero(), |g, r| g.gcd(&alt_power_sum(n, r)));
    let central = binom(2 * n, n as i64);
    let divisible_by_central = !g.is_zero() && (&g % &central).is_zero();
    Ok(GcdWindow {
        gcd: g.abs(),
        divisible_by_central,
    })
}

pub fn verify_gcd_window(n: u64, m: u64, w: u64) -> Result<VerificationReport> {
    let started = Instant::now();
    let window = gcd_window(n, m, w)?;
    let central = binom(2 * n, n as i64);
    let exact = if window.gcd == central {
        "equals"
    } else {
        "is a proper multiple of"
    };
    Ok(VerificationReport {
        case: TheoremCase {
            claim: ClaimId::Conj1Window,
            params: Params::new().with("n", n).with("m", m).with("w", w),
            expected: Expectation::Evidence {
                central: central.clone(),
            },
            note: format!("evidence, not proof: window r={m}..{}; gcd {exact} C(2n,n)", m + w - 1),
        },
        status: status_of(window.divisible_by_central),
        witness: Witness::Gcd {
            gcd: window.gcd,
            central,
        },
        elapsed: started.elapsed(),
    })
}

/// A user-supplied divisibility check.
pub fn verify_congruence(dividend: IntPoly, modulus: IntPoly) -> Result<VerificationReport> {
    let started = Instant::now();
    let params = Params::new().with("dividend", dividend.to_string().as_str());
    congruence_report(ClaimId::Congruence, params, dividend, modulus, String::new(), started)
}

/// Integer-mode value of a q-mode witness at `q = 1`.
pub fn specialize_at_one(w: &CongruenceWitness) -> Option<(BigInt, BigInt, BigInt)> {
    let q = w.quotient.as_ref()?;
    Some((w.dividend.eval_at_one(), w.modulus.eval_at_one(), q.eval_at_one()))
}
