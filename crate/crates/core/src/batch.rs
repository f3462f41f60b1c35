//! Parallel batch runner with deterministic report ordering.

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::poly::IntPoly;
use crate::report::VerificationReport;
use crate::verify::{
    verify_congruence, verify_gcd_window, verify_identity, verify_lemmas, verify_qlucas, verify_thm1, verify_thm2,
    IdentityClaim, Thm1Variant, Thm2Claim,
};

/// One driver invocation; may expand to several reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Job {
    Identity(IdentityClaim),
    Thm1 {
        n: u64,
        variant: Thm1Variant,
        budget: u64,
    },
    Thm2 {
        n: u64,
        r: u64,
        s: u64,
        t: u64,
        claim: Thm2Claim,
    },
    Lemmas {
        n: u64,
        p: u64,
        r: u64,
    },
    GcdWindow {
        n: u64,
        m: u64,
        w: u64,
    },
    QLucas {
        d: u64,
        x1: u64,
        x2: u64,
        y1: u64,
        y2: u64,
    },
    Congruence {
        dividend: IntPoly,
        modulus: IntPoly,
    },
}

impl Job {
    pub fn run(&self) -> Result<Vec<VerificationReport>> {
        match self {
            Job::Identity(c) => verify_identity(c).map(|r| vec![r]),
            Job::Thm1 { n, variant, budget } => verify_thm1(*n, *variant, *budget),
            Job::Thm2 { n, r, s, t, claim } => verify_thm2(*n, *r, *s, *t, *claim).map(|r| vec![r]),
            Job::Lemmas { n, p, r } => verify_lemmas(*n, *p, *r),
            Job::GcdWindow { n, m, w } => verify_gcd_window(*n, *m, *w).map(|r| vec![r]),
            Job::QLucas { d, x1, x2, y1, y2 } => verify_qlucas(*d, *x1, *x2, *y1, *y2).map(|r| vec![r]),
            Job::Congruence { dividend, modulus } => {
                verify_congruence(dividend.clone(), modulus.clone()).map(|r| vec![r])
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct BatchOutcome {
    /// Reports in job order, cut off after the first failing case.
    pub reports: Vec<VerificationReport>,
    /// Index into `reports` of the failing case, if any.
    pub first_failure: Option<usize>,
}

impl BatchOutcome {
    pub fn all_hold(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Runs `jobs` on `workers` threads; output depends only on `jobs`.
pub fn run_batch(jobs: &[Job], workers: usize) -> Result<BatchOutcome> {
    if workers == 0 {
        return Err(invalid("worker count must be >= 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| invalid(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<Vec<VerificationReport>>> = pool.install(|| jobs.par_iter().map(Job::run).collect());
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    let first_failure = reports.iter().position(VerificationReport::failed);
    if let Some(i) = first_failure {
        reports.truncate(i + 1);
    }
    Ok(BatchOutcome { reports, first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::IdentityClaim;

    #[test]
    fn ordering_is_independent_of_workers() {
        let jobs: Vec<Job> = (1..=12)
            .flat_map(|n| (1..=3).map(move |r| Job::Identity(IdentityClaim::Calkin { n, r })))
            .collect();
        let one = run_batch(&jobs, 1).unwrap();
        let many = run_batch(&jobs, 4).unwrap();
        let strip = |o: &BatchOutcome| -> Vec<_> {
            o.reports
                .iter()
                .map(|r| (r.case.clone(), r.status, r.witness.clone()))
                .collect()
        };
        assert_eq!(strip(&one), strip(&many));
        assert!(one.all_hold());
        assert_eq!(one.reports.len(), 36);
    }

    #[test]
    fn stops_at_first_failure() {
        let jobs = vec![
            Job::Identity(IdentityClaim::Calkin { n: 1, r: 1 }),
            Job::Congruence {
                dividend: IntPoly::from_i64s(&[1, 0, 1]),
                modulus: IntPoly::from_i64s(&[1, 1]),
            },
            Job::Identity(IdentityClaim::Calkin { n: 2, r: 1 }),
        ];
        let out = run_batch(&jobs, 2).unwrap();
        assert_eq!(out.first_failure, Some(1));
        assert_eq!(out.reports.len(), 2);
        assert!(run_batch(&jobs, 0).is_err());
    }
}
