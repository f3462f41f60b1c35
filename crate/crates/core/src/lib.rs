//! Exact arithmetic in Z[q] for q-binomial coefficients, cyclotomic
//! polynomials and alternating binomial sums, with drivers that verify
//! divisibility and valuation statements about those sums instance by
//! instance.
//!
//! ```
//! use qbinsum::qcomb::{qbinom, qbinom_factored};
//!
//! let g = qbinom(4, 2);
//! assert_eq!(g.to_string(), "1 + q + 2*q^2 + q^3 + q^4");
//! assert_eq!(qbinom_factored(4, 2).unwrap().expand(), g);
//! ```

pub mod batch;
pub mod cyclo;
pub mod error;
pub mod poly;
pub mod qcomb;
pub mod report;
pub mod sums;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{CongruenceWitness, IntPoly};

// The guide's code blocks run as doctests.
macro_rules! book_chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[cfg(doctest)]
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub mod $name {}
        )*
    };
}

book_chapters! {
    book_introduction => "introduction.md",
    book_polynomials => "polynomials.md",
    book_cyclotomic => "cyclotomic.md",
    book_qbinomials => "qbinomials.md",
    book_sums => "sums.md",
    book_verification => "verification.md",
    book_batches => "batches.md",
    book_cli => "cli.md",
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub mod readme {}
