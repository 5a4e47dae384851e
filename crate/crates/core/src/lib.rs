//! Exact arithmetic for generalized Fibonacci polynomials: Fibonacci-type and
//! Lucas-type families over Q, Sylvester resultants and discriminants, the
//! closed forms for resultants and discriminants of family members, and
//! checkers for the identities they rest on.
//!
//! ```
//! use gfp_core::{builtin_family, resultant};
//!
//! let fib = builtin_family("fibonacci").unwrap();
//! let r = resultant(&fib.generate(4), &fib.generate(3)).unwrap();
//! assert_eq!(r.to_string(), "1");
//! ```

pub mod cli;
pub mod closed;
pub mod error;
pub mod family;
pub mod identities;
pub mod poly;
pub mod sylvester;
pub mod tables;
pub mod verify;

pub use closed::{closed_resultant, disc_closed, e2, Branch, ClosedResult, Gate};
pub use error::{GfpError, Result};
pub use family::{
    builtin_families, builtin_family, builtin_names, builtin_pairs, custom_family, ConjugatePair,
    FamilyConstants, GfpFamily, Kind,
};
pub use identities::{Failure, Value, VerificationReport};
pub use poly::{parse_rational, rat, Polynomial, Rational};
pub use sylvester::{discriminant, resultant, SquareMatrix, SylvesterMatrix};
