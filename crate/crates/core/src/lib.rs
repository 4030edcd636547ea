//! Exact decision procedure for first-order univariate polynomial problems
//! over the reals.
//!
//! The engine isolates real roots with Sturm chains, decides the sign of a
//! polynomial at a real algebraic point via Tarski queries, and produces and
//! independently checks certificates for `∃`/`∀` formulas: a witness point
//! for existential claims, and a complete root list for universal ones.

pub mod certfmt;
pub mod decide;
pub mod error;
pub mod formula;
pub mod isolate;
pub mod poly;
pub mod rational;
pub mod realalg;
pub mod sturm;

pub use decide::{
    check_certificate, check_existential, check_universal, decide, generate_certificate,
    Certificate, CheckReport, Verdict,
};
pub use error::{Error, Result};
pub use formula::{parse_formula, parse_poly, Formula, QfFormula, Quantifier, SignCondFormula};
pub use isolate::{isolate_all, isolate_roots};
pub use poly::{Poly, Sign};
pub use rational::Rational;
pub use realalg::{compare, mid_between, sign_at, valid_alg, RealAlg};
pub use sturm::{count_roots, taq, ExtRat};
