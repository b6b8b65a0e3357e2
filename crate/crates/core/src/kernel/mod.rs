//! Proofs, the proof checker and proof construction.

mod axioms;
mod builder;
mod check;
mod deduction;
mod extract;
mod proof;
mod store;
mod synth;
mod taut;

pub use axioms::{is_axiom, modal_schemes, scheme_allowed, ARITH_MEMBERSHIP_BUDGET};
pub use builder::ProofBuilder;
pub use check::{check_proof, proof_code_checks, CheckError, CheckFailure};
pub use deduction::{boxed_deduction, DeductionError};
pub use extract::{extract_from_star_minus, star_minus_instance, ExtractError};
pub use proof::{Justification, Line, Proof, ProofSyntaxError, Scheme};
pub use store::{pr_search, Record, StoreError, TheoremStore};
pub use synth::{prove_delta0, prove_term_eq, prove_true_sigma1, prove_true_sigma_b};
pub use taut::is_tautology;
