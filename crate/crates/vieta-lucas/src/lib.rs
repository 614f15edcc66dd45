//! Lucas sequences over finite fields: O(log n) U/V ladders, restricted
//! periods, Vieta-Lucas polynomials, and a fast decision procedure for the
//! solvability of `V_n(X,1) ≡ C (mod p)` — every nontrivial statement backed
//! by an exhaustive brute-force oracle at small scale.
//!
//! Module map:
//! - [`fieldcore`] — arithmetic in `F_p` and small extensions `F_{p^k}`,
//!   Legendre symbols, modular inverses, root scanning.
//! - [`lucas`] — `U_n(P,Q)`, `V_n(P,Q)` by naive recurrence and by doubling
//!   ladder, signed indices, and the addition identities.
//! - [`periods`] — restricted period `r(p)`, multiplier, full period `μ(p)`,
//!   and the quotient `s(p) = (p − (D/p))/r(p)`.
//! - [`vieta`] — Vieta-Lucas polynomials `V_m(X,1)`: exact coefficients,
//!   modular evaluation, composition, index periodicity and inversion.
//! - [`solver`] — the solvability decision for `V_n(X,1) ≡ C (mod p)`,
//!   witness recovery, and exhaustive certification sweeps.
//! - [`closurelab`] — extension-field verification of derived/anti-derived
//!   sequences and the related biconditionals.
//! - [`cli`] — command-line front end.

pub mod cli;
pub mod closurelab;
pub mod fieldcore;
pub mod lucas;
pub mod periods;
pub mod solver;
pub mod vieta;

pub use fieldcore::{ExtElem, FieldCtx, FieldElement, FpElem, OddPrime};
pub use lucas::{LucasPair, LucasParams};

/// Errors shared across all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not an odd prime: {0}")]
    NotOddPrime(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("no irreducible modulus polynomial found in search range")]
    IrreducibleNotFound,
    #[error("elements belong to different field contexts")]
    CtxMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("scan budget exceeded: would visit {needed} elements, cap is {cap}")]
    ScanBudgetExceeded { needed: u128, cap: u64 },
    #[error("iteration budget exceeded: {needed} steps requested, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
    #[error("Q = 0: negative indices are undefined")]
    QZero,
    #[error("p divides Q")]
    QDivisible,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("p divides P^2 - 4, so epsilon is 0")]
    EpsilonZero,
    #[error("index is not coprime to p - epsilon")]
    NotCoprime,
    #[error("p divides C(C^2 - 4): the decision test does not apply")]
    ExcludedC,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(&'static str),
    #[error("derived sequence undefined: U_r = 0")]
    DerivedUndefined,
    #[error("no witness found within extension degree {k_max}")]
    NotFoundWithinDegree { k_max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
