//! Restricted period `r(p)`, multiplier `M`, full period `μ(p)`, and the
//! quotient `s(p) = (p - (D/p)) / r(p)` of a Lucas sequence modulo `p`.

use serde::Serialize;

use crate::fieldcore::{legendre_fp, FieldElement, FpElem};
use crate::lucas::{lucas_uv_fast, LucasParams};
use crate::{Error, Result};

/// Everything known about the periodic structure of `U_n(P,Q) mod p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodData {
    /// `(D/p)`; ±1 under the precondition `p ∤ 2PQD`.
    pub epsilon: i64,
    /// Least `r > 0` with `U_r ≡ 0 (mod p)`.
    pub r: u64,
    /// The multiplier: `U_{n+r} ≡ M · U_n` for all `n`; equals `U_{r+1} mod p`.
    #[serde(serialize_with = "ser_fp")]
    pub multiplier: FpElem,
    /// Least `m > 0` with `U_{n+m} ≡ U_n` for all `n`; equals `r · ord_p(M)`.
    pub mu: u64,
    /// `(p - epsilon) / r`.
    pub s: u64,
}

fn ser_fp<S: serde::Serializer>(v: &FpElem, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(v.value())
}

/// Sorted divisors of `n`.
pub fn divisors_sorted(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Multiplicative order of a nonzero element of `F_p`.
pub(crate) fn mult_order(m: FpElem) -> u64 {
    assert!(!m.is_zero());
    let mut acc = m;
    let mut ord = 1;
    while acc != m.one() {
        acc = acc.mul(m);
        ord += 1;
    }
    ord
}

/// The restricted period `r` (least positive index with `U_r ≡ 0`) and the
/// multiplier `M = U_{r+1} mod p`.
///
/// When `p ∤ 2PD` also holds, `r` divides `p - (D/p)` and is located by
/// testing divisors in increasing order with the fast ladder; otherwise the
/// recurrence is scanned directly.
pub fn restricted_period(params: &LucasParams<FpElem>) -> Result<(u64, FpElem)> {
    if params.q.is_zero() {
        return Err(Error::QDivisible);
    }
    let p = params.p.modulus();
    let disc = params.disc();
    let r = if !params.p.is_zero() && !disc.is_zero() {
        let eps = legendre_fp(disc);
        let bound = (p as i128 - eps as i128) as u64;
        divisors_sorted(bound)
            .into_iter()
            .find(|&d| lucas_uv_fast(params, d as u128).u.is_zero())
            .ok_or(Error::InternalInconsistency(
                "no zero of U among divisors of p - epsilon",
            ))?
    } else {
        // direct scan; pure periodicity guarantees a zero exists
        let mut u0 = params.p.zero();
        let mut u1 = params.p.one();
        let mut r = 0u64;
        loop {
            let u2 = params.p.mul(u1).sub(params.q.mul(u0));
            u0 = u1;
            u1 = u2;
            r += 1;
            if u0.is_zero() {
                break r;
            }
            if r as u128 > (p as u128) * (p as u128) {
                return Err(Error::InternalInconsistency("restricted period scan ran past p^2"));
            }
        }
    };
    let m = lucas_uv_fast(params, r as u128 + 1).u;
    debug_assert!(!m.is_zero());
    Ok((r, m))
}

/// The full period `μ(p)`: least `m > 0` with `U_{n+m} ≡ U_n` for all `n`,
/// computed as `r · ord_p(M)`.
pub fn full_period(params: &LucasParams<FpElem>) -> Result<u64> {
    let (r, m) = restricted_period(params)?;
    Ok(r * mult_order(m))
}

/// Full period found by scanning the state pair `(U_n, U_{n+1})` until the
/// initial state `(0, 1)` recurs. Oracle for [`full_period`].
pub fn full_period_by_scan(params: &LucasParams<FpElem>) -> Result<u64> {
    if params.q.is_zero() {
        return Err(Error::QDivisible);
    }
    let mut u0 = params.p.zero();
    let mut u1 = params.p.one();
    let mut n = 0u64;
    loop {
        let u2 = params.p.mul(u1).sub(params.q.mul(u0));
        u0 = u1;
        u1 = u2;
        n += 1;
        if u0.is_zero() && u1 == params.p.one() {
            return Ok(n);
        }
    }
}

/// Complete [`PeriodData`], requiring `p ∤ 2PQD`.
pub fn s_value(params: &LucasParams<FpElem>) -> Result<PeriodData> {
    if params.p.is_zero() {
        return Err(Error::PreconditionViolated("p divides P"));
    }
    if params.q.is_zero() {
        return Err(Error::PreconditionViolated("p divides Q"));
    }
    let disc = params.disc();
    if disc.is_zero() {
        return Err(Error::PreconditionViolated("p divides D = P^2 - 4Q"));
    }
    let epsilon = legendre_fp(disc);
    let (r, multiplier) = restricted_period(params)?;
    let span = (params.p.modulus() as i128 - epsilon as i128) as u64;
    if span % r != 0 {
        return Err(Error::InternalInconsistency("restricted period does not divide p - epsilon"));
    }
    let mu = r * mult_order(multiplier);
    Ok(PeriodData {
        epsilon,
        r,
        multiplier,
        mu,
        s: span / r,
    })
}

/// `2 | s(p)` if and only if `(Q/p) = 1`; expected always-true.
pub fn lemma12_check(params: &LucasParams<FpElem>) -> Result<bool> {
    let data = s_value(params)?;
    Ok((data.s % 2 == 0) == (legendre_fp(params.q) == 1))
}
