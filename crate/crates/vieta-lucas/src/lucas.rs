//! Lucas sequences `U_n(P,Q)` and `V_n(P,Q)` over a field, computed both by
//! the defining linear recurrence and by an O(log n) doubling ladder, plus
//! the addition identities relating terms at shifted indices.
//!
//! All functions are pure and generic over [`FieldElement`], so they work
//! identically in `F_p` and in extensions `F_{p^k}`.

use crate::fieldcore::{FieldElement, FpElem};
use crate::{Error, Result};

/// Iteration cap for the naive recurrence path.
pub const DEFAULT_ITER_BUDGET: u64 = 10_000_000;

/// The parameter pair `(P, Q)` of a Lucas sequence over some field.
#[derive(Clone, Debug, PartialEq)]
pub struct LucasParams<F: FieldElement> {
    pub p: F,
    pub q: F,
}

impl<F: FieldElement> LucasParams<F> {
    pub fn new(p: F, q: F) -> Self {
        LucasParams { p, q }
    }

    /// The discriminant `D = P^2 - 4Q`.
    pub fn disc(&self) -> F {
        self.p.mul(&self.p).sub(&self.q.from_int(4).mul(&self.q))
    }
}

impl LucasParams<FpElem> {
    /// Parameters over `F_p` from arbitrary integers, reduced on entry.
    pub fn from_ints(p: crate::fieldcore::OddPrime, pp: i128, qq: i128) -> Self {
        LucasParams::new(p.elem(pp), p.elem(qq))
    }
}

/// A single `(U_n, V_n)` value pair.
#[derive(Clone, Debug, PartialEq)]
pub struct LucasPair<F: FieldElement> {
    pub n: i128,
    pub u: F,
    pub v: F,
}

/// `U_n, V_n` by direct iteration of the linear recurrence from the
/// initial terms `(U_0, U_1) = (0, 1)` and `(V_0, V_1) = (2, P)`.
pub fn lucas_uv_naive<F: FieldElement>(params: &LucasParams<F>, n: u128) -> Result<LucasPair<F>> {
    lucas_uv_naive_budgeted(params, n, DEFAULT_ITER_BUDGET)
}

pub fn lucas_uv_naive_budgeted<F: FieldElement>(
    params: &LucasParams<F>,
    n: u128,
    budget: u64,
) -> Result<LucasPair<F>> {
    if n > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: n,
            cap: budget,
        });
    }
    let zero = params.p.zero();
    let one = params.p.one();
    let two = params.p.from_int(2);
    let (mut u0, mut u1) = (zero, one);
    let (mut v0, mut v1) = (two, params.p.clone());
    for _ in 0..n {
        let u2 = params.p.mul(&u1).sub(&params.q.mul(&u0));
        let v2 = params.p.mul(&v1).sub(&params.q.mul(&v0));
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    Ok(LucasPair {
        n: n as i128,
        u: u0,
        v: v0,
    })
}

/// Binary ladder producing `(V_n, V_{n+1}, Q^n)`.
///
/// Doubling steps: `V_{2m} = V_m^2 - 2Q^m` and `V_{2m+1} = V_{m+1} V_m - P Q^m`.
fn ladder_v<F: FieldElement>(params: &LucasParams<F>, n: u128) -> (F, F, F) {
    let two = params.p.from_int(2);
    let mut v0 = two; // V_0
    let mut v1 = params.p.clone(); // V_1
    let mut qn = params.p.one(); // Q^0
    if n == 0 {
        return (v0, v1, qn);
    }
    let bits = 128 - n.leading_zeros();
    for i in (0..bits).rev() {
        if (n >> i) & 1 == 0 {
            // m -> 2m
            let odd = v1.mul(&v0).sub(&params.p.mul(&qn)); // V_{2m+1}
            v0 = v0.mul(&v0).sub(&qn.add(&qn)); // V_{2m}
            v1 = odd;
            qn = qn.mul(&qn);
        } else {
            // m -> 2m+1
            let odd = v1.mul(&v0).sub(&params.p.mul(&qn)); // V_{2m+1}
            let qm1 = qn.mul(&params.q); // Q^{m+1}
            v1 = v1.mul(&v1).sub(&qm1.add(&qm1)); // V_{2m+2} = V_{m+1}^2 - 2Q^{m+1}
            v0 = odd;
            qn = qn.mul(&qm1); // Q^{2m+1}
        }
    }
    (v0, v1, qn)
}

/// Binary ladder on `(U_m, U_{m+1})`, used when the discriminant vanishes.
///
/// Doubling steps: `U_{2m} = U_m (2 U_{m+1} - P U_m)` and
/// `U_{2m+1} = U_{m+1}^2 - Q U_m^2`.
fn ladder_u<F: FieldElement>(params: &LucasParams<F>, n: u128) -> (F, F) {
    let mut u0 = params.p.zero(); // U_0
    let mut u1 = params.p.one(); // U_1
    if n == 0 {
        return (u0, u1);
    }
    let bits = 128 - n.leading_zeros();
    let two = params.p.from_int(2);
    for i in (0..bits).rev() {
        let even = u0.mul(&two.mul(&u1).sub(&params.p.mul(&u0))); // U_{2m}
        let odd = u1.mul(&u1).sub(&params.q.mul(&u0).mul(&u0)); // U_{2m+1}
        if (n >> i) & 1 == 0 {
            u0 = even;
            u1 = odd;
        } else {
            // U_{2m+2} = U_{m+1} (P U_{m+1} - 2 Q U_m)
            let next = u1.mul(&params.p.mul(&u1).sub(&two.mul(&params.q).mul(&u0)));
            u0 = odd;
            u1 = next;
        }
    }
    (u0, u1)
}

/// `U_n, V_n` in O(log n) field operations; identical output to
/// [`lucas_uv_naive`] for every input.
///
/// When `D` is invertible the ladder runs on `(V_m, V_{m+1})` and recovers
/// `U_n` from `D U_n = 2 V_{n+1} - P V_n`; when `D = 0` it switches to a
/// `(U_m, U_{m+1})` ladder and recovers `V_n = 2 U_{n+1} - P U_n`.
pub fn lucas_uv_fast<F: FieldElement>(params: &LucasParams<F>, n: u128) -> LucasPair<F> {
    let disc = params.disc();
    let two = params.p.from_int(2);
    if disc.is_zero() {
        let (u0, u1) = ladder_u(params, n);
        let v = two.mul(&u1).sub(&params.p.mul(&u0));
        LucasPair {
            n: n as i128,
            u: u0,
            v,
        }
    } else {
        let (v0, v1, _qn) = ladder_v(params, n);
        let u = two
            .mul(&v1)
            .sub(&params.p.mul(&v0))
            .mul(&disc.inv().expect("nonzero discriminant"));
        LucasPair {
            n: n as i128,
            u,
            v: v0,
        }
    }
}

/// `U_n, V_n` for a signed index, via `U_{-n} = -U_n / Q^n` and
/// `V_{-n} = V_n / Q^n` (the unique extension consistent with running the
/// recurrence backwards).
pub fn lucas_uv_signed<F: FieldElement>(params: &LucasParams<F>, n: i128) -> Result<LucasPair<F>> {
    if n >= 0 {
        let mut pair = lucas_uv_fast(params, n as u128);
        pair.n = n;
        return Ok(pair);
    }
    if params.q.is_zero() {
        return Err(Error::QZero);
    }
    let m = n.unsigned_abs();
    let pair = lucas_uv_fast(params, m);
    let q_inv_m = params.q.inv().expect("nonzero").pow(m);
    Ok(LucasPair {
        n,
        u: pair.u.neg().mul(&q_inv_m),
        v: pair.v.mul(&q_inv_m),
    })
}

/// The four addition identities relating `U`/`V` at indices `n ± m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LucasIdentity {
    /// `U_{n+m} + Q^m U_{n-m} = V_m U_n`
    UPlusU,
    /// `V_{n+m} + Q^m V_{n-m} = V_m V_n`
    VPlusV,
    /// `U_{n+m} - Q^m U_{n-m} = U_m V_n`
    UMinusU,
    /// `V_{n+m} - Q^m V_{n-m} = D U_m U_n`
    VMinusV,
}

fn q_power<F: FieldElement>(params: &LucasParams<F>, m: i128) -> Result<F> {
    if m >= 0 {
        Ok(params.q.pow(m as u128))
    } else {
        if params.q.is_zero() {
            return Err(Error::QZero);
        }
        Ok(params.q.inv().expect("nonzero").pow(m.unsigned_abs()))
    }
}

/// Evaluate the selected identity exactly at indices `(n, m)`.
///
/// A test surface: the result is expected to be `true` for every valid
/// input; returning the boolean (rather than asserting) lets sweeps report
/// counterexamples.
pub fn identity_check<F: FieldElement>(
    params: &LucasParams<F>,
    n: i128,
    m: i128,
    which: LucasIdentity,
) -> Result<bool> {
    let at_sum = lucas_uv_signed(params, n + m)?;
    let at_diff = lucas_uv_signed(params, n - m)?;
    let at_n = lucas_uv_signed(params, n)?;
    let at_m = lucas_uv_signed(params, m)?;
    let qm = q_power(params, m)?;
    let ok = match which {
        LucasIdentity::UPlusU => at_sum.u.add(&qm.mul(&at_diff.u)) == at_m.v.mul(&at_n.u),
        LucasIdentity::VPlusV => at_sum.v.add(&qm.mul(&at_diff.v)) == at_m.v.mul(&at_n.v),
        LucasIdentity::UMinusU => at_sum.u.sub(&qm.mul(&at_diff.u)) == at_m.u.mul(&at_n.v),
        LucasIdentity::VMinusV => {
            at_sum.v.sub(&qm.mul(&at_diff.v)) == params.disc().mul(&at_m.u).mul(&at_n.u)
        }
    };
    Ok(ok)
}

/// `(U_p, V_p)` over `F_p` by the closed forms `U_p = D^{(p-1)/2}` and
/// `V_p = P^p`, computed by exponentiation.
pub fn euler_endpoints(params: &LucasParams<FpElem>) -> (FpElem, FpElem) {
    let p = params.p.modulus();
    let up = params.disc().pow(((p - 1) / 2) as u128);
    let vp = params.p.pow(p as u128);
    (up, vp)
}

/// `V_{2r}(y,y) / y^r = V_r(y-2, 1)` for `y ∉ {0, 4}`.
pub fn v_parameter_shift_check<F: FieldElement>(y: &F, r: u64) -> Result<bool> {
    if y.is_zero() || *y == y.from_int(4) {
        return Err(Error::PreconditionViolated("y must avoid {0, 4}"));
    }
    let left_params = LucasParams::new(y.clone(), y.clone());
    let lhs = lucas_uv_fast(&left_params, 2 * r as u128)
        .v
        .mul(&y.inv().expect("nonzero").pow(r as u128));
    let right_params = LucasParams::new(y.from_int(-2).add(y), y.one());
    let rhs = lucas_uv_fast(&right_params, r as u128).v;
    Ok(lhs == rhs)
}
