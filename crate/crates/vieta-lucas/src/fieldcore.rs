//! Exact arithmetic in `F_p` and in small extensions `F_{p^k}`, plus the
//! elementary number-theoretic primitives every other module consumes.
//!
//! Extensions are represented as `F_p[X]/(f)` for a monic irreducible `f`
//! chosen by deterministic exhaustive search, so runs are reproducible.
//! The algebraic closure is never materialized; callers pick the extension
//! degree they need and all exhaustive scans carry an explicit element
//! budget.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Default cap on the number of field elements an exhaustive scan may visit.
pub const DEFAULT_SCAN_BUDGET: u64 = 1_000_000;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u128, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_BASES {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Ascending list of odd primes `3 ≤ p ≤ n`.
pub fn odd_primes_up_to(n: u64) -> Vec<OddPrime> {
    let mut out = Vec::new();
    let mut p = 3u64;
    while p <= n {
        if is_prime_u64(p) {
            out.push(OddPrime(p));
        }
        p += 2;
    }
    out
}

/// An odd prime, validated at construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !is_prime_u64(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(OddPrime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduce an arbitrary integer into `F_p`.
    pub fn elem(self, v: i128) -> FpElem {
        let m = self.0 as i128;
        let r = ((v % m) + m) % m;
        FpElem {
            value: r as u64,
            modulus: self.0,
        }
    }
}

impl fmt::Debug for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `F_p`, always reduced into `[0, p)`.
///
/// Arithmetic between elements of different moduli is rejected (panics);
/// the moduli are part of the values and mixing them is a caller bug.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    modulus: u64,
}

impl FpElem {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn prime(self) -> OddPrime {
        OddPrime(self.modulus)
    }

    fn same(self, o: FpElem) {
        assert_eq!(
            self.modulus, o.modulus,
            "arithmetic between different moduli"
        );
    }

    pub fn add(self, o: impl std::borrow::Borrow<FpElem>) -> FpElem {
        let o = *o.borrow();
        self.same(o);
        let mut v = self.value + o.value;
        if v >= self.modulus {
            v -= self.modulus;
        }
        FpElem { value: v, ..self }
    }

    pub fn sub(self, o: impl std::borrow::Borrow<FpElem>) -> FpElem {
        let o = *o.borrow();
        self.same(o);
        let v = if self.value >= o.value {
            self.value - o.value
        } else {
            self.value + self.modulus - o.value
        };
        FpElem { value: v, ..self }
    }

    pub fn mul(self, o: impl std::borrow::Borrow<FpElem>) -> FpElem {
        let o = *o.borrow();
        self.same(o);
        FpElem {
            value: mul_mod(self.value, o.value, self.modulus),
            ..self
        }
    }

    pub fn neg(self) -> FpElem {
        FpElem {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            ..self
        }
    }

    pub fn pow(self, e: u128) -> FpElem {
        FpElem {
            value: pow_mod(self.value, e, self.modulus),
            ..self
        }
    }

    pub fn inv(self) -> Result<FpElem> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow((self.modulus - 2) as u128))
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Multiplicative inverse of `a` modulo the prime `p`.
pub fn mod_inverse(a: FpElem) -> Result<FpElem> {
    a.inv()
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i128, p: OddPrime) -> i64 {
    legendre_fp(p.elem(a))
}

/// Legendre symbol of a reduced element.
pub fn legendre_fp(a: FpElem) -> i64 {
    if a.is_zero() {
        return 0;
    }
    let e = a.pow(((a.modulus - 1) / 2) as u128);
    if e.value == 1 {
        1
    } else {
        -1
    }
}

/// Greatest common divisor; errors when both arguments are zero.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::BothZero);
    }
    Ok(gcd_u(a, b))
}

pub(crate) fn gcd_u(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m` (not necessarily prime), if it exists.
pub(crate) fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some((((t0 % m as i128) + m as i128) % m as i128) as u64)
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p, used for extension moduli and inverses.
// Coefficient vectors are lowest-degree first with no trailing zeros.
// ---------------------------------------------------------------------------

mod fppoly {
    use super::{inv_mod_u64, mul_mod};

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn eval(a: &[u64], x: u64, m: u64) -> u64 {
        let mut acc = 0u64;
        for &c in a.iter().rev() {
            acc = (mul_mod(acc, x, m) + c) % m;
        }
        acc
    }

    pub fn mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(ai, bj, m)) % m;
            }
        }
        trim(&mut out);
        out
    }

    /// Long division: returns (quotient, remainder).
    pub fn divmod(a: &[u64], b: &[u64], m: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod_u64(b[db], m).expect("divisor leading coefficient not invertible");
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = mul_mod(r[dr], lead_inv, m);
            q[dr - db] = c;
            for (j, &bj) in b.iter().enumerate() {
                let idx = dr - db + j;
                let sub = mul_mod(c, bj, m);
                r[idx] = (r[idx] + m - sub % m) % m;
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn rem(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
        divmod(a, b, m).1
    }

    pub fn mulrem(a: &[u64], b: &[u64], f: &[u64], m: u64) -> Vec<u64> {
        rem(&mul(a, b, m), f, m)
    }

    pub fn gcd(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
        let mut r0 = a.to_vec();
        let mut r1 = b.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        while !r1.is_empty() {
            let r2 = rem(&r0, &r1, m);
            r0 = r1;
            r1 = r2;
        }
        r0
    }

    /// Inverse of `a` modulo `f`, where `gcd(a, f)` is a nonzero constant.
    pub fn inverse(a: &[u64], f: &[u64], m: u64) -> Option<Vec<u64>> {
        let mut r0 = a.to_vec();
        trim(&mut r0);
        if r0.is_empty() {
            return None;
        }
        let mut r1 = f.to_vec();
        // invariant: r_i ≡ t_i * a (mod f)
        let mut t0: Vec<u64> = vec![1];
        let mut t1: Vec<u64> = Vec::new();
        while !r1.is_empty() {
            let (q, r2) = divmod(&r0, &r1, m);
            let qt = mul(&q, &t1, m);
            let mut t2 = vec![0u64; t0.len().max(qt.len())];
            for (i, slot) in t2.iter_mut().enumerate() {
                let x = t0.get(i).copied().unwrap_or(0);
                let y = qt.get(i).copied().unwrap_or(0);
                *slot = (x + m - y % m) % m;
            }
            trim(&mut t2);
            r0 = r1;
            r1 = r2;
            t0 = t1;
            t1 = t2;
        }
        if r0.len() != 1 {
            return None; // gcd not constant: a and f share a factor
        }
        let c_inv = inv_mod_u64(r0[0], m)?;
        let mut out: Vec<u64> = t0.iter().map(|&c| mul_mod(c, c_inv, m)).collect();
        trim(&mut out);
        Some(rem(&out, f, m))
    }
}

/// `x^(p^reps) mod f` by iterating the Frobenius power, avoiding huge exponents.
fn frobenius_power(p: u64, reps: usize, f: &[u64], m: u64) -> Vec<u64> {
    let mut acc = vec![0u64, 1]; // the class of X
    for _ in 0..reps {
        // acc <- acc^p mod f
        let mut base = acc.clone();
        let mut out: Vec<u64> = vec![1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                out = fppoly::mulrem(&out, &base, f, m);
            }
            base = fppoly::mulrem(&base, &base, f, m);
            e >>= 1;
        }
        acc = out;
    }
    acc
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    match k {
        0 => false,
        1 => true,
        2 | 3 => (0..p).all(|x| fppoly::eval(f, x, p) != 0),
        _ => {
            // Rabin's test: X^(p^k) ≡ X (mod f) and, for every prime t | k,
            // gcd(X^(p^(k/t)) - X, f) is constant.
            let xpk = frobenius_power(p, k, f, p);
            let mut diff = xpk;
            sub_x(&mut diff, p);
            if !diff.is_empty() {
                return false;
            }
            let mut kk = k;
            let mut prime_divs = Vec::new();
            let mut t = 2;
            while t * t <= kk {
                if kk % t == 0 {
                    prime_divs.push(t);
                    while kk % t == 0 {
                        kk /= t;
                    }
                }
                t += 1;
            }
            if kk > 1 {
                prime_divs.push(kk);
            }
            for t in prime_divs {
                let mut h = frobenius_power(p, k / t, f, p);
                sub_x(&mut h, p);
                let g = fppoly::gcd(&h, f, p);
                if g.len() != 1 {
                    return false;
                }
            }
            true
        }
    }
}

/// In-place subtraction of the monomial X.
fn sub_x(v: &mut Vec<u64>, p: u64) {
    if v.len() < 2 {
        v.resize(2, 0);
    }
    v[1] = (v[1] + p - 1) % p;
    fppoly::trim(v);
}

struct CtxInner {
    p: OddPrime,
    k: usize,
    /// Monic modulus polynomial, lowest degree first, length k + 1.
    modpoly: Vec<u64>,
}

/// A concrete extension field `F_{p^k} = F_p[X]/(modpoly)`.
///
/// `k = 1` degenerates to plain `F_p` with modulus polynomial `X`.
/// Cheap to clone; equality compares the defining data.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<CtxInner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &o.inner)
            || (self.inner.p == o.inner.p
                && self.inner.k == o.inner.k
                && self.inner.modpoly == o.inner.modpoly)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}^{}}}", self.inner.p, self.inner.k)
    }
}

/// Build `F_{p^k}` with a deterministically chosen irreducible modulus.
///
/// Monic candidates are tried in a fixed order; `seed` only rotates the
/// starting offset, so construction is reproducible given `(p, k, seed)`.
pub fn ext_build(p: OddPrime, k: usize, seed: u64) -> Result<FieldCtx> {
    if k == 0 {
        return Err(Error::PreconditionViolated("extension degree must be >= 1"));
    }
    if k == 1 {
        return Ok(FieldCtx {
            inner: Arc::new(CtxInner {
                p,
                k,
                modpoly: vec![0, 1],
            }),
        });
    }
    let pv = p.get();
    let total: u128 = (pv as u128)
        .checked_pow(k as u32)
        .ok_or(Error::IrreducibleNotFound)?;
    let start = seed as u128 % total;
    for off in 0..total {
        let idx = (start + off) % total;
        let mut f = vec![0u64; k + 1];
        f[k] = 1;
        let mut rest = idx;
        for c in f.iter_mut().take(k) {
            *c = (rest % pv as u128) as u64;
            rest /= pv as u128;
        }
        if is_irreducible(&f, pv) {
            return Ok(FieldCtx {
                inner: Arc::new(CtxInner { p, k, modpoly: f }),
            });
        }
    }
    Err(Error::IrreducibleNotFound)
}

impl FieldCtx {
    pub fn prime(&self) -> OddPrime {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.k
    }

    pub fn modpoly(&self) -> &[u64] {
        &self.inner.modpoly
    }

    /// `p^k`, saturating on overflow (scans are budget-checked anyway).
    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..self.inner.k {
            acc = acc.saturating_mul(self.inner.p.get() as u128);
        }
        acc
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem {
            coeffs: vec![0; self.inner.k],
            ctx: self.clone(),
        }
    }

    pub fn one(&self) -> ExtElem {
        self.embed(1)
    }

    /// Embed an integer as a base-field element.
    pub fn embed(&self, v: i128) -> ExtElem {
        let mut coeffs = vec![0; self.inner.k];
        coeffs[0] = self.inner.p.elem(v).value();
        ExtElem {
            coeffs,
            ctx: self.clone(),
        }
    }

    /// Embed an `F_p` element; its modulus must match this context's prime.
    pub fn embed_fp(&self, a: FpElem) -> ExtElem {
        assert_eq!(a.modulus(), self.inner.p.get(), "prime mismatch");
        self.embed(a.value() as i128)
    }

    /// The class of X (a root of the modulus polynomial when k >= 2).
    pub fn gen(&self) -> ExtElem {
        let mut coeffs = vec![0; self.inner.k];
        if self.inner.k >= 2 {
            coeffs[1] = 1;
        } else {
            coeffs[0] = 0; // X ≡ 0 in F_p[X]/(X)
        }
        ExtElem {
            coeffs,
            ctx: self.clone(),
        }
    }

    /// The element at position `idx` in the canonical (lexicographic on
    /// coefficient values, `coeffs[0]` most significant) enumeration.
    pub fn element_from_index(&self, idx: u128) -> ExtElem {
        let pv = self.inner.p.get() as u128;
        let k = self.inner.k;
        let mut coeffs = vec![0u64; k];
        let mut rest = idx;
        for j in (0..k).rev() {
            coeffs[j] = (rest % pv) as u64;
            rest /= pv;
        }
        ExtElem {
            coeffs,
            ctx: self.clone(),
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.order()).map(move |i| self.element_from_index(i))
    }
}

/// An element of `F_{p^k}`: a coefficient vector of length `k`, reduced
/// modulo the context's modulus polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtElem {
    coeffs: Vec<u64>,
    ctx: FieldCtx,
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {:?}", self.coeffs, self.ctx)
    }
}

impl ExtElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn same(&self, o: &ExtElem) {
        assert!(self.ctx == o.ctx, "arithmetic between different contexts");
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &ExtElem) -> ExtElem {
        self.same(o);
        let p = self.ctx.prime().get();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(&a, &b)| {
                let v = a + b;
                if v >= p {
                    v - p
                } else {
                    v
                }
            })
            .collect();
        ExtElem {
            coeffs,
            ctx: self.ctx.clone(),
        }
    }

    pub fn sub(&self, o: &ExtElem) -> ExtElem {
        self.same(o);
        let p = self.ctx.prime().get();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        ExtElem {
            coeffs,
            ctx: self.ctx.clone(),
        }
    }

    pub fn neg(&self) -> ExtElem {
        self.ctx.zero().sub(self)
    }

    pub fn mul(&self, o: &ExtElem) -> ExtElem {
        self.same(o);
        let p = self.ctx.prime().get();
        let k = self.ctx.degree();
        let f = self.ctx.modpoly();
        // schoolbook product, then reduce by the monic modulus
        let mut buf = vec![0u64; 2 * k - 1];
        for (i, &ai) in self.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in o.coeffs.iter().enumerate() {
                buf[i + j] = (buf[i + j] + mul_mod(ai, bj, p)) % p;
            }
        }
        for i in (k..buf.len()).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for (j, &fj) in f.iter().enumerate().take(k) {
                let idx = i - k + j;
                let sub = mul_mod(c, fj, p);
                buf[idx] = (buf[idx] + p - sub) % p;
            }
        }
        buf.truncate(k);
        ExtElem {
            coeffs: buf,
            ctx: self.ctx.clone(),
        }
    }

    pub fn inv(&self) -> Result<ExtElem> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.ctx.prime().get();
        let inv = fppoly::inverse(&self.coeffs, self.ctx.modpoly(), p)
            .ok_or(Error::InternalInconsistency("modulus polynomial not irreducible"))?;
        let mut coeffs = inv;
        coeffs.resize(self.ctx.degree(), 0);
        Ok(ExtElem {
            coeffs,
            ctx: self.ctx.clone(),
        })
    }

    pub fn pow(&self, mut e: u128) -> ExtElem {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Binary operations exposed by [`ext_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic in `F_{p^k}`.
pub fn ext_arith(a: &ExtElem, b: &ExtElem, op: ExtOp) -> Result<ExtElem> {
    if a.ctx != b.ctx {
        return Err(Error::CtxMismatch);
    }
    Ok(match op {
        ExtOp::Add => a.add(b),
        ExtOp::Sub => a.sub(b),
        ExtOp::Mul => a.mul(b),
        ExtOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a.mul(&b.inv().expect("nonzero"))
        }
    })
}

/// `a^e` by square-and-multiply.
pub fn ext_pow(a: &ExtElem, e: u128) -> ExtElem {
    a.pow(e)
}

/// Whether `a` lies in the base field `F_p`.
///
/// Both criteria — all coefficients above index 0 zero, and `a^p = a` —
/// are evaluated and must agree.
pub fn in_base_field(a: &ExtElem) -> bool {
    let by_coeffs = a.coeffs[1..].iter().all(|&c| c == 0);
    let by_frobenius = a.pow(a.ctx.prime().get() as u128) == *a;
    assert_eq!(by_coeffs, by_frobenius, "base-field criteria disagree");
    by_coeffs
}

/// All roots in `F_{p^k}` of the polynomial with the given coefficients
/// (lowest degree first), found by exhaustive evaluation in canonical
/// element order.
pub fn poly_roots_scan(coeffs: &[ExtElem], ctx: &FieldCtx, budget: u64) -> Result<Vec<ExtElem>> {
    for c in coeffs {
        if c.ctx() != ctx {
            return Err(Error::CtxMismatch);
        }
    }
    let order = ctx.order();
    if order > budget as u128 {
        return Err(Error::ScanBudgetExceeded {
            needed: order,
            cap: budget,
        });
    }
    let mut roots = Vec::new();
    for x in ctx.elements() {
        let mut acc = ctx.zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        if acc.is_zero() {
            roots.push(x);
        }
    }
    Ok(roots)
}

/// Field-element operations shared by `F_p` and `F_{p^k}` values, so the
/// sequence machinery can be written once.
///
/// Constructors are methods of an existing element: any value of the field
/// can mint `zero`, `one`, or an embedded integer of the same field.
pub trait FieldElement: Clone + PartialEq + fmt::Debug {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn from_int(&self, v: i128) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn pow(&self, mut e: u128) -> Self {
        let mut acc = self.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl FieldElement for FpElem {
    fn zero(&self) -> Self {
        FpElem {
            value: 0,
            modulus: self.modulus,
        }
    }
    fn one(&self) -> Self {
        FpElem {
            value: 1 % self.modulus,
            modulus: self.modulus,
        }
    }
    fn from_int(&self, v: i128) -> Self {
        self.prime().elem(v)
    }
    fn add(&self, o: &Self) -> Self {
        FpElem::add(*self, *o)
    }
    fn sub(&self, o: &Self) -> Self {
        FpElem::sub(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        FpElem::mul(*self, *o)
    }
    fn neg(&self) -> Self {
        FpElem::neg(*self)
    }
    fn inv(&self) -> Result<Self> {
        FpElem::inv(*self)
    }
    fn is_zero(&self) -> bool {
        FpElem::is_zero(*self)
    }
    fn pow(&self, e: u128) -> Self {
        FpElem::pow(*self, e)
    }
}

impl FieldElement for ExtElem {
    fn zero(&self) -> Self {
        self.ctx.zero()
    }
    fn one(&self) -> Self {
        self.ctx.one()
    }
    fn from_int(&self, v: i128) -> Self {
        self.ctx.embed(v)
    }
    fn add(&self, o: &Self) -> Self {
        ExtElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ExtElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ExtElem::mul(self, o)
    }
    fn neg(&self) -> Self {
        ExtElem::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        ExtElem::inv(self)
    }
    fn is_zero(&self) -> bool {
        ExtElem::is_zero(self)
    }
    fn pow(&self, e: u128) -> Self {
        ExtElem::pow(self, e)
    }
}
