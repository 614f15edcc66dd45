//! Vieta-Lucas polynomials `V_m(X, 1)`: exact integer coefficients, modular
//! evaluation through the parameter ladder, the composition law
//! `V_{nm}(P,Q) = V_n(V_m(P,Q), Q^m)`, index periodicity, and the index
//! inversion underpinning witness recovery.
//!
//! Two evaluation paths are kept deliberately: coefficients + Horner validate
//! the ladder and vice versa. The ladder is the production path for large `m`.

use num_bigint::BigInt;

use crate::fieldcore::{gcd, inv_mod_u64, legendre_fp, FieldElement, FpElem, OddPrime};
use crate::lucas::{lucas_uv_fast, LucasParams};
use crate::{Error, Result};

/// Default cap on the polynomial degree for exact coefficient expansion.
pub const DEFAULT_COEFF_BUDGET: u32 = 512;

/// `V_m(X, 1)` as an exact integer polynomial, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VietaPoly {
    pub m: u32,
    pub coeffs: Vec<BigInt>,
}

impl VietaPoly {
    /// Horner evaluation of the exact coefficients reduced mod p.
    pub fn eval_mod(&self, x: FpElem) -> FpElem {
        let p = BigInt::from(x.modulus());
        let mut acc = x.zero();
        for c in self.coeffs.iter().rev() {
            let r = ((c % &p) + &p) % &p;
            let r: u64 = r.try_into().expect("reduced below p");
            acc = acc.mul(x).add(x.from_int(r as i128));
        }
        acc
    }

    /// Coefficients as decimal strings, lowest degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Exact coefficients of `V_m(X,1)` via the recurrence
/// `V_m = X·V_{m-1} - V_{m-2}` with `V_0 = 2`, `V_1 = X`.
pub fn vieta_coeffs(m: u32) -> Result<VietaPoly> {
    vieta_coeffs_budgeted(m, DEFAULT_COEFF_BUDGET)
}

pub fn vieta_coeffs_budgeted(m: u32, budget: u32) -> Result<VietaPoly> {
    if m > budget {
        return Err(Error::BudgetExceeded {
            needed: m as u128,
            cap: budget as u64,
        });
    }
    let mut prev = vec![BigInt::from(2)]; // V_0
    if m == 0 {
        return Ok(VietaPoly { m, coeffs: prev });
    }
    let mut cur = vec![BigInt::from(0), BigInt::from(1)]; // V_1 = X
    for _ in 2..=m {
        let mut next = vec![BigInt::from(0); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    Ok(VietaPoly { m, coeffs: cur })
}

/// `V_m(x, 1)` in the field of `x`, by the doubling ladder with parameters
/// `(P, Q) = (x, 1)`; never materializes coefficients, so `m` may be huge.
pub fn vieta_eval<F: FieldElement>(m: u128, x: &F) -> F {
    let params = LucasParams::new(x.clone(), x.one());
    lucas_uv_fast(&params, m).v
}

/// `V_{nm}(P,Q) = V_n(V_m(P,Q), Q^m)`; expected always-true.
pub fn vieta_compose_check<F: FieldElement>(p: &F, q: &F, n: u128, m: u128) -> bool {
    let params = LucasParams::new(p.clone(), q.clone());
    let lhs = lucas_uv_fast(&params, n.checked_mul(m).expect("index overflow")).v;
    let inner = lucas_uv_fast(&params, m).v;
    let outer = LucasParams::new(inner, q.pow(m));
    let rhs = lucas_uv_fast(&outer, n).v;
    lhs == rhs
}

/// `V_{n + (p - ε)}(P, 1) ≡ V_n(P, 1) (mod p)` for `n = 0..=count`, where
/// `ε = ((P^2 - 4)/p)` must be nonzero.
pub fn vieta_period_check(x: FpElem, count: u64) -> Result<bool> {
    let eps = epsilon_of(x)?;
    let span = (x.modulus() as i128 - eps as i128) as u128;
    for n in 0..=count as u128 {
        if vieta_eval(n + span, &x) != vieta_eval(n, &x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ε = ((x^2 - 4)/p)`, erroring when `p | x^2 - 4`.
pub fn epsilon_of(x: FpElem) -> Result<i64> {
    let d = x.mul(x).sub(x.from_int(4));
    let eps = legendre_fp(d);
    if eps == 0 {
        return Err(Error::EpsilonZero);
    }
    Ok(eps)
}

/// The inverse index: `k` in `[1, p-ε)` with `k·h ≡ 1 (mod p-ε)`, so that
/// `x ↦ V_k(x,1)` inverts `x ↦ V_h(x,1)` on the matching elements of `F_p`.
pub fn vieta_index_inverse(h: u64, p: OddPrime, epsilon: i64) -> Result<u64> {
    assert!(epsilon == 1 || epsilon == -1, "epsilon must be ±1");
    let span = (p.get() as i128 - epsilon as i128) as u64;
    if gcd(h % span, span).unwrap_or(span) != 1 {
        return Err(Error::NotCoprime);
    }
    inv_mod_u64(h % span, span).ok_or(Error::NotCoprime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcore::odd_primes_up_to;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    fn ints(v: &VietaPoly) -> Vec<i64> {
        v.coeffs.iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(ints(&vieta_coeffs(0).unwrap()), vec![2]);
        assert_eq!(ints(&vieta_coeffs(1).unwrap()), vec![0, 1]);
        assert_eq!(ints(&vieta_coeffs(2).unwrap()), vec![-2, 0, 1]);
        assert_eq!(ints(&vieta_coeffs(3).unwrap()), vec![0, -3, 0, 1]);
        assert_eq!(ints(&vieta_coeffs(4).unwrap()), vec![2, 0, -4, 0, 1]);
        assert!(matches!(
            vieta_coeffs_budgeted(100, 50),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn coefficients_are_monic_and_fixed_at_pm2() {
        for m in 1..=64u32 {
            let v = vieta_coeffs(m).unwrap();
            assert_eq!(v.coeffs.len(), m as usize + 1);
            assert_eq!(v.coeffs[m as usize], BigInt::from(1));
            // V_m(2) = 2 and V_m(-2) = 2·(-1)^m
            let two: BigInt = v
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(2).pow(i as u32))
                .sum();
            assert_eq!(two, BigInt::from(2));
            let mtwo: BigInt = v
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(-2).pow(i as u32))
                .sum();
            assert_eq!(mtwo, BigInt::from(2) * BigInt::from(-1).pow(m));
        }
    }

    #[test]
    fn eval_examples() {
        let x = p(7).elem(5);
        assert_eq!(vieta_eval(1, &x), x);
        assert_eq!(vieta_eval(3, &p(7).elem(2)).value(), 2);
        assert_eq!(vieta_eval(2, &p(7).elem(1)).value(), 6); // 1 - 2 ≡ 6
    }

    #[test]
    fn coefficient_and_ladder_paths_agree() {
        for prime in [p(7), p(97)] {
            for m in 0..=64u32 {
                let poly = vieta_coeffs(m).unwrap();
                for x in 0..prime.get() {
                    let x = prime.elem(x as i128);
                    assert_eq!(poly.eval_mod(x), vieta_eval(m as u128, &x));
                }
            }
        }
    }

    #[test]
    fn compose_examples() {
        let pp = p(97).elem(13);
        let qq = p(97).elem(40);
        assert!(vieta_compose_check(&pp, &qq, 1, 9));
        assert!(vieta_compose_check(&pp, &qq, 5, 0));
        for (n, m) in [(2u128, 3u128), (7, 7), (12, 5), (0, 0)] {
            assert!(vieta_compose_check(&pp, &qq, n, m));
        }
    }

    #[test]
    fn period_examples() {
        // V_{p-ε}(P,1) = 2, checked through the general period test
        let x = p(7).elem(1);
        assert!(vieta_period_check(x, 20).unwrap());
        let eps = epsilon_of(x).unwrap();
        let span = (7 - eps) as u128;
        assert_eq!(vieta_eval(span, &x).value(), 2);

        assert_eq!(vieta_period_check(p(7).elem(2), 5), Err(Error::EpsilonZero));
    }

    #[test]
    fn index_inverse_examples() {
        assert_eq!(vieta_index_inverse(1, p(7), -1).unwrap(), 1);
        assert_eq!(vieta_index_inverse(3, p(7), -1).unwrap(), 3); // 3·3 = 9 ≡ 1 (mod 8)
        assert_eq!(vieta_index_inverse(2, p(7), -1), Err(Error::NotCoprime));
    }

    #[test]
    fn inverse_map_is_identity_where_defined() {
        for prime in odd_primes_up_to(61) {
            for h in 1..50u64 {
                for x in 0..prime.get() {
                    let x = prime.elem(x as i128);
                    let Ok(eps) = epsilon_of(x) else { continue };
                    let span = (prime.get() as i128 - eps as i128) as u64;
                    if crate::fieldcore::gcd(h % span, span).unwrap_or(0) != 1 {
                        continue;
                    }
                    let k = vieta_index_inverse(h, prime, eps).unwrap();
                    let y = vieta_eval(h as u128, &x);
                    assert_eq!(vieta_eval(k as u128, &y), x, "p={prime} h={h} x={x:?}");
                }
            }
        }
    }

    #[test]
    fn full_image_bijectivity_small() {
        // h coprime to both p-1 and p+1 makes x -> V_h(x,1) a bijection on F_p
        for prime in odd_primes_up_to(31) {
            let pv = prime.get();
            for h in 1..40u64 {
                if gcd(h, pv - 1).unwrap() != 1 || gcd(h, pv + 1).unwrap() != 1 {
                    continue;
                }
                let mut image: Vec<u64> = (0..pv)
                    .map(|x| vieta_eval(h as u128, &prime.elem(x as i128)).value())
                    .collect();
                image.sort_unstable();
                image.dedup();
                assert_eq!(image.len() as u64, pv, "p={pv} h={h}");
            }
        }
    }
}
