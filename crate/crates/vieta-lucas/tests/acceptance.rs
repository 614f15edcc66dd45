//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Every check compares the fast implementation against an
//! independent oracle (direct recurrence, exhaustive scan, or closed form).

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use vieta_lucas::closurelab::{anti_derived_find_budgeted, lemma33_check_budgeted, lemma41_check_budgeted, prop21_check};
use vieta_lucas::fieldcore::{
    ext_build, in_base_field, legendre_fp, odd_primes_up_to, FieldElement, OddPrime,
};
use vieta_lucas::lucas::{
    euler_endpoints, identity_check, lucas_uv_fast, v_parameter_shift_check, LucasIdentity,
    LucasParams,
};
use vieta_lucas::periods::{divisors_sorted, lemma12_check, restricted_period};
use vieta_lucas::solver::{
    decide_solvable, find_solution, somer_maximal_count, theorem13_equiv_sweep_with,
    theorem14_check,
};
use vieta_lucas::vieta::{vieta_compose_check, vieta_eval, vieta_period_check};

fn report(number: u32, name: &str, ok: bool, elapsed: Duration) {
    println!(
        "criterion {number} ({name}): {} [{:.2}s]",
        if ok { "pass" } else { "fail" },
        elapsed.as_secs_f64()
    );
    assert!(ok, "criterion {number} ({name}) failed");
}

/// `(P, Q)` grids with `p` not dividing `2PQD`.
fn admissible_pairs(prime: OddPrime) -> Vec<LucasParams<vieta_lucas::fieldcore::FpElem>> {
    let p = prime.get();
    let mut out = Vec::new();
    for pp in 1..p {
        for qq in 1..p {
            let params = LucasParams::from_ints(prime, pp as i128, qq as i128);
            if !params.disc().is_zero() {
                out.push(params);
            }
        }
    }
    out
}

#[test]
fn criterion_1_decision_procedure_exhaustive() {
    let start = Instant::now();
    let r = theorem13_equiv_sweep_with(97, 40, false);
    let elapsed = start.elapsed();
    let ok = r.cases_checked > 0
        && r.counterexamples.is_empty()
        && elapsed < Duration::from_secs(60);
    report(1, "decision procedure vs brute force, p <= 97", ok, elapsed);
}

#[test]
fn criterion_2_divisibility_criterion_exhaustive() {
    let start = Instant::now();
    let mut cases = 0u64;
    let failures: Vec<String> = odd_primes_up_to(61)
        .into_par_iter()
        .flat_map_iter(|prime| {
            let p = prime.get();
            let mut bad = Vec::new();
            for params in admissible_pairs(prime) {
                let eps = legendre_fp(params.disc());
                let span = (p as i128 - eps as i128) as u64;
                for m in divisors_sorted(span) {
                    match theorem14_check(params.p, params.q, m) {
                        Ok(true) => {}
                        other => bad.push(format!(
                            "p={p} P={} Q={} m={m}: {other:?}",
                            params.p.value(),
                            params.q.value()
                        )),
                    }
                }
            }
            bad
        })
        .collect();
    for prime in odd_primes_up_to(61) {
        cases += admissible_pairs(prime).len() as u64;
    }
    let elapsed = start.elapsed();
    let ok =
        cases > 0 && failures.is_empty() && elapsed < Duration::from_secs(120);
    if !failures.is_empty() {
        eprintln!("{failures:?}");
    }
    report(2, "divisor criterion for s(p), p <= 61", ok, elapsed);
}

#[test]
fn criterion_3_period_divisibility_and_parity() {
    let start = Instant::now();
    let failures: Vec<String> = odd_primes_up_to(211)
        .into_par_iter()
        .flat_map_iter(|prime| {
            let p = prime.get();
            let mut bad = Vec::new();
            for params in admissible_pairs(prime) {
                let eps = legendre_fp(params.disc());
                let span = (p as i128 - eps as i128) as u64;
                match restricted_period(&params) {
                    Ok((r, _)) if span % r == 0 => {}
                    other => bad.push(format!("restricted period p={p}: {other:?}")),
                }
                if lemma12_check(&params) != Ok(true) {
                    bad.push(format!(
                        "s parity p={p} P={} Q={}",
                        params.p.value(),
                        params.q.value()
                    ));
                }
            }
            bad
        })
        .collect();
    let elapsed = start.elapsed();
    if !failures.is_empty() {
        eprintln!("{failures:?}");
    }
    report(3, "r | p - eps and 2 | s parity, p <= 211", failures.is_empty(), elapsed);
}

#[test]
fn criterion_4_ladder_matches_recurrence_and_is_fast() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ok = true;
    for pv in [7u64, 97, 10007] {
        let prime = OddPrime::new(pv).unwrap();
        for _ in 0..200 {
            let params = LucasParams::from_ints(
                prime,
                rng.gen_range(0..pv) as i128,
                rng.gen_range(0..pv) as i128,
            );
            // march the recurrence once and compare the ladder at every index
            let mut u0 = params.p.zero();
            let mut u1 = params.p.one();
            let mut v0 = params.p.from_int(2);
            let mut v1 = params.p;
            for n in 0..=2000u128 {
                let fast = lucas_uv_fast(&params, n);
                if fast.u != u0 || fast.v != v0 {
                    ok = false;
                }
                let u2 = params.p.mul(u1).sub(params.q.mul(u0));
                let v2 = params.p.mul(v1).sub(params.q.mul(v0));
                u0 = u1;
                u1 = u2;
                v0 = v1;
                v1 = v2;
            }
        }
    }

    let big = OddPrime::new(1_000_000_007).unwrap();
    let params = LucasParams::from_ints(big, 6, 3);
    let n = 1_000_000_000_000_000_000u128;
    lucas_uv_fast(&params, n); // warm up
    let timer = Instant::now();
    for _ in 0..100 {
        std::hint::black_box(lucas_uv_fast(&params, n));
    }
    let per_call = timer.elapsed() / 100;
    if per_call >= Duration::from_millis(1) {
        ok = false;
    }
    report(4, "ladder vs recurrence and n = 10^18 speed", ok, start.elapsed());
}

#[test]
fn criterion_5_identity_suite() {
    let start = Instant::now();
    let mut ok = true;

    // four addition identities, signed indices included
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for pv in [7u64, 97, 10007] {
        let prime = OddPrime::new(pv).unwrap();
        for _ in 0..10_000 {
            let params = LucasParams::from_ints(
                prime,
                rng.gen_range(0..pv) as i128,
                rng.gen_range(1..pv) as i128,
            );
            let n = rng.gen_range(-100..300i128);
            let m = rng.gen_range(-100..300i128);
            for which in [
                LucasIdentity::UPlusU,
                LucasIdentity::VPlusV,
                LucasIdentity::UMinusU,
                LucasIdentity::VMinusV,
            ] {
                if identity_check(&params, n, m, which) != Ok(true) {
                    eprintln!("identity p={pv} n={n} m={m} {which:?}");
                    ok = false;
                }
            }
        }
    }

    // endpoint closed forms and the four half-index products
    for pv in [7u64, 11, 13, 97] {
        let prime = OddPrime::new(pv).unwrap();
        for _ in 0..100 {
            let params = LucasParams::from_ints(
                prime,
                rng.gen_range(1..pv) as i128,
                rng.gen_range(1..pv) as i128,
            );
            let (up, vp) = euler_endpoints(&params);
            let at_p = lucas_uv_fast(&params, pv as u128);
            if up != at_p.u || vp != at_p.v {
                ok = false;
            }

            let disc = params.disc();
            let half = ((pv - 1) / 2) as u128;
            let d_half = disc.pow(half);
            let q_half = params.q.pow(half);
            let p_pm1 = params.p.pow(pv as u128 - 1);
            let lo = lucas_uv_fast(&params, half);
            let hi = lucas_uv_fast(&params, half + 1);
            let checks = [
                d_half.add(q_half) == lo.v.mul(hi.u),
                params.p.mul(p_pm1.add(q_half)) == lo.v.mul(hi.v),
                d_half.sub(q_half) == lo.u.mul(hi.v),
                params.p.mul(p_pm1.sub(q_half)) == disc.mul(lo.u).mul(hi.u),
            ];
            if checks.iter().any(|c| !c) {
                eprintln!(
                    "half-index products p={pv} P={} Q={}",
                    params.p.value(),
                    params.q.value()
                );
                ok = false;
            }

            // U_{2n} = V_n U_n
            let n = rng.gen_range(0..500u128);
            let at_n = lucas_uv_fast(&params, n);
            if lucas_uv_fast(&params, 2 * n).u != at_n.v.mul(at_n.u) {
                ok = false;
            }
        }
    }

    // parameter shift V_{2r}(y,y)/y^r = V_r(y-2,1)
    for pv in [7u64, 31] {
        let prime = OddPrime::new(pv).unwrap();
        for y in 1..pv {
            if y == 4 {
                continue;
            }
            for r in 0..=50u64 {
                if v_parameter_shift_check(&prime.elem(y as i128), r) != Ok(true) {
                    ok = false;
                }
            }
        }
    }

    // scaling V_n(aP, a^2 Q) = a^n V_n(P, Q) in F_49
    let ctx = ext_build(OddPrime::new(7).unwrap(), 2, 0).unwrap();
    let order = ctx.order() as u64;
    for _ in 0..1000 {
        let a = ctx.element_from_index(rng.gen_range(1..order) as u128);
        let pp = ctx.element_from_index(rng.gen_range(0..order) as u128);
        let qq = ctx.element_from_index(rng.gen_range(0..order) as u128);
        let n = rng.gen_range(0..200u128);
        let base = LucasParams::new(pp.clone(), qq.clone());
        let scaled = LucasParams::new(a.mul(&pp), a.mul(&a).mul(&qq));
        if lucas_uv_fast(&scaled, n).v != a.pow(n).mul(&lucas_uv_fast(&base, n).v) {
            ok = false;
        }
    }

    // composition V_{nm}(P,Q) = V_n(V_m(P,Q), Q^m)
    for pv in [7u64, 97, 10007] {
        let prime = OddPrime::new(pv).unwrap();
        for _ in 0..10_000 {
            let pp = prime.elem(rng.gen_range(0..pv) as i128);
            let qq = prime.elem(rng.gen_range(0..pv) as i128);
            let n = rng.gen_range(0..200u128);
            let m = rng.gen_range(0..200u128);
            if !vieta_compose_check(&pp, &qq, n, m) {
                ok = false;
            }
        }
    }

    // periodicity of V_n(x, 1) with period p - eps
    for prime in odd_primes_up_to(61) {
        let p = prime.get();
        for x in 0..p {
            let x = prime.elem(x as i128);
            if x.mul(x).sub(x.from_int(4)).is_zero() {
                continue;
            }
            if vieta_period_check(x, 2 * (p + 1)) != Ok(true) {
                ok = false;
            }
        }
    }

    report(5, "identity suite", ok, start.elapsed());
}

#[test]
fn criterion_6_extension_field_suite() {
    let start = Instant::now();
    // witness search leans on the constructive phase past this scan cap
    let budget = 200_000u64;
    let pool_budget = 2_000_000u64;
    let mut failures: Vec<String> = Vec::new();

    // base-field membership criterion, exhaustive over F_9 and F_25
    for (pv, k) in [(3u64, 2usize), (5, 2)] {
        let ctx = ext_build(OddPrime::new(pv).unwrap(), k, 0).unwrap();
        let mut nonbase = 0u64;
        for pp in ctx.elements() {
            for qq in ctx.elements() {
                let params = LucasParams::new(pp.clone(), qq.clone());
                if pp.is_zero() || qq.is_zero() || params.disc().is_zero() {
                    continue;
                }
                if prop21_check(&pp, &qq) != Ok(true) {
                    failures.push(format!("base membership p={pv} P={pp:?} Q={qq:?}"));
                }
                if !in_base_field(&pp.mul(&pp).mul(&qq.inv().unwrap())) {
                    nonbase += 1;
                }
            }
        }
        if nonbase == 0 {
            failures.push(format!("base membership p={pv}: one-sided grid"));
        }
    }

    // anti-derived witnesses and both biconditionals over the full grid
    let mut grid = Vec::new();
    for pv in [5u64, 7, 11] {
        let prime = OddPrime::new(pv).unwrap();
        for params in admissible_pairs(prime) {
            for r in [2u64, 3, 4, 6] {
                grid.push((prime, params.clone(), r));
            }
        }
    }
    let grid_failures: Vec<String> = grid
        .par_iter()
        .flat_map_iter(|(prime, params, r)| {
            let mut bad = Vec::new();
            let p = prime.get();
            let tag = format!("p={p} P={} Q={} r={r}", params.p.value(), params.q.value());
            match anti_derived_find_budgeted(params, *r, 6, budget) {
                Ok(w) => {
                    if w.r != *r || w.checked_up_to < 30 {
                        bad.push(format!("witness invariants {tag}"));
                    }
                }
                Err(e) => bad.push(format!("witness {tag}: {e:?}")),
            }
            match lemma41_check_budgeted(params.p, params.q, *r, 6, pool_budget) {
                Ok(true) => {}
                other => bad.push(format!("solvability transfer {tag}: {other:?}")),
            }
            let eps = legendre_fp(params.disc());
            let span = (p as i128 - eps as i128) as u64;
            if span % r == 0 {
                match lemma33_check_budgeted(params.p, params.q, *r, 6, budget) {
                    Ok(true) => {}
                    other => bad.push(format!("divisibility transfer {tag}: {other:?}")),
                }
            }
            bad
        })
        .collect();
    failures.extend(grid_failures);

    let elapsed = start.elapsed();
    if !failures.is_empty() {
        eprintln!("{failures:?}");
    }
    report(6, "extension-field suite", failures.is_empty(), elapsed);
}

#[test]
fn criterion_7_maximal_period_count() {
    let start = Instant::now();
    let mut ok = true;
    for prime in odd_primes_up_to(31) {
        let (count, expected) = somer_maximal_count(prime);
        if count != expected {
            eprintln!("p={} count={count} expected={expected}", prime.get());
            ok = false;
        }
    }
    report(7, "maximal restricted period count", ok, start.elapsed());
}

#[test]
fn criterion_8_witness_soundness() {
    let start = Instant::now();
    let failures: Vec<String> = odd_primes_up_to(97)
        .into_par_iter()
        .flat_map_iter(|prime| {
            let p = prime.get();
            let mut bad = Vec::new();
            for n in 1..=40u64 {
                for c in 0..p {
                    let ce = prime.elem(c as i128);
                    if ce.is_zero() || ce.mul(ce).sub(ce.from_int(4)).is_zero() {
                        continue;
                    }
                    let verdict = decide_solvable(n, c as i128, prime).unwrap();
                    match find_solution(n, c as i128, prime) {
                        Ok(Some(x)) => {
                            if !verdict.solvable || vieta_eval(n as u128, &x) != ce {
                                bad.push(format!("p={p} n={n} C={c}"));
                            }
                        }
                        Ok(None) => {
                            if verdict.solvable {
                                bad.push(format!("missing witness p={p} n={n} C={c}"));
                            }
                        }
                        Err(e) => bad.push(format!("p={p} n={n} C={c}: {e:?}")),
                    }
                }
            }
            bad
        })
        .collect();
    let elapsed = start.elapsed();
    if !failures.is_empty() {
        eprintln!("{failures:?}");
    }
    report(8, "witness soundness on the decision grid", failures.is_empty(), elapsed);
}
