//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact rational equalities; the only numeric tolerances are the wall-clock
//! limits below.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use nfdual::consistent::{
    boundedness_witness, check_consistency, check_galois_invariance, combine, evaluate,
    EvaluationContext,
};
use nfdual::constructions::{
    class_number_imag_quadratic, invariant_map_from_base, maximal_subfields,
    perturbed_open_subgroup_map, qi_worked_example, single_place_element, step_radius,
    tower_map_prefix, DEFAULT_SEARCH_BOUND,
};
use nfdual::corpus;
use nfdual::functionals::{
    extends_omega_check, omega_canonical, phi, summatory_chowla, summatory_polya,
};
use nfdual::places::{
    log_abs, places_above, places_over, relative_local_degree, valuation, Normalization, Place,
};
use nfdual::rational::{int, rat};
use nfdual::{ConsistentMap, Error, FieldEmbedding, NumberField, PrimeWeights, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    element, multiplicative_order, norm_by_matrix, omega_rational_trial, omega_trial, vp_rational,
};

/// Criteria expected to fail, with the reason. Each is still run in full and
/// must fail for exactly this reason; see the tower-prefix criterion.
const KNOWN_RED: &[(&str, &str)] = &[(
    "8",
    "5 = 5 mod 8 has residue degree 2 in Q(zeta_8), so the second step of Q < Q(i) < Q(zeta_8) does not split above 5",
)];

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn gaussian() -> NumberField {
    NumberField::parse("x^2+1").unwrap()
}

fn rationals_place(p: u64) -> Place {
    places_above(&NumberField::rationals(), p)
        .unwrap()
        .remove(0)
}

fn criterion_1() -> Check {
    let c = qi_worked_example();
    let ctx = corpus::context();
    let q = NumberField::rationals();
    for p in [2, 3, 5, 7, 11] {
        let v = evaluate(&c, &q, &rationals_place(p), &ctx).map_err(err)?;
        ensure(v == int(-1), || format!("c(Q,{p}) = {v}"))?;
    }
    let om = extends_omega_check(&c, &[2, 3, 5, 7, 11], &ctx).map_err(err)?;
    ensure(om.holds, || format!("extends_omega_check: {:?}", om.values))?;
    let k = gaussian();
    let iota = FieldEmbedding::from_rational(&q, &k).unwrap();
    let inv = check_galois_invariance(&c, &q, &iota, &rationals_place(5), &ctx).map_err(err)?;
    ensure(!inv.holds, || "Q-invariance unexpectedly holds at 5".into())?;
    let w = inv.first_violation().unwrap();
    ensure(w.actual == rat(-1, 3) && w.expected == rat(-1, 2), || {
        format!("witness {} vs {}", w.actual, w.expected)
    })?;
    let a = phi(&c, &k.from_i64s(&[2, -1]), 1, &ctx).map_err(err)?;
    let b = phi(&c, &k.from_i64s(&[2, 1]), 1, &ctx).map_err(err)?;
    ensure(&a + &b == int(1), || format!("sum {a} + {b}"))?;
    let got: BTreeSet<Rational> = [a.clone(), b.clone()].into();
    ensure(got == [rat(1, 3), rat(2, 3)].into(), || {
        format!("values {a}, {b}")
    })?;
    Ok(format!(
        "phi(2-i) = {a}, phi(2+i) = {b}, witness -1/3 vs -1/2"
    ))
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let c = ConsistentMap::canonical();
    let ctx = corpus::context();
    let q = NumberField::rationals();
    for _ in 0..200 {
        let mut n: i64 = 0;
        while n == 0 {
            n = rng.gen_range(-5000..=5000);
        }
        let r = rat(n, rng.gen_range(1..=5000));
        let got = phi(&c, &q.from_rational(r.clone()), 1, &ctx).map_err(err)?;
        ensure(got == int(omega_rational_trial(&r)), || {
            format!("phi({r}) = {got}")
        })?;
    }
    let mut checked = 0;
    for k in [gaussian(), NumberField::quadratic(-5).unwrap()] {
        let mut done = 0;
        while done < 50 {
            let a = element(&k, &[rng.gen_range(-40..=40), rng.gen_range(-40..=40)]);
            if a.is_zero() {
                continue;
            }
            let got = phi(&c, &a, 1, &ctx).map_err(err)?;
            // oracle: Ω of the determinant norm by trial division, over [K:Q]
            let expected = rat(omega_rational_trial(&norm_by_matrix(&a)), 2);
            ensure(got == expected, || {
                format!("phi({a}) = {got}, expected {expected}")
            })?;
            ensure(got == omega_canonical(&a).map_err(err)?, || {
                format!("omega_canonical({a})")
            })?;
            done += 1;
            checked += 1;
        }
    }
    Ok(format!("200 rationals, {checked} quadratic elements"))
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let fields = corpus::fields();
    let (mut pairs, mut skipped) = (0, 0);
    for i in 0..100 {
        let k = &fields[i % fields.len()];
        let coords: Vec<i64> = (0..k.degree()).map(|_| rng.gen_range(-12..=12)).collect();
        let a = element(k, &coords);
        if a.is_zero() {
            continue;
        }
        let n = norm_by_matrix(&a);
        let primes: BTreeSet<u64> = [n.numer(), n.denom()]
            .into_iter()
            .flat_map(|x| nfdual::arith::prime_divisors(x).unwrap())
            .collect();
        for p in primes {
            let ws = match places_above(k, p) {
                Ok(ws) => ws,
                Err(Error::NonMaximalOrderAtP { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(err(e)),
            };
            let mut s = 0i64;
            for w in &ws {
                s += w.f() as i64 * valuation(&a, w).map_err(err)?.value;
            }
            ensure(s == vp_rational(&n, p), || {
                format!("{a} in {}: sum {s} at {p}", k.poly())
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} (element, prime) pairs, {skipped} unsupported primes skipped"
    ))
}

fn criterion_4() -> Check {
    let mut count = 0;
    for k in corpus::fields() {
        for p in corpus::small_primes(100) {
            let Ok(ws) = places_above(&k, p) else {
                continue;
            };
            let s: u32 = ws.iter().map(|w| w.e() * w.f()).sum();
            ensure(s as usize == k.degree(), || {
                format!("{} at {p}: {s}", k.poly())
            })?;
            count += 1;
        }
    }
    let mut places = 0;
    // Q(√2, √3) in the presentation x^4 - 4x^2 + 1 is maximal at 2 as well
    for t in [corpus::gaussian_tower(), corpus::sqrt2_tower_maximal()] {
        for p in corpus::small_primes(50) {
            for iota in &t.steps {
                let vs = places_above(iota.source(), p).map_err(err)?;
                for v in vs {
                    let ws = places_over(iota.target(), iota, &v).map_err(err)?;
                    let s: Rational = ws.iter().map(|w| relative_local_degree(w, &v)).sum();
                    ensure(s == int(iota.relative_degree() as i64), || {
                        format!("{} at {p}: {s}", t.name)
                    })?;
                    places += 1;
                }
            }
        }
    }
    Ok(format!(
        "{count} (field, prime) sums, {places} tower places"
    ))
}

fn criterion_5() -> Check {
    let mut notes = Vec::new();
    for (poly, p, disc) in [("x^2+1", 5u64, -4i64), ("x^2+5", 2, -20)] {
        let k = NumberField::parse(poly).unwrap();
        let h = class_number_imag_quadratic(disc).map_err(err)?;
        let w = places_above(&k, p).map_err(err)?.remove(0);
        let s = single_place_element(&k, &w, DEFAULT_SEARCH_BOUND).map_err(err)?;
        let npk = num_bigint::BigInt::from(p).pow(w.f() * s.k);
        ensure(s.norm == npk, || {
            format!("|N(beta)| = {} in {poly}", s.norm)
        })?;
        ensure(s.beta.norm().numer().magnitude() == npk.magnitude(), || {
            "norm mismatch".into()
        })?;
        ensure(s.k as u64 == h, || {
            format!("k = {} but h = {h} in {poly}", s.k)
        })?;
        for other in places_above(&k, p)
            .map_err(err)?
            .iter()
            .filter(|x| **x != w)
        {
            ensure(valuation(&s.beta, other).map_err(err)?.value == 0, || {
                "valuation at another place".into()
            })?;
        }
        let display =
            -int(w.e() as i64) * log_abs(&s.beta, &w, Normalization::Absolute).map_err(err)?;
        ensure(display == int(h as i64), || {
            format!("-e log_p |beta| = {display} in {poly}")
        })?;
        notes.push(format!("{poly}: beta = {}, k = h = {h}", s.beta));
    }
    // a^2 + 5 b^2 = 2 has no solution, so no element of norm 2 exists
    ensure(
        (-2i64..=2).all(|a| (-1i64..=1).all(|b| a * a + 5 * b * b != 2)),
        || "norm 2 representable".into(),
    )?;
    Ok(notes.join("; "))
}

fn random_table(rng: &mut ChaCha8Rng, k: &NumberField, primes: &[u64]) -> Vec<(Place, Rational)> {
    let mut out = Vec::new();
    for &p in primes {
        for w in places_above(k, p).unwrap() {
            if rng.gen_bool(0.7) {
                out.push((w, rat(rng.gen_range(-20..=20), rng.gen_range(1..=9))));
            }
        }
    }
    out
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let primes = corpus::small_primes(30);
    let quadratic_embeddings = corpus::quadratic_embeddings();
    let setups = [
        (
            gaussian(),
            [
                NumberField::cyclotomic(8).unwrap(),
                NumberField::cyclotomic(12).unwrap(),
            ],
        ),
        (
            NumberField::quadratic(2).unwrap(),
            [
                NumberField::cyclotomic(8).unwrap(),
                corpus::biquadratic_2_3_maximal(),
            ],
        ),
    ];
    let mut evaluations = 0;
    for (k, overfields) in &setups {
        let q = NumberField::rationals();
        let ups: Vec<FieldEmbedding> = quadratic_embeddings
            .iter()
            .filter(|e| e.source() == k)
            .cloned()
            .collect();
        for _ in 0..20 {
            let table = random_table(&mut rng, k, &primes);
            let c =
                invariant_map_from_base(k, &table, PrimeWeights::constant(int(-1))).map_err(err)?;
            let again =
                invariant_map_from_base(k, &table, PrimeWeights::constant(int(-1))).map_err(err)?;
            let ctxs: Vec<EvaluationContext> = overfields
                .iter()
                .map(|l| corpus::context().with_overfield(l.clone()))
                .collect();
            for _ in 0..30 {
                let f = if rng.gen_bool(0.5) {
                    q.clone()
                } else {
                    k.clone()
                };
                let p = primes[rng.gen_range(0..primes.len())];
                let us = places_above(&f, p).map_err(err)?;
                let u = &us[rng.gen_range(0..us.len())];
                let a = evaluate(&c, &f, u, &ctxs[0]).map_err(err)?;
                let b = evaluate(&c, &f, u, &ctxs[1]).map_err(err)?;
                let a2 = evaluate(&again, &f, u, &ctxs[1]).map_err(err)?;
                ensure(a == b && b == a2, || {
                    format!("path dependence at ({}, {p}): {a} vs {b}", f.poly())
                })?;
                evaluations += 1;
            }
            let ctx = corpus::context();
            let base = FieldEmbedding::from_rational(&q, k).unwrap();
            for p in &primes {
                for v in places_above(&q, *p).unwrap() {
                    ensure(
                        check_consistency(&c, &base, &v, &ctx).map_err(err)?.holds,
                        || "Q < K".into(),
                    )?;
                }
                for iota in &ups {
                    if places_above(iota.target(), *p).is_err() {
                        continue;
                    }
                    for v in places_above(k, *p).unwrap() {
                        let cons = check_consistency(&c, iota, &v, &ctx).map_err(err)?;
                        ensure(cons.holds, || {
                            format!("consistency at {p} into {}", iota.target().poly())
                        })?;
                        let inv = check_galois_invariance(&c, k, iota, &v, &ctx).map_err(err)?;
                        ensure(inv.holds, || {
                            format!("invariance at {p} into {}", iota.target().poly())
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{evaluations} probe pairs across two overfields each"
    ))
}

/// Greedy split-prime assignment from Legendre symbols: a place of
/// `Q(√d_i)` above an odd `p ∤ 6` splits in `Q(√d_i, √d_j)` iff `d_j` is a
/// square in its residue field.
fn split_prime_oracle(subfields: &[(i64, i64)]) -> Vec<u64> {
    let legendre = |a: i64, p: u64| {
        let a = a.rem_euclid(p as i64) as u64;
        let mut r = 1u64;
        for _ in 0..(p - 1) / 2 {
            r = r * a % p;
        }
        r == 1
    };
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for &(d, other) in subfields {
        let p = (5u64..)
            .filter(|&p| corpus::small_primes(p + 1).last() == Some(&p) && !used.contains(&p))
            .find(|&p| !legendre(d, p) || legendre(other, p))
            .unwrap();
        used.insert(p);
        out.push(p);
    }
    out
}

fn criterion_7() -> Check {
    let x = PrimeWeights::constant(int(-1));
    let q = NumberField::rationals();
    let k = gaussian();
    let subs = maximal_subfields(&k).map_err(err)?;
    let (c, scheme) = perturbed_open_subgroup_map(&k, &subs, &x, 10_000).map_err(err)?;
    ensure(scheme.is_balanced(), || "unbalanced scheme".into())?;
    let split = scheme.places[0].base_place.prime();
    ensure(split == 5, || format!("split prime {split}"))?;
    let ctx = corpus::context();
    let probes = corpus::small_primes(60);
    ensure(probes.contains(&split), || "split prime not probed".into())?;
    for &p in &probes {
        let v = evaluate(&c, &q, &rationals_place(p), &ctx).map_err(err)?;
        ensure(v == int(-1), || format!("c(Q,{p}) = {v}"))?;
    }
    ensure(
        extends_omega_check(&c, &probes, &ctx).map_err(err)?.holds,
        || "extends Omega".into(),
    )?;
    let inv =
        check_galois_invariance(&c, &q, &subs[0], &rationals_place(split), &ctx).map_err(err)?;
    ensure(!inv.holds, || {
        "Q-invariance holds at the split prime".into()
    })?;

    let b = NumberField::biquadratic(2, 3).unwrap();
    let subs = maximal_subfields(&b).map_err(err)?;
    let (c, scheme) = perturbed_open_subgroup_map(&b, &subs, &x, 10_000).map_err(err)?;
    let primes = scheme.primes();
    let distinct: BTreeSet<u64> = primes.iter().copied().collect();
    ensure(primes.len() == 3 && distinct.len() == 3, || {
        format!("split primes {primes:?}")
    })?;
    let ds: Vec<i64> = subs
        .iter()
        .map(|e| -i64::try_from(e.source().poly().coeff(0)).unwrap())
        .collect();
    let pairs: Vec<(i64, i64)> = ds
        .iter()
        .map(|&d| (d, ds.iter().copied().find(|&o| o != d).unwrap()))
        .collect();
    let oracle = split_prime_oracle(&pairs);
    ensure(primes == oracle, || {
        format!("split primes {primes:?}, oracle {oracle:?}")
    })?;
    let ctx = corpus::context().with_embeddings(subs.clone());
    for (pp, iota) in scheme.places.iter().zip(&subs) {
        let inv =
            check_galois_invariance(&c, iota.source(), iota, &pp.base_place, &ctx).map_err(err)?;
        ensure(!inv.holds, || {
            format!(
                "invariance holds for Q(sqrt {})",
                -iota.source().poly().coeff(0)
            )
        })?;
        let v = evaluate(&c, &q, &rationals_place(pp.base_place.prime()), &ctx).map_err(err)?;
        ensure(v == int(-1), || "base value moved".into())?;
    }
    Ok(format!(
        "Q(i): split prime {split}; Q(sqrt 2, sqrt 3): split primes {primes:?}"
    ))
}

/// Exact checks of a three-level prefix at `q`: ascent at both steps,
/// ε strictly inside `1 ± 2^{-i-1}`, and failure of Q-invariance.
fn check_tower_prefix(q: u64) -> Check {
    let t = corpus::gaussian_tower();
    let prefix = tower_map_prefix(&t.steps, q, &PrimeWeights::constant(int(-1)), 3).map_err(err)?;
    let ConsistentMap::TowerDefined(tower) = &prefix.map else {
        return Err("not a tower map".into());
    };
    for (i, iota) in t.steps.iter().enumerate() {
        for v in places_above(iota.source(), q).map_err(err)? {
            let rhs: Rational = places_over(iota.target(), iota, &v)
                .map_err(err)?
                .iter()
                .map(|w| tower.d(i + 1, w))
                .sum();
            ensure(tower.d(i, &v) == rhs, || {
                format!("ascent at step {}", i + 1)
            })?;
        }
    }
    for e in &prefix.epsilons {
        let delta = Rational::new(1.into(), num_bigint::BigInt::from(1u32) << (e.step + 1));
        ensure(step_radius(e.step) == delta, || "radius".into())?;
        let inside = int(1) - &delta < e.epsilon && e.epsilon < int(1) + &delta;
        ensure(inside && e.epsilon != int(1), || {
            format!("epsilon {} at step {}", e.epsilon, e.step)
        })?;
    }
    let qf = NumberField::rationals();
    let inv = check_galois_invariance(
        &prefix.map,
        &qf,
        &t.steps[0],
        &rationals_place(q),
        &corpus::context(),
    )
    .map_err(err)?;
    ensure(!inv.holds, || "Q-invariance holds".into())?;
    Ok(format!("{} epsilons", prefix.epsilons.len()))
}

fn criterion_8() -> Check {
    // oracle: the residue degree of 5 in Q(ζ_8) is its order mod 8
    let f = multiplicative_order(5, 8);
    let t = corpus::gaussian_tower();
    let upper = t.steps[1].target();
    let ws = places_above(upper, 5).map_err(err)?;
    ensure(ws.iter().all(|w| w.f() as u64 == f), || {
        "residue degrees".into()
    })?;
    check_tower_prefix(5)
}

fn criterion_8_variant() -> Check {
    ensure(multiplicative_order(17, 8) == 1, || "17 mod 8".into())?;
    check_tower_prefix(17).map(|s| format!("q = 17: {s}"))
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let k = gaussian();
    let q = NumberField::rationals();
    let ctx = corpus::context();
    let primes = corpus::small_primes(30);
    let random_map = |rng: &mut ChaCha8Rng| -> ConsistentMap {
        match rng.gen_range(0..4) {
            0 => ConsistentMap::canonical(),
            1 => qi_worked_example(),
            2 => {
                let mut w =
                    PrimeWeights::constant(rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
                for _ in 0..3 {
                    w = w.with(
                        primes[rng.gen_range(0..primes.len())],
                        rat(rng.gen_range(-5..=5), 3),
                    );
                }
                ConsistentMap::degree_proportional(w)
            }
            _ => {
                let table = random_table(rng, &k, &[5, 13]);
                invariant_map_from_base(&k, &table, PrimeWeights::constant(int(1))).unwrap()
            }
        }
    };
    for i in 0..500 {
        let field = if i % 5 == 0 { &q } else { &k };
        let elt = |rng: &mut ChaCha8Rng| loop {
            let a = element(field, &[rng.gen_range(-30..=30), rng.gen_range(-30..=30)]);
            if !a.is_zero() {
                return a;
            }
        };
        let (a, b) = (elt(&mut rng), elt(&mut rng));
        let (c1, c2) = (random_map(&mut rng), random_map(&mut rng));
        let r = rat(rng.gen_range(-6..=6), rng.gen_range(1..=6));
        let sum = combine(vec![(int(1), c1.clone()), (r.clone(), c2.clone())]);
        let lhs = phi(&sum, &a, 1, &ctx).map_err(err)?;
        let rhs = phi(&c1, &a, 1, &ctx).map_err(err)? + &r * phi(&c2, &a, 1, &ctx).map_err(err)?;
        ensure(lhs == rhs, || format!("additivity in c at {a}"))?;
        let ab = a.checked_mul(&b).unwrap();
        let lhs = phi(&c1, &ab, 1, &ctx).map_err(err)?;
        let rhs = phi(&c1, &a, 1, &ctx).map_err(err)? + phi(&c1, &b, 1, &ctx).map_err(err)?;
        ensure(lhs == rhs, || format!("additivity in alpha at {a}, {b}"))?;
    }
    let mut witnesses = 0;
    let fields = [
        q.clone(),
        k.clone(),
        NumberField::quadratic(-5).unwrap(),
        NumberField::quadratic(-2).unwrap(),
    ];
    for c in [ConsistentMap::canonical(), qi_worked_example()] {
        for f in &fields {
            for &p in &primes {
                for w in places_above(f, p).map_err(err)? {
                    let Ok(value) = evaluate(&c, f, &w, &ctx) else {
                        continue;
                    };
                    if value == int(0) {
                        continue;
                    }
                    let s = single_place_element(f, &w, DEFAULT_SEARCH_BOUND).map_err(err)?;
                    let x = phi(&c, &s.beta, 1, &ctx).map_err(err)?;
                    ensure(x != int(0), || {
                        format!("phi vanishes on the special element of {}", f.poly())
                    })?;
                    witnesses += 1;
                }
            }
        }
    }
    Ok(format!(
        "500 additivity cases, {witnesses} injectivity witnesses"
    ))
}

fn criterion_10() -> Check {
    let ctx = corpus::context();
    let fields = [
        NumberField::rationals(),
        gaussian(),
        NumberField::cyclotomic(8).unwrap(),
        NumberField::cyclotomic(12).unwrap(),
    ];
    let mut probes = Vec::new();
    for f in &fields {
        for p in corpus::small_primes(30) {
            for w in places_above(f, p).map_err(err)? {
                probes.push((f.clone(), w));
            }
        }
    }
    let canonical = ConsistentMap::canonical();
    for probe in corpus::probe_places(&corpus::small_primes(30)).map_err(err)? {
        let w = boundedness_witness(&canonical, std::slice::from_ref(&probe), &ctx).map_err(err)?;
        ensure(w.max == int(1), || {
            format!("canonical witness {} at {}", w.max, probe.0.poly())
        })?;
    }
    let w = boundedness_witness(&qi_worked_example(), &probes, &ctx).map_err(err)?;
    let expected = std::cmp::max(int(1), rat(4, 3));
    ensure(w.max == expected, || format!("qi witness {}", w.max))?;
    Ok(format!("qi witness {} over {} probes", w.max, probes.len()))
}

fn criterion_11() -> Check {
    // oracle: running sum of (-1)^Ω(n) by trial division
    let mut running = vec![0i64];
    for n in 1..=10_000u64 {
        let s = if omega_trial(n).is_multiple_of(2) {
            1
        } else {
            -1
        };
        running.push(running[n as usize - 1] + s);
    }
    let samples: Vec<u64> = (1..=300)
        .chain((301..=10_000).step_by(97))
        .chain([10_000])
        .collect();
    for &x in &samples {
        let got = summatory_polya(x).map_err(err)?;
        ensure(got == running[x as usize], || {
            format!("L({x}) = {got}, oracle {}", running[x as usize])
        })?;
    }
    let f = nfdual::IntPolynomial::from_i64(&[1, 0, 1]);
    let mut running = vec![0i64];
    for n in 1..=1000u64 {
        let s = if omega_trial(n * n + 1).is_multiple_of(2) {
            1
        } else {
            -1
        };
        running.push(running[n as usize - 1] + s);
    }
    for x in (1..=1000u64).step_by(13).chain([1000]) {
        let got = summatory_chowla(&f, x).map_err(err)?;
        ensure(got == running[x as usize], || format!("L_f({x}) = {got}"))?;
    }
    let sq = nfdual::IntPolynomial::from_i64(&[0, 0, 1]);
    for x in (1..=1000u64).step_by(37).chain([1000]) {
        ensure(summatory_chowla(&sq, x).map_err(err)? == x as i64, || {
            format!("n^2 at {x}")
        })?;
    }
    Ok(format!(
        "L(10^4) = {}, L_(n^2+1)(1000) = {}",
        summatory_polya(10_000).unwrap(),
        running[1000]
    ))
}

struct Criterion {
    id: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion {
            id: "1",
            limit: Duration::from_secs(1),
            run: criterion_1,
        },
        Criterion {
            id: "2",
            limit: Duration::from_secs(5),
            run: criterion_2,
        },
        Criterion {
            id: "3",
            limit: Duration::from_secs(10),
            run: criterion_3,
        },
        Criterion {
            id: "4",
            limit: Duration::from_secs(10),
            run: criterion_4,
        },
        Criterion {
            id: "5",
            limit: Duration::from_secs(5),
            run: criterion_5,
        },
        Criterion {
            id: "6",
            limit: Duration::from_secs(30),
            run: criterion_6,
        },
        Criterion {
            id: "7",
            limit: Duration::from_secs(60),
            run: criterion_7,
        },
        Criterion {
            id: "8",
            limit: Duration::from_secs(30),
            run: criterion_8,
        },
        Criterion {
            id: "8b",
            limit: Duration::from_secs(30),
            run: criterion_8_variant,
        },
        Criterion {
            id: "9",
            limit: Duration::from_secs(30),
            run: criterion_9,
        },
        Criterion {
            id: "10",
            limit: Duration::from_secs(5),
            run: criterion_10,
        },
        Criterion {
            id: "11",
            limit: Duration::from_secs(10),
            run: criterion_11,
        },
    ];
    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > c.limit => {
                Err(format!("{msg}; took {elapsed:?}, limit {:?}", c.limit))
            }
            other => other,
        };
        let known = KNOWN_RED.iter().find(|(id, _)| *id == c.id);
        match (&outcome, known) {
            (Ok(msg), _) => println!("PASS criterion {:<3} ({elapsed:.2?}) {msg}", c.id),
            (Err(msg), Some((_, why))) => println!(
                "FAIL criterion {:<3} ({elapsed:.2?}) {msg} [known: {why}]",
                c.id
            ),
            (Err(msg), None) => println!("FAIL criterion {:<3} ({elapsed:.2?}) {msg}", c.id),
        }
        if outcome.is_ok() == known.is_some() {
            unexpected.push(c.id);
        }
    }
    assert!(
        unexpected.is_empty(),
        "criteria with unexpected status: {unexpected:?}"
    );
}

#[test]
fn known_red_fails_for_the_stated_reason() {
    let t = corpus::gaussian_tower();
    let r = tower_map_prefix(&t.steps, 5, &PrimeWeights::constant(int(-1)), 3);
    assert!(
        matches!(r, Err(Error::NoSplittingStep { step: 2, prime: 5 })),
        "{r:?}"
    );
    let q = NumberField::rationals();
    let k = t.steps[0].target().clone();
    let v = places_above(&q, 5).unwrap().remove(0);
    for w in places_over(&k, &t.steps[0], &v).unwrap() {
        assert_eq!(places_over(t.top(), &t.steps[1], &w).unwrap().len(), 1);
    }
    // the first two levels alone are fine
    assert!(tower_map_prefix(&t.steps, 5, &PrimeWeights::constant(int(-1)), 2).is_ok());
}
