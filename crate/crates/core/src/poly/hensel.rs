use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::modp::{Fp, FpPoly};
use super::IntPolynomial;

/// Lifts a coprime factorization `f = g*h (mod p)` with `g` monic to one
/// modulo `p^k`. Returns `(G, H)` with coefficients in `[0, p^k)`.
pub(crate) fn lift_factor(
    f: &IntPolynomial,
    g: &FpPoly,
    h: &FpPoly,
    p: u64,
    k: u32,
) -> (IntPolynomial, IntPolynomial) {
    let fp = Fp::new(p);
    let pb = BigInt::from(p);
    let (one, s, t) = fp.ext_gcd(g, h);
    assert_eq!(one, vec![1], "factors must be coprime mod p");
    let mut big_g = fp.to_int(g);
    let mut big_h = fp.to_int(h);
    let mut pi = BigInt::one();
    for _ in 1..k {
        pi *= &pb;
        let diff = f.sub(&big_g.mul(&big_h));
        let e: FpPoly = {
            let mut v: FpPoly = diff
                .coeffs()
                .iter()
                .map(|c| {
                    debug_assert!((c % &pi).is_zero());
                    let q: BigInt = c / &pi;
                    num_integer::Integer::mod_floor(&q, &pb).to_u64().unwrap()
                })
                .collect();
            super::modp::trim(&mut v);
            v
        };
        if e.is_empty() {
            continue;
        }
        let (q, dg) = fp.div_rem(&fp.mul(&e, &t), g);
        let dh = fp.add(&fp.mul(&e, &s), &fp.mul(&q, h));
        let modulus = &pi * &pb;
        big_g = big_g
            .add(&fp.to_int(&dg).scale(&pi))
            .reduce_nonneg(&modulus);
        big_h = big_h
            .add(&fp.to_int(&dh).scale(&pi))
            .reduce_nonneg(&modulus);
    }
    (big_g, big_h)
}

/// Lifts a full factorization of `f` modulo `p` (pairwise coprime monic
/// pieces) to one modulo `p^k`.
pub(crate) fn lift_all(f: &IntPolynomial, parts: &[FpPoly], p: u64, k: u32) -> Vec<IntPolynomial> {
    let fp = Fp::new(p);
    let modulus = BigInt::from(p).pow(k);
    if parts.len() == 1 {
        return vec![f.reduce_nonneg(&modulus)];
    }
    let rest = parts[1..].iter().fold(vec![1u64], |acc, g| fp.mul(&acc, g));
    let (g, h) = lift_factor(f, &parts[0], &rest, p, k);
    let mut out = vec![g];
    out.extend(lift_all(&h, &parts[1..], p, k));
    out
}
