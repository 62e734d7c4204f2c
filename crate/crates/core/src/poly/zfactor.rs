use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::hensel::lift_all;
use super::modp::Fp;
use super::{IntPolynomial, QPoly};
use crate::rational::Rational;

/// Monic irreducible factors of a monic integer polynomial (without
/// multiplicity), smallest first.
pub(crate) fn irreducible_factors(f: &IntPolynomial) -> Vec<IntPolynomial> {
    assert!(f.is_monic());
    let sq = squarefree_part(f);
    let mut out = zassenhaus(&sq);
    out.sort_by(witness_cmp);
    out
}

/// A proper factor of `f` if `f` is reducible over Q: the smallest
/// irreducible factor by degree, then by coefficients from the constant
/// term up.
pub(crate) fn find_factor(f: &IntPolynomial) -> Option<IntPolynomial> {
    let n = f.degree()?;
    if n <= 1 {
        return None;
    }
    let factors = irreducible_factors(f);
    if factors.len() == 1 && factors[0].degree() == Some(n) {
        None
    } else {
        factors.into_iter().next()
    }
}

fn witness_cmp(a: &IntPolynomial, b: &IntPolynomial) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

fn squarefree_part(f: &IntPolynomial) -> IntPolynomial {
    let qf = QPoly::from_int(f);
    let g = qf.gcd(&QPoly::from_int(&f.derivative()));
    if g.degree() == Some(0) {
        return f.clone();
    }
    let (q, _) = qf.div_rem(&g);
    to_int(&q.monic())
}

fn to_int(q: &QPoly) -> IntPolynomial {
    IntPolynomial::new(
        q.0.iter()
            .map(|c: &Rational| {
                assert!(c.is_integer(), "monic factor of a monic integer polynomial");
                c.to_integer()
            })
            .collect(),
    )
}

fn zassenhaus(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.degree().unwrap();
    if n <= 1 {
        return vec![f.clone()];
    }
    // choose the good prime with the fewest local factors among the first few
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut good = 0;
    let mut p = 2u64;
    while good < 5 {
        let fp = Fp::new(p);
        let fbar = fp.reduce(f);
        if fbar.len() == n + 1 && fp.is_squarefree(&fbar) {
            good += 1;
            let parts: Vec<Vec<u64>> = fp.factor(&fbar).into_iter().map(|(g, _)| g).collect();
            if best.as_ref().is_none_or(|(_, b)| parts.len() < b.len()) {
                best = Some((p, parts));
            }
        }
        p = next_prime(p);
    }
    let (p, parts) = best.unwrap();
    if parts.len() == 1 {
        return vec![f.clone()];
    }
    let bound = BigInt::from(2u32) * (BigInt::one() << n) * f.l1_norm();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let mut lifted = lift_all(f, &parts, p, k);
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        match find_subset(&rest, &lifted, s, &modulus) {
            Some((idx, g)) => {
                rest = rest.div_rem_monic(&g).0;
                found.push(g);
                for i in idx.into_iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    found.push(rest);
    found
}

fn find_subset(
    f: &IntPolynomial,
    lifted: &[IntPolynomial],
    s: usize,
    modulus: &BigInt,
) -> Option<(Vec<usize>, IntPolynomial)> {
    let r = lifted.len();
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        let g = idx
            .iter()
            .fold(IntPolynomial::one(), |acc, &i| {
                acc.mul(&lifted[i]).reduce_nonneg(modulus)
            })
            .reduce_symmetric(modulus);
        // cheap constant-term test before the full division
        let c0 = g.coeff(0);
        if (c0.is_zero() && f.coeff(0).is_zero())
            || (!c0.is_zero() && (f.coeff(0).abs() % c0.abs()).is_zero())
        {
            let (_, rem) = f.div_rem_monic(&g);
            if rem.is_zero() {
                return Some((idx, g));
            }
        }
        // next combination
        let mut i = s;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + r - s {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn next_prime(p: u64) -> u64 {
    (p + 1..).find(|&q| crate::arith::is_prime(q)).unwrap()
}
