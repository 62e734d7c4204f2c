//! Elements whose only nonzero finite valuation sits at a chosen place.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::linalg::{hnf_basis, lll, IntVector};
use crate::places::{places_above, valuation, Place};
use crate::poly::IntPolynomial;
use crate::rational::Rational;

/// Default enumeration radius for [`single_place_element`].
pub const DEFAULT_SEARCH_BOUND: u64 = 6;

/// `β` with `(β) = P^k`, `|Norm β| = N(P)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinglePlaceElement {
    pub beta: FieldElement,
    pub k: u32,
    pub norm: BigInt,
    pub place: Place,
}

fn coords_of(poly: &IntPolynomial, f: &IntPolynomial, n: usize) -> IntVector {
    let r = poly.rem_monic(f);
    (0..n).map(|i| r.coeff(i)).collect()
}

/// A Z-basis of `P = pZ[θ] + g(θ)Z[θ]` in coordinates on `1, θ, …`.
pub(crate) fn ideal_basis(k: &NumberField, w: &Place) -> Vec<IntVector> {
    let n = k.degree();
    let f = k.poly();
    let p = BigInt::from(w.prime());
    let mut gens = Vec::with_capacity(2 * n);
    let mut xj = IntPolynomial::one();
    for _ in 0..n {
        gens.push(coords_of(&xj.scale(&p), f, n));
        gens.push(coords_of(&w.local_generator().mul(&xj), f, n));
        xj = xj.mul(&IntPolynomial::x());
    }
    hnf_basis(gens)
}

/// Searches `P` for `β` generating a power of `P`.
///
/// The basis of `P` is LLL-reduced and integer combinations are visited in
/// shells of growing sup-norm `r = 1, 2, …, search_bound`. Inside the first
/// shell that contains a valid `β`, the one with the smallest `|Norm|` wins
/// (ties broken by coefficient size, then lexicographically), and it is
/// normalized so that its first nonzero coordinate is positive.
pub fn single_place_element(
    k: &NumberField,
    w: &Place,
    search_bound: u64,
) -> Result<SinglePlaceElement> {
    if !w.belongs_to(k) {
        return Err(Error::PlaceFieldMismatch);
    }
    if search_bound == 0 {
        return Err(Error::SearchExhausted(0));
    }
    let others: Vec<Place> = places_above(k, w.prime())?
        .into_iter()
        .filter(|x| x != w)
        .collect();
    let n = k.degree();
    let basis = lll(ideal_basis(k, w));
    let residue_norm = BigInt::from(w.prime()).pow(w.f());

    for r in 1..=search_bound as i64 {
        let mut best: Option<(BigInt, BigInt, IntVector, u32)> = None;
        for combo in ShellIter::new(n, r) {
            let mut v: IntVector = vec![BigInt::zero(); n];
            for (c, b) in combo.iter().zip(&basis) {
                if *c != 0 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += y * BigInt::from(*c);
                    }
                }
            }
            let elem = int_element(k, &v);
            let norm = elem.norm().to_integer().abs();
            let Some(kexp) = arith::exact_log(&norm, &residue_norm) else {
                continue;
            };
            if kexp == 0 {
                continue;
            }
            if others
                .iter()
                .any(|o| valuation(&elem, o).map(|x| x.value) != Ok(0))
            {
                continue;
            }
            let l1: BigInt = v.iter().map(|x| x.abs()).sum();
            let key = (norm, l1, v, kexp);
            if best
                .as_ref()
                .is_none_or(|b| (&key.0, &key.1, &key.2) < (&b.0, &b.1, &b.2))
            {
                best = Some(key);
            }
        }
        if let Some((norm, _, mut v, kexp)) = best {
            if v.iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_negative())
            {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            let beta = int_element(k, &v);
            debug_assert_eq!(valuation(&beta, w).unwrap().value, kexp as i64);
            return Ok(SinglePlaceElement {
                beta,
                k: kexp,
                norm,
                place: w.clone(),
            });
        }
    }
    Err(Error::SearchExhausted(search_bound))
}

fn int_element(k: &NumberField, v: &[BigInt]) -> FieldElement {
    k.element(v.iter().cloned().map(Rational::from_integer).collect())
        .expect("coordinate count equals degree")
}

/// Integer vectors in `[-r, r]^n` with at least one entry of absolute value
/// exactly `r`.
struct ShellIter {
    r: i64,
    cur: Option<Vec<i64>>,
}

impl ShellIter {
    fn new(n: usize, r: i64) -> Self {
        ShellIter {
            r,
            cur: Some(vec![-r; n]),
        }
    }
}

impl Iterator for ShellIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        loop {
            let cur = self.cur.as_mut()?;
            let out = cur.clone();
            // odometer step
            let mut i = 0;
            loop {
                if i == cur.len() {
                    self.cur = None;
                    break;
                }
                if cur[i] < self.r {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -self.r;
                i += 1;
            }
            if out.iter().any(|x| x.abs() == self.r) {
                return Some(out);
            }
        }
    }
}
