//! Oracles shared by the integration suites. Each one recomputes a quantity
//! by a route that does not go through the library code under test.
#![allow(dead_code)]

use nfdual::rational::{int, Rational};
use nfdual::{FieldElement, NumberField};
use num_traits::{Signed, Zero};

/// Ω(n) by plain trial division.
pub fn omega_trial(mut n: u64) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// `v_p(n)` for a nonzero integer.
pub fn vp(n: &num_bigint::BigInt, p: u64) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    let p = num_bigint::BigInt::from(p);
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    k
}

/// `v_p` of a nonzero rational.
pub fn vp_rational(r: &Rational, p: u64) -> i64 {
    vp(r.numer(), p) - vp(r.denom(), p)
}

/// Ω of a nonzero rational, by trial division on numerator and denominator.
pub fn omega_rational_trial(r: &Rational) -> i64 {
    let n: u64 = r.numer().abs().try_into().expect("small numerator");
    let d: u64 = r.denom().try_into().expect("small denominator");
    omega_trial(n) as i64 - omega_trial(d) as i64
}

/// Determinant by fraction-field Gaussian elimination.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut acc = int(1);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return int(0);
        };
        if piv != c {
            m.swap(piv, c);
            acc = -acc;
        }
        let pivot = m[c][c].clone();
        acc *= &pivot;
        for r in c + 1..n {
            let f = &m[r][c] / &pivot;
            let row = m[c].clone();
            for (x, y) in m[r][c..].iter_mut().zip(&row[c..]) {
                *x -= &f * y;
            }
        }
    }
    acc
}

/// Norm as the determinant of multiplication by `a` on the power basis.
pub fn norm_by_matrix(a: &FieldElement) -> Rational {
    let k = a.field();
    let n = k.degree();
    let mut rows = Vec::with_capacity(n);
    let mut basis = k.one();
    for _ in 0..n {
        rows.push(a.checked_mul(&basis).unwrap().coords().to_vec());
        basis = basis.checked_mul(&k.generator()).unwrap();
    }
    det(rows)
}

pub fn element(k: &NumberField, coords: &[i64]) -> FieldElement {
    let mut c = coords.to_vec();
    c.resize(k.degree(), 0);
    c.truncate(k.degree());
    k.from_i64s(&c)
}

/// Order of `a` in `(Z/m)^×`.
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}
