//! Integer lattices: Hermite normal form of a generating set and exact LLL.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type IntVector = Vec<BigInt>;

/// A basis (in row-style Hermite normal form) of the lattice spanned by
/// `rows`. Zero rows are dropped.
pub fn hnf_basis(mut rows: Vec<IntVector>) -> Vec<IntVector> {
    let Some(n) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for col in 0..n {
        // gather rows with a nonzero entry in `col` and gcd-reduce them
        loop {
            let mut idx: Vec<usize> = (0..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .collect();
            if idx.len() <= 1 {
                break;
            }
            idx.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let pivot = rows[idx[0]].clone();
            for &i in &idx[1..] {
                let q = rows[i][col].div_floor(&pivot[col]);
                for j in 0..n {
                    let t = &q * &pivot[j];
                    rows[i][j] -= t;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            let mut r = rows.swap_remove(i);
            if r[col].is_negative() {
                r.iter_mut().for_each(|x| *x = -x.clone());
            }
            out.push(r);
        }
    }
    // reduce entries above each pivot
    for i in 0..out.len() {
        let col = out[i].iter().position(|x| !x.is_zero()).unwrap();
        for k in 0..i {
            let q = out[k][col].div_floor(&out[i][col]);
            if !q.is_zero() {
                let row = out[i].clone();
                for (x, y) in out[k].iter_mut().zip(&row) {
                    *x -= &q * y;
                }
            }
        }
    }
    out
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rat(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Gram-Schmidt orthogonalization: `(b*, mu)`.
fn gram_schmidt(b: &[IntVector]) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let n = b.len();
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        let mut v = to_rat(&b[i]);
        let bi = to_rat(&b[i]);
        for j in 0..i {
            let denom = dot(&star[j], &star[j]);
            mu[i][j] = dot(&bi, &star[j]) / denom;
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        star.push(v);
    }
    (star, mu)
}

/// LLL reduction with `δ = 3/4`, exact arithmetic. The input rows must be
/// linearly independent.
pub fn lll(mut b: Vec<IntVector>) -> Vec<IntVector> {
    let n = b.len();
    if n <= 1 {
        return b;
    }
    let delta = Rational::new(BigInt::from(3), BigInt::from(4));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut k = 1;
    let (mut star, mut mu) = gram_schmidt(&b);
    while k < n {
        for j in (0..k).rev() {
            if mu[k][j].abs() > half {
                let q = mu[k][j].round().to_integer();
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                let (s, m) = gram_schmidt(&b);
                star = s;
                mu = m;
            }
        }
        let lhs = dot(&star[k], &star[k]);
        let m = &mu[k][k - 1];
        let rhs = (&delta - m * m) * dot(&star[k - 1], &star[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let (s, m) = gram_schmidt(&b);
            star = s;
            mu = m;
            k = (k - 1).max(1);
        }
    }
    b
}
