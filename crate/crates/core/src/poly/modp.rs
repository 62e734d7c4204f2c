//! Dense polynomials over the prime field Z/p and their factorization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntPolynomial;

pub(crate) type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    fn mulm(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn addm(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    fn subm(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    fn powm(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.powm(a, self.p - 2)
    }

    pub fn reduce(self, poly: &IntPolynomial) -> FpPoly {
        let m = BigInt::from(self.p);
        let mut v: FpPoly = poly
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().unwrap())
            .collect();
        trim(&mut v);
        v
    }

    pub fn add(self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut v: FpPoly = (0..n)
            .map(|i| self.addm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut v);
        v
    }

    pub fn sub(self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut v: FpPoly = (0..n)
            .map(|i| self.subm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut v);
        v
    }

    pub fn mul(self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.addm(out[i + j], self.mulm(x, y));
            }
        }
        trim(&mut out);
        out
    }

    fn scale(self, a: &[u64], k: u64) -> FpPoly {
        let mut v: FpPoly = a.iter().map(|&x| self.mulm(x, k)).collect();
        trim(&mut v);
        v
    }

    pub fn div_rem(self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let lead_inv = self.inv(b[db]);
        let mut rem = a.to_vec();
        if rem.len() <= db {
            return (Vec::new(), rem);
        }
        let mut quot = vec![0u64; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = self.mulm(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            for j in 0..=db {
                rem[i - db + j] = self.subm(rem[i - db + j], self.mulm(c, b[j]));
            }
            quot[i - db] = c;
        }
        rem.truncate(db);
        trim(&mut rem);
        trim(&mut quot);
        (quot, rem)
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> FpPoly {
        self.div_rem(a, b).1
    }

    pub fn monic(self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> FpPoly {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let l = self.inv(*r0.last().expect("gcd of zero polynomials"));
        (self.scale(&r0, l), self.scale(&s0, l), self.scale(&t0, l))
    }

    fn mul_mod(self, a: &[u64], b: &[u64], m: &[u64]) -> FpPoly {
        self.rem(&self.mul(a, b), m)
    }

    fn pow_mod(self, base: &[u64], exp: &BigUint, m: &[u64]) -> FpPoly {
        let mut result = self.rem(&[1], m);
        let base = self.rem(base, m);
        for i in (0..exp.bits()).rev() {
            result = self.mul_mod(&result, &result, m);
            if exp.bit(i) {
                result = self.mul_mod(&result, &base, m);
            }
        }
        result
    }

    fn derivative(self, a: &[u64]) -> FpPoly {
        let mut v: FpPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mulm(c, i as u64 % self.p))
            .collect();
        trim(&mut v);
        v
    }

    /// Square-free decomposition of a monic polynomial: pairs
    /// `(g, m)` with `f = Π g^m`, each `g` square-free.
    fn squarefree(self, f: &[u64]) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        let df = self.derivative(f);
        let mut c = self.gcd(f, &df);
        let mut w = self.div_rem(f, &c).0;
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let z = self.div_rem(&w, &y).0;
            if z.len() > 1 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = self.div_rem(&c, &w).0;
        }
        if c.len() > 1 {
            // c is a p-th power
            let p = self.p as usize;
            let root: FpPoly = c.iter().step_by(p).copied().collect();
            for (g, m) in self.squarefree(&root) {
                out.push((g, m * self.p as u32));
            }
        }
        out
    }

    fn distinct_degree(self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut g = f.to_vec();
        let x: FpPoly = vec![0, 1];
        let mut h = self.rem(&x, &g);
        let p = BigUint::from(self.p);
        let mut d = 1;
        while g.len() > 2 * d {
            h = self.pow_mod(&h, &p, &g);
            let gd = self.gcd(&g, &self.sub(&h, &x));
            if gd.len() > 1 {
                g = self.div_rem(&g, &gd).0;
                h = self.rem(&h, &g);
                out.push((gd, d));
            }
            d += 1;
        }
        if g.len() > 1 {
            let deg = g.len() - 1;
            out.push((g, deg));
        }
        out
    }

    fn equal_degree(self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
        loop {
            let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            let b = if self.p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = self.rem(&a, f);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = self.mul_mod(&t, &t, f);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                self.sub(&self.pow_mod(&a, &exp, f), &[1])
            };
            let g = self.gcd(f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let other = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic polynomial into monic irreducibles
    /// with multiplicities, in canonical order.
    pub fn factor(self, f: &[u64]) -> Vec<(FpPoly, u32)> {
        assert!(f.last() == Some(&1), "factor expects a monic polynomial");
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e66_6475_616c);
        let mut out = Vec::new();
        for (sq, m) in self.squarefree(f) {
            for (part, d) in self.distinct_degree(&sq) {
                for g in self.equal_degree(&part, d, &mut rng) {
                    out.push((g, m));
                }
            }
        }
        out.sort_by(|a, b| self.canonical_cmp(&a.0, &b.0));
        out
    }

    pub fn is_squarefree(self, f: &[u64]) -> bool {
        self.gcd(f, &self.derivative(f)).len() == 1
    }

    /// Symmetric representative of a residue, in `(-p/2, p/2]`.
    pub fn symmetric(self, c: u64) -> i128 {
        if c > self.p / 2 {
            c as i128 - self.p as i128
        } else {
            c as i128
        }
    }

    /// Lower degree first, then lexicographic on symmetric coefficients
    /// starting from the constant term.
    pub fn canonical_cmp(self, a: &[u64], b: &[u64]) -> std::cmp::Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            let sa = a.iter().map(|&c| self.symmetric(c));
            let sb = b.iter().map(|&c| self.symmetric(c));
            sa.cmp(sb)
        })
    }

    pub fn pow(self, a: &[u64], e: u32) -> FpPoly {
        (0..e).fold(vec![1u64], |acc, _| self.mul(&acc, a))
    }

    pub fn to_int(self, a: &[u64]) -> IntPolynomial {
        IntPolynomial::new(a.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_int_symmetric(self, a: &[u64]) -> IntPolynomial {
        IntPolynomial::new(a.iter().map(|&c| BigInt::from(self.symmetric(c))).collect())
    }
}

pub(crate) fn trim(v: &mut FpPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(fp: Fp, factors: &[(FpPoly, u32)]) -> FpPoly {
        factors
            .iter()
            .fold(vec![1], |acc, (g, m)| fp.mul(&acc, &fp.pow(g, *m)))
    }

    #[test]
    fn factors_multiply_back() {
        let cases: &[(u64, &[i64])] = &[
            (5, &[1, 0, 1]),
            (2, &[1, 0, 0, 0, 1]),
            (3, &[1, 0, -10, 0, 1]),
            (7, &[1, 0, 0, 0, 1]),
            (2, &[1, 1, 0, 1, 1, 0, 0, 1]),
            (17, &[1, 0, 0, 0, 0, 0, 0, 0, 1]),
            (3, &[0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
        ];
        for &(p, coeffs) in cases {
            let fp = Fp::new(p);
            let f = fp.reduce(&IntPolynomial::from_i64(coeffs));
            let f = fp.monic(&f);
            let fac = fp.factor(&f);
            assert_eq!(expand(fp, &fac), f, "p = {p}, f = {coeffs:?}");
            for (g, _) in &fac {
                assert_eq!(g.last(), Some(&1));
                // irreducible: no factorization into smaller pieces
                let sub = fp.factor(g);
                assert_eq!(sub.len(), 1);
                assert_eq!(sub[0].1, 1);
            }
        }
    }

    #[test]
    fn gaussian_splitting() {
        let fp = Fp::new(5);
        let fac = fp.factor(&[1, 0, 1]);
        // x - 2 (symmetric [-2, 1]) sorts before x + 2
        assert_eq!(fac, vec![(vec![3, 1], 1), (vec![2, 1], 1)]);
        let fp = Fp::new(2);
        assert_eq!(fp.factor(&[1, 0, 0, 0, 1]), vec![(vec![1, 1], 4)]);
    }

    #[test]
    fn ext_gcd_identity() {
        let fp = Fp::new(13);
        let a = vec![3, 1, 4, 1];
        let b = vec![5, 9, 2];
        let (g, s, t) = fp.ext_gcd(&a, &b);
        assert_eq!(fp.add(&fp.mul(&s, &a), &fp.mul(&t, &b)), g);
    }
}
