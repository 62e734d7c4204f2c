use num_traits::{One, Zero};

use super::IntPolynomial;
use crate::rational::Rational;

/// Dense polynomial over Q, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QPoly(pub Vec<Rational>);

impl QPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn from_int(p: &IntPolynomial) -> Self {
        QPoly::new(
            p.coeffs()
                .iter()
                .cloned()
                .map(Rational::from_integer)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QPoly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = &rem[i] / &lead;
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                let t = &c * &d.0[j];
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.0.last() {
            None => self.clone(),
            Some(l) => {
                let l = l.clone();
                QPoly(self.0.iter().map(|c| c / &l).collect())
            }
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m`, if the two are coprime.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (m.clone(), self.div_rem(m).1);
        let (mut s0, mut s1) = (QPoly(Vec::new()), QPoly(vec![Rational::one()]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.0[0].clone();
        Some(QPoly::new(s0.0.iter().map(|x| x / &c).collect()))
    }

    /// Resultant by the Euclidean algorithm; an oracle for the determinant route.
    #[cfg(test)]
    pub fn resultant(&self, o: &Self) -> Rational {
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = Rational::one();
        loop {
            let (da, db) = match (a.degree(), b.degree()) {
                (Some(x), Some(y)) => (x, y),
                _ => return Rational::zero(),
            };
            if db == 0 {
                return acc * num_traits::pow(b.0[0].clone(), da);
            }
            let r = a.div_rem(&b).1;
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            let dr = match r.degree() {
                Some(d) => d,
                None => return Rational::zero(),
            };
            acc *= num_traits::pow(b.0[db].clone(), da - dr);
            a = b;
            b = r;
        }
    }
}
