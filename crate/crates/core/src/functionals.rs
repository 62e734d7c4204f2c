//! The functionals `Φ_c`, extensions of Ω, S-norms and the summatory
//! functions of Pólya and Chowla.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith;
use crate::consistent::{evaluate, ConsistentMap, EvaluationContext};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldEmbedding, NumberField};
use crate::places::{places_above, valuation};
use crate::poly::{resultant_monic, IntPolynomial};
use crate::rational::{format_rational, to_f64, Rational};

/// Largest argument accepted by the summatory functions.
pub const SUMMATORY_LIMIT: u64 = 1_000_000;

/// A finite formal sum `Σ a_p log p` with rational `a_p`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LogLinearValue {
    coeffs: BTreeMap<u64, Rational>,
}

impl LogLinearValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coefficient(&self, p: u64) -> Rational {
        self.coeffs.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<u64, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, p: u64, a: Rational) {
        let slot = self.coeffs.entry(p).or_insert_with(Rational::zero);
        *slot += a;
        if slot.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&p, a) in &other.coeffs {
            out.add_term(p, a.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        LogLinearValue {
            coeffs: self.coeffs.iter().map(|(&p, a)| (p, a * r)).collect(),
        }
    }

    /// Floating-point rendering `Σ a_p ln p`.
    pub fn approx(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(&p, a)| to_f64(a) * (p as f64).ln())
            .sum()
    }
}

impl fmt::Display for LogLinearValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(p, a)| format!("{}*log({p})", format_rational(a)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Primes at which `α` can have nonzero valuation: divisors of the
/// denominator `d` and of `Res(f, A)` where `α = A(θ)/d`.
fn candidate_primes(a: &FieldElement) -> Result<BTreeSet<u64>> {
    let (num, den) = a.integral_repr();
    let res = resultant_monic(a.field().poly(), &num);
    let mut out: BTreeSet<u64> = arith::prime_divisors(&res)?.into_iter().collect();
    out.extend(arith::prime_divisors(&den)?);
    Ok(out)
}

/// `(p, w, v_w(α))` for every place with nonzero valuation.
fn valuation_support(a: &FieldElement) -> Result<Vec<(crate::places::Place, i64)>> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut out = Vec::new();
    for p in candidate_primes(a)? {
        for w in places_above(a.field(), p)? {
            let v = valuation(a, &w)?.value;
            if v != 0 {
                out.push((w, v));
            }
        }
    }
    Ok(out)
}

/// `Φ_c(α^{1/n}) = (1/n) Σ_v c(K,v)·(-v(α)/e_v)`.
pub fn phi(
    c: &ConsistentMap,
    a: &FieldElement,
    n: u64,
    ctx: &EvaluationContext,
) -> Result<Rational> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let k = a.field();
    let mut acc = Rational::zero();
    for (w, v) in valuation_support(a)? {
        let cv = evaluate(c, k, &w, ctx)?;
        acc += cv * Rational::new((-v).into(), w.e().into());
    }
    Ok(acc / Rational::from_integer(n.into()))
}

/// `Φ_c` computed over `K` and over `L` for `ι(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDefinedReport {
    pub holds: bool,
    pub over_k: Rational,
    pub over_l: Rational,
}

pub fn phi_well_defined_check(
    c: &ConsistentMap,
    a: &FieldElement,
    iota: &FieldEmbedding,
    ctx: &EvaluationContext,
) -> Result<WellDefinedReport> {
    let ctx = ctx.clone().with_embedding(iota.clone());
    let over_k = phi(c, a, 1, &ctx)?;
    let over_l = phi(c, &iota.apply(a)?, 1, &ctx)?;
    Ok(WellDefinedReport {
        holds: over_k == over_l,
        over_k,
        over_l,
    })
}

/// Ω extended to `Q^×` as a homomorphism.
pub fn omega_rational(r: &Rational) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(arith::big_omega(r.numer())? as i64 - arith::big_omega(r.denom())? as i64)
}

/// `Ω(Norm_{K/Q} α)/[K:Q]`.
pub fn omega_canonical(a: &FieldElement) -> Result<Rational> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let om = omega_rational(&a.norm())?;
    Ok(Rational::new(om.into(), a.field().degree().into()))
}

/// `c(Q,p)` at each listed prime and whether all equal `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaReport {
    pub holds: bool,
    pub values: Vec<(u64, Rational)>,
}

pub fn extends_omega_check(
    c: &ConsistentMap,
    primes: &[u64],
    ctx: &EvaluationContext,
) -> Result<OmegaReport> {
    let q = NumberField::rationals();
    let minus_one = Rational::from_integer((-1).into());
    let mut values = Vec::new();
    for &p in primes {
        let v = crate::places::place(&q, p, 0)?;
        values.push((p, evaluate(c, &q, &v, ctx)?));
    }
    let holds = values.iter().all(|(_, x)| *x == minus_one);
    Ok(OmegaReport { holds, values })
}

/// `Σ_v |log|α|_v|` over the finite places, as a combination of `log p`.
pub fn snorm(a: &FieldElement) -> Result<LogLinearValue> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let n = a.field().degree();
    let mut out = LogLinearValue::zero();
    for (w, v) in valuation_support(a)? {
        // (e f / n) |v| / e
        out.add_term(
            w.prime(),
            Rational::new((w.f() as i64 * v.abs()).into(), n.into()),
        );
    }
    Ok(out)
}

fn check_limit(x: u64) -> Result<()> {
    if x > SUMMATORY_LIMIT {
        Err(Error::ArgumentTooLarge {
            value: x,
            limit: SUMMATORY_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// `L(x) = Σ_{n ≤ x} (-1)^Ω(n)`.
pub fn summatory_polya(x: u64) -> Result<i64> {
    check_limit(x)?;
    Ok((1..=x)
        .map(|n| {
            if arith::big_omega_u64(n).is_multiple_of(2) {
                1
            } else {
                -1
            }
        })
        .sum())
}

/// `L_f(x) = Σ_{n ≤ x} (-1)^Ω(f(n))`, with `Ω(-m) = Ω(m)`.
pub fn summatory_chowla(f: &IntPolynomial, x: u64) -> Result<i64> {
    check_limit(x)?;
    let mut acc = 0i64;
    for n in 1..=x {
        let value = f.eval(&BigInt::from(n));
        if value.is_zero() {
            return Err(Error::ZeroValueInRange(n));
        }
        acc += if arith::big_omega(&value)? % 2 == 0 {
            1
        } else {
            -1
        };
    }
    Ok(acc)
}
