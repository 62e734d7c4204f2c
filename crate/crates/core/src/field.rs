//! Monogenic number fields `Q[x]/(f)`, their elements, automorphisms and
//! embeddings.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::places::Place;
use crate::poly::{discriminant_monic, find_factor, resultant_monic, IntPolynomial, QPoly};
use crate::rational::{common_denominator, format_rational, parse_rational, Rational};

pub const MAX_DEGREE: usize = 8;

/// Galois families for which automorphisms are available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Rational,
    Quadratic,
    /// `Q(ζ_m)` presented by the cyclotomic polynomial `Φ_m`.
    Cyclotomic(u32),
    /// `Q(√a, √b)` presented by the minimal polynomial of `√a + √b`.
    Biquadratic(Rational, Rational),
    Other,
}

struct Inner {
    poly: IntPolynomial,
    degree: usize,
    disc: BigInt,
    family: Family,
    places: Mutex<HashMap<u64, Result<Vec<Place>>>>,
}

/// Cheap shared handle to a number field.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<Inner>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.poly == other.inner.poly
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.inner.poly)
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.inner.poly)
    }
}

impl NumberField {
    /// Builds `Q[x]/(f)` after checking that `f` is monic, of degree at most
    /// eight, and irreducible.
    pub fn new(f: IntPolynomial) -> Result<Self> {
        let degree = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::DegreeTooSmall),
        };
        if !f.is_monic() {
            return Err(Error::NotMonic(f));
        }
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        if let Some(factor) = find_factor(&f) {
            return Err(Error::Reducible { poly: f, factor });
        }
        let disc = discriminant_monic(&f);
        let family = detect_family(&f);
        Ok(NumberField {
            inner: Arc::new(Inner {
                poly: f,
                degree,
                disc,
                family,
                places: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(IntPolynomial::parse(s)?)
    }

    /// `Q` presented as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::new(IntPolynomial::x()).expect("x is irreducible")
    }

    /// `Q(√d)` presented by `x^2 - d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        Self::new(IntPolynomial::from_i64(&[-d, 0, 1]))
    }

    /// `Q(ζ_m)` presented by `Φ_m`.
    pub fn cyclotomic(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::DegreeTooSmall);
        }
        let phi = cyclotomic_poly(m);
        if let Some(d) = phi.degree().filter(|&d| d > MAX_DEGREE) {
            return Err(Error::DegreeTooLarge(d));
        }
        Self::new(phi)
    }

    /// `Q(√a, √b)` presented by `x^4 - 2(a+b)x^2 + (a-b)^2`, the minimal
    /// polynomial of `√a + √b`.
    pub fn biquadratic(a: i64, b: i64) -> Result<Self> {
        Self::biquadratic_rational(
            &Rational::from_integer(a.into()),
            &Rational::from_integer(b.into()),
        )
    }

    /// As [`NumberField::biquadratic`] for rational `a, b`; the polynomial
    /// must come out integral, as for `a = 1/2, b = 3/2` (`x^4 - 4x^2 + 1`).
    pub fn biquadratic_rational(a: &Rational, b: &Rational) -> Result<Self> {
        let c2 = -(a + b) * Rational::from_integer(BigInt::from(2));
        let c0 = (a - b) * (a - b);
        if !c2.is_integer() || !c0.is_integer() {
            return Err(Error::NonIntegralPolynomial(format!(
                "minimal polynomial of √({}) + √({})",
                format_rational(a),
                format_rational(b)
            )));
        }
        let z = BigInt::zero();
        let f = IntPolynomial::new(vec![
            c0.to_integer(),
            z.clone(),
            c2.to_integer(),
            z,
            BigInt::one(),
        ]);
        let field = Self::new(f)?;
        if !matches!(
            field.family(),
            Family::Biquadratic(..) | Family::Cyclotomic(_)
        ) {
            return Err(Error::UnsupportedFamily(field.poly().clone()));
        }
        Ok(field)
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.inner.poly
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// Discriminant of the defining polynomial.
    pub fn discriminant(&self) -> &BigInt {
        &self.inner.disc
    }

    pub fn family(&self) -> &Family {
        &self.inner.family
    }

    pub fn is_rational(&self) -> bool {
        self.inner.degree == 1
    }

    pub(crate) fn places_cache(&self) -> &Mutex<HashMap<u64, Result<Vec<Place>>>> {
        &self.inner.places
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<FieldElement> {
        if coords.len() > self.degree() {
            return Err(Error::Parse(format!(
                "element has {} coordinates, field degree is {}",
                coords.len(),
                self.degree()
            )));
        }
        Ok(self.reduce(coords))
    }

    pub fn from_i64s(&self, coords: &[i64]) -> FieldElement {
        self.reduce(
            coords
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        self.reduce(vec![r])
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(Rational::from_integer(n.into()))
    }

    pub fn zero(&self) -> FieldElement {
        self.reduce(Vec::new())
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The class `θ` of `x`.
    pub fn generator(&self) -> FieldElement {
        self.reduce(vec![Rational::zero(), Rational::one()])
    }

    /// Reduces an arbitrary coefficient list modulo `f`.
    fn reduce(&self, mut c: Vec<Rational>) -> FieldElement {
        let n = self.degree();
        let f = self.poly().coeffs();
        while c.len() > n {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - n;
            for (j, fj) in f[..n].iter().enumerate() {
                c[shift + j] -= &top * Rational::from_integer(fj.clone());
            }
        }
        c.resize(n, Rational::zero());
        FieldElement {
            field: self.clone(),
            coords: c,
        }
    }

    /// Parses `[a0, a1, ...]` (entries integers or `"p/q"` strings) or a
    /// bare rational.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if !s.starts_with('[') {
            return Ok(self.from_rational(parse_rational(s)?));
        }
        let bad = |e: String| Error::Parse(format!("invalid element {s:?}: {e}"));
        let v: Vec<serde_json::Value> = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
        let coords = v
            .iter()
            .map(|x| match x {
                serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                serde_json::Value::String(t) => parse_rational(t),
                other => Err(bad(format!("unexpected entry {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(coords)
    }

    /// The full automorphism group for the supported families.
    pub fn automorphisms(&self) -> Result<Vec<Automorphism>> {
        let theta = self.generator();
        let images: Vec<FieldElement> = match self.family() {
            Family::Rational => vec![theta],
            Family::Quadratic => {
                let b = Rational::from_integer(self.poly().coeff(1));
                vec![theta.clone(), self.from_rational(-b) - &theta]
            }
            Family::Cyclotomic(m) => (1..=*m)
                .filter(|a| a.gcd(m) == 1)
                .map(|a| theta.pow(a as i64).expect("nonzero generator"))
                .collect(),
            Family::Biquadratic(a, b) => {
                let (sa, sb) = biquadratic_roots(self, a, b);
                let mut v = Vec::new();
                for s1 in [1, -1] {
                    for s2 in [1, -1] {
                        v.push(
                            sa.scale(&Rational::from_integer(s1.into()))
                                + &sb.scale(&Rational::from_integer(s2.into())),
                        );
                    }
                }
                v
            }
            Family::Other => return Err(Error::UnsupportedFamily(self.poly().clone())),
        };
        images
            .into_iter()
            .map(|image| Automorphism::new(self, image))
            .collect()
    }

    /// `(√a, √b)` for a biquadratic field.
    pub fn biquadratic_square_roots(&self) -> Option<(FieldElement, FieldElement)> {
        match self.family() {
            Family::Biquadratic(a, b) => Some(biquadratic_roots(self, a, b)),
            _ => None,
        }
    }
}

fn biquadratic_roots(k: &NumberField, a: &Rational, b: &Rational) -> (FieldElement, FieldElement) {
    // θ^3 - (a + 3b)θ = 2(a - b)√b
    let t = k.generator();
    let t3 = t.pow(3).unwrap();
    let three = Rational::from_integer(BigInt::from(3));
    let two = Rational::from_integer(BigInt::from(2));
    let num = t3 - &t.scale(&(a + &three * b));
    let sb = num.scale(&(two * (a - b)).recip());
    let sa = &t - &sb;
    (sa, sb)
}

pub(crate) fn cyclotomic_poly(m: u32) -> IntPolynomial {
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut coeffs = vec![BigInt::zero(); m as usize + 1];
    coeffs[0] = -BigInt::one();
    coeffs[m as usize] = BigInt::one();
    let mut p = IntPolynomial::new(coeffs);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = p.div_rem_monic(&cyclotomic_poly(d)).0;
    }
    p
}

fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|a| a.gcd(&m) == 1).count() as u32
}

fn detect_family(f: &IntPolynomial) -> Family {
    let n = f.degree().unwrap();
    if n == 1 {
        return Family::Rational;
    }
    for m in 3..=60u32 {
        if euler_phi(m) as usize == n && cyclotomic_poly(m) == *f {
            return Family::Cyclotomic(m);
        }
    }
    if n == 2 {
        return Family::Quadratic;
    }
    if n == 4 && f.coeff(1).is_zero() && f.coeff(3).is_zero() {
        // An irreducible x^4 - 2s x^2 + t^2 has roots ±√a ± √b with
        // a + b = s and a - b = t.
        if let Some(t) = crate::arith::isqrt(&f.coeff(0)) {
            let s = Rational::new(-f.coeff(2), BigInt::from(2));
            let t = Rational::from_integer(t);
            let two = Rational::from_integer(BigInt::from(2));
            return Family::Biquadratic((&s + &t) / &two, (&s - &t) / &two);
        }
    }
    Family::Other
}

/// An element `Σ c_i θ^i` with `n` rational coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let n = self.coords.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Ok(self.field.reduce(prod))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = QPoly::from_int(self.field.poly());
        let inv = QPoly::new(self.coords.clone())
            .inverse_mod(&m)
            .expect("nonzero element of a field is invertible");
        Ok(self.field.reduce(inv.0))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// `(A, d)` with `self = A(θ)/d`, `A` integral and `d > 0` minimal.
    pub fn integral_repr(&self) -> (IntPolynomial, BigInt) {
        let d = common_denominator(&self.coords);
        let a = self
            .coords
            .iter()
            .map(|c| (c * Rational::from_integer(d.clone())).to_integer())
            .collect();
        (IntPolynomial::new(a), d)
    }

    /// `Norm_{K/Q}`, computed as `Res(f, A) / d^n`.
    pub fn norm(&self) -> Rational {
        let (a, d) = self.integral_repr();
        let r = resultant_monic(self.field.poly(), &a);
        Rational::new(r, num_traits::pow(d, self.field.degree()))
    }

    /// The element `Σ c_i θ^i` for a coefficient list of any length.
    pub(crate) fn from_poly_coeffs(k: &NumberField, c: Vec<Rational>) -> Self {
        k.reduce(c)
    }

    /// Evaluates the coordinate polynomial at `x` (an element of any field).
    pub(crate) fn eval_at(&self, x: &FieldElement) -> FieldElement {
        let target = x.field();
        let mut acc = target.zero();
        for c in self.coords.iter().rev() {
            acc = &(&acc * x) + &target.from_rational(c.clone());
        }
        acc
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$checked(rhs)
                    .expect("operands belong to different fields")
            }
        }
        impl<'a> $trait<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// An automorphism of `K`, determined by the image of `θ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism {
    image: FieldElement,
}

impl Automorphism {
    /// Checks that `image` is a root of the defining polynomial.
    pub fn new(field: &NumberField, image: FieldElement) -> Result<Self> {
        if image.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !eval_int_poly(field.poly(), &image).is_zero() {
            return Err(Error::InvalidEmbedding(format!(
                "{image} is not a root of {}",
                field.poly()
            )));
        }
        Ok(Automorphism { image })
    }

    pub fn identity(field: &NumberField) -> Self {
        Automorphism {
            image: field.generator(),
        }
    }

    pub fn field(&self) -> &NumberField {
        self.image.field()
    }

    pub fn image(&self) -> &FieldElement {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image == self.field().generator()
    }

    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(a.eval_at(&self.image))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        Ok(Automorphism {
            image: self.apply(&other.image)?,
        })
    }

    pub fn inverse(&self) -> Automorphism {
        let mut prev = Automorphism::identity(self.field());
        let mut cur = self.clone();
        while !cur.is_identity() {
            prev = cur.clone();
            cur = self.compose(&cur).expect("same field");
        }
        prev
    }
}

/// A ring embedding `K → L` given by the image of `K`'s generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldEmbedding {
    source: NumberField,
    image: FieldElement,
}

impl FieldEmbedding {
    pub fn new(source: &NumberField, target: &NumberField, image: FieldElement) -> Result<Self> {
        if image.field() != target {
            return Err(Error::InvalidEmbedding(
                "image does not lie in the target field".into(),
            ));
        }
        if !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::InvalidEmbedding(format!(
                "[L:Q] = {} is not divisible by [K:Q] = {}",
                target.degree(),
                source.degree()
            )));
        }
        if !eval_int_poly(source.poly(), &image).is_zero() {
            return Err(Error::InvalidEmbedding(format!(
                "{image} is not a root of {}",
                source.poly()
            )));
        }
        Ok(FieldEmbedding {
            source: source.clone(),
            image,
        })
    }

    pub fn identity(field: &NumberField) -> Self {
        FieldEmbedding {
            source: field.clone(),
            image: field.generator(),
        }
    }

    /// The unique embedding of a degree-one field into `target`.
    pub fn from_rational(source: &NumberField, target: &NumberField) -> Result<Self> {
        if !source.is_rational() {
            return Err(Error::InvalidEmbedding("source is not Q".into()));
        }
        let root = -Rational::from_integer(source.poly().coeff(0));
        FieldEmbedding::new(source, target, target.from_rational(root))
    }

    pub fn source(&self) -> &NumberField {
        &self.source
    }

    pub fn target(&self) -> &NumberField {
        self.image.field()
    }

    pub fn image(&self) -> &FieldElement {
        &self.image
    }

    /// `[L:K]`.
    pub fn relative_degree(&self) -> usize {
        self.target().degree() / self.source.degree()
    }

    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field() != &self.source {
            return Err(Error::FieldMismatch);
        }
        Ok(a.eval_at(&self.image))
    }

    /// The composite `K → L → M` of `self: K → L` and `next: L → M`.
    pub fn then(&self, next: &FieldEmbedding) -> Result<FieldEmbedding> {
        if next.source() != self.target() {
            return Err(Error::InvalidEmbedding("embeddings do not compose".into()));
        }
        Ok(FieldEmbedding {
            source: self.source.clone(),
            image: next.apply(&self.image)?,
        })
    }
}

fn eval_int_poly(f: &IntPolynomial, x: &FieldElement) -> FieldElement {
    let k = x.field();
    let mut acc = k.zero();
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * x) + &k.from_rational(Rational::from_integer(c.clone()));
    }
    acc
}
