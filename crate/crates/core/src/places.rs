//! Non-Archimedean places above a rational prime, their valuations, and how
//! they behave under embeddings and automorphisms.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Automorphism, FieldElement, FieldEmbedding, NumberField};
use crate::poly::modp::{Fp, FpPoly};
use crate::poly::{lift_factor, resultant_monic, IntPolynomial};
use crate::rational::Rational;

/// Starting p-adic precision for the local factor.
pub const INITIAL_PRECISION: u32 = 8;
/// Hard cap on p-adic precision.
pub const PRECISION_CAP: u32 = 512;
/// Reported precision when `p` has a single place and `f` itself serves as
/// the local factor.
pub const EXACT: u32 = u32::MAX;

struct PlaceInner {
    field_poly: IntPolynomial,
    degree: usize,
    p: u64,
    e: u32,
    f: u32,
    index: usize,
    residue: FpPoly,
    cofactor: FpPoly,
    generator: IntPolynomial,
    lift: Mutex<Option<(u32, IntPolynomial)>>,
}

/// A place `w` of `K` above `p`, identified by its index in canonical order.
#[derive(Clone)]
pub struct Place {
    inner: Arc<PlaceInner>,
}

impl PartialEq for Place {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.index == other.inner.index
            && self.inner.field_poly == other.inner.field_poly
    }
}

impl Eq for Place {}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Place(p={}, index={}, e={}, f={}, field={})",
            self.inner.p, self.inner.index, self.inner.e, self.inner.f, self.inner.field_poly
        )
    }
}

impl Place {
    pub fn prime(&self) -> u64 {
        self.inner.p
    }

    pub fn e(&self) -> u32 {
        self.inner.e
    }

    pub fn f(&self) -> u32 {
        self.inner.f
    }

    /// Position within `places_above(K, p)`, starting at 0.
    pub fn index(&self) -> usize {
        self.inner.index
    }

    /// `[K_w : Q_p] = e f`.
    pub fn local_degree(&self) -> u32 {
        self.inner.e * self.inner.f
    }

    /// Degree of the owning field.
    pub fn field_degree(&self) -> usize {
        self.inner.degree
    }

    pub fn belongs_to(&self, k: &NumberField) -> bool {
        &self.inner.field_poly == k.poly()
    }

    /// The irreducible factor `g` of `f mod p` attached to this place, with
    /// coefficients in `[0, p)`.
    pub fn residue_factor(&self) -> IntPolynomial {
        Fp::new(self.inner.p).to_int(&self.inner.residue)
    }

    /// `g(x)` lifted to Z with symmetric coefficients, so that the place is
    /// generated by `p` and `g(θ)`.
    pub fn local_generator(&self) -> &IntPolynomial {
        &self.inner.generator
    }

    /// `g(θ)` as an element of `k`. It has positive valuation at this place
    /// and valuation zero at every other place above `p`. When `g(θ)`
    /// vanishes (`g = f`, so this is the only place above `p`), `p` is
    /// returned instead.
    pub fn local_generator_element(&self, k: &NumberField) -> Result<FieldElement> {
        self.check_field(k)?;
        let coeffs = self
            .inner
            .generator
            .coeffs()
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect::<Vec<_>>();
        let u = FieldElement::from_poly_coeffs(k, coeffs);
        if u.is_zero() {
            Ok(k.from_rational(Rational::from_integer(self.inner.p.into())))
        } else {
            Ok(u)
        }
    }

    fn check_field(&self, k: &NumberField) -> Result<()> {
        if self.belongs_to(k) {
            Ok(())
        } else {
            Err(Error::PlaceFieldMismatch)
        }
    }

    /// The monic factor of `f` over `Z_p` belonging to this place, modulo
    /// `p^k` for some `k ≥ min_k`; returns `(k, F)`.
    fn local_factor(&self, min_k: u32) -> (u32, IntPolynomial) {
        let mut guard = self.inner.lift.lock().expect("lift cache poisoned");
        if let Some((k, lifted)) = guard.as_ref() {
            if *k >= min_k {
                return (*k, lifted.clone());
            }
        }
        let p = self.inner.p;
        let fp = Fp::new(p);
        let local = fp.pow(&self.inner.residue, self.inner.e);
        let (k, lifted) = if self.inner.cofactor.len() == 1 {
            (EXACT, self.inner.field_poly.clone())
        } else {
            let g = lift_factor(
                &self.inner.field_poly,
                &local,
                &self.inner.cofactor,
                p,
                min_k,
            )
            .0;
            (min_k, g)
        };
        *guard = Some((k, lifted.clone()));
        (k, lifted)
    }
}

/// `v_w(α)` normalized so that `v_w(p) = e_w`, and the precision that
/// certified it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValuationResult {
    pub value: i64,
    pub precision: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `log_p ‖α‖_w = -v_w(α)/e_w`.
    Absolute,
    /// `log_p |α|_w = -(e_w f_w/[K:Q]) v_w(α)/e_w`.
    Field,
}

/// All places of `k` above `p`, in canonical order.
pub fn places_above(k: &NumberField, p: u64) -> Result<Vec<Place>> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut cache = k.places_cache().lock().expect("place cache poisoned");
    if let Some(hit) = cache.get(&p) {
        return hit.clone();
    }
    let computed = compute_places(k, p);
    cache.insert(p, computed.clone());
    computed
}

fn compute_places(k: &NumberField, p: u64) -> Result<Vec<Place>> {
    let f = k.poly();
    let fp = Fp::new(p);
    let fbar = fp.reduce(f);
    let factors = fp.factor(&fbar);

    // Dedekind: Z[θ] is p-maximal iff gcd(F̄, ḡ, h̄) = 1 where g = Π g_i,
    // h = Π g_i^(e_i - 1) and F = (f - g h)/p.
    let g = factors
        .iter()
        .fold(vec![1u64], |acc, (gi, _)| fp.mul(&acc, gi));
    let h = factors.iter().fold(vec![1u64], |acc, (gi, ei)| {
        fp.mul(&acc, &fp.pow(gi, ei - 1))
    });
    let diff = f.sub(&fp.to_int(&g).mul(&fp.to_int(&h)));
    let pb = BigInt::from(p);
    let big_f = IntPolynomial::new(diff.coeffs().iter().map(|c| c / &pb).collect());
    let common = fp.gcd(&fp.gcd(&fp.reduce(&big_f), &g), &h);
    if common.len() > 1 {
        return Err(Error::NonMaximalOrderAtP {
            prime: p,
            poly: f.clone(),
        });
    }

    let places = factors
        .iter()
        .enumerate()
        .map(|(index, (gi, ei))| {
            let local = fp.pow(gi, *ei);
            let cofactor = fp.div_rem(&fbar, &local).0;
            Place {
                inner: Arc::new(PlaceInner {
                    field_poly: f.clone(),
                    degree: k.degree(),
                    p,
                    e: *ei,
                    f: (gi.len() - 1) as u32,
                    index,
                    residue: gi.clone(),
                    cofactor,
                    generator: fp.to_int_symmetric(gi),
                    lift: Mutex::new(None),
                }),
            }
        })
        .collect();
    Ok(places)
}

/// The place with the given index above `p`.
pub fn place(k: &NumberField, p: u64, index: usize) -> Result<Place> {
    places_above(k, p)?
        .into_iter()
        .nth(index)
        .ok_or(Error::PlaceNotFound { prime: p, index })
}

/// Exact `v_w(α)`, with `v_w(p) = e_w`.
///
/// Writing `α = A(θ)/d`, `v_p(Res(F, A)) = f_w v_w(A)` for the local factor
/// `F` of `f` over `Z_p`. A lift of `F` modulo `p^k` gives the same
/// valuation as long as it stays below `k`, so the precision is doubled
/// until that holds.
pub fn valuation(a: &FieldElement, w: &Place) -> Result<ValuationResult> {
    w.check_field(a.field())?;
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let p = w.prime();
    let (num, den) = a.integral_repr();
    let den_val = arith::valuation(&den, p) as i64;
    let mut k = INITIAL_PRECISION;
    loop {
        let (kk, local) = w.local_factor(k);
        let r = resultant_monic(&local, &num);
        if !r.is_zero() {
            let vr = arith::valuation(&r, p);
            if vr < kk as u64 {
                debug_assert_eq!(vr % w.f() as u64, 0);
                let value = (vr / w.f() as u64) as i64 - w.e() as i64 * den_val;
                return Ok(ValuationResult {
                    value,
                    precision: kk,
                });
            }
        }
        if kk >= PRECISION_CAP {
            return Err(Error::PrecisionOverflow(PRECISION_CAP));
        }
        k = (kk * 2).min(PRECISION_CAP);
    }
}

/// `log_p` of the normalized absolute value, as an exact rational multiple
/// of `log p`.
pub fn log_abs(a: &FieldElement, w: &Place, normalization: Normalization) -> Result<Rational> {
    let v = Rational::from_integer(valuation(a, w)?.value.into());
    let e = Rational::from_integer(w.e().into());
    let abs = -v / e;
    Ok(match normalization {
        Normalization::Absolute => abs,
        Normalization::Field => {
            abs * Rational::new(w.local_degree().into(), w.field_degree().into())
        }
    })
}

/// `[L_w : K_v]` for `w | v`.
pub fn relative_local_degree(w: &Place, v: &Place) -> Rational {
    Rational::new(w.local_degree().into(), v.local_degree().into())
}

/// The places of `L` above the place `v` of `K`, where `ι: K → L`.
pub fn places_over(l: &NumberField, iota: &FieldEmbedding, v: &Place) -> Result<Vec<Place>> {
    if iota.target() != l {
        return Err(Error::InvalidEmbedding(
            "embedding does not land in L".into(),
        ));
    }
    let u = v.local_generator_element(iota.source())?;
    let image = iota.apply(&u)?;
    let mut out = Vec::new();
    for w in places_above(l, v.prime())? {
        if valuation(&image, &w)?.value > 0 {
            out.push(w);
        }
    }
    Ok(out)
}

/// The place of `K` below the place `w` of `L`, where `ι: K → L`.
pub fn place_below(iota: &FieldEmbedding, w: &Place) -> Result<Place> {
    if !w.belongs_to(iota.target()) {
        return Err(Error::PlaceFieldMismatch);
    }
    for v in places_above(iota.source(), w.prime())? {
        let u = v.local_generator_element(iota.source())?;
        if valuation(&iota.apply(&u)?, w)?.value > 0 {
            return Ok(v);
        }
    }
    unreachable!("every place of L lies above some place of K")
}

/// `σ(w)`: the place above the same prime at which `σ(g_w(θ))` has positive
/// valuation.
pub fn galois_image_of_place(sigma: &Automorphism, w: &Place) -> Result<Place> {
    let k = sigma.field();
    let u = w.local_generator_element(k)?;
    let image = sigma.apply(&u)?;
    for cand in places_above(k, w.prime())? {
        if valuation(&image, &cand)?.value > 0 {
            return Ok(cand);
        }
    }
    unreachable!("σ(g_w(θ)) has positive valuation at σ(w)")
}
