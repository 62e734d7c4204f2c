use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::consistent::{local_share, ConsistentMap, PlaceTable, PrimeWeights};
use crate::error::{Error, Result};
use crate::field::{Family, FieldEmbedding, NumberField};
use crate::places::{places_above, places_over, Place};
use crate::rational::Rational;

/// Default bound for the split-prime search.
pub const DEFAULT_PRIME_SEARCH_BOUND: u64 = 10_000;

/// The place `v_i` of the subfield `K_i` together with `ε_i(w)` for the
/// places `w | v_i` of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedPlace {
    pub subfield: usize,
    pub base_place: Place,
    pub perturbations: Vec<(Place, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationScheme {
    pub places: Vec<PerturbedPlace>,
}

impl PerturbationScheme {
    /// Every `ε` nonzero and each group summing to zero.
    pub fn is_balanced(&self) -> bool {
        self.places.iter().all(|pp| {
            pp.perturbations.iter().all(|(_, e)| !e.is_zero())
                && pp
                    .perturbations
                    .iter()
                    .map(|(_, e)| e.clone())
                    .sum::<Rational>()
                    .is_zero()
        })
    }

    pub fn primes(&self) -> Vec<u64> {
        self.places.iter().map(|pp| pp.base_place.prime()).collect()
    }
}

/// `(-(m-1), 1, …, 1)`.
pub fn default_epsilons(m: usize) -> Vec<Rational> {
    let mut v = vec![Rational::one(); m];
    v[0] = Rational::from_integer(BigInt::from(1) - BigInt::from(m));
    v
}

/// Squarefree integer `d` with `Q(√r) = Q(√d)`, and `s` with `√d = s √r`.
fn squarefree_kernel(r: &Rational) -> Result<(i64, Rational)> {
    // √(u/v) = √(uv)/v and uv = t^2 d
    let uv: BigInt = r.numer() * r.denom();
    let mut d = uv.signum();
    let mut t = BigInt::one();
    for (p, e) in arith::factorize(&uv)? {
        t *= BigInt::from(p).pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
    }
    let d = i64::try_from(d).map_err(|_| Error::FactorizationTooLarge(uv.to_string()))?;
    // √d = √(uv)/t = v √r / t
    Ok((d, Rational::new(r.denom().clone(), t)))
}

/// Embeddings of the maximal proper subfields, for quadratic fields
/// (`Q`) and biquadratic fields (`Q(√a)`, `Q(√b)`, `Q(√ab)`).
pub fn maximal_subfields(k: &NumberField) -> Result<Vec<FieldEmbedding>> {
    if k.degree() == 2 {
        let q = NumberField::rationals();
        return Ok(vec![FieldEmbedding::from_rational(&q, k)?]);
    }
    let Family::Biquadratic(a, b) = k.family() else {
        return Err(Error::UnsupportedFamily(k.poly().clone()));
    };
    let (sa, sb) = k.biquadratic_square_roots().expect("biquadratic family");
    let mut out = Vec::new();
    for (r, root) in [
        (a.clone(), sa.clone()),
        (b.clone(), sb.clone()),
        (a * b, &sa * &sb),
    ] {
        let (d, s) = squarefree_kernel(&r)?;
        let sub = NumberField::quadratic(d)?;
        out.push(FieldEmbedding::new(&sub, k, root.scale(&s))?);
    }
    Ok(out)
}

fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn validate_subfields(k: &NumberField, subfields: &[FieldEmbedding]) -> Result<()> {
    if subfields.iter().any(|e| e.target() != k) {
        return Err(Error::InvalidEmbedding(
            "subfield embedding does not land in K".into(),
        ));
    }
    let bad = |why: &str| Err(Error::InvalidEmbedding(why.into()));
    match k.family() {
        Family::Rational => Err(Error::UnsupportedFamily(k.poly().clone())),
        Family::Other => Err(Error::NotGalois(k.poly().clone())),
        _ if k.degree() == 2 => {
            if subfields.len() != 1 || !subfields[0].source().is_rational() {
                return bad("the only maximal subfield of a quadratic field is Q");
            }
            Ok(())
        }
        Family::Biquadratic(..) => {
            if subfields.len() != 3 || subfields.iter().any(|e| e.source().degree() != 2) {
                return bad("a biquadratic field has exactly three quadratic subfields");
            }
            let one: Vec<Rational> = k.one().coords().to_vec();
            for i in 0..3 {
                for j in i + 1..3 {
                    let rows = vec![
                        one.clone(),
                        subfields[i].image().coords().to_vec(),
                        subfields[j].image().coords().to_vec(),
                    ];
                    if rank(&rows) < 3 {
                        return bad("two of the supplied quadratic subfields coincide");
                    }
                }
            }
            Ok(())
        }
        _ => {
            if subfields.is_empty() || subfields.iter().any(|e| e.source().degree() >= k.degree()) {
                return bad("subfields must be proper");
            }
            Ok(())
        }
    }
}

/// Finds, for each `K_i`, a place of `K_i` over a fresh prime that splits
/// completely in `K`. Primes at which `K` or `K_i` is not supported are
/// skipped.
fn find_split_places(
    k: &NumberField,
    subfields: &[FieldEmbedding],
    bound: u64,
) -> Result<Vec<(Place, Vec<Place>)>> {
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for iota in subfields {
        let m = iota.relative_degree();
        let mut found = None;
        'primes: for p in arith::primes_between(2, bound + 1) {
            if used.contains(&p) {
                continue;
            }
            if places_above(k, p).is_err() {
                continue;
            }
            let Ok(below) = places_above(iota.source(), p) else {
                continue;
            };
            for v in below {
                let over = places_over(k, iota, &v)?;
                if over.len() == m {
                    found = Some((v, over));
                    break 'primes;
                }
            }
        }
        let (v, over) = found.ok_or(Error::SplitPlaceNotFound(bound))?;
        used.insert(v.prime());
        out.push((v, over));
    }
    Ok(out)
}

/// The open-subgroup construction: a `K`-Galois-invariant map equal to
/// `x_p s_w` except at the places above one completely split place `v_i` of
/// each maximal subfield `K_i`, where `ε_i(w)` is added. Since the `ε_i`
/// sum to zero, `c(K_i, v_i)` and everything below it is unchanged, while
/// `K_i`-Galois invariance fails at `v_i`.
pub fn perturbed_open_subgroup_map(
    k: &NumberField,
    subfields: &[FieldEmbedding],
    x: &PrimeWeights,
    prime_search_bound: u64,
) -> Result<(ConsistentMap, PerturbationScheme)> {
    perturbed_open_subgroup_map_with(k, subfields, x, prime_search_bound, None)
}

/// As [`perturbed_open_subgroup_map`], with explicit `ε` lists (one per
/// subfield, in canonical place order) instead of the default.
pub fn perturbed_open_subgroup_map_with(
    k: &NumberField,
    subfields: &[FieldEmbedding],
    x: &PrimeWeights,
    prime_search_bound: u64,
    epsilons: Option<&[Vec<Rational>]>,
) -> Result<(ConsistentMap, PerturbationScheme)> {
    validate_subfields(k, subfields)?;
    if let Some(eps) = epsilons {
        if eps.len() != subfields.len() {
            return Err(Error::InvalidScheme(format!(
                "{} epsilon lists for {} subfields",
                eps.len(),
                subfields.len()
            )));
        }
    }
    let split = find_split_places(k, subfields, prime_search_bound)?;
    let mut table = PlaceTable::new();
    let mut places = Vec::new();
    for (i, (v, over)) in split.into_iter().enumerate() {
        let eps = match epsilons {
            Some(e) => e[i].clone(),
            None => default_epsilons(over.len()),
        };
        if eps.len() != over.len() {
            return Err(Error::InvalidScheme(format!(
                "subfield {i}: {} values for {} places",
                eps.len(),
                over.len()
            )));
        }
        if eps.iter().any(Zero::is_zero) || !eps.iter().cloned().sum::<Rational>().is_zero() {
            return Err(Error::InvalidScheme(format!(
                "subfield {i}: values must be nonzero and sum to 0"
            )));
        }
        let mut perturbations = Vec::new();
        for (w, e) in over.into_iter().zip(eps) {
            let value = x.get(w.prime()) * local_share(&w) + &e;
            table.insert((w.prime(), w.index()), value);
            perturbations.push((w, e));
        }
        places.push(PerturbedPlace {
            subfield: i,
            base_place: v,
            perturbations,
        });
    }
    let map = ConsistentMap::galois_invariant(k.clone(), table, x.clone())?;
    Ok((map, PerturbationScheme { places }))
}
