use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::consistent::{ConsistentMap, PlaceTable, PrimeWeights, TowerMap};
use crate::error::{Error, Result};
use crate::field::{FieldEmbedding, NumberField};
use crate::places::{places_above, places_over, relative_local_degree, Place};
use crate::rational::Rational;

/// One chosen `ε_i(w)` together with the open interval it must lie in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonRecord {
    /// 1-based step: the extension from level `step - 1` to level `step`.
    pub step: usize,
    pub base_place: Place,
    pub place: Place,
    pub epsilon: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

impl EpsilonRecord {
    pub fn strictly_inside(&self) -> bool {
        self.lower < self.epsilon && self.epsilon < self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerPrefix {
    pub map: ConsistentMap,
    pub epsilons: Vec<EpsilonRecord>,
}

/// `2^{-i-1}`.
pub fn step_radius(step: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (step + 1))
}

/// Weights `ε_w` with `Σ r_w ε_w = 1`, all within `1 ± δ/2`, none equal
/// to 1. Needs at least two `r_w`, all positive, summing to 1.
fn solve_epsilons(r: &[Rational], delta: &Rational) -> Vec<Rational> {
    let one = Rational::one();
    let last = r.last().expect("at least two places").clone();
    let rest = &one - &last;
    let t = (&last / &rest).min(one.clone());
    let bump = delta / Rational::from_integer(2.into()) * &t;
    let mut out = vec![&one + &bump; r.len() - 1];
    out.push(&one - &rest / &last * &bump);
    out
}

fn check_galois(k: &NumberField) -> Result<()> {
    match k.automorphisms() {
        Ok(a) if a.len() == k.degree() => Ok(()),
        _ => Err(Error::UnsupportedFamily(k.poly().clone())),
    }
}

/// First `depth` levels of the tower construction along `chain`, which
/// starts at `Q`. Away from `q` every table is degree-proportional; at `q`
/// each step multiplies `d_i(v)` by `ε(w) [L_w:K_v]/[L:K]`.
pub fn tower_map_prefix(
    chain: &[FieldEmbedding],
    q: u64,
    x: &PrimeWeights,
    depth: usize,
) -> Result<TowerPrefix> {
    if depth == 0 || depth > chain.len() + 1 {
        return Err(Error::InvalidChain(format!(
            "depth {depth} for a chain of {} fields",
            chain.len() + 1
        )));
    }
    let base = chain
        .first()
        .map_or_else(NumberField::rationals, |e| e.source().clone());
    if !base.is_rational() {
        return Err(Error::InvalidChain("the chain must start at Q".into()));
    }
    let xq = x.get(q);
    if xq.is_zero() {
        return Err(Error::ZeroWeight(q));
    }
    let steps = &chain[..depth - 1];
    let mut fields = vec![base];
    for e in steps {
        check_galois(e.target())?;
        fields.push(e.target().clone());
    }

    let mut tables = vec![PlaceTable::new(); depth];
    let q_place = places_above(&fields[0], q)?.remove(0);
    tables[0].insert((q, 0), xq.clone());
    let mut current: Vec<(Place, Rational)> = vec![(q_place, xq)];
    let mut epsilons = Vec::new();
    for (i, iota) in steps.iter().enumerate() {
        let step = i + 1;
        let delta = step_radius(step);
        let n = Rational::from_integer(iota.relative_degree().into());
        let mut next = Vec::new();
        for (v, dv) in &current {
            let over = places_over(iota.target(), iota, v)?;
            if over.len() < 2 {
                return Err(Error::NoSplittingStep { step, prime: q });
            }
            let r: Vec<Rational> = over
                .iter()
                .map(|w| relative_local_degree(w, v) / &n)
                .collect();
            let eps = solve_epsilons(&r, &delta);
            for ((w, rw), e) in over.into_iter().zip(r).zip(eps) {
                let dw = &e * rw * dv;
                tables[step].insert((q, w.index()), dw.clone());
                epsilons.push(EpsilonRecord {
                    step,
                    base_place: v.clone(),
                    place: w.clone(),
                    epsilon: e,
                    lower: Rational::one() - &delta,
                    upper: Rational::one() + &delta,
                });
                next.push((w, dw));
            }
        }
        current = next;
    }
    let tower = TowerMap::new(fields, steps.to_vec(), tables, x.clone())?;
    Ok(TowerPrefix {
        map: ConsistentMap::TowerDefined(tower),
        epsilons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistent::{check_galois_invariance, evaluate, EvaluationContext};
    use crate::places::place;
    use crate::rational::{int, rat};

    fn gaussian_chain() -> Vec<FieldEmbedding> {
        let q = NumberField::rationals();
        let qi = NumberField::parse("x^2+1").unwrap();
        let z8 = NumberField::cyclotomic(8).unwrap();
        let t = z8.generator();
        vec![
            FieldEmbedding::from_rational(&q, &qi).unwrap(),
            FieldEmbedding::new(&qi, &z8, t.checked_mul(&t).unwrap()).unwrap(),
        ]
    }

    #[test]
    fn epsilons_balance() {
        let r = vec![rat(1, 2), rat(1, 2)];
        let e = solve_epsilons(&r, &rat(1, 4));
        assert_eq!(e, vec![rat(9, 8), rat(7, 8)]);
        let r = vec![rat(1, 4), rat(1, 4), rat(1, 2)];
        let e = solve_epsilons(&r, &rat(1, 8));
        let s: Rational = r.iter().zip(&e).map(|(a, b)| a * b).sum();
        assert_eq!(s, int(1));
        assert!(e.iter().all(|x| *x != int(1)));
    }

    #[test]
    fn depth_one_is_degree_proportional() {
        let x = PrimeWeights::constant(int(-1));
        let p = tower_map_prefix(&gaussian_chain(), 5, &x, 1).unwrap();
        assert!(p.epsilons.is_empty());
        let q = NumberField::rationals();
        let ctx = EvaluationContext::new();
        assert_eq!(
            evaluate(&p.map, &q, &place(&q, 5, 0).unwrap(), &ctx).unwrap(),
            int(-1)
        );
    }

    #[test]
    fn five_is_inert_at_the_second_step() {
        let x = PrimeWeights::constant(int(-1));
        let err = tower_map_prefix(&gaussian_chain(), 5, &x, 3).unwrap_err();
        assert!(matches!(err, Error::NoSplittingStep { step: 2, prime: 5 }));
    }

    #[test]
    fn seventeen_splits_all_the_way() {
        let chain = gaussian_chain();
        let x = PrimeWeights::constant(int(-1));
        let p = tower_map_prefix(&chain, 17, &x, 3).unwrap();
        assert_eq!(p.epsilons.len(), 2 + 4);
        assert!(p.epsilons.iter().all(EpsilonRecord::strictly_inside));
        let q = NumberField::rationals();
        let ctx = EvaluationContext::new().with_embeddings(chain.clone());
        let v = place(&q, 17, 0).unwrap();
        assert_eq!(evaluate(&p.map, &q, &v, &ctx).unwrap(), int(-1));
        assert!(
            !check_galois_invariance(&p.map, &q, &chain[0], &v, &ctx)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn zero_weight_rejected() {
        let x = PrimeWeights::constant(int(-1)).with(5, int(0));
        assert!(matches!(
            tower_map_prefix(&gaussian_chain(), 5, &x, 2),
            Err(Error::ZeroWeight(5))
        ));
    }
}
