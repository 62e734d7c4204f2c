//! A fixed collection of small fields, embeddings and towers, used by the
//! test suites and as the CLI's default probe corpus.

use crate::arith::primes_between;
use crate::consistent::EvaluationContext;
use crate::error::Result;
use crate::field::{FieldElement, FieldEmbedding, NumberField};
use crate::places::{places_above, Place};
use crate::rational::rat;

/// `Q(√2, √3)` presented by `x^4 - 4x^2 + 1`, the minimal polynomial of
/// `(√2 + √6)/2`. Unlike `x^4 - 10x^2 + 1`, this order is maximal at 2.
pub fn biquadratic_2_3_maximal() -> NumberField {
    NumberField::parse("x^4-4x^2+1").expect("irreducible quartic")
}

/// Every field in the corpus.
pub fn fields() -> Vec<NumberField> {
    let mut out = vec![NumberField::rationals()];
    for d in [-1, 2, 3, -2, -3, -5, 6, 5] {
        out.push(NumberField::quadratic(d).expect("non-square"));
    }
    out.push(NumberField::parse("x^3-2").expect("irreducible cubic"));
    out.push(NumberField::cyclotomic(8).expect("cyclotomic"));
    out.push(NumberField::cyclotomic(12).expect("cyclotomic"));
    out.push(NumberField::cyclotomic(5).expect("cyclotomic"));
    out.push(NumberField::biquadratic(2, 3).expect("biquadratic"));
    out.push(biquadratic_2_3_maximal());
    out
}

fn elt(k: &NumberField, c: &[(i64, i64)]) -> FieldElement {
    k.element(c.iter().map(|&(n, d)| rat(n, d)).collect())
        .expect("degree matches")
}

fn embed(src: &NumberField, dst: &NumberField, c: &[(i64, i64)]) -> FieldEmbedding {
    FieldEmbedding::new(src, dst, elt(dst, c)).expect("known embedding")
}

/// Embeddings of quadratic subfields into the quartic corpus fields.
pub fn quadratic_embeddings() -> Vec<FieldEmbedding> {
    let q = |d| NumberField::quadratic(d).expect("non-square");
    let z8 = NumberField::cyclotomic(8).unwrap();
    let z12 = NumberField::cyclotomic(12).unwrap();
    let b = NumberField::biquadratic(2, 3).unwrap();
    let bm = biquadratic_2_3_maximal();
    vec![
        // ζ_8: i = θ^2, √2 = θ - θ^3, √-2 = θ + θ^3
        embed(&q(-1), &z8, &[(0, 1), (0, 1), (1, 1), (0, 1)]),
        embed(&q(2), &z8, &[(0, 1), (1, 1), (0, 1), (-1, 1)]),
        embed(&q(-2), &z8, &[(0, 1), (1, 1), (0, 1), (1, 1)]),
        // ζ_12: i = θ^3, √3 = 2θ - θ^3, √-3 = 2θ^2 - 1
        embed(&q(-1), &z12, &[(0, 1), (0, 1), (0, 1), (1, 1)]),
        embed(&q(3), &z12, &[(0, 1), (2, 1), (0, 1), (-1, 1)]),
        embed(&q(-3), &z12, &[(-1, 1), (0, 1), (2, 1), (0, 1)]),
        // θ = √2 + √3: √2 = (θ^3 - 9θ)/2, √3 = (11θ - θ^3)/2, √6 = (θ^2 - 5)/2
        embed(&q(2), &b, &[(0, 1), (-9, 2), (0, 1), (1, 2)]),
        embed(&q(3), &b, &[(0, 1), (11, 2), (0, 1), (-1, 2)]),
        embed(&q(6), &b, &[(-5, 2), (0, 1), (1, 2), (0, 1)]),
        // θ = (√2 + √6)/2: √2 = θ^3 - 3θ, √3 = θ^2 - 2, √6 = 5θ - θ^3
        embed(&q(2), &bm, &[(0, 1), (-3, 1), (0, 1), (1, 1)]),
        embed(&q(3), &bm, &[(-2, 1), (0, 1), (1, 1), (0, 1)]),
        embed(&q(6), &bm, &[(0, 1), (5, 1), (0, 1), (-1, 1)]),
    ]
}

/// `Q → K` for every corpus field, plus [`quadratic_embeddings`].
pub fn embeddings() -> Vec<FieldEmbedding> {
    let q = NumberField::rationals();
    let mut out: Vec<FieldEmbedding> = fields()
        .iter()
        .filter(|k| !k.is_rational())
        .map(|k| FieldEmbedding::from_rational(&q, k).expect("Q embeds everywhere"))
        .collect();
    out.extend(quadratic_embeddings());
    out
}

/// All corpus embeddings registered.
pub fn context() -> EvaluationContext {
    EvaluationContext::new().with_embeddings(embeddings())
}

/// A chain `Q = K_1 ⊆ K_2 ⊆ …` given by its successive embeddings.
#[derive(Clone, Debug)]
pub struct Tower {
    pub name: &'static str,
    pub steps: Vec<FieldEmbedding>,
}

impl Tower {
    pub fn fields(&self) -> Vec<NumberField> {
        let mut out = vec![self.steps[0].source().clone()];
        out.extend(self.steps.iter().map(|e| e.target().clone()));
        out
    }

    pub fn top(&self) -> &NumberField {
        self.steps.last().expect("nonempty tower").target()
    }
}

fn two_step(name: &'static str, d: i64, upper: FieldEmbedding) -> Tower {
    let q = NumberField::rationals();
    let k = NumberField::quadratic(d).unwrap();
    Tower {
        name,
        steps: vec![FieldEmbedding::from_rational(&q, &k).unwrap(), upper],
    }
}

/// `Q ⊂ Q(i) ⊂ Q(ζ_8)`.
pub fn gaussian_tower() -> Tower {
    two_step("Q < Q(i) < Q(zeta_8)", -1, quadratic_embeddings().remove(0))
}

/// `Q ⊂ Q(√2) ⊂ Q(√2, √3)` in the presentation `x^4 - 10x^2 + 1`.
pub fn sqrt2_tower() -> Tower {
    two_step(
        "Q < Q(sqrt 2) < Q(sqrt 2, sqrt 3)",
        2,
        quadratic_embeddings().remove(6),
    )
}

/// As [`sqrt2_tower`] in the presentation `x^4 - 4x^2 + 1`, supported at 2.
pub fn sqrt2_tower_maximal() -> Tower {
    two_step(
        "Q < Q(sqrt 2) < Q((sqrt 2 + sqrt 6)/2)",
        2,
        quadratic_embeddings().remove(9),
    )
}

/// Every two-step tower `Q ⊂ Q(√d) ⊂ L` of the corpus.
pub fn towers() -> Vec<Tower> {
    let q = NumberField::rationals();
    quadratic_embeddings()
        .into_iter()
        .map(|e| Tower {
            name: "quadratic < quartic",
            steps: vec![FieldEmbedding::from_rational(&q, e.source()).unwrap(), e],
        })
        .collect()
}

/// `(K, w)` for every corpus field and every place above the given primes
/// at which `K` is supported.
pub fn probe_places(primes: &[u64]) -> Result<Vec<(NumberField, Place)>> {
    let mut out = Vec::new();
    for k in fields() {
        for &p in primes {
            if let Ok(ws) = places_above(&k, p) {
                out.extend(ws.into_iter().map(|w| (k.clone(), w)));
            }
        }
    }
    Ok(out)
}

/// Primes below `bound`.
pub fn small_primes(bound: u64) -> Vec<u64> {
    primes_between(2, bound)
}
