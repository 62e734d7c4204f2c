use crate::consistent::{ConsistentMap, EvaluationContext};
use crate::error::{Error, Result};
use crate::field::{Automorphism, FieldElement};
use crate::functionals::phi;
use crate::rational::Rational;

/// `(α, Φ_c(σα), Φ_c(α))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerWitness {
    pub element: FieldElement,
    pub moved: Rational,
    pub original: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReport {
    /// True iff every probe satisfies `Φ_c(σα) = Φ_c(α)`. A `false` proves
    /// that `σ` moves `Φ_c`; a `true` is only evidence.
    pub holds: bool,
    pub witnesses: Vec<StabilizerWitness>,
}

impl StabilizerReport {
    pub fn first_violation(&self) -> Option<&StabilizerWitness> {
        self.witnesses.iter().find(|w| w.moved != w.original)
    }
}

pub fn stabilizer_probe(
    c: &ConsistentMap,
    sigma: &Automorphism,
    probes: &[FieldElement],
    ctx: &EvaluationContext,
) -> Result<StabilizerReport> {
    let mut witnesses = Vec::with_capacity(probes.len());
    for a in probes {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let moved = phi(c, &sigma.apply(a)?, 1, ctx)?;
        let original = phi(c, a, 1, ctx)?;
        witnesses.push(StabilizerWitness {
            element: a.clone(),
            moved,
            original,
        });
    }
    let holds = witnesses.iter().all(|w| w.moved == w.original);
    Ok(StabilizerReport { holds, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::qi_worked_example;
    use crate::field::NumberField;
    use crate::rational::rat;

    #[test]
    fn conjugation_moves_the_worked_example() {
        let k = NumberField::parse("x^2+1").unwrap();
        let conj = Automorphism::new(&k, k.from_i64s(&[0, -1])).unwrap();
        let ctx = EvaluationContext::new();
        let r =
            stabilizer_probe(&qi_worked_example(), &conj, &[k.from_i64s(&[2, -1])], &ctx).unwrap();
        assert!(!r.holds);
        let w = r.first_violation().unwrap();
        assert_eq!(
            (w.original.clone(), w.moved.clone()),
            (rat(1, 3), rat(2, 3))
        );
        let id = Automorphism::identity(&k);
        assert!(
            stabilizer_probe(&qi_worked_example(), &id, &[k.from_i64s(&[2, -1])], &ctx)
                .unwrap()
                .holds
        );
        let canon = ConsistentMap::canonical();
        assert!(
            stabilizer_probe(
                &canon,
                &conj,
                &[k.from_i64s(&[2, -1]), k.from_i64s(&[1, 1])],
                &ctx
            )
            .unwrap()
            .holds
        );
    }
}
