use crate::consistent::{ConsistentMap, PlaceTable, PrimeWeights};
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::places::Place;
use crate::rational::{int, rat, Rational};

/// The `K`-Galois-invariant consistent map with `d_K(v)` given on finitely
/// many places and degree-proportional elsewhere.
pub fn invariant_map_from_base(
    k: &NumberField,
    table: &[(Place, Rational)],
    background: PrimeWeights,
) -> Result<ConsistentMap> {
    let mut out = PlaceTable::new();
    for (v, x) in table {
        if !v.belongs_to(k) {
            return Err(Error::PlaceFieldMismatch);
        }
        if out.insert((v.prime(), v.index()), x.clone()).is_some() {
            return Err(Error::DuplicatePlace {
                prime: v.prime(),
                index: v.index(),
            });
        }
    }
    ConsistentMap::galois_invariant(k.clone(), out, background)
}

/// The map on `Q(i)` with `d(v_1) = -1/3`, `d(v_2) = -2/3` at the two places
/// above 5 (canonical order, `v_1 ∋ 2 - i`) and `d = -s_v` elsewhere.
pub fn qi_worked_example() -> ConsistentMap {
    let k = NumberField::parse("x^2+1").expect("x^2 + 1 is irreducible");
    let table = PlaceTable::from([((5, 0), rat(-1, 3)), ((5, 1), rat(-2, 3))]);
    ConsistentMap::galois_invariant(k, table, PrimeWeights::constant(int(-1)))
        .expect("5 has two places in Q(i)")
}
