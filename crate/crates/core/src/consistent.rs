//! Finite descriptions of consistent maps `c : J → Q` and the checks that
//! go with them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldEmbedding, NumberField};
use crate::places::{place_below, places_above, places_over, relative_local_degree, Place};
use crate::poly::IntPolynomial;
use crate::rational::Rational;

/// Values attached to places `(prime, index)` of a single field.
pub type PlaceTable = BTreeMap<(u64, usize), Rational>;

/// A function `p ↦ x_p` given by finitely many overrides on top of a
/// default value.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PrimeWeights {
    pub default: Rational,
    pub overrides: BTreeMap<u64, Rational>,
}

impl PrimeWeights {
    pub fn constant(x: Rational) -> Self {
        PrimeWeights {
            default: x,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with(mut self, p: u64, x: Rational) -> Self {
        self.overrides.insert(p, x);
        self
    }

    pub fn get(&self, p: u64) -> Rational {
        self.overrides
            .get(&p)
            .cloned()
            .unwrap_or_else(|| self.default.clone())
    }

    /// `x_p [K_v:Q_p]/[K:Q]` at the place `v`.
    pub fn degree_proportional(&self, v: &Place) -> Rational {
        self.get(v.prime()) * local_share(v)
    }
}

/// `s_v = [K_v:Q_p]/[K:Q]`.
pub fn local_share(v: &Place) -> Rational {
    Rational::new(v.local_degree().into(), v.field_degree().into())
}

/// A chain `K_1 ⊆ … ⊆ K_m` with tables `d_i` satisfying the ascent identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerMap {
    fields: Vec<NumberField>,
    embeddings: Vec<FieldEmbedding>,
    tables: Vec<PlaceTable>,
    background: PrimeWeights,
}

impl TowerMap {
    /// Validates the chain and checks `d_i(v) = Σ_{w|v} d_{i+1}(w)` at every
    /// place above every prime that occurs in some table.
    pub fn new(
        fields: Vec<NumberField>,
        embeddings: Vec<FieldEmbedding>,
        tables: Vec<PlaceTable>,
        background: PrimeWeights,
    ) -> Result<Self> {
        if fields.is_empty() {
            return Err(Error::InvalidChain("empty chain".into()));
        }
        if embeddings.len() + 1 != fields.len() || tables.len() != fields.len() {
            return Err(Error::InvalidChain(format!(
                "{} fields need {} embeddings and {} tables",
                fields.len(),
                fields.len() - 1,
                fields.len()
            )));
        }
        for (i, e) in embeddings.iter().enumerate() {
            if e.source() != &fields[i] || e.target() != &fields[i + 1] {
                return Err(Error::InvalidChain(format!(
                    "embedding {i} does not map level {i} to level {}",
                    i + 1
                )));
            }
        }
        for (k, t) in fields.iter().zip(&tables) {
            validate_table(k, t)?;
        }
        let map = TowerMap {
            fields,
            embeddings,
            tables,
            background,
        };
        map.verify_ascent()?;
        Ok(map)
    }

    pub fn fields(&self) -> &[NumberField] {
        &self.fields
    }

    pub fn embeddings(&self) -> &[FieldEmbedding] {
        &self.embeddings
    }

    pub fn tables(&self) -> &[PlaceTable] {
        &self.tables
    }

    pub fn background(&self) -> &PrimeWeights {
        &self.background
    }

    /// `d_i(v)`.
    pub fn d(&self, level: usize, v: &Place) -> Rational {
        self.tables[level]
            .get(&(v.prime(), v.index()))
            .cloned()
            .unwrap_or_else(|| self.background.degree_proportional(v))
    }

    fn verify_ascent(&self) -> Result<()> {
        let primes: BTreeSet<u64> = self
            .tables
            .iter()
            .flat_map(|t| t.keys().map(|k| k.0))
            .collect();
        for &p in &primes {
            for i in 0..self.fields.len() - 1 {
                for v in places_above(&self.fields[i], p)? {
                    let lhs = self.d(i, &v);
                    let mut rhs = Rational::zero();
                    for w in places_over(&self.fields[i + 1], &self.embeddings[i], &v)? {
                        rhs += self.d(i + 1, &w);
                    }
                    if lhs != rhs {
                        return Err(Error::AscendViolation {
                            level: i,
                            prime: p,
                            index: v.index(),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks that every key names an existing place.
pub(crate) fn validate_table(k: &NumberField, table: &PlaceTable) -> Result<()> {
    for &(p, index) in table.keys() {
        let n = places_above(k, p)?.len();
        if index >= n {
            return Err(Error::PlaceNotFound { prime: p, index });
        }
    }
    Ok(())
}

/// A consistent map, described finitely and evaluated lazily.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistentMap {
    /// `c(K,v) = x_p [K_v:Q_p]/[K:Q]`.
    DegreeProportional(PrimeWeights),
    /// The `K`-Galois-invariant map determined by `d_K`, with `d_K` given by
    /// `table` and by the degree-proportional `background` elsewhere.
    GaloisInvariantFromBase {
        field: NumberField,
        table: PlaceTable,
        background: PrimeWeights,
    },
    TowerDefined(TowerMap),
    LinearCombination(Vec<(Rational, ConsistentMap)>),
    /// Arbitrary values per `(field, prime, index)`, degree-proportional
    /// elsewhere. Nothing forces such a table to be consistent, which is the
    /// point: it is how counterexamples are written down.
    RawTable {
        entries: BTreeMap<(IntPolynomial, u64, usize), Rational>,
        fallback: PrimeWeights,
    },
}

impl ConsistentMap {
    pub fn degree_proportional(x: PrimeWeights) -> Self {
        ConsistentMap::DegreeProportional(x)
    }

    /// `x_p ≡ -1`, the map whose functional is `Ω(Norm α)/[K:Q]`.
    pub fn canonical() -> Self {
        ConsistentMap::DegreeProportional(PrimeWeights::constant(Rational::from_integer(
            (-1).into(),
        )))
    }

    pub fn zero() -> Self {
        ConsistentMap::DegreeProportional(PrimeWeights::default())
    }

    pub fn galois_invariant(
        field: NumberField,
        table: PlaceTable,
        background: PrimeWeights,
    ) -> Result<Self> {
        validate_table(&field, &table)?;
        Ok(ConsistentMap::GaloisInvariantFromBase {
            field,
            table,
            background,
        })
    }
}

/// `Σ r_i c_i`.
pub fn combine(maps: Vec<(Rational, ConsistentMap)>) -> ConsistentMap {
    ConsistentMap::LinearCombination(maps)
}

/// Registered embeddings and an optional preferred overfield.
#[derive(Clone, Debug, Default)]
pub struct EvaluationContext {
    embeddings: Vec<FieldEmbedding>,
    overfield: Option<NumberField>,
}

impl EvaluationContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_embedding(mut self, e: FieldEmbedding) -> Self {
        self.register(e);
        self
    }

    pub fn with_embeddings(mut self, es: impl IntoIterator<Item = FieldEmbedding>) -> Self {
        for e in es {
            self.register(e);
        }
        self
    }

    pub fn with_overfield(mut self, l: NumberField) -> Self {
        self.overfield = Some(l);
        self
    }

    pub fn overfield(&self) -> Option<&NumberField> {
        self.overfield.as_ref()
    }

    pub fn embeddings(&self) -> &[FieldEmbedding] {
        &self.embeddings
    }

    pub fn register(&mut self, e: FieldEmbedding) {
        if !self.embeddings.contains(&e) {
            self.embeddings.push(e);
        }
    }

    /// An embedding `from → to`: the identity, the unique one out of `Q`, or
    /// a composite of registered embeddings found breadth first.
    pub fn resolve(&self, from: &NumberField, to: &NumberField) -> Option<FieldEmbedding> {
        if from == to {
            return Some(FieldEmbedding::identity(from));
        }
        if from.is_rational() {
            return FieldEmbedding::from_rational(from, to).ok();
        }
        if !to.degree().is_multiple_of(from.degree()) {
            return None;
        }
        let mut queue = VecDeque::from([FieldEmbedding::identity(from)]);
        let mut seen = vec![from.clone()];
        while let Some(cur) = queue.pop_front() {
            for e in &self.embeddings {
                if e.source() != cur.target() || seen.contains(e.target()) {
                    continue;
                }
                let Ok(next) = cur.then(e) else { continue };
                if next.target() == to {
                    return Some(next);
                }
                seen.push(next.target().clone());
                queue.push_back(next);
            }
        }
        None
    }
}

/// `c(F, u)`.
pub fn evaluate(
    c: &ConsistentMap,
    f: &NumberField,
    u: &Place,
    ctx: &EvaluationContext,
) -> Result<Rational> {
    if !u.belongs_to(f) {
        return Err(Error::PlaceFieldMismatch);
    }
    match c {
        ConsistentMap::DegreeProportional(x) => Ok(x.degree_proportional(u)),
        ConsistentMap::GaloisInvariantFromBase {
            field,
            table,
            background,
        } => {
            let d = |v: &Place| {
                table
                    .get(&(v.prime(), v.index()))
                    .cloned()
                    .unwrap_or_else(|| background.degree_proportional(v))
            };
            eval_invariant(field, &d, f, u, ctx)
        }
        ConsistentMap::TowerDefined(t) => eval_tower(t, f, u, ctx),
        ConsistentMap::LinearCombination(terms) => {
            let mut acc = Rational::zero();
            for (r, m) in terms {
                if !r.is_zero() {
                    acc += r * evaluate(m, f, u, ctx)?;
                }
            }
            Ok(acc)
        }
        ConsistentMap::RawTable { entries, fallback } => Ok(entries
            .get(&(f.poly().clone(), u.prime(), u.index()))
            .cloned()
            .unwrap_or_else(|| fallback.degree_proportional(u))),
    }
}

/// `c_L(F,u) = Σ_{w ∈ W_u(L/F)} d_L(w)` with `d_L(w) = ([L_w:K_v]/[L:K]) d_K(v)`.
fn eval_invariant(
    k: &NumberField,
    d: &dyn Fn(&Place) -> Rational,
    f: &NumberField,
    u: &Place,
    ctx: &EvaluationContext,
) -> Result<Rational> {
    let lifted = |iota_k: &FieldEmbedding, w: &Place| -> Result<Rational> {
        let v = place_below(iota_k, w)?;
        let rel = Rational::from_integer(iota_k.relative_degree().into());
        Ok(relative_local_degree(w, &v) / rel * d(&v))
    };
    if let Some(l) = ctx.overfield() {
        if let (Some(iota_k), Some(iota_f)) = (ctx.resolve(k, l), ctx.resolve(f, l)) {
            let mut acc = Rational::zero();
            for w in places_over(l, &iota_f, u)? {
                acc += lifted(&iota_k, &w)?;
            }
            return Ok(acc);
        }
    }
    if f == k {
        return Ok(d(u));
    }
    if let Some(iota) = ctx.resolve(k, f) {
        return lifted(&iota, u);
    }
    if let Some(iota) = ctx.resolve(f, k) {
        let mut acc = Rational::zero();
        for w in places_over(k, &iota, u)? {
            acc += d(&w);
        }
        return Ok(acc);
    }
    Err(Error::NoCommonOverfield)
}

fn eval_tower(
    t: &TowerMap,
    f: &NumberField,
    u: &Place,
    ctx: &EvaluationContext,
) -> Result<Rational> {
    let ctx = ctx.clone().with_embeddings(t.embeddings.iter().cloned());
    let preferred = ctx
        .overfield()
        .and_then(|l| t.fields.iter().position(|k| k == l))
        .and_then(|j| ctx.resolve(f, &t.fields[j]).map(|e| (j, e)));
    let found = preferred.or_else(|| {
        t.fields
            .iter()
            .enumerate()
            .find_map(|(i, k)| ctx.resolve(f, k).map(|e| (i, e)))
    });
    let (level, iota) = found.ok_or(Error::NoCommonOverfield)?;
    let mut acc = Rational::zero();
    for w in places_over(&t.fields[level], &iota, u)? {
        acc += t.d(level, &w);
    }
    Ok(acc)
}

/// Both sides of `c(K,v) = Σ_{w|v} c(L,w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
    pub terms: Vec<(Place, Rational)>,
}

pub fn check_consistency(
    c: &ConsistentMap,
    iota: &FieldEmbedding,
    v: &Place,
    ctx: &EvaluationContext,
) -> Result<ConsistencyReport> {
    let ctx = ctx.clone().with_embedding(iota.clone());
    let k = iota.source();
    let l = iota.target();
    let lhs = evaluate(c, k, v, &ctx)?;
    let mut terms = Vec::new();
    let mut rhs = Rational::zero();
    for w in places_over(l, iota, v)? {
        let x = evaluate(c, l, &w, &ctx)?;
        rhs += &x;
        terms.push((w, x));
    }
    Ok(ConsistencyReport {
        holds: lhs == rhs,
        lhs,
        rhs,
        terms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceEntry {
    pub place: Place,
    pub actual: Rational,
    pub expected: Rational,
}

/// Per-place comparison of `c(L,w)` with `([L_w:K_v]/[L:K]) c(K,v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub holds: bool,
    pub base_value: Rational,
    pub entries: Vec<InvarianceEntry>,
}

impl InvarianceReport {
    pub fn first_violation(&self) -> Option<&InvarianceEntry> {
        self.entries.iter().find(|e| e.actual != e.expected)
    }
}

pub fn check_galois_invariance(
    c: &ConsistentMap,
    k: &NumberField,
    iota: &FieldEmbedding,
    v: &Place,
    ctx: &EvaluationContext,
) -> Result<InvarianceReport> {
    if iota.source() != k {
        return Err(Error::InvalidEmbedding(
            "embedding does not start at K".into(),
        ));
    }
    let ctx = ctx.clone().with_embedding(iota.clone());
    let l = iota.target();
    let base_value = evaluate(c, k, v, &ctx)?;
    let rel = Rational::from_integer(iota.relative_degree().into());
    let mut entries = Vec::new();
    for w in places_over(l, iota, v)? {
        let actual = evaluate(c, l, &w, &ctx)?;
        let expected = relative_local_degree(&w, v) / &rel * &base_value;
        entries.push(InvarianceEntry {
            place: w,
            actual,
            expected,
        });
    }
    let holds = entries.iter().all(|e| e.actual == e.expected);
    Ok(InvarianceReport {
        holds,
        base_value,
        entries,
    })
}

/// True iff `c` vanishes at every probe whose prime is outside `primes`.
pub fn support_check(
    c: &ConsistentMap,
    primes: &BTreeSet<u64>,
    probes: &[(NumberField, Place)],
    ctx: &EvaluationContext,
) -> Result<bool> {
    for (k, v) in probes {
        if !primes.contains(&v.prime()) && !evaluate(c, k, v, ctx)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sampled values of `|c(K,v)| [K:Q]/(e_v f_v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundednessWitness {
    pub max: Rational,
    pub per_prime: BTreeMap<u64, Rational>,
}

pub fn boundedness_witness(
    c: &ConsistentMap,
    probes: &[(NumberField, Place)],
    ctx: &EvaluationContext,
) -> Result<BoundednessWitness> {
    if probes.is_empty() {
        return Err(Error::EmptyProbeSet);
    }
    let mut per_prime: BTreeMap<u64, Rational> = BTreeMap::new();
    for (k, v) in probes {
        let x = evaluate(c, k, v, ctx)?.abs() / local_share(v);
        let slot = per_prime.entry(v.prime()).or_insert_with(Rational::zero);
        if x > *slot {
            *slot = x;
        }
    }
    let max = per_prime
        .values()
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero);
    Ok(BoundednessWitness { max, per_prime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::place;
    use crate::rational::{int, rat};

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn qi() -> NumberField {
        NumberField::parse("x^2+1").unwrap()
    }

    fn qi_map() -> ConsistentMap {
        let table = PlaceTable::from([((5, 0), rat(-1, 3)), ((5, 1), rat(-2, 3))]);
        ConsistentMap::galois_invariant(qi(), table, PrimeWeights::constant(int(-1))).unwrap()
    }

    #[test]
    fn degree_proportional_values() {
        let c = ConsistentMap::canonical();
        let ctx = EvaluationContext::new();
        let k = qi();
        assert_eq!(
            evaluate(&c, &q(), &place(&q(), 7, 0).unwrap(), &ctx).unwrap(),
            int(-1)
        );
        assert_eq!(
            evaluate(&c, &k, &place(&k, 5, 0).unwrap(), &ctx).unwrap(),
            rat(-1, 2)
        );
        assert_eq!(
            evaluate(&c, &k, &place(&k, 3, 0).unwrap(), &ctx).unwrap(),
            int(-1)
        );
    }

    #[test]
    fn invariant_base_descends_to_q() {
        let c = qi_map();
        let ctx = EvaluationContext::new();
        for p in [2, 3, 5, 7, 11] {
            assert_eq!(
                evaluate(&c, &q(), &place(&q(), p, 0).unwrap(), &ctx).unwrap(),
                int(-1)
            );
        }
        let iota = FieldEmbedding::from_rational(&q(), &qi()).unwrap();
        let v = place(&q(), 5, 0).unwrap();
        let r = check_consistency(&c, &iota, &v, &ctx).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, int(-1));
        let inv = check_galois_invariance(&c, &q(), &iota, &v, &ctx).unwrap();
        assert!(!inv.holds);
        let bad = inv.first_violation().unwrap();
        assert_eq!(
            (bad.actual.clone(), bad.expected.clone()),
            (rat(-1, 3), rat(-1, 2))
        );
    }

    #[test]
    fn raw_table_can_break_consistency() {
        let k = qi();
        let entries = BTreeMap::from([
            ((k.poly().clone(), 5, 0), rat(-1, 3)),
            ((k.poly().clone(), 5, 1), rat(-1, 3)),
        ]);
        let c = ConsistentMap::RawTable {
            entries,
            fallback: PrimeWeights::constant(int(-1)),
        };
        let iota = FieldEmbedding::from_rational(&q(), &k).unwrap();
        let r = check_consistency(
            &c,
            &iota,
            &place(&q(), 5, 0).unwrap(),
            &EvaluationContext::new(),
        )
        .unwrap();
        assert!(!r.holds);
        assert_eq!((r.lhs, r.rhs), (int(-1), rat(-2, 3)));
    }

    #[test]
    fn combinations_are_linear() {
        let c = qi_map();
        let k = qi();
        let ctx = EvaluationContext::new();
        let w = place(&k, 5, 1).unwrap();
        let diff = combine(vec![(int(1), c.clone()), (int(-1), c.clone())]);
        assert_eq!(evaluate(&diff, &k, &w, &ctx).unwrap(), int(0));
        let plus = combine(vec![
            (
                int(1),
                ConsistentMap::degree_proportional(PrimeWeights::constant(int(1))),
            ),
            (int(1), ConsistentMap::canonical()),
        ]);
        assert_eq!(
            evaluate(&plus, &q(), &place(&q(), 3, 0).unwrap(), &ctx).unwrap(),
            int(0)
        );
    }

    #[test]
    fn support_and_bounds() {
        let ctx = EvaluationContext::new();
        let k = qi();
        let probes = vec![
            (q(), place(&q(), 3, 0).unwrap()),
            (k.clone(), place(&k, 5, 0).unwrap()),
            (k.clone(), place(&k, 5, 1).unwrap()),
        ];
        assert!(support_check(&ConsistentMap::zero(), &BTreeSet::new(), &probes, &ctx).unwrap());
        assert!(!support_check(&qi_map(), &BTreeSet::from([2]), &probes, &ctx).unwrap());
        let b = boundedness_witness(&qi_map(), &probes, &ctx).unwrap();
        assert_eq!(b.max, rat(4, 3));
        let b = boundedness_witness(&ConsistentMap::canonical(), &probes, &ctx).unwrap();
        assert_eq!(b.max, int(1));
        assert!(matches!(
            boundedness_witness(&qi_map(), &[], &ctx),
            Err(Error::EmptyProbeSet)
        ));
    }

    #[test]
    fn unrelated_field_needs_overfield() {
        let c = qi_map();
        let k2 = NumberField::quadratic(2).unwrap();
        let w = place(&k2, 7, 0).unwrap();
        assert!(matches!(
            evaluate(&c, &k2, &w, &EvaluationContext::new()),
            Err(Error::NoCommonOverfield)
        ));
    }
}
