//! JSON file formats for maps, towers and probe corpora.
//!
//! Rationals are strings `"p/q"` (plain JSON integers are accepted on
//! input), polynomials are coefficient arrays constant term first, and
//! places are `(prime, index)` with the index into the canonical order.
//!
//! ```json
//! {"kind": "degree_proportional", "default": "-1", "overrides": {"5": "1/2"}}
//! {"kind": "galois_invariant_base", "field": [1, 0, 1],
//!  "table": [{"prime": 5, "index": 0, "value": "-1/3"}],
//!  "background": {"default": "-1"}}
//! {"kind": "tower", "fields": [[0, 1], [1, 0, 1]], "embeddings": [["0", "0"]],
//!  "tables": [[], []], "background": {"default": "-1"}}
//! {"kind": "linear_combination", "terms": [{"coefficient": "2", "map": {…}}]}
//! {"kind": "raw_table", "entries": [{"field": [1, 0, 1], "prime": 5,
//!  "index": 0, "value": "1"}], "fallback": {"default": "-1"}}
//! ```
//!
//! In a `tower` doc, `embeddings[i]` is the image of the generator of
//! `fields[i]` in `fields[i+1]`, and `tables[i]` lists `d_i`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::consistent::{ConsistentMap, PlaceTable, PrimeWeights, TowerMap};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldEmbedding, NumberField};
use crate::poly::IntPolynomial;
use crate::rational::{format_rational, parse_rational, Rational};

/// A rational serialized as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Q(Rational::from_integer(n.into()))),
            Raw::Str(s) => parse_rational(&s).map(Q).map_err(serde::de::Error::custom),
        }
    }
}

// Internally tagged enums buffer their content, which loses serde_json's
// string-to-integer key coercion, so keys are parsed by hand.
fn prime_keys<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<u64, Q>, D::Error> {
    BTreeMap::<String, Q>::deserialize(d)?
        .into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<u64>()
                .map(|p| (p, v))
                .map_err(|_| serde::de::Error::custom(format!("bad prime key {k:?}")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsDoc {
    pub default: Q,
    #[serde(default, deserialize_with = "prime_keys")]
    pub overrides: BTreeMap<u64, Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceValue {
    pub prime: u64,
    pub index: usize,
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coefficient: Q,
    pub map: MapDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub field: IntPolynomial,
    pub prime: u64,
    pub index: usize,
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapDoc {
    DegreeProportional {
        default: Q,
        #[serde(default, deserialize_with = "prime_keys")]
        overrides: BTreeMap<u64, Q>,
    },
    GaloisInvariantBase {
        field: IntPolynomial,
        table: Vec<PlaceValue>,
        background: WeightsDoc,
    },
    Tower {
        fields: Vec<IntPolynomial>,
        embeddings: Vec<Vec<Q>>,
        tables: Vec<Vec<PlaceValue>>,
        background: WeightsDoc,
    },
    LinearCombination {
        terms: Vec<TermDoc>,
    },
    RawTable {
        entries: Vec<RawEntry>,
        fallback: WeightsDoc,
    },
}

fn weights_doc(w: &PrimeWeights) -> WeightsDoc {
    WeightsDoc {
        default: Q(w.default.clone()),
        overrides: w
            .overrides
            .iter()
            .map(|(&p, x)| (p, Q(x.clone())))
            .collect(),
    }
}

fn weights(w: &WeightsDoc) -> PrimeWeights {
    PrimeWeights {
        default: w.default.0.clone(),
        overrides: w.overrides.iter().map(|(&p, x)| (p, x.0.clone())).collect(),
    }
}

fn table_doc(t: &PlaceTable) -> Vec<PlaceValue> {
    t.iter()
        .map(|(&(prime, index), v)| PlaceValue {
            prime,
            index,
            value: Q(v.clone()),
        })
        .collect()
}

fn table(entries: &[PlaceValue]) -> Result<PlaceTable> {
    let mut out = PlaceTable::new();
    for e in entries {
        if out.insert((e.prime, e.index), e.value.0.clone()).is_some() {
            return Err(Error::DuplicatePlace {
                prime: e.prime,
                index: e.index,
            });
        }
    }
    Ok(out)
}

fn element(k: &NumberField, coords: &[Q]) -> Result<FieldElement> {
    k.element(coords.iter().map(|q| q.0.clone()).collect())
}

impl MapDoc {
    pub fn from_map(c: &ConsistentMap) -> MapDoc {
        match c {
            ConsistentMap::DegreeProportional(w) => {
                let w = weights_doc(w);
                MapDoc::DegreeProportional {
                    default: w.default,
                    overrides: w.overrides,
                }
            }
            ConsistentMap::GaloisInvariantFromBase {
                field,
                table,
                background,
            } => MapDoc::GaloisInvariantBase {
                field: field.poly().clone(),
                table: table_doc(table),
                background: weights_doc(background),
            },
            ConsistentMap::TowerDefined(t) => MapDoc::Tower {
                fields: t.fields().iter().map(|k| k.poly().clone()).collect(),
                embeddings: t
                    .embeddings()
                    .iter()
                    .map(|e| e.image().coords().iter().cloned().map(Q).collect())
                    .collect(),
                tables: t.tables().iter().map(table_doc).collect(),
                background: weights_doc(t.background()),
            },
            ConsistentMap::LinearCombination(terms) => MapDoc::LinearCombination {
                terms: terms
                    .iter()
                    .map(|(r, m)| TermDoc {
                        coefficient: Q(r.clone()),
                        map: MapDoc::from_map(m),
                    })
                    .collect(),
            },
            ConsistentMap::RawTable { entries, fallback } => MapDoc::RawTable {
                entries: entries
                    .iter()
                    .map(|((f, p, i), v)| RawEntry {
                        field: f.clone(),
                        prime: *p,
                        index: *i,
                        value: Q(v.clone()),
                    })
                    .collect(),
                fallback: weights_doc(fallback),
            },
        }
    }

    /// Builds the map, re-validating tables and the tower ascent identity.
    pub fn to_map(&self) -> Result<ConsistentMap> {
        Ok(match self {
            MapDoc::DegreeProportional { default, overrides } => {
                ConsistentMap::DegreeProportional(weights(&WeightsDoc {
                    default: default.clone(),
                    overrides: overrides.clone(),
                }))
            }
            MapDoc::GaloisInvariantBase {
                field,
                table: t,
                background,
            } => ConsistentMap::galois_invariant(
                NumberField::new(field.clone())?,
                table(t)?,
                weights(background),
            )?,
            MapDoc::Tower {
                fields,
                embeddings,
                tables,
                background,
            } => {
                let ks = fields
                    .iter()
                    .cloned()
                    .map(NumberField::new)
                    .collect::<Result<Vec<_>>>()?;
                if embeddings.len() + 1 != ks.len() {
                    return Err(Error::InvalidChain(format!(
                        "{} fields need {} embeddings",
                        ks.len(),
                        ks.len().saturating_sub(1)
                    )));
                }
                let mut es = Vec::new();
                for (i, img) in embeddings.iter().enumerate() {
                    es.push(FieldEmbedding::new(
                        &ks[i],
                        &ks[i + 1],
                        element(&ks[i + 1], img)?,
                    )?);
                }
                let ts = tables
                    .iter()
                    .map(|t| table(t))
                    .collect::<Result<Vec<_>>>()?;
                ConsistentMap::TowerDefined(TowerMap::new(ks, es, ts, weights(background))?)
            }
            MapDoc::LinearCombination { terms } => ConsistentMap::LinearCombination(
                terms
                    .iter()
                    .map(|t| Ok((t.coefficient.0.clone(), t.map.to_map()?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            MapDoc::RawTable { entries, fallback } => {
                let mut out = BTreeMap::new();
                for e in entries {
                    NumberField::new(e.field.clone())?;
                    if out
                        .insert((e.field.clone(), e.prime, e.index), e.value.0.clone())
                        .is_some()
                    {
                        return Err(Error::DuplicatePlace {
                            prime: e.prime,
                            index: e.index,
                        });
                    }
                }
                ConsistentMap::RawTable {
                    entries: out,
                    fallback: weights(fallback),
                }
            }
        })
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_map_doc(s: &str) -> Result<MapDoc> {
    serde_json::from_str(s).map_err(json_error)
}

pub fn parse_map(s: &str) -> Result<ConsistentMap> {
    parse_map_doc(s)?.to_map()
}

pub fn map_to_json(c: &ConsistentMap) -> String {
    serde_json::to_string_pretty(&MapDoc::from_map(c)).expect("maps always serialize")
}

/// One chain of fields with the images of successive generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDoc {
    pub fields: Vec<IntPolynomial>,
    pub embeddings: Vec<Vec<Q>>,
}

impl ChainDoc {
    pub fn from_embeddings(steps: &[FieldEmbedding]) -> ChainDoc {
        let mut fields = Vec::new();
        if let Some(first) = steps.first() {
            fields.push(first.source().poly().clone());
        }
        fields.extend(steps.iter().map(|e| e.target().poly().clone()));
        ChainDoc {
            fields,
            embeddings: steps
                .iter()
                .map(|e| e.image().coords().iter().cloned().map(Q).collect())
                .collect(),
        }
    }

    pub fn to_embeddings(&self) -> Result<Vec<FieldEmbedding>> {
        if self.fields.is_empty() || self.embeddings.len() + 1 != self.fields.len() {
            return Err(Error::InvalidChain(format!(
                "{} fields with {} embeddings",
                self.fields.len(),
                self.embeddings.len()
            )));
        }
        let ks = self
            .fields
            .iter()
            .cloned()
            .map(NumberField::new)
            .collect::<Result<Vec<_>>>()?;
        (0..self.embeddings.len())
            .map(|i| {
                FieldEmbedding::new(
                    &ks[i],
                    &ks[i + 1],
                    element(&ks[i + 1], &self.embeddings[i])?,
                )
            })
            .collect()
    }
}

/// Towers to check, with the primes to check them at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDoc {
    pub towers: Vec<ChainDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
}

pub fn parse_tower_doc(s: &str) -> Result<TowerDoc> {
    serde_json::from_str(s).map_err(json_error)
}

/// Fields and primes whose places serve as probes, plus the embeddings
/// that connect them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeCorpusDoc {
    pub fields: Vec<IntPolynomial>,
    pub primes: Vec<u64>,
    #[serde(default)]
    pub embeddings: Vec<ChainDoc>,
}

pub fn parse_probe_corpus(s: &str) -> Result<ProbeCorpusDoc> {
    serde_json::from_str(s).map_err(json_error)
}
