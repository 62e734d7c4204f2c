//! `nfdual`: command-line front end. Every command prints one JSON object;
//! rationals are `"p/q"` strings.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use nfdual::consistent::{
    boundedness_witness, check_consistency, check_galois_invariance, evaluate, EvaluationContext,
};
use nfdual::constructions::{
    invariant_map_from_base, maximal_subfields, perturbed_open_subgroup_map, qi_worked_example,
    single_place_element, tower_map_prefix, DEFAULT_PRIME_SEARCH_BOUND, DEFAULT_SEARCH_BOUND,
};
use nfdual::corpus;
use nfdual::functionals::{omega_canonical, phi, snorm, summatory_chowla};
use nfdual::json::{map_to_json, parse_map, parse_probe_corpus, parse_tower_doc, ChainDoc};
use nfdual::places::{place, places_above, valuation, Place};
use nfdual::rational::{format_rational, parse_rational, to_f64};
use nfdual::{
    ConsistentMap, Error, FieldEmbedding, IntPolynomial, NumberField, PrimeWeights, Rational,
};

const EXIT_DOMAIN: u8 = 2;
const EXIT_INPUT: u8 = 3;
const DEFAULT_PROBE_PRIME_BOUND: u64 = 30;

#[derive(Parser)]
#[command(
    name = "nfdual",
    version,
    about = "Places, consistent maps and their functionals, in exact arithmetic"
)]
struct Cli {
    /// JSON probe corpus: fields, primes and extra embeddings.
    #[arg(long, global = true, value_name = "FILE")]
    probe_corpus: Option<String>,
    /// Add decimal renderings next to exact values.
    #[arg(long, global = true)]
    approx: bool,
    /// Enumeration radius for special-element.
    #[arg(long, global = true, value_name = "N")]
    search_bound: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, discriminant and per-prime support of Q[x]/(f).
    Field {
        field: String,
        /// Report primes below this bound.
        #[arg(long, default_value_t = DEFAULT_PROBE_PRIME_BOUND)]
        primes_below: u64,
    },
    /// Places above p in canonical order.
    Places { field: String, p: u64 },
    /// Φ_c(α^{1/n}).
    Phi {
        #[arg(long, value_name = "FILE")]
        map: String,
        field: String,
        element: String,
        #[arg(long, default_value_t = 1)]
        root: u64,
        /// Field containing both the map's base field and the query field.
        #[arg(long, value_name = "FIELD")]
        overfield: Option<String>,
    },
    /// Ω(Norm α)/[K:Q].
    Omega { field: String, element: String },
    /// Σ_v |log|α|_v| over the finite places.
    Snorm { field: String, element: String },
    /// Consistency and Galois-invariance over towers.
    Verify {
        #[arg(long, value_name = "FILE")]
        map: String,
        #[arg(long, value_name = "FILE")]
        tower: Option<String>,
    },
    /// β whose only finite valuation is at the given place.
    SpecialElement { field: String, p: u64, index: usize },
    /// Emit a map file for a construction.
    BuildMap(BuildMap),
    /// Σ_{n ≤ x} (-1)^Ω(f(n)).
    Chowla { poly: String, x: u64 },
}

#[derive(Args)]
struct BuildMap {
    #[command(subcommand)]
    recipe: Recipe,
    /// Write here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Recipe {
    /// x_p = -1 everywhere.
    Canonical,
    /// c(K,v) = x_p s_v.
    DegreeProportional {
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        default: String,
        /// `p=value`, repeatable.
        #[arg(long = "override", value_name = "P=X", allow_hyphen_values = true)]
        overrides: Vec<String>,
    },
    /// The Q(i) map with -1/3 and -2/3 at the places over 5.
    QiExample,
    /// K-Galois-invariant map from base values.
    Invariant {
        #[arg(long)]
        field: String,
        /// `p:index:value`, repeatable.
        #[arg(long = "entry", value_name = "P:I:X", allow_hyphen_values = true)]
        entries: Vec<String>,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        background: String,
    },
    /// Perturbed map at split places of the maximal subfields.
    Perturbed {
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = DEFAULT_PRIME_SEARCH_BOUND)]
        prime_bound: u64,
    },
    /// Tower prefix. Without --chain, uses Q ⊂ Q(i) ⊂ Q(ζ_8).
    Tower {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_name = "FILE")]
        chain: Option<String>,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        x: String,
    },
}

struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let debug = format!("{e:?}");
        let kind = debug
            .split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or("Error")
            .to_string();
        Failure {
            code: if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_DOMAIN
            },
            kind,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &str, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        kind: "Io".into(),
        message: format!("{path}: {e}"),
    }
}

type Outcome = Result<Value, Failure>;

fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn field(s: &str) -> Result<NumberField, Failure> {
    Ok(NumberField::parse(s)?)
}

fn rational(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn place_json(w: &Place) -> Value {
    json!({
        "index": w.index(),
        "prime": w.prime(),
        "e": w.e(),
        "f": w.f(),
        "local_factor": w.residue_factor(),
    })
}

struct Globals {
    approx: bool,
    search_bound: u64,
    probe_fields: Vec<NumberField>,
    probe_primes: Vec<u64>,
    ctx: EvaluationContext,
}

impl Globals {
    fn load(cli: &Cli) -> Result<Self, Failure> {
        let mut ctx = corpus::context();
        let (probe_fields, probe_primes) = match &cli.probe_corpus {
            None => (
                corpus::fields(),
                corpus::small_primes(DEFAULT_PROBE_PRIME_BOUND),
            ),
            Some(path) => {
                let doc = parse_probe_corpus(&read(path)?)?;
                for chain in &doc.embeddings {
                    for e in chain.to_embeddings()? {
                        ctx.register(e);
                    }
                }
                let fields = doc
                    .fields
                    .into_iter()
                    .map(NumberField::new)
                    .collect::<Result<Vec<_>, _>>()?;
                (fields, doc.primes)
            }
        };
        Ok(Globals {
            approx: cli.approx,
            search_bound: cli.search_bound.unwrap_or(DEFAULT_SEARCH_BOUND),
            probe_fields,
            probe_primes,
            ctx,
        })
    }

    fn value(&self, r: &Rational) -> Value {
        let mut m = Map::new();
        m.insert("value".into(), q(r));
        if self.approx {
            m.insert("approx".into(), json!(to_f64(r)));
        }
        Value::Object(m)
    }

    fn probes(&self) -> Vec<(NumberField, Place)> {
        let mut out = Vec::new();
        for k in &self.probe_fields {
            for &p in &self.probe_primes {
                if let Ok(ws) = places_above(k, p) {
                    out.extend(ws.into_iter().map(|w| (k.clone(), w)));
                }
            }
        }
        out
    }
}

fn cmd_field(s: &str, primes_below: u64) -> Outcome {
    let k = field(s)?;
    let mut primes = Vec::new();
    for p in corpus::small_primes(primes_below) {
        primes.push(match places_above(&k, p) {
            Ok(ws) => json!({"prime": p, "supported": true, "places": ws.len()}),
            Err(e) => json!({"prime": p, "supported": false, "reason": e.to_string()}),
        });
    }
    Ok(json!({
        "poly": k.poly(),
        "display": k.poly().to_string(),
        "degree": k.degree(),
        "discriminant": k.discriminant().to_string(),
        "family": format!("{:?}", k.family()),
        "primes": primes,
    }))
}

fn cmd_places(s: &str, p: u64) -> Outcome {
    let k = field(s)?;
    let ws = places_above(&k, p)?;
    let total: u32 = ws.iter().map(|w| w.local_degree()).sum();
    Ok(json!({
        "poly": k.poly(),
        "prime": p,
        "places": ws.iter().map(place_json).collect::<Vec<_>>(),
        "degree_sum": total,
    }))
}

fn load_map(path: &str) -> Result<ConsistentMap, Failure> {
    Ok(parse_map(&read(path)?)?)
}

fn cmd_phi(
    g: &Globals,
    map: &str,
    s: &str,
    element: &str,
    root: u64,
    overfield: Option<&str>,
) -> Outcome {
    let c = load_map(map)?;
    let k = field(s)?;
    let a = k.parse_element(element)?;
    let mut ctx = g.ctx.clone();
    if let Some(l) = overfield {
        ctx = ctx.with_overfield(field(l)?);
    }
    Ok(g.value(&phi(&c, &a, root, &ctx)?))
}

fn cmd_omega(g: &Globals, s: &str, element: &str) -> Outcome {
    let k = field(s)?;
    Ok(g.value(&omega_canonical(&k.parse_element(element)?)?))
}

fn cmd_snorm(g: &Globals, s: &str, element: &str) -> Outcome {
    let k = field(s)?;
    let v = snorm(&k.parse_element(element)?)?;
    let terms: Map<String, Value> = v
        .coefficients()
        .iter()
        .map(|(p, a)| (p.to_string(), q(a)))
        .collect();
    let mut m = Map::new();
    m.insert("terms".into(), Value::Object(terms));
    m.insert("display".into(), Value::String(v.to_string()));
    if g.approx {
        m.insert("approx".into(), json!(v.approx()));
    }
    Ok(Value::Object(m))
}

fn default_towers() -> Vec<Vec<FieldEmbedding>> {
    let mut out = vec![
        corpus::gaussian_tower().steps,
        corpus::sqrt2_tower_maximal().steps,
    ];
    out.extend(corpus::towers().into_iter().map(|t| t.steps));
    out
}

#[allow(clippy::result_large_err)]
fn verify_step(
    c: &ConsistentMap,
    iota: &FieldEmbedding,
    primes: &[u64],
    ctx: &EvaluationContext,
) -> Value {
    let k = iota.source();
    let l = iota.target();
    let mut checked = 0usize;
    let mut consistency_violations = Vec::new();
    let mut invariance_violations = Vec::new();
    let mut skipped = Vec::new();
    for &p in primes {
        let vs = match places_above(k, p).and_then(|vs| places_above(l, p).map(|_| vs)) {
            Ok(vs) => vs,
            Err(e) => {
                skipped.push(json!({"prime": p, "reason": e.to_string()}));
                continue;
            }
        };
        for v in vs {
            let cons = check_consistency(c, iota, &v, ctx);
            let inv = check_galois_invariance(c, k, iota, &v, ctx);
            match (cons, inv) {
                (Ok(cons), Ok(inv)) => {
                    checked += 1;
                    if !cons.holds {
                        consistency_violations.push(json!({
                            "prime": p, "index": v.index(), "lhs": q(&cons.lhs), "rhs": q(&cons.rhs),
                        }));
                    }
                    for e in inv.entries.iter().filter(|e| e.actual != e.expected) {
                        invariance_violations.push(json!({
                            "prime": p,
                            "index": v.index(),
                            "upper_index": e.place.index(),
                            "actual": q(&e.actual),
                            "expected": q(&e.expected),
                        }));
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    skipped.push(json!({"prime": p, "index": v.index(), "reason": e.to_string()}));
                }
            }
        }
    }
    json!({
        "source": k.poly(),
        "target": l.poly(),
        "checked": checked,
        "consistent": consistency_violations.is_empty(),
        "consistency_violations": consistency_violations,
        "galois_invariant": invariance_violations.is_empty(),
        "invariance_violations": invariance_violations,
        "skipped": skipped,
    })
}

fn cmd_verify(g: &Globals, map: &str, tower: Option<&str>) -> Outcome {
    let c = load_map(map)?;
    let (chains, primes) = match tower {
        None => (default_towers(), g.probe_primes.clone()),
        Some(path) => {
            let doc = parse_tower_doc(&read(path)?)?;
            let chains = doc
                .towers
                .iter()
                .map(ChainDoc::to_embeddings)
                .collect::<Result<Vec<_>, _>>()?;
            (chains, doc.primes.unwrap_or_else(|| g.probe_primes.clone()))
        }
    };
    let mut ctx = g.ctx.clone();
    for chain in &chains {
        for e in chain {
            ctx.register(e.clone());
        }
    }
    let mut towers = Vec::new();
    let mut all_consistent = true;
    let mut all_invariant = true;
    for chain in &chains {
        let steps: Vec<Value> = chain
            .iter()
            .map(|iota| verify_step(&c, iota, &primes, &ctx))
            .collect();
        all_consistent &= steps.iter().all(|s| s["consistent"] == json!(true));
        all_invariant &= steps.iter().all(|s| s["galois_invariant"] == json!(true));
        towers.push(json!({"chain": ChainDoc::from_embeddings(chain), "steps": steps}));
    }
    let probes: Vec<(NumberField, Place)> = g
        .probes()
        .into_iter()
        .filter(|(k, v)| evaluate(&c, k, v, &ctx).is_ok())
        .collect();
    let bound = match boundedness_witness(&c, &probes, &ctx) {
        Ok(w) => json!({
            "max": q(&w.max),
            "per_prime": w.per_prime.iter().map(|(p, x)| (p.to_string(), q(x))).collect::<Map<_, _>>(),
            "probes": probes.len(),
        }),
        Err(e) => json!({"unavailable": e.to_string()}),
    };
    Ok(json!({
        "consistent": all_consistent,
        "galois_invariant": all_invariant,
        "primes": primes,
        "towers": towers,
        "boundedness": bound,
    }))
}

fn cmd_special_element(g: &Globals, s: &str, p: u64, index: usize) -> Outcome {
    let k = field(s)?;
    let w = place(&k, p, index)?;
    let sp = single_place_element(&k, &w, g.search_bound)?;
    let v = valuation(&sp.beta, &w)?.value;
    Ok(json!({
        "beta": sp.beta.coords().iter().map(q).collect::<Vec<_>>(),
        "k": sp.k,
        "norm": sp.norm.to_string(),
        "valuation": v,
        "place": place_json(&w),
    }))
}

fn weights(default: &str) -> Result<PrimeWeights, Failure> {
    Ok(PrimeWeights::constant(rational(default)?))
}

fn parse_override(s: &str) -> Result<(u64, Rational), Failure> {
    let bad = || Failure::from(Error::Parse(format!("expected P=X, got {s:?}")));
    let (p, x) = s.split_once('=').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, rational(x)?))
}

fn parse_entry(k: &NumberField, s: &str) -> Result<(Place, Rational), Failure> {
    let bad = || Failure::from(Error::Parse(format!("expected P:INDEX:X, got {s:?}")));
    let mut it = s.splitn(3, ':');
    let (Some(p), Some(i), Some(x)) = (it.next(), it.next(), it.next()) else {
        return Err(bad());
    };
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    Ok((place(k, p, i)?, rational(x)?))
}

fn build(recipe: &Recipe) -> Result<ConsistentMap, Failure> {
    Ok(match recipe {
        Recipe::Canonical => ConsistentMap::canonical(),
        Recipe::DegreeProportional { default, overrides } => {
            let mut w = weights(default)?;
            for o in overrides {
                let (p, x) = parse_override(o)?;
                w = w.with(p, x);
            }
            ConsistentMap::degree_proportional(w)
        }
        Recipe::QiExample => qi_worked_example(),
        Recipe::Invariant {
            field: f,
            entries,
            background,
        } => {
            let k = field(f)?;
            let table = entries
                .iter()
                .map(|e| parse_entry(&k, e))
                .collect::<Result<Vec<_>, _>>()?;
            invariant_map_from_base(&k, &table, weights(background)?)?
        }
        Recipe::Perturbed {
            field: f,
            x,
            prime_bound,
        } => {
            let k = field(f)?;
            let subs = maximal_subfields(&k)?;
            perturbed_open_subgroup_map(&k, &subs, &weights(x)?, *prime_bound)?.0
        }
        Recipe::Tower {
            q: prime,
            depth,
            chain,
            x,
        } => {
            let steps = match chain {
                None => corpus::gaussian_tower().steps,
                Some(path) => {
                    let doc = parse_tower_doc(&read(path)?)?;
                    let first = doc.towers.first().ok_or_else(|| {
                        Failure::from(Error::InvalidChain("tower file lists no chains".into()))
                    })?;
                    first.to_embeddings()?
                }
            };
            tower_map_prefix(&steps, *prime, &weights(x)?, *depth)?.map
        }
    })
}

fn cmd_build_map(b: &BuildMap) -> Result<Option<String>, Failure> {
    let json = map_to_json(&build(&b.recipe)?);
    match &b.out {
        None => Ok(Some(json)),
        Some(path) => {
            fs::write(path, json + "\n").map_err(|e| io_failure(path, e))?;
            Ok(None)
        }
    }
}

fn cmd_chowla(poly: &str, x: u64) -> Outcome {
    let f = IntPolynomial::parse(poly)?;
    let v = summatory_chowla(&f, x)?;
    Ok(json!({"poly": f, "x": x, "value": v}))
}

fn run(cli: &Cli) -> Result<Option<String>, Failure> {
    let g = Globals::load(cli)?;
    let value = match &cli.command {
        Command::Field {
            field,
            primes_below,
        } => cmd_field(field, *primes_below)?,
        Command::Places { field, p } => cmd_places(field, *p)?,
        Command::Phi {
            map,
            field,
            element,
            root,
            overfield,
        } => cmd_phi(&g, map, field, element, *root, overfield.as_deref())?,
        Command::Omega { field, element } => cmd_omega(&g, field, element)?,
        Command::Snorm { field, element } => cmd_snorm(&g, field, element)?,
        Command::Verify { map, tower } => cmd_verify(&g, map, tower.as_deref())?,
        Command::SpecialElement { field, p, index } => cmd_special_element(&g, field, *p, *index)?,
        Command::BuildMap(b) => return cmd_build_map(b),
        Command::Chowla { poly, x } => cmd_chowla(poly, *x)?,
    };
    Ok(Some(
        serde_json::to_string_pretty(&value).expect("JSON values serialize"),
    ))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Some(out)) => {
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(f) => {
            let payload = json!({"error": f.kind, "message": f.message});
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&payload).expect("JSON values serialize")
            );
            ExitCode::from(f.code)
        }
    }
}
