//! Batch front-end: reads polytope / retraction / word / certificate JSON
//! files, dispatches to the library, and emits deterministic JSON reports
//! on standard output.
//!
//! Exit codes: 0 = success, 1 = domain-level negative result (e.g. no
//! certificate found, verification failed), 2 = input or schema error.

use clap::{Parser, Subcommand};
use polyret::error::Error;
use polyret::geometry::LatticePolytope;
use polyret::groups::column_vectors;
use polyret::ideals::segmentonomial_minimal_primes;
use polyret::json::{
    parse_point_id, qmat_from_json, qmat_to_json, JsonCertificate, JsonFibration, JsonPolynomial,
    JsonPolytope, JsonPrime, JsonRat, JsonRetraction, JsonSemigroup,
};
use polyret::retraction::{polygon_tameness, verify_certificate};
use polyret::semigroup::AffineSemigroup;
use polyret::SCHEMA_VERSION;
use serde::Deserialize;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "polyret", version, about = "Exact analysis of polytopal semigroup algebras and their graded retractions", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Full report on a polytope: lattice points, facets, column vectors, normality
    Analyze { polytope: String },
    /// Column vectors of a polytope with their base facets
    Col { polytope: String },
    /// Normality check of a polytope or affine semigroup
    Normality {
        input: String,
        /// Degree bound for the saturation scan (default: library bound)
        #[arg(long)]
        degree_bound: Option<i64>,
        /// Cross-check by exhaustive enumeration up to degree 4
        #[arg(long)]
        exhaustive: bool,
    },
    /// Binomial generators of the toric ideal up to a degree bound
    Relations {
        input: String,
        #[arg(long, default_value_t = 3)]
        degree_bound: i64,
    },
    /// Lattice width of a polytope along a primitive direction
    Width {
        polytope: String,
        /// Comma-joined integer coordinates, e.g. "1,-1"
        direction: String,
    },
    /// All embeddings of the length-c standard segment into a polytope
    EmbedSegment {
        polytope: String,
        length: i64,
    },
    /// Lattice symmetries of a polytope (unimodular affine self-maps)
    Symmetries { polytope: String },
    /// Validate a retraction spec: homomorphism, idempotency, dimensions
    RetractionCheck { retraction: String },
    /// Run the polygon tameness pipeline and emit a certificate
    RetractionTame {
        retraction: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the covering and direct-sum invariants of a lattice fibration
    FibrationVerify { fibration: String },
    /// Minimal primes over a segmentonomial
    Segprime {
        /// JSON file with {"semigroup": {...}, "polynomial": {...}}
        input: String,
        #[arg(long, default_value_t = 3)]
        degree_bound: i64,
    },
    /// Variable-split transform of a nonsingular rational matrix
    SplitVariable {
        /// JSON file with {"matrix": [[{"num","den"},...],...]}
        input: String,
    },
    /// Replay a tameness certificate and report the first divergence
    VerifyCert { certificate: String },
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {:?}: {}", path, e))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {}", path, e))
}

fn report(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA_VERSION));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    Value::Object(map)
}

fn lib_err(e: Error) -> String {
    e.to_string()
}

/// Polytope and semigroup files are distinguished by their fields.
fn read_semigroup(path: &str) -> Result<AffineSemigroup, String> {
    let value: Value = read_json(path)?;
    if value.get("vertices").is_some() {
        let jp: JsonPolytope = serde_json::from_value(value).map_err(|e| format!("{}: {}", path, e))?;
        Ok(AffineSemigroup::polytopal(&jp.to_polytope().map_err(lib_err)?))
    } else {
        let js: JsonSemigroup = serde_json::from_value(value).map_err(|e| format!("{}: {}", path, e))?;
        js.to_semigroup().map_err(lib_err)
    }
}

fn read_polytope(path: &str) -> Result<LatticePolytope, String> {
    let jp: JsonPolytope = read_json(path)?;
    jp.to_polytope().map_err(lib_err)
}

fn col_json(p: &LatticePolytope) -> Value {
    let cols: Vec<Value> = column_vectors(p)
        .iter()
        .map(|c| {
            json!({
                "vector": c.vector,
                "base_facet": c.base_facet,
                "base_facet_normal": p.facets()[c.base_facet].normal,
            })
        })
        .collect();
    json!(cols)
}

/// Returns (exit code, report).
fn run(verb: &Verb) -> Result<(i32, Value), String> {
    match verb {
        Verb::Analyze { polytope } => {
            let p = read_polytope(polytope)?;
            let s = AffineSemigroup::polytopal(&p);
            let normality = s.normality_check(None).map_err(lib_err)?;
            let facets: Vec<Value> = p
                .facets()
                .iter()
                .map(|f| json!({"normal": f.normal, "offset": f.offset}))
                .collect();
            Ok((
                0,
                report(vec![
                    ("ambient_dim", json!(p.ambient_dim())),
                    ("dim", json!(p.dim())),
                    ("vertices", json!(p.vertices())),
                    ("lattice_points", json!(p.lattice_points())),
                    ("num_lattice_points", json!(p.lattice_points().len())),
                    ("facets", json!(facets)),
                    ("column_vectors", col_json(&p)),
                    ("normal", json!(normality.normal)),
                ]),
            ))
        }
        Verb::Col { polytope } => {
            let p = read_polytope(polytope)?;
            Ok((0, report(vec![("column_vectors", col_json(&p))])))
        }
        Verb::Normality {
            input,
            degree_bound,
            exhaustive,
        } => {
            let s = read_semigroup(input)?;
            let rep = s.normality_check(*degree_bound).map_err(lib_err)?;
            let mut fields = vec![
                ("normal", json!(rep.normal)),
                ("degree_bound", json!(rep.degree_bound)),
                (
                    "witness",
                    match &rep.witness {
                        Some((x, n)) => json!({"element": x, "multiple": n}),
                        None => Value::Null,
                    },
                ),
            ];
            if *exhaustive {
                let cross = s.normality_check(Some(4)).map_err(lib_err)?;
                fields.push(("exhaustive_to_degree_4", json!(cross.normal)));
            }
            Ok((0, report(fields)))
        }
        Verb::Relations {
            input,
            degree_bound,
        } => {
            let s = read_semigroup(input)?;
            let rels = s.toric_relations(*degree_bound).map_err(lib_err)?;
            let rels_json: Vec<Value> = rels
                .iter()
                .map(|r| json!({"left": r.left, "right": r.right}))
                .collect();
            Ok((
                0,
                report(vec![
                    ("generators", json!(s.generators())),
                    ("degree_bound", json!(degree_bound)),
                    ("relations", json!(rels_json)),
                ]),
            ))
        }
        Verb::Width {
            polytope,
            direction,
        } => {
            let p = read_polytope(polytope)?;
            let dir = parse_point_id(direction).map_err(lib_err)?;
            let w = p.lattice_width(&dir).map_err(lib_err)?;
            Ok((
                0,
                report(vec![("direction", json!(dir)), ("width", json!(w))]),
            ))
        }
        Verb::EmbedSegment { polytope, length } => {
            let p = read_polytope(polytope)?;
            let embs = p.segment_embeddings(*length).map_err(lib_err)?;
            let embs_json: Vec<Value> = embs
                .iter()
                .map(|(s, v)| json!({"start": s, "step": v}))
                .collect();
            Ok((
                0,
                report(vec![
                    ("length", json!(length)),
                    ("embeddings", json!(embs_json)),
                    ("count", json!(embs.len())),
                ]),
            ))
        }
        Verb::Symmetries { polytope } => {
            let p = read_polytope(polytope)?;
            let syms = polyret::geometry::symmetries(&p);
            let syms_json: Vec<Value> = syms
                .iter()
                .map(|m| json!({"matrix": m.matrix, "translation": m.translation}))
                .collect();
            Ok((
                0,
                report(vec![
                    ("count", json!(syms.len())),
                    ("symmetries", json!(syms_json)),
                ]),
            ))
        }
        Verb::RetractionCheck { retraction } => {
            let jr: JsonRetraction = read_json(retraction)?;
            match jr.to_map() {
                Ok(h) => {
                    let idem = h.check_idempotent().map_err(lib_err)?;
                    let dim = h.image_dimension(5, 1);
                    let rank = h.semigroup().rank();
                    let kernel = h.kernel_monomials().map_err(lib_err)?;
                    Ok((
                        0,
                        report(vec![
                            ("valid", json!(true)),
                            ("idempotent", json!(idem)),
                            ("image_dimension", json!(dim)),
                            ("codimension", json!(rank - dim)),
                            (
                                "kernel_face",
                                match kernel {
                                    Some(face) => json!(face.polytope.lattice_points()),
                                    None => Value::Null,
                                },
                            ),
                        ]),
                    ))
                }
                Err(Error::InvalidInput(msg)) | Err(Error::Structural(msg)) => Ok((
                    1,
                    report(vec![("valid", json!(false)), ("reason", json!(msg))]),
                )),
                Err(e) => Err(lib_err(e)),
            }
        }
        Verb::RetractionTame { retraction, seed } => {
            let jr: JsonRetraction = read_json(retraction)?;
            let h = jr.to_map().map_err(lib_err)?;
            let rep = polygon_tameness(&h, *seed).map_err(lib_err)?;
            match rep.certificate {
                Some(cert) => {
                    let jc = JsonCertificate::from_certificate(&cert, Some(*seed))
                        .map_err(lib_err)?;
                    Ok((
                        0,
                        report(vec![
                            ("tame", json!(true)),
                            ("certificate", serde_json::to_value(&jc).unwrap()),
                            ("diagnostics", json!(rep.diagnostics)),
                        ]),
                    ))
                }
                None => Ok((
                    1,
                    report(vec![
                        ("tame", Value::Null),
                        ("diagnostics", json!(rep.diagnostics)),
                    ]),
                )),
            }
        }
        Verb::FibrationVerify { fibration } => {
            let jf: JsonFibration = read_json(fibration)?;
            match jf.to_fibration() {
                Ok(fib) => Ok((
                    0,
                    report(vec![
                        ("valid", json!(true)),
                        ("base_points", json!(fib.base_points())),
                        ("codimension", json!(fib.codimension())),
                        ("fiber_lattice", json!(fib.fiber_lattice().basis)),
                    ]),
                )),
                Err(Error::Structural(msg)) | Err(Error::InvalidInput(msg)) => Ok((
                    1,
                    report(vec![("valid", json!(false)), ("reason", json!(msg))]),
                )),
                Err(e) => Err(lib_err(e)),
            }
        }
        Verb::Segprime {
            input,
            degree_bound,
        } => {
            #[derive(Deserialize)]
            struct SegprimeInput {
                semigroup: JsonSemigroup,
                polynomial: JsonPolynomial,
            }
            let inp: SegprimeInput = read_json(input)?;
            let s = inp.semigroup.to_semigroup().map_err(lib_err)?;
            let f = inp.polynomial.to_poly().map_err(lib_err)?;
            let primes = segmentonomial_minimal_primes(&s, &f, *degree_bound).map_err(lib_err)?;
            let primes_json: Vec<Value> = primes
                .primes
                .iter()
                .map(|p| {
                    JsonPrime::from_prime(p)
                        .map(|j| serde_json::to_value(&j).unwrap())
                        .map_err(lib_err)
                })
                .collect::<Result<_, _>>()?;
            let unresolved = match &primes.unresolved {
                Some(coeffs) => {
                    let v: Vec<JsonRat> = coeffs
                        .iter()
                        .map(JsonRat::from_rat)
                        .collect::<Result<_, _>>()
                        .map_err(lib_err)?;
                    serde_json::to_value(&v).unwrap()
                }
                None => Value::Null,
            };
            Ok((
                0,
                report(vec![
                    ("degree_bound", json!(degree_bound)),
                    ("primes", json!(primes_json)),
                    ("unresolved", unresolved),
                ]),
            ))
        }
        Verb::SplitVariable { input } => {
            #[derive(Deserialize)]
            struct SplitInput {
                matrix: Vec<Vec<JsonRat>>,
            }
            let inp: SplitInput = read_json(input)?;
            let t = qmat_from_json(&inp.matrix).map_err(lib_err)?;
            let split = polyret::ideals::split_variable(&t).map_err(lib_err)?;
            Ok((
                0,
                report(vec![
                    (
                        "matrix_t",
                        serde_json::to_value(qmat_to_json(&split.matrix_t).map_err(lib_err)?)
                            .unwrap(),
                    ),
                    ("chosen_j", json!(split.chosen_j)),
                    (
                        "epsilon_matrix",
                        serde_json::to_value(
                            qmat_to_json(&split.epsilon_matrix).map_err(lib_err)?,
                        )
                        .unwrap(),
                    ),
                ]),
            ))
        }
        Verb::VerifyCert { certificate } => {
            let jc: JsonCertificate = read_json(certificate)?;
            let cert = jc.to_certificate().map_err(lib_err)?;
            let outcome = verify_certificate(&cert);
            let code = if outcome.ok { 0 } else { 1 };
            Ok((
                code,
                report(vec![
                    ("ok", json!(outcome.ok)),
                    (
                        "divergence",
                        match outcome.divergence {
                            Some(d) => json!(d),
                            None => Value::Null,
                        },
                    ),
                ]),
            ))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli.verb) {
        Ok((code, value)) => {
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
            std::process::exit(code);
        }
        Err(msg) => {
            let value = report(vec![("error", json!(msg))]);
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
            std::process::exit(2);
        }
    }
}
