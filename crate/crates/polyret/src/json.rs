//! Serialization mirror types for the documented JSON schemas: polytopes,
//! polynomials, semigroups, automorphism words, retractions, fibrations,
//! and tameness certificates. All rationals travel as {"num","den"} pairs;
//! there is no floating point anywhere on the IO surface.

use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::groups::{AutomorphismWord, ColumnVector, Factor};
use crate::laurent::LaurentPolynomial;
use crate::linalg::{IVec, QMat};
use crate::retraction::{
    check_homomorphism, GradedAlgebraMap, InnerRetraction, LatticeFibration, TamenessCertificate,
};
use crate::semigroup::AffineSemigroup;
use crate::{geometry::AffineLatticeMap, Rat};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn bad(msg: impl Into<String>) -> Error {
    Error::invalid(msg)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonRat {
    pub num: i64,
    pub den: i64,
}

impl JsonRat {
    pub fn from_rat(r: &Rat) -> Result<Self> {
        let num = i64::try_from(r.numer().clone())
            .map_err(|_| bad("rational numerator exceeds 64 bits"))?;
        let den = i64::try_from(r.denom().clone())
            .map_err(|_| bad("rational denominator exceeds 64 bits"))?;
        Ok(JsonRat { num, den })
    }

    pub fn to_rat(&self) -> Result<Rat> {
        if self.den == 0 {
            return Err(bad("rational with zero denominator"));
        }
        Ok(Rat::new(BigInt::from(self.num), BigInt::from(self.den)))
    }
}

/// Canonical textual id of a lattice point: comma-joined coordinates.
pub fn point_id(x: &[i64]) -> String {
    x.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_point_id(s: &str) -> Result<IVec> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| bad(format!("bad coordinate {:?} in point id {:?}", t, s)))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonPolytope {
    pub ambient_dim: usize,
    pub vertices: Vec<IVec>,
}

impl JsonPolytope {
    pub fn from_polytope(p: &LatticePolytope) -> Self {
        JsonPolytope {
            ambient_dim: p.ambient_dim(),
            vertices: p.vertices().to_vec(),
        }
    }

    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        if self.vertices.iter().any(|v| v.len() != self.ambient_dim) {
            return Err(bad("vertex length differs from ambient_dim"));
        }
        LatticePolytope::hull(&self.vertices)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonTerm {
    pub exp: IVec,
    pub num: i64,
    pub den: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonPolynomial {
    pub ambient_dim: usize,
    pub terms: Vec<JsonTerm>,
}

impl JsonPolynomial {
    pub fn from_poly(f: &LaurentPolynomial) -> Result<Self> {
        let mut terms = vec![];
        for (e, c) in f.terms() {
            let r = JsonRat::from_rat(c)?;
            terms.push(JsonTerm {
                exp: e.clone(),
                num: r.num,
                den: r.den,
            });
        }
        Ok(JsonPolynomial {
            ambient_dim: f.ambient_dim(),
            terms,
        })
    }

    pub fn to_poly(&self) -> Result<LaurentPolynomial> {
        let mut terms = vec![];
        for t in &self.terms {
            if t.exp.len() != self.ambient_dim {
                return Err(bad("term exponent length differs from ambient_dim"));
            }
            let c = JsonRat {
                num: t.num,
                den: t.den,
            }
            .to_rat()?;
            terms.push((t.exp.clone(), c));
        }
        LaurentPolynomial::from_terms(self.ambient_dim, &terms)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonSemigroup {
    pub ambient_dim: usize,
    pub generators: Vec<IVec>,
    pub grading: IVec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading_denom: Option<i64>,
}

impl JsonSemigroup {
    pub fn from_semigroup(s: &AffineSemigroup) -> Self {
        JsonSemigroup {
            ambient_dim: s.ambient_dim(),
            generators: s.generators().to_vec(),
            grading: s.grading().to_vec(),
            grading_denom: if s.grading_denom() == 1 {
                None
            } else {
                Some(s.grading_denom())
            },
        }
    }

    pub fn to_semigroup(&self) -> Result<AffineSemigroup> {
        match self.grading_denom {
            None | Some(1) => AffineSemigroup::new(
                self.ambient_dim,
                self.generators.clone(),
                self.grading.clone(),
            ),
            Some(d) => AffineSemigroup::with_denominator(
                self.ambient_dim,
                self.generators.clone(),
                self.grading.clone(),
                d,
            ),
        }
    }
}

/// One factor of an automorphism word, discriminated by type tag.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum JsonFactor {
    Elementary {
        column: IVec,
        base_facet: usize,
        lambda: JsonRat,
    },
    Toric {
        xi: Vec<JsonRat>,
    },
    Symmetry {
        matrix: Vec<IVec>,
        translation: IVec,
    },
}

impl JsonFactor {
    pub fn from_factor(f: &Factor) -> Result<Self> {
        Ok(match f {
            Factor::Elementary { column, lambda } => JsonFactor::Elementary {
                column: column.vector.clone(),
                base_facet: column.base_facet,
                lambda: JsonRat::from_rat(lambda)?,
            },
            Factor::Toric { xi } => JsonFactor::Toric {
                xi: xi.iter().map(JsonRat::from_rat).collect::<Result<_>>()?,
            },
            Factor::Symmetry { map } => JsonFactor::Symmetry {
                matrix: map.matrix.clone(),
                translation: map.translation.clone(),
            },
        })
    }

    pub fn to_factor(&self) -> Result<Factor> {
        Ok(match self {
            JsonFactor::Elementary {
                column,
                base_facet,
                lambda,
            } => Factor::Elementary {
                column: ColumnVector {
                    vector: column.clone(),
                    base_facet: *base_facet,
                },
                lambda: lambda.to_rat()?,
            },
            JsonFactor::Toric { xi } => Factor::Toric {
                xi: xi.iter().map(|r| r.to_rat()).collect::<Result<_>>()?,
            },
            JsonFactor::Symmetry {
                matrix,
                translation,
            } => Factor::Symmetry {
                map: AffineLatticeMap {
                    matrix: matrix.clone(),
                    translation: translation.clone(),
                },
            },
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonWord {
    pub polytope: JsonPolytope,
    pub degree_bound: i64,
    pub factors: Vec<JsonFactor>,
}

impl JsonWord {
    pub fn from_word(w: &AutomorphismWord) -> Result<Self> {
        Ok(JsonWord {
            polytope: JsonPolytope::from_polytope(w.polytope()),
            degree_bound: w.degree_bound(),
            factors: w
                .factors()
                .iter()
                .map(JsonFactor::from_factor)
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_word(&self) -> Result<AutomorphismWord> {
        let p = self.polytope.to_polytope()?;
        let factors = self
            .factors
            .iter()
            .map(|f| f.to_factor())
            .collect::<Result<_>>()?;
        AutomorphismWord::new(&p, factors, self.degree_bound)
    }
}

/// One term of a degree-1 image: a rational coefficient on a lattice
/// point of the polytope.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonImageTerm {
    pub coeff: JsonRat,
    pub point: String,
}

fn image_to_json(n: usize, f: &LaurentPolynomial) -> Result<Vec<JsonImageTerm>> {
    let mut out = vec![];
    for (e, c) in f.terms() {
        if e.len() != n + 1 || e[n] != 1 {
            return Err(bad("image term is not homogeneous of degree 1"));
        }
        out.push(JsonImageTerm {
            coeff: JsonRat::from_rat(c)?,
            point: point_id(&e[..n]),
        });
    }
    Ok(out)
}

fn image_from_json(n: usize, terms: &[JsonImageTerm]) -> Result<LaurentPolynomial> {
    let mut pairs = vec![];
    for t in terms {
        let mut e = parse_point_id(&t.point)?;
        if e.len() != n {
            return Err(bad(format!("image point {:?} has the wrong dimension", t.point)));
        }
        e.push(1);
        pairs.push((e, t.coeff.to_rat()?));
    }
    LaurentPolynomial::from_terms(n + 1, &pairs)
}

/// A graded degree-1 generator assignment: the retraction spec schema.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonRetraction {
    pub polytope: JsonPolytope,
    pub images: BTreeMap<String, Vec<JsonImageTerm>>,
    pub degree_bound: i64,
}

impl JsonRetraction {
    pub fn from_map(h: &GradedAlgebraMap) -> Result<Self> {
        let n = h.polytope().ambient_dim();
        let mut images = BTreeMap::new();
        for (x, f) in h.images() {
            images.insert(point_id(x), image_to_json(n, f)?);
        }
        Ok(JsonRetraction {
            polytope: JsonPolytope::from_polytope(h.polytope()),
            images,
            degree_bound: h.verification_bound(),
        })
    }

    /// Rebuild and re-verify the homomorphism from its spec.
    pub fn to_map(&self) -> Result<GradedAlgebraMap> {
        let p = self.polytope.to_polytope()?;
        let n = p.ambient_dim();
        let mut images = BTreeMap::new();
        for (id, terms) in &self.images {
            let x = parse_point_id(id)?;
            if x.len() != n {
                return Err(bad(format!("image key {:?} has the wrong dimension", id)));
            }
            images.insert(x, image_from_json(n, terms)?);
        }
        check_homomorphism(&p, images, self.degree_bound)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonFibration {
    pub polytope: JsonPolytope,
    pub base_point: IVec,
    pub base_directions: Vec<IVec>,
    pub fiber_generators: Vec<IVec>,
}

impl JsonFibration {
    pub fn from_fibration(f: &LatticeFibration) -> Self {
        JsonFibration {
            polytope: JsonPolytope::from_polytope(f.polytope()),
            base_point: f.h_base().to_vec(),
            base_directions: f.h_dirs().to_vec(),
            fiber_generators: f.fiber_lattice().basis.clone(),
        }
    }

    /// Rebuild the fibration, re-verifying its covering and direct-sum
    /// invariants.
    pub fn to_fibration(&self) -> Result<LatticeFibration> {
        let p = self.polytope.to_polytope()?;
        LatticeFibration::new(
            &p,
            self.base_point.clone(),
            self.base_directions.clone(),
            &self.fiber_generators,
        )
    }
}

/// The inner monomial retraction of a certificate.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JsonInner {
    Face { points: Vec<IVec> },
    Fibration { fibration: JsonFibration },
}

/// Tameness certificate schema: the original retraction spec, the
/// conjugating word, the inner face or fibration retraction, and the
/// embedding of the base, plus replay metadata.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonCertificate {
    pub schema: String,
    pub retraction: JsonRetraction,
    pub conjugator: Vec<JsonFactor>,
    pub inner: JsonInner,
    pub embedding: BTreeMap<String, Vec<JsonImageTerm>>,
    pub degree_bound: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl JsonCertificate {
    pub fn from_certificate(cert: &TamenessCertificate, seed: Option<u64>) -> Result<Self> {
        let n = cert.original.polytope().ambient_dim();
        let inner = match &cert.inner {
            InnerRetraction::Face(face) => JsonInner::Face {
                points: face.polytope.lattice_points().to_vec(),
            },
            InnerRetraction::Fibration(fib) => JsonInner::Fibration {
                fibration: JsonFibration::from_fibration(fib),
            },
        };
        let mut embedding = BTreeMap::new();
        for (q, f) in &cert.embedding_images {
            embedding.insert(point_id(q), image_to_json(n, f)?);
        }
        Ok(JsonCertificate {
            schema: crate::SCHEMA_VERSION.to_string(),
            retraction: JsonRetraction::from_map(&cert.original)?,
            conjugator: cert
                .conjugator
                .factors()
                .iter()
                .map(JsonFactor::from_factor)
                .collect::<Result<_>>()?,
            inner,
            embedding,
            degree_bound: cert.verification_bound,
            seed,
        })
    }

    pub fn to_certificate(&self) -> Result<TamenessCertificate> {
        let major = self.schema.split('.').next().unwrap_or("");
        if major != crate::SCHEMA_VERSION.split('.').next().unwrap() {
            return Err(bad(format!("unknown schema major version {:?}", self.schema)));
        }
        let original = self.retraction.to_map()?;
        let p = original.polytope().clone();
        let n = p.ambient_dim();
        let factors = self
            .conjugator
            .iter()
            .map(|f| f.to_factor())
            .collect::<Result<_>>()?;
        let conjugator = AutomorphismWord::new(&p, factors, self.degree_bound)?;
        let inner = match &self.inner {
            JsonInner::Face { points } => {
                let face = p
                    .face_of_points(points)?
                    .ok_or_else(|| bad("inner face points are not a face of the polytope"))?;
                InnerRetraction::Face(face)
            }
            JsonInner::Fibration { fibration } => {
                let fib = fibration.to_fibration()?;
                if fib.polytope() != &p {
                    return Err(bad("inner fibration is over a different polytope"));
                }
                InnerRetraction::Fibration(fib)
            }
        };
        let mut embedding_images = BTreeMap::new();
        for (id, terms) in &self.embedding {
            embedding_images.insert(parse_point_id(id)?, image_from_json(n, terms)?);
        }
        Ok(TamenessCertificate {
            original,
            conjugator,
            inner,
            embedding_images,
            verification_bound: self.degree_bound,
        })
    }
}

/// A minimal prime of a segmentonomial ideal, discriminated by kind.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JsonPrime {
    MonomialFace {
        facet_normal: IVec,
        vanishing: Vec<usize>,
        generators: Vec<JsonPolynomial>,
    },
    CharacterKernel {
        direction: IVec,
        root: JsonRat,
        basis_change: Vec<IVec>,
        /// Per generator index: scalar factor and image exponent.
        projected_map: Vec<(JsonRat, IVec)>,
        generators: Vec<JsonPolynomial>,
    },
}

impl JsonPrime {
    pub fn from_prime(p: &crate::ideals::BinomialPrime) -> Result<Self> {
        use crate::ideals::BinomialPrime;
        Ok(match p {
            BinomialPrime::MonomialFace {
                facet_normal,
                vanishing,
                generators,
            } => JsonPrime::MonomialFace {
                facet_normal: facet_normal.clone(),
                vanishing: vanishing.clone(),
                generators: generators
                    .iter()
                    .map(JsonPolynomial::from_poly)
                    .collect::<Result<_>>()?,
            },
            BinomialPrime::CharacterKernel {
                direction,
                root,
                basis_change,
                projected_map,
                generators,
            } => JsonPrime::CharacterKernel {
                direction: direction.clone(),
                root: JsonRat::from_rat(root)?,
                basis_change: basis_change.clone(),
                projected_map: projected_map
                    .iter()
                    .map(|(c, e)| Ok((JsonRat::from_rat(c)?, e.clone())))
                    .collect::<Result<_>>()?,
                generators: generators
                    .iter()
                    .map(JsonPolynomial::from_poly)
                    .collect::<Result<_>>()?,
            },
        })
    }
}

/// Rational matrix as nested {"num","den"} entries.
pub fn qmat_to_json(m: &QMat) -> Result<Vec<Vec<JsonRat>>> {
    m.iter()
        .map(|row| row.iter().map(JsonRat::from_rat).collect())
        .collect()
}

pub fn qmat_from_json(m: &[Vec<JsonRat>]) -> Result<QMat> {
    m.iter()
        .map(|row| row.iter().map(|r| r.to_rat()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{pt, unit_square};
    use crate::rat;
    use crate::retraction::face_retraction;

    #[test]
    fn polytope_round_trip() {
        let p = unit_square();
        let j = JsonPolytope::from_polytope(&p);
        assert_eq!(j.to_polytope().unwrap(), p);
        let text = serde_json::to_string(&j).unwrap();
        let back: JsonPolytope = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn polynomial_round_trip() {
        let f = LaurentPolynomial::from_terms(
            2,
            &[(vec![1, -2], rat(3, 4)), (vec![0, 5], rat(-1, 7))],
        )
        .unwrap();
        let j = JsonPolynomial::from_poly(&f).unwrap();
        assert_eq!(j.to_poly().unwrap(), f);
    }

    #[test]
    fn word_round_trip() {
        let p = unit_square();
        let top = p
            .facets()
            .iter()
            .position(|f| f.normal == vec![0, -1])
            .unwrap();
        let w = AutomorphismWord::new(
            &p,
            vec![
                Factor::Toric {
                    xi: vec![rat(1, 2), rat(3, 1), rat(7, 5)],
                },
                Factor::Elementary {
                    column: ColumnVector {
                        vector: vec![0, 1],
                        base_facet: top,
                    },
                    lambda: rat(5, 3),
                },
            ],
            2,
        )
        .unwrap();
        let j = JsonWord::from_word(&w).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back: JsonWord = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_word().unwrap(), w);
    }

    #[test]
    fn certificate_round_trip_and_version_gate() {
        let p = unit_square();
        let bottom = p
            .face_of_points(&[pt(&[0, 0]), pt(&[1, 0])])
            .unwrap()
            .unwrap();
        let h = face_retraction(&p, &bottom, 3).unwrap();
        let report = crate::retraction::polygon_tameness(&h, 5).unwrap();
        let cert = report.certificate.unwrap();
        let j = JsonCertificate::from_certificate(&cert, Some(5)).unwrap();
        let text = serde_json::to_string_pretty(&j).unwrap();
        let back: JsonCertificate = serde_json::from_str(&text).unwrap();
        let rebuilt = back.to_certificate().unwrap();
        assert!(crate::retraction::verify_certificate(&rebuilt).ok);
        let mut wrong = j.clone();
        wrong.schema = "2.0.0".into();
        assert!(wrong.to_certificate().is_err());
    }

    #[test]
    fn point_ids_round_trip() {
        assert_eq!(point_id(&[3, -4, 0]), "3,-4,0");
        assert_eq!(parse_point_id("3,-4,0").unwrap(), vec![3, -4, 0]);
        assert!(parse_point_id("1,x").is_err());
    }
}
