//! Generators of the graded automorphism group of k[P]: column vectors
//! with their elementary automorphisms, the embedded torus, and polytope
//! symmetries, composed into verified words.
//!
//! Each factor acts on arbitrary elements of k[P] given as Laurent
//! polynomials in Z^{n+1} supported on S_P. Elementary factors use the
//! height function, toric factors a character on a fixed basis of
//! gp(S_P), and symmetries the induced degree-preserving substitution.

use crate::error::{Error, Result};
use crate::geometry::{AffineLatticeMap, LatticePolytope};
use crate::laurent::{rat_pow, LaurentPolynomial};
use crate::linalg::{add_vec, scale_vec, IVec};
use crate::semigroup::AffineSemigroup;
use crate::{rat_int, Rat};
use num_traits::{One, Zero};

/// A column vector of P: a direction v with base facet F such that every
/// lattice point off F moves by v into P.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColumnVector {
    pub vector: IVec,
    pub base_facet: usize,
}

/// One generator of the automorphism group.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Elementary { column: ColumnVector, lambda: Rat },
    Toric { xi: Vec<Rat> },
    Symmetry { map: AffineLatticeMap },
}

/// A composable word of verified automorphism generators; factors apply
/// right to left.
#[derive(Debug, Clone, PartialEq)]
pub struct AutomorphismWord {
    polytope: LatticePolytope,
    factors: Vec<Factor>,
    degree_bound: i64,
}

/// All column vectors of P, sorted by (base facet, vector). Candidates
/// range over the difference set of L_P.
pub fn column_vectors(p: &LatticePolytope) -> Vec<ColumnVector> {
    let mut candidates: Vec<IVec> = vec![];
    for a in p.lattice_points() {
        for b in p.lattice_points() {
            if a != b {
                candidates.push(crate::linalg::sub_vec(a, b));
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut out = vec![];
    for facet in 0..p.facets().len() {
        let on_facet: Vec<IVec> = p.facet_points(facet);
        for v in &candidates {
            let ok = p
                .lattice_points()
                .iter()
                .filter(|x| !on_facet.contains(x))
                .all(|x| p.contains(&add_vec(x, v)));
            if ok {
                out.push(ColumnVector {
                    vector: v.clone(),
                    base_facet: facet,
                });
            }
        }
    }
    out.sort();
    out
}

pub fn is_column_vector(p: &LatticePolytope, col: &ColumnVector) -> bool {
    if col.base_facet >= p.facets().len() || crate::linalg::is_zero_vec(&col.vector) {
        return false;
    }
    let on_facet = p.facet_points(col.base_facet);
    p.lattice_points()
        .iter()
        .filter(|x| !on_facet.contains(x))
        .all(|x| p.contains(&add_vec(x, &col.vector)))
}

/// Height of a semigroup element x (with its degree encoded in the last
/// coordinate): the largest m with x + m*(v,0) still in S_P.
pub fn height(p: &LatticePolytope, col: &ColumnVector, x: &[i64]) -> Result<i64> {
    let s = AffineSemigroup::polytopal(p);
    if !s.contains(x) {
        return Err(Error::NotInSemigroup(x.to_vec()));
    }
    let mut lift = col.vector.clone();
    lift.push(0);
    let mut m = 0i64;
    loop {
        let shifted = add_vec(x, &scale_vec(&lift, m + 1));
        if s.contains(&shifted) {
            m += 1;
        } else {
            return Ok(m);
        }
    }
}

fn binomial(n: i64, k: i64) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= rat_int(n - i) / rat_int(i + 1);
    }
    acc
}

impl AutomorphismWord {
    /// Build a word after verifying every factor: column conditions,
    /// nonzero torus entries, lattice-preserving symmetries, and
    /// preservation of the toric relations up to the degree bound.
    pub fn new(
        polytope: &LatticePolytope,
        factors: Vec<Factor>,
        degree_bound: i64,
    ) -> Result<Self> {
        let s = AffineSemigroup::polytopal(polytope);
        let rank = s.rank();
        for f in &factors {
            match f {
                Factor::Elementary { column, .. } => {
                    if !is_column_vector(polytope, column) {
                        return Err(Error::NotAColumnVector(column.vector.clone()));
                    }
                }
                Factor::Toric { xi } => {
                    if xi.len() != rank {
                        return Err(Error::DimensionMismatch {
                            expected: rank,
                            got: xi.len(),
                        });
                    }
                    if xi.iter().any(|x| x.is_zero()) {
                        return Err(Error::invalid("torus entries must be nonzero"));
                    }
                }
                Factor::Symmetry { map } => {
                    if !map.is_unimodular() {
                        return Err(Error::invalid("symmetry must be unimodular"));
                    }
                    let ok = polytope
                        .lattice_points()
                        .iter()
                        .all(|x| polytope.is_lattice_point(&map.apply(x)));
                    if !ok {
                        return Err(Error::invalid("symmetry does not preserve L_P"));
                    }
                }
            }
        }
        let word = AutomorphismWord {
            polytope: polytope.clone(),
            factors,
            degree_bound,
        };
        word.verify_relations(&s)?;
        Ok(word)
    }

    pub fn identity(polytope: &LatticePolytope, degree_bound: i64) -> Self {
        AutomorphismWord {
            polytope: polytope.clone(),
            factors: vec![],
            degree_bound,
        }
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn degree_bound(&self) -> i64 {
        self.degree_bound
    }

    fn verify_relations(&self, s: &AffineSemigroup) -> Result<()> {
        for rel in s.toric_relations(self.degree_bound.max(2))? {
            let side = |idx: &[usize]| -> Result<LaurentPolynomial> {
                let mut acc = LaurentPolynomial::one(s.ambient_dim());
                for &i in idx {
                    let gen = LaurentPolynomial::monomial(
                        s.generators()[i].clone(),
                        Rat::one(),
                    );
                    acc = acc.mul(&self.apply(&gen)?)?;
                }
                Ok(acc)
            };
            if side(&rel.left)? != side(&rel.right)? {
                return Err(Error::structural(format!(
                    "word violates the relation {:?} = {:?}",
                    rel.left, rel.right
                )));
            }
        }
        Ok(())
    }

    /// Apply the word to a polynomial supported on S_P; factors act right
    /// to left.
    pub fn apply(&self, f: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        let mut acc = f.clone();
        for factor in self.factors.iter().rev() {
            acc = apply_factor(&self.polytope, factor, &acc)?;
        }
        Ok(acc)
    }

    /// Image of a degree-1 generator x of L_P.
    pub fn apply_generator(&self, x: &[i64]) -> Result<LaurentPolynomial> {
        let mut e = x.to_vec();
        e.push(1);
        self.apply(&LaurentPolynomial::monomial(e, Rat::one()))
    }

    /// The inverse word: reversed factors, each inverted.
    pub fn inverse(&self) -> Result<AutomorphismWord> {
        let mut factors = vec![];
        for f in self.factors.iter().rev() {
            factors.push(match f {
                Factor::Elementary { column, lambda } => Factor::Elementary {
                    column: column.clone(),
                    lambda: -lambda.clone(),
                },
                Factor::Toric { xi } => Factor::Toric {
                    xi: xi.iter().map(|x| x.recip()).collect(),
                },
                Factor::Symmetry { map } => Factor::Symmetry {
                    map: map.inverse()?,
                },
            });
        }
        Ok(AutomorphismWord {
            polytope: self.polytope.clone(),
            factors,
            degree_bound: self.degree_bound,
        })
    }

    /// Concatenation: (self * other)(f) = self(other(f)).
    pub fn concat(&self, other: &AutomorphismWord) -> Result<AutomorphismWord> {
        if self.polytope != other.polytope {
            return Err(Error::invalid("words over different polytopes"));
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(AutomorphismWord {
            polytope: self.polytope.clone(),
            factors,
            degree_bound: self.degree_bound.max(other.degree_bound),
        })
    }
}

fn apply_factor(
    p: &LatticePolytope,
    factor: &Factor,
    f: &LaurentPolynomial,
) -> Result<LaurentPolynomial> {
    let dim = p.ambient_dim() + 1;
    if f.ambient_dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: f.ambient_dim(),
        });
    }
    let mut out = LaurentPolynomial::zero(dim);
    match factor {
        Factor::Elementary { column, lambda } => {
            let s = AffineSemigroup::polytopal(p);
            let mut lift = column.vector.clone();
            lift.push(0);
            for (e, c) in f.terms() {
                if !s.contains(e) {
                    return Err(Error::NotInSemigroup(e.clone()));
                }
                let ht = height(p, column, e)?;
                for j in 0..=ht {
                    let coeff = c * binomial(ht, j) * rat_pow(lambda, j)?;
                    out.add_term(add_vec(e, &scale_vec(&lift, j)), coeff);
                }
            }
        }
        Factor::Toric { xi } => {
            let s = AffineSemigroup::polytopal(p);
            let gp = s.difference_group();
            for (e, c) in f.terms() {
                let coords = gp
                    .coords(e)
                    .ok_or_else(|| Error::NotInSemigroup(e.clone()))?;
                let mut chi = Rat::one();
                for (x, &k) in xi.iter().zip(&coords) {
                    chi *= rat_pow(x, k)?;
                }
                out.add_term(e.clone(), c * chi);
            }
        }
        Factor::Symmetry { map } => {
            for (e, c) in f.terms() {
                let (y, m) = e.split_at(p.ambient_dim());
                let deg = m[0];
                // degree-homogeneous action: (y, m) -> (My + m*t, m)
                let mut img = add_vec(
                    &map.apply_linear(y),
                    &scale_vec(&map.translation, deg),
                );
                img.push(deg);
                out.add_term(img, c.clone());
            }
        }
    }
    Ok(out)
}

/// Degree-1 monomial for a lattice point of P.
pub fn generator_monomial(x: &[i64]) -> LaurentPolynomial {
    let mut e = x.to_vec();
    e.push(1);
    LaurentPolynomial::monomial(e, Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rigid_triangle, standard_segment, unit_square};
    use crate::rat;

    fn square_col_down() -> ColumnVector {
        // v = (0,-1) with the bottom edge as base facet
        let sq = unit_square();
        let cols = column_vectors(&sq);
        cols.into_iter()
            .find(|c| c.vector == vec![0, -1])
            .expect("downward column vector")
    }

    #[test]
    fn rigid_triangle_has_no_columns() {
        assert!(column_vectors(&rigid_triangle()).is_empty());
    }

    #[test]
    fn segment_has_two_columns() {
        let cols = column_vectors(&standard_segment(1));
        assert_eq!(cols.len(), 2);
        let vs: Vec<IVec> = cols.iter().map(|c| c.vector.clone()).collect();
        assert!(vs.contains(&vec![1]) && vs.contains(&vec![-1]));
    }

    #[test]
    fn join_inherits_segment_columns() {
        // join(2Q, 2Delta_1): columns come only from the segment side
        let q2 = rigid_triangle().dilate(2).unwrap();
        let seg2 = standard_segment(2);
        let j = q2.join(&seg2).unwrap();
        let cols = column_vectors(&j);
        assert!(!cols.is_empty());
        for c in &cols {
            // inherited segment columns move only the segment block
            // coordinate (index 2 of ambient 2+1+1)
            assert_eq!(c.vector[0], 0);
            assert_eq!(c.vector[1], 0);
            assert_eq!(c.vector[3], 0);
            assert_ne!(c.vector[2], 0);
        }
    }

    #[test]
    fn heights_on_square() {
        let sq = unit_square();
        let col = square_col_down();
        assert_eq!(height(&sq, &col, &[0, 1, 1]).unwrap(), 1);
        assert_eq!(height(&sq, &col, &[0, 0, 1]).unwrap(), 0);
        // additivity on a degree-2 element
        assert_eq!(height(&sq, &col, &[1, 2, 2]).unwrap(), 2);
        assert!(height(&sq, &col, &[5, 5, 1]).is_err());
    }

    #[test]
    fn elementary_on_square_generators() {
        let sq = unit_square();
        let col = square_col_down();
        let lambda = rat(3, 2);
        let w = AutomorphismWord::new(
            &sq,
            vec![Factor::Elementary {
                column: col,
                lambda: lambda.clone(),
            }],
            2,
        )
        .unwrap();
        // W = (0,1) maps to W + lambda*U, U = (0,0) fixed
        let img_w = w.apply_generator(&[0, 1]).unwrap();
        assert_eq!(img_w.coeff(&[0, 1, 1]), Rat::one());
        assert_eq!(img_w.coeff(&[0, 0, 1]), lambda);
        let img_u = w.apply_generator(&[0, 0]).unwrap();
        assert_eq!(img_u, generator_monomial(&[0, 0]));
    }

    #[test]
    fn elementary_inverse_law() {
        let sq = unit_square();
        let col = square_col_down();
        let w = AutomorphismWord::new(
            &sq,
            vec![
                Factor::Elementary {
                    column: col.clone(),
                    lambda: rat(2, 1),
                },
                Factor::Elementary {
                    column: col,
                    lambda: rat(-2, 1),
                },
            ],
            2,
        )
        .unwrap();
        for x in sq.lattice_points() {
            assert_eq!(w.apply_generator(x).unwrap(), generator_monomial(x));
        }
    }

    #[test]
    fn lambda_zero_is_identity() {
        let sq = unit_square();
        let w = AutomorphismWord::new(
            &sq,
            vec![Factor::Elementary {
                column: square_col_down(),
                lambda: Rat::zero(),
            }],
            2,
        )
        .unwrap();
        for x in sq.lattice_points() {
            assert_eq!(w.apply_generator(x).unwrap(), generator_monomial(x));
        }
    }

    #[test]
    fn toric_composition_law() {
        let sq = unit_square();
        let rank = AffineSemigroup::polytopal(&sq).rank();
        let xi1: Vec<Rat> = (0..rank).map(|i| rat(i as i64 + 1, 1)).collect();
        let xi2: Vec<Rat> = (0..rank).map(|i| rat(1, i as i64 + 2)).collect();
        let prod: Vec<Rat> = xi1.iter().zip(&xi2).map(|(a, b)| a * b).collect();
        let w12 = AutomorphismWord::new(
            &sq,
            vec![
                Factor::Toric { xi: xi1.clone() },
                Factor::Toric { xi: xi2.clone() },
            ],
            2,
        )
        .unwrap();
        let wp = AutomorphismWord::new(&sq, vec![Factor::Toric { xi: prod }], 2).unwrap();
        for x in sq.lattice_points() {
            assert_eq!(
                w12.apply_generator(x).unwrap(),
                wp.apply_generator(x).unwrap()
            );
        }
    }

    #[test]
    fn toric_all_ones_is_identity() {
        let sq = unit_square();
        let rank = AffineSemigroup::polytopal(&sq).rank();
        let w = AutomorphismWord::new(
            &sq,
            vec![Factor::Toric {
                xi: vec![Rat::one(); rank],
            }],
            2,
        )
        .unwrap();
        for x in sq.lattice_points() {
            assert_eq!(w.apply_generator(x).unwrap(), generator_monomial(x));
        }
    }

    #[test]
    fn symmetry_factor_acts_on_points() {
        let sq = unit_square();
        let syms = crate::geometry::symmetries(&sq);
        let flip = syms
            .iter()
            .find(|s| s.apply(&[0, 0]) == vec![1, 0] && s.apply(&[1, 0]) == vec![0, 0])
            .expect("horizontal flip")
            .clone();
        let w = AutomorphismWord::new(&sq, vec![Factor::Symmetry { map: flip }], 2).unwrap();
        assert_eq!(
            w.apply_generator(&[0, 1]).unwrap(),
            generator_monomial(&[1, 1])
        );
        // degree-2 terms transform homogeneously
        let f = LaurentPolynomial::monomial(vec![0, 2, 2], Rat::one());
        let img = w.apply(&f).unwrap();
        assert_eq!(img, LaurentPolynomial::monomial(vec![2, 2, 2], Rat::one()));
    }

    #[test]
    fn word_inverse_roundtrip() {
        let sq = unit_square();
        let rank = AffineSemigroup::polytopal(&sq).rank();
        let w = AutomorphismWord::new(
            &sq,
            vec![
                Factor::Elementary {
                    column: square_col_down(),
                    lambda: rat(5, 3),
                },
                Factor::Toric {
                    xi: (0..rank).map(|i| rat(i as i64 + 2, 3)).collect(),
                },
            ],
            2,
        )
        .unwrap();
        let winv = w.inverse().unwrap();
        let composite = w.concat(&winv).unwrap();
        for x in sq.lattice_points() {
            assert_eq!(
                composite.apply_generator(x).unwrap(),
                generator_monomial(x)
            );
        }
    }

    #[test]
    fn invalid_column_rejected() {
        let q = rigid_triangle();
        let bad = ColumnVector {
            vector: vec![1, 0],
            base_facet: 0,
        };
        let res = AutomorphismWord::new(
            &q,
            vec![Factor::Elementary {
                column: bad,
                lambda: Rat::one(),
            }],
            2,
        );
        assert!(matches!(res, Err(Error::NotAColumnVector(_))));
    }

    #[test]
    fn elementary_preserves_square_relation() {
        // UT = VW survives the substitution W -> W + lambda U, T -> T + lambda V
        let sq = unit_square();
        let w = AutomorphismWord::new(
            &sq,
            vec![Factor::Elementary {
                column: square_col_down(),
                lambda: rat(7, 1),
            }],
            3,
        )
        .unwrap();
        let u = w.apply_generator(&[0, 0]).unwrap();
        let v = w.apply_generator(&[1, 0]).unwrap();
        let wp = w.apply_generator(&[0, 1]).unwrap();
        let t = w.apply_generator(&[1, 1]).unwrap();
        assert_eq!(u.mul(&t).unwrap(), v.mul(&wp).unwrap());
    }
}
