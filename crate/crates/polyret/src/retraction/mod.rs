//! Graded endomorphisms of polytopal algebras: degree-1 generator
//! assignments verified against the toric relations, idempotency and
//! dimension diagnostics, face and fibration retractions, and facet
//! valuations.

pub mod base;
pub mod tame;

pub use base::{
    correct_facet_base, correct_interior_base, find_base, make_witness, BaseSearch, BaseWitness,
    FacetCorrection, InteriorCorrection,
};
pub use tame::{
    polygon_tameness, prop84_obstruction, verify_certificate, verify_morphism_certificate,
    InnerRetraction, MorphismCertificate, MorphismStep, TamenessCertificate, TamenessReport,
    VerificationOutcome,
};

use crate::error::{Error, Result};
use crate::geometry::{Face, LatticePolytope};
use crate::laurent::{rat_pow, LaurentPolynomial};
use crate::linalg::{self, sub_vec, IMat, IVec};
use crate::semigroup::{AffineSemigroup, LatticeSubgroup};
use crate::{rat_int, Rat};
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// A graded k-algebra endomorphism of k[P], given by degree-1 images of
/// the degree-1 generators. Keys are ambient lattice points of P; images
/// live in the Laurent ring on Z^(n+1) with the last coordinate the
/// degree.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedAlgebraMap {
    polytope: LatticePolytope,
    semigroup: AffineSemigroup,
    images: BTreeMap<IVec, LaurentPolynomial>,
    verification_bound: i64,
}

/// Validate a degree-1 generator assignment: every lattice point of P
/// gets a degree-1 image supported on lifted lattice points of P, and
/// every binomial relation of S_P up to degree `d` maps to an equality.
pub fn check_homomorphism(
    p: &LatticePolytope,
    images: BTreeMap<IVec, LaurentPolynomial>,
    d: i64,
) -> Result<GradedAlgebraMap> {
    if d < 1 {
        return Err(Error::invalid("verification bound must be >= 1"));
    }
    let n = p.ambient_dim();
    for x in p.lattice_points() {
        let img = images
            .get(x)
            .ok_or_else(|| Error::invalid(format!("missing image for {:?}", x)))?;
        if img.ambient_dim() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: img.ambient_dim(),
            });
        }
        for (e, _) in img.terms() {
            if e[n] != 1 || !p.is_lattice_point(&e[..n]) {
                return Err(Error::invalid(format!(
                    "image of {:?} is not supported on degree-1 lattice points",
                    x
                )));
            }
        }
    }
    if images.len() != p.lattice_points().len() {
        return Err(Error::invalid("image keys must be exactly the lattice points"));
    }
    let s = AffineSemigroup::polytopal(p);
    for rel in s.toric_relations(d)? {
        let side = |idx: &[usize]| -> Result<LaurentPolynomial> {
            let mut acc = LaurentPolynomial::one(n + 1);
            for &i in idx {
                let x = &s.generators()[i][..n];
                acc = acc.mul(&images[x])?;
            }
            Ok(acc)
        };
        let (l, r) = (side(&rel.left)?, side(&rel.right)?);
        if l != r {
            return Err(Error::structural(format!(
                "relation {:?} = {:?} violated: image products differ",
                rel.left, rel.right
            )));
        }
    }
    Ok(GradedAlgebraMap {
        polytope: p.clone(),
        semigroup: s,
        images,
        verification_bound: d,
    })
}

impl GradedAlgebraMap {
    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn semigroup(&self) -> &AffineSemigroup {
        &self.semigroup
    }

    pub fn images(&self) -> &BTreeMap<IVec, LaurentPolynomial> {
        &self.images
    }

    pub fn verification_bound(&self) -> i64 {
        self.verification_bound
    }

    /// Image of the degree-1 generator at the ambient lattice point x.
    pub fn image(&self, x: &[i64]) -> Result<&LaurentPolynomial> {
        self.images
            .get(x)
            .ok_or_else(|| Error::NotInSemigroup(x.to_vec()))
    }

    /// Image of a monomial of S_P, computed through a factorization into
    /// degree-1 generators.
    pub fn apply_monomial(&self, e: &[i64]) -> Result<LaurentPolynomial> {
        let n = self.polytope.ambient_dim();
        if linalg::is_zero_vec(e) {
            return Ok(LaurentPolynomial::one(n + 1));
        }
        let idx = self
            .semigroup
            .decompose(e)
            .ok_or_else(|| Error::NotInSemigroup(e.to_vec()))?;
        let mut acc = LaurentPolynomial::one(n + 1);
        for i in idx {
            let x = &self.semigroup.generators()[i][..n];
            acc = acc.mul(&self.images[x])?;
        }
        Ok(acc)
    }

    /// Image of a polynomial supported on S_P.
    pub fn apply(&self, f: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        let n = self.polytope.ambient_dim();
        let mut acc = LaurentPolynomial::zero(n + 1);
        for (e, c) in f.terms() {
            acc = acc.add(&self.apply_monomial(e)?.scale(c))?;
        }
        Ok(acc)
    }

    /// True iff h(h(x)) = h(x) exactly for every degree-1 generator.
    pub fn check_idempotent(&self) -> Result<bool> {
        for img in self.images.values() {
            if &self.apply(img)? != img {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Krull dimension of the image subalgebra: maximal Jacobian rank of
    /// the image polynomials as functions of the torus coordinates, over
    /// `trials` random rational points drawn from the given seed.
    pub fn image_dimension(&self, trials: u32, seed: u64) -> usize {
        let n1 = self.polytope.ambient_dim() + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0usize;
        for _ in 0..trials.max(1) {
            let point: Vec<Rat> = (0..n1)
                .map(|_| rat_int(rng.gen_range(2..=101)) / rat_int(rng.gen_range(1..=7)))
                .collect();
            let rows: Vec<Vec<Rat>> = self
                .images
                .values()
                .map(|f| {
                    let mut row = vec![Rat::zero(); n1];
                    for (e, c) in f.terms() {
                        let mut val = c.clone();
                        for j in 0..n1 {
                            val *= rat_pow(&point[j], e[j]).expect("nonzero coordinate");
                        }
                        for j in 0..n1 {
                            row[j] += &val * rat_int(e[j]) / &point[j];
                        }
                    }
                    row
                })
                .collect();
            best = best.max(linalg::rank_q(&rows));
        }
        best.min(self.semigroup.rank())
    }

    /// The zero set Z = {x in L_P : h(x) = 0} interpreted as a face
    /// complement: None when Z is empty, the face F with Z = L_P minus
    /// L_F when it exists, and a diagnostic error otherwise.
    pub fn kernel_monomials(&self) -> Result<Option<Face>> {
        let zero: Vec<IVec> = self
            .images
            .iter()
            .filter(|(_, f)| f.is_zero())
            .map(|(x, _)| x.clone())
            .collect();
        if zero.is_empty() {
            return Ok(None);
        }
        let complement: Vec<IVec> = self
            .polytope
            .lattice_points()
            .iter()
            .filter(|x| !zero.contains(x))
            .cloned()
            .collect();
        if complement.is_empty() {
            return Err(Error::structural(
                "every generator maps to zero; the zero map retracts onto no face",
            ));
        }
        match self.polytope.face_of_points(&complement)? {
            Some(face) => Ok(Some(face)),
            None => Err(Error::structural(format!(
                "zero set {:?} is not the complement of a face",
                zero
            ))),
        }
    }
}

/// The face retraction: identity on L_F, zero off F.
pub fn face_retraction(p: &LatticePolytope, face: &Face, d: i64) -> Result<GradedAlgebraMap> {
    let found = p
        .face_of_points(face.polytope.lattice_points())?
        .ok_or(Error::NotAFace)?;
    if found.active != face.active {
        return Err(Error::NotAFace);
    }
    let n = p.ambient_dim();
    let mut images = BTreeMap::new();
    for x in p.lattice_points() {
        let img = if face.polytope.is_lattice_point(x) {
            let mut e = x.clone();
            e.push(1);
            LaurentPolynomial::monomial(e, Rat::one())
        } else {
            LaurentPolynomial::zero(n + 1)
        };
        images.insert(x.clone(), img);
    }
    check_homomorphism(p, images, d)
}

/// A lattice fibration (P, H, W): an affine cross-section H and a fiber
/// direction lattice W satisfying the dimension, covering, and
/// direct-sum conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeFibration {
    polytope: LatticePolytope,
    h_base: IVec,
    h_dirs: IMat,
    w: LatticeSubgroup,
}

impl LatticeFibration {
    pub fn new(
        polytope: &LatticePolytope,
        h_base: IVec,
        h_dirs: IMat,
        w_gens: &[IVec],
    ) -> Result<Self> {
        let n = polytope.ambient_dim();
        if h_base.len() != n
            || h_dirs.iter().any(|v| v.len() != n)
            || w_gens.iter().any(|v| v.len() != n)
        {
            return Err(Error::invalid("fibration data with mismatched dimensions"));
        }
        let w = LatticeSubgroup::from_vectors(w_gens);
        let fib = LatticeFibration {
            polytope: polytope.clone(),
            h_base,
            h_dirs,
            w,
        };
        if fib.w.rank() + linalg::rank_i(&fib.h_dirs) != polytope.dim() {
            return Err(Error::structural(
                "dim W + dim H does not equal the dimension of P",
            ));
        }
        let base = fib.base_points();
        for x in polytope.lattice_points() {
            let covered = base.iter().any(|y| fib.w.contains(&sub_vec(x, y)));
            if !covered {
                return Err(Error::structural(format!(
                    "lattice point {:?} lies on no fiber through the base",
                    x
                )));
            }
        }
        // direct sum L = (L cap W) + (L cap H_0) inside the difference
        // lattice L of the lattice points of P
        let pts = polytope.lattice_points();
        let diffs: Vec<IVec> = pts.iter().map(|x| sub_vec(x, &pts[0])).collect();
        let l_basis = linalg::hnf(&diffs);
        let lw = linalg::lattice_intersection(&l_basis, &fib.w.basis);
        let lh = if fib.h_dirs.is_empty() {
            vec![]
        } else {
            linalg::lattice_intersection(&l_basis, &linalg::saturation(&fib.h_dirs))
        };
        if linalg::rank_i(&lw) + linalg::rank_i(&lh) != linalg::rank_i(&l_basis) {
            return Err(Error::structural(
                "L cap W and L cap H_0 do not span complementary ranks",
            ));
        }
        let mut union = lw.clone();
        union.extend(lh.iter().cloned());
        if linalg::hnf(&union) != l_basis {
            return Err(Error::structural(
                "L is not the direct sum of L cap W and L cap H_0",
            ));
        }
        Ok(fib)
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn h_base(&self) -> &[i64] {
        &self.h_base
    }

    pub fn h_dirs(&self) -> &[IVec] {
        &self.h_dirs
    }

    pub fn fiber_lattice(&self) -> &LatticeSubgroup {
        &self.w
    }

    pub fn codimension(&self) -> usize {
        self.w.rank()
    }

    fn in_h(&self, x: &[i64]) -> bool {
        let v = sub_vec(x, &self.h_base);
        if self.h_dirs.is_empty() {
            return linalg::is_zero_vec(&v);
        }
        let mat = linalg::to_rat_mat(&linalg::transpose(&self.h_dirs));
        let rhs: Vec<Rat> = v.iter().map(|&c| rat_int(c)).collect();
        linalg::solve_q(&mat, &rhs).is_some()
    }

    /// Lattice points of the base polytope P cap H.
    pub fn base_points(&self) -> Vec<IVec> {
        self.polytope
            .lattice_points()
            .iter()
            .filter(|x| self.in_h(x))
            .cloned()
            .collect()
    }
}

/// The fibration retraction: each lattice point is contracted to the
/// unique base point on its fiber.
pub fn fibration_retraction(fib: &LatticeFibration, d: i64) -> Result<GradedAlgebraMap> {
    let p = &fib.polytope;
    let base = fib.base_points();
    let mut images = BTreeMap::new();
    for x in p.lattice_points() {
        let targets: Vec<&IVec> = base
            .iter()
            .filter(|y| fib.w.contains(&sub_vec(x, y)))
            .collect();
        if targets.len() != 1 {
            return Err(Error::structural(format!(
                "fiber through {:?} meets the base in {} points",
                x,
                targets.len()
            )));
        }
        let mut e = targets[0].clone();
        e.push(1);
        images.insert(x.clone(), LaurentPolynomial::monomial(e, Rat::one()));
    }
    check_homomorphism(p, images, d)
}

/// The facet valuation v_F: the primitive integral linear form on
/// gp(S_P) vanishing on L_F and nonnegative on L_P.
#[derive(Debug, Clone, PartialEq)]
pub struct FacetValuation {
    gp: LatticeSubgroup,
    form: IVec,
}

impl FacetValuation {
    /// Coefficients of the form over the HNF basis of gp(S_P).
    pub fn form(&self) -> &[i64] {
        &self.form
    }

    /// Evaluate on an element of gp(S_P) in ambient Z^(n+1) coordinates.
    pub fn eval(&self, z: &[i64]) -> Result<i64> {
        let c = self
            .gp
            .coords(z)
            .ok_or_else(|| Error::NotInSemigroup(z.to_vec()))?;
        Ok(linalg::dot(&self.form, &c))
    }
}

pub fn facet_valuation(p: &LatticePolytope, facet: usize) -> Result<FacetValuation> {
    if facet >= p.facets().len() {
        return Err(Error::NotAFacet);
    }
    let s = AffineSemigroup::polytopal(p);
    let gp = s.difference_group();
    let f = &p.facets()[facet];
    let mut form: IVec = vec![];
    for b in &gp.basis {
        let n = p.ambient_dim();
        let deg = b[n];
        let u = sub_vec(&b[..n], &linalg::scale_vec(p.base_point(), deg));
        let c = linalg::coords_in_basis(p.basis(), &u)
            .ok_or_else(|| Error::structural("gp basis element off the affine lattice"))?;
        form.push(linalg::dot(&f.normal, &c) + f.offset * deg);
    }
    let g = linalg::gcd_slice(&form);
    if g > 1 {
        for x in form.iter_mut() {
            *x /= g;
        }
    }
    let val = FacetValuation { gp, form };
    let mut max = 0i64;
    for x in p.lattice_points() {
        let mut e = x.clone();
        e.push(1);
        let v = val.eval(&e)?;
        if v < 0 {
            return Err(Error::structural("facet valuation negative on a lattice point"));
        }
        max = max.max(v);
    }
    for x in p.facet_points(facet) {
        let mut e = x.clone();
        e.push(1);
        if val.eval(&e)? != 0 {
            return Err(Error::structural("facet valuation nonzero on the facet"));
        }
    }
    if max == 0 {
        return Err(Error::structural("facet valuation vanishes identically"));
    }
    Ok(val)
}

/// The identity endomorphism of k[P].
pub fn identity_map(p: &LatticePolytope, d: i64) -> Result<GradedAlgebraMap> {
    let mut images = BTreeMap::new();
    for x in p.lattice_points() {
        let mut e = x.clone();
        e.push(1);
        images.insert(x.clone(), LaurentPolynomial::monomial(e, Rat::one()));
    }
    check_homomorphism(p, images, d)
}

/// Build a graded map from an automorphism word (every generator mapped
/// through the word).
pub fn map_from_word(word: &crate::groups::AutomorphismWord, d: i64) -> Result<GradedAlgebraMap> {
    let p = word.polytope();
    let mut images = BTreeMap::new();
    for x in p.lattice_points() {
        images.insert(x.clone(), word.apply_generator(x)?);
    }
    check_homomorphism(p, images, d)
}

/// Conjugate h by a word: alpha following h following alpha inverse.
pub fn conjugate(h: &GradedAlgebraMap, alpha: &crate::groups::AutomorphismWord) -> Result<GradedAlgebraMap> {
    if alpha.polytope() != h.polytope() {
        return Err(Error::invalid("conjugator over a different polytope"));
    }
    let inv = alpha.inverse()?;
    let mut images = BTreeMap::new();
    for x in h.polytope().lattice_points() {
        let a = inv.apply_generator(x)?;
        let ha = h.apply(&a)?;
        images.insert(x.clone(), alpha.apply(&ha)?);
    }
    check_homomorphism(h.polytope(), images, h.verification_bound())
}
