//! Base detection for idempotent graded maps, and the corrections that
//! turn a based retraction into a certified fibration retraction
//! (interior base) or face retraction (facet base) after conjugation.

use super::tame::{verify_certificate, InnerRetraction, TamenessCertificate};
use super::{
    check_homomorphism, conjugate, facet_valuation, GradedAlgebraMap,
    LatticeFibration,
};
use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::groups::{AutomorphismWord, ColumnVector, Factor};
use crate::laurent::{laurent_gcd, LaurentPolynomial};
use crate::linalg::{self, add_vec, sub_vec, IMat, IVec};
use crate::semigroup::AffineSemigroup;
use crate::Rat;
use itertools::Itertools;
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet};

/// A candidate base: a set of degree-1 generators on which the map
/// restricts to a degreewise isomorphism onto its image.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseWitness {
    pub points: Vec<IVec>,
    pub cross_section: Option<LatticePolytope>,
    pub meets_interior: bool,
}

#[derive(Debug, Clone)]
pub struct BaseSearch {
    pub witness: Option<BaseWitness>,
    pub diagnostics: Vec<String>,
}

/// Outcome of the degreewise base test for one candidate point set.
#[derive(Debug, Clone)]
pub(crate) enum BaseCheck {
    Accepted,
    NotInjective {
        degree: i64,
        kernel_element: LaurentPolynomial,
    },
    NotSurjective {
        degree: i64,
    },
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
}

fn lift(x: &[i64]) -> IVec {
    let mut e = x.to_vec();
    e.push(1);
    e
}

fn lifted_semigroup(n: usize, points: &[IVec]) -> Result<AffineSemigroup> {
    let gens: Vec<IVec> = points.iter().map(|x| lift(x)).collect();
    let mut grading = vec![0i64; n + 1];
    grading[n] = 1;
    AffineSemigroup::new(n + 1, gens, grading)
}

/// Rank of the degree-1 images as vectors over the lifted lattice points.
pub fn degree_one_image_rank(h: &GradedAlgebraMap) -> usize {
    let pts = h.polytope().lattice_points();
    let rows: Vec<Vec<Rat>> = h
        .images()
        .values()
        .map(|f| {
            pts.iter()
                .map(|x| f.coeff(&lift(x)))
                .collect()
        })
        .collect();
    linalg::rank_q(&rows)
}

fn coeff_rows(
    images: &[LaurentPolynomial],
) -> (Vec<IVec>, Vec<Vec<Rat>>) {
    let mut support: BTreeSet<IVec> = BTreeSet::new();
    for f in images {
        for (e, _) in f.terms() {
            support.insert(e.clone());
        }
    }
    let support: Vec<IVec> = support.into_iter().collect();
    let rows = images
        .iter()
        .map(|f| support.iter().map(|e| f.coeff(e)).collect())
        .collect();
    (support, rows)
}

/// Degreewise injectivity and surjectivity of h restricted to the
/// subalgebra generated by `points`, up to the verification bound, plus
/// Jacobian dimension agreement.
pub(crate) fn base_check(
    h: &GradedAlgebraMap,
    points: &[IVec],
    seed: u64,
) -> Result<BaseCheck> {
    let n = h.polytope().ambient_dim();
    let sx = lifted_semigroup(n, points)?;
    let expected = sx.rank();
    let got = h.image_dimension(5, seed);
    if expected != got {
        return Ok(BaseCheck::DimensionMismatch { expected, got });
    }
    let sp = h.semigroup();
    for d in 1..=h.verification_bound() {
        let elems = sx.degree_elements(d)?;
        let mut images = vec![];
        for e in &elems {
            images.push(h.apply_monomial(e)?);
        }
        let (_, rows) = coeff_rows(&images);
        let rank_x = linalg::rank_q(&rows);
        if rank_x != elems.len() {
            // a rational dependency among the images is a kernel element
            // supported on the candidate base
            let null = linalg::left_kernel_q(&rows);
            let mu = null.first().ok_or_else(|| {
                Error::structural("rank deficiency without a kernel vector")
            })?;
            let mut ker = LaurentPolynomial::zero(n + 1);
            for (e, c) in elems.iter().zip(mu) {
                ker.add_term(e.clone(), c.clone());
            }
            return Ok(BaseCheck::NotInjective {
                degree: d,
                kernel_element: ker,
            });
        }
        let mut all = images.clone();
        for e in sp.degree_elements(d)? {
            all.push(h.apply_monomial(&e)?);
        }
        let (_, all_rows) = coeff_rows(&all);
        if linalg::rank_q(&all_rows) != rank_x {
            return Ok(BaseCheck::NotSurjective { degree: d });
        }
    }
    Ok(BaseCheck::Accepted)
}

/// Build the witness record for an accepted point set.
pub fn make_witness(p: &LatticePolytope, points: &[IVec]) -> Result<BaseWitness> {
    let mut pts = points.to_vec();
    pts.sort();
    let on_common_facet = (0..p.facets().len()).any(|i| {
        let fp = p.facet_points(i);
        pts.iter().all(|x| fp.contains(x))
    });
    let hull = LatticePolytope::hull(&pts)?;
    let cross_section = if hull.lattice_points() == pts.as_slice() {
        Some(hull)
    } else {
        None
    };
    Ok(BaseWitness {
        points: pts,
        cross_section,
        meets_interior: !on_common_facet,
    })
}

fn in_rational_span(dirs: &[IVec], v: &[i64]) -> bool {
    if linalg::is_zero_vec(v) {
        return true;
    }
    let mut mat = dirs.to_vec();
    let base = linalg::rank_i(&mat);
    mat.push(v.to_vec());
    linalg::rank_i(&mat) == base
}

/// Search for a base of an idempotent map among cross-sections spanned
/// by few lattice points and, on polygons, segment embeddings.
pub fn find_base(h: &GradedAlgebraMap, seed: u64) -> Result<BaseSearch> {
    let p = h.polytope();
    let m = degree_one_image_rank(h);
    let pts = p.lattice_points();
    let mut candidates: BTreeSet<Vec<IVec>> = BTreeSet::new();
    for k in 1..=m.min(pts.len()) {
        for subset in pts.iter().combinations(k) {
            let dirs: Vec<IVec> = subset[1..]
                .iter()
                .map(|x| sub_vec(x, subset[0]))
                .collect();
            let x: Vec<IVec> = pts
                .iter()
                .filter(|y| in_rational_span(&dirs, &sub_vec(y, subset[0])))
                .cloned()
                .collect();
            if x.len() == m {
                candidates.insert(x);
            }
        }
    }
    if p.dim() == 2 && m >= 2 {
        for (start, step) in p.segment_embeddings(m as i64 - 1)? {
            let x: Vec<IVec> = (0..m as i64)
                .map(|i| add_vec(&start, &linalg::scale_vec(&step, i)))
                .collect();
            candidates.insert(x.into_iter().sorted().collect());
        }
    }
    let mut diagnostics = vec![format!(
        "degree-1 image rank {}; {} candidate point sets",
        m,
        candidates.len()
    )];
    // an interior-meeting base feeds the fibration correction, so it is
    // preferred over boundary bases of the same map
    let mut boundary: Option<BaseWitness> = None;
    for x in &candidates {
        match base_check(h, x, seed)? {
            BaseCheck::Accepted => {
                let w = make_witness(p, x)?;
                if w.meets_interior {
                    return Ok(BaseSearch {
                        witness: Some(w),
                        diagnostics,
                    });
                }
                boundary.get_or_insert(w);
            }
            BaseCheck::NotInjective { degree, .. } => {
                diagnostics.push(format!("{:?}: not injective at degree {}", x, degree));
            }
            BaseCheck::NotSurjective { degree } => {
                diagnostics.push(format!("{:?}: not surjective at degree {}", x, degree));
            }
            BaseCheck::DimensionMismatch { expected, got } => {
                diagnostics.push(format!(
                    "{:?}: candidate dimension {} but image dimension {}",
                    x, expected, got
                ));
            }
        }
    }
    Ok(BaseSearch {
        witness: boundary,
        diagnostics,
    })
}

/// Normalize h on its base: returns h' with h'(q) = q for base points q
/// and h = j after h', where j embeds the base through the original
/// images.
pub(crate) fn base_normalize(
    h: &GradedAlgebraMap,
    points: &[IVec],
) -> Result<GradedAlgebraMap> {
    let base_images: Vec<&LaurentPolynomial> = points
        .iter()
        .map(|q| h.image(q))
        .collect::<Result<_>>()?;
    let mut support: BTreeSet<IVec> = BTreeSet::new();
    for f in &base_images {
        for (e, _) in f.terms() {
            support.insert(e.clone());
        }
    }
    let support: Vec<IVec> = support.into_iter().collect();
    let mat: Vec<Vec<Rat>> = support
        .iter()
        .map(|e| base_images.iter().map(|f| f.coeff(e)).collect())
        .collect();
    let n = h.polytope().ambient_dim();
    let mut images = BTreeMap::new();
    for x in h.polytope().lattice_points() {
        let img = h.image(x)?;
        let rhs: Vec<Rat> = support.iter().map(|e| img.coeff(e)).collect();
        let c = linalg::solve_q(&mat, &rhs).ok_or_else(|| {
            Error::structural(format!(
                "image of {:?} is outside the span of the base images",
                x
            ))
        })?;
        let mut f = LaurentPolynomial::zero(n + 1);
        for (q, cq) in points.iter().zip(&c) {
            f.add_term(lift(q), cq.clone());
        }
        images.insert(x.clone(), f);
    }
    check_homomorphism(h.polytope(), images, h.verification_bound())
}

/// The outcome of the interior-base correction: a toric conjugator, the
/// recovered fibration, and the verified certificate.
#[derive(Debug, Clone)]
pub struct InteriorCorrection {
    pub conjugator: AutomorphismWord,
    pub fibration: LatticeFibration,
    pub certificate: TamenessCertificate,
}

/// Correct an idempotent map with an interior base into a fibration
/// retraction conjugated by a toric automorphism.
pub fn correct_interior_base(
    h: &GradedAlgebraMap,
    witness: &BaseWitness,
    search_bound: Option<i64>,
    _seed: u64,
) -> Result<InteriorCorrection> {
    if !witness.meets_interior {
        return Err(Error::invalid("base does not meet the interior"));
    }
    if h.kernel_monomials()?.is_some() {
        return Err(Error::invalid("map with kernel monomials is not interior-based"));
    }
    if !h.check_idempotent()? {
        return Err(Error::invalid("map is not idempotent"));
    }
    let q_poly = witness
        .cross_section
        .as_ref()
        .ok_or_else(|| Error::invalid("base points do not form a lattice polytope"))?;
    let p = h.polytope();
    let n = p.ambient_dim();
    let d_bound = h.verification_bound();
    let hp = base_normalize(h, &witness.points)?;
    let s = hp.semigroup();
    let gp = s.difference_group();
    let r = s.rank();
    let u_vecs: Vec<IVec> = witness
        .points
        .iter()
        .map(|q| {
            gp.coords(&lift(q))
                .ok_or_else(|| Error::structural("base point outside gp(S_P)"))
        })
        .collect::<Result<_>>()?;
    let sat_u = linalg::saturation(&u_vecs);
    let k = linalg::rank_i(&sat_u);
    let deg_form: IVec = gp.basis.iter().map(|b| b[n]).collect();
    let x0 = gp
        .coords(&lift(&witness.points[0]))
        .ok_or_else(|| Error::structural("base point outside gp(S_P)"))?;
    // complement basis of the saturated base span, pushed to degree 0
    let mut comp: IMat = vec![];
    if k < r {
        let (_, _, v) = linalg::snf(&sat_u);
        let v_inv = linalg::q_to_int(&linalg::inv_q(&linalg::to_rat_mat(&v))?)
            .ok_or_else(|| Error::structural("non-integral basis completion"))?;
        for row in v_inv.iter().skip(k) {
            let deg = linalg::dot(&deg_form, row);
            comp.push(sub_vec(row, &linalg::scale_vec(&x0, deg)));
        }
    }
    let comp_amb: Vec<IVec> = comp
        .iter()
        .map(|v| {
            let mut acc = vec![0i64; n + 1];
            for (c, b) in v.iter().zip(&gp.basis) {
                acc = add_vec(&acc, &linalg::scale_vec(b, *c));
            }
            acc
        })
        .collect();
    for v in &comp_amb {
        if v[n] != 0 {
            return Err(Error::structural("complement vector has nonzero degree"));
        }
    }
    // bounded search for a base point x with x +- v_i inside the cone
    let bound = search_bound.unwrap_or(3 * r as i64);
    let mut found: Option<(IVec, Vec<(Rat, IVec)>)> = None;
    let mut last_obstruction = String::from("search space empty");
    'outer: for d in 1..=bound {
        let qd = q_poly.dilate(d)?;
        let pd = p.dilate(d)?;
        for y in qd.lattice_points() {
            let mut x_amb = y.clone();
            x_amb.push(d);
            let inside = comp_amb.iter().all(|v| {
                pd.contains(&add_vec(&x_amb, v)[..n]) && pd.contains(&sub_vec(&x_amb, v)[..n])
            });
            if !inside {
                continue;
            }
            let mut shifted = vec![];
            let mut ok = true;
            for v in &comp_amb {
                match hp.apply_monomial(&add_vec(&x_amb, v)) {
                    Ok(img) if img.num_terms() == 1 => {
                        let (e, c) = img.terms().next().expect("single term");
                        shifted.push((c.clone(), e.clone()));
                    }
                    Ok(_) => {
                        last_obstruction = format!(
                            "image of shifted point {:?} is not a monomial",
                            add_vec(&x_amb, v)
                        );
                        ok = false;
                        break;
                    }
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                found = Some((x_amb, shifted));
                break 'outer;
            }
        }
    }
    let (x_amb, shifted) = found.ok_or(Error::BoundExhausted(format!(
        "no conforming base point up to degree {}; last obstruction: {}",
        bound, last_obstruction
    )))?;
    // character trivial on the base span with values a_i on the
    // complement basis
    let mut frame = sat_u.clone();
    frame.extend(comp.iter().cloned());
    let mut xi = vec![];
    for j in 0..r {
        let mut e = vec![0i64; r];
        e[j] = 1;
        let c = linalg::coords_in_basis(&frame, &e)
            .ok_or_else(|| Error::structural("complement frame is not a basis"))?;
        let mut val = Rat::one();
        for (i, (a, _)) in shifted.iter().enumerate() {
            let exp = c[k + i];
            val *= crate::laurent::rat_pow(a, exp)?;
        }
        xi.push(val);
    }
    let conjugator = if xi.iter().all(|x| x.is_one()) {
        AutomorphismWord::identity(p, d_bound)
    } else {
        AutomorphismWord::new(p, vec![Factor::Toric { xi }], d_bound)?
    };
    // fiber lattice generated by v_i + x - x_i
    let w_gens: Vec<IVec> = comp_amb
        .iter()
        .zip(&shifted)
        .map(|(v, (_, xi_amb))| {
            let w = add_vec(v, &sub_vec(&x_amb, xi_amb));
            w[..n].to_vec()
        })
        .collect();
    let h_dirs: IMat = witness.points[1..]
        .iter()
        .map(|q| sub_vec(q, &witness.points[0]))
        .collect();
    let fibration = LatticeFibration::new(p, witness.points[0].clone(), h_dirs, &w_gens)?;
    if fibration.base_points() != witness.points {
        return Err(Error::structural(
            "recovered fibration base differs from the witness",
        ));
    }
    let h_conj = conjugate(h, &conjugator)?;
    let mut embedding_images = BTreeMap::new();
    for q in &witness.points {
        embedding_images.insert(q.clone(), h_conj.image(q)?.clone());
    }
    let certificate = TamenessCertificate {
        original: h.clone(),
        conjugator: conjugator.clone(),
        inner: InnerRetraction::Fibration(fibration.clone()),
        embedding_images,
        verification_bound: d_bound,
    };
    let outcome = verify_certificate(&certificate);
    if !outcome.ok {
        return Err(Error::structural(format!(
            "interior correction failed verification: {}",
            outcome.divergence.unwrap_or_default()
        )));
    }
    Ok(InteriorCorrection {
        conjugator,
        fibration,
        certificate,
    })
}

/// The outcome of the facet-base correction: an elementary conjugator in
/// the column group of the facet and the verified certificate ending in
/// the face retraction.
#[derive(Debug, Clone)]
pub struct FacetCorrection {
    pub conjugator: AutomorphismWord,
    pub facet: usize,
    pub certificate: TamenessCertificate,
}

/// Correct a codimension-1 idempotent map whose base is a facet into a
/// face retraction conjugated by elementary automorphisms over that
/// facet.
pub fn correct_facet_base(
    h: &GradedAlgebraMap,
    witness: &BaseWitness,
    seed: u64,
) -> Result<FacetCorrection> {
    let p = h.polytope();
    let n = p.ambient_dim();
    let d_bound = h.verification_bound();
    let facet = (0..p.facets().len())
        .find(|&i| {
            let mut fp = p.facet_points(i);
            fp.sort();
            fp == witness.points
        })
        .ok_or(Error::NotAFacet)?;
    if h.kernel_monomials()?.is_some() {
        return Err(Error::invalid("kernel monomials present; use the face path directly"));
    }
    if !h.check_idempotent()? {
        return Err(Error::invalid("map is not idempotent"));
    }
    if h.image_dimension(5, seed) + 1 != h.semigroup().rank() {
        return Err(Error::invalid("facet correction requires codimension 1"));
    }
    let hp = base_normalize(h, &witness.points)?;
    // gcd of x - h(x) over the generators off the facet
    let mut phi: Option<LaurentPolynomial> = None;
    for x in p.lattice_points() {
        if witness.points.contains(x) {
            continue;
        }
        let g = LaurentPolynomial::monomial(lift(x), Rat::one()).sub(hp.image(x)?)?;
        if g.is_zero() {
            return Err(Error::structural(format!(
                "generator {:?} off the facet is fixed; base is larger than the facet",
                x
            )));
        }
        phi = Some(match phi {
            None => g,
            Some(prev) => laurent_gcd(&prev, &g)?,
        });
    }
    let phi = phi.ok_or_else(|| Error::invalid("no generators off the facet"))?;
    if phi.num_terms() < 2 {
        return Err(Error::structural(
            "common divisor is a unit: not a facet-based codimension-1 retraction",
        ));
    }
    let phi = phi.unit_normal_form();
    let supp = phi.support();
    // shift the support into the degree-1 points of P, touching the facet
    let fp = p.facet_points(facet);
    let mut shifts: BTreeSet<IVec> = BTreeSet::new();
    for y in p.lattice_points() {
        for s0 in &supp {
            let m = sub_vec(&lift(y), s0);
            let ok = supp.iter().all(|s| {
                let e = add_vec(s, &m);
                e[n] == 1 && p.is_lattice_point(&e[..n])
            });
            let touches = supp.iter().any(|s| {
                let e = add_vec(s, &m);
                fp.contains(&e[..n].to_vec())
            });
            if ok && touches {
                shifts.insert(m);
            }
        }
    }
    let shift = shifts.into_iter().next().ok_or_else(|| {
        Error::structural("divisor support cannot be shifted into P touching the facet")
    })?;
    let phi_s = phi.mul_term(&shift, &Rat::one());
    let v_f = facet_valuation(p, facet)?;
    let mut apex: Option<(IVec, Rat)> = None;
    let mut bases: Vec<(IVec, Rat)> = vec![];
    for (e, c) in phi_s.terms() {
        match v_f.eval(e)? {
            0 => bases.push((e.clone(), c.clone())),
            1 => {
                if apex.is_some() {
                    return Err(Error::structural("two points of height 1 in the divisor"));
                }
                apex = Some((e.clone(), c.clone()));
            }
            _ => {
                return Err(Error::structural("apex height differs from 1"));
            }
        }
    }
    let (z, cz) = apex.ok_or_else(|| Error::structural("divisor has no height-1 apex"))?;
    // elementary factors e_{b-z} with coefficients cancelling the facet
    // terms of the divisor
    let mut factors = vec![];
    for (b, cb) in bases.iter().sorted() {
        let col = ColumnVector {
            vector: sub_vec(&b[..n], &z[..n]),
            base_facet: facet,
        };
        factors.push(Factor::Elementary {
            column: col,
            lambda: -cb / &cz,
        });
    }
    let conjugator = AutomorphismWord::new(p, factors, d_bound)?;
    let eps_phi = conjugator.apply(&phi_s)?;
    if eps_phi.num_terms() != 1 || eps_phi.support()[0] != z {
        return Err(Error::structural(
            "elementary correction does not reduce the divisor to the apex",
        ));
    }
    let h_conj = conjugate(h, &conjugator)?;
    let face = match h_conj.kernel_monomials()? {
        Some(face) => {
            let mut got = face.polytope.lattice_points().to_vec();
            got.sort();
            if got != witness.points {
                return Err(Error::structural(
                    "corrected kernel is not the facet complement",
                ));
            }
            face
        }
        None => {
            return Err(Error::structural(
                "corrected map still has no kernel monomials",
            ));
        }
    };
    let mut embedding_images = BTreeMap::new();
    for q in &witness.points {
        embedding_images.insert(q.clone(), h_conj.image(q)?.clone());
    }
    let certificate = TamenessCertificate {
        original: h.clone(),
        conjugator: conjugator.clone(),
        inner: InnerRetraction::Face(face),
        embedding_images,
        verification_bound: d_bound,
    };
    let outcome = verify_certificate(&certificate);
    if !outcome.ok {
        return Err(Error::structural(format!(
            "facet correction failed verification: {}",
            outcome.divergence.unwrap_or_default()
        )));
    }
    Ok(FacetCorrection {
        conjugator,
        facet,
        certificate,
    })
}
