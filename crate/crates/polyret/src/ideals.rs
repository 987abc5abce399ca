//! Minimal primes of principal segmentonomial ideals, their quotient
//! presentations as scalar-decorated monomial maps, and the
//! variable-splitting transform for invertible coefficient matrices.
//!
//! The coefficient field is the rationals, so only rational roots of the
//! attached univariate polynomial produce primes; the factor without
//! rational roots is surfaced untouched so the caller can see exactly
//! which primes would require a field extension.

use crate::error::{Error, Result};
use crate::laurent::{rat_pow, LaurentPolynomial, TermClass};
use crate::linalg::{self, dot, sub_vec, IMat, IVec, QMat};
use crate::semigroup::AffineSemigroup;
use crate::{rat_int, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A binomial prime over a principal segmentonomial ideal.
#[derive(Debug, Clone, PartialEq)]
pub enum BinomialPrime {
    /// Face prime of a monomial: kills every generator with positive
    /// value under the facet normal (in gp(S) coordinates).
    MonomialFace {
        facet_normal: IVec,
        /// Indices of generators mapped to zero.
        vanishing: Vec<usize>,
        generators: Vec<LaurentPolynomial>,
    },
    /// Kernel of the substitution sending the segment direction
    /// coordinate to the root: X^e maps to root^(We)_1 * Y^((We)_2...).
    CharacterKernel {
        direction: IVec,
        root: Rat,
        /// Unimodular basis change W with W * direction = e_1.
        basis_change: IMat,
        /// Per generator index: (scalar, image exponent in Z^(d-1)).
        projected_map: Vec<(Rat, IVec)>,
        generators: Vec<LaurentPolynomial>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentonomialPrimes {
    pub primes: Vec<BinomialPrime>,
    /// Univariate factor (ascending coefficients in the segment
    /// parameter) with no rational roots; present when the full splitting
    /// would require a field extension.
    pub unresolved: Option<Vec<Rat>>,
}

/// Apply the quotient map of a prime to a polynomial supported on S.
/// Monomial-face quotients stay in ambient dimension d, character-kernel
/// quotients land in d-1 coordinates.
pub fn apply_quotient(
    s: &AffineSemigroup,
    prime: &BinomialPrime,
    f: &LaurentPolynomial,
) -> Result<LaurentPolynomial> {
    let d = s.ambient_dim();
    match prime {
        BinomialPrime::MonomialFace { facet_normal, .. } => {
            let gp = s.difference_group();
            let mut out = LaurentPolynomial::zero(d);
            for (e, c) in f.terms() {
                let y = gp
                    .coords(e)
                    .ok_or_else(|| Error::NotInSemigroup(e.clone()))?;
                if dot(facet_normal, &y) == 0 {
                    out.add_term(e.clone(), c.clone());
                }
            }
            Ok(out)
        }
        BinomialPrime::CharacterKernel {
            root, basis_change, ..
        } => {
            let mut out = LaurentPolynomial::zero(d - 1);
            for (e, c) in f.terms() {
                let z = linalg::mat_vec(basis_change, e);
                let scalar = rat_pow(root, z[0])?;
                out.add_term(z[1..].to_vec(), c * scalar);
            }
            Ok(out)
        }
    }
}

/// Minimal primes of the principal ideal (f) for a segmentonomial f
/// supported on S, constructed through the direction of the Newton
/// polytope and the rational roots of the induced univariate polynomial.
/// `degree_bound` caps the binomial generating sets attached to each
/// prime.
pub fn segmentonomial_minimal_primes(
    s: &AffineSemigroup,
    f: &LaurentPolynomial,
    degree_bound: i64,
) -> Result<SegmentonomialPrimes> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.ambient_dim() != s.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: s.ambient_dim(),
            got: f.ambient_dim(),
        });
    }
    if matches!(f.classify(), TermClass::General) {
        return Err(Error::invalid("input is not a segmentonomial"));
    }
    for (e, _) in f.terms() {
        if !s.contains(e) {
            return Err(Error::NotInSemigroup(e.clone()));
        }
    }
    let d = s.ambient_dim();
    let mut primes = vec![];
    // split off the monomial content when it lives in S
    let support = f.support();
    let content: IVec = (0..d)
        .map(|j| support.iter().map(|e| e[j]).min().unwrap())
        .collect();
    let content = if !linalg::is_zero_vec(&content) && s.contains(&content) {
        content
    } else {
        vec![0; d]
    };
    if !linalg::is_zero_vec(&content) {
        primes.extend(monomial_face_primes(s, &content)?);
    }
    let shift: IVec = content.iter().map(|&x| -x).collect();
    let reduced = f.mul_term(&shift, &Rat::one());
    let mut unresolved = None;
    if reduced.num_terms() >= 2 {
        let (char_primes, leftover) = character_primes(s, &reduced, degree_bound)?;
        primes.extend(char_primes);
        unresolved = leftover;
    }
    Ok(SegmentonomialPrimes { primes, unresolved })
}

fn monomial_face_primes(s: &AffineSemigroup, exponent: &IVec) -> Result<Vec<BinomialPrime>> {
    let gp = s.difference_group();
    let y = gp
        .coords(exponent)
        .ok_or_else(|| Error::NotInSemigroup(exponent.clone()))?;
    let mut out = vec![];
    for normal in s.cone_facet_normals()? {
        if dot(&normal, &y) <= 0 {
            continue;
        }
        let vanishing: Vec<usize> = s
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, g)| {
                let gy = gp.coords(g).expect("generator in gp");
                dot(&normal, &gy) > 0
            })
            .map(|(i, _)| i)
            .collect();
        let generators = vanishing
            .iter()
            .map(|&i| LaurentPolynomial::monomial(s.generators()[i].clone(), Rat::one()))
            .collect();
        out.push(BinomialPrime::MonomialFace {
            facet_normal: normal,
            vanishing,
            generators,
        });
    }
    Ok(out)
}

fn character_primes(
    s: &AffineSemigroup,
    f: &LaurentPolynomial,
    degree_bound: i64,
) -> Result<(Vec<BinomialPrime>, Option<Vec<Rat>>)> {
    let support = f.support();
    let direction = segment_direction(&support)?;
    // parameters t along the segment, normalized to start at 0
    let axis = (0..direction.len())
        .find(|&j| direction[j] != 0)
        .expect("nonzero direction");
    let mut params: Vec<(i64, Rat)> = support
        .iter()
        .map(|e| ((e[axis] - support[0][axis]) / direction[axis], f.coeff(e)))
        .collect();
    let t_min = params.iter().map(|(t, _)| *t).min().unwrap();
    for (t, _) in params.iter_mut() {
        *t -= t_min;
    }
    let deg = params.iter().map(|(t, _)| *t).max().unwrap();
    let mut coeffs = vec![Rat::zero(); (deg + 1) as usize];
    for (t, c) in params {
        coeffs[t as usize] = c;
    }
    let (roots, leftover) = rational_roots(&coeffs)?;
    let w = direction_basis_change(&direction)?;
    let mut primes = vec![];
    for root in roots {
        let projected_map: Vec<(Rat, IVec)> = s
            .generators()
            .iter()
            .map(|g| {
                let z = linalg::mat_vec(&w, g);
                Ok((rat_pow(&root, z[0])?, z[1..].to_vec()))
            })
            .collect::<Result<_>>()?;
        let generators = kernel_binomials(s, &root, &w, degree_bound)?;
        primes.push(BinomialPrime::CharacterKernel {
            direction: direction.clone(),
            root,
            basis_change: w.clone(),
            projected_map,
            generators,
        });
    }
    Ok((primes, leftover))
}

/// Primitive direction of a collinear support set.
pub fn segment_direction(support: &[IVec]) -> Result<IVec> {
    let base = &support[0];
    let mut dir: Option<IVec> = None;
    for e in &support[1..] {
        let d = linalg::primitive(&sub_vec(e, base));
        match &dir {
            None => dir = Some(d),
            Some(existing) => {
                let neg: IVec = existing.iter().map(|&x| -x).collect();
                if d != *existing && d != neg {
                    return Err(Error::invalid("support is not collinear"));
                }
            }
        }
    }
    let mut dir = dir.ok_or_else(|| Error::invalid("support is a single point"))?;
    // canonical sign: first nonzero entry positive
    if let Some(&first) = dir.iter().find(|&&x| x != 0) {
        if first < 0 {
            dir = dir.iter().map(|&x| -x).collect();
        }
    }
    Ok(dir)
}

/// Unimodular W with W * direction = e_1, via the Smith normal form of
/// the direction row.
fn direction_basis_change(direction: &IVec) -> Result<IMat> {
    let (_, _, v) = linalg::snf(&[direction.clone()]);
    let mut w = linalg::transpose(&v);
    let img = linalg::mat_vec(&w, direction);
    let mut e1 = vec![0; direction.len()];
    e1[0] = 1;
    if img == e1 {
        return Ok(w);
    }
    let neg: IVec = img.iter().map(|&x| -x).collect();
    if neg == e1 {
        for x in w[0].iter_mut() {
            *x = -*x;
        }
        let check = linalg::mat_vec(&w, direction);
        if check == e1 {
            return Ok(w);
        }
    }
    Err(Error::structural("direction basis change failed"))
}

/// Degree-bounded binomial generators of the character kernel: for each
/// pair of equal-degree semigroup elements with the same projected image,
/// the binomial x^e - root^(z_1(e) - z_1(e')) x^e'.
fn kernel_binomials(
    s: &AffineSemigroup,
    root: &Rat,
    w: &IMat,
    degree_bound: i64,
) -> Result<Vec<LaurentPolynomial>> {
    let d = s.ambient_dim();
    let mut out = vec![];
    for deg in 1..=degree_bound.max(1) {
        let mut groups: BTreeMap<IVec, Vec<(IVec, i64)>> = BTreeMap::new();
        for e in s.elements_of_degree(deg)? {
            let z = linalg::mat_vec(w, &e);
            groups.entry(z[1..].to_vec()).or_default().push((e, z[0]));
        }
        for members in groups.values() {
            for pair in members.windows(2) {
                let (e1, t1) = &pair[0];
                let (e2, t2) = &pair[1];
                let mut b = LaurentPolynomial::monomial(e1.clone(), Rat::one());
                b.add_term(e2.clone(), -rat_pow(root, t1 - t2)?);
                if !b.is_zero() {
                    out.push(b);
                }
            }
        }
        let _ = d;
    }
    Ok(out)
}

/// All rational roots of a rational-coefficient univariate polynomial
/// given by ascending coefficients with nonzero constant term; returns
/// the distinct roots and the deflated factor without rational roots
/// (None when the polynomial splits completely).
fn rational_roots(coeffs: &[Rat]) -> Result<(Vec<Rat>, Option<Vec<Rat>>)> {
    let mut cur: Vec<Rat> = coeffs.to_vec();
    while cur.last().map_or(false, |c| c.is_zero()) {
        cur.pop();
    }
    if cur.len() <= 1 {
        return Err(Error::structural("univariate polynomial is constant"));
    }
    let mut roots: Vec<Rat> = vec![];
    loop {
        if cur.len() <= 1 {
            return Ok((roots, None));
        }
        match find_rational_root(&cur)? {
            Some(r) => {
                cur = deflate(&cur, &r);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
            None => {
                let leftover = if cur.len() > 1 { Some(cur) } else { None };
                return Ok((roots, leftover));
            }
        }
    }
}

fn eval_uni(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs
        .iter()
        .rev()
        .fold(Rat::zero(), |acc, c| acc * x + c)
}

fn deflate(coeffs: &[Rat], root: &Rat) -> Vec<Rat> {
    // synthetic division by (T - root), highest degree first
    let mut out: Vec<Rat> = Vec::with_capacity(coeffs.len() - 1);
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * root + c;
        out.push(acc.clone());
    }
    out.pop(); // remainder, zero for a true root
    out.reverse();
    out
}

fn find_rational_root(coeffs: &[Rat]) -> Result<Option<Rat>> {
    // clear denominators to an integer polynomial
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| {
        let d = c.denom();
        &acc / num_integer::Integer::gcd(&acc, d) * d
    });
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rat::from(lcm.clone())).to_integer())
        .collect();
    let a0 = ints.first().expect("nonempty").clone();
    let an = ints.last().expect("nonempty").clone();
    if a0.is_zero() {
        return Ok(Some(Rat::zero()));
    }
    let p_divs = divisors(&a0)?;
    let q_divs = divisors(&an)?;
    for p in &p_divs {
        for q in &q_divs {
            for sign in [1i64, -1] {
                let cand = Rat::new(BigInt::from(*p * sign), BigInt::from(*q));
                if eval_uni(coeffs, &cand).is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

fn divisors(n: &BigInt) -> Result<Vec<i64>> {
    let n: i64 = i64::try_from(&n.abs())
        .map_err(|_| Error::BoundExhausted("coefficient too large for root search".into()))?;
    let mut out = vec![];
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Quotient of k[S] by a prime, presented as an affine semigroup with a
/// scalar-decorated monomial map on the generators.
pub fn quotient_as_semigroup(
    s: &AffineSemigroup,
    prime: &BinomialPrime,
) -> Result<(AffineSemigroup, Vec<(Rat, IVec)>)> {
    match prime {
        BinomialPrime::MonomialFace { vanishing, .. } => {
            let survivors: Vec<IVec> = s
                .generators()
                .iter()
                .enumerate()
                .filter(|(i, _)| !vanishing.contains(i))
                .map(|(_, g)| g.clone())
                .collect();
            if survivors.is_empty() {
                return Err(Error::invalid("face prime kills every generator"));
            }
            let sq = AffineSemigroup::with_denominator(
                s.ambient_dim(),
                survivors,
                s.grading().to_vec(),
                s.grading_denom(),
            )?;
            let map: Vec<(Rat, IVec)> = s
                .generators()
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    if vanishing.contains(&i) {
                        (Rat::zero(), vec![0; s.ambient_dim()])
                    } else {
                        (Rat::one(), g.clone())
                    }
                })
                .collect();
            Ok((sq, map))
        }
        BinomialPrime::CharacterKernel { projected_map, .. } => {
            let images: Vec<IVec> = projected_map.iter().map(|(_, img)| img.clone()).collect();
            // grading on the image: solve a rational form giving every
            // generator its original degree, then clear denominators
            let mat: QMat = images.iter().map(|v| linalg::to_rat_vec(v)).collect();
            let rhs: Vec<Rat> = s
                .generators()
                .iter()
                .map(|g| rat_int(s.degree(g).expect("generator degree")))
                .collect();
            let phi = linalg::solve_q(&mat, &rhs)
                .ok_or_else(|| Error::structural("no grading on the quotient image"))?;
            let denom = phi.iter().fold(BigInt::one(), |acc, c| {
                let d = c.denom();
                &acc / num_integer::Integer::gcd(&acc, d) * d
            });
            let grading: IVec = phi
                .iter()
                .map(|c| {
                    i64::try_from(&(c * Rat::from(denom.clone())).to_integer())
                        .map_err(|_| Error::BoundExhausted("grading overflow".into()))
                })
                .collect::<Result<_>>()?;
            let denom_i = i64::try_from(&denom)
                .map_err(|_| Error::BoundExhausted("grading overflow".into()))?;
            let sq = AffineSemigroup::with_denominator(
                s.ambient_dim() - 1,
                images,
                grading,
                denom_i,
            )?;
            Ok((sq, projected_map.clone()))
        }
    }
}

/// True when no two of the given S-elements differ by a multiple of the
/// segment direction of f; their images in the quotient are then
/// non-proportional terms, hence linearly independent.
pub fn independence_test(
    _s: &AffineSemigroup,
    f: &LaurentPolynomial,
    points: &[IVec],
) -> Result<bool> {
    if !f.is_segmentonomial() || f.num_terms() < 2 {
        return Err(Error::invalid("need a segmentonomial with a genuine direction"));
    }
    let dir = segment_direction(&f.support())?;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = sub_vec(&points[i], &points[j]);
            if linalg::is_zero_vec(&d) {
                return Err(Error::invalid("points must be pairwise distinct"));
            }
            let p = linalg::primitive(&d);
            let neg: IVec = dir.iter().map(|&x| -x).collect();
            if p == dir || p == neg {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The variable-splitting transform attached to an invertible rational
/// (n+1) x (n+1) matrix T: either the top-left n x n block is already
/// invertible (chosen_j = 0), or some column j gains the last column and
/// becomes invertible (chosen_j in 1..=n).
#[derive(Debug, Clone, PartialEq)]
pub struct SplitTransform {
    pub matrix_t: QMat,
    pub chosen_j: usize,
    pub epsilon_matrix: QMat,
}

pub fn split_variable(t: &QMat) -> Result<SplitTransform> {
    let m = t.len();
    if m < 2 || t.iter().any(|r| r.len() != m) {
        return Err(Error::invalid("matrix must be square of size >= 2"));
    }
    if linalg::det_q(t).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = m - 1;
    let block: QMat = t[..n].iter().map(|r| r[..n].to_vec()).collect();
    if !linalg::det_q(&block).is_zero() {
        return Ok(SplitTransform {
            matrix_t: t.clone(),
            chosen_j: 0,
            epsilon_matrix: block,
        });
    }
    for j in 1..=n {
        let mut eps = block.clone();
        for i in 0..n {
            eps[i][j - 1] = &eps[i][j - 1] + &t[i][n];
        }
        if !linalg::det_q(&eps).is_zero() {
            return Ok(SplitTransform {
                matrix_t: t.clone(),
                chosen_j: j,
                epsilon_matrix: eps,
            });
        }
    }
    Err(Error::structural(
        "no column completion yields an invertible block",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn free2() -> AffineSemigroup {
        AffineSemigroup::new(2, vec![vec![1, 0], vec![0, 1]], vec![1, 1]).unwrap()
    }

    fn lp(dim: usize, terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            dim,
            &terms
                .iter()
                .map(|(e, n)| (e.to_vec(), rat_int(*n)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn single_linear_binomial() {
        let s = free2();
        let f = lp(2, &[(&[1, 0], 1), (&[0, 1], -2)]); // x - 2y
        let res = segmentonomial_minimal_primes(&s, &f, 2).unwrap();
        assert_eq!(res.primes.len(), 1);
        assert!(res.unresolved.is_none());
        let img = apply_quotient(&s, &res.primes[0], &f).unwrap();
        assert!(img.is_zero());
        let (sq, map) = quotient_as_semigroup(&s, &res.primes[0]).unwrap();
        assert_eq!(sq.ambient_dim(), 1);
        // x and y map to proportional terms with ratio 2
        let (cx, ex) = &map[1]; // generators sorted: (0,1) then (1,0)
        let (cy, ey) = &map[0];
        assert_eq!(ex, ey);
        assert_eq!(cx / cy, rat(2, 1));
    }

    #[test]
    fn quadratic_splits_into_two_primes() {
        let s = free2();
        // x^2 - 3xy + 2y^2 = (x - y)(x - 2y)
        let f = lp(2, &[(&[2, 0], 1), (&[1, 1], -3), (&[0, 2], 2)]);
        let res = segmentonomial_minimal_primes(&s, &f, 2).unwrap();
        assert_eq!(res.primes.len(), 2);
        assert!(res.unresolved.is_none());
        for p in &res.primes {
            assert!(apply_quotient(&s, p, &f).unwrap().is_zero());
        }
        let roots: Vec<Rat> = res
            .primes
            .iter()
            .map(|p| match p {
                BinomialPrime::CharacterKernel { root, .. } => root.clone(),
                _ => panic!("expected character kernels"),
            })
            .collect();
        assert!(roots.contains(&rat(1, 1)) || roots.contains(&rat(-1, 1)));
    }

    #[test]
    fn monomial_content_splits_off_face_prime() {
        let s = free2();
        // x^2 y - x^3 = x^2 (y - x)
        let f = lp(2, &[(&[2, 1], 1), (&[3, 0], -1)]);
        let res = segmentonomial_minimal_primes(&s, &f, 2).unwrap();
        let faces = res
            .primes
            .iter()
            .filter(|p| matches!(p, BinomialPrime::MonomialFace { .. }))
            .count();
        let kernels = res
            .primes
            .iter()
            .filter(|p| matches!(p, BinomialPrime::CharacterKernel { .. }))
            .count();
        assert_eq!(faces, 1);
        assert_eq!(kernels, 1);
        for p in &res.primes {
            assert!(apply_quotient(&s, p, &f).unwrap().is_zero());
        }
    }

    #[test]
    fn irrational_roots_are_surfaced() {
        let s = free2();
        // x^2 - 2y^2 has no rational roots
        let f = lp(2, &[(&[2, 0], 1), (&[0, 2], -2)]);
        let res = segmentonomial_minimal_primes(&s, &f, 2).unwrap();
        assert!(res.primes.is_empty());
        let leftover = res.unresolved.expect("irrational factor reported");
        assert_eq!(leftover.len(), 3);
    }

    #[test]
    fn general_polynomial_rejected() {
        let s = free2();
        let f = lp(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]);
        assert!(segmentonomial_minimal_primes(&s, &f, 2).is_err());
    }

    #[test]
    fn face_prime_quotient() {
        let s = free2();
        let f = lp(2, &[(&[1, 0], 1)]); // the monomial x
        let res = segmentonomial_minimal_primes(&s, &f, 2).unwrap();
        assert_eq!(res.primes.len(), 1);
        let (sq, map) = quotient_as_semigroup(&s, &res.primes[0]).unwrap();
        assert_eq!(sq.generators(), &[vec![0, 1]]);
        // generator (1,0) dies, (0,1) survives
        assert!(map[1].0.is_zero());
        assert!(map[0].0.is_one());
    }

    #[test]
    fn independence_examples() {
        let s = free2();
        let f = lp(2, &[(&[1, 0], 1), (&[0, 1], -1)]); // x - y
        assert!(!independence_test(&s, &f, &[vec![1, 0], vec![0, 1]]).unwrap());
        assert!(independence_test(&s, &f, &[vec![1, 0], vec![1, 1]]).unwrap());
        assert!(independence_test(&s, &f, &[vec![1, 0]]).unwrap());
    }

    #[test]
    fn prime_generators_vanish_in_quotient() {
        let s = free2();
        let f = lp(2, &[(&[1, 0], 1), (&[0, 1], -2)]);
        let res = segmentonomial_minimal_primes(&s, &f, 3).unwrap();
        let p = &res.primes[0];
        let gens = match p {
            BinomialPrime::CharacterKernel { generators, .. } => generators,
            _ => panic!("expected character kernel"),
        };
        assert!(!gens.is_empty());
        for g in gens {
            assert!(apply_quotient(&s, p, g).unwrap().is_zero());
        }
    }

    #[test]
    fn split_identity() {
        let t = linalg::to_rat_mat(&linalg::identity(3));
        let sp = split_variable(&t).unwrap();
        assert_eq!(sp.chosen_j, 0);
        assert_eq!(sp.epsilon_matrix, linalg::to_rat_mat(&linalg::identity(2)));
    }

    #[test]
    fn split_swap_matrix() {
        // n = 1, T = [[0,1],[1,0]]: epsilon_0 = [0] singular, j = 1 works
        let t = linalg::to_rat_mat(&vec![vec![0, 1], vec![1, 0]]);
        let sp = split_variable(&t).unwrap();
        assert_eq!(sp.chosen_j, 1);
        assert_eq!(sp.epsilon_matrix, vec![vec![rat_int(1)]]);
    }

    #[test]
    fn split_rank_deficient_block() {
        // n = 2 with singular top-left block but fixable by the last column
        let t = linalg::to_rat_mat(&vec![
            vec![1, 1, 1],
            vec![1, 1, 0],
            vec![0, 1, 0],
        ]);
        let sp = split_variable(&t).unwrap();
        assert!(sp.chosen_j >= 1);
        assert!(!linalg::det_q(&sp.epsilon_matrix).is_zero());
    }

    #[test]
    fn split_rejects_singular() {
        let t = linalg::to_rat_mat(&vec![vec![1, 1], vec![1, 1]]);
        assert!(matches!(split_variable(&t), Err(Error::SingularMatrix)));
    }
}
