//! Acceptance gate: ten pinned criteria, one pass/fail line each.
//! Every tolerance and bound is fixed in this file; all arithmetic is
//! exact, so equality assertions carry no epsilon.

use polyret::geometry::{
    decompositions, homothety_check, pt, standard_segment, unit_square, LatticePolytope,
};
use polyret::groups::{column_vectors, height, AutomorphismWord, ColumnVector, Factor};
use polyret::ideals::{
    apply_quotient, quotient_as_semigroup, segmentonomial_minimal_primes, BinomialPrime,
};
use polyret::laurent::LaurentPolynomial;
use polyret::linalg::{self, IVec, QVec};
use polyret::retraction::{
    check_homomorphism, conjugate, correct_facet_base, face_retraction, fibration_retraction,
    make_witness, polygon_tameness, prop84_obstruction, verify_certificate,
    verify_morphism_certificate, GradedAlgebraMap, LatticeFibration, MorphismCertificate,
    MorphismStep,
};
use polyret::semigroup::AffineSemigroup;
use polyret::{rat, Rat};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn lift(x: &[i64]) -> IVec {
    let mut e = x.to_vec();
    e.push(1);
    e
}

fn monomial_image(x: &[i64]) -> LaurentPolynomial {
    LaurentPolynomial::monomial(lift(x), Rat::one())
}

fn pass(n: usize, what: &str) {
    println!("criterion {:2}: PASS — {}", n, what);
}

// -------------------------------------------------------------------------
// 1. The rigid triangle: exact lattice points, empty column space, and the
//    join with a dilated segment inheriting exactly the segment's columns.

#[test]
fn criterion_01_rigid_triangle_and_join_columns() {
    let q = LatticePolytope::hull(&[pt(&[0, -1]), pt(&[-1, 0]), pt(&[1, 1]), pt(&[0, 0])]).unwrap();
    let mut expected = vec![pt(&[0, -1]), pt(&[-1, 0]), pt(&[1, 1]), pt(&[0, 0])];
    expected.sort();
    assert_eq!(q.lattice_points(), expected.as_slice());
    assert!(column_vectors(&q).is_empty());

    let join = q.dilate(2).unwrap().join(&standard_segment(2)).unwrap();
    let mut cols: Vec<IVec> = column_vectors(&join).iter().map(|c| c.vector.clone()).collect();
    cols.sort();
    // exactly the two column vectors of the embedded segment factor
    assert_eq!(cols, vec![pt(&[0, 0, -1, 0]), pt(&[0, 0, 1, 0])]);
    pass(1, "rigid triangle lattice points, Col = empty, join inherits segment columns");
}

// -------------------------------------------------------------------------
// 2. The codimension-2 retraction on join(7 segment, 2 segment) sending
//    each top generator to a two-term sum: homomorphism at D=2,
//    idempotent, image dimension 2, and the three-step factorization
//    certificate replays exactly.

fn two_term_retraction() -> GradedAlgebraMap {
    let p = standard_segment(7).join(&standard_segment(2)).unwrap();
    let mut images = BTreeMap::new();
    for a in 0..=7i64 {
        images.insert(pt(&[a, 0, 0]), monomial_image(&[a, 0, 0]));
    }
    for (b, (i, j)) in [(0i64, (1i64, 2i64)), (1, (3, 4)), (2, (5, 6))] {
        let img = LaurentPolynomial::from_terms(
            4,
            &[(lift(&[i, 0, 0]), Rat::one()), (lift(&[j, 0, 0]), Rat::one())],
        )
        .unwrap();
        images.insert(pt(&[0, b, 1]), img);
    }
    // includes the relation check (x2+x3)(x6+x7) = (x4+x5)^2 at degree 2
    check_homomorphism(&p, images, 2).unwrap()
}

fn two_term_chain_certificate() -> MorphismCertificate {
    let source = standard_segment(7).join(&standard_segment(2)).unwrap();
    let h = two_term_retraction();
    let claimed = h.images().clone();
    let trapezoid =
        LatticePolytope::hull(&[pt(&[0, 0]), pt(&[7, 0]), pt(&[0, 1]), pt(&[4, 1])]).unwrap();
    let mut proj1 = BTreeMap::new();
    for a in 0..=7i64 {
        proj1.insert(pt(&[a, 0, 0]), Some(pt(&[a, 0])));
    }
    for b in 0..=2i64 {
        proj1.insert(pt(&[0, b, 1]), Some(pt(&[2 * b, 1])));
    }
    let step1 = MorphismStep {
        word: AutomorphismWord::identity(&source, 2),
        images: proj1,
        next: trapezoid.clone(),
    };
    let bottom = trapezoid
        .facets()
        .iter()
        .position(|f| f.normal == vec![0, 1])
        .unwrap();
    let word = AutomorphismWord::new(
        &trapezoid,
        vec![
            Factor::Elementary {
                column: ColumnVector {
                    vector: vec![1, -1],
                    base_facet: bottom,
                },
                lambda: Rat::one(),
            },
            Factor::Elementary {
                column: ColumnVector {
                    vector: vec![2, -1],
                    base_facet: bottom,
                },
                lambda: Rat::one(),
            },
        ],
        2,
    )
    .unwrap();
    let segment = standard_segment(7);
    let mut proj2 = BTreeMap::new();
    for x in trapezoid.lattice_points() {
        let img = if x[1] == 0 { Some(pt(&[x[0]])) } else { None };
        proj2.insert(x.clone(), img);
    }
    let step2 = MorphismStep {
        word,
        images: proj2,
        next: segment,
    };
    let mut embedding = BTreeMap::new();
    for a in 0..=7i64 {
        embedding.insert(pt(&[a]), monomial_image(&[a, 0, 0]));
    }
    MorphismCertificate {
        source: source.clone(),
        claimed,
        steps: vec![step1, step2],
        embedding,
        target: source,
        verification_bound: 2,
    }
}

#[test]
fn criterion_02_two_term_retraction_and_chain_certificate() {
    let h = two_term_retraction();
    assert!(h.check_idempotent().unwrap());
    assert_eq!(h.image_dimension(5, 7), 2);
    assert_eq!(h.semigroup().rank() - h.image_dimension(5, 7), 2);
    let outcome = verify_morphism_certificate(&two_term_chain_certificate());
    assert!(outcome.ok, "{:?}", outcome.divergence);
    pass(2, "two-term retraction valid/idempotent, dim 2, codim 2; chain certificate replays");
}

// -------------------------------------------------------------------------
// 3. Normality: 50 random polygons against an exhaustive degree-4
//    oracle, plus the pinned non-normal semigroup with its witness.

fn random_polygon(rng: &mut ChaCha8Rng, span: i64) -> LatticePolytope {
    loop {
        let k = rng.gen_range(3..=6);
        let pts: Vec<IVec> = (0..k)
            .map(|_| vec![rng.gen_range(0..=span), rng.gen_range(0..=span)])
            .collect();
        let p = LatticePolytope::hull(&pts).unwrap();
        if p.dim() == 2 {
            return p;
        }
    }
}

#[test]
fn criterion_03_normality_against_exhaustive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let p = random_polygon(&mut rng, 4);
        let s = AffineSemigroup::polytopal(&p);
        let report = s.normality_check(None).unwrap();
        assert!(report.normal, "polygon {:?} reported non-normal", p.vertices());
        // exhaustive oracle: every lattice point of dP is a degree-d
        // semigroup element, for d <= 4
        for d in 1..=4i64 {
            let semigroup_count = s.elements_of_degree(d).unwrap().len();
            let dilated_count = p.dilate(d).unwrap().lattice_points().len();
            assert_eq!(
                semigroup_count, dilated_count,
                "polygon {:?} fails saturation at degree {}",
                p.vertices(),
                d
            );
        }
    }
    let s = AffineSemigroup::new(2, vec![vec![0, 1], vec![1, 1], vec![3, 1]], vec![0, 1]).unwrap();
    let report = s.normality_check(None).unwrap();
    assert!(!report.normal);
    assert_eq!(report.witness, Some((vec![2, 1], 2)));
    pass(3, "50 random polygons normal (oracle to degree 4); pinned witness (2,1)");
}

// -------------------------------------------------------------------------
// 4. Newton polytopes are additive under multiplication: 1000 random
//    pairs in dimensions 2 and 3, up to 8 terms, exact equality.

fn random_poly(rng: &mut ChaCha8Rng, dim: usize) -> LaurentPolynomial {
    loop {
        let t = rng.gen_range(1..=8);
        let mut f = LaurentPolynomial::zero(dim);
        for _ in 0..t {
            let e: IVec = (0..dim).map(|_| rng.gen_range(-4i64..=4)).collect();
            let num = rng.gen_range(-5i64..=5);
            if num != 0 {
                f.add_term(e, rat(num, rng.gen_range(1..=4)));
            }
        }
        if !f.is_zero() {
            return f;
        }
    }
}

#[test]
fn criterion_04_newton_polytope_product_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..1000 {
        let dim = if i % 2 == 0 { 2 } else { 3 };
        let f = random_poly(&mut rng, dim);
        let g = random_poly(&mut rng, dim);
        let lhs = f.mul(&g).unwrap().newton_polytope().unwrap();
        let rhs = f
            .newton_polytope()
            .unwrap()
            .minkowski_sum(&g.newton_polytope().unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "pair {} violates N(fg) = N(f) + N(g)", i);
    }
    pass(4, "N(fg) = N(f) + N(g) on 1000 random pairs, zero failures");
}

// -------------------------------------------------------------------------
// 5. Elementary automorphism laws on 20 random polygons with columns:
//    same-column addition and inverses, and the explicit height-1 formula.

fn random_polygon_with_columns(rng: &mut ChaCha8Rng) -> LatticePolytope {
    loop {
        // sheared trapezoids have columns over the long bottom facet
        let a = rng.gen_range(2..=4);
        let c = rng.gen_range(0..=a - 1);
        let base = LatticePolytope::hull(&[pt(&[0, 0]), pt(&[a, 0]), pt(&[0, 1]), pt(&[c, 1])])
            .unwrap();
        let sh = rng.gen_range(-1i64..=1);
        let moved: Vec<IVec> = base
            .vertices()
            .iter()
            .map(|v| vec![v[0] + sh * v[1], v[1]])
            .collect();
        let p = LatticePolytope::hull(&moved).unwrap();
        if !column_vectors(&p).is_empty() {
            return p;
        }
    }
}

#[test]
fn criterion_05_elementary_automorphism_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let lambdas = [rat(1, 1), rat(-1, 1), rat(1, 2), rat(3, 2), rat(2, 1)];
    for _ in 0..20 {
        let p = random_polygon_with_columns(&mut rng);
        let cols = column_vectors(&p);
        let n = p.ambient_dim();
        for col in &cols {
            let l1 = lambdas[rng.gen_range(0..lambdas.len())].clone();
            let l2 = lambdas[rng.gen_range(0..lambdas.len())].clone();
            // (a) same-column addition and inverse laws, exactly on all
            // degree-1 generators
            let two = AutomorphismWord::new(
                &p,
                vec![
                    Factor::Elementary { column: col.clone(), lambda: l1.clone() },
                    Factor::Elementary { column: col.clone(), lambda: l2.clone() },
                ],
                3,
            )
            .unwrap();
            let one = AutomorphismWord::new(
                &p,
                vec![Factor::Elementary { column: col.clone(), lambda: &l1 + &l2 }],
                3,
            )
            .unwrap();
            let inv = AutomorphismWord::new(
                &p,
                vec![
                    Factor::Elementary { column: col.clone(), lambda: l1.clone() },
                    Factor::Elementary { column: col.clone(), lambda: -l1.clone() },
                ],
                3,
            )
            .unwrap();
            for x in p.lattice_points() {
                assert_eq!(two.apply_generator(x).unwrap(), one.apply_generator(x).unwrap());
                assert_eq!(
                    inv.apply_generator(x).unwrap(),
                    LaurentPolynomial::monomial(lift(x), Rat::one())
                );
            }
        }
        // (b) columns over a common base facet commute on all
        // generators, and the explicit formula x(1 + sum lambda_i v_i)
        // holds on height-1 generators
        for facet in 0..p.facets().len() {
            let shared: Vec<&ColumnVector> =
                cols.iter().filter(|c| c.base_facet == facet).collect();
            if shared.is_empty() {
                continue;
            }
            if shared.len() >= 2 {
                let l1 = lambdas[rng.gen_range(0..lambdas.len())].clone();
                let l2 = lambdas[rng.gen_range(0..lambdas.len())].clone();
                let fwd = AutomorphismWord::new(
                    &p,
                    vec![
                        Factor::Elementary { column: shared[0].clone(), lambda: l1.clone() },
                        Factor::Elementary { column: shared[1].clone(), lambda: l2.clone() },
                    ],
                    3,
                )
                .unwrap();
                let rev = AutomorphismWord::new(
                    &p,
                    vec![
                        Factor::Elementary { column: shared[1].clone(), lambda: l2 },
                        Factor::Elementary { column: shared[0].clone(), lambda: l1 },
                    ],
                    3,
                )
                .unwrap();
                for x in p.lattice_points() {
                    assert_eq!(fwd.apply_generator(x).unwrap(), rev.apply_generator(x).unwrap());
                }
            }
            let ls: Vec<Rat> = shared
                .iter()
                .map(|_| lambdas[rng.gen_range(0..lambdas.len())].clone())
                .collect();
            let word = AutomorphismWord::new(
                &p,
                shared
                    .iter()
                    .zip(&ls)
                    .map(|(c, l)| Factor::Elementary { column: (*c).clone(), lambda: l.clone() })
                    .collect(),
                3,
            )
            .unwrap();
            for x in p.lattice_points() {
                if height(&p, shared[0], &lift(x)).unwrap() != 1 {
                    continue;
                }
                let mut expected = LaurentPolynomial::monomial(lift(x), Rat::one());
                for (c, l) in shared.iter().zip(&ls) {
                    let mut e = lift(x);
                    for j in 0..n {
                        e[j] += c.vector[j];
                    }
                    expected.add_term(e, l.clone());
                }
                assert_eq!(word.apply_generator(x).unwrap(), expected);
            }
        }
    }
    pass(5, "same-column addition/inverse laws and height-1 formula on 20 polygons");
}

// -------------------------------------------------------------------------
// 6. Segmentonomial minimal primes on 100 random rational-root products:
//    annihilation, scalar-monomial quotients, and a per-degree kernel
//    match against brute force.

fn free_semigroup(dim: usize) -> AffineSemigroup {
    let gens: Vec<IVec> = (0..dim)
        .map(|i| {
            let mut e = vec![0i64; dim];
            e[i] = 1;
            e
        })
        .collect();
    AffineSemigroup::new(dim, gens, vec![1; dim]).unwrap()
}

fn random_segmentonomial(rng: &mut ChaCha8Rng, dim: usize) -> LaurentPolynomial {
    let roots = [rat(1, 1), rat(-1, 1), rat(2, 1), rat(1, 2), rat(-3, 1), rat(3, 2)];
    {
        // a primitive degree-0 direction keeps the factors linear in the
        // segment variable, so every root stays rational
        let dirs2: [&[i64]; 1] = [&[1, -1]];
        let dirs3: [&[i64]; 5] =
            [&[1, -1, 0], &[1, 0, -1], &[0, 1, -1], &[2, -1, -1], &[1, 1, -2]];
        let v: &[i64] = if dim == 2 {
            dirs2[rng.gen_range(0..dirs2.len())]
        } else {
            dirs3[rng.gen_range(0..dirs3.len())]
        };
        let u: IVec = v.iter().map(|&x| x.max(0)).collect();
        let w: IVec = v.iter().map(|&x| (-x).max(0)).collect();
        let shift: IVec = (0..dim).map(|_| rng.gen_range(0..=1)).collect();
        let mut f = LaurentPolynomial::monomial(shift, Rat::one());
        let k = rng.gen_range(1..=2);
        for _ in 0..k {
            let r = roots[rng.gen_range(0..roots.len())].clone();
            let factor = LaurentPolynomial::from_terms(
                dim,
                &[(u.clone(), Rat::one()), (w.clone(), -r)],
            )
            .unwrap();
            f = f.mul(&factor).unwrap();
        }
        f
    }
}

/// Index of a monomial image under the quotient, ignoring the scalar.
fn dense_rows(
    images: &[LaurentPolynomial],
) -> Vec<QVec> {
    let mut support: Vec<IVec> = vec![];
    for f in images {
        for (e, _) in f.terms() {
            if !support.contains(e) {
                support.push(e.clone());
            }
        }
    }
    support.sort();
    images
        .iter()
        .map(|f| {
            support
                .iter()
                .map(|e| f.coeff(e))
                .collect()
        })
        .collect()
}

fn rank_of(rows: Vec<QVec>) -> usize {
    if rows.is_empty() {
        0
    } else {
        linalg::rank_q(&rows)
    }
}

#[test]
fn criterion_06_segmentonomial_minimal_primes() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    while checked < 100 {
        let dim = if checked % 2 == 0 { 2 } else { 3 };
        let s = free_semigroup(dim);
        let f = random_segmentonomial(&mut rng, dim);
        let result = segmentonomial_minimal_primes(&s, &f, 3).unwrap();
        assert!(result.unresolved.is_none(), "rational-root product left a remainder");
        assert!(!result.primes.is_empty());
        for prime in &result.primes {
            // (i) the prime annihilates f
            assert!(apply_quotient(&s, prime, &f).unwrap().is_zero());
            // (ii) the quotient is a scalar-decorated monomial map and
            // multiplicative on generator pairs
            let (sq, map) = quotient_as_semigroup(&s, prime).unwrap();
            assert_eq!(map.len(), s.generators().len());
            for (i, gi) in s.generators().iter().enumerate() {
                let img = apply_quotient(
                    &s,
                    prime,
                    &LaurentPolynomial::monomial(gi.clone(), Rat::one()),
                )
                .unwrap();
                assert!(img.num_terms() <= 1);
                if let BinomialPrime::CharacterKernel { .. } = prime {
                    assert_eq!(map[i].1.len(), sq.ambient_dim());
                }
                for gj in s.generators() {
                    let prod_then = apply_quotient(
                        &s,
                        prime,
                        &LaurentPolynomial::monomial(linalg::add_vec(gi, gj), Rat::one()),
                    )
                    .unwrap();
                    let then_prod = img
                        .mul(
                            &apply_quotient(
                                &s,
                                prime,
                                &LaurentPolynomial::monomial(gj.clone(), Rat::one()),
                            )
                            .unwrap(),
                        )
                        .unwrap();
                    assert_eq!(prod_then, then_prod);
                }
            }
            // (iii) per-degree kernel of the quotient matches the span of
            // the reported generators, degrees 1..=3
            let gens = match prime {
                BinomialPrime::MonomialFace { generators, .. } => generators.clone(),
                BinomialPrime::CharacterKernel { generators, .. } => generators.clone(),
            };
            for d in 1..=3i64 {
                let monos = s.elements_of_degree(d).unwrap();
                let images: Vec<LaurentPolynomial> = monos
                    .iter()
                    .map(|m| {
                        apply_quotient(
                            &s,
                            prime,
                            &LaurentPolynomial::monomial(m.clone(), Rat::one()),
                        )
                        .unwrap()
                    })
                    .collect();
                let kernel_dim = monos.len() - rank_of(dense_rows(&images));
                // span of generator multiples in degree d
                let mut multiples: Vec<LaurentPolynomial> = vec![];
                for g in &gens {
                    let gd = g
                        .terms()
                        .next()
                        .map(|(e, _)| s.degree(e).unwrap())
                        .unwrap_or(0);
                    if gd > d {
                        continue;
                    }
                    if gd == d {
                        multiples.push(g.clone());
                        continue;
                    }
                    for a in s.elements_of_degree(d - gd).unwrap() {
                        multiples.push(g.mul_term(&a, &Rat::one()));
                    }
                }
                let slice_dim = rank_of(dense_rows(&multiples));
                assert_eq!(
                    kernel_dim, slice_dim,
                    "degree {} kernel mismatch for f = {:?}",
                    d, f
                );
            }
        }
        checked += 1;
    }
    pass(6, "100 segmentonomials: primes annihilate, quotients monomial, kernels match");
}

// -------------------------------------------------------------------------
// 7. Pyramid summand rigidity: every Minkowski decomposition of a random
//    lattice triangle has both summands homothetic to it.

#[test]
fn criterion_07_pyramid_summands_are_homothetic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 100 {
        let p = random_polygon(&mut rng, 5);
        if p.vertices().len() != 3 {
            continue;
        }
        let decs = match decompositions(&p) {
            Ok(d) => d,
            Err(_) => continue,
        };
        assert!(!decs.is_empty(), "trivial decompositions always exist");
        for (q, r) in &decs {
            assert!(
                homothety_check(&p, q).unwrap().is_some(),
                "summand {:?} of {:?} not homothetic",
                q.vertices(),
                p.vertices()
            );
            assert!(homothety_check(&p, r).unwrap().is_some());
        }
        checked += 1;
    }
    pass(7, "100 random triangles: all Minkowski summands homothetic to the pyramid");
}

// -------------------------------------------------------------------------
// 8. Tameness round-trip: 50 conjugated monomial retractions (fibration
//    and facet types) are recovered with exactly replaying certificates.

fn random_unimodular(rng: &mut ChaCha8Rng) -> (Vec<IVec>, IVec) {
    let a = rng.gen_range(-1i64..=1);
    let b = rng.gen_range(-1i64..=1);
    // [[1,a],[0,1]] * [[1,0],[b,1]]
    let m = vec![vec![1 + a * b, a], vec![b, 1]];
    let t = vec![rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2)];
    (m, t)
}

fn apply_affine(m: &[IVec], t: &[i64], x: &[i64]) -> IVec {
    vec![
        m[0][0] * x[0] + m[0][1] * x[1] + t[0],
        m[1][0] * x[0] + m[1][1] * x[1] + t[1],
    ]
}

fn random_word(rng: &mut ChaCha8Rng, p: &LatticePolytope, d: i64) -> AutomorphismWord {
    let lambdas = [rat(1, 1), rat(-1, 1), rat(1, 2), rat(2, 1), rat(3, 2)];
    let scalars = [rat(1, 1), rat(2, 1), rat(1, 2), rat(3, 1), rat(-1, 1)];
    let cols = column_vectors(p);
    let len = rng.gen_range(1..=4);
    let mut factors = vec![];
    for _ in 0..len {
        let toric = cols.is_empty() || rng.gen_bool(0.5);
        if toric {
            let xi: Vec<Rat> = (0..=p.ambient_dim())
                .map(|_| scalars[rng.gen_range(0..scalars.len())].clone())
                .collect();
            factors.push(Factor::Toric { xi });
        } else {
            factors.push(Factor::Elementary {
                column: cols[rng.gen_range(0..cols.len())].clone(),
                lambda: lambdas[rng.gen_range(0..lambdas.len())].clone(),
            });
        }
    }
    AutomorphismWord::new(p, factors, d).unwrap()
}

#[test]
fn criterion_08_tameness_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let d = 4i64;
    for i in 0..50 {
        let start = std::time::Instant::now();
        let (m, t) = random_unimodular(&mut rng);
        let h = if i % 2 == 0 {
            // fibration retraction on a transformed rectangle
            let a = rng.gen_range(1i64..=3);
            let base = LatticePolytope::hull(&[pt(&[0, 0]), pt(&[a, 0]), pt(&[0, 1]), pt(&[a, 1])])
                .unwrap();
            let moved: Vec<IVec> = base
                .vertices()
                .iter()
                .map(|v| apply_affine(&m, &t, v))
                .collect();
            let p = LatticePolytope::hull(&moved).unwrap();
            let k = rng.gen_range(0..=a);
            let fib = LatticeFibration::new(
                &p,
                apply_affine(&m, &t, &[k, 0]),
                vec![apply_affine(&m, &[0, 0], &[0, 1])],
                &[apply_affine(&m, &[0, 0], &[1, 0])],
            )
            .unwrap();
            fibration_retraction(&fib, d).unwrap()
        } else {
            // facet retraction on a transformed random polygon
            let base = random_polygon(&mut rng, 3);
            let moved: Vec<IVec> = base
                .vertices()
                .iter()
                .map(|v| apply_affine(&m, &t, v))
                .collect();
            let p = LatticePolytope::hull(&moved).unwrap();
            let facet = rng.gen_range(0..p.facets().len());
            let face = p.facet_face(facet).unwrap();
            face_retraction(&p, &face, d).unwrap()
        };
        let word = random_word(&mut rng, h.polytope(), d);
        let hc = conjugate(&h, &word).unwrap();
        let report = polygon_tameness(&hc, 11).unwrap();
        let cert = report.certificate.unwrap_or_else(|| {
            panic!("instance {} not recovered: {:?}", i, report.diagnostics)
        });
        let outcome = verify_certificate(&cert);
        assert!(outcome.ok, "instance {}: {:?}", i, outcome.divergence);
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs() < 10,
            "instance {} exceeded 10 s: {:?}",
            i,
            elapsed
        );
    }
    pass(8, "50 conjugated retractions recovered with replaying certificates at D = 4");
}

// -------------------------------------------------------------------------
// 9. Facet correction of the square contraction h(W) = U, h(T) = V: the
//    corrected map has exactly the bottom facet as its monomial kernel
//    complement.

#[test]
fn criterion_09_facet_correction_of_square_contraction() {
    let p = unit_square();
    let mut images = BTreeMap::new();
    for x in p.lattice_points() {
        images.insert(x.clone(), monomial_image(&[x[0], 0]));
    }
    let h = check_homomorphism(&p, images, 3).unwrap();
    assert!(h.kernel_monomials().unwrap().is_none());
    let witness = make_witness(&p, &[pt(&[0, 0]), pt(&[1, 0])]).unwrap();
    let corr = correct_facet_base(&h, &witness, 9).unwrap();
    let h_corr = conjugate(&h, &corr.conjugator).unwrap();
    let kernel_face = h_corr
        .kernel_monomials()
        .unwrap()
        .expect("corrected map has monomial kernel");
    assert_eq!(
        kernel_face.polytope.lattice_points(),
        &[pt(&[0, 0]), pt(&[1, 0])]
    );
    assert!(verify_certificate(&corr.certificate).ok);
    pass(9, "corrected square contraction kills exactly the off-facet monomials");
}

// -------------------------------------------------------------------------
// 10. The short-edge obstruction: pinned example, and consistency with
//     the segment-embedding search.

#[test]
fn criterion_10_short_edge_obstruction() {
    let p = LatticePolytope::hull(&[pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 1])]).unwrap();
    assert!(prop84_obstruction(&p, 2).unwrap());
    // consistency: under the obstruction no segment embedding can carry
    // full Newton polytopes — every edge is shorter than c and every
    // embedded segment spans a line, not the polygon
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checked = 0;
    let mut obstructed = 0;
    while checked < 40 {
        let q = random_polygon(&mut rng, 3);
        for c in 2..=3i64 {
            if prop84_obstruction(&q, c).unwrap() {
                obstructed += 1;
                for i in 0..q.facets().len() {
                    let edge = q.facet_face(i).unwrap();
                    assert!(edge.polytope.segment_lattice_length().unwrap() < c);
                }
                for (s, v) in q.segment_embeddings(c).unwrap() {
                    let pts: Vec<IVec> = (0..=c)
                        .map(|k| vec![s[0] + k * v[0], s[1] + k * v[1]])
                        .collect();
                    let hull = LatticePolytope::hull(&pts).unwrap();
                    assert_eq!(hull.dim(), 1);
                    assert_ne!(hull, q);
                }
            }
        }
        checked += 1;
    }
    assert!(obstructed > 0, "the random family never triggered the obstruction");
    pass(10, "pinned obstruction true; obstructed polygons admit no full-profile embedding");
}
