//! Randomized algebraic and geometric laws checked with proptest.

use polyret::geometry::{AffineLatticeMap, LatticePolytope};
use polyret::laurent::{laurent_gcd, LaurentPolynomial};
use polyret::{rat, Rat};
use proptest::prelude::*;

fn poly_strategy(dim: usize, max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec(
        (
            prop::collection::vec(-4i64..=4, dim),
            (-5i64..=5).prop_filter("nonzero", |n| *n != 0),
            1i64..=4,
        ),
        1..=max_terms,
    )
    .prop_map(move |terms| {
        let mut f = LaurentPolynomial::zero(dim);
        for (e, num, den) in terms {
            f.add_term(e, rat(num, den));
        }
        f
    })
    .prop_filter("nonzero polynomial", |f| !f.is_zero())
}

/// Two-term polynomials with small non-negative exponents; products of
/// these are the shapes the retraction pipeline feeds to the gcd.
fn binomial_strategy() -> impl Strategy<Value = LaurentPolynomial> {
    (
        prop::collection::vec(0i64..=2, 2),
        prop::collection::vec(0i64..=2, 2),
        (-3i64..=3).prop_filter("nonzero", |n| *n != 0),
        (-3i64..=3).prop_filter("nonzero", |n| *n != 0),
    )
        .prop_filter("distinct exponents", |(e1, e2, _, _)| e1 != e2)
        .prop_map(|(e1, e2, c1, c2)| {
            LaurentPolynomial::from_terms(2, &[(e1, rat(c1, 1)), (e2, rat(c2, 1))]).unwrap()
        })
}

fn polygon_strategy() -> impl Strategy<Value = LatticePolytope> {
    prop::collection::vec(prop::collection::vec(0i64..=5, 2), 3..=6)
        .prop_map(|pts| LatticePolytope::hull(&pts).unwrap())
        .prop_filter("two-dimensional", |p| p.dim() == 2)
}

fn unimodular_strategy() -> impl Strategy<Value = AffineLatticeMap> {
    ((-2i64..=2), (-2i64..=2), prop::bool::ANY, (-3i64..=3), (-3i64..=3)).prop_map(
        |(a, b, flip, tx, ty)| {
            // product of two shears, an optional swap, and a translation
            let shear1 = vec![vec![1, a], vec![0, 1]];
            let shear2 = vec![vec![1, 0], vec![b, 1]];
            let mut m = AffineLatticeMap {
                matrix: shear1,
                translation: vec![0, 0],
            }
            .compose(&AffineLatticeMap {
                matrix: shear2,
                translation: vec![0, 0],
            });
            if flip {
                m = AffineLatticeMap {
                    matrix: vec![vec![0, 1], vec![1, 0]],
                    translation: vec![0, 0],
                }
                .compose(&m);
            }
            m.translation = vec![tx, ty];
            m
        },
    )
}

proptest! {
    #[test]
    fn newton_polytope_of_product_is_minkowski_sum(
        f in poly_strategy(2, 6),
        g in poly_strategy(2, 6),
    ) {
        let prod = f.mul(&g).unwrap();
        prop_assert!(!prod.is_zero());
        let sum = f
            .newton_polytope()
            .unwrap()
            .minkowski_sum(&g.newton_polytope().unwrap())
            .unwrap();
        prop_assert_eq!(prod.newton_polytope().unwrap(), sum);
    }

    #[test]
    fn dilation_is_additive_under_minkowski_sum(
        p in polygon_strategy(),
        a in 1i64..=3,
        b in 1i64..=3,
    ) {
        let lhs = p.dilate(a + b).unwrap();
        let rhs = p.dilate(a).unwrap().minkowski_sum(&p.dilate(b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_both_arguments_and_contains_common_factor(
        a in binomial_strategy(),
        b in binomial_strategy(),
        c in binomial_strategy(),
    ) {
        let f = a.mul(&c).unwrap();
        let g = b.mul(&c).unwrap();
        let d = laurent_gcd(&f, &g).unwrap();
        prop_assert!(d.divides(&f));
        prop_assert!(d.divides(&g));
        prop_assert!(c.divides(&d));
    }

    #[test]
    fn lattice_width_is_unimodular_invariant(
        p in polygon_strategy(),
        m in unimodular_strategy(),
    ) {
        // the direction transforms by the linear part; width along the
        // image direction of the image polytope is unchanged
        let dir = vec![1i64, 0];
        let w = p.lattice_width(&dir).unwrap();
        let moved: Vec<Vec<i64>> = p.vertices().iter().map(|v| m.apply(v)).collect();
        let q = LatticePolytope::hull(&moved).unwrap();
        let mdir = m.apply_linear(&dir);
        prop_assert_eq!(q.lattice_width(&mdir).unwrap(), w);
    }

    #[test]
    fn segmentonomial_class_is_unit_invariant(
        f in poly_strategy(2, 3),
        shift in prop::collection::vec(-3i64..=3, 2),
        num in (-4i64..=4).prop_filter("nonzero", |n| *n != 0),
    ) {
        // multiplying by a monomial unit c*t^shift preserves the class
        let unit = LaurentPolynomial::monomial(shift, rat(num, 1));
        let g = f.mul(&unit).unwrap();
        prop_assert_eq!(f.is_segmentonomial(), g.is_segmentonomial());
        prop_assert_eq!(
            std::mem::discriminant(&f.classify()),
            std::mem::discriminant(&g.classify())
        );
    }
}

#[test]
fn rational_one_is_canonical() {
    assert_eq!(rat(2, 2), Rat::from(num_bigint::BigInt::from(1)));
}
