//! Affine semigroups with a positive grading: polytopal semigroups S_P,
//! difference groups, normality and homogeneity checks, Veronese
//! subsemigroups, and degree-bounded toric relations.

use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::linalg::{
    self, add_vec, coords_in_basis, dot, scale_vec, sub_vec, IMat, IVec,
};
use crate::Rat;
use itertools::Itertools;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Finitely generated subsemigroup of Z^d, graded by a rational linear
/// form grading/grading_denom that is a positive integer on every
/// generator. Polytopal semigroups have all generators in degree 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSemigroup {
    ambient_dim: usize,
    generators: Vec<IVec>,
    grading: IVec,
    grading_denom: i64,
}

/// Subgroup of Z^d in canonical Hermite normal form row basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSubgroup {
    pub basis: IMat,
}

impl LatticeSubgroup {
    pub fn from_vectors(vectors: &[IVec]) -> Self {
        LatticeSubgroup {
            basis: linalg::hnf(vectors),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        coords_in_basis(&self.basis, x).is_some()
    }

    pub fn coords(&self, x: &[i64]) -> Option<IVec> {
        coords_in_basis(&self.basis, x)
    }
}

/// Degree-bounded binomial relation between generator multisets: the two
/// sides are sorted index lists of equal cardinality with equal vector
/// sums.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BinomialRelation {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityReport {
    pub normal: bool,
    /// On failure: an element x of gp(S) in the cone with c*x in S but
    /// x not in S.
    pub witness: Option<(IVec, i64)>,
    pub degree_bound: i64,
}

impl AffineSemigroup {
    pub fn new(ambient_dim: usize, generators: Vec<IVec>, grading: IVec) -> Result<Self> {
        Self::with_denominator(ambient_dim, generators, grading, 1)
    }

    pub fn with_denominator(
        ambient_dim: usize,
        generators: Vec<IVec>,
        grading: IVec,
        grading_denom: i64,
    ) -> Result<Self> {
        if grading.len() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: grading.len(),
            });
        }
        if grading_denom < 1 {
            return Err(Error::invalid("grading denominator must be positive"));
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::invalid("semigroup needs at least one generator"));
        }
        for g in &gens {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: g.len(),
                });
            }
            let v = dot(&grading, g);
            if v <= 0 || v % grading_denom != 0 {
                return Err(Error::invalid(format!(
                    "generator {:?} has non-positive or fractional degree",
                    g
                )));
            }
        }
        Ok(AffineSemigroup {
            ambient_dim,
            generators: gens,
            grading,
            grading_denom,
        })
    }

    /// S_P: generators (x, 1) for the lattice points x of P, graded by the
    /// last coordinate.
    pub fn polytopal(p: &LatticePolytope) -> Self {
        let n = p.ambient_dim();
        let generators: Vec<IVec> = p
            .lattice_points()
            .iter()
            .map(|x| {
                let mut g = x.clone();
                g.push(1);
                g
            })
            .collect();
        let mut grading = vec![0; n + 1];
        grading[n] = 1;
        AffineSemigroup {
            ambient_dim: n + 1,
            generators,
            grading,
            grading_denom: 1,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[IVec] {
        &self.generators
    }

    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    pub fn grading_denom(&self) -> i64 {
        self.grading_denom
    }

    /// Integer degree of a vector under the grading, if it is integral.
    pub fn degree(&self, x: &[i64]) -> Option<i64> {
        let v = dot(&self.grading, x);
        if v % self.grading_denom == 0 {
            Some(v / self.grading_denom)
        } else {
            None
        }
    }

    pub fn difference_group(&self) -> LatticeSubgroup {
        LatticeSubgroup::from_vectors(&self.generators)
    }

    pub fn rank(&self) -> usize {
        self.difference_group().rank()
    }

    /// All distinct sums of exactly d generators, in canonical order.
    pub fn degree_elements(&self, d: i64) -> Result<Vec<IVec>> {
        if d < 1 {
            return Err(Error::invalid("degree must be >= 1"));
        }
        let mut level: BTreeSet<IVec> = self.generators.iter().cloned().collect();
        for _ in 1..d {
            let mut next = BTreeSet::new();
            for x in &level {
                for g in &self.generators {
                    next.insert(add_vec(x, g));
                }
            }
            level = next;
        }
        Ok(level.into_iter().collect())
    }

    /// All semigroup elements of grading degree exactly d. Coincides with
    /// degree_elements when every generator has degree 1.
    pub fn elements_of_degree(&self, d: i64) -> Result<Vec<IVec>> {
        if d < 0 {
            return Err(Error::invalid("degree must be >= 0"));
        }
        let mut by_degree: Vec<BTreeSet<IVec>> = vec![BTreeSet::new(); (d + 1) as usize];
        by_degree[0].insert(vec![0; self.ambient_dim]);
        for k in 1..=d {
            let mut level = BTreeSet::new();
            for g in &self.generators {
                let gd = self.degree(g).expect("generator degree");
                if gd <= k {
                    for x in &by_degree[(k - gd) as usize] {
                        level.insert(add_vec(x, g));
                    }
                }
            }
            by_degree[k as usize] = level;
        }
        Ok(by_degree[d as usize].iter().cloned().collect())
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.decompose(x).is_some()
    }

    /// Express x as a multiset of generator indices, if possible.
    pub fn decompose(&self, x: &[i64]) -> Option<Vec<usize>> {
        if x.len() != self.ambient_dim {
            return None;
        }
        if x.iter().all(|&c| c == 0) {
            return Some(vec![]);
        }
        let deg = self.degree(x)?;
        if deg <= 0 {
            return None;
        }
        let mut failed: BTreeSet<IVec> = BTreeSet::new();
        self.decompose_inner(x, deg, 0, &mut failed)
    }

    fn decompose_inner(
        &self,
        x: &[i64],
        deg: i64,
        min_gen: usize,
        failed: &mut BTreeSet<IVec>,
    ) -> Option<Vec<usize>> {
        if deg == 0 {
            return if x.iter().all(|&c| c == 0) {
                Some(vec![])
            } else {
                None
            };
        }
        let mut key = x.to_vec();
        key.push(min_gen as i64);
        if failed.contains(&key) {
            return None;
        }
        // generators used in non-decreasing index order so each multiset
        // is tried once
        for (i, g) in self.generators.iter().enumerate().skip(min_gen) {
            let gd = self.degree(g).expect("generator degree");
            if gd > deg {
                continue;
            }
            let rest = sub_vec(x, g);
            if let Some(mut tail) = self.decompose_inner(&rest, deg - gd, i, failed) {
                tail.insert(0, i);
                return Some(tail);
            }
        }
        failed.insert(key);
        None
    }

    /// Sum of the generators of a multiset of indices.
    pub fn multiset_sum(&self, indices: &[usize]) -> IVec {
        indices.iter().fold(vec![0; self.ambient_dim], |acc, &i| {
            add_vec(&acc, &self.generators[i])
        })
    }

    /// The nth Veronese subsemigroup: generated by the sums of n
    /// generators, with the grading rescaled so they live in degree 1.
    pub fn veronese(&self, n: i64) -> Result<AffineSemigroup> {
        if n < 1 {
            return Err(Error::invalid("veronese index must be >= 1"));
        }
        let gens = self.degree_elements(n)?;
        AffineSemigroup::with_denominator(
            self.ambient_dim,
            gens,
            self.grading.clone(),
            self.grading_denom * n,
        )
    }

    /// Generators that cannot be written as a sum of two nonzero
    /// semigroup elements.
    pub fn irreducible_generators(&self) -> Vec<IVec> {
        self.generators
            .iter()
            .filter(|g| {
                !self.generators.iter().any(|h| {
                    let rest = sub_vec(g, h);
                    !linalg::is_zero_vec(&rest) && h != *g && self.contains(&rest)
                })
            })
            .cloned()
            .collect()
    }

    /// True when some affine hyperplane avoiding the origin contains all
    /// irreducible generators.
    pub fn is_homogeneous(&self) -> bool {
        let irr = self.irreducible_generators();
        let mat: Vec<Vec<Rat>> = irr
            .iter()
            .map(|g| linalg::to_rat_vec(g))
            .collect();
        let rhs: Vec<Rat> = vec![Rat::one(); irr.len()];
        linalg::solve_q(&mat, &rhs).is_some()
    }

    /// Check whether every element of the normalization of S up to the
    /// degree bound already lies in S. Default bound: rank(S) - 1 (at
    /// least 1); callers may pass an explicit exhaustive bound.
    pub fn normality_check(&self, degree_bound: Option<i64>) -> Result<NormalityReport> {
        let gp = self.difference_group();
        let r = gp.rank();
        let bound = degree_bound.unwrap_or_else(|| ((r as i64) - 1).max(1));
        if bound < 1 {
            return Err(Error::invalid("degree bound must be >= 1"));
        }
        // generator coordinates in the gp basis
        let gen_coords: Vec<IVec> = self
            .generators
            .iter()
            .map(|g| gp.coords(g).expect("generator lies in gp(S)"))
            .collect();
        // degree form in gp coordinates (scaled by grading_denom)
        let w: IVec = gp.basis.iter().map(|b| dot(&self.grading, b)).collect();
        if gen_coords.iter().any(|y| dot(&w, y) <= 0) {
            return Err(Error::invalid("grading not positive on the cone"));
        }
        let facets = cone_facets(&gen_coords, r)?;
        for d in 1..=bound {
            for y in cone_degree_points(&facets, &w, d * self.grading_denom, r)? {
                let x = gp_point(&gp, &y);
                if !self.contains(&x) {
                    let c = (2..=64)
                        .find(|&c| self.contains(&scale_vec(&x, c)))
                        .ok_or_else(|| {
                            Error::BoundExhausted(
                                "no small multiple of the witness lies in S".into(),
                            )
                        })?;
                    return Ok(NormalityReport {
                        normal: false,
                        witness: Some((x, c)),
                        degree_bound: bound,
                    });
                }
            }
        }
        Ok(NormalityReport {
            normal: true,
            witness: None,
            degree_bound: bound,
        })
    }

    /// Inward facet normals of the cone C(S), expressed in the gp(S)
    /// basis coordinates.
    pub fn cone_facet_normals(&self) -> Result<Vec<IVec>> {
        let gp = self.difference_group();
        let gen_coords: Vec<IVec> = self
            .generators
            .iter()
            .map(|g| gp.coords(g).expect("generator lies in gp(S)"))
            .collect();
        cone_facets(&gen_coords, gp.rank())
    }

    /// Irredundant degree-bounded generating set for the binomial
    /// relations between generators. Relations implied by lower degrees
    /// are removed by congruence closure.
    pub fn toric_relations(&self, degree_bound: i64) -> Result<Vec<BinomialRelation>> {
        if degree_bound < 2 {
            return Err(Error::invalid("degree bound must be >= 2"));
        }
        let m = self.generators.len();
        let mut relations: Vec<BinomialRelation> = vec![];
        for d in 2..=degree_bound {
            // congruence closure over degree-d multisets from lower
            // degree relations
            let multisets: Vec<Vec<usize>> = (0..m)
                .combinations_with_replacement(d as usize)
                .collect();
            let index: BTreeMap<Vec<usize>, usize> = multisets
                .iter()
                .enumerate()
                .map(|(i, ms)| (ms.clone(), i))
                .collect();
            let mut uf = UnionFind::new(multisets.len());
            for rel in &relations {
                let e = rel.left.len();
                let pad = d as usize - e;
                for extra in (0..m).combinations_with_replacement(pad) {
                    let mut l = rel.left.clone();
                    l.extend(&extra);
                    l.sort_unstable();
                    let mut r = rel.right.clone();
                    r.extend(&extra);
                    r.sort_unstable();
                    uf.union(index[&l], index[&r]);
                }
            }
            // group by vector sum and harvest new relations
            let mut by_sum: BTreeMap<IVec, Vec<usize>> = BTreeMap::new();
            for (i, ms) in multisets.iter().enumerate() {
                by_sum.entry(self.multiset_sum(ms)).or_default().push(i);
            }
            for group in by_sum.values() {
                let first = group[0];
                for &other in &group[1..] {
                    if uf.find(first) != uf.find(other) {
                        uf.union(first, other);
                        relations.push(BinomialRelation {
                            left: multisets[first].clone(),
                            right: multisets[other].clone(),
                        });
                    }
                }
            }
        }
        relations.sort();
        Ok(relations)
    }
}

fn gp_point(gp: &LatticeSubgroup, y: &[i64]) -> IVec {
    let n = gp.basis.first().map_or(0, |b| b.len());
    let mut x = vec![0; n];
    for (c, b) in y.iter().zip(&gp.basis) {
        x = add_vec(&x, &scale_vec(b, *c));
    }
    x
}

/// Inward facet normals of the cone spanned by the given full-rank set of
/// vectors in Z^r.
fn cone_facets(gen_coords: &[IVec], r: usize) -> Result<Vec<IVec>> {
    if r == 0 {
        return Err(Error::invalid("zero-rank semigroup"));
    }
    if r == 1 {
        let s = gen_coords[0][0].signum();
        return Ok(vec![vec![s]]);
    }
    let mut found: BTreeSet<IVec> = BTreeSet::new();
    for combo in (0..gen_coords.len()).combinations(r - 1) {
        let rows: IMat = combo.iter().map(|&i| gen_coords[i].clone()).collect();
        let normal = generalized_cross(&rows, r);
        if linalg::is_zero_vec(&normal) {
            continue;
        }
        let normal = linalg::primitive(&normal);
        let pos = gen_coords.iter().any(|y| dot(&normal, y) > 0);
        let neg = gen_coords.iter().any(|y| dot(&normal, y) < 0);
        if pos && neg {
            continue;
        }
        if pos {
            found.insert(normal);
        } else if neg {
            found.insert(normal.iter().map(|&x| -x).collect());
        }
    }
    Ok(found.into_iter().collect())
}

fn generalized_cross(rows: &IMat, r: usize) -> IVec {
    (0..r)
        .map(|j| {
            let minor: IMat = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * linalg::det_i(&minor)
        })
        .collect()
}

/// Integer points y with facet-inequalities y >= 0 and w . y = target.
fn cone_degree_points(facets: &[IVec], w: &[i64], target: i64, r: usize) -> Result<Vec<IVec>> {
    // rational vertices of the degree section bound the scan box
    let mut verts: Vec<Vec<Rat>> = vec![];
    for combo in (0..facets.len()).combinations(r - 1) {
        let mut mat: Vec<Vec<Rat>> = combo
            .iter()
            .map(|&i| linalg::to_rat_vec(&facets[i]))
            .collect();
        mat.push(linalg::to_rat_vec(w));
        let mut rhs = vec![Rat::zero(); r - 1];
        rhs.push(crate::rat_int(target));
        if linalg::rank_q(&mat) < r {
            continue;
        }
        if let Some(v) = linalg::solve_q(&mat, &rhs) {
            if facets
                .iter()
                .all(|f| {
                    linalg::to_rat_vec(f)
                        .iter()
                        .zip(&v)
                        .map(|(a, b)| a * b)
                        .fold(Rat::zero(), |s, t| s + t)
                        >= Rat::zero()
                })
            {
                verts.push(v);
            }
        }
    }
    if verts.is_empty() {
        return Ok(vec![]);
    }
    let lo: Vec<i64> = (0..r)
        .map(|j| {
            verts
                .iter()
                .map(|v| v[j].floor().to_integer())
                .min()
                .unwrap()
        })
        .map(|b| i64::try_from(&b).expect("desk-scale bound"))
        .collect();
    let hi: Vec<i64> = (0..r)
        .map(|j| {
            verts
                .iter()
                .map(|v| v[j].ceil().to_integer())
                .max()
                .unwrap()
        })
        .map(|b| i64::try_from(&b).expect("desk-scale bound"))
        .collect();
    let ranges: Vec<Vec<i64>> = lo
        .iter()
        .zip(&hi)
        .map(|(&l, &h)| (l..=h).collect())
        .collect();
    Ok(ranges
        .into_iter()
        .multi_cartesian_product()
        .filter(|y| dot(w, y) == target && facets.iter().all(|f| dot(f, y) >= 0))
        .collect())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rigid_triangle, standard_segment, unit_square};

    fn seg_semigroup() -> AffineSemigroup {
        AffineSemigroup::polytopal(&standard_segment(1))
    }

    #[test]
    fn polytopal_generators() {
        let s = seg_semigroup();
        assert_eq!(s.generators(), &[vec![0, 1], vec![1, 1]]);
        let q = AffineSemigroup::polytopal(&rigid_triangle());
        assert_eq!(q.generators().len(), 4);
    }

    #[test]
    fn difference_groups() {
        assert_eq!(seg_semigroup().rank(), 2);
        let s = AffineSemigroup::new(2, vec![vec![0, 1], vec![1, 1], vec![3, 1]], vec![0, 1])
            .unwrap();
        assert_eq!(s.difference_group().basis, vec![vec![1, 0], vec![0, 1]]);
        let j = standard_segment(7).join(&standard_segment(2)).unwrap();
        assert_eq!(AffineSemigroup::polytopal(&j).rank(), 4);
    }

    #[test]
    fn degree_elements_examples() {
        let s = seg_semigroup();
        assert_eq!(
            s.degree_elements(2).unwrap(),
            vec![vec![0, 2], vec![1, 2], vec![2, 2]]
        );
        let sq = AffineSemigroup::polytopal(&unit_square());
        assert_eq!(sq.degree_elements(2).unwrap().len(), 9);
        let gap = AffineSemigroup::new(2, vec![vec![0, 1], vec![2, 1]], vec![0, 1]).unwrap();
        assert_eq!(
            gap.degree_elements(2).unwrap(),
            vec![vec![0, 2], vec![2, 2], vec![4, 2]]
        );
    }

    #[test]
    fn membership_and_decompose() {
        let s = AffineSemigroup::new(2, vec![vec![0, 1], vec![1, 1], vec![3, 1]], vec![0, 1])
            .unwrap();
        assert!(s.contains(&[4, 2]));
        assert!(!s.contains(&[2, 1]));
        let d = s.decompose(&[4, 2]).unwrap();
        assert_eq!(s.multiset_sum(&d), vec![4, 2]);
    }

    #[test]
    fn normality_examples() {
        let sq = AffineSemigroup::polytopal(&unit_square());
        assert!(sq.normality_check(None).unwrap().normal);
        let tri = AffineSemigroup::polytopal(&rigid_triangle());
        assert!(tri.normality_check(Some(4)).unwrap().normal);
        let s = AffineSemigroup::new(2, vec![vec![0, 1], vec![1, 1], vec![3, 1]], vec![0, 1])
            .unwrap();
        let rep = s.normality_check(None).unwrap();
        assert!(!rep.normal);
        let (w, c) = rep.witness.unwrap();
        assert_eq!(w, vec![2, 1]);
        assert!(s.contains(&scale_vec(&w, c)));
    }

    #[test]
    fn veronese_of_segment() {
        let s = seg_semigroup();
        let v2 = s.veronese(2).unwrap();
        let direct = AffineSemigroup::polytopal(&standard_segment(2));
        // same generators up to the coordinate convention (x, 2) vs (x, 1)
        assert_eq!(v2.generators().len(), direct.generators().len());
        for g in v2.generators() {
            assert_eq!(v2.degree(g), Some(1));
        }
        let v3 = s.veronese(3).unwrap();
        assert_eq!(v3.generators().len(), 4);
    }

    #[test]
    fn homogeneity() {
        assert!(seg_semigroup().is_homogeneous());
        let numeric = AffineSemigroup::new(1, vec![vec![2], vec![3]], vec![1]).unwrap();
        assert!(!numeric.is_homogeneous());
        let axes = AffineSemigroup::new(2, vec![vec![1, 0], vec![0, 1]], vec![1, 1]).unwrap();
        assert!(axes.is_homogeneous());
    }

    #[test]
    fn irreducibles_of_numerical_semigroup() {
        let numeric = AffineSemigroup::new(1, vec![vec![2], vec![3], vec![5]], vec![1]).unwrap();
        assert_eq!(numeric.irreducible_generators(), vec![vec![2], vec![3]]);
    }

    #[test]
    fn square_relations() {
        let sq = AffineSemigroup::polytopal(&unit_square());
        let rels = sq.toric_relations(2).unwrap();
        assert_eq!(rels.len(), 1);
        let r = &rels[0];
        assert_eq!(sq.multiset_sum(&r.left), sq.multiset_sum(&r.right));
        // UT = VW with generators sorted as (0,0),(0,1),(1,0),(1,1)
        assert_eq!(
            sq.multiset_sum(&r.left),
            vec![1, 1, 2]
        );
    }

    #[test]
    fn segment_has_no_relations() {
        let s = seg_semigroup();
        assert!(s.toric_relations(3).unwrap().is_empty());
    }

    #[test]
    fn join_relations_stay_within_sides() {
        let j = standard_segment(7).join(&standard_segment(2)).unwrap();
        let s = AffineSemigroup::polytopal(&j);
        let rels = s.toric_relations(2).unwrap();
        // every relation involves only A-generators or only B-generators
        for r in rels {
            let pure = |side: &Vec<usize>| {
                side.iter().all(|&i| s.generators()[i][2] == 0)
                    || side.iter().all(|&i| s.generators()[i][2] == 1)
            };
            assert!(pure(&r.left) && pure(&r.right));
        }
    }

    #[test]
    fn higher_degree_relations_are_irredundant() {
        let sq = AffineSemigroup::polytopal(&unit_square());
        // degree-3 closure adds nothing new beyond the degree-2 relation
        let rels = sq.toric_relations(3).unwrap();
        assert_eq!(rels.len(), 1);
    }
}
