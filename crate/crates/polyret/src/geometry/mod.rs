//! Exact lattice polytope geometry.
//!
//! A polytope is stored with its vertices in ambient coordinates together
//! with an intrinsic description: a saturated lattice basis of the
//! direction space of its affine hull, and facet inequalities expressed in
//! the intrinsic coordinates. This lets every operation (faces, widths,
//! lattice points) work uniformly for polytopes of any dimension embedded
//! in any ambient space.

mod iso;
mod minkowski;

pub use iso::{affine_lattice_iso, symmetries, AffineLatticeMap};
pub use minkowski::{
    decompositions, edge_cycle, homothety_check, summand_check, summand_verify, Homothety,
};

use crate::error::{Error, Result};
use crate::linalg::{
    self, add_vec, coords_in_basis, dot, gcd_slice, primitive, rank_i, saturation, scale_vec,
    sub_vec, IMat, IVec,
};
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};

/// Facet inequality in intrinsic coordinates: normal . u + offset >= 0,
/// with equality exactly on the facet. Normals are primitive and inward.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: IVec,
    pub offset: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    ambient_dim: usize,
    dim: usize,
    /// Lexicographically smallest vertex; origin of the intrinsic chart.
    base_point: IVec,
    /// Saturated HNF basis (rows) of the direction lattice of aff(P).
    basis: IMat,
    /// Vertices in ambient coordinates, lexicographically sorted.
    vertices: Vec<IVec>,
    /// All lattice points of P, lexicographically sorted.
    lattice_points: Vec<IVec>,
    /// Facets in intrinsic coordinates, sorted.
    facets: Vec<Facet>,
}

/// A face of a polytope together with the set of facets containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub polytope: LatticePolytope,
    /// Indices of all facets of the parent that contain this face.
    pub active: Vec<usize>,
}

impl LatticePolytope {
    /// Convex hull of a nonempty set of lattice points.
    pub fn hull(points: &[IVec]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("hull of empty point set"));
        }
        let n = points[0].len();
        for p in points {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.len(),
                });
            }
        }
        let mut pts: Vec<IVec> = points.to_vec();
        pts.sort();
        pts.dedup();
        // the lexicographic minimum of a finite set is a vertex of its hull
        let base = pts[0].clone();
        let diffs: IMat = pts[1..].iter().map(|p| sub_vec(p, &base)).collect();
        let basis = if diffs.is_empty() {
            vec![]
        } else {
            saturation(&diffs)
        };
        let k = basis.len();
        let ipts: Vec<IVec> = pts
            .iter()
            .map(|p| {
                coords_in_basis(&basis, &sub_vec(p, &base))
                    .ok_or_else(|| Error::structural("point escapes its own affine lattice"))
            })
            .collect::<Result<_>>()?;
        let facets = enumerate_facets(&ipts, k);
        let vertices: Vec<IVec> = pts
            .iter()
            .zip(&ipts)
            .filter(|(_, u)| {
                let active: IMat = facets
                    .iter()
                    .filter(|f| dot(&f.normal, u) + f.offset == 0)
                    .map(|f| f.normal.clone())
                    .collect();
                if k == 0 {
                    true
                } else {
                    rank_i(&active) == k
                }
            })
            .map(|(p, _)| p.clone())
            .collect();
        let lattice_points = scan_lattice_points(&base, &basis, &facets, &ipts);
        Ok(LatticePolytope {
            ambient_dim: n,
            dim: k,
            base_point: base,
            basis,
            vertices,
            lattice_points,
            facets,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IVec] {
        &self.vertices
    }

    pub fn lattice_points(&self) -> &[IVec] {
        &self.lattice_points
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn base_point(&self) -> &[i64] {
        &self.base_point
    }

    pub fn basis(&self) -> &[IVec] {
        &self.basis
    }

    /// Intrinsic chart coordinates of an ambient point, if it lies in the
    /// affine lattice of P.
    pub fn intrinsic(&self, x: &[i64]) -> Option<IVec> {
        coords_in_basis(&self.basis, &sub_vec(x, &self.base_point))
    }

    /// Ambient point of intrinsic coordinates.
    pub fn ambient_point(&self, u: &[i64]) -> IVec {
        let mut p = self.base_point.clone();
        for (c, row) in u.iter().zip(&self.basis) {
            p = add_vec(&p, &scale_vec(row, *c));
        }
        p
    }

    pub fn contains_intrinsic(&self, u: &[i64]) -> bool {
        self.facets
            .iter()
            .all(|f| dot(&f.normal, u) + f.offset >= 0)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        if x.len() != self.ambient_dim {
            return false;
        }
        match self.intrinsic(x) {
            Some(u) => self.contains_intrinsic(&u),
            None => false,
        }
    }

    pub fn is_lattice_point(&self, x: &[i64]) -> bool {
        self.lattice_points.binary_search(&x.to_vec()).is_ok()
    }

    pub fn lattice_point_index(&self, x: &[i64]) -> Option<usize> {
        self.lattice_points.binary_search(&x.to_vec()).ok()
    }

    /// Indices of facets on which the point lies, or None off the affine
    /// lattice.
    pub fn active_facets(&self, x: &[i64]) -> Option<Vec<usize>> {
        let u = self.intrinsic(x)?;
        Some(
            self.facets
                .iter()
                .enumerate()
                .filter(|(_, f)| dot(&f.normal, &u) + f.offset == 0)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    /// Ambient lattice points lying on facet `i`.
    pub fn facet_points(&self, i: usize) -> Vec<IVec> {
        let f = &self.facets[i];
        self.lattice_points
            .iter()
            .filter(|p| {
                let u = self.intrinsic(p).expect("lattice point has a chart");
                dot(&f.normal, &u) + f.offset == 0
            })
            .cloned()
            .collect()
    }

    pub fn facet_face(&self, i: usize) -> Result<Face> {
        if i >= self.facets.len() {
            return Err(Error::NotAFacet);
        }
        let pts = self.facet_points(i);
        let polytope = LatticePolytope::hull(&pts)?;
        let active = self.common_active(&pts);
        Ok(Face { polytope, active })
    }

    fn common_active(&self, pts: &[IVec]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| {
                let f = &self.facets[i];
                pts.iter().all(|p| {
                    let u = self.intrinsic(p).expect("lattice point has a chart");
                    dot(&f.normal, &u) + f.offset == 0
                })
            })
            .collect()
    }

    /// All nonempty faces, including P itself and the vertices, sorted by
    /// dimension then vertex list.
    pub fn faces(&self) -> Result<Vec<Face>> {
        let m = self.facets.len();
        if m > 20 {
            return Err(Error::invalid("too many facets for face enumeration"));
        }
        let mut seen: BTreeMap<Vec<usize>, Face> = BTreeMap::new();
        for mask in 0..(1u32 << m) {
            let sel: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
            let pts: Vec<IVec> = self
                .lattice_points
                .iter()
                .filter(|p| {
                    let u = self.intrinsic(p).expect("lattice point has a chart");
                    sel.iter()
                        .all(|&i| dot(&self.facets[i].normal, &u) + self.facets[i].offset == 0)
                })
                .cloned()
                .collect();
            if pts.is_empty() {
                continue;
            }
            let active = self.common_active(&pts);
            seen.entry(active.clone()).or_insert_with(|| Face {
                polytope: LatticePolytope::hull(&pts).expect("face hull"),
                active,
            });
        }
        let mut faces: Vec<Face> = seen.into_values().collect();
        faces.sort_by(|a, b| {
            (a.polytope.dim, &a.polytope.vertices).cmp(&(b.polytope.dim, &b.polytope.vertices))
        });
        Ok(faces)
    }

    /// The face whose lattice points are exactly `pts`, if one exists.
    pub fn face_of_points(&self, pts: &[IVec]) -> Result<Option<Face>> {
        let mut want: Vec<IVec> = pts.to_vec();
        want.sort();
        want.dedup();
        for face in self.faces()? {
            if face.polytope.lattice_points == want {
                return Ok(Some(face));
            }
        }
        Ok(None)
    }

    pub fn translate(&self, t: &[i64]) -> Result<Self> {
        let vs: Vec<IVec> = self.vertices.iter().map(|v| add_vec(v, t)).collect();
        LatticePolytope::hull(&vs)
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let sums: Vec<IVec> = self
            .vertices
            .iter()
            .cartesian_product(&other.vertices)
            .map(|(a, b)| add_vec(a, b))
            .collect();
        LatticePolytope::hull(&sums)
    }

    pub fn dilate(&self, c: i64) -> Result<Self> {
        if c < 1 {
            return Err(Error::invalid("dilation factor must be >= 1"));
        }
        let vs: Vec<IVec> = self.vertices.iter().map(|v| scale_vec(v, c)).collect();
        LatticePolytope::hull(&vs)
    }

    /// Join of two polytopes in block coordinates: P lands in
    /// (p, 0...0, 0), Q in (0...0, q, 1).
    pub fn join(&self, other: &LatticePolytope) -> Result<Self> {
        let (np, nq) = (self.ambient_dim, other.ambient_dim);
        let mut pts: Vec<IVec> = vec![];
        for v in &self.vertices {
            let mut p = v.clone();
            p.extend(std::iter::repeat(0).take(nq + 1));
            pts.push(p);
        }
        for w in &other.vertices {
            let mut p = vec![0; np];
            p.extend_from_slice(w);
            p.push(1);
            pts.push(p);
        }
        LatticePolytope::hull(&pts)
    }

    /// Embedding of a point of P into the join coordinates, P side.
    pub fn join_left(&self, other: &LatticePolytope, x: &[i64]) -> IVec {
        let mut p = x.to_vec();
        p.extend(std::iter::repeat(0).take(other.ambient_dim + 1));
        p
    }

    /// Embedding of a point of Q into the join coordinates, Q side.
    pub fn join_right(&self, _other: &LatticePolytope, y: &[i64]) -> IVec {
        let mut p = vec![0; self.ambient_dim];
        p.extend_from_slice(y);
        p.push(1);
        p
    }

    /// Lattice width with respect to the line through `direction`: the
    /// range of the primitive integral form vanishing on the direction.
    pub fn lattice_width(&self, direction: &[i64]) -> Result<i64> {
        if self.ambient_dim != 2 {
            return Err(Error::UnsupportedDimension(self.ambient_dim));
        }
        if linalg::is_zero_vec(direction) {
            return Err(Error::invalid("zero direction"));
        }
        if gcd_slice(direction) != 1 {
            return Err(Error::invalid("direction must be primitive"));
        }
        let form = vec![-direction[1], direction[0]];
        let vals: Vec<i64> = self.lattice_points.iter().map(|p| dot(&form, p)).collect();
        Ok(vals.iter().max().unwrap() - vals.iter().min().unwrap())
    }

    /// All embeddings of the segment [0, c] into L_P: pairs (start, step)
    /// with step primitive and start + i*step in L_P for i = 0..=c. Each
    /// unordered embedding is reported once, oriented from the
    /// lexicographically smaller endpoint.
    pub fn segment_embeddings(&self, c: i64) -> Result<Vec<(IVec, IVec)>> {
        if c < 1 {
            return Err(Error::invalid("segment length must be >= 1"));
        }
        let mut out = vec![];
        for s in &self.lattice_points {
            for t in &self.lattice_points {
                if s >= t {
                    continue;
                }
                let d = sub_vec(t, s);
                if d.iter().any(|&x| x % c != 0) {
                    continue;
                }
                let v: IVec = d.iter().map(|&x| x / c).collect();
                if gcd_slice(&v) != 1 {
                    continue;
                }
                let inside = (1..c).all(|i| {
                    let p = add_vec(s, &scale_vec(&v, i));
                    self.is_lattice_point(&p)
                });
                if inside {
                    out.push((s.clone(), v));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// All (apex vertex, base facet index) pairs exhibiting P as a pyramid:
    /// the apex lies on every facet except the base.
    pub fn pyramid_apexes(&self) -> Vec<(IVec, usize)> {
        let mut out = vec![];
        for v in &self.vertices {
            let u = self.intrinsic(v).expect("vertex has a chart");
            let off: Vec<usize> = self
                .facets
                .iter()
                .enumerate()
                .filter(|(_, f)| dot(&f.normal, &u) + f.offset != 0)
                .map(|(i, _)| i)
                .collect();
            if off.len() == 1 {
                out.push((v.clone(), off[0]));
            }
        }
        out.sort();
        out
    }

    /// Lattice length of a segment face (gcd of the endpoint difference);
    /// 0 for a point.
    pub fn segment_lattice_length(&self) -> Result<i64> {
        match self.dim {
            0 => Ok(0),
            1 => Ok(gcd_slice(&sub_vec(&self.vertices[1], &self.vertices[0]))),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }
}

/// Brute-force facet enumeration in intrinsic coordinates: every facet
/// hyperplane of a k-dimensional polytope passes through k affinely
/// independent points of any spanning point set.
fn enumerate_facets(ipts: &[IVec], k: usize) -> Vec<Facet> {
    if k == 0 {
        return vec![];
    }
    let mut found: BTreeSet<(IVec, i64)> = BTreeSet::new();
    for combo in (0..ipts.len()).combinations(k) {
        let p0 = &ipts[combo[0]];
        let rows: IMat = combo[1..]
            .iter()
            .map(|&i| sub_vec(&ipts[i], p0))
            .collect();
        let normal = cross_normal(&rows, k);
        if linalg::is_zero_vec(&normal) {
            continue;
        }
        let normal = primitive(&normal);
        let offset = -dot(&normal, p0);
        let vals: Vec<i64> = ipts.iter().map(|u| dot(&normal, u) + offset).collect();
        let pos = vals.iter().any(|&v| v > 0);
        let neg = vals.iter().any(|&v| v < 0);
        if pos && neg {
            continue;
        }
        if pos {
            found.insert((normal, offset));
        } else if neg {
            found.insert((normal.iter().map(|&x| -x).collect(), -offset));
        }
        // all-zero means the points do not span; skip
    }
    found
        .into_iter()
        .map(|(normal, offset)| Facet { normal, offset })
        .collect()
}

/// Generalized cross product: the vector of signed maximal minors of a
/// (k-1) x k matrix, orthogonal to all its rows. For k = 1 (no rows) this
/// is the 1-vector (1).
fn cross_normal(rows: &IMat, k: usize) -> IVec {
    (0..k)
        .map(|j| {
            let minor: IMat = rows
                .iter()
                .map(|r| {
                    r.iter()
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

fn scan_lattice_points(base: &[i64], basis: &IMat, facets: &[Facet], ipts: &[IVec]) -> Vec<IVec> {
    let k = basis.len();
    if k == 0 {
        return vec![base.to_vec()];
    }
    let lows: IVec = (0..k)
        .map(|j| ipts.iter().map(|u| u[j]).min().unwrap())
        .collect();
    let highs: IVec = (0..k)
        .map(|j| ipts.iter().map(|u| u[j]).max().unwrap())
        .collect();
    let ranges: Vec<Vec<i64>> = lows
        .iter()
        .zip(&highs)
        .map(|(&l, &h)| (l..=h).collect())
        .collect();
    let mut out: Vec<IVec> = ranges
        .into_iter()
        .multi_cartesian_product()
        .filter(|u| facets.iter().all(|f| dot(&f.normal, u) + f.offset >= 0))
        .map(|u| {
            let mut p = base.to_vec();
            for (c, row) in u.iter().zip(basis) {
                p = add_vec(&p, &scale_vec(row, *c));
            }
            p
        })
        .collect();
    out.sort();
    out
}

pub fn pt(coords: &[i64]) -> IVec {
    coords.to_vec()
}

/// The unit segment [0, 1] in Z^1.
pub fn unit_segment() -> LatticePolytope {
    LatticePolytope::hull(&[vec![0], vec![1]]).expect("unit segment")
}

/// [0, c] in Z^1.
pub fn standard_segment(c: i64) -> LatticePolytope {
    LatticePolytope::hull(&[vec![0], vec![c]]).expect("standard segment")
}

/// The unit square [0,1]^2.
pub fn unit_square() -> LatticePolytope {
    LatticePolytope::hull(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).expect("unit square")
}

/// The unit triangle conv{(0,0),(1,0),(0,1)}.
pub fn unit_triangle() -> LatticePolytope {
    LatticePolytope::hull(&[vec![0, 0], vec![1, 0], vec![0, 1]]).expect("unit triangle")
}

/// The triangle conv{(0,-1),(-1,0),(1,1)}; it has exactly one additional
/// lattice point, the origin, and no column vectors.
pub fn rigid_triangle() -> LatticePolytope {
    LatticePolytope::hull(&[vec![0, -1], vec![-1, 0], vec![1, 1]]).expect("rigid triangle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_removes_interior_points() {
        let p = LatticePolytope::hull(&[vec![0, -1], vec![-1, 0], vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(
            p.vertices(),
            &[vec![-1, 0], vec![0, -1], vec![1, 1]]
        );
        assert_eq!(
            p.lattice_points(),
            &[vec![-1, 0], vec![0, -1], vec![0, 0], vec![1, 1]]
        );
    }

    #[test]
    fn hull_collinear_points() {
        let p = LatticePolytope::hull(&[vec![0, 0], vec![2, 0], vec![1, 0]]).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertices(), &[vec![0, 0], vec![2, 0]]);
        assert_eq!(p.lattice_points().len(), 3);
    }

    #[test]
    fn hull_single_point() {
        let p = LatticePolytope::hull(&[vec![3, 4]]).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.lattice_points(), &[vec![3, 4]]);
        assert!(p.facets().is_empty());
    }

    #[test]
    fn segment_lattice_points() {
        let p = standard_segment(2);
        assert_eq!(p.lattice_points(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn square_faces() {
        let sq = unit_square();
        let faces = sq.faces().unwrap();
        let by_dim = |d: usize| faces.iter().filter(|f| f.polytope.dim() == d).count();
        assert_eq!(by_dim(0), 4);
        assert_eq!(by_dim(1), 4);
        assert_eq!(by_dim(2), 1);
    }

    #[test]
    fn segment_faces() {
        let s = unit_segment();
        let faces = s.faces().unwrap();
        assert_eq!(faces.len(), 3);
    }

    #[test]
    fn rigid_triangle_faces() {
        let q = rigid_triangle();
        let faces = q.faces().unwrap();
        assert_eq!(faces.iter().filter(|f| f.polytope.dim() == 1).count(), 3);
        assert_eq!(faces.iter().filter(|f| f.polytope.dim() == 0).count(), 3);
    }

    #[test]
    fn minkowski_segments() {
        let a = standard_segment(1);
        let b = standard_segment(2);
        let s = a.minkowski_sum(&b).unwrap();
        assert_eq!(s.vertices(), &[vec![0], vec![3]]);
    }

    #[test]
    fn minkowski_triangle_plus_segment() {
        let t = unit_triangle();
        let seg = LatticePolytope::hull(&[vec![0, 0], vec![1, 0]]).unwrap();
        let s = t.minkowski_sum(&seg).unwrap();
        assert_eq!(
            s.vertices(),
            &[vec![0, 0], vec![0, 1], vec![1, 1], vec![2, 0]]
        );
    }

    #[test]
    fn dilate_counts() {
        let t = unit_triangle();
        assert_eq!(t.dilate(3).unwrap().lattice_points().len(), 10);
        let d = standard_segment(1).dilate(2).unwrap();
        assert_eq!(d.lattice_points().len(), 3);
    }

    #[test]
    fn dilate_is_iterated_sum() {
        let q = rigid_triangle();
        let d2 = q.dilate(2).unwrap();
        let sum = q.minkowski_sum(&q).unwrap();
        assert_eq!(d2, sum);
    }

    #[test]
    fn join_of_points_is_segment() {
        let a = LatticePolytope::hull(&[vec![0]]).unwrap();
        let b = LatticePolytope::hull(&[vec![0]]).unwrap();
        let j = a.join(&b).unwrap();
        assert_eq!(j.dim(), 1);
        assert_eq!(j.lattice_points().len(), 2);
    }

    #[test]
    fn join_of_segments_is_simplex() {
        let j = unit_segment().join(&unit_segment()).unwrap();
        assert_eq!(j.dim(), 3);
        assert_eq!(j.lattice_points().len(), 4);
    }

    #[test]
    fn join_lattice_points_are_union() {
        let p = standard_segment(7);
        let q = standard_segment(2);
        let j = p.join(&q).unwrap();
        assert_eq!(j.dim(), 3);
        assert_eq!(j.lattice_points().len(), 8 + 3);
        for x in p.lattice_points() {
            assert!(j.is_lattice_point(&p.join_left(&q, x)));
        }
        for y in q.lattice_points() {
            assert!(j.is_lattice_point(&p.join_right(&q, y)));
        }
    }

    #[test]
    fn width_examples() {
        assert_eq!(unit_square().lattice_width(&[1, 0]).unwrap(), 1);
        assert_eq!(rigid_triangle().lattice_width(&[1, 1]).unwrap(), 2);
        let seg = LatticePolytope::hull(&[vec![0, 0], vec![7, 0]]).unwrap();
        assert_eq!(seg.lattice_width(&[0, 1]).unwrap(), 7);
        assert!(standard_segment(7).lattice_width(&[1]).is_err());
        assert!(unit_square().lattice_width(&[2, 0]).is_err());
        assert!(unit_square().lattice_width(&[0, 0]).is_err());
    }

    #[test]
    fn segment_embeddings_examples() {
        assert_eq!(unit_square().segment_embeddings(1).unwrap().len(), 6);
        assert_eq!(rigid_triangle().segment_embeddings(2).unwrap().len(), 0);
        assert_eq!(standard_segment(3).segment_embeddings(3).unwrap().len(), 1);
    }

    #[test]
    fn pyramid_examples() {
        assert_eq!(unit_triangle().pyramid_apexes().len(), 3);
        assert!(unit_square().pyramid_apexes().is_empty());
        let j = standard_segment(7)
            .join(&LatticePolytope::hull(&[vec![0]]).unwrap())
            .unwrap();
        let apexes = j.pyramid_apexes();
        assert!(apexes.iter().any(|(v, _)| v == &vec![0, 0, 1]));
    }

    #[test]
    fn contains_respects_affine_hull() {
        let seg = LatticePolytope::hull(&[vec![0, 0], vec![2, 2]]).unwrap();
        assert!(seg.contains(&[1, 1]));
        assert!(!seg.contains(&[1, 0]));
        assert!(!seg.contains(&[3, 3]));
    }

    #[test]
    fn face_of_points_roundtrip() {
        let sq = unit_square();
        let f = sq
            .face_of_points(&[vec![0, 0], vec![1, 0]])
            .unwrap()
            .expect("bottom edge is a face");
        assert_eq!(f.polytope.dim(), 1);
        assert!(sq
            .face_of_points(&[vec![0, 0], vec![1, 1]])
            .unwrap()
            .is_none());
    }
}
