//! Affine lattice maps, lattice isomorphism search, and polytope symmetry
//! groups.
//!
//! Isomorphisms are found by mapping an affinely independent vertex frame
//! of P onto ordered vertex tuples of Q, solving the linear part exactly
//! and verifying the lattice-point bijection. Lower-dimensional polytopes
//! are handled by completing their direction lattice basis to a basis of
//! the ambient lattice (via Smith normal form) and extending by the
//! identity on the complement.

use super::LatticePolytope;
use crate::error::{Error, Result};
use crate::linalg::{
    self, add_vec, identity, mat_mul, mat_vec, q_to_int, rank_i, solve_int, sub_vec, IMat, IVec,
};
use itertools::Itertools;
use std::collections::BTreeSet;

/// An integer affine map x -> matrix * x + translation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffineLatticeMap {
    pub matrix: IMat,
    pub translation: IVec,
}

impl AffineLatticeMap {
    pub fn identity(n: usize) -> Self {
        AffineLatticeMap {
            matrix: identity(n),
            translation: vec![0; n],
        }
    }

    pub fn apply(&self, x: &[i64]) -> IVec {
        add_vec(&mat_vec(&self.matrix, x), &self.translation)
    }

    /// Linear part only, for direction vectors.
    pub fn apply_linear(&self, v: &[i64]) -> IVec {
        mat_vec(&self.matrix, v)
    }

    /// self after other: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &AffineLatticeMap) -> AffineLatticeMap {
        AffineLatticeMap {
            matrix: mat_mul(&self.matrix, &other.matrix),
            translation: add_vec(&mat_vec(&self.matrix, &other.translation), &self.translation),
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.matrix.len() == self.matrix.first().map_or(0, |r| r.len())
            && linalg::det_i(&self.matrix).abs() == 1
    }

    pub fn inverse(&self) -> Result<AffineLatticeMap> {
        let inv = q_to_int(&linalg::inv_q(&linalg::to_rat_mat(&self.matrix))?)
            .ok_or(Error::SingularMatrix)?;
        let t: IVec = mat_vec(&inv, &self.translation).iter().map(|&x| -x).collect();
        Ok(AffineLatticeMap {
            matrix: inv,
            translation: t,
        })
    }
}

/// Unimodular n x n matrix whose first k columns span the same sublattice
/// of Z^n as the given k linearly independent saturated columns.
fn complete_basis(cols: &[IVec], n: usize) -> Result<IMat> {
    let k = cols.len();
    if k == 0 {
        return Ok(identity(n));
    }
    let b: IMat = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let (u, s, _) = linalg::snf(&b);
    for i in 0..k {
        if s[i][i].abs() != 1 {
            return Err(Error::structural("basis columns are not saturated"));
        }
    }
    let a = q_to_int(&linalg::inv_q(&linalg::to_rat_mat(&u))?).ok_or(Error::SingularMatrix)?;
    Ok(a)
}

fn columns(a: &IMat, range: std::ops::Range<usize>) -> IMat {
    range.map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// An affinely independent vertex frame v_0, ..., v_k of P (k = dim P).
fn vertex_frame(p: &LatticePolytope) -> Vec<IVec> {
    let mut frame = vec![p.vertices()[0].clone()];
    let mut diffs: IMat = vec![];
    for v in &p.vertices()[1..] {
        let d = sub_vec(v, &frame[0]);
        let mut cand = diffs.clone();
        cand.push(d.clone());
        if rank_i(&cand) > diffs.len() {
            diffs = cand;
            frame.push(v.clone());
            if frame.len() == p.dim() + 1 {
                break;
            }
        }
    }
    frame
}

/// Try to build the unimodular affine map sending the frame of P onto the
/// given ordered vertex tuple of Q, and carrying L_P onto L_Q.
fn map_from_frame(
    p: &LatticePolytope,
    q: &LatticePolytope,
    frame: &[IVec],
    target: &[IVec],
    q_points: &BTreeSet<IVec>,
) -> Option<AffineLatticeMap> {
    let n = p.ambient_dim();
    let k = p.dim();
    let a_p = complete_basis(p.basis(), n).ok()?;
    let a_q = complete_basis(q.basis(), n).ok()?;
    let p_cols = columns(&a_p, 0..k);
    let q_cols = columns(&a_q, 0..k);
    let coords = |cols: &IMat, x: &[i64]| -> Option<IVec> {
        let m: IMat = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        solve_int(&m, x)
    };
    let m_int: IMat = if k == 0 {
        vec![]
    } else {
        // solve M * a_i = b_i columnwise over Q, demand integrality
        let a_mat: Vec<IVec> = frame[1..]
            .iter()
            .map(|v| coords(&p_cols, &sub_vec(v, &frame[0])))
            .collect::<Option<_>>()?;
        let b_mat: Vec<IVec> = target[1..]
            .iter()
            .map(|w| coords(&q_cols, &sub_vec(w, &target[0])))
            .collect::<Option<_>>()?;
        // row j of M satisfies a_i . row_j = b_i[j] for every frame
        // difference a_i, i.e. a system with the a_i as rows
        let at_q = linalg::to_rat_mat(&a_mat);
        let mut rows: IMat = vec![];
        for j in 0..k {
            let rhs: Vec<crate::Rat> = (0..k).map(|i| crate::rat_int(b_mat[i][j])).collect();
            let sol = linalg::solve_q(&at_q, &rhs)?;
            let int: IVec = sol
                .iter()
                .map(|x| {
                    if x.is_integer() {
                        i64::try_from(&x.to_integer()).ok()
                    } else {
                        None
                    }
                })
                .collect::<Option<_>>()?;
            rows.push(int);
        }
        if linalg::det_i(&rows).abs() != 1 {
            return None;
        }
        rows
    };
    // block diagonal extension in the completed bases
    let mut block = identity(n);
    for i in 0..k {
        for j in 0..k {
            block[i][j] = m_int[i][j];
        }
    }
    let a_p_inv = q_to_int(&linalg::inv_q(&linalg::to_rat_mat(&a_p)).ok()?)?;
    let matrix = mat_mul(&mat_mul(&a_q, &block), &a_p_inv);
    let v0 = if k == 0 { &p.vertices()[0] } else { &frame[0] };
    let w0 = if k == 0 { &q.vertices()[0] } else { &target[0] };
    let translation = sub_vec(w0, &mat_vec(&matrix, v0));
    let map = AffineLatticeMap {
        matrix,
        translation,
    };
    if !map.is_unimodular() {
        return None;
    }
    for x in p.lattice_points() {
        if !q_points.contains(&map.apply(x)) {
            return None;
        }
    }
    Some(map)
}

/// A unimodular affine map carrying L_P bijectively onto L_Q, if any.
pub fn affine_lattice_iso(p: &LatticePolytope, q: &LatticePolytope) -> Option<AffineLatticeMap> {
    iso_candidates(p, q, true).into_iter().next()
}

/// All lattice symmetries of P: unimodular affine self-maps of Z^n that
/// permute L_P.
pub fn symmetries(p: &LatticePolytope) -> Vec<AffineLatticeMap> {
    iso_candidates(p, p, false)
}

fn iso_candidates(
    p: &LatticePolytope,
    q: &LatticePolytope,
    first_only: bool,
) -> Vec<AffineLatticeMap> {
    if p.ambient_dim() != q.ambient_dim()
        || p.dim() != q.dim()
        || p.vertices().len() != q.vertices().len()
        || p.lattice_points().len() != q.lattice_points().len()
    {
        return vec![];
    }
    let q_points: BTreeSet<IVec> = q.lattice_points().iter().cloned().collect();
    let frame = vertex_frame(p);
    let mut out = vec![];
    if p.dim() == 0 {
        if let Some(m) = map_from_frame(p, q, &frame, &frame, &q_points) {
            out.push(m);
        }
        return out;
    }
    for target in q.vertices().iter().cloned().permutations(frame.len()) {
        if let Some(m) = map_from_frame(p, q, &frame, &target, &q_points) {
            out.push(m);
            if first_only {
                return out;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rigid_triangle, unit_segment, unit_square, unit_triangle};

    #[test]
    fn identity_iso_on_segment() {
        let s = unit_segment();
        let m = affine_lattice_iso(&s, &s).expect("self iso");
        for x in s.lattice_points() {
            assert!(s.is_lattice_point(&m.apply(x)));
        }
    }

    #[test]
    fn rotated_segment_iso() {
        let h = LatticePolytope::hull(&[vec![0, 0], vec![1, 0]]).unwrap();
        let v = LatticePolytope::hull(&[vec![0, 0], vec![0, 1]]).unwrap();
        let m = affine_lattice_iso(&h, &v).expect("rotation");
        assert!(m.is_unimodular());
        let imgs: Vec<IVec> = h.lattice_points().iter().map(|x| m.apply(x)).collect();
        let mut sorted = imgs.clone();
        sorted.sort();
        assert_eq!(sorted, v.lattice_points());
    }

    #[test]
    fn different_point_counts_no_iso() {
        assert!(affine_lattice_iso(&rigid_triangle(), &unit_triangle()).is_none());
    }

    #[test]
    fn segment_symmetries() {
        assert_eq!(symmetries(&unit_segment()).len(), 2);
    }

    #[test]
    fn square_symmetries_dihedral() {
        let syms = symmetries(&unit_square());
        assert_eq!(syms.len(), 8);
        // closure under composition
        for a in &syms {
            for b in &syms {
                let c = a.compose(b);
                assert!(syms.iter().any(|s| s == &c));
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let syms = symmetries(&unit_square());
        for s in &syms {
            let inv = s.inverse().unwrap();
            assert_eq!(s.compose(&inv), AffineLatticeMap::identity(2));
        }
    }

    #[test]
    fn rigid_triangle_symmetries_form_group() {
        let q = rigid_triangle();
        let syms = symmetries(&q);
        assert!(!syms.is_empty());
        for a in &syms {
            for b in &syms {
                let c = a.compose(b);
                assert!(syms.iter().any(|s| s == &c));
            }
        }
    }
}
