//! Minkowski summands, polygon decompositions, and homothety detection.
//!
//! Polygons are decomposed through their edge cycles: a convex polygon is
//! determined up to translation by the multiset of its primitive edge
//! directions with lattice lengths, and Q is a summand of P exactly when
//! every edge of Q fits inside the parallel edge of P.

use super::LatticePolytope;
use crate::error::{Error, Result};
use crate::linalg::{add_vec, gcd_slice, scale_vec, sub_vec, IVec};
use crate::{rat_int, Rat};
use num_traits::{One, Zero};

/// Counterclockwise edge cycle of a polytope in Z^2: pairs of primitive
/// direction and lattice length, sorted by angle from the positive x-axis.
/// A segment contributes two opposite edges, a point none.
pub fn edge_cycle(p: &LatticePolytope) -> Result<Vec<(IVec, i64)>> {
    if p.ambient_dim() != 2 {
        return Err(Error::UnsupportedDimension(p.ambient_dim()));
    }
    let mut edges: Vec<(IVec, i64)> = match p.dim() {
        0 => vec![],
        1 => {
            let d = sub_vec(&p.vertices()[1], &p.vertices()[0]);
            let l = gcd_slice(&d);
            let prim: IVec = d.iter().map(|&x| x / l).collect();
            let neg: IVec = prim.iter().map(|&x| -x).collect();
            vec![(prim, l), (neg, l)]
        }
        2 => {
            // full-dimensional in Z^2: intrinsic facet normals are ambient
            let mut out = vec![];
            for (i, f) in p.facets().iter().enumerate() {
                let dir = vec![f.normal[1], -f.normal[0]];
                let face = p.facet_face(i)?;
                let l = face.polytope.segment_lattice_length()?;
                out.push((dir, l));
            }
            out
        }
        d => return Err(Error::UnsupportedDimension(d)),
    };
    edges.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    Ok(edges)
}

/// Counterclockwise angular order starting at the positive x-axis.
fn angle_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let half = |v: &[i64]| if v[1] > 0 || (v[1] == 0 && v[0] > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a[0] * b[1] - a[1] * b[0];
        0.cmp(&cross)
    })
}

/// Rebuild the convex polygon with the given edge cycle, translated so its
/// lexicographically smallest vertex is `lexmin`.
fn polygon_from_edges(edges: &[(IVec, i64)], lexmin: &[i64]) -> Result<LatticePolytope> {
    let mut live: Vec<(IVec, i64)> = edges.iter().filter(|(_, l)| *l > 0).cloned().collect();
    live.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    if live.is_empty() {
        return LatticePolytope::hull(&[lexmin.to_vec()]);
    }
    let mut cur = vec![0i64, 0];
    let mut verts = vec![cur.clone()];
    for (d, l) in &live {
        cur = add_vec(&cur, &scale_vec(d, *l));
        verts.push(cur.clone());
    }
    let q = LatticePolytope::hull(&verts)?;
    let shift = sub_vec(lexmin, &q.vertices()[0]);
    q.translate(&shift)
}

/// Decide whether Q is a Minkowski summand of P (both in Z^2) and return
/// the complementary summand R with Q + R = P.
pub fn summand_check(q: &LatticePolytope, p: &LatticePolytope) -> Result<Option<LatticePolytope>> {
    let pe = edge_cycle(p)?;
    let qe = edge_cycle(q)?;
    let mut rest = pe.clone();
    for (d, l) in &qe {
        match rest.iter_mut().find(|(pd, _)| pd == d) {
            Some((_, pl)) if *pl >= *l => *pl -= *l,
            _ => return Ok(None),
        }
    }
    let lexmin = sub_vec(&p.vertices()[0], &q.vertices()[0]);
    let r = polygon_from_edges(&rest, &lexmin)?;
    if summand_verify(q, &r, p)? {
        Ok(Some(r))
    } else {
        Ok(None)
    }
}

/// Verify a supplied decomposition Q + R = P; works in any dimension.
pub fn summand_verify(
    q: &LatticePolytope,
    r: &LatticePolytope,
    p: &LatticePolytope,
) -> Result<bool> {
    Ok(&q.minkowski_sum(r)? == p)
}

/// All Minkowski decompositions P = Q + R of a polytope in Z^2, up to
/// translation normalized so that lexmin(Q) = 0 and lexmin(R) = lexmin(P).
/// Includes the trivial splits (point, P) and (P, point).
pub fn decompositions(p: &LatticePolytope) -> Result<Vec<(LatticePolytope, LatticePolytope)>> {
    let pe = edge_cycle(p)?;
    let mut total: u64 = 1;
    for (_, l) in &pe {
        total = total.saturating_mul(*l as u64 + 1);
        if total > 2_000_000 {
            return Err(Error::BoundExhausted(
                "too many edge subdivisions to enumerate".into(),
            ));
        }
    }
    let mut out = vec![];
    let mut choice: Vec<i64> = vec![0; pe.len()];
    loop {
        let closes: IVec = pe
            .iter()
            .zip(&choice)
            .fold(vec![0i64, 0], |acc, ((d, _), &c)| {
                add_vec(&acc, &scale_vec(d, c))
            });
        if closes == vec![0, 0] {
            let qe: Vec<(IVec, i64)> = pe
                .iter()
                .zip(&choice)
                .map(|((d, _), &c)| (d.clone(), c))
                .collect();
            let re: Vec<(IVec, i64)> = pe
                .iter()
                .zip(&choice)
                .map(|((d, l), &c)| (d.clone(), l - c))
                .collect();
            let q = polygon_from_edges(&qe, &[0, 0])?;
            let r = polygon_from_edges(&re, p.vertices()[0].as_slice())?;
            if summand_verify(&q, &r, p)? {
                out.push((q, r));
            }
        }
        // odometer over 0..=l per edge
        let mut i = 0;
        loop {
            if i == pe.len() {
                out.sort_by(|a, b| (a.0.vertices(), a.1.vertices()).cmp(&(b.0.vertices(), b.1.vertices())));
                return Ok(out);
            }
            if choice[i] < pe[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// A homothety Q = z + factor * (P - z). For factor 1 with a nonzero
/// translation there is no center; such pure translations carry None.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homothety {
    pub factor: Rat,
    pub center: Option<Vec<Rat>>,
}

/// Decide whether Q is a homothetic image of P with non-negative factor.
pub fn homothety_check(p: &LatticePolytope, q: &LatticePolytope) -> Result<Option<Homothety>> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            got: q.ambient_dim(),
        });
    }
    let n = p.ambient_dim();
    if q.dim() == 0 {
        let center: Vec<Rat> = q.vertices()[0].iter().map(|&x| rat_int(x)).collect();
        return Ok(Some(Homothety {
            factor: Rat::zero(),
            center: Some(center),
        }));
    }
    if p.dim() == 0 {
        return Ok(None);
    }
    let extent = |poly: &LatticePolytope, j: usize| -> i64 {
        let vals: Vec<i64> = poly.vertices().iter().map(|v| v[j]).collect();
        vals.iter().max().unwrap() - vals.iter().min().unwrap()
    };
    let mut factor: Option<Rat> = None;
    for j in 0..n {
        let (ep, eq) = (extent(p, j), extent(q, j));
        if ep == 0 {
            if eq != 0 {
                return Ok(None);
            }
            continue;
        }
        let f = crate::rat(eq, ep);
        match &factor {
            None => factor = Some(f),
            Some(g) if *g == f => {}
            _ => return Ok(None),
        }
    }
    let Some(factor) = factor else { return Ok(None) };
    if factor.is_zero() {
        return Ok(None); // q.dim() > 0 handled above
    }
    let min_coord = |poly: &LatticePolytope, j: usize| -> i64 {
        poly.vertices().iter().map(|v| v[j]).min().unwrap()
    };
    let t: Vec<Rat> = (0..n)
        .map(|j| rat_int(min_coord(q, j)) - &factor * rat_int(min_coord(p, j)))
        .collect();
    // exact vertex-set comparison under v -> factor*v + t
    let mut mapped: Vec<Vec<Rat>> = p
        .vertices()
        .iter()
        .map(|v| {
            v.iter()
                .zip(&t)
                .map(|(&x, tj)| &factor * rat_int(x) + tj)
                .collect()
        })
        .collect();
    let mut target: Vec<Vec<Rat>> = q
        .vertices()
        .iter()
        .map(|v| v.iter().map(|&x| rat_int(x)).collect())
        .collect();
    mapped.sort();
    target.sort();
    if mapped != target {
        return Ok(None);
    }
    let center = if factor.is_one() {
        if t.iter().all(|x| x.is_zero()) {
            Some(p.vertices()[0].iter().map(|&x| rat_int(x)).collect())
        } else {
            None
        }
    } else {
        let denom = Rat::one() - &factor;
        Some(t.iter().map(|x| x / &denom).collect())
    };
    Ok(Some(Homothety { factor, center }))
}
