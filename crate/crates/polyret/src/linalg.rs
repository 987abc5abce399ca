//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Everything here operates on `Vec<Vec<i64>>` (rows) at desk scale; the
//! Hermite and Smith normal form routines keep entries reduced, so i64 is
//! comfortable for the matrix sizes that occur in this crate (dimension
//! at most 5, entries of modest size).

use crate::error::{Error, Result};
use crate::Rat;
use num_traits::{One, Zero};

pub type IVec = Vec<i64>;
pub type IMat = Vec<IVec>;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Divide a vector by the gcd of its entries (zero vector stays zero).
pub fn primitive(v: &[i64]) -> IVec {
    let g = gcd_slice(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

pub fn is_zero_vec(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn add_vec(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn sub_vec(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn scale_vec(a: &[i64], c: i64) -> IVec {
    a.iter().map(|&x| x * c).collect()
}

/// Matrix-vector product (rows x cols) * (cols).
pub fn mat_vec(m: &[IVec], v: &[i64]) -> IVec {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &[IVec], b: &[IVec]) -> IMat {
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(&x, br)| x * br[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[IVec]) -> IMat {
    if m.is_empty() {
        return vec![];
    }
    let cols = m[0].len();
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Determinant by cofactor expansion; matrices here are at most 5x5.
pub fn det_i(m: &[IVec]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    if n == 2 {
        return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    }
    let mut acc = 0i64;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: IMat = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        acc += s * m[0][j] * det_i(&minor);
    }
    acc
}

/// Row-style Hermite normal form; returns the nonzero rows (a canonical
/// basis of the row lattice).
pub fn hnf(mat: &[IVec]) -> IMat {
    let mut m: IMat = mat.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    if m.is_empty() {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivot = 0usize;
    for col in 0..cols {
        if pivot >= m.len() {
            break;
        }
        // euclidean reduction in this column below the pivot row
        loop {
            let mut best: Option<usize> = None;
            for r in pivot..m.len() {
                if m[r][col] != 0 {
                    match best {
                        None => best = Some(r),
                        Some(b) => {
                            if m[r][col].abs() < m[b][col].abs() {
                                best = Some(r)
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot, b);
            let mut done = true;
            for r in pivot + 1..m.len() {
                if m[r][col] != 0 {
                    let q = m[r][col] / m[pivot][col];
                    for j in 0..cols {
                        m[r][j] -= q * m[pivot][j];
                    }
                    if m[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[pivot][col] != 0 {
            if m[pivot][col] < 0 {
                for j in 0..cols {
                    m[pivot][j] = -m[pivot][j];
                }
            }
            let p = m[pivot][col];
            for r in 0..pivot {
                let q = m[r][col].div_euclid(p);
                if q != 0 {
                    for j in 0..cols {
                        m[r][j] -= q * m[pivot][j];
                    }
                }
            }
            pivot += 1;
        }
    }
    m.retain(|r| !is_zero_vec(r));
    m
}

pub fn rank_i(mat: &[IVec]) -> usize {
    hnf(mat).len()
}

type BigMat = Vec<Vec<num_bigint::BigInt>>;

fn shrink_big(m: BigMat) -> IMat {
    m.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("lattice computation entry exceeds i64"))
                .collect()
        })
        .collect()
}

/// Smith normal form: returns (u, s, v) with s = u * mat * v, u and v
/// unimodular, s diagonal with divisibility down the diagonal.
pub fn snf(mat: &[IVec]) -> (IMat, IMat, IMat) {
    let (u, s, v) = snf_big(mat);
    (shrink_big(u), shrink_big(s), shrink_big(v))
}

/// The elimination runs over BigInt: intermediate entries (and the
/// unreduced transforms u, v) can grow far beyond the input magnitude.
fn snf_big(mat: &[IVec]) -> (BigMat, BigMat, BigMat) {
    use num_bigint::BigInt;
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let big_identity = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect()
    };
    let mut s: Vec<Vec<BigInt>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut u = big_identity(rows);
    let mut v = big_identity(cols);

    let mut start = 0usize;
    'outer_restart: loop {
    let mut t = start;
    while t < rows.min(cols) {
        // find a nonzero pivot in the remaining block
        let mut found = None;
        'outer: for i in t..rows {
            for j in t..cols {
                if !s[i][j].is_zero() {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        s.swap(t, pi);
        u.swap(t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            // clear column t
            let mut clean = true;
            for i in t + 1..rows {
                if !s[i][t].is_zero() {
                    let q = &s[i][t] / &s[t][t];
                    let st = s[t].clone();
                    for j in 0..cols {
                        s[i][j] -= &q * &st[j];
                    }
                    let ut = u[t].clone();
                    for j in 0..rows {
                        u[i][j] -= &q * &ut[j];
                    }
                    if !s[i][t].is_zero() {
                        // remainder smaller than pivot: swap up and retry
                        s.swap(t, i);
                        u.swap(t, i);
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // clear row t
            let mut clean_row = true;
            for j in t + 1..cols {
                if !s[t][j].is_zero() {
                    let q = &s[t][j] / &s[t][t];
                    for i in 0..rows {
                        let d = &q * &s[i][t];
                        s[i][j] -= d;
                    }
                    for i in 0..cols {
                        let d = &q * &v[i][t];
                        v[i][j] -= d;
                    }
                    if !s[t][j].is_zero() {
                        for i in 0..rows {
                            s[i].swap(t, j);
                        }
                        for i in 0..cols {
                            v[i].swap(t, j);
                        }
                        clean_row = false;
                    }
                }
            }
            if clean_row {
                if !clean_col(&s, t) {
                    continue;
                }
                break;
            }
        }
        if num_traits::Signed::is_negative(&s[t][t]) {
            for i in 0..rows {
                s[i][t] = -&s[i][t];
            }
            for i in 0..cols {
                v[i][t] = -&v[i][t];
            }
        }
        t += 1;
    }
    // enforce divisibility d_i | d_j down the diagonal: fold column j
    // into column i and re-diagonalize from position i
    let r = (0..rows.min(cols)).take_while(|&i| !s[i][i].is_zero()).count();
    for i in 0..r {
        for j in i + 1..r {
            if !(&s[j][j] % &s[i][i]).is_zero() {
                for row in s.iter_mut() {
                    let d = row[j].clone();
                    row[i] += d;
                }
                for row in v.iter_mut() {
                    let d = row[j].clone();
                    row[i] += d;
                }
                start = i;
                continue 'outer_restart;
            }
        }
    }
    return (u, s, v);
    }
}

/// Hermite-style row reduction over BigInt; used to shrink the kernel
/// bases coming out of the unreduced Smith transforms.
fn hnf_big(mut m: BigMat) -> BigMat {
    use num_traits::Signed;
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut pivot = 0usize;
    for col in 0..cols {
        if pivot >= m.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in pivot..m.len() {
                if !m[r][col].is_zero()
                    && best.map_or(true, |b| m[r][col].abs() < m[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot, b);
            let mut done = true;
            for r in pivot + 1..m.len() {
                if !m[r][col].is_zero() {
                    let q = &m[r][col] / &m[pivot][col];
                    let prow = m[pivot].clone();
                    for j in 0..cols {
                        m[r][j] -= &q * &prow[j];
                    }
                    if !m[r][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !m[pivot][col].is_zero() {
            if m[pivot][col].is_negative() {
                for j in 0..cols {
                    m[pivot][j] = -&m[pivot][j];
                }
            }
            let p = m[pivot][col].clone();
            for r in 0..pivot {
                let q = num_integer::Integer::div_floor(&m[r][col], &p);
                if !q.is_zero() {
                    let prow = m[pivot].clone();
                    for j in 0..cols {
                        m[r][j] -= &q * &prow[j];
                    }
                }
            }
            pivot += 1;
        }
    }
    m.retain(|r| !r.iter().all(|x| x.is_zero()));
    m
}

fn clean_col(s: &[Vec<num_bigint::BigInt>], t: usize) -> bool {
    s.iter().skip(t + 1).all(|row| row[t].is_zero())
}

/// Basis of the integer (right) kernel of `mat`, i.e. all x with mat*x = 0.
pub fn kernel_i(mat: &[IVec]) -> IMat {
    if mat.is_empty() {
        return vec![];
    }
    let cols = mat[0].len();
    let (_, s, v) = snf_big(mat);
    let r = (0..mat.len().min(cols))
        .take_while(|&i| !s[i][i].is_zero())
        .count();
    // the raw kernel columns of v are unreduced and can be enormous;
    // HNF-reduce them before converting back to machine integers
    let raw: BigMat = (r..cols)
        .map(|j| (0..cols).map(|i| v[i][j].clone()).collect())
        .collect();
    shrink_big(hnf_big(raw))
}

/// Canonical (HNF) basis of the saturation of the row lattice of `mat`:
/// the set of integer vectors in the rational row span.
pub fn saturation(mat: &[IVec]) -> IMat {
    let ker = kernel_i(mat);
    if ker.is_empty() {
        // full rank row space: saturation is all of Z^cols
        let cols = if mat.is_empty() { 0 } else { mat[0].len() };
        return identity(cols);
    }
    hnf(&kernel_i(&ker))
}

/// Canonical (HNF) basis of the intersection of the row lattices of `a`
/// and `b`: solve sum c_i a_i = sum d_j b_j through the kernel of the
/// stacked column matrix.
pub fn lattice_intersection(a: &[IVec], b: &[IVec]) -> IMat {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let n = a[0].len();
    let mut stacked = vec![vec![0i64; a.len() + b.len()]; n];
    for (j, row) in a.iter().enumerate() {
        for i in 0..n {
            stacked[i][j] = row[i];
        }
    }
    for (j, row) in b.iter().enumerate() {
        for i in 0..n {
            stacked[i][a.len() + j] = -row[i];
        }
    }
    let ker = kernel_i(&stacked);
    let vecs: Vec<IVec> = ker
        .iter()
        .map(|k| {
            let mut v = vec![0i64; n];
            for (j, row) in a.iter().enumerate() {
                for i in 0..n {
                    v[i] += k[j] * row[i];
                }
            }
            v
        })
        .collect();
    hnf(&vecs)
}

/// Solve mat * x = b over the integers.
pub fn solve_int(mat: &[IVec], b: &[i64]) -> Option<IVec> {
    let rows = mat.len();
    if rows == 0 {
        return if b.iter().all(|&x| x == 0) { Some(vec![]) } else { None };
    }
    use num_bigint::BigInt;
    let cols = mat[0].len();
    let (u, s, v) = snf_big(mat);
    let ub: Vec<BigInt> = (0..rows)
        .map(|i| (0..rows).map(|j| &u[i][j] * BigInt::from(b[j])).sum())
        .collect();
    let r = (0..rows.min(cols)).take_while(|&i| !s[i][i].is_zero()).count();
    let mut z = vec![BigInt::from(0); cols];
    for i in 0..r {
        if !(&ub[i] % &s[i][i]).is_zero() {
            return None;
        }
        z[i] = &ub[i] / &s[i][i];
    }
    for x in ub.iter().skip(r) {
        if !x.is_zero() {
            return None;
        }
    }
    let mut x: Vec<BigInt> = (0..cols)
        .map(|i| (0..cols).map(|j| &v[i][j] * &z[j]).sum())
        .collect();
    // the particular solution from the unreduced transforms can be
    // enormous; normalize it against an HNF kernel basis
    let raw: BigMat = (r..cols)
        .map(|j| (0..cols).map(|i| v[i][j].clone()).collect())
        .collect();
    for k in hnf_big(raw) {
        let p = k.iter().position(|e| !e.is_zero()).unwrap();
        let q = num_integer::Integer::div_floor(&x[p], &k[p]);
        if !q.is_zero() {
            for i in 0..cols {
                x[i] -= &q * &k[i];
            }
        }
    }
    Some(
        x.into_iter()
            .map(|e| i64::try_from(e).expect("integer solution entry exceeds i64"))
            .collect(),
    )
}

/// Express `x` in the row basis `basis`, i.e. solve y * basis = x.
pub fn coords_in_basis(basis: &[IVec], x: &[i64]) -> Option<IVec> {
    solve_int(&transpose(basis), x)
}

/// Integer left inverse of a matrix whose columns form a basis of a
/// saturated sublattice: returns C (k x n) with C * B = I_k.
/// `cols` is the list of basis vectors (each of length n).
pub fn lattice_left_inverse(cols: &[IVec]) -> Option<IMat> {
    let k = cols.len();
    if k == 0 {
        return Some(vec![]);
    }
    let n = cols[0].len();
    use num_bigint::BigInt;
    use num_traits::Signed;
    let b: IMat = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let (u, s, v) = snf_big(&b);
    for i in 0..k {
        if s[i][i].abs() != BigInt::from(1) {
            return None; // not saturated
        }
    }
    // C = V * diag(1/d_i) * (first k rows of U); d_i = +-1 here
    let mut top_u: BigMat = u[..k].to_vec();
    for i in 0..k {
        if s[i][i].is_negative() {
            for x in top_u[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let prod: BigMat = (0..k)
        .map(|i| {
            (0..n)
                .map(|j| (0..k).map(|l| &v[i][l] * &top_u[l][j]).sum())
                .collect()
        })
        .collect();
    Some(shrink_big(prod))
}

// ---------------------------------------------------------------------------
// rational linear algebra

pub type QVec = Vec<Rat>;
pub type QMat = Vec<QVec>;

pub fn to_rat_vec(v: &[i64]) -> QVec {
    v.iter().map(|&x| crate::rat_int(x)).collect()
}

pub fn to_rat_mat(m: &[IVec]) -> QMat {
    m.iter().map(|r| to_rat_vec(r)).collect()
}

pub fn rank_q(mat: &[QVec]) -> usize {
    let mut m: QMat = mat.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank >= rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][col].clone();
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &piv;
                for j in col..cols {
                    let t = &m[rank][j] * &f;
                    m[r][j] = &m[r][j] - &t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solve mat * x = b over the rationals (any solution).
pub fn solve_q(mat: &[QVec], b: &[Rat]) -> Option<QVec> {
    let rows = mat.len();
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = mat[0].len();
    // augmented elimination
    let mut m: QMat = mat
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = vec![];
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][col].clone();
        for j in col..=cols {
            m[rank][j] = &m[rank][j] / &piv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=cols {
                    let t = &m[rank][j] * &f;
                    m[r][j] = &m[r][j] - &t;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank >= rows {
            break;
        }
    }
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for &(r, c) in &pivots {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Basis of the left kernel of `mat`: vectors y with sum y_i row_i = 0.
pub fn left_kernel_q(mat: &[QVec]) -> Vec<QVec> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    // eliminate on the transpose: columns of `work` index the y variables
    let mut work: Vec<QVec> = (0..cols)
        .map(|j| (0..rows).map(|i| mat[i][j].clone()).collect())
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; rows];
    let mut rank = 0usize;
    for col in 0..rows {
        let piv = (rank..work.len()).find(|&r| !work[r][col].is_zero());
        let Some(piv) = piv else { continue };
        work.swap(rank, piv);
        let inv = work[rank][col].recip();
        for x in work[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..work.len() {
            if r != rank && !work[r][col].is_zero() {
                let f = work[r][col].clone();
                for c in 0..rows {
                    let sub = &work[rank][c] * &f;
                    work[r][c] -= sub;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    let mut basis = vec![];
    for free in 0..rows {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut y = vec![Rat::zero(); rows];
        y[free] = Rat::one();
        for col in 0..rows {
            if let Some(pr) = pivot_of_col[col] {
                y[col] = -work[pr][free].clone();
            }
        }
        basis.push(y);
    }
    basis
}

pub fn det_q(mat: &[QVec]) -> Rat {
    let n = mat.len();
    let mut m = mat.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            m.swap(col, p);
            det = -det;
        }
        let piv = m[col][col].clone();
        det = &det * &piv;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &piv;
                for j in col..n {
                    let t = &m[col][j] * &f;
                    m[r][j] = &m[r][j] - &t;
                }
            }
        }
    }
    det
}

pub fn inv_q(mat: &[QVec]) -> Result<QMat> {
    let n = mat.len();
    let mut m: QMat = mat
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            for j in 0..n {
                row.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            row
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Err(Error::SingularMatrix);
        };
        m.swap(col, p);
        let piv = m[col][col].clone();
        for j in 0..2 * n {
            m[col][j] = &m[col][j] / &piv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..2 * n {
                    let t = &m[col][j] * &f;
                    m[r][j] = &m[r][j] - &t;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rational matrix with all entries integral, converted back to i64.
pub fn q_to_int(m: &[QVec]) -> Option<IMat> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.is_integer() {
                        let n = x.to_integer();
                        i64::try_from(&n).ok()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}
