//! Multivariate Laurent polynomials over the rationals.
//!
//! Terms are kept in a sorted map from exponent vector to nonzero rational
//! coefficient, so serialization and iteration order are canonical. The
//! exact GCD works by shifting both inputs into the polynomial subring,
//! reducing to the primitive polynomial remainder sequence in the last
//! variable with multivariate contents handled recursively, and finally
//! normalizing away the Laurent units.

use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::linalg::IVec;
use crate::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    ambient_dim: usize,
    terms: BTreeMap<IVec, Rat>,
}

/// Classification of a Laurent polynomial by its Newton polytope.
/// A segmentonomial has Newton polytope of dimension at most one;
/// monomials and binomials are the special cases with 1 and 2 terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermClass {
    Zero,
    Monomial,
    Binomial,
    Segmentonomial,
    General,
}

impl LaurentPolynomial {
    pub fn zero(ambient_dim: usize) -> Self {
        LaurentPolynomial {
            ambient_dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient_dim: usize) -> Self {
        Self::monomial(vec![0; ambient_dim], Rat::one())
    }

    pub fn monomial(exp: IVec, coeff: Rat) -> Self {
        let ambient_dim = exp.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPolynomial { ambient_dim, terms }
    }

    pub fn from_terms(ambient_dim: usize, terms: &[(IVec, Rat)]) -> Result<Self> {
        let mut f = Self::zero(ambient_dim);
        for (e, c) in terms {
            if e.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: e.len(),
                });
            }
            f.add_term(e.clone(), c.clone());
        }
        Ok(f)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IVec, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i64]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> Vec<IVec> {
        self.terms.keys().cloned().collect()
    }

    pub fn add_term(&mut self, exp: IVec, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key: Vec<IVec> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(e, _)| e.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c.clone()))
            .collect();
        LaurentPolynomial {
            ambient_dim: self.ambient_dim,
            terms,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.ambient_dim);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| (e.clone(), k * c))
            .collect();
        LaurentPolynomial {
            ambient_dim: self.ambient_dim,
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.ambient_dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: IVec = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiply by the single term coeff * x^exp.
    pub fn mul_term(&self, exp: &[i64], coeff: &Rat) -> Self {
        if coeff.is_zero() {
            return Self::zero(self.ambient_dim);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let shifted: IVec = e.iter().zip(exp).map(|(a, b)| a + b).collect();
                (shifted, c * coeff)
            })
            .collect();
        LaurentPolynomial {
            ambient_dim: self.ambient_dim,
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Self::one(self.ambient_dim);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        LatticePolytope::hull(&self.support())
    }

    pub fn classify(&self) -> TermClass {
        match self.terms.len() {
            0 => TermClass::Zero,
            1 => TermClass::Monomial,
            2 => TermClass::Binomial,
            _ => {
                let np = self.newton_polytope().expect("nonzero");
                if np.dim() <= 1 {
                    TermClass::Segmentonomial
                } else {
                    TermClass::General
                }
            }
        }
    }

    pub fn is_segmentonomial(&self) -> bool {
        matches!(
            self.classify(),
            TermClass::Monomial | TermClass::Binomial | TermClass::Segmentonomial
        )
    }

    /// The leading term (exponent, coefficient) in the map order.
    pub fn leading(&self) -> Option<(&IVec, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Shift exponents so the minimum exponent in each coordinate is 0
    /// and rescale so the leading coefficient is 1. This is the canonical
    /// representative of the polynomial's class modulo Laurent units.
    pub fn unit_normal_form(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mins: IVec = (0..self.ambient_dim)
            .map(|j| self.terms.keys().map(|e| e[j]).min().unwrap())
            .collect();
        let shift: IVec = mins.iter().map(|&m| -m).collect();
        let shifted = self.mul_term(&shift, &Rat::one());
        let lead = shifted.leading().expect("nonzero").1.clone();
        shifted.scale(&lead.recip())
    }

    /// Exact division: Some(q) with self = q * divisor, or None.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.ambient_dim));
        }
        if self.ambient_dim != divisor.ambient_dim {
            return None;
        }
        // long division by the leading term in lex order; when an exact
        // quotient exists this terminates with zero remainder
        let (dl_exp, dl_coeff) = divisor.leading().expect("nonzero divisor");
        let dl_exp = dl_exp.clone();
        let dl_coeff = dl_coeff.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.ambient_dim);
        let budget = self.terms.len() * divisor.terms.len() * 64 + 1024;
        let mut steps = 0usize;
        while !rem.is_zero() {
            steps += 1;
            if steps > budget {
                return None;
            }
            let (r_exp, r_coeff) = rem.leading().expect("nonzero");
            let q_exp: IVec = r_exp.iter().zip(&dl_exp).map(|(a, b)| a - b).collect();
            let q_coeff = r_coeff / &dl_coeff;
            quot.add_term(q_exp.clone(), q_coeff.clone());
            let sub = divisor.mul_term(&q_exp, &q_coeff);
            rem = rem.sub(&sub).expect("same dim");
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// True when every exponent vector is componentwise non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Evaluate at a rational point with all coordinates nonzero (needed
    /// for negative exponents).
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if x.is_zero() && k != 0 {
                    return Err(Error::invalid("evaluation at zero with negative exponent"));
                }
                t *= rat_pow(x, k)?;
            }
            acc += t;
        }
        Ok(acc)
    }
}

pub fn rat_pow(x: &Rat, k: i64) -> Result<Rat> {
    if k == 0 {
        return Ok(Rat::one());
    }
    if x.is_zero() {
        if k > 0 {
            return Ok(Rat::zero());
        }
        return Err(Error::invalid("zero to a negative power"));
    }
    let mut acc = Rat::one();
    for _ in 0..k.abs() {
        acc *= x;
    }
    if k < 0 {
        acc = acc.recip();
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// exact GCD

/// Greatest common divisor in the Laurent ring, in unit normal form:
/// minimal exponent 0 in every coordinate, leading coefficient 1.
pub fn laurent_gcd(f: &LaurentPolynomial, g: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.ambient_dim() != g.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim(),
            got: g.ambient_dim(),
        });
    }
    let a = f.unit_normal_form();
    let b = g.unit_normal_form();
    let d = poly_gcd(&a, &b);
    Ok(d.unit_normal_form())
}

/// GCD of two nonzero genuine polynomials (non-negative exponents),
/// up to units, by recursion on the number of variables.
fn poly_gcd(f: &LaurentPolynomial, g: &LaurentPolynomial) -> LaurentPolynomial {
    let n = f.ambient_dim();
    if f.num_terms() == 1 || g.num_terms() == 1 {
        // monomial gcd: componentwise minimum of supports
        let mins: IVec = (0..n)
            .map(|j| {
                let mf = f.terms.keys().map(|e| e[j]).min().unwrap();
                let mg = g.terms.keys().map(|e| e[j]).min().unwrap();
                mf.min(mg)
            })
            .collect();
        return LaurentPolynomial::monomial(mins, Rat::one());
    }
    // pick the last variable actually appearing in both with positive degree
    let var = (0..n).rev().find(|&j| {
        f.terms.keys().any(|e| e[j] != 0) && g.terms.keys().any(|e| e[j] != 0)
    });
    let Some(var) = var else {
        // no shared variable: gcd is the monomial content overlap, which
        // after unit normalization is 1 for genuine polynomials with a
        // constant term; fall back to monomial content
        let content_f = monomial_content(f);
        let content_g = monomial_content(g);
        let mins: IVec = content_f
            .iter()
            .zip(&content_g)
            .map(|(a, b)| *a.min(b))
            .collect();
        return LaurentPolynomial::monomial(mins, Rat::one());
    };
    let fu = to_univariate(f, var);
    let gu = to_univariate(g, var);
    univariate_gcd(fu, gu, var)
}

fn monomial_content(f: &LaurentPolynomial) -> IVec {
    (0..f.ambient_dim())
        .map(|j| f.terms.keys().map(|e| e[j]).min().unwrap())
        .collect()
}

/// View of a polynomial as univariate in `var` with polynomial
/// coefficients in the remaining variables: degree -> coefficient.
type Univariate = BTreeMap<i64, LaurentPolynomial>;

fn to_univariate(f: &LaurentPolynomial, var: usize) -> Univariate {
    let mut out: Univariate = BTreeMap::new();
    for (e, c) in &f.terms {
        let d = e[var];
        let mut rest = e.clone();
        rest[var] = 0;
        out.entry(d)
            .or_insert_with(|| LaurentPolynomial::zero(f.ambient_dim))
            .add_term(rest, c.clone());
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn uni_degree(u: &Univariate) -> i64 {
    u.keys().next_back().copied().unwrap_or(-1)
}

fn uni_is_zero(u: &Univariate) -> bool {
    u.is_empty()
}

fn uni_scale_poly(u: &Univariate, c: &LaurentPolynomial) -> Univariate {
    u.iter()
        .map(|(d, k)| (*d, k.mul(c).expect("same dim")))
        .collect()
}

fn uni_shift(u: &Univariate, s: i64) -> Univariate {
    u.iter().map(|(d, k)| (d + s, k.clone())).collect()
}

fn uni_sub(a: &Univariate, b: &Univariate, dim: usize) -> Univariate {
    let mut out = a.clone();
    for (d, k) in b {
        let entry = out.entry(*d).or_insert_with(|| LaurentPolynomial::zero(dim));
        *entry = entry.sub(k).expect("same dim");
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Content of a univariate-over-polynomials: gcd of the coefficients.
fn uni_content(u: &Univariate) -> LaurentPolynomial {
    let mut it = u.values();
    let first = it.next().expect("nonzero").clone();
    it.fold(first, |acc, c| poly_gcd(&acc, c))
}

fn uni_divide_content(u: &Univariate, content: &LaurentPolynomial) -> Univariate {
    u.iter()
        .map(|(d, k)| (*d, k.div_exact(content).expect("content divides")))
        .collect()
}

/// Pseudo-remainder of a by b in the main variable. When the leading
/// coefficient of b is a monomial its inverse exists in the Laurent
/// ring, so plain Euclidean steps are used instead of multiplying
/// through — multiplying would square coefficient sizes per step.
fn uni_pseudo_rem(a: &Univariate, b: &Univariate, dim: usize) -> Univariate {
    let db = uni_degree(b);
    let lb = b.get(&db).expect("nonzero leading").clone();
    let lb_inv = if lb.num_terms() == 1 {
        let (e, c) = lb.terms().next().expect("single term");
        let neg: IVec = e.iter().map(|&x| -x).collect();
        Some(LaurentPolynomial::monomial(neg, c.recip()))
    } else {
        None
    };
    let mut r = a.clone();
    while !uni_is_zero(&r) && uni_degree(&r) >= db {
        let dr = uni_degree(&r);
        let lr = r.get(&dr).expect("leading").clone();
        match &lb_inv {
            Some(inv) => {
                // r := r - (lr / lb) * x^{dr-db} * b
                let q = lr.mul(inv).expect("same dim");
                let sub = uni_shift(&uni_scale_poly(b, &q), dr - db);
                r = uni_sub(&r, &sub, dim);
            }
            None => {
                // r := lb * r - lr * x^{dr-db} * b
                let scaled_r = uni_scale_poly(&r, &lb);
                let sub = uni_shift(&uni_scale_poly(b, &lr), dr - db);
                r = uni_sub(&scaled_r, &sub, dim);
            }
        }
    }
    r
}

/// Primitive PRS GCD of two univariate polynomials with multivariate
/// polynomial coefficients; the main variable degrees are folded back
/// into full exponent vectors in the result.
fn univariate_gcd(a: Univariate, b: Univariate, var: usize) -> LaurentPolynomial {
    let dim = a
        .values()
        .next()
        .or_else(|| b.values().next())
        .map(|c| c.ambient_dim())
        .expect("nonzero input");
    let ca = uni_content(&a);
    let cb = uni_content(&b);
    let content = poly_gcd(&ca, &cb);
    let mut f = uni_divide_content(&a, &ca);
    let mut g = uni_divide_content(&b, &cb);
    if uni_degree(&f) < uni_degree(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if uni_is_zero(&g) {
            break;
        }
        let r = uni_pseudo_rem(&f, &g, dim);
        f = g;
        g = if uni_is_zero(&r) {
            r
        } else {
            let cr = uni_content(&r);
            uni_divide_content(&r, &cr)
        };
    }
    // reattach the content and fold the main variable degrees back into
    // the exponent vectors
    let mut out = LaurentPolynomial::zero(dim);
    for (d, k) in &f {
        let scaled = k.mul(&content).expect("same dim");
        for (e, coeff) in &scaled.terms {
            let mut exp = e.clone();
            exp[var] += d;
            out.add_term(exp, coeff.clone());
        }
    }
    out
}
