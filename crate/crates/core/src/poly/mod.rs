//! Sparse multivariate Laurent polynomials with big-integer coefficients.
//!
//! Exponents may be negative while a computation is in flight; normalized
//! polynomials have nonnegative exponents, integer content 1, no monomial
//! factor, and a positive leading coefficient in degree-reverse-lexicographic
//! order.

mod hull;
mod json;
mod resultant;

pub use hull::{in_convex_hull, newton_vertices, project_points};
pub use json::{default_var_names, PolyJson, TermJson};
pub use resultant::{resultant_u, scaled_substitute, UniPoly};

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Exponent = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

/// Graded lexicographic comparison.
pub fn grlex_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Degree reverse lexicographic comparison.
pub fn degrevlex_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Exponent, c: BigInt) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Sums the given terms; like monomials are merged.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent of length {} in a polynomial in {} variables",
                    e.len(),
                    nvars
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor for small literals.
    pub fn from_i64_terms(nvars: usize, terms: &[(i64, &[i64])]) -> Self {
        Self::from_terms(
            nvars,
            terms.iter().map(|(c, e)| (e.to_vec(), BigInt::from(*c))),
        )
        .expect("exponent lengths match")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.terms.values().all(One::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Exponent, c: BigInt) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in descending graded lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex_cmp(b.0, a.0));
        t
    }

    pub fn support(&self) -> BTreeSet<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] != 0)
    }

    /// Componentwise minimum of the exponents (the monomial gcd for
    /// polynomials, the largest monomial factor for Laurent polynomials).
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let mut m = it.next()?.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        Some(m)
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the (Laurent) monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn exact_scalar_div(&self, c: &BigInt) -> Self {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v / c)).collect(),
        }
    }

    /// Coefficient of the degrevlex-largest term.
    pub fn leading_coeff_degrevlex(&self) -> Option<&BigInt> {
        self.terms
            .iter()
            .max_by(|a, b| degrevlex_cmp(a.0, b.0))
            .map(|(_, c)| c)
    }

    /// Removes the monomial factor and the integer content, then fixes the
    /// sign so the degrevlex leading coefficient is positive.
    pub fn normalize(&self) -> Result<Self> {
        let shift: Vec<i64> = self
            .min_exponents()
            .ok_or(Error::ZeroPolynomial)?
            .iter()
            .map(|x| -x)
            .collect();
        let mut p = self.shift(&shift).exact_scalar_div(&self.content());
        if p.leading_coeff_degrevlex().is_some_and(Signed::is_negative) {
            p = -p;
        }
        Ok(p)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalize().is_ok_and(|n| &n == self)
    }

    /// Evaluates at a rational point. Negative powers of a zero coordinate
    /// are rejected.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, (&k, x)) in e.iter().zip(point).enumerate() {
                if k < 0 && x.is_zero() {
                    return Err(Error::ZeroCoordinate(i));
                }
                t *= num_traits::pow::Pow::pow(x, k as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes the integer `v` for variable `i`. The variable count is
    /// unchanged; variable `i` no longer occurs afterwards.
    pub fn specialize(&self, i: usize, v: &BigInt) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[i];
            let coeff = if k >= 0 {
                c * num_traits::pow(v.clone(), k as usize)
            } else {
                if v.is_zero() {
                    return Err(Error::NegativeExponentAtZero(i));
                }
                let d = num_traits::pow(v.clone(), (-k) as usize);
                let (q, r) = c.div_rem(&d);
                if !r.is_zero() {
                    return Err(Error::NonIntegralSpecialization(i));
                }
                q
            };
            let mut e2 = e.clone();
            e2[i] = 0;
            out.add_term(e2, coeff);
        }
        Ok(out)
    }

    /// Removes variables that do not occur.
    pub fn drop_variables(&self, vars: &[usize]) -> Result<Self> {
        if let Some(&v) = vars.iter().find(|&&v| self.involves(v)) {
            return Err(Error::Precondition(format!(
                "variable {} still occurs and cannot be dropped",
                v + 1
            )));
        }
        let keep: Vec<usize> = (0..self.nvars).filter(|i| !vars.contains(i)).collect();
        let mut out = Self::zero(keep.len());
        for (e, c) in &self.terms {
            out.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        Ok(out)
    }

    /// Monomial substitution `x_k -> y^{images[k]}` into `nvars_new`
    /// variables.
    pub fn map_exponents(&self, nvars_new: usize, images: &[Exponent]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut out = Self::zero(nvars_new);
        for (e, c) in &self.terms {
            let mut ne = vec![0i64; nvars_new];
            for (k, &ek) in e.iter().enumerate() {
                if ek != 0 {
                    for (a, b) in ne.iter_mut().zip(&images[k]) {
                        *a += ek * b;
                    }
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Places variable `k` at position `positions[k]` of a larger ring.
    pub fn embed(&self, nvars_new: usize, positions: &[usize]) -> Self {
        let images: Vec<Exponent> = positions
            .iter()
            .map(|&p| {
                let mut e = vec![0; nvars_new];
                e[p] = 1;
                e
            })
            .collect();
        self.map_exponents(nvars_new, &images)
    }

    fn leading_grlex(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    /// Exact quotient in the Laurent polynomial ring, or `None` when `g`
    /// does not divide `self`.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let mf = self.min_exponents()?;
        let mg = g.min_exponents()?;
        let neg = |m: &[i64]| m.iter().map(|x| -x).collect::<Vec<_>>();
        let mut p = self.shift(&neg(&mf));
        let g = g.shift(&neg(&mg));
        let (lg_e, lg_c) = g.leading_grlex().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut q = Self::zero(self.nvars);
        while let Some((pe, pc)) = p.leading_grlex().map(|(e, c)| (e.clone(), c.clone())) {
            let te: Exponent = pe.iter().zip(&lg_e).map(|(a, b)| a - b).collect();
            if te.iter().any(|&x| x < 0) {
                return None;
            }
            let (tc, r) = pc.div_rem(&lg_c);
            if !r.is_zero() {
                return None;
            }
            let t = Self::monomial(te, tc);
            p = &p - &(&t * &g);
            q = &q + &t;
        }
        let back: Vec<i64> = mf.iter().zip(&mg).map(|(a, b)| a - b).collect();
        Some(q.shift(&back))
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], x)),
                }
            }
            if factors.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

/// Up to a nonzero constant and a monomial, does `f` divide `g`?
pub fn divides(f: &SparsePolynomial, g: &SparsePolynomial) -> Result<bool> {
    let f = f.normalize()?;
    if g.is_zero() {
        return Ok(true);
    }
    Ok(g.normalize()?.div_exact(&f).is_some())
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_var_names(self.nvars)))
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = SparsePolynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SparsePolynomial {
            type Output = SparsePolynomial;
            fn $m(self, rhs: SparsePolynomial) -> SparsePolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        -&self
    }
}
