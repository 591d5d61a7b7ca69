use num_bigint::BigInt;
use num_traits::One;

use super::SparsePolynomial;
use crate::error::{Error, Result};

/// A polynomial in an extra variable `u` with coefficients in the
/// remaining variables; `coeffs[k]` multiplies `u^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    nvars: usize,
    coeffs: Vec<SparsePolynomial>,
}

impl UniPoly {
    pub fn new(nvars: usize, mut coeffs: Vec<SparsePolynomial>) -> Self {
        while coeffs.last().is_some_and(SparsePolynomial::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.nvars() == nvars));
        UniPoly { nvars, coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[SparsePolynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `u`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&SparsePolynomial> {
        self.coeffs.last()
    }

    /// Back to an ordinary polynomial with `u` appended as the last variable.
    pub fn to_polynomial(&self) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero(self.nvars + 1);
        for (k, c) in self.coeffs.iter().enumerate() {
            for (e, v) in c.terms() {
                let mut e2 = e.clone();
                e2.push(k as i64);
                out.add_term(e2, v.clone());
            }
        }
        out
    }
}

/// `u^δ f(u^γ * x)`, returned with the shift `δ` that was used.
///
/// With `delta = None` the smallest shift giving a nonzero constant term in
/// `u` is chosen.
pub fn scaled_substitute(
    f: &SparsePolynomial,
    gamma: &[i64],
    delta: Option<i64>,
) -> Result<(UniPoly, i64)> {
    if gamma.len() != f.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "scaling vector of length {} for {} variables",
            gamma.len(),
            f.nvars()
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let weight = |e: &[i64]| -> i64 { e.iter().zip(gamma).map(|(a, b)| a * b).sum() };
    let min_w = f.terms().map(|(e, _)| weight(e)).min().unwrap_or(0);
    let delta = delta.unwrap_or(-min_w);
    if delta + min_w < 0 {
        return Err(Error::NegativeUExponent(delta + min_w));
    }
    let mut coeffs: Vec<SparsePolynomial> = Vec::new();
    for (e, c) in f.terms() {
        let k = (delta + weight(e)) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, SparsePolynomial::zero(f.nvars()));
        }
        coeffs[k].add_term(e.clone(), c.clone());
    }
    Ok((UniPoly::new(f.nvars(), coeffs), delta))
}

/// Sylvester resultant in `u`, so that `Res(f, g) = lc(f)^{deg g} Π g(α)`
/// over the roots `α` of `f`.
pub fn resultant_u(f: &UniPoly, g: &UniPoly) -> Result<SparsePolynomial> {
    if f.nvars != g.nvars {
        return Err(Error::DimensionMismatch(
            "resultant operands live in different rings".into(),
        ));
    }
    let (p, q) = match (f.degree(), g.degree()) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err(Error::ZeroPolynomial),
    };
    if p == 0 && q == 0 {
        return Err(Error::NoVariable);
    }
    let n = p + q;
    let zero = SparsePolynomial::zero(f.nvars);
    let mut m = vec![vec![zero; n]; n];
    for i in 0..q {
        for (k, c) in f.coeffs.iter().enumerate() {
            m[i][i + p - k] = c.clone();
        }
    }
    for i in 0..p {
        for (k, c) in g.coeffs.iter().enumerate() {
            m[q + i][i + q - k] = c.clone();
        }
    }
    Ok(bareiss_det(m, f.nvars))
}

/// Fraction-free determinant over the polynomial ring.
pub(crate) fn bareiss_det(mut m: Vec<Vec<SparsePolynomial>>, nvars: usize) -> SparsePolynomial {
    let n = m.len();
    if n == 0 {
        return SparsePolynomial::one(nvars);
    }
    let mut negate = false;
    let mut prev = SparsePolynomial::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return SparsePolynomial::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = if prev.is_one() {
                    num
                } else {
                    num.div_exact(&prev).expect("Bareiss quotients are exact")
                };
            }
            m[i][k] = SparsePolynomial::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.scale(&-BigInt::one())
    } else {
        d
    }
}
