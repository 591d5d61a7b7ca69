//! Gluing discriminants along a collinear split with a univariate
//! resultant, and the `B ∪ {v, -v}` extension.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::config::GaleConfiguration;
use crate::error::{Error, Result};
use crate::lattice::{integer_solve, is_zero_vec, primitive, smallest_multiplier};
use crate::poly::{resultant_u, scaled_substitute, SparsePolynomial};

/// The integer data of one gluing step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueData {
    /// Generator of the lattice spanned by the collinear part.
    pub w: Vec<i64>,
    /// Coordinates of the collinear rows with respect to `w`.
    pub beta: Vec<i64>,
    pub q: i64,
    /// Full-length scaling vectors (zero outside their part).
    pub gamma: Vec<i64>,
    pub mu: Vec<i64>,
    pub delta: (i64, i64),
}

fn to_i64(v: &BigInt) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Unsupported("integer data exceeds 64 bits".into()))
}

fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(to_i64).collect()
}

/// Integers `c` with `Σ c_j a_j = gcd(a) > 0`.
pub fn bezout(a: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(a.len());
    for x in a {
        let e = g.extended_gcd(x);
        for c in coeffs.iter_mut() {
            *c *= &e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        coeffs.iter_mut().for_each(|c| *c = -c.clone());
    }
    (g, coeffs)
}

/// Scalar `s` with `v = s * dir`, for `v` on the line of `dir`.
fn coordinate_on_line(v: &[BigInt], dir: &[BigInt]) -> Option<BigInt> {
    let k = dir.iter().position(|x| !x.is_zero())?;
    let (s, r) = v[k].div_rem(&dir[k]);
    if !r.is_zero() || v.iter().zip(dir).any(|(a, b)| a != &(&s * b)) {
        return None;
    }
    Some(s)
}

/// Computes the gluing data for `B = C1 ∪ C2` with `C2` collinear.
pub fn glue_data(b: &GaleConfiguration, c1: &[usize], c2: &[usize]) -> Result<GlueData> {
    let n = b.n();
    let mut seen = vec![false; n];
    for &i in c1.iter().chain(c2) {
        if i >= n || seen[i] {
            return Err(Error::InconsistentSplit(
                "parts must partition the rows".into(),
            ));
        }
        seen[i] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InconsistentSplit(
            "parts must partition the rows".into(),
        ));
    }
    let part1 = b.subconfiguration(c1);
    let part2 = b.subconfiguration(c2);
    if !part1.is_homogeneous() || !part2.is_homogeneous() {
        return Err(Error::InconsistentSplit(
            "both parts must sum to zero".into(),
        ));
    }
    if part1.rank() != b.m() {
        return Err(Error::InconsistentSplit(
            "first part must span the ambient space".into(),
        ));
    }
    if part2.rank() != 1 || !part2.zero_rows().is_empty() {
        return Err(Error::InconsistentSplit(
            "second part must consist of nonzero collinear vectors".into(),
        ));
    }
    let dir = primitive(part2.row(0));
    let coords: Vec<BigInt> = (0..part2.n())
        .map(|i| coordinate_on_line(part2.row(i), &dir).expect("collinear rows"))
        .collect();
    let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let w: Vec<BigInt> = dir.iter().map(|x| x * &g).collect();
    let beta: Vec<BigInt> = coords.iter().map(|c| c / &g).collect();

    let rows1 = part1.matrix().clone();
    let q = smallest_multiplier(&rows1, &w)?;
    let qw: Vec<BigInt> = w.iter().map(|x| x * &q).collect();
    let gamma1 = integer_solve(&rows1, &qw)
        .ok_or_else(|| Error::InconsistentSplit("q * w is not an integer combination".into()))?;
    let (one, c) = bezout(&beta);
    debug_assert!(one.is_one());
    let mu2: Vec<BigInt> = c.iter().map(|x| -(x * &q)).collect();

    let mut gamma = vec![0i64; n];
    for (k, &i) in c1.iter().enumerate() {
        gamma[i] = to_i64(&gamma1[k])?;
    }
    let mut mu = vec![0i64; n];
    for (k, &i) in c2.iter().enumerate() {
        mu[i] = to_i64(&mu2[k])?;
    }
    Ok(GlueData {
        w: to_i64_vec(&w)?,
        beta: to_i64_vec(&beta)?,
        q: to_i64(&q)?,
        gamma,
        mu,
        delta: (0, 0),
    })
}

/// `Res_u(u^δ1 D1(u^γ * x'), u^δ2 D2(u^μ * x''))`, normalized.
///
/// `d1` is a polynomial in the variables `c1` (in that order), `d2` in the
/// variables `c2`. The shifts `δ` are chosen minimal.
pub fn glue_resultant(
    d1: &SparsePolynomial,
    d2: &SparsePolynomial,
    b: &GaleConfiguration,
    c1: &[usize],
    c2: &[usize],
) -> Result<(SparsePolynomial, GlueData)> {
    if d1.nvars() != c1.len() || d2.nvars() != c2.len() {
        return Err(Error::DimensionMismatch(
            "one variable per row of each part".into(),
        ));
    }
    let mut data = glue_data(b, c1, c2)?;
    let n = b.n();
    let e1 = d1.embed(n, c1);
    let e2 = d2.embed(n, c2);
    let (f, delta1) = scaled_substitute(&e1, &data.gamma, None)?;
    let (g, delta2) = scaled_substitute(&e2, &data.mu, None)?;
    data.delta = (delta1, delta2);
    let r = if f.degree() == Some(0) && g.degree() == Some(0) {
        // Neither side depends on u: the resultant is an empty determinant.
        SparsePolynomial::one(n)
    } else {
        resultant_u(&f, &g)?
    };
    Ok((r.normalize()?, data))
}

/// `B ∪ {v, -v}`.
pub fn extend_plus_minus(b: &GaleConfiguration, v: &[BigInt]) -> Result<GaleConfiguration> {
    if v.len() != b.m() {
        return Err(Error::DimensionMismatch("vector length".into()));
    }
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
    b.with_rows(&[v.to_vec(), neg])
}

/// Sets the last two variables to `1` and `-1`, drops them and normalizes.
pub fn contract(d: &SparsePolynomial) -> Result<SparsePolynomial> {
    let n = d.nvars();
    if n < 2 {
        return Err(Error::DimensionMismatch(
            "need the two extension variables".into(),
        ));
    }
    let s = d
        .specialize(n - 2, &BigInt::one())?
        .specialize(n - 1, &-BigInt::one())?
        .drop_variables(&[n - 2, n - 1])?;
    if s.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    s.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::to_big;

    #[test]
    fn bezout_coefficients() {
        let a = to_big(&[1, 3, -2, -2]);
        let (g, c) = bezout(&a);
        assert!(g.is_one());
        let s: BigInt = a.iter().zip(&c).map(|(x, y)| x * y).sum();
        assert!(s.is_one());
        let (g, c) = bezout(&to_big(&[-4, 6]));
        assert_eq!(g, BigInt::from(2));
        assert_eq!(&c[0] * -4 + &c[1] * 6, BigInt::from(2));
    }

    #[test]
    fn section3_glue_data() {
        let b = GaleConfiguration::from_i64(&[
            [0, 1],
            [-3, 1],
            [2, -3],
            [-1, 1],
            [1, 0],
            [3, 0],
            [-2, 0],
            [2, 0],
            [-2, 0],
        ]);
        let d = glue_data(&b, &[0, 1, 2, 3, 7], &[4, 5, 6, 8]).unwrap();
        assert_eq!(d.w, vec![1, 0]);
        assert_eq!(d.beta, vec![1, 3, -2, -2]);
        assert_eq!(d.q, 1);
        let combo: Vec<i64> = (0..2)
            .map(|k| {
                (0..9)
                    .map(|i| d.gamma[i] * i64::try_from(&b.row(i)[k]).unwrap())
                    .sum()
            })
            .collect();
        assert_eq!(combo, vec![1, 0]);
        let mu_beta: i64 = [4, 5, 6, 8]
            .iter()
            .zip(&d.beta)
            .map(|(&i, b)| d.mu[i] * b)
            .sum();
        assert_eq!(mu_beta, -1);
    }

    #[test]
    fn split_validation() {
        let b = GaleConfiguration::from_i64(&[[1, 0], [-1, 0], [0, 1], [0, -1]]);
        assert!(matches!(
            glue_data(&b, &[0, 1], &[2, 3]),
            Err(Error::InconsistentSplit(_))
        ));
        assert!(matches!(
            glue_data(&b, &[0, 1, 2], &[2, 3]),
            Err(Error::InconsistentSplit(_))
        ));
    }

    #[test]
    fn extension() {
        let b = GaleConfiguration::from_i64(&[[1], [-2], [1]]);
        let e = extend_plus_minus(&b, &to_big(&[3])).unwrap();
        assert_eq!(e.n(), 5);
        assert_eq!(e.row(4), to_big(&[-3]).as_slice());
        assert_eq!(extend_plus_minus(&b, &to_big(&[0])), Err(Error::ZeroVector));
    }
}
