//! Membership in the discriminant locus and the restriction checks for
//! collinear vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::discriminant;
use crate::config::{dual_of, GaleConfiguration};
use crate::error::{Error, Result};
use crate::lattice::{dot, is_zero_vec, kernel_lattice_basis, Span};
use crate::poly::{divides, SparsePolynomial};

/// Does `x` (all coordinates nonzero) lie on the discriminant locus?
pub fn membership(b: &GaleConfiguration, x: &[BigRational]) -> Result<bool> {
    if x.len() != b.n() {
        return Err(Error::DimensionMismatch("one coordinate per row".into()));
    }
    if let Some(i) = x.iter().position(Zero::is_zero) {
        return Err(Error::ZeroCoordinate(i));
    }
    let d = discriminant(b)?;
    if d.is_one() {
        return Ok(false);
    }
    Ok(d.polynomial.eval(x)?.is_zero())
}

fn positive_multiples(u: &[BigInt], v: &[BigInt]) -> bool {
    if is_zero_vec(u) || is_zero_vec(v) {
        return false;
    }
    Span::of(u.len(), [u]).contains(v) && dot(u, v).is_positive()
}

/// For rows `k`, `l` that are positive multiples of each other, compares
/// `D|_{x_k = 0}` with `D|_{x_l = 0}`.
pub fn check_restriction_grouping(b: &GaleConfiguration, k: usize, l: usize) -> Result<bool> {
    if k >= b.n() || l >= b.n() {
        return Err(Error::DimensionMismatch("row index out of range".into()));
    }
    if k == l {
        return Ok(true);
    }
    if !positive_multiples(b.row(k), b.row(l)) {
        return Err(Error::Precondition(format!(
            "rows {} and {} are not positive multiples of each other",
            k + 1,
            l + 1
        )));
    }
    let d = discriminant(b)?.polynomial;
    let zero = BigInt::zero();
    let rk = d.specialize(k, &zero)?;
    let rl = d.specialize(l, &zero)?;
    Ok(match (rk.is_zero(), rl.is_zero()) {
        (true, true) => true,
        (false, false) => rk.normalize()? == rl.normalize()?,
        _ => false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationCheck {
    pub divides: bool,
    /// Rows off the line.
    pub complement: Vec<usize>,
    /// Discriminant of the subconfiguration on the complement, embedded in
    /// all `n` variables.
    pub sub_discriminant: SparsePolynomial,
    /// `D|_{x_j = 0}`, normalized.
    pub restricted: SparsePolynomial,
    pub quotient: Option<SparsePolynomial>,
}

/// For a non-splitting line through `direction` and a row `j` on it pointing
/// along the sum of the rows on the line, tests whether the discriminant of
/// the points off the line divides `D|_{x_j = 0}`.
pub fn check_specialization(
    b: &GaleConfiguration,
    direction: &[BigInt],
    j: usize,
) -> Result<SpecializationCheck> {
    if direction.len() != b.m() {
        return Err(Error::DimensionMismatch("direction length".into()));
    }
    if is_zero_vec(direction) {
        return Err(Error::ZeroVector);
    }
    let line = Span::of(b.m(), [direction]);
    let on_line: Vec<usize> = (0..b.n())
        .filter(|&i| !is_zero_vec(b.row(i)) && line.contains(b.row(i)))
        .collect();
    if on_line.is_empty() {
        return Err(Error::Precondition("no row lies on the line".into()));
    }
    let sigma = b.sigma_of(on_line.iter().copied());
    if is_zero_vec(&sigma) {
        return Err(Error::Precondition("the line is splitting".into()));
    }
    if !on_line.contains(&j) || !dot(b.row(j), &sigma).is_positive() {
        return Err(Error::Precondition(format!(
            "row {} does not point along the sum of the rows on the line",
            j + 1
        )));
    }
    let complement: Vec<usize> = (0..b.n()).filter(|i| !on_line.contains(i)).collect();
    let a = dual_of(b)?.config;
    let sub_a = a.matrix().select_columns(&complement);
    let kernel = kernel_lattice_basis(&sub_a);
    let sub_d = if kernel.is_empty() {
        SparsePolynomial::one(complement.len())
    } else {
        discriminant(&GaleConfiguration::new(kernel.as_columns()))?.polynomial
    };
    let sub_discriminant = sub_d.embed(b.n(), &complement);

    let d = discriminant(b)?.polynomial;
    let restricted = d.specialize(j, &BigInt::zero())?;
    if restricted.is_zero() {
        return Ok(SpecializationCheck {
            divides: true,
            complement,
            sub_discriminant,
            restricted,
            quotient: None,
        });
    }
    let restricted = restricted.normalize()?;
    let divides_flag = divides(&sub_discriminant, &restricted)?;
    let quotient = restricted.div_exact(&sub_discriminant.normalize()?);
    Ok(SpecializationCheck {
        divides: divides_flag,
        complement,
        sub_discriminant,
        restricted,
        quotient,
    })
}
