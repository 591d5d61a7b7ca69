//! Horn uniformization of rank-2 Gale configurations and the monomial
//! pullback of the resulting plane curve.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::config::GaleConfiguration;
use crate::error::{Error, Result};
use crate::lattice::rational_nullspace;
use crate::matroid;
use crate::poly::SparsePolynomial;

/// Degree at which interpolation gives up.
const MAX_CURVE_DEGREE: usize = 40;
/// Fresh parameters used to verify an interpolated curve.
const VERIFY_SAMPLES: usize = 10;

/// `ζ -> (Ψ_1(ζ), ..., Ψ_m(ζ))` with `Ψ_k(ζ) = Π_i (c_i · ζ)^{c_ik}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornMap {
    c: GaleConfiguration,
}

impl HornMap {
    pub fn new(c: GaleConfiguration) -> Result<Self> {
        if !c.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if let Some(&z) = c.zero_rows().first() {
            return Err(Error::PyramidInput(z));
        }
        Ok(HornMap { c })
    }

    pub fn config(&self) -> &GaleConfiguration {
        &self.c
    }

    pub fn eval(&self, zeta: &[BigRational]) -> Result<Vec<BigRational>> {
        let m = self.c.m();
        if zeta.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "parameter of length {} for rank {}",
                zeta.len(),
                m
            )));
        }
        let mut out = vec![BigRational::one(); m];
        for i in 0..self.c.n() {
            let row = self.c.row(i);
            let form: BigRational = row
                .iter()
                .zip(zeta)
                .map(|(c, z)| BigRational::from(c.clone()) * z)
                .sum();
            if form.is_zero() {
                return Err(Error::OnExceptionalLocus(i));
            }
            for (k, c) in row.iter().enumerate() {
                let e = i32::try_from(c).map_err(|_| overflow())?;
                out[k] *= num_traits::pow::Pow::pow(&form, e);
            }
        }
        Ok(out)
    }
}

pub fn horn_eval(h: &HornMap, zeta: &[BigRational]) -> Result<Vec<BigRational>> {
    h.eval(zeta)
}

fn overflow() -> Error {
    Error::Unsupported("entries exceed the machine integer range".into())
}

fn primes() -> impl Iterator<Item = i64> {
    (2i64..).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

fn point(t: BigRational) -> Vec<BigRational> {
    vec![t, BigRational::one()]
}

/// Implicit equation of the closure of the Horn curve of a rank-2
/// configuration: the lowest total degree `F(z1, z2)` vanishing on the
/// image, found by exact interpolation and verified at fresh parameters.
///
/// Parallel rows are allowed here.
pub fn implicitize_horn_curve(c: &GaleConfiguration) -> Result<SparsePolynomial> {
    if c.m() != 2 || c.rank() != 2 {
        return Err(Error::Precondition(
            "Horn curve implicitization needs a rank-2 configuration".into(),
        ));
    }
    let h = HornMap::new(c.clone())?;
    let mut params = primes().map(|p| BigRational::from_integer(BigInt::from(p)));
    let mut samples: Vec<(BigRational, BigRational)> = Vec::new();
    for degree in 1..=MAX_CURVE_DEGREE {
        let monomials: Vec<(usize, usize)> = (0..=degree)
            .flat_map(|a| (0..=degree - a).map(move |b| (a, b)))
            .collect();
        while samples.len() < monomials.len() + 2 {
            let t = params.next().expect("infinitely many primes");
            match h.eval(&point(t)) {
                Ok(z) => samples.push((z[0].clone(), z[1].clone())),
                Err(Error::OnExceptionalLocus(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        let rows: Vec<Vec<BigInt>> = samples
            .iter()
            .map(|(z1, z2)| interpolation_row(z1, z2, &monomials, degree))
            .collect();
        let kernel = rational_nullspace(&rows, monomials.len());
        match kernel.len() {
            0 => continue,
            1 => {
                let f = SparsePolynomial::from_terms(
                    2,
                    monomials
                        .iter()
                        .zip(&kernel[0])
                        .map(|(&(a, b), v)| (vec![a as i64, b as i64], v.clone())),
                )?
                .normalize()?;
                verify_curve(&h, &f)?;
                return Ok(f);
            }
            k => return Err(Error::KernelDimensionNotOne(k)),
        }
    }
    Err(Error::Unsupported(format!(
        "Horn curve of degree above {MAX_CURVE_DEGREE}"
    )))
}

/// `z1^a z2^b` for every monomial, scaled by `den(z1)^D den(z2)^D`.
fn interpolation_row(
    z1: &BigRational,
    z2: &BigRational,
    monomials: &[(usize, usize)],
    degree: usize,
) -> Vec<BigInt> {
    let powers = |z: &BigRational| -> Vec<BigInt> {
        let (n, d) = (z.numer(), z.denom());
        (0..=degree)
            .map(|a| num_traits::pow(n.clone(), a) * num_traits::pow(d.clone(), degree - a))
            .collect()
    };
    let p1 = powers(z1);
    let p2 = powers(z2);
    monomials.iter().map(|&(a, b)| &p1[a] * &p2[b]).collect()
}

fn verify_curve(h: &HornMap, f: &SparsePolynomial) -> Result<()> {
    let mut checked = 0;
    let mut k = 1i64;
    while checked < VERIFY_SAMPLES {
        let t = BigRational::new(BigInt::from(-k), BigInt::from(k + 1));
        k += 1;
        let z = match h.eval(&point(t)) {
            Ok(z) => z,
            Err(Error::OnExceptionalLocus(_)) => continue,
            Err(e) => return Err(e),
        };
        if !f.eval(&z)?.is_zero() {
            return Err(Error::VerificationFailed);
        }
        checked += 1;
    }
    Ok(())
}

/// The strict form: rank 2, homogeneous, irreducible and of index 1.
pub fn horn_implicitize_rank2(c: &GaleConfiguration) -> Result<SparsePolynomial> {
    if c.m() != 2 {
        return Err(Error::Precondition("configuration must have rank 2".into()));
    }
    if !c.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if let Some(&z) = c.zero_rows().first() {
        return Err(Error::PyramidInput(z));
    }
    if let Some((i, j)) = matroid::first_parallel_pair(c) {
        return Err(Error::NotIrreducible(i, j));
    }
    if !c.is_gale_dual() {
        return Err(Error::Precondition(
            "configuration must have index 1".into(),
        ));
    }
    implicitize_horn_curve(c)
}

/// `F(x^{ξ_1}, ..., x^{ξ_m})` normalized, where `ξ_k` is column `k` of `B`.
pub fn pullback(f: &SparsePolynomial, b: &GaleConfiguration) -> Result<SparsePolynomial> {
    if f.nvars() != b.m() {
        return Err(Error::DimensionMismatch(format!(
            "curve in {} variables for a rank-{} configuration",
            f.nvars(),
            b.m()
        )));
    }
    let images = (0..b.m())
        .map(|k| {
            (0..b.n())
                .map(|i| i64::try_from(&b.row(i)[k]).map_err(|_| overflow()))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    f.map_exponents(b.n(), &images).normalize()
}

/// Does `F` vanish on the Horn image of `ζ`?
pub fn vanishes_on_horn_image(
    h: &HornMap,
    f: &SparsePolynomial,
    zeta: &[BigRational],
) -> Result<bool> {
    Ok(f.eval(&h.eval(zeta)?)?.is_zero())
}

/// `T_C(x) = (x^{ξ_1}, ..., x^{ξ_m})`.
pub fn torus_map(b: &GaleConfiguration, x: &[BigRational]) -> Result<Vec<BigRational>> {
    if x.len() != b.n() {
        return Err(Error::DimensionMismatch("one coordinate per row".into()));
    }
    if let Some(i) = x.iter().position(Zero::is_zero) {
        return Err(Error::ZeroCoordinate(i));
    }
    (0..b.m())
        .map(|k| {
            let mut v = BigRational::one();
            for (i, xi) in x.iter().enumerate() {
                let e = i32::try_from(&b.row(i)[k]).map_err(|_| overflow())?;
                v *= num_traits::pow::Pow::pow(xi, e);
            }
            Ok(v)
        })
        .collect()
}
