//! Sparse discriminants: the codimension-one formula, rank-2 Horn
//! implicitization, resultant gluing along collinear classes, and the
//! checks built on top of them.

mod checks;
mod glue;
mod horn;

pub use checks::{
    check_restriction_grouping, check_specialization, membership, SpecializationCheck,
};
pub use glue::{bezout, contract, extend_plus_minus, glue_data, glue_resultant, GlueData};
pub use horn::{
    horn_eval, horn_implicitize_rank2, implicitize_horn_curve, pullback, torus_map,
    vanishes_on_horn_image, HornMap,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::config::{GaleConfiguration, PointConfiguration};
use crate::defect::{self, Method};
use crate::error::{Error, Result};
use crate::lattice::{vec_gcd, IntMatrix};
use crate::matroid;
use crate::poly::SparsePolynomial;

/// Discriminant of a codimension-one configuration with Gale dual `b`:
/// `Π_{b_j<0} |b_j|^{|b_j|} Π_{b_i>0} x_i^{b_i} - (-1)^p Π_{b_i>0} b_i^{b_i} Π_{b_j<0} x_j^{|b_j|}`
/// with `p = Σ_{b_i>0} b_i`, normalized.
pub fn discriminant_codim1(b: &[BigInt]) -> Result<SparsePolynomial> {
    let sum: BigInt = b.iter().sum();
    if !sum.is_zero() {
        return Err(Error::NotHomogeneous);
    }
    if let Some(i) = b.iter().position(Zero::is_zero) {
        return Err(Error::PyramidInput(i));
    }
    let g = vec_gcd(b);
    if !g.is_one() {
        return Err(Error::NonPrimitive(g.to_string()));
    }
    let n = b.len();
    let mut pos_exp = vec![0i64; n];
    let mut neg_exp = vec![0i64; n];
    let mut pos_coeff = BigInt::one();
    let mut neg_coeff = BigInt::one();
    let mut p = BigInt::zero();
    for (i, v) in b.iter().enumerate() {
        let e = i64::try_from(v.abs())
            .map_err(|_| Error::Unsupported("exponent exceeds 64 bits".into()))?;
        let pw = num_traits::pow(v.abs(), e as usize);
        if v.is_positive() {
            pos_exp[i] = e;
            pos_coeff *= pw;
            p += v;
        } else {
            neg_exp[i] = e;
            neg_coeff *= pw;
        }
    }
    let sign = if p.is_odd() {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let mut f = SparsePolynomial::monomial(pos_exp, neg_coeff);
    f.add_term(neg_exp, sign * pos_coeff);
    f.normalize()
}

/// How a discriminant was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "step")]
pub enum Provenance {
    /// A zero row: the dual configuration is a pyramid.
    Pyramid {
        zero_row: Option<usize>,
    },
    DualDefect {
        method: Method,
    },
    CodimOne {
        b: Vec<i64>,
    },
    /// Rank-2 Horn curve, implicitized and pulled back.
    HornCurve {
        curve: String,
    },
    /// The input had index `index`; its saturation was used.
    Saturated {
        index: String,
        inner: Box<Provenance>,
    },
    /// Glued along a collinear class (0-based rows).
    Glued {
        class: Vec<usize>,
        splitting: bool,
        data: GlueData,
        first: Box<Provenance>,
        second: Box<Provenance>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantResult {
    /// Normalized; the constant 1 exactly in the pyramid and dual defect
    /// cases.
    pub polynomial: SparsePolynomial,
    pub provenance: Provenance,
}

impl DiscriminantResult {
    pub fn is_one(&self) -> bool {
        self.polynomial.is_one()
    }
}

impl Serialize for SparsePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json(&crate::poly::default_var_names(self.nvars()))
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = crate::poly::PolyJson::deserialize(d)?;
        SparsePolynomial::from_json(&j).map_err(serde::de::Error::custom)
    }
}

fn column_i64(b: &GaleConfiguration) -> Result<Vec<i64>> {
    (0..b.n())
        .map(|i| {
            i64::try_from(&b.row(i)[0])
                .map_err(|_| Error::Unsupported("entries exceed 64 bits".into()))
        })
        .collect()
}

/// Discriminant of a homogeneous point configuration.
pub fn discriminant_of_points(a: &PointConfiguration) -> Result<DiscriminantResult> {
    if !a.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    discriminant(&a.gale_dual())
}

/// Discriminant of the configuration dual to `b`, in the variables
/// `x_1, ..., x_n` attached to the rows of `b`.
///
/// Pyramids and dual defect configurations give 1; codimension one uses the
/// closed formula; irreducible rank-2 configurations are implicitized; all
/// others are split along their largest collinear class and glued.
pub fn discriminant(b: &GaleConfiguration) -> Result<DiscriminantResult> {
    if !b.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if b.rank() != b.m() {
        return Err(Error::RankDeficient {
            expected: b.m(),
            found: b.rank(),
        });
    }
    let n = b.n();
    let one = |provenance| DiscriminantResult {
        polynomial: SparsePolynomial::one(n),
        provenance,
    };
    if b.m() == 0 {
        return Ok(one(Provenance::Pyramid { zero_row: None }));
    }
    if let Some(&z) = b.zero_rows().first() {
        return Ok(one(Provenance::Pyramid { zero_row: Some(z) }));
    }
    if !b.is_gale_dual() {
        let index = b.index().map(ToString::to_string).unwrap_or_default();
        let inner = discriminant(&b.saturate())?;
        return Ok(DiscriminantResult {
            polynomial: inner.polynomial,
            provenance: Provenance::Saturated {
                index,
                inner: Box::new(inner.provenance),
            },
        });
    }
    let report = defect::is_dual_defect(b)?;
    if report.defect {
        return Ok(one(Provenance::DualDefect {
            method: report.method,
        }));
    }
    if b.m() == 1 {
        let col = b.matrix().column(0);
        return Ok(DiscriminantResult {
            polynomial: discriminant_codim1(&col)?,
            provenance: Provenance::CodimOne { b: column_i64(b)? },
        });
    }
    let classes = matroid::collinear_classes(b).classes;
    let largest = classes
        .iter()
        .fold(None::<&Vec<usize>>, |best, c| match best {
            Some(bc) if bc.len() >= c.len() => Some(bc),
            _ => Some(c),
        })
        .expect("nonempty configuration");
    if largest.len() == 1 {
        if b.m() == 2 {
            let curve = implicitize_horn_curve(b)?;
            return Ok(DiscriminantResult {
                polynomial: pullback(&curve, b)?,
                provenance: Provenance::HornCurve {
                    curve: curve.display_with(&["z1".into(), "z2".into()]),
                },
            });
        }
        return Err(Error::Unsupported(format!(
            "irreducible configuration of rank {}",
            b.m()
        )));
    }
    glue_along_class(b, largest)
}

fn glue_along_class(b: &GaleConfiguration, class: &[usize]) -> Result<DiscriminantResult> {
    let n = b.n();
    let sigma = b.sigma_of(class.iter().copied());
    let splitting = sigma.iter().all(Zero::is_zero);
    let rest: Vec<usize> = (0..n).filter(|i| !class.contains(i)).collect();
    let (full, c1, c2) = if splitting {
        (b.clone(), rest, class.to_vec())
    } else {
        let full = extend_plus_minus(b, &sigma)?;
        let mut c1 = rest;
        c1.push(n);
        let mut c2 = class.to_vec();
        c2.push(n + 1);
        (full, c1, c2)
    };
    let data = glue_data(&full, &c1, &c2)?;
    let first = discriminant(&full.subconfiguration(&c1).saturate())?;
    let beta: Vec<BigInt> = data.beta.iter().map(|&x| BigInt::from(x)).collect();
    let second_poly = discriminant_codim1(&beta)?;
    let (glued, data) = glue_resultant(&first.polynomial, &second_poly, &full, &c1, &c2)?;
    let polynomial = if splitting { glued } else { contract(&glued)? };
    Ok(DiscriminantResult {
        polynomial,
        provenance: Provenance::Glued {
            class: class.to_vec(),
            splitting,
            data,
            first: Box::new(first.provenance),
            second: Box::new(Provenance::CodimOne { b: beta_i64(&beta) }),
        },
    })
}

fn beta_i64(b: &[BigInt]) -> Vec<i64> {
    b.iter().map(|x| i64::try_from(x).unwrap_or(0)).collect()
}

/// Exposed for the CLI: Gale input given as an integer matrix.
pub fn discriminant_of_matrix(b: IntMatrix) -> Result<DiscriminantResult> {
    discriminant(&GaleConfiguration::new(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::to_big;

    fn p(n: usize, t: &[(i64, &[i64])]) -> SparsePolynomial {
        SparsePolynomial::from_i64_terms(n, t)
    }

    #[test]
    fn codim_one_examples() {
        assert_eq!(
            discriminant_codim1(&to_big(&[1, -2, 1])).unwrap(),
            p(3, &[(1, &[0, 2, 0]), (-4, &[1, 0, 1])])
        );
        assert_eq!(
            discriminant_codim1(&to_big(&[1, 1, -1, -1])).unwrap(),
            p(4, &[(1, &[1, 1, 0, 0]), (-1, &[0, 0, 1, 1])])
        );
        assert_eq!(
            discriminant_codim1(&to_big(&[1, 3, -2, -2])).unwrap(),
            p(4, &[(16, &[1, 3, 0, 0]), (-27, &[0, 0, 2, 2])])
        );
    }

    #[test]
    fn codim_one_errors() {
        assert_eq!(
            discriminant_codim1(&to_big(&[1, 1])),
            Err(Error::NotHomogeneous)
        );
        assert_eq!(
            discriminant_codim1(&to_big(&[1, 0, -1])),
            Err(Error::PyramidInput(1))
        );
        assert_eq!(
            discriminant_codim1(&to_big(&[2, -4, 2])),
            Err(Error::NonPrimitive("2".into()))
        );
    }

    #[test]
    fn pipeline_classics() {
        let quad = PointConfiguration::from_i64(&[[1, 1, 1], [0, 1, 2]]).unwrap();
        let d = discriminant_of_points(&quad).unwrap();
        assert_eq!(d.polynomial, p(3, &[(1, &[0, 2, 0]), (-4, &[1, 0, 1])]));
        let cubic = PointConfiguration::from_i64(&[[1, 1, 1, 1], [0, 1, 2, 3]]).unwrap();
        let d = discriminant_of_points(&cubic).unwrap();
        assert_eq!(d.polynomial.len(), 5);
        assert!(matches!(d.provenance, Provenance::HornCurve { .. }));
    }

    #[test]
    fn pipeline_defect_and_pyramid() {
        let c = crate::config::cayley_of_segments(&[1, 1, 1]).unwrap();
        let d = discriminant_of_points(&c).unwrap();
        assert!(d.is_one());
        let b = GaleConfiguration::from_i64(&[[1], [0], [-1]]);
        let d = discriminant(&b).unwrap();
        assert!(d.is_one());
        assert_eq!(d.provenance, Provenance::Pyramid { zero_row: Some(1) });
        let b = GaleConfiguration::from_i64(&[[1], [1]]);
        assert_eq!(discriminant(&b), Err(Error::NotHomogeneous));
    }
}
