//! Shared oracles, strategies and properties for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::rngs::StdRng;
use rand::Rng;

use discforge::config::{dual_of, GaleConfiguration};
use discforge::disc::{
    contract, discriminant_codim1, extend_plus_minus, horn_eval, implicitize_horn_curve, HornMap,
};
use discforge::lattice::{to_big, vec_gcd};
use discforge::matroid::reduce;
use discforge::poly::{resultant_u, SparsePolynomial, UniPoly};
use discforge::Error;

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Random primitive homogeneous vector without zero entries.
pub fn random_codim_one(rng: &mut StdRng) -> Vec<i64> {
    loop {
        let n = rng.gen_range(3..=5);
        let b: Vec<i64> = (0..n)
            .map(|_| {
                let v = rng.gen_range(1..=4);
                if rng.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            })
            .collect();
        if b.iter().sum::<i64>() == 0 && vec_gcd(&to_big(&b)) == BigInt::one() {
            return b;
        }
    }
}

/// Reduced row echelon kernel over the rationals.
#[allow(clippy::needless_range_loop)]
fn rational_kernel(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][free].clone();
            }
            v
        })
        .collect()
}

fn rat_pow(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Discriminant of `f = Σ x_i t^{a_i}` for the dual `A` of a codimension-one
/// vector `b`, by elimination from the critical-point equations.
///
/// A singular zero `t` of `f` in the torus forces `(x_i t^{a_i})_i` into
/// `ker A = span(b)`, so the locus is parametrized by `x_i = b_i t^{-a_i}` up
/// to scaling. The oracle samples that parametrization at rational `t` and
/// returns the lowest-degree polynomial vanishing on the samples, searched
/// among monomials of equal `A`-degree.
pub fn critical_point_oracle(b: &[i64]) -> SparsePolynomial {
    let n = b.len();
    let g = GaleConfiguration::from_i64(&b.iter().map(|&v| [v]).collect::<Vec<_>>());
    let a = dual_of(&g).unwrap().config;
    let d = a.d();
    let a_rows: Vec<Vec<i64>> = a.matrix().to_i64_rows().unwrap();
    let sample = |k: i64| -> Vec<BigRational> {
        let t: Vec<BigRational> = (0..d)
            .map(|j| rat(2 + k + 3 * j as i64, 3 + 2 * j as i64 + k * k))
            .collect();
        (0..n)
            .map(|i| {
                let mut x = BigRational::from_integer(BigInt::from(b[i]));
                for j in 0..d {
                    x *= rat_pow(&t[j], -a_rows[j][i]);
                }
                x
            })
            .collect()
    };
    for degree in 1..=40usize {
        let mut classes: std::collections::BTreeMap<Vec<i64>, Vec<Vec<i64>>> = Default::default();
        for e in compositions(n, degree) {
            let weight: Vec<i64> = a_rows
                .iter()
                .map(|r| r.iter().zip(&e).map(|(x, y)| x * y).sum())
                .collect();
            classes.entry(weight).or_default().push(e);
        }
        for monomials in classes.values().filter(|c| c.len() >= 2) {
            let samples: Vec<Vec<BigRational>> =
                (0..monomials.len() as i64 + 3).map(sample).collect();
            let rows: Vec<Vec<BigRational>> = samples
                .iter()
                .map(|x| {
                    monomials
                        .iter()
                        .map(|e| {
                            e.iter()
                                .zip(x)
                                .fold(BigRational::one(), |acc, (&k, xi)| acc * rat_pow(xi, k))
                        })
                        .collect()
                })
                .collect();
            let kernel = rational_kernel(&rows, monomials.len());
            if kernel.len() == 1 {
                let v = &kernel[0];
                let den = v.iter().fold(BigInt::one(), |acc, c| {
                    num_integer::Integer::lcm(&acc, c.denom())
                });
                let mut f = SparsePolynomial::zero(n);
                for (e, c) in monomials.iter().zip(v) {
                    f.add_term(
                        e.clone(),
                        (c * BigRational::from_integer(den.clone())).to_integer(),
                    );
                }
                return f.normalize().unwrap();
            }
        }
    }
    panic!("no vanishing polynomial up to degree 40");
}

fn compositions(n: usize, total: usize) -> Vec<Vec<i64>> {
    if n == 1 {
        return vec![vec![total as i64]];
    }
    (0..=total)
        .flat_map(|k| {
            compositions(n - 1, total - k)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, k as i64);
                    rest
                })
        })
        .collect()
}

// Strategies.

pub fn gale_strategy() -> impl Strategy<Value = GaleConfiguration> {
    (1usize..=3, 2usize..=7).prop_flat_map(|(m, n)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, m), n)
            .prop_map(|rows| GaleConfiguration::from_i64(&rows))
    })
}

pub fn codim_one_strategy() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], 2..=4).prop_filter_map(
        "needs a nonzero, coprime completion",
        |mut b| {
            let s: i64 = b.iter().sum();
            if s == 0 {
                return None;
            }
            b.push(-s);
            (vec_gcd(&to_big(&b)) == BigInt::one()).then_some(b)
        },
    )
}

pub fn poly_strategy(nvars: usize) -> impl Strategy<Value = SparsePolynomial> {
    proptest::collection::vec(
        (-6i64..=6, proptest::collection::vec(-1i64..=3, nvars)),
        0..=5,
    )
    .prop_map(move |terms| {
        let mut f = SparsePolynomial::zero(nvars);
        for (c, e) in terms {
            f.add_term(e, BigInt::from(c));
        }
        f
    })
}

pub fn unipoly_strategy() -> impl Strategy<Value = UniPoly> {
    proptest::collection::vec(
        proptest::collection::vec((-4i64..=4, proptest::collection::vec(0i64..=2, 2)), 0..=2),
        1..=4,
    )
    .prop_map(|coeffs| {
        UniPoly::new(
            2,
            coeffs
                .into_iter()
                .map(|terms| {
                    let mut f = SparsePolynomial::zero(2);
                    for (c, e) in terms {
                        f.add_term(e, BigInt::from(c));
                    }
                    f
                })
                .collect(),
        )
    })
}

/// Homogeneous rank-2 configurations with 3 to 5 rows, no zero rows and a
/// hypersurface as discriminant (so the Horn image is a curve).
pub fn rank_two_strategy() -> impl Strategy<Value = GaleConfiguration> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, 2), 2..=4).prop_filter_map(
        "rank 2, no zero rows, not dual defect",
        |mut rows| {
            let s0: i64 = rows.iter().map(|r| r[0]).sum();
            let s1: i64 = rows.iter().map(|r| r[1]).sum();
            rows.push(vec![-s0, -s1]);
            let g = GaleConfiguration::from_i64(&rows);
            let ok = g.rank() == 2
                && g.zero_rows().is_empty()
                && !discforge::defect::is_dual_defect(&g).ok()?.defect;
            ok.then_some(g)
        },
    )
}

// Properties.

pub fn prop_reduce_idempotent(b: &GaleConfiguration) -> Result<(), TestCaseError> {
    let r = reduce(b);
    prop_assert_eq!(reduce(&r), r);
    Ok(())
}

pub fn prop_resultant_symmetry(f: &UniPoly, g: &UniPoly) -> Result<(), TestCaseError> {
    match (resultant_u(f, g), resultant_u(g, f)) {
        (Ok(a), Ok(b)) => {
            let p = f.degree().unwrap_or(0) * g.degree().unwrap_or(0);
            let sign = if p.is_multiple_of(2) {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            prop_assert_eq!(a, b.scale(&sign));
        }
        (Err(a), Err(b)) => prop_assert_eq!(a, b),
        (a, b) => prop_assert!(false, "asymmetric outcome {:?} / {:?}", a, b),
    }
    Ok(())
}

pub fn prop_normalize_idempotent(f: &SparsePolynomial) -> Result<(), TestCaseError> {
    match f.normalize() {
        Ok(g) => {
            prop_assert!(g.is_normalized());
            prop_assert_eq!(g.normalize().unwrap(), g);
        }
        Err(e) => {
            prop_assert!(f.is_zero());
            prop_assert_eq!(e, Error::ZeroPolynomial);
        }
    }
    Ok(())
}

/// `F(h_C(ζ)) = 0` on ten parameters not used while interpolating.
pub fn prop_horn_vanishing(c: &GaleConfiguration, seed: u64) -> Result<(), TestCaseError> {
    let f = implicitize_horn_curve(c).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let h = HornMap::new(c.clone()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mut checked = 0;
    let mut k = 0i64;
    while checked < 10 {
        k += 1;
        let s = (seed % 97) as i64;
        let zeta = [
            rat(7 * k + s + 5, 11 * k + 13),
            rat(-(3 * k + 2), 5 * k + s + 17),
        ];
        match horn_eval(&h, &zeta) {
            Ok(z) => {
                prop_assert!(
                    f.eval(&z).unwrap().is_zero(),
                    "F does not vanish at {:?}",
                    z
                );
                checked += 1;
            }
            Err(Error::OnExceptionalLocus(_)) => continue,
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
    Ok(())
}

/// Contracting the discriminant of `b ∪ {v, -v}` recovers that of `b`.
pub fn prop_extend_contract(b: &[i64], v: i64) -> Result<(), TestCaseError> {
    let g = GaleConfiguration::from_i64(&b.iter().map(|&x| [x]).collect::<Vec<_>>());
    let ext = extend_plus_minus(&g, &[BigInt::from(v)]).unwrap();
    let col = ext.matrix().column(0);
    let d_ext = discriminant_codim1(&col).unwrap();
    let expected = discriminant_codim1(&to_big(b)).unwrap();
    prop_assert_eq!(contract(&d_ext).unwrap(), expected);
    Ok(())
}
