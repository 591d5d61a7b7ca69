mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use common::{critical_point_oracle, rat};
use discforge::config::{cayley_of_segments, PointConfiguration};
use discforge::defect::dual_variety_dim;
use discforge::disc::{discriminant_codim1, discriminant_of_points, membership};
use discforge::lattice::{to_big, IntMatrix};

fn cubic() -> PointConfiguration {
    PointConfiguration::from_i64(&[[1, 1, 1, 1], [0, 1, 2, 3]]).unwrap()
}

#[test]
fn gale_dual_of_quadric_is_the_cross_product() {
    let (r0, r1) = ([1i64, 1, 1], [0i64, 1, 2]);
    let cross = [
        r0[1] * r1[2] - r0[2] * r1[1],
        r0[2] * r1[0] - r0[0] * r1[2],
        r0[0] * r1[1] - r0[1] * r1[0],
    ];
    let b = PointConfiguration::from_i64(&[r0, r1]).unwrap().gale_dual();
    assert_eq!(b.matrix().column(0), to_big(&cross));
}

/// `f(t) = x1 + x2 t + x3 t^2 + x4 t^3`, its derivative, and the classical
/// cubic discriminant, all evaluated directly.
fn cubic_oracle(x: &[BigRational]) -> (bool, BigRational) {
    let (a, b, c, d) = (&x[3], &x[2], &x[1], &x[0]);
    let disc = b * b * c * c
        - rat(4, 1) * a * c * c * c
        - rat(4, 1) * b * b * b * d
        - rat(27, 1) * a * a * d * d
        + rat(18, 1) * a * b * c * d;
    let at_one = x.iter().fold(BigRational::zero(), |s, v| s + v);
    let deriv_at_one = &x[1] + rat(2, 1) * &x[2] + rat(3, 1) * &x[3];
    (at_one.is_zero() && deriv_at_one.is_zero(), disc)
}

#[test]
fn membership_matches_double_roots() {
    let b = cubic().gale_dual();
    let on = [rat(-1, 1), rat(3, 1), rat(-3, 1), rat(1, 1)];
    let (double_root, disc) = cubic_oracle(&on);
    assert!(double_root && disc.is_zero());
    assert!(membership(&b, &on).unwrap());
    let off = [rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 2)];
    assert!(!cubic_oracle(&off).1.is_zero());
    assert!(!membership(&b, &off).unwrap());
}

#[test]
fn cubic_discriminant_agrees_with_classical_formula() {
    let d = discriminant_of_points(&cubic()).unwrap().polynomial;
    for k in 1..8i64 {
        let x = [rat(k, 3), rat(-2, k + 1), rat(k * k, 5), rat(7, 2 * k + 1)];
        assert_eq!(d.eval(&x).unwrap(), cubic_oracle(&x).1);
    }
}

#[test]
fn twisted_cubic_dual_is_a_hypersurface() {
    assert_eq!(dual_variety_dim(&cubic(), 12).unwrap(), 2);
}

#[test]
fn cayley_of_three_segments_frozen() {
    let c = cayley_of_segments(&[1, 1, 1]).unwrap();
    let expected = IntMatrix::from_i64(&[
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 1, 1],
        [0, 1, 0, 1, 0, 1],
    ]);
    assert_eq!(c.matrix(), &expected);
}

#[test]
fn oracle_fixes_the_codim_one_coefficient() {
    for b in [[1i64, 3, -2, -2], [2, 1, -1, -2], [1, 1, 1, -3]] {
        assert_eq!(
            critical_point_oracle(&b),
            discriminant_codim1(&to_big(&b)).unwrap()
        );
    }
    let d = discriminant_codim1(&to_big(&[1, 3, -2, -2])).unwrap();
    assert_eq!(d.coeff(&[1, 3, 0, 0]), BigInt::from(16));
}
