//! Exact vertex tests for convex hulls of finite point sets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Is `p` a convex combination of `others`? Decided by a phase-one simplex
/// over the rationals with Bland's rule.
#[allow(clippy::needless_range_loop)]
pub fn in_convex_hull(p: &[i64], others: &[Vec<i64>]) -> bool {
    if others.is_empty() {
        return false;
    }
    let dim = p.len();
    let k = others.len();
    // Rows: one per coordinate plus the convexity row; columns: λ then
    // artificials.
    let rows = dim + 1;
    let cols = k + rows;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(rows);
    for r in 0..rows {
        let (mut row, mut b): (Vec<BigRational>, BigRational) = if r < dim {
            (others.iter().map(|q| rat(q[r])).collect(), rat(p[r]))
        } else {
            (vec![BigRational::one(); k], BigRational::one())
        };
        if b.is_negative() {
            row.iter_mut().for_each(|x| *x = -x.clone());
            b = -b;
        }
        row.extend((0..rows).map(|a| {
            if a == r {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        t.push(row);
        rhs.push(b);
    }
    let mut basis: Vec<usize> = (k..cols).collect();
    // Reduced costs for minimizing the sum of artificials.
    loop {
        let mut entering = None;
        for j in 0..cols {
            if basis.contains(&j) {
                continue;
            }
            let cj = if j >= k {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            let mut reduced = cj;
            for (r, &bj) in basis.iter().enumerate() {
                if bj >= k {
                    reduced -= &t[r][j];
                }
            }
            if reduced.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if t[r][j].is_positive() {
                let ratio = &rhs[r] / &t[r][j];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { break };
        let piv = t[r][j].clone();
        t[r].iter_mut().for_each(|x| *x = &*x / &piv);
        rhs[r] = &rhs[r] / &piv;
        for i in 0..rows {
            if i != r && !t[i][j].is_zero() {
                let f = t[i][j].clone();
                for c in 0..cols {
                    let d = &f * &t[r][c];
                    t[i][c] -= d;
                }
                let d = &f * &rhs[r];
                rhs[i] -= d;
            }
        }
        basis[r] = j;
    }
    basis.iter().zip(&rhs).all(|(&bj, v)| bj < k || v.is_zero())
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Vertices of the convex hull, in input order, duplicates collapsed.
pub fn newton_vertices(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut uniq: Vec<Vec<i64>> = Vec::new();
    for p in points {
        if !uniq.contains(p) {
            uniq.push(p.clone());
        }
    }
    uniq.iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<Vec<i64>> = uniq
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            !in_convex_hull(p, &others)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

/// Keeps the listed coordinates of every point.
pub fn project_points(points: &[Vec<i64>], coords: &[usize]) -> Vec<Vec<i64>> {
    points
        .iter()
        .map(|p| coords.iter().map(|&c| p[c]).collect())
        .collect()
}
