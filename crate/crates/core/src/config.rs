//! Point configurations `A` (columns are points) and Gale configurations `B`
//! (rows are vectors), with the dualities between them.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, is_zero_vec, kernel_lattice_basis, IntMatrix, LatticeBasis};

/// A `d x n` integer matrix of rank `d`; column `i` is the point `a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    matrix: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl PointConfiguration {
    /// Validates full row rank and pairwise distinct columns.
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        for i in 0..matrix.cols() {
            for j in i + 1..matrix.cols() {
                if (0..matrix.rows()).all(|r| matrix.get(r, i) == matrix.get(r, j)) {
                    return Err(Error::DuplicateColumn(i, j));
                }
            }
        }
        Self::new_allow_repeats(matrix)
    }

    fn new_allow_repeats(matrix: IntMatrix) -> Result<Self> {
        let r = lattice::rank(&matrix);
        if r != matrix.rows() {
            return Err(Error::RankDeficient {
                expected: matrix.rows(),
                found: r,
            });
        }
        Ok(PointConfiguration {
            matrix,
            labels: None,
        })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::DimensionMismatch("one label per column".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn d(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// `m = n - d`.
    pub fn codim(&self) -> usize {
        self.n() - self.d()
    }

    /// Whether `(1, ..., 1)` lies in the rational row span.
    pub fn is_homogeneous(&self) -> bool {
        let ones = IntMatrix::from_rows(self.n(), vec![vec![BigInt::one(); self.n()]])
            .expect("row of matching length");
        let stacked = self.matrix.vstack(&ones).expect("same column count");
        lattice::rank(&stacked) == self.d()
    }

    /// Same rational row span, first row all ones, remaining rows in Hermite
    /// form with zero first coordinate.
    pub fn standard_form(&self) -> Result<Self> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let n = self.n();
        let kernel = kernel_lattice_basis(&self.matrix);
        let saturated = if kernel.is_empty() {
            LatticeBasis::from_generators(n, &IntMatrix::identity(n).row_vecs())
        } else {
            kernel_lattice_basis(&kernel.as_rows())
        };
        let shifted: Vec<Vec<BigInt>> = saturated
            .vectors()
            .iter()
            .map(|v| v.iter().map(|x| x - &v[0]).collect())
            .collect();
        let rest = LatticeBasis::from_generators(n, &shifted);
        let mut rows = vec![vec![BigInt::one(); n]];
        rows.extend(rest.vectors().iter().cloned());
        Self::new_allow_repeats(IntMatrix::from_rows(n, rows)?)
    }

    /// Gale dual: the rows of the canonical kernel lattice basis matrix.
    pub fn gale_dual(&self) -> GaleConfiguration {
        let k = kernel_lattice_basis(&self.matrix);
        GaleConfiguration::new(k.as_columns())
    }

    /// True iff some Gale vector vanishes; `n = d` counts as a pyramid.
    pub fn is_pyramid(&self) -> bool {
        let g = self.gale_dual();
        g.m() == 0 || !g.zero_rows().is_empty()
    }
}

/// `n` vectors `b_1, ..., b_n` in `Z^m`, stored as the rows of an `n x m`
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaleConfiguration {
    matrix: IntMatrix,
    #[serde(with = "crate::lattice::decimal::option")]
    index: Option<BigInt>,
}

impl GaleConfiguration {
    /// Any `n x m` matrix is accepted; `index` is cached when the rows span
    /// `Q^m`.
    pub fn new(matrix: IntMatrix) -> Self {
        let index = lattice::lattice_index(&matrix).ok();
        GaleConfiguration { matrix, index }
    }

    /// Like [`GaleConfiguration::new`] but rejects rank-deficient input.
    pub fn new_full_rank(matrix: IntMatrix) -> Result<Self> {
        let g = Self::new(matrix);
        if g.index.is_none() {
            return Err(Error::RankDeficient {
                expected: g.m(),
                found: g.rank(),
            });
        }
        Ok(g)
    }

    pub fn from_vectors(m: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        Ok(Self::new(IntMatrix::from_rows(m, rows)?))
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// Ambient dimension.
    pub fn m(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rank(&self) -> usize {
        lattice::rank(&self.matrix)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        self.matrix.row(i)
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.matrix.row_vecs()
    }

    /// Cached lattice index; `None` when the rows do not span `Q^m`.
    pub fn index(&self) -> Option<&BigInt> {
        self.index.as_ref()
    }

    pub fn is_gale_dual(&self) -> bool {
        self.index.as_ref().is_some_and(One::is_one)
    }

    pub fn sigma(&self) -> Vec<BigInt> {
        self.sigma_of(0..self.n())
    }

    pub fn sigma_of<I: IntoIterator<Item = usize>>(&self, idx: I) -> Vec<BigInt> {
        let mut s = vec![BigInt::zero(); self.m()];
        for i in idx {
            for (acc, v) in s.iter_mut().zip(self.row(i)) {
                *acc += v;
            }
        }
        s
    }

    /// Rows sum to zero.
    pub fn is_homogeneous(&self) -> bool {
        is_zero_vec(&self.sigma())
    }

    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| is_zero_vec(self.row(i)))
            .collect()
    }

    /// The rows at `idx`, in that order, in the same ambient space.
    pub fn subconfiguration(&self, idx: &[usize]) -> GaleConfiguration {
        GaleConfiguration::new(self.matrix.select_rows(idx))
    }

    /// Appends rows at the end.
    pub fn with_rows(&self, extra: &[Vec<BigInt>]) -> Result<GaleConfiguration> {
        let mut rows = self.rows();
        rows.extend(extra.iter().cloned());
        Self::from_vectors(self.m(), rows)
    }

    /// Replaces the column lattice by its saturation, keeping the rows in
    /// place: the result is an index-1 configuration with the same rational
    /// column span.
    pub fn saturate(&self) -> GaleConfiguration {
        if self.is_gale_dual() {
            return self.clone();
        }
        let k = kernel_lattice_basis(&self.matrix.transpose());
        let a = k.as_rows();
        let sat = kernel_lattice_basis(&a);
        GaleConfiguration::new(sat.as_columns())
    }
}

/// Output of [`dual_of`]: a dual point configuration and whether it is a
/// pyramid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualConfiguration {
    pub config: PointConfiguration,
    pub pyramid: bool,
}

/// A configuration `A` with `A * B = 0` whose rows span the saturated
/// orthogonal lattice, in Hermite form.
///
/// Repeated columns are allowed in the output (they occur when two Gale
/// vectors differ by an element of the column span).
pub fn dual_of(g: &GaleConfiguration) -> Result<DualConfiguration> {
    let k = kernel_lattice_basis(&g.matrix.transpose());
    let a = if k.is_empty() {
        IntMatrix::zeros(0, g.n())
    } else {
        k.as_rows()
    };
    let config = PointConfiguration::new_allow_repeats(a)?;
    Ok(DualConfiguration {
        config,
        pyramid: !g.zero_rows().is_empty(),
    })
}

/// `Cay(A_0, ..., A_k)`: part `i` is lifted to `{e_i} x A_i`; columns are
/// ordered part by part.
pub fn cayley(parts: &[PointConfiguration]) -> Result<PointConfiguration> {
    let first = parts.first().ok_or(Error::EmptyCayley)?;
    let r = first.d();
    if parts.iter().any(|p| p.d() != r) {
        return Err(Error::DimensionMismatch(
            "Cayley parts must share the ambient dimension".into(),
        ));
    }
    let k1 = parts.len();
    let n: usize = parts.iter().map(PointConfiguration::n).sum();
    let mut out = IntMatrix::zeros(k1 + r, n);
    let mut col = 0;
    for (i, p) in parts.iter().enumerate() {
        for j in 0..p.n() {
            out.set(i, col, BigInt::one());
            for row in 0..r {
                out.set(k1 + row, col, p.matrix().get(row, j).clone());
            }
            col += 1;
        }
    }
    PointConfiguration::new(out)
}

/// The segment `[p] = {0, 1, ..., p}` as a `1 x (p + 1)` configuration.
pub fn segment(p: u32) -> Result<PointConfiguration> {
    if p == 0 {
        return Err(Error::InvalidSegment);
    }
    let row: Vec<i64> = (0..=i64::from(p)).collect();
    PointConfiguration::from_i64(&[row])
}

/// Cayley configuration of segments, e.g. `[1, 1, 2]` gives `Cay([1],[1],[2])`.
pub fn cayley_of_segments(lengths: &[u32]) -> Result<PointConfiguration> {
    let parts = lengths
        .iter()
        .map(|&p| segment(p))
        .collect::<Result<Vec<_>>>()?;
    cayley(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rank, to_big};

    fn rowspan_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
        let ra = rank(a);
        ra == rank(b) && rank(&a.vstack(b).unwrap()) == ra
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            PointConfiguration::from_i64(&[[1, 2, 3], [2, 4, 6]]),
            Err(Error::RankDeficient { .. })
        ));
        assert_eq!(
            PointConfiguration::from_i64(&[[1, 1, 1], [0, 1, 0]]),
            Err(Error::DuplicateColumn(0, 2))
        );
    }

    #[test]
    fn homogeneity() {
        let a = PointConfiguration::from_i64(&[[1, 1, 1], [0, 1, 2]]).unwrap();
        assert!(a.is_homogeneous());
        let a = PointConfiguration::from_i64(&[[1, 2]]).unwrap();
        assert!(!a.is_homogeneous());
        let a = PointConfiguration::from_i64(&[[0, 1, 2]]).unwrap();
        assert!(!a.is_homogeneous());
        let aug = PointConfiguration::from_i64(&[[1, 1, 1], [0, 1, 2]]).unwrap();
        assert!(aug.is_homogeneous());
    }

    #[test]
    fn standard_form_examples() {
        let a = PointConfiguration::from_i64(&[[2, 2, 2], [0, 1, 2]]).unwrap();
        let s = a.standard_form().unwrap();
        assert_eq!(s.matrix(), &IntMatrix::from_i64(&[[1, 1, 1], [0, 1, 2]]));
        assert_eq!(s.standard_form().unwrap(), s);

        let a = PointConfiguration::from_i64(&[[3, -1, 0, 0], [2, 0, 1, 0], [2, 0, 0, 1]]).unwrap();
        let s = a.standard_form().unwrap();
        assert_eq!(s.matrix().row(0), to_big(&[1, 1, 1, 1]).as_slice());
        assert!(rowspan_equal(s.matrix(), a.matrix()));

        let a = PointConfiguration::from_i64(&[[1, 2]]).unwrap();
        assert_eq!(a.standard_form(), Err(Error::NotHomogeneous));
    }

    #[test]
    fn gale_dual_examples() {
        let a = PointConfiguration::from_i64(&[[1, 1, 1], [0, 1, 2]]).unwrap();
        let b = a.gale_dual();
        assert_eq!(b.matrix(), &IntMatrix::from_i64(&[[1], [-2], [1]]));

        let a = PointConfiguration::from_i64(&[[1, 1, 1, 1], [0, 1, 2, 3]]).unwrap();
        let b = a.gale_dual();
        let expected =
            LatticeBasis::from_generators(4, &[to_big(&[1, -2, 1, 0]), to_big(&[0, 1, -2, 1])]);
        assert_eq!(
            LatticeBasis::from_generators(4, &b.matrix().transpose().row_vecs()),
            expected
        );
        assert!(b.is_gale_dual());
        assert!(b.is_homogeneous());
    }

    #[test]
    fn gale_dual_of_cayley_triangle() {
        let a = cayley_of_segments(&[1, 1, 1]).unwrap();
        let b = a.gale_dual();
        assert_eq!((b.n(), b.m()), (6, 2));
        assert!(a.matrix().mul(b.matrix()).unwrap().is_zero());
        assert!(b.is_gale_dual());
        assert!(b.is_homogeneous());
        let expected =
            GaleConfiguration::from_i64(&[[1, 1], [-1, -1], [-1, 0], [1, 0], [0, -1], [0, 1]]);
        assert!(rowspan_equal(
            &b.matrix().transpose(),
            &expected.matrix().transpose()
        ));
    }

    #[test]
    fn dual_of_examples() {
        let b = GaleConfiguration::from_i64(&[[1], [-2], [1]]);
        let d = dual_of(&b).unwrap();
        assert!(!d.pyramid);
        assert!(rowspan_equal(
            d.config.matrix(),
            &IntMatrix::from_i64(&[[1, 1, 1], [0, 1, 2]])
        ));

        let b = GaleConfiguration::from_i64(&[[1], [3], [-2], [-2]]);
        let d = dual_of(&b).unwrap();
        assert!(rowspan_equal(
            d.config.matrix(),
            &IntMatrix::from_i64(&[[3, -1, 0, 0], [2, 0, 1, 0], [2, 0, 0, 1]])
        ));

        let b = GaleConfiguration::from_i64(&[[1, 0], [0, 0], [-1, 1], [0, -1]]);
        assert!(dual_of(&b).unwrap().pyramid);
    }

    #[test]
    fn pyramid_detection() {
        // A fourth point off the line of the first three is used by no
        // affine relation, so its Gale vector is zero.
        let a = PointConfiguration::from_i64(&[[1, 1, 1, 1], [0, 1, 2, 0], [0, 0, 0, 1]]).unwrap();
        assert!(a.is_pyramid());
        let tc = PointConfiguration::from_i64(&[[1, 1, 1, 1], [0, 1, 2, 3]]).unwrap();
        assert!(!tc.is_pyramid());
        let square = PointConfiguration::from_i64(&[[1, 0], [0, 1]]).unwrap();
        assert!(square.is_pyramid());
    }

    #[test]
    fn cayley_examples() {
        let c = cayley_of_segments(&[1, 1]).unwrap();
        assert_eq!(
            c.matrix(),
            &IntMatrix::from_i64(&[[1, 1, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1]])
        );
        let c = cayley_of_segments(&[1, 1, 1]).unwrap();
        assert_eq!(
            c.matrix(),
            &IntMatrix::from_i64(&[
                [1, 1, 0, 0, 0, 0],
                [0, 0, 1, 1, 0, 0],
                [0, 0, 0, 0, 1, 1],
                [0, 1, 0, 1, 0, 1]
            ])
        );
        let c = cayley_of_segments(&[2, 2, 2]).unwrap();
        assert_eq!((c.d(), c.n()), (4, 9));
        assert!(c.is_homogeneous());
        assert!(!c.is_pyramid());
        assert_eq!(cayley(&[]), Err(Error::EmptyCayley));
    }

    #[test]
    fn segments() {
        assert_eq!(
            segment(3).unwrap().matrix(),
            &IntMatrix::from_i64(&[[0, 1, 2, 3]])
        );
        assert_eq!(segment(0), Err(Error::InvalidSegment));
    }

    #[test]
    fn saturate_keeps_rows_and_fixes_index() {
        let c = GaleConfiguration::from_i64(&[[2, 0], [0, 2], [-2, -2]]);
        assert_eq!(c.index(), Some(&BigInt::from(4)));
        let s = c.saturate();
        assert!(s.is_gale_dual());
        assert!(rowspan_equal(
            &s.matrix().transpose(),
            &c.matrix().transpose()
        ));
    }
}
