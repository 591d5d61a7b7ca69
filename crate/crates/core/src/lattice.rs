//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Ranks use
//! fraction-free (Bareiss) elimination; lattice bases are brought into row
//! Hermite normal form (positive pivots, entries above each pivot reduced
//! into `[0, pivot)`), so two bases of the same lattice compare equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from its rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(IntMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Convenience constructor for small literal matrices.
    ///
    /// Panics on ragged input; intended for fixtures and tests.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged literal matrix")
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let m = Self::from_rows(rows, columns.to_vec())?;
        Ok(m.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(self.cols, rows).expect("row length preserved")
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch("vstack column count".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_i64()).collect())
            .collect()
    }
}

/// Serialized as a list of rows of decimal strings.
impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        decimal::rows::serialize(&self.row_vecs(), s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = decimal::rows::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_rows(cols, rows).map_err(serde::de::Error::custom)
    }
}

/// Serde adapters writing integers as decimal strings. Readers accept both
/// strings and JSON integers.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Str(String),
    }

    impl Raw {
        fn into_big<E: de::Error>(self) -> Result<BigInt, E> {
            match self {
                Raw::Int(v) => Ok(BigInt::from(v)),
                Raw::Str(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| E::custom(format!("not an integer: {s:?}"))),
            }
        }
    }

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Raw::deserialize(d)?.into_big()
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => s.collect_str(x),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
            Option::<Raw>::deserialize(d)?
                .map(Raw::into_big)
                .transpose()
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(ToString::to_string))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<Raw>::deserialize(d)?
                .into_iter()
                .map(Raw::into_big)
                .collect()
        }
    }

    pub mod rows {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(
                v.iter()
                    .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()),
            )
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
            Vec::<Vec<Raw>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(Raw::into_big).collect())
                .collect()
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_gcd(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the gcd of the entries; the zero vector is returned as is.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = vec_gcd(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(m: &IntMatrix) -> usize {
    rank_of_rows(&m.row_vecs(), m.cols())
}

pub(crate) fn rank_of_rows(rows: &[Vec<BigInt>], cols: usize) -> usize {
    fraction_free_echelon(rows, cols).1.len()
}

/// Bareiss row echelon form: the nonzero rows and their pivot columns.
fn fraction_free_echelon(rows: &[Vec<BigInt>], cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let n = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..n {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// A basis of the rational null space `{x : row_i . x = 0}`, one primitive
/// integer vector per free column.
pub fn rational_nullspace(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let (e, pivots) = fraction_free_echelon(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (k, &p) in pivots.iter().enumerate().rev() {
                let s: BigRational = (p + 1..cols)
                    .filter(|&j| !e[k][j].is_zero() && !x[j].is_zero())
                    .map(|j| BigRational::from(e[k][j].clone()) * &x[j])
                    .sum();
                x[p] = -s / BigRational::from(e[k][p].clone());
            }
            let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let ints: Vec<BigInt> = x
                .iter()
                .map(|v| (v * BigRational::from(l.clone())).to_integer())
                .collect();
            primitive(&ints)
        })
        .collect()
}

/// Row Hermite normal form of a list of integer vectors.
#[derive(Debug, Clone)]
pub(crate) struct Hermite {
    /// Echelon rows, nonzero ones first.
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    /// Unimodular `U` with `U * input = rows`, when requested.
    pub transform: Option<Vec<Vec<BigInt>>>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn sub_multiple(target: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

pub(crate) fn row_hermite(input: &[Vec<BigInt>], cols: usize, track: bool) -> Hermite {
    let n = input.len();
    let mut h: Vec<Vec<BigInt>> = input.to_vec();
    let mut u: Option<Vec<Vec<BigInt>>> = track.then(|| {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    });
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        loop {
            let best = (r..n)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()));
            let Some(best) = best else { break };
            h.swap(r, best);
            if let Some(u) = u.as_mut() {
                u.swap(r, best);
            }
            let mut clean = true;
            for i in r + 1..n {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                let (head, tail) = h.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[r], &q);
                if let Some(u) = u.as_mut() {
                    let (uh, ut) = u.split_at_mut(i);
                    sub_multiple(&mut ut[0], &uh[r], &q);
                }
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for v in h[r].iter_mut() {
                *v = -&*v;
            }
            if let Some(u) = u.as_mut() {
                for v in u[r].iter_mut() {
                    *v = -&*v;
                }
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            let (head, tail) = h.split_at_mut(r);
            sub_multiple(&mut head[i], &tail[0], &q);
            if let Some(u) = u.as_mut() {
                let (uh, ut) = u.split_at_mut(r);
                sub_multiple(&mut uh[i], &ut[0], &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Hermite {
        rows: h,
        pivots,
        transform: u,
    }
}

/// A sublattice of `Z^n` stored in canonical (Hermite) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeBasis {
    ambient: usize,
    #[serde(with = "decimal::rows")]
    vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    /// Canonical basis of the lattice generated by `gens`.
    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Self {
        let h = row_hermite(gens, ambient, false);
        let r = h.rank();
        let mut vectors = h.rows;
        vectors.truncate(r);
        LatticeBasis { ambient, vectors }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Basis vectors as the rows of a matrix.
    pub fn as_rows(&self) -> IntMatrix {
        IntMatrix::from_rows(self.ambient, self.vectors.clone()).expect("consistent lengths")
    }

    /// Basis vectors as the columns of an `ambient x rank` matrix.
    pub fn as_columns(&self) -> IntMatrix {
        if self.vectors.is_empty() {
            return IntMatrix::zeros(self.ambient, 0);
        }
        self.as_rows().transpose()
    }
}

/// Saturated integer kernel `{v in Z^n : M v = 0}` in canonical form.
pub fn kernel_lattice_basis(m: &IntMatrix) -> LatticeBasis {
    let n = m.cols();
    let t = m.transpose();
    let h = row_hermite(&t.row_vecs(), m.rows(), true);
    let r = h.rank();
    let u = h.transform.expect("transform requested");
    LatticeBasis::from_generators(n, &u[r..])
}

/// Index of the row lattice of `c` in `Z^m`: the gcd of the maximal minors.
pub fn lattice_index(c: &IntMatrix) -> Result<BigInt> {
    let m = c.cols();
    let h = row_hermite(&c.row_vecs(), m, false);
    if h.rank() < m {
        return Err(Error::DegenerateDual);
    }
    Ok(h.pivots
        .iter()
        .enumerate()
        .map(|(i, &p)| h.rows[i][p].clone())
        .product())
}

/// Finds integers `x` with `sum_i x_i * row_i(m) = target`, if any exist.
pub fn integer_solve(m: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    if target.len() != m.cols() {
        return None;
    }
    let h = row_hermite(&m.row_vecs(), m.cols(), true);
    let u = h.transform.as_ref().expect("transform requested");
    let mut y: Vec<BigInt> = Vec::with_capacity(h.rank());
    for (k, &p) in h.pivots.iter().enumerate() {
        let acc: BigInt = y.iter().enumerate().map(|(l, yl)| yl * &h.rows[l][p]).sum();
        let rem = &target[p] - acc;
        let (q, r) = rem.div_rem(&h.rows[k][p]);
        if !r.is_zero() {
            return None;
        }
        y.push(q);
    }
    let combo: Vec<BigInt> = (0..m.cols())
        .map(|j| y.iter().enumerate().map(|(l, yl)| yl * &h.rows[l][j]).sum())
        .collect();
    if combo != target {
        return None;
    }
    let x = (0..m.rows())
        .map(|i| y.iter().enumerate().map(|(l, yl)| yl * &u[l][i]).sum())
        .collect();
    Some(x)
}

/// Least `q >= 1` such that `q * w` is an integer combination of the rows.
pub fn smallest_multiplier(rows: &IntMatrix, w: &[BigInt]) -> Result<BigInt> {
    if w.len() != rows.cols() {
        return Err(Error::DimensionMismatch("target length".into()));
    }
    let h = row_hermite(&rows.row_vecs(), rows.cols(), false);
    let mut y: Vec<BigRational> = Vec::with_capacity(h.rank());
    for (k, &p) in h.pivots.iter().enumerate() {
        let acc: BigRational = y
            .iter()
            .enumerate()
            .map(|(l, yl)| yl * BigRational::from(h.rows[l][p].clone()))
            .sum();
        let rem = BigRational::from(w[p].clone()) - acc;
        y.push(rem / BigRational::from(h.rows[k][p].clone()));
    }
    for (j, wj) in w.iter().enumerate() {
        let v: BigRational = y
            .iter()
            .enumerate()
            .map(|(l, yl)| yl * BigRational::from(h.rows[l][j].clone()))
            .sum();
        if v != BigRational::from(wj.clone()) {
            return Err(Error::NotInSpan);
        }
    }
    Ok(y.iter().fold(BigInt::one(), |q, v| q.lcm(v.denom())))
}

/// Rational span of integer vectors, kept as a fraction-free echelon basis.
#[derive(Debug, Clone)]
pub struct Span {
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn of<'a, I: IntoIterator<Item = &'a [BigInt]>>(dim: usize, vs: I) -> Self {
        let mut s = Span::new(dim);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (p, b) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = b[*p].clone();
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x = &a * &*x - &c * y;
            }
            v = primitive(&v);
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, r));
        true
    }
}
