//! Dual-defect decisions.
//!
//! The verdict always comes from an exhaustive search for a non-splitting
//! `(m-1)`-flag; the codimension-specific criteria run alongside it and the
//! report records whether both agreed.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::{cayley_of_segments, GaleConfiguration, PointConfiguration};
use crate::error::{Error, Result};
use crate::lattice::{rational_nullspace, Span};
use crate::matroid::{self, Decomposition, Flag};

/// Default cap on `n` for support-lattice enumeration.
pub const DEFAULT_SIZE_BOUND: usize = 12;

/// Which criterion produced the fast verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    CodimOne,
    Degenerate,
    CodimTwo,
    CodimThree,
    CodimFour,
    FlagSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    /// A non-splitting `(m-1)`-flag.
    Flag { flag: Flag },
    /// `rank(B~) < rank(B)`.
    Degenerate,
    /// The reduced configuration splits between two complementary planes;
    /// indices refer to rows of the reduced configuration.
    Planes {
        first: Vec<usize>,
        second: Vec<usize>,
    },
    /// The exhaustive search found no non-splitting `(m-1)`-flag.
    NoFlag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub defect: bool,
    pub witness: Witness,
    /// Dimension of the dual variety, when known.
    pub dual_dim: Option<usize>,
    pub method: Method,
    pub checks_agreed: bool,
}

impl DefectReport {
    /// Fills in the dual-variety dimension from the support lattice.
    pub fn with_dual_dim(mut self, a: &PointConfiguration, bound: usize) -> Result<Self> {
        self.dual_dim = Some(dual_variety_dim(a, bound)?);
        Ok(self)
    }
}

fn check_input(b: &GaleConfiguration) -> Result<()> {
    if !b.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if let Some(&z) = b.zero_rows().first() {
        return Err(Error::PyramidInput(z));
    }
    Ok(())
}

/// Splits the rows of `r` (rank 4) into two sets spanning complementary
/// planes, if possible.
fn complementary_planes(r: &GaleConfiguration) -> Option<(Vec<usize>, Vec<usize>)> {
    for f in matroid::flats_of_rank(r, 2) {
        let rest: Vec<usize> = (0..r.n()).filter(|i| !f.contains(*i)).collect();
        let rest_rank = Span::of(r.m(), rest.iter().map(|&i| r.row(i))).rank();
        if rest_rank == 2 && r.rank() == 4 {
            return Some((f.members, rest));
        }
    }
    None
}

/// Decides dual-defectness of the configuration dual to `b` (rank `m`).
pub fn is_dual_defect(b: &GaleConfiguration) -> Result<DefectReport> {
    check_input(b)?;
    let m = b.rank();
    let n = b.n();
    let flag = if m == 0 {
        None
    } else {
        matroid::find_nonsplitting_flag(b, m - 1)
    };
    let exhaustive_defect = m == 0 || flag.is_none();

    let degenerate = matroid::is_degenerate(b);
    let (fast_defect, method, planes) = match m {
        0 | 1 => (m == 0, Method::CodimOne, None),
        2 => (degenerate, Method::CodimTwo, None),
        3 => (degenerate, Method::CodimThree, None),
        4 => {
            if degenerate {
                (true, Method::CodimFour, None)
            } else {
                let planes = complementary_planes(&matroid::reduce(b));
                (planes.is_some(), Method::CodimFour, planes)
            }
        }
        _ if degenerate => (true, Method::Degenerate, None),
        _ => (exhaustive_defect, Method::FlagSearch, None),
    };

    let witness = match (&flag, planes) {
        (Some(f), _) => Witness::Flag { flag: f.clone() },
        (None, Some((first, second))) => Witness::Planes { first, second },
        (None, None) if degenerate && m >= 2 => Witness::Degenerate,
        (None, None) => Witness::NoFlag,
    };
    Ok(DefectReport {
        defect: exhaustive_defect,
        witness,
        dual_dim: (!exhaustive_defect && n >= 2).then(|| n - 2),
        method,
        checks_agreed: fast_defect == exhaustive_defect,
    })
}

/// The supports of vectors in `ker(A)`, ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportLattice {
    n: usize,
    /// Bitmask of each element with the dimension of `ker(A)` restricted to
    /// it, sorted by rank and then mask.
    elements: Vec<(u32, usize)>,
}

impl SupportLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements as 0-based index sets together with their rank.
    pub fn elements(&self) -> Vec<(Vec<usize>, usize)> {
        self.elements
            .iter()
            .map(|&(mask, r)| (mask_to_set(mask, self.n), r))
            .collect()
    }

    /// Minimal nonempty supports (the circuits).
    pub fn atoms(&self) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .filter(|&&(_, r)| r == 1)
            .map(|&(mask, _)| mask_to_set(mask, self.n))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.elements.iter().map(|&(_, r)| r).max().unwrap_or(0)
    }
}

fn mask_to_set(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Largest `n` the bitmask representation can hold.
const HARD_LIMIT: usize = 24;

pub fn support_lattice(a: &PointConfiguration, bound: usize) -> Result<SupportLattice> {
    let n = a.n();
    if n > bound.min(HARD_LIMIT) {
        return Err(Error::SizeBound {
            n,
            bound: bound.min(HARD_LIMIT),
        });
    }
    let mut elements = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let cols: Vec<usize> = mask_to_set(mask, n);
        if cols.is_empty() {
            elements.push((0, 0));
            continue;
        }
        let rows: Vec<Vec<BigInt>> = (0..a.d())
            .map(|r| cols.iter().map(|&c| a.matrix().get(r, c).clone()).collect())
            .collect();
        let kernel = rational_nullspace(&rows, cols.len());
        let covers_all = (0..cols.len()).all(|i| kernel.iter().any(|v| !v[i].is_zero()));
        if covers_all && !kernel.is_empty() {
            elements.push((mask, kernel.len()));
        }
    }
    elements.sort_by_key(|&(mask, r)| (r, mask));
    Ok(SupportLattice { n, elements })
}

/// `dim X_A^*` as one less than the largest rank of `(A^T | σ_1 | ... )`
/// over proper maximal chains of the support lattice.
pub fn dual_variety_dim(a: &PointConfiguration, bound: usize) -> Result<usize> {
    let lattice = support_lattice(a, bound)?;
    let n = a.n();
    let m = lattice.rank();
    if m == 0 {
        return Err(Error::NoChain);
    }
    let mut by_rank: Vec<Vec<u32>> = vec![Vec::new(); m + 1];
    for &(mask, r) in &lattice.elements {
        by_rank[r].push(mask);
    }
    let mut base = Span::new(n);
    for r in 0..a.d() {
        base.insert(a.matrix().row(r));
    }
    let mut search = ChainSearch {
        by_rank: &by_rank,
        n,
        top: m,
        best: 0,
    };
    search.extend(0, 0, &base);
    if search.best == 0 {
        return Err(Error::NoChain);
    }
    Ok(search.best - 1)
}

struct ChainSearch<'a> {
    by_rank: &'a [Vec<u32>],
    n: usize,
    top: usize,
    best: usize,
}

impl ChainSearch<'_> {
    /// `current` has rank `level`; the chain stops one below the top.
    fn extend(&mut self, current: u32, level: usize, span: &Span) {
        if level + 1 >= self.top {
            self.best = self.best.max(span.rank());
            return;
        }
        let remaining = self.top - 1 - level;
        if span.rank() + remaining <= self.best || self.best == self.n - 1 {
            return;
        }
        for &next in &self.by_rank[level + 1] {
            if next & current != current {
                continue;
            }
            let indicator: Vec<BigInt> = (0..self.n)
                .map(|i| {
                    if next >> i & 1 == 1 {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect();
            let mut s = span.clone();
            s.insert(&indicator);
            self.extend(next, level + 1, &s);
            if self.best == self.n - 1 {
                return;
            }
        }
    }
}

/// `ρ(B)` from the greedy decomposition and whether `ρ <= m - 2` already
/// forces dual-defectness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoReport {
    pub rho: i64,
    pub sufficient_defect: bool,
    pub decomposition: Decomposition,
}

pub fn rho_bound(b: &GaleConfiguration) -> Result<RhoReport> {
    let decomposition = matroid::decompose(b, |part| Ok(is_dual_defect(part)?.defect))?;
    let m = b.rank() as i64;
    Ok(RhoReport {
        rho: decomposition.rho,
        sufficient_defect: decomposition.rho <= m - 2,
        decomposition,
    })
}

/// The dual defect configurations of codimension at most four built from
/// segments, as `(segment lengths, configuration)`.
pub fn dirocco_fixture_list() -> Vec<(Vec<u32>, PointConfiguration)> {
    let specs: [&[u32]; 7] = [
        &[1, 1, 1],
        &[1, 1, 2],
        &[1, 1, 1, 1],
        &[1, 2, 2],
        &[1, 1, 3],
        &[1, 1, 1, 2],
        &[1, 1, 1, 1, 1],
    ];
    specs
        .iter()
        .map(|s| {
            (
                s.to_vec(),
                cayley_of_segments(s).expect("segments of positive length"),
            )
        })
        .collect()
}
