//! The matroid of a Gale configuration: collinear classes, the irreducible
//! reduction, flats, non-splitting flags and the decomposition into maximal
//! homogeneous non dual-defect parts.
//!
//! Indices are 0-based positions into the rows of `B`. Zero rows never take
//! part in the matroid.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::config::GaleConfiguration;
use crate::error::{Error, Result};
use crate::lattice::{is_zero_vec, primitive, IntMatrix, Span};

/// Primitive direction of a nonzero vector with positive leading entry.
pub fn line_key(v: &[BigInt]) -> Vec<BigInt> {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

/// Partition of the nonzero rows by the line through the origin they span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollinearClasses {
    /// Classes ordered by their smallest member.
    pub classes: Vec<Vec<usize>>,
    pub zero_rows: Vec<usize>,
}

pub fn collinear_classes(b: &GaleConfiguration) -> CollinearClasses {
    let mut by_line: BTreeMap<Vec<BigInt>, Vec<usize>> = BTreeMap::new();
    let mut zero_rows = Vec::new();
    for i in 0..b.n() {
        let r = b.row(i);
        if is_zero_vec(r) {
            zero_rows.push(i);
        } else {
            by_line.entry(line_key(r)).or_default().push(i);
        }
    }
    let mut classes: Vec<Vec<usize>> = by_line.into_values().collect();
    classes.sort();
    CollinearClasses { classes, zero_rows }
}

/// Collinear classes whose vectors sum to zero.
pub fn splitting_lines(b: &GaleConfiguration) -> Vec<Vec<usize>> {
    collinear_classes(b)
        .classes
        .into_iter()
        .filter(|c| is_zero_vec(&b.sigma_of(c.iter().copied())))
        .collect()
}

/// The irreducible configuration together with, for each of its rows, the
/// rows of the original configuration that were summed into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub config: GaleConfiguration,
    pub sources: Vec<Vec<usize>>,
}

/// Drops splitting lines and replaces every other collinear class by its sum.
pub fn reduce_with_sources(b: &GaleConfiguration) -> Reduction {
    let mut rows = Vec::new();
    let mut sources = Vec::new();
    for class in collinear_classes(b).classes {
        let s = b.sigma_of(class.iter().copied());
        if !is_zero_vec(&s) {
            rows.push(s);
            sources.push(class);
        }
    }
    let config = GaleConfiguration::from_vectors(b.m(), rows).expect("rows of ambient length");
    Reduction { config, sources }
}

pub fn reduce(b: &GaleConfiguration) -> GaleConfiguration {
    reduce_with_sources(b).config
}

pub fn is_irreducible(b: &GaleConfiguration) -> bool {
    first_parallel_pair(b).is_none()
}

pub(crate) fn first_parallel_pair(b: &GaleConfiguration) -> Option<(usize, usize)> {
    collinear_classes(b)
        .classes
        .into_iter()
        .find(|c| c.len() > 1)
        .map(|c| (c[0], c[1]))
}

/// `rank(reduce(B)) < rank(B)`.
pub fn is_degenerate(b: &GaleConfiguration) -> bool {
    reduce(b).rank() < b.rank()
}

/// A flat `F = B ∩ <F>` with its rank and vector sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flat {
    pub members: Vec<usize>,
    pub rank: usize,
    #[serde(with = "crate::lattice::decimal::vec")]
    pub sigma: Vec<BigInt>,
}

impl Flat {
    pub fn is_homogeneous(&self) -> bool {
        is_zero_vec(&self.sigma)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

fn span_of(b: &GaleConfiguration, idx: &[usize]) -> Span {
    Span::of(b.m(), idx.iter().map(|&i| b.row(i)))
}

fn closure_of_span(b: &GaleConfiguration, span: &Span) -> Flat {
    let members: Vec<usize> = (0..b.n())
        .filter(|&i| !is_zero_vec(b.row(i)) && span.contains(b.row(i)))
        .collect();
    Flat {
        sigma: b.sigma_of(members.iter().copied()),
        rank: span.rank(),
        members,
    }
}

/// `B ∩ <S>`.
pub fn closure(b: &GaleConfiguration, s: &[usize]) -> Flat {
    closure_of_span(b, &span_of(b, s))
}

/// All rank-`k` flats, sorted by member list.
pub fn flats_of_rank(b: &GaleConfiguration, k: usize) -> Vec<Flat> {
    let nonzero: Vec<usize> = (0..b.n()).filter(|&i| !is_zero_vec(b.row(i))).collect();
    let mut found: BTreeSet<Flat> = BTreeSet::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut chosen = Vec::with_capacity(k);
    collect_flats(
        b,
        &nonzero,
        0,
        k,
        &mut chosen,
        Span::new(b.m()),
        &mut seen,
        &mut found,
    );
    found.into_iter().collect()
}

#[allow(clippy::too_many_arguments)]
fn collect_flats(
    b: &GaleConfiguration,
    pool: &[usize],
    start: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    span: Span,
    seen: &mut HashSet<Vec<usize>>,
    out: &mut BTreeSet<Flat>,
) {
    if chosen.len() == k {
        let f = closure_of_span(b, &span);
        if seen.insert(f.members.clone()) {
            out.insert(f);
        }
        return;
    }
    for pos in start..pool.len() {
        let i = pool[pos];
        let mut next = span.clone();
        if !next.insert(b.row(i)) {
            continue;
        }
        chosen.push(i);
        collect_flats(b, pool, pos + 1, k, chosen, next, seen, out);
        chosen.pop();
    }
}

/// A chain of flats `F_1 ⊂ ... ⊂ F_k` with `rank(F_j) = j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub flats: Vec<Flat>,
}

impl Flag {
    pub fn rank(&self) -> usize {
        self.flats.len()
    }

    /// Checks `σ(F_j) ∉ <F_{j-1}>` for every `j`, together with the chain
    /// structure.
    pub fn is_non_splitting(&self, b: &GaleConfiguration) -> bool {
        let mut prev = Span::new(b.m());
        let mut prev_members: Vec<usize> = Vec::new();
        for (j, f) in self.flats.iter().enumerate() {
            if f.rank != j + 1 || closure(b, &f.members) != *f {
                return false;
            }
            if !prev_members.iter().all(|i| f.contains(*i)) || f.members == prev_members {
                return false;
            }
            if prev.contains(&f.sigma) {
                return false;
            }
            prev = span_of(b, &f.members);
            prev_members = f.members.clone();
        }
        true
    }
}

/// Depth-first search for a non-splitting `k`-flag; extensions are tried in
/// increasing row order, so the first witness in that order is returned.
pub fn find_nonsplitting_flag(b: &GaleConfiguration, k: usize) -> Option<Flag> {
    if k > b.rank() {
        return None;
    }
    let mut dead: HashSet<Vec<usize>> = HashSet::new();
    let mut stack = Vec::with_capacity(k);
    let start = Flat {
        members: Vec::new(),
        rank: 0,
        sigma: vec![BigInt::zero(); b.m()],
    };
    if extend_flag(b, &start, &Span::new(b.m()), k, &mut stack, &mut dead) {
        let flag = Flag { flats: stack };
        debug_assert!(flag.is_non_splitting(b));
        Some(flag)
    } else {
        None
    }
}

fn extend_flag(
    b: &GaleConfiguration,
    current: &Flat,
    current_span: &Span,
    k: usize,
    stack: &mut Vec<Flat>,
    dead: &mut HashSet<Vec<usize>>,
) -> bool {
    if stack.len() == k {
        return true;
    }
    let mut tried: HashSet<Vec<usize>> = HashSet::new();
    for i in 0..b.n() {
        if current.contains(i) || is_zero_vec(b.row(i)) {
            continue;
        }
        let mut span = current_span.clone();
        span.insert(b.row(i));
        let next = closure_of_span(b, &span);
        if !tried.insert(next.members.clone()) || dead.contains(&next.members) {
            continue;
        }
        if current_span.contains(&next.sigma) {
            continue;
        }
        stack.push(next.clone());
        if extend_flag(b, &next, &span, k, stack, dead) {
            return true;
        }
        stack.pop();
        dead.insert(next.members);
    }
    false
}

/// `B = C_1 ∪ ... ∪ C_s` with `ρ = Σ rank(C_i) - s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<Vec<usize>>,
    pub ranks: Vec<usize>,
    pub rho: i64,
}

/// Greedy decomposition of a homogeneous irreducible configuration.
///
/// `is_dual_defect` decides dual-defectness of a candidate part, viewed as a
/// configuration of its own rank. At every step the highest-rank homogeneous
/// non dual-defect flat of the remainder is removed (lexicographically
/// smallest member list on ties); a remainder that is itself non dual-defect
/// becomes the last part.
pub fn decompose<F>(b: &GaleConfiguration, mut is_dual_defect: F) -> Result<Decomposition>
where
    F: FnMut(&GaleConfiguration) -> Result<bool>,
{
    if !b.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if let Some((i, j)) = first_parallel_pair(b) {
        return Err(Error::NotIrreducible(i, j));
    }
    if let Some(&z) = b.zero_rows().first() {
        return Err(Error::PyramidInput(z));
    }
    let mut remaining: Vec<usize> = (0..b.n()).collect();
    let mut parts = Vec::new();
    let mut ranks = Vec::new();
    while !remaining.is_empty() {
        let sub = b.subconfiguration(&remaining);
        let sub_rank = sub.rank();
        if !is_dual_defect(&sub)? {
            parts.push(remaining.clone());
            ranks.push(sub_rank);
            break;
        }
        let mut picked: Option<Flat> = None;
        'ranks: for k in (2..sub_rank).rev() {
            for f in flats_of_rank(&sub, k) {
                if !f.is_homogeneous() {
                    continue;
                }
                let part = sub.subconfiguration(&f.members);
                if !is_dual_defect(&part)? {
                    picked = Some(f);
                    break 'ranks;
                }
            }
        }
        let f = picked.ok_or(Error::DecompositionFailed)?;
        let global: Vec<usize> = f.members.iter().map(|&i| remaining[i]).collect();
        remaining.retain(|i| !global.contains(i));
        parts.push(global);
        ranks.push(f.rank);
    }
    let rho = ranks.iter().map(|&r| r as i64).sum::<i64>() - parts.len() as i64;
    Ok(Decomposition { parts, ranks, rho })
}

/// Orthogonal projection helper: the images of `rows` in `Z^m / Z w` for a
/// primitive `w`, expressed in a basis of the quotient lattice.
pub fn project_along(rows: &[Vec<BigInt>], w: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let m = w.len();
    if is_zero_vec(w) {
        return Err(Error::ZeroVector);
    }
    let w = primitive(w);
    // Functionals vanishing on w: a basis of the kernel of the 1 x m matrix w.
    let wm = IntMatrix::from_rows(m, vec![w])?;
    let funcs = crate::lattice::kernel_lattice_basis(&wm);
    Ok(rows
        .iter()
        .map(|r| {
            funcs
                .vectors()
                .iter()
                .map(|f| crate::lattice::dot(f, r))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::cayley_of_segments;
    use crate::lattice::to_big;

    fn section3() -> GaleConfiguration {
        GaleConfiguration::from_i64(&[[0, 1], [-3, 1], [2, -3], [-1, 1], [1, 0], [3, 0], [-2, 0]])
    }

    fn twisted_cubic() -> GaleConfiguration {
        GaleConfiguration::from_i64(&[[1, 0], [-2, 1], [1, -2], [0, 1]])
    }

    #[test]
    fn classes() {
        let c = collinear_classes(&section3());
        assert_eq!(
            c.classes,
            vec![vec![0], vec![1], vec![2], vec![3], vec![4, 5, 6]]
        );
        assert!(c.zero_rows.is_empty());
        assert_eq!(collinear_classes(&twisted_cubic()).classes.len(), 4);
        let c = collinear_classes(&GaleConfiguration::from_i64(&[[1, 0], [2, 0]]));
        assert_eq!(c.classes, vec![vec![0, 1]]);
    }

    #[test]
    fn splitting() {
        let b = cayley_of_segments(&[1, 1, 1]).unwrap().gale_dual();
        assert_eq!(splitting_lines(&b).len(), 3);
        assert!(splitting_lines(&section3()).is_empty());
        assert!(splitting_lines(&twisted_cubic()).is_empty());
    }

    #[test]
    fn reduction() {
        let r = reduce_with_sources(&section3());
        assert_eq!(
            r.config,
            GaleConfiguration::from_i64(&[[0, 1], [-3, 1], [2, -3], [-1, 1], [2, 0]])
        );
        assert_eq!(r.sources[4], vec![4, 5, 6]);
        let b = cayley_of_segments(&[1, 1, 1]).unwrap().gale_dual();
        assert_eq!(reduce(&b).n(), 0);
        assert_eq!(reduce(&twisted_cubic()), twisted_cubic());
    }

    #[test]
    fn degeneracy() {
        let b = cayley_of_segments(&[1, 1, 1]).unwrap().gale_dual();
        assert!(is_degenerate(&b));
        assert!(!is_degenerate(&section3()));
        assert!(!is_degenerate(&twisted_cubic()));
    }

    #[test]
    fn closures() {
        let f = closure(&section3(), &[4]);
        assert_eq!(f.members, vec![4, 5, 6]);
        assert_eq!(f.sigma, to_big(&[2, 0]));
        assert_eq!(f.rank, 1);
        let f = closure(&section3(), &[]);
        assert!(f.members.is_empty());
        assert_eq!(f.rank, 0);
        assert_eq!(f.sigma, to_big(&[0, 0]));
        let f = closure(&section3(), &(0..7).collect::<Vec<_>>());
        assert_eq!(f.members.len(), 7);
        assert_eq!(f.rank, 2);
    }

    #[test]
    fn flat_enumeration() {
        let f1 = flats_of_rank(&section3(), 1);
        let members: Vec<_> = f1.iter().map(|f| f.members.clone()).collect();
        assert_eq!(
            members,
            vec![vec![0], vec![1], vec![2], vec![3], vec![4, 5, 6]]
        );
        let f0 = flats_of_rank(&section3(), 0);
        assert_eq!(f0.len(), 1);
        assert!(f0[0].members.is_empty());
        assert_eq!(flats_of_rank(&twisted_cubic(), 1).len(), 4);
        let f2 = flats_of_rank(&section3(), 2);
        assert_eq!(f2.len(), 1);
    }

    #[test]
    fn nonsplitting_flags() {
        let flag = find_nonsplitting_flag(&section3(), 1).unwrap();
        assert_eq!(flag.flats[0].members, vec![0]);
        assert!(flag.is_non_splitting(&section3()));
        let b = cayley_of_segments(&[1, 1, 1]).unwrap().gale_dual();
        assert!(find_nonsplitting_flag(&b, 1).is_none());
        let empty = find_nonsplitting_flag(&section3(), 0).unwrap();
        assert_eq!(empty.rank(), 0);
    }

    #[test]
    fn flag_check_rejects_splitting_chain() {
        let b = cayley_of_segments(&[1, 1, 1]).unwrap().gale_dual();
        let bad = Flag {
            flats: vec![closure(&b, &[0])],
        };
        assert!(!bad.is_non_splitting(&b));
    }

    #[test]
    fn decompose_irreducible_nondefect() {
        let d = decompose(&twisted_cubic(), |_| Ok(false)).unwrap();
        assert_eq!(d.parts, vec![vec![0, 1, 2, 3]]);
        assert_eq!(d.rho, 1);
    }

    #[test]
    fn decompose_preconditions() {
        assert_eq!(
            decompose(&section3(), |_| Ok(false)),
            Err(Error::NotIrreducible(4, 5))
        );
        let b = GaleConfiguration::from_i64(&[[1, 0], [0, 1]]);
        assert_eq!(decompose(&b, |_| Ok(false)), Err(Error::NotHomogeneous));
    }

    #[test]
    fn projection_along_line() {
        let rows: Vec<Vec<BigInt>> = section3().rows()[..4].to_vec();
        let p = project_along(&rows, &to_big(&[1, 0])).unwrap();
        assert_eq!(
            p,
            vec![to_big(&[1]), to_big(&[1]), to_big(&[-3]), to_big(&[1])]
        );
    }
}
