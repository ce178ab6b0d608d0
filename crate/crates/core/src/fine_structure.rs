//! Intervals, simplicity, connected components and substitution decomposition.
//!
//! Every involution of length at least 2 falls in exactly one of four
//! classes: an inflation of `12` (sum-decomposable), an inflation of `21`
//! (skew-decomposable), a simple permutation of length at least 4, or a proper
//! inflation of such a simple permutation. Length 1 is its own class.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::motzkin::{
    involution_of_path, path_of_involution, LabelledMotzkinPath, PathError, Step,
};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("permutation {0} is not an involution")]
    NotAnInvolution(Permutation),
    #[error(
        "{0} is outside the domain of the path criterion (must be an involution avoiding 4321)"
    )]
    OutOfDomain(Permutation),
    #[error("skeleton of length {skeleton} given {blocks} blocks")]
    ArityMismatch { skeleton: usize, blocks: usize },
    #[error("slot {slot} is outside 1..={max}")]
    PositionOutOfRange { slot: usize, max: usize },
    #[error("a permutation of length 1 has no decomposition")]
    Undecomposable,
    #[error("path {0} is not a Dyck path")]
    NotADyckPath(String),
    #[error("path {0} is not unitary")]
    NotUnitary(String),
    #[error("path {0} is not irreducible")]
    NotIrreducible(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A window `[lo, hi]` of positions whose values form a contiguous range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FineClass {
    One,
    Type12,
    Type21,
    Simple,
    InflationOfSimple,
}

impl FineClass {
    pub const ALL: [FineClass; 5] = [
        FineClass::One,
        FineClass::Type12,
        FineClass::Type21,
        FineClass::Simple,
        FineClass::InflationOfSimple,
    ];

    pub fn token(self) -> &'static str {
        match self {
            FineClass::One => "one",
            FineClass::Type12 => "type12",
            FineClass::Type21 => "type21",
            FineClass::Simple => "simple",
            FineClass::InflationOfSimple => "inflation_of_simple",
        }
    }
}

impl fmt::Display for FineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for FineClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FineClass::ALL
            .into_iter()
            .find(|c| c.token() == s)
            .ok_or_else(|| format!("unknown class {s:?}"))
    }
}

/// `skeleton[blocks]`, where the skeleton is `12`, `21` or simple of length >= 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub skeleton: Permutation,
    pub blocks: Vec<Permutation>,
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.to_compact()).collect();
        write!(f, "{}[{}]", self.skeleton.to_compact(), blocks.join(", "))
    }
}

/// All intervals of length `2..=n-1`, ordered by `(lo, hi)`.
pub fn proper_intervals(p: &Permutation) -> Vec<Interval> {
    interval_windows(p.values()).collect()
}

fn interval_windows(v: &[usize]) -> impl Iterator<Item = Interval> + '_ {
    let n = v.len();
    (0..n).flat_map(move |lo| {
        v[lo..]
            .iter()
            .scan((v[lo], v[lo]), |(min, max), &x| {
                *min = (*min).min(x);
                *max = (*max).max(x);
                Some(*max - *min)
            })
            .enumerate()
            // a window of length off + 1 is an interval when its value span is off
            .filter(move |&(off, span)| off >= 1 && off + 1 < n && span == off)
            .map(move |(off, _)| Interval {
                lo: lo + 1,
                hi: lo + off + 1,
            })
    })
}

/// Simple in the strict sense used for counting: length at least 4 and no
/// proper interval. `1`, `12` and `21` are excluded.
pub fn is_simple(p: &Permutation) -> bool {
    p.len() >= 4 && !has_proper_interval(p)
}

/// Simple including the degenerate cases `1`, `12`, `21`.
pub fn is_simple_inclusive(p: &Permutation) -> bool {
    p.len() <= 2 || is_simple(p)
}

fn has_proper_interval(p: &Permutation) -> bool {
    interval_windows(p.values()).next().is_some()
}

/// The three path conditions characterising simplicity inside I(4321):
/// irreducible, no two adjacent horizontal steps, and no `i` with both
/// `U_i U_{i+1}` and `D_i D_{i+1}` adjacent (the `i`-th up step is matched
/// with the `i`-th down step in a unitary path).
pub fn path_simplicity_criteria(path: &LabelledMotzkinPath) -> bool {
    if !path.is_irreducible() {
        return false;
    }
    let steps = path.steps();
    if steps
        .windows(2)
        .any(|w| w[0] == Step::Horizontal && w[1] == Step::Horizontal)
    {
        return false;
    }
    consecutiveness_violations(steps).is_empty()
}

/// Indices `i` (0-based) such that up steps `i, i+1` are adjacent and down
/// steps `i, i+1` are adjacent.
fn consecutiveness_violations(steps: &[Step]) -> Vec<usize> {
    let ups: Vec<usize> = positions_of(steps, Step::Up);
    let downs: Vec<usize> = positions_of(steps, Step::Down);
    (0..ups.len().saturating_sub(1))
        .filter(|&i| ups[i + 1] == ups[i] + 1 && downs[i + 1] == downs[i] + 1)
        .collect()
}

fn positions_of(steps: &[Step], which: Step) -> Vec<usize> {
    steps
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s == which)
        .map(|(i, _)| i)
        .collect()
}

/// Simplicity decided on the unitary path. Only defined for involutions
/// avoiding 4321. The length guard excludes `1`, `21` and `321`, which meet
/// the three path conditions without being simple of length >= 4.
pub fn is_simple_via_path(p: &Permutation) -> Result<bool, StructureError> {
    if !p.is_involution() || p.contains_pattern(&crate::perm::perm("4321")) {
        return Err(StructureError::OutOfDomain(p.clone()));
    }
    let path = path_of_involution(p)?;
    Ok(p.len() >= 4 && path_simplicity_criteria(&path))
}

fn restrict(p: &Permutation, lo: usize, hi: usize) -> Permutation {
    Permutation::standardize(&p.values()[lo - 1..hi]).expect("distinct values")
}

/// Cut points `c` (1-based, `c < n`) where the first `c` entries are exactly `1..=c`.
fn sum_cuts(p: &Permutation) -> Vec<usize> {
    let mut max = 0;
    let mut cuts = Vec::new();
    for (i, &v) in p.values().iter().enumerate() {
        max = max.max(v);
        if max == i + 1 && i + 1 < p.len() {
            cuts.push(i + 1);
        }
    }
    cuts
}

/// Cut points where the first `c` entries are exactly the top `c` values.
fn skew_cuts(p: &Permutation) -> Vec<usize> {
    let n = p.len();
    let mut min = usize::MAX;
    let mut cuts = Vec::new();
    for (i, &v) in p.values().iter().enumerate() {
        min = min.min(v);
        if min == n - i && i + 1 < n {
            cuts.push(i + 1);
        }
    }
    cuts
}

/// Finest split into windows `A` with `π(A) = A`, each standardized.
pub fn connected_components(p: &Permutation) -> Vec<Permutation> {
    let mut bounds = vec![0];
    bounds.extend(sum_cuts(p));
    bounds.push(p.len());
    bounds
        .windows(2)
        .map(|w| restrict(p, w[0] + 1, w[1]))
        .collect()
}

pub fn is_connected(p: &Permutation) -> bool {
    sum_cuts(p).is_empty()
}

pub fn classify(p: &Permutation) -> Result<FineClass, StructureError> {
    if !p.is_involution() {
        return Err(StructureError::NotAnInvolution(p.clone()));
    }
    Ok(classify_unchecked(p))
}

/// Classification without the involution check; valid for any permutation.
pub fn classify_unchecked(p: &Permutation) -> FineClass {
    if p.len() == 1 {
        FineClass::One
    } else if !sum_cuts(p).is_empty() {
        FineClass::Type12
    } else if !skew_cuts(p).is_empty() {
        FineClass::Type21
    } else if is_simple(p) {
        FineClass::Simple
    } else {
        FineClass::InflationOfSimple
    }
}

/// `σ[α₁, …, α_k]`.
pub fn inflate(
    skeleton: &Permutation,
    blocks: &[Permutation],
) -> Result<Permutation, StructureError> {
    let k = skeleton.len();
    if blocks.len() != k {
        return Err(StructureError::ArityMismatch {
            skeleton: k,
            blocks: blocks.len(),
        });
    }
    // offset[v] = total length of blocks whose skeleton value is below v
    let mut by_value = vec![0; k + 1];
    for (i, &v) in skeleton.values().iter().enumerate() {
        by_value[v] = blocks[i].len();
    }
    let mut offset = vec![0; k + 1];
    for v in 2..=k {
        offset[v] = offset[v - 1] + by_value[v - 1];
    }
    let values = skeleton
        .values()
        .iter()
        .zip(blocks)
        .flat_map(|(&v, b)| {
            let shift = offset[v];
            b.values().iter().map(move |&x| x + shift)
        })
        .collect();
    Ok(Permutation::from_vec_unchecked(values))
}

/// Canonical decomposition. Sum- and skew-decomposable permutations split
/// off their shortest leading component: `12[α₁, rest]` and `21[α₁, rest]`.
/// Otherwise the blocks are the maximal proper intervals and the skeleton is simple.
pub fn skeleton_decomposition(p: &Permutation) -> Result<Decomposition, StructureError> {
    let n = p.len();
    if n == 1 {
        return Err(StructureError::Undecomposable);
    }
    let split = |cut: usize, skeleton: &str| Decomposition {
        skeleton: crate::perm::perm(skeleton),
        blocks: vec![restrict(p, 1, cut), restrict(p, cut + 1, n)],
    };
    if let Some(&cut) = sum_cuts(p).first() {
        return Ok(split(cut, "12"));
    }
    if let Some(&cut) = skew_cuts(p).first() {
        return Ok(split(cut, "21"));
    }
    let intervals = proper_intervals(p);
    let maximal: Vec<Interval> = intervals
        .iter()
        .filter(|a| !intervals.iter().any(|b| b != *a && b.contains(a)))
        .copied()
        .collect();
    let mut windows = Vec::new();
    let mut pos = 1;
    for iv in &maximal {
        debug_assert!(
            iv.lo >= pos,
            "maximal intervals of a simple quotient are disjoint"
        );
        while pos < iv.lo {
            windows.push(Interval { lo: pos, hi: pos });
            pos += 1;
        }
        windows.push(*iv);
        pos = iv.hi + 1;
    }
    while pos <= n {
        windows.push(Interval { lo: pos, hi: pos });
        pos += 1;
    }
    let representatives: Vec<usize> = windows.iter().map(|w| p.at(w.lo)).collect();
    let skeleton = Permutation::standardize(&representatives)?;
    let blocks = windows.iter().map(|w| restrict(p, w.lo, w.hi)).collect();
    Ok(Decomposition { skeleton, blocks })
}

/// Insert a fixed point into an involution by adding a horizontal step to its
/// path at `slot` (1-based step index in the new path, `1..=n+1`).
pub fn insert_fixed_point(p: &Permutation, slot: usize) -> Result<Permutation, StructureError> {
    let path = path_of_involution(p).map_err(|_| StructureError::NotAnInvolution(p.clone()))?;
    let max = p.len() + 1;
    if slot == 0 || slot > max {
        return Err(StructureError::PositionOutOfRange { slot, max });
    }
    let mut steps = path.steps().to_vec();
    steps.insert(slot - 1, Step::Horizontal);
    let widened = LabelledMotzkinPath::new(steps, path.labels().to_vec())?;
    Ok(involution_of_path(&widened))
}

/// Turn the unitary Dyck path of an irreducible involution avoiding 321 into
/// the path of a simple involution avoiding 4321, inserting one horizontal
/// step between `U_i` and `U_{i+1}` for each `i` where both those up steps
/// and the matching down steps are adjacent.
pub fn break_consecutiveness(
    path: &LabelledMotzkinPath,
) -> Result<LabelledMotzkinPath, StructureError> {
    if path.steps().contains(&Step::Horizontal) {
        return Err(StructureError::NotADyckPath(path.to_string()));
    }
    if !path.is_unitary() {
        return Err(StructureError::NotUnitary(path.to_string()));
    }
    if !path.is_irreducible() {
        return Err(StructureError::NotIrreducible(path.to_string()));
    }
    let ups = positions_of(path.steps(), Step::Up);
    let violations = consecutiveness_violations(path.steps());
    let mut steps = Vec::with_capacity(path.len() + violations.len());
    let mut breaks = violations.iter().map(|&i| ups[i]).peekable();
    for (i, &s) in path.steps().iter().enumerate() {
        steps.push(s);
        if breaks.peek() == Some(&i) {
            breaks.next();
            steps.push(Step::Horizontal);
        }
    }
    Ok(LabelledMotzkinPath::unitary(steps)?)
}

/// Lower connections: adjacent positions `j, j+1` that are both deficiencies.
/// Upper connections: adjacent positions that are both excedances.
/// Returned as the left position `j`.
pub fn lower_connections(p: &Permutation) -> Vec<usize> {
    adjacent_positions(p, |pos, v| v < pos)
}

pub fn upper_connections(p: &Permutation) -> Vec<usize> {
    adjacent_positions(p, |pos, v| v > pos)
}

fn adjacent_positions(p: &Permutation, keep: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    (1..p.len())
        .filter(|&j| keep(j, p.at(j)) && keep(j + 1, p.at(j + 1)))
        .collect()
}

/// An upper connection at `j, j+1` whose mirror image `π(j), π(j+1)` is a
/// lower connection.
pub fn has_symmetric_connections(p: &Permutation) -> bool {
    upper_connections(p)
        .into_iter()
        .any(|j| p.at(j).abs_diff(p.at(j + 1)) == 1)
}

/// Connection/consecutiveness correspondence for involutions. With the
/// transpositions `(m_i, M_i)` indexed by increasing `m_i`:
/// the deficiencies at `M_a, M_b` are lower-connected with `M_b = M_a + 1`
/// exactly when `b = a + 1`; symmetrically, with transpositions indexed by
/// increasing `M_i`, excedances at `m_a, m_b` are upper-connected with
/// `m_b = m_a + 1` exactly when `b = a + 1`.
pub fn connections_match_consecutive_pairs(p: &Permutation) -> Result<bool, StructureError> {
    let cycles = p
        .cycle_decomposition()
        .map_err(|_| StructureError::NotAnInvolution(p.clone()))?;
    let mut by_small = cycles.transpositions.clone();
    by_small.sort();
    let mut by_large: Vec<(usize, usize)> = cycles
        .transpositions
        .iter()
        .map(|&(m, big)| (big, m))
        .collect();
    by_large.sort();

    let check = |pairs: &[(usize, usize)], connected: &[usize]| {
        // index of the pair whose far end sits at each position
        let mut owner = vec![usize::MAX; p.len() + 2];
        for (i, &(_, far)) in pairs.iter().enumerate() {
            owner[far] = i;
        }
        let forward = connected
            .iter()
            .all(|&j| owner[j + 1] == owner[j].wrapping_add(1));
        let backward = pairs
            .windows(2)
            .filter(|w| w[1].1 == w[0].1 + 1)
            .all(|w| connected.contains(&w[0].1));
        forward && backward
    };
    Ok(check(&by_small, &lower_connections(p)) && check(&by_large, &upper_connections(p)))
}

/// The 21-inflation normal forms available inside I(4321):
/// `21[1..k, 1..k]` or `321[1..k, 1..m, 1..k]`.
pub fn type21_normal_form(p: &Permutation) -> Option<Decomposition> {
    let n = p.len();
    let id = Permutation::identity;
    for k in 1..=n / 2 {
        if 2 * k == n {
            let blocks = vec![id(k), id(k)];
            if inflate(&crate::perm::perm("21"), &blocks).ok().as_ref() == Some(p) {
                return Some(Decomposition {
                    skeleton: crate::perm::perm("21"),
                    blocks,
                });
            }
        } else if 2 * k < n {
            let blocks = vec![id(k), id(n - 2 * k), id(k)];
            if inflate(&crate::perm::perm("321"), &blocks).ok().as_ref() == Some(p) {
                return Some(Decomposition {
                    skeleton: crate::perm::perm("321"),
                    blocks,
                });
            }
        }
    }
    None
}
