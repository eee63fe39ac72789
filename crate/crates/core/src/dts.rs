//! Difference triangle sets.
//!
//! A family of integer sets is a *weak* DTS when the positive differences
//! inside each set are pairwise distinct, a DTS when additionally those
//! difference sets are disjoint across the family, and *strong* when every
//! difference lies in `1..=M` for the difference budget `M`. A *full* strong
//! DTS uses every value in `1..=M` exactly once.
//!
//! Internally every set holds 0-based delay exponents. Tables of DTS
//! sets are usually written 1-based; [`SupportSet::from_one_based`]
//! converts at the boundary.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;

/// A finite set of distinct non-negative delay exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet(Vec<u32>);

impl SupportSet {
    /// Builds a set from arbitrary-order elements, rejecting duplicates.
    pub fn new<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut v: Vec<u32> = elements.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0]));
        }
        Ok(Self(v))
    }

    /// Converts the 1-based "DTS set" notation (`t` means `D^(t-1)`).
    pub fn from_one_based<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut shifted = Vec::new();
        for t in elements {
            if t == 0 {
                return Err(Error::AlreadyZeroBased);
            }
            shifted.push(t - 1);
        }
        Self::new(shifted)
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.0.iter().map(|t| t + 1).collect()
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn contains(&self, t: u32) -> bool {
        self.0.binary_search(&t).is_ok()
    }

    /// All `C(w, 2)` positive differences, with multiplicity, in pair order
    /// `(0,1), (0,2), ..., (1,2), ...`.
    pub fn positive_differences(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.len() * self.0.len().saturating_sub(1) / 2);
        for (i, &a) in self.0.iter().enumerate() {
            for &b in &self.0[i + 1..] {
                out.push(b - a);
            }
        }
        out
    }

    /// Translates so the minimum element is 0.
    pub fn normalize(&self) -> Self {
        let lo = self.smallest().unwrap_or(0);
        Self(self.0.iter().map(|t| t - lo).collect())
    }

    /// Reflection `a -> bound - a` inside `[0, bound]`.
    pub fn reflect(&self, bound: u32) -> Result<Self> {
        if let Some(&a) = self.0.iter().find(|&&a| a > bound) {
            return Err(Error::ReversalWindow {
                exponent: a.into(),
                window: bound.into(),
            });
        }
        Ok(Self(self.0.iter().rev().map(|a| bound - a).collect()))
    }

    pub fn to_poly(&self) -> Gf2Poly {
        Gf2Poly::from_support(self.0.iter().copied())
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Levels of the DTS hierarchy, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classification {
    NotWdts,
    Wdts,
    Dts,
    Strong,
    FullStrong,
}

impl Classification {
    /// True for `Strong` and `FullStrong`.
    pub fn is_strong(self) -> bool {
        self >= Classification::Strong
    }

    pub fn label(self) -> &'static str {
        match self {
            Classification::NotWdts => "NOT_WDTS",
            Classification::Wdts => "WDTS",
            Classification::Dts => "DTS",
            Classification::Strong => "STRONG",
            Classification::FullStrong => "FULL_STRONG",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A difference value appearing twice: inside set `first == second`, or
/// shared between two sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Collision {
    pub difference: u32,
    pub first: usize,
    pub second: usize,
}

impl fmt::Display for Collision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.second {
            write!(
                f,
                "difference {} repeated inside set {}",
                self.difference,
                self.first + 1
            )
        } else {
            write!(
                f,
                "difference {} shared by sets {} and {}",
                self.difference,
                self.first + 1,
                self.second + 1
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub classification: Classification,
    /// Difference budget `M` (strong and full-strong verdicts only).
    pub budget: Option<u32>,
    pub collisions: Vec<Collision>,
}

/// Finds within-set and cross-set difference collisions among `sets`.
///
/// Works on raw difference lists so it can also serve the CSOC check on
/// polynomial supports.
pub(crate) fn difference_collisions(diffs: &[Vec<u32>]) -> (Vec<Collision>, Vec<Collision>) {
    let mut within = Vec::new();
    let mut across = Vec::new();
    // first owning set of each difference value
    let mut owner: HashMap<u32, usize> = HashMap::new();
    for (i, ds) in diffs.iter().enumerate() {
        let mut seen_here: Vec<u32> = Vec::new();
        for &d in ds {
            if seen_here.contains(&d) {
                within.push(Collision {
                    difference: d,
                    first: i,
                    second: i,
                });
                continue;
            }
            seen_here.push(d);
            match owner.get(&d) {
                Some(&j) => across.push(Collision {
                    difference: d,
                    first: j,
                    second: i,
                }),
                None => {
                    owner.insert(d, i);
                }
            }
        }
    }
    within.sort();
    across.sort();
    (within, across)
}

fn check_family(sets: &[SupportSet]) -> Result<usize> {
    let first = sets.first().ok_or(Error::EmptyFamily)?;
    let w = first.weight();
    if w == 0 {
        return Err(Error::EmptySet);
    }
    if let Some(s) = sets.iter().find(|s| s.weight() != w) {
        return Err(Error::UnequalCardinality(w, s.weight()));
    }
    Ok(w)
}

/// Classifies a family with the tightest budget, `M` = largest difference.
pub fn classify(sets: &[SupportSet]) -> Result<Verdict> {
    classify_with_budget(sets, None)
}

/// Classifies a family; with `Some(cap)` the strong levels require every
/// difference to be at most `cap` and `M = cap`.
pub fn classify_with_budget(sets: &[SupportSet], cap: Option<u32>) -> Result<Verdict> {
    let w = check_family(sets)?;
    let diffs: Vec<Vec<u32>> = sets.iter().map(SupportSet::positive_differences).collect();
    let (within, across) = difference_collisions(&diffs);
    let mut collisions: Vec<Collision> = within.iter().chain(&across).copied().collect();
    collisions.sort();

    if !within.is_empty() {
        return Ok(Verdict {
            classification: Classification::NotWdts,
            budget: None,
            collisions,
        });
    }
    if w == 1 {
        // no differences at all
        return Ok(Verdict {
            classification: Classification::Wdts,
            budget: None,
            collisions,
        });
    }
    if !across.is_empty() {
        return Ok(Verdict {
            classification: Classification::Wdts,
            budget: None,
            collisions,
        });
    }
    let largest = diffs.iter().flatten().copied().max().unwrap_or(0);
    let budget = cap.unwrap_or(largest);
    if largest > budget {
        return Ok(Verdict {
            classification: Classification::Dts,
            budget: None,
            collisions,
        });
    }
    let total: usize = diffs.iter().map(Vec::len).sum();
    // disjoint and duplicate-free, so coverage of 1..=M is a count check
    let classification = if total == budget as usize {
        Classification::FullStrong
    } else {
        Classification::Strong
    };
    if classification == Classification::FullStrong {
        debug_assert_eq!(sets.len() * w * (w - 1) / 2, budget as usize);
    }
    Ok(Verdict {
        classification,
        budget: Some(budget),
        collisions,
    })
}

/// An ordered family of equal-cardinality support sets together with its
/// (recomputed) classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtsFamily {
    sets: Vec<SupportSet>,
    weight: usize,
    scope: u32,
    verdict: Verdict,
}

impl DtsFamily {
    pub fn new(sets: Vec<SupportSet>) -> Result<Self> {
        let verdict = classify(&sets)?;
        let weight = sets[0].weight();
        let scope = sets
            .iter()
            .filter_map(SupportSet::largest)
            .max()
            .unwrap_or(0);
        Ok(Self {
            sets,
            weight,
            scope,
            verdict,
        })
    }

    /// Family from 0-based exponent lists.
    pub fn from_zero_based(sets: &[Vec<u32>]) -> Result<Self> {
        let sets = sets
            .iter()
            .map(|s| SupportSet::new(s.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets)
    }

    /// Family from 1-based DTS-set lists.
    pub fn from_one_based(sets: &[Vec<u32>]) -> Result<Self> {
        let sets = sets
            .iter()
            .map(|s| SupportSet::from_one_based(s.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets)
    }

    pub fn sets(&self) -> &[SupportSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Largest exponent in the family.
    pub fn scope(&self) -> u32 {
        self.scope
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    pub fn classification(&self) -> Classification {
        self.verdict.classification
    }

    pub fn budget(&self) -> Option<u32> {
        self.verdict.budget
    }

    /// The family with each set translated to start at 0.
    pub fn normalized(&self) -> Self {
        Self::new(self.sets.iter().map(SupportSet::normalize).collect())
            .expect("normalizing preserves cardinalities")
    }

    /// Sets sorted lexicographically; equality of these means equality as
    /// unordered families.
    pub fn canonical_sets(&self) -> Vec<SupportSet> {
        let mut v = self.sets.clone();
        v.sort();
        v
    }

    pub fn same_sets_unordered(&self, other: &DtsFamily) -> bool {
        self.canonical_sets() == other.canonical_sets()
    }

    /// Sorted difference multisets of each set, themselves sorted: the
    /// family's difference spectrum as a multiset of multisets.
    pub fn difference_spectrum(&self) -> Vec<Vec<u32>> {
        let mut spec: Vec<Vec<u32>> = self
            .sets
            .iter()
            .map(|s| {
                let mut d = s.positive_differences();
                d.sort_unstable();
                d
            })
            .collect();
        spec.sort();
        spec
    }
}

impl fmt::Display for DtsFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Small growable bitset over difference values.
#[derive(Clone)]
struct DiffMask(Vec<u64>);

impl DiffMask {
    fn with_capacity(max: u32) -> Self {
        Self(vec![0; max as usize / 64 + 1])
    }

    fn from_values(max: u32, values: &[u32]) -> Self {
        let mut m = Self::with_capacity(max);
        for &v in values {
            m.0[v as usize / 64] |= 1 << (v % 64);
        }
        m
    }

    fn intersects(&self, other: &DiffMask) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    fn union_with(&mut self, other: &DiffMask) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn remove(&mut self, other: &DiffMask) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }
}

/// Normalized `w`-sets within `[0, max_scope]` whose internal differences are
/// distinct, in lexicographic order.
fn ruler_candidates(w: usize, max_scope: u32) -> Vec<(SupportSet, DiffMask)> {
    fn extend(
        current: &mut Vec<u32>,
        used: &mut Vec<bool>,
        w: usize,
        max_scope: u32,
        out: &mut Vec<(SupportSet, DiffMask)>,
    ) {
        if current.len() == w {
            let set = SupportSet(current.clone());
            let mask = DiffMask::from_values(max_scope, &set.positive_differences());
            out.push((set, mask));
            return;
        }
        let start = current.last().map_or(0, |&l| l + 1);
        for next in start..=max_scope {
            let new_diffs: Vec<u32> = current.iter().map(|&c| next - c).collect();
            if new_diffs.iter().any(|&d| used[d as usize]) {
                continue;
            }
            for &d in &new_diffs {
                used[d as usize] = true;
            }
            current.push(next);
            extend(current, used, w, max_scope, out);
            current.pop();
            for &d in &new_diffs {
                used[d as usize] = false;
            }
        }
    }

    let mut out = Vec::new();
    let mut used = vec![false; max_scope as usize + 1];
    let mut current = vec![0];
    extend(&mut current, &mut used, w, max_scope, &mut out);
    out
}

/// Lazy enumeration of strong DTS families; see [`search_strong_dts`].
pub struct StrongDtsSearch {
    candidates: Vec<(SupportSet, DiffMask)>,
    r: usize,
    // candidate indices of the partial family
    stack: Vec<usize>,
    // next candidate index to try at the current depth
    cursor: usize,
    used: DiffMask,
    done: bool,
}

impl Iterator for StrongDtsSearch {
    type Item = DtsFamily;

    fn next(&mut self) -> Option<DtsFamily> {
        while !self.done {
            if self.stack.len() == self.r {
                let sets = self
                    .stack
                    .iter()
                    .map(|&i| self.candidates[i].0.clone())
                    .collect();
                self.backtrack();
                let family = DtsFamily::new(sets).expect("candidates share weight");
                debug_assert!(family.classification().is_strong());
                return Some(family);
            }
            match (self.cursor..self.candidates.len())
                .find(|&i| !self.candidates[i].1.intersects(&self.used))
            {
                Some(i) => {
                    self.used.union_with(&self.candidates[i].1);
                    self.stack.push(i);
                    self.cursor = i + 1;
                }
                None => self.backtrack(),
            }
        }
        None
    }
}

impl StrongDtsSearch {
    fn backtrack(&mut self) {
        match self.stack.pop() {
            Some(i) => {
                self.used.remove(&self.candidates[i].1);
                self.cursor = i + 1;
            }
            None => self.done = true,
        }
    }
}

/// Every family of `r` normalized `w`-sets with scope at most `max_scope`
/// that classifies as strong, in lexicographic order of the sorted family.
/// Each unordered family is produced once.
///
/// Returns an empty stream when `r == 0`, `w < 2` or `max_scope < w - 1`.
pub fn search_strong_dts(r: usize, w: usize, max_scope: u32) -> StrongDtsSearch {
    let feasible = r >= 1 && w >= 2 && (max_scope as usize) + 1 >= w;
    let candidates = if feasible {
        ruler_candidates(w, max_scope)
    } else {
        Vec::new()
    };
    StrongDtsSearch {
        candidates,
        r,
        stack: Vec::new(),
        cursor: 0,
        used: DiffMask::with_capacity(max_scope),
        done: !feasible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &[u32]) -> SupportSet {
        SupportSet::new(e.iter().copied()).unwrap()
    }

    fn fam(sets: &[&[u32]]) -> Vec<SupportSet> {
        sets.iter().map(|s| set(s)).collect()
    }

    #[test]
    fn positive_differences_examples() {
        assert_eq!(set(&[0, 1, 3]).positive_differences(), vec![1, 3, 2]);
        assert!(set(&[0]).positive_differences().is_empty());
        assert_eq!(
            set(&[0, 5, 13, 22]).positive_differences(),
            vec![5, 13, 22, 8, 17, 9]
        );
    }

    #[test]
    fn classify_examples() {
        let v = classify(&fam(&[&[0, 1], &[0, 2]])).unwrap();
        assert_eq!(v.classification, Classification::FullStrong);
        assert_eq!(v.budget, Some(2));
        assert!(v.classification.is_strong());

        let v = classify(&fam(&[&[0, 1], &[0, 1]])).unwrap();
        assert_eq!(v.classification, Classification::Wdts);
        assert_eq!(
            v.collisions,
            vec![Collision {
                difference: 1,
                first: 0,
                second: 1
            }]
        );

        let v = classify(&fam(&[&[0, 1, 3], &[0, 4, 9]])).unwrap();
        assert_eq!(v.classification, Classification::Strong);
        assert_eq!(v.budget, Some(9));
    }

    #[test]
    fn classify_errors_and_edges() {
        assert_eq!(
            classify(&fam(&[&[0, 1], &[0, 2, 3]])),
            Err(Error::UnequalCardinality(2, 3))
        );
        assert_eq!(classify(&[]), Err(Error::EmptyFamily));
        let v = classify(&fam(&[&[0, 1, 2]])).unwrap();
        assert_eq!(v.classification, Classification::NotWdts);
        assert_eq!(v.collisions[0].first, v.collisions[0].second);
        assert_eq!(
            classify(&fam(&[&[0], &[3]])).unwrap().classification,
            Classification::Wdts
        );
    }

    #[test]
    fn explicit_budget() {
        let sets = fam(&[&[0, 1, 3], &[0, 4, 9]]);
        let v = classify_with_budget(&sets, Some(8)).unwrap();
        assert_eq!(v.classification, Classification::Dts);
        let v = classify_with_budget(&sets, Some(12)).unwrap();
        assert_eq!(v.classification, Classification::Strong);
        assert_eq!(v.budget, Some(12));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(set(&[1, 2, 4]).normalize(), set(&[0, 1, 3]));
        assert_eq!(set(&[0, 5]).normalize(), set(&[0, 5]));
        assert_eq!(set(&[7, 9, 10]).normalize(), set(&[0, 2, 3]));
    }

    #[test]
    fn from_one_based_examples() {
        assert_eq!(
            SupportSet::from_one_based([1, 5, 10]).unwrap(),
            set(&[0, 4, 9])
        );
        assert_eq!(SupportSet::from_one_based([1]).unwrap(), set(&[0]));
        assert_eq!(
            SupportSet::from_one_based([1, 6, 14, 23]).unwrap(),
            set(&[0, 5, 13, 22])
        );
        assert_eq!(
            SupportSet::from_one_based([0, 2]),
            Err(Error::AlreadyZeroBased)
        );
    }

    #[test]
    fn duplicate_elements_rejected() {
        assert_eq!(SupportSet::new([3, 1, 3]), Err(Error::DuplicateElement(3)));
    }

    #[test]
    fn search_examples() {
        let found: Vec<DtsFamily> = search_strong_dts(2, 2, 2).collect();
        assert!(found
            .iter()
            .any(|f| f.sets() == fam(&[&[0, 1], &[0, 2]]).as_slice()));

        let found: Vec<DtsFamily> = search_strong_dts(1, 2, 1).collect();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].sets(), fam(&[&[0, 1]]).as_slice());

        assert_eq!(search_strong_dts(2, 2, 1).count(), 0);
    }

    #[test]
    fn search_degenerate_parameters_are_empty() {
        assert_eq!(search_strong_dts(0, 2, 5).count(), 0);
        assert_eq!(search_strong_dts(1, 1, 5).count(), 0);
        assert_eq!(search_strong_dts(1, 4, 2).count(), 0);
    }

    #[test]
    fn search_order_is_lexicographic() {
        let found: Vec<Vec<SupportSet>> = search_strong_dts(2, 3, 9)
            .map(|f| f.sets().to_vec())
            .collect();
        assert!(!found.is_empty());
        for pair in found.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        for f in &found {
            assert!(f.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn difference_spectrum_is_order_free() {
        let a = DtsFamily::new(fam(&[&[0, 1, 3], &[0, 4, 9]])).unwrap();
        let b = DtsFamily::new(fam(&[&[0, 5, 9], &[6, 8, 9]])).unwrap();
        assert_eq!(a.difference_spectrum(), b.difference_spectrum());
    }
}
