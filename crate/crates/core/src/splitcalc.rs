//! Splitting types of bundles on the projective line and their partition calculus.
//!
//! A [`SplitType`] is the multiset of line-bundle degrees of a direct sum
//! decomposition; a [`Partition`] is the same data grouped into blocks of
//! equal degree (the Harder-Narasimhan blocks). Everything here is exact
//! integer arithmetic: balancedness, cohomology of twists, endomorphism
//! bundles, the elementary modification rules on partitions, and the
//! closed-form kernel/extension rules for general maps. The `oracle` module
//! recomputes the same quantities from explicit matrices; tests hold the two
//! against each other.

use crate::error::SplitError;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Non-increasing list of summand degrees of a split bundle on the line.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SplitType {
    degrees: Vec<i64>,
}

impl fmt::Debug for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SplitType{}", self)
    }
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", d)?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<i64>> for SplitType {
    type Error = SplitError;
    fn try_from(v: Vec<i64>) -> Result<Self, SplitError> {
        SplitType::new(v)
    }
}

impl From<SplitType> for Vec<i64> {
    fn from(s: SplitType) -> Vec<i64> {
        s.degrees
    }
}

/// Report of [`SplitType::balance_info`]: balancedness plus upper-subbundle data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalanceInfo {
    pub balanced: bool,
    /// Multiplicity of the top degree.
    pub upper_rank: usize,
    /// The top degree itself.
    pub upper_degree: i64,
    /// Round-down of the slope, `floor(c1 / rank)`.
    pub slope_floor: i64,
    /// True when all summands share one degree.
    pub twist_of_trivial: bool,
}

impl SplitType {
    /// Builds a splitting type from an arbitrary list of degrees.
    ///
    /// The list is sorted non-increasing; an empty list is rejected.
    pub fn new(degrees: impl Into<Vec<i64>>) -> Result<Self, SplitError> {
        let mut degrees = degrees.into();
        if degrees.is_empty() {
            return Err(SplitError::EmptyDegrees);
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SplitType { degrees })
    }

    /// The unique balanced type of the given rank and degree.
    pub fn balanced_of(rank: usize, degree: i64) -> Self {
        assert!(rank >= 1, "rank must be positive");
        let r = rank as i64;
        let floor = degree.div_euclid(r);
        let rem = (degree - r * floor) as usize;
        let mut degrees = vec![floor + 1; rem];
        degrees.extend(std::iter::repeat_n(floor, rank - rem));
        SplitType { degrees }
    }

    /// `rank` copies of degree `a`.
    pub fn uniform(rank: usize, a: i64) -> Self {
        assert!(rank >= 1, "rank must be positive");
        SplitType {
            degrees: vec![a; rank],
        }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// First Chern class: the sum of the degrees.
    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn max_degree(&self) -> i64 {
        self.degrees[0]
    }

    pub fn min_degree(&self) -> i64 {
        *self.degrees.last().unwrap()
    }

    pub fn slope_floor(&self) -> i64 {
        self.degree().div_euclid(self.rank() as i64)
    }

    /// Balanced means all summand degrees within 1 of each other.
    pub fn is_balanced(&self) -> bool {
        self.max_degree() - self.min_degree() <= 1
    }

    pub fn is_twist_of_trivial(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    pub fn balance_info(&self) -> BalanceInfo {
        let upper_degree = self.max_degree();
        let upper_rank = self
            .degrees
            .iter()
            .take_while(|&&d| d == upper_degree)
            .count();
        BalanceInfo {
            balanced: self.is_balanced(),
            upper_rank,
            upper_degree,
            slope_floor: self.slope_floor(),
            twist_of_trivial: upper_rank == self.rank(),
        }
    }

    /// `(h0, h1)` of the bundle twisted by `t`.
    ///
    /// Summand-wise: `h0 = sum max(0, a_i + t + 1)`, `h1 = sum max(0, -a_i - t - 1)`,
    /// so `h0 - h1 = c1 + rank * (t + 1)` is the Euler characteristic.
    pub fn cohomology(&self, t: i64) -> (i64, i64) {
        let mut h0 = 0;
        let mut h1 = 0;
        for &a in &self.degrees {
            h0 += (a + t + 1).max(0);
            h1 += (-a - t - 1).max(0);
        }
        (h0, h1)
    }

    /// Summand degrees of `Hom(E, E)`: all pairwise differences `a_i - a_j`.
    pub fn end_bundle(&self) -> SplitType {
        let mut degrees = Vec::with_capacity(self.rank() * self.rank());
        for &a in &self.degrees {
            for &b in &self.degrees {
                degrees.push(a - b);
            }
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplitType { degrees }
    }

    /// Dual bundle: degrees negated.
    pub fn dual(&self) -> SplitType {
        let mut degrees: Vec<i64> = self.degrees.iter().map(|&a| -a).collect();
        degrees.reverse();
        SplitType { degrees }
    }

    /// Twist by `O(t)`: every degree shifts by `t`.
    pub fn twist(&self, t: i64) -> SplitType {
        SplitType {
            degrees: self.degrees.iter().map(|&a| a + t).collect(),
        }
    }

    /// Direct sum, re-sorted.
    pub fn direct_sum(&self, other: &SplitType) -> SplitType {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplitType { degrees }
    }

    /// Harder-Narasimhan block form of the degree multiset.
    pub fn partition(&self) -> Partition {
        let mut blocks: Vec<(i64, usize)> = Vec::new();
        for &a in &self.degrees {
            match blocks.last_mut() {
                Some((h, w)) if *h == a => *w += 1,
                _ => blocks.push((a, 1)),
            }
        }
        Partition { blocks }
    }
}

/// Block form of a splitting type: strictly decreasing heights with positive
/// widths. Heights may be negative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<(i64, usize)>,
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (h, w)) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}^{}", h, w)?;
        }
        write!(f, "]")
    }
}

impl Partition {
    pub fn blocks(&self) -> &[(i64, usize)] {
        &self.blocks
    }

    /// Total width (= rank of the originating splitting type).
    pub fn width(&self) -> usize {
        self.blocks.iter().map(|&(_, w)| w).sum()
    }

    pub fn degree(&self) -> i64 {
        self.blocks.iter().map(|&(h, w)| h * w as i64).sum()
    }

    /// Back to the splitting type; the round trip is the identity.
    pub fn split_type(&self) -> SplitType {
        let mut degrees = Vec::with_capacity(self.width());
        for &(h, w) in &self.blocks {
            degrees.extend(std::iter::repeat_n(h, w));
        }
        SplitType { degrees }
    }

    /// The elementary modification of type `k`.
    ///
    /// Inductively: one step up raises a copy of the minimum degree by 1,
    /// one step down lowers a copy of the maximum by 1. This realizes the
    /// lexicographically smallest partition of the same width, with degree
    /// shifted by `k`, containing (`k > 0`) or contained in (`k < 0`) the
    /// original.
    pub fn modify(&self, k: i64) -> Partition {
        let mut degrees: Vec<i64> = self.split_type().degrees;
        if k >= 0 {
            for _ in 0..k {
                let min = *degrees.last().unwrap();
                let first_min = degrees.iter().position(|&d| d == min).unwrap();
                degrees[first_min] += 1;
            }
        } else {
            for _ in 0..(-k) {
                let max = degrees[0];
                let last_max = degrees.iter().rposition(|&d| d == max).unwrap();
                degrees[last_max] -= 1;
            }
        }
        SplitType { degrees }.partition()
    }

    /// Lexicographic comparison of the full degree sequences.
    ///
    /// Only partitions of equal width are comparable; this order refines the
    /// dominance order governing specialization of bundles.
    pub fn lex_cmp(&self, other: &Partition) -> Result<Ordering, SplitError> {
        if self.width() != other.width() {
            return Err(SplitError::WidthMismatch(self.width(), other.width()));
        }
        Ok(self.split_type().degrees.cmp(&other.split_type().degrees))
    }
}

/// Direction of an elementary modification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Down,
    Up,
}

/// Splitting type of a general elementary modification of total colength
/// `colength`.
///
/// General position against the Harder-Narasimhan blocks gives partition
/// `M_{-s}` (down) or `M_{+s}` (up); no point placement is tracked, so a
/// colength-`s` modification spread over `s` general points and the same
/// total colength in general position are identified.
pub fn general_modification(
    s: &SplitType,
    colength: i64,
    direction: Direction,
) -> Result<SplitType, SplitError> {
    if colength <= 0 {
        return Err(SplitError::NonPositiveColength(colength));
    }
    let k = match direction {
        Direction::Down => -colength,
        Direction::Up => colength,
    };
    Ok(s.partition().modify(k).split_type())
}

/// Splitting type of the kernel of a general surjection `S -> O(m)`.
///
/// Needs `rank >= 2` and `m` at least the top degree of `S` (otherwise a
/// general map is not a general surjection). The kernel profile is the
/// clamped difference of section counts, which for balanced `S` collapses to
/// the unique balanced type of rank `r - 1` and degree `c1 - m`.
pub fn general_kernel(s: &SplitType, m: i64) -> Result<SplitType, SplitError> {
    if s.rank() < 2 {
        return Err(SplitError::RankOneKernel);
    }
    let a_plus = s.max_degree();
    if m < a_plus {
        return Err(SplitError::SurjectivityNotGeneral { m, a_plus });
    }
    if s.is_balanced() {
        return Ok(SplitType::balanced_of(s.rank() - 1, s.degree() - m));
    }
    // Maximal-rank profile: h0(K(t)) = max(0, h0(S(t)) - h0(O(m + t))).
    let r = s.rank() as i64;
    let lo = -a_plus - 2;
    let span = (s.degree() - m).abs() + a_plus.abs() * r + m.abs() + 4;
    let hi = lo + span;
    let profile: Vec<i64> = (lo..=hi)
        .map(|t| {
            let h_s = s.cohomology(t).0;
            let h_l = (m + t + 1).max(0);
            (h_s - h_l).max(0)
        })
        .collect();
    let kernel = split_from_profile(lo, &profile).expect("clamped kernel profile is consistent");
    debug_assert_eq!(kernel.rank(), s.rank() - 1);
    debug_assert_eq!(kernel.degree(), s.degree() - m);
    Ok(kernel)
}

/// Splitting type of a general extension of `s2` by `s1`.
///
/// Under equal slope floors the extension splits and is the balanced type of
/// the combined rank and degree; a floor mismatch is rejected because the
/// conclusion is no longer guaranteed.
pub fn balanced_extension(s1: &SplitType, s2: &SplitType) -> Result<SplitType, SplitError> {
    for s in [s1, s2] {
        if !s.is_balanced() {
            return Err(SplitError::ExtensionInputNotBalanced(s.degrees.clone()));
        }
    }
    let (f1, f2) = (s1.slope_floor(), s2.slope_floor());
    if f1 != f2 {
        return Err(SplitError::FloorMismatch(f1, f2));
    }
    Ok(SplitType::balanced_of(
        s1.rank() + s2.rank(),
        s1.degree() + s2.degree(),
    ))
}

/// Recovers a splitting type from its `h0` profile on a twist window.
///
/// `profile[i]` is `h0` at twist `lo + i`. The window must start with two
/// zero values (so it reaches below the top summand), the profile must be
/// convex, and the forward formula must reproduce the input exactly; the
/// degree multiset is read off the second differences.
pub fn split_from_profile(lo: i64, profile: &[i64]) -> Result<SplitType, SplitError> {
    let fail = |why: &str| SplitError::InconsistentProfile(why.to_string());
    if profile.len() < 3 {
        return Err(fail("window too short"));
    }
    if profile[0] != 0 || profile[1] != 0 {
        return Err(fail("window does not reach below the top summand"));
    }
    if profile.iter().any(|&h| h < 0) {
        return Err(fail("negative section count"));
    }
    let mut degrees = Vec::new();
    let mut prev_delta = 0i64;
    for i in 1..profile.len() {
        let delta = profile[i] - profile[i - 1];
        let jump = delta - prev_delta;
        if jump < 0 {
            return Err(fail("second difference is negative"));
        }
        // `jump` summands of degree -(lo + i).
        degrees.extend(std::iter::repeat_n(-(lo + i as i64), jump as usize));
        prev_delta = delta;
    }
    if degrees.is_empty() {
        return Err(fail("profile is identically zero"));
    }
    let split = SplitType::new(degrees)?;
    for (i, &h) in profile.iter().enumerate() {
        if split.cohomology(lo + i as i64).0 != h {
            return Err(fail("forward formula does not reproduce the window"));
        }
    }
    Ok(split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn st(degrees: &[i64]) -> SplitType {
        SplitType::new(degrees.to_vec()).unwrap()
    }

    #[test]
    fn make_split_sorts_and_records() {
        let s = st(&[0, 1, 1]);
        assert_eq!(s.degrees(), &[1, 1, 0]);
        assert_eq!(s.rank(), 3);
        assert_eq!(s.degree(), 2);

        let s = st(&[5, 5]);
        assert_eq!(s.degrees(), &[5, 5]);
        assert_eq!(s.degree(), 10);

        let s = st(&[-1, 0, 0]);
        assert_eq!(s.degrees(), &[0, 0, -1]);
        assert_eq!(s.degree(), -1);

        assert_eq!(SplitType::new(vec![]), Err(SplitError::EmptyDegrees));
    }

    #[test]
    fn balance_info_examples() {
        let info = st(&[6, 6, 6]).balance_info();
        assert!(info.balanced);
        assert_eq!(info.upper_rank, 3);
        assert_eq!(info.upper_degree, 6);
        assert_eq!(info.slope_floor, 6);
        assert!(info.twist_of_trivial);

        let info = st(&[1, 0, 0]).balance_info();
        assert!(info.balanced);
        assert_eq!(info.upper_rank, 1);
        assert_eq!(info.upper_degree, 1);
        assert_eq!(info.slope_floor, 0);
        assert!(!info.twist_of_trivial);

        assert!(!st(&[2, 0]).balance_info().balanced);
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(st(&[5, 5]).cohomology(0), (12, 0));
        assert_eq!(st(&[-2, -3]).cohomology(0), (0, 3));
        // All a_i + t = -1: chi = 0 with both sides zero.
        assert_eq!(st(&[4, 4]).cohomology(-5), (0, 0));
    }

    #[test]
    fn end_bundle_examples() {
        let end = st(&[1, 1, 0]).end_bundle();
        assert_eq!(end.degrees(), &[1, 1, 0, 0, 0, 0, 0, -1, -1]);

        let end = st(&[3, 3]).end_bundle();
        assert_eq!(end.degrees(), &[0, 0, 0, 0]);

        let end = st(&[2, 0]).end_bundle();
        assert_eq!(end.degrees(), &[2, 0, 0, -2]);
        assert_eq!(end.cohomology(0).1, 1);
    }

    #[test]
    fn partition_round_trip() {
        let s = st(&[3, 3, 2, 0, 0, 0, -1]);
        let p = s.partition();
        assert_eq!(p.blocks(), &[(3, 2), (2, 1), (0, 3), (-1, 1)]);
        assert_eq!(p.split_type(), s);
        assert_eq!(p.width(), 7);
        assert_eq!(p.degree(), 7);
    }

    #[test]
    fn modify_examples() {
        let p = st(&[0, 0, 0]).partition();
        assert_eq!(p.modify(2).split_type(), st(&[1, 1, 0]));

        let p = st(&[2, 1]).partition();
        assert_eq!(p.modify(-3).split_type(), st(&[0, 0]));

        let p = st(&[4, 2, 2, -1]).partition();
        assert_eq!(p.modify(0), p);
    }

    #[test]
    fn general_modification_examples() {
        assert_eq!(
            general_modification(&st(&[2, 2]), 1, Direction::Down).unwrap(),
            st(&[2, 1])
        );
        assert_eq!(
            general_modification(&st(&[1, 0, 0]), 2, Direction::Down).unwrap(),
            st(&[0, 0, -1])
        );
        assert_eq!(
            general_modification(&st(&[0, 0]), 1, Direction::Up).unwrap(),
            st(&[1, 0])
        );
        assert!(general_modification(&st(&[0, 0]), 0, Direction::Down).is_err());
    }

    #[test]
    fn general_modification_matches_balanced_case_split() {
        // Balanced case: colength below the upper rank trims it; at or above,
        // the result wraps to upper degree one lower.
        for r in 2..=5usize {
            for r_plus in 1..=r {
                for a in -3..=3i64 {
                    let mut degrees = vec![a; r_plus];
                    degrees.extend(std::iter::repeat_n(a - 1, r - r_plus));
                    let s = SplitType::new(degrees).unwrap();
                    let info = s.balance_info();
                    for colength in 1..=(r as i64) {
                        let got = general_modification(&s, colength, Direction::Down).unwrap();
                        let expect = if colength < info.upper_rank as i64 {
                            let up = info.upper_rank - colength as usize;
                            let mut d = vec![info.upper_degree; up];
                            d.extend(std::iter::repeat_n(info.upper_degree - 1, r - up));
                            SplitType::new(d).unwrap()
                        } else {
                            let up = (r as i64 + info.upper_rank as i64 - colength) as usize;
                            let mut d = vec![info.upper_degree - 1; up];
                            d.extend(std::iter::repeat_n(info.upper_degree - 2, r - up));
                            SplitType::new(d).unwrap()
                        };
                        assert_eq!(got, expect, "balanced mod case split at {s}, s={colength}");
                    }
                }
            }
        }
    }

    #[test]
    fn general_kernel_examples() {
        assert_eq!(general_kernel(&st(&[1, 1]), 1).unwrap(), st(&[1]));
        assert_eq!(general_kernel(&st(&[1, 1, 0]), 2).unwrap(), st(&[0, 0]));
        assert_eq!(general_kernel(&st(&[2, 2, 2]), 3).unwrap(), st(&[2, 1]));
        assert_eq!(general_kernel(&st(&[3]), 5), Err(SplitError::RankOneKernel));
        assert_eq!(
            general_kernel(&st(&[2, 2]), 1),
            Err(SplitError::SurjectivityNotGeneral { m: 1, a_plus: 2 })
        );
    }

    #[test]
    fn general_kernel_matches_explicit_block_widths() {
        // Normalized source r+ O(1) + (r - r+) O(0) with r+ < r, target O(l):
        // writing l = q(r-1) + p, the explicit block widths keep rank r - 1.
        for r in 2..=6usize {
            for r_plus in 1..r {
                let mut degrees = vec![1i64; r_plus];
                degrees.extend(std::iter::repeat_n(0, r - r_plus));
                let s = SplitType::new(degrees).unwrap();
                for l in 1..=12i64 {
                    let q = l.div_euclid(r as i64 - 1);
                    let p = l.rem_euclid(r as i64 - 1);
                    let expect = if p <= r_plus as i64 {
                        let w1 = (r_plus as i64 - p) as usize;
                        let w2 = (r as i64 - 1 - r_plus as i64 + p) as usize;
                        let mut d = vec![1 - q; w1];
                        d.extend(std::iter::repeat_n(-q, w2));
                        SplitType::new(d).unwrap()
                    } else {
                        let w1 = (r as i64 - 1 - p + r_plus as i64) as usize;
                        let w2 = (p - r_plus as i64) as usize;
                        let mut d = vec![-q; w1];
                        d.extend(std::iter::repeat_n(-q - 1, w2));
                        SplitType::new(d).unwrap()
                    };
                    assert_eq!(
                        general_kernel(&s, l).unwrap(),
                        expect,
                        "r={r} r+={r_plus} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn general_kernel_unbalanced_keeps_forced_subbundles() {
        // Two trivial summands mapping to O(0) leave a 1-dimensional constant
        // kernel that survives as a degree-0 subbundle; the rule must not
        // pretend the kernel balances.
        assert_eq!(general_kernel(&st(&[0, 0, -5]), 0).unwrap(), st(&[0, -5]));
        assert_eq!(
            general_kernel(&st(&[0, 0, 0, -5]), 0).unwrap(),
            st(&[0, 0, -5])
        );
    }

    #[test]
    fn balanced_extension_examples() {
        assert_eq!(
            balanced_extension(&st(&[0, 0]), &st(&[0, 0, 0])).unwrap(),
            st(&[0, 0, 0, 0, 0])
        );
        assert_eq!(
            balanced_extension(&st(&[1, 0]), &st(&[1, 1, 0])).unwrap(),
            st(&[1, 1, 1, 0, 0])
        );
        assert_eq!(
            balanced_extension(&st(&[4]), &st(&[4])).unwrap(),
            st(&[4, 4])
        );
        assert_eq!(
            balanced_extension(&st(&[3]), &st(&[0])),
            Err(SplitError::FloorMismatch(3, 0))
        );
    }

    #[test]
    fn profile_inversion_examples() {
        // 2 O(3)
        let lo = -6;
        let profile: Vec<i64> = (lo..=5).map(|t| st(&[3, 3]).cohomology(t).0).collect();
        assert_eq!(split_from_profile(lo, &profile).unwrap(), st(&[3, 3]));

        // h0(t) = max(0, t + 2) + max(0, t)
        let profile: Vec<i64> = (-4..=3).map(|t: i64| (t + 2).max(0) + t.max(0)).collect();
        assert_eq!(split_from_profile(-4, &profile).unwrap(), st(&[1, -1]));

        // Non-convex profile is rejected.
        assert!(split_from_profile(-3, &[0, 0, 2, 2, 2, 3]).is_err());
    }

    /// Brute-force lexicographic minimum over all non-increasing sequences of
    /// the right width and degree that contain / are contained in the input.
    fn brute_force_modify(p: &Partition, k: i64) -> Partition {
        fn rec(
            base: &[i64],
            k: i64,
            idx: usize,
            prev: i64,
            remaining: i64,
            acc: &mut Vec<i64>,
            best: &mut Option<Vec<i64>>,
        ) {
            if idx == base.len() {
                if remaining == 0 {
                    match best {
                        None => *best = Some(acc.clone()),
                        Some(b) => {
                            if acc < b {
                                *b = acc.clone();
                            }
                        }
                    }
                }
                return;
            }
            let (lo, hi) = if k >= 0 {
                (base[idx], base[idx] + remaining)
            } else {
                (base[idx] + remaining, base[idx])
            };
            for v in lo..=hi.min(prev) {
                let used = v - base[idx];
                let rest = remaining - used;
                if (k >= 0 && rest < 0) || (k < 0 && rest > 0) {
                    continue;
                }
                acc.push(v);
                rec(base, k, idx + 1, v, rest, acc, best);
                acc.pop();
            }
        }
        let base = p.split_type();
        let mut best: Option<Vec<i64>> = None;
        let mut acc = Vec::with_capacity(base.rank());
        rec(base.degrees(), k, 0, i64::MAX, k, &mut acc, &mut best);
        SplitType::new(best.expect("modification target is reachable"))
            .unwrap()
            .partition()
    }

    proptest! {
        #[test]
        fn round_trip_partition(degrees in proptest::collection::vec(-6i64..=6, 1..=6)) {
            let s = SplitType::new(degrees).unwrap();
            prop_assert_eq!(s.partition().split_type(), s);
        }

        #[test]
        fn chi_identity(degrees in proptest::collection::vec(-6i64..=6, 1..=6), t in -8i64..=8) {
            let s = SplitType::new(degrees).unwrap();
            let (h0, h1) = s.cohomology(t);
            prop_assert_eq!(h0 - h1, s.degree() + s.rank() as i64 * (t + 1));
        }

        #[test]
        fn rigidity_equivalence(degrees in proptest::collection::vec(-5i64..=5, 1..=5)) {
            let s = SplitType::new(degrees).unwrap();
            prop_assert_eq!(s.is_balanced(), s.end_bundle().cohomology(0).1 == 0);
        }

        #[test]
        fn modify_degree_and_width_laws(
            degrees in proptest::collection::vec(-5i64..=5, 1..=5),
            k in -6i64..=6,
        ) {
            let p = SplitType::new(degrees).unwrap().partition();
            let m = p.modify(k);
            prop_assert_eq!(m.width(), p.width());
            prop_assert_eq!(m.degree(), p.degree() + k);
        }

        #[test]
        fn modify_composes_same_sign(
            degrees in proptest::collection::vec(-4i64..=4, 1..=5),
            k1 in 0i64..=4,
            k2 in 0i64..=4,
            down in proptest::bool::ANY,
        ) {
            let p = SplitType::new(degrees).unwrap().partition();
            let (k1, k2) = if down { (-k1, -k2) } else { (k1, k2) };
            prop_assert_eq!(p.modify(k1).modify(k2), p.modify(k1 + k2));
        }

        #[test]
        fn modify_is_lex_minimal(
            degrees in proptest::collection::vec(-3i64..=3, 1..=4),
            k in -4i64..=4,
        ) {
            let p = SplitType::new(degrees).unwrap().partition();
            prop_assert_eq!(p.modify(k), brute_force_modify(&p, k));
        }

        #[test]
        fn balanced_of_is_balanced(rank in 1usize..=7, degree in -30i64..=30) {
            let s = SplitType::balanced_of(rank, degree);
            prop_assert!(s.is_balanced());
            prop_assert_eq!(s.rank(), rank);
            prop_assert_eq!(s.degree(), degree);
        }

        #[test]
        fn profile_round_trip(degrees in proptest::collection::vec(-5i64..=5, 1..=5)) {
            let s = SplitType::new(degrees).unwrap();
            let lo = -s.max_degree() - 2;
            let hi = -s.min_degree() + 2;
            let profile: Vec<i64> = (lo..=hi).map(|t| s.cohomology(t).0).collect();
            prop_assert_eq!(split_from_profile(lo, &profile).unwrap(), s);
        }
    }
}
